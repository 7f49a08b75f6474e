#include "vacpol/dirac_algebra.hpp"

#include <cmath>

#include "vacpol/errors.hpp"

namespace vacpol::dirac {

namespace {

using Complex = std::complex<double>;
constexpr Complex k_i{0.0, 1.0};
constexpr double k_pi = 3.14159265358979323846;

Eigen::Matrix2cd sigma_dot(const Momentum3& p) {
    Eigen::Matrix2cd m;
    m << Complex(p.z(), 0.0), Complex(p.x(), -p.y()),
         Complex(p.x(), p.y()), Complex(-p.z(), 0.0);
    return m;
}

DiracMatrices build_dirac_matrices() {
    DiracMatrices dm;
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    std::array<Eigen::Matrix2cd, 3> sigma;
    sigma[0] << 0, 1, 1, 0;
    sigma[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    sigma[2] << 1, 0, 0, -1;
    for (int i = 0; i < 3; ++i) {
        dm.alpha[static_cast<std::size_t>(i)].setZero();
        dm.alpha[static_cast<std::size_t>(i)].topRightCorner<2, 2>() = sigma[static_cast<std::size_t>(i)];
        dm.alpha[static_cast<std::size_t>(i)].bottomLeftCorner<2, 2>() = sigma[static_cast<std::size_t>(i)];
    }
    dm.beta.setZero();
    dm.beta.topLeftCorner<2, 2>() = id2;
    dm.beta.bottomRightCorner<2, 2>() = -id2;
    return dm;
}

} // namespace

const DiracMatrices& dirac_matrices() {
    static const DiracMatrices dm = build_dirac_matrices();
    return dm;
}

double energy(const Momentum3& p) { return std::sqrt(p.squaredNorm() + 1.0); }

DiracSymbol dirac_symbol(const Momentum3& p) {
    const DiracMatrices& dm = dirac_matrices();
    Matrix4 m = dm.beta;
    for (int i = 0; i < 3; ++i) m += p[i] * dm.alpha[static_cast<std::size_t>(i)];
    return DiracSymbol{p, m, energy(p)};
}

Matrix4 free_resolvent(const Momentum3& p, double gamma, double eta) {
    const DiracSymbol d = dirac_symbol(p);
    const Complex z(gamma, -eta);
    const Complex denom = d.energy * d.energy - z * z;
    if (std::abs(denom) < 1e-14 * std::max(1.0, d.energy * d.energy))
        throw std::domain_error("free_resolvent: gamma - i eta lies on the symbol spectrum");
    // (D - z)^{-1} = (D + z) / (E^2 - z^2)
    return (d.matrix + z * Matrix4::Identity()) / denom;
}

PlaneWaveSpinor spinor(const Momentum3& p, int tau) {
    if (tau < 1 || tau > 4) throw std::invalid_argument("spinor: tau must be in {1,2,3,4}");
    const double e = energy(p);
    const double pn = p.norm();
    const int sign = tau <= 2 ? 1 : -1;
    Eigen::Vector2cd e_tau = Eigen::Vector2cd::Zero();
    e_tau[(tau == 1 || tau == 3) ? 0 : 1] = 1.0;

    Spinor4 u;
    if (sign > 0) {
        if (pn == 0.0) {
            // Limit along p_hat = (0,0,1): (sigma_z e_tau, 0).
            u.setZero();
            u.head<2>() = sigma_dot(Momentum3(0, 0, 1)) * e_tau;
        } else {
            // N_+ = sqrt(2E(E-1)) with the cancellation-free E-1 = p^2/(E+1).
            const double em1 = p.squaredNorm() / (e + 1.0);
            const double n_plus = std::sqrt(2.0 * e * em1);
            u.head<2>() = sigma_dot(p) * e_tau / n_plus;
            u.tail<2>() = (em1 / n_plus) * e_tau;
        }
    } else {
        const double n_minus = std::sqrt(2.0 * e * (e + 1.0));
        u.head<2>() = sigma_dot(p) * e_tau / n_minus;
        u.tail<2>() = (-(1.0 + e) / n_minus) * e_tau;
    }
    return PlaneWaveSpinor{p, tau, u, sign};
}

double q2_eta_trace_integral(const Momentum3& p, const Momentum3& p1, const Momentum3& q,
                             const quad::Options& opt) {
    const DiracSymbol dp = dirac_symbol(p);
    const DiracSymbol dp1 = dirac_symbol(p1);
    const DiracSymbol dq = dirac_symbol(q);
    auto resolvent = [](const DiracSymbol& d, double eta) -> Matrix4 {
        const Complex z(0.0, -eta);
        return (d.matrix + z * Matrix4::Identity()) / (d.energy * d.energy + eta * eta);
    };
    const Complex integral = quad::integrate_real_line(
        [&](double eta) -> Complex {
            return (resolvent(dp, eta) * resolvent(dp1, eta) * resolvent(dq, eta)).trace();
        },
        opt);
    return std::abs(integral);
}

double quartic_eta_integral(double e0, double e1, double e2, std::array<int, 3> signs) {
    for (int s : signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("quartic_eta_integral: signs must be +-1");
    if (!(e0 > 0.0) || !(e1 > 0.0) || !(e2 > 0.0))
        throw std::invalid_argument("quartic_eta_integral: energies must be positive");
    if (signs[0] == signs[1] && signs[1] == signs[2]) return 0.0; // poles in one half plane

    struct Pole {
        Complex z;
        int mult;
    };
    const std::array<Complex, 3> raw{k_i * (signs[0] * e0), k_i * (signs[1] * e1),
                                     k_i * (signs[2] * e2)};
    const std::array<int, 3> raw_mult{2, 1, 1};
    std::vector<Pole> poles;
    for (int j = 0; j < 3; ++j) {
        bool merged = false;
        for (Pole& q : poles) {
            if (std::abs(q.z - raw[static_cast<std::size_t>(j)]) <
                1e-14 * (1.0 + std::abs(q.z))) {
                q.mult += raw_mult[static_cast<std::size_t>(j)];
                merged = true;
                break;
            }
        }
        if (!merged) poles.push_back({raw[static_cast<std::size_t>(j)], raw_mult[static_cast<std::size_t>(j)]});
    }

    // Close the contour in the upper half plane: value = i * sum of residues.
    Complex residue_sum = 0.0;
    for (const Pole& pole : poles) {
        if (pole.z.imag() <= 0.0) continue;
        // f(eta) = h(eta) (p - eta)^{-m} with h collecting the other poles.
        Complex h0 = 1.0;
        Complex s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (const Pole& other : poles) {
            if (&other == &pole) continue;
            const Complex d = other.z - pole.z;
            h0 *= std::pow(d, -other.mult);
            s1 += static_cast<double>(other.mult) / d;
            s2 += static_cast<double>(other.mult) / (d * d);
            s3 += static_cast<double>(other.mult) / (d * d * d);
        }
        Complex res;
        switch (pole.mult) {
            case 1: res = -h0; break;
            case 2: res = h0 * s1; break;
            case 3: res = -h0 * (s1 * s1 + s2) / 2.0; break;
            case 4: res = h0 * (s1 * s1 * s1 + 3.0 * s1 * s2 + 2.0 * s3) / 6.0; break;
            default: throw std::logic_error("quartic_eta_integral: unexpected multiplicity");
        }
        residue_sum += res;
    }
    const Complex value = k_i * residue_sum;
    if (std::abs(value.imag()) > 1e-12 * (1.0 + std::abs(value.real())))
        throw NumericalError("quartic_eta_integral: residue sum is not real");
    return value.real();
}

double q3_integrand_trace(const Momentum3& p, const Momentum3& p1, const Momentum3& p2,
                          const ChargeDensity& density) {
    const std::array<Momentum3, 3> transfers{p - p1, p1 - p2, p2 - p};
    std::array<double, 3> phi_hat{};
    for (int j = 0; j < 3; ++j) {
        const double k = transfers[static_cast<std::size_t>(j)].norm();
        if (k < 1e-12)
            throw std::domain_error("q3_integrand_trace: zero momentum transfer "
                                    "(phi_hat is singular at k = 0)");
        phi_hat[static_cast<std::size_t>(j)] = density.potential_fourier_at(k);
    }

    std::array<std::array<PlaneWaveSpinor, 4>, 3> u;
    const std::array<const Momentum3*, 3> mom{&p, &p1, &p2};
    for (int site = 0; site < 3; ++site)
        for (int tau = 1; tau <= 4; ++tau)
            u[static_cast<std::size_t>(site)][static_cast<std::size_t>(tau - 1)] =
                spinor(*mom[static_cast<std::size_t>(site)], tau);

    const double e0 = energy(p), e1 = energy(p1), e2 = energy(p2);
    Complex total = 0.0;
    for (int t0 = 0; t0 < 4; ++t0)
        for (int t1 = 0; t1 < 4; ++t1)
            for (int t2 = 0; t2 < 4; ++t2) {
                const auto& u0 = u[0][static_cast<std::size_t>(t0)];
                const auto& u1 = u[1][static_cast<std::size_t>(t1)];
                const auto& u2 = u[2][static_cast<std::size_t>(t2)];
                const double eta_weight =
                    quartic_eta_integral(e0, e1, e2, {u0.sign, u1.sign, u2.sign});
                if (eta_weight == 0.0) continue;
                const Complex sandwich = u0.vector.dot(u1.vector) * phi_hat[0] *
                                         u1.vector.dot(u2.vector) * phi_hat[1] *
                                         u2.vector.dot(u0.vector) * phi_hat[2];
                total += sandwich * eta_weight;
            }
    if (std::abs(total.imag()) > 1e-9 * (1.0 + std::abs(total.real())))
        throw NumericalError("q3_integrand_trace: trace sum has a non-negligible "
                             "imaginary part");
    return total.real();
}

} // namespace vacpol::dirac
