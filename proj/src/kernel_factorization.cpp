#include "vacpol/kernel_factorization.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace vacpol::kernel {

namespace {

constexpr double k_pi = 3.14159265358979323846;

ComplexVector dft_impl(const ComplexVector& x, double sign) {
    const Eigen::Index n = x.size();
    ComplexVector out(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double angle = sign * 2.0 * k_pi * static_cast<double>(j * k % n) /
                                 static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = acc * scale;
    }
    return out;
}

} // namespace

ComplexVector unitary_dft(const ComplexVector& x) { return dft_impl(x, -1.0); }
ComplexVector unitary_idft(const ComplexVector& x) { return dft_impl(x, 1.0); }

double symbol_l1_norm(const ComplexVector& g) {
    const ComplexVector gh = unitary_dft(g);
    return gh.cwiseAbs().sum() / std::sqrt(static_cast<double>(g.size()));
}

Factorization factorize(const ComplexVector& g) {
    const Eigen::Index n = g.size();
    const ComplexVector gh = unitary_dft(g);
    const double quarter_root = std::pow(static_cast<double>(n), -0.25);
    ComplexVector h1_hat(n), h2_hat(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(gh[k]);
        const double half = std::sqrt(mag) * quarter_root;
        h1_hat[k] = half;
        h2_hat[k] = mag > 0.0 ? half * (gh[k] / mag) : std::complex<double>(0.0);
    }
    return Factorization{unitary_idft(h1_hat), unitary_idft(h2_hat)};
}

DiscreteKernel make_kernel(ComplexVector f1, ComplexVector f2, ComplexVector g) {
    if (f1.size() != g.size() || f2.size() != g.size())
        throw std::invalid_argument("make_kernel: f1, f2, g must share one grid size");
    return DiscreteKernel{std::move(f1), std::move(f2), std::move(g)};
}

Eigen::MatrixXcd DiscreteKernel::matrix() const {
    const Eigen::Index n = g.size();
    Eigen::MatrixXcd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            k(i, j) = f1[i] * g[(i - j + n) % n] * f2[j];
    return k;
}

FactorMatrices factor_matrices(const DiscreteKernel& kernel) {
    const Eigen::Index n = kernel.g.size();
    const Factorization f = factorize(kernel.g);
    FactorMatrices fm;
    fm.l1.resize(n, n);
    fm.l2.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) {
            fm.l1(i, k) = kernel.f1[i] * f.h1[(i - k + n) % n];
            fm.l2(k, i) = f.h2[(k - i + n) % n] * kernel.f2[i];
        }
    return fm;
}

TraceNormBound trace_norm_bound_check(const DiscreteKernel& kernel) {
    const Eigen::MatrixXcd k = kernel.matrix();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k);
    TraceNormBound result;
    result.trace_norm = svd.singularValues().sum();
    result.bound = kernel.f1.norm() * kernel.f2.norm() * symbol_l1_norm(kernel.g);
    return result;
}

} // namespace vacpol::kernel
