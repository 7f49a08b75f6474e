#include "vacpol/uehling.hpp"

#include <cmath>

#include "vacpol/errors.hpp"

namespace vacpol::uehling {

namespace {
constexpr double k_pi = 3.14159265358979323846;
}

Params default_params() {
    Params p;
    p.electron_charge = -std::sqrt(k_alpha);
    return p;
}

Params unit_charge_params(double lambda) {
    Params p;
    p.electron_charge = 1.0;
    p.lambda = lambda;
    return p;
}

double C_integral(double k, double tol) {
    if (k < 0.0) throw std::domain_error("C_integral requires k >= 0");
    if (k == 0.0) return 0.0;
    const double k2 = k * k;
    quad::Options opt;
    opt.abs_tol = tol;
    opt.panel_order = 64;
    opt.max_panels = 2000;
    const double integral = quad::integrate(
        [k2](double x) {
            const double w = 1.0 - x * x;
            return 0.5 * w * std::log1p(k2 * w / 4.0);
        },
        0.0, 1.0, opt);
    return k2 * integral;
}

double C_closed(double k) {
    if (k < 0.0) throw std::domain_error("C_closed requires k >= 0");
    const double k2 = k * k;
    if (k < 1e-2) {
        // Series of the integral form; next term is -k^10/5544.
        return k2 * k2 * (1.0 / 15.0 + k2 * (-1.0 / 140.0 + k2 / 945.0));
    }
    if (k < 1.0) {
        // Exact artanh expansion of the printed form:
        // C/k^2 = (1/3) sum_{i>=1} (4i+8)/((2i+1)(2i+3)) q^i, q = k^2/(k^2+4).
        const double q = k2 / (k2 + 4.0);
        double sum = 0.0;
        double qi = 1.0;
        for (int i = 1; i < 200; ++i) {
            qi *= q;
            const double term = (4.0 * i + 8.0) / ((2.0 * i + 1.0) * (2.0 * i + 3.0)) * qi;
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return k2 * sum / 3.0;
    }
    const double t = std::sqrt(1.0 + 4.0 / k2);
    // log((t+1)/(t-1)) with t-1 = (4/k^2)/(t+1) substituted to stay accurate
    // at large k.
    const double log_term = 2.0 * std::log(t + 1.0) + std::log(k2) - std::log(4.0);
    return k2 / 3.0 *
           ((1.0 - 2.0 / k2) * t * log_term + 4.0 / k2 - 5.0 / 3.0);
}

double rho1_fourier(const ChargeDensity& density, const Params& params, double k) {
    if (k < 0.0) throw std::domain_error("rho1_fourier requires k >= 0");
    if (k == 0.0) return 0.0; // lim C(k)/k^2 = 0
    return params.electron_charge * params.lambda * 4.0 * k_pi * density.fourier_at(k) *
           C_closed(k) / (k * k);
}

double rho1_radial(const ChargeDensity& density, const Params& params, double r,
                   const quad::Options& opt) {
    if (!(r > 0.0)) throw std::domain_error("rho1_radial requires r > 0");
    auto envelope = [&](double k) { return k * rho1_fourier(density, params, k); };
    const double scale = std::abs(params.electron_charge * params.lambda);
    quad::Options tail_opt = opt;
    // The envelope carries e*lambda; keep the tail tolerance proportionate.
    tail_opt.abs_tol = std::max(opt.abs_tol * std::max(scale, 1e-6), 1e-15) * r;
    const double integral = quad::sine_integral_semi_infinite(envelope, r, tail_opt);
    return integral / (2.0 * k_pi * k_pi * r);
}

ChargeIntegrals rho1_charge_integrals(const ChargeDensity& density, const Params& params,
                                      double r_max, const quad::Options& opt) {
    auto shell = [&](double r) { return 4.0 * k_pi * r * r * rho1_radial(density, params, r, opt); };
    quad::Options panel_opt = opt;
    panel_opt.abs_tol = std::max(opt.abs_tol, 1e-12);
    panel_opt.panel_order = 12;
    panel_opt.max_panels = 64;

    // Geometric panels resolve the nuclear-size scale near the origin; the
    // integrand decays at least exponentially past a few Compton lengths.
    const double r0 = std::min(0.05 * density.size_parameter(), 1e-3);
    std::vector<double> edges{0.0, r0};
    double edge = r0;
    while (edge < r_max) {
        edge = std::min(edge * 1.9, r_max);
        edges.push_back(edge);
    }
    double signed_total = 0.0, absolute_total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i] == 0.0 ? 1e-9 * std::max(density.size_parameter(), 1e-3)
                                         : edges[i];
        signed_total += quad::integrate(shell, a, edges[i + 1], panel_opt);
        absolute_total +=
            quad::integrate([&](double r) { return std::abs(shell(r)); }, a, edges[i + 1], panel_opt);
    }
    return ChargeIntegrals{signed_total, absolute_total};
}

Profile sample_profile(const ChargeDensity& density, const Params& params,
                       std::vector<double> k_grid, std::vector<double> r_grid,
                       const quad::Options& opt) {
    Profile prof;
    prof.params = params;
    prof.k_grid = std::move(k_grid);
    prof.r_grid = std::move(r_grid);
    prof.rho1_hat.reserve(prof.k_grid.size());
    for (double k : prof.k_grid) prof.rho1_hat.push_back(rho1_fourier(density, params, k));
    prof.rho1.reserve(prof.r_grid.size());
    for (double r : prof.r_grid) prof.rho1.push_back(rho1_radial(density, params, r, opt));
    // Cumulative 4 pi int_0^r rho1 s^2 ds, composite Simpson between samples
    // (the first cell uses the trapezoid with rho1 ~ const near the origin).
    prof.cumulative_charge.assign(prof.r_grid.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < prof.r_grid.size(); ++i) {
        if (i == 0) {
            acc = 4.0 * k_pi * prof.rho1[0] * std::pow(prof.r_grid[0], 3) / 3.0;
        } else {
            const double a = prof.r_grid[i - 1], b = prof.r_grid[i];
            const double mid = 0.5 * (a + b);
            const double fm = rho1_radial(density, params, mid, opt);
            const double fa = prof.rho1[i - 1] * a * a;
            const double fb = prof.rho1[i] * b * b;
            acc += 4.0 * k_pi * (b - a) / 6.0 * (fa + 4.0 * fm * mid * mid + fb);
        }
        prof.cumulative_charge[i] = acc;
    }
    return prof;
}

} // namespace vacpol::uehling
