#pragma once

#include <vector>

#include "vacpol/nuclear_model.hpp"
#include "vacpol/quadrature.hpp"

namespace vacpol::uehling {

/// Fine-structure constant fixed by the charge convention e = -sqrt(alpha).
constexpr double k_alpha = 1.0 / 137.035999;

struct Params {
    double electron_charge = -0.08542454302; // -sqrt(k_alpha), see default_params()
    double lambda = 1.0;
};
Params default_params();
Params unit_charge_params(double lambda = 1.0);

/// C(k) = k^2 * (1/2) int_0^1 dx (1 - x^2) log[1 + k^2 (1 - x^2)/4],
/// evaluated by Gauss-Legendre quadrature refined to the requested tolerance.
double C_integral(double k, double tol = 1e-12);

/// Closed-form C(k). Below k = 1e-2 the k^4/15 - k^6/140 + k^8/945 series is
/// used (the printed form loses all significant digits there); on [1e-2, 1)
/// the equivalent convergent artanh expansion; above that the formula as
/// printed, with the log argument rearranged to avoid sqrt(1+x)-1 cancellation.
double C_closed(double k);

/// rho1_hat(k) = e lambda 4 pi n_hat(k) C(k) / k^2, with rho1_hat(0) = 0.
double rho1_fourier(const ChargeDensity& density, const Params& params, double k);

/// Radial real-space density
/// rho1(r) = (2 pi^2 r)^{-1} int_0^inf k sin(k r) rho1_hat(k) dk,
/// oscillatory tail integrated between consecutive zeros of sin(k r) with
/// Euler acceleration.
double rho1_radial(const ChargeDensity& density, const Params& params, double r,
                   const quad::Options& opt = {});

/// Signed and absolute radial charge integrals
/// (4 pi int rho1 r^2 dr, 4 pi int |rho1| r^2 dr); the signed one must vanish
/// (rho1_hat(0) = 0) and the absolute one sets the scale of the check.
struct ChargeIntegrals {
    double signed_total;
    double absolute_total;
};
ChargeIntegrals rho1_charge_integrals(const ChargeDensity& density, const Params& params,
                                      double r_max, const quad::Options& opt = {});

/// Sampled momentum- and real-space profiles with the cumulative radial charge
/// 4 pi int_0^r rho1 s^2 ds (composite Simpson on the given radial grid).
struct Profile {
    Params params;
    std::vector<double> k_grid;
    std::vector<double> rho1_hat;
    std::vector<double> r_grid;
    std::vector<double> rho1;
    std::vector<double> cumulative_charge;
};
Profile sample_profile(const ChargeDensity& density, const Params& params,
                       std::vector<double> k_grid, std::vector<double> r_grid,
                       const quad::Options& opt = {});

} // namespace vacpol::uehling
