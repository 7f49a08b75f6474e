#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "vacpol/nuclear_model.hpp"
#include "vacpol/quadrature.hpp"

namespace vacpol::dirac {

using Momentum3 = Eigen::Vector3d;
using Matrix4 = Eigen::Matrix4cd;
using Spinor4 = Eigen::Vector4cd;

/// The 4x4 Dirac matrices in standard (Dirac) representation:
/// {alpha_i, alpha_j} = 2 delta_ij, {alpha_i, beta} = 0, beta^2 = 1.
struct DiracMatrices {
    std::array<Matrix4, 3> alpha;
    Matrix4 beta;
};
const DiracMatrices& dirac_matrices();

/// E(p) = sqrt(p^2 + 1).
double energy(const Momentum3& p);

/// Free Dirac symbol D_p = alpha . p + beta with its eigenvalue scale.
struct DiracSymbol {
    Momentum3 p;
    Matrix4 matrix;
    double energy;
};
DiracSymbol dirac_symbol(const Momentum3& p);

/// (D_p - gamma + i eta)^{-1} in closed form from D_p^2 = E(p)^2.
/// Throws std::domain_error when eta = 0 and gamma = +-E(p).
Matrix4 free_resolvent(const Momentum3& p, double gamma, double eta);

/// Plane-wave eigenspinor of the free Dirac symbol: D_p u = sign * E(p) * u,
/// sign = +1 for tau in {1,2}, -1 for tau in {3,4}. Unit norm. The p = 0
/// positive-energy spinors are the limits along p_hat = (0,0,1).
struct PlaneWaveSpinor {
    Momentum3 p;
    int tau = 1;
    Spinor4 vector;
    int sign = 1;
};
PlaneWaveSpinor spinor(const Momentum3& p, int tau);

/// int deta tr[(D_p + i eta)^{-1} (D_p1 + i eta)^{-1} (D_q + i eta)^{-1}].
/// The trace is an odd function of eta, so the returned magnitude is a
/// quadrature-level zero (Furry-type vanishing of the two-potential term).
double q2_eta_trace_integral(const Momentum3& p, const Momentum3& p1, const Momentum3& q,
                             const quad::Options& opt = {});

/// (1/2pi) int deta [(i a0 E - eta)^2 (i a1 E1 - eta) (i a2 E2 - eta)]^{-1}
/// by residue calculus. Exactly zero when the three signs agree (all poles in
/// one half plane). signs entries must be +-1.
double quartic_eta_integral(double e0, double e1, double e2, std::array<int, 3> signs);

/// Pointwise summand of the momentum-space three-potential density trace:
/// sum over tau indices of the three spinor sandwiches
/// <u_t0(p)|phi_hat|u_t1(p1)> <u_t1(p1)|phi_hat|u_t2(p2)> <u_t2(p2)|phi_hat|u_t0(p)>
/// weighted by the quartic eta integral. Throws std::domain_error when any
/// momentum transfer vanishes (phi_hat has a pole at k = 0).
double q3_integrand_trace(const Momentum3& p, const Momentum3& p1, const Momentum3& p2,
                          const ChargeDensity& density);

} // namespace vacpol::dirac
