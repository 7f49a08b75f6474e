#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vacpol/nuclear_model.hpp"

namespace vacpol::radial {

/// Uniform radial grid r_i = i h, i = 1..n, h = r_max / n (Dirichlet walls at
/// r = 0 and r = r_max). n must be even (the two-grid pollution filter halves
/// it) and at least 100.
struct RadialGrid {
    double r_max = 60.0;
    int n = 2000;

    double h() const { return r_max / n; }
    double node(int i) const { return h() * (i + 1); } // i = 0..n-1
    static RadialGrid make(double r_max, int n);
};

/// One angular channel kappa of D^0 - lambda phi, reduced to the interleaved
/// symmetric tridiagonal form
///   diag:     f_i -> 1 - lambda phi(r_i),  g_i -> -1 - lambda phi(r_i)
///   off-diag: (f_i, g_i) -> kappa / r_i - 1/h,  (g_i, f_{i+1}) -> 1/h
/// i.e. the radial derivative d/dr + kappa/r is one-sided (forward) with its
/// exact transpose in the opposite block, which keeps the matrix symmetric and
/// suppresses fermion-doubling pollution in the gap.
struct DiscreteDiracOperator {
    int kappa = -1;
    double lambda = 0.0;
    RadialGrid grid;
    std::vector<double> phi; // phi(r_i), retained for the coarse-grid filter
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    int dim() const { return 2 * grid.n; }
    Eigen::MatrixXd dense() const;
};

/// Assemble the channel matrix. Throws std::invalid_argument for kappa = 0 or
/// lambda < 0 and NumericalError when the grid is too coarse for the potential
/// (h (|kappa|/r_1 + lambda phi(r_1)) beyond the stability bound).
DiscreteDiracOperator assemble(int kappa, double lambda, const ChargeDensity& density,
                               const RadialGrid& grid);

/// Eigenvalue in the spectral gap with its two-grid convergence estimate.
struct GapEigenvalue {
    double value;
    double error_estimate; // |e(h) - e(2h)| from the half-resolution grid
    bool bound_state;      // value < 1 - edge_margin (outside the +1 cluster)
};

/// All eigenvalues inside (-1, 1), pollution-filtered: states whose nearest
/// half-resolution partner moved more than `spurious_threshold` are dropped.
std::vector<GapEigenvalue> gap_eigenvalues(const DiscreteDiracOperator& op,
                                           double edge_margin = 1e-3,
                                           double spurious_threshold = 0.05);

/// Plain sorted values of gap_eigenvalues (bound states only).
std::vector<double> bound_state_values(const DiscreteDiracOperator& op,
                                       double edge_margin = 1e-3);

/// Number of eigenvalues strictly below `gamma` (tridiagonal Sturm count).
int count_below(const DiscreteDiracOperator& op, double gamma);

/// Eigenvalues of the interleaved tridiagonal matrix in (lo, hi).
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diagonal,
                                            const std::vector<double>& off_diagonal,
                                            double lo, double hi);

} // namespace vacpol::radial
