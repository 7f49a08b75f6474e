#include "vacpol/radial_dirac.hpp"

#include <algorithm>
#include <cmath>

#include <lapacke.h>

#include "vacpol/errors.hpp"

namespace vacpol::radial {

namespace {

// Coarseness of the grid relative to the channel term and the potential at
// the first node; above this the one-sided scheme is not trustworthy.
constexpr double k_stability_bound = 10.0;

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

Tridiagonal build(int kappa, double lambda, const std::vector<double>& phi, double h) {
    const std::size_t n = phi.size();
    Tridiagonal t;
    t.diag.resize(2 * n);
    t.off.resize(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = h * static_cast<double>(i + 1);
        t.diag[2 * i] = 1.0 - lambda * phi[i];
        t.diag[2 * i + 1] = -1.0 - lambda * phi[i];
        t.off[2 * i] = kappa / r - 1.0 / h;
        if (i + 1 < n) t.off[2 * i + 1] = 1.0 / h;
    }
    return t;
}

} // namespace

RadialGrid RadialGrid::make(double r_max, int n) {
    if (!(r_max > 0.0)) throw std::invalid_argument("RadialGrid: r_max must be positive");
    if (n < 100) throw std::invalid_argument("RadialGrid: need at least 100 nodes");
    if (n % 2 != 0) throw std::invalid_argument("RadialGrid: node count must be even");
    return RadialGrid{r_max, n};
}

DiscreteDiracOperator assemble(int kappa, double lambda, const ChargeDensity& density,
                               const RadialGrid& grid) {
    if (kappa == 0) throw std::invalid_argument("assemble: kappa must be a nonzero integer");
    if (lambda < 0.0) throw std::invalid_argument("assemble: lambda must be >= 0");

    DiscreteDiracOperator op;
    op.kappa = kappa;
    op.lambda = lambda;
    op.grid = grid;
    op.phi.resize(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i)
        op.phi[static_cast<std::size_t>(i)] = density.potential_at(grid.node(i));

    const double h = grid.h();
    const double coarseness = h * (std::abs(kappa) / grid.node(0) + lambda * op.phi[0]);
    if (coarseness > k_stability_bound)
        throw NumericalError("assemble: grid too coarse for this channel/potential "
                             "(coarseness " + std::to_string(coarseness) + ")");

    Tridiagonal t = build(kappa, lambda, op.phi, h);
    op.diagonal = std::move(t.diag);
    op.off_diagonal = std::move(t.off);
    return op;
}

Eigen::MatrixXd DiscreteDiracOperator::dense() const {
    const int m = dim();
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) mat(i, i) = diagonal[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) {
        mat(i, i + 1) = off_diagonal[static_cast<std::size_t>(i)];
        mat(i + 1, i) = off_diagonal[static_cast<std::size_t>(i)];
    }
    return mat;
}

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diagonal,
                                            const std::vector<double>& off_diagonal,
                                            double lo, double hi) {
    const lapack_int n = static_cast<lapack_int>(diagonal.size());
    std::vector<double> d = diagonal;
    std::vector<double> e = off_diagonal;
    e.resize(diagonal.size(), 0.0); // dstevr wants n-size workspace for e
    std::vector<double> w(diagonal.size());
    std::vector<lapack_int> isuppz(2 * diagonal.size());
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'N', 'V', n, d.data(), e.data(), lo, hi, 0, 0,
        /*abstol=*/0.0, &m, w.data(), nullptr, 1, isuppz.data());
    if (info != 0)
        throw NumericalError("LAPACKE_dstevr failed with info " + std::to_string(info));
    w.resize(static_cast<std::size_t>(m));
    std::sort(w.begin(), w.end());
    return w;
}

std::vector<GapEigenvalue> gap_eigenvalues(const DiscreteDiracOperator& op,
                                           double edge_margin, double spurious_threshold) {
    if (!(edge_margin > 0.0 && edge_margin < 0.5))
        throw std::invalid_argument("gap_eigenvalues: edge_margin must be in (0, 0.5)");

    const double lo = -1.0 + 1e-12;
    const double hi = 1.0 - 1e-12;
    const std::vector<double> fine = tridiagonal_eigenvalues(op.diagonal, op.off_diagonal, lo, hi);

    // Half-resolution companion on the nested grid r'_j = 2h (j+1).
    const int n_coarse = op.grid.n / 2;
    std::vector<double> phi_coarse(static_cast<std::size_t>(n_coarse));
    for (int j = 0; j < n_coarse; ++j)
        phi_coarse[static_cast<std::size_t>(j)] = op.phi[static_cast<std::size_t>(2 * j + 1)];
    Tridiagonal coarse_t = build(op.kappa, op.lambda, phi_coarse, 2.0 * op.grid.h());
    const std::vector<double> coarse =
        tridiagonal_eigenvalues(coarse_t.diag, coarse_t.off, lo, hi);

    std::vector<GapEigenvalue> out;
    out.reserve(fine.size());
    for (double v : fine) {
        double nearest = std::numeric_limits<double>::infinity();
        for (double c : coarse) nearest = std::min(nearest, std::abs(v - c));
        if (nearest > spurious_threshold) continue; // two-grid Cauchy test failed
        out.push_back(GapEigenvalue{v, nearest, v < 1.0 - edge_margin});
    }
    return out;
}

std::vector<double> bound_state_values(const DiscreteDiracOperator& op, double edge_margin) {
    std::vector<double> values;
    for (const GapEigenvalue& g : gap_eigenvalues(op, edge_margin))
        if (g.bound_state) values.push_back(g.value);
    return values;
}

int count_below(const DiscreteDiracOperator& op, double gamma) {
    // Sturm sequence on the shifted tridiagonal matrix.
    const std::size_t m = op.diagonal.size();
    int count = 0;
    double q = op.diagonal[0] - gamma;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < m; ++i) {
        const double off = op.off_diagonal[i - 1];
        double denom = q;
        if (std::abs(denom) < 1e-300) denom = denom < 0.0 ? -1e-300 : 1e-300;
        q = (op.diagonal[i] - gamma) - off * off / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace vacpol::radial
