#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "vacpol/quadrature.hpp"

namespace vacpol::kernel {

using ComplexVector = Eigen::VectorXcd;

/// Unitary discrete Fourier transform, (F x)_k = n^{-1/2} sum_j x_j w^{-jk}.
ComplexVector unitary_dft(const ComplexVector& x);
ComplexVector unitary_idft(const ComplexVector& x);

/// (1/sqrt n) sum_k |g_hat_k|: the l1 size of the symbol in the normalization
/// under which the impulse kernel saturates Cauchy-Schwarz.
double symbol_l1_norm(const ComplexVector& g);

/// Split g = h1 * h2 (plain circular convolution) through the modulus of its
/// symbol: h1_hat and h2_hat both carry |g_hat|^{1/2} (scaled by n^{-1/4}),
/// with the phase of g_hat assigned to h2 and sgn(0) = 0.
struct Factorization {
    ComplexVector h1;
    ComplexVector h2;
};
Factorization factorize(const ComplexVector& g);

/// Circular kernel K[i][j] = f1(i) g((i - j) mod n) f2(j) on a periodic grid.
struct DiscreteKernel {
    ComplexVector f1;
    ComplexVector f2;
    ComplexVector g;

    int size() const { return static_cast<int>(g.size()); }
    Eigen::MatrixXcd matrix() const;
};
DiscreteKernel make_kernel(ComplexVector f1, ComplexVector f2, ComplexVector g);

/// Hilbert-Schmidt factor matrices L1[i][k] = f1(i) h1(i-k),
/// L2[k][j] = h2(k-j) f2(j); their plain matrix product reproduces K.
struct FactorMatrices {
    Eigen::MatrixXcd l1;
    Eigen::MatrixXcd l2;
};
FactorMatrices factor_matrices(const DiscreteKernel& kernel);

/// Trace norm of K against the bound ||f1||_2 ||f2||_2 ||g_hat||_1.
struct TraceNormBound {
    double trace_norm;
    double bound;
    bool holds(double slack = 1e-10) const { return trace_norm <= bound * (1.0 + slack); }
};
TraceNormBound trace_norm_bound_check(const DiscreteKernel& kernel);

} // namespace vacpol::kernel
