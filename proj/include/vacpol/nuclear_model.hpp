#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vacpol/quadrature.hpp"

namespace vacpol {

enum class ProfileKind { gaussian, uniform_ball, tabulated };

/// Spherically symmetric nuclear charge profile, normalized to unit total
/// charge. Lengths are electron Compton lengths (hbar = m = c = 1).
///
/// Evaluators:
///   density_at(r)            n(r) >= 0
///   fourier_at(k)            n_hat(k) = int n(x) exp(-i k.x) dx, n_hat(0) = 1
///   potential_at(r)          phi(r) = (|.|^-1 * n)(r)
///   potential_fourier_at(k)  phi_hat(k) = 4 pi n_hat(k) / k^2
///
/// Immutable after construction; all evaluators are reentrant.
class ChargeDensity {
  public:
    static ChargeDensity gaussian(double width);
    static ChargeDensity uniform_ball(double radius);
    /// Monotone-cubic interpolated table. The input is rescaled to unit total
    /// charge; below the first tabulated radius the density continues with its
    /// first value, above the last it is zero and the potential is exactly 1/r.
    static ChargeDensity tabulated(std::vector<double> radii, std::vector<double> values);
    /// Two-column text table "r n(r)", '#' starts a comment, radii strictly
    /// increasing, units Compton lengths.
    static ChargeDensity from_table_file(const std::string& path);

    ProfileKind kind() const { return kind_; }
    /// Gaussian width s, ball radius R, or the last tabulated radius.
    double size_parameter() const { return size_; }

    double density_at(double r) const;
    double fourier_at(double k) const;
    double potential_at(double r) const;
    double potential_fourier_at(double k) const;

    /// int_{R^3} dk k^2 log(2+|k|) |phi_hat(k)|^2 / (1+|k|), the Hilbert-Schmidt
    /// regularity diagnostic. Throws NumericalError when the tail fails to
    /// converge (inadmissible, point-charge-like profile).
    double regularity_integral(const quad::Options& opt = {}) const;

  private:
    ChargeDensity() = default;

    struct Table;

    ProfileKind kind_ = ProfileKind::gaussian;
    double size_ = 0.0;
    std::shared_ptr<const Table> table_;
};

/// Regularity diagnostic for an arbitrary radial Fourier profile n_hat(k);
/// the ChargeDensity overload forwards here. Exposed so that inadmissible
/// synthetic profiles (e.g. a point charge, n_hat == 1) can be probed.
double regularity_integral_fourier(const std::function<double(double)>& nhat,
                                   const quad::Options& opt = {});

} // namespace vacpol
