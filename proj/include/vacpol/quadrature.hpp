#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "vacpol/errors.hpp"

namespace vacpol::quad {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Cached Gauss-Legendre rule (Newton iteration on Legendre polynomials).
const GaussRule& gauss_legendre(int n);

struct Options {
    double abs_tol = 1e-10;
    int max_panels = 20000;
    int panel_order = 16;
};

namespace detail {

inline double error_norm(double v) { return std::abs(v); }
inline double error_norm(const std::complex<double>& v) { return std::abs(v); }
template <typename Derived>
double error_norm(const Eigen::MatrixBase<Derived>& m) {
    return m.norm();
}

} // namespace detail

/// Adaptive Gauss-Legendre integration of f over the finite interval [a, b].
/// Panels are bisected until the GL(n) vs split-panel discrepancy summed over
/// all panels drops below abs_tol. Works for double, complex and Eigen matrix
/// values. Deterministic: panels are refined and summed in interval order.
template <typename F>
auto integrate(F&& f, double a, double b, const Options& opt = {})
    -> decltype(f(0.5 * (a + b))) {
    using Value = decltype(f(0.5 * (a + b)));
    const GaussRule& rule = gauss_legendre(opt.panel_order);

    auto panel_value = [&](double lo, double hi) -> Value {
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        std::optional<Value> acc;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            Value term = f(mid + half * rule.x[i]) * (rule.w[i] * half);
            if (acc)
                *acc = *acc + term;
            else
                acc = term;
        }
        return *acc;
    };

    struct Panel {
        double a, b;
        Value value;
        double err;
    };

    auto make_panel = [&](double lo, double hi) -> Panel {
        Value whole = panel_value(lo, hi);
        const double mid = 0.5 * (lo + hi);
        Value split = panel_value(lo, mid) + panel_value(mid, hi);
        return Panel{lo, hi, split, detail::error_norm(Value(whole - split))};
    };

    std::vector<Panel> panels;
    panels.push_back(make_panel(a, b));
    while (true) {
        double total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total_err += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        if (total_err <= opt.abs_tol) break;
        if (static_cast<int>(panels.size()) >= opt.max_panels)
            throw NumericalError("adaptive quadrature did not converge: " +
                                 std::to_string(panels.size()) + " panels, residual error " +
                                 std::to_string(total_err));
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        panels[worst] = make_panel(p.a, mid);
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      make_panel(mid, p.b));
    }

    std::optional<Value> total;
    for (const Panel& p : panels) {
        if (total)
            *total = *total + p.value;
        else
            total = p.value;
    }
    return *total;
}

/// Integral of f over the whole real line via the substitution eta = tan(theta).
/// Requires |f(eta)| = o(|eta|^-2) so that the transformed integrand vanishes at
/// the endpoints. Integrands with an odd O(1/eta) part must use the even-pair
/// variant below.
template <typename F>
auto integrate_real_line(F&& f, const Options& opt = {}) -> decltype(f(0.0)) {
    const double half_pi = std::asin(1.0);
    return integrate(
        [&f](double theta) {
            const double c = std::cos(theta);
            return f(std::tan(theta)) * (1.0 / (c * c));
        },
        -half_pi, half_pi, opt);
}

/// Integral of f over the real line written as int_0^{pi/2} [f(tan t) + f(-tan t)] sec^2 t dt.
/// The pairing cancels the odd part exactly, so resolvent-type integrands with
/// leading odd O(1/eta) behavior stay bounded after the tan substitution.
template <typename F>
auto integrate_real_line_even_pair(F&& f, const Options& opt = {})
    -> decltype(f(0.0)) {
    const double half_pi = std::asin(1.0);
    return integrate(
        [&f](double theta) {
            const double c = std::cos(theta);
            const double eta = std::tan(theta);
            return (f(eta) + f(-eta)) * (1.0 / (c * c));
        },
        0.0, half_pi, opt);
}

/// Arithmetic-geometric mean of two positive numbers.
double agm(double a, double b);

/// int_{-inf}^{inf} deta [(d1^2+eta^2)(d2^2+eta^2)]^{-1/2} = pi / agm(d1, d2).
double resolvent_pair_norm_integral(double d1, double d2);

/// int_0^infty g(k) sin(k r) dk for a smooth envelope g.
/// Panels run between consecutive zeros of sin(k r); the alternating tail of
/// partial sums is accelerated by iterated averaging (Euler transform).
/// Throws NumericalError when the accelerated tail fails to settle.
double sine_integral_semi_infinite(const std::function<double(double)>& g, double r,
                                   const Options& opt = {});

} // namespace vacpol::quad
