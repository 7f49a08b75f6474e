#include "vacpol/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace vacpol::quad {

namespace {

GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.x.resize(static_cast<std::size_t>(n));
    rule.w.resize(static_cast<std::size_t>(n));
    const double pi = 2.0 * std::asin(1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.x[static_cast<std::size_t>(i)] = -x;
        rule.x[static_cast<std::size_t>(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.w[static_cast<std::size_t>(i)] = w;
        rule.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double agm(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("agm requires positive arguments");
    for (int i = 0; i < 64; ++i) {
        double am = 0.5 * (a + b);
        double gm = std::sqrt(a * b);
        if (std::abs(am - gm) <= 1e-17 * am) return am;
        a = am;
        b = gm;
    }
    return 0.5 * (a + b);
}

double resolvent_pair_norm_integral(double d1, double d2) {
    const double pi = 2.0 * std::asin(1.0);
    return pi / agm(d1, d2);
}

double sine_integral_semi_infinite(const std::function<double(double)>& g, double r,
                                   const Options& opt) {
    if (!(r > 0.0)) throw std::domain_error("sine_integral_semi_infinite requires r > 0");
    const double pi = 2.0 * std::asin(1.0);
    const double period = pi / r;

    Options panel_opt = opt;
    panel_opt.abs_tol = std::max(opt.abs_tol * 0.01, 1e-15);
    panel_opt.max_panels = 512;

    auto integrand = [&](double k) { return g(k) * std::sin(k * r); };

    // Iterated-averaging table over the most recent partial sums.
    constexpr int table_depth = 14;
    std::vector<double> partial;
    partial.reserve(1024);

    double sum = 0.0;
    double prev_estimate = std::numeric_limits<double>::quiet_NaN();
    const int max_zero_panels = 200000;
    int consecutive_small = 0;

    for (int j = 0; j < max_zero_panels; ++j) {
        const double lo = j * period;
        const double hi = (j + 1) * period;
        double piece = integrate(integrand, lo, hi, panel_opt);
        sum += piece;
        partial.push_back(sum);

        if (std::abs(piece) < 0.05 * opt.abs_tol) {
            if (++consecutive_small >= 3) return sum;
        } else {
            consecutive_small = 0;
        }

        if (partial.size() >= table_depth) {
            std::vector<double> row(partial.end() - table_depth, partial.end());
            for (int level = 1; level < table_depth; ++level)
                for (int i = 0; i + level < table_depth; ++i)
                    row[static_cast<std::size_t>(i)] =
                        0.5 * (row[static_cast<std::size_t>(i)] +
                               row[static_cast<std::size_t>(i) + 1]);
            double estimate = row[0];
            if (std::isfinite(prev_estimate) &&
                std::abs(estimate - prev_estimate) < 0.5 * opt.abs_tol)
                return estimate;
            prev_estimate = estimate;
        }
    }
    throw NumericalError("oscillatory sine integral tail did not converge (r = " +
                         std::to_string(r) + ")");
}

} // namespace vacpol::quad
