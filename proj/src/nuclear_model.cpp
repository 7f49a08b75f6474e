#include "vacpol/nuclear_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vacpol/errors.hpp"

namespace vacpol {

namespace {

constexpr double k_pi = 3.14159265358979323846;

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// 3 (sin x - x cos x) / x^3, the uniform-ball form factor.
double ball_form_factor(double x) {
    if (x < 0.25) {
        const double x2 = x * x;
        return 1.0 + x2 * (-1.0 / 10.0 +
                           x2 * (1.0 / 280.0 +
                                 x2 * (-1.0 / 15120.0 + x2 / 1330560.0)));
    }
    return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

} // namespace

// Monotone cubic (Fritsch-Carlson) interpolated radial table with cumulative
// charge moments for the Newton-shell potential.
struct ChargeDensity::Table {
    std::vector<double> r;
    std::vector<double> n;
    std::vector<double> slope;
    std::vector<double> cum_q;  // 4 pi int_0^{r_i} n s^2 ds
    std::vector<double> cum_s;  // 4 pi int_{r_i}^{r_end} n s ds

    double front_density() const { return n.front(); }
    double front_radius() const { return r.front(); }
    double back_radius() const { return r.back(); }

    double value(double x) const {
        if (x <= r.front()) return n.front();
        if (x >= r.back()) return 0.0;
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
        const double h = r[i + 1] - r[i];
        const double t = (x - r[i]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * n[i] + h10 * h * slope[i] + h01 * n[i + 1] + h11 * h * slope[i + 1];
    }

    // Gauss integral of n(s) * weight(s) over [a, b] inside one segment; the
    // integrand is polynomial of degree <= 5, exact for GL8.
    template <typename W>
    double segment_integral(double a, double b, W&& weight) const {
        const auto& rule = quad::gauss_legendre(8);
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double s = mid + half * rule.x[i];
            acc += rule.w[i] * half * value(s) * weight(s);
        }
        return acc;
    }

    void build_moments() {
        const std::size_t m = r.size();
        cum_q.assign(m, 0.0);
        cum_s.assign(m, 0.0);
        cum_q[0] = 4.0 * k_pi * n.front() * r.front() * r.front() * r.front() / 3.0;
        for (std::size_t i = 0; i + 1 < m; ++i)
            cum_q[i + 1] = cum_q[i] + 4.0 * k_pi * segment_integral(r[i], r[i + 1],
                                                                    [](double s) { return s * s; });
        for (std::size_t i = m - 1; i > 0; --i)
            cum_s[i - 1] = cum_s[i] + 4.0 * k_pi * segment_integral(r[i - 1], r[i],
                                                                    [](double s) { return s; });
    }
};

ChargeDensity ChargeDensity::gaussian(double width) {
    if (!(width > 0.0))
        throw std::invalid_argument("gaussian nuclear profile requires width > 0 "
                                    "(a point charge is not admissible)");
    ChargeDensity d;
    d.kind_ = ProfileKind::gaussian;
    d.size_ = width;
    return d;
}

ChargeDensity ChargeDensity::uniform_ball(double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("uniform-ball nuclear profile requires radius > 0 "
                                    "(a point charge is not admissible)");
    ChargeDensity d;
    d.kind_ = ProfileKind::uniform_ball;
    d.size_ = radius;
    return d;
}

ChargeDensity ChargeDensity::tabulated(std::vector<double> radii, std::vector<double> values) {
    if (radii.size() != values.size())
        throw std::invalid_argument("tabulated profile: radii/values length mismatch");
    if (radii.size() < 4)
        throw std::invalid_argument("tabulated profile: need at least 4 samples");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!std::isfinite(radii[i]) || !std::isfinite(values[i]))
            throw std::invalid_argument("tabulated profile: non-finite entry");
        if (radii[i] <= 0.0)
            throw std::invalid_argument("tabulated profile: radii must be positive");
        if (values[i] < 0.0)
            throw std::invalid_argument("tabulated profile: density must be non-negative");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw std::invalid_argument("tabulated profile: radii must be strictly increasing");
    }

    auto table = std::make_shared<Table>();
    table->r = std::move(radii);
    table->n = std::move(values);

    // Fritsch-Carlson slopes: non-negative data stays non-negative.
    const std::size_t m = table->r.size();
    std::vector<double> h(m - 1), delta(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        h[i] = table->r[i + 1] - table->r[i];
        delta[i] = (table->n[i + 1] - table->n[i]) / h[i];
    }
    table->slope.assign(m, 0.0);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            table->slope[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            table->slope[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto edge_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    table->slope[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    table->slope[m - 1] = edge_slope(h[m - 2], h[m - 3], delta[m - 2], delta[m - 3]);

    // Rescale to unit total charge.
    table->build_moments();
    const double q_total = table->cum_q.back();
    if (!(q_total > 0.0))
        throw std::invalid_argument("tabulated profile: total charge is zero");
    for (auto& v : table->n) v /= q_total;
    for (auto& v : table->slope) v /= q_total;
    table->build_moments();

    ChargeDensity d;
    d.kind_ = ProfileKind::tabulated;
    d.size_ = table->r.back();
    d.table_ = std::move(table);
    return d;
}

ChargeDensity ChargeDensity::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open density table: " + path);
    std::vector<double> radii, values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double r, n;
        if (!(ls >> r)) continue; // blank or comment-only line
        if (!(ls >> n))
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected two columns (r, n)");
        radii.push_back(r);
        values.push_back(n);
    }
    try {
        return tabulated(std::move(radii), std::move(values));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

double ChargeDensity::density_at(double r) const {
    if (r < 0.0) throw std::domain_error("density_at requires r >= 0");
    switch (kind_) {
        case ProfileKind::gaussian: {
            const double s2 = size_ * size_;
            return std::pow(2.0 * k_pi * s2, -1.5) * std::exp(-r * r / (2.0 * s2));
        }
        case ProfileKind::uniform_ball:
            return r <= size_ ? 3.0 / (4.0 * k_pi * size_ * size_ * size_) : 0.0;
        case ProfileKind::tabulated:
            return table_->value(r);
    }
    return 0.0;
}

double ChargeDensity::fourier_at(double k) const {
    if (k < 0.0) throw std::domain_error("fourier_at requires k >= 0");
    switch (kind_) {
        case ProfileKind::gaussian:
            return std::exp(-size_ * size_ * k * k / 2.0);
        case ProfileKind::uniform_ball:
            return ball_form_factor(k * size_);
        case ProfileKind::tabulated: {
            const Table& t = *table_;
            // Flat core: 4 pi int_0^a n0 s^2 sinc(ks) ds.
            const double a = t.front_radius();
            double acc;
            if (k * a < 1e-6) {
                acc = 4.0 * k_pi * t.front_density() * a * a * a / 3.0 * sinc(k * a);
            } else if (k == 0.0) {
                acc = 4.0 * k_pi * t.front_density() * a * a * a / 3.0;
            } else {
                acc = 4.0 * k_pi * t.front_density() *
                      (std::sin(k * a) - k * a * std::cos(k * a)) / (k * k * k);
            }
            // Segments, chunked so each Gauss panel sees at most ~half an
            // oscillation of sinc(ks).
            for (std::size_t i = 0; i + 1 < t.r.size(); ++i) {
                const double lo = t.r[i], hi = t.r[i + 1];
                const int chunks = 1 + static_cast<int>((hi - lo) * std::max(k, 0.0) / k_pi);
                for (int c = 0; c < chunks; ++c) {
                    const double ca = lo + (hi - lo) * c / chunks;
                    const double cb = lo + (hi - lo) * (c + 1) / chunks;
                    acc += 4.0 * k_pi *
                           t.segment_integral(ca, cb, [k](double s) { return s * s * sinc(k * s); });
                }
            }
            return acc;
        }
    }
    return 0.0;
}

double ChargeDensity::potential_at(double r) const {
    if (r < 0.0) throw std::domain_error("potential_at requires r >= 0");
    switch (kind_) {
        case ProfileKind::gaussian: {
            const double u = r / (size_ * std::sqrt(2.0));
            if (u < 1e-4)
                return std::sqrt(2.0 / k_pi) / size_ * (1.0 - u * u / 3.0);
            return std::erf(u) / r;
        }
        case ProfileKind::uniform_ball: {
            const double R = size_;
            if (r <= R) return (3.0 * R * R - r * r) / (2.0 * R * R * R);
            return 1.0 / r;
        }
        case ProfileKind::tabulated: {
            const Table& t = *table_;
            if (r >= t.back_radius()) return 1.0 / r; // unit charge beyond the table
            const double a = t.front_radius();
            if (r <= a) {
                const double n0 = t.front_density();
                // Inside shell of the flat core plus all outer shells.
                const double inner = 4.0 * k_pi * n0 * r * r / 3.0;
                const double core_outer = 4.0 * k_pi * n0 * (a * a - r * r) / 2.0;
                return inner + core_outer + t.cum_s.front();
            }
            const auto it = std::upper_bound(t.r.begin(), t.r.end(), r);
            const std::size_t i = static_cast<std::size_t>(it - t.r.begin()) - 1;
            const double q = t.cum_q[i] +
                             4.0 * k_pi * t.segment_integral(t.r[i], r, [](double s) { return s * s; });
            const double s_out = t.cum_s[i] -
                                 4.0 * k_pi * t.segment_integral(t.r[i], r, [](double s) { return s; });
            return q / r + s_out;
        }
    }
    return 0.0;
}

double ChargeDensity::potential_fourier_at(double k) const {
    if (!(k > 0.0)) throw std::domain_error("potential_fourier_at requires k > 0");
    return 4.0 * k_pi * fourier_at(k) / (k * k);
}

double regularity_integral_fourier(const std::function<double(double)>& nhat,
                                   const quad::Options& opt) {
    // With phi_hat = 4 pi n_hat / k^2 the 3-D integral collapses to
    // 64 pi^3 int_0^inf n_hat(k)^2 log(2+k) / (1+k) dk.
    const double prefactor = 64.0 * k_pi * k_pi * k_pi;
    auto integrand = [&](double k) {
        const double v = nhat(k);
        return v * v * std::log(2.0 + k) / (1.0 + k);
    };

    double total = 0.0;
    double hi = 1.0;
    double lo = 0.0;
    double prev_block = std::numeric_limits<double>::infinity();
    int settled = 0;
    const double rel_tol = 1e-10;
    while (hi <= 2.0e7) {
        quad::Options block_opt = opt;
        block_opt.abs_tol = std::max(opt.abs_tol, rel_tol * (1.0 + std::abs(total)));
        block_opt.max_panels = 4000;
        const double block = quad::integrate(integrand, lo, hi, block_opt);
        total += block;
        if (std::abs(block) <= rel_tol * std::max(1.0, std::abs(total)) &&
            std::abs(block) <= prev_block + 1e-30) {
            if (++settled >= 2) return prefactor * total;
        } else {
            settled = 0;
        }
        prev_block = std::abs(block);
        lo = hi;
        hi *= 2.0;
    }
    throw NumericalError("regularity integral does not converge "
                         "(profile is not Hilbert-Schmidt admissible)");
}

double ChargeDensity::regularity_integral(const quad::Options& opt) const {
    return regularity_integral_fourier([this](double k) { return fourier_at(k); }, opt);
}

} // namespace vacpol
