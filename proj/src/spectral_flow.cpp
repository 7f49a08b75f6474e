#include "vacpol/spectral_flow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>

#include "vacpol/errors.hpp"

namespace vacpol::flow {

namespace {

constexpr double k_monotonicity_slack = 1e-8;
constexpr double k_default_slope = 2.0;

std::vector<double> gap_values_in_window(const FlowContext& ctx, int kappa, double lambda) {
    const auto op = radial::assemble(kappa, lambda, *ctx.density, ctx.grid);
    std::vector<double> values;
    const double threshold = -1.0 + ctx.edge_margin;
    for (const auto& g : radial::gap_eigenvalues(op, ctx.edge_margin))
        if (g.bound_state && g.value >= threshold) values.push_back(g.value);
    std::sort(values.begin(), values.end());
    return values;
}

struct Track {
    Trajectory traj;
    bool open = true;

    double last_energy() const { return traj.energies.back(); }
    double slope(double fallback) const {
        const auto& l = traj.lambdas;
        const auto& e = traj.energies;
        if (l.size() < 2) return fallback;
        const double dl = l.back() - l[l.size() - 2];
        if (dl <= 0.0) return fallback;
        return std::abs((e.back() - e[e.size() - 2]) / dl);
    }
};

} // namespace

double Trajectory::min_energy() const {
    double m = std::numeric_limits<double>::infinity();
    for (double e : energies) m = std::min(m, e);
    return m;
}

std::vector<Trajectory> sweep(const FlowContext& ctx, const std::vector<int>& channels,
                              double lambda_max, int steps, int threads) {
    if (ctx.density == nullptr) throw std::invalid_argument("sweep: null density");
    if (steps < 2) throw std::invalid_argument("sweep: need at least 2 lambda steps");
    if (!(lambda_max > 0.0)) throw std::invalid_argument("sweep: lambda_max must be positive");

    std::vector<double> lambdas(static_cast<std::size_t>(steps));
    for (int j = 0; j < steps; ++j)
        lambdas[static_cast<std::size_t>(j)] = lambda_max * j / (steps - 1);

    // Independent (kappa, lambda) eigenproblems, computed up front.
    const std::size_t n_tasks = channels.size() * lambdas.size();
    std::vector<std::vector<double>> spectra(n_tasks);
    auto task = [&](std::size_t flat) {
        const std::size_t c = flat / lambdas.size();
        const std::size_t j = flat % lambdas.size();
        spectra[flat] = gap_values_in_window(ctx, channels[c], lambdas[j]);
    };
    if (threads <= 1) {
        for (std::size_t f = 0; f < n_tasks; ++f) task(f);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t f = next.fetch_add(1); f < n_tasks; f = next.fetch_add(1)) task(f);
        };
        std::vector<std::future<void>> pool;
        for (int t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
        for (auto& fut : pool) fut.get();
    }

    std::vector<Trajectory> out;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const int kappa = channels[c];
        std::vector<Track> tracks;
        int next_label = 0;

        for (std::size_t j = 0; j < lambdas.size(); ++j) {
            const std::vector<double>& values = spectra[c * lambdas.size() + j];
            for (std::size_t i = 0; i + 1 < values.size(); ++i)
                if (values[i + 1] - values[i] < 1e-9)
                    throw NumericalError("sweep: two eigenvalue paths are numerically "
                                         "degenerate; refine the lambda grid");

            std::vector<Track*> open_tracks;
            for (Track& t : tracks)
                if (t.open) open_tracks.push_back(&t);
            std::sort(open_tracks.begin(), open_tracks.end(),
                      [](const Track* a, const Track* b) { return a->last_energy() < b->last_energy(); });

            if (j == 0) {
                for (double v : values) {
                    Track t;
                    t.traj.kappa = kappa;
                    t.traj.label = next_label++;
                    t.traj.lambdas.push_back(lambdas[j]);
                    t.traj.energies.push_back(v);
                    tracks.push_back(std::move(t));
                }
                continue;
            }

            const double dl = lambdas[j] - lambdas[j - 1];
            std::size_t n_lost = 0;
            bool linked = false;
            for (; n_lost <= open_tracks.size(); ++n_lost) {
                const std::size_t n_matched = open_tracks.size() - n_lost;
                if (values.size() < n_matched) continue;
                bool ok = true;
                for (std::size_t i = 0; i < n_matched && ok; ++i) {
                    const Track& t = *open_tracks[n_lost + i];
                    const double e_old = t.last_energy();
                    const double e_new = values[i];
                    if (e_new > e_old + k_monotonicity_slack) ok = false;
                    const double jump_threshold =
                        std::max(5.0 * t.slope(k_default_slope) * dl, 1e-3);
                    if (e_old - e_new > jump_threshold) ok = false;
                }
                if (ok) {
                    linked = true;
                    break;
                }
            }
            if (!linked)
                throw NumericalError("sweep: trajectory linking ambiguous at lambda = " +
                                     std::to_string(lambdas[j]) + "; refine the lambda grid");

            for (std::size_t i = 0; i < n_lost; ++i) {
                open_tracks[i]->open = false;
                open_tracks[i]->traj.lambda_after_end = lambdas[j];
            }
            const std::size_t n_matched = open_tracks.size() - n_lost;
            for (std::size_t i = 0; i < n_matched; ++i) {
                Track& t = *open_tracks[n_lost + i];
                t.traj.lambdas.push_back(lambdas[j]);
                t.traj.energies.push_back(values[i]);
            }
            for (std::size_t i = n_matched; i < values.size(); ++i) {
                Track t;
                t.traj.kappa = kappa;
                t.traj.label = next_label++;
                t.traj.lambdas.push_back(lambdas[j]);
                t.traj.energies.push_back(values[i]);
                tracks.push_back(std::move(t));
            }
        }
        for (Track& t : tracks) out.push_back(std::move(t.traj));
    }
    return out;
}

std::optional<DivingEvent> find_diving(const Trajectory& t, double tol,
                                       const std::function<double(double)>& energy_at,
                                       double threshold, double lambda_max) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_diving: tol must be positive");
    if (t.lambdas.empty()) return std::nullopt;

    double lo = t.lambdas.front();
    double hi = std::numeric_limits<double>::quiet_NaN();
    bool found = false;
    for (std::size_t i = 0; i < t.lambdas.size(); ++i) {
        if (energy_at(t.lambdas[i]) > threshold) {
            lo = t.lambdas[i];
        } else {
            hi = t.lambdas[i];
            found = true;
            break;
        }
    }
    if (!found) {
        if (t.lambda_after_end) {
            hi = *t.lambda_after_end;
            found = energy_at(hi) <= threshold;
        } else if (t.lambdas.back() < lambda_max) {
            // Sampled path stops short of lambda_max; probe the remainder.
            hi = lambda_max;
            found = energy_at(hi) <= threshold;
        }
    }
    if (!found) return std::nullopt;

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (energy_at(mid) > threshold)
            lo = mid;
        else
            hi = mid;
    }
    DivingEvent ev;
    ev.kappa = t.kappa;
    ev.bracket_lo = lo;
    ev.bracket_hi = hi;
    ev.lambda_star = 0.5 * (lo + hi);
    ev.radial_multiplicity = 1;
    ev.physical_multiplicity = 2 * std::abs(t.kappa);
    return ev;
}

std::optional<DivingEvent> find_diving(const FlowContext& ctx, const Trajectory& t,
                                       double tol) {
    if (ctx.density == nullptr) throw std::invalid_argument("find_diving: null density");
    const double threshold = -1.0 + ctx.edge_margin;

    // Crossing detection through the Sturm count relative to lambda = 0: exact
    // and cheap, and unaffected by other trajectories in the channel.
    const auto op0 = radial::assemble(t.kappa, 0.0, *ctx.density, ctx.grid);
    auto crossings = [&](double lambda, double level) {
        const auto op = radial::assemble(t.kappa, lambda, *ctx.density, ctx.grid);
        return radial::count_below(op, level) -
               radial::count_below(op0, level);
    };

    const double lambda_max =
        t.lambda_after_end ? *t.lambda_after_end : t.lambdas.back();
    const int base = crossings(t.lambdas.front(), threshold);
    auto tracked_alive = [&](double lambda) { return crossings(lambda, threshold) <= base; };

    // Locate the bracket from the sampled path, then bisect the predicate.
    double lo = t.lambdas.front();
    double hi = std::numeric_limits<double>::quiet_NaN();
    for (double l : t.lambdas) {
        if (tracked_alive(l))
            lo = l;
        else {
            hi = l;
            break;
        }
    }
    if (std::isnan(hi)) {
        if (!t.lambda_after_end) return std::nullopt;
        hi = *t.lambda_after_end;
        if (tracked_alive(hi)) return std::nullopt;
    }

    auto bisect = [&](double a, double b, auto&& alive) {
        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            if (alive(mid))
                a = mid;
            else
                b = mid;
        }
        return std::pair<double, double>(a, b);
    };
    const auto [blo, bhi] = bisect(lo, hi, tracked_alive);

    DivingEvent ev;
    ev.kappa = t.kappa;
    ev.bracket_lo = blo;
    ev.bracket_hi = bhi;
    ev.lambda_star = 0.5 * (blo + bhi);
    ev.radial_multiplicity = 1;
    ev.physical_multiplicity = 2 * std::abs(t.kappa);

    // Same bisection at half the margin; the threshold sits lower, so the
    // crossing happens at a slightly larger coupling.
    const double threshold_half = -1.0 + 0.5 * ctx.edge_margin;
    const int base_half = crossings(t.lambdas.front(), threshold_half);
    auto alive_half = [&](double lambda) {
        return crossings(lambda, threshold_half) <= base_half;
    };
    double hi_half = bhi;
    const double step = std::max(bhi - t.lambdas.front(), 10.0 * tol);
    while (alive_half(hi_half) && hi_half < lambda_max + step) hi_half += step;
    if (!alive_half(hi_half)) {
        const auto [hlo, hhi] = bisect(std::max(blo, ev.lambda_star - tol), hi_half, alive_half);
        ev.lambda_star_half_margin = 0.5 * (hlo + hhi);
        ev.lambda_star_richardson = 2.0 * ev.lambda_star_half_margin - ev.lambda_star;
    }
    return ev;
}

CountingFunction::CountingFunction(std::vector<DivingEvent> events)
    : events_(std::move(events)) {
    for (std::size_t i = 1; i < events_.size(); ++i)
        if (events_[i].lambda_star < events_[i - 1].lambda_star)
            throw std::invalid_argument("CountingFunction: events must be sorted by lambda_star");
}

int CountingFunction::operator()(double lambda) const {
    int d = 0;
    for (const DivingEvent& ev : events_)
        if (ev.lambda_star <= lambda) d += ev.physical_multiplicity;
    return d;
}

CountingFunction counting_function(std::vector<DivingEvent> events) {
    return CountingFunction(std::move(events));
}

double vacuum_charge(const CountingFunction& cf, double lambda, double electron_charge) {
    return electron_charge * cf(lambda);
}

namespace {

void write_header(std::ostream& out, const std::vector<std::string>& header_lines) {
    for (const auto& line : header_lines) out << "# " << line << "\n";
}

} // namespace

void write_trajectories_csv(std::ostream& out, const std::vector<Trajectory>& trajectories,
                            const std::vector<std::string>& header_lines) {
    write_header(out, header_lines);
    out << "kappa,lambda,i,e_i\n";
    char buf[64];
    for (const Trajectory& t : trajectories)
        for (std::size_t j = 0; j < t.lambdas.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%.17g", t.kappa, t.lambdas[j],
                          t.label, t.energies[j]);
            out << buf << "\n";
        }
}

void write_events_csv(std::ostream& out, const std::vector<DivingEvent>& events,
                      const std::vector<std::string>& header_lines) {
    write_header(out, header_lines);
    out << "kappa,lambda_star,multiplicity\n";
    char buf[64];
    for (const DivingEvent& ev : events) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%d", ev.kappa, ev.lambda_star,
                      ev.physical_multiplicity);
        out << buf << "\n";
    }
}

} // namespace vacpol::flow
