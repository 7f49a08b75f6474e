#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vacpol/radial_dirac.hpp"

namespace vacpol::flow {

struct FlowContext {
    const ChargeDensity* density = nullptr;
    radial::RadialGrid grid;
    double edge_margin = 1e-3;
};

/// One continuity-matched eigenvalue path e(lambda) of a kappa channel.
/// Paths live in [-1 + edge_margin, 1 - edge_margin); a path that leaves
/// through the bottom between two sweep points records the first lambda at
/// which it was no longer seen.
struct Trajectory {
    int kappa = -1;
    int label = 0;
    std::vector<double> lambdas;
    std::vector<double> energies;
    std::optional<double> lambda_after_end; // set when the path dived mid-sweep

    double min_energy() const;
};

/// Sweep lambda in [0, lambda_max] over the requested channels on one grid.
/// Linking is order-preserving with the monotonicity slack and a jump
/// threshold of 5 x local step x observed slope; an impossible match throws
/// NumericalError (refine `steps`).
std::vector<Trajectory> sweep(const FlowContext& ctx, const std::vector<int>& channels,
                              double lambda_max, int steps, int threads = 1);

struct DivingEvent {
    int kappa = -1;
    double lambda_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int radial_multiplicity = 1;
    int physical_multiplicity = 2;
    // Same bisection at half the edge margin plus the linear Richardson
    // estimate of the margin -> 0 limit; NaN when the refinement bracket
    // exceeds the swept range.
    double lambda_star_half_margin = std::numeric_limits<double>::quiet_NaN();
    double lambda_star_richardson = std::numeric_limits<double>::quiet_NaN();
};

/// Bisect the coupling at which the trajectory reaches the diving threshold
/// -1 + edge_margin, to bracket width <= tol. Returns nullopt when the path
/// never reaches the threshold within the swept range.
std::optional<DivingEvent> find_diving(const FlowContext& ctx, const Trajectory& t,
                                       double tol);

/// Evaluator-driven variant for synthetic trajectories: `energy_at` must be
/// continuous and nonincreasing in lambda.
std::optional<DivingEvent> find_diving(const Trajectory& t, double tol,
                                       const std::function<double(double)>& energy_at,
                                       double threshold, double lambda_max);

/// d(lambda): total physical multiplicity of events with lambda_star <= lambda.
class CountingFunction {
  public:
    CountingFunction() = default;
    explicit CountingFunction(std::vector<DivingEvent> events);

    int operator()(double lambda) const;
    const std::vector<DivingEvent>& events() const { return events_; }

  private:
    std::vector<DivingEvent> events_;
};

/// Events must arrive sorted by lambda_star.
CountingFunction counting_function(std::vector<DivingEvent> events);

/// Vacuum charge e * d(lambda).
double vacuum_charge(const CountingFunction& cf, double lambda, double electron_charge);

/// CSV emitters (columns: kappa,lambda,i,e_i and kappa,lambda_star,multiplicity).
void write_trajectories_csv(std::ostream& out, const std::vector<Trajectory>& trajectories,
                            const std::vector<std::string>& header_lines = {});
void write_events_csv(std::ostream& out, const std::vector<DivingEvent>& events,
                      const std::vector<std::string>& header_lines = {});

} // namespace vacpol::flow
