#pragma once

// Optimal attention at a single reward. With a symmetric strictly convex
// cost the concave closure of g - kappa c is flat on (delta, 1 - delta) and
// coincides with g - kappa c elsewhere, so the whole solution is pinned down
// by the cutoff delta.

#include <algorithm>
#include <cmath>

#include "inatt/errors.hpp"
#include "inatt/model.hpp"

namespace inatt {

namespace detail {

inline void check_incentive(double u1_value, double kappa) {
  if (!(u1_value >= 0.0) || !std::isfinite(u1_value)) throw DomainError("utility of a correct guess must be >= 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("difficulty kappa must be finite and > 0");
}

/// g(q) - kappa c(q) with g(q) = u1 max(q, 1-q).
inline double net_value(double u1_value, double kappa, const CostSpec& c, double q) {
  return u1_value * std::max(q, 1.0 - q) - kappa * c.value(q);
}

}  // namespace detail

/// Guaranteed accuracy of optimal_cutoff; the bisection itself runs until the
/// bracket cannot be split further in double precision.
inline constexpr double kCutoffTolerance = 1e-12;
inline constexpr int kCutoffMaxIterations = 200;

/// argmax over q in [0, 1/2] of u1 (1 - q) - kappa c(q), by bisection on the
/// first-order condition -u1 - kappa c'(q) = 0.
inline double optimal_cutoff(double u1_value, double kappa, const CostSpec& c) {
  detail::check_incentive(u1_value, kappa);
  c.require_valid();
  auto slope = [&](double q) { return -u1_value - kappa * c.derivative(q); };
  if (slope(0.0) <= 0.0) return 0.0;
  if (slope(0.5) >= 0.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < kCutoffMaxIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double s = slope(mid);
    if (s == 0.0) return mid;
    if (s > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Optimal signal for an arbitrary prior p in [0,1] when a correct guess is
/// worth u1_value. At p == delta the agent is indifferent and the
/// uninformative signal is returned.
inline SolveReport solve_at_prior(double u1_value, double kappa, const CostSpec& c, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("prior outside [0,1]");
  SolveReport r;
  r.cutoff = optimal_cutoff(u1_value, kappa, c);
  const double near = std::min(p, 1.0 - p);
  r.informative = near > r.cutoff;
  if (r.informative) {
    const double delta = r.cutoff;
    r.signal = Signal::split(delta, 1.0 - delta, p);
    r.envelope = detail::net_value(u1_value, kappa, c, delta);
    r.accuracy = 1.0 - delta;
    r.effort = kappa * (c.value(delta) - c.value(p));
  } else {
    r.signal = Signal::degenerate(p);
    r.envelope = detail::net_value(u1_value, kappa, c, p);
    r.accuracy = std::max(p, 1.0 - p);
    r.effort = 0.0;
  }
  r.value = r.envelope + kappa * c.value(p);
  return r;
}

/// Solution at reward x for the canonical prior of the task.
inline SolveReport optimal_signal(double x, const Agent& agent, const Task& task, const CostSpec& c) {
  return solve_at_prior(agent.u1(x), task.kappa(), c, canonical_prior(task.phi()));
}

/// Probability of a correct guess under the optimal signal:
/// max{1 - phi/2, 1 - delta_x}.
inline double expected_accuracy(double x, const Agent& agent, const Task& task, const CostSpec& c) {
  const double delta = optimal_cutoff(agent.u1(x), task.kappa(), c);
  return std::max(1.0 - task.phi() / 2.0, 1.0 - delta);
}

/// Information cost incurred at the optimal signal.
inline double effort(double x, const Agent& agent, const Task& task, const CostSpec& c) {
  const double delta = optimal_cutoff(agent.u1(x), task.kappa(), c);
  const double p = canonical_prior(task.phi());
  if (!(p > delta)) return 0.0;
  return task.kappa() * (c.value(delta) - c.value(p));
}

}  // namespace inatt
