#pragma once

// The robust complexity order: task b is at least as complex as task a when
// its expected accuracy is weakly below a's at every extrinsic reward.

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "inatt/errors.hpp"
#include "inatt/grid.hpp"
#include "inatt/model.hpp"
#include "inatt/solver.hpp"
#include "inatt/thresholds.hpp"

namespace inatt {

enum class Verdict { MoreComplex, LessComplex, Equivalent, Incomparable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::MoreComplex: return "MoreComplex";
    case Verdict::LessComplex: return "LessComplex";
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::Incomparable: return "Incomparable";
  }
  return "?";
}

/// Verdict seen from the other argument order.
inline Verdict swapped(Verdict v) {
  if (v == Verdict::MoreComplex) return Verdict::LessComplex;
  if (v == Verdict::LessComplex) return Verdict::MoreComplex;
  return v;
}

inline Verdict verdict_from(bool b_over_a, bool a_over_b) {
  if (b_over_a && a_over_b) return Verdict::Equivalent;
  if (b_over_a) return Verdict::MoreComplex;
  if (a_over_b) return Verdict::LessComplex;
  return Verdict::Incomparable;
}

/// Answer to "is b more complex than a", with the quantities behind it.
struct ComparisonResult {
  Verdict verdict = Verdict::Incomparable;
  bool b_over_a = false;  // b weakly more complex than a
  bool a_over_b = false;
  bool a_trivial = false;
  bool b_trivial = false;
  double kappa_w = 0.0;
  double phi_w_a = 0.0;  // phi_w(kappa_a)
  double phi_w_b = 0.0;
  double cap_a = 0.0;  // min{phi_w(kappa_a), phi_a}
  double cap_b = 0.0;
};

inline bool is_trivial(const Task& task, const Agent& agent, const CostSpec& c) {
  return task.kappa() <= kappa_w(agent, c);
}

namespace detail {

struct OrderView {
  double kappa;
  double phi;
  double phi_w;
  bool trivial;

  // Accuracy is identically 1: either information is perfect at every
  // reward, or the prior is already degenerate (phi = 0).
  [[nodiscard]] bool bottom() const { return trivial || phi == 0.0; }
  [[nodiscard]] double cap() const { return std::min(phi_w, phi); }
};

inline OrderView view(const Task& t, const Agent& agent, const CostSpec& c, double kw) {
  return OrderView{t.kappa(), t.phi(), phi_w(agent, t.kappa(), c), t.kappa() <= kw};
}

// hi weakly more complex than lo.
inline bool dominates(const OrderView& hi, const OrderView& lo) {
  if (lo.bottom()) return true;
  if (hi.bottom()) return false;
  return hi.kappa >= lo.kappa && hi.phi >= lo.cap();
}

}  // namespace detail

/// Closed-form comparison: among non-trivial tasks, b >= a iff
/// kappa_b >= kappa_a and phi_b >= min{phi_w(kappa_a), phi_a}. Trivial tasks
/// (and tasks with phi = 0, whose accuracy is also identically 1) form the
/// bottom equivalence class.
inline ComparisonResult compare(const Task& a, const Task& b, const Agent& agent, const CostSpec& c) {
  const double kw = kappa_w(agent, c);
  const auto va = detail::view(a, agent, c, kw);
  const auto vb = detail::view(b, agent, c, kw);
  ComparisonResult r;
  r.kappa_w = kw;
  r.a_trivial = va.trivial;
  r.b_trivial = vb.trivial;
  r.phi_w_a = va.phi_w;
  r.phi_w_b = vb.phi_w;
  r.cap_a = va.cap();
  r.cap_b = vb.cap();
  r.b_over_a = detail::dominates(vb, va);
  r.a_over_b = detail::dominates(va, vb);
  r.verdict = verdict_from(r.b_over_a, r.a_over_b);
  return r;
}

inline constexpr double kSweepTolerance = 1e-9;

/// Definition-level comparison: b >= a iff F_b(x) <= F_a(x) + tol at every
/// reward of the grid.
inline ComparisonResult compare_by_sweep(const Task& a, const Task& b, const Agent& agent, const CostSpec& c,
                                         std::span<const double> x_grid, double tol = kSweepTolerance) {
  if (x_grid.empty()) throw DomainError("reward grid for the sweep comparison is empty");
  bool b_over_a = true;
  bool a_over_b = true;
  for (double x : x_grid) {
    const double fa = expected_accuracy(x, agent, a, c);
    const double fb = expected_accuracy(x, agent, b, c);
    if (fb > fa + tol) b_over_a = false;
    if (fa > fb + tol) a_over_b = false;
  }
  ComparisonResult r;
  r.kappa_w = kappa_w(agent, c);
  r.a_trivial = a.kappa() <= r.kappa_w;
  r.b_trivial = b.kappa() <= r.kappa_w;
  r.phi_w_a = phi_w(agent, a.kappa(), c);
  r.phi_w_b = phi_w(agent, b.kappa(), c);
  r.cap_a = std::min(r.phi_w_a, a.phi());
  r.cap_b = std::min(r.phi_w_b, b.phi());
  r.b_over_a = b_over_a;
  r.a_over_b = a_over_b;
  r.verdict = verdict_from(b_over_a, a_over_b);
  return r;
}

inline constexpr std::size_t kDefaultSweepPoints = 41;

/// Default rewards for a sweep comparison of a and b: x0, then `count - 1`
/// utilities geometric between kappa_min |c'(1/4)| and kappa_max |c'(1e-10)|,
/// where the cutoff of either task moves from the interior down to within
/// 1e-10 of perfect information.
///
/// Accuracy curves separate only where a cutoff crosses a prior, i.e. at
/// utilities kappa_i |c'(p_j)|. Those breakpoints and the geometric midpoints
/// between the two tasks' breakpoints for the same prior are added, so
/// windows narrower than the base spacing are still sampled.
inline std::vector<double> default_sweep_grid(const Agent& agent, const CostSpec& c, const Task& a, const Task& b,
                                              std::size_t count = kDefaultSweepPoints) {
  const double kappa_min = std::min(a.kappa(), b.kappa());
  const double kappa_max = std::max(a.kappa(), b.kappa());
  const double u_lo = kappa_min * -c.derivative(0.25);
  const double u_hi = kappa_max * -c.derivative(1e-10);
  std::vector<double> grid = utility_grid(agent, u_lo, u_hi, count);
  for (double phi : {a.phi(), b.phi()}) {
    const double p = canonical_prior(phi);
    if (!(p > 0.0 && p < 0.5)) continue;
    const double slope = -c.derivative(p);
    if (!std::isfinite(slope) || !(slope > 0.0)) continue;
    for (double u : {a.kappa() * slope, b.kappa() * slope, std::sqrt(a.kappa() * b.kappa()) * slope}) {
      if (u >= agent.w()) grid.push_back(agent.reward_for_utility(u));
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// (kappa, min{phi_w(kappa), phi}); coordinatewise order reproduces the
/// complexity order on non-trivial tasks.
inline std::pair<double, double> vector_utility(const Task& task, const Agent& agent, const CostSpec& c) {
  const double kw = kappa_w(agent, c);
  if (task.kappa() <= kw) {
    std::ostringstream os;
    os << "task " << task << " is trivial: kappa <= kappa_w = " << kw;
    throw DomainError(os.str());
  }
  return {task.kappa(), std::min(phi_w(agent, task.kappa(), c), task.phi())};
}

}  // namespace inatt
