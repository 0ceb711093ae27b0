#pragma once

// Brute-force ground truth for the solver: concave closure of g - kappa c on
// a uniform posterior grid via an upper-hull scan. Shares nothing with the
// solver beyond evaluating c itself.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "inatt/errors.hpp"
#include "inatt/model.hpp"

namespace inatt {

/// Least concave majorant of samples on the uniform grid q_i = i / (N-1).
struct EnvelopeResult {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> envelope;
  /// Indices of the upper-hull vertices, increasing.
  std::vector<std::size_t> vertices;
  /// Grid points where the envelope touches the samples.
  std::vector<std::size_t> contact;

  /// Piecewise-linear envelope between hull vertices, at any q in [0,1].
  [[nodiscard]] double at(double q) const {
    const auto [j, k] = bracket(q);
    if (j == k) return values[j];
    const double lam = (q - grid[j]) / (grid[k] - grid[j]);
    return values[j] + lam * (values[k] - values[j]);
  }

  /// Consecutive hull vertices j <= k with grid[j] <= q <= grid[k].
  [[nodiscard]] std::pair<std::size_t, std::size_t> bracket(double q) const {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), q,
                                     [this](std::size_t idx, double v) { return grid[idx] < v; });
    if (it == vertices.end()) return {vertices.back(), vertices.back()};
    if (grid[*it] == q || it == vertices.begin()) return {*it, *it};
    return {*(it - 1), *it};
  }
};

inline constexpr double kContactTolerance = 1e-9;

inline EnvelopeResult concave_envelope(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw DomainError("concave envelope needs at least 2 samples");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("concave envelope: non-finite sample");
  }
  EnvelopeResult r;
  r.values.assign(values.begin(), values.end());
  r.grid.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  r.grid.back() = 1.0;

  // Monotone chain on integer abscissae; collinear middle points are dropped.
  auto& hull = r.vertices;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t o = hull[hull.size() - 2];
      const std::size_t a = hull.back();
      const double cross = static_cast<double>(a - o) * (values[i] - values[o]) -
                           (values[a] - values[o]) * static_cast<double>(i - o);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  r.envelope.resize(n);
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::size_t j = hull[s];
    const std::size_t k = hull[s + 1];
    for (std::size_t i = j; i <= k; ++i) {
      const double lam = static_cast<double>(i - j) / static_cast<double>(k - j);
      r.envelope[i] = values[j] + lam * (values[k] - values[j]);
    }
  }
  if (hull.size() == 1) r.envelope[0] = values[0];
  for (std::size_t i = 0; i < n; ++i) {
    r.envelope[i] = std::max(r.envelope[i], values[i]);
    if (r.envelope[i] - values[i] <= kContactTolerance * scale) r.contact.push_back(i);
  }
  return r;
}

namespace detail {

inline EnvelopeResult net_value_envelope(double u1_value, double kappa, const CostSpec& c, std::size_t grid_n) {
  if (grid_n < 101) throw DomainError("oracle posterior grid needs at least 101 points");
  if (grid_n % 2 == 0) throw DomainError("oracle posterior grid must have an odd number of points");
  if (!(u1_value >= 0.0) || !(kappa > 0.0)) throw DomainError("oracle needs u1 >= 0 and kappa > 0");
  std::vector<double> h(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(grid_n - 1);
    h[i] = u1_value * std::max(q, 1.0 - q) - kappa * c.value(q);
  }
  return concave_envelope(h);
}

}  // namespace detail

/// Solution read off an envelope of g - kappa c at prior p.
inline SolveReport oracle_report(const EnvelopeResult& env, double u1_value, double kappa, const CostSpec& c,
                                 double p) {
  SolveReport r;
  r.cutoff = 0.0;
  for (std::size_t v : env.vertices) {
    if (env.grid[v] <= 0.5) r.cutoff = env.grid[v];
  }
  const auto [j, k] = env.bracket(p);
  const double lo = env.grid[j];
  const double hi = env.grid[k];
  // A hull edge spanning more than one grid cell is a bridge over a
  // non-concave stretch: the optimal signal splits onto its endpoints.
  r.informative = k > j + 1 && p > lo && p < hi;
  if (r.informative) {
    r.signal = Signal::split(lo, hi, p);
    r.envelope = env.at(p);
  } else {
    r.signal = Signal::degenerate(p);
    r.envelope = u1_value * std::max(p, 1.0 - p) - kappa * c.value(p);
  }
  r.value = r.envelope + kappa * c.value(p);
  double acc = 0.0;
  for (const auto& a : r.signal.atoms()) acc += a.weight * std::max(a.posterior, 1.0 - a.posterior);
  r.accuracy = acc;
  r.effort = r.informative ? signal_cost(c, kappa, p, r.signal) : 0.0;
  return r;
}

inline SolveReport oracle_solve_at_prior(double u1_value, double kappa, const CostSpec& c, double p,
                                         std::size_t grid_n) {
  const auto env = detail::net_value_envelope(u1_value, kappa, c, grid_n);
  return oracle_report(env, u1_value, kappa, c, p);
}

inline SolveReport oracle_solve(double x, const Agent& agent, const Task& task, const CostSpec& c,
                                std::size_t grid_n) {
  return oracle_solve_at_prior(agent.u1(x), task.kappa(), c, canonical_prior(task.phi()), grid_n);
}

/// Envelope of g - kappa c itself, for plotting.
inline EnvelopeResult net_value_envelope(double u1_value, double kappa, const CostSpec& c, std::size_t grid_n) {
  return detail::net_value_envelope(u1_value, kappa, c, grid_n);
}

}  // namespace inatt
