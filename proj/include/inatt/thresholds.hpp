#pragma once

// Information-acquisition thresholds.
//
//   kappa_w        largest difficulty at which w alone buys perfect information
//   phi_w_x(kappa) uncertainty above which information is acquired at reward x
//   phi_w(kappa)   the same at the lowest reward x0

#include <cmath>
#include <sstream>

#include "inatt/errors.hpp"
#include "inatt/model.hpp"
#include "inatt/solver.hpp"

namespace inatt {

/// sup{kappa > 0 : delta(x0, w, kappa) = 0}, found by bisection on the cutoff.
/// Independent of the cost slope at 0, so it also serves as a cross-check.
inline double kappa_w_by_bisection(const Agent& agent, const CostSpec& c, double tol = 1e-10) {
  c.require_valid();
  const double w = agent.w();
  if (w == 0.0) return 0.0;
  auto perfect = [&](double kappa) { return optimal_cutoff(w, kappa, c) == 0.0; };
  double lo = 0.0;
  double hi = w;
  int doublings = 0;
  while (perfect(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 1000) throw SearchFailure("kappa_w bisection: no upper bracket");
  }
  // Shrink the lower bracket until the corner holds or the bracket is exhausted.
  double probe = hi;
  while (lo == 0.0 && probe > tol) {
    probe *= 0.5;
    if (perfect(probe)) lo = probe;
  }
  if (lo == 0.0) return 0.0;
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (perfect(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Triviality threshold. With a finite slope c'(0+) the corner condition
/// -w - kappa c'(0+) >= 0 gives kappa_w = w / |c'(0+)|; an unbounded slope
/// gives 0.
inline double kappa_w(const Agent& agent, const CostSpec& c) {
  c.require_valid();
  const double w = agent.w();
  if (w == 0.0) return 0.0;
  const double slope = c.slope_at_zero();
  if (std::isinf(slope) && slope < 0.0) return 0.0;
  if (std::isfinite(slope) && slope < 0.0) return w / -slope;
  return kappa_w_by_bisection(agent, c);
}

inline double phi_w_x(double x, const Agent& agent, double kappa, const CostSpec& c) {
  return 2.0 * optimal_cutoff(agent.u1(x), kappa, c);
}

inline double phi_w(const Agent& agent, double kappa, const CostSpec& c) {
  return phi_w_x(agent.x0(), agent, kappa, c);
}

/// The unique kappa > kappa_w with phi_w(kappa) = phi, for phi in (0,1).
inline double phi_w_inverse(const Agent& agent, double phi, const CostSpec& c) {
  if (!(phi > 0.0 && phi < 1.0)) {
    std::ostringstream os;
    os << "phi_w inverse needs phi in (0,1), got " << phi;
    throw DomainError(os.str());
  }
  if (agent.w() == 0.0) {
    throw PreconditionError("phi_w is identically 1 when w = 0, so it has no inverse below 1");
  }
  const double kw = kappa_w(agent, c);
  double lo = kw;
  double hi = std::max(1.0, 2.0 * kw);
  int doublings = 0;
  while (phi_w(agent, hi, c) <= phi) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 1000) throw SearchFailure("phi_w inverse: target not bracketed");
  }
  for (int i = 0; i < 400 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi_w(agent, mid, c) < phi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double kappa = 0.5 * (lo + hi);
  if (std::abs(phi_w(agent, kappa, c) - phi) > 1e-8) {
    std::ostringstream os;
    os << "phi_w inverse: converged to kappa = " << kappa << " with phi_w = " << phi_w(agent, kappa, c)
       << " instead of " << phi;
    throw SearchFailure(os.str());
  }
  return kappa;
}

}  // namespace inatt
