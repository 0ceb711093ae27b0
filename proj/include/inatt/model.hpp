#pragma once

// Domain types of the binary guessing model: the symmetric information-cost
// catalog, the agent's reward utility, tasks, signals and solve reports.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "inatt/errors.hpp"

namespace inatt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Cost functions
// ---------------------------------------------------------------------------

/// c(q) = q^2 - q.
struct QuadraticCost {};

/// c(q) = q ln q + (1-q) ln(1-q), with 0 ln 0 = 0.
struct ShannonCost {};

/// c(q) = (q^s + (1-q)^s - 2^(1-s)) / (s (s-1)).
struct TsallisCost {
  double sigma;
};

/// Piecewise-linear interpolation of user-supplied samples on [0,1].
struct TabulatedCost {
  std::vector<double> q;
  std::vector<double> c;
};

/// Outcome of the symmetry / strict-convexity checks on a validation grid.
struct CostValidation {
  bool finite = true;
  bool symmetric = true;
  bool strictly_convex = true;
  double max_asymmetry = 0.0;
  /// Smallest second difference (catalog) or slope increment (tabulated).
  double min_curvature = kInf;
  std::string message;

  [[nodiscard]] bool ok() const { return finite && symmetric && strictly_convex; }
};

/// Marginal information-cost function c on [0,1]. Immutable; validation is
/// computed once at construction and enforced by require_valid().
class CostSpec {
public:
  using Kind = std::variant<QuadraticCost, ShannonCost, TsallisCost, TabulatedCost>;

  static CostSpec quadratic() { return CostSpec(QuadraticCost{}); }
  static CostSpec shannon() { return CostSpec(ShannonCost{}); }

  static CostSpec tsallis(double sigma) {
    if (!(sigma > 0.0) || sigma == 1.0 || !std::isfinite(sigma)) {
      throw DomainError("tsallis cost requires sigma > 0 and sigma != 1");
    }
    return CostSpec(TsallisCost{sigma});
  }

  /// Nodes must start at 0, end at 1 and be strictly increasing. The samples
  /// are not required to be symmetric or convex here; validation() reports
  /// that and require_valid() refuses to use them.
  static CostSpec tabulated(std::vector<double> q, std::vector<double> c) {
    if (q.size() != c.size()) {
      throw DomainError("tabulated cost: q and c columns differ in length");
    }
    if (q.size() < 3) {
      throw DomainError("tabulated cost: at least 3 samples are required");
    }
    if (q.front() != 0.0 || q.back() != 1.0) {
      throw DomainError("tabulated cost: samples must span q = 0 to q = 1");
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!std::isfinite(q[i]) || !std::isfinite(c[i])) {
        throw DomainError("tabulated cost: non-finite sample");
      }
      if (i > 0 && !(q[i] > q[i - 1])) {
        throw DomainError("tabulated cost: q must be strictly increasing");
      }
    }
    return CostSpec(TabulatedCost{std::move(q), std::move(c)});
  }

  [[nodiscard]] const Kind& kind() const { return kind_; }

  [[nodiscard]] std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, QuadraticCost>) {
            return "quadratic";
          } else if constexpr (std::is_same_v<K, ShannonCost>) {
            return "shannon";
          } else if constexpr (std::is_same_v<K, TsallisCost>) {
            std::ostringstream os;
            os << "tsallis(" << k.sigma << ")";
            return os.str();
          } else {
            return "tabulated(" + std::to_string(k.q.size()) + ")";
          }
        },
        kind_);
  }

  /// c(q) for q in [0,1].
  [[nodiscard]] double value(double q) const {
    check_unit(q, "cost");
    return std::visit([q](const auto& k) { return value_of(k, q); }, kind_);
  }

  /// c'(q). At q = 0 and q = 1 the one-sided limit is returned, which is
  /// -inf / +inf for costs with an unbounded logit-type slope.
  [[nodiscard]] double derivative(double q) const {
    check_unit(q, "cost derivative");
    return std::visit([q](const auto& k) { return derivative_of(k, q); }, kind_);
  }

  /// c'(0+); may be -inf.
  [[nodiscard]] double slope_at_zero() const { return derivative(0.0); }

  [[nodiscard]] const CostValidation& validation() const { return validation_; }

  void require_valid() const {
    if (!validation_.ok()) {
      throw InvariantError("invalid cost function " + name() + ": " + validation_.message);
    }
  }

  /// Re-run the checks on a uniform grid of the given size.
  [[nodiscard]] CostValidation validate(std::size_t grid_size) const;

private:
  explicit CostSpec(Kind kind) : kind_(std::move(kind)), validation_(validate(1001)) {}

  static void check_unit(double q, const char* what) {
    if (!(q >= 0.0 && q <= 1.0)) {
      std::ostringstream os;
      os << what << ": posterior " << q << " outside [0,1]";
      throw DomainError(os.str());
    }
  }

  static double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

  static double value_of(const QuadraticCost&, double q) { return q * q - q; }
  static double value_of(const ShannonCost&, double q) { return xlogx(q) + xlogx(1.0 - q); }
  static double value_of(const TsallisCost& t, double q) {
    const double s = t.sigma;
    return (std::pow(q, s) + std::pow(1.0 - q, s) - std::pow(2.0, 1.0 - s)) / (s * (s - 1.0));
  }
  static double value_of(const TabulatedCost& t, double q) {
    const auto it = std::upper_bound(t.q.begin(), t.q.end(), q);
    if (it == t.q.end()) return t.c.back();
    const auto i = static_cast<std::size_t>(it - t.q.begin());
    const double lam = (q - t.q[i - 1]) / (t.q[i] - t.q[i - 1]);
    return t.c[i - 1] + lam * (t.c[i] - t.c[i - 1]);
  }

  static double derivative_of(const QuadraticCost&, double q) { return 2.0 * q - 1.0; }
  static double derivative_of(const ShannonCost&, double q) {
    if (q == 0.0) return -kInf;
    if (q == 1.0) return kInf;
    return std::log(q / (1.0 - q));
  }
  static double derivative_of(const TsallisCost& t, double q) {
    const double e = t.sigma - 1.0;
    if (e < 0.0) {
      if (q == 0.0) return -kInf;
      if (q == 1.0) return kInf;
    }
    return (std::pow(q, e) - std::pow(1.0 - q, e)) / e;
  }
  // Centered differences at the nodes, one-sided at the ends, linearly
  // interpolated in between. Monotone whenever the samples are convex.
  static double derivative_of(const TabulatedCost& t, double q) {
    const std::size_t n = t.q.size();
    auto node = [&t, n](std::size_t i) {
      if (i == 0) return (t.c[1] - t.c[0]) / (t.q[1] - t.q[0]);
      if (i == n - 1) return (t.c[n - 1] - t.c[n - 2]) / (t.q[n - 1] - t.q[n - 2]);
      return (t.c[i + 1] - t.c[i - 1]) / (t.q[i + 1] - t.q[i - 1]);
    };
    const auto it = std::upper_bound(t.q.begin(), t.q.end(), q);
    if (it == t.q.end()) return node(n - 1);
    const auto i = static_cast<std::size_t>(it - t.q.begin());
    const double lam = (q - t.q[i - 1]) / (t.q[i] - t.q[i - 1]);
    return node(i - 1) + lam * (node(i) - node(i - 1));
  }

  Kind kind_;
  CostValidation validation_;
};

inline CostValidation CostSpec::validate(std::size_t grid_size) const {
  CostValidation report;
  if (grid_size < 3) {
    report.finite = false;
    report.message = "validation grid needs at least 3 points";
    return report;
  }
  constexpr double kSymmetryTol = 1e-10;
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  std::vector<double> values(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double q = static_cast<double>(i) * step;
    values[i] = std::visit([q](const auto& k) { return value_of(k, q); }, kind_);
    if (!std::isfinite(values[i])) report.finite = false;
  }
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double gap = std::abs(values[i] - values[grid_size - 1 - i]);
    report.max_asymmetry = std::max(report.max_asymmetry, gap);
  }
  report.symmetric = report.max_asymmetry <= kSymmetryTol;

  if (const auto* tab = std::get_if<TabulatedCost>(&kind_)) {
    // The interpolant is linear between nodes, so strictness is a property
    // of the node slopes.
    for (std::size_t i = 1; i + 1 < tab->q.size(); ++i) {
      const double left = (tab->c[i] - tab->c[i - 1]) / (tab->q[i] - tab->q[i - 1]);
      const double right = (tab->c[i + 1] - tab->c[i]) / (tab->q[i + 1] - tab->q[i]);
      report.min_curvature = std::min(report.min_curvature, right - left);
    }
  } else {
    for (std::size_t i = 1; i + 1 < grid_size; ++i) {
      report.min_curvature =
          std::min(report.min_curvature, values[i - 1] - 2.0 * values[i] + values[i + 1]);
    }
  }
  report.strictly_convex = report.min_curvature > 0.0;

  std::ostringstream msg;
  if (!report.finite) msg << "non-finite values; ";
  if (!report.symmetric) msg << "asymmetric (max |c(q)-c(1-q)| = " << report.max_asymmetry << "); ";
  if (!report.strictly_convex) msg << "not strictly convex (min curvature " << report.min_curvature << "); ";
  report.message = msg.str();
  return report;
}

inline double eval_cost(const CostSpec& c, double q) { return c.value(q); }

inline double eval_cost_derivative(const CostSpec& c, double q) { return c.derivative(q); }

/// Symmetry and strict-convexity report; never throws on a failed check.
inline CostValidation validate_cost(const CostSpec& c, std::size_t grid_size) {
  return c.validate(grid_size);
}

// ---------------------------------------------------------------------------
// Agent
// ---------------------------------------------------------------------------

/// u1(x) = w + beta (x - x0).
struct LinearUtility {
  double beta = 1.0;
};

/// u1(x) = w + (x - x0)^gamma.
struct PowerUtility {
  double gamma = 1.0;
};

using UtilityFamily = std::variant<LinearUtility, PowerUtility>;

/// Intrinsic incentive w = u1(x0) plus the reward utility of a correct guess.
/// A wrong guess is worth the normalisation 0 at every reward.
class Agent {
public:
  explicit Agent(double w, UtilityFamily family = LinearUtility{}, double x0 = 0.0)
      : w_(w), family_(family), x0_(x0) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("intrinsic incentive w must be finite and >= 0");
    if (!std::isfinite(x0)) throw DomainError("lowest reward x0 must be finite");
    std::visit(
        [](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, LinearUtility>) {
            if (!(f.beta > 0.0) || !std::isfinite(f.beta)) throw DomainError("linear utility requires beta > 0");
          } else {
            if (!(f.gamma > 0.0) || !std::isfinite(f.gamma)) throw DomainError("power utility requires gamma > 0");
          }
        },
        family_);
  }

  [[nodiscard]] double w() const { return w_; }
  [[nodiscard]] double x0() const { return x0_; }
  [[nodiscard]] const UtilityFamily& family() const { return family_; }

  /// Utility of a correct guess at reward x >= x0.
  [[nodiscard]] double u1(double x) const {
    if (!(x >= x0_)) {
      std::ostringstream os;
      os << "reward " << x << " below the lowest reward x0 = " << x0_;
      throw DomainError(os.str());
    }
    const double dx = x - x0_;
    return std::visit(
        [this, dx](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, LinearUtility>) {
            return w_ + f.beta * dx;
          } else {
            return w_ + std::pow(dx, f.gamma);
          }
        },
        family_);
  }

  /// Reward at which u1 reaches u >= w.
  [[nodiscard]] double reward_for_utility(double u) const {
    if (!(u >= w_)) throw DomainError("utility below u1(x0) = w is not attained");
    const double du = u - w_;
    return std::visit(
        [this, du](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, LinearUtility>) {
            return x0_ + du / f.beta;
          } else {
            return x0_ + std::pow(du, 1.0 / f.gamma);
          }
        },
        family_);
  }

  [[nodiscard]] Agent with_w(double w) const { return Agent(w, family_, x0_); }

private:
  double w_;
  UtilityFamily family_;
  double x0_;
};

// ---------------------------------------------------------------------------
// Tasks and signals
// ---------------------------------------------------------------------------

/// A guessing task: ex-ante uncertainty phi in [0,1] and difficulty kappa > 0.
class Task {
public:
  Task(double phi, double kappa) : phi_(phi), kappa_(kappa) {
    if (!(phi >= 0.0 && phi <= 1.0)) {
      std::ostringstream os;
      os << "ex-ante uncertainty phi = " << phi << " outside [0,1]";
      throw DomainError(os.str());
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
      std::ostringstream os;
      os << "difficulty kappa = " << kappa << " must be finite and > 0";
      throw DomainError(os.str());
    }
  }

  [[nodiscard]] double phi() const { return phi_; }
  [[nodiscard]] double kappa() const { return kappa_; }

  friend bool operator==(const Task&, const Task&) = default;

private:
  double phi_;
  double kappa_;
};

inline std::ostream& operator<<(std::ostream& os, const Task& t) {
  return os << "(phi=" << t.phi() << ", kappa=" << t.kappa() << ")";
}

/// Unique prior p <= 1/2 whose ex-ante uncertainty 1 - 2|p - 1/2| is phi.
inline double canonical_prior(double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    std::ostringstream os;
    os << "ex-ante uncertainty phi = " << phi << " outside [0,1]";
    throw DomainError(os.str());
  }
  return phi / 2.0;
}

/// 1 - 2|p - 1/2|.
inline double uncertainty_of_prior(double p) { return 1.0 - 2.0 * std::abs(p - 0.5); }

struct Atom {
  double posterior;
  double weight;
};

/// Finite distribution over posteriors.
class Signal {
public:
  static constexpr double kTolerance = 1e-12;

  explicit Signal(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw InvariantError("signal has no atoms");
    double total = 0.0;
    for (const auto& a : atoms_) {
      if (!(a.posterior >= 0.0 && a.posterior <= 1.0)) throw InvariantError("signal posterior outside [0,1]");
      if (!(a.weight >= 0.0 && a.weight <= 1.0)) throw InvariantError("signal weight outside [0,1]");
      total += a.weight;
    }
    if (std::abs(total - 1.0) > kTolerance) throw InvariantError("signal weights do not sum to 1");
  }

  /// All mass on the prior.
  static Signal degenerate(double p) { return Signal({{p, 1.0}}); }

  /// Bayes-plausible split of prior p onto {low, high}, low < p < high.
  static Signal split(double low, double high, double p) {
    const double alpha = (high - p) / (high - low);
    return Signal({{low, alpha}, {high, 1.0 - alpha}});
  }

  [[nodiscard]] std::span<const Atom> atoms() const { return atoms_; }

  [[nodiscard]] double mean() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight * a.posterior;
    return m;
  }

  /// Number of distinct posteriors carrying positive weight.
  [[nodiscard]] std::size_t support_size() const {
    std::vector<double> support;
    for (const auto& a : atoms_) {
      if (a.weight > 0.0 && std::find(support.begin(), support.end(), a.posterior) == support.end()) {
        support.push_back(a.posterior);
      }
    }
    return support.size();
  }

  [[nodiscard]] bool is_bayes_plausible(double prior) const {
    return std::abs(mean() - prior) <= kTolerance;
  }

private:
  std::vector<Atom> atoms_;
};

/// Information cost kappa (E c(q) - c(p)) of a Bayes-plausible signal.
inline double signal_cost(const CostSpec& c, double kappa, double prior, const Signal& signal) {
  if (!signal.is_bayes_plausible(prior)) {
    std::ostringstream os;
    os << "signal mean " << signal.mean() << " differs from prior " << prior;
    throw InvariantError(os.str());
  }
  double expected = 0.0;
  for (const auto& a : signal.atoms()) expected += a.weight * c.value(a.posterior);
  return kappa * (expected - c.value(prior));
}

/// Solution of the attention problem at one reward.
struct SolveReport {
  /// Low posterior delta of the optimal two-point support, in [0, 1/2].
  double cutoff = 0.5;
  Signal signal = Signal::degenerate(0.5);
  /// G(pi*) - C(pi*).
  double value = 0.0;
  /// Concave closure of g - kappa c at the prior.
  double envelope = 0.0;
  double accuracy = 0.5;
  double effort = 0.0;
  bool informative = false;
};

}  // namespace inatt
