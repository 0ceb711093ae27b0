#pragma once

// Constructive results on complexity and effort, run as algorithms, plus a
// seeded harness that checks the structural properties of the order.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "inatt/errors.hpp"
#include "inatt/grid.hpp"
#include "inatt/model.hpp"
#include "inatt/order.hpp"
#include "inatt/solver.hpp"
#include "inatt/thresholds.hpp"

namespace inatt {

// ---------------------------------------------------------------------------
// More complex, less effort
// ---------------------------------------------------------------------------

/// kappa (c(p') - c(p)) with p' the canonical prior of phi_w(kappa): the
/// effort saved at every reward by lowering phi to the acquisition threshold.
inline double effort_saving(const Task& task, const Agent& agent, const CostSpec& c) {
  const double p = canonical_prior(task.phi());
  const double p_low = canonical_prior(phi_w(agent, task.kappa(), c));
  return task.kappa() * (c.value(p_low) - c.value(p));
}

/// For a non-trivial task with phi > phi_w(kappa), the task
/// (phi_w(kappa), kappa + eps / (c(0) - c(1/2))) is strictly more complex yet
/// costs strictly less effort at every reward.
inline Task construct_dominated_effort_task(const Task& task, const Agent& agent, const CostSpec& c) {
  const double kw = kappa_w(agent, c);
  if (task.kappa() <= kw) {
    std::ostringstream os;
    os << "task " << task << " is trivial (kappa <= kappa_w = " << kw << ")";
    throw PreconditionError(os.str());
  }
  const double threshold = phi_w(agent, task.kappa(), c);
  if (!(task.phi() > threshold)) {
    std::ostringstream os;
    os << "task " << task << " does not acquire information at x0: phi <= phi_w(kappa) = " << threshold;
    throw PreconditionError(os.str());
  }
  const double span = c.value(0.0) - c.value(0.5);
  if (!std::isfinite(span) || !(span > 0.0)) throw PreconditionError("construction needs finite c(0) > c(1/2)");
  const double eps = effort_saving(task, agent, c);
  if (!(eps > 0.0)) throw PreconditionError("effort saving is not positive");
  return Task(threshold, task.kappa() + eps / span);
}

/// Evidence that b is strictly more complex than a yet cheaper at every
/// reward of the grid. `certified` is false when either part fails.
struct DominanceCertificate {
  Task source{1.0, 1.0};
  Task constructed{1.0, 1.0};
  /// Effort saving kappa_a (c(p_b) - c(p_a)) between the two priors.
  double epsilon = 0.0;
  Verdict verdict = Verdict::Incomparable;
  std::vector<double> rewards;
  std::vector<double> effort_source;
  std::vector<double> effort_constructed;
  /// effort_source - effort_constructed.
  std::vector<double> gaps;
  double min_gap = 0.0;
  bool certified = false;
  std::string failure;
};

inline DominanceCertificate verify_effort_dominance(const Task& a, const Task& b, const Agent& agent,
                                                    const CostSpec& c, std::span<const double> x_grid) {
  if (x_grid.empty()) throw DomainError("effort dominance check needs a nonempty reward grid");
  DominanceCertificate cert;
  cert.source = a;
  cert.constructed = b;
  cert.epsilon = a.kappa() * (c.value(canonical_prior(b.phi())) - c.value(canonical_prior(a.phi())));
  cert.verdict = compare(a, b, agent, c).verdict;
  cert.min_gap = kInf;
  for (double x : x_grid) {
    const double ea = effort(x, agent, a, c);
    const double eb = effort(x, agent, b, c);
    cert.rewards.push_back(x);
    cert.effort_source.push_back(ea);
    cert.effort_constructed.push_back(eb);
    cert.gaps.push_back(ea - eb);
    cert.min_gap = std::min(cert.min_gap, ea - eb);
  }
  std::ostringstream why;
  if (cert.verdict != Verdict::MoreComplex) {
    why << "constructed task is not strictly more complex (verdict " << to_string(cert.verdict) << "); ";
  }
  if (!(cert.min_gap > 0.0)) {
    const auto worst = std::min_element(cert.gaps.begin(), cert.gaps.end()) - cert.gaps.begin();
    why << "effort not strictly lower at x = " << cert.rewards[static_cast<std::size_t>(worst)]
        << " (gap " << cert.min_gap << ")";
  }
  cert.failure = why.str();
  cert.certified = cert.failure.empty();
  return cert;
}

// ---------------------------------------------------------------------------
// Effort reversal in difficulty
// ---------------------------------------------------------------------------

struct ReversalWitness {
  /// Lower reward: the easier task exerts strictly more effort.
  double x = 0.0;
  /// Higher reward: the harder task exerts strictly more effort.
  double x_prime = 0.0;
  double gap_at_x = 0.0;        // effort(kappa) - effort(kappa2) at x, > 0
  double gap_at_x_prime = 0.0;  // effort(kappa2) - effort(kappa) at x', > 0
  double kappa_phi = 0.0;
  std::vector<double> rewards;
  /// effort(kappa) - effort(kappa2) along the scanned rewards.
  std::vector<double> differences;
};

/// Sign changes of a sequence, ignoring entries with |v| <= tol.
inline int count_sign_changes(std::span<const double> values, double tol) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int s = v > tol ? 1 : (v < -tol ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline constexpr int kWitnessPointsPerDecade = 64;
inline constexpr int kWitnessDecades = 4;

/// Default upper end of the witness scan: the reward at which u1 reaches
/// w + 100 kappa2, far beyond the point where both tasks are nearly fully
/// informed.
inline double default_witness_bound(const Agent& agent, double kappa2) {
  return agent.reward_for_utility(agent.w() + 100.0 * kappa2);
}

/// Rewards x < x' at which the effort ranking of (phi, kappa) and
/// (phi, kappa2) flips, for kappa2 > kappa > phi_w^{-1}(phi).
inline ReversalWitness find_effort_reversal_witness(double phi, double kappa, double kappa2, const Agent& agent,
                                                    const CostSpec& c, std::optional<double> search_bound = {}) {
  const double kappa_phi = phi_w_inverse(agent, phi, c);
  if (!(kappa > kappa_phi) || !(kappa2 > kappa)) {
    std::ostringstream os;
    os << "reversal needs kappa2 > kappa > kappa_phi = " << kappa_phi << ", got kappa = " << kappa
       << ", kappa2 = " << kappa2;
    throw PreconditionError(os.str());
  }
  const double bound = search_bound.value_or(default_witness_bound(agent, kappa2));
  if (!(bound > agent.x0())) throw DomainError("witness search bound must exceed x0");
  const Task easy(phi, kappa);
  const Task hard(phi, kappa2);
  const double p = canonical_prior(phi);

  // Geometric scan in utility, 64 points per decade over 4 decades.
  const double u_hi = agent.u1(bound);
  const std::size_t count = kWitnessPointsPerDecade * kWitnessDecades + 1;
  std::vector<double> rewards = utility_grid(agent, u_hi * 1e-4, u_hi, count + 1);
  // The harder task switches acquisition on where its cutoff meets the
  // prior; just there the easier task already acquires. Include that reward
  // so narrow windows are not stepped over.
  {
    double lo = agent.w();
    double hi = std::max(u_hi, lo);
    if (optimal_cutoff(lo, kappa2, c) > p && optimal_cutoff(hi, kappa2, c) <= p) {
      for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (optimal_cutoff(mid, kappa2, c) > p) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      rewards.push_back(agent.reward_for_utility(lo));
    }
  }
  std::sort(rewards.begin(), rewards.end());
  rewards.erase(std::unique(rewards.begin(), rewards.end()), rewards.end());
  while (!rewards.empty() && rewards.back() > bound) rewards.pop_back();

  ReversalWitness out;
  out.kappa_phi = kappa_phi;
  out.rewards = rewards;
  out.differences.reserve(rewards.size());
  for (double x : rewards) out.differences.push_back(effort(x, agent, easy, c) - effort(x, agent, hard, c));

  constexpr double kStrict = 1e-12;
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (!first && out.differences[i] > kStrict) first = i;
    if (first && out.differences[i] < -kStrict) {
      second = i;
      break;
    }
  }
  if (!first || !second) {
    std::ostringstream os;
    os << "no effort reversal found for rewards in [" << agent.x0() << ", " << bound << "] ("
       << rewards.size() << " points scanned)";
    throw SearchFailure(os.str());
  }
  out.x = rewards[*first];
  out.x_prime = rewards[*second];
  out.gap_at_x = out.differences[*first];
  out.gap_at_x_prime = -out.differences[*second];
  return out;
}

// ---------------------------------------------------------------------------
// Seeded property harness
// ---------------------------------------------------------------------------

/// Portable uniform draws in [0,1) from a 64-bit Mersenne twister.
class UnitSampler {
public:
  explicit UnitSampler(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() * static_cast<double>(n)); }

private:
  std::mt19937_64 engine_;
};

/// A task drawn from [0,1] x (0, kappa_max]. One draw in four snaps both
/// coordinates to a coarse lattice so that ties and boundary cases occur.
inline Task sample_task(UnitSampler& rng, double kappa_max) {
  if (rng.next() < 0.25) {
    const double phi = static_cast<double>(rng.index(5)) / 4.0;
    const double kappa = kappa_max * static_cast<double>(rng.index(8) + 1) / 8.0;
    return Task(phi, kappa);
  }
  const double phi = rng.next();
  double kappa = kappa_max * (1.0 - rng.next());
  return Task(phi, kappa);
}

struct Violation {
  std::string kind;
  double w = 0.0;
  double w_prime = 0.0;
  std::vector<Task> tasks;
  std::string detail;
};

struct OrderPropertyReport {
  double w = 0.0;
  double w_prime = 0.0;
  std::string cost;
  std::size_t samples = 0;
  std::size_t transitivity_violations = 0;
  std::size_t incomparable_pairs = 0;
  bool constructed_incomparable = true;
  std::size_t inclusion_violations = 0;
  std::size_t strict_reversal_violations = 0;
  std::size_t nontrivial_inclusion_violations = 0;
  std::size_t kappa_necessity_violations = 0;
  std::vector<Violation> violations;

  [[nodiscard]] bool passed() const {
    const bool witness_ok = samples == 0 || incomparable_pairs > 0;
    return transitivity_violations == 0 && witness_ok && constructed_incomparable && inclusion_violations == 0 &&
           strict_reversal_violations == 0 && nontrivial_inclusion_violations == 0 &&
           kappa_necessity_violations == 0;
  }
};

/// Scale of difficulties worth sampling: a few multiples of the larger
/// triviality threshold, or of 1 when both thresholds vanish.
inline double sampling_kappa_max(const Agent& agent, double w_prime, const CostSpec& c) {
  return 4.0 * std::max({1.0, kappa_w(agent, c), kappa_w(agent.with_w(w_prime), c)});
}

/// Transitivity and incompleteness of the order for w, monotonicity of the
/// order and of the non-trivial set in w, absence of strict reversals, and
/// necessity of higher difficulty, on `samples` random task triples.
inline OrderPropertyReport check_order_properties(const Agent& agent, double w_prime, const CostSpec& c,
                                                  std::size_t samples, std::uint64_t seed,
                                                  unsigned threads = 1) {
  if (!(w_prime > agent.w())) throw DomainError("order properties need w' > w");
  const Agent low = agent;
  const Agent high = agent.with_w(w_prime);
  OrderPropertyReport report;
  report.w = low.w();
  report.w_prime = w_prime;
  report.cost = c.name();
  report.samples = samples;

  // Incompleteness witness built as in the proof: phi_w(kappa) > 0, then
  // (phi above it, kappa) against (phi below it, larger kappa).
  if (low.w() > 0.0) {
    const double kappa = phi_w_inverse(low, 0.5, c);
    const auto r = compare(Task(0.75, kappa), Task(0.25, 2.0 * kappa), low, c);
    report.constructed_incomparable = r.verdict == Verdict::Incomparable;
  } else {
    // With w = 0, phi_w is identically 1 and any kappa works.
    const auto r = compare(Task(0.75, 1.0), Task(0.25, 2.0), low, c);
    report.constructed_incomparable = r.verdict == Verdict::Incomparable;
  }

  const double kappa_max = sampling_kappa_max(low, w_prime, c);
  UnitSampler rng(seed);
  std::vector<std::array<Task, 3>> triples;
  triples.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    triples.push_back({sample_task(rng, kappa_max), sample_task(rng, kappa_max), sample_task(rng, kappa_max)});
  }

  struct Outcome {
    std::size_t incomparable = 0;
    std::vector<Violation> violations;
  };
  std::vector<Outcome> outcomes(samples);
  const double kw_low = kappa_w(low, c);
  const double kw_high = kappa_w(high, c);

  parallel_for(samples, threads, [&](std::size_t s) {
    const auto& t = triples[s];
    Outcome& out = outcomes[s];
    auto ge = [&](const Agent& ag, const Task& hi, const Task& lo) { return compare(lo, hi, ag, c).b_over_a; };
    auto add = [&](const char* kind, std::vector<Task> tasks, std::string detail) {
      out.violations.push_back(Violation{kind, low.w(), w_prime, std::move(tasks), std::move(detail)});
    };

    constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& pm : perms) {
      const Task& x = t[pm[0]];
      const Task& y = t[pm[1]];
      const Task& z = t[pm[2]];
      for (const Agent* ag : {&low, &high}) {
        if (ge(*ag, y, x) && ge(*ag, z, y) && !ge(*ag, z, x)) {
          add("transitivity", {x, y, z}, "w = " + std::to_string(ag->w()));
        }
      }
    }

    for (std::size_t i = 0; i < 3; ++i) {
      const Task& a = t[i];
      const Task& b = t[(i + 1) % 3];
      const auto rl = compare(a, b, low, c);
      const auto rh = compare(a, b, high, c);
      if (rl.verdict == Verdict::Incomparable) ++out.incomparable;
      if (rl.b_over_a && !rh.b_over_a) add("inclusion", {a, b}, "b >= a under w but not under w'");
      if (rl.a_over_b && !rh.a_over_b) add("inclusion", {b, a}, "a >= b under w but not under w'");
      const bool rev1 = rl.verdict == Verdict::MoreComplex && rh.verdict == Verdict::LessComplex;
      const bool rev2 = rl.verdict == Verdict::LessComplex && rh.verdict == Verdict::MoreComplex;
      if (rev1 || rev2) add("strict_reversal", {a, b}, std::string(to_string(rl.verdict)) + " -> " + to_string(rh.verdict));
      // kappa is necessary for dominating a task whose accuracy is not
      // identically 1.
      for (const Agent* ag : {&low, &high}) {
        const double kw = ag == &low ? kw_low : kw_high;
        if (a.kappa() > kw && a.phi() > 0.0 && ge(*ag, b, a) && b.kappa() < a.kappa()) {
          add("kappa_necessity", {a, b}, "w = " + std::to_string(ag->w()));
        }
        if (b.kappa() > kw && b.phi() > 0.0 && ge(*ag, a, b) && a.kappa() < b.kappa()) {
          add("kappa_necessity", {b, a}, "w = " + std::to_string(ag->w()));
        }
      }
    }
    for (const Task& task : t) {
      const bool nontrivial_high = task.kappa() > kw_high;
      const bool nontrivial_low = task.kappa() > kw_low;
      if (nontrivial_high && !nontrivial_low) add("nontrivial_inclusion", {task}, "non-trivial under w' only");
    }
  });

  for (auto& o : outcomes) {
    report.incomparable_pairs += o.incomparable;
    for (auto& v : o.violations) {
      if (v.kind == "transitivity") ++report.transitivity_violations;
      if (v.kind == "inclusion") ++report.inclusion_violations;
      if (v.kind == "strict_reversal") ++report.strict_reversal_violations;
      if (v.kind == "nontrivial_inclusion") ++report.nontrivial_inclusion_violations;
      if (v.kind == "kappa_necessity") ++report.kappa_necessity_violations;
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}


/// Non-trivial task with kappa uniform on (kappa_w, kappa_w + 4 max(1, kappa_w)].
inline Task sample_nontrivial_task(UnitSampler& rng, double kw) {
  const double width = 4.0 * std::max(1.0, kw);
  return Task(rng.next(), kw + width * (1.0 - rng.next()));
}

/// Agreement between the closed-form comparison and the reward sweep.
struct EquivalenceReport {
  std::string cost;
  double w = 0.0;
  std::size_t pairs = 0;
  std::size_t agreements = 0;
  std::vector<Violation> mismatches;

  [[nodiscard]] bool passed() const { return agreements == pairs; }
};

inline EquivalenceReport check_order_equivalence(const Agent& agent, const CostSpec& c, std::size_t samples,
                                                 std::uint64_t seed, unsigned threads = 1,
                                                 std::size_t grid_points = kDefaultSweepPoints) {
  EquivalenceReport report;
  report.cost = c.name();
  report.w = agent.w();
  report.pairs = samples;
  const double kw = kappa_w(agent, c);
  UnitSampler rng(seed);
  std::vector<std::pair<Task, Task>> pairs;
  pairs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    Task a = sample_nontrivial_task(rng, kw);
    Task b = sample_nontrivial_task(rng, kw);
    pairs.emplace_back(a, b);
  }
  std::vector<std::optional<Violation>> found(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const auto& [a, b] = pairs[i];
    const auto grid = default_sweep_grid(agent, c, a, b, grid_points);
    const auto closed = compare(a, b, agent, c).verdict;
    const auto swept = compare_by_sweep(a, b, agent, c, grid).verdict;
    if (closed != swept) {
      found[i] = Violation{"order_equivalence", agent.w(), agent.w(), {a, b},
                           std::string("closed form ") + to_string(closed) + ", sweep " + to_string(swept)};
    }
  });
  for (auto& v : found) {
    if (v) {
      report.mismatches.push_back(std::move(*v));
    } else {
      ++report.agreements;
    }
  }
  return report;
}

/// Eligible source task for the effort construction: non-trivial and
/// acquiring at x0, i.e. phi in (phi_w(kappa), 1].
inline Task sample_acquiring_task(UnitSampler& rng, const Agent& agent, const CostSpec& c, double kw) {
  for (;;) {
    const double kappa = kw + 4.0 * std::max(1.0, kw) * (1.0 - rng.next());
    const double threshold = phi_w(agent, kappa, c);
    if (threshold >= 1.0) continue;
    const double phi = threshold + (1.0 - threshold) * (1.0 - rng.next());
    if (phi > threshold) return Task(phi, kappa);
  }
}

struct EffortConstructionReport {
  std::string cost;
  double w = 0.0;
  std::size_t tasks = 0;
  std::size_t certified = 0;
  double min_margin = kInf;
  std::vector<Violation> failures;

  [[nodiscard]] bool passed() const { return certified == tasks && (tasks == 0 || min_margin > 0.0); }
};

inline EffortConstructionReport check_effort_construction(const Agent& agent, const CostSpec& c,
                                                          std::size_t samples, std::uint64_t seed,
                                                          unsigned threads = 1,
                                                          std::size_t grid_points = kDefaultSweepPoints) {
  EffortConstructionReport report;
  report.cost = c.name();
  report.w = agent.w();
  report.tasks = samples;
  if (samples == 0) return report;
  if (agent.w() == 0.0) throw PreconditionError("effort construction needs w > 0 (phi_w is identically 1 at w = 0)");
  const double kw = kappa_w(agent, c);
  UnitSampler rng(seed);
  std::vector<Task> sources;
  for (std::size_t i = 0; i < samples; ++i) sources.push_back(sample_acquiring_task(rng, agent, c, kw));
  std::vector<DominanceCertificate> certs(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const Task b = construct_dominated_effort_task(sources[i], agent, c);
    certs[i] = verify_effort_dominance(sources[i], b, agent, c, default_sweep_grid(agent, c, sources[i], b, grid_points));
  });
  for (auto& cert : certs) {
    report.min_margin = std::min(report.min_margin, cert.min_gap);
    if (cert.certified) {
      ++report.certified;
    } else {
      report.failures.push_back(
          Violation{"effort_construction", agent.w(), agent.w(), {cert.source, cert.constructed}, cert.failure});
    }
  }
  return report;
}

struct ReversalReport {
  std::string cost;
  double w = 0.0;
  std::size_t configurations = 0;
  std::size_t witnesses = 0;
  std::size_t single_crossings = 0;
  std::vector<Violation> failures;

  [[nodiscard]] bool passed() const { return witnesses == configurations && single_crossings == configurations; }
};

inline constexpr double kCrossingTolerance = 1e-9;

/// Random (phi, kappa, kappa2) with kappa2 > kappa > phi_w^{-1}(phi); each
/// must yield a witness and a difference with exactly one sign change.
inline ReversalReport check_reversal_witnesses(const Agent& agent, const CostSpec& c, std::size_t samples,
                                               std::uint64_t seed, unsigned threads = 1) {
  ReversalReport report;
  report.cost = c.name();
  report.w = agent.w();
  report.configurations = samples;
  UnitSampler rng(seed);
  struct Config {
    double phi, kappa, kappa2;
  };
  std::vector<Config> configs;
  for (std::size_t i = 0; i < samples; ++i) {
    const double phi = rng.uniform(0.1, 0.9);
    const double kappa_phi = phi_w_inverse(agent, phi, c);
    const double kappa = kappa_phi * (1.02 + 2.0 * rng.next());
    const double kappa2 = kappa * (1.02 + rng.next());
    configs.push_back({phi, kappa, kappa2});
  }
  std::vector<std::optional<Violation>> found(samples);
  std::vector<int> crossings(samples, 0);
  parallel_for(samples, threads, [&](std::size_t i) {
    const auto& cf = configs[i];
    const std::vector<Task> tasks{Task(cf.phi, cf.kappa), Task(cf.phi, cf.kappa2)};
    try {
      const auto wit = find_effort_reversal_witness(cf.phi, cf.kappa, cf.kappa2, agent, c);
      crossings[i] = count_sign_changes(wit.differences, kCrossingTolerance);
      if (crossings[i] != 1) {
        found[i] = Violation{"reversal_crossings", agent.w(), agent.w(), tasks,
                             std::to_string(crossings[i]) + " sign changes"};
      }
    } catch (const SearchFailure& e) {
      crossings[i] = -1;
      found[i] = Violation{"reversal_witness", agent.w(), agent.w(), tasks, e.what()};
    }
  });
  for (std::size_t i = 0; i < samples; ++i) {
    if (crossings[i] >= 0) ++report.witnesses;
    if (crossings[i] == 1) ++report.single_crossings;
    if (found[i]) report.failures.push_back(std::move(*found[i]));
  }
  return report;
}

}  // namespace inatt
