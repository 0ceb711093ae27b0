#include <random>

#include <gtest/gtest.h>

#include "inatt/analysis.hpp"

using namespace inatt;

namespace {
const CostSpec kQuad = CostSpec::quadratic();
const CostSpec kShannon = CostSpec::shannon();
const Agent kAgent(1.0);
}  // namespace

TEST(Construction, WorkedInstance) {
  const Task b = construct_dominated_effort_task(Task(0.75, 2.0), kAgent, kQuad);
  EXPECT_NEAR(b.phi(), 0.5, 1e-12);
  EXPECT_NEAR(b.kappa(), 2.375, 1e-12);
  EXPECT_NEAR(effort_saving(Task(0.75, 2.0), kAgent, kQuad), 0.09375, 1e-12);
}

TEST(Construction, FullUncertaintySource) {
  // eps = 2 (c(1/4) - c(1/2)) = 0.125, so kappa' = 2 + 0.125 / 0.25.
  const Task b = construct_dominated_effort_task(Task(1.0, 2.0), kAgent, kQuad);
  EXPECT_NEAR(b.phi(), 0.5, 1e-12);
  EXPECT_NEAR(b.kappa(), 2.5, 1e-12);
  const auto cert = verify_effort_dominance(Task(1.0, 2.0), b, kAgent, kQuad,
                                            default_sweep_grid(kAgent, kQuad, Task(1.0, 2.0), b));
  EXPECT_TRUE(cert.certified) << cert.failure;
}

TEST(Construction, Preconditions) {
  EXPECT_THROW(construct_dominated_effort_task(Task(0.3, 2.0), kAgent, kQuad), PreconditionError);
  EXPECT_THROW(construct_dominated_effort_task(Task(0.9, 0.5), kAgent, kQuad), PreconditionError);
  EXPECT_THROW(construct_dominated_effort_task(Task(0.9, 2.0), Agent(0.0), kQuad), PreconditionError);
}

TEST(Certificate, WorkedInstanceMargins) {
  const Task a(0.75, 2.0);
  const Task b(0.5, 2.375);
  const std::vector<double> xs{0.0, 9.0};
  const auto cert = verify_effort_dominance(a, b, kAgent, kQuad, xs);
  EXPECT_TRUE(cert.certified) << cert.failure;
  EXPECT_EQ(cert.verdict, Verdict::MoreComplex);
  EXPECT_NEAR(cert.epsilon, 0.09375, 1e-12);
  EXPECT_NEAR(cert.gaps[0], 0.09375, 1e-12);
  EXPECT_NEAR(cert.effort_source[1], 0.46875, 1e-12);
  EXPECT_NEAR(cert.effort_constructed[1], 0.4453125, 1e-12);
  EXPECT_NEAR(cert.min_gap, 0.0234375, 1e-12);

  const auto grid = default_sweep_grid(kAgent, kQuad, a, b);
  const auto full = verify_effort_dominance(a, b, kAgent, kQuad, grid);
  EXPECT_TRUE(full.certified);
  EXPECT_GT(full.min_gap, 0.0);
}

TEST(Certificate, Failures) {
  const Task a(0.75, 2.0);
  const auto same = verify_effort_dominance(a, a, kAgent, kQuad, reward_grid(0.0, 20.0, 41, Spacing::Geometric));
  EXPECT_FALSE(same.certified);
  EXPECT_EQ(same.verdict, Verdict::Equivalent);

  const Task full(1.0, 2.0);
  const Task harder(1.0, 12.0);
  const auto grid = reward_grid(0.0, 200.0, 41, Spacing::Geometric);
  const auto cert = verify_effort_dominance(full, harder, kAgent, kQuad, grid);
  EXPECT_FALSE(cert.certified);
  EXPECT_LT(cert.gaps.back(), 0.0);
  EXPECT_THROW(verify_effort_dominance(a, a, kAgent, kQuad, {}), DomainError);
}

TEST(Construction, HoldsAcrossCostsAndIncentives) {
  for (double w : {0.5, 1.0, 2.0}) {
    for (const auto& c : {kQuad, kShannon, CostSpec::tsallis(0.5)}) {
      const auto report = check_effort_construction(Agent(w), c, 60, 17);
      EXPECT_TRUE(report.passed()) << c.name() << " w=" << w;
      EXPECT_GT(report.min_margin, 0.0);
    }
  }
  EXPECT_THROW(check_effort_construction(Agent(0.0), kQuad, 10, 1), PreconditionError);
  EXPECT_TRUE(check_effort_construction(Agent(0.0), kQuad, 0, 1).passed());
}

TEST(Effort, DrivenByUncertainty) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& c : {kQuad, kShannon}) {
    for (int i = 0; i < 100; ++i) {
      const double kappa = 0.2 + 4.0 * unit(rng);
      const double phi = unit(rng);
      const double phi_low = phi * unit(rng);
      for (int j = 0; j <= 40; ++j) {
        const double x = 0.25 * j;
        const double hi = effort(x, kAgent, Task(phi, kappa), c);
        const double lo = effort(x, kAgent, Task(phi_low, kappa), c);
        EXPECT_GE(hi, lo - 1e-15);
        if (hi > 0.0 && phi > phi_low) {
          EXPECT_GT(hi, lo) << c.name();
        }
      }
    }
  }
}

TEST(Reversal, WorkedPairFromEffort) {
  const Task easy(0.5, 3.0);
  const Task hard(0.5, 4.0);
  EXPECT_NEAR(effort(0.75, kAgent, easy, kQuad), 0.067708333333333343, 1e-12);
  EXPECT_EQ(effort(0.75, kAgent, hard, kQuad), 0.0);
  EXPECT_NEAR(effort(7.0, kAgent, easy, kQuad), 0.5625, 1e-12);
  EXPECT_NEAR(effort(7.0, kAgent, hard, kQuad), 0.75, 1e-12);

  const auto wit = find_effort_reversal_witness(0.5, 3.0, 4.0, kAgent, kQuad);
  EXPECT_LT(wit.x, wit.x_prime);
  EXPECT_GT(wit.gap_at_x, 0.0);
  EXPECT_GT(wit.gap_at_x_prime, 0.0);
  EXPECT_NEAR(wit.kappa_phi, 2.0, 1e-8);
  EXPECT_GT(effort(wit.x, kAgent, easy, kQuad), effort(wit.x, kAgent, hard, kQuad));
  EXPECT_LT(effort(wit.x_prime, kAgent, easy, kQuad), effort(wit.x_prime, kAgent, hard, kQuad));
  EXPECT_EQ(count_sign_changes(wit.differences, kCrossingTolerance), 1);
}

TEST(Reversal, Preconditions) {
  EXPECT_THROW(find_effort_reversal_witness(0.5, 1.5, 4.0, kAgent, kQuad), PreconditionError);
  EXPECT_THROW(find_effort_reversal_witness(0.5, 3.0, 2.5, kAgent, kQuad), PreconditionError);
  EXPECT_THROW(find_effort_reversal_witness(0.5, 3.0, 4.0, kAgent, kQuad, 0.5), SearchFailure);
}

TEST(Reversal, ShannonWitnessExists) {
  const double kp = phi_w_inverse(kAgent, 0.5, kShannon);
  for (double f : {1.1, 1.5, 3.0}) {
    const auto wit = find_effort_reversal_witness(0.5, kp * f, kp * f * 1.3, kAgent, kShannon);
    EXPECT_LT(wit.x, wit.x_prime);
    EXPECT_EQ(count_sign_changes(wit.differences, kCrossingTolerance), 1);
  }
}

TEST(Reversal, SeededSuitePasses) {
  for (const auto& c : {kQuad, kShannon, CostSpec::tsallis(0.5)}) {
    const auto r = check_reversal_witnesses(kAgent, c, 30, 4);
    EXPECT_TRUE(r.passed()) << c.name() << " witnesses=" << r.witnesses << " single=" << r.single_crossings;
  }
}

TEST(SignChanges, IgnoresNearZero) {
  const std::vector<double> v{0.0, 1.0, 1e-12, 2.0, -1.0, -1e-12, -3.0, 0.0};
  EXPECT_EQ(count_sign_changes(v, 1e-9), 1);
  const std::vector<double> u{1.0, -1.0, 1.0};
  EXPECT_EQ(count_sign_changes(u, 1e-9), 2);
  EXPECT_EQ(count_sign_changes(std::vector<double>{}, 1e-9), 0);
}

TEST(Sampler, Deterministic) {
  UnitSampler a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    if (x != c.next()) differs = true;
  }
  EXPECT_TRUE(differs);
}

TEST(OrderProperties, QuadraticSeededRunPasses) {
  const auto r = check_order_properties(kAgent, 2.0, kQuad, 1000, 42);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.transitivity_violations, 0u);
  EXPECT_GT(r.incomparable_pairs, 0u);
  EXPECT_EQ(r.inclusion_violations, 0u);
  EXPECT_EQ(r.strict_reversal_violations, 0u);
  EXPECT_EQ(r.kappa_necessity_violations, 0u);
}

TEST(OrderProperties, ShannonFromZeroIncentivePasses) {
  const auto r = check_order_properties(Agent(0.0), 1.0, kShannon, 1000, 42);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.violations.empty());
}

TEST(OrderProperties, EmptySampleIsVacuous) {
  const auto r = check_order_properties(kAgent, 2.0, kQuad, 0, 42);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.violations.empty());
  EXPECT_THROW(check_order_properties(kAgent, 1.0, kQuad, 10, 42), DomainError);
}

TEST(OrderProperties, ThreadCountDoesNotChangeReports) {
  const auto one = check_order_properties(Agent(0.0), 1.0, kQuad, 300, 9, 1);
  const auto many = check_order_properties(Agent(0.0), 1.0, kQuad, 300, 9, 8);
  EXPECT_EQ(one.incomparable_pairs, many.incomparable_pairs);
  EXPECT_EQ(one.violations.size(), many.violations.size());
  const auto e1 = check_order_equivalence(kAgent, kShannon, 200, 9, 1);
  const auto e8 = check_order_equivalence(kAgent, kShannon, 200, 9, 8);
  EXPECT_EQ(e1.agreements, e8.agreements);
}

TEST(OrderEquivalence, SeededRunAgrees) {
  for (double w : {0.0, 1.0, 2.0}) {
    const auto r = check_order_equivalence(Agent(w), kQuad, 300, 42);
    EXPECT_TRUE(r.passed()) << "w=" << w << " agreements=" << r.agreements;
  }
}
