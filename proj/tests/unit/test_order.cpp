#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "inatt/order.hpp"

using namespace inatt;

namespace {
const CostSpec kQuad = CostSpec::quadratic();
const CostSpec kShannon = CostSpec::shannon();
const Agent kAgent(1.0);

Verdict sweep_verdict(const Task& a, const Task& b, const Agent& agent, const CostSpec& c) {
  return compare_by_sweep(a, b, agent, c, default_sweep_grid(agent, c, a, b)).verdict;
}
}  // namespace

TEST(Trivial, WorkedValues) {
  EXPECT_TRUE(is_trivial(Task(0.9, 0.5), kAgent, kQuad));
  EXPECT_FALSE(is_trivial(Task(0.1, 2.0), kAgent, kQuad));
  EXPECT_FALSE(is_trivial(Task(0.3, 0.01), kAgent, kShannon));
}

TEST(Compare, WorkedVerdicts) {
  EXPECT_EQ(compare(Task(0.75, 2), Task(0.75, 4), kAgent, kQuad).verdict, Verdict::MoreComplex);
  EXPECT_EQ(compare(Task(0.75, 2), Task(0.25, 4), kAgent, kQuad).verdict, Verdict::Incomparable);
  EXPECT_EQ(compare(Task(0.6, 2), Task(0.9, 2), kAgent, kQuad).verdict, Verdict::Equivalent);
  const auto r = compare(Task(0.75, 2), Task(0.25, 4), kAgent, kQuad);
  EXPECT_DOUBLE_EQ(r.kappa_w, 1.0);
  EXPECT_NEAR(r.phi_w_a, 0.5, 1e-12);
  EXPECT_NEAR(r.cap_a, 0.5, 1e-12);
  EXPECT_NEAR(r.cap_b, 0.25, 1e-12);
}

TEST(Compare, TrivialTasksFormTheBottom) {
  EXPECT_EQ(compare(Task(0.9, 0.5), Task(0.1, 2.0), kAgent, kQuad).verdict, Verdict::MoreComplex);
  EXPECT_EQ(compare(Task(0.1, 2.0), Task(0.9, 0.5), kAgent, kQuad).verdict, Verdict::LessComplex);
  EXPECT_EQ(compare(Task(0.9, 0.5), Task(0.2, 0.9), kAgent, kQuad).verdict, Verdict::Equivalent);
  // phi = 0: accuracy is 1 at every reward, like a trivial task.
  EXPECT_EQ(compare(Task(0.0, 3.0), Task(0.9, 0.5), kAgent, kQuad).verdict, Verdict::Equivalent);
}

TEST(Compare, SwappingArgumentsSwapsVerdict) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& c : {kQuad, kShannon}) {
    for (int i = 0; i < 500; ++i) {
      const Task a(unit(rng), 0.05 + 4 * unit(rng));
      const Task b(unit(rng), 0.05 + 4 * unit(rng));
      EXPECT_EQ(compare(b, a, kAgent, c).verdict, swapped(compare(a, b, kAgent, c).verdict));
      EXPECT_EQ(compare(a, a, kAgent, c).verdict, Verdict::Equivalent);
    }
  }
}

TEST(CompareBySweep, WorkedVerdicts) {
  const auto grid = reward_grid(0.0, 20.0, 41, Spacing::Geometric);
  EXPECT_EQ(compare_by_sweep(Task(0.75, 2), Task(0.75, 4), kAgent, kQuad, grid).verdict, Verdict::MoreComplex);
  EXPECT_EQ(compare_by_sweep(Task(0.75, 2), Task(0.25, 4), kAgent, kQuad, grid).verdict, Verdict::Incomparable);
  EXPECT_EQ(compare_by_sweep(Task(0.6, 2), Task(0.9, 2), kAgent, kQuad, grid).verdict, Verdict::Equivalent);
  EXPECT_EQ(compare_by_sweep(Task(0.4, 3), Task(0.4, 3), kAgent, kQuad, grid).verdict, Verdict::Equivalent);
  EXPECT_EQ(compare_by_sweep(Task(0.9, 0.5), Task(0.3, 2), kAgent, kQuad, grid).verdict, Verdict::MoreComplex);
  EXPECT_THROW(compare_by_sweep(Task(0.4, 3), Task(0.4, 3), kAgent, kQuad, {}), DomainError);
}

TEST(CompareBySweep, AgreesWithClosedForm) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double w : {0.0, 1.0, 2.0}) {
    const Agent agent(w);
    for (const auto& c : {kQuad, kShannon, CostSpec::tsallis(0.5)}) {
      const double kw = kappa_w(agent, c);
      for (int i = 0; i < 150; ++i) {
        const Task a(unit(rng), kw + 4.0 * std::max(1.0, kw) * (1.0 - unit(rng)));
        const Task b(unit(rng), kw + 4.0 * std::max(1.0, kw) * (1.0 - unit(rng)));
        EXPECT_EQ(compare(a, b, agent, c).verdict, sweep_verdict(a, b, agent, c))
            << c.name() << " w=" << w << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Order, PreorderOnLattice) {
  std::vector<Task> lattice;
  for (int i = 0; i <= 4; ++i) {
    for (int k = 1; k <= 6; ++k) lattice.emplace_back(i / 4.0, 0.5 * k);
  }
  for (const auto& c : {kQuad, kShannon}) {
    for (const auto& a : lattice) {
      for (const auto& b : lattice) {
        const auto ab = compare(a, b, kAgent, c);
        for (const auto& d : lattice) {
          const auto bd = compare(b, d, kAgent, c);
          if (ab.b_over_a && bd.b_over_a) {
            EXPECT_TRUE(compare(a, d, kAgent, c).b_over_a) << a << " " << b << " " << d;
          }
        }
      }
    }
  }
}

TEST(VectorUtility, WorkedValues) {
  const auto u = vector_utility(Task(0.75, 2), kAgent, kQuad);
  EXPECT_DOUBLE_EQ(u.first, 2.0);
  EXPECT_NEAR(u.second, 0.5, 1e-12);
  const auto v = vector_utility(Task(0.3, 2), kAgent, kQuad);
  EXPECT_NEAR(v.second, 0.3, 1e-12);
  EXPECT_THROW(vector_utility(Task(0.9, 0.5), kAgent, kQuad), DomainError);
}

TEST(VectorUtility, CoordinatewiseOrderMatchesCompare) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& c : {kQuad, kShannon}) {
    for (int i = 0; i < 400; ++i) {
      const Task a(0.01 + 0.99 * unit(rng), 1.01 + 3 * unit(rng));
      const Task b(0.01 + 0.99 * unit(rng), 1.01 + 3 * unit(rng));
      const auto ua = vector_utility(a, kAgent, c);
      const auto ub = vector_utility(b, kAgent, c);
      const bool dominated = ub.first >= ua.first && ub.second >= ua.second;
      EXPECT_EQ(dominated, compare(a, b, kAgent, c).b_over_a) << a << " " << b;
    }
  }
}

TEST(SweepGrid, StartsAtLowestReward) {
  const Agent agent(0.5, LinearUtility{2.0}, 1.0);
  const auto grid = default_sweep_grid(agent, kQuad, Task(0.3, 1.0), Task(0.6, 3.0));
  ASSERT_GE(grid.size(), kDefaultSweepPoints);
  ASSERT_LE(grid.size(), kDefaultSweepPoints + 6);
  EXPECT_EQ(grid.front(), 1.0);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_GT(grid[i], grid[i - 1]);
}

// Pairs whose accuracy curves separate only inside a window narrower than the
// base grid spacing, next to full information.
TEST(SweepGrid, ResolvesNarrowWindows) {
  const Task a0(0.514799, 3.51281), b0(0.00278744, 3.53361);
  EXPECT_EQ(compare(a0, b0, Agent(0.0), kQuad).verdict, Verdict::Incomparable);
  EXPECT_EQ(sweep_verdict(a0, b0, Agent(0.0), kQuad), Verdict::Incomparable);
  const Task a1(0.00197184, 3.96989), b1(0.0982535, 3.9672);
  EXPECT_EQ(compare(a1, b1, kAgent, kQuad).verdict, Verdict::Incomparable);
  EXPECT_EQ(sweep_verdict(a1, b1, kAgent, kQuad), Verdict::Incomparable);
}
