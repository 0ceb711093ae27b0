// Solve one task, compare two, and build an effort-dominated task.

#include <iostream>

#include "inatt/analysis.hpp"
#include "inatt/order.hpp"
#include "inatt/solver.hpp"
#include "inatt/thresholds.hpp"

int main() {
  using namespace inatt;
  const Agent agent(1.0);  // u1(x) = 1 + x
  const auto cost = CostSpec::quadratic();
  const Task a(0.75, 2.0);
  const Task b(0.25, 4.0);

  const auto report = optimal_signal(0.0, agent, a, cost);
  std::cout << "task " << a << ": cutoff " << report.cutoff << ", accuracy " << report.accuracy << ", effort "
            << report.effort << '\n';

  std::cout << "kappa_w = " << kappa_w(agent, cost) << ", phi_w(2) = " << phi_w(agent, 2.0, cost) << '\n';
  std::cout << b << " against " << a << ": " << to_string(compare(a, b, agent, cost).verdict) << '\n';

  const Task harder = construct_dominated_effort_task(a, agent, cost);
  const auto cert = verify_effort_dominance(a, harder, agent, cost, default_sweep_grid(agent, cost, a, harder));
  std::cout << harder << " is " << to_string(cert.verdict) << " with minimum effort saving " << cert.min_gap << '\n';
  return cert.certified ? 0 : 1;
}
