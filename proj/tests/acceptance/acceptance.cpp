// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "inatt/analysis.hpp"
#include "inatt/cli.hpp"
#include "inatt/oracle.hpp"
#include "inatt/order.hpp"
#include "inatt/solver.hpp"
#include "inatt/thresholds.hpp"

using namespace inatt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const CostSpec kQuad = CostSpec::quadratic();
const CostSpec kShannon = CostSpec::shannon();

Outcome figure_one() {
  Outcome o;
  const auto t0 = Clock::now();
  const double delta = optimal_cutoff(0.5, 1.0, kQuad);
  const double flat = solve_at_prior(0.5, 1.0, kQuad, 0.5).envelope;
  const auto oracle = oracle_solve_at_prior(0.5, 1.0, kQuad, 0.5, 4001);
  const double elapsed = seconds_since(t0);
  o.require(std::abs(delta - 0.25) <= 1e-9, "delta = " + fmt("%.17g", delta));
  o.require(std::abs(flat - 0.5625) <= 1e-9, "flat level = " + fmt("%.17g", flat));
  o.require(std::abs(oracle.envelope - 0.5625) <= 2.5e-4, "oracle level = " + fmt("%.17g", oracle.envelope));
  o.require(std::abs(oracle.cutoff - 0.25) <= 2.5e-4, "oracle cutoff = " + fmt("%.17g", oracle.cutoff));
  o.require(elapsed < 1.0, "runtime " + fmt("%.3f", elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("delta=") + fmt("%.12g", delta) +
              " flat=" + fmt("%.12g", flat) + " oracle_flat=" + fmt("%.12g", oracle.envelope) +
              " time=" + fmt("%.3f", elapsed) + "s";
  return o;
}

Outcome figure_two() {
  Outcome o;
  const double vx[] = {0.0, 0.25, 0.75, 1.0};
  const double vy[] = {1.0, 0.75, 0.75, 1.0};
  for (int i = 0; i < 4; ++i) {
    const double f = solve_at_prior(0.5, 1.0, kQuad, vx[i]).accuracy;
    o.require(std::abs(f - vy[i]) <= 1e-9, "vertex p=" + fmt("%g", vx[i]) + " accuracy " + fmt("%.17g", f));
  }
  const auto env = net_value_envelope(0.5, 1.0, kQuad, 4001);
  double dev_solver = 0.0, dev_oracle = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double poly = p <= 0.25 ? 1.0 - p : (p >= 0.75 ? p : 0.75);
    dev_solver = std::max(dev_solver, std::abs(solve_at_prior(0.5, 1.0, kQuad, p).accuracy - poly));
    dev_oracle = std::max(dev_oracle, std::abs(oracle_report(env, 0.5, 1.0, kQuad, p).accuracy - poly));
  }
  o.require(dev_solver <= 1e-6, "solver deviation " + fmt("%.3g", dev_solver));
  o.require(dev_oracle <= 1e-6, "oracle deviation " + fmt("%.3g", dev_oracle));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max_dev solver=") + fmt("%.3g", dev_solver) +
              " oracle=" + fmt("%.3g", dev_oracle);
  return o;
}

Outcome quadratic_closed_forms() {
  Outcome o;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double u1 = 0.05 + 0.25 * i;
    for (int j = 0; j < 20; ++j) {
      const double kappa = 0.1 + 0.3 * j;
      const double delta = std::clamp((1.0 - u1 / kappa) / 2.0, 0.0, 0.5);
      worst = std::max(worst, std::abs(optimal_cutoff(u1, kappa, kQuad) - delta));
      const Agent agent(u1);
      worst = std::max(worst, std::abs(phi_w(agent, kappa, kQuad) - std::max(0.0, 1.0 - u1 / kappa)));
    }
    worst = std::max(worst, std::abs(kappa_w(Agent(u1), kQuad) - u1));
  }
  // The kink of the w = 1 threshold curve sits at kappa_w = 1.
  const Agent one(1.0);
  o.require(kappa_w(one, kQuad) == 1.0, "kappa_w(w=1) != 1");
  o.require(phi_w(one, 1.0, kQuad) == 0.0 && phi_w(one, 1.0 + 1e-6, kQuad) > 0.0, "phi_w kink not at kappa_w");
  o.require(worst <= 1e-10, "max error " + fmt("%.3g", worst));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max_error=") + fmt("%.3g", worst);
  return o;
}

Outcome order_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t pairs = 0, agree = 0;
  std::uint64_t seed = 42;
  for (const auto* c : {&kQuad, &kShannon}) {
    for (double w : {0.0, 1.0, 2.0}) {
      const auto r = check_order_equivalence(Agent(w), *c, 1000, seed++);
      pairs += r.pairs;
      agree += r.agreements;
      for (const auto& m : r.mismatches) {
        std::ostringstream os;
        os << c->name() << " w=" << w << " " << m.tasks[0] << " vs " << m.tasks[1] << ": " << m.detail;
        o.require(false, os.str());
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 10.0, "runtime " + fmt("%.2f", elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(agree) + "/" + std::to_string(pairs) +
              " pairs agree, time=" + fmt("%.2f", elapsed) + "s";
  return o;
}

Outcome order_properties() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t incomparable = 0;
  std::uint64_t seed = 42;
  for (const auto* c : {&kQuad, &kShannon}) {
    for (const auto& [w, wp] : {std::pair{0.0, 1.0}, std::pair{1.0, 2.0}}) {
      const auto r = check_order_properties(Agent(w), wp, *c, 1000, seed++);
      incomparable += r.incomparable_pairs;
      std::ostringstream os;
      os << c->name() << " (" << w << "," << wp << "): transitivity=" << r.transitivity_violations
         << " inclusion=" << r.inclusion_violations << " strict_reversal=" << r.strict_reversal_violations
         << " nontrivial_inclusion=" << r.nontrivial_inclusion_violations
         << " kappa_necessity=" << r.kappa_necessity_violations << " incomparable=" << r.incomparable_pairs;
      o.require(r.passed(), os.str());
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(incomparable > 0, "no incomparable witness");
  o.require(elapsed < 10.0, "runtime " + fmt("%.2f", elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("incomparable witnesses=") + std::to_string(incomparable) +
              " time=" + fmt("%.2f", elapsed) + "s";
  return o;
}

Outcome effort_construction() {
  Outcome o;
  const Agent agent(1.0);
  const Task built = construct_dominated_effort_task(Task(0.75, 2.0), agent, kQuad);
  o.require(std::abs(built.phi() - 0.5) <= 1e-12 && std::abs(built.kappa() - 2.375) <= 1e-12,
            "worked instance gave (" + fmt("%.17g", built.phi()) + ", " + fmt("%.17g", built.kappa()) + ")");
  const auto cert = verify_effort_dominance(Task(0.75, 2.0), built, agent, kQuad,
                                            default_sweep_grid(agent, kQuad, Task(0.75, 2.0), built));
  o.require(cert.certified, "worked instance: " + cert.failure);
  double margin = kInf;
  std::size_t certified = 0, tasks = 0;
  std::uint64_t seed = 42;
  for (const auto* c : {&kQuad, &kShannon}) {
    const auto r = check_effort_construction(agent, *c, 200, seed++);
    tasks += r.tasks;
    certified += r.certified;
    margin = std::min(margin, r.min_margin);
    for (const auto& f : r.failures) o.require(false, c->name() + ": " + f.detail);
  }
  o.require(margin > 0.0, "minimum margin " + fmt("%.3g", margin));
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(certified) + "/" + std::to_string(tasks) +
              " certified, min_margin=" + fmt("%.6g", margin);
  return o;
}

Outcome reversal_witnesses() {
  Outcome o;
  const Agent agent(1.0);
  std::size_t found = 0, single = 0, total = 0;
  std::uint64_t seed = 42;
  for (const auto* c : {&kQuad, &kShannon}) {
    const auto r = check_reversal_witnesses(agent, *c, 50, seed++);
    total += r.configurations;
    found += r.witnesses;
    single += r.single_crossings;
    for (const auto& f : r.failures) o.require(false, c->name() + ": " + f.detail);
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(found) + "/" + std::to_string(total) +
              " witnesses, " + std::to_string(single) + " single crossings";
  return o;
}

struct Capture {
  int code;
  std::string text;
};

Capture run_cli(std::vector<std::string> args, const std::string& out_file) {
  std::ostringstream out, err;
  if (!out_file.empty()) {
    args.push_back("--out");
    args.push_back(out_file);
  }
  const int code = cli::run(args, out, err);
  std::string text = out.str();
  if (!out_file.empty()) {
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    text += ss.str();
  }
  return {code, text};
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / ("inatt_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::vector<std::string>> commands{{"verify", "--seed", "42"}};
  for (const char* n : {"1", "2", "3", "4", "5"}) commands.push_back({"figure", n});
  std::size_t checked = 0;
  for (const auto& cmd : commands) {
    std::string name;
    for (const auto& part : cmd) name += (name.empty() ? "" : " ") + part;
    std::vector<Capture> runs;
    for (const char* threads : {"1", "1", "8"}) {
      auto args = cmd;
      args.push_back("--threads");
      args.push_back(threads);
      runs.push_back(run_cli(args, (dir / ("out_" + std::to_string(runs.size()) + ".csv")).string()));
    }
    o.require(runs[0].code == 0, name + " exit " + std::to_string(runs[0].code));
    o.require(runs[0].text == runs[1].text, name + ": two runs differ");
    o.require(runs[0].text == runs[2].text, name + ": 1 vs 8 threads differ");
    ++checked;
  }
  std::filesystem::remove_all(dir);
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " commands byte-identical across runs/threads";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"figure 1 reproduction", figure_one},
      {"figure 2 reproduction", figure_two},
      {"quadratic closed forms", quadratic_closed_forms},
      {"closed-form order equals reward sweep", order_equivalence},
      {"order-property suite", order_properties},
      {"more complex yet less effort", effort_construction},
      {"effort reversal witnesses", reversal_witnesses},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
