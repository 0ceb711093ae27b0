#pragma once

// Command-line surface. `run` is the whole program; tools/inatt.cpp only
// forwards argv to it.
//
// Exit codes: 0 success or help, 1 precondition/module error, 2 bad
// arguments or configuration, 3 verification failure.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inatt/analysis.hpp"
#include "inatt/errors.hpp"
#include "inatt/grid.hpp"
#include "inatt/io/config.hpp"
#include "inatt/io/csv.hpp"
#include "inatt/io/svg.hpp"
#include "inatt/model.hpp"
#include "inatt/oracle.hpp"
#include "inatt/order.hpp"
#include "inatt/solver.hpp"
#include "inatt/thresholds.hpp"

namespace inatt::cli {

enum ExitCode : int { kOk = 0, kModuleError = 1, kUsage = 2, kViolations = 3 };

namespace detail {

using io::format_real;

inline constexpr const char* kConfigEnv = "INATT_CONFIG";

/// Output target: stdout when the path is empty, otherwise a file resolved
/// against the configured output directory.
inline std::filesystem::path resolve(const io::RunConfig& cfg, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  return std::filesystem::path(cfg.output_dir) / p;
}

inline void emit(const io::RunConfig& cfg, const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  const auto target = resolve(cfg, path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream file(target, std::ios::binary);
  if (!file) throw io::ConfigError("cannot open output file " + target.string());
  body(file);
  if (!file) throw io::ConfigError("failed writing " + target.string());
}

inline void describe(io::CsvWriter& csv, const io::RunConfig& cfg) {
  csv.comment("w", cfg.w);
  csv.comment("utility", cfg.utility);
  if (cfg.utility == "power") {
    csv.comment("gamma", cfg.gamma);
  } else {
    csv.comment("beta", cfg.beta);
  }
  csv.comment("x0", cfg.x0);
  csv.comment("cost", cfg.cost);
  if (cfg.cost == "tsallis") csv.comment("sigma", cfg.sigma);
  if (cfg.cost == "tabulated") csv.comment("cost_file", cfg.cost_file);
}

inline std::string kv(const std::string& key, double v) { return key + "=" + format_real(v); }
inline std::string kv(const std::string& key, bool v) { return key + "=" + (v ? "true" : "false"); }
inline std::string kv(const std::string& key, const std::string& v) { return key + "=" + v; }

inline std::string task_text(const Task& t) { return format_real(t.phi()) + ";" + format_real(t.kappa()); }

inline CostSpec cost_by_name(const std::string& name, const io::RunConfig& cfg) {
  io::RunConfig copy = cfg;
  copy.cost = name;
  copy.validate();
  return copy.cost_spec();
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = io::detail::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// "lo:hi:count" (linear) or a comma-separated list.
inline std::vector<double> parse_grid(const std::string& text) {
  const auto bad = [&] { return io::ConfigError("malformed grid '" + text + "' (expected lo:hi:count or a,b,c)"); };
  std::vector<double> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::stringstream ss(text);
      std::string lo, hi, count;
      if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, count)) throw bad();
      const long n = std::stol(count);
      if (n < 1) throw bad();
      out = linspace(std::stod(lo), std::stod(hi), static_cast<std::size_t>(n));
    } else {
      for (const auto& item : split_list(text)) out.push_back(std::stod(item));
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (out.empty()) throw bad();
  return out;
}

inline const char* region_color(Verdict v) {
  switch (v) {
    case Verdict::MoreComplex: return "#d9534f";
    case Verdict::LessComplex: return "#5bc0de";
    case Verdict::Equivalent: return "#f0ad4e";
    case Verdict::Incomparable: return "#e8e8e8";
  }
  return "#ffffff";
}

// ---------------------------------------------------------------------------

struct Context {
  io::RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_solve(Context& ctx, double phi, double kappa, double x, const std::string& csv_path) {
  const Agent agent = ctx.cfg.agent();
  const CostSpec c = ctx.cfg.cost_spec();
  const Task task(phi, kappa);
  const auto r = optimal_signal(x, agent, task, c);
  std::vector<std::pair<std::string, std::string>> rows{
      {"phi", format_real(phi)},
      {"kappa", format_real(kappa)},
      {"x", format_real(x)},
      {"u1", format_real(agent.u1(x))},
      {"prior", format_real(canonical_prior(phi))},
      {"cutoff", format_real(r.cutoff)},
      {"informative", r.informative ? "true" : "false"},
      {"value", format_real(r.value)},
      {"envelope", format_real(r.envelope)},
      {"accuracy", format_real(r.accuracy)},
      {"effort", format_real(r.effort)},
      {"support", std::to_string(r.signal.support_size())},
  };
  for (const auto& [k, v] : rows) ctx.out << k << '=' << v << '\n';
  for (std::size_t i = 0; i < r.signal.atoms().size(); ++i) {
    const auto& a = r.signal.atoms()[i];
    ctx.out << "atom" << i << "=" << format_real(a.posterior) << '@' << format_real(a.weight) << '\n';
  }
  if (!csv_path.empty()) {
    emit(ctx.cfg, csv_path, ctx.out, [&](std::ostream& os) {
      io::CsvWriter csv(os);
      describe(csv, ctx.cfg);
      csv.row({"key", "value"});
      for (const auto& [k, v] : rows) csv.row({k, v});
    });
  }
  return kOk;
}

inline int cmd_curve(Context& ctx, bool accuracy, double phi, double kappa, const std::string& path,
                     const std::string& svg_path) {
  const Agent agent = ctx.cfg.agent();
  const CostSpec c = ctx.cfg.cost_spec();
  const Task task(phi, kappa);
  const auto xs = ctx.cfg.reward_grid();
  std::vector<double> solver(xs.size()), oracle(xs.size());
  parallel_for(xs.size(), ctx.cfg.threads, [&](std::size_t i) {
    const auto o = oracle_solve(xs[i], agent, task, c, ctx.cfg.posterior_n);
    if (accuracy) {
      solver[i] = expected_accuracy(xs[i], agent, task, c);
      oracle[i] = o.accuracy;
    } else {
      solver[i] = effort(xs[i], agent, task, c);
      oracle[i] = o.effort;
    }
  });
  const std::string name = accuracy ? "accuracy" : "effort";
  emit(ctx.cfg, path, ctx.out, [&](std::ostream& os) {
    io::CsvWriter csv(os);
    csv.comment("curve", name);
    describe(csv, ctx.cfg);
    csv.comment("phi", phi).comment("kappa", kappa);
    csv.comment("posterior_n", std::to_string(ctx.cfg.posterior_n));
    csv.row({"x", "u1", name, "oracle_" + name});
    for (std::size_t i = 0; i < xs.size(); ++i) csv.values({xs[i], agent.u1(xs[i]), solver[i], oracle[i]});
  });
  if (!svg_path.empty()) {
    double hi = 0.0;
    for (double v : solver) hi = std::max(hi, v);
    io::SvgPlot plot(xs.front(), xs.back(), accuracy ? 0.5 : 0.0, accuracy ? 1.0 : std::max(hi, 1e-12));
    plot.add(io::Polyline{name, "#1f77b4", xs, solver});
    emit(ctx.cfg, svg_path, ctx.out, [&](std::ostream& os) { plot.write(os, name + " against reward"); });
  }
  return kOk;
}

inline int cmd_compare(Context& ctx, const Task& a, const Task& b, bool sweep) {
  const Agent agent = ctx.cfg.agent();
  const CostSpec c = ctx.cfg.cost_spec();
  ComparisonResult r;
  if (sweep) {
    const auto grid = default_sweep_grid(agent, c, a, b, ctx.cfg.reward_count);
    r = compare_by_sweep(a, b, agent, c, grid);
  } else {
    r = compare(a, b, agent, c);
  }
  auto& o = ctx.out;
  o << "verdict=" << to_string(r.verdict) << '\n';
  o << kv("method", std::string(sweep ? "sweep" : "closed_form")) << '\n';
  o << kv("b_over_a", r.b_over_a) << '\n' << kv("a_over_b", r.a_over_b) << '\n';
  o << kv("kappa_w", r.kappa_w) << '\n';
  o << kv("a_trivial", r.a_trivial) << '\n' << kv("b_trivial", r.b_trivial) << '\n';
  o << kv("phi_w_a", r.phi_w_a) << '\n' << kv("phi_w_b", r.phi_w_b) << '\n';
  o << kv("cap_a", r.cap_a) << '\n' << kv("cap_b", r.cap_b) << '\n';
  return kOk;
}

inline int cmd_thresholds(Context& ctx, const std::string& grid_text, const std::string& path) {
  const Agent agent = ctx.cfg.agent();
  const CostSpec c = ctx.cfg.cost_spec();
  const auto kappas = parse_grid(grid_text);
  for (double k : kappas) {
    if (!(k > 0.0)) throw DomainError("kappa grid values must be positive");
  }
  const double kw = kappa_w(agent, c);
  std::vector<double> phis(kappas.size());
  parallel_for(kappas.size(), ctx.cfg.threads, [&](std::size_t i) { phis[i] = phi_w(agent, kappas[i], c); });
  emit(ctx.cfg, path, ctx.out, [&](std::ostream& os) {
    io::CsvWriter csv(os);
    describe(csv, ctx.cfg);
    csv.comment("kappa_w", kw);
    csv.row({"kappa", "phi_w", "trivial"});
    for (std::size_t i = 0; i < kappas.size(); ++i) {
      csv.row({format_real(kappas[i]), format_real(phis[i]), kappas[i] <= kw ? "1" : "0"});
    }
  });
  return kOk;
}

inline int cmd_construct(Context& ctx, const Task& source, const std::string& path) {
  const Agent agent = ctx.cfg.agent();
  const CostSpec c = ctx.cfg.cost_spec();
  const Task built = construct_dominated_effort_task(source, agent, c);
  const auto grid = default_sweep_grid(agent, c, source, built, ctx.cfg.reward_count);
  const auto cert = verify_effort_dominance(source, built, agent, c, grid);
  auto& o = ctx.out;
  o << kv("source_phi", source.phi()) << '\n' << kv("source_kappa", source.kappa()) << '\n';
  o << kv("constructed_phi", built.phi()) << '\n' << kv("constructed_kappa", built.kappa()) << '\n';
  o << kv("epsilon", cert.epsilon) << '\n';
  o << "verdict=" << to_string(cert.verdict) << '\n';
  o << kv("min_gap", cert.min_gap) << '\n' << kv("certified", cert.certified) << '\n';
  if (!cert.certified) o << kv("failure", cert.failure) << '\n';
  if (!path.empty()) {
    emit(ctx.cfg, path, o, [&](std::ostream& os) {
      io::CsvWriter csv(os);
      describe(csv, ctx.cfg);
      csv.comment("source", task_text(source)).comment("constructed", task_text(built));
      csv.comment("epsilon", cert.epsilon).comment("verdict", to_string(cert.verdict));
      csv.comment("min_gap", cert.min_gap).comment("certified", cert.certified ? "true" : "false");
      csv.row({"x", "effort_source", "effort_constructed", "gap"});
      for (std::size_t i = 0; i < cert.rewards.size(); ++i) {
        csv.values({cert.rewards[i], cert.effort_source[i], cert.effort_constructed[i], cert.gaps[i]});
      }
    });
  }
  return cert.certified ? kOk : kViolations;
}

inline int cmd_reversal(Context& ctx, double phi, double kappa, double kappa2, std::optional<double> bound,
                        const std::string& path) {
  const Agent agent = ctx.cfg.agent();
  const CostSpec c = ctx.cfg.cost_spec();
  const auto wit = find_effort_reversal_witness(phi, kappa, kappa2, agent, c, bound);
  const int crossings = count_sign_changes(wit.differences, kCrossingTolerance);
  auto& o = ctx.out;
  o << kv("kappa_phi", wit.kappa_phi) << '\n';
  o << kv("x", wit.x) << '\n' << kv("x_prime", wit.x_prime) << '\n';
  o << kv("gap_at_x", wit.gap_at_x) << '\n' << kv("gap_at_x_prime", wit.gap_at_x_prime) << '\n';
  o << "sign_changes=" << crossings << '\n';
  if (!path.empty()) {
    emit(ctx.cfg, path, o, [&](std::ostream& os) {
      io::CsvWriter csv(os);
      describe(csv, ctx.cfg);
      csv.comment("phi", phi).comment("kappa", kappa).comment("kappa2", kappa2);
      csv.comment("x", wit.x).comment("x_prime", wit.x_prime);
      csv.row({"x", "effort_difference"});
      for (std::size_t i = 0; i < wit.rewards.size(); ++i) csv.values({wit.rewards[i], wit.differences[i]});
    });
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Figures

struct FigureOptions {
  int number = 1;
  double u1 = 0.5;
  double kappa = 1.0;
  std::optional<std::size_t> points;  // 201 posteriors (figure 1), 101 priors (figure 2)
  std::optional<double> ref_phi;
  std::optional<double> ref_kappa;
  double kappa_max = 4.0;
  std::size_t kappa_points = 80;
  std::size_t phi_points = 81;
  std::string out;
  std::string svg;
};

inline void figure_net_value(Context& ctx, const FigureOptions& f) {
  const CostSpec c = ctx.cfg.cost_spec();
  const std::size_t n = f.points.value_or(201);
  if (n < 2) throw io::ConfigError("--points must be at least 2");
  const double delta = optimal_cutoff(f.u1, f.kappa, c);
  const double flat = inatt::detail::net_value(f.u1, f.kappa, c, delta);
  const auto env = net_value_envelope(f.u1, f.kappa, c, ctx.cfg.posterior_n);
  const auto qs = linspace(0.0, 1.0, n);
  std::vector<double> g(qs.size()), kc(qs.size()), h(qs.size()), cav(qs.size()), ocav(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double q = qs[i];
    g[i] = f.u1 * std::max(q, 1.0 - q);
    kc[i] = f.kappa * c.value(q);
    h[i] = inatt::detail::net_value(f.u1, f.kappa, c, q);
    cav[i] = (q > delta && q < 1.0 - delta) ? flat : h[i];
    ocav[i] = env.at(q);
  }
  emit(ctx.cfg, f.out, ctx.out, [&](std::ostream& os) {
    io::CsvWriter csv(os);
    csv.comment("figure", "1");
    csv.comment("cost", ctx.cfg.cost);
    if (ctx.cfg.cost == "tsallis") csv.comment("sigma", ctx.cfg.sigma);
    csv.comment("u1", f.u1).comment("kappa", f.kappa);
    csv.comment("delta", delta).comment("flat_level", flat);
    csv.comment("posterior_n", std::to_string(ctx.cfg.posterior_n));
    csv.row({"q", "g", "kappa_c", "net_value", "envelope", "oracle_envelope"});
    for (std::size_t i = 0; i < qs.size(); ++i) csv.values({qs[i], g[i], kc[i], h[i], cav[i], ocav[i]});
  });
  if (!f.svg.empty()) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      lo = std::min({lo, kc[i], h[i]});
      hi = std::max({hi, g[i], cav[i]});
    }
    io::SvgPlot plot(0.0, 1.0, lo, hi);
    plot.add(io::Polyline{"g", "#1f77b4", qs, g});
    plot.add(io::Polyline{"kappa c", "#2ca02c", qs, kc});
    plot.add(io::Polyline{"g - kappa c", "#ff7f0e", qs, h});
    plot.add(io::Polyline{"concave closure", "#d62728", qs, cav});
    plot.marker(delta, flat, "delta");
    emit(ctx.cfg, f.svg, ctx.out, [&](std::ostream& os) { plot.write(os, "net value and its concave closure"); });
  }
}

inline void figure_accuracy(Context& ctx, const FigureOptions& f) {
  const CostSpec c = ctx.cfg.cost_spec();
  const std::size_t n = f.points.value_or(101);
  if (n < 2) throw io::ConfigError("--points must be at least 2");
  const auto ps = linspace(0.0, 1.0, n);
  const double delta = optimal_cutoff(f.u1, f.kappa, c);
  const auto env = net_value_envelope(f.u1, f.kappa, c, ctx.cfg.posterior_n);
  std::vector<double> acc(n), oacc(n);
  parallel_for(n, ctx.cfg.threads, [&](std::size_t i) {
    acc[i] = solve_at_prior(f.u1, f.kappa, c, ps[i]).accuracy;
    oacc[i] = oracle_report(env, f.u1, f.kappa, c, ps[i]).accuracy;
  });
  emit(ctx.cfg, f.out, ctx.out, [&](std::ostream& os) {
    io::CsvWriter csv(os);
    csv.comment("figure", "2");
    csv.comment("cost", ctx.cfg.cost);
    if (ctx.cfg.cost == "tsallis") csv.comment("sigma", ctx.cfg.sigma);
    csv.comment("u1", f.u1).comment("kappa", f.kappa).comment("delta", delta);
    std::ostringstream vertices;
    vertices << "(0;1) (" << format_real(delta) << ';' << format_real(1.0 - delta) << ") ("
             << format_real(1.0 - delta) << ';' << format_real(1.0 - delta) << ") (1;1)";
    csv.comment("vertices", vertices.str());
    csv.comment("posterior_n", std::to_string(ctx.cfg.posterior_n));
    csv.row({"prior", "accuracy", "oracle_accuracy"});
    for (std::size_t i = 0; i < n; ++i) csv.values({ps[i], acc[i], oacc[i]});
  });
  if (!f.svg.empty()) {
    io::SvgPlot plot(0.0, 1.0, 0.5, 1.0);
    plot.add(io::Polyline{"accuracy", "#1f77b4", ps, acc});
    emit(ctx.cfg, f.svg, ctx.out, [&](std::ostream& os) { plot.write(os, "expected accuracy against the prior"); });
  }
}

inline void figure_regions(Context& ctx, const FigureOptions& f) {
  const Agent agent = ctx.cfg.agent();
  const CostSpec c = ctx.cfg.cost_spec();
  if (f.kappa_points < 1 || f.phi_points < 2) throw io::ConfigError("lattice needs kappa_points >= 1, phi_points >= 2");
  if (!(f.kappa_max > 0.0)) throw io::ConfigError("--kappa-max must be positive");
  const double default_phi = f.number == 4 ? 0.25 : 0.75;
  const Task ref(f.ref_phi.value_or(default_phi), f.ref_kappa.value_or(2.0));
  std::optional<Task> built;
  if (f.number == 5) built = construct_dominated_effort_task(ref, agent, c);

  std::vector<double> kappas(f.kappa_points);
  for (std::size_t k = 0; k < f.kappa_points; ++k) {
    kappas[k] = f.kappa_max * static_cast<double>(k + 1) / static_cast<double>(f.kappa_points);
  }
  const auto phis = linspace(0.0, 1.0, f.phi_points);
  std::vector<double> curve(kappas.size());
  const std::size_t cells = kappas.size() * phis.size();
  std::vector<Verdict> verdicts(cells);
  parallel_for(kappas.size(), ctx.cfg.threads, [&](std::size_t k) { curve[k] = phi_w(agent, kappas[k], c); });
  parallel_for(cells, ctx.cfg.threads, [&](std::size_t i) {
    const Task t(phis[i % phis.size()], kappas[i / phis.size()]);
    verdicts[i] = compare(ref, t, agent, c).verdict;
  });
  const double kw = kappa_w(agent, c);

  emit(ctx.cfg, f.out, ctx.out, [&](std::ostream& os) {
    io::CsvWriter csv(os);
    csv.comment("figure", std::to_string(f.number));
    describe(csv, ctx.cfg);
    csv.comment("reference", task_text(ref));
    csv.comment("kappa_w", kw);
    csv.comment("reference_phi_w", phi_w(agent, ref.kappa(), c));
    if (built) {
      csv.comment("constructed", task_text(*built));
      csv.comment("epsilon", effort_saving(ref, agent, c));
    }
    csv.comment("region", "verdict of (phi;kappa) against the reference");
    csv.row({"kappa", "phi", "phi_w", "region"});
    for (std::size_t i = 0; i < cells; ++i) {
      const std::size_t k = i / phis.size();
      csv.row({format_real(kappas[k]), format_real(phis[i % phis.size()]), format_real(curve[k]),
               to_string(verdicts[i])});
    }
  });
  if (!f.svg.empty()) {
    io::SvgPlot plot(0.0, f.kappa_max, 0.0, 1.0);
    const double dk = f.kappa_max / static_cast<double>(f.kappa_points);
    const double dp = 1.0 / static_cast<double>(f.phi_points - 1);
    for (std::size_t i = 0; i < cells; ++i) {
      const double k = kappas[i / phis.size()];
      const double p = phis[i % phis.size()];
      plot.add(io::Cell{k - dk, std::max(0.0, p - dp / 2), k, std::min(1.0, p + dp / 2), region_color(verdicts[i])});
    }
    plot.add(io::Polyline{"phi_w", "#000000", kappas, curve});
    plot.marker(ref.kappa(), ref.phi(), "reference");
    if (built) plot.marker(built->kappa(), built->phi(), "constructed");
    emit(ctx.cfg, f.svg, ctx.out, [&](std::ostream& os) { plot.write(os, "complexity regions"); });
  }
}

inline int cmd_figure(Context& ctx, const FigureOptions& f) {
  switch (f.number) {
    case 1: figure_net_value(ctx, f); break;
    case 2: figure_accuracy(ctx, f); break;
    default: figure_regions(ctx, f); break;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Verification suite

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

inline int cmd_verify(Context& ctx, const std::string& costs_text, std::size_t samples, const std::string& path) {
  const auto names = split_list(costs_text);
  if (names.empty()) throw io::ConfigError("--costs must name at least one cost");
  const Agent base = ctx.cfg.agent();
  const std::uint64_t seed = ctx.cfg.seed;
  const unsigned threads = ctx.cfg.threads;
  std::vector<Violation> violations;
  std::vector<std::string> summary;
  std::uint64_t stream = 0;

  for (const auto& name : names) {
    const CostSpec c = cost_by_name(name, ctx.cfg);
    for (const auto& [w, w_prime] : {std::pair{0.0, 1.0}, std::pair{1.0, 2.0}}) {
      const auto r = check_order_properties(base.with_w(w), w_prime, c, samples, derive_seed(seed, stream++), threads);
      std::ostringstream line;
      line << "check=order_properties cost=" << name << " w=" << format_real(w) << " w_prime=" << format_real(w_prime)
           << " samples=" << r.samples << " transitivity_violations=" << r.transitivity_violations
           << " incomparable_pairs=" << r.incomparable_pairs
           << " constructed_incomparable=" << (r.constructed_incomparable ? "true" : "false")
           << " inclusion_violations=" << r.inclusion_violations
           << " strict_reversal_violations=" << r.strict_reversal_violations
           << " nontrivial_inclusion_violations=" << r.nontrivial_inclusion_violations
           << " kappa_necessity_violations=" << r.kappa_necessity_violations
           << " passed=" << (r.passed() ? "true" : "false");
      summary.push_back(line.str());
      violations.insert(violations.end(), r.violations.begin(), r.violations.end());
      if (!r.passed() && r.violations.empty()) {
        violations.push_back(Violation{"order_properties", w, w_prime, {}, "no incomparable witness found"});
      }
    }
    for (double w : {0.0, 1.0, 2.0}) {
      const auto r = check_order_equivalence(base.with_w(w), c, samples, derive_seed(seed, stream++), threads);
      std::ostringstream line;
      line << "check=order_equivalence cost=" << name << " w=" << format_real(w) << " pairs=" << r.pairs
           << " agreements=" << r.agreements << " passed=" << (r.passed() ? "true" : "false");
      summary.push_back(line.str());
      violations.insert(violations.end(), r.mismatches.begin(), r.mismatches.end());
    }
    for (double w : {1.0, 2.0}) {
      const auto r = check_effort_construction(base.with_w(w), c, samples, derive_seed(seed, stream++), threads);
      std::ostringstream line;
      line << "check=effort_construction cost=" << name << " w=" << format_real(w) << " tasks=" << r.tasks
           << " certified=" << r.certified << " min_margin=" << format_real(r.tasks ? r.min_margin : 0.0)
           << " passed=" << (r.passed() ? "true" : "false");
      summary.push_back(line.str());
      violations.insert(violations.end(), r.failures.begin(), r.failures.end());
    }
    {
      const auto r = check_reversal_witnesses(base.with_w(1.0), c, samples, derive_seed(seed, stream++), threads);
      std::ostringstream line;
      line << "check=reversal_witness cost=" << name << " w=1 configurations=" << r.configurations
           << " witnesses=" << r.witnesses << " single_crossings=" << r.single_crossings
           << " passed=" << (r.passed() ? "true" : "false");
      summary.push_back(line.str());
      violations.insert(violations.end(), r.failures.begin(), r.failures.end());
    }
  }

  for (const auto& line : summary) ctx.out << line << '\n';
  ctx.out << "seed=" << seed << " samples=" << samples << " violations=" << violations.size() << '\n';
  if (!path.empty()) {
    emit(ctx.cfg, path, ctx.out, [&](std::ostream& os) {
      io::CsvWriter csv(os);
      csv.comment("seed", std::to_string(seed));
      csv.comment("samples", std::to_string(samples));
      csv.comment("costs", costs_text);
      for (const auto& line : summary) os << "# " << line << '\n';
      csv.row({"kind", "w", "w_prime", "tasks", "detail"});
      for (const auto& v : violations) {
        std::string tasks;
        for (const auto& t : v.tasks) tasks += (tasks.empty() ? "" : " ") + task_text(t);
        csv.row({v.kind, format_real(v.w), format_real(v.w_prime), tasks, v.detail});
      }
    });
  }
  return violations.empty() ? kOk : kViolations;
}

}  // namespace detail

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational inattention and task complexity for binary guessing tasks"};
  app.name("inatt");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  if (const char* env = std::getenv(detail::kConfigEnv)) config_path = env;
  app.add_option("--config", config_path, "key=value configuration file (default: $INATT_CONFIG)");

  // Flags that overlay the configuration file; stored as text and applied
  // through the same parser as the file.
  const std::vector<std::pair<std::string, std::string>> overlay_keys{
      {"w", "fixed reward for a correct guess"},
      {"utility", "linear | power"},
      {"beta", "slope of the linear utility"},
      {"gamma", "exponent of the power utility"},
      {"x0", "reservation reward"},
      {"cost", "quadratic | shannon | tsallis | tabulated"},
      {"sigma", "Tsallis exponent"},
      {"cost-file", "tabulated cost CSV with header q,c"},
      {"reward-min", "reward grid minimum"},
      {"reward-max", "reward grid maximum"},
      {"reward-count", "reward grid size"},
      {"reward-spacing", "linear | geometric"},
      {"posterior-n", "oracle posterior grid size (odd, >= 101)"},
      {"seed", "seed for randomized commands"},
      {"output-dir", "directory for relative output paths"},
      {"threads", "worker threads"},
  };
  std::map<std::string, std::string> overlay;
  std::map<std::string, CLI::Option*> overlay_opts;
  for (const auto& [flag, help] : overlay_keys) {
    overlay_opts[flag] = app.add_option("--" + flag, overlay[flag], help);
  }

  double phi = 0.0, kappa = 0.0, x = 0.0, kappa2 = 0.0;
  double a_phi = 0.0, a_kappa = 0.0, b_phi = 0.0, b_kappa = 0.0;
  std::optional<double> bound;
  bool sweep = false;
  std::string out_path, svg_path, kappa_grid = "0.25:4:16", costs = "quadratic,shannon";
  std::size_t samples = 1000;
  detail::FigureOptions fig;

  auto* solve = app.add_subcommand("solve", "optimal signal at one reward");
  solve->add_option("--phi", phi, "ex ante uncertainty")->required();
  solve->add_option("--kappa", kappa, "difficulty")->required();
  solve->add_option("--x", x, "reward")->required();
  solve->add_option("--out", out_path, "optional CSV of the report");

  auto* acc = app.add_subcommand("accuracy-curve", "expected accuracy over the reward grid");
  auto* eff = app.add_subcommand("effort-curve", "effort over the reward grid");
  for (auto* sub : {acc, eff}) {
    sub->add_option("--phi", phi, "ex ante uncertainty")->required();
    sub->add_option("--kappa", kappa, "difficulty")->required();
    sub->add_option("--out", out_path, "CSV output (default stdout)");
    sub->add_option("--svg", svg_path, "optional SVG rendering");
  }

  auto* cmp = app.add_subcommand("compare", "is task b more complex than task a");
  cmp->add_option("--a-phi", a_phi)->required();
  cmp->add_option("--a-kappa", a_kappa)->required();
  cmp->add_option("--b-phi", b_phi)->required();
  cmp->add_option("--b-kappa", b_kappa)->required();
  cmp->add_flag("--sweep", sweep, "compare accuracies over a reward sweep instead of the closed form");

  auto* thr = app.add_subcommand("thresholds", "phi_w over a difficulty grid");
  thr->add_option("--kappa-grid", kappa_grid, "lo:hi:count or comma list")->capture_default_str();
  thr->add_option("--out", out_path, "CSV output (default stdout)");

  auto* con = app.add_subcommand("construct-dominating", "more complex task with lower effort everywhere");
  con->add_option("--phi", phi)->required();
  con->add_option("--kappa", kappa)->required();
  con->add_option("--out", out_path, "optional certificate CSV");

  auto* rev = app.add_subcommand("reversal-witness", "rewards at which effort ranks reverse");
  rev->add_option("--phi", phi)->required();
  rev->add_option("--kappa", kappa)->required();
  rev->add_option("--kappa2", kappa2)->required();
  rev->add_option("--bound", bound, "largest reward scanned");
  rev->add_option("--out", out_path, "optional CSV of the effort difference");

  auto* figc = app.add_subcommand("figure", "regenerate figure data");
  figc->add_option("number", fig.number, "1-5")->required()->check(CLI::Range(1, 5));
  figc->add_option("--u1", fig.u1, "utility of a correct guess (figures 1-2)")->capture_default_str();
  figc->add_option("--kappa", fig.kappa, "difficulty (figures 1-2)")->capture_default_str();
  figc->add_option("--points", fig.points, "posterior/prior points (figures 1-2)");
  figc->add_option("--ref-phi", fig.ref_phi, "reference uncertainty (figures 3-5)");
  figc->add_option("--ref-kappa", fig.ref_kappa, "reference difficulty (figures 3-5)");
  figc->add_option("--kappa-max", fig.kappa_max)->capture_default_str();
  figc->add_option("--kappa-points", fig.kappa_points)->capture_default_str();
  figc->add_option("--phi-points", fig.phi_points)->capture_default_str();
  figc->add_option("--out", fig.out, "CSV output (default stdout)");
  figc->add_option("--svg", fig.svg, "optional SVG rendering");

  auto* ver = app.add_subcommand("verify", "seeded property suite");
  ver->add_option("--samples", samples)->capture_default_str();
  ver->add_option("--costs", costs, "comma-separated cost names")->capture_default_str();
  ver->add_option("--out", out_path, "optional violations CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  detail::Context ctx{io::RunConfig{}, out, err};
  try {
    if (!config_path.empty()) io::apply(ctx.cfg, io::read_key_values(config_path));
    io::KeyValues flags;
    for (const auto& [flag, value] : overlay) {
      if (overlay_opts[flag]->count() == 0) continue;
      std::string key = flag;
      std::replace(key.begin(), key.end(), '-', '_');
      flags[key] = value;
    }
    io::apply(ctx.cfg, flags);
    ctx.cfg.validate();
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (solve->parsed()) return detail::cmd_solve(ctx, phi, kappa, x, out_path);
    if (acc->parsed()) return detail::cmd_curve(ctx, true, phi, kappa, out_path, svg_path);
    if (eff->parsed()) return detail::cmd_curve(ctx, false, phi, kappa, out_path, svg_path);
    if (cmp->parsed()) return detail::cmd_compare(ctx, Task(a_phi, a_kappa), Task(b_phi, b_kappa), sweep);
    if (thr->parsed()) return detail::cmd_thresholds(ctx, kappa_grid, out_path);
    if (con->parsed()) return detail::cmd_construct(ctx, Task(phi, kappa), out_path);
    if (rev->parsed()) return detail::cmd_reversal(ctx, phi, kappa, kappa2, bound, out_path);
    if (figc->parsed()) return detail::cmd_figure(ctx, fig);
    if (ver->parsed()) return detail::cmd_verify(ctx, costs, samples, out_path);
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kModuleError;
  }
  return kUsage;
}

}  // namespace inatt::cli
