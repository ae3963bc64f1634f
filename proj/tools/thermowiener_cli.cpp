// Command line front end: one analysis per invocation, results in a report
// bundle directory.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "thermowiener/acceptance.hpp"
#include "thermowiener/config.hpp"
#include "thermowiener/numerics.hpp"
#include "thermowiener/report.hpp"

namespace tw = thermowiener;

namespace {

constexpr int kExitConfig = 64;
constexpr int kExitData = 65;
constexpr int kExitFailure = 70;

struct Options {
  std::string config_path;
  std::string out;
  std::optional<long> seed;
  bool quiet = false;
};

// Everything derived from the config is built before any analysis runs, so
// a bad value is always reported as a config error.
struct Setup {
  tw::RunConfig cfg;
  std::optional<tw::DomainSpec> domain;
};

void say(const Options& o, const std::string& line) {
  if (!o.quiet) std::cout << line << "\n";
}

std::vector<tw::SpaceTimePoint> approach_probes(const tw::RunConfig& cfg, const tw::MetricSpace& m) {
  const int n = m.dim();
  const int count = static_cast<int>(cfg.integer("probes.count"));
  const double r0 = cfg.real("probes.r_start"), ratio = cfg.real("probes.ratio");
  tw::SpaceTimePoint dir{tw::SpacePoint(n), 1.0};
  const auto d = cfg.reals("probes.direction");
  if (!d.empty()) {
    if (static_cast<int>(d.size()) != n + 1)
      throw tw::ConfigError("probes.direction needs " + std::to_string(n + 1) + " values", 0);
    for (int i = 0; i < n; ++i) dir.x[i] = d[i];
    dir.t = d[n];
  }
  std::vector<tw::SpaceTimePoint> out;
  double r = r0;
  for (int j = 0; j < count; ++j, r *= ratio) out.push_back({m.dilate(dir.x, r), dir.t * r * r});
  return out;
}

tw::ApproachPath approach_path(const tw::RunConfig& cfg, int n) {
  tw::ApproachPath p;
  p.direction = {tw::SpacePoint(n), 1.0};
  const auto d = cfg.reals("probes.direction");
  if (!d.empty()) {
    if (static_cast<int>(d.size()) != n + 1)
      throw tw::ConfigError("probes.direction needs " + std::to_string(n + 1) + " values", 0);
    for (int i = 0; i < n; ++i) p.direction.x[i] = d[i];
    p.direction.t = d[n];
  }
  p.r_start = cfg.real("probes.r_start");
  p.ratio = cfg.real("probes.ratio");
  return p;
}

tw::Kernel capacity_kernel(const tw::RunConfig& cfg, const tw::MetricSpace& m) {
  if (cfg.str("kernel.kind") == "heat") {
    if (m.kind() != tw::MetricKind::kEuclidean)
      throw tw::ConfigError("kernel.kind = heat needs a euclidean metric", 0);
    return tw::Kernel::heat(m.dim(), cfg.real("kernel.beta"));
  }
  return tw::Kernel::gaussian(m, cfg.real("kernel.a"));
}

tw::SpacePoint corner(const tw::RunConfig& cfg, const std::string& key, int n) {
  const auto v = cfg.reals(key);
  if (v.size() != 1 && static_cast<int>(v.size()) != n)
    throw tw::ConfigError(key + " needs 1 or " + std::to_string(n) + " values", 0);
  tw::SpacePoint p(n);
  for (int i = 0; i < n; ++i) p[i] = v.size() == 1 ? v[0] : v[i];
  return p;
}

int cmd_capacity(const Setup& s, tw::ReportBundle& out, const Options& o) {
  const auto& cfg = s.cfg;
  const std::string set = cfg.str("capacity.set");
  const int levels = static_cast<int>(cfg.integer("capacity.levels"));
  const int base = static_cast<int>(cfg.integer("capacity.resolution"));
  const double tol = cfg.real("capacity.tolerance");
  tw::RefinementReport rep;
  if (set == "ring" || set == "ball-complement") {
    const tw::DomainSpec& dom = *s.domain;
    const tw::Kernel k = capacity_kernel(cfg, dom.metric());
    tw::DomainTarget target;
    if (set == "ring")
      target = tw::RingSpec{cfg.real("wiener.lambda"), static_cast<int>(cfg.integer("capacity.k")),
                            static_cast<int>(cfg.integer("capacity.h")),
                            cfg.str("capacity.variant") == "dee" ? tw::RingVariant::kDee : tw::RingVariant::kOmega};
    else
      target = tw::BallComplementTarget{static_cast<int>(cfg.integer("capacity.l")), cfg.real("wiener.lambda")};
    rep = tw::refine_capacity(dom, target, k, levels, base, tol);
  } else {
    const tw::MetricSpace m = cfg.metric();
    const int n = m.dim();
    const tw::Kernel k = capacity_kernel(cfg, m);
    tw::CompactSet cs;
    if (set == "ball")
      cs = tw::ParabolicBallSet{cfg.real("capacity.radius")};
    else if (set == "flat")
      cs = tw::FlatBoxSet{corner(cfg, "capacity.lo", n), corner(cfg, "capacity.hi", n)};
    else
      cs = tw::SpaceTimeBoxSet{corner(cfg, "capacity.lo", n), corner(cfg, "capacity.hi", n), cfg.real("capacity.s_lo"),
                               cfg.real("capacity.s_hi")};
    rep = tw::refine_compact(m, {tw::SpacePoint(n), 0.0}, cs, k, levels, base, tol);
  }
  out.json("capacity.json", tw::to_json(rep));
  tw::CsvTable levels_csv({"resolution", "atoms", "constraints", "capacity", "dual", "gap", "measure"});
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& e = rep.levels[i];
    levels_csv.row({static_cast<double>(e.resolution), static_cast<double>(e.n_atoms),
                    static_cast<double>(e.n_constraints), e.value, e.dual_value, e.gap, rep.measures[i]});
  }
  out.csv("refinement.csv", levels_csv);
  if (!rep.levels.empty()) {
    say(o, "capacity " + tw::format_real(rep.levels.back().value) + " (gap " +
               tw::format_real(rep.levels.back().gap) + ", last refinement change " +
               tw::format_real(rep.last_relative_change) + ")");
  }
  out.finish("ok", 0);
  return 0;
}

int cmd_series(const Setup& s, tw::ReportBundle& out, const Options& o) {
  const auto& cfg = s.cfg;
  const tw::DomainSpec& dom = *s.domain;
  const tw::SeriesOptions so = cfg.series_options();
  const tw::SeriesVariant v = tw::parse_variant(cfg.str("wiener.variant"));
  const double lambda = cfg.real("wiener.lambda"), a = cfg.real("kernel.a"), b = cfg.real("kernel.b");
  const tw::SeriesTable t = tw::series_table(dom, lambda, a, b, v, so);
  tw::Json payload = {{"table", tw::to_json(t)}};
  std::string line = tw::variant_name(v) + " series S(" + std::to_string(so.K_max) + ") = " +
                     tw::format_real(t.partial_sums().back());
  if (so.K_max >= 20) {
    const tw::SeriesReport r = tw::divergence_verdict(t);
    payload["report"] = tw::to_json(r);
    line += ", " + tw::verdict_name(r.verdict);
  } else {
    payload["report_note"] = "verdict needs wiener.K_max >= 20";
  }
  if (v == tw::SeriesVariant::kDee) {
    const auto cr = tw::lambda_comparability(dom, a, b, lambda, cfg.real("wiener.mu"), cfg.reals("wiener.s_values"), so);
    payload["comparability"] = tw::to_json(cr);
    tw::CsvTable c({"s", "z_lambda", "z_mu", "c"});
    for (std::size_t i = 0; i < cr.s_values.size(); ++i) c.row({cr.s_values[i], cr.z_lambda[i], cr.z_mu[i], cr.c_per_s[i]});
    out.csv("comparability.csv", c);
    line += ", comparability spread " + tw::format_real(cr.c_spread);
  }
  out.json("series.json", payload);
  out.csv("series_terms.csv", tw::series_csv(t));
  out.csv("partial_sums.csv", tw::partial_sums_csv(t.partial_sums()));
  say(o, line);
  const bool partial = t.partial;
  out.finish(partial ? "partial" : "ok", partial ? kExitFailure : 0, partial ? "some capacity solves did not certify" : "");
  return partial ? kExitFailure : 0;
}

int cmd_integral(const Setup& s, tw::ReportBundle& out, const Options& o) {
  const auto& cfg = s.cfg;
  const tw::DomainSpec& dom = *s.domain;
  const auto probes = approach_probes(cfg, dom.metric());
  const double lambda = cfg.real("wiener.lambda");
  const tw::IntegralReport ir = tw::integral_test(dom, lambda, cfg.real("integral.b"), probes, cfg.quadrature());
  out.json("integral.json", tw::to_json(ir));
  tw::CsvTable c({"dhat", "log_inv_dhat2", "M"});
  for (const auto& p : ir.probes) c.row({p.dhat, -std::log(p.dhat * p.dhat), p.M});
  out.csv("integral.csv", c);

  // Wiener function bound over the same probes.
  tw::BoundOptions bo;
  bo.series = cfg.series_options();
  bo.L_max = static_cast<int>(cfg.integer("wiener.L_max"));
  bo.resolution = static_cast<int>(cfg.integer("wiener.v_resolution"));
  const tw::GaussBounds gb = cfg.bounds();
  const tw::Kernel vk = tw::surrogate_kernel(dom.metric(), cfg.real("kernel.beta"), gb.b0, gb.Lambda);
  const tw::BoundCheckReport br = tw::bound_check(dom, vk, lambda, cfg.real("kernel.a"), cfg.real("kernel.b"),
                                                  cfg.real("wiener.rho"), probes, bo);
  out.json("bound.json", tw::to_json(br));
  tw::CsvTable bc({"s", "Z", "W"});
  for (std::size_t i = 0; i < br.Z.size(); ++i) bc.row({br.s_values[i], br.Z[i], br.W[i]});
  out.csv("bound.csv", bc);

  say(o, std::string("integral ") + (ir.divergent ? "divergent" : "bounded") + " (slope " + tw::format_real(ir.slope) +
             "), bound C = " + tw::format_real(br.C) + ", Spearman " + tw::format_real(br.spearman));
  if (ir.flagged) {
    out.finish("partial", kExitFailure, ir.note);
    return kExitFailure;
  }
  out.finish("ok", 0);
  return 0;
}

int cmd_cone(const Setup& s, tw::ReportBundle& out, const Options& o) {
  const tw::ConeReport r = tw::cone_check(*s.domain, s.cfg.cone_options());
  out.json("cone.json", tw::to_json(r));
  tw::CsvTable c({"r", "theta_hat"});
  for (std::size_t i = 0; i < r.radii.size(); ++i) c.row({r.radii[i], r.theta_hat[i]});
  out.csv("cone.csv", c);
  say(o, std::string("cone condition ") + (r.satisfied ? "holds" : "fails") + ", theta = " + tw::format_real(r.theta));
  out.finish("ok", 0);
  return 0;
}

int cmd_classify(const Setup& s, tw::ReportBundle& out, const Options& o) {
  const tw::Classification c = tw::classify(*s.domain, s.cfg.classify_options());
  out.json("classification.json", tw::to_json(c));
  if (c.sufficient_table) out.csv("sufficient_partial_sums.csv", tw::partial_sums_csv(c.sufficient_table->partial_sums()));
  if (c.necessary_table) out.csv("necessary_partial_sums.csv", tw::partial_sums_csv(c.necessary_table->partial_sums()));
  say(o, tw::verdict_name(c.verdict) + " (" + tw::basis_name(c.basis) + ")");
  const int code = c.verdict == tw::RegularityVerdict::kRegular ? 0 : c.verdict == tw::RegularityVerdict::kIrregular ? 1 : 2;
  out.finish("ok", code, tw::verdict_name(c.verdict));
  return code;
}

int cmd_pde(const Setup& s, tw::ReportBundle& out, const Options& o) {
  const auto& cfg = s.cfg;
  const tw::DomainSpec& dom = *s.domain;
  if (dom.metric().kind() != tw::MetricKind::kEuclidean)
    throw tw::ConfigError("pde-verify needs a euclidean metric", 0);
  const tw::WalkConfig w = cfg.walk_config();
  const std::string data = cfg.str("pde.data");
  const double scale = cfg.real("pde.scale"), beta = w.beta;
  tw::BoundaryData phi;
  if (data == "distance") {
    phi = [&dom, scale](const tw::SpaceTimePoint& z) {
      const tw::SpaceTimePoint u = dom.to_local(z);
      return std::min(1.0, dom.metric().parabolic_dist(u, {tw::SpacePoint(u.x.dim), 0.0}) / scale);
    };
  } else if (data == "linear") {
    phi = [&dom](const tw::SpaceTimePoint& z) { return dom.to_local(z).x[0]; };
  } else if (data == "caloric") {
    // (1/beta) u'' = u_t for u = x + x^2 + 2t / beta.
    phi = [&dom, beta](const tw::SpaceTimePoint& z) {
      const tw::SpaceTimePoint u = dom.to_local(z);
      return u.x[0] + u.x[0] * u.x[0] + 2 * u.t / beta;
    };
  } else {
    phi = [](const tw::SpaceTimePoint&) { return 1.0; };
  }
  const tw::HolderFit f = tw::boundary_holder(dom, phi, approach_path(cfg, dom.metric().dim()),
                                              static_cast<int>(cfg.integer("probes.count")), w);
  out.json("holder.json", tw::to_json(f));
  tw::CsvTable c({"dhat", "value", "std_error", "gap"});
  for (const auto& p : f.probes) c.row({p.dhat, p.value, p.std_error, p.gap});
  out.csv("holder.csv", c);
  std::string line = "pde " + tw::holder_status_name(f.status);
  if (f.status == tw::HolderStatus::kFit) line += ", alpha0 = " + tw::format_real(f.alpha0);
  say(o, line);
  out.finish("ok", 0);
  return 0;
}

int cmd_suite(const Setup& s, tw::ReportBundle& out, const Options& o) {
  tw::AcceptanceOptions ao;
  ao.seed = s.cfg.seed();
  for (double v : s.cfg.reals("suite.criteria")) {
    if (v != std::floor(v) || v < 1 || v > tw::kCriterionCount)
      throw tw::ConfigError("suite.criteria entries must be integers 1.." + std::to_string(tw::kCriterionCount), 0);
    ao.only.push_back(static_cast<int>(v));
  }
  tw::Json rows = tw::Json::array();
  int failed = 0;
  tw::run_acceptance(ao, [&](const tw::CriterionResult& r) {
    rows.push_back(tw::to_json(r));
    failed += !r.pass;
    say(o, "[" + std::string(r.pass ? "PASS" : "FAIL") + "] " + std::to_string(r.id) + " " + r.title + ": " + r.detail);
  });
  out.json("acceptance.json", rows);
  const int code = failed ? 1 : 0;
  out.finish("ok", code, std::to_string(failed) + " criteria failed");
  return code;
}

int cmd_list_domains() {
  std::cout << "benchmarks (euclidean(1), z0 = (0, 0)):\n";
  for (const auto& b : tw::benchmark_registry())
    std::cout << "  " << b.name << "  [" << (b.status == tw::KnownStatus::kRegular ? "regular" : "irregular") << "]  "
              << b.description << "\n";
  std::cout << "families:\n";
  for (const auto& f : tw::family_docs()) std::cout << "  " << f.name << ": " << f.parameters << "\n";
  std::cout << "config keys:\n";
  for (const auto& k : tw::RunConfig::schema())
    std::cout << "  " << k.key << " = " << (k.default_value.empty() ? "(unset)" : k.default_value) << "  # " << k.doc
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiener-type regularity tests for heat-type operators"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"capacity", "Gaussian-kernel capacity of a set with refinement"},
      {"series", "ring-set series table and divergence verdict"},
      {"integral", "integral criterion and Wiener function bound over approach probes"},
      {"cone", "exterior cone condition"},
      {"classify", "regularity verdict (exit 0 regular, 1 irregular, 2 inconclusive)"},
      {"pde-verify", "Monte Carlo boundary behaviour along an approach path"},
      {"benchmark-suite", "acceptance criteria over the benchmark registry"},
      {"list-domains", "print benchmarks, families and config keys"},
  };
  for (const auto& [name, doc] : commands) {
    CLI::App* sub = app.add_subcommand(name, doc);
    if (name == "list-domains") continue;
    sub->add_option("--config", opt.config_path, "flat key = value config file");
    sub->add_option("--out", opt.out, "report bundle directory (overrides output_dir)");
    sub->add_option("--seed", opt.seed, "base seed (overrides the config)");
    sub->add_flag("--quiet", opt.quiet, "suppress the summary line");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "list-domains") return cmd_list_domains();

  Setup setup;
  try {
    setup.cfg = opt.config_path.empty() ? tw::RunConfig::parse("") : tw::RunConfig::read(opt.config_path);
    if (opt.seed) setup.cfg.set("seed", std::to_string(*opt.seed));
    if (!opt.out.empty()) setup.cfg.set("output_dir", opt.out);
    const bool needs_domain = command != "benchmark-suite" &&
                              !(command == "capacity" && setup.cfg.str("capacity.set") != "ring" &&
                                setup.cfg.str("capacity.set") != "ball-complement");
    if (needs_domain) setup.domain = setup.cfg.domain();
    (void)setup.cfg.metric();
    (void)setup.cfg.series_options();
    (void)setup.cfg.walk_config();
    if (command == "classify") (void)setup.cfg.classify_options();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  std::optional<tw::ReportBundle> bundle;
  try {
    bundle.emplace(setup.cfg.str("output_dir"), command, setup.cfg);
  } catch (const std::exception& e) {
    std::cerr << "cannot create report bundle: " << e.what() << "\n";
    return kExitFailure;
  }
  try {
    if (command == "capacity") return cmd_capacity(setup, *bundle, opt);
    if (command == "series") return cmd_series(setup, *bundle, opt);
    if (command == "integral") return cmd_integral(setup, *bundle, opt);
    if (command == "cone") return cmd_cone(setup, *bundle, opt);
    if (command == "classify") return cmd_classify(setup, *bundle, opt);
    if (command == "pde-verify") return cmd_pde(setup, *bundle, opt);
    return cmd_suite(setup, *bundle, opt);
  } catch (const tw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    bundle->finish("failed", kExitConfig, e.what());
    return kExitConfig;
  } catch (const tw::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    bundle->finish("failed", kExitData, e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "analysis failed: " << e.what() << "\n";
    bundle->finish("failed", kExitFailure, e.what());
    return kExitFailure;
  }
}
