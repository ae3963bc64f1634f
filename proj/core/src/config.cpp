#include "thermowiener/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "thermowiener/numerics.hpp"

namespace thermowiener {

std::string ConfigError::format(const std::string& what, int line) {
  return line > 0 ? "config line " + std::to_string(line) + ": " + what : "config: " + what;
}

namespace {

enum class Kind { kReal, kPositive, kUnit, kInt, kPositiveInt, kChoice, kList, kString, kBool };

struct KeySpec {
  std::string key;
  Kind kind;
  std::string default_value;
  std::string doc;
  std::vector<std::string> choices = {};
};

const std::vector<KeySpec>& specs() {
  static const std::vector<KeySpec> s = {
      {"seed", Kind::kInt, "1", "base seed for every random stream"},
      {"output_dir", Kind::kString, "out", "report bundle directory"},
      {"metric.kind", Kind::kChoice, "euclidean", "distance on space", {"euclidean", "heisenberg"}},
      {"metric.dim", Kind::kPositiveInt, "1", "space dimension for euclidean metrics (1..3)"},
      {"metric.volume", Kind::kChoice, "analytic", "ball volume evaluation", {"analytic", "monte-carlo"}},
      {"metric.mc_samples", Kind::kPositiveInt, "20000", "samples per Monte Carlo ball volume"},
      {"kernel.kind", Kind::kChoice, "gaussian", "capacity kernel", {"gaussian", "heat"}},
      {"kernel.a", Kind::kPositive, "0.25", "Gaussian exponent of capacity kernels"},
      {"kernel.b", Kind::kPositive, "0.5", "second exponent (series weights, comparability)"},
      {"kernel.beta", Kind::kPositive, "1", "operator scale in (1/beta) Laplacian - d/dt"},
      {"bounds.Lambda", Kind::kPositive, "1", "Gaussian bound constant"},
      {"bounds.a0", Kind::kPositive, "0.25", "upper Gaussian exponent"},
      {"bounds.b0", Kind::kPositive, "0.25", "lower Gaussian exponent"},
      {"bounds.c_d", Kind::kPositive, "2", "doubling constant"},
      {"domain.benchmark", Kind::kString, "", "registry benchmark; excludes the other domain keys"},
      {"domain.family", Kind::kChoice, "halfspace-time", "domain family",
       {"halfspace-time", "spatial-halfspace", "cylinder", "cone", "cusp", "punctured", "mask"}},
      {"domain.half_width", Kind::kPositive, "1", "box half width"},
      {"domain.s_lo", Kind::kReal, "-1", "box time range start, relative to t0"},
      {"domain.s_hi", Kind::kReal, "1", "box time range end, relative to t0"},
      {"domain.radius", Kind::kPositive, "0.4", "cylinder or punctured disk radius"},
      {"domain.center", Kind::kList, "", "cylinder axis offset (comma list)"},
      {"domain.M0", Kind::kPositive, "1", "cone aperture scale"},
      {"domain.theta", Kind::kUnit, "0.25", "cone excluded fraction"},
      {"domain.profile", Kind::kChoice, "loglog", "cusp profile", {"power", "loglog"}},
      {"domain.p", Kind::kPositive, "1", "power cusp exponent"},
      {"domain.c", Kind::kPositive, "1", "loglog cusp coefficient"},
      {"domain.mask_file", Kind::kString, "", "voxel mask file"},
      {"domain.z0", Kind::kList, "", "boundary point x..., t (defaults to the origin)"},
      {"domain.T1", Kind::kReal, "-2", "strip start"},
      {"domain.T2", Kind::kReal, "2", "strip end"},
      {"capacity.set", Kind::kChoice, "ball", "capacity target",
       {"ring", "ball-complement", "ball", "flat", "box"}},
      {"capacity.radius", Kind::kPositive, "0.25", "parabolic ball radius"},
      {"capacity.lo", Kind::kList, "-0.5", "flat/box lower corner offsets"},
      {"capacity.hi", Kind::kList, "0.5", "flat/box upper corner offsets"},
      {"capacity.s_lo", Kind::kReal, "-0.25", "box time range start"},
      {"capacity.s_hi", Kind::kReal, "0", "box time range end"},
      {"capacity.k", Kind::kPositiveInt, "1", "ring time level"},
      {"capacity.h", Kind::kPositiveInt, "1", "ring Gaussian level"},
      {"capacity.variant", Kind::kChoice, "omega", "ring variant", {"omega", "dee"}},
      {"capacity.l", Kind::kPositiveInt, "1", "ball complement level"},
      {"capacity.resolution", Kind::kPositiveInt, "2", "first refinement level"},
      {"capacity.levels", Kind::kPositiveInt, "3", "refinement levels (>= 2)"},
      {"capacity.tolerance", Kind::kPositive, "1e-6", "relative duality gap"},
      {"wiener.lambda", Kind::kUnit, "0.25", "ring ratio"},
      {"wiener.mu", Kind::kUnit, "0.5", "second ratio for comparability"},
      {"wiener.variant", Kind::kChoice, "sufficient", "series variant", {"sufficient", "necessary", "dee"}},
      {"wiener.K_max", Kind::kPositiveInt, "40", "time levels"},
      {"wiener.H_max", Kind::kPositiveInt, "40", "Gaussian levels"},
      {"wiener.resolution", Kind::kPositiveInt, "3", "ring sampling resolution"},
      {"wiener.s_values", Kind::kList, "5,10,15,20,25,30", "comparability truncations"},
      {"wiener.rho", Kind::kUnit, "0.05", "Wiener function ratio"},
      {"wiener.L_max", Kind::kPositiveInt, "20", "Wiener function levels"},
      {"wiener.v_resolution", Kind::kPositiveInt, "4", "ball complement sampling resolution"},
      {"integral.b", Kind::kPositive, "0.5", "inner integral exponent"},
      {"integral.inner_nodes", Kind::kPositiveInt, "24", "inner Gauss-Legendre nodes"},
      {"integral.u_max", Kind::kPositive, "40", "inner cut-off in log rho"},
      {"integral.outer_nodes", Kind::kPositiveInt, "4", "outer nodes per panel"},
      {"integral.panel_width", Kind::kPositive, "1", "outer panel width in log eta"},
      {"integral.resolution", Kind::kPositiveInt, "8", "section sampling resolution"},
      {"probes.count", Kind::kPositiveInt, "8", "probes on the approach path"},
      {"probes.r_start", Kind::kPositive, "0.25", "first probe scale"},
      {"probes.ratio", Kind::kUnit, "0.5", "scale ratio between probes"},
      {"probes.direction", Kind::kList, "", "offset direction x..., s (defaults to 0..., 1)"},
      {"cone.M0", Kind::kPositive, "1", "slice ball scale"},
      {"cone.r0", Kind::kPositive, "0.25", "largest tested radius"},
      {"cone.r_levels", Kind::kPositiveInt, "6", "tested radii (>= 4)"},
      {"cone.resolution", Kind::kPositiveInt, "8", "slice grid resolution"},
      {"cone.theta_min", Kind::kUnit, "0.01", "threshold on the excluded fraction"},
      {"classify.use_cone", Kind::kBool, "true", "try the cone shortcut first"},
      {"pde.beta", Kind::kPositive, "1", "operator scale of the walk"},
      {"pde.step", Kind::kPositive, "1e-5", "time step"},
      {"pde.walkers", Kind::kPositiveInt, "1000", "walkers per probe (>= 100)"},
      {"pde.seed", Kind::kInt, "", "walk seed (defaults to seed)"},
      {"pde.max_time", Kind::kPositive, "10", "walk time budget"},
      {"pde.data", Kind::kChoice, "distance", "boundary data",
       {"distance", "linear", "caloric", "constant"}},
      {"pde.scale", Kind::kPositive, "1", "distance data is min(1, dhat / scale)"},
      {"suite.criteria", Kind::kList, "", "acceptance criteria to run (default all)"},
  };
  return s;
}

const KeySpec* find_spec(const std::string& key) {
  for (const auto& s : specs())
    if (s.key == key) return &s;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end && std::isfinite(out);
}

bool parse_long(const std::string& s, long& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end;
}

bool parse_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  if (trim(s).empty()) return true;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v;
    if (!parse_double(trim(item), v)) return false;
    out.push_back(v);
  }
  return true;
}

}  // namespace

const std::vector<ConfigKeyDoc>& RunConfig::schema() {
  static const std::vector<ConfigKeyDoc> docs = [] {
    std::vector<ConfigKeyDoc> d;
    for (const auto& s : specs()) {
      std::string doc = s.doc;
      if (!s.choices.empty()) {
        doc += " (";
        for (std::size_t i = 0; i < s.choices.size(); ++i) doc += (i ? "|" : "") + s.choices[i];
        doc += ")";
      }
      d.push_back({s.key, s.default_value, doc});
    }
    return d;
  }();
  return docs;
}

void RunConfig::check(const std::string& key, const std::string& value, int line) const {
  const KeySpec* s = find_spec(key);
  if (!s) throw ConfigError("unknown key '" + key + "'", line);
  double d;
  long l;
  std::vector<double> list;
  switch (s->kind) {
    case Kind::kReal:
      if (!parse_double(value, d)) throw ConfigError(key + " must be a real number", line);
      break;
    case Kind::kPositive:
      if (!parse_double(value, d) || !(d > 0)) throw ConfigError(key + " must be positive", line);
      break;
    case Kind::kUnit:
      if (!parse_double(value, d) || !(d > 0 && d < 1)) throw ConfigError(key + " must be in (0, 1)", line);
      break;
    case Kind::kInt:
      if (!parse_long(value, l)) throw ConfigError(key + " must be an integer", line);
      break;
    case Kind::kPositiveInt:
      if (!parse_long(value, l) || l < 1) throw ConfigError(key + " must be a positive integer", line);
      break;
    case Kind::kChoice:
      if (std::find(s->choices.begin(), s->choices.end(), value) == s->choices.end())
        throw ConfigError(key + " must be one of " + schema()[s - specs().data()].doc, line);
      break;
    case Kind::kList:
      if (!parse_list(value, list)) throw ConfigError(key + " must be a comma separated list of reals", line);
      break;
    case Kind::kString:
      break;
    case Kind::kBool:
      if (value != "true" && value != "false") throw ConfigError(key + " must be true or false", line);
      break;
  }
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", line);
    if (c.values_.count(key)) throw ConfigError("duplicate key '" + key + "'", line);
    c.check(key, value, line);
    c.values_[key] = value;
    c.lines_[key] = line;
  }
  c.check_relations();
  return c;
}

RunConfig RunConfig::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  check(key, value, 0);
  values_[key] = value;
  lines_.erase(key);
  check_relations();
}

int RunConfig::line_of(const std::string& key) const {
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

void RunConfig::check_relations() const {
  if (has("domain.benchmark")) {
    try {
      find_benchmark(str("domain.benchmark"));
    } catch (const InputError& e) {
      throw ConfigError(e.what(), line_of("domain.benchmark"));
    }
    for (const auto& [k, v] : values_)
      if (k.rfind("domain.", 0) == 0 && k != "domain.benchmark")
        throw ConfigError(k + " conflicts with domain.benchmark", line_of(k));
    if (has("metric.kind") || has("metric.dim"))
      throw ConfigError("benchmarks fix the metric; drop metric.kind/metric.dim", line_of(has("metric.kind") ? "metric.kind" : "metric.dim"));
  }
  if (str("metric.kind") == "euclidean" && (integer("metric.dim") < 1 || integer("metric.dim") > 3))
    throw ConfigError("metric.dim must be 1, 2 or 3", line_of("metric.dim"));
  if (str("metric.kind") == "heisenberg" && has("metric.dim") && integer("metric.dim") != 3)
    throw ConfigError("the heisenberg metric has dim 3", line_of("metric.dim"));
  if (integer("pde.walkers") < 100) throw ConfigError("pde.walkers must be at least 100", line_of("pde.walkers"));
  if (integer("capacity.levels") < 2) throw ConfigError("capacity.levels must be >= 2", line_of("capacity.levels"));
  if (integer("cone.r_levels") < 4) throw ConfigError("cone.r_levels must be >= 4", line_of("cone.r_levels"));
  for (const char* k : {"capacity.resolution", "wiener.resolution", "wiener.v_resolution", "integral.resolution",
                        "cone.resolution"})
    if (integer(k) > 12) throw ConfigError(std::string(k) + " must be at most 12", line_of(k));
  if (real("domain.T1") >= real("domain.T2")) throw ConfigError("domain.T1 must be below domain.T2", line_of("domain.T2"));
  if (str("domain.family") == "mask" && !has("domain.mask_file") && !has("domain.benchmark"))
    throw ConfigError("the mask family needs domain.mask_file", line_of("domain.family"));
}

std::string RunConfig::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  if (key == "pde.seed") return str("seed");
  const KeySpec* s = find_spec(key);
  if (!s) throw ConfigError("unknown key '" + key + "'", 0);
  return s->default_value;
}

double RunConfig::real(const std::string& key) const {
  double d = 0;
  if (!parse_double(str(key), d)) throw ConfigError(key + " is not a real number", line_of(key));
  return d;
}

long RunConfig::integer(const std::string& key) const {
  long l = 0;
  if (!parse_long(str(key), l)) throw ConfigError(key + " is not an integer", line_of(key));
  return l;
}

bool RunConfig::boolean(const std::string& key) const { return str(key) == "true"; }

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> v;
  if (!parse_list(str(key), v)) throw ConfigError(key + " is not a list of reals", line_of(key));
  return v;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

std::string RunConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

MetricSpace RunConfig::metric() const {
  if (has("domain.benchmark")) return find_benchmark(str("domain.benchmark")).make().metric();
  MetricSpace m = str("metric.kind") == "heisenberg" ? MetricSpace::heisenberg()
                                                     : MetricSpace::euclidean(static_cast<int>(integer("metric.dim")));
  if (str("metric.volume") == "monte-carlo") m = m.with_monte_carlo(static_cast<std::size_t>(integer("metric.mc_samples")), seed());
  return m;
}

GaussBounds RunConfig::bounds() const {
  return {real("bounds.Lambda"), real("bounds.a0"), real("bounds.b0"), real("bounds.c_d")};
}

DomainSpec RunConfig::domain() const {
  if (has("domain.benchmark")) return find_benchmark(str("domain.benchmark")).make();
  const MetricSpace m = metric();
  const int n = m.dim();
  auto point = [&](const std::string& key, int len) {
    const auto v = reals(key);
    if (!v.empty() && static_cast<int>(v.size()) != len)
      throw ConfigError(key + " needs " + std::to_string(len) + " values", line_of(key));
    return v;
  };
  DomainParams p;
  p.half_width = real("domain.half_width");
  p.s_lo = real("domain.s_lo");
  p.s_hi = real("domain.s_hi");
  p.radius = real("domain.radius");
  p.center = SpacePoint(n);
  const auto c = point("domain.center", n);
  for (int i = 0; i < static_cast<int>(c.size()); ++i) p.center[i] = c[i];
  p.M0 = real("domain.M0");
  p.theta = real("domain.theta");
  p.cusp.kind = str("domain.profile") == "power" ? CuspProfile::Kind::kPower : CuspProfile::Kind::kLogLog;
  p.cusp.p = real("domain.p");
  p.cusp.c = real("domain.c");
  const Family f = parse_family(str("domain.family"));
  if (f == Family::kMask) p.mask = std::make_shared<MaskGrid>(MaskGrid::read(str("domain.mask_file")));
  SpaceTimePoint z0{SpacePoint(n), 0.0};
  const auto z = point("domain.z0", n + 1);
  for (int i = 0; i < static_cast<int>(z.size()); ++i) (i < n ? z0.x[i] : z0.t) = z[i];
  try {
    DomainSpec d(f, p, m, z0, Strip{real("domain.T1"), real("domain.T2")});
    d.validate();
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(std::string("domain: ") + e.what(), line_of("domain.family"));
  }
}

SeriesOptions RunConfig::series_options() const {
  SeriesOptions o;
  o.K_max = static_cast<int>(integer("wiener.K_max"));
  o.H_max = static_cast<int>(integer("wiener.H_max"));
  o.resolution = static_cast<int>(integer("wiener.resolution"));
  o.tolerance = real("capacity.tolerance");
  return o;
}

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec q;
  q.inner_nodes = static_cast<int>(integer("integral.inner_nodes"));
  q.u_max = real("integral.u_max");
  q.outer_nodes = static_cast<int>(integer("integral.outer_nodes"));
  q.panel_width = real("integral.panel_width");
  q.resolution = static_cast<int>(integer("integral.resolution"));
  return q;
}

ConeOptions RunConfig::cone_options() const {
  ConeOptions o;
  o.M0 = real("cone.M0");
  o.r0 = real("cone.r0");
  o.r_levels = static_cast<int>(integer("cone.r_levels"));
  o.resolution = static_cast<int>(integer("cone.resolution"));
  o.theta_min = real("cone.theta_min");
  return o;
}

ClassifyOptions RunConfig::classify_options() const {
  ClassifyOptions o;
  o.lambda = real("wiener.lambda");
  o.a = real("kernel.a");
  o.b = real("kernel.b");
  o.a0 = real("bounds.a0");
  o.b0 = real("bounds.b0");
  if (!(o.a <= o.a0)) throw ConfigError("classify needs kernel.a <= bounds.a0", line_of("kernel.a"));
  if (!(o.b > o.b0)) throw ConfigError("classify needs kernel.b > bounds.b0", line_of("kernel.b"));
  o.series = series_options();
  o.cone = cone_options();
  o.use_cone = boolean("classify.use_cone");
  return o;
}

WalkConfig RunConfig::walk_config() const {
  WalkConfig w;
  w.beta = real("pde.beta");
  w.step = real("pde.step");
  w.walkers = static_cast<int>(integer("pde.walkers"));
  w.seed = static_cast<std::uint64_t>(integer("pde.seed"));
  w.max_time = real("pde.max_time");
  return w;
}

}  // namespace thermowiener
