#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "kahlerlab/error.hpp"
#include "kahlerlab/functionals.hpp"
#include "kahlerlab/hitchin2d.hpp"
#include "kahlerlab/sampling.hpp"

namespace kl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

long parse_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v.empty() || pos != v.size()) throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::uint64_t x = 0;
  try {
    if (!v.empty() && v[0] != '-') x = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v.empty() || pos != v.size())
    throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + v + "'");
  return x;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v.empty() || pos != v.size() || !std::isfinite(x))
    throw ConfigError("config key '" + key + "': expected a finite number, got '" + v + "'");
  return x;
}

void validate_value(const KeySpec& k, const std::string& v) {
  switch (k.type) {
    case ValueType::Int: parse_long(k.name, v); break;
    case ValueType::UInt: parse_uint(k.name, v); break;
    case ValueType::Double: parse_double(k.name, v); break;
    case ValueType::String:
      if (v.empty()) throw ConfigError("config key '" + k.name + "': empty value");
      break;
    case ValueType::IntList:
      for (const auto& s : split(v, ',')) parse_long(k.name, s);
      break;
    case ValueType::DoubleList:
      for (const auto& s : split(v, ',')) parse_double(k.name, s);
      break;
  }
}

KeySpec req(std::string name, ValueType t) { return KeySpec{std::move(name), t, true, ""}; }
KeySpec opt(std::string name, ValueType t, std::string def) { return KeySpec{std::move(name), t, false, std::move(def)}; }

using VT = ValueType;

}  // namespace

Config::Config(std::vector<KeySpec> schema, std::map<std::string, std::string> values)
    : schema_(std::move(schema)), values_(std::move(values)) {}

const KeySpec& Config::spec(const std::string& key) const {
  for (const KeySpec& k : schema_)
    if (k.name == key) return k;
  throw ConfigError("unknown config key '" + key + "'");
}

std::string Config::raw(const std::string& key) const {
  const KeySpec& k = spec(key);
  const auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  if (k.required) throw ConfigError("missing required config key '" + key + "'");
  return k.default_value;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }
long Config::get_int(const std::string& key) const { return parse_long(key, raw(key)); }
std::uint64_t Config::get_uint(const std::string& key) const { return parse_uint(key, raw(key)); }
double Config::get_double(const std::string& key) const { return parse_double(key, raw(key)); }
std::string Config::get_string(const std::string& key) const { return raw(key); }

std::vector<long> Config::get_int_list(const std::string& key) const {
  std::vector<long> out;
  for (const auto& s : split(raw(key), ',')) out.push_back(parse_long(key, s));
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split(raw(key), ',')) out.push_back(parse_double(key, s));
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  validate_value(spec(key), value);
  values_[key] = value;
}

Json Config::to_json() const {
  Json j = Json::object();
  for (const KeySpec& k : schema_) {
    switch (k.type) {
      case VT::Int: j[k.name] = get_int(k.name); break;
      case VT::UInt: j[k.name] = get_uint(k.name); break;
      case VT::Double: j[k.name] = get_double(k.name); break;
      case VT::String: j[k.name] = get_string(k.name); break;
      case VT::IntList: j[k.name] = get_int_list(k.name); break;
      case VT::DoubleList: j[k.name] = get_double_list(k.name); break;
    }
  }
  return j;
}

Config parse_config(const std::string& text, const std::vector<KeySpec>& schema) {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = std::find_if(schema.begin(), schema.end(), [&](const KeySpec& k) { return k.name == key; });
    if (it == schema.end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (values.count(key)) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    validate_value(*it, value);
    values[key] = value;
  }
  for (const KeySpec& k : schema)
    if (k.required && !values.count(k.name)) throw ConfigError("missing required config key '" + k.name + "'");
  return Config(schema, std::move(values));
}

const std::vector<KeySpec>& schema_for(const std::string& command) {
  static const std::map<std::string, std::vector<KeySpec>> schemas = {
      {"verify",
       {opt("n_max", VT::Int, "2"), opt("resolution", VT::Int, "16"), opt("period", VT::Double, "1.0"),
        opt("rank_max", VT::Int, "2"), opt("band", VT::Int, "1"), opt("samples", VT::Int, "2"),
        req("seed", VT::UInt), req("tol_star", VT::Double), req("tol_route", VT::Double),
        req("tol_involution", VT::Double), req("tol_trace", VT::Double), req("tol_bound", VT::Double),
        req("tol_lagrangian", VT::Double), req("tol_identity", VT::Double)}},
      {"flow",
       {opt("scenario", VT::String, "abelian"), opt("n", VT::Int, "1"), opt("resolution", VT::Int, "16"),
        opt("period", VT::Double, "1.0"), opt("rank", VT::Int, "1"), opt("amplitude", VT::Double, "0.3"),
        opt("band", VT::Int, "1"), opt("target", VT::String, "H"), opt("steps", VT::Int, "500"),
        opt("step_size", VT::Double, "0.01"), req("seed", VT::UInt), req("value_tol", VT::Double),
        req("gradient_tol", VT::Double), req("probe_tol", VT::Double)}},
      {"reduce2d",
       {opt("field", VT::String, "random"), opt("resolution", VT::Int, "32"), opt("period", VT::Double, "1.0"),
        opt("band", VT::Int, "2"), opt("amplitude", VT::Double, "0.5"), opt("samples", VT::Int, "5"),
        req("seed", VT::UInt), req("tol_dictionary", VT::Double), req("tol_reduction", VT::Double),
        req("tol_gauge", VT::Double), req("tol_det", VT::Double)}},
      {"example",
       {opt("kind", VT::String, "contraction"), opt("n", VT::Int, "2"), opt("resolution", VT::Int, "8"),
        opt("period", VT::Double, "1.0"), opt("block_ranks", VT::IntList, "1,1"), opt("lambda", VT::IntList, "1"),
        req("seed", VT::UInt), req("tol_holomorphy", VT::Double), req("tol_wedge", VT::Double)}},
  };
  const auto it = schemas.find(command);
  if (it == schemas.end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

namespace {

constexpr double kPi = std::numbers::pi;
// Keeps a single scenario within desk-scale memory.
constexpr double kMaxPoints = 1 << 22;

int checked_int(const Config& cfg, const std::string& key, long lo, long hi) {
  const long v = cfg.get_int(key);
  if (v < lo || v > hi)
    throw ConfigError("config key '" + key + "' must be in " + std::to_string(lo) + ".." + std::to_string(hi));
  return static_cast<int>(v);
}

ChartPtr chart_from(const Config& cfg, int n) {
  const long res = cfg.get_int("resolution");
  if (res < 4 || res % 2 != 0)
    throw ConfigError("resolution " + std::to_string(res) + " is invalid: it must be even and at least 4");
  const double period = cfg.get_double("period");
  if (!(period > 0.0)) throw ConfigError("period must be positive");
  if (std::pow(static_cast<double>(res), 2 * n) > kMaxPoints)
    throw ConfigError("grid of resolution " + std::to_string(res) + " in complex dimension " + std::to_string(n) +
                      " is too large");
  return make_chart(n, static_cast<int>(res), period);
}

double positive_tol(const Config& cfg, const std::string& key) {
  const double t = cfg.get_double(key);
  if (t < 0.0) throw ConfigError("tolerance '" + key + "' must be non-negative");
  return t;
}

struct CheckList {
  std::vector<Check> checks;
  // Passes when value <= tolerance; NaN fails.
  void at_most(const std::string& name, double value, double tol) { checks.push_back({name, value, tol, value <= tol}); }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  Json to_json() const {
    Json arr = Json::array();
    for (const Check& c : checks)
      arr.push_back(Json{{"name", c.name}, {"value", json_number(c.value)}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    return arr;
  }
  Json summary() const {
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
    return Json{{"total", checks.size()}, {"failed", failed}};
  }
};

double sign_of(int p) { return p % 2 == 0 ? 1.0 : -1.0; }

Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Json residual_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

}  // namespace

RunResult run_verify(const Config& cfg) {
  const int n_max = checked_int(cfg, "n_max", 1, 3);
  const int rank_max = checked_int(cfg, "rank_max", 1, 4);
  const int band = checked_int(cfg, "band", 0, 8);
  const int samples = checked_int(cfg, "samples", 1, 100);
  const std::uint64_t seed = cfg.get_uint("seed");
  const double tol_star = positive_tol(cfg, "tol_star"), tol_route = positive_tol(cfg, "tol_route");
  const double tol_inv = positive_tol(cfg, "tol_involution"), tol_trace = positive_tol(cfg, "tol_trace");
  const double tol_bound = positive_tol(cfg, "tol_bound"), tol_lag = positive_tol(cfg, "tol_lagrangian");
  const double tol_id = positive_tol(cfg, "tol_identity");
  std::vector<ChartPtr> charts;
  for (int n = 1; n <= n_max; ++n) charts.push_back(chart_from(cfg, n));
  if (band >= cfg.get_int("resolution") / 2) throw ConfigError("band must be below resolution / 2");

  CheckList cl;
  std::uint64_t stream = 0;
  auto next = [&] { return sub_seed(seed, ++stream); };

  for (int n = 1; n <= n_max; ++n) {
    const ChartPtr c = charts[n - 1];
    const std::string tag = "_n" + std::to_string(n);

    long failures = 0;
    for (const IdentityCheck& ic : verify_sign_identities(n).checks) failures += ic.failures;
    cl.at_most("sign_identities" + tag, static_cast<double>(failures), 0.0);

    double star_mono = 0.0, star_rand = 0.0, route = 0.0, herm = 0.0, min_norm = INFINITY;
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        for (const MonomialKey& k : basis_keys(n, p, q)) {
          const ScalarForm m = ScalarForm::monomial(c, k);
          star_mono = std::max(star_mono, (hodge_star(hodge_star(m)) - sign_of(p + q) * m).max_abs());
        }
        for (int s = 0; s < samples; ++s) {
          const ScalarForm a = random_scalar_form(c, p, q, next(), band);
          const ScalarForm b = random_scalar_form(c, p, q, next(), band);
          star_rand = std::max(star_rand, (hodge_star(hodge_star(a)) - sign_of(p + q) * a).max_abs());
          const InnerRoutes r = inner_global_routes(a, b);
          route = std::max(route, std::abs(r.wedge_route - r.local_route) / std::max(r.scale, 1e-300));
          const cplx ab = inner_global(a, b, INFINITY), ba = inner_global(b, a, INFINITY);
          herm = std::max(herm, std::abs(ab - std::conj(ba)) / (1.0 + std::abs(ab)));
          min_norm = std::min(min_norm, norm_squared(a));
        }
      }
    cl.at_most("star_square_monomials" + tag, star_mono, 0.0);
    cl.at_most("star_square_random" + tag, star_rand, tol_star);
    cl.at_most("scalar_inner_routes" + tag, route, tol_route);
    cl.at_most("scalar_inner_hermiticity" + tag, herm, tol_route);
    cl.checks.push_back({"scalar_inner_positivity" + tag, min_norm, 0.0, min_norm > 0.0});

    for (int r = 1; r <= rank_max; ++r) {
      const std::string rtag = tag + "_r" + std::to_string(r);
      const MetricField h = random_metric(c, r, next(), band, 0.3);
      double troute = 0.0, inv = 0.0, tpos = INFINITY;
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
          for (int s = 0; s < samples; ++s) {
            const EndForm a = random_end_form(c, r, p, q, next(), band);
            const EndForm b = random_end_form(c, r, p, q, next(), band);
            const TraceInnerRoutes tr = trace_inner_routes(a, b, h);
            troute = std::max(troute, std::abs(tr.wedge_route - tr.local_route) / std::max(tr.scale, 1e-300));
            inv = std::max(inv, (hermitian_conjugate(hermitian_conjugate(a, h), h) - a).max_abs() / a.max_abs());
            tpos = std::min(tpos, norm_squared(a, h));
          }
      cl.at_most("trace_inner_routes" + rtag, troute, tol_route);
      cl.checks.push_back({"trace_inner_positivity" + rtag, tpos, 0.0, tpos > 0.0});
      cl.at_most("hermitian_conjugate_involution" + rtag, inv, tol_inv);

      double trc = 0.0, mean = 0.0, rel_sw = 0.0, bound = 0.0, lag = 0.0;
      for (int s = 0; s < samples; ++s) {
        const HiggsInstance inst = random_instance(c, r, next());
        const HSCurvature hs = hs_curvature(inst);
        trc = std::max(trc, trace(hs.commutator).max_abs());
        mean = std::max(mean, mean_curvature_routes(inst).route_defect);
        rel_sw = std::max(rel_sw, sw_functional(inst).residual("full_equals_H_plus_dbar"));
        bound = std::max(bound, -kobayashi(inst).value("gap"));
        lag = std::max(lag, lagrangian_report(inst).rel_mismatch);
      }
      const HiggsInstance central(MetricField::identity(c, r), EndForm(c, r, 1, 0),
                                  cplx(0.0, -2.0 * kPi) * EndForm::from_scalar(kahler_form(c), r));
      cl.at_most("trace_commutator_vanishes" + rtag, trc, tol_trace);
      cl.at_most("mean_curvature_routes" + rtag, mean, tol_route);
      cl.at_most("full_equals_H_plus_dbar" + rtag, rel_sw, tol_route);
      cl.at_most("kobayashi_bound_violation" + rtag, bound, tol_bound);
      cl.at_most("kobayashi_central_gap" + rtag, std::abs(kobayashi(central).value("gap")), tol_bound);
      cl.at_most("lagrangian_matches_H" + rtag, lag, tol_lag);
    }
    if (n == 2) {
      const FunctionalReport id = identity_residuals(random_instance(c, rank_max, next()));
      cl.at_most("koba_vs_fullYM" + tag, id.residual("koba_vs_fullYM"), tol_id);
      cl.at_most("koba_vs_I" + tag, id.residual("koba_vs_I"), tol_id);
    }
  }

  RunResult res;
  res.report = Json{{"command", "verify"}, {"config", cfg.to_json()}, {"checks", cl.to_json()},
                    {"summary", cl.summary()}, {"pass", cl.all_pass()}};
  res.exit_code = cl.all_pass() ? kPass : kCheckFailure;
  return res;
}

RunResult run_flow(const Config& cfg) {
  const std::string scenario = cfg.get_string("scenario");
  const int n = checked_int(cfg, "n", 1, 3);
  const int rank = checked_int(cfg, "rank", 1, 4);
  const ChartPtr c = chart_from(cfg, n);
  const std::uint64_t seed = cfg.get_uint("seed");
  const double amplitude = cfg.get_double("amplitude");

  FlowOptions opt;
  const std::string target = cfg.get_string("target");
  if (target == "H") opt.target = FlowTarget::H;
  else if (target == "J") opt.target = FlowTarget::J;
  else throw ConfigError("target must be H or J");
  opt.steps = checked_int(cfg, "steps", 0, 100000);
  opt.step_size = cfg.get_double("step_size");
  if (!(opt.step_size > 0.0)) throw ConfigError("step_size must be positive");
  opt.band = checked_int(cfg, "band", 0, 4);
  if (opt.band >= cfg.get_int("resolution") / 2) throw ConfigError("band must be below resolution / 2");
  opt.seed = seed;
  opt.value_tol = positive_tol(cfg, "value_tol");
  opt.gradient_tol = positive_tol(cfg, "gradient_tol");
  const double probe_tol = positive_tol(cfg, "probe_tol");

  std::optional<HiggsInstance> start;
  if (scenario == "abelian") {
    if (rank != 1) throw ConfigError("the abelian scenario requires rank = 1");
    const double L = c->period(0);
    const ScalarField f = ScalarField::from_function(
        c, [&](const std::vector<double>& x) { return amplitude * std::cos(2.0 * kPi * x[0] / L); });
    MatrixField k(c, 1);
    for (std::size_t i = 0; i < c->points(); ++i) k.at(i)[0] = std::exp(-f[i].real());
    start.emplace(MetricField(k), EndForm(c, 1, 1, 0));
  } else if (scenario == "random") {
    InstanceSampling s;
    s.metric_amplitude = amplitude;
    start.emplace(random_instance(c, rank, seed, s));
  } else if (scenario == "solution") {
    start.emplace(MetricField::identity(c, rank), random_normal_higgs(c, rank, seed));
  } else {
    throw ConfigError("scenario must be abelian, random or solution");
  }

  const FlowResult fr = flow_minimize(*start, opt);
  const FunctionalReport& rep = fr.report;
  double increase = 0.0;
  for (std::size_t i = 1; i < rep.trace.size(); ++i) increase = std::max(increase, rep.trace[i].value - rep.trace[i - 1].value);
  const double initial = rep.value("initial_value"), final_value = rep.value("final_value");
  const bool converged = rep.status == "converged" || rep.status == "stationary";

  CheckList cl;
  cl.at_most("monotone_trace", increase, 0.0);
  cl.at_most("final_not_above_initial", final_value - initial, 0.0);
  // A minimum lies below every sampled perturbation; only meaningful once the flow has stopped.
  const double probe_gap = final_value - rep.value("min_probe_value");
  cl.checks.push_back({"final_below_probes", probe_gap, probe_tol, !converged || probe_gap <= probe_tol});

  Json summary = report_to_json(rep);
  summary.erase("trace");
  RunResult res;
  res.report = Json{{"command", "flow"},       {"config", cfg.to_json()},          {"result", summary},
                    {"converged", converged},   {"trace_rows", rep.trace.size()},  {"checks", cl.to_json()},
                    {"summary", cl.summary()}, {"pass", cl.all_pass()}};
  res.csv = trace_to_csv(rep);
  res.exit_code = cl.all_pass() ? kPass : kCheckFailure;
  return res;
}

RunResult run_reduce2d(const Config& cfg) {
  const std::string field = cfg.get_string("field");
  if (field != "random" && field != "zero") throw ConfigError("field must be random or zero");
  const ChartPtr c = chart_from(cfg, 1);
  const int band = checked_int(cfg, "band", 0, 8);
  if (band >= cfg.get_int("resolution") / 2) throw ConfigError("band must be below resolution / 2");
  const int samples = checked_int(cfg, "samples", 1, 1000);
  const double amplitude = cfg.get_double("amplitude");
  const std::uint64_t seed = cfg.get_uint("seed");
  const double tol_dict = positive_tol(cfg, "tol_dictionary"), tol_red = positive_tol(cfg, "tol_reduction");
  const double tol_gauge = positive_tol(cfg, "tol_gauge"), tol_det = positive_tol(cfg, "tol_det");

  std::vector<SU2Config> cfgs;
  if (field == "zero") cfgs.push_back(SU2Config::zero(c));
  else
    for (int s = 0; s < samples; ++s) cfgs.push_back(random_su2_config(c, sub_seed(seed, s), band, amplitude));

  const HitchinForm forms[] = {HitchinForm::Real, HitchinForm::Complex, HitchinForm::Forms, HitchinForm::KW};
  double dict = 0.0, red = 0.0, gauge = 0.0;
  Json side_by_side;
  for (std::size_t s = 0; s < cfgs.size(); ++s) {
    const SU2Config& g = cfgs[s];
    const auto r = reduced_sdym_residual(g);
    const auto sd = sdym_residual(g);
    for (int k = 0; k < 3; ++k) red = std::max(red, std::abs(sd[k] - r[k]));
    const double hol = std::hypot(r[1], r[2]);
    const std::vector<std::vector<double>> want = {
        {r[0], hol}, {0.5 * r[0], hol}, {0.5 * r[0], 0.25 * hol}, {r[0], r[2], r[1]}};
    const SU2Config rotated = gauge_transform(g, random_unitary(2, sub_seed(seed, 1000 + s)));
    Json row = Json::object();
    for (int f = 0; f < 4; ++f) {
      const auto got = hitchin_residual(g, forms[f]);
      const auto rot = hitchin_residual(rotated, forms[f]);
      for (std::size_t k = 0; k < got.size(); ++k) {
        dict = std::max(dict, std::abs(got[k] - want[f][k]));
        gauge = std::max(gauge, std::abs(got[k] - rot[k]) / (1.0 + got[k]));
      }
      row[to_string(forms[f])] = residual_json(got);
    }
    row["sdym"] = residual_json({sd[0], sd[1], sd[2]});
    row["reduced_sdym"] = residual_json({r[0], r[1], r[2]});
    if (s == 0) side_by_side = row;
  }

  // Determinant holomorphy on a configuration that solves D_zbar phi = 0.
  const SU2Config sol = field == "zero" ? SU2Config::zero(c) : complex_gauge_solution(c, sub_seed(seed, 2000), 1, 0.3);
  const DetHolomorphy dh = det_holomorphy(sol);
  const DetHolomorphy dr = det_holomorphy(cfgs.front());

  CheckList cl;
  cl.at_most("formulation_dictionaries", dict, tol_dict);
  cl.at_most("sdym_reduction_identity", red, tol_red);
  cl.at_most("gauge_covariance", gauge, tol_gauge);
  cl.at_most("det_holomorphy_solution_dzbar_phi", dh.dzbar_phi, tol_det);
  cl.at_most("det_holomorphy_bound", dh.dzbar_det - dh.constant * dh.dzbar_phi, tol_det);

  RunResult res;
  res.report = Json{{"command", "reduce2d"},
                    {"config", cfg.to_json()},
                    {"formulations", side_by_side},
                    {"det_holomorphy_solution",
                     Json{{"dzbar_phi", json_number(dh.dzbar_phi)}, {"dzbar_det", json_number(dh.dzbar_det)},
                          {"constant", json_number(dh.constant)}}},
                    {"det_holomorphy_first_config",
                     Json{{"dzbar_phi", json_number(dr.dzbar_phi)}, {"dzbar_det", json_number(dr.dzbar_det)}}},
                    {"checks", cl.to_json()},
                    {"summary", cl.summary()},
                    {"pass", cl.all_pass()}};
  res.exit_code = cl.all_pass() ? kPass : kCheckFailure;
  return res;
}

RunResult run_example(const Config& cfg) {
  const std::string kind = cfg.get_string("kind");
  const int n = checked_int(cfg, "n", 1, 4);
  const ChartPtr c = chart_from(cfg, n);
  const std::uint64_t seed = cfg.get_uint("seed");
  HiggsTolerances tol;
  tol.holomorphy = positive_tol(cfg, "tol_holomorphy");
  tol.wedge = positive_tol(cfg, "tol_wedge");

  std::optional<HiggsInstance> inst;
  Json params = Json::object();
  try {
    if (kind == "hodge_system") {
      std::vector<int> ranks;
      for (long r : cfg.get_int_list("block_ranks")) {
        if (r < 1 || r > 8) throw ConfigError("block ranks must be in 1..8");
        ranks.push_back(static_cast<int>(r));
      }
      // Alternate nonzero and zero maps so that consecutive maps compose to zero.
      std::vector<Mat> maps;
      for (std::size_t k = 0; k + 1 < ranks.size(); ++k)
        maps.push_back(k % 2 == 0 ? Mat(random_matrix(ranks[k + 1], ranks[k], sub_seed(seed, k)))
                                  : Mat(Mat::Zero(ranks[k + 1], ranks[k])));
      inst.emplace(build_hodge_system(c, ranks, maps));
      params["block_ranks"] = ranks;
    } else if (kind == "contraction") {
      std::vector<int> lam;
      for (long v : cfg.get_int_list("lambda")) lam.push_back(static_cast<int>(v));
      inst.emplace(build_contraction(c, MultiIndex(n, lam)));
      params["lambda"] = lam;
    } else {
      throw ConfigError("kind must be hodge_system or contraction");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }

  const HiggsCheck chk = check_higgs(inst->higgs(), tol);
  Json comps = Json::object();
  for (const auto& [key, m] : inst->higgs().terms()) comps[key.str()] = matrix_json(Mat(m.mat(0)));
  RunResult res;
  res.report = Json{{"command", "example"}, {"config", cfg.to_json()}, {"kind", kind},
                    {"parameters", params}, {"rank", inst->rank()},  {"higgs_components", comps},
                    {"check", check_to_json(chk)}, {"pass", chk.pass()}};
  res.exit_code = chk.pass() ? kPass : kCheckFailure;
  return res;
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + p.string());
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical workbench for Higgs bundles on flat Kaehler tori"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  const char* names[] = {"verify", "flow", "reduce2d", "example"};
  const char* help[] = {"run the property suites", "minimize H or J over hermitian metrics",
                        "check the dimensionally reduced Hitchin formulations", "build an example Higgs bundle"};
  for (int i = 0; i < 4; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", config_path, "flat key = value configuration file")->required();
    sub->add_option("--seed", seed, "overrides the configured seed");
    sub->add_option("--out", out_dir, "directory for report.json, metadata.json and traces");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Config cfg = parse_config(buf.str(), schema_for(command));
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (command == "verify") res = run_verify(cfg);
    else if (command == "flow") res = run_flow(cfg);
    else if (command == "reduce2d") res = run_reduce2d(cfg);
    else res = run_example(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailure;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string report = res.report.dump(2) + "\n";
  if (out_dir.empty()) {
    out << report;
    return res.exit_code;
  }
  try {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", report);
    if (!res.csv.empty()) write_file(dir / "trace.csv", res.csv);
    const Json meta{{"command", command},          {"config_path", config_path},
                    {"started_utc", started},      {"finished_utc", utc_now()},
                    {"elapsed_seconds", elapsed},  {"exit_code", res.exit_code}};
    write_file(dir / "metadata.json", meta.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return kUsageError;
  }
  out << command << ": " << (res.exit_code == kPass ? "pass" : "FAIL") << " (report in " << out_dir << ")\n";
  return res.exit_code;
}

}  // namespace kl::cli
