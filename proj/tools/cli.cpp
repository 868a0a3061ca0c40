#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ramsey/analysis.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/finite.hpp"
#include "ramsey/infinite.hpp"
#include "ramsey/validation.hpp"

namespace ramsey::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "inf" || t == "infinity" || t == "+inf") return kInfinity;
  try {
    std::size_t pos = 0;
    const double d = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("field " + key + ": not a number: '" + v + "'");
  }
}

long long to_integer(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("field " + key + ": not an integer: '" + v + "'");
  }
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  try {
    std::size_t pos = 0;
    if (!t.empty() && t[0] == '-') throw std::invalid_argument(t);
    const unsigned long long i = std::stoull(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("field " + key + ": not an unsigned integer: '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("field " + key + ": not a boolean: '" + v + "'");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"nu", [](RunConfig& c, auto& k, auto& v) { c.params.nu = to_double(k, v); }},
      {"gamma", [](RunConfig& c, auto& k, auto& v) { c.params.gamma = to_double(k, v); }},
      {"v0", [](RunConfig& c, auto& k, auto& v) { c.params.v0 = to_double(k, v); }},
      {"a", [](RunConfig& c, auto& k, auto& v) { c.params.a = to_double(k, v); }},
      {"lambda0", [](RunConfig& c, auto& k, auto& v) { c.params.lambda0 = to_double(k, v); }},
      {"dim", [](RunConfig& c, auto& k, auto& v) { c.geometry.dim = static_cast<int>(to_integer(k, v)); }},
      {"radius", [](RunConfig& c, auto& k, auto& v) { c.geometry.R = to_double(k, v); }},
      {"half_height", [](RunConfig& c, auto& k, auto& v) { c.geometry.l = to_double(k, v); }},
      {"grid_min", [](RunConfig& c, auto& k, auto& v) { c.grid.min = to_double(k, v); }},
      {"grid_max", [](RunConfig& c, auto& k, auto& v) { c.grid.max = to_double(k, v); }},
      {"grid_count", [](RunConfig& c, auto& k, auto& v) { c.grid.count = static_cast<int>(to_integer(k, v)); }},
      {"grid_asymmetric", [](RunConfig& c, auto& k, auto& v) { c.grid.asymmetric = to_bool(k, v); }},
      {"evaluator", [](RunConfig& c, auto&, auto& v) { c.evaluator = trim(v); }},
      {"n_terms", [](RunConfig& c, auto& k, auto& v) { c.n_terms = static_cast<int>(to_integer(k, v)); }},
      {"rel_tol", [](RunConfig& c, auto& k, auto& v) { c.quad.rel_tol = to_double(k, v); }},
      {"abs_tol", [](RunConfig& c, auto& k, auto& v) { c.quad.abs_tol = to_double(k, v); }},
      {"max_subdivisions",
       [](RunConfig& c, auto& k, auto& v) { c.quad.max_subdivisions = static_cast<int>(to_integer(k, v)); }},
      {"trajectories", [](RunConfig& c, auto& k, auto& v) { c.mc.n_trajectories = to_integer(k, v); }},
      {"seed", [](RunConfig& c, auto& k, auto& v) { c.mc.seed = to_unsigned(k, v); }},
      {"t_max", [](RunConfig& c, auto& k, auto& v) { c.mc.t_max = to_double(k, v); }},
      {"substep", [](RunConfig& c, auto& k, auto& v) { c.mc.substep = to_double(k, v); }},
      {"stream_partition", [](RunConfig& c, auto& k, auto& v) { c.mc.stream_partition = to_integer(k, v); }},
      {"radii", [](RunConfig& c, auto&, auto& v) { c.radii = parse_list(v); }},
      {"level", [](RunConfig& c, auto&, auto& v) { c.level = trim(v); }},
      {"format", [](RunConfig& c, auto&, auto& v) { c.format = trim(v); }},
  };
  return m;
}

std::string json_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + json_scalar(v[i]);
    return s;
  }
  throw ConfigError("unsupported JSON value: " + v.dump());
}

std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Writes to a file or to the given stream; a file is removed unless commit() ran.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file: " + path_);
    }
    os_ = path_.empty() ? &fallback : &file_;
  }
  ~Sink() {
    if (!path_.empty() && !committed_) {
      file_.close();
      std::error_code ec;
      std::filesystem::remove(path_, ec);
    }
  }
  std::ostream& os() { return *os_; }
  void commit() {
    committed_ = true;
    if (!path_.empty()) file_.close();
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
  bool committed_ = false;
};

void csv_header(std::ostream& os, const RunConfig& cfg, const std::string& command) {
  os << "# ramsey " << kVersion << " " << command << "\n";
  os << "# config_hash fnv1a64:" << hex64(config_hash(cfg)) << "\n";
  std::istringstream in(dump_config(cfg));
  for (std::string line; std::getline(in, line);) os << "# " << line << "\n";
}

std::string sibling(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  if (p.extension() == ".csv" || p.extension() == ".json") p.replace_extension();
  return p.string() + suffix;
}

void warn_regime(const RunConfig& cfg, std::ostream& err) {
  const double dmax = std::max(std::abs(cfg.grid.min), std::abs(cfg.grid.max));
  for (const auto& d : validate_regime(cfg.params, cfg.geometry, dmax)) err << "warning: " << d.message << "\n";
}

// --- subcommands ----------------------------------------------------------

int cmd_scales(const RunConfig& cfg, bool as_json, const std::string& out_path, std::ostream& out) {
  const auto& p = cfg.params;
  const auto& g = cfg.geometry;
  const DerivedScales s = derive_scales(p, g, 0.0);
  const double dmax = std::max(std::abs(cfg.grid.min), std::abs(cfg.grid.max));
  const auto diags = validate_regime(p, g, dmax);
  Sink sink(out_path, out);
  auto& os = sink.os();
  if (as_json) {
    json j;
    j["version"] = kVersion;
    j["config_hash"] = "fnv1a64:" + hex64(config_hash(cfg));
    j["params"] = {{"nu", p.nu}, {"gamma", p.gamma}, {"v0", p.v0}, {"a", p.a}, {"lambda0", p.lambda0}};
    j["geometry"] = {{"dim", g.dim}, {"radius", num(g.R)}, {"half_height", num(g.l)}};
    auto cx = [](Complex z) { return json::array({z.real(), z.imag()}); };
    j["scales"] = {{"alpha", cx(s.alpha)},
                   {"alpha0", cx(s.alpha0)},
                   {"beta2", cx(s.beta2)},
                   {"beta2_alternative", cx(s.beta2_alt)},
                   {"beta", cx(s.beta)},
                   {"A2", cx(s.A2)},
                   {"D", cx(s.D)},
                   {"tau_a", s.tau_a},
                   {"tau_nu", s.tau_nu},
                   {"tau_gamma", s.tau_gamma},
                   {"tau_D", s.tau_D},
                   {"tau_D_nu_tau_a2", s.tau_D_1d},
                   {"tau_R", num(s.tau_R)},
                   {"mean_v2", s.mean_v2}};
    j["diagnostics"] = json::array();
    for (const auto& d : diags) {
      j["diagnostics"].push_back({{"name", d.name}, {"value", d.value}, {"threshold", d.threshold}, {"message", d.message}});
    }
    os << j.dump(2) << "\n";
  } else {
    char buf[256];
    auto line = [&](const char* name, const std::string& v) {
      std::snprintf(buf, sizeof buf, "  %-26s %s\n", name, v.c_str());
      os << buf;
    };
    auto cline = [&](const char* name, Complex z) { line(name, num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i"); };
    os << "parameters\n";
    line("nu", num(p.nu));
    line("gamma", num(p.gamma));
    line("v0", num(p.v0));
    line("a", num(p.a));
    line("lambda0", num(p.lambda0));
    line("dim", std::to_string(g.dim));
    line("radius", num(g.R));
    if (g.dim == 3) line("half_height", num(g.l));
    os << "scales at zero detuning\n";
    line("tau_a = a/v0", num(s.tau_a));
    line("tau_nu = 1/nu", num(s.tau_nu));
    line("tau_gamma = 1/gamma", num(s.tau_gamma));
    line("tau_D = a^2/|D|", num(s.tau_D));
    line("tau_D = nu tau_a^2", num(s.tau_D_1d));
    line("tau_R = R/v0", num(s.tau_R));
    cline("alpha", s.alpha);
    cline("D", s.D);
    cline("beta^2 (adopted)", s.beta2);
    cline("beta^2 (alternative)", s.beta2_alt);
    cline("A^2", s.A2);
    os << "regime\n";
    if (diags.empty()) os << "  all inequalities hold\n";
    for (const auto& d : diags) os << "  warning: " << d.message << "\n";
  }
  sink.commit();
  return kOk;
}

struct Row {
  double dw;
  Complex s;
  double se = -1.0;
};

void write_table(std::ostream& os, const RunConfig& cfg, const std::string& command, const std::vector<Row>& rows,
                 double s0, const std::string& evaluator, bool with_se) {
  if (cfg.format == "json") {
    json j;
    j["version"] = kVersion;
    j["config_hash"] = "fnv1a64:" + hex64(config_hash(cfg));
    j["command"] = command;
    j["evaluator"] = evaluator;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      json row = {{"delta_omega", r.dw},        {"re_s", r.s.real()}, {"im_s", r.s.imag()},
                  {"abs_s", std::abs(r.s)},      {"re_s_normalized", r.s.real() / s0}};
      if (with_se) row["std_error"] = r.se;
      j["rows"].push_back(row);
    }
    os << j.dump(1) << "\n";
    return;
  }
  csv_header(os, cfg, command);
  os << "delta_omega,re_s,im_s,abs_s,re_s_normalized,evaluator" << (with_se ? ",std_error" : "") << "\n";
  for (const auto& r : rows) {
    os << num(r.dw) << ',' << num(r.s.real()) << ',' << num(r.s.imag()) << ',' << num(std::abs(r.s)) << ','
       << num(r.s.real() / s0) << ',' << evaluator;
    if (with_se) os << ',' << num(r.se);
    os << "\n";
  }
}

int cmd_lineshape(const RunConfig& cfg, const std::string& out_path, bool dump_weights, std::ostream& out,
                  std::ostream& err) {
  warn_regime(cfg, err);
  const auto grid = grid_points(cfg.grid);
  const auto& p = cfg.params;
  const auto& g = cfg.geometry;
  std::vector<Row> rows;
  double s0 = 0.0;
  std::string name;
  bool with_se = false;
  std::vector<std::pair<double, CylinderResult>> modes;

  if (cfg.evaluator == "mc" || cfg.evaluator == "mc_oracle") {
    std::vector<double> w = grid;
    w.push_back(0.0);
    const auto est = mc_signal(p, g, w, cfg.mc);
    for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({grid[i], est[i].value, est[i].std_error});
    s0 = est.back().value.real();
    name = "mc_oracle";
    with_se = true;
  } else if (g.dim == 3 && (cfg.evaluator == "auto" || cfg.evaluator == "green")) {
    for (double w : grid) {
      auto res = s_r_3d(p, w, g.R, g.l, cfg.n_terms, cfg.quad);
      rows.push_back({w, res.value});
      modes.emplace_back(w, std::move(res));
    }
    s0 = s_r_3d(p, 0.0, g.R, g.l, cfg.n_terms, cfg.quad).value.real();
    name = "green";
  } else {
    const Evaluator e = make_evaluator(cfg.evaluator, p, g, cfg.quad, cfg.n_terms);
    for (double w : grid) rows.push_back({w, e(w)});
    s0 = e(0.0).real();
    name = e.name;
  }
  if (!(s0 > 0.0)) throw DomainError("Re S(0) is not positive; cannot normalise");

  Sink sink(out_path, out);
  write_table(sink.os(), cfg, "lineshape", rows, s0, name, with_se);

  std::unique_ptr<Sink> mode_sink, weight_sink;
  if (!modes.empty() && !out_path.empty()) {
    mode_sink = std::make_unique<Sink>(sibling(out_path, ".modes.csv"), out);
    auto& os = mode_sink->os();
    csv_header(os, cfg, "lineshape modes");
    os << "# weight is the printed 2l/(pi^2 m^2); the analytic odd-mode weight is "
       << num(CylinderResult::kAnalyticPrefactor) << " times larger (not applied)\n";
    os << "delta_omega,m,k_m,re_beta_m,im_beta_m,weight,re_s2,im_s2,re_contribution,im_contribution,converged\n";
    for (const auto& [w, res] : modes) {
      for (const auto& t : res.terms) {
        os << num(w) << ',' << t.mode.m << ',' << num(t.mode.k_m) << ',' << num(t.mode.beta_m.real()) << ','
           << num(t.mode.beta_m.imag()) << ',' << num(t.weight) << ',' << num(t.s2.real()) << ',' << num(t.s2.imag())
           << ',' << num(t.contribution.real()) << ',' << num(t.contribution.imag()) << ',' << (res.converged ? 1 : 0)
           << "\n";
      }
    }
  }
  if (dump_weights) {
    if (g.dim == 3) throw ConfigError("--dump-weights: the Ramsey representation exists for dim 1 and 2 only");
    if (out_path.empty()) throw ConfigError("--dump-weights needs --out");
    weight_sink = std::make_unique<Sink>(sibling(out_path, ".weights.csv"), out);
    auto& os = weight_sink->os();
    csv_header(os, cfg, "lineshape weights");
    os << "# S = c int_0^inf exp(-alpha0 tau) w(tau) dtau, w = (1 + tau/tau_R)^(-dim/2), tau_R = alpha a^2/v0^2\n";
    os << "delta_omega,tau,re_weight,im_weight,re_integrand,im_integrand\n";
    constexpr int kNodes = 64;
    for (double w : grid) {
      const double tau_max = 46.0 / std::max(p.gamma, 1e-300);
      const double s = std::abs(ramsey_time(p, w));
      const double u_max = std::log1p(tau_max / s);
      for (int i = 0; i < kNodes; ++i) {
        const double tau = s * std::expm1(u_max * i / (kNodes - 1));
        const Complex wt = ramsey_weight(g.dim, p, w, tau);
        const Complex integrand = std::exp(-Complex(p.gamma, w) * tau) * wt;
        os << num(w) << ',' << num(tau) << ',' << num(wt.real()) << ',' << num(wt.imag()) << ','
           << num(integrand.real()) << ',' << num(integrand.imag()) << "\n";
      }
    }
  }
  sink.commit();
  if (mode_sink) mode_sink->commit();
  if (weight_sink) weight_sink->commit();
  return kOk;
}

int cmd_scan_r(const RunConfig& cfg, const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (cfg.radii.empty()) throw ConfigError("field radii: empty radius list");
  warn_regime(cfg, err);
  const auto scan = scan_r(cfg.evaluator, cfg.params, cfg.geometry.dim, cfg.radii, cfg.geometry.l, cfg.quad, cfg.n_terms);
  Sink sink(out_path, out);
  auto& os = sink.os();
  if (cfg.format == "json") {
    json j;
    j["version"] = kVersion;
    j["config_hash"] = "fnv1a64:" + hex64(config_hash(cfg));
    j["trend"] = scan.trend;
    j["infinite_hwhm"] = scan.infinite.hwhm;
    j["rows"] = json::array();
    for (const auto& r : scan.rows) j["rows"].push_back({{"R", r.R}, {"hwhm", r.width.hwhm}, {"hwhm_over_infinite", r.ratio_to_infinite}});
    os << j.dump(1) << "\n";
  } else {
    csv_header(os, cfg, "scan-r");
    os << "# trend in R: " << scan.trend << "\n";
    os << "R,hwhm,hwhm_over_infinite\n";
    for (const auto& r : scan.rows) os << num(r.R) << ',' << num(r.width.hwhm) << ',' << num(r.ratio_to_infinite) << "\n";
    os << "inf," << num(scan.infinite.hwhm) << ",1\n";
  }
  sink.commit();
  return kOk;
}

int cmd_validate(const RunConfig& cfg, bool as_json, bool seed_given, bool traj_given, bool swap_beta,
                 const std::string& out_path, std::ostream& out) {
  AcceptanceOptions opt;
  if (cfg.level == "fast") opt.level = ValidationLevel::kFast;
  else if (cfg.level == "full") opt.level = ValidationLevel::kFull;
  else throw ConfigError("field level: expected fast or full, got '" + cfg.level + "'");
  if (seed_given) opt.seed = cfg.mc.seed;
  if (traj_given) opt.trajectories_finite = cfg.mc.n_trajectories;
  opt.swap_beta_convention = swap_beta;
  const auto results = run_acceptance(opt);
  bool ok = true;
  for (const auto& c : results) ok = ok && (c.pass || c.skipped);
  Sink sink(out_path, out);
  auto& os = sink.os();
  if (as_json) {
    json j = json::array();
    for (const auto& c : results) {
      json items = json::array();
      for (const auto& it : c.items) {
        json ji = {{"id", it.id},     {"description", it.description}, {"measured", it.measured},
                   {"tolerance", num(it.tolerance)}, {"pass", it.pass}, {"skipped", it.skipped},
                   {"detail", it.detail}};
        if (it.rival) ji["rival"] = *it.rival;
        items.push_back(ji);
      }
      j.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"skipped", c.skipped}, {"items", items},
                   {"notes", c.notes}});
    }
    os << json{{"version", kVersion}, {"level", cfg.level}, {"criteria", j}, {"pass", ok}}.dump(2) << "\n";
  } else {
    for (const auto& c : results) os << format_criterion(c, true);
    os << (ok ? "all criteria pass" : "validation FAILED") << "\n";
  }
  sink.commit();
  return ok ? kOk : kValidationFailed;
}

int cmd_mc(const RunConfig& cfg, const std::string& out_path, std::ostream& out, std::ostream& err) {
  warn_regime(cfg, err);
  const auto grid = grid_points(cfg.grid);
  const auto est = mc_signal(cfg.params, cfg.geometry, grid, cfg.mc);
  Sink sink(out_path, out);
  auto& os = sink.os();
  if (cfg.format == "json") {
    json j;
    j["version"] = kVersion;
    j["config_hash"] = "fnv1a64:" + hex64(config_hash(cfg));
    j["rows"] = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      j["rows"].push_back({{"delta_omega", grid[i]}, {"re_s", est[i].value.real()}, {"im_s", est[i].value.imag()},
                           {"std_error", est[i].std_error}, {"n_trajectories", est[i].n_effective}});
    }
    os << j.dump(1) << "\n";
  } else {
    csv_header(os, cfg, "mc");
    os << "delta_omega,re_s,im_s,abs_s,std_error,n_trajectories\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << num(grid[i]) << ',' << num(est[i].value.real()) << ',' << num(est[i].value.imag()) << ','
         << num(std::abs(est[i].value)) << ',' << num(est[i].std_error) << ',' << est[i].n_effective << "\n";
    }
  }
  sink.commit();
  return kOk;
}

}  // namespace

void apply_field(RunConfig& cfg, const std::string& key, const std::string& value) {
  std::string k = trim(key);
  if (k == "R") k = "radius";
  if (k == "l") k = "half_height";
  const auto& m = setters();
  const auto it = m.find(k);
  if (it == m.end()) throw ConfigError("unknown field: " + k);
  it->second(cfg, k, value);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    for (const auto& [k, v] : j.items()) {
      if (v.is_object()) {
        for (const auto& [k2, v2] : v.items()) apply_field(cfg, k2, json_scalar(v2));
      } else {
        apply_field(cfg, k, json_scalar(v));
      }
    }
    return cfg;
  }
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    apply_field(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
  ramsey::validate(cfg.params);
  ramsey::validate(cfg.geometry);
  ramsey::validate(cfg.quad);
  if (cfg.grid.count < 2) throw ConfigError("field grid_count: must be at least 2");
  if (!(cfg.grid.min < cfg.grid.max) || !std::isfinite(cfg.grid.min) || !std::isfinite(cfg.grid.max)) {
    throw ConfigError("field grid_min/grid_max: need finite min < max");
  }
  if (!cfg.grid.asymmetric && cfg.grid.min != -cfg.grid.max) {
    throw ConfigError("field grid_min/grid_max: range must be symmetric about 0 unless grid_asymmetric=true");
  }
  if (cfg.n_terms < 1) throw ConfigError("field n_terms: must be positive");
  if (cfg.mc.n_trajectories < 1) throw ConfigError("field trajectories: must be positive");
  if (cfg.mc.stream_partition < 1) throw ConfigError("field stream_partition: must be positive");
  if (cfg.mc.t_max < 0.0 || cfg.mc.substep < 0.0) throw ConfigError("field t_max/substep: must be non-negative");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("field format: expected csv or json");
  if (cfg.level != "fast" && cfg.level != "full") throw ConfigError("field level: expected fast or full");
  const auto names = evaluator_names();
  if (std::find(names.begin(), names.end(), cfg.evaluator) == names.end() && cfg.evaluator != "mc" &&
      cfg.evaluator != "mc_oracle") {
    throw ConfigError("field evaluator: unknown evaluator '" + cfg.evaluator + "'");
  }
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os << "nu=" << num(c.params.nu) << "\n"
     << "gamma=" << num(c.params.gamma) << "\n"
     << "v0=" << num(c.params.v0) << "\n"
     << "a=" << num(c.params.a) << "\n"
     << "lambda0=" << num(c.params.lambda0) << "\n"
     << "dim=" << c.geometry.dim << "\n"
     << "radius=" << num(c.geometry.R) << "\n"
     << "half_height=" << num(c.geometry.l) << "\n"
     << "grid_min=" << num(c.grid.min) << "\n"
     << "grid_max=" << num(c.grid.max) << "\n"
     << "grid_count=" << c.grid.count << "\n"
     << "grid_asymmetric=" << (c.grid.asymmetric ? "true" : "false") << "\n"
     << "evaluator=" << c.evaluator << "\n"
     << "n_terms=" << c.n_terms << "\n"
     << "rel_tol=" << num(c.quad.rel_tol) << "\n"
     << "abs_tol=" << num(c.quad.abs_tol) << "\n"
     << "max_subdivisions=" << c.quad.max_subdivisions << "\n"
     << "trajectories=" << c.mc.n_trajectories << "\n"
     << "seed=" << c.mc.seed << "\n"
     << "t_max=" << num(c.mc.t_max) << "\n"
     << "substep=" << num(c.mc.substep) << "\n"
     << "stream_partition=" << c.mc.stream_partition << "\n"
     << "radii=" << join(c.radii) << "\n"
     << "level=" << c.level << "\n"
     << "format=" << c.format << "\n";
  return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : dump_config(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

GridSpec parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  if (parts.size() != 3) throw ConfigError("grid: expected MIN:MAX:COUNT, got '" + spec + "'");
  GridSpec g;
  g.min = to_double("grid_min", parts[0]);
  g.max = to_double("grid_max", parts[1]);
  g.count = static_cast<int>(to_integer("grid_count", parts[2]));
  return g;
}

double parse_radius(const std::string& text) {
  const double r = to_double("radius", text);
  if (!(r > 0.0)) throw ConfigError("field radius: must be positive or inf");
  return r;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string s; std::getline(ss, s, ',');) {
    if (trim(s).empty()) continue;
    out.push_back(to_double("radii", s));
  }
  return out;
}

std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> out(g.count);
  const double h = (g.max - g.min) / (g.count - 1);
  for (int i = 0; i < g.count; ++i) out[i] = g.min + i * h;
  // exact symmetry and an exact zero for symmetric grids
  if (g.min == -g.max) {
    for (int i = 0; i < g.count / 2; ++i) out[i] = -out[g.count - 1 - i];
    if (g.count % 2) out[g.count / 2] = 0.0;
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Line shapes of diffusion-induced Ramsey narrowing", "ramsey"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path, out_path, grid, radius, evaluator, radii, level, debug_beta;
  std::uint64_t seed = 0;
  long trajectories = 0;
  int dim = 0, n_terms = 0;
  double half_height = 0.0;
  bool as_json = false, dump_cfg = false, dump_weights = false, grid_asym = false;

  app.add_option("--config", config_path, "key=value or JSON configuration file");
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--trajectories", trajectories, "Monte Carlo trajectory count");
  app.add_option("--grid", grid, "detuning grid MIN:MAX:COUNT");
  app.add_flag("--grid-asymmetric", grid_asym, "allow a grid not centred on zero");
  app.add_option("--dim", dim, "dimension 1, 2 or 3");
  app.add_option("--radius", radius, "region radius R or inf");
  app.add_option("--half-height", half_height, "cylinder half height l (dim 3)");
  app.add_option("--evaluator", evaluator, "signal evaluator");
  app.add_option("--n-terms", n_terms, "cap on cylinder modes");
  app.add_option("--radii", radii, "comma-separated radii for scan-r");
  app.add_option("--level", level, "validation level fast|full");
  app.add_flag("--dump-config", dump_cfg, "print the resolved configuration and exit");
  app.add_flag("--dump-weights", dump_weights, "write the Ramsey weight integrand next to --out");
  app.add_option("--debug-beta-convention", debug_beta)->group("");

  const char* names[] = {"scales", "lineshape", "scan-r", "validate", "mc"};
  const char* help[] = {"characteristic times and regime diagnostics", "signal on a detuning grid",
                        "half width versus region radius", "acceptance criteria", "transport Monte Carlo estimate"};
  for (int i = 0; i < 5; ++i) app.add_subcommand(names[i], help[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (app.count("--seed")) cfg.mc.seed = seed;
    if (app.count("--trajectories")) cfg.mc.n_trajectories = trajectories;
    if (app.count("--grid")) {
      const bool asym = cfg.grid.asymmetric;
      cfg.grid = parse_grid(grid);
      cfg.grid.asymmetric = asym;
    }
    if (grid_asym) cfg.grid.asymmetric = true;
    if (app.count("--dim")) cfg.geometry.dim = dim;
    if (app.count("--radius")) cfg.geometry.R = parse_radius(radius);
    if (app.count("--half-height")) cfg.geometry.l = half_height;
    if (app.count("--evaluator")) cfg.evaluator = evaluator;
    if (app.count("--n-terms")) cfg.n_terms = n_terms;
    if (app.count("--radii")) cfg.radii = parse_list(radii);
    if (app.count("--level")) cfg.level = level;
    if (as_json && command != "scales" && command != "validate") cfg.format = "json";
    if (!debug_beta.empty() && debug_beta != "alt" && debug_beta != "adopted") {
      throw ConfigError("--debug-beta-convention: expected alt or adopted");
    }
    validate(cfg);
    if (dump_cfg) {
      Sink sink(out_path, out);
      sink.os() << dump_config(cfg);
      sink.commit();
      return kOk;
    }

    if (command == "scales") return cmd_scales(cfg, as_json, out_path, out);
    if (command == "lineshape") return cmd_lineshape(cfg, out_path, dump_weights, out, err);
    if (command == "scan-r") return cmd_scan_r(cfg, out_path, out, err);
    if (command == "validate") {
      return cmd_validate(cfg, as_json, app.count("--seed") > 0, app.count("--trajectories") > 0, debug_beta == "alt",
                          out_path, out);
    }
    return cmd_mc(cfg, out_path, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << "\n";
    return kDivergence;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kDivergence;
  }
}

}  // namespace ramsey::cli
