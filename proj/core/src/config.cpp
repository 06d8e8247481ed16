#include "phs1d/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "phs1d/errors.hpp"
#include "phs1d/grid.hpp"
#include "phs1d/integrator.hpp"
#include "phs1d/io.hpp"

namespace phs1d {

using Eigen::VectorXd;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not a number: '" + value + "'");
  }
}

int to_int(const std::string& key, const std::string& value) {
  const double v = to_number(key, value);
  const double r = std::nearbyint(v);
  if (std::abs(v - r) > 0.0) throw ConfigError("value for '" + key + "' is not an integer");
  return static_cast<int>(r);
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + " has an empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config key '" + key + "' appears twice");
    }
  }

  ScenarioConfig cfg;
  std::set<std::string> seen;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    seen.insert(key);
    return &it->second;
  };

  if (const auto* v = take("model")) cfg.model = *v;
  if (const auto* v = take("representation")) cfg.representation = *v;
  if (cfg.model.empty()) throw ConfigError("config is missing required key 'model'");
  if (cfg.representation.empty()) {
    throw ConfigError("config is missing required key 'representation'");
  }
  if (const auto* v = take("n")) cfg.n = to_int("n", *v);
  if (const auto* v = take("mode")) cfg.mode = *v;
  if (const auto* v = take("dt")) cfg.dt = to_number("dt", *v);
  if (const auto* v = take("steps")) cfg.steps = to_int("steps", *v);
  if (const auto* v = take("initial.kind")) cfg.initial.kind = *v;
  if (const auto* v = take("initial.field")) cfg.initial.field = *v;
  if (const auto* v = take("initial.amplitude")) {
    cfg.initial.amplitude = to_number("initial.amplitude", *v);
  }
  if (const auto* v = take("initial.center")) cfg.initial.center = to_number("initial.center", *v);
  if (const auto* v = take("initial.width")) cfg.initial.width = to_number("initial.width", *v);
  if (const auto* v = take("initial.wavenumber")) {
    cfg.initial.wavenumber = to_int("initial.wavenumber", *v);
  }
  if (const auto* v = take("output.ledger")) cfg.ledger_path = *v;

  for (const auto& [key, value] : kv) {
    if (seen.count(key)) continue;
    if (key.rfind("params.", 0) == 0) {
      cfg.params[key.substr(7)] = to_number(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (cfg.mode != "free" && cfg.mode != "clamped") {
    throw ConfigError("mode must be 'free' or 'clamped', got '" + cfg.mode + "'");
  }
  if (cfg.initial.kind != "zero" && cfg.initial.kind != "gaussian" &&
      cfg.initial.kind != "single_mode") {
    throw ConfigError("initial.kind must be zero, gaussian, or single_mode");
  }
  if (cfg.steps < 1) throw ConfigError("steps must be at least 1");
  if (cfg.dt < 0.0) throw ConfigError("dt must be positive when given");
  if (cfg.initial.width <= 0.0) throw ConfigError("initial.width must be positive");
  if (cfg.initial.wavenumber < 1) throw ConfigError("initial.wavenumber must be at least 1");
  return cfg;
}

namespace {

struct ParamReader {
  const std::map<std::string, double>& src;
  std::set<std::string> used;

  double get(const std::string& key, double fallback) {
    auto it = src.find(key);
    if (it == src.end()) return fallback;
    used.insert(key);
    return it->second;
  }

  bool has(const std::string& key) {
    auto it = src.find(key);
    if (it == src.end()) return false;
    used.insert(key);
    return true;
  }

  void finish() const {
    for (const auto& [key, value] : src) {
      (void)value;
      if (!used.count(key)) {
        throw ConfigError("parameter 'params." + key + "' does not apply to this model");
      }
    }
  }
};

PHDescriptor make_descriptor(const ScenarioConfig& cfg, const SbpOps& s) {
  const Mode mode = cfg.mode == "clamped" ? Mode::clamped : Mode::free_ends;
  ParamReader pr{cfg.params, {}};

  if (cfg.model == "dzektser") {
    if (cfg.representation != "explicit") {
      throw ConfigError("model dzektser supports only representation 'explicit'");
    }
    DzektserParams p;
    p.alpha_s = pr.get("alpha", p.alpha_s);
    p.beta_s = pr.get("beta", p.beta_s);
    p.eps_nl = pr.get("eps", p.eps_nl);
    pr.finish();
    return dzektser_explicit(s, p, mode);
  }

  if (cfg.model == "nanorod") {
    NanorodParams p;
    p.k_f = pr.get("k_f", p.k_f);
    p.rhoA = pr.get("rho_a", p.rhoA);
    p.mu_nl = pr.get("mu", p.mu_nl);
    p.e_mod = pr.get("e_mod", p.e_mod);
    p.a_sec = pr.get("a_sec", p.a_sec);
    p.b_damp = pr.get("b_damp", p.b_damp);
    p.tau_d = pr.get("tau_d", p.tau_d);
    if (pr.has("t_ea")) p.t_ea = cfg.params.at("t_ea");
    pr.finish();
    if (cfg.representation == "explicit") return nanorod_explicit(s, p, mode);
    if (cfg.representation == "implicit") return nanorod_implicit(s, p, mode);
    throw ConfigError("model nanorod supports representations 'explicit' and 'implicit'");
  }

  if (cfg.model == "timoshenko" || cfg.model == "euler_bernoulli") {
    BeamParams p;
    p.rho = pr.get("rho", p.rho);
    p.a_sec = pr.get("a_sec", p.a_sec);
    p.i_mom = pr.get("i_mom", p.i_mom);
    p.e_mod = pr.get("e_mod", p.e_mod);
    p.t0 = pr.get("t0", p.t0);
    p.kappaG = pr.get("kappa_g", p.kappaG);
    pr.finish();
    if (cfg.model == "timoshenko") {
      if (cfg.representation == "explicit") return timoshenko_explicit(s, p, mode);
      if (cfg.representation == "implicit") return timoshenko_implicit(s, p, mode);
      throw ConfigError("model timoshenko supports representations 'explicit' and 'implicit'");
    }
    if (cfg.representation == "explicit_dae") return eb_explicit_dae(s, p, mode);
    if (cfg.representation == "explicit_reduced") return eb_explicit_reduced(s, p, mode);
    if (cfg.representation == "implicit_dae") return eb_implicit_dae(s, p, mode);
    if (cfg.representation == "implicit_reduced") return eb_implicit_reduced(s, p, mode);
    throw ConfigError(
        "model euler_bernoulli supports representations explicit_dae, explicit_reduced, "
        "implicit_dae, implicit_reduced");
  }

  throw ConfigError("unknown model '" + cfg.model + "'");
}

VectorXd initial_state(const PHDescriptor& d, const InitialSpec& spec, const Grid& g) {
  const std::vector<std::string> fields = field_names(d.name);
  const int nb = d.n / static_cast<int>(fields.size());

  VectorXd z = VectorXd::Zero(d.n);
  if (spec.kind == "zero") return z;

  std::string field = spec.field.empty() ? fields.front() : spec.field;
  const auto it = std::find(fields.begin(), fields.end(), field);
  if (it == fields.end()) {
    throw ConfigError("model " + d.name + " has no field named '" + field + "'");
  }
  const int fi = static_cast<int>(it - fields.begin());

  for (int i = 0; i < nb; ++i) {
    const double x = g.x[i];
    double v = 0.0;
    if (spec.kind == "gaussian") {
      const double r = (x - spec.center) / spec.width;
      v = spec.amplitude * std::exp(-0.5 * r * r);
    } else {
      v = spec.amplitude * std::sin(static_cast<double>(spec.wavenumber) * std::numbers::pi * x);
    }
    z[fi * nb + i] = v;
  }
  return z;
}

}  // namespace

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
  BuiltScenario built;
  built.sbp = build_sbp(build_grid(cfg.n));
  built.desc = make_descriptor(cfg, built.sbp);
  assemble(built.desc);

  built.z0 = initial_state(built.desc, cfg.initial, built.sbp.grid);
  for (int idx : built.desc.frozen) built.z0[idx] = 0.0;
  if (built.desc.consistent_init) built.z0 = built.desc.consistent_init(built.z0);

  built.dt = cfg.dt > 0.0 ? cfg.dt : default_dt(built.desc, built.sbp.grid.h);
  built.steps = cfg.steps;
  return built;
}

}  // namespace phs1d
