#include "maser/config.hpp"

#include <set>

#include <json.hpp>

#include "maser/states.hpp"

namespace maser {

using nlohmann::json;

namespace {

std::string join(const std::vector<ConfigViolation>& v) {
  std::string out = "invalid config:";
  for (const auto& e : v) out += "\n  " + (e.pointer.empty() ? "/" : e.pointer) + ": " + e.message;
  return out;
}

class Reader {
 public:
  std::vector<ConfigViolation> errors;

  void fail(const std::string& ptr, const std::string& msg) { errors.push_back({ptr, msg}); }

  void reject_unknown(const json& obj, const std::string& ptr, const std::set<std::string>& known) {
    for (const auto& [key, _] : obj.items())
      if (!known.count(key)) fail(ptr + "/" + key, "unknown key");
  }

  template <class T>
  bool integer(const json& obj, const std::string& key, const std::string& ptr, T& out, long long lo, bool required = false) {
    if (!obj.contains(key)) {
      if (required) fail(ptr + "/" + key, "required");
      return false;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(ptr + "/" + key, "must be an integer");
      return false;
    }
    if (v.is_number_unsigned()) {
      out = static_cast<T>(v.get<unsigned long long>());
      return true;
    }
    const long long x = v.get<long long>();
    if (x < lo) {
      fail(ptr + "/" + key, "must be >= " + std::to_string(lo));
      return false;
    }
    out = static_cast<T>(x);
    return true;
  }

  bool number(const json& obj, const std::string& key, const std::string& ptr, double& out, bool required = false) {
    if (!obj.contains(key)) {
      if (required) fail(ptr + "/" + key, "required");
      return false;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail(ptr + "/" + key, "must be a number");
      return false;
    }
    out = v.get<double>();
    return true;
  }

  bool string(const json& obj, const std::string& key, const std::string& ptr, std::string& out) {
    if (!obj.contains(key)) return false;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      fail(ptr + "/" + key, "must be a string");
      return false;
    }
    out = v.get<std::string>();
    return true;
  }
};

// xi / eta: strings and integers are exact, other numbers are floats.
struct Coefficient {
  std::optional<Rational> exact;
  double value = 0.0;
  bool ok = false;
};

Coefficient read_coefficient(Reader& r, const json& obj, const std::string& key, const std::string& ptr) {
  Coefficient c;
  if (!obj.contains(key)) {
    r.fail(ptr + "/" + key, "required");
    return c;
  }
  const json& v = obj.at(key);
  try {
    if (v.is_string()) {
      c.exact = parse_rational(v.get<std::string>());
      c.value = static_cast<double>(*c.exact);
    } else if (v.is_number_integer()) {
      c.exact = parse_rational(v.dump());
      c.value = static_cast<double>(*c.exact);
    } else if (v.is_number()) {
      c.value = v.get<double>();
    } else {
      r.fail(ptr + "/" + key, "must be a number or a rational string");
      return c;
    }
  } catch (const std::exception& e) {
    r.fail(ptr + "/" + key, e.what());
    return c;
  }
  if (c.value < 0.0) {
    r.fail(ptr + "/" + key, "must be >= 0");
    return c;
  }
  c.ok = true;
  return c;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigViolation> v) : std::invalid_argument(join(v)), violations_(std::move(v)) {}

ConfigError::ConfigError(const std::string& pointer, const std::string& message)
    : ConfigError(std::vector<ConfigViolation>{{pointer, message}}) {}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");

  Reader r;
  RunConfig cfg;
  r.reject_unknown(root, "", {"format_version", "params", "d", "rho0", "horizon", "trajectories", "seed",
                              "checkpoint_every", "output_dir", "leakage_budget", "guard", "channel", "outcomes"});
  if (root.contains("format_version") && root["format_version"] != kFormatVersion)
    r.fail("/format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");

  // Parameters: exactly one block.
  if (!root.contains("params") || !root["params"].is_object()) {
    r.fail("/params", "required object");
  } else {
    const json& p = root["params"];
    r.reject_unknown(p, "/params", {"physical", "dimensionless"});
    const bool phys = p.contains("physical");
    const bool dimless = p.contains("dimensionless");
    if (phys == dimless) {
      r.fail("/params", "exactly one of 'physical' or 'dimensionless' is required");
    } else if (phys) {
      const std::string ptr = "/params/physical";
      const json& b = p["physical"];
      if (!b.is_object()) {
        r.fail(ptr, "must be an object");
      } else {
        r.reject_unknown(b, ptr, {"epsilon", "epsilon0", "lambda", "tau", "beta"});
        auto& ph = cfg.physical;
        const std::size_t before = r.errors.size();
        r.number(b, "epsilon", ptr, ph.epsilon, true);
        r.number(b, "epsilon0", ptr, ph.epsilon0, true);
        r.number(b, "lambda", ptr, ph.lambda, true);
        r.number(b, "tau", ptr, ph.tau, true);
        r.number(b, "beta", ptr, ph.beta, true);
        if (r.errors.size() == before) {
          try {
            cfg.params = derive_dimensionless(ph);
            cfg.source = RunConfig::Source::Physical;
          } catch (const std::exception& e) {
            r.fail(ptr, e.what());
          }
        }
      }
    } else {
      const std::string ptr = "/params/dimensionless";
      const json& b = p["dimensionless"];
      if (!b.is_object()) {
        r.fail(ptr, "must be an object");
      } else {
        r.reject_unknown(b, ptr, {"xi", "eta", "theta", "phi", "injected_resonances"});
        const Coefficient xi = read_coefficient(r, b, "xi", ptr);
        const Coefficient eta = read_coefficient(r, b, "eta", ptr);
        double theta = 0.0;
        double phi = 0.0;
        const bool t_ok = r.number(b, "theta", ptr, theta, true);
        if (b.contains("phi")) r.number(b, "phi", ptr, phi);
        std::vector<long> injected;
        if (b.contains("injected_resonances")) {
          const json& inj = b["injected_resonances"];
          if (!inj.is_array()) {
            r.fail(ptr + "/injected_resonances", "must be an array of levels");
          } else {
            for (std::size_t i = 0; i < inj.size(); ++i) {
              if (!inj[i].is_number_integer() || inj[i].get<long long>() < 1)
                r.fail(ptr + "/injected_resonances/" + std::to_string(i), "must be an integer >= 1");
              else
                injected.push_back(inj[i].get<long>());
            }
          }
        }
        if (xi.ok && eta.ok && t_ok) {
          try {
            if (xi.exact && eta.exact) {
              cfg.params = DimensionlessParams::exact(*xi.exact, *eta.exact, theta, phi);
            } else {
              cfg.params = DimensionlessParams::floating(xi.value, eta.value, theta, phi);
            }
            cfg.params.injected_resonances = injected;
            cfg.params.validate();
            cfg.source = RunConfig::Source::Dimensionless;
          } catch (const std::exception& e) {
            r.fail(ptr, e.what());
          }
        }
      }
    }
  }

  // Run shape.
  if (!root.contains("seed")) {
    r.fail("/seed", "required (no default seed)");
  } else {
    r.integer(root, "seed", "", cfg.seed, 0);
  }
  const bool d_ok = !root.contains("d") || r.integer(root, "d", "", cfg.d, 1);
  r.integer(root, "horizon", "", cfg.horizon, 0);
  r.integer(root, "trajectories", "", cfg.trajectories, 1);
  r.integer(root, "checkpoint_every", "", cfg.checkpoint_every, 0);
  const bool guard_ok = !root.contains("guard") || r.integer(root, "guard", "", cfg.guard, 0);
  r.string(root, "output_dir", "", cfg.output_dir);
  bool budget_ok = true;
  if (r.number(root, "leakage_budget", "", cfg.leakage_budget) &&
      !(cfg.leakage_budget > 0.0 && cfg.leakage_budget < 1.0)) {
    r.fail("/leakage_budget", "must lie in (0, 1)");
    budget_ok = false;
  }
  bool rho_ok = true;
  if (root.contains("rho0")) rho_ok = r.string(root, "rho0", "", cfg.rho0);

  if (root.contains("channel")) {
    const json& c = root["channel"];
    if (!c.is_object()) {
      r.fail("/channel", "must be an object");
    } else {
      r.reject_unknown(c, "/channel", {"tol", "t_max", "check_every"});
      if (r.number(c, "tol", "/channel", cfg.channel_tol) && !(cfg.channel_tol >= 0.0))
        r.fail("/channel/tol", "must be >= 0");
      r.integer(c, "t_max", "/channel", cfg.channel_t_max, 0);
      r.integer(c, "check_every", "/channel", cfg.channel_check_every, 1);
    }
  }
  if (root.contains("outcomes")) {
    const json& o = root["outcomes"];
    if (!o.is_object()) {
      r.fail("/outcomes", "must be an object");
    } else {
      r.reject_unknown(o, "/outcomes", {"horizon", "times"});
      if (r.integer(o, "horizon", "/outcomes", cfg.outcome_horizon, 0) && cfg.outcome_horizon > 10)
        r.fail("/outcomes/horizon", "must be <= 10 (4^s enumeration)");
      if (o.contains("times")) {
        const json& t = o["times"];
        if (!t.is_array()) {
          r.fail("/outcomes/times", "must be an array");
        } else {
          cfg.outcome_times.clear();
          for (std::size_t i = 0; i < t.size(); ++i) {
            if (!t[i].is_number_integer() || t[i].get<long long>() < 0)
              r.fail("/outcomes/times/" + std::to_string(i), "must be an integer >= 0");
            else
              cfg.outcome_times.push_back(t[i].get<std::int64_t>());
          }
        }
      }
    }
  }

  // Initial state and the truncation guard.
  if (d_ok && rho_ok && guard_ok && budget_ok) {
    try {
      const DensityMatrix rho = make_initial_state(cfg.rho0, cfg.d);
      const int support = effective_support(rho, cfg.leakage_budget);
      if (support + cfg.guard > cfg.d)
        r.fail("/d", "guard rule violated: d must be >= initial support " + std::to_string(support) + " + guard " +
                         std::to_string(cfg.guard));
    } catch (const std::exception& e) {
      r.fail("/rho0", e.what());
    }
  }

  if (!r.errors.empty()) throw ConfigError(std::move(r.errors));
  return cfg;
}

std::string canonical_json(const RunConfig& cfg) {
  json j;
  j["format_version"] = kFormatVersion;
  if (cfg.source == RunConfig::Source::Physical) {
    const auto& p = cfg.physical;
    j["params"]["physical"] = {{"epsilon", p.epsilon}, {"epsilon0", p.epsilon0}, {"lambda", p.lambda},
                               {"tau", p.tau},         {"beta", p.beta}};
  } else {
    json b;
    if (cfg.params.exactness() == Exactness::ExactRational) {
      b["xi"] = to_string(*cfg.params.xi_exact);
      b["eta"] = to_string(*cfg.params.eta_exact);
    } else {
      b["xi"] = cfg.params.xi;
      b["eta"] = cfg.params.eta;
    }
    b["theta"] = cfg.params.theta;
    b["phi"] = cfg.params.phi;
    b["injected_resonances"] = cfg.params.injected_resonances;
    j["params"]["dimensionless"] = b;
  }
  j["d"] = cfg.d;
  j["rho0"] = cfg.rho0;
  j["horizon"] = cfg.horizon;
  j["trajectories"] = cfg.trajectories;
  j["seed"] = cfg.seed;
  j["checkpoint_every"] = cfg.checkpoint_every;
  j["output_dir"] = cfg.output_dir;
  j["leakage_budget"] = cfg.leakage_budget;
  j["guard"] = cfg.guard;
  j["channel"] = {{"tol", cfg.channel_tol}, {"t_max", cfg.channel_t_max}, {"check_every", cfg.channel_check_every}};
  j["outcomes"] = {{"horizon", cfg.outcome_horizon}, {"times", cfg.outcome_times}};
  return j.dump(2);
}

}  // namespace maser
