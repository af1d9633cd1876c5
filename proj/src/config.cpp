#include "dropwave/config.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

namespace dropwave {

using nlohmann::json;

DnMethod DnConfig::to_method() const {
  if (method == "multiplier") return DnMethod::multiplier();
  if (method == "taylor") return DnMethod::taylor(order, smallness);
  if (method == "oracle") return DnMethod::oracle(-1, smallness);
  throw ConfigError("dn.method: expected taylor, multiplier or oracle");
}

ContinuationConfig BranchConfig::to_continuation(const DnConfig& dn) const {
  ContinuationConfig c;
  c.l = l;
  c.kappa = kappa;
  if (parametrization == "amplitude")
    c.parametrization = ContinuationConfig::Parametrization::amplitude;
  else if (parametrization == "angular-momentum")
    c.parametrization = ContinuationConfig::Parametrization::angular_momentum;
  else
    throw ConfigError("branch.parametrization: expected amplitude or angular-momentum");
  c.start = start;
  c.stop = stop;
  c.steps = steps;
  c.newton_tol = newton_tol;
  c.max_iterations = max_iterations;
  c.omega_positive = omega_positive;
  c.dn = dn.to_method();
  return c;
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + (path.empty() ? it.key() : path + "." + it.key()) + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    try {
      out = j.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("key '") + key + "': wrong type");
    }
  }
}

int line_of_offset(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "syntax error near line " << line_of_offset(text, e.byte) << ": " << e.what();
    throw ConfigError(os.str());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig c;
  reject_unknown(j, {"sigma0", "alpha0", "N", "seed", "out_dir", "threads", "dn", "simulate",
                     "resonances", "branch", "stability"},
                 "");
  if (!j.contains("sigma0")) throw ConfigError("missing required key 'sigma0'");
  if (!j.contains("alpha0")) throw ConfigError("missing required key 'alpha0'");
  read(j, "sigma0", c.sigma0);
  read(j, "alpha0", c.alpha0);
  read(j, "N", c.grid_size);
  read(j, "seed", c.seed);
  read(j, "out_dir", c.out_dir);
  read(j, "threads", c.threads);

  if (j.contains("dn")) {
    const auto& d = j.at("dn");
    reject_unknown(d, {"method", "order", "smallness"}, "dn");
    read(d, "method", c.dn.method);
    read(d, "order", c.dn.order);
    read(d, "smallness", c.dn.smallness);
  }
  if (j.contains("simulate")) {
    const auto& d = j.at("simulate");
    reject_unknown(d, {"scheme", "dt", "T", "monitor_every", "initial", "epsilon", "mode"},
                   "simulate");
    read(d, "scheme", c.simulate.scheme);
    read(d, "dt", c.simulate.dt);
    read(d, "T", c.simulate.horizon);
    read(d, "monitor_every", c.simulate.monitor_every);
    read(d, "initial", c.simulate.initial);
    read(d, "epsilon", c.simulate.epsilon);
    read(d, "mode", c.simulate.mode);
  }
  if (j.contains("resonances")) {
    const auto& d = j.at("resonances");
    reject_unknown(d, {"kappa", "l_max"}, "resonances");
    read(d, "kappa", c.resonances.kappa);
    read(d, "l_max", c.resonances.l_max);
  }
  if (j.contains("branch")) {
    const auto& d = j.at("branch");
    reject_unknown(d, {"l", "kappa", "parametrization", "start", "stop", "steps", "newton_tol",
                       "max_iterations", "omega_positive", "csv_modes"},
                   "branch");
    read(d, "l", c.branch.l);
    read(d, "kappa", c.branch.kappa);
    read(d, "parametrization", c.branch.parametrization);
    read(d, "start", c.branch.start);
    read(d, "stop", c.branch.stop);
    read(d, "steps", c.branch.steps);
    read(d, "newton_tol", c.branch.newton_tol);
    read(d, "max_iterations", c.branch.max_iterations);
    read(d, "omega_positive", c.branch.omega_positive);
    read(d, "csv_modes", c.branch.csv_modes);
  }
  if (j.contains("stability")) {
    const auto& d = j.at("stability");
    reject_unknown(d, {"l_max", "coercivity_modes"}, "stability");
    read(d, "l_max", c.stability.l_max);
    read(d, "coercivity_modes", c.stability.coercivity_modes);
  }

  // value validation with named fields
  if (!(c.sigma0 > 0.0)) throw ConfigError("sigma0: must be > 0");
  if (c.grid_size < 8 || c.grid_size % 2 != 0) throw ConfigError("N: must be even and >= 8");
  if (c.threads < 1) throw ConfigError("threads: must be >= 1");
  if (!(c.simulate.dt > 0.0)) throw ConfigError("simulate.dt: must be > 0");
  if (!(c.simulate.horizon > 0.0)) throw ConfigError("simulate.T: must be > 0");
  if (c.simulate.monitor_every < 1) throw ConfigError("simulate.monitor_every: must be >= 1");
  if (c.simulate.scheme != "rk4" && c.simulate.scheme != "implicit-midpoint")
    throw ConfigError("simulate.scheme: expected rk4 or implicit-midpoint");
  if (c.simulate.initial != "mode" && c.simulate.initial != "random" &&
      c.simulate.initial != "zero")
    throw ConfigError("simulate.initial: expected mode, random or zero");
  if (c.resonances.kappa < 1) throw ConfigError("resonances.kappa: must be >= 1");
  if (c.resonances.l_max < 1) throw ConfigError("resonances.l_max: must be >= 1");
  if (c.branch.l < 1) throw ConfigError("branch.l: must be >= 1");
  if (c.branch.kappa < 1) throw ConfigError("branch.kappa: must be >= 1");
  if (c.branch.steps < 1) throw ConfigError("branch.steps: must be >= 1");
  if (!(c.branch.newton_tol > 0.0)) throw ConfigError("branch.newton_tol: must be > 0");
  if (c.stability.l_max < 2) throw ConfigError("stability.l_max: must be >= 2");
  if (c.stability.coercivity_modes < 16)
    throw ConfigError("stability.coercivity_modes: must be >= 16");
  if (c.dn.order < 1 || c.dn.order > kMaxTaylorOrder)
    throw ConfigError("dn.order: must lie in [1, 8]");
  if (!(c.dn.smallness > 0.0)) throw ConfigError("dn.smallness: must be > 0");
  c.dn.to_method();
  c.branch.to_continuation(c.dn);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["sigma0"] = c.sigma0;
  j["alpha0"] = c.alpha0;
  j["N"] = c.grid_size;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["threads"] = c.threads;
  j["dn"] = {{"method", c.dn.method}, {"order", c.dn.order}, {"smallness", c.dn.smallness}};
  j["simulate"] = {{"scheme", c.simulate.scheme},     {"dt", c.simulate.dt},
                   {"T", c.simulate.horizon},         {"monitor_every", c.simulate.monitor_every},
                   {"initial", c.simulate.initial},   {"epsilon", c.simulate.epsilon},
                   {"mode", c.simulate.mode}};
  j["resonances"] = {{"kappa", c.resonances.kappa}, {"l_max", c.resonances.l_max}};
  j["branch"] = {{"l", c.branch.l},
                 {"kappa", c.branch.kappa},
                 {"parametrization", c.branch.parametrization},
                 {"start", c.branch.start},
                 {"stop", c.branch.stop},
                 {"steps", c.branch.steps},
                 {"newton_tol", c.branch.newton_tol},
                 {"max_iterations", c.branch.max_iterations},
                 {"omega_positive", c.branch.omega_positive},
                 {"csv_modes", c.branch.csv_modes}};
  j["stability"] = {{"l_max", c.stability.l_max},
                    {"coercivity_modes", c.stability.coercivity_modes}};
  return j.dump(2);
}

std::string config_hash(const RunConfig& c) {
  const std::string s = serialize_config(c);
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace dropwave
