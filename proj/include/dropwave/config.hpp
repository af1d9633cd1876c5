// Run configuration: a JSON document with explicit defaults, schema
// validation (unknown keys rejected), canonical serialization and a stable
// hash embedded in every output artifact.

#pragma once

#include <stdexcept>
#include <string>

#include "dropwave/dynamics.hpp"
#include "dropwave/waves.hpp"

namespace dropwave {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DnConfig {
  std::string method = "taylor";  // taylor | multiplier | oracle
  int order = 4;
  double smallness = 0.1;
  DnMethod to_method() const;
};

struct SimulateConfig {
  std::string scheme = "rk4";  // rk4 | implicit-midpoint
  double dt = 1e-3;
  double horizon = 1.0;
  int monitor_every = 10;
  std::string initial = "mode";  // mode | random | zero
  double epsilon = 1e-2;
  int mode = 2;
};

struct ResonancesConfig {
  int kappa = 1;
  int l_max = 8;
};

struct BranchConfig {
  int l = 2;
  int kappa = 1;
  std::string parametrization = "amplitude";  // amplitude | angular-momentum
  double start = 1e-3;
  double stop = 1e-3;
  int steps = 1;
  double newton_tol = 1e-11;
  int max_iterations = 50;
  bool omega_positive = true;
  int csv_modes = 8;
  ContinuationConfig to_continuation(const DnConfig& dn) const;
};

struct StabilityConfig {
  int l_max = 200;
  int coercivity_modes = 64;
};

struct RunConfig {
  double sigma0 = 1.0;
  double alpha0 = 0.0;
  int grid_size = 128;  // key "N"
  unsigned long long seed = 1;
  std::string out_dir = "out";
  int threads = 1;
  DnConfig dn;
  SimulateConfig simulate;
  ResonancesConfig resonances;
  BranchConfig branch;
  StabilityConfig stability;

  PhysicalParams params() const { return {sigma0, alpha0}; }
};

// Parse and fully validate; unknown keys and invalid values are rejected with
// the offending key path (and the line for syntax errors).
RunConfig parse_config(const std::string& text);

// Canonical serialization; parse(serialize(c)) == c field by field.
std::string serialize_config(const RunConfig& c);

// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace dropwave
