#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dropwave/config.hpp"
#include "dropwave/runner.hpp"

using namespace dropwave;

TEST_CASE("minimal config gets defaults") {
  auto c = parse_config(R"({"sigma0": 1, "alpha0": 0, "N": 128})");
  CHECK(c.sigma0 == 1.0);
  CHECK(c.grid_size == 128);
  CHECK(c.dn.method == "taylor");
  CHECK(c.dn.order == 4);
  CHECK(c.simulate.dt == 1e-3);
  CHECK(c.branch.newton_tol == 1e-11);
  CHECK(c.threads == 1);
}

TEST_CASE("validation errors name the field") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"sigma0": -1, "alpha0": 0})"), "sigma0: must be > 0",
                       ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"alpha0": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sigma0": 1, "alpha0": 0, "N": 9})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sigma0": 1, "alpha0": 0, "bogus": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sigma0": 1, "alpha0": 0, "dn": {"order": 99}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sigma0": 1, "alpha0": 0, "simulate": {"oops": 1}})"),
                  ConfigError);
  // syntax errors carry a line number
  try {
    parse_config("{\n\"sigma0\": 1,\n\"alpha0\":\n}");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("serialize/parse round trip") {
  auto c = parse_config(R"({
    "sigma0": 2.5, "alpha0": 1.25, "N": 64, "seed": 42, "threads": 2,
    "dn": {"method": "taylor", "order": 5, "smallness": 0.08},
    "branch": {"l": 3, "kappa": 2, "parametrization": "angular-momentum",
               "start": 1e-4, "stop": 2e-3, "steps": 7, "newton_tol": 1e-10,
               "max_iterations": 30, "omega_positive": false, "csv_modes": 6},
    "simulate": {"scheme": "implicit-midpoint", "dt": 5e-4, "T": 2.0,
                 "monitor_every": 4, "initial": "random", "epsilon": 3e-3, "mode": 4},
    "resonances": {"kappa": 2, "l_max": 12},
    "stability": {"l_max": 100, "coercivity_modes": 32}
  })");
  auto c2 = parse_config(serialize_config(c));
  CHECK(serialize_config(c2) == serialize_config(c));
  CHECK(config_hash(c2) == config_hash(c));
  CHECK(c2.branch.parametrization == "angular-momentum");
  CHECK(c2.simulate.scheme == "implicit-midpoint");
  CHECK(c2.seed == 42);
}

TEST_CASE("hash is sensitive to content") {
  auto a = parse_config(R"({"sigma0": 1, "alpha0": 0})");
  auto b = parse_config(R"({"sigma0": 1, "alpha0": 0.1})");
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("commands produce artifacts with embedded hash") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "dropwave_test_out";
  fs::remove_all(dir);

  auto c = parse_config(R"({
    "sigma0": 1, "alpha0": 0, "N": 32,
    "simulate": {"dt": 1e-2, "T": 0.05, "monitor_every": 1, "initial": "zero"},
    "resonances": {"l_max": 4},
    "stability": {"l_max": 8, "coercivity_modes": 16}
  })");
  std::ostringstream log;

  CHECK(run_command("simulate", c, log, dir.string()) == 0);
  {
    std::ifstream in(dir / "trajectory.csv");
    std::string first, second;
    std::getline(in, first);
    std::getline(in, second);
    CHECK(first == std::string("# dropwave ") + kVersion);
    CHECK(second == "# config " + config_hash(c));
    // a zero initial state stays identically zero
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.substr(0, 2) == "0,");
    CHECK(row.find("nan") == std::string::npos);
  }

  CHECK(run_command("resonances", c, log, dir.string()) == 0);
  {
    std::ifstream in(dir / "resonances.json");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find(config_hash(c)) != std::string::npos);
    CHECK(buf.str().find("1.2247448713915") != std::string::npos);  // omega*(l=2)
  }

  CHECK(run_command("stability", c, log, dir.string()) == 0);
  {
    std::ifstream in(dir / "stability.csv");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("# lambda1_0 = -1") != std::string::npos);
    CHECK(buf.str().find("constrained_min") != std::string::npos);
  }

  CHECK_THROWS_AS(run_command("bogus", c, log, dir.string()), ConfigError);

  // identical config + seed -> bit-identical output
  const auto dir2 = fs::temp_directory_path() / "dropwave_test_out2";
  fs::remove_all(dir2);
  CHECK(run_command("simulate", c, log, dir2.string()) == 0);
  std::ifstream a(dir / "trajectory.csv"), b(dir2 / "trajectory.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());

  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("stability at the modified-Bond boundary") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "dropwave_test_bond";
  fs::remove_all(dir);
  auto c = parse_config(R"({
    "sigma0": 1, "alpha0": 2, "N": 32,
    "stability": {"l_max": 8, "coercivity_modes": 16}
  })");
  std::ostringstream log;
  CHECK(run_command("stability", c, log, dir.string()) == 0);
  std::ifstream in(dir / "stability.csv");
  std::stringstream buf;
  buf << in.rdbuf();
  // C = 1/4 exactly: lambda1(0) = -sigma0 + alpha0^2/4 = 0
  CHECK(buf.str().find("# lambda1_0 = 0\n") != std::string::npos);
  CHECK(buf.str().find("# modified_bond = 0.25") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("branch command writes csv and metadata") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "dropwave_test_branch";
  fs::remove_all(dir);
  auto c = parse_config(R"({
    "sigma0": 1, "alpha0": 0, "N": 64,
    "branch": {"l": 2, "start": 1e-3, "stop": 2e-3, "steps": 2, "csv_modes": 4}
  })");
  std::ostringstream log;
  CHECK(run_command("branch", c, log, dir.string()) == 0);
  std::ifstream csv(dir / "branch.csv");
  std::stringstream buf;
  buf << csv.rdbuf();
  CHECK(buf.str().find("epsilon,omega,residual") != std::string::npos);
  std::ifstream meta(dir / "branch.json");
  std::stringstream mbuf;
  mbuf << meta.rdbuf();
  CHECK(mbuf.str().find("\"seed_mode\": 2") != std::string::npos);
  fs::remove_all(dir);
}
