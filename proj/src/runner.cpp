#include "dropwave/runner.hpp"

#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "dropwave/acceptance.hpp"

namespace dropwave {

namespace {

namespace fs = std::filesystem;

std::string preamble(const RunConfig& c) {
  std::ostringstream os;
  os << "# dropwave " << kVersion << "\n# config " << config_hash(c) << "\n";
  return os.str();
}

fs::path resolve_out(const RunConfig& c, const std::string& override_dir) {
  fs::path out = override_dir.empty() ? fs::path(c.out_dir) : fs::path(override_dir);
  fs::create_directories(out);
  return out;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open output file " + p.string());
  os.precision(17);
  return os;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < std::min(threads, n); ++t) {
    pool.emplace_back([&]() {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

WahlenState initial_state(const RunConfig& c, const SpectralGrid& g) {
  if (c.simulate.initial == "zero" || c.simulate.epsilon == 0.0)
    return WahlenState(TorusField::zero(g), TorusField::zero(g));
  if (c.simulate.initial == "mode")
    return WahlenState(TorusField::harmonic_cos(g, c.simulate.mode, c.simulate.epsilon),
                       TorusField::harmonic_sin(g, c.simulate.mode, c.simulate.epsilon));
  // seeded random band-limited state
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto draw = [&](bool zero_mean) {
    std::vector<double> coef(g.size(), 0.0);
    if (!zero_mean) coef[0] = u(rng);
    for (int l = 1; l <= g.dealias_cutoff() && l < g.cutoff(); ++l) {
      coef[coeff_index(l, 1)] = u(rng) * std::exp(-0.7 * l);
      coef[coeff_index(l, -1)] = u(rng) * std::exp(-0.7 * l);
    }
    auto f = TorusField::from_coefficients(g, std::move(coef));
    const double n = f.w1inf_norm();
    return n > 0 ? f * (c.simulate.epsilon / n) : f;
  };
  auto zeta = draw(false);
  auto gamma = draw(true);
  return WahlenState(std::move(zeta), std::move(gamma));
}

int cmd_simulate(const RunConfig& c, std::ostream& log, const fs::path& out) {
  SpectralGrid g(c.grid_size);
  IntegratorConfig icfg;
  icfg.scheme = c.simulate.scheme == "rk4" ? IntegratorConfig::Scheme::rk4
                                           : IntegratorConfig::Scheme::implicit_midpoint;
  icfg.dt = c.simulate.dt;
  icfg.horizon = c.simulate.horizon;
  icfg.monitor_every = c.simulate.monitor_every;
  icfg.dn = c.dn.to_method();
  auto traj = simulate(initial_state(c, g), c.params(), icfg);
  auto os = open_out(out / "trajectory.csv");
  traj.write_csv(os, preamble(c));
  log << "simulate: " << traj.samples.size() << " samples -> " << (out / "trajectory.csv").string()
      << "\n";
  return 0;
}

int cmd_resonances(const RunConfig& c, std::ostream& log, const fs::path& out) {
  auto rep = resonance_report(c.params(), c.resonances.kappa, c.resonances.l_max);
  auto os = open_out(out / "resonances.json");
  os << rep.to_json(config_hash(c), kVersion) << "\n";
  log << "resonances: " << rep.entries.size() << " modes -> "
      << (out / "resonances.json").string() << "\n";
  return 0;
}

int cmd_branch(const RunConfig& c, std::ostream& log, const fs::path& out) {
  SpectralGrid g(c.grid_size);
  auto cfg = c.branch.to_continuation(c.dn);
  auto branch = continue_branch(cfg, c.params(), g);
  if (branch.empty()) throw std::runtime_error("branch: no converged points");
  {
    auto os = open_out(out / "branch.csv");
    write_branch_csv(branch, os, c.branch.csv_modes, preamble(c));
  }
  {
    auto os = open_out(out / "branch.json");
    os << branch_metadata_json(cfg, c.params(), config_hash(c), kVersion) << "\n";
  }
  const bool partial = static_cast<int>(branch.size()) < c.branch.steps + 1;
  log << "branch: " << branch.size() << " points" << (partial ? " (partial)" : "") << " -> "
      << (out / "branch.csv").string() << "\n";
  return 0;
}

int cmd_stability(const RunConfig& c, std::ostream& log, const fs::path& out) {
  const auto p = c.params();
  auto eigs = hessian_spectrum(p, c.stability.l_max);
  auto spec = linear_spectrum(p, c.stability.l_max);
  auto coer = constrained_coercivity(p, c.stability.coercivity_modes);

  // rows are independent; the two alternative closed-form spectra are recomputed per
  // mode for the discrepancy log
  std::vector<std::string> rows(eigs.size());
  parallel_for(static_cast<int>(eigs.size()), c.threads, [&](int i) {
    const int l = eigs[i].l;
    const double s0 = p.sigma0, a0 = p.alpha0;
    const double lam2_dyn = l == 0 ? 0.0
                                   : -double(l) * (l - 1.0) * (s0 * (l + 1.0) - a0 * a0 / 4.0);
    const double lam2_series =
        l == 0 ? 0.0 : l * (-s0 * l * l - a0 * a0 / 4.0 * l + s0 - a0 * a0 / 4.0);
    const double lam2_quadratic = l == 0 ? 0.0 : -l * (s0 * l * l + a0 * a0 / 2.0 - s0);
    std::ostringstream os;
    os.precision(17);
    os << l << "," << eigs[i].lambda_minus << "," << eigs[i].lambda_plus << ","
       << spec[i].lambda_plus.real() << "," << spec[i].lambda_plus.imag() << "," << lam2_dyn << ","
       << lam2_series << "," << lam2_quadratic << "," << (lam2_series - lam2_dyn) << ","
       << (lam2_quadratic - lam2_dyn);
    rows[i] = os.str();
  });

  auto os = open_out(out / "stability.csv");
  os << preamble(c);
  os << "# lambda1_0 = " << hessian_block(0, 0, p).mat(0, 0) << "\n";
  if (p.alpha0 != 0.0) os << "# modified_bond = " << p.modified_bond() << "\n";
  os << "# unconstrained_min = " << coer.unconstrained_min << "\n";
  os << "# constrained_min = " << coer.constrained_min << " (volume and barycenter directions "
     << "projected out, " << coer.modes << " modes)\n";
  os << "l,hessian_lambda_minus,hessian_lambda_plus,re_lambda,im_lambda,lambda2_blocks,"
     << "lambda2_series_formula,lambda2_quadratic_formula,discrepancy_series,"
     << "discrepancy_quadratic\n";
  for (const auto& r : rows) os << r << "\n";
  log << "stability: " << rows.size() << " modes -> " << (out / "stability.csv").string() << "\n";
  return 0;
}

int cmd_selftest(const RunConfig&, std::ostream& log, const fs::path&) {
  auto results = run_acceptance(log);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, std::ostream& log,
                const std::string& out_dir_override) {
  const auto out = resolve_out(config, out_dir_override);
  if (command == "simulate") return cmd_simulate(config, log, out);
  if (command == "resonances") return cmd_resonances(config, log, out);
  if (command == "branch") return cmd_branch(config, log, out);
  if (command == "stability") return cmd_stability(config, log, out);
  if (command == "selftest") return cmd_selftest(config, log, out);
  throw ConfigError("unknown command '" + command +
                    "' (expected simulate, resonances, branch, stability or selftest)");
}

}  // namespace dropwave
