#include "dropwave/waves.hpp"

#include "dropwave/dynamics.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dropwave {

namespace {

TorusField exp2z(const TorusField& zeta) {
  return map_pointwise(zeta, [](double x) { return std::exp(2.0 * x); });
}

double state_inner(const WahlenState& a, const WahlenState& b) {
  return inner(a.zeta, b.zeta) + inner(a.gamma, b.gamma);
}

// Reduced chart: ζ on the even (cosine) modes {0, n, 2n, ...}, γ on the odd
// (sine) modes {n, 2n, ...}, both capped at the dealias cutoff.
struct ReducedChart {
  SpectralGrid grid;
  int n;                   // fundamental mode κℓ
  std::vector<int> modes;  // n, 2n, ... within the dealias band

  ReducedChart(const SpectralGrid& g, int n_) : grid(g), n(n_) {
    for (int k = n_; k <= g.dealias_cutoff() && k < g.cutoff(); k += n_) modes.push_back(k);
    if (modes.empty()) throw std::invalid_argument("newton_solve: seed mode outside the band");
  }

  int dim() const { return 1 + 2 * static_cast<int>(modes.size()); }  // + ω elsewhere

  WahlenState unpack(const Eigen::VectorXd& x) const {
    std::vector<double> zc(grid.size(), 0.0), gc(grid.size(), 0.0);
    zc[0] = x(0);
    for (size_t k = 0; k < modes.size(); ++k) {
      zc[coeff_index(modes[k], 1)] = x(1 + k);
      gc[coeff_index(modes[k], -1)] = x(1 + modes.size() + k);
    }
    return WahlenState(TorusField::from_coefficients(grid, std::move(zc)),
                       TorusField::from_coefficients(grid, std::move(gc)));
  }

  Eigen::VectorXd pack_residual(const TorusField& r1, const TorusField& r2) const {
    Eigen::VectorXd r(dim());
    r(0) = r1.coeff(0, 0);
    for (size_t k = 0; k < modes.size(); ++k) {
      r(1 + k) = r1.coeff(modes[k], 1);
      r(1 + modes.size() + k) = r2.coeff(modes[k], -1);
    }
    return r;
  }
};

}  // namespace

std::pair<TorusField, TorusField> residual_F(double omega, const WahlenState& u,
                                             const PhysicalParams& p, const DnMethod& dn) {
  auto [dz, dg] = grad_hamiltonian_wahlen(u, p, dn);
  auto [iz, ig] = grad_angular_momentum(u);
  const auto e2 = exp2z(u.zeta);
  const double c = p.alpha0 * p.alpha0 / 4.0 * e2.mean();
  auto r1 = dz - iz * omega - e2 * c;
  auto r2 = (dg - ig * omega).zero_mean();
  return {std::move(r1), std::move(r2)};
}

namespace {

struct System {
  const ReducedChart& chart;
  const PhysicalParams& p;
  const ContinuationConfig& cfg;
  WahlenState seed_vector;      // kernel vector for the amplitude pairing
  double target = 0.0;          // ε or Ī target
  bool momentum = false;

  // unknowns: [chart coords; ω]
  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    const double omega = x(x.size() - 1);
    const auto u = chart.unpack(x.head(x.size() - 1));
    auto [r1, r2] = residual_F(omega, u, p, cfg.dn);
    Eigen::VectorXd r(x.size());
    r.head(x.size() - 1) = chart.pack_residual(r1, r2);
    r(x.size() - 1) =
        momentum ? angular_momentum(u) - target : state_inner(u, seed_vector) - target;
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd J(n, n);
    // central differences; exact on the linear part of the map
    for (int i = 0; i < n - 1; ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(i)));
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      J.col(i) = (residual(xp) - residual(xm)) / (2.0 * h);
    }
    if (cfg.full_fd_jacobian) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(n - 1)));
      Eigen::VectorXd xp = x, xm = x;
      xp(n - 1) += h;
      xm(n - 1) -= h;
      J.col(n - 1) = (residual(xp) - residual(xm)) / (2.0 * h);
    } else {
      // analytic ω-column: ∂R/∂ω = (−∂_ζĪ, −Π₀^⊥∂_γĪ); the constraint row
      // does not depend on ω
      const auto u = chart.unpack(x.head(n - 1));
      auto [iz, ig] = grad_angular_momentum(u);
      J.col(n - 1).head(n - 1) = chart.pack_residual(-iz, (-ig).zero_mean());
      J(n - 1, n - 1) = 0.0;
    }
    return J;
  }
};

double full_residual_sup(double omega, const WahlenState& u, const PhysicalParams& p,
                         const DnMethod& dn) {
  auto [r1, r2] = residual_F(omega, u, p, dn);
  double s = 0.0;
  for (double c : r1.coeffs()) s = std::max(s, std::abs(c));
  for (double c : r2.coeffs()) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace

BranchPoint newton_solve(const ContinuationConfig& cfg, const PhysicalParams& p,
                         const SpectralGrid& grid, const std::optional<WahlenState>& seed,
                         std::optional<double> omega_seed) {
  p.validate();
  if (cfg.newton_tol <= 0.0) throw std::invalid_argument("newton_solve: tolerance must be > 0");
  const int n = cfg.kappa * cfg.l;

  auto res = resonance_solve(cfg.l, cfg.kappa, p);
  const auto omega_star = cfg.omega_positive ? res.omega_plus : res.omega_minus;
  if (!omega_star)
    throw std::invalid_argument("newton_solve: no real resonant frequency at this mode");

  auto [v1, v2] = kernel_vectors(n, *omega_star, p, grid);
  (void)v2;

  ReducedChart chart(grid, n);
  System sys{chart, p, cfg, v1, cfg.start, false};
  sys.momentum = cfg.parametrization == ContinuationConfig::Parametrization::angular_momentum;
  sys.target = cfg.start;

  // trivial branch requested explicitly
  if (!sys.momentum && cfg.start == 0.0) {
    BranchPoint bp{*omega_star, WahlenState(TorusField::zero(grid), TorusField::zero(grid)),
                   0.0, 0.0, 0, {}};
    bp.conserved = conserved_set(bp.state, p, cfg.dn);
    return bp;
  }

  Eigen::VectorXd x(chart.dim() + 1);
  x.setZero();
  if (seed) {
    x(0) = seed->zeta.coeff(0, 0);
    for (size_t k = 0; k < chart.modes.size(); ++k) {
      x(1 + k) = seed->zeta.coeff(chart.modes[k], 1);
      x(1 + chart.modes.size() + k) = seed->gamma.coeff(chart.modes[k], -1);
    }
  } else {
    const double eps0 =
        sys.momentum ? std::sqrt(std::abs(cfg.start) /
                                 std::max(1e-12, std::abs(reduced_momentum_coeff(n, *omega_star, p))))
                     : cfg.start;
    x(1) = eps0 * v1.zeta.coeff(n, 1);
    x(1 + chart.modes.size()) = eps0 * v1.gamma.coeff(n, -1);
  }
  x(chart.dim()) = omega_seed.value_or(*omega_star);

  BranchPoint bp;
  bool converged = false;
  for (int it = 0; it <= cfg.max_iterations; ++it) {
    Eigen::VectorXd r = sys.residual(x);
    if (r.cwiseAbs().maxCoeff() <= cfg.newton_tol) {
      bp.iterations = it;
      converged = true;
      break;
    }
    if (it == cfg.max_iterations) break;
    Eigen::MatrixXd J = sys.jacobian(x);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible())
      throw std::runtime_error("newton_solve: singular Jacobian (degenerate resonance?)");
    x -= lu.solve(r);
  }
  if (!converged)
    throw std::runtime_error("newton_solve: no convergence within the iteration budget");

  bp.omega = x(chart.dim());
  bp.state = chart.unpack(x.head(chart.dim()));
  bp.epsilon = state_inner(bp.state, v1);
  bp.residual = full_residual_sup(bp.omega, bp.state, p, cfg.dn);
  bp.conserved = conserved_set(bp.state, p, cfg.dn);
  if (!bp.state.zeta.kappa_fold(n, 1e-10) || !bp.state.gamma.kappa_fold(n, 1e-10))
    throw std::runtime_error("newton_solve: solution left the symmetric subspace");
  return bp;
}

std::vector<BranchPoint> continue_branch(const ContinuationConfig& cfg, const PhysicalParams& p,
                                         const SpectralGrid& grid) {
  std::vector<BranchPoint> branch;
  const int steps = std::max(1, cfg.steps);
  double target = cfg.start;
  double h = (cfg.stop - cfg.start) / steps;
  const double h_floor = std::abs(h) / 64.0;

  std::optional<WahlenState> warm;
  std::optional<double> omega_warm;
  while (true) {
    ContinuationConfig point = cfg;
    point.start = target;
    try {
      auto bp = newton_solve(point, p, grid, warm, omega_warm);
      branch.push_back(bp);
      warm = bp.state;
      omega_warm = bp.omega;
      if (branch.size() > 1000) break;
      if ((h > 0 && target >= cfg.stop - 1e-15) || (h < 0 && target <= cfg.stop + 1e-15)) break;
      target += h;
      if ((h > 0 && target > cfg.stop) || (h < 0 && target < cfg.stop)) target = cfg.stop;
    } catch (const std::runtime_error&) {
      if (std::abs(h) <= h_floor || branch.empty()) break;  // partial branch
      target -= h;
      h *= 0.5;
      target += h;
    }
  }
  return branch;
}

CrossCheck verify_cross_formulation(const BranchPoint& bp, const PhysicalParams& p,
                                    const DnMethod& dn) {
  const auto natural = wahlen_forward(bp.state, p);
  auto [xi_dot, chi_dot] = rhs_natural(natural, p, dn);
  const auto r1 = natural.xi.derivative() * bp.omega - xi_dot;
  const auto r2 = natural.chi.derivative() * bp.omega - chi_dot;
  return {r1.sup_norm(), r2.sup_norm()};
}

void write_branch_csv(const std::vector<BranchPoint>& branch, std::ostream& os, int coeff_modes,
                      const std::string& preamble) {
  if (!preamble.empty()) os << preamble;
  os << "epsilon,omega,residual,iterations,H,I,V";
  for (int k = 1; k <= coeff_modes; ++k) os << ",zeta_c" << k << ",gamma_s" << k;
  os << "\n";
  os.precision(17);
  for (const auto& bp : branch) {
    os << bp.epsilon << "," << bp.omega << "," << bp.residual << "," << bp.iterations << ","
       << bp.conserved.energy << "," << bp.conserved.momentum << "," << bp.conserved.volume;
    for (int k = 1; k <= coeff_modes; ++k)
      os << "," << bp.state.zeta.coeff(k, 1) << "," << bp.state.gamma.coeff(k, -1);
    os << "\n";
  }
}

std::string branch_metadata_json(const ContinuationConfig& cfg, const PhysicalParams& p,
                                 const std::string& config_hash, const std::string& version) {
  nlohmann::json j;
  j["version"] = version;
  j["config_hash"] = config_hash;
  j["params"] = {{"sigma0", p.sigma0}, {"alpha0", p.alpha0}};
  j["seed_mode"] = cfg.l;
  j["kappa"] = cfg.kappa;
  j["parametrization"] = cfg.parametrization == ContinuationConfig::Parametrization::amplitude
                             ? "amplitude"
                             : "angular-momentum";
  j["range"] = {{"start", cfg.start}, {"stop", cfg.stop}, {"steps", cfg.steps}};
  j["newton"] = {{"tol", cfg.newton_tol}, {"max_iterations", cfg.max_iterations}};
  j["dn"] = {{"taylor_order", cfg.dn.taylor_order}, {"smallness", cfg.dn.smallness}};
  return j.dump(2);
}

}  // namespace dropwave
