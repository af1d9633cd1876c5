#include "dropwave/linear.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dropwave {

namespace {

double off_diagonal(int l, int m, double omega, const PhysicalParams& p) {
  return m * p.alpha0 / 2.0 + m * l * (omega - p.alpha0 / 2.0);
}

double hessian_11(int l, const PhysicalParams& p) {
  const double s0 = p.sigma0, a0 = p.alpha0;
  return s0 * l * l - (s0 + a0 * a0 / 4.0) + a0 * a0 / (4.0 * l);
}

}  // namespace

ModeBlock block_Lomega(int l, int m, double omega, const PhysicalParams& p) {
  p.validate();
  if (l < 0) throw std::invalid_argument("block_Lomega: l must be >= 0");
  ModeBlock b{l, m, Eigen::Matrix2d::Zero()};
  if (l == 0) {
    b.m = 0;
    b.mat << -p.sigma0 + p.alpha0 * p.alpha0 / 4.0, 0.0, 0.0, 0.0;
    return b;
  }
  if (m != 1 && m != -1) throw std::invalid_argument("block_Lomega: m must be ±1 for l >= 1");
  const double off = off_diagonal(l, m, omega, p);
  b.mat << hessian_11(l, p), off, off, static_cast<double>(l);
  return b;
}

ModeBlock hessian_block(int l, int m, const PhysicalParams& p) {
  return block_Lomega(l, m, 0.0, p);
}

ModeBlock dynamic_block(int l, int m, const PhysicalParams& p) {
  p.validate();
  ModeBlock b{l, m, Eigen::Matrix2d::Zero()};
  if (l == 0) {
    b.m = 0;
    b.mat << 0.0, 0.0, p.sigma0 - p.alpha0 * p.alpha0 / 4.0, 0.0;
    return b;
  }
  Eigen::Matrix2d j2;
  j2 << 0.0, 1.0, -1.0, 0.0;
  b.mat = j2 * hessian_block(l, m, p).mat;
  return b;
}

double resonance_function(const PhysicalParams& p, double omega, double l) {
  const double s0 = p.sigma0, a0 = p.alpha0;
  const double w = omega - a0 / 2.0;
  return s0 * l * l - w * w * l - (s0 + a0 * w + a0 * a0 / 4.0);
}

std::vector<LinearMode> linear_spectrum(const PhysicalParams& p, int l_max) {
  if (l_max < 2) throw std::invalid_argument("linear_spectrum: l_max must be >= 2");
  std::vector<LinearMode> out;
  out.reserve(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    // trace-free 2x2: λ² = −det; the factored determinant
    // ℓ(ℓ−1)(σ₀(ℓ+1) − α₀²/4) keeps the ℓ = 1 neutral pair exactly zero
    const double det =
        l == 0 ? 0.0
               : double(l) * (l - 1.0) * (p.sigma0 * (l + 1.0) - p.alpha0 * p.alpha0 / 4.0);
    LinearMode mode{l, {}, {}};
    if (det >= 0.0) {
      mode.lambda_plus = {0.0, std::sqrt(det)};
      mode.lambda_minus = {0.0, -std::sqrt(det)};
    } else {
      mode.lambda_plus = {std::sqrt(-det), 0.0};
      mode.lambda_minus = {-std::sqrt(-det), 0.0};
    }
    out.push_back(mode);
  }
  return out;
}

namespace {

// Bisection refinement of F(·) = 0 near an approximate root.
double refine_root(const PhysicalParams& p, int l, double omega_approx) {
  auto f = [&](double w) { return resonance_function(p, w, l); };
  double a = omega_approx, b = omega_approx;
  double step = std::max(1e-8, 1e-8 * std::abs(omega_approx));
  // expand a bracket around the approximate root
  for (int it = 0; it < 200; ++it) {
    a = omega_approx - step;
    b = omega_approx + step;
    if (f(a) * f(b) <= 0.0) break;
    step *= 2.0;
  }
  if (f(a) * f(b) > 0.0) return omega_approx;  // flat tangency (double root)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= 1e-15 * std::max(1.0, std::abs(mid))) return mid;
    (f(a) * f(mid) <= 0.0 ? b : a) = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

ResonanceResult resonance_solve(int l, int kappa, const PhysicalParams& p) {
  p.validate();
  if (l < 1 || kappa < 1) throw std::invalid_argument("resonance_solve: l, kappa must be >= 1");
  const int n = kappa * l;
  const double s0 = p.sigma0, a0 = p.alpha0;

  ResonanceResult r;
  // radicand of the frequency formula; for α₀ ≠ 0 it equals Δ·α₀²/n²
  const double radicand =
      std::pow(a0 / (2.0 * n), 2) + (4.0 * s0 * (double(n) * n - 1.0) - a0 * a0) / (4.0 * n);
  if (a0 != 0.0) {
    const double c = p.modified_bond();
    r.delta = (n - 1.0) * (c * n * (n + 1.0) - 0.25);
    if (*r.delta < 0.0) return r;  // no real frequency
  } else if (radicand < 0.0) {
    return r;
  }
  const double base = a0 / 2.0 - a0 / (2.0 * n);
  const double root = std::sqrt(std::max(0.0, radicand));
  if (root <= 1e-8 * (1.0 + std::abs(base))) {
    // square-root collapse: a double root, where bisection has no sign change
    r.omega_plus = base;
    r.omega_minus = base;
    return r;
  }
  r.omega_plus = refine_root(p, n, base + root);
  r.omega_minus = refine_root(p, n, base - root);
  return r;
}

MultiplicityReport multiplicity_scan(double omega_star, const PhysicalParams& p, int l_max) {
  p.validate();
  MultiplicityReport rep;
  rep.omega = omega_star;
  const double tol = 1e-9 * p.sigma0 * double(l_max) * l_max;
  for (int l = 1; l <= l_max; ++l) {
    if (std::abs(resonance_function(p, omega_star, l)) <= tol) rep.roots.push_back(l);
  }
  if (rep.roots.empty())
    throw std::invalid_argument("multiplicity_scan: omega is not a resonant frequency");
  rep.multiplicity = 2 * static_cast<int>(rep.roots.size());
  for (int l : rep.roots) {
    const double degenerate_omega = p.alpha0 / 2.0 - p.alpha0 / (2.0 * l);
    if (std::abs(omega_star - degenerate_omega) <= 1e-9 * (1.0 + std::abs(p.alpha0)))
      rep.degenerate = true;
  }
  const double k2 = 1.0 + p.alpha0 * p.alpha0 / (4.0 * p.sigma0);
  const double k = std::sqrt(k2);
  const long kr = std::lround(k);
  if (std::abs(k - kr) <= 1e-9 && kr % 2 == 1 && kr >= 3) {
    rep.odd_square_criterion = true;
    rep.odd_square_k = static_cast<int>(kr);
  }
  return rep;
}

std::pair<WahlenState, WahlenState> kernel_vectors(int l, double omega_star,
                                                   const PhysicalParams& p,
                                                   const SpectralGrid& grid) {
  p.validate();
  const double scale = std::max(1.0, p.sigma0 * l * l);
  if (std::abs(resonance_function(p, omega_star, l)) > 1e-8 * scale)
    throw std::invalid_argument("kernel_vectors: omega is not resonant at this mode");
  const double slope = p.alpha0 / (2.0 * l) + (omega_star - p.alpha0 / 2.0);
  const double norm = 1.0 / std::sqrt(1.0 + slope * slope);
  WahlenState v1(TorusField::mode(grid, l, 1, norm), TorusField::mode(grid, l, -1, -slope * norm));
  WahlenState v2(TorusField::mode(grid, l, -1, norm), TorusField::mode(grid, l, 1, slope * norm));
  return {std::move(v1), std::move(v2)};
}

double transversality(int l, double omega_star, const PhysicalParams& p) {
  const double w = omega_star - p.alpha0 / 2.0;
  return -(p.alpha0 + 2.0 * l * w) / (1.0 + w * w);
}

double reduced_momentum_coeff(int l, double omega_star, const PhysicalParams& p) {
  const double w = omega_star - p.alpha0 / 2.0;
  const double slope = w + p.alpha0 / (2.0 * l);
  return (p.alpha0 + 2.0 * l * w) / (2.0 * (1.0 + slope * slope));
}

std::vector<HessianEigs> hessian_spectrum(const PhysicalParams& p, int l_max) {
  std::vector<HessianEigs> out;
  out.reserve(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    const auto b = hessian_block(l, 1, p);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(b.mat);
    out.push_back({l, eig.eigenvalues()(0), eig.eigenvalues()(1)});
  }
  return out;
}

CoercivityResult constrained_coercivity(const PhysicalParams& p, int n_modes) {
  p.validate();
  if (n_modes < 16) throw std::invalid_argument("constrained_coercivity: need >= 16 modes");

  // State vector layout: [ζ_{0,0}; for l=1..n: ζ_{l,+1}, ζ_{l,-1}, γ_{l,+1}, γ_{l,-1}].
  // γ_{0,0} is excluded (zero-mean slice). The Hessian couples (ζ_{l,m}, γ_{l,-m}).
  const int dim = 1 + 4 * n_modes;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  h(0, 0) = -p.sigma0 + p.alpha0 * p.alpha0 / 4.0;
  auto zi = [](int l, int m) { return 1 + 4 * (l - 1) + (m == 1 ? 0 : 1); };
  auto gi = [n = n_modes](int l, int m) { return 1 + 4 * (l - 1) + 2 + (m == 1 ? 0 : 1); };
  for (int l = 1; l <= n_modes; ++l) {
    for (int m : {1, -1}) {
      const auto b = hessian_block(l, m, p);
      const int i = zi(l, m), j = gi(l, -m);
      h(i, i) += b.mat(0, 0);
      h(i, j) += b.mat(0, 1);
      h(j, i) += b.mat(1, 0);
      h(j, j) += b.mat(1, 1);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(h);
  CoercivityResult res;
  res.modes = n_modes;
  res.unconstrained_min = full.eigenvalues().minCoeff();

  // Linearized constraint directions: volume -> ζ mean; barycenter -> (1,±1)
  // modes of ζ and of γ.
  std::vector<int> fixed = {0, zi(1, 1), zi(1, -1), gi(1, 1), gi(1, -1)};
  std::vector<int> keep;
  for (int i = 0; i < dim; ++i)
    if (std::find(fixed.begin(), fixed.end(), i) == fixed.end()) keep.push_back(i);
  Eigen::MatrixXd hp(keep.size(), keep.size());
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = 0; b < keep.size(); ++b) hp(a, b) = h(keep[a], keep[b]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> proj(hp);
  res.constrained_min = proj.eigenvalues().minCoeff();
  return res;
}

ResonanceReport resonance_report(const PhysicalParams& p, int kappa, int l_max) {
  ResonanceReport rep;
  rep.params = p;
  rep.kappa = kappa;
  for (int l = 1; l <= l_max; ++l) {
    ResonanceEntry e;
    e.l = l;
    auto r = resonance_solve(l, kappa, p);
    e.delta = r.delta;
    e.omega_plus = r.omega_plus;
    e.omega_minus = r.omega_minus;
    const int n = kappa * l;
    if (r.omega_plus) {
      auto m = multiplicity_scan(*r.omega_plus, p, std::max(128, n));
      e.co_roots_plus = m.roots;
      e.multiplicity_plus = m.multiplicity;
      e.transversality_plus = transversality(n, *r.omega_plus, p);
      e.degenerate = e.degenerate || m.degenerate;
    }
    if (r.omega_minus) {
      auto m = multiplicity_scan(*r.omega_minus, p, std::max(128, n));
      e.co_roots_minus = m.roots;
      e.multiplicity_minus = m.multiplicity;
      e.transversality_minus = transversality(n, *r.omega_minus, p);
      e.degenerate = e.degenerate || m.degenerate;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::string ResonanceReport::to_json(const std::string& config_hash,
                                     const std::string& version) const {
  nlohmann::json j;
  j["version"] = version;
  j["config_hash"] = config_hash;
  j["params"] = {{"sigma0", params.sigma0}, {"alpha0", params.alpha0}};
  if (params.alpha0 != 0.0) j["params"]["modified_bond"] = params.modified_bond();
  j["kappa"] = kappa;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["l"] = e.l;
    je["delta"] = e.delta ? nlohmann::json(*e.delta) : nlohmann::json();
    je["omega_plus"] = e.omega_plus ? nlohmann::json(*e.omega_plus) : nlohmann::json();
    je["omega_minus"] = e.omega_minus ? nlohmann::json(*e.omega_minus) : nlohmann::json();
    je["co_roots"] = {{"plus", e.co_roots_plus}, {"minus", e.co_roots_minus}};
    je["multiplicity"] = {{"plus", e.multiplicity_plus}, {"minus", e.multiplicity_minus}};
    je["transversality"] = {{"plus", e.transversality_plus}, {"minus", e.transversality_minus}};
    je["degenerate"] = e.degenerate;
    j["entries"].push_back(je);
  }
  return j.dump(2);
}

WahlenState apply_blocks(const WahlenState& s,
                         const std::function<Eigen::Matrix2d(int l, int m)>& block) {
  const auto& g = s.zeta.grid();
  std::vector<double> zc(g.size(), 0.0), gc(g.size(), 0.0);
  {
    const Eigen::Matrix2d b = block(0, 0);
    const Eigen::Vector2d v(s.zeta.coeff(0, 0), 0.0);  // γ mean fixed to zero
    const Eigen::Vector2d w = b * v;
    zc[0] = w(0);
    // the γ-mean image is dropped on the zero-mean slice
  }
  for (int l = 1; l <= g.cutoff(); ++l) {
    for (int m : {1, -1}) {
      if (l == g.cutoff() && m == -1) continue;
      const Eigen::Matrix2d b = block(l, m);
      const double gcoef = (l == g.cutoff()) ? 0.0 : s.gamma.coeff(l, -m);
      const Eigen::Vector2d v(s.zeta.coeff(l, m), gcoef);
      const Eigen::Vector2d w = b * v;
      zc[coeff_index(l, m)] = w(0);
      if (!(l == g.cutoff() && -m == -1)) gc[coeff_index(l, -m)] = w(1);
    }
  }
  return WahlenState(TorusField::from_coefficients(g, std::move(zc)),
                     TorusField::from_coefficients(g, std::move(gc)));
}

}  // namespace dropwave
