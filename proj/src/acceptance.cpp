#include "dropwave/acceptance.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "dropwave/dynamics.hpp"
#include "dropwave/waves.hpp"

namespace dropwave {

namespace {

TorusField random_field(const SpectralGrid& g, std::mt19937_64& rng, double target, double decay,
                        int max_mode, bool zero_mean) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int m = max_mode < 0 ? g.dealias_cutoff() : max_mode;
  std::vector<double> c(g.size(), 0.0);
  if (!zero_mean) c[0] = u(rng);
  for (int l = 1; l <= m && l < g.cutoff(); ++l) {
    const double w = std::exp(-decay * l);
    c[coeff_index(l, 1)] = u(rng) * w;
    c[coeff_index(l, -1)] = u(rng) * w;
  }
  auto f = TorusField::from_coefficients(g, std::move(c));
  if (target > 0.0) {
    const double n = f.w1inf_norm();
    if (n > 0.0) f = f * (target / n);
  }
  return f;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void gate(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << "FAILED " << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

// --- 1 -----------------------------------------------------------------
CriterionResult dn_multiplier_exactness() {
  SpectralGrid g(128);
  auto zero = TorusField::zero(g);
  double worst = 0.0;
  for (int l = 1; l <= 40; ++l) {
    auto chi = TorusField::harmonic_cos(g, l);
    auto got = dn_apply(zero, chi);  // default evaluator at the flat shape
    worst = std::max(worst, (got - chi * double(l)).sup_norm());
  }
  Check c;
  c.gate(worst <= 1e-12, "max error " + fmt(worst) + " > 1e-12");
  c.note("max abs error " + fmt(worst) + " over l <= 40");
  return {1, "DN multiplier exactness", c.pass, c.detail.str()};
}

// --- 2 -----------------------------------------------------------------
CriterionResult dn_taylor_vs_oracle() {
  SpectralGrid g(64);
  std::mt19937_64 rng(2001);
  auto chi = random_field(g, rng, 1.0, 1.0, 12, false);
  auto bump = TorusField::harmonic_cos(g, 3);
  const auto method = DnMethod::taylor(4, 0.2);  // a = 3e-2 has W^{1,inf} norm 0.12
  // the oracle's own resolution, measured against the exact flat-state answer
  const double floor = (dn_oracle(TorusField::zero(g), chi) -
                        dn_apply(TorusField::zero(g), chi, DnMethod::multiplier()))
                           .l2_norm() /
                       chi.l2_norm();
  std::vector<double> amps = {1e-3, 1e-2, 3e-2}, errs;
  for (double a : amps) {
    auto xi = bump * a;
    auto t = dn_apply(xi, chi, method);
    auto o = dn_oracle(xi, chi, -1, 0.2);
    errs.push_back((t - o).l2_norm() / o.l2_norm());
  }
  // least-squares slope over the points resolvable by the oracle
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int npts = 0;
  for (size_t i = 0; i < amps.size(); ++i) {
    if (errs[i] < 100.0 * floor) continue;  // below the oracle's noise floor
    const double x = std::log(amps[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++npts;
  }
  const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
  Check c;
  c.gate(errs[1] <= 1e-6, "relative error at a=1e-2 is " + fmt(errs[1]) + " > 1e-6");
  c.gate(npts >= 2 && slope >= 4.5, "log-log slope " + fmt(slope) + " < K+0.5 = 4.5");
  c.note("rel err(1e-2) = " + fmt(errs[1]) + ", slope = " + fmt(slope) + " over " +
         std::to_string(npts) + " points above the oracle floor " + fmt(floor));
  return {2, "DN Taylor vs oracle", c.pass, c.detail.str()};
}

// --- 3 -----------------------------------------------------------------
CriterionResult dn_operator_properties() {
  SpectralGrid g(64);
  std::mt19937_64 rng(2002);
  Check c;
  double sym_worst = 0, neg_worst = 0, ker_worst = 0, tra_worst = 0, ref_worst = 0, der_worst = 0;
  for (int rep = 0; rep < 20; ++rep) {
    auto xi = random_field(g, rng, 0.05, 0.7, -1, false);
    auto chi1 = random_field(g, rng, 1.0, 0.7, -1, false);
    auto chi2 = random_field(g, rng, 1.0, 0.7, -1, false);
    auto G1 = dn_apply(xi, chi1);
    auto G2 = dn_apply(xi, chi2);
    sym_worst = std::max(sym_worst, std::abs(inner(G1, chi2) - inner(G2, chi1)) /
                                        (chi1.l2_norm() * chi2.l2_norm()));
    neg_worst = std::min(neg_worst, inner(G1, chi1) / (chi1.l2_norm() * chi1.l2_norm()));
    ker_worst = std::max(ker_worst, dn_apply(xi, TorusField::constant(g, 1.0)).sup_norm());
    const double al = 0.31 + 0.1 * rep;
    tra_worst = std::max(tra_worst, (G1.translate(al) -
                                     dn_apply(xi.translate(al), chi1.translate(al))).l2_norm() /
                                        chi1.l2_norm());
    ref_worst = std::max(ref_worst,
                         (G1.reflect() - dn_apply(xi.reflect(), chi1.reflect())).l2_norm() /
                             chi1.l2_norm());
    // conjugate-trace derivative identity at amplitude 0.04 (the truncated
    // expansion carries an O(||xi||^{K+1}) structural floor)
    auto xs = xi * 0.8;
    auto K = conjugate_trace(xs, chi1);
    der_worst = std::max(der_worst, (K.derivative() - dn_apply(xs, chi1)).l2_norm() /
                                        std::max(1.0, chi1.l2_norm()));
  }
  c.gate(sym_worst <= 1e-9, "symmetry " + fmt(sym_worst));
  c.gate(neg_worst >= -1e-10, "nonnegativity " + fmt(neg_worst));
  c.gate(ker_worst <= 1e-12, "kernel " + fmt(ker_worst));
  c.gate(tra_worst <= 1e-9, "translation " + fmt(tra_worst));
  c.gate(ref_worst <= 1e-9, "reflection " + fmt(ref_worst));
  c.gate(der_worst <= 1e-9, "trace-derivative identity " + fmt(der_worst));
  c.note("sym " + fmt(sym_worst) + ", min quad " + fmt(neg_worst) + ", kernel " + fmt(ker_worst) +
         ", transl " + fmt(tra_worst) + ", refl " + fmt(ref_worst) + ", (K chi)'=G chi " +
         fmt(der_worst));
  return {3, "DN operator properties (20 states)", c.pass, c.detail.str()};
}

// --- 4 -----------------------------------------------------------------
CriterionResult gradient_check() {
  SpectralGrid g(48);
  std::mt19937_64 rng(2003);
  PhysicalParams p{1.0, 1.0};
  Check c;
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    WahlenState w(random_field(g, rng, 0.03, 0.7, -1, false),
                  random_field(g, rng, 0.03, 0.7, -1, true));
    auto dz = random_field(g, rng, 1.0, 0.7, -1, false);
    auto dg = random_field(g, rng, 1.0, 0.7, -1, true);
    auto eval_fd = [&](const std::function<double(const WahlenState&)>& f, double lin) {
      double best = std::numeric_limits<double>::infinity();
      for (double h : {1e-4, 1e-5, 1e-6}) {
        WahlenState plus(w.zeta + dz * h, w.gamma + dg * h);
        WahlenState minus(w.zeta - dz * h, w.gamma - dg * h);
        const double fd = (f(plus) - f(minus)) / (2.0 * h);
        best = std::min(best, std::abs(fd - lin) / std::max(1.0, std::abs(fd)));
      }
      return best;
    };
    auto [hz, hg] = grad_hamiltonian_wahlen(w, p);
    worst = std::max(worst, eval_fd([&](const WahlenState& s) { return hamiltonian_wahlen(s, p); },
                                    inner(hz, dz) + inner(hg, dg)));
    auto [iz, ig] = grad_angular_momentum(w);
    worst = std::max(worst, eval_fd([&](const WahlenState& s) { return angular_momentum(s); },
                                    inner(iz, dz) + inner(ig, dg)));
    worst = std::max(worst, eval_fd([&](const WahlenState& s) { return drop_volume(s.zeta); },
                                    inner(grad_volume_zeta(w.zeta), dz)));
  }
  c.gate(worst <= 1e-6, "best FD relative error " + fmt(worst) + " > 1e-6");
  c.note("worst best-step relative error " + fmt(worst) + " over 10 states (H, I, V)");
  return {4, "gradients vs central finite differences", c.pass, c.detail.str()};
}

// --- 5 -----------------------------------------------------------------
CriterionResult equilibrium() {
  SpectralGrid g(128);
  Check c;
  double worst = 0.0;
  for (double a0 : {0.0, 1.0, 3.0}) {
    PhysicalParams p{1.0, a0};
    auto [xd, cd] = rhs_natural({TorusField::zero(g), TorusField::zero(g)}, p);
    auto [zd, gd] = rhs_wahlen(WahlenState(TorusField::zero(g), TorusField::zero(g)), p);
    worst = std::max({worst, xd.sup_norm(), cd.sup_norm(), zd.sup_norm(), gd.sup_norm()});
  }
  c.gate(worst <= 1e-12, "sup " + fmt(worst) + " > 1e-12");
  c.note("sup norm of both RHS at the circle: " + fmt(worst));
  return {5, "equilibrium constant cancellation", c.pass, c.detail.str()};
}

// --- 6 -----------------------------------------------------------------
CriterionResult linearization_consistency() {
  SpectralGrid g(32);
  Check c;
  double worst = 0.0;
  const double h = 1e-6;
  for (auto [s0, a0] : std::vector<std::pair<double, double>>{{1, 0}, {1, 1}, {1, 3}}) {
    PhysicalParams p{s0, a0};
    for (int l = 1; l <= 8; ++l) {
      for (int m : {1, -1}) {
        Eigen::Matrix2d jac;
        for (int col = 0; col < 2; ++col) {
          auto dz = col == 0 ? TorusField::mode(g, l, m, h) : TorusField::zero(g);
          auto dg = col == 1 ? TorusField::mode(g, l, -m, h) : TorusField::zero(g);
          auto [zp, gp] = rhs_wahlen(WahlenState(dz, dg), p);
          auto [zm, gm] = rhs_wahlen(WahlenState(-dz, -dg), p);
          // the block maps (ζ_{l,m}, γ_{l,-m}) to the parity-flipped pair
          jac(0, col) = (zp.coeff(l, -m) - zm.coeff(l, -m)) / (2.0 * h);
          jac(1, col) = (gp.coeff(l, m) - gm.coeff(l, m)) / (2.0 * h);
        }
        const auto blk = dynamic_block(l, m, p);
        worst = std::max(worst,
                         (jac - blk.mat).cwiseAbs().maxCoeff() / std::max(1.0, blk.mat.norm()));
      }
    }
    // (0,0): the projected flow's response to a mean perturbation vanishes,
    // matching the zero eigenvalue pair of its block
    WahlenState mean_pert(TorusField::constant(g, h), TorusField::zero(g));
    auto [zr, gr] = rhs_wahlen(mean_pert, p);
    worst = std::max(worst, std::max(zr.sup_norm(), gr.sup_norm()));
  }
  c.gate(worst <= 1e-6, "max block deviation " + fmt(worst) + " > 1e-6");
  c.note("max FD-vs-block deviation " + fmt(worst) +
         " over l <= 8, params (1,0),(1,1),(1,3); (0,0) pair neutral in both");
  return {6, "FD Jacobian matches dynamic blocks", c.pass, c.detail.str()};
}

// --- 7 -----------------------------------------------------------------
CriterionResult conservation() {
  Check c;
  {
    SpectralGrid g(128);
    PhysicalParams p{1.0, 1.0};
    const double eps = 1e-2;
    WahlenState w0(TorusField::harmonic_cos(g, 2, eps), TorusField::harmonic_sin(g, 2, eps));
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 5.0;
    cfg.monitor_every = 50;
    auto traj = simulate(w0, p, cfg);
    const auto& f = traj.samples.front().conserved;
    double dI = 0, dV = 0, dH = 0, dBx = 0, dBy = 0;
    for (const auto& s : traj.samples) {
      dI = std::max(dI, std::abs(s.conserved.momentum - f.momentum));
      dV = std::max(dV, std::abs(s.conserved.volume - f.volume));
      dH = std::max(dH, std::abs(s.conserved.energy - f.energy));
      dBx = std::max(dBx, std::abs(s.conserved.velocity.x - f.velocity.x));
      dBy = std::max(dBy, std::abs(s.conserved.velocity.y - f.velocity.y));
    }
    const double iscale = std::abs(f.momentum);
    c.gate(dI / iscale <= 1e-8, "momentum drift " + fmt(dI / iscale));
    c.gate(dV / f.volume <= 1e-8, "volume drift " + fmt(dV / f.volume));
    c.gate(dH / std::abs(f.energy) <= 1e-7, "energy drift " + fmt(dH / std::abs(f.energy)));
    c.note("rel drifts over T=5: I " + fmt(dI / iscale) + ", V " + fmt(dV / f.volume) + ", H " +
           fmt(dH / std::abs(f.energy)) + ", B " + fmt(std::max(dBx, dBy)));
  }
  {
    // dt-order of the energy drift: two halvings, with dt large enough that
    // the O(dt^4) part clears the dt-independent monitoring floor (the
    // truncated-expansion gradient inconsistency, ~||zeta||^{K+1})
    SpectralGrid g(32);
    PhysicalParams p{1.0, 1.0};
    WahlenState w0(TorusField::harmonic_cos(g, 2, 0.01), TorusField::harmonic_sin(g, 2, 0.01));
    std::vector<double> drifts;
    for (double dt : {4e-2, 2e-2, 1e-2}) {
      IntegratorConfig cfg;
      cfg.dt = dt;
      cfg.horizon = 1.0;
      cfg.monitor_every = 5;
      auto traj = simulate(w0, p, cfg);
      double dH = 0;
      for (const auto& s : traj.samples)
        dH = std::max(dH, std::abs(s.conserved.energy - traj.samples.front().conserved.energy));
      drifts.push_back(dH);
    }
    const double o1 = std::log2(drifts[0] / drifts[1]);
    const double o2 = std::log2(drifts[1] / drifts[2]);
    c.gate(o1 >= 3.3 && o2 >= 3.3,
           "drift orders " + fmt(o1) + ", " + fmt(o2) + " below O(dt^4)");
    c.note("drift halving orders " + fmt(o1) + ", " + fmt(o2));
  }
  {
    // dP/dt = B by adjacent-sample differences
    SpectralGrid g(64);
    PhysicalParams p{1.0, 1.0};
    std::mt19937_64 rng(2007);
    WahlenState w0(random_field(g, rng, 1e-2, 0.7, -1, false),
                   random_field(g, rng, 1e-2, 0.7, -1, true));
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 0.2;
    cfg.monitor_every = 1;
    auto traj = simulate(w0, p, cfg);
    double worst = 0.0;
    for (size_t k = 1; k + 1 < traj.samples.size(); ++k) {
      const double dt2 = traj.samples[k + 1].t - traj.samples[k - 1].t;
      const double dx =
          (traj.samples[k + 1].conserved.position.x - traj.samples[k - 1].conserved.position.x) /
          dt2;
      const double dy =
          (traj.samples[k + 1].conserved.position.y - traj.samples[k - 1].conserved.position.y) /
          dt2;
      worst = std::max({worst, std::abs(dx - traj.samples[k].conserved.velocity.x),
                        std::abs(dy - traj.samples[k].conserved.velocity.y)});
    }
    c.gate(worst <= 1e-5, "dP/dt vs B " + fmt(worst) + " > 1e-5");
    c.note("max |dP/dt - B| = " + fmt(worst));
  }
  return {7, "conservation drift, dt-order, barycenter law", c.pass, c.detail.str()};
}

// --- 8 -----------------------------------------------------------------
CriterionResult conjugacy() {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 1.0};
  std::mt19937_64 rng(2008);
  WahlenState w(random_field(g, rng, 8e-3, 0.7, -1, false),
                random_field(g, rng, 8e-3, 0.7, -1, true));
  NaturalState n = wahlen_forward(w, p);
  IntegratorConfig cfg;
  cfg.dt = 2e-3;
  for (int k = 0; k < 500; ++k) {
    w = step(w, p, cfg);
    n = step_natural(n, p, cfg);
  }
  auto mapped = wahlen_inverse(n, p);
  const double dz = (mapped.zeta - w.zeta).sup_norm();
  const double dg = (mapped.gamma - w.gamma).sup_norm();
  Check c;
  c.gate(dz <= 1e-7 && dg <= 1e-7, "trajectory gap " + fmt(std::max(dz, dg)) + " > 1e-7");
  c.note("sup gap after T=1: zeta " + fmt(dz) + ", gamma " + fmt(dg));
  return {8, "natural and Wahlen trajectories agree", c.pass, c.detail.str()};
}

// --- 9 -----------------------------------------------------------------
CriterionResult resonance_arithmetic() {
  Check c;
  PhysicalParams p0{1.0, 0.0};
  auto r = resonance_solve(2, 1, p0);
  const double want = 1.224744871391589;
  c.gate(r.omega_plus && std::abs(*r.omega_plus - want) <= 1e-12,
         "omega_plus " + fmt(r.omega_plus.value_or(0) - want));
  c.gate(r.omega_minus && std::abs(*r.omega_minus + want) <= 1e-12,
         "omega_minus " + fmt(r.omega_minus.value_or(0) + want));

  // Δ sign flips exactly at C = 1/24 for κℓ = 2
  bool flips = true;
  for (double s : {-1.0, 1.0}) {
    const double C = 1.0 / 24.0 + s * 1e-9;
    PhysicalParams q{C, 1.0};  // alpha0 = 1 so C = sigma0
    auto rr = resonance_solve(2, 1, q);
    flips = flips && rr.delta && ((*rr.delta > 0) == (s > 0));
  }
  PhysicalParams qc{1.0 / 24.0, 1.0};
  auto rc = resonance_solve(2, 1, qc);
  c.gate(flips && rc.delta && std::abs(*rc.delta) <= 1e-15, "Delta flip at C = 1/24");

  // κℓ = 1 collapse
  PhysicalParams p1{1.0, 1.0};
  auto r1 = resonance_solve(1, 1, p1);
  c.gate(r1.delta && *r1.delta == 0.0 && std::abs(*r1.omega_plus) <= 1e-15 &&
             std::abs(*r1.omega_minus) <= 1e-15,
         "kappa*l = 1 collapse");
  c.note("omega*(l=2) = ±" + fmt(*r.omega_plus) + "; Delta(C=1/24) = " + fmt(*rc.delta));
  return {9, "resonance arithmetic", c.pass, c.detail.str()};
}

// --- 10 ----------------------------------------------------------------
CriterionResult multiplicity_family() {
  PhysicalParams p{1.0, 4.0};
  auto rep = multiplicity_scan(0.0, p, 128);
  Check c;
  c.gate(rep.roots == std::vector<int>{1, 3}, "integer roots");
  c.gate(rep.multiplicity == 4, "multiplicity");
  c.note("roots {1,3}, multiplicity 4 at omega*=0, C=1/16 (implementer-derived family "
         "C=1/(4(n+1)))");
  return {10, "multiplicity-4 family", c.pass, c.detail.str()};
}

// --- 11 ----------------------------------------------------------------
CriterionResult transversality_values() {
  Check c;
  PhysicalParams p{1.0, 2.0};
  double worst = 0.0;
  for (int l : {2, 3, 5}) {
    const double om = p.alpha0 / 2.0 - p.alpha0 / (2.0 * l);
    worst = std::max(worst, std::abs(transversality(l, om, p)));
  }
  c.gate(worst <= 1e-15, "degenerate-frequency zero " + fmt(worst));
  PhysicalParams p0{1.0, 0.0};
  const double spot = transversality(2, std::sqrt(1.5), p0);
  c.gate(std::abs(spot + 1.9596) <= 1e-4, "spot value " + fmt(spot));
  c.note("zero at degenerate frequencies (max " + fmt(worst) + "), spot " + fmt(spot));
  return {11, "transversality", c.pass, c.detail.str()};
}

// --- 12 ----------------------------------------------------------------
CriterionResult rotating_wave_branch() {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 0.0};
  Check c;
  ContinuationConfig cfg;
  cfg.l = 2;
  std::vector<double> eps = {1e-3, 5e-4, 2.5e-4}, omegas;
  auto [v1, v2] = kernel_vectors(2, std::sqrt(1.5), p, g);
  (void)v2;
  for (double e : eps) {
    cfg.start = e;
    auto bp = newton_solve(cfg, p, g);
    omegas.push_back(bp.omega);
    c.gate(bp.iterations <= 8, "iterations " + std::to_string(bp.iterations));
    c.gate(bp.residual <= 1e-10, "residual " + fmt(bp.residual));
    auto dz = bp.state.zeta - v1.zeta * bp.epsilon;
    auto dg = bp.state.gamma - v1.gamma * bp.epsilon;
    const double dist = std::sqrt(dz.l2_norm() * dz.l2_norm() + dg.l2_norm() * dg.l2_norm());
    c.gate(dist <= 10.0 * e * e, "kernel distance " + fmt(dist) + " at eps " + fmt(e));
    c.gate((bp.state.zeta.reflect() - bp.state.zeta).sup_norm() <= 1e-10 &&
               (bp.state.gamma.reflect() + bp.state.gamma).sup_norm() <= 1e-10,
           "reflection invariance");
    auto cc = verify_cross_formulation(bp, p);
    c.gate(cc.residual_elevation <= 1e-9 && cc.residual_potential <= 1e-9,
           "natural residual " + fmt(std::max(cc.residual_elevation, cc.residual_potential)));
  }
  // second-order extrapolation of ω(ε) to ε = 0
  const double extrap = (8.0 * omegas[2] - 6.0 * omegas[1] + omegas[0]) / 3.0;
  c.gate(std::abs(extrap - std::sqrt(1.5)) <= 1e-6, "extrapolated omega " + fmt(extrap));
  c.note("omega(0) extrapolates to " + fmt(extrap) + " vs sqrt(3/2) = " + fmt(std::sqrt(1.5)));
  return {12, "rotating-wave branch", c.pass, c.detail.str()};
}

// --- 13 ----------------------------------------------------------------
CriterionResult hessian_spectrum_values() {
  Check c;
  std::mt19937_64 rng(2013);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int rep = 0; rep < 5; ++rep) {
    PhysicalParams q{u(rng), u(rng)};
    const double l10 = hessian_block(0, 0, q).mat(0, 0);
    c.gate(std::abs(l10 - (-q.sigma0 + q.alpha0 * q.alpha0 / 4.0)) <= 1e-15, "lambda1(0) exact");
    const double d1 = hessian_block(1, 1, q).mat.determinant();
    c.gate(std::abs(d1) <= 1e-12 * std::max(1.0, q.sigma0), "l=1 determinant " + fmt(d1));
  }
  for (double a0 : {0.0, 3.0}) {
    PhysicalParams p{1.0, a0};
    auto eigs = hessian_spectrum(p, 200);
    const double rp = eigs[200].lambda_plus / (200.0 * 200.0);
    const double rm = eigs[200].lambda_minus / 200.0;
    c.gate(std::abs(rp - p.sigma0) <= 0.02 * p.sigma0, "lambda+ asymptote " + fmt(rp));
    c.gate(std::abs(rm - p.sigma0) <= 0.02 * p.sigma0, "lambda- asymptote " + fmt(rm));
    c.note("alpha0=" + fmt(a0) + ": lambda+/l^2 = " + fmt(rp) + ", lambda-/l = " + fmt(rm));
  }
  return {13, "Hessian spectrum", c.pass, c.detail.str()};
}

// --- 14 ----------------------------------------------------------------
CriterionResult coercivity() {
  Check c;
  {
    PhysicalParams p{1.0, 3.0};  // C = 1/9
    auto r = constrained_coercivity(p, 64);
    // the unconstrained minimum is the exact l = 1 zero mode (lambda1(0) = +5/4
    // here since C < 1/4): non-coercive rather than strictly negative
    c.gate(r.unconstrained_min <= 1e-10, "unconstrained min " + fmt(r.unconstrained_min));
    auto eigs = hessian_spectrum(p, 2);
    const double gate = 0.1 * std::min(eigs[2].lambda_minus, eigs[2].lambda_plus);
    c.gate(r.constrained_min >= gate, "constrained min " + fmt(r.constrained_min) +
                                          " below 0.1 min lambda(2) = " + fmt(gate));
    c.note("(1,3): unconstrained " + fmt(r.unconstrained_min) + ", constrained " +
           fmt(r.constrained_min) + " >= " + fmt(gate));
  }
  {
    PhysicalParams p{1.0, 0.0};  // strictly negative volume direction
    auto r = constrained_coercivity(p, 64);
    c.gate(r.unconstrained_min <= -0.9, "irrotational unconstrained min " +
                                            fmt(r.unconstrained_min));
    c.gate(r.constrained_min > 0.0, "irrotational constrained min");
    c.note("(1,0): unconstrained " + fmt(r.unconstrained_min) + " < 0, constrained " +
           fmt(r.constrained_min) + " > 0");
  }
  return {14, "constrained coercivity", c.pass, c.detail.str()};
}

// --- 15 ----------------------------------------------------------------
CriterionResult stability_sampling() {
  Check c;
  double worst_re = 0.0;
  int logged = 0;
  for (double s0 : {0.5, 1.0, 2.0}) {
    for (double C : {0.25, 0.3, 0.5, 1.0}) {
      const double a0 = std::sqrt(s0 / C);
      auto spec = linear_spectrum({s0, a0}, 64);
      for (const auto& m : spec) worst_re = std::max(worst_re, std::abs(m.lambda_plus.real()));
    }
    auto spec0 = linear_spectrum({s0, 0.0}, 64);
    for (const auto& m : spec0) worst_re = std::max(worst_re, std::abs(m.lambda_plus.real()));
  }
  // below the gate: violations are logged, not failed
  for (double C : {0.05, 0.02}) {
    auto spec = linear_spectrum({1.0, std::sqrt(1.0 / C)}, 64);
    for (const auto& m : spec)
      if (std::abs(m.lambda_plus.real()) > 1e-10) ++logged;
  }
  c.gate(worst_re <= 1e-10, "max |Re lambda| " + fmt(worst_re) + " on C >= 1/4");
  c.note("max |Re lambda| = " + fmt(worst_re) + " on the C >= 1/4 grid; " +
         std::to_string(logged) + " real-pair modes logged at C in {0.05, 0.02} (not failed)");
  return {15, "linear stability sampling", c.pass, c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& progress) {
  using Fn = std::function<CriterionResult()>;
  const std::vector<Fn> criteria = {
      dn_multiplier_exactness, dn_taylor_vs_oracle,     dn_operator_properties,
      gradient_check,          equilibrium,             linearization_consistency,
      conservation,            conjugacy,               resonance_arithmetic,
      multiplicity_family,     transversality_values,   rotating_wave_branch,
      hessian_spectrum_values, coercivity,              stability_sampling,
  };
  std::vector<CriterionResult> results;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto r = criteria[i]();
    progress << "[" << std::setw(2) << r.id << "/15] " << (r.pass ? "PASS" : "FAIL") << "  "
             << r.name << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n"
             << std::flush;
    results.push_back(std::move(r));
  }
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  progress << (failed == 0 ? "all 15 criteria passed"
                           : std::to_string(failed) + " of 15 criteria FAILED")
           << "\n";
  return results;
}

}  // namespace dropwave
