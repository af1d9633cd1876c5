#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dropwave/dynamics.hpp"
#include "dropwave/waves.hpp"
#include "test_helpers.hpp"

using namespace dropwave;
using dropwave::testing::random_field;

TEST_CASE("trivial branch is an exact zero for every omega and vorticity") {
  SpectralGrid g(64);
  for (double a0 : {0.0, 2.0}) {
    PhysicalParams p{1.0, a0};
    WahlenState zero(TorusField::zero(g), TorusField::zero(g));
    for (double om : {0.0, 0.7, -1.3}) {
      auto [r1, r2] = residual_F(om, zero, p);
      CHECK(r1.sup_norm() <= 1e-13);
      CHECK(r2.sup_norm() <= 1e-13);
    }
  }
}

TEST_CASE("residual equivariance under rotation") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 1.0};
  std::mt19937_64 rng(71);
  WahlenState u(random_field(g, rng, 0.03), random_field(g, rng, 0.03, 0.7, -1, true));
  const double om = 0.4, al = 0.77;
  auto [r1, r2] = residual_F(om, u, p);
  WahlenState tu(u.zeta.translate(al), u.gamma.translate(al));
  auto [t1, t2] = residual_F(om, tu, p);
  CHECK((t1 - r1.translate(al)).l2_norm() <= 1e-10 * std::max(1.0, r1.l2_norm()));
  CHECK((t2 - r2.translate(al)).l2_norm() <= 1e-10 * std::max(1.0, r2.l2_norm()));
}

TEST_CASE("directional derivative of the residual matches the blocks") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 1.5};
  auto res = resonance_solve(2, 1, p);
  REQUIRE(res.omega_plus.has_value());
  const double om = *res.omega_plus;
  const double h = 1e-6;
  WahlenState zero(TorusField::zero(g), TorusField::zero(g));
  for (int l : {1, 2, 3, 5}) {
    for (int m : {1, -1}) {
      Eigen::Matrix2d jac;
      for (int col = 0; col < 2; ++col) {
        auto dz = TorusField::zero(g);
        auto dg = TorusField::zero(g);
        if (col == 0) dz = TorusField::mode(g, l, m, h);
        else dg = TorusField::mode(g, l, -m, h);
        auto [p1, p2] = residual_F(om, WahlenState(dz, dg), p);
        auto [m1, m2] = residual_F(om, WahlenState(-dz, -dg), p);
        jac(0, col) = (p1.coeff(l, m) - m1.coeff(l, m)) / (2.0 * h);
        jac(1, col) = (p2.coeff(l, -m) - m2.coeff(l, -m)) / (2.0 * h);
      }
      auto blk = block_Lomega(l, m, om, p);
      CHECK((jac - blk.mat).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, blk.mat.norm()));
    }
  }
}

TEST_CASE("newton converges on the irrotational l=2 branch") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 0.0};
  ContinuationConfig cfg;
  cfg.l = 2;
  cfg.start = 1e-3;

  auto bp = newton_solve(cfg, p, g);
  CHECK(bp.iterations <= 8);
  CHECK(bp.residual <= 1e-10);
  CHECK(bp.epsilon == doctest::Approx(1e-3).epsilon(1e-10));

  // ||u - eps v|| <= C eps^2
  auto [v1, v2] = kernel_vectors(2, std::sqrt(1.5), p, g);
  (void)v2;
  auto dz = bp.state.zeta - v1.zeta * bp.epsilon;
  auto dg = bp.state.gamma - v1.gamma * bp.epsilon;
  CHECK(std::sqrt(dz.l2_norm() * dz.l2_norm() + dg.l2_norm() * dg.l2_norm()) <=
        10.0 * bp.epsilon * bp.epsilon);

  // reflection invariance: ζ even, γ odd by construction
  CHECK((bp.state.zeta.reflect() - bp.state.zeta).sup_norm() <= 1e-12);
  CHECK((bp.state.gamma.reflect() + bp.state.gamma).sup_norm() <= 1e-12);

  // 2-fold symmetry
  CHECK(bp.state.zeta.kappa_fold(2));
  CHECK(bp.state.gamma.kappa_fold(2));

  // natural-coordinate displays hold at the solution
  auto cc = verify_cross_formulation(bp, p);
  CHECK(cc.residual_elevation <= 1e-9);
  CHECK(cc.residual_potential <= 1e-9);
}

TEST_CASE("frequency limit and phase flip along the branch") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 0.0};
  ContinuationConfig cfg;
  cfg.l = 2;

  std::vector<double> eps = {1e-3, 5e-4, 2.5e-4};
  std::vector<double> omegas;
  for (double e : eps) {
    cfg.start = e;
    omegas.push_back(newton_solve(cfg, p, g).omega);
  }
  // ω(ε) − ω* = O(ε): Richardson extrapolation lands on √(3/2)
  const double om_star = std::sqrt(1.5);
  const double extrap = 2.0 * omegas[1] - omegas[0];
  CHECK(std::abs(extrap - om_star) <= 5.0 * std::abs(omegas[0] - om_star) / 4.0);
  CHECK(std::abs(omegas[2] - om_star) < std::abs(omegas[0] - om_star));

  // branch через −ε is the half-period phase flip of the +ε branch
  cfg.start = -1e-3;
  auto minus = newton_solve(cfg, p, g);
  cfg.start = 1e-3;
  auto plus = newton_solve(cfg, p, g);
  const double shift = M_PI / 2.0;  // π/ℓ at ℓ = 2
  CHECK((minus.state.zeta - plus.state.zeta.translate(shift)).sup_norm() <= 1e-10);
  CHECK((minus.state.gamma - plus.state.gamma.translate(shift)).sup_norm() <= 1e-10);
  CHECK(minus.omega == doctest::Approx(plus.omega).epsilon(1e-10));
}

TEST_CASE("branch continuation in amplitude and momentum") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 0.0};
  ContinuationConfig cfg;
  cfg.l = 2;
  cfg.start = 5e-4;
  cfg.stop = 4e-3;
  cfg.steps = 4;

  auto branch = continue_branch(cfg, p, g);
  REQUIRE(branch.size() == 5);
  // momentum is monotone in ε near zero when the reduced coefficient is positive
  CHECK(reduced_momentum_coeff(2, std::sqrt(1.5), p) > 0.0);
  for (size_t i = 1; i < branch.size(); ++i)
    CHECK(branch[i].conserved.momentum > branch[i - 1].conserved.momentum);

  // momentum-parametrized continuation hits the targets
  ContinuationConfig mcfg;
  mcfg.l = 2;
  mcfg.parametrization = ContinuationConfig::Parametrization::angular_momentum;
  const double target = branch[2].conserved.momentum;
  mcfg.start = target;
  auto mp = newton_solve(mcfg, p, g);
  CHECK(std::abs(angular_momentum(mp.state) - target) <= 1e-9);

  std::ostringstream os;
  write_branch_csv(branch, os, 4, "# branch\n");
  CHECK(os.str().find("epsilon,omega") != std::string::npos);
  auto meta = branch_metadata_json(cfg, p, "cafe", "0.1.0");
  CHECK(meta.find("amplitude") != std::string::npos);
}

TEST_CASE("a converged wave rotates rigidly under the flow") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 0.0};
  ContinuationConfig cfg;
  cfg.l = 2;
  cfg.start = 1e-3;
  auto bp = newton_solve(cfg, p, g);

  IntegratorConfig icfg;
  icfg.dt = 1e-3;
  icfg.horizon = 1.0;
  icfg.monitor_every = 1000;
  auto traj = simulate(bp.state, p, icfg);
  const auto& last = traj.samples.back();
  const double rot = bp.omega * last.t;
  CHECK((last.state.zeta - bp.state.zeta.translate(rot)).sup_norm() <= 1e-6);
  CHECK((last.state.gamma - bp.state.gamma.translate(rot)).sup_norm() <= 1e-6);
  // conserved quantities stay put along the orbit
  CHECK(std::abs(last.conserved.momentum - bp.conserved.momentum) <= 1e-10);
  CHECK(std::abs(last.conserved.energy - bp.conserved.energy) <= 1e-9);
}

TEST_CASE("rotating waves with vorticity verify in both formulations") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 1.0};  // C = 1 >= 1/24: all modes resonate
  ContinuationConfig cfg;
  cfg.l = 2;
  cfg.start = 1e-3;
  auto bp = newton_solve(cfg, p, g);
  CHECK(bp.residual <= 1e-10);
  auto cc = verify_cross_formulation(bp, p);
  CHECK(cc.residual_elevation <= 1e-9);
  CHECK(cc.residual_potential <= 1e-9);

  // negative-sign frequency branch too
  ContinuationConfig neg = cfg;
  neg.omega_positive = false;
  auto bn = newton_solve(neg, p, g);
  CHECK(bn.residual <= 1e-10);
  CHECK(bn.omega < bp.omega);
}

TEST_CASE("low-order evaluator degrades the cross-check at third order") {
  // Solving with a low-order expansion and verifying against the
  // higher-fidelity displays leaves an O(eps^3) defect; the sweep documents it.
  SpectralGrid g(64);
  PhysicalParams p{1.0, 0.0};
  std::vector<double> eps = {2e-2, 1e-2, 5e-3}, defects;
  for (double e : eps) {
    ContinuationConfig cfg;
    cfg.l = 2;
    cfg.start = e;
    cfg.dn = DnMethod::taylor(1);
    auto bp = newton_solve(cfg, p, g);
    CHECK(bp.residual <= 1e-10);  // converged in its own discretization
    auto cc = verify_cross_formulation(bp, p, DnMethod::taylor(6));
    defects.push_back(std::max(cc.residual_elevation, cc.residual_potential));
  }
  CHECK(defects[0] > 1e-8);  // well above the Newton tolerance
  const double slope = std::log(defects[0] / defects[2]) / std::log(eps[0] / eps[2]);
  CHECK(slope >= 2.5);
  CHECK(slope <= 3.8);
}

TEST_CASE("cross-formulation residual within ten Newton tolerances") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 1.0};
  ContinuationConfig cfg;
  cfg.l = 2;
  cfg.start = 1e-3;
  auto bp = newton_solve(cfg, p, g);
  auto cc = verify_cross_formulation(bp, p);
  CHECK(cc.residual_elevation <= 10.0 * cfg.newton_tol);
  CHECK(cc.residual_potential <= 10.0 * cfg.newton_tol);
}

TEST_CASE("error paths") {
  SpectralGrid g(64);
  PhysicalParams weak{0.01, 1.0};  // Δ < 0 at l = 2
  ContinuationConfig cfg;
  cfg.l = 2;
  cfg.start = 1e-3;
  CHECK_THROWS_AS(newton_solve(cfg, weak, g), std::invalid_argument);

  PhysicalParams p{1.0, 0.0};
  ContinuationConfig bad = cfg;
  bad.newton_tol = 1e-18;  // unreachable
  bad.max_iterations = 2;
  CHECK_THROWS_AS(newton_solve(bad, p, g), std::runtime_error);
}
