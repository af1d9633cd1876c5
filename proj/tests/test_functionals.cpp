#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dropwave/functionals.hpp"
#include "test_helpers.hpp"

using namespace dropwave;
using dropwave::testing::random_field;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

WahlenState random_state(const SpectralGrid& g, std::mt19937_64& rng, double amp) {
  auto zeta = random_field(g, rng, amp);
  auto gamma = random_field(g, rng, amp, 0.7, -1, true);
  return WahlenState(zeta, gamma);
}

// directional FD of a scalar functional with a step sweep; returns best match
double fd_directional(const std::function<double(const WahlenState&)>& f, const WahlenState& w,
                      const TorusField& dz, const TorusField& dg) {
  double best = std::numeric_limits<double>::infinity();
  double best_val = 0.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (double h : {1e-4, 1e-5, 1e-6}) {
    WahlenState plus(w.zeta + dz * h, w.gamma + dg * h);
    WahlenState minus(w.zeta - dz * h, w.gamma - dg * h);
    double val = (f(plus) - f(minus)) / (2.0 * h);
    if (!std::isnan(prev) && std::abs(val - prev) < best) {
      best = std::abs(val - prev);
      best_val = val;
    }
    if (std::isnan(prev)) best_val = val;
    prev = val;
  }
  return best_val;
}
}  // namespace

TEST_CASE("physical params") {
  CHECK_THROWS(PhysicalParams{-1.0, 0.0}.validate());
  PhysicalParams p{1.0, 4.0};
  CHECK(p.modified_bond() == doctest::Approx(1.0 / 16.0));
  CHECK_THROWS(PhysicalParams{1.0, 0.0}.modified_bond());
}

TEST_CASE("hamiltonian at the rotating circle") {
  SpectralGrid g(64);
  WahlenState zero(TorusField::zero(g), TorusField::zero(g));
  for (double a0 : {0.0, 1.0, 3.0}) {
    PhysicalParams p{1.0, a0};
    const double want = kPi * p.sigma0 + 3.0 / 16.0 * kPi * a0 * a0;
    CHECK(hamiltonian_wahlen(zero, p) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("hamiltonian invariances") {
  SpectralGrid g(64);
  std::mt19937_64 rng(11);
  PhysicalParams p{1.0, 1.5};
  auto w = random_state(g, rng, 0.04);
  const double h0 = hamiltonian_wahlen(w, p);

  // torus action
  WahlenState t(w.zeta.translate(0.9123), w.gamma.translate(0.9123));
  CHECK(std::abs(hamiltonian_wahlen(t, p) - h0) <= 1e-10 * std::max(1.0, std::abs(h0)));

  // potential shift acts on the natural chi
  auto nat = wahlen_forward(w, p);
  NaturalState shifted{nat.xi, nat.chi + TorusField::constant(g, 0.37)};
  CHECK(std::abs(hamiltonian_natural(shifted, p) - hamiltonian_natural(nat, p)) <=
        1e-10 * std::max(1.0, std::abs(h0)));

  // reflection (ζ,γ) -> (ζ(-θ), -γ(-θ))
  WahlenState r(w.zeta.reflect(), -w.gamma.reflect());
  CHECK(std::abs(hamiltonian_wahlen(r, p) - h0) <= 1e-10 * std::max(1.0, std::abs(h0)));

  // momentum and volume share the invariances
  CHECK(angular_momentum(t) == doctest::Approx(angular_momentum(w)).epsilon(1e-10));
  CHECK(angular_momentum(r) == doctest::Approx(angular_momentum(w)).epsilon(1e-10));
  CHECK(drop_volume(t.zeta) == doctest::Approx(drop_volume(w.zeta)).epsilon(1e-12));
}

TEST_CASE("wahlen change of coordinates") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 2.0};

  // zeta = 0: chi = gamma
  WahlenState w0(TorusField::zero(g), TorusField::harmonic_sin(g, 2, 0.3));
  auto n0 = wahlen_forward(w0, p);
  CHECK((n0.chi - w0.gamma).sup_norm() <= 1e-14);

  // Q(eps cos) = (alpha0 eps / 2) sin + O(eps^2)
  const double eps = 1e-4;
  auto q = wahlen_shear(TorusField::harmonic_cos(g, 1, eps), p);
  auto lead = TorusField::harmonic_sin(g, 1, p.alpha0 * eps / 2.0);
  CHECK((q - lead).sup_norm() <= 10.0 * eps * eps);

  // round trip identity on the zero-mean-gamma slice
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 5; ++rep) {
    auto w = random_state(g, rng, 0.05);
    auto back = wahlen_inverse(wahlen_forward(w, p), p);
    CHECK((back.zeta - w.zeta).l2_norm() <= 1e-12);
    CHECK((back.gamma - w.gamma).l2_norm() <= 1e-12);
  }
}

TEST_CASE("gradients against finite differences") {
  SpectralGrid g(48);
  std::mt19937_64 rng(29);
  PhysicalParams p{1.0, 1.0};

  for (int rep = 0; rep < 3; ++rep) {
    auto w = random_state(g, rng, 0.03);
    auto dz = random_field(g, rng, 1.0);
    auto dg = random_field(g, rng, 1.0, 0.7, -1, true);

    auto [hz, hg] = grad_hamiltonian_wahlen(w, p);
    const double lin = inner(hz, dz) + inner(hg, dg);
    const double fd = fd_directional(
        [&](const WahlenState& s) { return hamiltonian_wahlen(s, p); }, w, dz, dg);
    CHECK(std::abs(lin - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));

    auto [iz, ig] = grad_angular_momentum(w);
    const double lin_i = inner(iz, dz) + inner(ig, dg);
    const double fd_i =
        fd_directional([&](const WahlenState& s) { return angular_momentum(s); }, w, dz, dg);
    CHECK(std::abs(lin_i - fd_i) <= 1e-6 * std::max(1.0, std::abs(fd_i)));

    const double lin_v = inner(grad_volume_zeta(w.zeta), dz);
    const double fd_v =
        fd_directional([&](const WahlenState& s) { return drop_volume(s.zeta); }, w, dz, dg);
    CHECK(std::abs(lin_v - fd_v) <= 1e-6 * std::max(1.0, std::abs(fd_v)));
  }
}

TEST_CASE("gradient at the rotating circle and equivariance") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 2.0};
  WahlenState zero(TorusField::zero(g), TorusField::zero(g));
  auto [hz, hg] = grad_hamiltonian_wahlen(zero, p);
  // ∂_γ vanishes; ∂_ζ is the constant α₀²/4 (killed by the Poisson tensor)
  CHECK(hg.sup_norm() <= 1e-12);
  CHECK(hz.zero_mean().sup_norm() <= 1e-12);
  CHECK(hz.mean() == doctest::Approx(p.alpha0 * p.alpha0 / 4.0).epsilon(1e-12));

  std::mt19937_64 rng(31);
  auto w = random_state(g, rng, 0.04);
  const double al = 1.234;
  auto [gz, gg] = grad_hamiltonian_wahlen(w, p);
  WahlenState tw(w.zeta.translate(al), w.gamma.translate(al));
  auto [tz, tg] = grad_hamiltonian_wahlen(tw, p);
  CHECK((tz - gz.translate(al)).l2_norm() <= 1e-10 * std::max(1.0, gz.l2_norm()));
  CHECK((tg - gg.translate(al)).l2_norm() <= 1e-10 * std::max(1.0, gg.l2_norm()));
}

TEST_CASE("conserved quantities") {
  SpectralGrid g(64);
  PhysicalParams p{1.0, 2.0};
  WahlenState zero(TorusField::zero(g), TorusField::zero(g));
  auto c = conserved_set(zero, p);
  CHECK(c.momentum == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(c.volume == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(std::abs(c.velocity.x) <= 1e-13);
  CHECK(std::abs(c.velocity.y) <= 1e-13);
  CHECK(std::abs(c.position.x) <= 1e-13);
  CHECK(std::abs(c.position.y) <= 1e-13);

  // Ī(ε cos θ, sin θ) = −π I₁(2ε): quadrature against the Bessel series
  for (double eps : {1e-3, 1e-2}) {
    WahlenState w(TorusField::harmonic_cos(g, 1, eps), TorusField::harmonic_sin(g, 1));
    const double want = -kPi * std::cyl_bessel_i(1, 2.0 * eps);
    CHECK(angular_momentum(w) == doctest::Approx(want).epsilon(1e-12));
    CHECK(std::abs(angular_momentum(w) + kPi * eps) <= 4.0 * eps * eps);
  }

  // 𝒫(ε cos θ) = ((2/3)π I₁(3ε), 0) ≈ (πε, 0)
  for (double eps : {1e-3, 1e-2}) {
    auto pos = barycenter_position(TorusField::harmonic_cos(g, 1, eps));
    CHECK(pos.x ==
          doctest::Approx(2.0 / 3.0 * kPi * std::cyl_bessel_i(1, 3.0 * eps)).epsilon(1e-12));
    CHECK(std::abs(pos.x - kPi * eps) <= 10.0 * eps * eps);
    CHECK(std::abs(pos.y) <= 1e-14);
  }
}

TEST_CASE("wahlen hamiltonian is the composition") {
  SpectralGrid g(64);
  PhysicalParams p{1.3, 0.8};
  std::mt19937_64 rng(37);
  auto w = random_state(g, rng, 0.04);
  const double direct = hamiltonian_wahlen(w, p);
  const double composed = hamiltonian_natural(wahlen_forward(w, p), p);
  CHECK(std::abs(direct - composed) <= 1e-11 * std::max(1.0, std::abs(composed)));
}

TEST_CASE("curvature") {
  SpectralGrid g(64);
  auto one = curvature(TorusField::zero(g));
  CHECK((one - TorusField::constant(g, 1.0)).sup_norm() <= 1e-13);

  for (double r : {0.5, 2.0}) {
    auto c = curvature(TorusField::constant(g, std::log(r)));
    CHECK((c - TorusField::constant(g, 1.0 / r)).sup_norm() <= 1e-13 / std::min(1.0, r));
  }

  // geometric oracle: finite-difference curvature of θ ↦ e^{ξ}(cos θ, sin θ)
  const double eps = 1e-3;
  auto xi = TorusField::harmonic_cos(g, 1, eps);
  auto kappa = curvature(xi);
  const int fine = 1 << 14;
  const double h = 2.0 * kPi / fine;
  auto radius = [&](double th) { return std::exp(eps * std::cos(th)); };
  for (int j = 0; j < g.size(); j += 7) {
    const double th = g.node(j);
    auto px = [&](double t) { return radius(t) * std::cos(t); };
    auto py = [&](double t) { return radius(t) * std::sin(t); };
    const double xp = (px(th + h) - px(th - h)) / (2 * h);
    const double yp = (py(th + h) - py(th - h)) / (2 * h);
    const double xpp = (px(th + h) - 2 * px(th) + px(th - h)) / (h * h);
    const double ypp = (py(th + h) - 2 * py(th) + py(th - h)) / (h * h);
    const double want = (xp * ypp - yp * xpp) / std::pow(xp * xp + yp * yp, 1.5);
    CHECK(kappa.value(j) == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("smallness guard") {
  SpectralGrid g(32);
  CHECK_THROWS_AS(require_small(TorusField::harmonic_cos(g, 1, 0.2)), std::domain_error);
  CHECK_NOTHROW(require_small(TorusField::harmonic_cos(g, 1, 0.01)));
}
