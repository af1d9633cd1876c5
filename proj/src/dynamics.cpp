#include "dropwave/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dropwave {

namespace {

TorusField exp_scaled(const TorusField& f, double k) {
  return map_pointwise(f, [k](double x) { return std::exp(k * x); });
}

void check_finite_pair(const std::pair<TorusField, TorusField>& f) {
  // construction already rejects non-finite values; this guards NaN-free math
  (void)f;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("integrator: dt must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("integrator: horizon must be positive");
  if (monitor_every < 1) throw std::invalid_argument("integrator: monitor_every must be >= 1");
}

std::pair<TorusField, TorusField> rhs_natural(const NaturalState& s, const PhysicalParams& p,
                                              const DnMethod& dn) {
  p.validate();
  require_small(s.xi, dn.smallness > 0.0 ? dn.smallness : kDefaultSmallness);
  const auto& xi = s.xi;
  const auto& chi = s.chi;
  const double s0 = p.sigma0, a0 = p.alpha0;

  const auto Gchi = dn_apply(xi, chi, dn);
  const auto xid = xi.derivative();
  const auto chid = chi.derivative();
  const auto em2 = exp_scaled(xi, -2.0);
  const auto e2 = exp_scaled(xi, 2.0);

  const auto xi_dot = multiply(em2, Gchi + multiply(e2, xid) * (a0 / 2.0));

  const auto bsq = map_pointwise(Gchi + multiply(xid, chid), xid, [](double num, double xp) {
    const double b = num / std::sqrt(1.0 + xp * xp);
    return b * b;
  });
  const auto slope = map_pointwise(xid, [](double xp) { return xp / std::sqrt(1.0 + xp * xp); });
  const auto cap = map_pointwise(xi, xid, [](double x, double xp) {
                     return std::exp(x) / std::sqrt(1.0 + xp * xp);
                   });
  const auto bracket =
      bsq * 0.5 - multiply(chid, chid) * 0.5 + (multiply(exp_scaled(xi, 1.0), slope.derivative()) - cap) * s0;
  const auto Kchi = conjugate_trace(xi, chi, dn);
  const auto chi_dot = multiply(em2, bracket) + chid * (a0 / 2.0) + e2 * (a0 * a0 / 8.0) +
                       Kchi * a0 + TorusField::constant(xi.grid(), s0 - a0 * a0 / 8.0);
  return {xi_dot, chi_dot};
}

std::pair<TorusField, TorusField> rhs_wahlen(const WahlenState& s, const PhysicalParams& p,
                                             const DnMethod& dn) {
  p.validate();
  require_small(s.zeta, dn.smallness > 0.0 ? dn.smallness : kDefaultSmallness);
  auto [dz, dg] = grad_hamiltonian_wahlen(s, p, dn);
  const auto em2 = exp_scaled(s.zeta, -2.0);
  auto zeta_dot = multiply(em2, dg);
  auto gamma_dot = (-multiply(em2, dz)).zero_mean();
  return {std::move(zeta_dot), std::move(gamma_dot)};
}

namespace {

using Rhs = std::function<std::pair<TorusField, TorusField>(const TorusField&, const TorusField&)>;

std::pair<TorusField, TorusField> rk4_step(const TorusField& a, const TorusField& b, double dt,
                                           const Rhs& f) {
  auto [k1a, k1b] = f(a, b);
  auto [k2a, k2b] = f(a + k1a * (dt / 2), b + k1b * (dt / 2));
  auto [k3a, k3b] = f(a + k2a * (dt / 2), b + k2b * (dt / 2));
  auto [k4a, k4b] = f(a + k3a * dt, b + k3b * dt);
  return {a + (k1a + k2a * 2.0 + k3a * 2.0 + k4a) * (dt / 6.0),
          b + (k1b + k2b * 2.0 + k3b * 2.0 + k4b) * (dt / 6.0)};
}

std::pair<TorusField, TorusField> midpoint_step(const TorusField& a, const TorusField& b,
                                                double dt, const Rhs& f, double tol,
                                                int max_iter) {
  TorusField ma = a, mb = b;
  for (int it = 0; it < max_iter; ++it) {
    auto [fa, fb] = f(ma, mb);
    auto na = a + fa * (dt / 2.0);
    auto nb = b + fb * (dt / 2.0);
    const double delta = (na - ma).sup_norm() + (nb - mb).sup_norm();
    ma = na;
    mb = nb;
    if (delta <= tol) {
      auto [ga, gb] = f(ma, mb);
      return {a + ga * dt, b + gb * dt};
    }
  }
  throw std::runtime_error("implicit midpoint: fixed point did not converge");
}

}  // namespace

WahlenState step(const WahlenState& s, const PhysicalParams& p, const IntegratorConfig& cfg) {
  cfg.validate();
  Rhs f = [&](const TorusField& z, const TorusField& g) {
    return rhs_wahlen(WahlenState(z, g), p, cfg.dn);
  };
  auto [z, g] = cfg.scheme == IntegratorConfig::Scheme::rk4
                    ? rk4_step(s.zeta, s.gamma, cfg.dt, f)
                    : midpoint_step(s.zeta, s.gamma, cfg.dt, f, cfg.midpoint_tol,
                                    cfg.midpoint_max_iter);
  check_finite_pair({z, g});
  return WahlenState(std::move(z), std::move(g));
}

NaturalState step_natural(const NaturalState& s, const PhysicalParams& p,
                          const IntegratorConfig& cfg) {
  cfg.validate();
  Rhs f = [&](const TorusField& x, const TorusField& c) {
    return rhs_natural(NaturalState{x, c}, p, cfg.dn);
  };
  auto [x, c] = cfg.scheme == IntegratorConfig::Scheme::rk4
                    ? rk4_step(s.xi, s.chi, cfg.dt, f)
                    : midpoint_step(s.xi, s.chi, cfg.dt, f, cfg.midpoint_tol,
                                    cfg.midpoint_max_iter);
  return NaturalState{std::move(x), std::move(c)};
}

Trajectory simulate(const WahlenState& initial, const PhysicalParams& p,
                    const IntegratorConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  WahlenState s = initial;
  const long nsteps = std::lround(cfg.horizon / cfg.dt);
  traj.samples.push_back({0.0, s, conserved_set(s, p, cfg.dn)});
  for (long k = 1; k <= nsteps; ++k) {
    s = step(s, p, cfg);
    const double norm = s.zeta.w1inf_norm();
    if (norm >= cfg.smallness) {
      throw std::runtime_error("simulate: trajectory left the nearly-circular regime at t = " +
                               std::to_string(k * cfg.dt));
    }
    if (k % cfg.monitor_every == 0 || k == nsteps) {
      traj.samples.push_back({k * cfg.dt, s, conserved_set(s, p, cfg.dn)});
    }
  }
  return traj;
}

void Trajectory::write_csv(std::ostream& os, const std::string& preamble) const {
  if (!preamble.empty()) os << preamble;
  if (samples.empty()) return;
  const auto& g = samples.front().state.zeta.grid();
  os << "t";
  auto emit_header = [&os, &g](const char* tag) {
    os << "," << tag << "_0_0";
    for (int l = 1; l <= g.cutoff(); ++l) {
      os << "," << tag << "_" << l << "_c";
      if (l < g.cutoff()) os << "," << tag << "_" << l << "_s";
    }
  };
  emit_header("zeta");
  emit_header("gamma");
  os << ",H,I,V,Bx,By,Px,Py\n";
  os.precision(17);
  for (const auto& s : samples) {
    os << s.t;
    auto emit = [&os, &g](const TorusField& f) {
      os << "," << f.coeff(0, 0);
      for (int l = 1; l <= g.cutoff(); ++l) {
        os << "," << f.coeff(l, 1);
        if (l < g.cutoff()) os << "," << f.coeff(l, -1);
      }
    };
    emit(s.state.zeta);
    emit(s.state.gamma);
    os << "," << s.conserved.energy << "," << s.conserved.momentum << "," << s.conserved.volume
       << "," << s.conserved.velocity.x << "," << s.conserved.velocity.y << ","
       << s.conserved.position.x << "," << s.conserved.position.y << "\n";
  }
}

}  // namespace dropwave
