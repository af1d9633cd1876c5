#include "dropwave/functionals.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dropwave {

namespace {

TorusField exp_scaled(const TorusField& f, double k) {
  return map_pointwise(f, [k](double x) { return std::exp(k * x); });
}

}  // namespace

double PhysicalParams::modified_bond() const {
  if (alpha0 == 0.0) throw std::domain_error("modified Bond number undefined at alpha0 = 0");
  return sigma0 / (alpha0 * alpha0);
}

void PhysicalParams::validate() const {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
  if (!std::isfinite(alpha0)) throw std::invalid_argument("alpha0 must be finite");
}

WahlenState::WahlenState(TorusField zeta_, TorusField gamma_)
    : zeta(std::move(zeta_)), gamma(gamma_.zero_mean()) {}

void require_small(const TorusField& elevation, double delta0) {
  const double n = elevation.w1inf_norm();
  if (n >= delta0) {
    std::ostringstream os;
    os << "state outside the nearly-circular regime: ||elevation||_{W^{1,inf}} = " << n
       << " >= " << delta0;
    throw std::domain_error(os.str());
  }
}

TorusField wahlen_shear(const TorusField& zeta, const PhysicalParams& p) {
  return exp_scaled(zeta, 2.0).antiderivative_zero_mean() * (p.alpha0 / 4.0);
}

NaturalState wahlen_forward(const WahlenState& w, const PhysicalParams& p) {
  return {w.zeta, w.gamma + wahlen_shear(w.zeta, p)};
}

WahlenState wahlen_inverse(const NaturalState& n, const PhysicalParams& p) {
  return WahlenState(n.xi, n.chi - wahlen_shear(n.xi, p));
}

double hamiltonian_natural(const NaturalState& s, const PhysicalParams& p, const DnMethod& dn) {
  p.validate();
  const auto& xi = s.xi;
  const auto& chi = s.chi;
  const double s0 = p.sigma0, a0 = p.alpha0;

  const auto Gchi = dn_apply(xi, chi, dn);
  const auto xid = xi.derivative();
  const auto chid = chi.derivative();

  const double kinetic = 0.5 * integrate_product(chi, Gchi);
  const auto arc = map_pointwise(xi, xid, [](double x, double xp) {
    return std::exp(x) * std::sqrt(1.0 + xp * xp);
  });
  const double area_term = integrate(arc);
  const auto e2 = exp_scaled(xi, 2.0);
  const double volume2 = 0.5 * integrate(e2);
  const double swirl = integrate_product(e2, chid);
  const double quartic = integrate(exp_scaled(xi, 4.0));

  return kinetic + s0 * area_term - (s0 - a0 * a0 / 8.0) * volume2 - (a0 / 4.0) * swirl +
         (a0 * a0 / 32.0) * quartic;
}

double hamiltonian_wahlen(const WahlenState& w, const PhysicalParams& p, const DnMethod& dn) {
  return hamiltonian_natural(wahlen_forward(w, p), p, dn);
}

// ∂_ξℋ and ∂_χℋ in natural coordinates, from the closed-form partials:
//   ∂_ξℋ = ∂_ξℋ₀ + (α₀²/8)e^{2ξ} − (α₀/2)e^{2ξ}χ' + (α₀²/8)e^{4ξ}
//   ∂_χℋ = Ḡ(ξ)χ + (α₀/2)e^{2ξ}ξ'
// with ∂_ξℋ₀ = −½((Ḡχ+ξ'χ')/√(1+ξ'²))² + ½χ'² − σ₀(e^ξ[ξ'/√(1+ξ'²)]' − e^ξ/√(1+ξ'²)) − σ₀e^{2ξ}.
std::pair<TorusField, TorusField> grad_hamiltonian_natural(const NaturalState& s,
                                                           const PhysicalParams& p,
                                                           const DnMethod& dn) {
  p.validate();
  const auto& xi = s.xi;
  const auto& chi = s.chi;
  const double s0 = p.sigma0, a0 = p.alpha0;

  const auto Gchi = dn_apply(xi, chi, dn);
  const auto xid = xi.derivative();
  const auto chid = chi.derivative();
  const auto e2 = exp_scaled(xi, 2.0);
  const auto e4 = exp_scaled(xi, 4.0);

  const auto bsq = map_pointwise(Gchi + multiply(xid, chid), xid, [](double num, double xp) {
    double b = num / std::sqrt(1.0 + xp * xp);
    return b * b;
  });
  const auto chid2 = multiply(chid, chid);
  const auto slope = map_pointwise(xid, [](double xp) { return xp / std::sqrt(1.0 + xp * xp); });
  const auto ex = exp_scaled(xi, 1.0);
  const auto cap = multiply(ex, slope.derivative()) -
                   map_pointwise(xi, xid, [](double x, double xp) {
                     return std::exp(x) / std::sqrt(1.0 + xp * xp);
                   });

  const auto d_xi_h0 = bsq * -0.5 + chid2 * 0.5 - cap * s0 - e2 * s0;
  const auto d_xi = d_xi_h0 + e2 * (a0 * a0 / 8.0) - multiply(e2, chid) * (a0 / 2.0) +
                    e4 * (a0 * a0 / 8.0);
  const auto d_chi = Gchi + multiply(e2, xid) * (a0 / 2.0);
  return {d_xi, d_chi};
}

std::pair<TorusField, TorusField> grad_hamiltonian_wahlen(const WahlenState& w,
                                                          const PhysicalParams& p,
                                                          const DnMethod& dn) {
  p.validate();
  const auto natural = wahlen_forward(w, p);
  auto [d_xi, d_chi] = grad_hamiltonian_natural(natural, p, dn);
  // chain rule through 𝒞: ∂_ζ = ∂_ξ + d𝒬(ζ)*∂_χ with
  // d𝒬(ζ)* = −(α₀/2) e^{2ζ} Π₀^⊥ ∂_θ⁻¹.
  const auto e2 = exp_scaled(w.zeta, 2.0);
  const auto shear_t = multiply(e2, d_chi.antiderivative_zero_mean()) * (-p.alpha0 / 2.0);
  return {d_xi + shear_t, d_chi};
}

double angular_momentum(const WahlenState& w) {
  const auto e2 = exp_scaled(w.zeta, 2.0);
  return -0.5 * integrate_product(e2, w.gamma.derivative());
}

std::pair<TorusField, TorusField> grad_angular_momentum(const WahlenState& w) {
  const auto e2 = exp_scaled(w.zeta, 2.0);
  return {-multiply(e2, w.gamma.derivative()), multiply(e2, w.zeta.derivative())};
}

double drop_volume(const TorusField& zeta) { return 0.5 * integrate(exp_scaled(zeta, 2.0)); }

TorusField grad_volume_zeta(const TorusField& zeta) { return exp_scaled(zeta, 2.0); }

Vec2 barycenter_velocity(const WahlenState& w, const PhysicalParams& p) {
  // ℬ = ∫ e^ζ (γ' + (α₀/4)Π₀^⊥e^{2ζ} − (α₀/6)e^{2ζ}) (−sin θ, cos θ)ᵀ dθ
  const auto& g = w.zeta.grid();
  const auto e1 = exp_scaled(w.zeta, 1.0);
  const auto e2 = exp_scaled(w.zeta, 2.0);
  const auto gen = w.gamma.derivative() + e2.zero_mean() * (p.alpha0 / 4.0) - e2 * (p.alpha0 / 6.0);
  const auto f = multiply(e1, gen);
  double bx = 0.0, by = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    bx += f.value(j) * -std::sin(g.node(j));
    by += f.value(j) * std::cos(g.node(j));
  }
  const double h = 2.0 * M_PI / g.size();
  return {bx * h, by * h};
}

Vec2 barycenter_position(const TorusField& zeta) {
  // first moment of the drop in polar form: ∫_Ω x dx = (1/3)∫e^{3ζ}(cos,sin)dθ
  const auto& g = zeta.grid();
  const auto e3 = exp_scaled(zeta, 3.0);
  double px = 0.0, py = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    px += e3.value(j) * std::cos(g.node(j));
    py += e3.value(j) * std::sin(g.node(j));
  }
  const double h = 2.0 * M_PI / g.size();
  return {px * h / 3.0, py * h / 3.0};
}

ConservedSet conserved_set(const WahlenState& w, const PhysicalParams& p, const DnMethod& dn) {
  ConservedSet c;
  c.energy = hamiltonian_wahlen(w, p, dn);
  c.momentum = angular_momentum(w);
  c.volume = drop_volume(w.zeta);
  c.velocity = barycenter_velocity(w, p);
  c.position = barycenter_position(w.zeta);
  return c;
}

TorusField curvature(const TorusField& xi) {
  const auto xid = xi.derivative();
  const auto slope = map_pointwise(xid, [](double xp) { return xp / std::sqrt(1.0 + xp * xp); });
  const auto slope_d = slope.derivative();
  const auto& g = xi.grid();
  std::vector<double> v(g.size());
  for (int j = 0; j < g.size(); ++j) {
    const double xp = xid.value(j);
    v[j] = std::exp(-xi.value(j)) * (1.0 / std::sqrt(1.0 + xp * xp) - slope_d.value(j));
  }
  return TorusField::from_values_dealiased(g, std::move(v));
}

}  // namespace dropwave
