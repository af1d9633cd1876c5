// Scalar and vector functionals of the drop: Hamiltonian, angular momentum,
// volume, barycenter velocity/position, curvature, the Wahlén change of
// coordinates and the L² gradients used by the flow and the wave solver.
//
// Natural coordinates (ξ,χ): log radial elevation and boundary potential.
// Wahlén coordinates (ζ,γ): ξ = ζ, χ = γ + 𝒬(ζ), 𝒬(ζ) = (α₀/4)∂_θ⁻¹Π₀^⊥e^{2ζ},
// with γ kept on the zero-mean slice.

#pragma once

#include <utility>

#include "dropwave/dn.hpp"
#include "dropwave/spectral.hpp"

namespace dropwave {

struct PhysicalParams {
  double sigma0 = 1.0;  // surface tension > 0
  double alpha0 = 0.0;  // vorticity

  // Modified Bond number C = σ₀/α₀², defined only for α₀ ≠ 0.
  double modified_bond() const;
  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct NaturalState {
  TorusField xi;
  TorusField chi;
};

struct WahlenState {
  WahlenState() = default;
  WahlenState(TorusField zeta_, TorusField gamma_);
  TorusField zeta;
  TorusField gamma;  // zero mean, enforced at construction
};

struct ConservedSet {
  double energy = 0.0;    // H̄
  double momentum = 0.0;  // Ī
  double volume = 0.0;    // V̄
  Vec2 velocity;          // barycenter velocity ℬ
  Vec2 position;          // barycenter position 𝒫
};

// δ₀ default used by state validation.
inline constexpr double kDefaultSmallness = 0.1;

// 𝒬(ζ) and its transpose action d𝒬(ζ)* f = -(α₀/2) e^{2ζ} Π₀^⊥ ∂_θ⁻¹ f.
TorusField wahlen_shear(const TorusField& zeta, const PhysicalParams& p);

NaturalState wahlen_forward(const WahlenState& w, const PhysicalParams& p);
WahlenState wahlen_inverse(const NaturalState& n, const PhysicalParams& p);

// ℋ(ξ,χ) = ½∫χḠ(ξ)χ + σ₀∫e^ξ√(1+ξ'²) − (σ₀−α₀²/8)·½∫e^{2ξ}
//          − (α₀/4)∫e^{2ξ}χ' + (α₀²/32)∫e^{4ξ}
double hamiltonian_natural(const NaturalState& s, const PhysicalParams& p,
                           const DnMethod& dn = {});

double hamiltonian_wahlen(const WahlenState& w, const PhysicalParams& p, const DnMethod& dn = {});

// L² gradient (∂_ξℋ, ∂_χℋ) in natural coordinates, from the closed-form
// partials of the kinetic, capillary, volume, swirl and quartic pieces.
std::pair<TorusField, TorusField> grad_hamiltonian_natural(const NaturalState& s,
                                                           const PhysicalParams& p,
                                                           const DnMethod& dn = {});

// L² gradient (∂_ζ H̄, ∂_γ H̄). Note ∂_ζ H̄(0,0) is the constant α₀²/4; the
// rotating circle is steady because the Poisson tensor annihilates constants
// in this slot.
std::pair<TorusField, TorusField> grad_hamiltonian_wahlen(const WahlenState& w,
                                                          const PhysicalParams& p,
                                                          const DnMethod& dn = {});

// Ī(ζ,γ) = −½∫e^{2ζ}γ' and its gradient (−e^{2ζ}γ', e^{2ζ}ζ').
double angular_momentum(const WahlenState& w);
std::pair<TorusField, TorusField> grad_angular_momentum(const WahlenState& w);

// V̄(ζ) = ½∫e^{2ζ} and its gradient (e^{2ζ}, 0).
double drop_volume(const TorusField& zeta);
TorusField grad_volume_zeta(const TorusField& zeta);

Vec2 barycenter_velocity(const WahlenState& w, const PhysicalParams& p);
// 𝒫 = ∫_Ω x dx = (1/3)∫e^{3ζ}(cos θ, sin θ)ᵀ dθ; satisfies d𝒫/dt = ℬ.
Vec2 barycenter_position(const TorusField& zeta);

ConservedSet conserved_set(const WahlenState& w, const PhysicalParams& p, const DnMethod& dn = {});

// Curvature of the boundary curve e^{ξ(θ)}(cos θ, sin θ):
// H(ξ) = e^{-ξ}[(1+ξ'²)^{-1/2} − (ξ'(1+ξ'²)^{-1/2})'], H(0) = 1.
TorusField curvature(const TorusField& xi);

// State validation: ||·||_{W^{1,∞}} < δ₀.
void require_small(const TorusField& elevation, double delta0 = kDefaultSmallness);

}  // namespace dropwave
