// Dirichlet-Neumann operator Ḡ(ξ) and harmonic-conjugate trace K̄(ξ) on the
// torus at infinite depth.
//
// Ḡ(ξ)χ is the scaled conormal derivative (∂_ρ - ξ'∂_θ)Φ̃ |_{ρ=ξ(θ)} of the
// harmonic extension Φ̃ of χ into the strip {ρ < ξ(θ)} with ∂_ρΦ̃ → 0 as
// ρ → -∞. Three evaluators: the flat-state Fourier multiplier ℓ, a Taylor
// expansion in ξ seeded at the multiplier and generated order by order from
// the shape-derivative identity, and an independent harmonic-collocation
// oracle used as ground truth in tests.

#pragma once

#include "dropwave/spectral.hpp"

namespace dropwave {

struct DnMethod {
  enum class Kind { multiplier, taylor, oracle };

  Kind kind = Kind::taylor;
  int taylor_order = 4;    // K >= 1
  int oracle_degree = -1;  // harmonic degree; -1 means the grid cutoff
  double smallness = 0.1;  // δ₀ bound on ||ξ||_{W^{1,∞}}

  static DnMethod multiplier() { return {Kind::multiplier, 0, -1, 0.0}; }
  static DnMethod taylor(int order, double smallness = 0.1) {
    return {Kind::taylor, order, -1, smallness};
  }
  static DnMethod oracle(int degree = -1, double smallness = 0.1) {
    return {Kind::oracle, 0, degree, smallness};
  }
};

inline constexpr int kMaxTaylorOrder = 8;

// Ḡ(ξ)χ. Output has zero mean; constants in χ are annihilated.
TorusField dn_apply(const TorusField& xi, const TorusField& chi, const DnMethod& method = {});

// Collocation oracle: fit Φ̃ = a₀ + Σ e^{ℓρ}(a_ℓ cos ℓθ + b_ℓ sin ℓθ) to
// Φ̃(ξ(θ_j),θ_j) = χ(θ_j) in least squares (singular values below
// 1e-12·max are truncated) and evaluate the conormal derivative.
TorusField dn_oracle(const TorusField& xi, const TorusField& chi, int degree = -1,
                     double smallness = 0.1);

// Shape derivative: dḠ(ξ)[ξ̂]χ = -Ḡ(ξ)[B ξ̂] - (V ξ̂)' with
// B = (Ḡ(ξ)χ + ξ'χ')/(1+ξ'²), V = χ' - B ξ'.
TorusField dn_shape_derivative(const TorusField& xi, const TorusField& chi,
                               const TorusField& xi_hat, const DnMethod& method = {});

// Harmonic-conjugate trace K̄(ξ)χ = -Ḡ(ξ)^{-1}χ' on the zero-mean subspace,
// with the additive constant fixed by zero mean. Satisfies (K̄χ)' = Ḡχ.
TorusField conjugate_trace(const TorusField& xi, const TorusField& chi,
                           const DnMethod& method = {});

}  // namespace dropwave
