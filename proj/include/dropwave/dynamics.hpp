// Right-hand sides of the evolution equations in natural and Wahlén
// coordinates, and time integration with invariant monitoring.
//
// Natural form (verbatim displays):
//   ξ̇ = e^{-2ξ}[Ḡ(ξ)χ + (α₀/2)e^{2ξ}ξ'],
//   χ̇ = e^{-2ξ}[½((Ḡ(ξ)χ+ξ'χ')/√(1+ξ'²))² − ½χ'² + σ₀e^ξ((ξ'/√(1+ξ'²))' − (1+ξ'²)^{-1/2})]
//        + (α₀/2)χ' + (α₀²/8)e^{2ξ} + α₀K̄(ξ)χ + σ₀ − α₀²/8.
// Wahlén form: (ζ̇, γ̇) = (e^{-2ζ}∂_γH̄, Π₀^⊥[−e^{-2ζ}∂_ζH̄]); the γ̇ mean is
// projected out to stay on the zero-mean slice.

#pragma once

#include <functional>
#include <vector>

#include "dropwave/functionals.hpp"

namespace dropwave {

struct IntegratorConfig {
  enum class Scheme { rk4, implicit_midpoint };
  Scheme scheme = Scheme::rk4;
  double dt = 1e-3;
  double horizon = 1.0;      // T
  int monitor_every = 10;    // record cadence in steps
  DnMethod dn{};             // evaluator used by the flow
  double smallness = kDefaultSmallness;
  double midpoint_tol = 1e-12;
  int midpoint_max_iter = 100;

  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  WahlenState state;
  ConservedSet conserved;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  // Time-ordered CSV: t, coefficient list for ζ and γ, H̄, Ī, V̄, Bx, By, Px, Py.
  void write_csv(std::ostream& os, const std::string& preamble = {}) const;
};

std::pair<TorusField, TorusField> rhs_natural(const NaturalState& s, const PhysicalParams& p,
                                              const DnMethod& dn = {});

std::pair<TorusField, TorusField> rhs_wahlen(const WahlenState& s, const PhysicalParams& p,
                                             const DnMethod& dn = {});

WahlenState step(const WahlenState& s, const PhysicalParams& p, const IntegratorConfig& cfg);

Trajectory simulate(const WahlenState& initial, const PhysicalParams& p,
                    const IntegratorConfig& cfg);

// Natural-coordinate stepping, used by the conjugacy cross-check.
NaturalState step_natural(const NaturalState& s, const PhysicalParams& p,
                          const IntegratorConfig& cfg);

}  // namespace dropwave
