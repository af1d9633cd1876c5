// Newton solution and branch continuation of the rotating-wave equation,
// seeded by kernel vectors, with symmetry reduction and cross-formulation
// verification.
//
// A rotating wave with frequency ω is a zero of
//   R(ω,u) = ( ∇_ζ(H̄ − ωĪ)(u) − c(u)·e^{2ζ},  Π₀^⊥ ∇_γ(H̄ − ωĪ)(u) ),
// where the volume multiplier c(u) = (α₀²/4)·mean(e^{2ζ}) is pinned by the
// mean of the natural-coordinate equations; with it, converged solutions
// satisfy both natural rotating displays exactly and the trivial branch
// u = 0 is an exact zero for every ω. Phase degeneracy is removed by solving
// in the reflection-symmetric κℓ-fold subspace (ζ even, γ odd).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dropwave/linear.hpp"

namespace dropwave {

struct BranchPoint {
  double omega = 0.0;
  WahlenState state;
  double epsilon = 0.0;   // amplitude ⟨u, v_{l,1}⟩ on the seed kernel vector
  double residual = 0.0;  // sup of coefficient residuals at convergence
  int iterations = 0;
  ConservedSet conserved;
};

struct ContinuationConfig {
  int l = 2;               // seed mode (the wave lives at mode κℓ)
  int kappa = 1;           // fold symmetry
  enum class Parametrization { amplitude, angular_momentum };
  Parametrization parametrization = Parametrization::amplitude;
  double start = 1e-3;     // ε or Ī target
  double stop = 1e-3;
  int steps = 1;
  double newton_tol = 1e-11;
  int max_iterations = 50;
  bool omega_positive = true;  // which resonant branch seeds the solve
  bool full_fd_jacobian = false;
  DnMethod dn{};
};

// R(ω,u) with both components zero-mean; vanishes identically on the trivial
// branch.
std::pair<TorusField, TorusField> residual_F(double omega, const WahlenState& u,
                                             const PhysicalParams& p, const DnMethod& dn = {});

// Newton solve of R(ω,u) = 0 plus the amplitude condition ⟨u, v⟩ = ε (or the
// momentum condition Ī(u) = target) in the reflection-symmetric subspace of
// mode multiples of κℓ. The seed defaults to ε·v_{κℓ,1}.
BranchPoint newton_solve(const ContinuationConfig& cfg, const PhysicalParams& p,
                         const SpectralGrid& grid,
                         const std::optional<WahlenState>& seed = std::nullopt,
                         std::optional<double> omega_seed = std::nullopt);

// Monotone sweep of ε (or of the Ī target), warm-starting Newton; on step
// failure the increment is halved down to a floor before giving up with the
// partial branch.
std::vector<BranchPoint> continue_branch(const ContinuationConfig& cfg, const PhysicalParams& p,
                                         const SpectralGrid& grid);

struct CrossCheck {
  double residual_elevation = 0.0;  // sup residual of the ωη' display
  double residual_potential = 0.0;  // sup residual of the ωβ' display
};

// Map the Wahlén solution through the change of coordinates and evaluate both
// natural-coordinate rotating-wave displays.
CrossCheck verify_cross_formulation(const BranchPoint& bp, const PhysicalParams& p,
                                    const DnMethod& dn = {});

// Branch export: CSV rows ε, ω, residual, H̄, Ī, V̄, leading coefficients;
// JSON metadata.
void write_branch_csv(const std::vector<BranchPoint>& branch, std::ostream& os,
                      int coeff_modes, const std::string& preamble = {});
std::string branch_metadata_json(const ContinuationConfig& cfg, const PhysicalParams& p,
                                 const std::string& config_hash, const std::string& version);

}  // namespace dropwave
