// Mode-block assembly at the rotating circle, linear-stability and Hessian
// spectra, resonance solving, multiplicity classification, transversality,
// reduced angular momentum, and constrained coercivity.
//
// Blocks act on the coefficient pair (ζ_{ℓ,m}, γ_{ℓ,-m}). For ℓ ≥ 1:
//
//   ℒ_ω block      [σ₀ℓ² − (σ₀ + α₀²/4) + α₀²/(4ℓ)   mα₀/2 + mℓ(ω − α₀/2)]
//                  [mα₀/2 + mℓ(ω − α₀/2)              ℓ                   ]
//
//   Hessian block  = ℒ_ω at ω = 0,
//   dynamic block  = J₂ · Hessian block (trace-free),
//
// and the (0,0) blocks are diag(−σ₀ + α₀²/4, 0) and [[0,0],[σ₀ − α₀²/4,0]].
// det ℒ_ω = ℓ·F(σ₀,α₀,ω,ℓ) with the resonance function
//   F = σ₀ℓ² − (ω − α₀/2)²ℓ − [σ₀ + α₀(ω − α₀/2) + α₀²/4].

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dropwave/functionals.hpp"

namespace dropwave {

struct ModeBlock {
  int l = 0;
  int m = 0;  // in {-1, 0, 1}
  Eigen::Matrix2d mat = Eigen::Matrix2d::Zero();
};

ModeBlock block_Lomega(int l, int m, double omega, const PhysicalParams& p);
ModeBlock hessian_block(int l, int m, const PhysicalParams& p);
ModeBlock dynamic_block(int l, int m, const PhysicalParams& p);

// Resonance function F(σ₀,α₀,ω,ℓ) = det ℒ_ω^{(ℓ,m)} / ℓ.
double resonance_function(const PhysicalParams& p, double omega, double l);

struct LinearMode {
  int l = 0;
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
};

// Eigenvalues of the dynamic blocks for ℓ = 0..l_max (m-independent).
std::vector<LinearMode> linear_spectrum(const PhysicalParams& p, int l_max);

struct ResonanceResult {
  std::optional<double> delta;  // Δ = (κℓ−1)(C·κℓ(κℓ+1) − 1/4); absent at α₀ = 0
  std::optional<double> omega_plus;
  std::optional<double> omega_minus;
};

// Resonant frequencies at mode n = κℓ; each returned root is re-verified by
// bisection refinement of F to 1e-12.
ResonanceResult resonance_solve(int l, int kappa, const PhysicalParams& p);

struct MultiplicityReport {
  double omega = 0.0;
  std::vector<int> roots;  // integer roots of F(·,ω*,·) in [1, l_max]
  int multiplicity = 0;    // 2 · roots.size()
  bool degenerate = false; // some root has ω* = α₀/2 − α₀/(2ℓ)
  // the odd-square integrality criterion 1 + α₀²/(4σ₀) = k² (k odd)
  bool odd_square_criterion = false;
  int odd_square_k = 0;
};

MultiplicityReport multiplicity_scan(double omega_star, const PhysicalParams& p, int l_max = 128);

// Kernel vectors of ℒ_{ω*} at a resonant (ℓ, ω*):
//   𝚟_{ℓ,±1} = N(φ_{ℓ,±1}, ∓[α₀/(2ℓ) + (ω*−α₀/2)]φ_{ℓ,∓1}), unit (L²)² norm.
std::pair<WahlenState, WahlenState> kernel_vectors(int l, double omega_star,
                                                   const PhysicalParams& p,
                                                   const SpectralGrid& grid);

// Crandall-Rabinowitz transversality scalar
//   −(α₀ + 2ℓ(ω*−α₀/2)) / (1 + (ω*−α₀/2)²);
// vanishes exactly at ω* = α₀/2 − α₀/(2ℓ).
double transversality(int l, double omega_star, const PhysicalParams& p);

// Reduced angular momentum coefficient on the kernel,
//   (α₀ + 2ℓ(ω*−α₀/2)) / (2(1 + (ω*−α₀/2+α₀/(2ℓ))²));
// positive in the regime ω* > α₀/2 with α₀ > 0.
double reduced_momentum_coeff(int l, double omega_star, const PhysicalParams& p);

struct HessianEigs {
  int l = 0;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
};

// λ±(ℓ) of each Hessian block for ℓ = 0..l_max, sorted ascending per block;
// the ℓ = 0 block carries {−σ₀ + α₀²/4, 0}.
std::vector<HessianEigs> hessian_spectrum(const PhysicalParams& p, int l_max);

struct CoercivityResult {
  double unconstrained_min = 0.0;
  double constrained_min = 0.0;
  int modes = 0;
};

// Minimum Rayleigh quotient of the truncated Hessian (modes ℓ ≤ n_modes),
// before and after projecting out the linearized volume direction (mean of ζ)
// and the barycenter directions (modes (1,±1) of ζ and γ).
CoercivityResult constrained_coercivity(const PhysicalParams& p, int n_modes);

// One resonance-report entry per ℓ and the JSON-serializable report.
struct ResonanceEntry {
  int l = 0;
  std::optional<double> delta;
  std::optional<double> omega_plus;
  std::optional<double> omega_minus;
  std::vector<int> co_roots_plus;
  std::vector<int> co_roots_minus;
  int multiplicity_plus = 0;
  int multiplicity_minus = 0;
  double transversality_plus = 0.0;
  double transversality_minus = 0.0;
  bool degenerate = false;
};

struct ResonanceReport {
  PhysicalParams params;
  int kappa = 1;
  std::vector<ResonanceEntry> entries;
  std::string to_json(const std::string& config_hash, const std::string& version) const;
};

ResonanceReport resonance_report(const PhysicalParams& p, int kappa, int l_max);

// Apply per-mode blocks to a state: the pair (ζ_{ℓ,m}, γ_{ℓ,-m}) is
// multiplied by block(ℓ,m); the (0,0) pair by block(0,0).
WahlenState apply_blocks(const WahlenState& s,
                         const std::function<Eigen::Matrix2d(int l, int m)>& block);

}  // namespace dropwave
