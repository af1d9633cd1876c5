// Real trigonometric spectral algebra on the 2π-periodic torus.
//
// Fields carry a dual representation: N uniform grid values, and N real
// coefficients against the L²-orthonormal basis
//     φ_{0,0}  = 1/√(2π),
//     φ_{ℓ,+1} = cos(ℓθ)/√π,   φ_{ℓ,-1} = sin(ℓθ)/√π,   1 ≤ ℓ ≤ N/2,
// (the sine at the Nyquist mode ℓ = N/2 vanishes on the grid and is dropped).
// Coefficient packing: index 0 is (0,0); 2ℓ-1 is (ℓ,+1); 2ℓ is (ℓ,-1).

#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace dropwave {

class FftEngine;

class SpectralGrid {
 public:
  // N even, N >= 8. dealias_fraction in (0,1]: products truncate modes
  // above dealias_fraction * (N/2) when re-entering coefficient space.
  explicit SpectralGrid(int n, double dealias_fraction = 2.0 / 3.0);

  int size() const { return n_; }
  int cutoff() const { return n_ / 2; }  // M
  int dealias_cutoff() const;
  double dealias_fraction() const { return dealias_fraction_; }
  double node(int j) const;
  const std::vector<double>& nodes() const { return *nodes_; }

  bool operator==(const SpectralGrid& o) const { return n_ == o.n_; }
  bool operator!=(const SpectralGrid& o) const { return n_ != o.n_; }

  // values (length N) <-> orthonormal coefficients (length N)
  std::vector<double> to_coefficients(const std::vector<double>& values) const;
  std::vector<double> to_values(const std::vector<double>& coeffs) const;

 private:
  int n_;
  double dealias_fraction_;
  std::shared_ptr<const FftEngine> engine_;
  std::shared_ptr<const std::vector<double>> nodes_;
};

// Index set 𝒯 = {(0,0)} ∪ (ℕ × {-1,+1}): m = +1 cosine, m = -1 sine.
struct SobolevSpec {
  double decay = 0.0;  // 𝔰 >= 0, analytic exponential rate
  double order = 0.0;  // s, differentiability index
};

class TorusField {
 public:
  TorusField() = default;

  static TorusField zero(const SpectralGrid& g);
  static TorusField constant(const SpectralGrid& g, double c);
  // Exact sampling: no dealias truncation.
  static TorusField from_values(const SpectralGrid& g, std::vector<double> values);
  // Sampling of a nonlinear/pointwise product: truncate per grid fraction.
  static TorusField from_values_dealiased(const SpectralGrid& g, std::vector<double> values);
  static TorusField from_coefficients(const SpectralGrid& g, std::vector<double> coeffs);
  static TorusField from_function(const SpectralGrid& g, const std::function<double(double)>& f);
  // Single basis function with amplitude: amp * φ_{l,m}.
  static TorusField mode(const SpectralGrid& g, int l, int m, double amp = 1.0);
  // Plain harmonics a*cos(lθ), a*sin(lθ).
  static TorusField harmonic_cos(const SpectralGrid& g, int l, double a = 1.0);
  static TorusField harmonic_sin(const SpectralGrid& g, int l, double a = 1.0);

  const SpectralGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double value(int j) const { return values_[j]; }
  // Coefficient against φ_{l,m}; zero outside the stored band.
  double coeff(int l, int m) const;

  double mean() const;                       // Π₀ f as the mean value
  TorusField zero_mean() const;              // Π₀^⊥ f
  TorusField derivative() const;             // ∂_θ f (Nyquist zeroed)
  TorusField antiderivative_zero_mean() const;  // ∂_θ^{-1} Π₀^⊥ f, zero mean
  TorusField translate(double alpha) const;  // f(θ+α), exact in coefficients
  TorusField reflect() const;                // f(-θ)
  TorusField dealias() const;                // truncate per grid fraction

  double l2_norm() const;  // √∫f², via Parseval
  double sobolev_norm(const SobolevSpec& spec) const;
  double sup_norm() const;
  double w1inf_norm() const;  // max|f| + max|f'|
  bool kappa_fold(int kappa, double rel_tol = 1e-12) const;

  TorusField operator+(const TorusField& o) const;
  TorusField operator-(const TorusField& o) const;
  TorusField operator*(double s) const;
  TorusField operator-() const { return (*this) * -1.0; }

 private:
  TorusField(SpectralGrid g, std::vector<double> values, std::vector<double> coeffs)
      : grid_(std::move(g)), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

  SpectralGrid grid_{8};
  std::vector<double> values_;
  std::vector<double> coeffs_;
};

inline TorusField operator*(double s, const TorusField& f) { return f * s; }

// Pointwise product, dealiased on return to coefficient space.
TorusField multiply(const TorusField& a, const TorusField& b);
// Pointwise map of one or two fields, dealiased.
TorusField map_pointwise(const TorusField& a, const std::function<double(double)>& f);
TorusField map_pointwise(const TorusField& a, const TorusField& b,
                         const std::function<double(double, double)>& f);

// Trapezoidal quadrature ∫_0^{2π} f dθ (spectrally accurate on the grid).
double integrate(const TorusField& f);
double integrate_product(const TorusField& a, const TorusField& b);  // ∫ab, pointwise
// L² inner product via quadrature of the pointwise product.
double inner(const TorusField& a, const TorusField& b);

// Coefficient packing helpers.
inline int coeff_index(int l, int m) { return l == 0 ? 0 : (m == 1 ? 2 * l - 1 : 2 * l); }

}  // namespace dropwave
