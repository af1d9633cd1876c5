// Transforms and field algebra. FFTW plans are created once per grid size
// (guarded registry) and executed on caller-owned buffers, so concurrent
// transforms on distinct fields are safe.

#include "dropwave/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dropwave {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}
}  // namespace

class FftEngine {
 public:
  explicit FftEngine(int n) : n_(n) {
    std::vector<double> re(n);
    std::vector<fftw_complex> sp(n / 2 + 1);
    std::scoped_lock lock(planner_mutex());
    r2c_ = fftw_plan_dft_r2c_1d(n, re.data(), sp.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    c2r_ = fftw_plan_dft_c2r_1d(n, sp.data(), re.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!r2c_ || !c2r_) throw std::runtime_error("fft plan creation failed");
  }
  ~FftEngine() {
    std::scoped_lock lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
  }
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  // values -> orthonormal coefficients (length n)
  std::vector<double> analyze(const std::vector<double>& values) const {
    const int n = n_, m = n / 2;
    std::vector<double> in(values);
    std::vector<fftw_complex> sp(m + 1);
    fftw_execute_dft_r2c(r2c_, in.data(), sp.data());
    std::vector<double> c(n, 0.0);
    const double sq2pi = std::sqrt(kTwoPi), sqpi = std::sqrt(kTwoPi / 2.0);
    c[0] = sp[0][0] / n * sq2pi;
    for (int l = 1; l < m; ++l) {
      c[2 * l - 1] = 2.0 * sp[l][0] / n * sqpi;   // cos amplitude * √π
      c[2 * l] = -2.0 * sp[l][1] / n * sqpi;      // sin amplitude * √π
    }
    c[2 * m - 1] = sp[m][0] / n * sqpi;  // Nyquist cosine
    return c;
  }

  // orthonormal coefficients -> values
  std::vector<double> synthesize(const std::vector<double>& coeffs) const {
    const int n = n_, m = n / 2;
    std::vector<fftw_complex> sp(m + 1);
    const double sq2pi = std::sqrt(kTwoPi), sqpi = std::sqrt(kTwoPi / 2.0);
    sp[0][0] = coeffs[0] / sq2pi * n;
    sp[0][1] = 0.0;
    for (int l = 1; l < m; ++l) {
      sp[l][0] = 0.5 * coeffs[2 * l - 1] / sqpi * n;
      sp[l][1] = -0.5 * coeffs[2 * l] / sqpi * n;
    }
    sp[m][0] = coeffs[2 * m - 1] / sqpi * n;
    sp[m][1] = 0.0;
    std::vector<double> out(n);
    fftw_execute_dft_c2r(c2r_, sp.data(), out.data());  // c2r may destroy sp
    for (double& x : out) x /= n;
    return out;
  }

  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

 private:
  int n_;
  fftw_plan r2c_;
  fftw_plan c2r_;
};

namespace {
std::shared_ptr<const FftEngine> engine_for(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const FftEngine>> registry;
  std::scoped_lock lock(mu);
  auto& e = registry[n];
  if (!e) e = std::make_shared<FftEngine>(n);
  return e;
}
}  // namespace

SpectralGrid::SpectralGrid(int n, double dealias_fraction)
    : n_(n), dealias_fraction_(dealias_fraction) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("SpectralGrid: N must be even and >= 8");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw std::invalid_argument("SpectralGrid: dealias fraction must lie in (0,1]");
  engine_ = engine_for(n);
  auto nodes = std::make_shared<std::vector<double>>(n);
  for (int j = 0; j < n; ++j) (*nodes)[j] = kTwoPi * j / n;
  nodes_ = std::move(nodes);
}

int SpectralGrid::dealias_cutoff() const {
  return static_cast<int>(std::floor(dealias_fraction_ * cutoff()));
}

double SpectralGrid::node(int j) const { return (*nodes_)[j]; }

std::vector<double> SpectralGrid::to_coefficients(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != n_)
    throw std::invalid_argument("to_coefficients: wrong length");
  return engine_->analyze(values);
}

std::vector<double> SpectralGrid::to_values(const std::vector<double>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != n_)
    throw std::invalid_argument("to_values: wrong length");
  return engine_->synthesize(coeffs);
}

// ---------------------------------------------------------------------------
// TorusField

TorusField TorusField::zero(const SpectralGrid& g) {
  return TorusField(g, std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), 0.0));
}

TorusField TorusField::constant(const SpectralGrid& g, double c) {
  std::vector<double> coeffs(g.size(), 0.0);
  coeffs[0] = c * std::sqrt(kTwoPi);
  return TorusField(g, std::vector<double>(g.size(), c), std::move(coeffs));
}

TorusField TorusField::from_values(const SpectralGrid& g, std::vector<double> values) {
  check_finite(values, "TorusField");
  auto coeffs = g.to_coefficients(values);
  return TorusField(g, std::move(values), std::move(coeffs));
}

TorusField TorusField::from_values_dealiased(const SpectralGrid& g, std::vector<double> values) {
  check_finite(values, "TorusField");
  auto coeffs = g.to_coefficients(values);
  const int kd = g.dealias_cutoff(), m = g.cutoff();
  for (int l = kd + 1; l <= m; ++l) {
    coeffs[coeff_index(l, 1)] = 0.0;
    if (l < m) coeffs[coeff_index(l, -1)] = 0.0;
  }
  auto vals = g.to_values(coeffs);
  return TorusField(g, std::move(vals), std::move(coeffs));
}

TorusField TorusField::from_coefficients(const SpectralGrid& g, std::vector<double> coeffs) {
  check_finite(coeffs, "TorusField");
  auto values = g.to_values(coeffs);
  return TorusField(g, std::move(values), std::move(coeffs));
}

TorusField TorusField::from_function(const SpectralGrid& g,
                                     const std::function<double(double)>& f) {
  std::vector<double> v(g.size());
  for (int j = 0; j < g.size(); ++j) v[j] = f(g.node(j));
  return from_values(g, std::move(v));
}

TorusField TorusField::mode(const SpectralGrid& g, int l, int m, double amp) {
  if (l < 0 || l > g.cutoff() || (l == 0 && m != 0) || (l > 0 && m != 1 && m != -1) ||
      (l == g.cutoff() && m == -1))
    throw std::invalid_argument("TorusField::mode: index outside the stored band");
  std::vector<double> coeffs(g.size(), 0.0);
  coeffs[coeff_index(l, m)] = amp;
  return from_coefficients(g, std::move(coeffs));
}

TorusField TorusField::harmonic_cos(const SpectralGrid& g, int l, double a) {
  if (l == 0) return constant(g, a);
  return mode(g, l, 1, a * std::sqrt(kTwoPi / 2.0));
}

TorusField TorusField::harmonic_sin(const SpectralGrid& g, int l, double a) {
  return mode(g, l, -1, a * std::sqrt(kTwoPi / 2.0));
}

double TorusField::coeff(int l, int m) const {
  if (l == 0 && m == 0) return coeffs_[0];
  if (l < 1 || l > grid_.cutoff() || (m != 1 && m != -1)) return 0.0;
  if (l == grid_.cutoff() && m == -1) return 0.0;
  return coeffs_[coeff_index(l, m)];
}

double TorusField::mean() const { return coeffs_[0] / std::sqrt(kTwoPi); }

TorusField TorusField::zero_mean() const {
  auto c = coeffs_;
  c[0] = 0.0;
  auto v = values_;
  const double mu = mean();
  for (double& x : v) x -= mu;
  return TorusField(grid_, std::move(v), std::move(c));
}

TorusField TorusField::derivative() const {
  const int m = grid_.cutoff();
  std::vector<double> c(grid_.size(), 0.0);
  for (int l = 1; l < m; ++l) {
    c[coeff_index(l, 1)] = l * coeffs_[coeff_index(l, -1)];
    c[coeff_index(l, -1)] = -l * coeffs_[coeff_index(l, 1)];
  }
  // Nyquist cosine would differentiate onto the unrepresentable sine; drop it.
  return from_coefficients(grid_, std::move(c));
}

TorusField TorusField::antiderivative_zero_mean() const {
  const int m = grid_.cutoff();
  std::vector<double> c(grid_.size(), 0.0);
  for (int l = 1; l < m; ++l) {
    c[coeff_index(l, 1)] = -coeffs_[coeff_index(l, -1)] / l;
    c[coeff_index(l, -1)] = coeffs_[coeff_index(l, 1)] / l;
  }
  // ∂_θ^{-1} of the Nyquist cosine is sin(Mθ)/M, zero on the grid; drop it.
  return from_coefficients(grid_, std::move(c));
}

TorusField TorusField::translate(double alpha) const {
  const int m = grid_.cutoff();
  std::vector<double> c(grid_.size(), 0.0);
  c[0] = coeffs_[0];
  for (int l = 1; l <= m; ++l) {
    const double cl = std::cos(l * alpha), sl = std::sin(l * alpha);
    const double a = coeffs_[coeff_index(l, 1)];
    const double b = (l < m) ? coeffs_[coeff_index(l, -1)] : 0.0;
    // cos(l(θ+α)) = cos lα cos lθ - sin lα sin lθ, and similarly for sin.
    c[coeff_index(l, 1)] = a * cl + b * sl;
    if (l < m) c[coeff_index(l, -1)] = -a * sl + b * cl;
  }
  return from_coefficients(grid_, std::move(c));
}

TorusField TorusField::reflect() const {
  const int m = grid_.cutoff();
  std::vector<double> c(coeffs_);
  for (int l = 1; l < m; ++l) c[coeff_index(l, -1)] = -c[coeff_index(l, -1)];
  return from_coefficients(grid_, std::move(c));
}

TorusField TorusField::dealias() const {
  auto c = coeffs_;
  const int kd = grid_.dealias_cutoff(), m = grid_.cutoff();
  for (int l = kd + 1; l <= m; ++l) {
    c[coeff_index(l, 1)] = 0.0;
    if (l < m) c[coeff_index(l, -1)] = 0.0;
  }
  return from_coefficients(grid_, std::move(c));
}

double TorusField::l2_norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

double TorusField::sobolev_norm(const SobolevSpec& spec) const {
  // Weight e^{2𝔰ℓ}(1+ℓ²)^s: reduces to plain L² at 𝔰 = s = 0 and matches
  // 1 + ℓ^{2s} at s = 1.
  const int m = grid_.cutoff();
  double s = coeffs_[0] * coeffs_[0];
  for (int l = 1; l <= m; ++l) {
    const double w =
        std::exp(2.0 * spec.decay * l) * std::pow(1.0 + static_cast<double>(l) * l, spec.order);
    double a = coeffs_[coeff_index(l, 1)];
    s += w * a * a;
    if (l < m) {
      double b = coeffs_[coeff_index(l, -1)];
      s += w * b * b;
    }
  }
  return std::sqrt(s);
}

double TorusField::sup_norm() const {
  double s = 0.0;
  for (double x : values_) s = std::max(s, std::abs(x));
  return s;
}

double TorusField::w1inf_norm() const { return sup_norm() + derivative().sup_norm(); }

bool TorusField::kappa_fold(int kappa, double rel_tol) const {
  if (kappa < 1) throw std::invalid_argument("kappa_fold: kappa must be >= 1");
  const double tol = rel_tol * std::max(l2_norm(), 1e-300);
  const int m = grid_.cutoff();
  for (int l = 1; l <= m; ++l) {
    if (l % kappa == 0) continue;
    if (std::abs(coeffs_[coeff_index(l, 1)]) > tol) return false;
    if (l < m && std::abs(coeffs_[coeff_index(l, -1)]) > tol) return false;
  }
  return true;
}

TorusField TorusField::operator+(const TorusField& o) const {
  if (grid_ != o.grid_) throw std::invalid_argument("field arithmetic: grid mismatch");
  std::vector<double> v(values_), c(coeffs_);
  for (int j = 0; j < grid_.size(); ++j) {
    v[j] += o.values_[j];
    c[j] += o.coeffs_[j];
  }
  return TorusField(grid_, std::move(v), std::move(c));
}

TorusField TorusField::operator-(const TorusField& o) const { return *this + (o * -1.0); }

TorusField TorusField::operator*(double s) const {
  std::vector<double> v(values_), c(coeffs_);
  for (int j = 0; j < grid_.size(); ++j) {
    v[j] *= s;
    c[j] *= s;
  }
  return TorusField(grid_, std::move(v), std::move(c));
}

TorusField multiply(const TorusField& a, const TorusField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("multiply: grid mismatch");
  std::vector<double> v(a.grid().size());
  for (int j = 0; j < a.grid().size(); ++j) v[j] = a.value(j) * b.value(j);
  return TorusField::from_values_dealiased(a.grid(), std::move(v));
}

TorusField map_pointwise(const TorusField& a, const std::function<double(double)>& f) {
  std::vector<double> v(a.grid().size());
  for (int j = 0; j < a.grid().size(); ++j) v[j] = f(a.value(j));
  return TorusField::from_values_dealiased(a.grid(), std::move(v));
}

TorusField map_pointwise(const TorusField& a, const TorusField& b,
                         const std::function<double(double, double)>& f) {
  if (a.grid() != b.grid()) throw std::invalid_argument("map_pointwise: grid mismatch");
  std::vector<double> v(a.grid().size());
  for (int j = 0; j < a.grid().size(); ++j) v[j] = f(a.value(j), b.value(j));
  return TorusField::from_values_dealiased(a.grid(), std::move(v));
}

double integrate(const TorusField& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s * kTwoPi / f.grid().size();
}

double integrate_product(const TorusField& a, const TorusField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("integrate_product: grid mismatch");
  double s = 0.0;
  for (int j = 0; j < a.grid().size(); ++j) s += a.value(j) * b.value(j);
  return s * kTwoPi / a.grid().size();
}

double inner(const TorusField& a, const TorusField& b) { return integrate_product(a, b); }

}  // namespace dropwave
