#include "dropwave/dn.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dropwave {

namespace {

void check_smallness(const TorusField& xi, double delta0) {
  const double n = xi.w1inf_norm();
  if (n >= delta0) {
    std::ostringstream os;
    os << "dn: ||xi||_{W^{1,inf}} = " << n << " exceeds the smallness bound " << delta0;
    throw std::domain_error(os.str());
  }
}

// Fourier multiplier ℓ on mode ℓ (kills constants).
TorusField multiplier_apply(const TorusField& chi) {
  const auto& g = chi.grid();
  std::vector<double> c(g.size(), 0.0);
  const int m = g.cutoff();
  for (int l = 1; l <= m; ++l) {
    c[coeff_index(l, 1)] = l * chi.coeff(l, 1);
    if (l < m) c[coeff_index(l, -1)] = l * chi.coeff(l, -1);
  }
  return TorusField::from_coefficients(g, std::move(c));
}

// Homogeneous Taylor terms G_j(ξ)φ generated by the shape-derivative identity:
//   j G_j(ξ)φ = -Σ_{k=0}^{j-1} G_k(ξ)[ξ B_{j-1-k}] - (ξ V_{j-1})',
// with B, V expanded in homogeneous degree of ξ:
//   B_0 = G_0 φ, B_1 = G_1 φ + ξ'φ', B_j = G_j φ - ξ'² B_{j-2},
//   V_0 = φ',    V_j = -B_{j-1} ξ'.
TorusField taylor_term(int j, const TorusField& xi, const TorusField& phi) {
  if (j == 0) return multiplier_apply(phi);
  const auto xid = xi.derivative();
  const auto xid2 = multiply(xid, xid);

  std::vector<TorusField> G(j);  // G_k(ξ)φ for k < j
  for (int k = 0; k < j; ++k) G[k] = taylor_term(k, xi, phi);

  const auto phid = phi.derivative();
  std::vector<TorusField> B(j), V(j);
  for (int k = 0; k < j; ++k) {
    B[k] = G[k];
    if (k == 1) B[k] = B[k] + multiply(xid, phid);
    if (k >= 2) B[k] = B[k] - multiply(xid2, B[k - 2]);
    V[k] = (k == 0) ? phid : -multiply(B[k - 1], xid);
  }

  TorusField acc = -multiply(xi, V[j - 1]).derivative();
  for (int k = 0; k < j; ++k) acc = acc - taylor_term(k, xi, multiply(xi, B[j - 1 - k]));
  return acc * (1.0 / j);
}

TorusField taylor_apply(const TorusField& xi_full, const TorusField& chi, int order) {
  // The strip problem is invariant under vertical translation, so Ḡ depends
  // on ξ only through its zero-mean part; stripping the mean keeps the
  // truncated expansion exactly shift-invariant.
  const auto xi = xi_full.zero_mean();
  TorusField acc = multiplier_apply(chi);
  for (int j = 1; j <= order; ++j) acc = acc + taylor_term(j, xi, chi);
  return acc.zero_mean();
}

}  // namespace

TorusField dn_apply(const TorusField& xi, const TorusField& chi, const DnMethod& method) {
  if (xi.grid() != chi.grid()) throw std::invalid_argument("dn_apply: grid mismatch");
  switch (method.kind) {
    case DnMethod::Kind::multiplier:
      if (xi.l2_norm() > 1e-14 * std::max(1.0, chi.l2_norm()))
        throw std::invalid_argument("dn_apply: multiplier method requires xi = 0");
      return multiplier_apply(chi);
    case DnMethod::Kind::taylor:
      if (method.taylor_order < 1 || method.taylor_order > kMaxTaylorOrder)
        throw std::invalid_argument("dn_apply: taylor order out of range");
      check_smallness(xi, method.smallness);
      return taylor_apply(xi, chi, method.taylor_order);
    case DnMethod::Kind::oracle:
      return dn_oracle(xi, chi, method.oracle_degree, method.smallness);
  }
  throw std::logic_error("dn_apply: unknown method");
}

TorusField dn_oracle(const TorusField& xi, const TorusField& chi, int degree, double smallness) {
  if (xi.grid() != chi.grid()) throw std::invalid_argument("dn_oracle: grid mismatch");
  check_smallness(xi, smallness);
  const auto& g = xi.grid();
  const int n = g.size();
  const int deg = degree < 0 ? g.cutoff() : degree;
  if (deg < g.cutoff()) throw std::invalid_argument("dn_oracle: degree below the grid cutoff");

  // Columns: 1, e^{ℓρ}cos ℓθ, e^{ℓρ}sin ℓθ (ℓ = 1..deg) at ρ = ξ(θ_j). The
  // sine at ℓ = N/2 vanishes identically on the grid and is dropped.
  const int sin_max = std::min(deg, n / 2 - 1);
  const int ncols = 1 + deg + sin_max;
  Eigen::MatrixXd A(n, ncols);
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) {
    const double th = g.node(j), rho = xi.value(j);
    A(j, 0) = 1.0;
    for (int l = 1; l <= deg; ++l) A(j, l) = std::exp(l * rho) * std::cos(l * th);
    for (int l = 1; l <= sin_max; ++l) A(j, deg + l) = std::exp(l * rho) * std::sin(l * th);
    rhs(j) = chi.value(j);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), cut = 1e-12 * smax;
  if (sv(sv.size() - 1) < 1e-14 * smax) {
    std::ostringstream os;
    os << "dn_oracle: collocation system ill-conditioned, cond = " << smax / sv(sv.size() - 1);
    throw std::runtime_error(os.str());
  }
  svd.setThreshold(cut / smax);
  Eigen::VectorXd coef = svd.solve(rhs);

  // Conormal derivative (∂_ρ - ξ'∂_θ)Φ̃ at ρ = ξ(θ).
  const auto xid = xi.derivative();
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double th = g.node(j), rho = xi.value(j), xp = xid.value(j);
    double drho = 0.0, dth = 0.0;
    for (int l = 1; l <= deg; ++l) {
      const double e = std::exp(l * rho);
      const double cl = std::cos(l * th), sl = std::sin(l * th);
      const double a = coef(l), b = l <= sin_max ? coef(deg + l) : 0.0;
      drho += l * e * (a * cl + b * sl);
      dth += l * e * (-a * sl + b * cl);
    }
    out[j] = drho - xp * dth;
  }
  return TorusField::from_values(g, std::move(out)).zero_mean();
}

TorusField dn_shape_derivative(const TorusField& xi, const TorusField& chi,
                               const TorusField& xi_hat, const DnMethod& method) {
  const auto Gchi = dn_apply(xi, chi, method);
  const auto xid = xi.derivative();
  const auto chid = chi.derivative();
  const auto B = map_pointwise(Gchi + multiply(xid, chid), xid,
                               [](double num, double xp) { return num / (1.0 + xp * xp); });
  const auto V = chid - multiply(B, xid);
  return -dn_apply(xi, multiply(B, xi_hat), method) - multiply(V, xi_hat).derivative();
}

TorusField conjugate_trace(const TorusField& xi, const TorusField& chi, const DnMethod& method) {
  // Solve Ḡ(ξ)u = -χ' for zero-mean u by a multiplier-preconditioned fixed
  // point: u ← G₀^{-1}[-χ' - (Ḡ(ξ) - G₀)u].
  const auto& g = xi.grid();
  const auto rhs = -chi.derivative();
  auto inv_mult = [&g](const TorusField& f) {
    std::vector<double> c(g.size(), 0.0);
    const int m = g.cutoff();
    for (int l = 1; l <= m; ++l) {
      c[coeff_index(l, 1)] = f.coeff(l, 1) / l;
      if (l < m) c[coeff_index(l, -1)] = f.coeff(l, -1) / l;
    }
    return TorusField::from_coefficients(g, std::move(c));
  };

  if (method.kind == DnMethod::Kind::multiplier) return inv_mult(rhs);

  TorusField u = inv_mult(rhs);
  const double scale = std::max(1.0, rhs.l2_norm());
  for (int it = 0; it < 200; ++it) {
    const auto residual = rhs - dn_apply(xi, u, method);
    u = (u + inv_mult(residual)).zero_mean();
    if (residual.l2_norm() <= 1e-13 * scale) return u;
  }
  throw std::runtime_error(
      "conjugate_trace: iteration stalled (xi too close to the smallness bound)");
}

}  // namespace dropwave
