#include "accretive/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace accretive {

namespace {

// Indices ordered by descending activity |key|; ties toward larger signed
// value, then lower index.
std::vector<Eigen::Index> activity_order(const RVector& key) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(key.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ka = std::abs(key(a)), kb = std::abs(key(b));
    if (ka != kb) return ka > kb;
    return key(a) > key(b);
  });
  return idx;
}

}  // namespace

LogRankResult log_rank(const CMatrix& A, double tol_one, double tol_zero) {
  if (tol_one < 0) tol_one = Tolerances::global().logrank_one;
  if (tol_zero < 0) tol_zero = Tolerances::global().logrank_zero;
  SymPolar sp = sym_polar(A);
  CMatrix P2 = sp.P * sp.P;
  HermEig ep = eig_hermitian((P2 + P2.adjoint()) / 2.0);

  LogRankResult out;
  for (Eigen::Index i = 0; i < ep.lambda.size(); ++i)
    if (std::abs(std::log(ep.lambda(i))) > tol_one) ++out.r_P;
  auto [V, mu] = eig_normal(sp.U);
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (std::abs(std::arg(mu(i))) > tol_zero) ++out.r_U;
  out.r = std::max(out.r_P, out.r_U);
  return out;
}

CMatrix closest_pd(const CMatrix& A) {
  SymPolar sp = sym_polar(A);
  CMatrix P2 = sp.P * sp.P;
  return (P2 + P2.adjoint()) / 2.0;
}

CMatrix closest_au(const CMatrix& A) { return sym_polar(A).U; }

Truncation truncate_pd_logrank(const CMatrix& P2, int r,
                               const GaugeFunction& phi) {
  require_square_finite(P2, "truncate_pd_logrank");
  const Eigen::Index n = P2.rows();
  if (r < 0 || r > n)
    raise(ErrorKind::InvalidInput, "truncate_pd_logrank: r out of range");
  HermEig ep = eig_hermitian(P2);
  if (ep.lambda(n - 1) <= Tolerances::global().pd_rel * std::abs(ep.lambda(0)))
    raise(ErrorKind::NotPositiveDefinite,
          "truncate_pd_logrank: input is not positive definite");

  RVector logs = ep.lambda.array().log();
  std::vector<Eigen::Index> order = activity_order(logs);
  RVector kept = ep.lambda;
  for (size_t k = static_cast<size_t>(r); k < order.size(); ++k)
    kept(order[k]) = 1.0;

  CVector keptc = kept.cast<Complex>();
  CMatrix M = ep.V * keptc.asDiagonal() * ep.V.adjoint();
  Truncation out;
  out.matrix = (M + M.adjoint()) / 2.0;

  // Attained objective, evaluated honestly against the input.
  CVector rinv = kept.array().rsqrt().cast<Complex>();
  CMatrix Prinv = ep.V * rinv.asDiagonal() * ep.V.adjoint();
  CMatrix Y = Prinv * P2 * Prinv;
  HermEig el = eig_hermitian(log_pd((Y + Y.adjoint()) / 2.0));
  out.objective = phi(el.lambda.cwiseAbs());
  return out;
}

Truncation truncate_unitary_logrank(const CMatrix& U, int r,
                                    const GaugeFunction& phi) {
  require_square_finite(U, "truncate_unitary_logrank");
  const Eigen::Index n = U.rows();
  if (r < 0 || r > n)
    raise(ErrorKind::InvalidInput, "truncate_unitary_logrank: r out of range");
  if ((U.adjoint() * U - CMatrix::Identity(n, n)).norm() >
      Tolerances::global().orth * std::sqrt(static_cast<double>(n)))
    raise(ErrorKind::NotAccretiveUnitary,
          "truncate_unitary_logrank: input is not unitary");
  if (!is_accretive(U).first)
    raise(ErrorKind::NotAccretiveUnitary,
          "truncate_unitary_logrank: input is not strictly accretive");

  auto [V, mu] = eig_normal(U);
  RVector theta(n);
  for (Eigen::Index i = 0; i < n; ++i) theta(i) = std::arg(mu(i));
  std::vector<Eigen::Index> order = activity_order(theta);
  RVector kept = theta;
  for (size_t k = static_cast<size_t>(r); k < order.size(); ++k)
    kept(order[k]) = 0.0;

  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(Complex(0, kept(i)));
  Truncation out;
  out.matrix = V * d.asDiagonal() * V.adjoint();

  CMatrix Z = log_unitary(out.matrix.adjoint() * U);
  HermEig ez = eig_hermitian(Z / Complex(0, 1));
  out.objective = phi(ez.lambda.cwiseAbs());
  return out;
}

CMatrix closest_logrank(const CMatrix& A, int r, const MetricConfig& cfg) {
  SymPolar sp = sym_polar(A);
  CMatrix P2 = sp.P * sp.P;
  Truncation tp = truncate_pd_logrank((P2 + P2.adjoint()) / 2.0, r, cfg.phi1);
  Truncation tu = truncate_unitary_logrank(sp.U, r, cfg.phi2);
  CMatrix Pr = sqrt_pd(tp.matrix);
  return Pr * tu.matrix * Pr;
}

}  // namespace accretive
