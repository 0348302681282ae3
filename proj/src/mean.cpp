#include "accretive/mean.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "accretive/geometry.hpp"

namespace accretive {

namespace {

void require_accretive(const CMatrix& A, const char* who) {
  auto [ok, margin] = is_accretive(A);
  if (!ok)
    raise(ErrorKind::NotAccretive,
          std::string(who) + ": accretivity margin " + std::to_string(margin) +
              " is not positive");
}

}  // namespace

CMatrix geometric_mean(const CMatrix& A, const CMatrix& B) {
  require_accretive(A, "geometric_mean");
  require_accretive(B, "geometric_mean");
  if (A.rows() != B.rows())
    raise(ErrorKind::InvalidInput, "geometric_mean: dimension mismatch");
  const Eigen::Index n = A.rows();
  CMatrix SA = sqrt_principal(A);
  CMatrix SAinv = SA.partialPivLu().solve(CMatrix::Identity(n, n));
  CMatrix mid = sqrt_principal(SAinv * B * SAinv);
  CMatrix G = SA * mid * SA;
  if (!is_accretive(G).first)
    raise(ErrorKind::InternalConsistency,
          "geometric_mean: mean left the accretive cone");
  return G;
}

double riccati_residual(const CMatrix& G, const CMatrix& A, const CMatrix& B) {
  require_square_finite(G, "riccati_residual");
  require_square_finite(A, "riccati_residual");
  require_square_finite(B, "riccati_residual");
  if (G.rows() != A.rows() || A.rows() != B.rows())
    raise(ErrorKind::InvalidInput, "riccati_residual: dimension mismatch");
  const Eigen::Index n = A.rows();
  Eigen::PartialPivLU<CMatrix> lu(A);
  CMatrix Ainv = lu.solve(CMatrix::Identity(n, n));
  if (!Ainv.allFinite() || spectral_norm(A) * spectral_norm(Ainv) > 1e15)
    raise(ErrorKind::Singular, "riccati_residual: A is numerically singular");
  return (G * Ainv * G - B).norm() / std::max(B.norm(), 1e-300);
}

CMatrix congruence_mean(const CMatrix& T, const CMatrix& DA,
                        const CMatrix& DB) {
  require_square_finite(T, "congruence_mean");
  require_square_finite(DA, "congruence_mean");
  require_square_finite(DB, "congruence_mean");
  const Eigen::Index n = T.rows();
  if (DA.rows() != n || DB.rows() != n)
    raise(ErrorKind::InvalidInput, "congruence_mean: dimension mismatch");
  for (const CMatrix* D : {&DA, &DB}) {
    CMatrix off = *D;
    off.diagonal().setZero();
    if (off.norm() > 1e-12 * std::max(D->norm(), 1e-300))
      raise(ErrorKind::InvalidInput, "congruence_mean: leg is not diagonal");
    for (Eigen::Index i = 0; i < n; ++i)
      if (!(D->coeff(i, i).real() > 0))
        raise(ErrorKind::NotAccretive,
              "congruence_mean: diagonal leg is not accretive");
  }
  Eigen::JacobiSVD<CMatrix> svd(T);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  if (smin <= Tolerances::global().sing_rel * std::max(smax, 1e-300))
    raise(ErrorKind::Singular, "congruence_mean: congruence factor is singular");

  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d(i) = std::sqrt(DA(i, i) * DB(i, i));  // principal branch
  return T.adjoint() * d.asDiagonal() * T;
}

MidpointMeanReport midpoint_mean_report(const CMatrix& A, const CMatrix& B,
                                        const MetricConfig& cfg) {
  (void)cfg;  // the comparison is metric independent; kept for interface parity
  require_accretive(A, "midpoint_mean_report");
  require_accretive(B, "midpoint_mean_report");
  if (A.rows() != B.rows())
    raise(ErrorKind::InvalidInput, "midpoint_mean_report: dimension mismatch");
  const Eigen::Index n = A.rows();

  GeodesicA geo(A, B);
  CMatrix mid = geo.eval(0.5);

  // Factored form: pd-leg mean conjugating the unitary-leg mean.
  CMatrix PA2 = geo.end_a().P * geo.end_a().P;
  CMatrix PB2 = geo.end_b().P * geo.end_b().P;
  CMatrix Pm = geometric_mean((PA2 + PA2.adjoint()) / 2.0,
                              (PB2 + PB2.adjoint()) / 2.0);
  CMatrix Um = geometric_mean(geo.end_a().U, geo.end_b().U);
  CMatrix R = sqrt_pd((Pm + Pm.adjoint()) / 2.0);
  CMatrix mid2 = R * Um * R;

  MidpointMeanReport rep;
  const double mid_norm = std::max(mid.norm(), 1e-300);
  rep.factored_residual = (mid - mid2).norm() / mid_norm;
  if (rep.factored_residual > 1e-9)
    raise(ErrorKind::InternalConsistency,
          "midpoint_mean_report: direct and factored midpoints disagree");

  CMatrix G = geometric_mean(A, B);
  rep.mean_midpoint_gap = (G - mid).norm();
  rep.relative_gap = rep.mean_midpoint_gap / mid_norm;

  const CMatrix I = CMatrix::Identity(n, n);
  const double rootn = std::sqrt(static_cast<double>(n));
  rep.condition_unitary_legs_identity =
      (geo.end_a().U - I).norm() <= 1e-10 * rootn &&
      (geo.end_b().U - I).norm() <= 1e-10 * rootn;
  rep.condition_equal_pd_legs =
      (geo.end_a().P - geo.end_b().P).norm() <=
      1e-10 * std::max(geo.end_a().P.norm(), 1e-300);
  const double na = std::max(A.norm(), 1e-300);
  const double nb = std::max(B.norm(), 1e-300);
  rep.condition_commuting_normal =
      (A.adjoint() * A - A * A.adjoint()).norm() <= 1e-8 * na * na &&
      (B.adjoint() * B - B * B.adjoint()).norm() <= 1e-8 * nb * nb &&
      (A * B - B * A).norm() <= 1e-8 * na * nb;

  rep.equality = rep.relative_gap <= 1e-9;
  rep.equality_without_known_condition =
      rep.equality && !rep.condition_unitary_legs_identity &&
      !rep.condition_equal_pd_legs && !rep.condition_commuting_normal;
  return rep;
}

}  // namespace accretive
