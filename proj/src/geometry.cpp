#include "accretive/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "accretive/sampler.hpp"

namespace accretive {

namespace {

void require_accretive_unitary(const CMatrix& U, const char* who) {
  require_square_finite(U, who);
  const Eigen::Index n = U.rows();
  if ((U.adjoint() * U - CMatrix::Identity(n, n)).norm() >
      Tolerances::global().orth * std::sqrt(static_cast<double>(n)))
    raise(ErrorKind::NotAccretiveUnitary,
          std::string(who) + ": matrix is not unitary");
  if (!is_accretive(U).first)
    raise(ErrorKind::NotAccretiveUnitary,
          std::string(who) + ": unitary is not strictly accretive");
}

RVector unitary_log_phases(const CMatrix& UV) {
  auto [V, mu] = eig_normal(UV);
  RVector theta(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) theta(i) = std::arg(mu(i));
  return theta;
}

}  // namespace

CMatrix geodesic_P(const CMatrix& P, const CMatrix& Q, double t) {
  CongruenceDiag cd = simdiag_congruence(P, Q);
  CVector d(cd.lambda.size());
  for (Eigen::Index i = 0; i < cd.lambda.size(); ++i)
    d(i) = std::pow(cd.lambda(i), t);
  CMatrix G = cd.S * d.asDiagonal() * cd.S.adjoint();
  return (G + G.adjoint()) / 2.0;
}

double distance_P(const CMatrix& P, const CMatrix& Q,
                  const GaugeFunction& phi) {
  CongruenceDiag cd = simdiag_congruence(P, Q);
  return phi(cd.lambda.array().log().matrix());
}

CMatrix geodesic_AU(const CMatrix& U, const CMatrix& V, double t) {
  require_accretive_unitary(U, "geodesic_AU");
  require_accretive_unitary(V, "geodesic_AU");
  CMatrix Z = log_unitary(U.adjoint() * V);
  CMatrix W = U * exp_skew(t * Z);
  if (t >= 0.0 && t <= 1.0 && !is_accretive(W).first)
    raise(ErrorKind::InternalConsistency,
          "geodesic_AU: interior point left the accretive cone");
  return W;
}

double distance_AU(const CMatrix& U, const CMatrix& V,
                   const GaugeFunction& phi) {
  require_accretive_unitary(U, "distance_AU");
  require_accretive_unitary(V, "distance_AU");
  RVector theta = unitary_log_phases(U.adjoint() * V);
  return phi(theta.cwiseAbs());
}

GeodesicA::GeodesicA(const CMatrix& A, const CMatrix& B) {
  spa_ = sym_polar(A);
  spb_ = sym_polar(B);
  n_ = static_cast<int>(A.rows());
  CMatrix PA2 = spa_.P * spa_.P;
  PA2 = (PA2 + PA2.adjoint()) / 2.0;
  CMatrix PB2 = spb_.P * spb_.P;
  PB2 = (PB2 + PB2.adjoint()) / 2.0;
  CongruenceDiag cd = simdiag_congruence(PA2, PB2);
  S_ = cd.S;
  loglam_ = cd.lambda.array().log();
  Sadj_inv_ = S_.partialPivLu().solve(CMatrix::Identity(n_, n_)).adjoint();
  Z_ = log_unitary(spa_.U.adjoint() * spb_.U);
  zeig_ = eig_hermitian(Z_ / Complex(0, 1));
}

CMatrix GeodesicA::eval_P(double t) const {
  CVector d(n_);
  for (int i = 0; i < n_; ++i) d(i) = std::exp(t * loglam_(i));
  CMatrix G = S_ * d.asDiagonal() * S_.adjoint();
  return (G + G.adjoint()) / 2.0;
}

CMatrix GeodesicA::deriv_P(double t) const {
  CVector d(n_);
  for (int i = 0; i < n_; ++i) d(i) = loglam_(i) * std::exp(t * loglam_(i));
  CMatrix G = S_ * d.asDiagonal() * S_.adjoint();
  return (G + G.adjoint()) / 2.0;
}

CMatrix GeodesicA::eval_U(double t) const {
  CVector d(n_);
  for (int i = 0; i < n_; ++i) d(i) = std::exp(Complex(0, t * zeig_.lambda(i)));
  return spa_.U * (zeig_.V * d.asDiagonal() * zeig_.V.adjoint());
}

CMatrix GeodesicA::deriv_U(double t) const { return eval_U(t) * Z_; }

CMatrix GeodesicA::eval(double t) const {
  CMatrix R = sqrt_pd(eval_P(t));
  return R * eval_U(t) * R;
}

CMatrix GeodesicA::generator_P() const {
  CVector d = loglam_.cast<Complex>();
  return Sadj_inv_ * d.asDiagonal() * S_.adjoint();
}

double GeodesicA::distance(const MetricConfig& cfg) const {
  const double dp = cfg.phi1(loglam_);
  const double du = cfg.phi2(zeig_.lambda.cwiseAbs());
  return std::sqrt(cfg.psi(dp * dp, du * du));
}

CMatrix geodesic_A(const CMatrix& A, const CMatrix& B, double t) {
  return GeodesicA(A, B).eval(t);
}

double distance_A(const CMatrix& A, const CMatrix& B, const MetricConfig& cfg) {
  SymPolar sa = sym_polar(A);
  SymPolar sb = sym_polar(B);
  CMatrix PA2 = sa.P * sa.P;
  PA2 = (PA2 + PA2.adjoint()) / 2.0;
  CMatrix PB2 = sb.P * sb.P;
  PB2 = (PB2 + PB2.adjoint()) / 2.0;

  // Eigenvalue route.
  CongruenceDiag cd = simdiag_congruence(PA2, PB2);
  const double d1p = cfg.phi1(cd.lambda.array().log().matrix());
  RVector theta = unitary_log_phases(sa.U.adjoint() * sb.U);
  const double d1u = cfg.phi2(theta.cwiseAbs());
  const double d1 = std::sqrt(cfg.psi(d1p * d1p, d1u * d1u));

  // Matrix-logarithm route.
  HermEig ep = eig_hermitian(sa.P);
  CVector pinv = ep.lambda.cwiseInverse().cast<Complex>();
  CMatrix PAinv = ep.V * pinv.asDiagonal() * ep.V.adjoint();
  CMatrix Mmat = PAinv * PB2 * PAinv;
  CMatrix LM = log_pd((Mmat + Mmat.adjoint()) / 2.0);
  HermEig el = eig_hermitian(LM);
  const double d2p = cfg.phi1(el.lambda.cwiseAbs());
  CMatrix Z = log_unitary(sa.U.adjoint() * sb.U);
  HermEig ez = eig_hermitian(Z / Complex(0, 1));
  const double d2u = cfg.phi2(ez.lambda.cwiseAbs());
  const double d2 = std::sqrt(cfg.psi(d2p * d2p, d2u * d2u));

  if (std::abs(d1 - d2) > 1e-8 * (1.0 + d1))
    raise(ErrorKind::InternalConsistency,
          "distance_A: eigenvalue and norm routes disagree: " +
              std::to_string(d1) + " vs " + std::to_string(d2));
  return d1;
}

namespace {

CMatrix central_diff(const std::function<CMatrix(double)>& f, double t) {
  const double h = 1e-6;
  if (t - h < 0.0)
    return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2 * h)) / (2.0 * h);
  if (t + h > 1.0)
    return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2 * h)) / (2.0 * h);
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

double simpson(const std::vector<double>& g, int stride) {
  // Composite Simpson over samples g[0], g[stride], g[2*stride], ...
  const int m = (static_cast<int>(g.size()) - 1) / stride;  // panels
  const double h = static_cast<double>(stride) / (static_cast<double>(g.size()) - 1);
  double acc = g.front() + g.back();
  for (int j = 1; j < m; ++j)
    acc += (j % 2 == 1 ? 4.0 : 2.0) * g[static_cast<size_t>(j) * stride];
  return acc * h / 3.0;
}

}  // namespace

ArcLengthResult arc_length(const ComponentCurve& curve, const MetricConfig& cfg,
                           int samples) {
  if (!curve.P || !curve.U)
    raise(ErrorKind::InvalidInput, "arc_length: curve legs must be callable");
  if (samples < 4) samples = 4;
  samples += (4 - samples % 4) % 4;  // multiple of 4 for the halved grid

  std::vector<double> g(static_cast<size_t>(samples) + 1);
  for (int j = 0; j <= samples; ++j) {
    const double t = static_cast<double>(j) / samples;
    CMatrix Pt = curve.P(t);
    require_square_finite(Pt, "arc_length");
    CMatrix Psym = (Pt + Pt.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Psym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= 0.0)
      raise(ErrorKind::DomainExit,
            "arc_length: positive definite leg leaves the cone at t = " +
                std::to_string(t));
    CMatrix Ut = curve.U(t);
    require_square_finite(Ut, "arc_length");
    const Eigen::Index n = Ut.rows();
    if ((Ut.adjoint() * Ut - CMatrix::Identity(n, n)).norm() >
        1e-8 * std::sqrt(static_cast<double>(n)))
      raise(ErrorKind::DomainExit,
            "arc_length: unitary leg leaves the group at t = " +
                std::to_string(t));
    if (!is_accretive(Ut).first)
      raise(ErrorKind::DomainExit,
            "arc_length: unitary leg leaves the accretive cone at t = " +
                std::to_string(t));

    CMatrix dP = curve.dP ? curve.dP(t) : central_diff(curve.P, t);
    CMatrix dU = curve.dU ? curve.dU(t) : central_diff(curve.U, t);
    CMatrix XP = (dP + dP.adjoint()) / 2.0;
    CMatrix UdU = Ut.adjoint() * dU;
    CMatrix XU = (UdU - UdU.adjoint()) / 2.0;

    const double fp = tangent_norm_P(Psym, XP, cfg.phi1);
    const double fu = tangent_norm_AU(Ut, XU, cfg.phi2);
    g[static_cast<size_t>(j)] = std::sqrt(cfg.psi(fp * fp, fu * fu));
  }

  ArcLengthResult out;
  out.value = simpson(g, 1);
  const double coarse = simpson(g, 2);
  out.error_estimate = std::abs(out.value - coarse) / 15.0;
  return out;
}

double DistancePropertyReport::max_residual() const {
  return std::max({inverse_residual, adjoint_residual, doubling_residual,
                   midpoint_residual, unitary_congruence_residual});
}

DistancePropertyReport check_distance_properties(const CMatrix& A,
                                                 const CMatrix& B,
                                                 const MetricConfig& cfg,
                                                 std::uint64_t seed) {
  require_square_finite(A, "check_distance_properties");
  require_square_finite(B, "check_distance_properties");
  if (A.rows() != B.rows())
    raise(ErrorKind::InvalidInput, "check_distance_properties: dimension mismatch");
  const Eigen::Index n = A.rows();

  const double d = distance_A(A, B, cfg);
  auto rel = [](double lhs, double rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
  };

  DistancePropertyReport rep;
  CMatrix Ainv = A.partialPivLu().solve(CMatrix::Identity(n, n));
  CMatrix Binv = B.partialPivLu().solve(CMatrix::Identity(n, n));
  rep.inverse_residual = rel(distance_A(Ainv, Binv, cfg), d);
  rep.adjoint_residual = rel(distance_A(A.adjoint(), B.adjoint(), cfg), d);

  const CMatrix I = CMatrix::Identity(n, n);
  const double d_I_A = distance_A(I, A, cfg);
  rep.doubling_residual = rel(distance_A(Ainv, A, cfg), 2.0 * d_I_A);
  rep.midpoint_residual = (geodesic_A(Ainv, A, 0.5) - I).norm();

  std::mt19937_64 rng(seed);
  CMatrix W = haar_unitary(static_cast<int>(n), rng);
  rep.unitary_congruence_residual =
      rel(distance_A(W.adjoint() * A * W, W.adjoint() * B * W, cfg), d);
  return rep;
}

}  // namespace accretive
