#include "accretive/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace accretive {

namespace {

std::string dim_str(const CMatrix& A) {
  std::ostringstream os;
  os << A.rows() << "x" << A.cols();
  return os.str();
}

// Multiplies each column by a unimodular scalar so its first nonvanishing
// component is real positive; makes eigenbases reproducible.
void fix_column_phases(CMatrix& V) {
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    const double colnorm = V.col(j).norm();
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
      const double a = std::abs(V(i, j));
      if (a > 1e-12 * colnorm) {
        V.col(j) *= std::conj(V(i, j)) / a;
        break;
      }
    }
  }
}

}  // namespace

Tolerances& Tolerances::global() {
  static Tolerances t;
  return t;
}

void Tolerances::set_base(double base) {
  herm = base;
  orth = base;
  resid = base;
  pd_rel = base * 1e-2;
  sing_rel = base * 1e-2;
  branch = base * 1e2;
  normal = base * 1e2;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotSkewHermitian: return "NotSkewHermitian";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotAccretive: return "NotAccretive";
    case ErrorKind::NotAccretiveUnitary: return "NotAccretiveUnitary";
    case ErrorKind::NotSectorial: return "NotSectorial";
    case ErrorKind::PhaseOutOfSector: return "PhaseOutOfSector";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::DomainExit: return "DomainExit";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IOError: return "IOError";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::EigFailure: return "EigFailure";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

ErrorCategory kind_category(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::IOError:
    case ErrorKind::InvalidSpec:
      return ErrorCategory::Usage;
    case ErrorKind::EigFailure:
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::InternalConsistency:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Domain;
  }
}

void require_square_finite(const CMatrix& A, const char* who) {
  if (A.rows() == 0 || A.rows() != A.cols())
    raise(ErrorKind::InvalidInput,
          std::string(who) + ": matrix must be square and nonempty, got " +
              dim_str(A));
  if (!A.allFinite())
    raise(ErrorKind::InvalidInput,
          std::string(who) + ": matrix has non-finite entries");
}

double spectral_norm(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  return svd.singularValues()(0);
}

std::pair<CMatrix, CMatrix> cartesian_parts(const CMatrix& A) {
  require_square_finite(A, "cartesian_parts");
  CMatrix H = (A + A.adjoint()) / 2.0;
  CMatrix S = (A - A.adjoint()) / 2.0;
  return {H, S};
}

CMatrix hermitian_part(const CMatrix& A) { return (A + A.adjoint()) / 2.0; }

CMatrix skew_part(const CMatrix& A) { return (A - A.adjoint()) / 2.0; }

HermEig eig_hermitian(const CMatrix& H) {
  require_square_finite(H, "eig_hermitian");
  const double scale = H.norm();
  if ((H - H.adjoint()).norm() > Tolerances::global().herm * std::max(scale, 1e-300))
    raise(ErrorKind::NotHermitian,
          "eig_hermitian: Hermitian residual " +
              std::to_string((H - H.adjoint()).norm()) + " exceeds gate");
  CMatrix Hs = (H + H.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(Hs);
  if (es.info() != Eigen::Success)
    raise(ErrorKind::EigFailure, "eig_hermitian: solver did not converge");
  HermEig out;
  out.lambda = es.eigenvalues().reverse();  // nonincreasing
  out.V = es.eigenvectors().rowwise().reverse();
  fix_column_phases(out.V);
  return out;
}

std::pair<CMatrix, CVector> eig_normal(const CMatrix& N) {
  require_square_finite(N, "eig_normal");
  const double scale = N.norm();
  const double tn = Tolerances::global().normal;
  if ((N.adjoint() * N - N * N.adjoint()).norm() >
      tn * std::max(scale * scale, 1e-300))
    raise(ErrorKind::NotNormal, "eig_normal: commutator ||N*N - NN*|| exceeds gate");
  Eigen::ComplexSchur<CMatrix> schur(N);
  if (schur.info() != Eigen::Success)
    raise(ErrorKind::EigFailure, "eig_normal: Schur reduction failed");
  CMatrix T = schur.matrixT();
  CMatrix offdiag = T.triangularView<Eigen::StrictlyUpper>();
  if (offdiag.norm() > tn * std::max(scale, 1e-300))
    raise(ErrorKind::NotNormal,
          "eig_normal: triangular form has off-diagonal mass " +
              std::to_string(offdiag.norm()));
  CMatrix V = schur.matrixU();
  fix_column_phases(V);
  return {V, T.diagonal()};
}

PolarDecomp polar(const CMatrix& A) {
  require_square_finite(A, "polar");
  HermEig aa = eig_hermitian(A.adjoint() * A);
  const double smax = std::sqrt(std::max(aa.lambda(0), 0.0));
  const double smin_sq = aa.lambda(aa.lambda.size() - 1);
  const double smin = smin_sq > 0 ? std::sqrt(smin_sq) : 0.0;
  if (smin <= Tolerances::global().sing_rel * std::max(smax, 1e-300))
    raise(ErrorKind::Singular,
          "polar: smallest singular value " + std::to_string(smin) +
              " below gate");
  CVector s = aa.lambda.array().sqrt().cast<Complex>();
  CMatrix Q = aa.V * s.asDiagonal() * aa.V.adjoint();
  Q = (Q + Q.adjoint()) / 2.0;
  CMatrix V = A * (aa.V * s.cwiseInverse().asDiagonal() * aa.V.adjoint());
  return {V, Q};
}

CMatrix fun_hermitian(const CMatrix& H, const std::function<double(double)>& f,
                      const std::function<bool(double)>& domain) {
  HermEig eh = eig_hermitian(H);
  RVector fl(eh.lambda.size());
  for (Eigen::Index i = 0; i < eh.lambda.size(); ++i) {
    if (domain && !domain(eh.lambda(i)))
      raise(ErrorKind::DomainError,
            "fun_hermitian: eigenvalue " + std::to_string(eh.lambda(i)) +
                " outside the function domain");
    fl(i) = f(eh.lambda(i));
  }
  CVector flc = fl.cast<Complex>();
  CMatrix F = eh.V * flc.asDiagonal() * eh.V.adjoint();
  return (F + F.adjoint()) / 2.0;
}

namespace {
std::function<bool(double)> positive_gate(const CMatrix& H) {
  const double floor = Tolerances::global().pd_rel * spectral_norm(H);
  return [floor](double x) { return x > floor; };
}
}  // namespace

CMatrix log_pd(const CMatrix& H) {
  return fun_hermitian(H, [](double x) { return std::log(x); },
                       positive_gate(H));
}

CMatrix sqrt_pd(const CMatrix& H) {
  return fun_hermitian(H, [](double x) { return std::sqrt(x); },
                       positive_gate(H));
}

CMatrix pow_pd(const CMatrix& H, double t) {
  return fun_hermitian(H, [t](double x) { return std::pow(x, t); },
                       positive_gate(H));
}

CMatrix exp_hermitian(const CMatrix& H) {
  return fun_hermitian(H, [](double x) { return std::exp(x); });
}

CMatrix exp_skew(const CMatrix& Z) {
  require_square_finite(Z, "exp_skew");
  const double scale = Z.norm();
  if ((Z + Z.adjoint()).norm() >
      Tolerances::global().herm * std::max(scale, 1e-300) + 1e-300)
    raise(ErrorKind::NotSkewHermitian, "exp_skew: input is not skew-Hermitian");
  CMatrix Y = (Z - Z.adjoint()) / Complex(0, 2);  // Hermitian
  HermEig ey = eig_hermitian(Y);
  CVector ph(ey.lambda.size());
  for (Eigen::Index i = 0; i < ey.lambda.size(); ++i)
    ph(i) = std::exp(Complex(0, ey.lambda(i)));
  return ey.V * ph.asDiagonal() * ey.V.adjoint();
}

CMatrix log_unitary(const CMatrix& U) {
  require_square_finite(U, "log_unitary");
  const Eigen::Index n = U.rows();
  CMatrix I = CMatrix::Identity(n, n);
  if ((U.adjoint() * U - I).norm() >
      Tolerances::global().orth * std::sqrt(static_cast<double>(n)))
    raise(ErrorKind::InvalidInput, "log_unitary: input is not unitary");
  auto [V, mu] = eig_normal(U);
  CVector logs(n);
  const double pi = std::numbers::pi;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double theta = std::arg(mu(i));
    if (pi - std::abs(theta) <= Tolerances::global().branch)
      raise(ErrorKind::BranchCut,
            "log_unitary: eigenvalue phase " + std::to_string(theta) +
                " within branch gate of the cut");
    logs(i) = Complex(0, theta);
  }
  CMatrix Z = V * logs.asDiagonal() * V.adjoint();
  return (Z - Z.adjoint()) / 2.0;
}

CMatrix sqrt_principal(const CMatrix& A) {
  require_square_finite(A, "sqrt_principal");
  const Eigen::Index n = A.rows();
  const double pi = std::numbers::pi;
  const Tolerances& tol = Tolerances::global();

  // Spectrum gates: the principal branch needs every eigenvalue off the
  // closed negative real axis.
  Eigen::ComplexSchur<CMatrix> schur(A, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    raise(ErrorKind::EigFailure, "sqrt_principal: Schur reduction failed");
  CVector ev = schur.matrixT().diagonal();
  const double evmax = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(ev(i)) <= tol.sing_rel * std::max(evmax, 1e-300))
      raise(ErrorKind::Singular, "sqrt_principal: eigenvalue at the origin");
    if (pi - std::abs(std::arg(ev(i))) <= tol.branch)
      raise(ErrorKind::BranchCut,
            "sqrt_principal: eigenvalue on the negative real axis");
  }

  // Product-form coupled Newton iteration with determinantal scaling.
  CMatrix I = CMatrix::Identity(n, n);
  CMatrix X = A;
  CMatrix M = A;
  for (int k = 0; k < 100; ++k) {
    double mu = 1.0;
    if ((M - I).norm() > 1e-2) {
      const double d = std::abs(M.determinant());
      if (d > 0 && std::isfinite(d))
        mu = std::pow(d, -1.0 / (2.0 * static_cast<double>(n)));
      mu = std::clamp(mu, 1e-4, 1e4);
    }
    CMatrix Xs = mu * X;
    CMatrix Ms = (mu * mu) * M;
    CMatrix Minv = Ms.partialPivLu().solve(I);
    CMatrix Xn = 0.5 * Xs * (I + Minv);
    CMatrix Mn = 0.5 * (I + 0.5 * (Ms + Minv));
    const double step = (Xn - Xs).norm();
    X = Xn;
    M = Mn;
    if (step <= 1e-13 * std::max(X.norm(), 1e-300)) return X;
  }
  raise(ErrorKind::ConvergenceFailure,
        "sqrt_principal: iteration budget exhausted");
}

CongruenceDiag simdiag_congruence(const CMatrix& P, const CMatrix& Q) {
  require_square_finite(P, "simdiag_congruence");
  require_square_finite(Q, "simdiag_congruence");
  if (P.rows() != Q.rows())
    raise(ErrorKind::InvalidInput, "simdiag_congruence: dimension mismatch");
  const Tolerances& tol = Tolerances::global();

  HermEig ep = eig_hermitian(P);
  if (ep.lambda(ep.lambda.size() - 1) <= tol.pd_rel * std::abs(ep.lambda(0)))
    raise(ErrorKind::NotPositiveDefinite,
          "simdiag_congruence: first argument is not positive definite");
  HermEig eq = eig_hermitian(Q);
  if (eq.lambda(eq.lambda.size() - 1) <= tol.pd_rel * std::abs(eq.lambda(0)))
    raise(ErrorKind::NotPositiveDefinite,
          "simdiag_congruence: second argument is not positive definite");

  CMatrix Ps = (P + P.adjoint()) / 2.0;
  Eigen::LLT<CMatrix> llt(Ps);
  if (llt.info() != Eigen::Success)
    raise(ErrorKind::NotPositiveDefinite,
          "simdiag_congruence: Cholesky factorization failed");
  CMatrix L = llt.matrixL();
  auto Lt = L.triangularView<Eigen::Lower>();
  CMatrix Y = Lt.solve((Q + Q.adjoint()) / 2.0);   // L^{-1} Q
  CMatrix B = Lt.solve(Y.adjoint()).adjoint();     // L^{-1} Q L^{-*}
  B = (B + B.adjoint()) / 2.0;
  HermEig eb = eig_hermitian(B);
  if (eb.lambda(eb.lambda.size() - 1) <= 0)
    raise(ErrorKind::NotPositiveDefinite,
          "simdiag_congruence: congruence pencil is not positive definite");
  CongruenceDiag out;
  out.S = L * eb.V;
  out.lambda = eb.lambda;
  return out;
}

}  // namespace accretive
