#include "accretive/manifold.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace accretive {

namespace {

constexpr double kPi = std::numbers::pi;

double lambda_min_herm(const CMatrix& H) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    raise(ErrorKind::EigFailure, "support sweep: eigenvalue solve failed");
  return es.eigenvalues()(0);
}

// Whitening data of the Hermitian part: H^{1/2} and H^{-1/2}.
struct Whitening {
  CMatrix half;
  CMatrix invhalf;
};

Whitening whiten(const CMatrix& H, const char* who) {
  HermEig eh = eig_hermitian(H);
  const double lmax = std::abs(eh.lambda(0));
  if (eh.lambda(eh.lambda.size() - 1) <=
      Tolerances::global().pd_rel * std::max(lmax, 1e-300))
    raise(ErrorKind::NotAccretive,
          std::string(who) + ": Hermitian part is not positive definite");
  CVector rt = eh.lambda.array().sqrt().cast<Complex>();
  Whitening w;
  w.half = eh.V * rt.asDiagonal() * eh.V.adjoint();
  w.half = (w.half + w.half.adjoint()) / 2.0;
  w.invhalf = eh.V * rt.cwiseInverse().asDiagonal() * eh.V.adjoint();
  w.invhalf = (w.invhalf + w.invhalf.adjoint()) / 2.0;
  return w;
}

}  // namespace

std::pair<bool, double> is_accretive(const CMatrix& A) {
  require_square_finite(A, "is_accretive");
  const double margin = lambda_min_herm(hermitian_part(A));
  const double gate = Tolerances::global().pd_rel * spectral_norm(A);
  return {margin > gate, margin};
}

SectorialReport is_sectorial(const CMatrix& A) {
  require_square_finite(A, "is_sectorial");
  const CMatrix H = hermitian_part(A);
  const CMatrix iS = Complex(0, 1) * skew_part(A);  // Hermitian
  auto f = [&](double theta) {
    return lambda_min_herm(std::cos(theta) * H + std::sin(theta) * iS);
  };

  SectorialReport rep;
  const int grid = 720;
  rep.support_samples.reserve(grid);
  int best = 0;
  double fbest = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    const double theta = -kPi + 2.0 * kPi * j / grid;
    const double val = f(theta);
    rep.support_samples.emplace_back(theta, val);
    if (val > fbest) {
      fbest = val;
      best = j;
    }
  }

  // Golden-section refinement on the bracket around the best grid point.
  const double step = 2.0 * kPi / grid;
  double a = rep.support_samples[best].first - step;
  double b = rep.support_samples[best].first + step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double theta_star = (fc > fd) ? c : d;
  double margin = std::max(fc, fd);
  if (fbest > margin) {
    theta_star = rep.support_samples[best].first;
    margin = fbest;
  }
  if (theta_star >= kPi) theta_star -= 2.0 * kPi;
  if (theta_star < -kPi) theta_star += 2.0 * kPi;

  rep.theta_star = theta_star;
  rep.margin = margin;
  rep.sectorial = margin > Tolerances::global().pd_rel * spectral_norm(A);
  return rep;
}

namespace {

// Phases of the strictly accretive Aacc as arctangents of the whitened skew
// part's spectrum; nonincreasing.
RVector accretive_phases(const CMatrix& Aacc, const char* who) {
  auto [H, S] = cartesian_parts(Aacc);
  Whitening w = whiten(H, who);
  CMatrix M = w.invhalf * (Complex(0, -1) * S) * w.invhalf;
  M = (M + M.adjoint()) / 2.0;
  HermEig em = eig_hermitian(M);
  RVector phi(em.lambda.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    phi(i) = std::atan(em.lambda(i));
  return phi;
}

}  // namespace

RVector phases(const CMatrix& A) {
  SectorialReport rep = is_sectorial(A);
  if (!rep.sectorial)
    raise(ErrorKind::NotSectorial,
          "phases: numerical range margin " + std::to_string(rep.margin) +
              " is not positive");
  CMatrix Arot = std::exp(Complex(0, rep.theta_star)) * A;
  RVector phi = accretive_phases(Arot, "phases");
  return (phi.array() - rep.theta_star).matrix();
}

SectorialDecomp sectorial_decomposition(const CMatrix& A) {
  SectorialReport rep = is_sectorial(A);
  if (!rep.sectorial)
    raise(ErrorKind::NotSectorial,
          "sectorial_decomposition: numerical range margin is not positive");
  CMatrix Arot = std::exp(Complex(0, rep.theta_star)) * A;
  auto [H, S] = cartesian_parts(Arot);
  Whitening w = whiten(H, "sectorial_decomposition");
  CMatrix M = w.invhalf * (Complex(0, -1) * S) * w.invhalf;
  M = (M + M.adjoint()) / 2.0;
  HermEig em = eig_hermitian(M);

  const Eigen::Index n = A.rows();
  CVector scale(n);
  SectorialDecomp dec;
  dec.phases = RVector(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    scale(i) = std::pow(1.0 + em.lambda(i) * em.lambda(i), 0.25);
    dec.phases(i) = std::atan(em.lambda(i)) - rep.theta_star;
  }
  dec.T = scale.asDiagonal() * em.V.adjoint() * w.half;
  return dec;
}

SymPolar sym_polar(const CMatrix& A) {
  auto [ok, margin] = is_accretive(A);
  if (!ok)
    raise(ErrorKind::NotAccretive,
          "sym_polar: accretivity margin " + std::to_string(margin) +
              " is not positive");
  auto [H, S] = cartesian_parts(A);
  Whitening w = whiten(H, "sym_polar");

  // A = H^{1/2} (I + iM) H^{1/2} with M Hermitian.
  CMatrix M = w.invhalf * (Complex(0, -1) * S) * w.invhalf;
  M = (M + M.adjoint()) / 2.0;
  HermEig em = eig_hermitian(M);

  // Polar factors of K = I + iM share M's eigenbasis.
  const Eigen::Index n = A.rows();
  CVector vk(n), qk_rt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = em.lambda(i);
    const double r = std::sqrt(1.0 + lam * lam);
    vk(i) = Complex(1.0, lam) / r;
    qk_rt(i) = std::sqrt(r);
  }
  CMatrix VK = em.V * vk.asDiagonal() * em.V.adjoint();
  CMatrix QKr = em.V * qk_rt.asDiagonal() * em.V.adjoint();
  QKr = (QKr + QKr.adjoint()) / 2.0;

  CMatrix L = QKr * w.half;
  PolarDecomp pl = polar(L);

  SymPolar out;
  out.P = (pl.Q + pl.Q.adjoint()) / 2.0;
  out.U = pl.V.adjoint() * VK * pl.V;

  const Tolerances& tol = Tolerances::global();
  const double scale = std::max(A.norm(), 1e-300);
  if ((out.P * out.U * out.P - A).norm() > tol.resid * scale * 100)
    raise(ErrorKind::InternalConsistency,
          "sym_polar: reconstruction residual exceeds gate");
  const Eigen::Index nn = A.rows();
  if ((out.U.adjoint() * out.U - CMatrix::Identity(nn, nn)).norm() >
      tol.orth * std::sqrt(static_cast<double>(nn)) * 100)
    raise(ErrorKind::InternalConsistency,
          "sym_polar: unitary factor failed the orthogonality gate");
  if (lambda_min_herm(hermitian_part(out.U)) <= 0)
    raise(ErrorKind::InternalConsistency,
          "sym_polar: unitary factor is not accretive");
  return out;
}

std::pair<CMatrix, double> rotate_to_accretive(const CMatrix& A, double alpha,
                                               double beta) {
  if (std::abs(beta - alpha - kPi) > 1e-12)
    raise(ErrorKind::InvalidInput,
          "rotate_to_accretive: sector width must be pi");
  RVector phi = phases(A);
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    double d = std::fmod(phi(i) - alpha, 2.0 * kPi);
    if (d < 0) d += 2.0 * kPi;
    if (!(d > 0 && d < kPi))
      raise(ErrorKind::PhaseOutOfSector,
            "rotate_to_accretive: phase " + std::to_string(phi(i)) +
                " outside (" + std::to_string(alpha) + ", " +
                std::to_string(beta) + ") mod 2pi");
  }
  const double rot = -(alpha + beta) / 2.0;
  CMatrix R = std::exp(Complex(0, rot)) * A;
  if (!is_accretive(R).first)
    raise(ErrorKind::PhaseOutOfSector,
          "rotate_to_accretive: rotated matrix touches the accretivity "
          "boundary");
  return {R, rot};
}

CMatrix path_to_identity(const SectorialDecomp& dec, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    raise(ErrorKind::InvalidInput, "path_to_identity: t must lie in [0, 1]");
  const Eigen::Index n = dec.T.rows();
  if (dec.phases.size() != n)
    raise(ErrorKind::InvalidInput, "path_to_identity: inconsistent decomposition");
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(dec.phases(i)) >= kPi / 2.0)
      raise(ErrorKind::NotAccretive,
            "path_to_identity: decomposition phases leave (-pi/2, pi/2)");
  if (t == 1.0) return CMatrix::Identity(n, n);

  auto phase_leg = [&](double s) {
    CVector d(n);
    for (Eigen::Index i = 0; i < n; ++i)
      d(i) = std::exp(Complex(0, s * dec.phases(i)));
    return CMatrix(dec.T.adjoint() * d.asDiagonal() * dec.T);
  };
  auto pd_leg = [&](double e) {
    CMatrix G = dec.T.adjoint() * dec.T;
    return pow_pd((G + G.adjoint()) / 2.0, e);
  };

  if (t < 0.5) return phase_leg(1.0 - 2.0 * t);
  CMatrix X = pd_leg(2.0 - 2.0 * t);
  if (t == 0.5) {
    // The two branch formulas coincide at the seam.
    CMatrix Y = phase_leg(0.0);
    if ((X - Y).norm() > 1e-10 * std::max(X.norm(), 1e-300))
      raise(ErrorKind::InternalConsistency,
            "path_to_identity: branch values disagree at t = 1/2");
  }
  return X;
}

CMatrix path_to_identity(const CMatrix& A, double t) {
  auto [ok, margin] = is_accretive(A);
  if (!ok)
    raise(ErrorKind::NotAccretive,
          "path_to_identity: accretivity margin " + std::to_string(margin) +
              " is not positive");
  return path_to_identity(sectorial_decomposition(A), t);
}

}  // namespace accretive
