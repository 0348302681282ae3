#include "accretive/sampler.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace accretive {

CMatrix haar_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) raise(ErrorKind::InvalidSpec, "haar_unitary: n must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      G(i, j) = Complex(re, im) / std::numbers::sqrt2;
    }
  Eigen::HouseholderQR<CMatrix> qr(G);
  CMatrix Q = qr.householderQ();
  CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase correction makes the distribution Haar.
  for (int j = 0; j < n; ++j) {
    const Complex rjj = R(j, j);
    const double a = std::abs(rjj);
    Q.col(j) *= (a > 0) ? (rjj / a) : Complex(1, 0);
  }
  return Q;
}

SampledAccretive sample_accretive(const SamplerSpec& spec) {
  if (spec.n < 1) raise(ErrorKind::InvalidSpec, "sampler: n must be >= 1");
  if (!(spec.log_spread >= 0))
    raise(ErrorKind::InvalidSpec, "sampler: log_spread must be >= 0");
  if (!(spec.phase_spread >= 0) || spec.phase_spread >= std::numbers::pi / 2)
    raise(ErrorKind::InvalidSpec, "sampler: phase_spread must lie in [0, pi/2)");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int n = spec.n;

  // Draw order is fixed: V1 entries, log-spectrum, V2 entries, phases.
  CMatrix V1 = haar_unitary(n, rng);
  CVector pdiag(n);
  for (int i = 0; i < n; ++i)
    pdiag(i) = std::exp(unif(rng) * spec.log_spread / 2.0);
  CMatrix V2 = haar_unitary(n, rng);
  CVector udiag(n);
  for (int i = 0; i < n; ++i)
    udiag(i) = std::exp(Complex(0, unif(rng) * spec.phase_spread));

  SampledAccretive out;
  out.P = V1 * pdiag.asDiagonal() * V1.adjoint();
  out.P = (out.P + out.P.adjoint()) / 2.0;
  out.U = V2 * udiag.asDiagonal() * V2.adjoint();
  out.A = out.P * out.U * out.P;
  return out;
}

}  // namespace accretive
