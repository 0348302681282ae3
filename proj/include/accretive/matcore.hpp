#pragma once

#include <complex>
#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "accretive/errors.hpp"
#include "accretive/tolerances.hpp"

namespace accretive {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Throws InvalidInput unless A is square, nonempty and all entries are finite.
void require_square_finite(const CMatrix& A, const char* who);

double spectral_norm(const CMatrix& A);

// Hermitian eigendecomposition H = V diag(lambda) V*, lambda nonincreasing.
// Eigenvector columns are phase-fixed (first nonvanishing component real
// positive) so the output is deterministic for a fixed input.
struct HermEig {
  CMatrix V;
  RVector lambda;
};

// Polar factorization A = V Q with V unitary and Q positive semidefinite.
struct PolarDecomp {
  CMatrix V;
  CMatrix Q;
};

// Simultaneous diagonalization by congruence: P = S S*, Q = S diag(lambda) S*.
// lambda is the (positive, nonincreasing) spectrum of P^{-1} Q.
struct CongruenceDiag {
  CMatrix S;
  RVector lambda;
};

// A = H + S with H Hermitian, S skew-Hermitian; exact by construction.
std::pair<CMatrix, CMatrix> cartesian_parts(const CMatrix& A);

CMatrix hermitian_part(const CMatrix& A);
CMatrix skew_part(const CMatrix& A);

HermEig eig_hermitian(const CMatrix& H);

// Eigendecomposition of a normal matrix, N = V diag(lambda) V* with V unitary.
// Reduces to triangular form by unitary similarity and requires the
// off-diagonal residual to vanish; NotNormal otherwise.
std::pair<CMatrix, CVector> eig_normal(const CMatrix& N);

// Polar factors of an invertible A computed from the Hermitian
// eigendecomposition of A*A: Q = (A*A)^{1/2}, V = A Q^{-1}.
PolarDecomp polar(const CMatrix& A);

// V f(lambda) V* for Hermitian H.  f is applied to each eigenvalue; pass
// `domain` to reject eigenvalues outside f's domain (DomainError).
CMatrix fun_hermitian(const CMatrix& H, const std::function<double(double)>& f,
                      const std::function<bool(double)>& domain = nullptr);

CMatrix log_pd(const CMatrix& H);    // DomainError unless spectrum positive
CMatrix sqrt_pd(const CMatrix& H);   // DomainError unless spectrum positive
CMatrix pow_pd(const CMatrix& H, double t);
CMatrix exp_hermitian(const CMatrix& H);

// Unitary exponential of a skew-Hermitian Z.
CMatrix exp_skew(const CMatrix& Z);

// Principal logarithm of a unitary U: the unique skew-Hermitian Z with
// e^Z = U and eigenvalue phases in (-pi, pi).  BranchCut if an eigenvalue
// lies within tol.branch of the cut at -1.
CMatrix log_unitary(const CMatrix& U);

// Principal square root of a matrix with no eigenvalue on the closed negative
// real axis, by the coupled product-form Newton iteration with determinantal
// scaling.  Singular / BranchCut on excluded spectra, ConvergenceFailure if
// the 100-iteration budget runs out.
CMatrix sqrt_principal(const CMatrix& A);

CongruenceDiag simdiag_congruence(const CMatrix& P, const CMatrix& Q);

}  // namespace accretive
