#pragma once

#include <utility>
#include <vector>

#include "accretive/matcore.hpp"

namespace accretive {

// Support-function sweep summary for the numerical range.  theta_star is the
// rotation maximizing the accretivity margin; margin is that maximum;
// support_samples are the coarse-grid pairs (theta, lambda_min(H(e^{i theta}A))).
struct SectorialReport {
  bool sectorial = false;
  double theta_star = 0.0;
  double margin = 0.0;
  std::vector<std::pair<double, double>> support_samples;
};

// A = T* diag(e^{i phases}) T with T invertible; phases nonincreasing with
// spread strictly below pi.
struct SectorialDecomp {
  CMatrix T;
  RVector phases;
};

// A = P U P with P positive definite and U a strictly accretive unitary.
struct SymPolar {
  CMatrix P;
  CMatrix U;
};

// (flag, margin) with margin = lambda_min of the Hermitian part.
std::pair<bool, double> is_accretive(const CMatrix& A);

SectorialReport is_sectorial(const CMatrix& A);

// Phase vector, nonincreasing.  Anchored by the max-margin rotation
// theta_star: phases of e^{i theta_star}A are taken in (-pi/2, pi/2) and
// theta_star is subtracted.  NotSectorial when the margin sweep fails.
RVector phases(const CMatrix& A);

SectorialDecomp sectorial_decomposition(const CMatrix& A);

// Unique symmetric polar decomposition of a strictly accretive matrix,
// computed constructively (accretive-part whitening, polar of I + iM, then
// polar of the recombined factor).  Residual and factor memberships are
// checked before returning.
SymPolar sym_polar(const CMatrix& A);

// Rotates a sectorial A whose phases lie (mod 2pi) in the sector
// (alpha, beta), beta - alpha = pi, onto the strictly accretive cone.
// Returns the rotated matrix and the applied rotation angle -(alpha+beta)/2.
std::pair<CMatrix, double> rotate_to_accretive(const CMatrix& A, double alpha,
                                               double beta);

// Continuous path from a strictly accretive A to the identity:
// T* D^{1-2t} T on [0, 1/2), (T*T)^{2-2t} on [1/2, 1], with A = T*DT.
// Every point is strictly accretive.
CMatrix path_to_identity(const CMatrix& A, double t);
CMatrix path_to_identity(const SectorialDecomp& dec, double t);

}  // namespace accretive
