#pragma once

#include "accretive/finsler.hpp"
#include "accretive/manifold.hpp"

namespace accretive {

// Geometric mean A^{1/2}(A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} of strictly
// accretive A, B: the unique strictly accretive solution of G A^{-1} G = B.
CMatrix geometric_mean(const CMatrix& A, const CMatrix& B);

// || G A^{-1} G - B ||_F / ||B||_F.
double riccati_residual(const CMatrix& G, const CMatrix& A, const CMatrix& B);

// Mean of a congruence pair T* D_A T, T* D_B T with diagonal accretive legs:
// T* diag(sqrt(d_A d_B)) T with principal scalar roots.
CMatrix congruence_mean(const CMatrix& T, const CMatrix& DA, const CMatrix& DB);

// Comparison of the geometric mean with the geodesic midpoint.
struct MidpointMeanReport {
  double mean_midpoint_gap = 0;   // ||A#B - gamma(1/2)||_F
  double relative_gap = 0;        // gap / ||gamma(1/2)||_F
  double factored_residual = 0;   // direct midpoint vs factored-mean midpoint
  bool condition_unitary_legs_identity = false;  // U_A = U_B = I
  bool condition_equal_pd_legs = false;          // P_A = P_B
  bool condition_commuting_normal = false;       // A, B normal and commuting
  bool equality = false;                         // gap below threshold
  bool equality_without_known_condition = false;
};

MidpointMeanReport midpoint_mean_report(const CMatrix& A, const CMatrix& B,
                                        const MetricConfig& cfg);

}  // namespace accretive
