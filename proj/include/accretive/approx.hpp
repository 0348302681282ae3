#pragma once

#include "accretive/finsler.hpp"
#include "accretive/manifold.hpp"

namespace accretive {

// log-rank of a strictly accretive A = PUP: the larger of the counts of
// log-eigenvalues of P^2 and phases of U exceeding the thresholds.
struct LogRankResult {
  int r_P = 0;
  int r_U = 0;
  int r = 0;
};

LogRankResult log_rank(const CMatrix& A, double tol_one = -1,
                       double tol_zero = -1);

// Metric projections onto the factor manifolds; independent of the metric
// choice (any gauge pair gives the same minimizer).
CMatrix closest_pd(const CMatrix& A);  // sym_polar(A).P squared
CMatrix closest_au(const CMatrix& A);  // sym_polar(A).U

struct Truncation {
  CMatrix matrix;
  double objective = 0.0;  // attained distance-to-input under the gauge
};

// Keeps the r largest |log lambda| of a positive definite P2, resets the rest
// to 1.  Ties break toward the larger eigenvalue, then the lower index.
Truncation truncate_pd_logrank(const CMatrix& P2, int r,
                               const GaugeFunction& phi);

// Keeps the r largest |phase| of a strictly accretive unitary U, resets the
// rest to 0.  Ties break toward the positive phase, then the lower index.
Truncation truncate_unitary_logrank(const CMatrix& U, int r,
                                    const GaugeFunction& phi);

// Closest matrix of log-rank at most r: P_r U_r P_r from the two truncations
// of the symmetric polar factors.
CMatrix closest_logrank(const CMatrix& A, int r, const MetricConfig& cfg);

}  // namespace accretive
