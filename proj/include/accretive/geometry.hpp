#pragma once

#include <cstdint>
#include <functional>

#include "accretive/finsler.hpp"
#include "accretive/manifold.hpp"

namespace accretive {

// Geodesic t -> P^{expm}(t) on positive definite matrices through P (t=0) and
// Q (t=1), evaluated from the congruence diagonalization P = SS*, Q = S L S*.
CMatrix geodesic_P(const CMatrix& P, const CMatrix& Q, double t);

// phi(log lambda(P^{-1} Q)).
double distance_P(const CMatrix& P, const CMatrix& Q, const GaugeFunction& phi);

// Geodesic U e^{t log(U*V)} between strictly accretive unitaries; every point
// with t in [0,1] stays strictly accretive (checked).
CMatrix geodesic_AU(const CMatrix& U, const CMatrix& V, double t);

// phi(|phases of U*V|).
double distance_AU(const CMatrix& U, const CMatrix& V,
                   const GaugeFunction& phi);

// Connecting geodesic between strictly accretive A and B, cached form.  The
// curve is gamma(t) = gP(t)^{1/2} gU(t) gP(t)^{1/2} with
//   gP(t) = P_A^2 e^{t log(P_A^{-2} P_B^2)}   (positive definite leg)
//   gU(t) = U_A e^{t log(U_A^* U_B)}          (accretive unitary leg)
// built from the endpoint symmetric polar decompositions.
class GeodesicA {
 public:
  GeodesicA(const CMatrix& A, const CMatrix& B);

  const SymPolar& end_a() const { return spa_; }
  const SymPolar& end_b() const { return spb_; }

  CMatrix eval(double t) const;    // gamma(t); strictly accretive on [0,1]
  CMatrix eval_P(double t) const;  // gP(t)
  CMatrix eval_U(double t) const;  // gU(t)
  CMatrix deriv_P(double t) const; // d/dt gP(t), Hermitian
  CMatrix deriv_U(double t) const; // d/dt gU(t)

  CMatrix generator_P() const;          // log(P_A^{-2} P_B^2)
  const CMatrix& generator_U() const { return Z_; }
  const RVector& log_lambda() const { return loglam_; }

  double distance(const MetricConfig& cfg) const;

 private:
  SymPolar spa_, spb_;
  CMatrix S_;        // congruence factor of (P_A^2, P_B^2)
  CMatrix Sadj_inv_; // S^{-*}
  RVector loglam_;
  CMatrix Z_;        // log(U_A^* U_B)
  HermEig zeig_;     // eigendata of Z/i
  int n_ = 0;
};

CMatrix geodesic_A(const CMatrix& A, const CMatrix& B, double t);

// Dual-evaluated distance on strictly accretive matrices:
//   sqrt(Psi(phi1(log lambda(P_A^{-1} P_B^2 P_A^{-1}))^2,
//            phi2(phases(U_A^* U_B))^2))
// computed once through eigenvalue data and once through matrix logarithms;
// the two routes must agree (InternalConsistency otherwise).
double distance_A(const CMatrix& A, const CMatrix& B, const MetricConfig& cfg);

// A curve in the product chart: the positive definite leg and the accretive
// unitary leg, with optional analytic derivatives (central differences with
// h = 1e-6 are used when absent).
struct ComponentCurve {
  std::function<CMatrix(double)> P;
  std::function<CMatrix(double)> U;
  std::function<CMatrix(double)> dP;  // may be empty
  std::function<CMatrix(double)> dU;  // may be empty
};

struct ArcLengthResult {
  double value = 0.0;
  double error_estimate = 0.0;  // Richardson estimate from panel halving
};

// Composite-Simpson arc length of the curve on [0,1] under the product
// Finsler metric; `samples` panels (rounded up to even).  DomainExit names
// the first parameter where a leg leaves its manifold.
ArcLengthResult arc_length(const ComponentCurve& curve, const MetricConfig& cfg,
                           int samples = 2000);

// Residuals (|lhs - rhs| / (1 + |rhs|)) of the distance invariances:
// inversion, adjoint, the doubling identity d(A^{-1}, A) = 2 d(I, A), the
// midpoint identity gamma_{A^{-1},A}(1/2) = I (Frobenius residual), and
// unitary congruence by a seeded Haar unitary.
struct DistancePropertyReport {
  double inverse_residual = 0;
  double adjoint_residual = 0;
  double doubling_residual = 0;
  double midpoint_residual = 0;
  double unitary_congruence_residual = 0;
  double max_residual() const;
};

DistancePropertyReport check_distance_properties(const CMatrix& A,
                                                 const CMatrix& B,
                                                 const MetricConfig& cfg,
                                                 std::uint64_t seed);

}  // namespace accretive
