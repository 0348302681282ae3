#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "accretive/matcore.hpp"

namespace accretive {

// Symmetric gauge function: a norm on R^n invariant under entry permutations
// and sign flips, normalized by nothing in particular here (p-norms ship
// built in; anything else enters as a callable).
class GaugeFunction {
 public:
  // p in [1, inf]; pass std::numeric_limits<double>::infinity() for the max
  // norm.  InvalidInput for p < 1 or NaN.
  static GaugeFunction p_norm(double p);
  static GaugeFunction custom(std::function<double(const RVector&)> fn,
                              bool smooth, std::string name = "custom");

  double operator()(const RVector& x) const;

  bool is_p_norm() const { return is_p_norm_; }
  double p() const { return p_; }  // NaN for custom gauges
  // Smooth away from 0 (true for p-norms with 1 < p < inf); drives the choice
  // between analytic and finite-difference machinery downstream.
  bool smooth() const { return smooth_; }
  const std::string& name() const { return name_; }

 private:
  GaugeFunction() = default;
  bool is_p_norm_ = false;
  double p_ = 0.0;
  bool smooth_ = false;
  std::string name_;
  std::function<double(const RVector&)> fn_;
};

double gauge_eval(const GaugeFunction& phi, const RVector& x);

struct GaugeViolation {
  std::string axiom;  // "positivity", "homogeneity", "triangle", "symmetry"
  RVector x;
  RVector y;       // second vector where the axiom needs one
  double beta = 0; // scalar where the axiom needs one
  double lhs = 0;
  double rhs = 0;
};

struct GaugeReport {
  int trials = 0;
  std::vector<GaugeViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Property check of the four gauge axioms on seeded random vectors
// (dimension `dim`), recording every violation with its witness.
GaugeReport validate_gauge(const GaugeFunction& phi, int trials,
                           std::uint64_t seed, int dim = 4);

// Minkowskian product function on [0,inf)^2: positive away from the origin,
// homogeneous of degree 1, monotone, with the two differential conditions
// (nonvanishing gradient, d1*d2 - 2*Psi*d12 != 0) on (0,inf)^2.
class ProductFunction {
 public:
  static ProductFunction euclidean_sum();         // x1 + x2
  static ProductFunction power_mean(double q);    // (x1^q + x2^q)^{1/q}, q > 1
  static ProductFunction custom(std::function<double(double, double)> fn,
                                std::string name = "custom");

  // InvalidInput on negative arguments.
  double operator()(double x1, double x2) const;

  const std::string& name() const { return name_; }
  bool is_euclidean_sum() const { return name_ == "euclidean_sum"; }
  double q() const { return q_; }  // NaN unless power_mean

 private:
  ProductFunction() = default;
  std::string name_;
  double q_ = 0.0;
  std::function<double(double, double)> fn_;
};

double product_eval(const ProductFunction& psi, double x1, double x2);

struct ProductViolation {
  int condition = 0;  // 1..5 in definition order
  double x1 = 0;
  double x2 = 0;
  double value = 0;   // offending quantity (residual, derivative, ...)
};

struct ProductReport {
  int grid_size = 0;
  double range = 0;
  std::vector<ProductViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the five product-function conditions on a grid over (0, range]^2;
// the differential conditions use central differences with h = 1e-5 * scale
// and flag near-zero margins (<= 1e-6).
ProductReport validate_product(const ProductFunction& psi, int grid_size,
                               double range = 10.0);

// Metric data for the product Finsler structure: gauge for the positive
// definite leg, gauge for the accretive-unitary leg, and the combiner.
struct MetricConfig {
  GaugeFunction phi1 = GaugeFunction::p_norm(2);
  GaugeFunction phi2 = GaugeFunction::p_norm(2);
  ProductFunction psi = ProductFunction::euclidean_sum();
};

// phi(sigma(P^{-1/2} X P^{-1/2})) for Hermitian X at base point P > 0.
double tangent_norm_P(const CMatrix& P, const CMatrix& X,
                      const GaugeFunction& phi);

// phi(sigma(X)) for skew-Hermitian X; independent of the base point U, which
// is accepted only to mirror the manifold signature.
double tangent_norm_AU(const CMatrix& U, const CMatrix& X,
                       const GaugeFunction& phi);

}  // namespace accretive
