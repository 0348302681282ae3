#include "accretive/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace accretive {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double p_norm_eval(double p, const RVector& x) {
  if (x.size() == 0) return 0.0;
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  if (std::isinf(p)) return m;
  if (p == 1.0) return m * (x.cwiseAbs() / m).sum();
  if (p == 2.0) return x.stableNorm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    acc += std::pow(std::abs(x(i)) / m, p);
  return m * std::pow(acc, 1.0 / p);
}
}  // namespace

GaugeFunction GaugeFunction::p_norm(double p) {
  if (!(p >= 1.0))  // rejects NaN too
    raise(ErrorKind::InvalidInput, "gauge: p-norm requires p >= 1");
  GaugeFunction g;
  g.is_p_norm_ = true;
  g.p_ = p;
  g.smooth_ = (p > 1.0) && !std::isinf(p);
  g.name_ = std::isinf(p) ? "max-norm" : ("p-norm(" + std::to_string(p) + ")");
  return g;
}

GaugeFunction GaugeFunction::custom(std::function<double(const RVector&)> fn,
                                    bool smooth, std::string name) {
  if (!fn) raise(ErrorKind::InvalidInput, "gauge: empty callable");
  GaugeFunction g;
  g.is_p_norm_ = false;
  g.p_ = std::numeric_limits<double>::quiet_NaN();
  g.smooth_ = smooth;
  g.name_ = std::move(name);
  g.fn_ = std::move(fn);
  return g;
}

double GaugeFunction::operator()(const RVector& x) const {
  if (!x.allFinite())
    raise(ErrorKind::InvalidInput, "gauge: non-finite argument");
  if (is_p_norm_) return p_norm_eval(p_, x);
  return fn_(x);
}

double gauge_eval(const GaugeFunction& phi, const RVector& x) { return phi(x); }

GaugeReport validate_gauge(const GaugeFunction& phi, int trials,
                           std::uint64_t seed, int dim) {
  if (trials < 1 || dim < 1)
    raise(ErrorKind::InvalidInput, "validate_gauge: trials and dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::uniform_int_distribution<int> coin(0, 1);

  GaugeReport rep;
  rep.trials = trials;
  const double tol = 1e-12;

  for (int trial = 0; trial < trials; ++trial) {
    RVector x(dim), y(dim);
    for (int i = 0; i < dim; ++i) x(i) = unif(rng);
    for (int i = 0; i < dim; ++i) y(i) = unif(rng);
    const double beta = unif(rng);

    const double fx = phi(x);
    const double fy = phi(y);
    const double scale = std::max({1.0, fx, fy});

    if (x.cwiseAbs().maxCoeff() > 0 && !(fx > 0)) {
      rep.violations.push_back({"positivity", x, RVector(), 0, fx, 0});
    }
    const double hom = phi(beta * x);
    if (std::abs(hom - std::abs(beta) * fx) > tol * scale * (1 + std::abs(beta))) {
      rep.violations.push_back(
          {"homogeneity", x, RVector(), beta, hom, std::abs(beta) * fx});
    }
    const double tri = phi(x + y);
    if (tri > fx + fy + tol * scale) {
      rep.violations.push_back({"triangle", x, y, 0, tri, fx + fy});
    }
    // Random signed permutation of x.
    RVector z(dim);
    std::vector<int> perm(dim);
    for (int i = 0; i < dim; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < dim; ++i)
      z(i) = (coin(rng) ? 1.0 : -1.0) * x(perm[i]);
    const double fz = phi(z);
    if (std::abs(fz - fx) > tol * scale) {
      rep.violations.push_back({"symmetry", x, z, 0, fz, fx});
    }
  }
  return rep;
}

ProductFunction ProductFunction::euclidean_sum() {
  ProductFunction p;
  p.name_ = "euclidean_sum";
  p.q_ = std::numeric_limits<double>::quiet_NaN();
  p.fn_ = [](double a, double b) { return a + b; };
  return p;
}

ProductFunction ProductFunction::power_mean(double q) {
  if (!(q > 1.0))
    raise(ErrorKind::InvalidInput, "product: power mean requires q > 1");
  ProductFunction p;
  p.name_ = "power_mean(" + std::to_string(q) + ")";
  p.q_ = q;
  p.fn_ = [q](double a, double b) {
    if (a == 0.0 && b == 0.0) return 0.0;
    const double m = std::max(a, b);
    return m * std::pow(std::pow(a / m, q) + std::pow(b / m, q), 1.0 / q);
  };
  return p;
}

ProductFunction ProductFunction::custom(std::function<double(double, double)> fn,
                                        std::string name) {
  if (!fn) raise(ErrorKind::InvalidInput, "product: empty callable");
  ProductFunction p;
  p.name_ = std::move(name);
  p.q_ = std::numeric_limits<double>::quiet_NaN();
  p.fn_ = std::move(fn);
  return p;
}

double ProductFunction::operator()(double x1, double x2) const {
  if (!(x1 >= 0.0) || !(x2 >= 0.0))
    raise(ErrorKind::InvalidInput,
          "product: arguments must be nonnegative and finite");
  return fn_(x1, x2);
}

double product_eval(const ProductFunction& psi, double x1, double x2) {
  return psi(x1, x2);
}

ProductReport validate_product(const ProductFunction& psi, int grid_size,
                               double range) {
  if (grid_size < 2 || !(range > 0))
    raise(ErrorKind::InvalidInput, "validate_product: bad grid");
  ProductReport rep;
  rep.grid_size = grid_size;
  rep.range = range;

  if (psi(0.0, 0.0) != 0.0)
    rep.violations.push_back({1, 0.0, 0.0, psi(0.0, 0.0)});

  const double margin = 1e-6;
  for (int i = 1; i <= grid_size; ++i) {
    for (int j = 1; j <= grid_size; ++j) {
      const double x = range * i / grid_size;
      const double y = range * j / grid_size;

      // (i) positivity away from the origin, including the axes.
      if (j == 1) {
        if (!(psi(x, 0.0) > 0)) rep.violations.push_back({1, x, 0.0, psi(x, 0.0)});
        if (!(psi(0.0, x) > 0)) rep.violations.push_back({1, 0.0, x, psi(0.0, x)});
      }
      const double v = psi(x, y);
      if (!(v > 0)) {
        rep.violations.push_back({1, x, y, v});
        continue;
      }
      // (ii) degree-1 homogeneity, exact samples.
      for (double c : {0.5, 2.0, 3.7}) {
        if (std::abs(psi(c * x, c * y) - c * v) > 1e-12 * (1 + c * v)) {
          rep.violations.push_back({2, x, y, psi(c * x, c * y) - c * v});
          break;
        }
      }
      // (iii)-(v) by central differences.
      const double h = 1e-5 * std::max({x, y, 1.0});
      if (x - h <= 0 || y - h <= 0) continue;
      const double d1 = (psi(x + h, y) - psi(x - h, y)) / (2 * h);
      const double d2 = (psi(x, y + h) - psi(x, y - h)) / (2 * h);
      const double d12 = (psi(x + h, y + h) - psi(x + h, y - h) -
                          psi(x - h, y + h) + psi(x - h, y - h)) /
                         (4 * h * h);
      if (d1 < -margin || d2 < -margin)
        rep.violations.push_back({3, x, y, std::min(d1, d2)});
      if (std::abs(d1) <= margin || std::abs(d2) <= margin)
        rep.violations.push_back({4, x, y, std::min(std::abs(d1), std::abs(d2))});
      const double disc = d1 * d2 - 2.0 * v * d12;
      if (std::abs(disc) <= margin) rep.violations.push_back({5, x, y, disc});
    }
  }
  return rep;
}

double tangent_norm_P(const CMatrix& P, const CMatrix& X,
                      const GaugeFunction& phi) {
  require_square_finite(P, "tangent_norm_P");
  require_square_finite(X, "tangent_norm_P");
  if (P.rows() != X.rows())
    raise(ErrorKind::InvalidInput, "tangent_norm_P: dimension mismatch");
  if ((X - X.adjoint()).norm() >
      Tolerances::global().herm * std::max(X.norm(), 1e-300) + 1e-300)
    raise(ErrorKind::NotHermitian, "tangent_norm_P: tangent is not Hermitian");

  HermEig ep = eig_hermitian(P);
  if (ep.lambda(ep.lambda.size() - 1) <=
      Tolerances::global().pd_rel * std::abs(ep.lambda(0)))
    raise(ErrorKind::NotPositiveDefinite,
          "tangent_norm_P: base point is not positive definite");
  CVector ri = ep.lambda.array().rsqrt().cast<Complex>();
  CMatrix W = ep.V * ri.asDiagonal() * ep.V.adjoint();
  CMatrix Y = W * ((X + X.adjoint()) / 2.0) * W;
  Y = (Y + Y.adjoint()) / 2.0;
  HermEig ey = eig_hermitian(Y);
  return phi(ey.lambda.cwiseAbs());
}

double tangent_norm_AU(const CMatrix& U, const CMatrix& X,
                       const GaugeFunction& phi) {
  require_square_finite(U, "tangent_norm_AU");
  require_square_finite(X, "tangent_norm_AU");
  if (U.rows() != X.rows())
    raise(ErrorKind::InvalidInput, "tangent_norm_AU: dimension mismatch");
  if ((X + X.adjoint()).norm() >
      Tolerances::global().herm * std::max(X.norm(), 1e-300) + 1e-300)
    raise(ErrorKind::NotSkewHermitian,
          "tangent_norm_AU: tangent is not skew-Hermitian");
  CMatrix Y = (X - X.adjoint()) / Complex(0, 2);
  HermEig ey = eig_hermitian(Y);
  return phi(ey.lambda.cwiseAbs());
}

}  // namespace accretive
