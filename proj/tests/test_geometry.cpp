#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "accretive/geometry.hpp"
#include "helpers.hpp"

using namespace accretive;
using namespace testutil;

namespace {
constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

CMatrix inverse_of(const CMatrix& A) {
  return A.partialPivLu().solve(CMatrix::Identity(A.rows(), A.cols()));
}

CMatrix pd_conjugate(const CMatrix& P, const CMatrix& X) {
  // P^{-1/2} X P^{-1/2}, symmetrized.
  CMatrix Ph = sqrt_pd(P);
  CMatrix Y = Ph.partialPivLu().solve(
      Ph.partialPivLu().solve(X).adjoint()).adjoint();
  return (Y + Y.adjoint()) / 2.0;
}
}  // namespace

TEST_CASE("geodesic_P: endpoints, alternate closed form, extension identity") {
  std::mt19937_64 rng(901);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    CMatrix P = random_pd(n, rng, 1.4);
    CMatrix Q = random_pd(n, rng, 1.4);

    CHECK(rel_err(geodesic_P(P, Q, 0.0), P) <= 1e-11);
    CHECK(rel_err(geodesic_P(P, Q, 1.0), Q) <= 1e-11);

    for (double t : {0.25, 0.5, 0.8}) {
      CMatrix G = geodesic_P(P, Q, t);
      CMatrix alt = sqrt_pd(P) * pow_pd(pd_conjugate(P, Q), t) * sqrt_pd(P);
      CHECK(rel_err(G, alt) <= 1e-10);
      HermEig eg = eig_hermitian(G);
      CHECK(eg.lambda(n - 1) > 0);
    }

    // Outside [0,1] the pencil form continues: gamma(2) = Q P^{-1} Q.
    CHECK(rel_err(geodesic_P(P, Q, 2.0), Q * inverse_of(P) * Q) <= 1e-9);
  }
}

TEST_CASE("distance_P: frozen diagonal values") {
  CMatrix I2 = CMatrix::Identity(2, 2);
  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 4.0;
  D(1, 1) = 2.0;
  CHECK(distance_P(I2, D, GaugeFunction::p_norm(2)) ==
        doctest::Approx(std::hypot(std::log(4.0), std::log(2.0))).epsilon(1e-12));
  CHECK(distance_P(I2, D, GaugeFunction::p_norm(kInf)) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(distance_P(I2, D, GaugeFunction::p_norm(1)) ==
        doctest::Approx(std::log(8.0)).epsilon(1e-12));
}

TEST_CASE("distance_P: symmetry, congruence invariance, geodesic additivity") {
  std::mt19937_64 rng(911);
  GaugeFunction g2 = GaugeFunction::p_norm(2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    CMatrix P = random_pd(n, rng, 1.2);
    CMatrix Q = random_pd(n, rng, 1.2);
    const double d = distance_P(P, Q, g2);
    CHECK(std::abs(distance_P(Q, P, g2) - d) <= 1e-10 * (1 + d));

    CMatrix C(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) C(i, j) = Complex(gauss(rng), gauss(rng));
    CMatrix Pc = C.adjoint() * P * C;
    CMatrix Qc = C.adjoint() * Q * C;
    CHECK(std::abs(distance_P((Pc + Pc.adjoint()) / 2.0,
                              (Qc + Qc.adjoint()) / 2.0, g2) -
                   d) <= 1e-8 * (1 + d));

    for (double t : {0.3, 0.5, 0.9}) {
      CHECK(std::abs(distance_P(P, geodesic_P(P, Q, t), g2) - t * d) <=
            1e-9 * (1 + d));
    }
  }
}

TEST_CASE("geodesic_AU and distance_AU: frozen diagonal case") {
  CMatrix I2 = CMatrix::Identity(2, 2);
  CMatrix V = CMatrix::Zero(2, 2);
  V(0, 0) = std::exp(Complex(0, kPi / 4));
  V(1, 1) = std::exp(Complex(0, -kPi / 3));
  for (double t : {0.0, 0.3, 0.7, 1.0}) {
    CMatrix G = geodesic_AU(I2, V, t);
    CMatrix want = CMatrix::Zero(2, 2);
    want(0, 0) = std::exp(Complex(0, t * kPi / 4));
    want(1, 1) = std::exp(Complex(0, -t * kPi / 3));
    CHECK((G - want).norm() <= 1e-12);
  }
  CHECK(distance_AU(I2, V, GaugeFunction::p_norm(2)) ==
        doctest::Approx(std::hypot(kPi / 4, kPi / 3)).epsilon(1e-12));
  CHECK(distance_AU(I2, V, GaugeFunction::p_norm(kInf)) ==
        doctest::Approx(kPi / 3).epsilon(1e-12));
  CHECK(distance_AU(I2, V, GaugeFunction::p_norm(1)) ==
        doctest::Approx(kPi / 4 + kPi / 3).epsilon(1e-12));

  CMatrix scaled = 0.5 * I2;
  expect_kind([&] { distance_AU(scaled, V, GaugeFunction::p_norm(2)); },
              ErrorKind::NotAccretiveUnitary);
  CMatrix dissip = -I2;
  expect_kind([&] { distance_AU(dissip, V, GaugeFunction::p_norm(2)); },
              ErrorKind::NotAccretiveUnitary);
}

TEST_CASE("geodesic_AU: membership sweep and conjugation invariance") {
  std::mt19937_64 rng(921);
  GaugeFunction g2 = GaugeFunction::p_norm(2);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    CMatrix U = random_acc_unitary(n, rng, 1.3);
    CMatrix V = random_acc_unitary(n, rng, 1.3);

    CHECK((geodesic_AU(U, V, 0.0) - U).norm() <= 1e-10);
    CHECK((geodesic_AU(U, V, 1.0) - V).norm() <= 1e-10);
    for (int j = 0; j <= 20; ++j) {
      CMatrix G = geodesic_AU(U, V, j / 20.0);
      CHECK((G.adjoint() * G - CMatrix::Identity(n, n)).norm() <= 1e-10);
      CHECK(is_accretive(G).first);
    }

    const double d = distance_AU(U, V, g2);
    CMatrix W = haar_unitary(n, rng);
    CHECK(std::abs(distance_AU(W.adjoint() * U * W, W.adjoint() * V * W, g2) -
                   d) <= 1e-9 * (1 + d));
    CHECK(std::abs(distance_AU(V, U, g2) - d) <= 1e-10 * (1 + d));
  }
}

TEST_CASE("connecting geodesic: endpoints, factor caches, generators") {
  std::mt19937_64 rng(931);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    CMatrix A = sample(n, 1000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix B = sample(n, 2000 + static_cast<std::uint64_t>(trial)).A;
    GeodesicA geo(A, B);

    CHECK(rel_err(geo.eval(0.0), A) <= 1e-9);
    CHECK(rel_err(geo.eval(1.0), B) <= 1e-9);
    CHECK(rel_err(geo.eval_P(0.0), geo.end_a().P * geo.end_a().P) <= 1e-10);
    CHECK(rel_err(geo.eval_P(1.0), geo.end_b().P * geo.end_b().P) <= 1e-9);
    CHECK((geo.eval_U(0.0) - geo.end_a().U).norm() <= 1e-10);
    CHECK((geo.eval_U(1.0) - geo.end_b().U).norm() <= 1e-9);

    // Unitary generator reproduces the endpoint mismatch.
    CHECK((exp_skew(geo.generator_U()) -
           geo.end_a().U.adjoint() * geo.end_b().U).norm() <= 1e-10);

    // Positive-leg generator: PA^2 gen = dgamma_P(0) and PB^2 gen = dgamma_P(1).
    CMatrix gen = geo.generator_P();
    CHECK((geo.eval_P(0.0) * gen - geo.deriv_P(0.0)).norm() <=
          1e-9 * (1 + geo.deriv_P(0.0).norm()));
    CHECK((geo.eval_P(1.0) * gen - geo.deriv_P(1.0)).norm() <=
          1e-9 * (1 + geo.deriv_P(1.0).norm()));

    // Derivatives match central differences.
    for (double t : {0.25, 0.6}) {
      const double h = 1e-5;
      CMatrix fdP = (geo.eval_P(t + h) - geo.eval_P(t - h)) / (2 * h);
      CHECK((fdP - geo.deriv_P(t)).norm() <= 1e-7 * (1 + geo.deriv_P(t).norm()));
      CMatrix fdU = (geo.eval_U(t + h) - geo.eval_U(t - h)) / (2 * h);
      CHECK((fdU - geo.deriv_U(t)).norm() <= 1e-7 * (1 + geo.deriv_U(t).norm()));
    }

    // The assembled point factors as announced and stays strictly accretive.
    for (int j = 0; j <= 20; ++j) {
      const double t = j / 20.0;
      CMatrix R = sqrt_pd(geo.eval_P(t));
      CHECK(rel_err(geo.eval(t), R * geo.eval_U(t) * R) <= 1e-12);
      CHECK(is_accretive(geo.eval(t)).first);
    }
  }
}

TEST_CASE("distance on accretive matrices: scalar closed form") {
  MetricConfig cfg;
  for (double r1 : {0.3, 1.0, 2.7}) {
    for (double r2 : {0.5, 1.9}) {
      for (double th1 : {-1.2, -0.3, 0.0, 0.8, 1.4}) {
        for (double th2 : {-0.9, 0.2, 1.1}) {
          CMatrix A(1, 1), B(1, 1);
          A(0, 0) = r1 * std::exp(Complex(0, th1));
          B(0, 0) = r2 * std::exp(Complex(0, th2));
          const double want =
              std::hypot(std::log(r2 / r1), th2 - th1);
          CHECK(distance_A(A, B, cfg) == doctest::Approx(want).epsilon(1e-12));
        }
      }
    }
  }
  // The pair used by the command-line walkthrough.
  CMatrix A(1, 1), B(1, 1);
  A(0, 0) = 2.0;
  B(0, 0) = std::exp(Complex(0, kPi / 4));
  CHECK(distance_A(A, B, cfg) ==
        doctest::Approx(std::hypot(std::log(2.0), kPi / 4)).epsilon(1e-12));
  CHECK(distance_A(A, B, cfg) == doctest::Approx(1.0475224528).epsilon(1e-9));
}

TEST_CASE("distance on accretive matrices: metric identities and reductions") {
  std::mt19937_64 rng(941);
  MetricConfig cfg;
  GaugeFunction g2 = GaugeFunction::p_norm(2);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    CMatrix A = sample(n, 3000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix B = sample(n, 4000 + static_cast<std::uint64_t>(trial)).A;

    const double d = distance_A(A, B, cfg);
    CHECK(d > 1e-3);
    CHECK(std::abs(distance_A(B, A, cfg) - d) <= 1e-10 * (1 + d));
    CHECK(distance_A(A, A, cfg) <= 1e-12);
    CHECK(std::abs(GeodesicA(A, B).distance(cfg) - d) <= 1e-10 * (1 + d));

    // Positive definite endpoints reduce to the positive-cone distance.
    CMatrix P = random_pd(n, rng, 1.3);
    CMatrix Q = random_pd(n, rng, 1.3);
    CHECK(std::abs(distance_A(P, Q, cfg) - distance_P(P, Q, g2)) <=
          1e-10 * (1 + distance_P(P, Q, g2)));

    // Accretive unitary endpoints reduce to the unitary-leg distance.
    CMatrix U = random_acc_unitary(n, rng, 1.2);
    CMatrix V = random_acc_unitary(n, rng, 1.2);
    CHECK(std::abs(distance_A(U, V, cfg) - distance_AU(U, V, g2)) <=
          1e-10 * (1 + distance_AU(U, V, g2)));
  }
}

TEST_CASE("distance: geodesic additivity under several metric configurations") {
  std::mt19937_64 rng(951);
  std::vector<MetricConfig> cfgs(3);
  cfgs[1].phi1 = GaugeFunction::p_norm(kInf);
  cfgs[1].phi2 = GaugeFunction::p_norm(1);
  cfgs[2].psi = ProductFunction::power_mean(2.0);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    CMatrix A = sample(n, 5000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix B = sample(n, 6000 + static_cast<std::uint64_t>(trial)).A;
    GeodesicA geo(A, B);
    for (const MetricConfig& cfg : cfgs) {
      const double d = distance_A(A, B, cfg);
      for (double t : {0.25, 0.5, 0.75}) {
        CHECK(std::abs(distance_A(A, geo.eval(t), cfg) - t * d) <=
              1e-8 * (1 + d));
      }
    }
  }
}

TEST_CASE("distance: triangle inequality on seeded triples") {
  std::mt19937_64 rng(961);
  MetricConfig cfg;
  double worst = -1e300;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    CMatrix A = sample(n, 10000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix B = sample(n, 20000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix C = sample(n, 30000 + static_cast<std::uint64_t>(trial)).A;
    const double ab = distance_A(A, B, cfg);
    const double bc = distance_A(B, C, cfg);
    const double ac = distance_A(A, C, cfg);
    worst = std::max(worst, ac - (ab + bc));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("arc length: geodesics integrate to the distance") {
  std::mt19937_64 rng(971);
  MetricConfig cfg;
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    CMatrix A = sample(n, 7000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix B = sample(n, 8000 + static_cast<std::uint64_t>(trial)).A;
    GeodesicA geo(A, B);
    const double d = geo.distance(cfg);

    ComponentCurve curve;
    curve.P = [&](double t) { return geo.eval_P(t); };
    curve.U = [&](double t) { return geo.eval_U(t); };
    curve.dP = [&](double t) { return geo.deriv_P(t); };
    curve.dU = [&](double t) { return geo.deriv_U(t); };

    // The speed is constant along the geodesic, so even a coarse panel count
    // integrates it essentially exactly.
    ArcLengthResult coarse = arc_length(curve, cfg, 5);
    CHECK(std::abs(coarse.value - d) <= 1e-10 * (1 + d));
    ArcLengthResult fine = arc_length(curve, cfg, 400);
    CHECK(std::abs(fine.value - d) <= 1e-10 * (1 + d));
    CHECK(fine.error_estimate <= 1e-9);

    // Finite-difference fallback for the derivatives.
    ComponentCurve fd = curve;
    fd.dP = nullptr;
    fd.dU = nullptr;
    ArcLengthResult approx = arc_length(fd, cfg, 100);
    CHECK(std::abs(approx.value - fine.value) <= 1e-6 * (1 + d));
  }
}

TEST_CASE("arc length: perturbed curves are never shorter than the distance") {
  std::mt19937_64 rng(981);
  MetricConfig cfg;
  double best_excess = 1e300;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    CMatrix A = sample(n, 9000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix B = sample(n, 9500 + static_cast<std::uint64_t>(trial)).A;
    GeodesicA geo(A, B);
    const double d = geo.distance(cfg);

    CMatrix X = random_hermitian(n, rng, 0.5);
    CMatrix Z2 = random_skew(n, rng, 0.05);
    const double eps = 0.05;

    ComponentCurve curve;
    curve.P = [&, X](double t) {
      return CMatrix(geo.eval_P(t) + eps * std::sin(kPi * t) * X);
    };
    curve.dP = [&, X](double t) {
      return CMatrix(geo.deriv_P(t) + eps * kPi * std::cos(kPi * t) * X);
    };
    curve.U = [&, Z2](double t) {
      return CMatrix(geo.eval_U(t) * exp_skew(std::sin(kPi * t) * Z2));
    };
    curve.dU = [&, Z2](double t) {
      CMatrix E = exp_skew(std::sin(kPi * t) * Z2);
      return CMatrix(geo.deriv_U(t) * E +
                     geo.eval_U(t) * (kPi * std::cos(kPi * t)) * Z2 * E);
    };

    ArcLengthResult len = arc_length(curve, cfg, 800);
    CHECK(len.value >= d - 1e-8);
    best_excess = std::min(best_excess, len.value - d);
  }
  // At this perturbation size the detour must be visibly longer at least once.
  CHECK(best_excess > -1e-8);
}

TEST_CASE("arc length: domain exits and input gates") {
  MetricConfig cfg;
  const CMatrix I2 = CMatrix::Identity(2, 2);

  ComponentCurve leaves_pd;
  leaves_pd.P = [&](double t) {
    CMatrix P = I2;
    P(0, 0) = 1.0 - 1.5 * t;
    return P;
  };
  leaves_pd.U = [&](double) { return I2; };
  leaves_pd.dP = [&](double) {
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = -1.5;
    return D;
  };
  leaves_pd.dU = [&](double) { return CMatrix::Zero(2, 2); };
  expect_kind([&] { arc_length(leaves_pd, cfg, 36); }, ErrorKind::DomainExit);

  ComponentCurve leaves_unitary;
  leaves_unitary.P = [&](double) { return I2; };
  leaves_unitary.U = [&](double t) { return CMatrix((1.0 + 0.5 * t) * I2); };
  leaves_unitary.dP = [&](double) { return CMatrix::Zero(2, 2); };
  leaves_unitary.dU = [&](double) { return CMatrix(0.5 * I2); };
  expect_kind([&] { arc_length(leaves_unitary, cfg, 16); },
              ErrorKind::DomainExit);

  ComponentCurve leaves_sector;
  leaves_sector.P = [&](double) { return I2; };
  leaves_sector.U = [&](double t) {
    CMatrix U = I2;
    U(0, 0) = std::exp(Complex(0, 1.2 + kPi * t));
    return U;
  };
  leaves_sector.dP = [&](double) { return CMatrix::Zero(2, 2); };
  leaves_sector.dU = [&](double t) {
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = Complex(0, kPi) * std::exp(Complex(0, 1.2 + kPi * t));
    return D;
  };
  expect_kind([&] { arc_length(leaves_sector, cfg, 16); },
              ErrorKind::DomainExit);

  ComponentCurve missing;
  missing.U = [&](double) { return I2; };
  expect_kind([&] { arc_length(missing, cfg, 16); }, ErrorKind::InvalidInput);
}

TEST_CASE("distance invariance report stays at solver accuracy") {
  std::mt19937_64 rng(991);
  MetricConfig cfg;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    CMatrix A = sample(n, 11000 + static_cast<std::uint64_t>(trial)).A;
    CMatrix B = sample(n, 12000 + static_cast<std::uint64_t>(trial)).A;
    DistancePropertyReport rep =
        check_distance_properties(A, B, cfg, 77 + static_cast<std::uint64_t>(trial));
    CHECK(rep.inverse_residual <= 1e-9);
    CHECK(rep.adjoint_residual <= 1e-9);
    CHECK(rep.doubling_residual <= 1e-9);
    CHECK(rep.midpoint_residual <= 1e-9);
    CHECK(rep.unitary_congruence_residual <= 1e-9);
    CHECK(rep.max_residual() <= 1e-9);
  }
}
