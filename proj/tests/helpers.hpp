#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <doctest.h>

#include "accretive/matcore.hpp"
#include "accretive/sampler.hpp"

namespace testutil {

using accretive::CMatrix;
using accretive::Complex;
using accretive::CVector;
using accretive::Error;
using accretive::ErrorKind;
using accretive::RVector;

inline double rel_err(const CMatrix& got, const CMatrix& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

template <class F>
void expect_kind(F&& f, ErrorKind k) {
  try {
    f();
    FAIL_CHECK("expected error kind " << accretive::kind_name(k)
                                      << ", nothing was thrown");
  } catch (const Error& e) {
    CHECK_MESSAGE(e.kind() == k, "expected " << accretive::kind_name(k)
                                             << " got " << e.what());
  }
}

// Greedy nearest matching of two complex multisets; returns the largest
// pairing distance (or infinity on size mismatch).
inline double multiset_gap(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex& x : a) {
    size_t best = 0;
    double dbest = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < b.size(); ++j) {
      const double d = std::abs(x - b[j]);
      if (d < dbest) {
        dbest = d;
        best = j;
      }
    }
    worst = std::max(worst, dbest);
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

inline std::vector<Complex> to_vector(const CVector& v) {
  return {v.data(), v.data() + v.size()};
}

inline std::vector<Complex> real_to_vector(const RVector& v) {
  std::vector<Complex> out(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<size_t>(i)] = v(i);
  return out;
}

// Independent polar oracle: Newton iteration for the unitary factor.
inline CMatrix polar_newton_V(const CMatrix& A) {
  CMatrix V = A;
  for (int k = 0; k < 200; ++k) {
    CMatrix Vn = 0.5 * (V + V.adjoint().inverse());
    const double step = (Vn - V).norm();
    V = Vn;
    if (step <= 1e-15 * std::max(V.norm(), 1e-300)) break;
  }
  return V;
}

// Closed-form principal square root of a 2x2 positive definite matrix.
inline CMatrix sqrt2x2_pd(const CMatrix& M) {
  const Complex detc = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const double s = std::sqrt(detc.real());
  const double tr = (M(0, 0) + M(1, 1)).real();
  const double t = std::sqrt(tr + 2.0 * s);
  return (M + s * CMatrix::Identity(2, 2)) / t;
}

inline CMatrix random_hermitian(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = Complex(g(rng), g(rng));
  return (A + A.adjoint()) / 2.0;
}

inline CMatrix random_skew(int n, std::mt19937_64& rng, double scale = 1.0) {
  CMatrix H = random_hermitian(n, rng, scale);
  return Complex(0, 1) * H;
}

inline CMatrix random_pd(int n, std::mt19937_64& rng, double log_spread = 1.0) {
  accretive::CMatrix V = accretive::haar_unitary(n, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  accretive::CVector d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(u(rng) * log_spread);
  CMatrix P = V * d.asDiagonal() * V.adjoint();
  return (P + P.adjoint()) / 2.0;
}

// Strictly accretive unitary with phases uniform in [-spread, spread].
inline CMatrix random_acc_unitary(int n, std::mt19937_64& rng,
                                  double spread = 1.2) {
  accretive::CMatrix V = accretive::haar_unitary(n, rng);
  std::uniform_real_distribution<double> u(-spread, spread);
  accretive::CVector d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(Complex(0, u(rng)));
  return V * d.asDiagonal() * V.adjoint();
}

inline accretive::SampledAccretive sample(int n, std::uint64_t seed,
                                          double log_spread = 1.0,
                                          double phase_spread = 1.2) {
  accretive::SamplerSpec spec;
  spec.n = n;
  spec.seed = seed;
  spec.log_spread = log_spread;
  spec.phase_spread = phase_spread;
  return accretive::sample_accretive(spec);
}

}  // namespace testutil
