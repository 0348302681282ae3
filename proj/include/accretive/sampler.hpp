#pragma once

#include <cstdint>
#include <random>

#include "accretive/matcore.hpp"

namespace accretive {

// Deterministic generator of strictly accretive test matrices A = P U P:
// P^2 has Haar-conjugated spectrum e^{u * log_spread} with u uniform in
// [-1, 1], U has Haar-conjugated phases uniform in
// [-phase_spread, phase_spread].  A fixed seed fixes the output.
struct SamplerSpec {
  int n = 2;
  std::uint64_t seed = 0;
  double log_spread = 1.0;     // >= 0
  double phase_spread = 1.0;   // in [0, pi/2)
};

struct SampledAccretive {
  CMatrix A;
  CMatrix P;  // positive definite factor actually used
  CMatrix U;  // strictly accretive unitary factor actually used
};

// Haar-distributed unitary (QR of a complex Ginibre draw, R-phase corrected).
CMatrix haar_unitary(int n, std::mt19937_64& rng);

SampledAccretive sample_accretive(const SamplerSpec& spec);

}  // namespace accretive
