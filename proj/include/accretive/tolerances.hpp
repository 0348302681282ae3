#pragma once

namespace accretive {

// Central tolerance record.  Values marked "rel" are multiplied by a norm of
// the operand at the point of use; the rest are absolute on dimensionless
// quantities (residuals of unit-scale identities, angles in radians).
//
// The record is mutable process-global state by design: the CLI installs an
// override once at startup, before any computation.  Library code only reads
// it, so concurrent use after that point is safe.
struct Tolerances {
  double herm = 1e-10;        // rel: Hermitian / skew-Hermitian gates
  double orth = 1e-10;        // unitarity gates, ||U*U - I||
  double resid = 1e-10;       // rel: reconstruction residual gates
  double pd_rel = 1e-12;      // rel (spectral norm): positive definiteness
  double sing_rel = 1e-12;    // rel (spectral norm): invertibility gates
  double branch = 1e-8;       // radians: distance to the log branch cut
  double normal = 1e-8;       // rel: normality gates (commutator, Schur offdiag)
  double logrank_one = 1e-10; // |log lambda| threshold in log_rank
  double logrank_zero = 1e-10;// |phase| threshold in log_rank

  static Tolerances& global();

  // Rescales the herm/orth/resid family to `base` and keeps the other gates
  // at their default ratios to it.
  void set_base(double base);
};

}  // namespace accretive
