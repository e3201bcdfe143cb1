#pragma once

// Every numeric threshold used by the library lives here so that tolerance
// policy is auditable in one place.  Relative thresholds are scaled by the
// caller against the natural magnitude of the quantity being tested (for a
// degree-d polynomial in the entries of t, that is ||t||^d).

namespace entrank::tol {

// Rank decisions: singular values below rank_rel * sigma_max count as zero.
inline constexpr double rank_rel = 1e-9;

// Exchange (purity) test: products of two entries, scale ||t||^2.
inline constexpr double exchange_rel = 1e-10;

// Zero tests for invariants (hyperdet, delta, polynomial coefficients):
// scale ||t||^degree.
inline constexpr double invariant_zero_rel = 1e-10;

// Clustering of projective roots, chordal metric on CP^1.
inline constexpr double root_cluster_chordal = 1e-6;

// Degree-4 root extraction: leading/trailing coefficients below
// quartic_strip_rel * max|c_i| are treated as zero, yielding roots at
// (1:0) / (0:1) before the companion-matrix step.
inline constexpr double quartic_strip_rel = 1e-12;

// Purity defect threshold for "pure across this bipartition".
inline constexpr double purity_defect_max = 1e-10;

// Acceptance of a candidate biseparable-locus point: every minor quadratic
// of the slice-pencil flattening must vanish to this relative level.
inline constexpr double y_locus_verify_rel = 1e-8;

// Schmidt reconstruction must hold to this relative error.
inline constexpr double schmidt_recon_rel = 1e-12;

// Constructive decompositions must reconstruct to this relative error.
inline constexpr double decompose_recon_rel = 1e-8;

// ALS border-rank diagnostic: flag when the largest factor-column norm
// exceeds als_blowup_factor * ||t||.  Factor columns are unit norm on all
// axes but the last, so this compares the heaviest term weight against the
// tensor's own mass.  Converged fits of honest rank-r tensors keep that
// ratio near 1; on a border-rank orbit the weights of the cancelling pair
// grow like residual^(-1/2) without bound (for the rank-3 w3 state at r = 2,
// residual * max_norm^2 stays pinned at 1/(4 sqrt 3)), so one order of
// magnitude cleanly separates the two regimes at reachable iteration counts.
inline constexpr double als_blowup_factor = 10.0;

// ALS plateau detection: stop when the residual improves by less than this
// over ten consecutive iterations.
inline constexpr double als_plateau = 1e-12;

}  // namespace entrank::tol
