#pragma once
// Numerical verification of the SU(3)-structure equations
//   dω = 3λ ReΩ,   d ImΩ = −2λ ω∧ω
// and of the Hodge type of dω, plus the S³×S³ metric search.

#include "nkc/background.hpp"
#include "nkc/hodge.hpp"

#include <span>
#include <vector>

namespace nkc {

/// Pointwise invariants J² = −id, g(J·, J·) = g, ω = g(J·, ·) (maximum absolute deviations).
struct InvariantReport {
  double j_squared = 0.0;
  double metric_compatibility = 0.0;
  double omega_consistency = 0.0;
  int points = 0;
};
InvariantReport check_invariants(const NKBackground& bg, std::span<const Vec> points);

struct LambdaEstimate {
  double mean = 0.0;
  double std = 0.0;
  double max_residual = 0.0;  ///< max_p ‖dω − 3λ̄ ReΩ‖ / ‖dω‖
  std::vector<double> per_point;
  bool closed = false;  ///< dω vanished at every point (Kähler case; λ reported as 0)
};

/**
 * λ(p) = ⟨dω, 3ReΩ⟩ / ‖3ReΩ‖².  If dω vanishes at every sample point the
 * background is treated as Kähler and λ = 0 is reported with zero residual,
 * whether or not it carries a (3,0)-form.  Otherwise a missing Ω raises
 * NotApplicableError and ‖ReΩ‖ = 0 raises DegenerateStructureError.
 */
LambdaEstimate lambda_estimate(const NKBackground& bg, std::span<const Vec> points);

/// max_p ‖d ImΩ + 2λ ω∧ω‖ / ‖ω∧ω‖.  NotApplicableError without Ω.
double second_structure_equation_residual(const NKBackground& bg, std::span<const Vec> points,
                                          double lambda);

/// Type spectrum of dω at p.
TypeSpectrum d_omega_spectrum(const NKBackground& bg, const Vec& p);

/// max_p of the (2,1)+(1,2) fraction of dω; zero where dω vanishes.
double type_residual(const NKBackground& bg, std::span<const Vec> points);

/// (2,1)+(1,2) fraction of the exact dω of the S³×S³ metric at the identity coset.
double s3s3_type_residual(const S3S3MetricParams& params);

struct MetricSearchResult {
  double b_star = 0.0;
  double residual = 0.0;
  bool converged = false;  ///< residual < tolerance
  int iterations = 0;
  std::vector<std::pair<double, double>> samples;  ///< (b, r(b)) on a uniform grid of the interval
};

/// Golden-section minimization of r(b) (a = 1) over [lo, hi] ⊂ (−1, 1).
/// Throws PreconditionError for an empty or out-of-range interval.
MetricSearchResult find_nk_metric(double lo, double hi, double tolerance = 1e-8,
                                  int grid_samples = 21);

}  // namespace nkc
