#pragma once
/**
 * @file moduli.hpp
 * @brief Families of pseudoholomorphic curves: Hausdorff distance,
 * continuation by damped Gauss–Newton projection, volume drift and the
 * Stokes identity Vol(γ(1)) − Vol(γ(0)) = ∫_{R_γ} dω over the swept 3-chain.
 */

#include "nkc/curves.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nkc {

// ------------------------------------------------------------ Hausdorff

/// sup_{x∈X} inf_{y∈Y} |x − y|.
double directed_hausdorff(std::span<const Vec> X, std::span<const Vec> Y);
/// max of both directed distances; PreconditionError on an empty sample.
double hausdorff_distance(std::span<const Vec> X, std::span<const Vec> Y);
/// Chordal distance between the vertex samples of two curves (flat distance on the torus).
double hausdorff_distance(const CurveMesh& a, const CurveMesh& b);

// --------------------------------------------------------------- families

struct FamilyPath {
  std::vector<double> times;
  std::vector<CurveMesh> curves;
  std::string provenance;  ///< "exact-family" or "continued"
};

/// Throws PreconditionError unless times increase in [0, 1] and all curves share combinatorics.
void validate_family(const FamilyPath& path);

struct VolumeDrift {
  std::vector<double> volumes;
  double max_drift = 0.0;       ///< max_t |Vol(t) − Vol(0)|
  double relative_drift = 0.0;  ///< max_drift / |Vol(0)|
};
VolumeDrift volume_drift(const FamilyPath& path);

// ------------------------------------------------------------ projection

struct ProjectionOptions {
  double budget = 1e-6;  ///< target for the CR residual l2
  int max_iterations = 200;
  double initial_damping = 1e-3;
  double fd_step = 1e-7;
};

struct ProjectionResult {
  std::vector<Vec> image;
  double l2 = 0.0;
  int iterations = 0;
  bool converged = false;
};

/**
 * Levenberg–Marquardt minimization of E = Σ w|∂̄f|² / Σ w over vertex
 * positions, with tangent-space updates retracted onto the background.
 * Damping is halved on accepted and doubled on rejected steps.
 */
ProjectionResult project_to_holomorphic(const CurveMesh& curve, const ProjectionOptions& options);

// ----------------------------------------------------------- continuation

/// Move the start curve by M(t) for a continuous path in G₂ (S⁶ only).
struct G2PathDrive {
  G2Path path;
};

/// Random displacement normal to the curve inside T_pM, RMS `magnitude` per unit step.
struct NormalPerturbationDrive {
  double magnitude = 1e-2;
  std::uint64_t seed = 1;
};

using Drive = std::variant<G2PathDrive, NormalPerturbationDrive>;

struct ContinuationOptions {
  int steps = 20;
  ProjectionOptions projection;
  double step_bound = 0.25;  ///< Hausdorff bound between consecutive curves
  int max_bisections = 3;
};

struct StepRecord {
  double t = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double hausdorff_step = 0.0;
  int bisections = 0;
};

struct ContinuationResult {
  FamilyPath path;
  std::vector<StepRecord> records;
  bool success = true;
  std::string failure;  ///< reason when !success; the path holds the accepted prefix
};

/**
 * Drives the start curve through t ∈ [0, 1] in `steps` uniform steps,
 * re-projecting onto the pseudoholomorphic locus after each displacement.
 * A step whose Hausdorff distance exceeds the bound is bisected; stalls and
 * exhausted bisections end the run with a failure report (no exception).
 * Throws PreconditionError if the start residual is not below budget/10.
 */
ContinuationResult continue_curve(const CurveMesh& start, const Drive& drive,
                                  const ContinuationOptions& options);

/// Exact family t ↦ M(t)·start along a G₂ path (provenance "exact-family").
FamilyPath g2_orbit_family(const CurveMesh& start, const G2Path& path, int steps);
/// Exact subtorus family on the torus testbed.
FamilyPath subtorus_path(const NKBackground& torus, const Eigen::Vector4d& shift, int n, int steps);

// ------------------------------------------------------------------ Stokes

/// Quadrature on each tetrahedron of the swept chain.
enum class PrismRule {
  Centroid,  ///< one point at the centroid (second order)
  Degree2,   ///< four symmetric points, exact for quadratics
};

struct StokesStep {
  double t0 = 0.0;
  double t1 = 0.0;
  double volume_change = 0.0;
  double chain_integral = 0.0;
};

struct StokesReport {
  double lhs = 0.0;  ///< Vol(γ(1)) − Vol(γ(0))
  double rhs = 0.0;  ///< ∫ over the prism chain of dω
  double residual = 0.0;
  std::vector<StokesStep> steps;
};

/**
 * ∫ dω over the chain swept between two curves with shared combinatorics.
 * Each face sweeps a prism split into three tetrahedra by increasing global
 * vertex index, so neighbouring prisms share their side diagonals.
 */
double chain_integral(const CurveMesh& from, const CurveMesh& to, PrismRule rule = PrismRule::Centroid);

StokesReport stokes_check(const FamilyPath& path, PrismRule rule = PrismRule::Centroid);

}  // namespace nkc
