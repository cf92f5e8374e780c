#pragma once
/**
 * @file background.hpp
 * @brief Almost Hermitian 6-manifolds: the round S⁶ with the octonionic J,
 * the left-invariant family on S³×S³, and a conformally flat torus testbed.
 *
 * Every background is embedded in (or presented through) an ambient R^n.
 * Points and tangent vectors are ambient vectors; forms are extended off the
 * manifold by pulling back along the nearest-point retraction so that the
 * finite-difference exterior derivative can work in flat coordinates.
 *
 * Sign convention: the Hermitian form is ω(x, y) = g(Jx, y).  With this
 * choice ω(v, Jv) = |v|², complex curves have positive volume, and the S⁶
 * structure equations hold with λ = +1.
 */

#include "nkc/coframe_algebra.hpp"
#include "nkc/forms.hpp"
#include "nkc/hodge.hpp"
#include "nkc/trig_field.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nkc {

/// Manifold-level geometry shared by backgrounds: embedding, retraction, tangent frames.
class Geometry {
 public:
  virtual ~Geometry() = default;

  virtual int ambient_dim() const = 0;
  /// A nonnegative measure of how far p is from the manifold (0 on it).
  virtual double manifold_residual(const Vec& p) const = 0;
  virtual Vec retract(const Vec& p) const = 0;
  /// Differential of the retraction at p applied to v.
  virtual Vec retraction_differential(const Vec& p, const Vec& v) const = 0;
  /// ambient × 6 Euclidean-orthonormal basis of the tangent space at retract(p).
  virtual Mat tangent_basis(const Vec& p) const = 0;
  /// Shortest ambient displacement from `from` to `to` (wraps on periodic backgrounds).
  virtual Vec displacement(const Vec& from, const Vec& to) const { return to - from; }
  virtual Vec random_point(std::mt19937_64& rng) const = 0;
  /// Distance off the manifold on which the retraction (and so every form) is smooth.
  virtual double smoothness_radius() const = 0;
};

/// Unit sphere S^{n−1} ⊂ R^n.
class SphereGeometry : public Geometry {
 public:
  explicit SphereGeometry(int ambient) : n_(ambient) {}
  int ambient_dim() const override { return n_; }
  double manifold_residual(const Vec& p) const override;
  Vec retract(const Vec& p) const override;
  Vec retraction_differential(const Vec& p, const Vec& v) const override;
  Mat tangent_basis(const Vec& p) const override;
  Vec random_point(std::mt19937_64& rng) const override;
  double smoothness_radius() const override { return 0.5; }

 private:
  int n_;
};

/// S³ × S³ ⊂ R⁴ × R⁴; tangent basis is the left-invariant frame (q·i, q·j, q·k) per factor.
class SphereProductGeometry : public Geometry {
 public:
  int ambient_dim() const override { return 8; }
  double manifold_residual(const Vec& p) const override;
  Vec retract(const Vec& p) const override;
  Vec retraction_differential(const Vec& p, const Vec& v) const override;
  Mat tangent_basis(const Vec& p) const override;
  Vec random_point(std::mt19937_64& rng) const override;
  double smoothness_radius() const override { return 0.5; }
};

/// R⁶ / (2πZ)⁶ with coordinates taken modulo 2π.
class TorusGeometry : public Geometry {
 public:
  int ambient_dim() const override { return 6; }
  double manifold_residual(const Vec& p) const override;
  Vec retract(const Vec& p) const override { return p; }
  Vec retraction_differential(const Vec&, const Vec& v) const override { return v; }
  Mat tangent_basis(const Vec& p) const override;
  Vec displacement(const Vec& from, const Vec& to) const override;
  Vec random_point(std::mt19937_64& rng) const override;
  double smoothness_radius() const override { return 0.5; }
};

/// A point together with an ambient vector in its tangent space.
struct TangentVector {
  Vec base;
  Vec vec;
};

/// Left-invariant data of a homogeneous background, in the coframe (ξ₁, ξ₂, ξ₃, ξ'₁, ξ'₂, ξ'₃).
struct HomogeneousData {
  StructureEquations equations = StructureEquations::su2_su2();
  Eigen::Matrix<double, 6, 6> metric;  ///< g(E_k, E_l)
  Eigen::Matrix<double, 6, 6> J;       ///< columns are J E_l in the frame
  CoframeForm omega{2};
  CoframeForm d_omega{3};
};

/// Embedding tolerance used by on-manifold preconditions.
inline constexpr double kManifoldTolerance = 1e-10;

class NKBackground {
 public:
  using MatrixField = std::function<Mat(const Vec&)>;

  struct Parts {
    std::string name;
    std::map<std::string, double> params;
    std::string field;  ///< scalar-field expression, torus only
    std::shared_ptr<const Geometry> geometry;
    MatrixField metric;  ///< ambient matrix whose tangent restriction is g
    MatrixField J;       ///< ambient matrix; maps T_pM to itself
    FormField omega;
    std::optional<FormField> d_omega;  ///< exact dω when known in closed form
    std::optional<FormField> re_omega;
    std::optional<FormField> im_omega;
    std::optional<double> lambda;  ///< golden structure constant, when known
    std::optional<HomogeneousData> homogeneous;
  };

  explicit NKBackground(Parts parts);

  const std::string& name() const { return p_.name; }
  const std::map<std::string, double>& params() const { return p_.params; }
  const std::string& field() const { return p_.field; }
  const Geometry& geometry() const { return *p_.geometry; }
  int ambient_dim() const { return p_.geometry->ambient_dim(); }
  static constexpr int dimension() { return 6; }

  bool on_manifold(const Vec& p, double tol = kManifoldTolerance) const;
  /// Throws PreconditionError if p is farther than kManifoldTolerance from the manifold.
  void require_on_manifold(const Vec& p) const;
  Vec retract(const Vec& p) const { return p_.geometry->retract(p); }
  Vec displacement(const Vec& from, const Vec& to) const { return p_.geometry->displacement(from, to); }

  /// Orthogonal projection of v onto T_pM (p must lie on the manifold).
  TangentVector tangent_project(const Vec& p, const Vec& v) const;
  /// Projection at retract(p), no precondition; used on quadrature points.
  Vec project(const Vec& p, const Vec& v) const;
  Mat tangent_basis(const Vec& p) const { return p_.geometry->tangent_basis(p); }

  Mat metric(const Vec& p) const { return p_.metric(retract(p)); }
  Mat J(const Vec& p) const { return p_.J(retract(p)); }
  double g(const Vec& p, const Vec& x, const Vec& y) const;
  Vec apply_J(const Vec& p, const Vec& v) const { return J(p) * v; }

  TangentStructure structure(const Vec& p) const;
  UnitaryCoframe coframe(const Vec& p) const { return build_unitary_coframe(structure(p)); }

  const FormField& omega() const { return p_.omega; }
  /// dω: exact when available, otherwise Richardson finite differences.
  const FormField& d_omega() const { return d_omega_; }
  bool d_omega_is_exact() const { return p_.d_omega.has_value(); }
  bool has_volume_form() const { return p_.re_omega.has_value() && p_.im_omega.has_value(); }
  /// Throw NotApplicableError when the background carries no (3,0)-form.
  const FormField& re_omega() const;
  const FormField& im_omega() const;
  std::optional<double> lambda_golden() const { return p_.lambda; }
  const HomogeneousData* homogeneous() const { return p_.homogeneous ? &*p_.homogeneous : nullptr; }

  /// Same manifold with J ↦ −J, ω ↦ −ω and Ω ↦ conj(Ω).
  NKBackground conjugate() const;
  /// Copy with ImΩ replaced (used to test the structure-equation checks).
  NKBackground with_im_omega(FormField im) const;

  std::vector<Vec> sample_points(int n, std::uint64_t seed) const;

 private:
  Parts p_;
  FormField d_omega_;
};

/// Round unit S⁶ ⊂ Im O with J_p v = p·v.
NKBackground s6_background();

/// g = a Σ(ξ_i² + ξ'_i²) + b Σ(ξ_iξ'_i + ξ'_iξ_i); requires a > 0 and |b| < a.
struct S3S3MetricParams {
  double a = 1.0;
  double b = 0.0;
  bool swap_factors = false;  ///< relabel the two S³ factors
};

/**
 * S³×S³ with left-invariant metric g_(a,b) and the almost complex structure
 * that, in the g-orthonormal coframe ξ̂_i = √a(ξ_i + (b/a)ξ'_i),
 * ξ̂'_i = √(a − b²/a) ξ'_i, maps ξ̂_i ↦ ξ̂'_i and ξ̂'_i ↦ −ξ̂_i (so at b = 0
 * it is the plain ξ_i ↦ ξ'_i).  dω is computed exactly from the
 * Maurer–Cartan equations.  Throws PreconditionError for invalid params.
 */
NKBackground s3s3_background(const S3S3MetricParams& params);
HomogeneousData s3s3_homogeneous_data(const S3S3MetricParams& params);

/// R⁶/(2πZ)⁶ with the standard J (J∂₁ = ∂₂, J∂₃ = ∂₄, J∂₅ = ∂₆) and metric e^f δ.
NKBackground torus_testbed(const TrigPolynomial& f);

}  // namespace nkc
