#pragma once
/**
 * @file hodge.hpp
 * @brief Unitary coframes and the (p,q)-type decomposition of real forms.
 *
 * Conventions: a complex covector θ is of type (1,0) when θ(Jv) = i θ(v).
 * Norms of forms are Frobenius norms, Σ over increasing index tuples of the
 * squared values on a g-orthonormal frame, extended Hermitian-ly to complex
 * forms.  With this norm the (p,q) components of a real form are orthogonal,
 * so their squared norms add up to the squared norm of the form.
 */

#include "nkc/forms.hpp"

#include <array>
#include <complex>

namespace nkc {

using Complex = std::complex<double>;

/// Linear-algebra data of an almost Hermitian structure at one point.
struct TangentStructure {
  Vec point;
  Mat basis;   ///< ambient × 6, Euclidean-orthonormal columns spanning T_pM
  Mat J;       ///< ambient × ambient, acting on tangent vectors
  Mat metric;  ///< ambient × ambient symmetric; its restriction to T_pM is g_p
};

/// Tolerance on J² = −id and g(J·, J·) = g accepted by build_unitary_coframe.
inline constexpr double kStructureTolerance = 1e-8;

/**
 * Three (1,0)-covectors θ¹, θ², θ³ at a point, unitary for the Hermitian
 * metric induced by g.  Internally this is a g-orthonormal J-adapted real
 * frame (e₁, Je₁, e₂, Je₂, e₃, Je₃); θᵃ(v) = (g(v, e_a) + i g(v, Je_a)) / √2.
 */
class UnitaryCoframe {
 public:
  UnitaryCoframe(Vec point, Mat real_frame, Mat metric);

  const Vec& point() const { return point_; }
  /// ambient × 6: columns e₁, Je₁, e₂, Je₂, e₃, Je₃.
  const Mat& real_frame() const { return frame_; }
  const Mat& metric() const { return metric_; }

  /// θᵃ(v), a ∈ {0, 1, 2}.
  Complex covector(int a, const Vec& v) const;

  /// The (1,0)-vector Z_a = (e_a − i Je_a)/√2 dual to θᵃ, as real and imaginary parts.
  std::pair<Vec, Vec> dual_vector(int a) const;

  /// Same point and metric, frame replaced by frame·U for a unitary U ∈ U(3).
  UnitaryCoframe rotated(const Eigen::Matrix3cd& unitary) const;

 private:
  Vec point_;
  Mat frame_;
  Mat metric_;
};

/**
 * Builds a coframe from the structure at p by g-Gram–Schmidt of the tangent
 * projections of the ambient coordinate vectors (smallest index first), each
 * accepted vector e followed by Je.  Throws StructuralError if J² ≠ −id,
 * J does not preserve the tangent space, or g is not J-invariant.
 */
UnitaryCoframe build_unitary_coframe(const TangentStructure& s);

/// Per-(p,q) norms of a real k-form at a point.
class TypeSpectrum {
 public:
  TypeSpectrum(int degree, std::array<double, 7> norm_by_p, Vec point);

  int degree() const { return degree_; }
  const Vec& point() const { return point_; }

  /// Norm of the (p, degree−p) component.
  double norm(int p) const;
  /// Norm of the whole form; equals sqrt(Σ_p norm(p)²).
  double total() const;
  /// Norm of everything except the (k,0) and (0,k) parts, divided by total();
  /// zero for the zero form.  For 3-forms this is the (2,1)+(1,2) fraction.
  double mixed_fraction() const;

 private:
  int degree_;
  std::array<double, 7> norm_by_p_;
  Vec point_;
};

/// Decomposes `form` (degree ≤ 4 expected, ≤ 6 accepted) into (p,q) parts in the coframe.
TypeSpectrum type_decompose(const PointForm& form, const UnitaryCoframe& coframe);

/// Frobenius inner product of two k-forms on the g-orthonormal frame of `coframe`.
double form_inner(const PointForm& a, const PointForm& b, const UnitaryCoframe& coframe);
double form_norm(const PointForm& a, const UnitaryCoframe& coframe);

}  // namespace nkc
