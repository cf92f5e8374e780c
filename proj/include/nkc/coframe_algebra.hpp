#pragma once
// Constant-coefficient forms in a left-invariant coframe of a 6-dimensional
// Lie group, with the exterior derivative computed exactly from structure
// equations (no finite differences anywhere on this path).

#include "nkc/forms.hpp"

#include <array>
#include <span>

namespace nkc {

/// Σ_I c_I ξ^I over increasing multi-indices I ⊂ {0..5}, indexed by bitmask.
class CoframeForm {
 public:
  explicit CoframeForm(int degree = 0);

  /// The coframe 1-form ξ_index, index in 0..5.
  static CoframeForm basis(int index);
  /// The constant 0-form c.
  static CoframeForm constant(double c);
  /// Σ_{k<l} m(k,l) ξ_k∧ξ_l for an antisymmetric 6×6 matrix (m(k,l) = α(E_k, E_l)).
  static CoframeForm from_bilinear(const Eigen::Matrix<double, 6, 6>& m);

  int degree() const { return degree_; }
  double coeff(unsigned mask) const { return c_[mask]; }
  void set(unsigned mask, double value);

  CoframeForm operator+(const CoframeForm& o) const;
  CoframeForm operator-(const CoframeForm& o) const;
  CoframeForm operator*(double s) const;

  /// Value on k vectors given by their coframe coordinates (determinant convention).
  double evaluate(std::span<const Eigen::Matrix<double, 6, 1>> vectors) const;
  double evaluate(std::initializer_list<Eigen::Matrix<double, 6, 1>> vectors) const;

  /// The same form frozen at a point whose coframe reads ambient vectors as `coframe` · v.
  PointForm as_point_form(const Eigen::Matrix<double, 6, Eigen::Dynamic>& coframe) const;

  /// max |coefficient|.
  double max_abs() const;

 private:
  int degree_;
  std::array<double, 64> c_{};
};

CoframeForm wedge(const CoframeForm& a, const CoframeForm& b);

/// Structure equations dξ_i (each a 2-form); d extends by the graded Leibniz rule.
class StructureEquations {
 public:
  explicit StructureEquations(std::array<CoframeForm, 6> d_basis);

  /// su(2) ⊕ su(2) with dξ_i = −ξ_j∧ξ_k and dξ'_i = −ξ'_j∧ξ'_k, (i,j,k) cyclic.
  static StructureEquations su2_su2();

  const CoframeForm& d_basis(int i) const { return d_basis_[static_cast<std::size_t>(i)]; }
  CoframeForm d(const CoframeForm& a) const;

  /// c(i, pair) with dξ_i = Σ_{j<k} c ξ_j∧ξ_k; pairs in increasing_subsets(6, 2) order.
  Eigen::Matrix<double, 6, 15> coefficient_table() const;

  /// Structure constants of the dual Lie algebra: [E_j, E_k] = Σ_i C(i, j, k) E_i,
  /// returned as bracket(j, k) (a coordinate vector).  Uses dξ_i(E_j, E_k) = −ξ_i([E_j, E_k]).
  Eigen::Matrix<double, 6, 1> bracket(int j, int k) const;

 private:
  std::array<CoframeForm, 6> d_basis_;
};

}  // namespace nkc
