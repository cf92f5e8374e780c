#pragma once
/**
 * @file forms.hpp
 * @brief Differential forms as pointwise multilinear evaluators.
 *
 * Wedge normalization is the determinant convention throughout the library:
 * (dx ∧ dy)(u, v) = u_x v_y − u_y v_x, with no 1/k! factor.
 */

#include <Eigen/Core>

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace nkc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// A k-form frozen at a single point: a k-linear alternating map on ambient vectors.
class PointForm {
 public:
  using Evaluator = std::function<double(std::span<const Vec>)>;

  PointForm(int degree, Evaluator eval);

  int degree() const { return degree_; }
  double operator()(std::span<const Vec> vectors) const;
  double operator()(std::initializer_list<Vec> vectors) const;

  PointForm operator+(const PointForm& o) const;
  PointForm operator*(double s) const;

 private:
  int degree_;
  Evaluator eval_;
};

/**
 * A degree-k form on (a neighborhood of) a manifold embedded in R^n.
 *
 * The evaluator receives an ambient point and k ambient vectors.  Forms that
 * are differentiated by finite differences must be defined on an open
 * neighborhood of the manifold; backgrounds achieve this by pulling back
 * along their nearest-point retraction.  The smoothness radius bounds the
 * finite-difference step.
 */
class FormField {
 public:
  using Evaluator = std::function<double(const Vec& point, std::span<const Vec> vectors)>;

  /// The zero 0-form.
  FormField();
  FormField(int degree, Evaluator eval, double smoothness_radius = 1.0);

  int degree() const { return degree_; }
  double smoothness_radius() const { return radius_; }

  double operator()(const Vec& point, std::span<const Vec> vectors) const;
  double operator()(const Vec& point, std::initializer_list<Vec> vectors) const;

  PointForm at(const Vec& point) const;

  FormField operator+(const FormField& o) const;
  FormField operator*(double s) const;

 private:
  int degree_;
  Evaluator eval_;
  double radius_;
};

/// Alternating wedge product; throws PreconditionError if the degrees sum past 6.
FormField wedge(const FormField& a, const FormField& b);
PointForm wedge(const PointForm& a, const PointForm& b);

/// Default finite-difference step as a fraction of the smoothness radius.
inline constexpr double kDefaultRelativeStep = 1e-3;

/**
 * dα(v0, …, vk) at p by the constant-coefficient formula
 *   Σ_i (−1)^i D_{v_i} α(v0, …, v̂_i, …, vk),
 * with each directional derivative a central difference at steps h and h/2
 * combined by Richardson extrapolation.  `step` is an ambient distance in
 * (0, smoothness radius).
 */
double exterior_derivative(const FormField& field, const Vec& point, std::span<const Vec> vectors,
                           double step);

/// dα as a new field of degree k+1, evaluated with `relative_step` × smoothness radius.
FormField exterior_derivative(const FormField& field,
                              double relative_step = kDefaultRelativeStep);

/// All increasing k-subsets of {0, …, n−1} in lexicographic order (n ≤ 8).
const std::vector<std::vector<int>>& increasing_subsets(int n, int k);

}  // namespace nkc
