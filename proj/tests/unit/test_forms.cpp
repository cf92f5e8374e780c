#include "nkc/background.hpp"
#include "nkc/errors.hpp"
#include "nkc/forms.hpp"
#include "nkc/structure_checks.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nkc;

namespace {

FormField dx(int i) {
  return FormField(1, [i](const Vec&, std::span<const Vec> v) { return v[0][i]; });
}

Vec unit(int n, int i) { return Vec::Unit(n, i); }

Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

}  // namespace

TEST(Wedge, ConventionAnchor) {
  const FormField w = wedge(dx(0), dx(1));
  const Vec p = Vec::Zero(6);
  EXPECT_EQ(w(p, {unit(6, 0), unit(6, 1)}), 1.0);
  EXPECT_EQ(w(p, {unit(6, 1), unit(6, 0)}), -1.0);
  const FormField three = wedge(w, dx(2));
  EXPECT_EQ(three(p, {unit(6, 0), unit(6, 1), unit(6, 2)}), 1.0);
}

TEST(Wedge, OneFormSquaredVanishes) {
  std::mt19937_64 rng(1);
  const FormField a = dx(0) * 0.3 + dx(3) * -1.2;
  const FormField aa = wedge(a, a);
  EXPECT_EQ(aa(Vec::Zero(6), {random_vec(rng, 6), random_vec(rng, 6)}), 0.0);
}

TEST(Wedge, DegreeOverflowRejected) {
  const FormField w = wedge(wedge(dx(0), dx(1)), dx(2));
  const FormField w4 = wedge(w, dx(3));
  EXPECT_THROW(wedge(w4, w), PreconditionError);
}

TEST(Wedge, OmegaSquaredMatchesAntisymmetrization) {
  const NKBackground s6 = s6_background();
  const FormField w2 = wedge(s6.omega(), s6.omega());
  std::mt19937_64 rng(2);
  for (const Vec& p : s6.sample_points(10, 3)) {
    std::array<Vec, 4> v;
    for (Vec& x : v) x = s6.project(p, random_vec(rng, 7));
    auto w = [&](int i, int j) { return s6.omega()(p, {v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]}); };
    const double oracle = 2.0 * (w(0, 1) * w(2, 3) - w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2));
    EXPECT_NEAR(w2(p, {v[0], v[1], v[2], v[3]}), oracle, 1e-12 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(Forms, AlternatingAndMultilinear) {
  const NKBackground s6 = s6_background();
  std::mt19937_64 rng(4);
  const Vec p = s6.sample_points(1, 5).front();
  const FormField& re = s6.re_omega();
  const Vec a = s6.project(p, random_vec(rng, 7)), b = s6.project(p, random_vec(rng, 7)),
            c = s6.project(p, random_vec(rng, 7)), d = s6.project(p, random_vec(rng, 7));
  const double v = re(p, {a, b, c});
  EXPECT_NEAR(re(p, {b, a, c}), -v, 1e-12 * std::abs(v));
  EXPECT_NEAR(re(p, {a, c, b}), -v, 1e-12 * std::abs(v));
  const double lin = re(p, {Vec(2.0 * a + 3.0 * d), b, c});
  EXPECT_NEAR(lin, 2.0 * v + 3.0 * re(p, {d, b, c}), 1e-12 * (std::abs(lin) + 1.0));
}

TEST(ExteriorDerivative, TrigonometricOneForm) {
  // α = sin(x1) cos(x2) dx3 ⇒ dα = cos x1 cos x2 dx1∧dx3 − sin x1 sin x2 dx2∧dx3
  const FormField alpha(1, [](const Vec& p, std::span<const Vec> v) { return std::sin(p[0]) * std::cos(p[1]) * v[0][2]; });
  const FormField d = exterior_derivative(alpha);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    const Vec p = random_vec(rng, 6), u = random_vec(rng, 6), w = random_vec(rng, 6);
    const double oracle = std::cos(p[0]) * std::cos(p[1]) * (u[0] * w[2] - u[2] * w[0]) -
                          std::sin(p[0]) * std::sin(p[1]) * (u[1] * w[2] - u[2] * w[1]);
    EXPECT_NEAR(d(p, {u, w}), oracle, 1e-9);
  }
}

TEST(ExteriorDerivative, DSquaredVanishes) {
  const FormField f(0, [](const Vec& p, std::span<const Vec>) { return std::sin(p[0]) * p[1] + std::cos(p[2] * p[0]); });
  const FormField dd = exterior_derivative(exterior_derivative(f));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(dd(random_vec(rng, 3), {random_vec(rng, 3), random_vec(rng, 3)}), 0.0, 1e-6);
  }
}

TEST(ExteriorDerivative, StepOutOfRange) {
  const Vec p = Vec::Zero(3);
  std::vector<Vec> v{unit(3, 0), unit(3, 1)};
  EXPECT_THROW(exterior_derivative(dx(1), p, v, 0.0), PreconditionError);
  EXPECT_THROW(exterior_derivative(dx(1), p, v, 2.0), PreconditionError);
}

TEST(ExteriorDerivative, SixSphereFirstStructureEquationAtE1) {
  const NKBackground s6 = s6_background();
  const Vec p = unit(7, 0);
  const std::vector<Vec> pts{p};
  const double lambda = lambda_estimate(s6, pts).mean;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    const Vec a = s6.project(p, random_vec(rng, 7)), b = s6.project(p, random_vec(rng, 7)),
              c = s6.project(p, random_vec(rng, 7));
    EXPECT_NEAR(s6.d_omega()(p, {a, b, c}), 3.0 * lambda * s6.re_omega()(p, {a, b, c}), 1e-6);
  }
}

TEST(Subsets, Counts) {
  EXPECT_EQ(increasing_subsets(6, 2).size(), 15u);
  EXPECT_EQ(increasing_subsets(6, 3).size(), 20u);
  EXPECT_EQ(increasing_subsets(6, 3).front(), (std::vector<int>{0, 1, 2}));
}
