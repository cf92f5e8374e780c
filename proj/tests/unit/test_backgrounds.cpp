#include "nkc/background.hpp"
#include "nkc/errors.hpp"
#include "nkc/io.hpp"
#include "nkc/octonion.hpp"
#include "nkc/structure_checks.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace nkc;

namespace {

Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

Vec e(int i) { return ImOctonion::unit(i).vec(); }

}  // namespace

TEST(SixSphere, JAtE1) {
  const NKBackground s6 = s6_background();
  EXPECT_LT((s6.apply_J(e(1), e(2)) - e(3)).norm(), 1e-15);
}

TEST(SixSphere, JSquaredAndInvariants) {
  const NKBackground s6 = s6_background();
  std::mt19937_64 rng(1);
  for (const Vec& p : s6.sample_points(50, 2)) {
    const Vec v = s6.project(p, random_vec(rng, 7));
    EXPECT_LT((s6.apply_J(p, s6.apply_J(p, v)) + v).norm(), 1e-12 * v.norm());
  }
  const InvariantReport r = check_invariants(s6, s6.sample_points(1000, 3));
  EXPECT_LT(r.j_squared, 1e-10);
  EXPECT_LT(r.metric_compatibility, 1e-10);
  EXPECT_LT(r.omega_consistency, 1e-10);
}

TEST(SixSphere, ReOmegaIsAssociativeFormOnTangentVectors) {
  const NKBackground s6 = s6_background();
  const Vec p = e(1);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const Vec x = s6.project(p, random_vec(rng, 7)), y = s6.project(p, random_vec(rng, 7)),
              z = s6.project(p, random_vec(rng, 7));
    const double oracle = associative_form(ImOctonion(x), ImOctonion(y), ImOctonion(z));
    EXPECT_NEAR(s6.re_omega()(p, {x, y, z}), oracle, 1e-12);
  }
  EXPECT_NEAR(s6.re_omega()(p, {e(2), e(4), e(6)}), 1.0, 1e-15);
}

TEST(SixSphere, G2Equivariance) {
  const NKBackground s6 = s6_background();
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Mat7 m = random_g2(seed).matrix();
    const Vec p = s6.sample_points(1, seed + 10).front();
    const Vec x = s6.project(p, random_vec(rng, 7)), y = s6.project(p, random_vec(rng, 7)),
              z = s6.project(p, random_vec(rng, 7));
    const Vec mp = m * p;
    EXPECT_NEAR(s6.omega()(mp, {Vec(m * x), Vec(m * y)}), s6.omega()(p, {x, y}), 1e-10);
    EXPECT_NEAR(s6.re_omega()(mp, {Vec(m * x), Vec(m * y), Vec(m * z)}), s6.re_omega()(p, {x, y, z}), 1e-10);
  }
}

TEST(SixSphere, ConjugateFlipsStructure) {
  const NKBackground s6 = s6_background();
  const NKBackground c = s6.conjugate();
  const Vec p = e(1);
  EXPECT_LT((c.apply_J(p, e(2)) + e(3)).norm(), 1e-15);
  EXPECT_NEAR(c.omega()(p, {e(2), e(3)}), -s6.omega()(p, {e(2), e(3)}), 1e-15);
  EXPECT_EQ(c.params().at("conjugate"), 1.0);
}

TEST(S3S3, JSquaredOnCoframeAndMetricInvariance) {
  for (double b : {0.0, -0.5, 0.3}) {
    const HomogeneousData h = s3s3_homogeneous_data({1.0, b, false});
    EXPECT_LT((h.J * h.J + Eigen::Matrix<double, 6, 6>::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((h.J.transpose() * h.metric * h.J - h.metric).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(S3S3, InvalidParamsRejected) {
  EXPECT_THROW(s3s3_background({1.0, 1.0, false}), PreconditionError);
  EXPECT_THROW(s3s3_background({-1.0, 0.0, false}), PreconditionError);
}

TEST(S3S3, MaurerCartanConvention) {
  const auto t = StructureEquations::su2_su2().coefficient_table();
  // pair (1,2) is index 5 in increasing order: (0,1),(0,2),(0,3),(0,4),(0,5),(1,2)
  EXPECT_EQ(t(0, 5), -1.0);
  EXPECT_EQ(t.row(0).cwiseAbs().sum(), 1.0);
  std::ifstream in(std::string(NKC_DATA_DIR) + "/s3s3_structure_constants.json");
  ASSERT_TRUE(in);
  EXPECT_EQ(Json::parse(in), s3s3_structure_constants_json());
}

TEST(S3S3, ExactDOmegaMatchesFiniteDifferences) {
  const NKBackground bg = s3s3_background({1.0, -0.5, false});
  ASSERT_TRUE(bg.d_omega_is_exact());
  const FormField fd = exterior_derivative(bg.omega());
  std::mt19937_64 rng(6);
  for (const Vec& p : bg.sample_points(5, 7)) {
    const Vec a = bg.project(p, random_vec(rng, 8)), b = bg.project(p, random_vec(rng, 8)),
              c = bg.project(p, random_vec(rng, 8));
    const double exact = bg.d_omega()(p, {a, b, c});
    EXPECT_NEAR(fd(p, {a, b, c}), exact, 1e-8 * std::max(1.0, std::abs(exact)));
  }
}

TEST(S3S3, InvariantsHold) {
  const NKBackground bg = s3s3_background({1.0, -0.3, false});
  const InvariantReport r = check_invariants(bg, bg.sample_points(100, 8));
  EXPECT_LT(r.j_squared, 1e-10);
  EXPECT_LT(r.metric_compatibility, 1e-10);
  EXPECT_LT(r.omega_consistency, 1e-10);
}

TEST(Torus, ZeroFieldIsKaehler) {
  const NKBackground t = torus_testbed(TrigPolynomial::zero());
  std::mt19937_64 rng(9);
  for (const Vec& p : t.sample_points(5, 1)) {
    EXPECT_EQ(t.d_omega()(p, {random_vec(rng, 6), random_vec(rng, 6), random_vec(rng, 6)}), 0.0);
  }
  EXPECT_EQ(type_residual(t, t.sample_points(5, 1)), 0.0);
}

TEST(Torus, SinFieldViolatesTypeButOmegaStaysOneOne) {
  const NKBackground t = torus_testbed(TrigPolynomial::parse("sin(x5)"));
  for (const Vec& p : t.sample_points(10, 2)) {
    const TypeSpectrum s = d_omega_spectrum(t, p);
    if (s.total() < 1e-6) continue;  // df = 0 where cos(x5) = 0
    EXPECT_GT(s.mixed_fraction(), 0.1);
    const TypeSpectrum w = type_decompose(t.omega().at(p), t.coframe(p));
    EXPECT_LT(w.norm(0) + w.norm(2), 1e-12 * w.total());
  }
}

TEST(Torus, ExactDOmegaMatchesFiniteDifferences) {
  const NKBackground t = torus_testbed(TrigPolynomial::parse("0.3*cos(2*x1 - x3) + sin(x5)*cos(x6)"));
  const FormField fd = exterior_derivative(t.omega());
  std::mt19937_64 rng(10);
  for (const Vec& p : t.sample_points(5, 3)) {
    const Vec a = random_vec(rng, 6), b = random_vec(rng, 6), c = random_vec(rng, 6);
    EXPECT_NEAR(fd(p, {a, b, c}), t.d_omega()(p, {a, b, c}), 1e-8);
  }
}

TEST(Torus, DisplacementWraps) {
  const NKBackground t = torus_testbed(TrigPolynomial::zero());
  Vec a = Vec::Zero(6), b = Vec::Zero(6);
  a[0] = 0.1;
  b[0] = 2.0 * M_PI - 0.1;
  EXPECT_NEAR(t.displacement(a, b)[0], -0.2, 1e-14);
}

TEST(Descriptor, RoundTrip) {
  for (const NKBackground& bg : {s6_background(), s6_background().conjugate(), s3s3_background({1.0, -0.5, true}),
                                 torus_testbed(TrigPolynomial::parse("sin(x5)"))}) {
    const Json d = background_descriptor(bg);
    const NKBackground back = background_from_descriptor(d);
    EXPECT_EQ(background_descriptor(back), d);
  }
  EXPECT_THROW(background_from_descriptor(Json{{"name", "cp3"}}), PreconditionError);
}
