#include "nkc/curves.hpp"
#include "nkc/errors.hpp"

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nkc;

namespace {

Vec7 e(int i) { return ImOctonion::unit(i).vec(); }

// Pointwise oracle on the exact sphere in span(f1, f2, f3): the largest distance of
// J_p u = p × u from the tangent plane of the sphere, over sampled p and u.
double pointwise_j_invariance_defect(const Vec7& f1, const Vec7& f2, const Vec7& f3) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector3d x(n(rng), n(rng), n(rng)), y(n(rng), n(rng), n(rng));
    x.normalize();
    y -= y.dot(x) * x;
    y.normalize();
    const Vec7 p = x[0] * f1 + x[1] * f2 + x[2] * f3;
    const Vec7 u = y[0] * f1 + y[1] * f2 + y[2] * f3;
    const Eigen::Vector3d z = x.cross(y);
    const Vec7 w = z[0] * f1 + z[1] * f2 + z[2] * f3;
    const Vec7 ju = (Octonion(ImOctonion(p)) * Octonion(ImOctonion(u))).imag().vec();
    worst = std::max(worst, (ju - ju.dot(u) * u - ju.dot(w) * w).norm());
  }
  return worst;
}

}  // namespace

TEST(Icosphere, CountsAndEuler) {
  for (int level = 0; level <= 3; ++level) {
    const Icosphere ico = icosphere(level);
    const long v = static_cast<long>(ico.vertices.size()), f = static_cast<long>(ico.faces.size());
    EXPECT_EQ(v - 3 * f / 2 + f, 2);
    for (const Vec& x : ico.vertices) EXPECT_NEAR(x.norm(), 1.0, 1e-15);
  }
}

TEST(SphericalArea, Octant) {
  EXPECT_NEAR(spherical_triangle_area(Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)), M_PI / 2, 1e-15);
}

TEST(GreatSphere, PointwiseOracle) {
  EXPECT_LT(pointwise_j_invariance_defect(e(1), e(2), e(3)), 1e-14);
  EXPECT_GT(pointwise_j_invariance_defect(e(1), e(2), e(4)), 0.1);
}

TEST(GreatSphere, CRResidualAtLevel5) {
  const CurveMesh c = great_sphere_curve(s6_background(), e(1), e(2), e(3), 5);
  const CRResidualReport r = cr_residual(c);
  EXPECT_LT(r.l2, 1e-8);
  EXPECT_LE(r.l2, r.max);
  EXPECT_EQ(r.per_face.size(), c.faces().size());
}

TEST(GreatSphere, RejectsNonAssociativeTriple) {
  EXPECT_THROW(great_sphere_curve(s6_background(), e(1), e(2), e(4), 2), PreconditionError);
  EXPECT_THROW(great_sphere_curve(s6_background(), e(1), e(1), e(3), 2), PreconditionError);
}

TEST(GreatSphere, MeshInvariants) {
  const CurveMesh c = great_sphere_curve(s6_background(), e(1), e(2), e(3), 3);
  double w = 0.0;
  for (double x : c.weights()) w += x;
  EXPECT_NEAR(w, 4 * M_PI, 1e-12 * 4 * M_PI);
  for (const Vec& p : c.image()) EXPECT_NEAR(p.norm(), 1.0, 1e-10);
}

TEST(GreatSphere, G2ImageIsGreatSphere) {
  const CurveMesh c = great_sphere_curve(s6_background(), e(1), e(2), e(3), 3);
  const CurveMesh m = c.transformed(random_g2(7));
  EXPECT_NEAR(cr_residual(m).l2, cr_residual(c).l2, 1e-12);
  EXPECT_NEAR(curve_volume(m), curve_volume(c), 1e-12);
}

TEST(GreatSphere, ConjugationSymmetry) {
  const NKBackground s6 = s6_background();
  const CurveMesh c = great_sphere_curve(s6, e(1), e(2), e(3), 3);
  const CurveMesh cc = c.reversed().with_background(s6.conjugate());
  EXPECT_NEAR(cr_residual(cc).l2, cr_residual(c).l2, 1e-14);
  const CurveMesh n = round_sphere_curve(s6, e(1), e(2), e(4), 3);
  EXPECT_NEAR(cr_residual(n.reversed().with_background(s6.conjugate())).l2, cr_residual(n).l2, 1e-12);
}

TEST(Volume, ConvergesToFourPiAtSecondOrder) {
  const NKBackground s6 = s6_background();
  std::vector<double> err;
  for (int level = 3; level <= 6; ++level) {
    const CurveMesh c = great_sphere_curve(s6, e(1), e(2), e(3), level);
    err.push_back(std::abs(curve_volume(c) / (4 * M_PI) - 1.0));
    const double area = riemannian_area(c);
    EXPECT_LT(std::abs(area - curve_volume(c)) / area, 1e-5);
  }
  EXPECT_LT(err.back(), 1e-5);
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_GE(std::log2(err[i - 1] / err[i]), 1.9);
}

TEST(Volume, OrientationReversal) {
  const CurveMesh c = great_sphere_curve(s6_background(), e(1), e(2), e(3), 3);
  EXPECT_NEAR(curve_volume(c.reversed()), -curve_volume(c), 1e-13);
}

TEST(Volume, WirtingerGapOffTheLocus) {
  const CurveMesh n = round_sphere_curve(s6_background(), e(1), e(2), e(4), 4);
  EXPECT_GT(cr_residual(n).l2, 0.1);
  const double area = riemannian_area(n);
  EXPECT_GT(area - std::abs(curve_volume(n)), 1e-3);
}

TEST(Mesh, Preconditions) {
  const NKBackground s6 = s6_background();
  const CurveMesh c = great_sphere_curve(s6, e(1), e(2), e(3), 1);
  std::vector<Vec> img = c.image();
  img[0] *= 1.01;
  EXPECT_THROW(c.with_image(img), PreconditionError);
  std::vector<Face> faces = c.faces();
  faces.pop_back();
  EXPECT_THROW(CurveMesh(s6, 0, c.domain(), c.image(), faces, std::vector<double>(faces.size(), 4 * M_PI / faces.size())),
               PreconditionError);
  std::vector<double> w = c.weights();
  w[0] *= 1.5;
  EXPECT_THROW(CurveMesh(s6, 0, c.domain(), c.image(), c.faces(), w), PreconditionError);
  EXPECT_THROW(CurveMesh(s6, 1, c.domain(), c.image(), c.faces(), c.weights()), PreconditionError);
}

TEST(Mesh, DegenerateImageRejected) {
  const NKBackground s6 = s6_background();
  const CurveMesh c = great_sphere_curve(s6, e(1), e(2), e(3), 1);
  const CurveMesh flat = c.with_image(std::vector<Vec>(c.vertex_count(), Vec(e(1))));
  EXPECT_THROW(cr_residual(flat), MeshQualityError);
  EXPECT_THROW(curve_volume(flat), MeshQualityError);
  EXPECT_THROW(riemannian_area(flat), MeshQualityError);
}

TEST(Subtorus, KaehlerTorusIsFlat) {
  const NKBackground t = torus_testbed(TrigPolynomial::zero());
  for (double s : {0.0, 0.3, 0.8}) {
    const CurveMesh c = subtorus_family(t, s, Eigen::Vector4d(0, 0, 0.25, 0), 8);
    EXPECT_NEAR(riemannian_area(c), 4 * M_PI * M_PI, 1e-10);
    EXPECT_NEAR(curve_volume(c), 4 * M_PI * M_PI, 1e-10);
  }
}

TEST(Subtorus, SinFieldVolumeFollowsClosedForm) {
  const NKBackground t = torus_testbed(TrigPolynomial::parse("sin(x5)"));
  // Oracle: ∫∫ e^{f} dx₁dx₂ with f constant on the slice x₅ = π t / 2, by a 2D midpoint sum.
  auto oracle = [](double tt) {
    const int m = 64;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) s += std::exp(std::sin(M_PI * tt / 2));
    }
    return s * (2 * M_PI / m) * (2 * M_PI / m);
  };
  double lo = 1e300, hi = -1e300;
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    const CurveMesh c = subtorus_family(t, s, Eigen::Vector4d(0, 0, 0.25, 0), 8);
    const double v = curve_volume(c);
    EXPECT_NEAR(v, oracle(s), 1e-10 * v);
    EXPECT_LT(cr_residual(c).l2, 1e-12);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_GT((hi - lo) / lo, 0.01);
}
