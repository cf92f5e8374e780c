#include "nkc/coframe_algebra.hpp"

#include <gtest/gtest.h>

using namespace nkc;

TEST(CoframeForm, DeterminantConvention) {
  const CoframeForm w = wedge(CoframeForm::basis(0), CoframeForm::basis(1));
  Vec6 u = Vec6::Unit(0), v = Vec6::Unit(1);
  EXPECT_EQ(w.evaluate({u, v}), 1.0);
  EXPECT_EQ(w.evaluate({v, u}), -1.0);
  EXPECT_EQ(wedge(CoframeForm::basis(2), CoframeForm::basis(2)).max_abs(), 0.0);
}

TEST(CoframeForm, FromBilinearRoundTrip) {
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Random();
  m = (m - m.transpose()).eval();
  const CoframeForm f = CoframeForm::from_bilinear(m);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(f.evaluate({Vec6::Unit(i), Vec6::Unit(j)}), m(i, j), 1e-15);
  }
}

TEST(StructureEquations, DSquaredVanishes) {
  const StructureEquations eq = StructureEquations::su2_su2();
  for (int i = 0; i < 6; ++i) EXPECT_EQ(eq.d(eq.d_basis(i)).max_abs(), 0.0);
  const CoframeForm a = wedge(CoframeForm::basis(0), CoframeForm::basis(4)) * 2.0 + wedge(CoframeForm::basis(1), CoframeForm::basis(3));
  EXPECT_EQ(eq.d(eq.d(a)).max_abs(), 0.0);
}

TEST(StructureEquations, Su2Brackets) {
  const StructureEquations eq = StructureEquations::su2_su2();
  // dξ₁ = −ξ₂∧ξ₃ ⇒ [E₂, E₃] = E₁; factors commute.
  EXPECT_EQ(eq.bracket(1, 2), Vec6::Unit(0));
  EXPECT_EQ(eq.bracket(4, 5), Vec6::Unit(3));
  EXPECT_EQ(eq.bracket(0, 3), Vec6::Zero());
  EXPECT_EQ(eq.bracket(2, 1), -Vec6::Unit(0));
}

TEST(StructureEquations, LeibnizSign) {
  const StructureEquations eq = StructureEquations::su2_su2();
  const CoframeForm a = CoframeForm::basis(0), b = CoframeForm::basis(3);
  const CoframeForm lhs = eq.d(wedge(a, b));
  const CoframeForm rhs = wedge(eq.d(a), b) - wedge(a, eq.d(b));
  EXPECT_EQ((lhs - rhs).max_abs(), 0.0);
}
