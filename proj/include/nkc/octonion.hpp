#pragma once
/**
 * @file octonion.hpp
 * @brief Octonion algebra, the cross product on Im O, and G2 automorphisms.
 *
 * Multiplication table (Cayley–Dickson doubling of the quaternions):
 *
 *   1, e1, e2, e3   = quaternion 1, i, j, k
 *   e4              = doubling unit
 *   e5 = e1 e4,  e6 = e2 e4,  e7 = e3 e4
 *
 * with (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).  The table of
 * products e_i e_j = ±e_k is exported by multiplication_table() and is
 * checked into data/octonion_table.json.
 */

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>

namespace nkc {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

class ImOctonion;

/// Element of the real octonion algebra: coefficient on 1 followed by e1..e7.
class Octonion {
 public:
  constexpr Octonion() = default;
  explicit constexpr Octonion(const std::array<double, 8>& c) : c_(c) {}
  explicit Octonion(const ImOctonion& im);

  /// Basis element: 0 is the identity, 1..7 are e1..e7.
  static Octonion unit(int index);

  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::array<double, 8>& coeffs() const { return c_; }

  double real() const { return c_[0]; }
  ImOctonion imag() const;

  Octonion conj() const;
  double norm_squared() const;
  double norm() const;

  Octonion operator+(const Octonion& o) const;
  Octonion operator-(const Octonion& o) const;
  Octonion operator-() const;
  Octonion operator*(double s) const;
  Octonion operator*(const Octonion& o) const;

 private:
  std::array<double, 8> c_{};
};

inline Octonion operator*(double s, const Octonion& o) { return o * s; }

/// Octonion product; bilinear and norm-multiplicative.
Octonion oct_mul(const Octonion& a, const Octonion& b);

/// Purely imaginary octonion, stored as its 7 coefficients on e1..e7.
class ImOctonion {
 public:
  ImOctonion() : v_(Vec7::Zero()) {}
  explicit ImOctonion(const Vec7& v) : v_(v) {}

  /// e1..e7 for index 1..7.
  static ImOctonion unit(int index);

  const Vec7& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

  double dot(const ImOctonion& o) const { return v_.dot(o.v_); }
  double norm() const { return v_.norm(); }
  ImOctonion normalized() const { return ImOctonion(v_.normalized()); }

  ImOctonion operator+(const ImOctonion& o) const { return ImOctonion(v_ + o.v_); }
  ImOctonion operator-(const ImOctonion& o) const { return ImOctonion(v_ - o.v_); }
  ImOctonion operator*(double s) const { return ImOctonion(v_ * s); }

 private:
  Vec7 v_;
};

/// Octonion product of two imaginary octonions (generally not imaginary).
Octonion operator*(const ImOctonion& a, const ImOctonion& b);

/// ½(uv − vu): the 7-dimensional cross product.
ImOctonion cross(const ImOctonion& u, const ImOctonion& v);

/// Associative 3-form φ(u, v, w) = <uv, w> on Im O.
double associative_form(const ImOctonion& u, const ImOctonion& v, const ImOctonion& w);

/// T[i][j] = ±k encodes e_{i+1} e_{j+1} = ±e_k; diagonal entries are 0 and mean e_i e_i = −1.
using MultiplicationTable = std::array<std::array<int, 7>, 7>;
MultiplicationTable multiplication_table();
std::string multiplication_table_json();

/// Orthogonal 7×7 matrix acting on Im O that preserves the product.
class G2Element {
 public:
  G2Element() : m_(Mat7::Identity()) {}

  /// Unchecked; use basic_triple_automorphism or random_g2 to build valid elements.
  static G2Element from_matrix(const Mat7& m) { return G2Element(m); }

  const Mat7& matrix() const { return m_; }
  ImOctonion apply(const ImOctonion& u) const { return ImOctonion(m_ * u.vec()); }
  Vec7 apply(const Vec7& v) const { return m_ * v; }

  G2Element operator*(const G2Element& o) const { return G2Element(m_ * o.m_); }
  G2Element inverse() const { return G2Element(m_.transpose()); }

  /// max_ij |MᵀM − I|.
  double orthogonality_residual() const;

 private:
  explicit G2Element(const Mat7& m) : m_(m) {}
  Mat7 m_;
};

/// Tolerance on the orthonormality residuals accepted by basic_triple_automorphism.
inline constexpr double kBasicTripleTolerance = 1e-8;

/**
 * The unique automorphism sending the standard basic triple (e1, e2, e4) to
 * (f1, f2, f3).  Requires f1, f2, f3 unit, f2 ⊥ f1 and f3 ⊥ span(f1, f2, f1 f2);
 * throws PreconditionError otherwise.
 */
G2Element basic_triple_automorphism(const ImOctonion& f1, const ImOctonion& f2,
                                    const ImOctonion& f3);

/// Deterministic random automorphism built from a random basic triple.
G2Element random_g2(std::uint64_t seed);

/**
 * Continuous path t ↦ M(t) in G2 with M(0) = identity.  The basic triple at
 * time t rotates each standard vector towards a seed-chosen direction by the
 * angle θt and is re-orthogonalized against the associative constraint.
 */
class G2Path {
 public:
  G2Path(std::uint64_t seed, double angle);
  G2Element at(double t) const;
  double angle() const { return angle_; }

 private:
  double angle_;
  std::array<Vec7, 3> directions_;
};

}  // namespace nkc
