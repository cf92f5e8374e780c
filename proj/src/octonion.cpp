#include "nkc/octonion.hpp"

#include "nkc/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace nkc {

namespace {

using Quat = std::array<double, 4>;

Quat qmul(const Quat& a, const Quat& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Quat qconj(const Quat& a) { return {a[0], -a[1], -a[2], -a[3]}; }

}  // namespace

Octonion::Octonion(const ImOctonion& im) {
  c_[0] = 0.0;
  for (int i = 0; i < 7; ++i) c_[static_cast<std::size_t>(i + 1)] = im[i];
}

Octonion Octonion::unit(int index) {
  if (index < 0 || index > 7) throw PreconditionError("octonion unit index out of range");
  Octonion o;
  o.c_[static_cast<std::size_t>(index)] = 1.0;
  return o;
}

ImOctonion Octonion::imag() const {
  Vec7 v;
  for (int i = 0; i < 7; ++i) v[i] = c_[static_cast<std::size_t>(i + 1)];
  return ImOctonion(v);
}

Octonion Octonion::conj() const {
  Octonion o = *this;
  for (std::size_t i = 1; i < 8; ++i) o.c_[i] = -o.c_[i];
  return o;
}

double Octonion::norm_squared() const {
  double s = 0.0;
  for (double x : c_) s += x * x;
  return s;
}

double Octonion::norm() const { return std::sqrt(norm_squared()); }

Octonion Octonion::operator+(const Octonion& o) const {
  Octonion r;
  for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Octonion Octonion::operator-(const Octonion& o) const {
  Octonion r;
  for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Octonion Octonion::operator-() const { return *this * -1.0; }

Octonion Octonion::operator*(double s) const {
  Octonion r;
  for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] * s;
  return r;
}

Octonion Octonion::operator*(const Octonion& o) const {
  // (a, b)(c, d) = (ac − conj(d) b, d a + b conj(c))
  const Quat a{c_[0], c_[1], c_[2], c_[3]};
  const Quat b{c_[4], c_[5], c_[6], c_[7]};
  const Quat c{o.c_[0], o.c_[1], o.c_[2], o.c_[3]};
  const Quat d{o.c_[4], o.c_[5], o.c_[6], o.c_[7]};
  const Quat ac = qmul(a, c);
  const Quat db = qmul(qconj(d), b);
  const Quat da = qmul(d, a);
  const Quat bc = qmul(b, qconj(c));
  Octonion r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.c_[i] = ac[i] - db[i];
    r.c_[i + 4] = da[i] + bc[i];
  }
  return r;
}

Octonion oct_mul(const Octonion& a, const Octonion& b) { return a * b; }

ImOctonion ImOctonion::unit(int index) {
  if (index < 1 || index > 7) throw PreconditionError("imaginary unit index must be in 1..7");
  Vec7 v = Vec7::Zero();
  v[index - 1] = 1.0;
  return ImOctonion(v);
}

Octonion operator*(const ImOctonion& a, const ImOctonion& b) { return Octonion(a) * Octonion(b); }

ImOctonion cross(const ImOctonion& u, const ImOctonion& v) {
  const Octonion uv = u * v;
  const Octonion vu = v * u;
  return ((uv - vu) * 0.5).imag();
}

double associative_form(const ImOctonion& u, const ImOctonion& v, const ImOctonion& w) {
  return (u * v).imag().dot(w);
}

MultiplicationTable multiplication_table() {
  MultiplicationTable t{};
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 7; ++j) {
      const Octonion p = Octonion::unit(i) * Octonion::unit(j);
      int entry = 0;
      for (int k = 1; k <= 7; ++k) {
        if (p[k] != 0.0) entry = p[k] > 0 ? k : -k;
      }
      t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = entry;
    }
  }
  return t;
}

std::string multiplication_table_json() {
  const auto t = multiplication_table();
  std::ostringstream os;
  os << "{\n  \"convention\": \"Cayley-Dickson: e1,e2,e3 = i,j,k; e4 doubling unit; "
        "e5=e1e4, e6=e2e4, e7=e3e4\",\n"
     << "  \"encoding\": \"T[i][j] = +-k means e_(i+1) e_(j+1) = +-e_k; 0 on the diagonal means "
        "e_i e_i = -1\",\n"
     << "  \"table\": [\n";
  for (std::size_t i = 0; i < 7; ++i) {
    os << "    [";
    for (std::size_t j = 0; j < 7; ++j) os << t[i][j] << (j + 1 < 7 ? ", " : "");
    os << "]" << (i + 1 < 7 ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

double G2Element::orthogonality_residual() const {
  return (m_.transpose() * m_ - Mat7::Identity()).cwiseAbs().maxCoeff();
}

G2Element basic_triple_automorphism(const ImOctonion& f1, const ImOctonion& f2,
                                    const ImOctonion& f3) {
  const ImOctonion f12 = (f1 * f2).imag();
  const double residuals[] = {
      std::abs(f1.norm() - 1.0), std::abs(f2.norm() - 1.0), std::abs(f3.norm() - 1.0),
      std::abs(f1.dot(f2)),      std::abs(f3.dot(f1)),      std::abs(f3.dot(f2)),
      std::abs(f3.dot(f12))};
  for (double r : residuals) {
    if (!(r <= kBasicTripleTolerance)) {
      throw PreconditionError("not a basic triple: orthonormality residual " + std::to_string(r));
    }
  }
  Mat7 m;
  m.col(0) = f1.vec();
  m.col(1) = f2.vec();
  m.col(2) = f12.vec();
  m.col(3) = f3.vec();
  m.col(4) = (f1 * f3).imag().vec();
  m.col(5) = (f2 * f3).imag().vec();
  m.col(6) = (f12 * f3).imag().vec();
  return G2Element::from_matrix(m);
}

namespace {

constexpr double kGramThreshold = 1e-6;

Vec7 gaussian_vec7(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec7 v;
  for (int i = 0; i < 7; ++i) v[i] = n(rng);
  return v;
}

// Removes the components along `against` (orthonormal); returns false if
// the remainder is too small relative to the input.
bool orthogonalize(Vec7& v, std::initializer_list<Vec7> against) {
  const double before = v.squaredNorm();
  for (const Vec7& a : against) v -= a.dot(v) * a;
  if (v.squaredNorm() < kGramThreshold * before) return false;
  v.normalize();
  return true;
}

}  // namespace

G2Element random_g2(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vec7 f1;
  do {
    f1 = gaussian_vec7(rng);
  } while (f1.squaredNorm() < kGramThreshold);
  f1.normalize();
  Vec7 f2;
  do {
    f2 = gaussian_vec7(rng);
  } while (!orthogonalize(f2, {f1}));
  const Vec7 f12 = (ImOctonion(f1) * ImOctonion(f2)).imag().vec();
  Vec7 f3;
  do {
    f3 = gaussian_vec7(rng);
  } while (!orthogonalize(f3, {f1, f2, f12}));
  return basic_triple_automorphism(ImOctonion(f1), ImOctonion(f2), ImOctonion(f3));
}

G2Path::G2Path(std::uint64_t seed, double angle) : angle_(angle) {
  std::mt19937_64 rng(seed);
  const int standard[3] = {1, 2, 4};
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec7 e = ImOctonion::unit(standard[i]).vec();
    Vec7 d;
    do {
      d = gaussian_vec7(rng);
    } while (!orthogonalize(d, {e}));
    directions_[i] = d;
  }
}

G2Element G2Path::at(double t) const {
  const double c = std::cos(angle_ * t);
  const double s = std::sin(angle_ * t);
  Vec7 f1 = c * ImOctonion::unit(1).vec() + s * directions_[0];
  f1.normalize();
  Vec7 f2 = c * ImOctonion::unit(2).vec() + s * directions_[1];
  if (!orthogonalize(f2, {f1})) throw PreconditionError("G2 path degenerates; reduce the angle");
  const Vec7 f12 = (ImOctonion(f1) * ImOctonion(f2)).imag().vec();
  Vec7 f3 = c * ImOctonion::unit(4).vec() + s * directions_[2];
  if (!orthogonalize(f3, {f1, f2, f12})) {
    throw PreconditionError("G2 path degenerates; reduce the angle");
  }
  return basic_triple_automorphism(ImOctonion(f1), ImOctonion(f2), ImOctonion(f3));
}

}  // namespace nkc
