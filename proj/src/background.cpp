#include "nkc/background.hpp"

#include "nkc/errors.hpp"
#include "nkc/octonion.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace nkc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Vec4 = Eigen::Vector4d;

// Quaternion product with components (1, i, j, k).
Vec4 qmul(const Vec4& a, const Vec4& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Vec gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

Vec7 as7(const Vec& v) { return Vec7(v); }

}  // namespace

// ---------------------------------------------------------------- geometries

double SphereGeometry::manifold_residual(const Vec& p) const { return std::abs(p.norm() - 1.0); }

Vec SphereGeometry::retract(const Vec& p) const { return p / p.norm(); }

Vec SphereGeometry::retraction_differential(const Vec& p, const Vec& v) const {
  const double r = p.norm();
  const Vec u = p / r;
  return (v - u.dot(v) * u) / r;
}

Mat SphereGeometry::tangent_basis(const Vec& p) const {
  // Householder reflection sending e_k to ∓p̂; the other columns span p̂⊥.
  const Vec u = p / p.norm();
  Eigen::Index k = 0;
  u.cwiseAbs().maxCoeff(&k);
  Vec w = u;
  w[k] += (u[k] >= 0.0) ? 1.0 : -1.0;
  const Mat H = Mat::Identity(n_, n_) - 2.0 * w * w.transpose() / w.squaredNorm();
  Mat B(n_, n_ - 1);
  int c = 0;
  for (int j = 0; j < n_; ++j) {
    if (j != k) B.col(c++) = H.col(j);
  }
  return B;
}

Vec SphereGeometry::random_point(std::mt19937_64& rng) const {
  Vec v;
  do {
    v = gaussian(rng, n_);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

double SphereProductGeometry::manifold_residual(const Vec& p) const {
  return std::max(std::abs(p.head<4>().norm() - 1.0), std::abs(p.tail<4>().norm() - 1.0));
}

Vec SphereProductGeometry::retract(const Vec& p) const {
  Vec r(8);
  r.head<4>() = p.head<4>().normalized();
  r.tail<4>() = p.tail<4>().normalized();
  return r;
}

Vec SphereProductGeometry::retraction_differential(const Vec& p, const Vec& v) const {
  Vec out(8);
  for (int h = 0; h < 2; ++h) {
    const Vec4 q = p.segment<4>(4 * h);
    const double r = q.norm();
    const Vec4 u = q / r;
    const Vec4 x = v.segment<4>(4 * h);
    out.segment<4>(4 * h) = (x - u.dot(x) * u) / r;
  }
  return out;
}

Mat SphereProductGeometry::tangent_basis(const Vec& p) const {
  const Vec r = retract(p);
  Mat B = Mat::Zero(8, 6);
  for (int h = 0; h < 2; ++h) {
    const Vec4 q = r.segment<4>(4 * h);
    for (int i = 0; i < 3; ++i) {
      Vec4 unit = Vec4::Zero();
      unit[i + 1] = 1.0;
      B.block<4, 1>(4 * h, 3 * h + i) = qmul(q, unit);
    }
  }
  return B;
}

Vec SphereProductGeometry::random_point(std::mt19937_64& rng) const {
  Vec v(8);
  for (int h = 0; h < 2; ++h) {
    Vec q;
    do {
      q = gaussian(rng, 4);
    } while (q.norm() < 1e-6);
    v.segment<4>(4 * h) = q.normalized();
  }
  return v;
}

double TorusGeometry::manifold_residual(const Vec& p) const {
  return p.size() == 6 && p.allFinite() ? 0.0 : 1.0;
}

Mat TorusGeometry::tangent_basis(const Vec&) const { return Mat::Identity(6, 6); }

Vec TorusGeometry::displacement(const Vec& from, const Vec& to) const {
  Vec d = to - from;
  for (int i = 0; i < d.size(); ++i) d[i] -= kTwoPi * std::round(d[i] / kTwoPi);
  return d;
}

Vec TorusGeometry::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> dist(0.0, kTwoPi);
  Vec v(6);
  for (int i = 0; i < 6; ++i) v[i] = dist(rng);
  return v;
}

// -------------------------------------------------------------- NKBackground

namespace {

FormField derive_d_omega(const NKBackground::Parts& p) {
  if (p.d_omega) return *p.d_omega;
  return exterior_derivative(p.omega);
}

}  // namespace

NKBackground::NKBackground(Parts parts) : p_(std::move(parts)), d_omega_(derive_d_omega(p_)) {
  if (!p_.geometry) throw PreconditionError("background needs a geometry");
  if (p_.omega.degree() != 2) throw PreconditionError("hermitian form must have degree 2");
}

bool NKBackground::on_manifold(const Vec& p, double tol) const {
  return p.size() == ambient_dim() && p_.geometry->manifold_residual(p) <= tol;
}

void NKBackground::require_on_manifold(const Vec& p) const {
  if (p.size() != ambient_dim()) throw PreconditionError("point has the wrong ambient dimension");
  const double r = p_.geometry->manifold_residual(p);
  if (!(r <= kManifoldTolerance)) {
    throw PreconditionError("point is off the manifold by " + std::to_string(r));
  }
}

TangentVector NKBackground::tangent_project(const Vec& p, const Vec& v) const {
  require_on_manifold(p);
  return {p, project(p, v)};
}

Vec NKBackground::project(const Vec& p, const Vec& v) const {
  const Mat B = tangent_basis(p);
  return B * (B.transpose() * v);
}

double NKBackground::g(const Vec& p, const Vec& x, const Vec& y) const {
  return x.dot(metric(p) * y);
}

TangentStructure NKBackground::structure(const Vec& p) const {
  const Vec q = retract(p);
  return {q, tangent_basis(q), p_.J(q), p_.metric(q)};
}

const FormField& NKBackground::re_omega() const {
  if (!p_.re_omega) throw NotApplicableError(p_.name + " carries no (3,0)-form");
  return *p_.re_omega;
}

const FormField& NKBackground::im_omega() const {
  if (!p_.im_omega) throw NotApplicableError(p_.name + " carries no (3,0)-form");
  return *p_.im_omega;
}

NKBackground NKBackground::conjugate() const {
  Parts q = p_;
  q.params["conjugate"] = q.params.count("conjugate") ? 1.0 - q.params.at("conjugate") : 1.0;
  q.J = [J = p_.J](const Vec& x) -> Mat { return -J(x); };
  q.omega = p_.omega * -1.0;
  if (p_.d_omega) q.d_omega = *p_.d_omega * -1.0;
  if (p_.im_omega) q.im_omega = *p_.im_omega * -1.0;
  if (q.homogeneous) {
    q.homogeneous->J = -q.homogeneous->J;
    q.homogeneous->omega = q.homogeneous->omega * -1.0;
    q.homogeneous->d_omega = q.homogeneous->d_omega * -1.0;
  }
  return NKBackground(std::move(q));
}

NKBackground NKBackground::with_im_omega(FormField im) const {
  Parts q = p_;
  q.im_omega = std::move(im);
  return NKBackground(std::move(q));
}

std::vector<Vec> NKBackground::sample_points(int n, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n)));
  for (int i = 0; i < n; ++i) out.push_back(p_.geometry->random_point(rng));
  return out;
}

// ----------------------------------------------------------------------- S⁶

NKBackground s6_background() {
  auto geo = std::make_shared<SphereGeometry>(7);
  NKBackground::Parts p;
  p.name = "s6";
  p.geometry = geo;
  p.metric = [](const Vec&) -> Mat { return Mat::Identity(7, 7); };
  p.J = [](const Vec& x) -> Mat {
    const ImOctonion q(as7(x / x.norm()));
    Mat m(7, 7);
    for (int j = 0; j < 7; ++j) m.col(j) = cross(q, ImOctonion::unit(j + 1)).vec();
    return m;
  };
  const double radius = geo->smoothness_radius();
  // ω_q(x, y) = g(J_q x, y) = φ(q, x, y) on the unit sphere, pulled back along p ↦ p/|p|.
  p.omega = FormField(
      2,
      [geo](const Vec& x, std::span<const Vec> v) {
        const ImOctonion q(as7(geo->retract(x)));
        const ImOctonion a(as7(geo->retraction_differential(x, v[0])));
        const ImOctonion b(as7(geo->retraction_differential(x, v[1])));
        return associative_form(q, a, b);
      },
      radius);
  p.re_omega = FormField(
      3,
      [geo](const Vec& x, std::span<const Vec> v) {
        const ImOctonion a(as7(geo->retraction_differential(x, v[0])));
        const ImOctonion b(as7(geo->retraction_differential(x, v[1])));
        const ImOctonion c(as7(geo->retraction_differential(x, v[2])));
        return associative_form(a, b, c);
      },
      radius);
  p.im_omega = FormField(
      3,
      [geo](const Vec& x, std::span<const Vec> v) {
        const ImOctonion q(as7(geo->retract(x)));
        const ImOctonion a(as7(geo->retraction_differential(x, v[0])));
        const ImOctonion b(as7(geo->retraction_differential(x, v[1])));
        const ImOctonion c(as7(geo->retraction_differential(x, v[2])));
        return -associative_form(cross(q, a), b, c);
      },
      radius);
  p.lambda = 1.0;
  return NKBackground(std::move(p));
}

// ------------------------------------------------------------------ S³ × S³

HomogeneousData s3s3_homogeneous_data(const S3S3MetricParams& params) {
  const double a = params.a;
  const double b = params.b;
  if (!(a > 0.0) || !(std::abs(b) < a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw PreconditionError("S3xS3 metric needs a > 0 and |b| < a");
  }
  using M6 = Eigen::Matrix<double, 6, 6>;
  const Eigen::Matrix3d I3 = Eigen::Matrix3d::Identity();
  M6 G;
  G << a * I3, b * I3, b * I3, a * I3;
  Eigen::SelfAdjointEigenSolver<M6> eig(G);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) throw PreconditionError("S3xS3 metric is not positive definite");

  // g-orthonormal adapted frame X_i = E_i/√a, W_i = (−(b/a)E_i + E'_i)/√(a − b²/a).
  M6 A = M6::Zero();
  const double wn = 1.0 / std::sqrt(a - b * b / a);
  for (int i = 0; i < 3; ++i) {
    A(i, i) = 1.0 / std::sqrt(a);
    A(i, 3 + i) = -(b / a) * wn;
    A(3 + i, 3 + i) = wn;
  }
  M6 Jb = M6::Zero();
  for (int i = 0; i < 3; ++i) {
    Jb(3 + i, i) = -1.0;  // J X_i = −W_i
    Jb(i, 3 + i) = 1.0;   // J W_i = X_i
  }
  M6 J = A * Jb * A.inverse();
  if (params.swap_factors) {
    M6 P = M6::Zero();
    for (int i = 0; i < 3; ++i) {
      P(i, 3 + i) = 1.0;
      P(3 + i, i) = 1.0;
    }
    J = P * J * P;
    G = P * G * P;
  }
  HomogeneousData h;
  h.metric = G;
  h.J = J;
  const M6 bilinear = J.transpose() * G;  // ω(E_k, E_l) = g(J E_k, E_l)
  const M6 skew = 0.5 * (bilinear - bilinear.transpose());
  h.omega = CoframeForm::from_bilinear(skew);
  h.d_omega = h.equations.d(h.omega);
  return h;
}

NKBackground s3s3_background(const S3S3MetricParams& params) {
  HomogeneousData h = s3s3_homogeneous_data(params);
  auto geo = std::make_shared<SphereProductGeometry>();
  NKBackground::Parts p;
  p.name = "s3s3";
  p.params = {{"a", params.a}, {"b", params.b}, {"swap_factors", params.swap_factors ? 1.0 : 0.0}};
  p.geometry = geo;
  // Ambient v = Σ c_i E_i with E_i = q·u_i/2, so c = 2 Qᵀ v for the orthonormal frame Q = [q·u_i].
  const Eigen::Matrix<double, 6, 6> G = h.metric;
  const Eigen::Matrix<double, 6, 6> Jm = h.J;
  p.metric = [geo, G](const Vec& x) -> Mat {
    const Mat Q = geo->tangent_basis(x);
    return 4.0 * Q * G * Q.transpose();
  };
  p.J = [geo, Jm](const Vec& x) -> Mat {
    const Mat Q = geo->tangent_basis(x);
    return Q * Jm * Q.transpose();
  };
  auto frozen = [geo](const CoframeForm& f) {
    return FormField(
        f.degree(),
        [geo, f](const Vec& x, std::span<const Vec> v) {
          const Mat Q = geo->tangent_basis(x);
          std::vector<Vec6> c;
          c.reserve(v.size());
          for (const Vec& w : v) c.push_back(2.0 * Q.transpose() * geo->retraction_differential(x, w));
          return f.evaluate(std::span<const Vec6>(c));
        },
        geo->smoothness_radius());
  };
  p.omega = frozen(h.omega);
  p.d_omega = frozen(h.d_omega);
  p.homogeneous = std::move(h);
  return NKBackground(std::move(p));
}

// -------------------------------------------------------------------- torus

NKBackground torus_testbed(const TrigPolynomial& f) {
  auto geo = std::make_shared<TorusGeometry>();
  NKBackground::Parts p;
  p.name = "torus";
  p.field = f.source().empty() ? "0" : f.source();
  p.geometry = geo;
  p.metric = [f](const Vec& x) -> Mat { return std::exp(f.value(Vec6(x))) * Mat::Identity(6, 6); };
  Mat J0 = Mat::Zero(6, 6);
  for (int k = 0; k < 3; ++k) {
    J0(2 * k + 1, 2 * k) = 1.0;  // J∂_{2k+1} = ∂_{2k+2}
    J0(2 * k, 2 * k + 1) = -1.0;
  }
  p.J = [J0](const Vec&) -> Mat { return J0; };
  auto omega0 = [](const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += x[2 * k] * y[2 * k + 1] - x[2 * k + 1] * y[2 * k];
    return s;
  };
  const double radius = geo->smoothness_radius();
  p.omega = FormField(
      2,
      [f, omega0](const Vec& x, std::span<const Vec> v) {
        return std::exp(f.value(Vec6(x))) * omega0(v[0], v[1]);
      },
      radius);
  // dω_f = e^f df ∧ ω₀.
  p.d_omega = FormField(
      3,
      [f, omega0](const Vec& x, std::span<const Vec> v) {
        const Vec6 x6(x);
        const Vec6 df = f.gradient(x6);
        const double s = df.dot(Vec6(v[0])) * omega0(v[1], v[2]) -
                         df.dot(Vec6(v[1])) * omega0(v[0], v[2]) +
                         df.dot(Vec6(v[2])) * omega0(v[0], v[1]);
        return std::exp(f.value(x6)) * s;
      },
      radius);
  return NKBackground(std::move(p));
}

}  // namespace nkc
