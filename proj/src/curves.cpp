#include "nkc/curves.hpp"

#include "nkc/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>

namespace nkc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Vector2d wrap2(Eigen::Vector2d d) {
  for (int i = 0; i < 2; ++i) d[i] -= kTwoPi * std::round(d[i] / kTwoPi);
  return d;
}

FaceChart make_chart(int genus, const Vec& u0, const Vec& u1, const Vec& u2) {
  Eigen::Matrix2d U;
  double area = 0.0;
  if (genus == 0) {
    const Eigen::Vector3d d1 = (u1 - u0).head<3>();
    const Eigen::Vector3d d2 = (u2 - u0).head<3>();
    const Eigen::Vector3d cr = d1.cross(d2);
    area = 0.5 * cr.norm();
    if (!(area >= kMinFaceArea)) throw MeshQualityError("degenerate domain face");
    const Eigen::Vector3d n = cr.normalized();
    const Eigen::Vector3d a = d1.normalized();
    const Eigen::Vector3d b = n.cross(a);
    U << a.dot(d1), a.dot(d2), b.dot(d1), b.dot(d2);
  } else {
    const Eigen::Vector2d d1 = wrap2((u1 - u0).head<2>());
    const Eigen::Vector2d d2 = wrap2((u2 - u0).head<2>());
    const double det = d1.x() * d2.y() - d1.y() * d2.x();
    area = 0.5 * std::abs(det);
    if (!(area >= kMinFaceArea)) throw MeshQualityError("degenerate domain face");
    const double s = det > 0.0 ? 1.0 : -1.0;
    U << d1.x(), d2.x(), s * d1.y(), s * d2.y();
  }
  return {U.inverse(), area};
}

// Pf_a, Pf_b at q from the image edges.
std::pair<Vec, Vec> tangent_derivatives(const NKBackground& bg, const FaceChart& chart,
                                        const Vec& q, const Vec& e1, const Vec& e2) {
  const Mat B = bg.tangent_basis(q);
  const Vec p1 = B * (B.transpose() * e1);
  const Vec p2 = B * (B.transpose() * e2);
  const Eigen::Matrix2d& K = chart.inverse_edges;
  return {p1 * K(0, 0) + p2 * K(1, 0), p1 * K(0, 1) + p2 * K(1, 1)};
}

void check_image_area(const Vec& e1, const Vec& e2) {
  const double g11 = e1.squaredNorm();
  const double g22 = e2.squaredNorm();
  const double g12 = e1.dot(e2);
  const double area = 0.5 * std::sqrt(std::max(0.0, g11 * g22 - g12 * g12));
  if (!(area >= kMinFaceArea)) throw MeshQualityError("degenerate image face");
}

}  // namespace

// ------------------------------------------------------------------ CurveMesh

CurveMesh::CurveMesh(NKBackground background, int genus, std::vector<Vec> domain,
                     std::vector<Vec> image, std::vector<Face> faces, std::vector<double> weights)
    : bg_(std::move(background)),
      genus_(genus),
      domain_(std::move(domain)),
      image_(std::move(image)),
      faces_(std::move(faces)),
      weights_(std::move(weights)) {
  if (genus_ != 0 && genus_ != 1) throw PreconditionError("genus must be 0 or 1");
  if (domain_.size() != image_.size()) throw PreconditionError("domain and image sizes differ");
  if (weights_.size() != faces_.size()) throw PreconditionError("one weight per face required");
  if (faces_.empty()) throw PreconditionError("mesh has no faces");
  const int nv = static_cast<int>(image_.size());
  const int ddim = genus_ == 0 ? 3 : 2;
  for (const Vec& u : domain_) {
    if (u.size() != ddim) throw PreconditionError("domain point has the wrong dimension");
  }
  std::map<std::pair<int, int>, int> directed;
  for (const Face& f : faces_) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[static_cast<std::size_t>(k)];
      const int b = f[static_cast<std::size_t>((k + 1) % 3)];
      if (a < 0 || a >= nv || b < 0 || b >= nv || a == b) throw PreconditionError("bad face index");
      if (++directed[{a, b}] > 1) throw PreconditionError("edge used twice in the same direction");
    }
  }
  for (const auto& [e, c] : directed) {
    if (!directed.count({e.second, e.first})) throw PreconditionError("surface is not closed");
  }
  const long euler = static_cast<long>(nv) - static_cast<long>(directed.size() / 2) +
                     static_cast<long>(faces_.size());
  if (euler != 2 - 2 * genus_) {
    throw PreconditionError("Euler characteristic " + std::to_string(euler) + " does not match genus");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw PreconditionError("quadrature weights must be positive");
    total += w;
  }
  if (std::abs(total - reference_area()) > 1e-12 * reference_area()) {
    throw PreconditionError("quadrature weights do not sum to the domain area");
  }
  for (const Vec& x : image_) bg_.require_on_manifold(x);
  charts_.reserve(faces_.size());
  for (const Face& f : faces_) {
    charts_.push_back(make_chart(genus_, domain_[static_cast<std::size_t>(f[0])],
                                 domain_[static_cast<std::size_t>(f[1])],
                                 domain_[static_cast<std::size_t>(f[2])]));
  }
}

double CurveMesh::reference_area() const {
  return genus_ == 0 ? 4.0 * std::numbers::pi : kTwoPi * kTwoPi;
}

CurveMesh CurveMesh::with_image(std::vector<Vec> image) const {
  return CurveMesh(bg_, genus_, domain_, std::move(image), faces_, weights_);
}

CurveMesh CurveMesh::with_background(NKBackground bg) const {
  return CurveMesh(std::move(bg), genus_, domain_, image_, faces_, weights_);
}

CurveMesh CurveMesh::reversed() const {
  std::vector<Face> f = faces_;
  for (Face& x : f) std::swap(x[1], x[2]);
  return CurveMesh(bg_, genus_, domain_, image_, std::move(f), weights_);
}

CurveMesh CurveMesh::transformed(const G2Element& m) const {
  if (bg_.ambient_dim() != 7) throw PreconditionError("G2 acts on Im O backgrounds only");
  std::vector<Vec> img;
  img.reserve(image_.size());
  for (const Vec& x : image_) img.push_back(m.matrix() * x);
  return with_image(std::move(img));
}

std::pair<Vec, Vec> image_edges(const CurveMesh& curve, const Face& face) {
  const auto& img = curve.image();
  const Vec& x0 = img[static_cast<std::size_t>(face[0])];
  return {curve.background().displacement(x0, img[static_cast<std::size_t>(face[1])]),
          curve.background().displacement(x0, img[static_cast<std::size_t>(face[2])])};
}

// ------------------------------------------------------------------- meshes

Icosphere icosphere(int level) {
  if (level < 0 || level > 8) throw PreconditionError("icosphere level must be in 0..8");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const double base[12][3] = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                              {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                              {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  Icosphere m;
  for (const auto& b : base) {
    Vec v(3);
    v << b[0], b[1], b[2];
    m.vertices.push_back(v.normalized());
  }
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
             {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> cache;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      const Vec v = (m.vertices[static_cast<std::size_t>(a)] + m.vertices[static_cast<std::size_t>(b)]).normalized();
      m.vertices.push_back(v);
      const int idx = static_cast<int>(m.vertices.size()) - 1;
      cache.emplace(key, idx);
      return idx;
    };
    std::vector<Face> next;
    next.reserve(m.faces.size() * 4);
    for (const Face& f : m.faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.faces = std::move(next);
  }
  return m;
}

double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
  const Eigen::Vector3d x = a.head<3>();
  const Eigen::Vector3d y = b.head<3>();
  const Eigen::Vector3d z = c.head<3>();
  const double triple = std::abs(x.dot(y.cross(z)));
  const double denom = 1.0 + x.dot(y) + y.dot(z) + z.dot(x);
  return 2.0 * std::atan2(triple, denom);
}

namespace {

void require_orthonormal(const Vec7& f1, const Vec7& f2, const Vec7& f3) {
  Eigen::Matrix3d gram;
  const Vec7* f[3] = {&f1, &f2, &f3};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) gram(i, j) = f[i]->dot(*f[j]);
  }
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw PreconditionError("sphere frame is not orthonormal");
  }
}

}  // namespace

double associativity_residual(const Vec7& f1, const Vec7& f2, const Vec7& f3) {
  const Vec7 f[3] = {f1, f2, f3};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      Vec7 c = cross(ImOctonion(f[i]), ImOctonion(f[j])).vec();
      for (const Vec7& b : f) c -= c.dot(b) * b;
      worst = std::max(worst, c.norm());
    }
  }
  return worst;
}

CurveMesh round_sphere_curve(const NKBackground& s6, const Vec7& f1, const Vec7& f2,
                             const Vec7& f3, int level) {
  if (s6.ambient_dim() != 7) throw PreconditionError("round spheres live in Im O backgrounds");
  require_orthonormal(f1, f2, f3);
  Icosphere ico = icosphere(level);
  std::vector<Vec> image;
  image.reserve(ico.vertices.size());
  for (const Vec& x : ico.vertices) image.push_back(Vec(x[0] * f1 + x[1] * f2 + x[2] * f3));
  std::vector<double> w;
  w.reserve(ico.faces.size());
  for (const Face& f : ico.faces) {
    w.push_back(spherical_triangle_area(ico.vertices[static_cast<std::size_t>(f[0])],
                                        ico.vertices[static_cast<std::size_t>(f[1])],
                                        ico.vertices[static_cast<std::size_t>(f[2])]));
  }
  return CurveMesh(s6, 0, std::move(ico.vertices), std::move(image), std::move(ico.faces),
                   std::move(w));
}

CurveMesh great_sphere_curve(const NKBackground& s6, const Vec7& f1, const Vec7& f2,
                             const Vec7& f3, int level) {
  require_orthonormal(f1, f2, f3);
  const double r = associativity_residual(f1, f2, f3);
  if (r > 1e-10) {
    throw PreconditionError("span of the triple is not associative (residual " + std::to_string(r) + ")");
  }
  return round_sphere_curve(s6, f1, f2, f3, level);
}

CurveMesh subtorus_curve(const NKBackground& torus, const Eigen::Vector4d& offset, int n) {
  if (torus.ambient_dim() != 6 || torus.name() != "torus") {
    throw PreconditionError("subtori live in the torus testbed");
  }
  if (n < 3) throw PreconditionError("torus grid needs at least 3 cells per side");
  const double h = kTwoPi / n;
  std::vector<Vec> domain;
  std::vector<Vec> image;
  auto id = [n](int i, int j) { return ((i % n) * n) + (j % n); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec u(2);
      u << i * h, j * h;
      domain.push_back(u);
      Vec x(6);
      x << i * h, j * h, offset[0], offset[1], offset[2], offset[3];
      image.push_back(x);
    }
  }
  std::vector<Face> faces;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  std::vector<double> w(faces.size(), 0.5 * h * h);
  return CurveMesh(torus, 1, std::move(domain), std::move(image), std::move(faces), std::move(w));
}

CurveMesh subtorus_family(const NKBackground& torus, double t, const Eigen::Vector4d& shift,
                          int n) {
  return subtorus_curve(torus, kTwoPi * t * shift, n);
}

// -------------------------------------------------------------- quadrature

FaceCR face_cr(const NKBackground& bg, const FaceChart& chart, const Vec& x0, const Vec& x1,
               const Vec& x2) {
  const Vec e1 = bg.displacement(x0, x1);
  const Vec e2 = bg.displacement(x0, x2);
  check_image_area(e1, e2);
  // Circumcenter x0 + αe1 + βe2 with 2⟨c, e_i⟩ = |e_i|².
  Eigen::Matrix2d G;
  G << e1.dot(e1), e1.dot(e2), e1.dot(e2), e2.dot(e2);
  const Eigen::Vector2d ab = G.ldlt().solve(0.5 * Eigen::Vector2d(G(0, 0), G(1, 1)));
  const Vec q = bg.retract(x0 + ab[0] * e1 + ab[1] * e2);
  const auto [fa, fb] = tangent_derivatives(bg, chart, q, e1, e2);
  const Mat J = bg.J(q);
  return {0.5 * (fa + J * fb), 0.5 * (fb - J * fa), q};
}

CRResidualReport cr_residual(const CurveMesh& curve) {
  const NKBackground& bg = curve.background();
  CRResidualReport r;
  r.per_face.reserve(curve.faces().size());
  double sum = 0.0;
  double wsum = 0.0;
  const auto& img = curve.image();
  for (std::size_t i = 0; i < curve.faces().size(); ++i) {
    const Face& f = curve.faces()[i];
    const FaceCR c = face_cr(bg, curve.charts()[i], img[static_cast<std::size_t>(f[0])],
                             img[static_cast<std::size_t>(f[1])], img[static_cast<std::size_t>(f[2])]);
    const Mat G = bg.metric(c.point);
    const double sq = std::max(0.0, c.ra.dot(G * c.ra) + c.rb.dot(G * c.rb));
    const double w = curve.weights()[i];
    sum += w * sq;
    wsum += w;
    r.per_face.push_back(std::sqrt(sq));
    r.max = std::max(r.max, std::sqrt(sq));
  }
  r.l2 = std::sqrt(sum / wsum);
  return r;
}

namespace {

template <class Integrand>
double integrate(const CurveMesh& curve, Integrand&& integrand) {
  const NKBackground& bg = curve.background();
  double total = 0.0;
  const auto& img = curve.image();
  for (std::size_t i = 0; i < curve.faces().size(); ++i) {
    const Face& f = curve.faces()[i];
    const auto [e1, e2] = image_edges(curve, f);
    check_image_area(e1, e2);
    const Vec q = bg.retract(img[static_cast<std::size_t>(f[0])] + (e1 + e2) / 3.0);
    const auto [fa, fb] = tangent_derivatives(bg, curve.charts()[i], q, e1, e2);
    total += curve.weights()[i] * integrand(q, fa, fb);
  }
  return total;
}

}  // namespace

double curve_volume(const CurveMesh& curve) {
  const FormField& omega = curve.background().omega();
  return integrate(curve, [&](const Vec& q, const Vec& fa, const Vec& fb) {
    return omega(q, {fa, fb});
  });
}

double riemannian_area(const CurveMesh& curve) {
  const NKBackground& bg = curve.background();
  return integrate(curve, [&](const Vec& q, const Vec& fa, const Vec& fb) {
    const Mat G = bg.metric(q);
    const double a = fa.dot(G * fa);
    const double b = fb.dot(G * fb);
    const double c = fa.dot(G * fb);
    return std::sqrt(std::max(0.0, a * b - c * c));
  });
}

}  // namespace nkc
