#include "nkc/moduli.hpp"

#include "nkc/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <random>

namespace nkc {

// -------------------------------------------------------------- Hausdorff

namespace {

// Early-break directed distance: an inner loop stops as soon as it cannot raise the running sup.
template <class Dist>
double directed(std::span<const Vec> X, std::span<const Vec> Y, Dist&& dist) {
  double sup = 0.0;
  for (const Vec& x : X) {
    double inf = std::numeric_limits<double>::infinity();
    for (const Vec& y : Y) {
      inf = std::min(inf, dist(x, y));
      if (inf <= sup) break;
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

template <class Dist>
double symmetric(std::span<const Vec> X, std::span<const Vec> Y, Dist&& dist) {
  if (X.empty() || Y.empty()) throw PreconditionError("Hausdorff distance of an empty sample");
  return std::max(directed(X, Y, dist), directed(Y, X, dist));
}

}  // namespace

double directed_hausdorff(std::span<const Vec> X, std::span<const Vec> Y) {
  if (X.empty() || Y.empty()) throw PreconditionError("Hausdorff distance of an empty sample");
  return directed(X, Y, [](const Vec& a, const Vec& b) { return (a - b).norm(); });
}

double hausdorff_distance(std::span<const Vec> X, std::span<const Vec> Y) {
  return symmetric(X, Y, [](const Vec& a, const Vec& b) { return (a - b).norm(); });
}

double hausdorff_distance(const CurveMesh& a, const CurveMesh& b) {
  const NKBackground& bg = a.background();
  return symmetric(a.image(), b.image(),
                   [&bg](const Vec& x, const Vec& y) { return bg.displacement(x, y).norm(); });
}

// ---------------------------------------------------------------- families

void validate_family(const FamilyPath& path) {
  if (path.times.size() != path.curves.size()) throw PreconditionError("one time per curve required");
  if (path.curves.empty()) throw PreconditionError("empty family");
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    if (path.times[i] < 0.0 || path.times[i] > 1.0) throw PreconditionError("family times must lie in [0, 1]");
    if (i > 0 && !(path.times[i] > path.times[i - 1])) throw PreconditionError("family times must increase");
  }
  const CurveMesh& first = path.curves.front();
  for (const CurveMesh& c : path.curves) {
    if (c.faces() != first.faces() || c.vertex_count() != first.vertex_count() ||
        c.genus() != first.genus()) {
      throw PreconditionError("family curves do not share mesh combinatorics");
    }
  }
}

VolumeDrift volume_drift(const FamilyPath& path) {
  validate_family(path);
  VolumeDrift d;
  for (const CurveMesh& c : path.curves) d.volumes.push_back(curve_volume(c));
  for (double v : d.volumes) d.max_drift = std::max(d.max_drift, std::abs(v - d.volumes.front()));
  const double scale = std::abs(d.volumes.front());
  d.relative_drift = scale > 0.0 ? d.max_drift / scale : d.max_drift;
  return d;
}

// -------------------------------------------------------------- projection

namespace {

// Weighted residual vector of one face: sqrt(w/W) · G^{1/2} (r_a, r_b) in ambient coordinates.
// The symmetric square root keeps the components continuous in the vertex positions.
class FaceResiduals {
 public:
  explicit FaceResiduals(const CurveMesh& curve) : curve_(curve), bg_(curve.background()) {
    for (double w : curve.weights()) total_weight_ += w;
    amb_ = bg_.ambient_dim();
  }

  int per_face() const { return 2 * amb_; }

  void eval(std::size_t f, const std::vector<Vec>& pos, Eigen::Ref<Eigen::VectorXd> out) const {
    const Face& face = curve_.faces()[f];
    const FaceCR c = face_cr(bg_, curve_.charts()[f], pos[static_cast<std::size_t>(face[0])],
                             pos[static_cast<std::size_t>(face[1])], pos[static_cast<std::size_t>(face[2])]);
    const Mat G = bg_.metric(c.point);
    const double s = std::sqrt(curve_.weights()[f] / total_weight_);
    const double g0 = G(0, 0);
    if ((G - g0 * Mat::Identity(amb_, amb_)).cwiseAbs().maxCoeff() <= 1e-15 * std::abs(g0)) {
      const double r = s * std::sqrt(g0);
      out.head(amb_) = r * c.ra;
      out.tail(amb_) = r * c.rb;
    } else {
      Eigen::SelfAdjointEigenSolver<Mat> eig(G);
      const Mat root = eig.operatorSqrt();
      out.head(amb_) = s * (root * c.ra);
      out.tail(amb_) = s * (root * c.rb);
    }
  }

  Eigen::VectorXd all(const std::vector<Vec>& pos) const {
    const std::size_t nf = curve_.faces().size();
    Eigen::VectorXd r(static_cast<Eigen::Index>(nf) * per_face());
    for (std::size_t f = 0; f < nf; ++f) eval(f, pos, r.segment(static_cast<Eigen::Index>(f) * per_face(), per_face()));
    return r;
  }

 private:
  const CurveMesh& curve_;
  const NKBackground& bg_;
  double total_weight_ = 0.0;
  int amb_ = 0;
};

}  // namespace

ProjectionResult project_to_holomorphic(const CurveMesh& curve, const ProjectionOptions& o) {
  const NKBackground& bg = curve.background();
  const FaceResiduals res(curve);
  const int rpf = res.per_face();
  const std::size_t nv = curve.vertex_count();
  const std::size_t nf = curve.faces().size();
  std::vector<std::vector<std::size_t>> adjacent(nv);
  for (std::size_t f = 0; f < nf; ++f) {
    for (int v : curve.faces()[f]) adjacent[static_cast<std::size_t>(v)].push_back(f);
  }

  ProjectionResult out;
  std::vector<Vec> x = curve.image();
  Eigen::VectorXd R = res.all(x);
  double E = R.squaredNorm();
  double mu = o.initial_damping;
  const Eigen::Index n_unknowns = static_cast<Eigen::Index>(nv) * 6;
  Eigen::VectorXd col(rpf);

  // The Jacobian is kept while steps contract the residual well (modified Gauss-Newton)
  // and rebuilt after a weak or rejected step.
  std::vector<Mat> T(nv);
  Eigen::SparseMatrix<double> Jm;
  Eigen::SparseMatrix<double> JtJ;
  bool fresh = false;
  auto build_jacobian = [&] {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(nv * 6 * 6 * static_cast<std::size_t>(rpf));
    for (std::size_t i = 0; i < nv; ++i) {
      T[i] = bg.tangent_basis(x[i]);
      const Vec saved = x[i];
      for (int k = 0; k < 6; ++k) {
        x[i] = bg.retract(saved + o.fd_step * T[i].col(k));
        for (std::size_t f : adjacent[i]) {
          res.eval(f, x, col);
          const Eigen::Index row0 = static_cast<Eigen::Index>(f) * rpf;
          for (int r = 0; r < rpf; ++r) {
            const double v = (col[r] - R[row0 + r]) / o.fd_step;
            if (v != 0.0) trip.emplace_back(static_cast<int>(row0 + r), static_cast<int>(i * 6 + static_cast<std::size_t>(k)), v);
          }
        }
      }
      x[i] = saved;
    }
    Jm.resize(R.size(), n_unknowns);
    Jm.setFromTriplets(trip.begin(), trip.end());
    JtJ = (Jm.transpose() * Jm).pruned();
    fresh = true;
  };
  Eigen::SparseMatrix<double> I(n_unknowns, n_unknowns);
  I.setIdentity();

  while (std::sqrt(E) >= o.budget && out.iterations < o.max_iterations) {
    if (!fresh && Jm.rows() == 0) build_jacobian();
    ++out.iterations;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(JtJ + mu * I);
    if (solver.info() != Eigen::Success) {
      mu *= 2.0;
      continue;
    }
    const Eigen::VectorXd delta = solver.solve(-(Jm.transpose() * R));
    std::vector<Vec> xn(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      xn[i] = bg.retract(x[i] + T[i] * delta.segment(static_cast<Eigen::Index>(i) * 6, 6));
    }
    Eigen::VectorXd Rn;
    bool ok = true;
    try {
      Rn = res.all(xn);
    } catch (const MeshQualityError&) {
      ok = false;
    }
    const double En = ok ? Rn.squaredNorm() : std::numeric_limits<double>::infinity();
    if (En < E) {
      const bool strong = En < 0.1 * E;
      x = std::move(xn);
      R = std::move(Rn);
      E = En;
      mu = std::max(mu * 0.5, 1e-15);
      fresh = false;
      if (!strong) build_jacobian();
    } else if (!fresh) {
      build_jacobian();
    } else {
      mu *= 2.0;
      if (mu > 1e12) break;
    }
  }
  out.image = std::move(x);
  out.l2 = std::sqrt(E);
  out.converged = out.l2 < o.budget;
  return out;
}

// ------------------------------------------------------------ continuation

namespace {

std::vector<Vec> normal_perturbation(const CurveMesh& curve, double rms, std::uint64_t seed,
                                     std::uint64_t step, std::uint64_t sub) {
  const NKBackground& bg = curve.background();
  const int amb = bg.ambient_dim();
  const std::size_t nv = curve.vertex_count();
  // Curve tangent planes at vertices from the adjacent faces' derivatives.
  std::vector<Mat> scatter(nv, Mat::Zero(amb, amb));
  for (std::size_t f = 0; f < curve.faces().size(); ++f) {
    const Face& face = curve.faces()[f];
    const auto [e1, e2] = image_edges(curve, face);
    const Eigen::Matrix2d& K = curve.charts()[f].inverse_edges;
    const Vec fa = e1 * K(0, 0) + e2 * K(1, 0);
    const Vec fb = e1 * K(0, 1) + e2 * K(1, 1);
    for (int v : face) scatter[static_cast<std::size_t>(v)] += fa * fa.transpose() + fb * fb.transpose();
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(sub)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Vec> out(nv);
  double sq = 0.0;
  for (std::size_t i = 0; i < nv; ++i) {
    const Vec& p = curve.image()[i];
    const Mat B = bg.tangent_basis(p);
    const Mat P = B * B.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> eig(P * scatter[i] * P);
    const Vec u1 = eig.eigenvectors().col(amb - 1);
    const Vec u2 = eig.eigenvectors().col(amb - 2);
    Vec z6(6);
    for (int k = 0; k < 6; ++k) z6[k] = n(rng);
    Vec z = B * z6;
    z -= u1.dot(z) * u1;
    z -= u2.dot(z) * u2;
    out[i] = z;
    sq += z.squaredNorm();
  }
  const double current = std::sqrt(sq / static_cast<double>(nv));
  for (Vec& z : out) z *= rms / current;
  return out;
}

}  // namespace

ContinuationResult continue_curve(const CurveMesh& start, const Drive& drive,
                                  const ContinuationOptions& o) {
  if (o.steps < 1) throw PreconditionError("continuation needs at least one step");
  const double r0 = cr_residual(start).l2;
  if (!(r0 < o.projection.budget / 10.0)) {
    throw PreconditionError("start curve residual " + std::to_string(r0) + " is not below budget/10");
  }
  if (std::holds_alternative<G2PathDrive>(drive) && start.background().ambient_dim() != 7) {
    throw PreconditionError("G2 drives need an Im O background");
  }
  const NKBackground& bg = start.background();
  ContinuationResult out;
  out.path.provenance = "continued";
  out.path.times.push_back(0.0);
  out.path.curves.push_back(start);
  out.records.push_back({0.0, 0, r0, 0.0, 0});

  const double dt = 1.0 / o.steps;
  double t = 0.0;
  std::uint64_t sub = 0;
  for (int s = 1; s <= o.steps; ++s) {
    const double target = (s == o.steps) ? 1.0 : s * dt;
    double h_try = target - t;
    int bisections = 0;
    while (target - t > 1e-14) {
      const double h = std::min(h_try, target - t);
      const CurveMesh& current = out.path.curves.back();
      std::vector<Vec> candidate;
      if (const auto* g2 = std::get_if<G2PathDrive>(&drive)) {
        const Mat7 M = g2->path.at(t + h).matrix();
        for (const Vec& x : start.image()) candidate.push_back(M * x);
      } else {
        const auto& nd = std::get<NormalPerturbationDrive>(drive);
        const auto disp = normal_perturbation(current, nd.magnitude * h / dt, nd.seed,
                                              static_cast<std::uint64_t>(s), sub++);
        for (std::size_t i = 0; i < current.vertex_count(); ++i) {
          candidate.push_back(bg.retract(current.image()[i] + disp[i]));
        }
      }
      auto bisect_or_fail = [&](const std::string& why) {
        if (bisections < o.max_bisections) {
          ++bisections;
          h_try = 0.5 * h;
          return true;
        }
        out.success = false;
        out.failure = why;
        return false;
      };
      // Drive step already beyond the Hausdorff bound: no projection can repair it.
      const double pre = symmetric(current.image(), candidate, [&bg](const Vec& a, const Vec& b) {
        return bg.displacement(a, b).norm();
      });
      if (pre > o.step_bound) {
        if (bisect_or_fail("drive step exceeds the Hausdorff step bound after bisection")) continue;
        return out;
      }
      ProjectionResult proj;
      try {
        proj = project_to_holomorphic(current.with_image(candidate), o.projection);
      } catch (const Error& e) {
        out.success = false;
        out.failure = std::string("numerical failure: ") + e.what();
        return out;
      }
      if (!proj.converged) {
        out.success = false;
        out.failure = "Gauss-Newton stalled at residual " + std::to_string(proj.l2);
        return out;
      }
      CurveMesh next = current.with_image(std::move(proj.image));
      const double dh = hausdorff_distance(current, next);
      if (dh > o.step_bound) {
        if (bisect_or_fail("projected step exceeds the Hausdorff step bound after bisection")) continue;
        return out;
      }
      t += h;
      if (target - t <= 1e-14) t = target;
      out.path.times.push_back(t);
      out.path.curves.push_back(std::move(next));
      out.records.push_back({t, proj.iterations, proj.l2, dh, bisections});
    }
  }
  return out;
}

FamilyPath g2_orbit_family(const CurveMesh& start, const G2Path& path, int steps) {
  if (steps < 1) throw PreconditionError("family needs at least one step");
  FamilyPath f;
  f.provenance = "exact-family";
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    f.times.push_back(t);
    f.curves.push_back(k == 0 ? start : start.transformed(path.at(t)));
  }
  return f;
}

FamilyPath subtorus_path(const NKBackground& torus, const Eigen::Vector4d& shift, int n, int steps) {
  if (steps < 1) throw PreconditionError("family needs at least one step");
  FamilyPath f;
  f.provenance = "exact-family";
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    f.times.push_back(t);
    f.curves.push_back(subtorus_family(torus, t, shift, n));
  }
  return f;
}

// ------------------------------------------------------------------ Stokes

double chain_integral(const CurveMesh& from, const CurveMesh& to, PrismRule rule) {
  if (from.faces() != to.faces() || from.vertex_count() != to.vertex_count()) {
    throw PreconditionError("curves do not share mesh combinatorics");
  }
  const NKBackground& bg = from.background();
  const FormField& dw = bg.d_omega();
  constexpr double alpha = 0.5854101966249685;
  constexpr double beta = 0.1381966011250105;
  double total = 0.0;
  std::vector<Vec> args(3);
  for (const Face& face : from.faces()) {
    std::array<int, 3> s = face;
    std::sort(s.begin(), s.end());
    // Parity of the permutation taking the face order to increasing order.
    const bool cyclic = (s[0] == face[0] && s[1] == face[1]) || (s[0] == face[1] && s[1] == face[2]) ||
                        (s[0] == face[2] && s[1] == face[0]);
    const double parity = cyclic ? 1.0 : -1.0;
    const Vec& base = from.image()[static_cast<std::size_t>(s[0])];
    std::array<Vec, 6> p;  // a, b, c, a', b', c' relative to base
    for (int k = 0; k < 3; ++k) {
      p[static_cast<std::size_t>(k)] = bg.displacement(base, from.image()[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])]);
      p[static_cast<std::size_t>(k + 3)] = bg.displacement(base, to.image()[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])]);
    }
    static constexpr int tets[3][4] = {{0, 1, 2, 3}, {1, 2, 3, 4}, {2, 3, 4, 5}};
    double prism = 0.0;
    for (const auto& tet : tets) {
      const Vec& p0 = p[static_cast<std::size_t>(tet[0])];
      for (int k = 0; k < 3; ++k) args[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(tet[k + 1])] - p0;
      double value = 0.0;
      if (rule == PrismRule::Centroid) {
        Vec c = Vec::Zero(p0.size());
        for (int v : tet) c += p[static_cast<std::size_t>(v)];
        value = dw(base + 0.25 * c, args);
      } else {
        Vec sum = Vec::Zero(p0.size());
        for (int v : tet) sum += p[static_cast<std::size_t>(v)];
        for (int v : tet) {
          const Vec& pv = p[static_cast<std::size_t>(v)];
          const Vec q = alpha * pv + beta * (sum - pv);
          value += 0.25 * dw(base + q, args);
        }
      }
      prism += value / 6.0;
    }
    total += parity * prism;
  }
  return total;
}

StokesReport stokes_check(const FamilyPath& path, PrismRule rule) {
  validate_family(path);
  if (path.curves.size() < 2) throw PreconditionError("Stokes check needs at least two curves");
  StokesReport r;
  std::vector<double> vol;
  for (const CurveMesh& c : path.curves) vol.push_back(curve_volume(c));
  for (std::size_t k = 0; k + 1 < path.curves.size(); ++k) {
    StokesStep s;
    s.t0 = path.times[k];
    s.t1 = path.times[k + 1];
    s.volume_change = vol[k + 1] - vol[k];
    s.chain_integral = chain_integral(path.curves[k], path.curves[k + 1], rule);
    r.rhs += s.chain_integral;
    r.steps.push_back(s);
  }
  r.lhs = vol.back() - vol.front();
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace nkc
