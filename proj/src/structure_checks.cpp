#include "nkc/structure_checks.hpp"

#include "nkc/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace nkc {

namespace {

// Values of a field at p on every increasing k-subset of the coframe's real frame.
std::vector<double> frame_values(const FormField& f, const Vec& p, const Mat& frame) {
  const int k = f.degree();
  std::vector<double> out;
  std::vector<Vec> args(static_cast<std::size_t>(k));
  for (const auto& s : increasing_subsets(6, k)) {
    for (int j = 0; j < k; ++j) args[static_cast<std::size_t>(j)] = frame.col(s[static_cast<std::size_t>(j)]);
    out.push_back(f(p, std::span<const Vec>(args)));
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

InvariantReport check_invariants(const NKBackground& bg, std::span<const Vec> points) {
  InvariantReport r;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> n(0.0, 1.0);
  const int dim = bg.ambient_dim();
  auto random_vec = [&] {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = n(rng);
    return v;
  };
  for (const Vec& p : points) {
    const Vec x = bg.project(p, random_vec());
    const Vec y = bg.project(p, random_vec());
    const Mat J = bg.J(p);
    const double scale = std::max(1.0, x.norm() * y.norm());
    r.j_squared = std::max(r.j_squared, (J * (J * x) + x).norm() / std::max(1.0, x.norm()));
    r.metric_compatibility =
        std::max(r.metric_compatibility, std::abs(bg.g(p, J * x, J * y) - bg.g(p, x, y)) / scale);
    r.omega_consistency =
        std::max(r.omega_consistency, std::abs(bg.omega()(p, {x, y}) - bg.g(p, J * x, y)) / scale);
    ++r.points;
  }
  return r;
}

TypeSpectrum d_omega_spectrum(const NKBackground& bg, const Vec& p) {
  const Vec q = bg.retract(p);
  return type_decompose(bg.d_omega().at(q), bg.coframe(q));
}

double type_residual(const NKBackground& bg, std::span<const Vec> points) {
  double worst = 0.0;
  for (const Vec& p : points) worst = std::max(worst, d_omega_spectrum(bg, p).mixed_fraction());
  return worst;
}

LambdaEstimate lambda_estimate(const NKBackground& bg, std::span<const Vec> points) {
  if (points.empty()) throw PreconditionError("lambda_estimate needs sample points");
  LambdaEstimate out;
  std::vector<std::vector<double>> domega;
  std::vector<Mat> frames;
  bool all_zero = true;
  for (const Vec& p : points) {
    const Vec q = bg.retract(p);
    frames.push_back(bg.coframe(q).real_frame());
    domega.push_back(frame_values(bg.d_omega(), q, frames.back()));
    const double nrm = std::sqrt(dot(domega.back(), domega.back()));
    if (nrm > 1e-12) all_zero = false;
  }
  if (all_zero) {
    out.closed = true;
    out.per_point.assign(points.size(), 0.0);
    return out;
  }
  const FormField& re = bg.re_omega();
  std::vector<std::vector<double>> reo;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec q = bg.retract(points[i]);
    reo.push_back(frame_values(re, q, frames[i]));
    const double n2 = 9.0 * dot(reo.back(), reo.back());
    if (!(n2 > 1e-24)) throw DegenerateStructureError("ReOmega vanishes at a sample point");
    out.per_point.push_back(3.0 * dot(domega[i], reo.back()) / n2);
  }
  double s = 0.0;
  for (double l : out.per_point) s += l;
  out.mean = s / static_cast<double>(out.per_point.size());
  double v = 0.0;
  for (double l : out.per_point) v += (l - out.mean) * (l - out.mean);
  out.std = std::sqrt(v / static_cast<double>(out.per_point.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    double num = 0.0;
    for (std::size_t j = 0; j < reo[i].size(); ++j) {
      const double d = domega[i][j] - 3.0 * out.mean * reo[i][j];
      num += d * d;
    }
    const double den = dot(domega[i], domega[i]);
    out.max_residual = std::max(out.max_residual, den > 0.0 ? std::sqrt(num / den) : std::sqrt(num));
  }
  return out;
}

double second_structure_equation_residual(const NKBackground& bg, std::span<const Vec> points,
                                          double lambda) {
  const FormField d_im = exterior_derivative(bg.im_omega());
  const FormField omega_sq = wedge(bg.omega(), bg.omega());
  double worst = 0.0;
  for (const Vec& p : points) {
    const Vec q = bg.retract(p);
    const Mat frame = bg.coframe(q).real_frame();
    const auto a = frame_values(d_im, q, frame);
    const auto w = frame_values(omega_sq, q, frame);
    double num = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double d = a[j] + 2.0 * lambda * w[j];
      num += d * d;
    }
    const double den = dot(w, w);
    if (!(den > 0.0)) throw DegenerateStructureError("omega^2 vanishes at a sample point");
    worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

double s3s3_type_residual(const S3S3MetricParams& params) {
  const HomogeneousData h = s3s3_homogeneous_data(params);
  TangentStructure s;
  s.point = Vec::Zero(6);
  s.basis = Mat::Identity(6, 6);
  s.J = h.J;
  s.metric = h.metric;
  const UnitaryCoframe coframe = build_unitary_coframe(s);
  const Eigen::Matrix<double, 6, Eigen::Dynamic> id = Eigen::Matrix<double, 6, 6>::Identity();
  return type_decompose(h.d_omega.as_point_form(id), coframe).mixed_fraction();
}

MetricSearchResult find_nk_metric(double lo, double hi, double tolerance, int grid_samples) {
  if (!(lo < hi)) throw PreconditionError("empty search interval");
  if (!(lo > -1.0) || !(hi < 1.0)) throw PreconditionError("search interval must lie inside (-1, 1)");
  auto r = [](double b) { return s3s3_type_residual({1.0, b, false}); };
  MetricSearchResult out;
  for (int i = 0; i < grid_samples; ++i) {
    const double b = grid_samples > 1 ? lo + (hi - lo) * i / (grid_samples - 1) : 0.5 * (lo + hi);
    out.samples.emplace_back(b, r(b));
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = r(c);
  double fd = r(d);
  int it = 0;
  while (b - a > 1e-14 && it < 200) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = r(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = r(d);
    }
    ++it;
  }
  out.iterations = it;
  out.b_star = fc < fd ? c : d;
  out.residual = std::min(fc, fd);
  out.converged = out.residual < tolerance;
  return out;
}

}  // namespace nkc
