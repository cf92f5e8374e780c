#include "nkc/hodge.hpp"

#include "nkc/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace nkc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Values of a real k-form on every increasing k-subset of the frame columns.
std::vector<double> frame_components(const PointForm& form, const Mat& frame) {
  const int k = form.degree();
  const int n = static_cast<int>(frame.cols());
  const auto& subsets = increasing_subsets(n, k);
  std::vector<double> out;
  out.reserve(subsets.size());
  std::vector<Vec> args(static_cast<std::size_t>(k));
  for (const auto& s : subsets) {
    for (int j = 0; j < k; ++j) args[static_cast<std::size_t>(j)] = frame.col(s[static_cast<std::size_t>(j)]);
    out.push_back(form(std::span<const Vec>(args)));
  }
  return out;
}

Complex complex_det(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return {1.0, 0.0};
  return m.determinant();
}

}  // namespace

UnitaryCoframe::UnitaryCoframe(Vec point, Mat real_frame, Mat metric)
    : point_(std::move(point)), frame_(std::move(real_frame)), metric_(std::move(metric)) {
  if (frame_.cols() != 6) throw PreconditionError("unitary coframe needs a 6-vector real frame");
}

Complex UnitaryCoframe::covector(int a, const Vec& v) const {
  const Vec gv = metric_ * v;
  const double re = gv.dot(frame_.col(2 * a));
  const double im = gv.dot(frame_.col(2 * a + 1));
  return Complex(re, im) * kInvSqrt2;
}

std::pair<Vec, Vec> UnitaryCoframe::dual_vector(int a) const {
  return {frame_.col(2 * a) * kInvSqrt2, -frame_.col(2 * a + 1) * kInvSqrt2};
}

UnitaryCoframe UnitaryCoframe::rotated(const Eigen::Matrix3cd& unitary) const {
  // Z'_b = Σ_a Z_a U_ab with Z_a = (e_a − i Je_a)/√2, so e'_b = √2 Re Z'_b and
  // Je'_b = −√2 Im Z'_b.
  Mat out(frame_.rows(), 6);
  for (int b = 0; b < 3; ++b) {
    Vec re = Vec::Zero(frame_.rows());
    Vec im = Vec::Zero(frame_.rows());
    for (int a = 0; a < 3; ++a) {
      const Complex u = unitary(a, b);
      // (e − iJe) u = (u_r e + u_i Je) + i (u_i e − u_r Je)
      re += u.real() * frame_.col(2 * a) + u.imag() * frame_.col(2 * a + 1);
      im += u.imag() * frame_.col(2 * a) - u.real() * frame_.col(2 * a + 1);
    }
    out.col(2 * b) = re;
    out.col(2 * b + 1) = -im;
  }
  return UnitaryCoframe(point_, out, metric_);
}

UnitaryCoframe build_unitary_coframe(const TangentStructure& s) {
  const Mat& B = s.basis;
  if (B.cols() != 6) throw StructuralError("tangent basis must have 6 columns");
  const Mat JB = s.J * B;
  const Mat Jt = B.transpose() * JB;
  const Mat Gt = B.transpose() * s.metric * B;
  const double leak = (JB - B * Jt).cwiseAbs().maxCoeff();
  if (leak > kStructureTolerance) throw StructuralError("J does not preserve the tangent space");
  const double square = (Jt * Jt + Mat::Identity(6, 6)).cwiseAbs().maxCoeff();
  if (square > kStructureTolerance) throw StructuralError("J^2 != -id");
  const double scale = std::max(1.0, Gt.cwiseAbs().maxCoeff());
  const double compat = (Jt.transpose() * Gt * Jt - Gt).cwiseAbs().maxCoeff();
  if (compat > kStructureTolerance * scale) throw StructuralError("g is not J-invariant");
  Eigen::LLT<Mat> llt(Gt);
  if (llt.info() != Eigen::Success) throw StructuralError("metric is not positive definite");

  auto ginner = [&](const Vec& x, const Vec& y) { return x.dot(Gt * y); };
  std::vector<Vec> chosen;
  const int ambient = static_cast<int>(B.rows());
  for (int i = 0; i < ambient && chosen.size() < 6; ++i) {
    Vec c = B.row(i).transpose();  // intrinsic coordinates of the projected e_i
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& f : chosen) c -= ginner(f, c) * f;
    }
    const double n = std::sqrt(std::max(0.0, ginner(c, c)));
    if (n < 1e-6) continue;
    c /= n;
    Vec jc = Jt * c;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& f : chosen) jc -= ginner(f, jc) * f;
      jc -= ginner(c, jc) * c;
    }
    jc /= std::sqrt(ginner(jc, jc));
    chosen.push_back(c);
    chosen.push_back(jc);
  }
  if (chosen.size() != 6) throw StructuralError("could not build a J-adapted frame");
  Mat frame(B.rows(), 6);
  for (int j = 0; j < 6; ++j) frame.col(j) = B * chosen[static_cast<std::size_t>(j)];
  return UnitaryCoframe(s.point, frame, s.metric);
}

TypeSpectrum::TypeSpectrum(int degree, std::array<double, 7> norm_by_p, Vec point)
    : degree_(degree), norm_by_p_(norm_by_p), point_(std::move(point)) {}

double TypeSpectrum::norm(int p) const {
  if (p < 0 || p > degree_) return 0.0;
  return norm_by_p_[static_cast<std::size_t>(p)];
}

double TypeSpectrum::total() const {
  double s = 0.0;
  for (int p = 0; p <= degree_; ++p) s += norm(p) * norm(p);
  return std::sqrt(s);
}

double TypeSpectrum::mixed_fraction() const {
  const double t = total();
  if (t == 0.0) return 0.0;
  double s = 0.0;
  for (int p = 1; p < degree_; ++p) s += norm(p) * norm(p);
  return std::sqrt(s) / t;
}

TypeSpectrum type_decompose(const PointForm& form, const UnitaryCoframe& coframe) {
  const int k = form.degree();
  if (k < 0 || k > 6) throw PreconditionError("type_decompose: degree out of range");
  const std::vector<double> comps = frame_components(form, coframe.real_frame());
  const auto& real_subsets = increasing_subsets(6, k);

  // Rows: Z_0, Z_1, Z_2, Z̄_0, Z̄_1, Z̄_2 expressed in the real frame.
  Eigen::Matrix<Complex, 6, 6> C = Eigen::Matrix<Complex, 6, 6>::Zero();
  for (int a = 0; a < 3; ++a) {
    C(a, 2 * a) = kInvSqrt2;
    C(a, 2 * a + 1) = Complex(0.0, -kInvSqrt2);
    C(3 + a, 2 * a) = kInvSqrt2;
    C(3 + a, 2 * a + 1) = Complex(0.0, kInvSqrt2);
  }

  // α(W_I) = Σ_S α(E_S) det C[I, S] (Cauchy–Binet).
  std::array<double, 7> sq{};
  Eigen::MatrixXcd sub(k, k);
  for (const auto& rows : increasing_subsets(6, k)) {
    Complex value(0.0, 0.0);
    for (std::size_t s = 0; s < real_subsets.size(); ++s) {
      if (comps[s] == 0.0) continue;
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
          sub(r, c) = C(rows[static_cast<std::size_t>(r)], real_subsets[s][static_cast<std::size_t>(c)]);
        }
      }
      value += comps[s] * complex_det(sub);
    }
    int p = 0;
    for (int r : rows) p += (r < 3) ? 1 : 0;
    sq[static_cast<std::size_t>(p)] += std::norm(value);
  }
  std::array<double, 7> norms{};
  for (std::size_t p = 0; p < 7; ++p) norms[p] = std::sqrt(sq[p]);
  return TypeSpectrum(k, norms, coframe.point());
}

double form_inner(const PointForm& a, const PointForm& b, const UnitaryCoframe& coframe) {
  if (a.degree() != b.degree()) throw PreconditionError("inner product of forms of different degree");
  const auto ca = frame_components(a, coframe.real_frame());
  const auto cb = frame_components(b, coframe.real_frame());
  double s = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) s += ca[i] * cb[i];
  return s;
}

double form_norm(const PointForm& a, const UnitaryCoframe& coframe) {
  return std::sqrt(form_inner(a, a, coframe));
}

}  // namespace nkc
