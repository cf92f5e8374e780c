#include "nkc/coframe_algebra.hpp"

#include "nkc/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>

namespace nkc {

namespace {

// Sign of ξ^A ∧ ξ^B = sign · ξ^{A∪B} for disjoint masks.
double merge_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (int i = 0; i < 6; ++i) {
    if (b & (1u << i)) swaps += std::popcount(a >> (i + 1));
  }
  return (swaps % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

CoframeForm::CoframeForm(int degree) : degree_(degree) {
  if (degree < 0 || degree > 6) throw PreconditionError("coframe form degree must be in 0..6");
}

CoframeForm CoframeForm::basis(int index) {
  if (index < 0 || index > 5) throw PreconditionError("coframe index must be in 0..5");
  CoframeForm f(1);
  f.c_[1u << index] = 1.0;
  return f;
}

CoframeForm CoframeForm::constant(double c) {
  CoframeForm f(0);
  f.c_[0] = c;
  return f;
}

CoframeForm CoframeForm::from_bilinear(const Eigen::Matrix<double, 6, 6>& m) {
  CoframeForm f(2);
  for (int k = 0; k < 6; ++k) {
    for (int l = k + 1; l < 6; ++l) f.c_[(1u << k) | (1u << l)] = m(k, l);
  }
  return f;
}

void CoframeForm::set(unsigned mask, double value) {
  if (mask >= 64 || std::popcount(mask) != degree_) throw PreconditionError("mask does not match degree");
  c_[mask] = value;
}

CoframeForm CoframeForm::operator+(const CoframeForm& o) const {
  if (o.degree_ != degree_) throw PreconditionError("adding forms of different degree");
  CoframeForm r(degree_);
  for (std::size_t i = 0; i < 64; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

CoframeForm CoframeForm::operator-(const CoframeForm& o) const { return *this + o * -1.0; }

CoframeForm CoframeForm::operator*(double s) const {
  CoframeForm r(degree_);
  for (std::size_t i = 0; i < 64; ++i) r.c_[i] = c_[i] * s;
  return r;
}

double CoframeForm::evaluate(std::span<const Vec6> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) throw PreconditionError("wrong number of vectors");
  if (degree_ == 0) return c_[0];
  Eigen::MatrixXd sub(degree_, degree_);
  double total = 0.0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    if (c_[mask] == 0.0 || std::popcount(mask) != degree_) continue;
    int r = 0;
    for (int i = 0; i < 6; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int s = 0; s < degree_; ++s) sub(r, s) = vectors[static_cast<std::size_t>(s)][i];
      ++r;
    }
    total += c_[mask] * sub.determinant();
  }
  return total;
}

double CoframeForm::evaluate(std::initializer_list<Vec6> vectors) const {
  return evaluate(std::span<const Vec6>(vectors.begin(), vectors.size()));
}

PointForm CoframeForm::as_point_form(const Eigen::Matrix<double, 6, Eigen::Dynamic>& coframe) const {
  return PointForm(degree_, [form = *this, coframe](std::span<const Vec> v) {
    std::vector<Vec6> c;
    c.reserve(v.size());
    for (const Vec& x : v) c.push_back(coframe * x);
    return form.evaluate(std::span<const Vec6>(c));
  });
}

double CoframeForm::max_abs() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

CoframeForm wedge(const CoframeForm& a, const CoframeForm& b) {
  if (a.degree() + b.degree() > 6) throw PreconditionError("wedge degree exceeds 6");
  CoframeForm r(a.degree() + b.degree());
  for (unsigned ma = 0; ma < 64; ++ma) {
    if (a.coeff(ma) == 0.0) continue;
    for (unsigned mb = 0; mb < 64; ++mb) {
      if (b.coeff(mb) == 0.0 || (ma & mb)) continue;
      const unsigned m = ma | mb;
      r.set(m, r.coeff(m) + merge_sign(ma, mb) * a.coeff(ma) * b.coeff(mb));
    }
  }
  return r;
}

StructureEquations::StructureEquations(std::array<CoframeForm, 6> d_basis)
    : d_basis_(std::move(d_basis)) {
  for (const auto& f : d_basis_) {
    if (f.degree() != 2) throw PreconditionError("structure equations must be 2-forms");
  }
}

StructureEquations StructureEquations::su2_su2() {
  std::array<CoframeForm, 6> d{CoframeForm(2), CoframeForm(2), CoframeForm(2),
                               CoframeForm(2), CoframeForm(2), CoframeForm(2)};
  for (int factor = 0; factor < 2; ++factor) {
    const int o = 3 * factor;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      d[static_cast<std::size_t>(o + i)] =
          wedge(CoframeForm::basis(o + j), CoframeForm::basis(o + k)) * -1.0;
    }
  }
  return StructureEquations(d);
}

CoframeForm StructureEquations::d(const CoframeForm& a) const {
  CoframeForm r(a.degree() + 1);
  if (a.degree() == 0 || a.degree() == 6) return r;
  for (unsigned mask = 0; mask < 64; ++mask) {
    const double c = a.coeff(mask);
    if (c == 0.0) continue;
    // d(ξ_{i1} ∧ … ∧ ξ_{ik}) = Σ_r (−1)^r ξ_{i1} ∧ … ∧ dξ_{ir} ∧ … ∧ ξ_{ik}
    int r_index = 0;
    for (int i = 0; i < 6; ++i) {
      if (!(mask & (1u << i))) continue;
      CoframeForm term = CoframeForm::constant(1.0);
      for (int j = 0; j < 6; ++j) {
        if (!(mask & (1u << j))) continue;
        term = wedge(term, j == i ? d_basis_[static_cast<std::size_t>(i)] : CoframeForm::basis(j));
      }
      const double sign = (r_index % 2 == 0) ? 1.0 : -1.0;
      r = r + term * (sign * c);
      ++r_index;
    }
  }
  return r;
}

Eigen::Matrix<double, 6, 15> StructureEquations::coefficient_table() const {
  Eigen::Matrix<double, 6, 15> t;
  const auto& pairs = increasing_subsets(6, 2);
  for (int i = 0; i < 6; ++i) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const unsigned mask = (1u << pairs[p][0]) | (1u << pairs[p][1]);
      t(i, static_cast<int>(p)) = d_basis_[static_cast<std::size_t>(i)].coeff(mask);
    }
  }
  return t;
}

Eigen::Matrix<double, 6, 1> StructureEquations::bracket(int j, int k) const {
  Vec6 ej = Vec6::Zero();
  Vec6 ek = Vec6::Zero();
  ej[j] = 1.0;
  ek[k] = 1.0;
  Vec6 out;
  for (int i = 0; i < 6; ++i) out[i] = -d_basis_[static_cast<std::size_t>(i)].evaluate({ej, ek});
  return out;
}

}  // namespace nkc
