#include "nkc/forms.hpp"

#include "nkc/errors.hpp"

#include <algorithm>
#include <string>

namespace nkc {

namespace {

void check_count(int degree, std::size_t n) {
  if (static_cast<int>(n) != degree) {
    throw PreconditionError("form of degree " + std::to_string(degree) + " given " +
                            std::to_string(n) + " vectors");
  }
}

void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_rec(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Σ over (k, l)-shuffles σ of sgn(σ) a(v_σ(1..k)) b(v_σ(k+1..k+l)).
template <class A, class B>
double shuffle_sum(int ka, int kb, const A& a, const B& b, std::span<const Vec> vectors) {
  const int n = ka + kb;
  double total = 0.0;
  std::vector<Vec> left(static_cast<std::size_t>(ka));
  std::vector<Vec> right(static_cast<std::size_t>(kb));
  for (const auto& subset : increasing_subsets(n, ka)) {
    int inversions = 0;
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (int j = 0; j < ka; ++j) {
      inversions += subset[static_cast<std::size_t>(j)] - j;
      taken[static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])] = true;
      left[static_cast<std::size_t>(j)] = vectors[static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])];
    }
    std::size_t r = 0;
    for (int i = 0; i < n; ++i) {
      if (!taken[static_cast<std::size_t>(i)]) right[r++] = vectors[static_cast<std::size_t>(i)];
    }
    const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
    total += sign * a(std::span<const Vec>(left)) * b(std::span<const Vec>(right));
  }
  return total;
}

}  // namespace

const std::vector<std::vector<int>>& increasing_subsets(int n, int k) {
  constexpr int kMax = 8;
  static const auto table = [] {
    std::vector<std::vector<std::vector<std::vector<int>>>> t(kMax + 1);
    for (int nn = 0; nn <= kMax; ++nn) {
      t[static_cast<std::size_t>(nn)].resize(static_cast<std::size_t>(nn + 1));
      for (int kk = 0; kk <= nn; ++kk) {
        std::vector<int> cur;
        subsets_rec(nn, kk, 0, cur, t[static_cast<std::size_t>(nn)][static_cast<std::size_t>(kk)]);
      }
    }
    return t;
  }();
  if (n < 0 || n > kMax || k < 0 || k > n) throw PreconditionError("subset size out of range");
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

PointForm::PointForm(int degree, Evaluator eval) : degree_(degree), eval_(std::move(eval)) {}

double PointForm::operator()(std::span<const Vec> vectors) const {
  check_count(degree_, vectors.size());
  return eval_(vectors);
}

double PointForm::operator()(std::initializer_list<Vec> vectors) const {
  return (*this)(std::span<const Vec>(vectors.begin(), vectors.size()));
}

PointForm PointForm::operator+(const PointForm& o) const {
  if (o.degree_ != degree_) throw PreconditionError("adding forms of different degree");
  return PointForm(degree_, [a = eval_, b = o.eval_](std::span<const Vec> v) {
    return a(v) + b(v);
  });
}

PointForm PointForm::operator*(double s) const {
  return PointForm(degree_, [a = eval_, s](std::span<const Vec> v) { return s * a(v); });
}

FormField::FormField()
    : FormField(0, [](const Vec&, std::span<const Vec>) { return 0.0; }) {}

FormField::FormField(int degree, Evaluator eval, double smoothness_radius)
    : degree_(degree), eval_(std::move(eval)), radius_(smoothness_radius) {
  if (degree < 0 || degree > 6) throw PreconditionError("form degree must be in 0..6");
  if (!(smoothness_radius > 0.0)) throw PreconditionError("smoothness radius must be positive");
}

double FormField::operator()(const Vec& point, std::span<const Vec> vectors) const {
  check_count(degree_, vectors.size());
  return eval_(point, vectors);
}

double FormField::operator()(const Vec& point, std::initializer_list<Vec> vectors) const {
  return (*this)(point, std::span<const Vec>(vectors.begin(), vectors.size()));
}

PointForm FormField::at(const Vec& point) const {
  return PointForm(degree_, [e = eval_, point](std::span<const Vec> v) { return e(point, v); });
}

FormField FormField::operator+(const FormField& o) const {
  if (o.degree_ != degree_) throw PreconditionError("adding forms of different degree");
  return FormField(
      degree_,
      [a = eval_, b = o.eval_](const Vec& p, std::span<const Vec> v) { return a(p, v) + b(p, v); },
      std::min(radius_, o.radius_));
}

FormField FormField::operator*(double s) const {
  return FormField(
      degree_, [a = eval_, s](const Vec& p, std::span<const Vec> v) { return s * a(p, v); },
      radius_);
}

FormField wedge(const FormField& a, const FormField& b) {
  const int ka = a.degree();
  const int kb = b.degree();
  if (ka + kb > 6) throw PreconditionError("wedge degree exceeds 6");
  return FormField(
      ka + kb,
      [a, b, ka, kb](const Vec& p, std::span<const Vec> v) {
        auto fa = [&](std::span<const Vec> w) { return a(p, w); };
        auto fb = [&](std::span<const Vec> w) { return b(p, w); };
        return shuffle_sum(ka, kb, fa, fb, v);
      },
      std::min(a.smoothness_radius(), b.smoothness_radius()));
}

PointForm wedge(const PointForm& a, const PointForm& b) {
  const int ka = a.degree();
  const int kb = b.degree();
  if (ka + kb > 6) throw PreconditionError("wedge degree exceeds 6");
  return PointForm(ka + kb, [a, b, ka, kb](std::span<const Vec> v) {
    return shuffle_sum(ka, kb, a, b, v);
  });
}

double exterior_derivative(const FormField& field, const Vec& point, std::span<const Vec> vectors,
                           double step) {
  const int k = field.degree();
  if (static_cast<int>(vectors.size()) != k + 1) {
    throw PreconditionError("exterior derivative of a " + std::to_string(k) + "-form needs " +
                            std::to_string(k + 1) + " vectors");
  }
  if (!(step > 0.0) || !(step < field.smoothness_radius())) {
    throw PreconditionError("finite-difference step outside (0, smoothness radius)");
  }
  std::vector<Vec> rest(static_cast<std::size_t>(k));
  double total = 0.0;
  for (int i = 0; i <= k; ++i) {
    const Vec& v = vectors[static_cast<std::size_t>(i)];
    const double len = v.norm();
    if (len == 0.0) continue;
    const Vec dir = v / len;
    std::size_t r = 0;
    for (int j = 0; j <= k; ++j) {
      if (j != i) rest[r++] = vectors[static_cast<std::size_t>(j)];
    }
    const std::span<const Vec> others(rest);
    auto central = [&](double h) {
      const Vec plus = point + h * dir;
      const Vec minus = point - h * dir;
      return (field(plus, others) - field(minus, others)) / (2.0 * h);
    };
    const double coarse = central(step);
    const double fine = central(0.5 * step);
    const double derivative = (4.0 * fine - coarse) / 3.0;
    total += ((i % 2 == 0) ? 1.0 : -1.0) * len * derivative;
  }
  return total;
}

FormField exterior_derivative(const FormField& field, double relative_step) {
  const double step = relative_step * field.smoothness_radius();
  return FormField(
      field.degree() + 1,
      [field, step](const Vec& p, std::span<const Vec> v) {
        return exterior_derivative(field, p, v, step);
      },
      field.smoothness_radius());
}

}  // namespace nkc
