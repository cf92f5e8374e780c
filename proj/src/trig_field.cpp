#include "nkc/trig_field.hpp"

#include "nkc/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace nkc {

namespace {

using Terms = std::vector<TrigPolynomial::Term>;

// Recursive-descent parser; a sum is a list of product terms, products of
// sums are expanded eagerly.
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Terms parse() {
    Terms t = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("field expression: " + what + " at position " + std::to_string(pos_) +
                            " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(const char* w) {
    skip();
    const std::string word(w);
    if (s_.compare(pos_, word.size(), word) == 0) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  Terms sum() {
    Terms out = product();
    for (;;) {
      if (accept('+')) {
        Terms t = product();
        out.insert(out.end(), t.begin(), t.end());
      } else if (accept('-')) {
        Terms t = product();
        for (auto& x : t) x.coefficient = -x.coefficient;
        out.insert(out.end(), t.begin(), t.end());
      } else {
        return out;
      }
    }
  }

  static Terms multiply(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        TrigPolynomial::Term t;
        t.coefficient = x.coefficient * y.coefficient;
        t.waves = x.waves;
        t.waves.insert(t.waves.end(), y.waves.begin(), y.waves.end());
        out.push_back(t);
      }
    }
    return out;
  }

  Terms product() {
    Terms out = factor();
    while (accept('*')) out = multiply(out, factor());
    return out;
  }

  Terms factor() {
    skip();
    if (accept('-')) {
      Terms t = factor();
      for (auto& x : t) x.coefficient = -x.coefficient;
      return t;
    }
    if (accept('(')) {
      Terms t = sum();
      if (!accept(')')) fail("expected ')'");
      return t;
    }
    if (accept_word("sin")) return {wave(true)};
    if (accept_word("cos")) return {wave(false)};
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      TrigPolynomial::Term t;
      t.coefficient = v;
      return {t};
    }
    fail("expected a number, sin, cos or '('");
  }

  TrigPolynomial::Term wave(bool is_sin) {
    if (!accept('(')) fail("expected '(' after sin/cos");
    TrigPolynomial::Wave w;
    w.is_sin = is_sin;
    bool first = true;
    for (;;) {
      int sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (!first && !accept('+')) {
        break;
      }
      first = false;
      skip();
      int mult = 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        mult = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          mult = mult * 10 + (s_[pos_] - '0');
          ++pos_;
        }
        if (!accept('*')) fail("expected '*' after integer frequency");
      }
      if (!accept('x')) fail("expected coordinate x1..x6");
      skip();
      if (pos_ >= s_.size() || s_[pos_] < '1' || s_[pos_] > '6') fail("coordinate index must be 1..6");
      w.k[static_cast<std::size_t>(s_[pos_] - '1')] += sign * mult;
      ++pos_;
    }
    if (!accept(')')) fail("expected ')'");
    TrigPolynomial::Term t;
    t.waves.push_back(w);
    return t;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double phase(const TrigPolynomial::Wave& w, const Vec6& x) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += w.k[static_cast<std::size_t>(i)] * x[i];
  return s;
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<Term> terms, std::string source)
    : terms_(std::move(terms)), source_(std::move(source)) {}

TrigPolynomial TrigPolynomial::parse(const std::string& expression) {
  Parser p(expression);
  return TrigPolynomial(p.parse(), expression);
}

bool TrigPolynomial::is_zero() const {
  for (const auto& t : terms_) {
    if (t.coefficient != 0.0) return false;
  }
  return true;
}

double TrigPolynomial::value(const Vec6& x) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coefficient;
    for (const auto& w : t.waves) v *= w.is_sin ? std::sin(phase(w, x)) : std::cos(phase(w, x));
    total += v;
  }
  return total;
}

Vec6 TrigPolynomial::gradient(const Vec6& x) const {
  Vec6 g = Vec6::Zero();
  for (const auto& t : terms_) {
    const std::size_t n = t.waves.size();
    std::vector<double> val(n);
    std::vector<double> der(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = phase(t.waves[i], x);
      val[i] = t.waves[i].is_sin ? std::sin(ph) : std::cos(ph);
      der[i] = t.waves[i].is_sin ? std::cos(ph) : -std::sin(ph);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double v = t.coefficient * der[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) v *= val[j];
      }
      for (int c = 0; c < 6; ++c) g[c] += v * t.waves[i].k[static_cast<std::size_t>(c)];
    }
  }
  return g;
}

}  // namespace nkc
