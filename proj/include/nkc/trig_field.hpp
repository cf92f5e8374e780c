#pragma once
// Periodic scalar fields on R⁶/(2πZ)⁶ given by finite trigonometric
// polynomials, parsed from expressions such as
//
//   sin(x5)
//   0.3*cos(2*x1 - x3) + sin(x5)*cos(x6)
//   -0.5 + 2*sin(x1+x2)
//
// Grammar: sums and differences of products of real constants and sin/cos
// of integer combinations of the coordinates x1..x6.  Anything else is a
// PreconditionError.

#include "nkc/forms.hpp"

#include <array>
#include <string>
#include <vector>

namespace nkc {

class TrigPolynomial {
 public:
  /// One trigonometric factor: sin or cos of k·x.
  struct Wave {
    bool is_sin = true;
    std::array<int, 6> k{};
  };
  /// coefficient · Π waves.
  struct Term {
    double coefficient = 1.0;
    std::vector<Wave> waves;
  };

  TrigPolynomial() = default;
  explicit TrigPolynomial(std::vector<Term> terms, std::string source = {});

  static TrigPolynomial parse(const std::string& expression);
  static TrigPolynomial zero() { return TrigPolynomial({}, "0"); }

  double value(const Vec6& x) const;
  Vec6 gradient(const Vec6& x) const;

  const std::vector<Term>& terms() const { return terms_; }
  const std::string& source() const { return source_; }
  bool is_zero() const;

 private:
  std::vector<Term> terms_;
  std::string source_;
};

}  // namespace nkc
