#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "gpword/errors.hpp"

namespace gpword {

using Rational = mpq_class;
using BigInt = mpz_class;

/// True when n >= 1 and no square > 1 divides n.
bool is_square_free(long long n);

/// Throws invalid_input unless d >= 2 and square-free.
void validate_radicand(long long d);

/// An element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)), held
/// exactly as a pair of arbitrary-precision rationals plus the radicand d.
///
/// Elements with b == 0 are plain rationals and carry no radicand tag
/// (radicand() == 0); they combine freely with elements of any field.
/// Combining two elements whose radicands are both set but different throws
/// invalid_input: values from distinct fields never meet in one expression.
///
/// All predicates (sign, floor, comparisons) are exact; no operation ever
/// rounds through floating point.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(long long value) : a_(static_cast<long>(value)) {}
  QuadExt(const BigInt& value) : a_(value) {}
  QuadExt(const Rational& value) : a_(value) { a_.canonicalize(); }

  /// General element; d is validated whenever radical_coeff != 0.
  QuadExt(Rational rational_part, Rational radical_coeff, long long radicand);

  /// The element sqrt(d) itself.
  static QuadExt sqrt_of(long long radicand);

  const Rational& rational() const { return a_; }
  const Rational& radical() const { return b_; }
  long long radicand() const { return d_; }

  bool is_rational() const { return sgn(b_) == 0; }
  bool is_integer() const;
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  /// -1, 0 or +1; exact.
  int sign() const;

  /// Largest integer <= *this; exact for every field element.
  BigInt floor() const;

  /// *this - floor(*this), in [0, 1).
  QuadExt frac() const;

  /// Multiplicative inverse; throws invalid_input on zero.
  QuadExt inverse() const;

  /// The rational value when b == 0; throws invalid_input otherwise.
  Rational to_rational() const;

  /// Rounded double, for display only -- never used in decisions.
  double to_double() const;

  /// Canonical text form, re-parseable by the expression grammar:
  /// "3", "-1/4", "sqrt(2)", "3/4*sqrt(5)", "1/2 - 3/4*sqrt(2)".
  std::string str() const;

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x);

  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y);
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

 private:
  Rational a_{0};
  Rational b_{0};
  long long d_ = 0;  // 0 whenever b_ == 0

  void normalize();
  static long long unify(const QuadExt& x, const QuadExt& y);
};

/// x^exponent by binary exponentiation; x^0 == 1.
QuadExt pow(const QuadExt& x, unsigned exponent);

}  // namespace gpword
