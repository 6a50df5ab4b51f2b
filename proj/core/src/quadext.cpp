#include "gpword/quadext.hpp"

#include <utility>

namespace gpword {

namespace {

constexpr unsigned long long kTrialDivisionBound = 3'000'000ULL;

std::string rational_str(const Rational& q) { return q.get_str(); }

}  // namespace

bool is_square_free(long long n) {
  if (n < 1) return false;
  unsigned long long m = static_cast<unsigned long long>(n);
  for (unsigned long long p = 2; p <= kTrialDivisionBound && p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  if (m == 1) return true;
  // The remaining cofactor has no prime factor below the trial bound.  Within
  // 64 bits it is therefore 1, p, p*q or p^2 (p^2*q would exceed the range),
  // and only the perfect square is not square-free.
  BigInt rest(static_cast<unsigned long>(m));
  return mpz_perfect_square_p(rest.get_mpz_t()) == 0;
}

void validate_radicand(long long d) {
  if (d < 2 || !is_square_free(d)) {
    throw invalid_input("radicand must be a square-free integer >= 2, got " +
                        std::to_string(d));
  }
}

QuadExt::QuadExt(Rational rational_part, Rational radical_coeff, long long radicand)
    : a_(std::move(rational_part)), b_(std::move(radical_coeff)) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0) {
    validate_radicand(radicand);
    d_ = radicand;
  }
}

QuadExt QuadExt::sqrt_of(long long radicand) {
  return QuadExt(Rational(0), Rational(1), radicand);
}

void QuadExt::normalize() {
  if (sgn(b_) == 0) d_ = 0;
}

long long QuadExt::unify(const QuadExt& x, const QuadExt& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0) return x.d_;
  if (x.d_ != y.d_) {
    throw invalid_input("cannot combine elements of Q(sqrt(" + std::to_string(x.d_) +
                        ")) and Q(sqrt(" + std::to_string(y.d_) + "))");
  }
  return x.d_;
}

bool QuadExt::is_integer() const {
  return sgn(b_) == 0 && a_.get_den() == 1;
}

int QuadExt::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: a + b*sqrt(d) has the sign of whichever of |a|, |b|sqrt(d)
  // dominates, settled by comparing a^2 against b^2*d in Q.
  const int c = cmp(a_ * a_, b_ * b_ * Rational(static_cast<long>(d_)));
  if (c == 0) {
    // Would force sqrt(d) rational, impossible for validated radicands.
    throw std::logic_error("quadratic irrational collapsed to a rational value");
  }
  return c > 0 ? sa : sb;
}

BigInt QuadExt::floor() const {
  BigInt result;
  if (sgn(b_) == 0) {
    mpz_fdiv_q(result.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    return result;
  }
  // Put both parts over one positive denominator:  (p + q*sqrt(d)) / den.
  BigInt da(a_.get_den());
  BigInt db(b_.get_den());
  BigInt g;
  mpz_gcd(g.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
  BigInt den = da / g * db;
  BigInt p = BigInt(a_.get_num()) * (den / da);
  BigInt q = BigInt(b_.get_num()) * (den / db);
  // floor(q*sqrt(d)) via the integer square root of q^2*d, which is never a
  // perfect square (q != 0, d square-free), so the truncated root is exact.
  BigInt s;
  BigInt radical_square = q * q * static_cast<long>(d_);
  mpz_sqrt(s.get_mpz_t(), radical_square.get_mpz_t());
  if (sgn(q) < 0) s = -s - 1;
  BigInt num = p + s;
  mpz_fdiv_q(result.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return result;
}

QuadExt QuadExt::frac() const {
  QuadExt out = *this;
  out.a_ -= Rational(floor());
  out.normalize();
  return out;
}

QuadExt QuadExt::inverse() const {
  if (is_zero()) throw invalid_input("division by zero");
  // 1 / (a + b*sqrt(d)) = (a - b*sqrt(d)) / (a^2 - b^2 d); the denominator is
  // nonzero because sqrt(d) is irrational.
  Rational denom = a_ * a_ - b_ * b_ * Rational(static_cast<long>(d_));
  QuadExt out;
  out.a_ = a_ / denom;
  out.b_ = -b_ / denom;
  out.d_ = d_;
  out.normalize();
  return out;
}

Rational QuadExt::to_rational() const {
  if (sgn(b_) != 0) {
    throw invalid_input("value " + str() + " is irrational");
  }
  return a_;
}

double QuadExt::to_double() const {
  double value = a_.get_d();
  if (sgn(b_) != 0) {
    mpf_class approx(0, 128);
    mpf_class root(static_cast<long>(d_), 128);
    root = sqrt(root);
    approx = mpf_class(a_, 128) + mpf_class(b_, 128) * root;
    value = approx.get_d();
  }
  return value;
}

std::string QuadExt::str() const {
  if (sgn(b_) == 0) return rational_str(a_);
  std::string radical_part;
  Rational abs_b = abs(b_);
  if (abs_b == 1) {
    radical_part = "sqrt(" + std::to_string(d_) + ")";
  } else {
    radical_part = rational_str(abs_b) + "*sqrt(" + std::to_string(d_) + ")";
  }
  if (sgn(a_) == 0) {
    return sgn(b_) > 0 ? radical_part : "-" + radical_part;
  }
  return rational_str(a_) + (sgn(b_) > 0 ? " + " : " - ") + radical_part;
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  QuadExt out;
  out.d_ = QuadExt::unify(x, y);
  out.a_ = x.a_ + y.a_;
  out.b_ = x.b_ + y.b_;
  out.normalize();
  return out;
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) {
  QuadExt out;
  out.d_ = QuadExt::unify(x, y);
  out.a_ = x.a_ - y.a_;
  out.b_ = x.b_ - y.b_;
  out.normalize();
  return out;
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  QuadExt out;
  out.d_ = QuadExt::unify(x, y);
  out.a_ = x.a_ * y.a_ + x.b_ * y.b_ * Rational(static_cast<long>(out.d_));
  out.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  out.normalize();
  return out;
}

QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

QuadExt operator-(const QuadExt& x) {
  QuadExt out = x;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  QuadExt::unify(x, y);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadExt pow(const QuadExt& x, unsigned exponent) {
  QuadExt result(1);
  QuadExt base = x;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

}  // namespace gpword
