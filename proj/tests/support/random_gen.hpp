#pragma once

#include <random>

#include "gpword/gpexpr.hpp"
#include "gpword/quadext.hpp"

namespace gpword::testing {

/// Deterministic generators for the randomized suites; every suite fixes its
/// own seed so failures reproduce.
class RandomGen {
 public:
  explicit RandomGen(std::uint64_t seed) : engine_(seed) {}

  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(engine_);
  }

  Rational rational(long long max_num = 50, long long max_den = 20) {
    Rational q(static_cast<long>(integer(-max_num, max_num)),
               static_cast<long>(integer(1, max_den)));
    q.canonicalize();
    return q;
  }

  /// Element of Q(sqrt(d)); roughly a third are plain rationals.
  QuadExt quad(long long d = 2) {
    if (integer(0, 2) == 0) return QuadExt(rational());
    return QuadExt(rational(), rational(), d);
  }

  QuadExt nonzero_quad(long long d = 2) {
    for (;;) {
      QuadExt q = quad(d);
      if (!q.is_zero()) return q;
    }
  }

  /// Random expression tree.  Binary nodes never take two constant leaves
  /// (the factories would fold them), so printed text re-parses to the same
  /// shape.
  GpExprPtr expr(int depth = 3, long long d = 2) {
    if (depth <= 0) return leaf(d);
    const int pick = static_cast<int>(integer(0, 6));
    if (pick <= 2) {
      GpExprPtr lhs = expr(depth - 1, d);
      GpExprPtr rhs = expr(depth - 1, d);
      // Two constant operands would fold to one leaf in the factories.
      if (lhs->kind() == ExprKind::Constant && rhs->kind() == ExprKind::Constant) {
        rhs = GpExpr::variable();
      }
      if (pick == 0) return GpExpr::add(std::move(lhs), std::move(rhs));
      if (pick == 1) return GpExpr::sub(std::move(lhs), std::move(rhs));
      return GpExpr::mul(std::move(lhs), std::move(rhs));
    }
    switch (pick) {
      case 3:
        return GpExpr::pow(expr(depth - 1, d), static_cast<unsigned>(integer(0, 3)));
      case 4:
        return GpExpr::floor(expr(depth - 1, d));
      case 5:
        return GpExpr::frac(expr(depth - 1, d));
      default:
        return leaf(d);
    }
  }

 private:
  GpExprPtr leaf(long long d) {
    if (integer(0, 1) == 0) return GpExpr::variable();
    return GpExpr::constant(quad(d));
  }

  std::mt19937_64 engine_;
};

}  // namespace gpword::testing
