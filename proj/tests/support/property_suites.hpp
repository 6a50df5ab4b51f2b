#pragma once

#include <sstream>
#include <string>

#include "gpword/factor_search.hpp"
#include "gpword/gpexpr.hpp"
#include "gpword/polygon.hpp"
#include "gpword/quadext.hpp"
#include "support/random_gen.hpp"

// Randomized suites shared by the unit tests and the acceptance gate.  Each
// function runs `samples` cases under a fixed seed and returns an empty
// string on success or a description of the first failure.

namespace gpword::testing {

inline std::string field_axiom_suite(int samples, std::uint64_t seed) {
  RandomGen gen(seed);
  for (int i = 0; i < samples; ++i) {
    const QuadExt x = gen.quad();
    const QuadExt y = gen.quad();
    const QuadExt z = gen.quad();
    if (!(x + y == y + x)) return "addition is not commutative";
    if (!(x * y == y * x)) return "multiplication is not commutative";
    if (!((x + y) + z == x + (y + z))) return "addition is not associative";
    if (!((x * y) * z == x * (y * z))) return "multiplication is not associative";
    if (!(x * (y + z) == x * y + x * z)) return "distributivity fails";
    if (!(x + (-x) == QuadExt(0))) return "additive inverse fails";
    if (!(x - y == x + (-y))) return "subtraction disagrees with negation";
    if (!x.is_zero()) {
      if (!(x * x.inverse() == QuadExt(1))) return "multiplicative inverse fails";
    }
    if (!(pow(x, 3) == x * x * x)) return "pow(x, 3) != x*x*x";
  }
  return {};
}

inline std::string sign_floor_suite(int samples, std::uint64_t seed) {
  RandomGen gen(seed);
  constexpr int kPrecisionBits = 384;  // ~115 decimal digits
  for (int i = 0; i < samples; ++i) {
    const QuadExt x = gen.quad(i % 2 == 0 ? 2 : 5);

    // Floor bracket, exact: floor(x) <= x < floor(x) + 1.
    const BigInt f = x.floor();
    if ((x - QuadExt(f)).sign() < 0) return "floor(x) > x for x = " + x.str();
    if ((x - QuadExt(BigInt(f + 1))).sign() >= 0) return "floor(x) + 1 <= x for x = " + x.str();
    const QuadExt fractional = x.frac();
    if (fractional.sign() < 0 || (fractional - QuadExt(1)).sign() >= 0) {
      return "frac(x) outside [0,1) for x = " + x.str();
    }

    // Exact zero test agrees with the sign.
    if ((x.sign() == 0) != x.is_zero()) return "sign(0) inconsistent for x = " + x.str();

    // Cross-check sign and floor against a 100+ digit decimal approximation;
    // skipped within a tiny guard band where the approximation cannot decide.
    mpf_class approx(0, kPrecisionBits);
    if (x.radicand() != 0) {
      mpf_class root(static_cast<long>(x.radicand()), kPrecisionBits);
      root = sqrt(root);
      approx = mpf_class(x.rational(), kPrecisionBits) +
               mpf_class(x.radical(), kPrecisionBits) * root;
    } else {
      approx = mpf_class(x.rational(), kPrecisionBits);
    }
    const mpf_class guard(1e-90, kPrecisionBits);
    if (abs(approx) > guard) {
      const int approx_sign = sgn(approx);
      if (approx_sign != x.sign()) return "sign disagrees with 100-digit value: " + x.str();
    }
    mpf_class distance = approx - mpf_class(f, kPrecisionBits);
    if (distance > guard && distance < 1 - guard) {
      // approx confirms f < x < f+1 away from the boundary
    } else if (abs(distance) > guard && abs(distance - 1) > guard) {
      return "floor disagrees with 100-digit value: " + x.str();
    }
  }
  return {};
}

inline std::string roundtrip_suite(int samples, std::uint64_t seed) {
  RandomGen gen(seed);
  for (int i = 0; i < samples; ++i) {
    const GpExprPtr tree = gen.expr(3, i % 2 == 0 ? 2 : 3);
    const std::string text = print(tree);
    GpExprPtr reparsed;
    try {
      reparsed = parse_expression(text);
    } catch (const invalid_input& error) {
      return "printed text failed to parse: '" + text + "': " + error.what();
    }
    if (!structurally_equal(tree, reparsed)) {
      return "round-trip changed the tree: '" + text + "' vs '" + print(reparsed) + "'";
    }
    const long long n = gen.integer(0, 20);
    if (!(eval(tree, n) == eval(reparsed, n))) {
      return "round-trip changed the value at n=" + std::to_string(n) + ": '" + text + "'";
    }
  }
  return {};
}

inline std::string clip_suite(int samples, std::uint64_t seed) {
  RandomGen gen(seed);
  for (int i = 0; i < samples; ++i) {
    FeasRegion region = FeasRegion::unit_square();
    std::vector<HalfPlane> applied;
    for (int step = 0; step < 4 && !region.is_empty(); ++step) {
      HalfPlane half_plane{gen.quad(), gen.quad(), gen.quad()};
      if (half_plane.a.is_zero() && half_plane.b.is_zero()) continue;
      const QuadExt before = region.area();
      region = region.clipped(half_plane);
      applied.push_back(half_plane);
      if ((region.area() - before).sign() > 0) return "clipping increased the area";
      for (const Point2& vertex : region.vertices()) {
        if (vertex.x.sign() < 0 || (vertex.x - QuadExt(1)).sign() > 0 ||
            vertex.y.sign() < 0 || (vertex.y - QuadExt(1)).sign() > 0) {
          return "clipped vertex escaped the unit square";
        }
        for (const HalfPlane& h : applied) {
          if (h.eval(vertex).sign() < 0) return "clipped vertex violates a kept half-plane";
        }
      }
    }
  }
  return {};
}

/// For an accepted word: the witness must lie strictly inside the unit square
/// and strictly satisfy the band constraints chosen by the reported floor
/// assignment.  Returns an empty string when everything holds (including for
/// rejected words, which carry no witness).
inline std::string witness_violation(const QuadraticPhase& phase, const Word& word) {
  const DecideOutcome outcome = decide_factor(phase, word, /*want_witness=*/true);
  if (!outcome.accepted) return {};
  if (!outcome.witness) return "accepted word lacks a witness: " + word_display(word);
  const Point2& w = *outcome.witness;
  if (w.x.sign() <= 0 || (w.x - QuadExt(1)).sign() >= 0 || w.y.sign() <= 0 ||
      (w.y - QuadExt(1)).sign() >= 0) {
    return "witness not strictly inside the unit square for " + word_display(word);
  }
  if (outcome.floor_assignment.size() != word.size()) {
    return "floor assignment has the wrong length for " + word_display(word);
  }
  const auto systems = constraint_systems(phase, word);
  for (std::size_t m = 0; m < word.size(); ++m) {
    const long long k = outcome.floor_assignment[m];
    const BandChoice* chosen = nullptr;
    for (const BandChoice& choice : systems[m].choices) {
      if (choice.k == k) chosen = &choice;
    }
    if (chosen == nullptr) {
      return "assignment picks an inadmissible integer part for " + word_display(word);
    }
    // Strict satisfaction: the closed half-plane value must be positive.
    if (chosen->lower.eval(w).sign() <= 0 || chosen->upper.eval(w).sign() <= 0) {
      return "witness fails a strict band constraint for " + word_display(word);
    }
  }
  return {};
}

/// witness_violation over every word of length 1..max_length.
inline std::string witness_suite(const QuadraticPhase& phase, std::size_t max_length) {
  for (std::size_t length = 1; length <= max_length; ++length) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
      Word word(length, '\0');
      for (std::size_t b = 0; b < length; ++b) {
        word[length - 1 - b] = static_cast<char>((bits >> b) & 1u);
      }
      const std::string violation = witness_violation(phase, word);
      if (!violation.empty()) return violation;
    }
  }
  return {};
}

}  // namespace gpword::testing
