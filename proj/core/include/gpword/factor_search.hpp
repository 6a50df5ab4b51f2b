#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "gpword/dfao.hpp"
#include "gpword/phase.hpp"
#include "gpword/polygon.hpp"

namespace gpword {

/// One admissible integer part k at a word position, together with the two
/// half-planes (closed forms of the strict band constraints) it imposes on
/// the unknown parameters (beta, gamma) in the unit square.
struct BandChoice {
  long long k = 0;
  HalfPlane lower;  // E > band start, written as closed >= for clipping
  HalfPlane upper;  // E < band end
};

struct PositionBands {
  std::size_t position = 0;
  std::vector<BandChoice> choices;
};

/// For each position m of the 0/1 word, the finitely many admissible integer
/// parts k of E_m(beta, gamma) = alpha*m^2 + beta*m + gamma over the unit
/// square, with the matching band (symbol 1: frac in the arc) or gap
/// (symbol 0) constraints.  Choices are ordered by increasing k.
std::vector<PositionBands> constraint_systems(const QuadraticPhase& phase, const Word& word);

struct DecideOutcome {
  bool accepted = false;
  /// Chosen k per position; the depth-first search scans positions left to
  /// right and k ascending, so an accepted word reports the
  /// lexicographically least assignment.
  std::vector<long long> floor_assignment;
  std::optional<Point2> witness;
  FeasRegion region;
  std::uint64_t branches = 0;  // (position, k) nodes explored
};

/// Decides whether the word occurs in the phase sequence: it does exactly
/// when some choice of integer parts leaves a positive-area region of
/// (beta, gamma) parameters, by equidistribution of the quadratic orbit.
/// Empty words are accepted with the full unit square.
DecideOutcome decide_factor(const QuadraticPhase& phase, const Word& word,
                            bool want_witness = false);

struct CommonFactorsReport {
  std::size_t max_length = 0;
  /// common_by_length[l-1] = common factors of length l (absent once empty).
  std::vector<std::set<Word>> common_by_length;
  /// Common factors not extendable to a longer common factor; sorted by
  /// (length, lexicographic).
  std::vector<Word> maximal;
  std::size_t longest = 0;
  /// True when some length <= max_length had no common factor, so the
  /// enumeration provably saw every common factor.
  bool complete = false;
  std::uint64_t decided_words = 0;
};

/// Common factors of an automatic 0/1 sequence and the phase sequence, by
/// increasing length, stopping at the first empty length.  Factor
/// enumeration is certified for the Thue-Morse sequence; other automata
/// require an explicit enumeration prefix bound (prefix_override).
CommonFactorsReport common_factors(const Dfao& dfao, const QuadraticPhase& phase,
                                   std::size_t max_length,
                                   std::optional<std::size_t> prefix_override = std::nullopt,
                                   unsigned jobs = 1);

/// Independent cross-check: intersects the literal window sets of two
/// prefixes, no feasibility reasoning involved.
CommonFactorsReport common_factors_brute(std::string_view x_prefix, std::string_view y_prefix,
                                         std::size_t max_length);

/// Distinct windows of the given length in a symbol string.
std::set<Word> window_set(std::string_view text, std::size_t length);

}  // namespace gpword
