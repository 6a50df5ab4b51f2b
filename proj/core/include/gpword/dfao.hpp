#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gpword/quadext.hpp"

namespace gpword {

/// A finite word; one byte per symbol (value, not ASCII digit).
using Word = std::string;

/// "0110..." when every symbol is a single digit, else comma-separated values.
std::string word_display(const Word& word);

/// Deterministic finite automaton with output reading base-k digits most
/// significant first.  Feeding the digits of n from the initial state and
/// reading the output of the final state yields the sequence value x(n);
/// n = 0 contributes the empty digit string.  The transition on digit 0 from
/// the initial state must return to the initial state, so leading zeros never
/// change a value.
struct Dfao {
  int base = 2;
  std::vector<std::string> state_names;
  int initial = 0;
  std::vector<std::vector<int>> transitions;  // [state][digit] -> state
  std::vector<int> outputs;                   // [state] -> symbol in [0, 255]

  int num_states() const { return static_cast<int>(state_names.size()); }

  /// Throws invalid_input on any structural defect (sizes, ranges, missing
  /// leading-zero invariance).
  void validate() const;
};

/// The Thue-Morse automaton: x(n) = parity of ones in binary n.
Dfao thue_morse();

/// Parses the JSON description
///   {"k": 2, "states": ["even","odd"], "initial": "even",
///    "transitions": {"even": ["even","odd"], ...}, "outputs": {"even": 0, ...}}
/// and validates it.  Throws invalid_input with a descriptive message.
Dfao parse_dfao_json(std::string_view text);
Dfao load_dfao_file(const std::string& path);
std::string dfao_to_json(const Dfao& dfao);

/// x(n).
int eval_dfao(const Dfao& dfao, const BigInt& n);
int eval_dfao(const Dfao& dfao, std::uint64_t n);

/// The word x(0) x(1) ... x(count-1), one byte per symbol.
std::string dfao_prefix(const Dfao& dfao, std::size_t count);

/// An automaton for the subsequence y(n) = x(step*n + offset); step >= 1.
/// States are tuples over the carry range of the affine map, so the result
/// again satisfies the leading-zero invariance.
Dfao subsequence_dfao(const Dfao& dfao, std::uint64_t step, std::uint64_t offset);

/// Smallest n with x(n) != y(n), or nullopt when the sequences agree
/// everywhere (decided over the reachable product automaton).
std::optional<BigInt> first_difference(const Dfao& x, const Dfao& y);
bool sequences_equal(const Dfao& x, const Dfao& y);

namespace detail {
/// Reachable-state Moore minimisation; used internally to keep kernel
/// representatives small.
Dfao minimized(const Dfao& dfao);
}  // namespace detail

/// Number of distinct sequences x(k^r n + s), 0 <= s < k^r, over all r >= 0.
std::size_t kernel_size(const Dfao& dfao);

/// A coincidence x(k^power n + s) = x(k^power n + t) for all n, with
/// 0 <= s < t < k^power.  The search runs power = 1, 2, ... and within one
/// power orders candidate pairs by (t - s, then s); the kernel pigeonhole
/// guarantees a collision at some power with k^power > kernel size.
struct KernelCollision {
  int power = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  std::uint64_t modulus = 0;  // base^power
};
KernelCollision kernel_collision(const Dfao& dfao);

/// All distinct windows of the given length in the first prefix_length
/// sequence values.  Throws invalid_input when prefix_length < length.
std::set<Word> enumerate_factors(const Dfao& dfao, std::size_t length,
                                 std::size_t prefix_length);

/// A prefix length guaranteed to contain every factor of the given length of
/// the Thue-Morse word: take the least j >= 1 with length <= 2^j + 1; every
/// such factor first occurs at a start position <= 9 * 2^(j-1).
std::size_t thue_morse_certified_prefix(std::size_t length);

struct FactorEnumeration {
  std::set<Word> factors;
  std::size_t prefix_used = 0;
  bool certified = false;  // true only for the Thue-Morse bound
  bool stable = false;     // heuristic runs: set unchanged across one doubling
};

/// Certified enumeration (Thue-Morse automata only; checked by sequence
/// equality with the built-in automaton).
FactorEnumeration enumerate_factors_certified(const Dfao& dfao, std::size_t length);

/// Heuristic enumeration: doubles the prefix until the factor set is stable
/// across one doubling or max_prefix is reached.  Never certified.
FactorEnumeration enumerate_factors_stable(const Dfao& dfao, std::size_t length,
                                           std::size_t initial_prefix,
                                           std::size_t max_prefix);

}  // namespace gpword
