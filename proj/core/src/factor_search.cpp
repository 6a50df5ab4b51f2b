#include "gpword/factor_search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

namespace gpword {

namespace {

/// Largest integer k with k < bound.
long long strict_below(const QuadExt& bound) {
  BigInt f = bound.floor();
  if (bound.is_integer()) f -= 1;
  if (!f.fits_slong_p()) throw invalid_input("integer part out of range");
  return f.get_si();
}

/// Smallest integer k with k > bound.
long long strict_above(const QuadExt& bound) {
  BigInt f = bound.floor() + 1;
  if (!f.fits_slong_p()) throw invalid_input("integer part out of range");
  return f.get_si();
}

void check_binary(const Word& word) {
  for (char symbol : word) {
    if (symbol != 0 && symbol != 1) {
      throw invalid_input("phase factors are 0/1 words; got symbol " +
                          std::to_string(static_cast<unsigned char>(symbol)));
    }
  }
}

std::vector<Word> sorted_words(const std::set<Word>& words) {
  return {words.begin(), words.end()};
}

/// Words with no extension among the next level's words, collected level by
/// level.  Common factors are closed under subwords, so failing to extend to
/// length l+1 already proves maximality.
void finalize_report(CommonFactorsReport& report) {
  report.longest = report.common_by_length.size();
  for (std::size_t i = 0; i < report.common_by_length.size(); ++i) {
    const bool last_level = i + 1 == report.common_by_length.size();
    for (const Word& word : report.common_by_length[i]) {
      bool extendable = false;
      if (!last_level) {
        for (const Word& longer : report.common_by_length[i + 1]) {
          if (longer.find(word) != Word::npos) {
            extendable = true;
            break;
          }
        }
      }
      if (!extendable) report.maximal.push_back(word);
    }
  }
}

}  // namespace

std::vector<PositionBands> constraint_systems(const QuadraticPhase& phase, const Word& word) {
  phase.validate();
  check_binary(word);
  const Arc arc = normalized_arc(phase.arc);
  const QuadExt lo{arc.lo};
  const QuadExt hi{arc.hi};

  std::vector<PositionBands> out;
  out.reserve(word.size());
  for (std::size_t position = 0; position < word.size(); ++position) {
    PositionBands bands;
    bands.position = position;
    const long long m = static_cast<long long>(position);
    // E_m(beta, gamma) = c + beta*m + gamma with c = alpha*m^2 ranges over
    // [c, c + m + 1] on the closed unit square.
    const QuadExt c = phase.alpha * QuadExt(m * m);
    const QuadExt coeff_beta{Rational(static_cast<long>(m))};

    if (word[position] == 1) {
      // frac(E_m) in (lo, hi):  E_m in (k + lo, k + hi) for some integer k.
      // The band meets [c, c + m + 1] iff k + hi > c and k + lo < c + m + 1.
      const long long k_min = strict_above(c - hi);
      const long long k_max = strict_below(c - lo + QuadExt(m + 1));
      for (long long k = k_min; k <= k_max; ++k) {
        BandChoice choice;
        choice.k = k;
        const QuadExt band_lo = QuadExt(k) + lo - c;  // beta*m + gamma > band_lo
        const QuadExt band_hi = QuadExt(k) + hi - c;  // beta*m + gamma < band_hi
        choice.lower = {coeff_beta, QuadExt(1), -band_lo};
        choice.upper = {-coeff_beta, QuadExt(-1), band_hi};
        bands.choices.push_back(std::move(choice));
      }
    } else {
      // frac(E_m) outside the arc:  E_m in the gap (k + hi, k + 1 + lo) for
      // some integer k; the gap meets [c, c + m + 1] iff k + 1 + lo > c and
      // k + hi < c + m + 1.
      const long long k_min = strict_above(c - lo - QuadExt(1));
      const long long k_max = strict_below(c - hi + QuadExt(m + 1));
      for (long long k = k_min; k <= k_max; ++k) {
        BandChoice choice;
        choice.k = k;
        const QuadExt gap_lo = QuadExt(k) + hi - c;
        const QuadExt gap_hi = QuadExt(k + 1) + lo - c;
        choice.lower = {coeff_beta, QuadExt(1), -gap_lo};
        choice.upper = {-coeff_beta, QuadExt(-1), gap_hi};
        bands.choices.push_back(std::move(choice));
      }
    }
    out.push_back(std::move(bands));
  }
  return out;
}

DecideOutcome decide_factor(const QuadraticPhase& phase, const Word& word, bool want_witness) {
  const std::vector<PositionBands> bands = constraint_systems(phase, word);

  DecideOutcome outcome;
  std::vector<long long> assignment;
  std::vector<FeasRegion> stack;
  stack.push_back(FeasRegion::unit_square());

  // Depth-first over positions, k ascending; the first accepting leaf gives
  // the lexicographically least floor assignment.
  auto search = [&](auto&& self, std::size_t position) -> bool {
    if (position == bands.size()) return true;
    for (const BandChoice& choice : bands[position].choices) {
      ++outcome.branches;
      FeasRegion next = stack.back().clipped(choice.lower).clipped(choice.upper);
      if (!next.has_positive_area()) continue;
      assignment.push_back(choice.k);
      stack.push_back(std::move(next));
      if (self(self, position + 1)) return true;
      stack.pop_back();
      assignment.pop_back();
    }
    return false;
  };

  outcome.accepted = search(search, 0);
  if (outcome.accepted) {
    outcome.floor_assignment = std::move(assignment);
    outcome.region = stack.back();
    if (want_witness) outcome.witness = outcome.region.interior_point();
  }
  return outcome;
}

CommonFactorsReport common_factors(const Dfao& dfao, const QuadraticPhase& phase,
                                   std::size_t max_length,
                                   std::optional<std::size_t> prefix_override, unsigned jobs) {
  dfao.validate();
  phase.validate();
  for (int symbol : dfao.outputs) {
    if (symbol > 1) {
      throw invalid_input("common factors need a 0/1 automatic sequence; found symbol " +
                          std::to_string(symbol));
    }
  }
  const bool certified = dfao.base == 2 && sequences_equal(dfao, thue_morse());
  if (!certified && !prefix_override) {
    throw invalid_input(
        "factor enumeration is certified only for the Thue-Morse sequence; "
        "pass an explicit prefix bound for other automata");
  }

  std::size_t prefix_length;
  if (certified) {
    // The bound for the longest length dominates the per-length bounds, and
    // extra prefix can only repeat factors that already occur.
    prefix_length = thue_morse_certified_prefix(max_length);
  } else {
    prefix_length = *prefix_override;
    if (prefix_length < max_length) {
      throw invalid_input("prefix bound is shorter than the requested factor length");
    }
  }
  const std::string prefix = dfao_prefix(dfao, prefix_length);

  CommonFactorsReport report;
  report.max_length = max_length;
  for (std::size_t length = 1; length <= max_length; ++length) {
    const std::vector<Word> candidates = sorted_words(window_set(prefix, length));

    std::vector<char> accepted(candidates.size(), 0);
    const unsigned workers = std::max(1u, jobs);
    if (workers == 1 || candidates.size() <= 1) {
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        accepted[i] = decide_factor(phase, candidates[i]).accepted ? 1 : 0;
      }
    } else {
      std::atomic<std::size_t> cursor{0};
      auto run = [&] {
        for (;;) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= candidates.size()) return;
          accepted[i] = decide_factor(phase, candidates[i]).accepted ? 1 : 0;
        }
      };
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
      for (std::thread& worker : pool) worker.join();
    }
    report.decided_words += candidates.size();

    std::set<Word> common;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (accepted[i]) common.insert(candidates[i]);
    }
    if (common.empty()) {
      report.complete = true;
      break;
    }
    report.common_by_length.push_back(std::move(common));
  }

  finalize_report(report);
  return report;
}

std::set<Word> window_set(std::string_view text, std::size_t length) {
  std::set<Word> out;
  if (length == 0 || text.size() < length) return out;
  const bool binary =
      std::all_of(text.begin(), text.end(),
                  [](char c) { return static_cast<unsigned char>(c) <= 1; });
  if (binary && length <= 63) {
    // Rolling bit-packed windows keep the 10^7-entry scans cheap.
    std::unordered_set<std::uint64_t> seen;
    const std::uint64_t mask = (std::uint64_t{1} << length) - 1;
    std::uint64_t window = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      window = ((window << 1) | static_cast<std::uint64_t>(text[i])) & mask;
      if (i + 1 >= length) seen.insert(window);
    }
    for (std::uint64_t packed : seen) {
      Word word(length, '\0');
      for (std::size_t b = 0; b < length; ++b) {
        word[length - 1 - b] = static_cast<char>((packed >> b) & 1u);
      }
      out.insert(std::move(word));
    }
    return out;
  }
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i + length <= text.size(); ++i) {
    seen.insert(text.substr(i, length));
  }
  for (std::string_view window : seen) out.emplace(window);
  return out;
}

CommonFactorsReport common_factors_brute(std::string_view x_prefix, std::string_view y_prefix,
                                         std::size_t max_length) {
  if (max_length > std::min(x_prefix.size(), y_prefix.size())) {
    throw invalid_input("prefixes are shorter than the requested factor length");
  }
  CommonFactorsReport report;
  report.max_length = max_length;
  for (std::size_t length = 1; length <= max_length; ++length) {
    const std::set<Word> x_windows = window_set(x_prefix, length);
    const std::set<Word> y_windows = window_set(y_prefix, length);
    std::set<Word> common;
    std::set_intersection(x_windows.begin(), x_windows.end(), y_windows.begin(),
                          y_windows.end(), std::inserter(common, common.begin()));
    if (common.empty()) {
      report.complete = true;
      break;
    }
    report.common_by_length.push_back(std::move(common));
  }
  finalize_report(report);
  return report;
}

}  // namespace gpword
