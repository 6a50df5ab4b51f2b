#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gpword/quadext.hpp"

namespace gpword {

/// Open arc (lo, hi) on the circle R/Z with rational endpoints,
/// lo < hi < lo + 1.
struct Arc {
  Rational lo;
  Rational hi;
};

/// The same arc shifted so that lo lies in [0, 1).
Arc normalized_arc(const Arc& arc);

/// The 0/1 sequence a(n) = [ frac(alpha*n^2 + beta0*n + gamma0) in arc ],
/// with irrational quadratic alpha.  All parameters live in one Q(sqrt(d)).
struct QuadraticPhase {
  QuadExt alpha;
  QuadExt beta0;
  QuadExt gamma0;
  Arc arc;

  /// Throws invalid_input on irrationality/arc/radicand violations.
  void validate() const;
};

/// Parses "alpha=sqrt(2); beta0=0; gamma0=0; arc=(-1/4,1/4)".  beta0 and
/// gamma0 default to 0; alpha and arc are required.  Values use the
/// expression constant grammar; arc endpoints must be rational.
QuadraticPhase parse_phase(std::string_view text);

std::string phase_to_string(const QuadraticPhase& phase);

/// a(n), decided exactly; arc membership is strict on both endpoints.
int eval_phase(const QuadraticPhase& phase, std::uint64_t n);

/// The word a(0) a(1) ... a(count-1), one byte per symbol.
std::string phase_prefix(const QuadraticPhase& phase, std::size_t count);

}  // namespace gpword
