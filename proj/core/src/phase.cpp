#include "gpword/phase.hpp"

#include <cctype>
#include <vector>

#include "gpword/gpexpr.hpp"

namespace gpword {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

/// t lies in the open arc, for t in [0, 1) and a normalized arc.
bool in_open_arc(const QuadExt& t, const Arc& arc) {
  const QuadExt lo{arc.lo};
  const QuadExt hi{arc.hi};
  if (t > lo && t < hi) return true;
  const QuadExt shifted = t + QuadExt(1);
  return shifted > lo && shifted < hi;
}

}  // namespace

Arc normalized_arc(const Arc& arc) {
  Rational shift = arc.lo;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), shift.get_num_mpz_t(), shift.get_den_mpz_t());
  return {arc.lo - Rational(f), arc.hi - Rational(f)};
}

void QuadraticPhase::validate() const {
  if (alpha.is_rational()) {
    throw invalid_input("alpha must be a quadratic irrational; got " + alpha.str());
  }
  // Forces all three parameters into one field.
  (void)(alpha + beta0 + gamma0);
  if (!(arc.lo < arc.hi)) {
    throw invalid_input("arc must satisfy lo < hi");
  }
  if (arc.hi - arc.lo >= 1) {
    throw invalid_input("arc must have length < 1 (otherwise the sequence is constant)");
  }
}

QuadraticPhase parse_phase(std::string_view text) {
  QuadraticPhase phase;
  phase.beta0 = QuadExt(0);
  phase.gamma0 = QuadExt(0);
  bool saw_alpha = false;
  bool saw_arc = false;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;

    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw invalid_input("phase: expected key=value, got '" + std::string(item) + "'");
    }
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));

    if (key == "alpha") {
      phase.alpha = parse_constant(value);
      saw_alpha = true;
    } else if (key == "beta0") {
      phase.beta0 = parse_constant(value);
    } else if (key == "gamma0") {
      phase.gamma0 = parse_constant(value);
    } else if (key == "arc") {
      if (value.size() < 2 || value.front() != '(' || value.back() != ')') {
        throw invalid_input("phase: arc must look like (lo,hi)");
      }
      const std::string_view inner = value.substr(1, value.size() - 2);
      const std::size_t comma = inner.find(',');
      if (comma == std::string_view::npos) {
        throw invalid_input("phase: arc must look like (lo,hi)");
      }
      const QuadExt lo = parse_constant(trim(inner.substr(0, comma)));
      const QuadExt hi = parse_constant(trim(inner.substr(comma + 1)));
      if (!lo.is_rational() || !hi.is_rational()) {
        throw invalid_input("phase: arc endpoints must be rational");
      }
      phase.arc = {lo.to_rational(), hi.to_rational()};
      saw_arc = true;
    } else {
      throw invalid_input("phase: unknown key '" + std::string(key) +
                          "' (expected alpha, beta0, gamma0, arc)");
    }
  }

  if (!saw_alpha) throw invalid_input("phase: missing required key 'alpha'");
  if (!saw_arc) throw invalid_input("phase: missing required key 'arc'");
  phase.validate();
  return phase;
}

std::string phase_to_string(const QuadraticPhase& phase) {
  std::string out = "alpha=" + phase.alpha.str();
  if (!phase.beta0.is_zero()) out += "; beta0=" + phase.beta0.str();
  if (!phase.gamma0.is_zero()) out += "; gamma0=" + phase.gamma0.str();
  out += "; arc=(" + phase.arc.lo.get_str() + "," + phase.arc.hi.get_str() + ")";
  return out;
}

int eval_phase(const QuadraticPhase& phase, std::uint64_t n) {
  const BigInt big_n(static_cast<unsigned long>(n));
  const QuadExt value =
      phase.alpha * QuadExt(BigInt(big_n * big_n)) + phase.beta0 * QuadExt(big_n) + phase.gamma0;
  return in_open_arc(value.frac(), normalized_arc(phase.arc)) ? 1 : 0;
}

std::string phase_prefix(const QuadraticPhase& phase, std::size_t count) {
  phase.validate();
  const Arc arc = normalized_arc(phase.arc);
  std::string out(count, '\0');
  // value and slope advance the quadratic incrementally:
  //   value(n+1) - value(n) = alpha*(2n+1) + beta0 = slope(n),
  //   slope(n+1) = slope(n) + 2*alpha.
  QuadExt value = phase.gamma0;
  QuadExt slope = phase.alpha + phase.beta0;
  const QuadExt two_alpha = phase.alpha + phase.alpha;
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = static_cast<char>(in_open_arc(value.frac(), arc) ? 1 : 0);
    value += slope;
    slope += two_alpha;
  }
  return out;
}

}  // namespace gpword
