#include "gpword/dfao.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace gpword {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

/// State reached from the initial state on the digit string of value.
int run_value(const Dfao& dfao, std::uint64_t value) {
  int digits[64];
  int len = 0;
  while (value > 0) {
    digits[len++] = static_cast<int>(value % static_cast<std::uint64_t>(dfao.base));
    value /= static_cast<std::uint64_t>(dfao.base);
  }
  int state = dfao.initial;
  for (int i = len - 1; i >= 0; --i) state = dfao.transitions[state][digits[i]];
  return state;
}

}  // namespace

std::string word_display(const Word& word) {
  bool single_digit = std::all_of(word.begin(), word.end(),
                                  [](char c) { return static_cast<unsigned char>(c) <= 9; });
  if (single_digit) {
    std::string out;
    out.reserve(word.size());
    for (char c : word) out.push_back(static_cast<char>('0' + c));
    return out;
  }
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(static_cast<unsigned char>(word[i]));
  }
  return out;
}

void Dfao::validate() const {
  if (base < 2) throw invalid_input("automaton base must be >= 2");
  const int n = num_states();
  if (n == 0) throw invalid_input("automaton needs at least one state");
  if (initial < 0 || initial >= n) throw invalid_input("initial state out of range");
  if (static_cast<int>(transitions.size()) != n) {
    throw invalid_input("transition table must cover every state");
  }
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(transitions[s].size()) != base) {
      throw invalid_input("state '" + state_names[s] + "' needs one transition per digit");
    }
    for (int target : transitions[s]) {
      if (target < 0 || target >= n) {
        throw invalid_input("transition from state '" + state_names[s] + "' is out of range");
      }
    }
  }
  if (static_cast<int>(outputs.size()) != n) {
    throw invalid_input("output table must cover every state");
  }
  for (int value : outputs) {
    if (value < 0 || value > 255) throw invalid_input("output symbols must lie in [0, 255]");
  }
  if (transitions[initial][0] != initial) {
    throw invalid_input(
        "transition on digit 0 must fix the initial state, otherwise leading "
        "zeros would change values");
  }
}

Dfao thue_morse() {
  Dfao dfao;
  dfao.base = 2;
  dfao.state_names = {"even", "odd"};
  dfao.initial = 0;
  dfao.transitions = {{0, 1}, {1, 0}};
  dfao.outputs = {0, 1};
  return dfao;
}

int eval_dfao(const Dfao& dfao, const BigInt& n) {
  if (sgn(n) < 0) throw invalid_input("sequence index must be non-negative");
  std::vector<int> digits;
  BigInt v = n;
  while (sgn(v) > 0) {
    digits.push_back(
        static_cast<int>(mpz_tdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(),
                                       static_cast<unsigned long>(dfao.base))));
  }
  int state = dfao.initial;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    state = dfao.transitions[state][*it];
  }
  return dfao.outputs[state];
}

int eval_dfao(const Dfao& dfao, std::uint64_t n) {
  return dfao.outputs[run_value(dfao, n)];
}

std::string dfao_prefix(const Dfao& dfao, std::size_t count) {
  // digits(k*m + e) = digits(m) . e for k*m + e >= 1, so the state at n
  // follows from the state at n / k in one step.
  std::vector<int> state(count > 0 ? count : 0);
  std::string out(count, '\0');
  const auto base = static_cast<std::size_t>(dfao.base);
  for (std::size_t n = 0; n < count; ++n) {
    if (n == 0) {
      state[0] = dfao.initial;
    } else {
      state[n] = dfao.transitions[state[n / base]][static_cast<int>(n % base)];
    }
    out[n] = static_cast<char>(dfao.outputs[state[n]]);
  }
  return out;
}

Dfao subsequence_dfao(const Dfao& dfao, std::uint64_t step, std::uint64_t offset) {
  dfao.validate();
  if (step == 0) throw invalid_input("subsequence step must be >= 1");
  const std::uint64_t width = step + offset;  // tuple components 0 .. width
  if (width > 1'000'000) throw invalid_input("subsequence parameters too large");
  const auto k = static_cast<std::uint64_t>(dfao.base);

  // Component c of a tuple holds the state reached on the digit string of
  // step*v + c, where v is the value of the digits read so far.  Appending
  // digit e maps v to k*v + e and step*v + c' to k*(step*v + m/k) + m%k with
  // m = step*e + c', and m/k <= width keeps the recursion inside the tuple.
  using Tuple = std::vector<int>;
  Tuple start(width + 1);
  for (std::uint64_t c = 0; c <= width; ++c) start[c] = run_value(dfao, c);

  std::map<Tuple, int> index;
  std::vector<Tuple> tuples;
  std::deque<int> work;
  index.emplace(start, 0);
  tuples.push_back(start);
  work.push_back(0);

  Dfao out;
  out.base = dfao.base;
  out.initial = 0;
  std::vector<std::vector<int>> transitions;
  while (!work.empty()) {
    const int id = work.front();
    work.pop_front();
    if (static_cast<int>(transitions.size()) <= id) transitions.resize(id + 1);
    transitions[id].resize(k);
    const Tuple current = tuples[id];
    for (std::uint64_t e = 0; e < k; ++e) {
      Tuple next(width + 1);
      for (std::uint64_t c = 0; c <= width; ++c) {
        const std::uint64_t m = step * e + c;
        next[c] = dfao.transitions[current[m / k]][static_cast<int>(m % k)];
      }
      auto [it, inserted] = index.emplace(std::move(next), static_cast<int>(tuples.size()));
      if (inserted) {
        tuples.push_back(it->first);
        work.push_back(it->second);
      }
      transitions[id][e] = it->second;
    }
  }

  out.transitions = std::move(transitions);
  out.outputs.resize(tuples.size());
  out.state_names.resize(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    out.outputs[i] = dfao.outputs[tuples[i][offset]];
    out.state_names[i] = "t" + std::to_string(i);
  }
  out.validate();
  return out;
}

std::optional<BigInt> first_difference(const Dfao& x, const Dfao& y) {
  if (x.base != y.base) {
    throw invalid_input("cannot compare automata over different bases");
  }
  const int ny = y.num_states();
  const int total = x.num_states() * ny;
  auto encode = [ny](int p, int q) { return p * ny + q; };
  std::vector<char> visited(total, 0);
  std::vector<int> parent(total, -1);
  std::vector<int> parent_digit(total, -1);
  std::deque<int> work;

  const int root = encode(x.initial, y.initial);
  visited[root] = 1;
  work.push_back(root);
  while (!work.empty()) {
    const int node = work.front();
    work.pop_front();
    const int p = node / ny;
    const int q = node % ny;
    if (x.outputs[p] != y.outputs[q]) {
      // Digits along the parent chain, most significant first after reversal.
      std::vector<int> digits;
      for (int u = node; u != root; u = parent[u]) digits.push_back(parent_digit[u]);
      BigInt value = 0;
      for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        value = value * x.base + *it;
      }
      return value;
    }
    for (int digit = 0; digit < x.base; ++digit) {
      const int next = encode(x.transitions[p][digit], y.transitions[q][digit]);
      if (!visited[next]) {
        visited[next] = 1;
        parent[next] = node;
        parent_digit[next] = digit;
        work.push_back(next);
      }
    }
  }
  return std::nullopt;
}

bool sequences_equal(const Dfao& x, const Dfao& y) {
  return !first_difference(x, y).has_value();
}

namespace detail {

Dfao minimized(const Dfao& dfao) {
  // Restrict to states reachable from the initial state, in BFS digit order.
  const int n = dfao.num_states();
  std::vector<int> old_to_new(n, -1);
  std::vector<int> order;
  std::deque<int> work{dfao.initial};
  old_to_new[dfao.initial] = 0;
  order.push_back(dfao.initial);
  while (!work.empty()) {
    const int s = work.front();
    work.pop_front();
    for (int digit = 0; digit < dfao.base; ++digit) {
      const int t = dfao.transitions[s][digit];
      if (old_to_new[t] < 0) {
        old_to_new[t] = static_cast<int>(order.size());
        order.push_back(t);
        work.push_back(t);
      }
    }
  }

  const int m = static_cast<int>(order.size());
  // Moore refinement over the reachable part: start from output classes,
  // split by successor-class signatures until stable.
  std::vector<int> cls(m);
  {
    std::map<int, int> by_output;
    for (int i = 0; i < m; ++i) {
      auto [it, _] = by_output.emplace(dfao.outputs[order[i]],
                                       static_cast<int>(by_output.size()));
      cls[i] = it->second;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> by_signature;
    std::vector<int> next(m);
    for (int i = 0; i < m; ++i) {
      std::vector<int> signature;
      signature.reserve(dfao.base + 1);
      signature.push_back(cls[i]);
      for (int digit = 0; digit < dfao.base; ++digit) {
        signature.push_back(cls[old_to_new[dfao.transitions[order[i]][digit]]]);
      }
      auto [it, _] = by_signature.emplace(std::move(signature),
                                          static_cast<int>(by_signature.size()));
      next[i] = it->second;
    }
    const bool stable = static_cast<int>(by_signature.size()) ==
                        *std::max_element(cls.begin(), cls.end()) + 1;
    cls = std::move(next);
    if (stable) break;
  }

  const int classes = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int> representative(classes, -1);
  for (int i = 0; i < m; ++i) {
    if (representative[cls[i]] < 0) representative[cls[i]] = i;
  }

  Dfao out;
  out.base = dfao.base;
  out.initial = cls[0];
  out.state_names.resize(classes);
  out.outputs.resize(classes);
  out.transitions.assign(classes, std::vector<int>(dfao.base));
  for (int c = 0; c < classes; ++c) {
    const int rep = order[representative[c]];
    out.state_names[c] = dfao.state_names[rep];
    out.outputs[c] = dfao.outputs[rep];
    for (int digit = 0; digit < dfao.base; ++digit) {
      out.transitions[c][digit] = cls[old_to_new[dfao.transitions[rep][digit]]];
    }
  }
  out.validate();
  return out;
}

}  // namespace detail

std::size_t kernel_size(const Dfao& dfao) {
  dfao.validate();
  std::vector<Dfao> representatives{detail::minimized(dfao)};
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    const Dfao current = representatives[work.front()];
    work.pop_front();
    for (int j = 0; j < dfao.base; ++j) {
      Dfao child = detail::minimized(
          subsequence_dfao(current, static_cast<std::uint64_t>(dfao.base),
                           static_cast<std::uint64_t>(j)));
      const bool known = std::any_of(
          representatives.begin(), representatives.end(),
          [&](const Dfao& rep) { return sequences_equal(child, rep); });
      if (!known) {
        representatives.push_back(std::move(child));
        work.push_back(representatives.size() - 1);
      }
    }
  }
  return representatives.size();
}

KernelCollision kernel_collision(const Dfao& dfao) {
  dfao.validate();
  const std::size_t kernel = kernel_size(dfao);
  std::uint64_t modulus = 1;
  for (int power = 1;; ++power) {
    modulus *= static_cast<std::uint64_t>(dfao.base);
    std::vector<Dfao> subsequences;
    subsequences.reserve(modulus);
    for (std::uint64_t s = 0; s < modulus; ++s) {
      subsequences.push_back(detail::minimized(subsequence_dfao(dfao, modulus, s)));
    }
    // Pairs ordered by gap t - s first, then by s.
    for (std::uint64_t gap = 1; gap < modulus; ++gap) {
      for (std::uint64_t s = 0; s + gap < modulus; ++s) {
        if (sequences_equal(subsequences[s], subsequences[s + gap])) {
          return {power, s, s + gap, modulus};
        }
      }
    }
    if (modulus > kernel) {
      // k^power sequences drawn from a kernel of smaller cardinality must
      // collide; reaching this line means the search logic is broken.
      throw std::logic_error("kernel pigeonhole violated: no collision found");
    }
  }
}

std::set<Word> enumerate_factors(const Dfao& dfao, std::size_t length,
                                 std::size_t prefix_length) {
  if (prefix_length < length) {
    throw invalid_input("prefix of length " + std::to_string(prefix_length) +
                        " cannot contain factors of length " + std::to_string(length));
  }
  if (length == 0) return {Word{}};
  const std::string prefix = dfao_prefix(dfao, prefix_length);
  std::unordered_set<std::string_view> seen;
  const std::string_view view(prefix);
  for (std::size_t i = 0; i + length <= prefix.size(); ++i) {
    seen.insert(view.substr(i, length));
  }
  std::set<Word> out;
  for (std::string_view window : seen) out.emplace(window);
  return out;
}

std::size_t thue_morse_certified_prefix(std::size_t length) {
  if (length > (std::size_t{1} << 40)) throw invalid_input("factor length too large");
  if (length <= 1) return length + 9;
  std::size_t j = 1;
  while ((std::size_t{1} << j) + 1 < length) ++j;
  return 9 * (std::size_t{1} << (j - 1)) + length;
}

FactorEnumeration enumerate_factors_certified(const Dfao& dfao, std::size_t length) {
  if (dfao.base != 2 || !sequences_equal(dfao, thue_morse())) {
    throw invalid_input(
        "certified factor enumeration is only available for the Thue-Morse "
        "sequence; pass an explicit prefix bound instead");
  }
  FactorEnumeration out;
  out.prefix_used = thue_morse_certified_prefix(length);
  out.factors = enumerate_factors(dfao, length, out.prefix_used);
  out.certified = true;
  out.stable = true;
  return out;
}

FactorEnumeration enumerate_factors_stable(const Dfao& dfao, std::size_t length,
                                           std::size_t initial_prefix,
                                           std::size_t max_prefix) {
  FactorEnumeration out;
  std::size_t prefix = std::max(initial_prefix, std::max<std::size_t>(length, 16));
  std::set<Word> current = enumerate_factors(dfao, length, prefix);
  while (prefix <= max_prefix / 2) {
    std::set<Word> doubled = enumerate_factors(dfao, length, prefix * 2);
    prefix *= 2;
    if (doubled == current) {
      out.factors = std::move(doubled);
      out.prefix_used = prefix;
      out.stable = true;
      return out;
    }
    current = std::move(doubled);
  }
  out.factors = std::move(current);
  out.prefix_used = prefix;
  out.stable = false;
  return out;
}

// --- JSON ---------------------------------------------------------------

namespace {

const json& require_field(const json& doc, const char* key, const char* what) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw invalid_input(std::string("automaton JSON: missing field '") + key + "' (" + what + ")");
  }
  return *it;
}

}  // namespace

Dfao parse_dfao_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& error) {
    throw invalid_input(std::string("automaton JSON: ") + error.what());
  }
  if (!doc.is_object()) throw invalid_input("automaton JSON: expected an object");

  Dfao out;
  const json& k = require_field(doc, "k", "numeric base");
  if (!k.is_number_integer() || k.get<long long>() < 2 || k.get<long long>() > 4096) {
    throw invalid_input("automaton JSON: 'k' must be an integer in [2, 4096]");
  }
  out.base = k.get<int>();

  const json& states = require_field(doc, "states", "array of state names");
  if (!states.is_array() || states.empty()) {
    throw invalid_input("automaton JSON: 'states' must be a non-empty array of names");
  }
  std::map<std::string, int> state_index;
  for (const json& name : states) {
    if (!name.is_string()) throw invalid_input("automaton JSON: state names must be strings");
    const std::string text_name = name.get<std::string>();
    if (!state_index.emplace(text_name, static_cast<int>(out.state_names.size())).second) {
      throw invalid_input("automaton JSON: duplicate state '" + text_name + "'");
    }
    out.state_names.push_back(text_name);
  }
  auto lookup = [&](const std::string& name, const char* context) {
    auto it = state_index.find(name);
    if (it == state_index.end()) {
      throw invalid_input(std::string("automaton JSON: unknown state '") + name + "' in " +
                          context);
    }
    return it->second;
  };

  const json& initial = require_field(doc, "initial", "name of the start state");
  if (!initial.is_string()) throw invalid_input("automaton JSON: 'initial' must be a state name");
  out.initial = lookup(initial.get<std::string>(), "'initial'");

  const json& transitions = require_field(doc, "transitions", "digit -> state map per state");
  if (!transitions.is_object()) {
    throw invalid_input("automaton JSON: 'transitions' must be an object keyed by state");
  }
  for (auto it = transitions.begin(); it != transitions.end(); ++it) {
    lookup(it.key(), "'transitions'");
  }
  out.transitions.assign(out.state_names.size(), {});
  for (std::size_t s = 0; s < out.state_names.size(); ++s) {
    const std::string& name = out.state_names[s];
    auto it = transitions.find(name);
    if (it == transitions.end()) {
      throw invalid_input("automaton JSON: missing transitions for state '" + name + "'");
    }
    if (!it->is_array() || static_cast<int>(it->size()) != out.base) {
      throw invalid_input("automaton JSON: state '" + name + "' needs exactly k = " +
                          std::to_string(out.base) + " transition targets");
    }
    for (const json& target : *it) {
      if (!target.is_string()) {
        throw invalid_input("automaton JSON: transition targets must be state names");
      }
      out.transitions[s].push_back(lookup(target.get<std::string>(), "'transitions'"));
    }
  }

  const json& outputs = require_field(doc, "outputs", "symbol per state");
  if (!outputs.is_object()) {
    throw invalid_input("automaton JSON: 'outputs' must be an object keyed by state");
  }
  for (auto it = outputs.begin(); it != outputs.end(); ++it) {
    lookup(it.key(), "'outputs'");
  }
  out.outputs.assign(out.state_names.size(), 0);
  for (std::size_t s = 0; s < out.state_names.size(); ++s) {
    const std::string& name = out.state_names[s];
    auto it = outputs.find(name);
    if (it == outputs.end()) {
      throw invalid_input("automaton JSON: missing output for state '" + name + "'");
    }
    if (!it->is_number_integer() || it->get<long long>() < 0 || it->get<long long>() > 255) {
      throw invalid_input("automaton JSON: output for state '" + name +
                          "' must be an integer in [0, 255]");
    }
    out.outputs[s] = it->get<int>();
  }

  out.validate();
  return out;
}

Dfao load_dfao_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open automaton file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dfao_json(buffer.str());
}

std::string dfao_to_json(const Dfao& dfao) {
  ordered_json doc;
  doc["k"] = dfao.base;
  doc["states"] = dfao.state_names;
  doc["initial"] = dfao.state_names[dfao.initial];
  ordered_json transitions = ordered_json::object();
  ordered_json outputs = ordered_json::object();
  for (int s = 0; s < dfao.num_states(); ++s) {
    ordered_json row = ordered_json::array();
    for (int target : dfao.transitions[s]) row.push_back(dfao.state_names[target]);
    transitions[dfao.state_names[s]] = std::move(row);
    outputs[dfao.state_names[s]] = dfao.outputs[s];
  }
  doc["transitions"] = std::move(transitions);
  doc["outputs"] = std::move(outputs);
  return doc.dump(2);
}

}  // namespace gpword
