// gpword: exact computations on generalised-polynomial and automatic words.
//
// Subcommands mirror the library: eval-gp, eval-automatic, eval-phase,
// factors, decide-factor, common-factors, kernel-collision, sturmian.
// Every subcommand honours --format text|json; output is deterministic for a
// fixed invocation, including under --jobs parallelism.
//
// Exit codes: 0 success, 2 invalid input (CLI usage, parse or validation
// errors), 1 internal invariant violation.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gpword/dfao.hpp"
#include "gpword/factor_search.hpp"
#include "gpword/gpexpr.hpp"
#include "gpword/phase.hpp"
#include "gpword/quadext.hpp"

namespace {

using nlohmann::ordered_json;
using namespace gpword;

constexpr int kExitSuccess = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;

bool g_json = false;

void emit(const ordered_json& payload) { std::cout << payload.dump(2) << '\n'; }

/// "thue-morse" or a path to an automaton JSON file.
Dfao load_automaton(const std::string& spec) {
  if (spec == "thue-morse") return thue_morse();
  return load_dfao_file(spec);
}

BigInt parse_big(const std::string& text) {
  std::size_t digits_from = text.size() > 1 && text.front() == '-' ? 1 : 0;
  bool ok = text.size() > digits_from;
  for (std::size_t i = digits_from; i < text.size(); ++i) {
    ok = ok && text[i] >= '0' && text[i] <= '9';
  }
  if (!ok) throw invalid_input("not an integer: '" + text + "'");
  return BigInt(text, 10);
}

std::uint64_t parse_index(const std::string& text) {
  const BigInt n = parse_big(text);
  if (n < 0 || !n.fits_ulong_p()) {
    throw invalid_input("index out of range: '" + text + "'");
  }
  return n.get_ui();
}

/// ASCII digits -> one symbol byte per character.
Word parse_word(const std::string& text) {
  Word word(text.size(), '\0');
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw invalid_input("word must be a string of digits, got '" + text + "'");
    }
    word[i] = static_cast<char>(text[i] - '0');
  }
  return word;
}

ordered_json quad_json(const QuadExt& value) {
  return ordered_json{{"exact", value.str()}, {"approx", value.to_double()}};
}

// --- subcommand handlers -------------------------------------------------

struct EvalGpArgs {
  std::string expression;
  std::vector<std::string> indices;
};

void run_eval_gp(const EvalGpArgs& args) {
  const GpExprPtr expr = parse_expression(args.expression);
  const std::string canonical = print(expr);
  ordered_json values = ordered_json::array();
  for (const std::string& text : args.indices) {
    const BigInt n = parse_big(text);
    const QuadExt value = eval(expr, n);
    if (g_json) {
      values.push_back({{"n", n.get_str()},
                        {"value", value.str()},
                        {"approx", value.to_double()}});
    } else {
      std::cout << "f(" << n.get_str() << ") = " << value.str() << '\n';
    }
  }
  if (g_json) emit({{"expression", canonical}, {"values", values}});
}

struct EvalSeqArgs {
  std::string source;  // automaton spec or phase string
  std::vector<std::string> indices;
};

void run_eval_automatic(const EvalSeqArgs& args) {
  const Dfao dfao = load_automaton(args.source);
  ordered_json values = ordered_json::array();
  for (const std::string& text : args.indices) {
    const BigInt n = parse_big(text);
    const int symbol = eval_dfao(dfao, n);
    if (g_json) {
      values.push_back({{"n", n.get_str()}, {"symbol", symbol}});
    } else {
      std::cout << "x(" << n.get_str() << ") = " << symbol << '\n';
    }
  }
  if (g_json) {
    emit({{"automaton", args.source}, {"base", dfao.base}, {"values", values}});
  }
}

void run_eval_phase(const EvalSeqArgs& args) {
  const QuadraticPhase phase = parse_phase(args.source);
  ordered_json values = ordered_json::array();
  for (const std::string& text : args.indices) {
    const std::uint64_t n = parse_index(text);
    const int symbol = eval_phase(phase, n);
    if (g_json) {
      values.push_back({{"n", std::to_string(n)}, {"symbol", symbol}});
    } else {
      std::cout << "a(" << n << ") = " << symbol << '\n';
    }
  }
  if (g_json) emit({{"phase", phase_to_string(phase)}, {"values", values}});
}

struct FactorsArgs {
  std::string automaton;
  std::size_t length = 0;
  std::size_t prefix = 0;  // 0: not given
  bool certified = false;
};

void run_factors(const FactorsArgs& args) {
  const Dfao dfao = load_automaton(args.automaton);
  FactorEnumeration result;
  std::string mode;
  if (args.certified) {
    mode = "certified";
    result = enumerate_factors_certified(dfao, args.length);
  } else if (args.prefix != 0) {
    mode = "prefix";
    result.factors = enumerate_factors(dfao, args.length, args.prefix);
    result.prefix_used = args.prefix;
  } else {
    mode = "doubling";
    const std::size_t initial = std::max<std::size_t>(64, 4 * args.length);
    result = enumerate_factors_stable(dfao, args.length, initial,
                                      /*max_prefix=*/std::size_t{1} << 22);
  }

  if (g_json) {
    ordered_json factors = ordered_json::array();
    for (const Word& word : result.factors) factors.push_back(word_display(word));
    emit({{"automaton", args.automaton},
          {"length", args.length},
          {"mode", mode},
          {"prefix_used", result.prefix_used},
          {"certified", result.certified},
          {"stable", result.stable},
          {"count", result.factors.size()},
          {"factors", factors}});
    return;
  }
  std::cout << "length " << args.length << ": " << result.factors.size()
            << " factors (mode " << mode << ", prefix " << result.prefix_used;
  if (result.certified) {
    std::cout << ", certified";
  } else if (mode == "doubling") {
    std::cout << (result.stable ? ", stable across doubling; not certified"
                                : ", NOT stable at the prefix cap; not certified");
  } else {
    std::cout << ", not certified";
  }
  std::cout << ")\n";
  for (const Word& word : result.factors) std::cout << word_display(word) << '\n';
}

struct DecideArgs {
  std::string phase;
  std::string word;
  bool witness = false;
};

void run_decide_factor(const DecideArgs& args) {
  const QuadraticPhase phase = parse_phase(args.phase);
  const Word word = parse_word(args.word);
  const DecideOutcome outcome = decide_factor(phase, word, args.witness);

  if (g_json) {
    ordered_json payload = {{"phase", phase_to_string(phase)},
                            {"word", word_display(word)},
                            {"accepted", outcome.accepted},
                            {"branches", outcome.branches}};
    if (outcome.accepted) {
      payload["floor_assignment"] = outcome.floor_assignment;
      if (outcome.witness) {
        payload["witness"] = {{"beta", quad_json(outcome.witness->x)},
                              {"gamma", quad_json(outcome.witness->y)}};
      }
    }
    emit(payload);
    return;
  }
  std::cout << "word: " << word_display(word) << '\n'
            << "accepted: " << (outcome.accepted ? "yes" : "no") << '\n'
            << "branches explored: " << outcome.branches << '\n';
  if (outcome.accepted) {
    std::cout << "floor assignment:";
    for (long long k : outcome.floor_assignment) std::cout << ' ' << k;
    std::cout << '\n';
    if (outcome.witness) {
      std::cout << "witness: beta = " << outcome.witness->x.str()
                << " (~" << outcome.witness->x.to_double() << ")\n"
                << "         gamma = " << outcome.witness->y.str()
                << " (~" << outcome.witness->y.to_double() << ")\n";
    }
  }
}

struct CommonArgs {
  std::string automaton;
  std::string phase;
  std::size_t max_length = 0;
  std::size_t prefix = 0;  // 0: certified Thue-Morse bound
  unsigned jobs = 1;
};

void run_common_factors(const CommonArgs& args) {
  const Dfao dfao = load_automaton(args.automaton);
  const QuadraticPhase phase = parse_phase(args.phase);
  std::optional<std::size_t> prefix_override;
  if (args.prefix != 0) prefix_override = args.prefix;
  const CommonFactorsReport report =
      common_factors(dfao, phase, args.max_length, prefix_override, args.jobs);

  if (g_json) {
    ordered_json counts = ordered_json::array();
    for (const std::set<Word>& level : report.common_by_length) counts.push_back(level.size());
    ordered_json maximal = ordered_json::array();
    for (const Word& word : report.maximal) maximal.push_back(word_display(word));
    emit({{"automaton", args.automaton},
          {"phase", phase_to_string(phase)},
          {"max_length", report.max_length},
          {"counts_by_length", counts},
          {"longest", report.longest},
          {"complete", report.complete},
          {"decided_words", report.decided_words},
          {"maximal", maximal}});
    return;
  }
  std::cout << "common factors of " << args.automaton << " and "
            << phase_to_string(phase) << '\n';
  for (std::size_t i = 0; i < report.common_by_length.size(); ++i) {
    std::cout << "length " << (i + 1) << ": " << report.common_by_length[i].size() << '\n';
  }
  std::cout << "longest common factor: " << report.longest << '\n';
  if (report.complete) {
    std::cout << "complete: yes (no common factor of length " << (report.longest + 1) << ")\n";
  } else {
    std::cout << "complete: no (stopped at the requested cap " << report.max_length << ")\n";
  }
  std::cout << "words decided: " << report.decided_words << '\n'
            << "maximal common factors (" << report.maximal.size() << "):\n";
  for (const Word& word : report.maximal) std::cout << word_display(word) << '\n';
}

void run_kernel_collision(const std::string& automaton) {
  const Dfao dfao = load_automaton(automaton);
  const std::size_t kernel = kernel_size(dfao);
  const KernelCollision hit = kernel_collision(dfao);

  if (g_json) {
    emit({{"automaton", automaton},
          {"kernel_size", kernel},
          {"r", hit.power},
          {"s", hit.s},
          {"t", hit.t},
          {"modulus", hit.modulus}});
    return;
  }
  std::cout << "automaton: " << automaton << '\n'
            << "kernel size: " << kernel << '\n'
            << "collision: r = " << hit.power << ", s = " << hit.s << ", t = " << hit.t
            << " (modulus " << hit.modulus << ")\n"
            << "identity: x(" << hit.modulus << "*n + " << hit.s << ") = x(" << hit.modulus
            << "*n + " << hit.t << ") for all n\n";
}

struct SturmianArgs {
  std::string alpha;
  std::string rho;
  std::size_t count = 0;
};

void run_sturmian(const SturmianArgs& args) {
  const QuadExt alpha = parse_constant(args.alpha);
  const QuadExt rho = parse_constant(args.rho);
  const GpExprPtr expr = sturmian_expression(alpha, rho);
  const std::string word = sturmian_prefix(alpha, rho, args.count);

  if (g_json) {
    emit({{"alpha", alpha.str()},
          {"rho", rho.str()},
          {"expression", print(expr)},
          {"count", args.count},
          {"word", word_display(word)}});
    return;
  }
  std::cout << "alpha = " << alpha.str() << '\n'
            << "rho = " << rho.str() << '\n'
            << "expression: " << print(expr) << '\n'
            << word_display(word) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact factor computations for generalised-polynomial and automatic words"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  EvalGpArgs eval_gp_args;
  CLI::App* eval_gp = app.add_subcommand(
      "eval-gp", "Evaluate a generalised-polynomial expression at integers");
  eval_gp->add_option("expr", eval_gp_args.expression, "Expression in the variable n")
      ->required();
  eval_gp->add_option("n", eval_gp_args.indices, "Integer arguments")->required();

  EvalSeqArgs eval_automatic_args;
  CLI::App* eval_automatic =
      app.add_subcommand("eval-automatic", "Evaluate an automatic sequence at indices");
  eval_automatic
      ->add_option("dfao", eval_automatic_args.source,
                   "Automaton JSON file or the builtin name 'thue-morse'")
      ->required();
  eval_automatic->add_option("n", eval_automatic_args.indices, "Indices (n >= 0)")->required();

  EvalSeqArgs eval_phase_args;
  CLI::App* eval_phase_cmd =
      app.add_subcommand("eval-phase", "Evaluate a quadratic-phase 0/1 sequence at indices");
  eval_phase_cmd
      ->add_option("phase", eval_phase_args.source,
                   "Phase string, e.g. \"alpha=sqrt(2); arc=(-1/4,1/4)\"")
      ->required();
  eval_phase_cmd->add_option("n", eval_phase_args.indices, "Indices (n >= 0)")->required();

  FactorsArgs factors_args;
  CLI::App* factors = app.add_subcommand("factors", "Enumerate length-l factors of an automatic sequence");
  factors
      ->add_option("dfao", factors_args.automaton,
                   "Automaton JSON file or the builtin name 'thue-morse'")
      ->required();
  factors->add_option("--len", factors_args.length, "Factor length")
      ->required()
      ->check(CLI::PositiveNumber);
  CLI::Option* prefix_opt =
      factors->add_option("--prefix", factors_args.prefix, "Explicit enumeration prefix length")
          ->check(CLI::PositiveNumber);
  factors
      ->add_flag("--certified", factors_args.certified,
                 "Use the certified Thue-Morse prefix bound (Thue-Morse only)")
      ->excludes(prefix_opt);

  DecideArgs decide_args;
  CLI::App* decide =
      app.add_subcommand("decide-factor", "Decide whether a 0/1 word occurs in a phase sequence");
  decide->add_option("phase", decide_args.phase, "Phase string")->required();
  decide->add_option("word", decide_args.word, "Word as a digit string, e.g. 110100101")
      ->required();
  decide->add_flag("--witness", decide_args.witness,
                   "Report an exact interior (beta, gamma) witness when accepted");

  CommonArgs common_args;
  CLI::App* common =
      app.add_subcommand("common-factors", "Common factors of an automatic and a phase sequence");
  common
      ->add_option("dfao", common_args.automaton,
                   "Automaton JSON file or the builtin name 'thue-morse'")
      ->required();
  common->add_option("phase", common_args.phase, "Phase string")->required();
  common->add_option("--max-len", common_args.max_length, "Largest factor length to consider")
      ->required()
      ->check(CLI::PositiveNumber);
  common->add_option("--prefix", common_args.prefix,
                     "Enumeration prefix bound (required for non-Thue-Morse automata)")
      ->check(CLI::PositiveNumber);
  common->add_option("--jobs", common_args.jobs, "Worker threads for factor decisions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string kernel_automaton;
  CLI::App* kernel = app.add_subcommand(
      "kernel-collision", "Find the least kernel coincidence x(k^r n + s) = x(k^r n + t)");
  kernel
      ->add_option("dfao", kernel_automaton,
                   "Automaton JSON file or the builtin name 'thue-morse'")
      ->required();

  SturmianArgs sturmian_args;
  CLI::App* sturmian =
      app.add_subcommand("sturmian", "Generate a Sturmian word from slope and intercept");
  sturmian->add_option("alpha", sturmian_args.alpha, "Irrational slope, e.g. \"(sqrt(5)-1)/2\"")
      ->required();
  sturmian->add_option("rho", sturmian_args.rho, "Intercept")->required();
  sturmian->add_option("--count", sturmian_args.count, "Number of symbols")
      ->required()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitInvalid;
  }

  g_json = format == "json";
  try {
    if (app.got_subcommand(eval_gp)) {
      run_eval_gp(eval_gp_args);
    } else if (app.got_subcommand(eval_automatic)) {
      run_eval_automatic(eval_automatic_args);
    } else if (app.got_subcommand(eval_phase_cmd)) {
      run_eval_phase(eval_phase_args);
    } else if (app.got_subcommand(factors)) {
      run_factors(factors_args);
    } else if (app.got_subcommand(decide)) {
      run_decide_factor(decide_args);
    } else if (app.got_subcommand(common)) {
      run_common_factors(common_args);
    } else if (app.got_subcommand(kernel)) {
      run_kernel_collision(kernel_automaton);
    } else if (app.got_subcommand(sturmian)) {
      run_sturmian(sturmian_args);
    }
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitSuccess;
}
