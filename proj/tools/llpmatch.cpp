#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "llpmatch/errors.hpp"
#include "llpmatch/generator.hpp"
#include "llpmatch/instance_io.hpp"
#include "llpmatch/marriage.hpp"
#include "llpmatch/oracle.hpp"
#include "llpmatch/poset.hpp"
#include "llpmatch/simulator.hpp"
#include "llpmatch/ties.hpp"

namespace {

using namespace llpmatch;

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::string digest(const Instance& instance) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_instance(instance)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a:%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::string join_ranks(const std::vector<Rank>& ranks) {
  std::string out;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(ranks[k]);
  }
  return out;
}

std::string bracket(const std::vector<Rank>& ranks) {
  std::string out = "[";
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(ranks[k]);
  }
  return out + "]";
}

struct RunReport {
  std::string digest;
  std::string solver;
  std::optional<Matching> matching;
  std::string infeasible_text;
  ProposalVector ranks;
  std::size_t trace_length = 0;
  std::optional<double> wall_ms;
  std::optional<sim::Counters> counters;

  // Ordered key/value view; the matching goes last.
  std::vector<std::pair<std::string, std::string>> fields(const PreferenceProfile& profile) const {
    if (matching) {
      if (!matching->is_perfect() || rank_vector(profile, *matching) != ranks) {
        throw Error("report rank vector does not match its matching");
      }
    }
    std::vector<std::pair<std::string, std::string>> out{
        {"instance", digest},
        {"solver", solver},
        {"outcome", matching ? "matched" : infeasible_text},
        {"ranks", join_ranks(ranks)},
        {"trace_length", std::to_string(trace_length)},
    };
    if (wall_ms) {
      std::ostringstream ms;
      ms.precision(3);
      ms << std::fixed << *wall_ms;
      out.emplace_back("wall_ms", ms.str());
    }
    if (counters) {
      std::istringstream lines(sim::format_counters(*counters));
      for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
      }
    }
    if (matching) out.emplace_back("matching", matching->to_string());
    return out;
  }

  void print(std::ostream& os, const PreferenceProfile& profile, bool machine) const {
    const auto kv = fields(profile);
    for (const auto& [key, value] : kv) {
      if (machine) {
        os << key << '=' << value << '\n';
      } else if (key == "matching") {
        os << value << '\n';
      } else {
        os << key << ": " << value << '\n';
      }
    }
    if (!machine && !matching) os << infeasible_text << '\n';
  }
};

std::string class_word(const std::string& algorithm) {
  if (algorithm == "super") return "super";
  if (algorithm == "strong") return "strongly";
  if (algorithm == "weak") return "weakly";
  if (algorithm == "constrained") return "constrained";
  return "classic";
}

void print_marriage_trace(std::ostream& os, const MarriageResult& result) {
  for (const auto& record : result.trace) {
    os << "step=" << record.step << " forbidden=";
    for (std::size_t k = 0; k < record.forbidden.size(); ++k) {
      os << (k ? "," : "") << 'P' << record.forbidden[k] + 1;
    }
    os << " advanced=";
    for (std::size_t k = 0; k < record.advanced.size(); ++k) {
      os << (k ? "," : "") << 'P' << record.advanced[k] + 1 << '(' << to_string(record.reasons[k]) << ')';
    }
    os << " g=" << bracket(record.g_after) << '\n';
  }
}

struct SolveArgs {
  std::string path;
  std::string algorithm = "constrained";
  bool trace = false;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool timing = false;
};

int cmd_solve(const SolveArgs& args) {
  const Instance instance = load_instance(args.path);
  const auto& profile = instance.profile;
  const bool machine = args.format == "machine";
  RunReport report;
  report.digest = digest(instance);
  report.solver = args.algorithm;
  report.infeasible_text = "no " + class_word(args.algorithm) + " stable marriage";

  std::ostringstream trace;
  const auto start = std::chrono::steady_clock::now();
  if (args.algorithm == "stable" || args.algorithm == "constrained" || args.algorithm == "weak") {
    MarriageOptions options;
    options.record_trace = true;
    MarriageResult result;
    if (args.algorithm == "stable") {
      if (!instance.constraints.empty()) std::cerr << "note: constraints ignored by the stable solver\n";
      result = solve_stable(profile, options);
    } else if (args.algorithm == "constrained") {
      result = solve_constrained(profile, instance.constraints, options);
    } else {
      if (!instance.constraints.empty()) std::cerr << "note: constraints ignored by the weak solver\n";
      result = solve_weak(profile, args.seed, options);
    }
    if (args.trace) print_marriage_trace(trace, result);
    report.matching = result.matching;
    report.ranks = result.ranks;
    report.trace_length = result.trace.size();
    if (!result.found() && result.exhausted_man) {
      trace << "exhausted=P" << *result.exhausted_man + 1 << '\n';
    }
  } else if (args.algorithm == "super") {
    StepObserver observer;
    if (args.trace) {
      observer = [&trace](const StepRecord& record) {
        trace << "step=" << record.step << " advanced=";
        for (std::size_t k = 0; k < record.advanced.size(); ++k) {
          trace << (k ? "," : "") << 'P' << record.advanced[k] + 1;
        }
        trace << " g=[";
        for (std::size_t k = 0; k < record.after.size(); ++k) trace << (k ? "," : "") << record.after[k];
        trace << "]\n";
      };
    }
    const auto result = solve_superstable(profile, instance.constraints, {}, observer);
    report.matching = result.matching;
    report.ranks = result.ranks;
    report.trace_length = result.rounds;
  } else if (args.algorithm == "strong") {
    if (!instance.constraints.empty()) std::cerr << "note: constraints ignored by the strong solver\n";
    const auto result = solve_strongly_stable(profile);
    report.matching = result.matching;
    report.ranks = result.ranks;
    report.trace_length = result.rounds;
  } else {
    throw ValidationError("unknown algorithm " + args.algorithm);
  }
  const auto stop = std::chrono::steady_clock::now();
  if (args.timing) report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();

  std::cout << trace.str();
  report.print(std::cout, profile, machine);
  return report.matching ? kExitSolved : kExitInfeasible;
}

struct SimulateArgs {
  std::string path;
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  bool adversarial = false;
  bool literal_advance = false;
  bool log = false;
  std::size_t jobs = 1;
  std::string format = "text";
};

int cmd_simulate(const SimulateArgs& args) {
  if (args.seeds < 1) throw ValidationError("--seeds must be at least 1");
  const Instance instance = load_instance(args.path);
  const auto& profile = instance.profile;
  const auto poset = compile_constraints(profile, instance.constraints);
  const auto reference = solve_constrained(profile, poset);

  std::vector<sim::SimOutcome> outcomes(args.seeds);
  auto run = [&](std::size_t k) {
    sim::SimOptions options;
    options.seed = args.seed + k;
    options.scheduler = args.adversarial ? sim::SchedulerKind::Adversarial : sim::SchedulerKind::Random;
    options.literal_advance = args.literal_advance;
    options.record_log = args.log;
    outcomes[k] = sim::simulate(profile, poset, options);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(args.jobs, args.seeds));
  if (jobs == 1) {
    for (std::size_t k = 0; k < args.seeds; ++k) run(k);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < args.seeds; k += jobs) run(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const std::string id = digest(instance);
  std::size_t agree = 0;
  std::size_t bounds = 0;
  for (std::size_t k = 0; k < args.seeds; ++k) {
    const auto& out = outcomes[k];
    const bool same = out.matching == reference.matching;
    const bool ok = out.bounds_ok(profile.size());
    agree += same;
    bounds += ok;
    if (args.log) {
      for (const auto& line : out.log) std::cout << line << '\n';
    }
    RunReport report;
    report.digest = id;
    report.solver = "simulate(seed=" + std::to_string(args.seed + k) + ")";
    report.matching = out.matching;
    report.infeasible_text = "no constrained stable marriage";
    report.ranks = out.matching ? rank_vector(profile, *out.matching) : out.ranks;
    report.trace_length = out.steps;
    report.counters = out.counters;
    if (args.format == "machine") {
      report.print(std::cout, profile, true);
      std::cout << "agree=" << (same ? "yes" : "no") << "\nbounds=" << (ok ? "ok" : "violated") << '\n';
    } else {
      std::cout << "seed=" << args.seed + k << ' '
                << (out.matching ? out.matching->to_string() : report.infeasible_text)
                << " app=" << out.counters.application() << " total=" << out.counters.total()
                << " m=" << out.counters.propose_fail << " e=" << out.cross_edges
                << " bounds=" << (ok ? "ok" : "violated") << " agree=" << (same ? "yes" : "no") << '\n';
    }
  }
  std::cout << "agree=" << agree << '/' << args.seeds << '\n';
  std::cout << "bounds_ok=" << bounds << '/' << args.seeds << '\n';
  return agree == args.seeds && bounds == args.seeds ? kExitSolved : kExitError;
}

std::string outcome_text(const std::optional<Matching>& m) { return m ? m->to_string() : "none"; }

int cmd_verify(const std::string& path) {
  const Instance instance = load_instance(path);
  const auto& profile = instance.profile;
  if (profile.size() > oracle::kMaxAgents) {
    throw TooLarge("verify is limited to n <= " + std::to_string(oracle::kMaxAgents));
  }
  bool all = true;
  auto line = [&](const std::string& solver, const std::optional<Matching>& got,
                  const std::optional<Matching>& expected, bool agree) {
    all = all && agree;
    std::cout << solver << ": solver=" << outcome_text(got) << " oracle=" << outcome_text(expected)
              << (agree ? " agree" : " DISAGREE") << '\n';
  };
  const std::vector<Constraint> none;

  bool ties_safe = true;
  for (const auto& c : instance.constraints) {
    ties_safe = ties_safe && (std::holds_alternative<RegretLE>(c) || std::holds_alternative<LowerBound>(c));
  }

  if (profile.strict()) {
    const auto stable = solve_stable(profile);
    const auto expected = oracle::minimum_stable(profile, none, oracle::StabilityKind::Classic);
    line("stable", stable.matching, expected, stable.matching == expected);

    const auto constrained = solve_constrained(profile, instance.constraints);
    const auto expected_c = oracle::minimum_stable(profile, instance.constraints, oracle::StabilityKind::Classic);
    line("constrained", constrained.matching, expected_c, constrained.matching == expected_c);
  } else {
    std::cout << "stable: skipped (profile has ties)\n";
    std::cout << "constrained: skipped (profile has ties)\n";
  }

  if (ties_safe) {
    const auto super = solve_superstable(profile, instance.constraints);
    const auto expected = oracle::minimum_stable(profile, instance.constraints, oracle::StabilityKind::Super);
    line("super", super.matching, expected, super.matching == expected);
  } else {
    std::cout << "super: skipped (constraint form unsupported)\n";
  }

  const auto strong = solve_strongly_stable(profile);
  const auto strong_members = oracle::all_stable(profile, none, oracle::StabilityKind::Strong);
  const bool strong_ok = strong.matching ? oracle::classify(*strong.matching, profile).strongly_stable
                                         : strong_members.empty();
  std::optional<Matching> strong_reference;
  try {
    strong_reference = oracle::minimum_stable(profile, none, oracle::StabilityKind::Strong);
  } catch (const LatticeViolation&) {
    strong_reference = strong_members.front();
  }
  line("strong", strong.matching, strong_reference, strong_ok);

  const auto weak = solve_weak(profile, 0);
  const bool weak_ok = weak.matching && oracle::classify(*weak.matching, profile).weakly_stable;
  line("weak", weak.matching, weak.matching, weak_ok);

  std::cout << (all ? "verdict=agree" : "verdict=disagree") << '\n';
  return all ? kExitSolved : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable matching solvers, simulator and oracle"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("path", solve.path, "Instance file")->required();
  solve_cmd->add_option("--algorithm", solve.algorithm)
      ->check(CLI::IsMember({"stable", "constrained", "super", "strong", "weak"}));
  solve_cmd->add_flag("--trace", solve.trace, "Print every engine step");
  solve_cmd->add_option("--seed", solve.seed, "Tie-break seed for --algorithm weak");
  solve_cmd->add_option("--format", solve.format)->check(CLI::IsMember({"text", "machine"}));
  solve_cmd->add_flag("--timing", solve.timing, "Report wall time");

  SimulateArgs simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the message-passing protocol");
  sim_cmd->add_option("path", simulate.path, "Instance file")->required();
  sim_cmd->add_option("--seeds", simulate.seeds, "Number of seeds");
  sim_cmd->add_option("--seed", simulate.seed, "First seed");
  sim_cmd->add_flag("--adversarial", simulate.adversarial, "Deliver the newest message first");
  sim_cmd->add_flag("--literal-advance", simulate.literal_advance);
  sim_cmd->add_flag("--log", simulate.log, "Print the delivery log of every run");
  sim_cmd->add_option("--jobs", simulate.jobs, "Worker threads");
  sim_cmd->add_option("--format", simulate.format)->check(CLI::IsMember({"text", "machine"}));

  GeneratorOptions generate;
  auto* gen_cmd = app.add_subcommand("generate", "Print a random instance");
  gen_cmd->add_option("--n", generate.n)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--tie-density", generate.tie_density)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--constraints", generate.constraint_count)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", generate.seed);

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check every solver against the oracle");
  verify_cmd->add_option("path", verify_path, "Instance file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*sim_cmd) return cmd_simulate(simulate);
    if (*gen_cmd) {
      std::cout << serialize_instance(generate_instance(generate));
      return kExitSolved;
    }
    if (*verify_cmd) return cmd_verify(verify_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
