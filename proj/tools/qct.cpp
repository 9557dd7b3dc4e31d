// Copyright 2026 The QCT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qct: run, sample, attack and dilate coin-tossing protocols.
//
// Exit codes: 0 success, 1 runtime failure (or a dilation that does not
// reproduce its original), 2 usage or parse error, 3 validation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qct/cheat_opt.hpp"
#include "qct/classical.hpp"
#include "qct/dilation.hpp"
#include "qct/dk_protocol.hpp"
#include "qct/errors.hpp"
#include "qct/io.hpp"

namespace {

using qct::io::Json;

struct Builtin {
  const char* name;
  const char* kind;
  const char* summary;
};

constexpr Builtin kBuiltins[] = {
    {"dk-honest", "protocol", "three-dimensional protocol, both parties honest"},
    {"dk-bob-cheat", "protocol", "dk-honest with Bob's published cheat (--target)"},
    {"dk-alice-cheat", "protocol", "dk-honest with Alice's published cheat (--target)"},
    {"xor", "classical_protocol", "both announce a fair bit, result is the XOR"},
    {"dictator", "classical_protocol", "Alice announces a fair bit, which is the result"},
};

struct Options {
  std::uint64_t seed = 0;
  std::string output;
  double tolerance = 1e-9;
  int target = 0;
};

bool is_dk_builtin(const std::string& name) { return name.rfind("dk-", 0) == 0; }

qct::Protocol load_protocol(const std::string& input, const Options& opt) {
  if (input == "dk-honest") return qct::dk::build_dk_honest();
  if (input == "dk-bob-cheat") {
    return qct::with_strategy(qct::dk::build_dk_honest(), qct::dk::build_bob_cheat(opt.target));
  }
  if (input == "dk-alice-cheat") {
    return qct::with_strategy(qct::dk::build_dk_honest(), qct::dk::build_alice_cheat(opt.target));
  }
  if (input == "xor" || input == "dictator") {
    throw qct::ParseError("'" + input + "' is a classical protocol; use the classical command");
  }
  return qct::io::protocol_from_json(qct::io::read_file(input));
}

qct::ClassicalProtocol load_classical(const std::string& input) {
  if (input == "xor") return qct::classical_xor();
  if (input == "dictator") return qct::classical_dictator();
  if (is_dk_builtin(input)) throw qct::ParseError("'" + input + "' is not a classical protocol");
  return qct::io::classical_from_json(qct::io::read_file(input));
}

void emit(const Json& j, const Options& opt) {
  const std::string text = j.dump(2) + "\n";
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw std::runtime_error("cannot write '" + opt.output + "'");
  out << text;
}

Json payoff_json(const qct::OutcomeDistribution& d) {
  const auto weak = qct::payoff(d, qct::PayoffTable::weak_game());
  const auto zero = qct::payoff(d, qct::PayoffTable::zero_sum());
  return {{"weak_game", {{"alice", weak.first}, {"bob", weak.second}}},
          {"zero_sum", {{"alice", zero.first}, {"bob", zero.second}}}};
}

int cmd_run(const std::string& input, const Options& opt) {
  const auto p = load_protocol(input, opt);
  const auto d = qct::run_exact(p);
  emit(qct::io::document("run_report", {{"input", input},
                                        {"distribution", qct::io::to_json(d)},
                                        {"correct", qct::check_correct(d, opt.tolerance)},
                                        {"tolerance", opt.tolerance},
                                        {"payoff", payoff_json(d)}}),
       opt);
  return 0;
}

int cmd_sample(const std::string& input, std::uint64_t n, const Options& opt) {
  const auto p = load_protocol(input, opt);
  const auto d = qct::run_exact(p);
  const auto counts = qct::sample(d, n, opt.seed);
  emit(qct::io::document("sample_report", {{"input", input},
                                           {"n", n},
                                           {"seed", opt.seed},
                                           {"rng", "mt19937_64"},
                                           {"counts", qct::io::to_json(counts)},
                                           {"exact", qct::io::to_json(d)}}),
       opt);
  return 0;
}

struct CheatArgs {
  std::string party;
  std::string family = "published";
  std::size_t restarts = 32;
  long long budget = 20000;
};

int cmd_cheat(const std::string& input, const CheatArgs& args, const Options& opt) {
  const auto party = qct::party_from_string(args.party);
  const auto p = load_protocol(input, opt);
  const bool dk = is_dk_builtin(input);
  qct::SearchConfig config;
  config.restarts = args.restarts;
  config.budget = args.budget;
  config.seed = opt.seed;
  if (dk) config.claimed_bound = qct::dk::kClaimedCheatValue;
  const auto family = qct::dk::family_by_name(args.family, party, opt.target, p);
  const auto report = qct::optimize_cheat(p, family, opt.target, config);

  Json out = qct::io::document("cheat_report", {{"input", input}, {"search", qct::io::to_json(report)}});
  Json oracles = Json::object();
  std::vector<std::string> diagnostics = report.diagnostics;
  if (dk) {
    const qct::Dims dims = {3, 3};
    const auto rho0 = qct::partial_trace(qct::projector(qct::dk::psi0()), dims, {1});
    const auto rho1 = qct::partial_trace(qct::projector(qct::dk::psi1()), dims, {1});
    if (party == qct::Party::kBob) {
      oracles["helstrom"] = {{"value", qct::helstrom(rho0, rho1, 0.5)},
                             {"meaning", "upper bound for guessing Alice's bit from the mailbox"}};
    } else {
      const auto bound = qct::alice_preparation_bound(qct::dk::psi0(), qct::dk::psi1(), dims, 1, config);
      oracles["alice_preparation_bound"] = {
          {"value", bound.value},
          {"evaluations", bound.evaluations},
          {"meaning", "best average squared fidelity of one mailbox preparation to both honest ones"}};
      diagnostics.insert(diagnostics.end(), bound.diagnostics.begin(), bound.diagnostics.end());
    }
  }
  out["oracles"] = oracles;
  for (const auto& d : diagnostics) std::cerr << "qct: DIAGNOSTIC: " << d << "\n";
  emit(out, opt);
  return 0;
}

int cmd_dilate(const std::string& input, const std::string& party_name, std::size_t opponents,
               const std::string& context_name, const Options& opt) {
  qct::Protocol context = qct::dk::build_dk_honest();
  qct::Strategy original;
  const bool builtin = is_dk_builtin(input);
  const Json doc = builtin ? Json() : qct::io::read_file(input);
  if (!builtin && qct::io::kind_of(doc) == "strategy") {
    original = qct::io::strategy_from_json(doc);
    context = qct::with_strategy(load_protocol(context_name, opt), original);
  } else {
    context = builtin ? load_protocol(input, opt) : qct::io::protocol_from_json(doc);
    original = qct::party_from_string(party_name) == qct::Party::kAlice ? context.alice : context.bob;
  }
  const auto pure = qct::unitary_normal_form(original);
  const auto report = qct::verify_normal_form(context, original, pure, opponents, opt.seed);
  const bool ok = report.max_deviation < 1e-6;
  emit(qct::io::document("dilation_report", {{"input", input},
                                             {"party", qct::to_string(original.party)},
                                             {"seed", opt.seed},
                                             {"pure_strategy", qct::io::to_json(pure)},
                                             {"verification", qct::io::to_json(report)},
                                             {"reproduces_original", ok}}),
       opt);
  return ok ? 0 : 1;
}

int cmd_classical(const std::string& input, const Options& opt) {
  const auto c = load_classical(input);
  Json games = Json::array();
  double best = 0.0;
  for (int w = 0; w < 2; ++w) {
    const auto result = qct::solve_winning(c, w);
    best = std::max(best, result.value);
    games.push_back({{"alice_wins_on", w},
                     {"winner", qct::to_string(result.party)},
                     {"forced_outcome", qct::to_string(result.forced)},
                     {"value", result.value},
                     {"strategy", qct::io::to_json(result.strategy, c)}});
  }
  emit(qct::io::document("classical_report", {{"input", input},
                                              {"honest", qct::io::to_json(qct::classical_distribution(c))},
                                              {"games", games},
                                              {"bias", best - 0.5}}),
       opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate, verify and attack two-party quantum coin-tossing protocols", "qct"};
  app.fallthrough();
  Options opt;
  bool list_builtins = false;
  app.add_option("--seed", opt.seed, "64-bit seed for mt19937_64 (default 0)");
  app.add_option("--output", opt.output, "write the JSON report here instead of stdout");
  app.add_option("--tolerance", opt.tolerance, "correctness tolerance (default 1e-9)")
      ->check(CLI::PositiveNumber);
  app.add_option("--target", opt.target, "outcome a cheater tries to force (default 0)")
      ->check(CLI::IsMember({0, 1}));
  app.add_flag("--list-builtins", list_builtins, "list builtin protocol names");

  std::string input;
  auto* run = app.add_subcommand("run", "exact outcome distribution");
  run->add_option("input", input, "protocol JSON or builtin name")->required();

  std::uint64_t n = 100000;
  auto* sample = app.add_subcommand("sample", "sampled outcomes");
  sample->add_option("input", input, "protocol JSON or builtin name")->required();
  sample->add_option("-n,--samples", n, "number of runs (default 100000)")->check(CLI::PositiveNumber);

  CheatArgs cheat_args;
  auto* cheat = app.add_subcommand("cheat", "search a cheat family");
  cheat->add_option("input", input, "protocol JSON or builtin name")->required();
  cheat->add_option("--party", cheat_args.party, "alice or bob")->required();
  cheat->add_option("--family", cheat_args.family,
                    "published, honest, measure-respond, rotated-measure-respond, prep-unitary");
  cheat->add_option("--restarts", cheat_args.restarts, "simplex restarts (default 32)");
  cheat->add_option("--budget", cheat_args.budget, "total evaluations (default 20000)");

  std::string party = "alice";
  std::size_t opponents = 20;
  std::string context = "dk-honest";
  auto* dilate = app.add_subcommand("dilate", "unitary normal form of a strategy");
  dilate->add_option("input", input, "protocol or strategy JSON, or builtin name")->required();
  dilate->add_option("--party", party, "strategy to dilate when the input is a protocol");
  dilate->add_option("--opponents", opponents, "random opponents for verification (default 20)");
  dilate->add_option("--context", context, "protocol for a strategy document (default dk-honest)");

  auto* classical = app.add_subcommand("classical", "forcing strategies of a classical protocol");
  classical->add_option("input", input, "classical protocol JSON, xor or dictator")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list_builtins) {
    for (const auto& b : kBuiltins) std::cout << b.name << "\t" << b.kind << "\t" << b.summary << "\n";
    return 0;
  }
  try {
    if (run->parsed()) return cmd_run(input, opt);
    if (sample->parsed()) return cmd_sample(input, n, opt);
    if (cheat->parsed()) return cmd_cheat(input, cheat_args, opt);
    if (dilate->parsed()) return cmd_dilate(input, party, opponents, context, opt);
    if (classical->parsed()) return cmd_classical(input, opt);
    std::cerr << app.help();
    return 2;
  } catch (const qct::ParseError& e) {
    std::cerr << "qct: parse error: " << e.what() << "\n";
    return 2;
  } catch (const qct::Error& e) {
    std::cerr << "qct: validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "qct: error: " << e.what() << "\n";
    return 1;
  }
}
