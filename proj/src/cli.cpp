//===- cli.cpp - Command-line front end ---------------------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/cli.hpp"
#include "dpllt/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dpllt {

namespace {

struct CommonFlags {
  std::string theory = "auto";
  std::size_t step_limit = 1000000;
  std::size_t lemma_budget = 10000;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App *cmd, CommonFlags &flags) {
  cmd->add_option("--theory", flags.theory,
                  "empty or eq (default: eq when the problem has `a` lines)")
      ->check(CLI::IsMember({"auto", "empty", "eq"}));
  cmd->add_option("--step-limit", flags.step_limit, "solver step budget");
  cmd->add_option("--lemma-budget", flags.lemma_budget,
                  "step budget for each entailment check");
  cmd->add_option("--seed", flags.seed, "randomize decision phases");
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw std::runtime_error("cannot write " + path);
}

struct Loaded {
  Problem problem;
  std::unique_ptr<Theory> theory;
  EngineOptions engine;
};

Loaded load(const std::string &path, const CommonFlags &flags) {
  Loaded l;
  l.problem = parse_problem(slurp(path));
  TheoryKind kind = flags.theory == "eq" ? TheoryKind::Equality
                    : flags.theory == "empty"
                        ? TheoryKind::Empty
                        : (l.problem.table.has_theory_atoms()
                               ? TheoryKind::Equality
                               : TheoryKind::Empty);
  l.theory = make_theory(kind, l.problem.table);
  l.engine.lemma_budget = flags.lemma_budget;
  l.engine.phase_seed = flags.seed;
  return l;
}

LkSequent root_sequent(const Problem &p) { return {LiteralSet{}, p.clauses}; }

std::size_t violations(const std::vector<StepRecord> &log) {
  return static_cast<std::size_t>(std::count_if(
      log.begin(), log.end(), [](const StepRecord &r) { return !r.within_bound(); }));
}

std::size_t violations(const std::vector<TranslationRecord> &log) {
  return static_cast<std::size_t>(
      std::count_if(log.begin(), log.end(),
                    [](const TranslationRecord &r) { return !r.within_bound(); }));
}

void write_lkt(const std::string &path, const LkNode &tree, const Problem &p,
               const Theory &theory, std::ostream &out) {
  LktTranslation t = translate_proof(tree, theory);
  spit(path, write_certificate(t.proof, problem_digest(p)));
  spit(path + ".sizes", write_size_log(t.log));
  out << "lkt: " << lkt_node_count(t.proof) << " nodes, size "
      << lkt_tree_size(t.proof) << ", " << violations(t.log)
      << " translation bound violations\n";
}

int cmd_solve(const std::string &file, const CommonFlags &flags,
              const std::string &trace_out, std::ostream &out) {
  Loaded l = load(file, flags);
  RunResult r = run(l.problem.clauses, *l.theory, flags.step_limit, l.engine);
  if (!trace_out.empty())
    spit(trace_out, write_trace(r.trace));
  out << to_string(r.outcome) << '\n';
  if (r.outcome == Outcome::Sat) {
    out << 'v';
    for (Literal lit : r.model)
      out << ' ' << lit.to_int();
    out << " 0\n";
    return kExitSat;
  }
  return r.outcome == Outcome::Unsat ? kExitUnsat : 0;
}

int cmd_certify(const std::string &file, const CommonFlags &flags,
                const std::string &cert, const std::string &lkt,
                const std::string &trace_in, std::ostream &out,
                std::ostream &err) {
  Loaded l = load(file, flags);
  DpllTrace trace;
  if (trace_in.empty()) {
    RunResult r = run(l.problem.clauses, *l.theory, flags.step_limit, l.engine);
    if (r.outcome != Outcome::Unsat) {
      err << "certify: instance is " << to_string(r.outcome)
          << ", nothing to certify\n";
      return 1;
    }
    trace = std::move(r.trace);
  } else {
    trace = parse_trace(slurp(trace_in));
  }
  SimOptions options;
  options.engine = l.engine;
  LkCertificate c = certify_unsat(l.problem.clauses, trace, *l.theory, options);
  spit(cert, write_certificate(c.tree, problem_digest(l.problem)));
  spit(cert + ".sizes", write_size_log(c.log));
  out << "lkdpll: " << trace.size() << " steps, " << node_count(c.tree)
      << " nodes, size " << tree_size(c.tree) << ", " << violations(c.log)
      << " step bound violations\n";
  if (!lkt.empty())
    write_lkt(lkt, c.tree, l.problem, *l.theory, out);
  return 0;
}

int cmd_check(const std::string &cert, const std::string &file,
              const CommonFlags &flags, bool strict, std::ostream &out) {
  Loaded l = load(file, flags);
  std::string text = slurp(cert);
  std::string digest = problem_digest(l.problem);
  if (strict)
    l.theory->set_memoization(false);
  CheckResult result;
  if (read_certificate_header(text).calculus == Calculus::LkDpll) {
    LkNode tree = read_lk_certificate(text, root_sequent(l.problem), digest);
    LkCheckOptions options;
    options.require_complete = true;
    options.parallel = strict;
    result = check_tree(tree, *l.theory, options);
  } else {
    LktSequent root =
        initial_correspondence(root_sequent(l.problem)).target;
    LktNode tree = read_lkt_certificate(text, root, digest);
    result = check_lkt_tree(tree, *l.theory, true, strict);
  }
  if (!result) {
    out << "REJECTED: " << result.reason << '\n';
    return 1;
  }
  out << "ACCEPTED\n";
  return 0;
}

int cmd_translate(const std::string &cert, const std::string &file,
                  const CommonFlags &flags, const std::string &dest,
                  std::ostream &out) {
  Loaded l = load(file, flags);
  LkNode tree = read_lk_certificate(slurp(cert), root_sequent(l.problem),
                                    problem_digest(l.problem));
  LkCheckOptions options;
  options.require_complete = true;
  if (auto r = check_tree(tree, *l.theory, options); !r) {
    out << "REJECTED: " << r.reason << '\n';
    return 1;
  }
  write_lkt(dest, tree, l.problem, *l.theory, out);
  return 0;
}

int cmd_replay(const std::string &file, const std::string &trace_file,
               const CommonFlags &flags, std::ostream &out) {
  Loaded l = load(file, flags);
  DpllTrace trace = parse_trace(slurp(trace_file));
  DpllState s = replay(l.problem.clauses, trace, *l.theory, l.engine);
  out << trace.size() << " steps replayed\n";
  if (s.unsat)
    out << "UNSAT\n";
  else
    out << "trail " << to_string(s.trail) << '\n';
  return 0;
}

} // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out,
                std::ostream &err) {
  CLI::App app{"Certifying DPLL(T) kernel", "dpllt"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string file, cert, lkt, trace, problem, dest;
  bool strict = false;

  auto *solve = app.add_subcommand("solve", "decide a problem");
  solve->add_option("file", file, "problem file")->required();
  solve->add_option("--trace", trace, "write the solver trace here");
  add_common(solve, flags);

  auto *certify = app.add_subcommand("certify", "write proof certificates");
  certify->add_option("file", file, "problem file")->required();
  certify->add_option("--out", cert, "LKDPLL certificate path")->required();
  certify->add_option("--lkt", lkt, "also write an LK(T)p certificate");
  certify->add_option("--trace", trace,
                      "certify this trace instead of solving");
  add_common(certify, flags);

  auto *check = app.add_subcommand("check", "check a certificate");
  check->add_option("cert", cert, "certificate file")->required();
  check->add_option("--problem", problem, "problem file")->required();
  check->add_flag("--strict", strict,
                  "no theory cache, root subtrees checked in parallel");
  add_common(check, flags);

  auto *translate =
      app.add_subcommand("translate", "LKDPLL certificate to LK(T)p");
  translate->add_option("cert", cert, "LKDPLL certificate")->required();
  translate->add_option("--problem", problem, "problem file")->required();
  translate->add_option("--out", dest, "LK(T)p certificate path")->required();
  add_common(translate, flags);

  auto *replay_cmd = app.add_subcommand("replay", "validate a trace");
  replay_cmd->add_option("file", file, "problem file")->required();
  replay_cmd->add_option("trace", trace, "trace file")->required();
  add_common(replay_cmd, flags);

  std::vector<std::string> argv_store{"dpllt"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_store)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve)
      return cmd_solve(file, flags, trace, out);
    if (*certify)
      return cmd_certify(file, flags, cert, lkt, trace, out, err);
    if (*check)
      return cmd_check(cert, problem, flags, strict, out);
    if (*translate)
      return cmd_translate(cert, problem, flags, dest, out);
    return cmd_replay(file, trace, flags, out);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace dpllt
