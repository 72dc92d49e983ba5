//===- io.cpp - Problem, trace and certificate text formats -------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace dpllt {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> tokens(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;)
    out.push_back(tok);
  return out;
}

template <class Int> std::optional<Int> to_number(std::string_view tok) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    return std::nullopt;
  return value;
}

} // namespace

//===----------------------------------------------------------------------===//
// Problems
//===----------------------------------------------------------------------===//

Problem parse_problem(std::string_view text) {
  Problem problem;
  std::optional<std::size_t> declared_clauses;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  for (const std::string &raw : split_lines(text)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    auto toks = tokens(line);
    if (toks.empty() || toks[0] == "c")
      continue;
    last_line = line_no;
    if (toks[0] == "p") {
      if (declared_clauses)
        throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnft")
        throw ParseError(line_no, "expected `p cnft <atoms> <clauses>`");
      auto natoms = to_number<Atom>(toks[2]);
      auto nclauses = to_number<std::size_t>(toks[3]);
      if (!natoms || !nclauses)
        throw ParseError(line_no, "header counts must be non-negative");
      problem.table.set_atom_count(*natoms);
      declared_clauses = *nclauses;
      continue;
    }
    if (!declared_clauses)
      throw ParseError(line_no, "missing `p cnft` header");
    if (toks[0] == "a") {
      if (toks.size() != 5 || (toks[2] != "eq" && toks[2] != "neq"))
        throw ParseError(line_no, "expected `a <id> eq|neq <c1> <c2>`");
      auto id = to_number<Atom>(toks[1]);
      if (!id || !problem.table.known(*id))
        throw ParseError(line_no, "atom id out of range: " + toks[1]);
      if (!problem.table.declare(*id, toks[3], toks[4], toks[2] == "eq"))
        throw ParseError(line_no, "atom " + toks[1] + " declared twice");
      continue;
    }
    std::vector<Literal> lits;
    bool terminated = false;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      auto v = to_number<int>(toks[i]);
      if (!v)
        throw ParseError(line_no, "not a literal: " + toks[i]);
      if (*v == 0) {
        if (i + 1 != toks.size())
          throw ParseError(line_no, "tokens after the terminating 0");
        terminated = true;
        break;
      }
      Literal l = Literal::from_int(*v);
      if (!problem.table.known(l.atom()))
        throw ParseError(line_no, "atom out of range: " + toks[i]);
      lits.push_back(l);
    }
    if (!terminated)
      throw ParseError(line_no, "clause must end with 0");
    if (lits.empty())
      throw ParseError(line_no,
                       "empty clause: the problem is trivially unsatisfiable, "
                       "no proof search needed");
    problem.clauses.push_back(Clause(std::move(lits)));
  }
  if (!declared_clauses)
    throw ParseError(line_no, "missing `p cnft` header");
  if (problem.clauses.count() != *declared_clauses)
    throw ParseError(last_line, "header declares " +
                                    std::to_string(*declared_clauses) +
                                    " clauses, found " +
                                    std::to_string(problem.clauses.count()));
  return problem;
}

std::string write_problem(const Problem &problem) {
  std::ostringstream out;
  out << "p cnft " << problem.table.atom_count() << ' '
      << problem.clauses.count() << '\n';
  const auto &names = problem.table.constants();
  for (const auto &[atom, eq] : problem.table.payloads())
    out << "a " << atom << (eq.is_equality ? " eq " : " neq ")
        << names.at(eq.lhs) << ' ' << names.at(eq.rhs) << '\n';
  for (const Clause &c : problem.clauses) {
    for (Literal l : c)
      out << l.to_int() << ' ';
    out << "0\n";
  }
  return out.str();
}

std::string problem_digest(const Problem &problem) {
  return hex_digest(write_problem(problem));
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string sequent_digest(const LkSequent &s) {
  return hex_digest(to_string(s));
}

std::string sequent_digest(const LktSequent &s) {
  return hex_digest(to_string(s));
}

//===----------------------------------------------------------------------===//
// Certificates
//===----------------------------------------------------------------------===//

namespace {

const char *tag(Calculus c) { return c == Calculus::LkDpll ? "lkdpll" : "lkt"; }

std::string lits_text(const std::vector<Literal> &lits) {
  std::string out = std::to_string(lits.size());
  for (Literal l : lits)
    out += ' ' + to_string(l);
  return out;
}

std::string params(const LkRule &r) {
  return std::visit(
      [](const auto &x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, rule::Split> ||
                      std::is_same_v<T, rule::Assert>)
          return to_string(x.lit);
        else if constexpr (std::is_same_v<T, rule::Subsume> ||
                           std::is_same_v<T, rule::Resolve> ||
                           std::is_same_v<T, rule::InvResolve>)
          return to_string(x.lit) + ' ' + std::to_string(x.clause);
        else if constexpr (std::is_same_v<T, rule::Weak1>)
          return std::to_string(x.clause);
        else if constexpr (std::is_same_v<T, rule::Weak2>)
          return lits_text(x.premise_context.literals());
        else if constexpr (std::is_same_v<T, rule::Cut>)
          return lits_text(x.lits);
        else
          return "";
      },
      r);
}

std::string params(const LktRule &r) {
  return std::visit(
      [](const auto &x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, lkt::OrP>)
          return std::to_string(x.side);
        else if constexpr (std::is_same_v<T, lkt::Polarize>)
          return to_string(x.lit) + (x.zone == lkt::Zone::Atom ? " a" : " s");
        else if constexpr (std::is_same_v<T, lkt::Decide>)
          return to_string(x.positive);
        else if constexpr (std::is_same_v<T, lkt::AnalyticCut>)
          return to_string(x.lit);
        else if constexpr (std::is_same_v<T, lkt::GeneralCut>)
          return lits_text(x.lits);
        else
          return "";
      },
      r);
}

template <class Node>
void write_records(std::ostringstream &out, const Node &n) {
  out << sequent_digest(n.sequent) << ' ' << n.children.size() << ' ';
  if (n.open()) {
    out << "open\n";
    return;
  }
  out << rule_name(*n.rule);
  std::string p = params(*n.rule);
  if (!p.empty())
    out << ' ' << p;
  out << '\n';
  for (const Node &child : n.children)
    write_records(out, child);
}

template <class Node>
std::size_t count_nodes(const Node &n) {
  std::size_t total = 1;
  for (const Node &child : n.children)
    total += count_nodes(child);
  return total;
}

template <class Node>
std::string write_any(Calculus c, const Node &tree, const std::string &digest) {
  std::ostringstream out;
  out << tag(c) << " 1\nproblem " << digest << "\nnodes "
      << count_nodes(tree) << '\n';
  write_records(out, tree);
  out << "end\n";
  return out.str();
}

[[noreturn]] void cert_error(std::size_t line, const std::string &what) {
  throw CertificateError("certificate line " + std::to_string(line) + ": " +
                         what);
}

/// Token cursor over one record line.
class Cursor {
public:
  Cursor(std::vector<std::string> toks, std::size_t line)
      : toks_(std::move(toks)), line_(line) {}

  const std::string &word() {
    if (pos_ >= toks_.size())
      cert_error(line_, "record ends early");
    return toks_[pos_++];
  }
  template <class Int> Int number() {
    const std::string &w = word();
    auto v = to_number<Int>(w);
    if (!v)
      cert_error(line_, "not a number: " + w);
    return *v;
  }
  Literal literal() {
    int v = number<int>();
    if (v == 0)
      cert_error(line_, "0 is not a literal");
    return Literal::from_int(v);
  }
  std::vector<Literal> literal_list() {
    std::size_t n = number<std::size_t>();
    std::vector<Literal> out;
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(literal());
    return out;
  }
  Formula formula() {
    const std::string &w = word();
    auto binary = [&](auto make) {
      Formula a = formula();
      Formula b = formula();
      return make(std::move(a), std::move(b));
    };
    if (w == "T")
      return Formula::top();
    if (w == "F")
      return Formula::bottom();
    if (w == "&+")
      return binary(Formula::and_p);
    if (w == "|+")
      return binary(Formula::or_p);
    if (w == "&-")
      return binary(Formula::and_n);
    if (w == "|-")
      return binary(Formula::or_n);
    auto v = to_number<int>(w);
    if (!v || *v == 0)
      cert_error(line_, "bad formula token: " + w);
    return Formula::lit(Literal::from_int(*v));
  }
  void done() {
    if (pos_ != toks_.size())
      cert_error(line_, "trailing tokens");
  }
  std::size_t line() const { return line_; }

private:
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::optional<LkRule> parse_rule(const std::string &name, Cursor &c,
                                 rule::Split *) {
  if (name == "open")
    return std::nullopt;
  if (name == "Split")
    return rule::Split{c.literal()};
  if (name == "Empty")
    return rule::Empty{};
  if (name == "Assert")
    return rule::Assert{c.literal()};
  if (name == "Subsume") {
    Literal l = c.literal();
    return rule::Subsume{l, c.number<std::size_t>()};
  }
  if (name == "Resolve") {
    Literal l = c.literal();
    return rule::Resolve{l, c.number<std::size_t>()};
  }
  if (name == "InvResolve") {
    Literal l = c.literal();
    return rule::InvResolve{l, c.number<std::size_t>()};
  }
  if (name == "Weak1")
    return rule::Weak1{c.number<std::size_t>()};
  if (name == "Weak2")
    return rule::Weak2{LiteralSet(c.literal_list())};
  if (name == "Cut")
    return rule::Cut{c.literal_list()};
  cert_error(c.line(), "unknown rule " + name);
}

std::optional<LktRule> parse_rule(const std::string &name, Cursor &c,
                                  lkt::AndP *) {
  if (name == "open")
    return std::nullopt;
  if (name == "and+")
    return lkt::AndP{};
  if (name == "or+")
    return lkt::OrP{c.number<int>()};
  if (name == "top+")
    return lkt::TopP{};
  if (name == "init")
    return lkt::Init{};
  if (name == "init-T")
    return lkt::InitTheory{};
  if (name == "release")
    return lkt::Release{};
  if (name == "and-")
    return lkt::AndN{};
  if (name == "or-")
    return lkt::OrN{};
  if (name == "bot-")
    return lkt::BottomN{};
  if (name == "store")
    return lkt::Store{};
  if (name == "polarize") {
    Literal l = c.literal();
    const std::string &z = c.word();
    if (z != "a" && z != "s")
      cert_error(c.line(), "polarize zone must be a or s");
    return lkt::Polarize{l, z == "a" ? lkt::Zone::Atom : lkt::Zone::Store};
  }
  if (name == "decide")
    return lkt::Decide{c.formula()};
  if (name == "theory-close")
    return lkt::TheoryClose{};
  if (name == "acut")
    return lkt::AnalyticCut{c.literal()};
  if (name == "gcut")
    return lkt::GeneralCut{c.literal_list()};
  cert_error(c.line(), "unknown rule " + name);
}

std::vector<LkSequent> premises_of(const LkSequent &s, const LkRule &r,
                                   std::size_t line) {
  try {
    return expected_premises(s, r);
  } catch (const std::invalid_argument &e) {
    cert_error(line, rule_name(r) + ": " + e.what());
  }
}

std::vector<LktSequent> premises_of(const LktSequent &s, const LktRule &r,
                                    std::size_t line) {
  try {
    return expected_lkt_premises(s, r);
  } catch (const std::invalid_argument &e) {
    cert_error(line, e.what());
  } catch (const PolarityConflict &e) {
    cert_error(line, e.what());
  }
}

template <class Node, class Tag> class Reader {
public:
  Reader(const std::vector<std::string> &lines, std::size_t first)
      : lines_(lines), next_(first) {}

  Node read(const decltype(Node::sequent) &expected) {
    while (next_ < lines_.size() && tokens(lines_[next_]).empty())
      ++next_;
    if (next_ >= lines_.size())
      cert_error(next_, "truncated: missing node record");
    std::size_t line = next_ + 1;
    auto toks = tokens(lines_[next_++]);
    if (toks[0] == "end")
      cert_error(line, "truncated: `end` before the tree is complete");
    Cursor c(std::move(toks), line);
    std::string digest = c.word();
    std::size_t nchildren = c.number<std::size_t>();
    std::string name = c.word();
    auto r = parse_rule(name, c, static_cast<Tag *>(nullptr));
    c.done();
    if (digest != sequent_digest(expected))
      cert_error(line, "digest mismatch for " + to_string(expected));
    Node node{expected, r, {}};
    ++count_;
    if (!r) {
      if (nchildren != 0)
        cert_error(line, "open leaf with children");
      return node;
    }
    auto premises = premises_of(expected, *r, line);
    if (premises.size() != nchildren)
      cert_error(line, "arity mismatch: " + name + " has " +
                           std::to_string(premises.size()) +
                           " premises, record says " +
                           std::to_string(nchildren));
    for (const auto &p : premises)
      node.children.push_back(read(p));
    return node;
  }

  std::size_t next() const { return next_; }
  std::size_t count() const { return count_; }

private:
  const std::vector<std::string> &lines_;
  std::size_t next_;
  std::size_t count_ = 0;
};

template <class Node, class Tag>
Node read_any(Calculus calculus, std::string_view text,
              const decltype(Node::sequent) &root,
              const std::string &problem_digest) {
  CertificateHeader h = read_certificate_header(text);
  if (h.calculus != calculus)
    throw CertificateError(std::string("expected a ") + tag(calculus) +
                           " certificate");
  if (h.problem != problem_digest)
    throw CertificateError("certificate is for a different problem");
  auto lines = split_lines(text);
  Reader<Node, Tag> reader(lines, 3);
  Node tree = reader.read(root);
  if (reader.count() != h.nodes)
    throw CertificateError("header announces " + std::to_string(h.nodes) +
                           " nodes, found " + std::to_string(reader.count()));
  std::size_t i = reader.next();
  while (i < lines.size() && tokens(lines[i]).empty())
    ++i;
  if (i >= lines.size() || tokens(lines[i]) != std::vector<std::string>{"end"})
    cert_error(i + 1, "expected `end`");
  for (++i; i < lines.size(); ++i)
    if (!tokens(lines[i]).empty())
      cert_error(i + 1, "content after `end`");
  return tree;
}

} // namespace

CertificateHeader read_certificate_header(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.size() < 3)
    throw CertificateError("certificate header is incomplete");
  CertificateHeader h;
  auto first = tokens(lines[0]);
  if (first == std::vector<std::string>{"lkdpll", "1"})
    h.calculus = Calculus::LkDpll;
  else if (first == std::vector<std::string>{"lkt", "1"})
    h.calculus = Calculus::Lkt;
  else
    cert_error(1, "unknown certificate kind");
  auto second = tokens(lines[1]);
  if (second.size() != 2 || second[0] != "problem" || second[1].size() != 16)
    cert_error(2, "expected `problem <digest>`");
  h.problem = second[1];
  auto third = tokens(lines[2]);
  if (third.size() != 2 || third[0] != "nodes")
    cert_error(3, "expected `nodes <count>`");
  auto n = to_number<std::size_t>(third[1]);
  if (!n)
    cert_error(3, "bad node count");
  h.nodes = *n;
  return h;
}

std::string write_certificate(const LkNode &tree, const std::string &digest) {
  return write_any(Calculus::LkDpll, tree, digest);
}

std::string write_certificate(const LktNode &tree, const std::string &digest) {
  return write_any(Calculus::Lkt, tree, digest);
}

LkNode read_lk_certificate(std::string_view text, const LkSequent &root,
                           const std::string &problem_digest) {
  return read_any<LkNode, rule::Split>(Calculus::LkDpll, text, root,
                                       problem_digest);
}

LktNode read_lkt_certificate(std::string_view text, const LktSequent &root,
                             const std::string &problem_digest) {
  return read_any<LktNode, lkt::AndP>(Calculus::Lkt, text, root,
                                      problem_digest);
}

Formula parse_formula(std::string_view text) {
  Cursor c(tokens(std::string(text)), 1);
  Formula f = c.formula();
  c.done();
  return f;
}

//===----------------------------------------------------------------------===//
// Traces and size logs
//===----------------------------------------------------------------------===//

std::string write_trace(const DpllTrace &trace) {
  std::ostringstream out;
  auto clause = [&](const Clause &c) {
    for (Literal l : c)
      out << ' ' << l.to_int();
    out << " 0";
  };
  for (const DpllStep &s : trace) {
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, step::Fail>)
            out << "fail " << x.clause;
          else if constexpr (std::is_same_v<T, step::Decide>)
            out << "decide " << x.lit.to_int();
          else if constexpr (std::is_same_v<T, step::Backtrack>)
            out << "backtrack " << x.clause;
          else if constexpr (std::is_same_v<T, step::UnitPropagate>)
            out << "unit " << x.clause << ' ' << x.lit.to_int();
          else if constexpr (std::is_same_v<T, step::TheoryPropagate>)
            out << "tprop " << x.lit.to_int();
          else if constexpr (std::is_same_v<T, step::TBackjump>) {
            out << "backjump " << x.clause << ' ' << x.level << ' '
                << x.lit.to_int();
            clause(x.backjump_clause);
          } else if constexpr (std::is_same_v<T, step::TLearn>) {
            out << "learn";
            clause(x.clause);
          } else if constexpr (std::is_same_v<T, step::TForget>)
            out << "forget " << x.clause;
          else
            out << "restart";
        },
        s);
    out << '\n';
  }
  return out.str();
}

DpllTrace parse_trace(std::string_view text) {
  DpllTrace trace;
  std::size_t line_no = 0;
  for (const std::string &raw : split_lines(text)) {
    ++line_no;
    auto toks = tokens(raw.substr(0, raw.find('#')));
    if (toks.empty())
      continue;
    std::size_t pos = 1;
    auto index = [&]() -> std::size_t {
      if (pos >= toks.size())
        throw ParseError(line_no, "missing clause index");
      auto v = to_number<std::size_t>(toks[pos++]);
      if (!v)
        throw ParseError(line_no, "bad index: " + toks[pos - 1]);
      return *v;
    };
    auto literal = [&]() {
      if (pos >= toks.size())
        throw ParseError(line_no, "missing literal");
      auto v = to_number<int>(toks[pos++]);
      if (!v || *v == 0)
        throw ParseError(line_no, "bad literal: " + toks[pos - 1]);
      return Literal::from_int(*v);
    };
    auto clause = [&]() {
      std::vector<Literal> lits;
      while (true) {
        if (pos >= toks.size())
          throw ParseError(line_no, "clause must end with 0");
        auto v = to_number<int>(toks[pos++]);
        if (!v)
          throw ParseError(line_no, "bad literal: " + toks[pos - 1]);
        if (*v == 0)
          return Clause(std::move(lits));
        lits.push_back(Literal::from_int(*v));
      }
    };
    const std::string &op = toks[0];
    if (op == "fail")
      trace.push_back(step::Fail{index()});
    else if (op == "decide")
      trace.push_back(step::Decide{literal()});
    else if (op == "backtrack")
      trace.push_back(step::Backtrack{index()});
    else if (op == "unit") {
      std::size_t i = index();
      trace.push_back(step::UnitPropagate{i, literal()});
    } else if (op == "tprop")
      trace.push_back(step::TheoryPropagate{literal()});
    else if (op == "backjump") {
      std::size_t i = index();
      std::size_t level = index();
      Literal l = literal();
      trace.push_back(step::TBackjump{i, level, clause(), l});
    } else if (op == "learn")
      trace.push_back(step::TLearn{clause()});
    else if (op == "forget")
      trace.push_back(step::TForget{index()});
    else if (op == "restart")
      trace.push_back(step::Restart{});
    else
      throw ParseError(line_no, "unknown step " + op);
    if (pos != toks.size())
      throw ParseError(line_no, "trailing tokens");
  }
  return trace;
}

std::string write_size_log(const std::vector<StepRecord> &log) {
  std::ostringstream out;
  out << "# step kind leaves max_size total bound strict_bound ok\n";
  for (const StepRecord &r : log)
    out << r.step_index << ' ' << r.kind << ' ' << r.leaves_replaced << ' '
        << r.max_leaf_size << ' ' << r.total_size << ' ' << r.bound << ' '
        << r.strict_bound << ' ' << (r.within_bound() ? "ok" : "VIOLATION")
        << '\n';
  return out.str();
}

std::string write_size_log(const std::vector<TranslationRecord> &log) {
  std::ostringstream out;
  out << "# node rule emitted formula_count bound symbol_count ok\n";
  for (std::size_t i = 0; i < log.size(); ++i) {
    const TranslationRecord &r = log[i];
    out << i << ' ' << r.rule << ' ' << r.emitted << ' ' << r.formula_count
        << ' ' << r.bound() << ' ' << r.symbol_count << ' '
        << (r.within_bound() ? "ok" : "VIOLATION") << '\n';
  }
  return out.str();
}

} // namespace dpllt
