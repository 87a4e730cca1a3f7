#include "rexcgt/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <optional>

#include "rexcgt/canonical.hpp"
#include "rexcgt/census.hpp"
#include "rexcgt/context_oracle.hpp"
#include "rexcgt/errors.hpp"
#include "rexcgt/gameprops.hpp"
#include "rexcgt/order.hpp"
#include "rexcgt/rexboard.hpp"

namespace rexcgt::cli {

PosetRef resolve_poset(const std::string& spec) {
  if (spec == "bool") return Poset::boolean();
  if (spec == "one") return Poset::unit();
  if (spec == "chain3") return Poset::chain("chain3", {"bot", "mid", "top"});
  if (!std::filesystem::exists(spec)) throw InputError("unknown poset '" + spec + "' (expected bool, one, chain3 or a file)");
  return parse_poset(read_file(spec));
}

Game parse_expression(const std::string& text, const PosetRef& over) {
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') --depth;
    if (c == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  terms.push_back(cur);
  Game total;
  for (auto& t : terms) {
    auto b = t.find_first_not_of(" \t");
    auto e = t.find_last_not_of(" \t");
    std::string term = b == std::string::npos ? "" : t.substr(b, e - b + 1);
    if (term.empty()) throw InputError("empty term in '" + text + "'");
    Game g;
    if (term == "*") g = star();
    else if (term == "0" && !over->find("0")) g = zero();
    else g = parse_game(term, over);
    total = total ? sum(total, g) : g;
  }
  return total;
}

namespace {

const char* yn(bool b) { return b ? "true" : "false"; }

struct Options {
  std::string poset = "bool";
  std::vector<std::string> exprs;
  std::string file;
  bool trace = false;
  std::uint64_t budget = kDefaultBudget;
  int depth = 0;
  int width = 2;
  int max_depth = 3;
  bool parallel = false;
  bool checks = false;
};

// A game from either a position file or the first --expr.
Game subject(const Options& o, std::ostream& out, bool describe) {
  if (!o.file.empty()) {
    RegionPosition r = load_position(o.file);
    OutcomePoset op = outcome_poset(r, o.parallel ? Exec::Parallel : Exec::Serial);
    if (describe) out << "poset: " << op.poset->name() << '\n';
    return game_form(r, op);
  }
  if (o.exprs.empty()) throw InputError("need a position file or --expr");
  return parse_expression(o.exprs[0], resolve_poset(o.poset));
}

int cmd_outcome(const Options& o, std::ostream& out) {
  Game g = subject(o, out, true);
  Outcome oc = outcome(g);
  out << "left_first: " << yn(oc.left_first) << "\nright_first: " << yn(oc.right_first)
      << "\noutcome: " << to_string(oc.cls()) << '\n';
  return kOk;
}

int cmd_gameform(const Options& o, std::ostream& out) {
  Game g = subject(o, out, false);
  out << serialize_poset(*g.over()) << "game: " << serialize(g) << "\nfollowers: " << follower_count(g)
      << "\nparity: " << to_string(g.parity()) << '\n';
  return kOk;
}

int cmd_canon(const Options& o, std::ostream& out) {
  Game g = subject(o, out, false);
  CanonicalResult r = canonical_form(g, {RewriteOrder::DominatedFirst, o.trace});
  out << serialize(r.form) << '\n';
  if (o.trace) out << r.trace.format();
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (o.exprs.size() != 2) throw InputError("compare needs exactly two --expr");
  const PosetRef over = resolve_poset(o.poset);
  const std::string& a = o.exprs[0];
  const std::string& b = o.exprs[1];
  Game g = parse_expression(a, over), h = parse_expression(b, over);
  if (g.over() != h.over()) throw InputError("expressions live over different posets");
  out << "A = " << a << "\nB = " << b << '\n';
  out << "A <= B: " << yn(leq_intrinsic(g, h)) << "\nB <= A: " << yn(leq_intrinsic(h, g)) << '\n';
  out << "A <| B: " << yn(tri(g, h)) << "\nB <| A: " << yn(tri(h, g)) << '\n';
  out << "A == B: " << yn(equivalent(g, h)) << "\nB == A: " << yn(equivalent(h, g)) << '\n';
  if (o.depth > 0) {
    ContextOracle oracle(g.over(), o.depth, o.width);
    oracle.evaluate({g, h}, o.parallel ? Exec::Parallel : Exec::Serial);
    for (auto [x, y, label] : {std::tuple{g, h, "A <=c B"}, std::tuple{h, g, "B <=c A"}}) {
      OracleVerdict v = oracle.leq(x, y);
      out << label << ": " << yn(v.leq);
      if (v.witness) out << " (refuted by context " << *v.witness << ")";
      out << '\n';
    }
  }
  return kOk;
}

int cmd_props(const Options& o, std::ostream& out) {
  Game g = subject(o, out, false);
  out << format_report(analyze(g));
  return kOk;
}

int cmd_distinct(const Options& o, std::ostream& out) {
  CensusResult r = distinct_games(resolve_poset(o.poset), o.max_depth);
  out << "poset: " << o.poset << "\nmax_depth: " << o.max_depth << "\ncandidates: " << r.candidates
      << "\nqualifying: " << r.qualifying.size() << "\nclasses: " << r.classes.size() << '\n';
  for (const auto& c : r.classes) out << serialize(c.canonical) << '\n';
  return kOk;
}

int cmd_glue(const Options& o, std::ostream& out) {
  if (o.file.empty()) throw InputError("glue needs a manifest file");
  GlueSpec spec = load_manifest(o.file);
  GlueReport r = run_glue(spec);
  for (std::size_t i = 0; i < spec.names.size(); ++i)
    out << "part " << spec.names[i] << ": " << serialize(r.part_canonical[i]) << '\n';
  out << "canonical: " << serialize(r.canonical) << "\noutcome: " << to_string(r.outcome.cls())
      << "\nfull_outcome: " << to_string(r.full_outcome.cls()) << '\n';
  return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  if (o.file.empty()) throw InputError("oracle needs a board or region file");
  RegionPosition r = load_position(o.file);
  if (r.terminals.size() != 2) throw InputError("oracle needs exactly two terminals");
  if (o.checks) {
    out << concrete_order_checks(r).format();
    return kOk;
  }
  Outcome oc = oracle_outcome(two_terminal_game(r, r.terminals[0], r.terminals[1]));
  out << "empty_cells: " << r.empty_cells().size() << "\nleft_first: " << yn(oc.left_first)
      << "\nright_first: " << yn(oc.right_first) << "\noutcome: " << to_string(oc.cls()) << '\n';
  return kOk;
}

int cmd_selftest(std::ostream& out) {
  const PosetRef& b = Poset::boolean();
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    failures += !ok;
  };
  Game ss = sum(star(), star());
  check("*+* is equivalent to 0", equivalent(ss, zero()));
  check("*+* canonicalizes to 0", canonical_form(ss).form == zero());
  Game w = parse_game("{{bot|bot}|{top|top}}", b);
  Game top = Game::atom(b, b->top()), bot = Game::atom(b, b->bottom());
  check("top <= W <= bot but not top <= bot",
        leq_intrinsic(top, w) && leq_intrinsic(w, bot) && !leq_intrinsic(top, bot));
  check("{bot|top} is premotive and *-antimonotone", qualifies(parse_game("{bot|top}", b)));
  return failures == 0 ? kOk : kPreconditionFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Game forms over posets, canonical forms, and Rex region analysis", "rexcgt"};
  app.require_subcommand(1, 1);
  Options o;
  auto common = [&](CLI::App* sub, bool file) {
    sub->add_option("--poset", o.poset, "bool, one, chain3 or a poset file");
    sub->add_option("--expr", o.exprs, "game expression (repeatable)");
    sub->add_option("--budget", o.budget, "node budget for exponential searches");
    sub->add_flag("--parallel", o.parallel, "use the OpenMP kernels");
    if (file) sub->add_option("file", o.file, "board, region or manifest file");
  };
  auto* outcome_cmd = app.add_subcommand("outcome", "outcome class of a position or expression");
  auto* gameform_cmd = app.add_subcommand("gameform", "game form of a position or expression");
  auto* canon_cmd = app.add_subcommand("canon", "canonical form");
  auto* compare_cmd = app.add_subcommand("compare", "intrinsic order between two expressions");
  auto* props_cmd = app.add_subcommand("props", "parity, premotivity and *-antimonotonicity");
  auto* distinct_cmd = app.add_subcommand("distinct", "classes of premotive *-antimonotone games");
  auto* glue_cmd = app.add_subcommand("glue", "analyze a board decomposed into regions");
  auto* oracle_cmd = app.add_subcommand("oracle", "minimax on a two-terminal position");
  auto* selftest_cmd = app.add_subcommand("selftest", "quick internal consistency checks");
  for (auto* s : {outcome_cmd, gameform_cmd, canon_cmd, props_cmd, glue_cmd, oracle_cmd}) common(s, true);
  common(compare_cmd, false);
  common(distinct_cmd, false);
  common(selftest_cmd, false);
  canon_cmd->add_flag("--trace", o.trace, "print the rewrite steps");
  compare_cmd->add_option("--depth", o.depth, "also run the context oracle at this depth");
  compare_cmd->add_option("--width", o.width, "context oracle width");
  distinct_cmd->add_option("--max-depth", o.max_depth, "maximum game depth");
  oracle_cmd->add_flag("--checks", o.checks, "run the concrete order checks");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    BudgetScope budget(o.budget);
    if (outcome_cmd->parsed()) return cmd_outcome(o, out);
    if (gameform_cmd->parsed()) return cmd_gameform(o, out);
    if (canon_cmd->parsed()) return cmd_canon(o, out);
    if (compare_cmd->parsed()) return cmd_compare(o, out);
    if (props_cmd->parsed()) return cmd_props(o, out);
    if (distinct_cmd->parsed()) return cmd_distinct(o, out);
    if (glue_cmd->parsed()) return cmd_glue(o, out);
    if (oracle_cmd->parsed()) return cmd_oracle(o, out);
    return cmd_selftest(out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPreconditionFailed;
  }
}

}  // namespace rexcgt::cli
