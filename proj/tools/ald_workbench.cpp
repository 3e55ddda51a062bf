// Command-line front end: decisions, normal forms, evaluations and the
// relation / freeness experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

#include "ald/ald.hpp"
#include "ald/experiments.hpp"
#include "ald/pb_diagram.hpp"

namespace {

using json = nlohmann::json;
using namespace ald;

enum Exit : int { kEqual = 0, kNotEqual = 1, kUnknown = 2, kUsage = 64 };

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  int max_size = 0;
  std::size_t budget = 0;

  SearchCaps caps() const {
    SearchCaps c;
    if (max_size > 0) c.size_cap = static_cast<std::size_t>(max_size);
    if (budget > 0) c.step_cap = budget;
    return c;
  }
};

json seq_json(const TermSeq& s) {
  json out = json::array();
  for (const Term& t : s.entries()) out.push_back(render_term(t));
  return out;
}

json diagram_json(const PBDiagram& d) {
  return {{"dom", d.dom.render()}, {"braid", render_braid(d.braid)}, {"cod", d.cod.render()}};
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

int cmd_decide_ald(const Globals& g, const std::string& a, const std::string& b) {
  AldDecision d = decide_ald_detailed(parse_term(a), parse_term(b), LdOracle{g.caps()});
  json j{{"verdict", verdict_name(d.verdict)},
         {"i_left", render_term(d.left.i_part)},
         {"i_right", render_term(d.right.i_part)},
         {"j_left", seq_json(d.left.j_entries)},
         {"j_right", seq_json(d.right.j_entries)}};
  std::string text = std::string("verdict  ") + verdict_name(d.verdict) + "\n";
  text += "I left   " + render_term(d.left.i_part) + "\nI right  " + render_term(d.right.i_part) + "\n";
  text += "J left   " + render_seq(d.left.j_entries) + "\nJ right  " + render_seq(d.right.j_entries) + "\n";
  if (!d.reason.empty()) text += "reason   " + d.reason + "\n";
  emit(g, j, text);
  switch (d.verdict) {
    case Verdict::Equal: return kEqual;
    case Verdict::NotEqual: return kNotEqual;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

int cmd_decide_ld(const Globals& g, const std::string& a, const std::string& b) {
  Term s = parse_term(a), t = parse_term(b);
  if (s.has_circ() || t.has_circ()) throw std::invalid_argument("decide-ld takes *-terms only");
  LdVerdict v = decide_ld(s, t, g.caps());
  emit(g, json{{"verdict", ld_verdict_name(v)}}, std::string("verdict  ") + ld_verdict_name(v) + "\n");
  if (v == LdVerdict::Equal) return kEqual;
  if (v == LdVerdict::Unknown) return kUnknown;
  return kNotEqual;
}

int cmd_normalize(const Globals& g, const std::string& a) {
  Term t = parse_term(a);
  Term special = specialize(t);
  auto trace = derive_special(t);
  json steps = json::array();
  std::string text = "special  " + render_term(special) + "\ntrace    " + std::to_string(trace.size()) + " steps\n";
  Term cur = t;
  for (const auto& s : trace) {
    cur = apply_law(cur, s);
    steps.push_back({{"step", render_instance(s)}, {"result", render_term(cur)}});
    text += "  " + render_instance(s) + "  ->  " + render_term(cur) + "\n";
  }
  emit(g, json{{"special", render_term(special)}, {"trace", steps}}, text);
  return kEqual;
}

int cmd_eval(const Globals& g, const std::string& a, const std::string& gamma_text, const std::string& mode) {
  Term t = parse_term(a);
  PBWord gamma = parse_pb_word(gamma_text);
  if (mode == "diagram") {
    PBDiagram d = word_to_diagram(pb_eval_term(t, gamma));
    emit(g, diagram_json(d), render_diagram(d) + "\n");
    return kEqual;
  }
  PBWord w;
  if (mode == "closed-form") {
    AldClassKey k = ald_invariants(t);
    w = pb_eval_closed(k.i_part, k.j_entries, gamma);
  } else {
    w = pb_eval_term(t, gamma);
  }
  emit(g, json{{"word", render_pb_word(w)}}, render_pb_word(w) + "\n");
  return kEqual;
}

int cmd_verify_relations(const Globals& g) {
  ExperimentConfig config;
  config.seed = g.seed;
  RelationAuditReport r = relation_audit(config);
  json fam = json::array(), eqs = json::array();
  std::string text;
  for (const auto& f : r.presentation) {
    fam.push_back({{"family", f.family}, {"checked", f.checked}, {"failed", f.failed}});
    text += (f.failed ? "FAIL  " : "pass  ") + f.family + "  " + std::to_string(f.checked) + " instances\n";
  }
  for (const auto& e : r.equations) {
    eqs.push_back({{"equation", e.name}, {"z", e.z}, {"lhs", render_pb_word(e.lhs)}, {"rhs", render_pb_word(e.rhs)}, {"holds", e.holds}});
    text += (e.holds ? "pass  " : "FAIL  ") + e.name + (e.z.empty() ? "" : "  z = " + e.z) + "\n";
  }
  text += "failures " + std::to_string(r.failures()) + "\n";
  emit(g, json{{"relations", fam}, {"equations", eqs}, {"failures", r.failures()}, {"seed", g.seed}}, text);
  return r.ok() ? kEqual : kNotEqual;
}

int cmd_freeness_scan(const Globals& g) {
  ExperimentConfig config;
  config.seed = g.seed;
  config.max_term_size = g.max_size > 0 ? g.max_size : 5;
  if (g.budget > 0) config.budgets.step_cap = g.budget;
  FreenessReport r = freeness_scan(config);
  json per = json::array();
  std::string text = "terms " + std::to_string(r.terms) + "  classes " + std::to_string(r.classes) + "  max size " +
                     std::to_string(r.max_term_size) + "\n";
  for (const auto& s : r.per_gamma) {
    per.push_back({{"gamma", render_pb_word(s.gamma)},
                   {"non_constant", s.non_constant},
                   {"collisions", s.collisions},
                   {"critical_pairs", s.critical_pairs},
                   {"critical_failures", s.critical_failures},
                   {"findings", s.findings}});
    text += (s.ok() ? "pass  " : "FAIL  ") + std::string("gamma [") + render_pb_word(s.gamma) + "]  non-constant " +
            std::to_string(s.non_constant) + "  collisions " + std::to_string(s.collisions) + "  critical pairs " +
            std::to_string(s.critical_pairs) + " (" + std::to_string(s.critical_failures) + " failed)\n";
    for (const auto& f : s.findings) text += "      " + f + "\n";
  }
  if (r.unknown_verdicts) text += "unknown verdicts " + std::to_string(r.unknown_verdicts) + "\n";
  emit(g,
       json{{"terms", r.terms},
            {"classes", r.classes},
            {"max_term_size", r.max_term_size},
            {"unknown_verdicts", r.unknown_verdicts},
            {"gammas", per},
            {"ok", r.ok()}},
       text);
  return r.ok() ? kEqual : kNotEqual;
}

int cmd_order_ald(const Globals& g, const std::string& a, const std::string& b) {
  Order o = order_ald(parse_term(a), parse_term(b));
  emit(g, json{{"order", order_name(o)}}, std::string(order_name(o)) + "\n");
  return kEqual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ALD word problem and parenthesized braid workbench"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--max-size", g.max_size, "term size for freeness-scan; size cap for bounded LD search")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "step budget for bounded searches")->check(CLI::PositiveNumber);

  std::string a, b, gamma, mode = "recursive";
  auto two_terms = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("left", a, "term")->required();
    sub->add_option("right", b, "term")->required();
  };
  CLI::App* decide_ald_cmd = app.add_subcommand("decide-ald", "decide ALD equivalence of two terms");
  two_terms(decide_ald_cmd);
  CLI::App* decide_ld_cmd = app.add_subcommand("decide-ld", "decide LD equivalence of two *-terms");
  two_terms(decide_ld_cmd);
  CLI::App* order_cmd = app.add_subcommand("order-ald", "compare two one-variable terms in the ALD order");
  two_terms(order_cmd);
  CLI::App* normalize_cmd = app.add_subcommand("normalize", "special form and the rewriting trace reaching it");
  normalize_cmd->fallthrough();
  normalize_cmd->add_option("term", a, "term")->required();
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a one-variable term at a parenthesized braid word");
  eval_cmd->fallthrough();
  eval_cmd->add_option("term", a, "term")->required();
  eval_cmd->add_option("gamma", gamma, "word such as \"s1 a2\"; empty for the identity");
  auto* modes = eval_cmd->add_option_group("mode");
  modes->add_flag_callback("--closed-form", [&] { mode = "closed-form"; }, "product of the evaluated J entries times v(1)");
  modes->add_flag_callback("--recursive", [&] { mode = "recursive"; }, "structural recursion (default)");
  modes->add_flag_callback("--diagram", [&] { mode = "diagram"; }, "reduced tree-braid-tree diagram");
  modes->require_option(0, 1);
  CLI::App* relations_cmd = app.add_subcommand("verify-relations", "audit the defining relations and derived equations");
  relations_cmd->fallthrough();
  CLI::App* scan_cmd = app.add_subcommand("freeness-scan", "evaluate all small terms and compare with their ALD classes");
  scan_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (decide_ald_cmd->parsed()) return cmd_decide_ald(g, a, b);
    if (decide_ld_cmd->parsed()) return cmd_decide_ld(g, a, b);
    if (order_cmd->parsed()) return cmd_order_ald(g, a, b);
    if (normalize_cmd->parsed()) return cmd_normalize(g, a);
    if (eval_cmd->parsed()) return cmd_eval(g, a, gamma, mode);
    if (relations_cmd->parsed()) return cmd_verify_relations(g);
    if (scan_cmd->parsed()) return cmd_freeness_scan(g);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
