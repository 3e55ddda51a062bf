// End-to-end acceptance run: one PASS/FAIL line per criterion.
// Tolerances and time limits are fixed below; the exit status is the
// number of failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "ald/experiments.hpp"
#include "ald/garside.hpp"
#include "braid_oracle.hpp"

using namespace ald;

namespace {

constexpr std::uint64_t kSeed = 20240601;

// Limits.
constexpr int kWordProblemSize = 4;
constexpr std::size_t kWordProblemClosureCap = 9;
constexpr std::size_t kClosureStepCap = 50'000'000;
constexpr int kNormalizationSize = 6;
constexpr int kFuzzSteps = 10'000;
constexpr int kFuzzMaxSize = 8;
constexpr int kRootLdSteps = 1'000;
constexpr int kOracleWordLength = 6;
constexpr int kRandomBraids = 10'000;
constexpr std::size_t kRandomBraidLength = 40;
constexpr int kRandomBraidIndex = 5;
constexpr double kBraidSeconds = 60.0;
constexpr int kLdSubstrateSize = 5;
constexpr int kEvaluationSize = 5;
constexpr int kCommutationSkeletonSize = 4;
constexpr int kCommutationRandomWords = 10;
constexpr int kShiftSkeletonSize = 4;
constexpr std::size_t kShiftSearchLength = 4;
constexpr int kShiftSearchIndex = 2;
constexpr int kFreenessSize = 5;
constexpr double kFreenessSeconds = 600.0;
constexpr int kOrderSize = 5;
constexpr int kGrowthEnumerationSize = 8;
constexpr int kGrowthFamilyLength = 12;

int failures = 0;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << number << ". " << name << "  " << detail << std::endl;
}

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

/// sum over s of Catalan(s-1) * 2^(s-1)
std::size_t one_variable_count(int max_size) {
  std::size_t total = 0;
  std::size_t catalan = 1;
  for (int s = 1; s <= max_size; ++s) {
    total += catalan << (s - 1);
    catalan = catalan * 2 * (2 * static_cast<std::size_t>(s) - 1) / (static_cast<std::size_t>(s) + 1);
  }
  return total;
}

Term random_term(std::mt19937_64& rng, int size, int vars) {
  if (size == 1) return var(std::uniform_int_distribution<int>(1, vars)(rng));
  int left = std::uniform_int_distribution<int>(1, size - 1)(rng);
  Term l = random_term(rng, left, vars), r = random_term(rng, size - left, vars);
  return std::uniform_int_distribution<int>(0, 1)(rng) ? star(l, r) : circ(l, r);
}

Term random_star_term(std::mt19937_64& rng, int size, int vars) {
  if (size == 1) return var(std::uniform_int_distribution<int>(1, vars)(rng));
  int left = std::uniform_int_distribution<int>(1, size - 1)(rng);
  return star(random_star_term(rng, left, vars), random_star_term(rng, size - left, vars));
}

std::vector<PBWord> all_pb_words(std::size_t max_len, int max_index) {
  std::vector<PBLetter> letters;
  for (Family f : {Family::Sigma, Family::A})
    for (int i = 1; i <= max_index; ++i)
      for (int s : {1, -1}) letters.push_back({f, i, s});
  std::vector<PBWord> out{PBWord{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (const auto& l : letters) out.push_back(out[k] * PBWord{l});
    begin = end;
  }
  return out;
}

void ald_word_problem_exhaustive() {
  auto t0 = Clock::now();
  auto terms = enumerate_one_variable(kWordProblemSize);
  const bool count_ok = terms.size() == one_variable_count(kWordProblemSize);
  std::size_t pairs = 0, disagreements = 0;
  for (const Term& a : terms) {
    auto closure = ald_closure(a, kWordProblemClosureCap, kClosureStepCap);
    for (const Term& b : terms) {
      ++pairs;
      if ((closure.count(b) > 0) != (decide_ald(a, b) == Verdict::Equal)) ++disagreements;
    }
  }
  report(1, "ald_word_problem_exhaustive", count_ok && disagreements == 0,
         cat(terms.size(), " terms (formula ", one_variable_count(kWordProblemSize), "), ", pairs, " pairs, ", disagreements,
             " disagreements with the closure oracle (size cap ", kWordProblemClosureCap, "), ", seconds_since(t0), " s"));
}

void normalization_replay() {
  std::size_t checked = 0, not_equal = 0, bad_replay = 0, not_special = 0;
  for (const Term& t : enumerate_one_variable(kNormalizationSize)) {
    ++checked;
    Term s = specialize(t);
    if (decide_ald(t, s) != Verdict::Equal) ++not_equal;
    if (!(replay(t, derive_special(t)) == s)) ++bad_replay;
    if (!is_special(s)) ++not_special;
  }
  report(2, "normalization_replay", not_equal == 0 && bad_replay == 0 && not_special == 0,
         cat(checked, " terms; ", not_equal, " not ALD-equal to their special form, ", bad_replay, " bad replays, ", not_special,
             " non-special results"));
}

void invariance_fuzz() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> size(1, kFuzzMaxSize);
  std::size_t steps = 0, i_changed = 0, j_broken = 0, unknown_one_var = 0, unknown_multi = 0, one_var_steps = 0;
  while (steps < static_cast<std::size_t>(kFuzzSteps)) {
    const bool one_var = steps % 2 == 0;
    Term t = random_term(rng, size(rng), one_var ? 1 : 3);
    auto rewrites = all_rewrites(t);
    if (rewrites.empty()) continue;
    const Rewrite& rw = rewrites[std::uniform_int_distribution<std::size_t>(0, rewrites.size() - 1)(rng)];
    ++steps;
    one_var_steps += one_var;
    AldClassKey before = ald_invariants(t), after = ald_invariants(rw.result);
    if (!(before.i_part == after.i_part)) {
      ++i_changed;
      continue;
    }
    if (before.j_length() != after.j_length()) {
      ++j_broken;
      continue;
    }
    for (std::size_t k = 0; k < before.j_length(); ++k) {
      LdVerdict v = one_var ? decide_ld_1var(before.j_entries[k], after.j_entries[k])
                            : decide_ld_bounded(before.j_entries[k], after.j_entries[k]);
      if (v == LdVerdict::Unknown) {
        ++(one_var ? unknown_one_var : unknown_multi);
      } else if (v != LdVerdict::Equal) {
        ++j_broken;
      }
    }
  }
  report(3, "invariance_fuzz", i_changed == 0 && j_broken == 0 && unknown_one_var == 0,
         cat(steps, " random steps (", one_var_steps, " one-variable); I changed ", i_changed, ", J broken ", j_broken,
             ", unknown entries ", unknown_one_var, " one-variable / ", unknown_multi, " multi-variable"));
}

void non_enrichment_witnesses() {
  const Verdict witness = decide_ald(parse_term("x1 o x2"), parse_term("(x1*x2) o x1"));
  const Term redex = parse_term("x1*(x2*x3)");
  auto contracted = rewrite_root(redex, Law::ALD1, Direction::Contract);
  const bool ald1_changes = contracted && contracted->ht_r() != redex.ht_r();

  std::mt19937_64 rng(kSeed + 4);
  std::uniform_int_distribution<int> part(1, 3);
  int ld_changes = 0;
  for (int k = 0; k < kRootLdSteps; ++k) {
    Term a = random_term(rng, part(rng), 3), b = random_term(rng, part(rng), 3), c = random_term(rng, part(rng), 3);
    Term t = k % 2 ? star(a, star(b, c)) : star(star(a, b), star(a, c));
    auto r = rewrite_root(t, Law::LD, k % 2 ? Direction::Expand : Direction::Contract);
    if (!r || r->ht_r() != t.ht_r()) ++ld_changes;
  }
  report(4, "non_enrichment_witnesses", witness == Verdict::NotEqual && ald1_changes && ld_changes == 0,
         cat("x1 o x2 vs (x1*x2) o x1: ", verdict_name(witness), "; ALD1 contraction ht_r ", redex.ht_r(), " -> ",
             contracted ? static_cast<long>(contracted->ht_r()) : -1L, "; ", ld_changes, " of ", kRootLdSteps,
             " root LD steps change ht_r"));
}

void braid_engine_cross_validation() {
  auto t0 = Clock::now();
  oracles::BraidClosureOracle oracle(kOracleWordLength + 2);
  const auto nodes = oracle.nodes_up_to(kOracleWordLength);
  std::map<std::uint32_t, std::uint32_t> rep;
  for (std::uint32_t n : nodes) rep.emplace(oracle.component(n), n);
  std::size_t merged_but_unequal = 0;
  for (std::uint32_t n : nodes) {
    std::uint32_t r = rep.at(oracle.component(n));
    if (r != n && !braid_equal(oracle.word(n), oracle.word(r))) ++merged_but_unequal;
  }
  // Distinct components must be distinct braids; group by cheap invariants first.
  std::map<std::pair<std::vector<int>, int>, std::vector<BraidWord>> buckets;
  for (const auto& [comp, n] : rep) {
    BraidWord w = oracle.word(n);
    int exponent = 0;
    for (int l : w) exponent += l > 0 ? 1 : -1;
    buckets[{braid_permutation(w, 4), exponent}].push_back(w);
  }
  std::size_t separated_but_equal = 0;
  for (const auto& [key, words] : buckets)
    for (std::size_t a = 0; a < words.size(); ++a)
      for (std::size_t b = a + 1; b < words.size(); ++b)
        if (braid_equal(words[a], words[b])) ++separated_but_equal;

  std::mt19937_64 rng(kSeed + 5);
  std::uniform_int_distribution<std::size_t> len(0, kRandomBraidLength);
  std::uniform_int_distribution<int> idx(1, kRandomBraidIndex), coin(0, 1);
  std::size_t reduce_mismatch = 0;
  for (int k = 0; k < kRandomBraids; ++k) {
    std::vector<int> letters(len(rng));
    for (int& l : letters) l = idx(rng) * (coin(rng) ? 1 : -1);
    BraidWord w(std::move(letters));
    BraidWord h = handle_reduce(w);
    if (!braid_equal(h, w) || !garside_equal(h, w)) ++reduce_mismatch;
  }
  const double elapsed = seconds_since(t0);
  report(5, "braid_engine_cross_validation",
         merged_but_unequal == 0 && separated_but_equal == 0 && reduce_mismatch == 0 && elapsed < kBraidSeconds,
         cat(nodes.size(), " words in ", rep.size(), " classes; ", merged_but_unequal + separated_but_equal,
             " oracle disagreements; ", reduce_mismatch, " of ", kRandomBraids, " handle reductions not equal to input; ", elapsed,
             " s (limit ", kBraidSeconds, ")"));
}

void ld_freeness_substrate() {
  auto terms = enumerate_one_variable(kLdSubstrateSize, {Op::Star});
  std::size_t pairs = 0, disagreements = 0;
  for (const Term& s : terms)
    for (const Term& t : terms) {
      ++pairs;
      if ((decide_ld_1var(s, t) == LdVerdict::Equal) != (decide_ld_bounded(s, t) == LdVerdict::Equal)) ++disagreements;
    }
  report(6, "ld_freeness_substrate", disagreements == 0,
         cat(terms.size(), " *-terms, ", pairs, " pairs, ", disagreements, " disagreements between braid comparison and bounded closure"));
}

void relation_audit_criterion() {
  ExperimentConfig config;
  config.seed = kSeed;
  config.max_relation_index = 5;
  config.z_samples = 20;
  RelationAuditReport r = relation_audit(config);
  std::size_t instances = 0;
  for (const auto& f : r.presentation) instances += f.checked;
  report(7, "relation_audit", r.ok(),
         cat(r.presentation.size(), " relation families, ", instances, " instances, ", r.equations.size(), " derived equations, ",
             r.failures(), " failures"));
}

void evaluation_formulas() {
  std::size_t evaluations = 0, mismatches = 0;
  for (const PBWord& g : ExperimentConfig::default_gamma_samples())
    for (const Term& t : enumerate_one_variable(kEvaluationSize)) {
      ++evaluations;
      AldClassKey k = ald_invariants(t);
      if (!pb_equal(pb_eval_term(t, g), pb_eval_closed(k.i_part, k.j_entries, g))) ++mismatches;
    }
  std::mt19937_64 rng(kSeed + 8);
  std::size_t commutations = 0, commutation_failures = 0;
  const std::vector<PBWord> letters{parse_pb_word("s1"), parse_pb_word("S1"), parse_pb_word("a1"), parse_pb_word("A1"),
                                    parse_pb_word("s2"), parse_pb_word("S2"), parse_pb_word("a2"), parse_pb_word("A2")};
  for (const Term& v : enumerate_terms(1, {Op::Circ}, kCommutationSkeletonSize)) {
    std::vector<PBWord> bs = letters;
    for (int k = 0; k < kCommutationRandomWords; ++k) bs.push_back(random_pb_word(rng, 1 + k % 6, 3));
    for (const PBWord& b : bs) {
      ++commutations;
      if (!check_skeleton_commutation(v, b, pb_equal)) ++commutation_failures;
    }
  }
  report(8, "evaluation_formulas", mismatches == 0 && commutation_failures == 0,
         cat(evaluations, " recursive vs closed-form evaluations, ", mismatches, " mismatches; ", commutations,
             " skeleton commutations, ", commutation_failures, " failures"));
}

void shift_image_certificates() {
  auto skeletons = enumerate_terms(1, {Op::Circ}, kShiftSkeletonSize);
  std::size_t pairs = 0, uncertified = 0, invalid = 0;
  for (const Term& u : skeletons)
    for (const Term& v : skeletons) {
      if (u == v) continue;
      ++pairs;
      PBWord w = eval_at_identity(u).inverse() * eval_at_identity(v);
      auto c = not_in_image_shift(w);
      if (!c) {
        ++uncertified;
        continue;
      }
      auto image = pb_act_term(c->start, w);
      if (!image || !(*image == c->image) || left_factor(*image) == left_factor(c->start)) ++invalid;
    }
  const PBDiagram s1 = gen_sigma(1), a1 = gen_a(1);
  std::size_t searched = 0, hits = 0;
  for (const PBWord& w : all_pb_words(kShiftSearchLength, kShiftSearchIndex)) {
    ++searched;
    PBDiagram shifted = diagram_shift(word_to_diagram(w));
    if (diagram_equal(shifted, s1) || diagram_equal(shifted, a1)) ++hits;
  }
  report(9, "shift_image_certificates", uncertified == 0 && invalid == 0 && hits == 0,
         cat(pairs, " skeleton pairs, ", uncertified, " uncertified, ", invalid, " invalid certificates; ", searched,
             " shifted diagrams searched, ", hits, " equal to s1 or a1"));
}

void freeness_scan_criterion() {
  auto t0 = Clock::now();
  ExperimentConfig config;
  config.seed = kSeed;
  config.max_term_size = kFreenessSize;
  FreenessReport r = freeness_scan(config);

  // Direct pairwise form: diagram equality iff decide_ald says Equal.
  auto terms = enumerate_one_variable(kFreenessSize);
  std::size_t pairs = 0, disagreements = 0;
  for (const PBWord& g : config.gamma_samples) {
    std::vector<PBDiagram> value;
    for (const Term& t : terms) value.push_back(word_to_diagram(pb_eval_term(t, g)));
    for (std::size_t a = 0; a < terms.size(); ++a)
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        ++pairs;
        if (diagram_equal(value[a], value[b]) != (decide_ald(terms[a], terms[b]) == Verdict::Equal)) ++disagreements;
      }
  }
  std::size_t non_constant = 0, collisions = 0, critical = 0;
  for (const auto& g : r.per_gamma) {
    non_constant += g.non_constant;
    collisions += g.collisions;
    critical += g.critical_failures;
  }
  const double elapsed = seconds_since(t0);
  report(10, "freeness_scan", r.ok() && disagreements == 0 && elapsed < kFreenessSeconds,
         cat(r.terms, " terms in ", r.classes, " classes at ", r.per_gamma.size(), " gammas; non-constant ", non_constant,
             ", collisions ", collisions, ", critical failures ", critical, ", unknown ", r.unknown_verdicts, "; ", pairs,
             " pairwise checks, ", disagreements, " disagreements; ", elapsed, " s"));
}

void ald_order_linear() {
  auto terms = enumerate_one_variable(kOrderSize);
  const std::size_t n = terms.size();
  std::vector<std::vector<Order>> cmp(n, std::vector<Order>(n));
  std::size_t asymmetric = 0, kernel_mismatch = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) cmp[a][b] = order_ald(terms[a], terms[b]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (cmp[a][b] != reverse(cmp[b][a])) ++asymmetric;
      if ((cmp[a][b] == Order::Equal) != (decide_ald(terms[a], terms[b]) == Verdict::Equal)) ++kernel_mismatch;
    }
  // Arrange by the number of strictly smaller terms; the relation is a
  // total preorder exactly when every pair agrees with that arrangement
  // and ties form contiguous runs.
  std::vector<std::size_t> below(n, 0), order(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) below[a] += cmp[b][a] == Order::Less;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  std::vector<std::size_t> run(n);
  for (std::size_t k = 1; k < n; ++k) run[k] = run[k - 1] + (cmp[order[k - 1]][order[k]] != Order::Equal);
  std::size_t intransitive = 0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      Order expected = run[p] == run[q] ? Order::Equal : Order::Less;
      if (cmp[order[p]][order[q]] != expected) ++intransitive;
    }
  report(11, "ald_order_linear", asymmetric == 0 && kernel_mismatch == 0 && intransitive == 0,
         cat(n, " terms, ", run.back() + 1, " order classes; ", asymmetric, " asymmetric pairs, ", kernel_mismatch,
             " kernel mismatches, ", intransitive, " pairs breaking the linear arrangement"));
}

void special_form_growth() {
  std::size_t terms = 0, over_bound = 0, max_length = 0;
  for (const Term& t : enumerate_one_variable(kGrowthEnumerationSize)) {
    ++terms;
    std::size_t len = inv_J(t).length();
    max_length = std::max(max_length, len);
    if (static_cast<double>(len) > std::ldexp(1.0, static_cast<int>(t.size()))) ++over_bound;
  }
  // t_1 = x o x, t_{n+1} = t_n * (x o x): an ALD2 redex at the root whose
  // expansion duplicates t_n, which carries redexes of its own.
  const Term unit = parse_term("x o x");
  Term t = unit;
  std::vector<std::size_t> special_sizes{specialize(t).size()};
  std::vector<std::size_t> j_lengths{inv_J(t).length()};
  for (int k = 1; k < kGrowthFamilyLength; ++k) {
    t = star(t, unit);
    special_sizes.push_back(specialize(t).size());
    j_lengths.push_back(inv_J(t).length());
  }
  bool doubling = true;
  for (std::size_t k = 1; k < special_sizes.size(); ++k) doubling = doubling && special_sizes[k] >= 2 * special_sizes[k - 1];
  report(12, "special_form_growth", over_bound == 0 && doubling,
         cat(terms, " terms, max J length ", max_length, ", ", over_bound, " above 2^size; family t(n+1) = t(n)*(x o x): special-form size ",
             special_sizes.front(), " -> ", special_sizes.back(), " over ", kGrowthFamilyLength, " terms (at least doubling each step: ",
             doubling ? "yes" : "no", "), J length ", j_lengths.front(), " -> ", j_lengths.back()));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      ald_word_problem_exhaustive, normalization_replay,     invariance_fuzz,         non_enrichment_witnesses,
      braid_engine_cross_validation, ld_freeness_substrate,  relation_audit_criterion, evaluation_formulas,
      shift_image_certificates,    freeness_scan_criterion, ald_order_linear,         special_form_growth};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL  criterion raised: " << e.what() << std::endl;
    }
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " of " << criteria.size() << " criteria failed" << std::endl;
  return failures ? 1 : 0;
}
