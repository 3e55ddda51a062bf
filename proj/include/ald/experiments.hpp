#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ald/ald.hpp"
#include "ald/pb_diagram.hpp"
#include "ald/pb_word.hpp"
#include "ald/term.hpp"

namespace ald {

struct ExperimentConfig {
  int max_term_size = 5;
  std::vector<PBWord> gamma_samples = default_gamma_samples();
  SearchCaps budgets{};
  std::uint64_t seed = 1;
  int max_relation_index = 5;
  int z_samples = 20;

  static std::vector<PBWord> default_gamma_samples() {
    return {PBWord{}, pb_sigma(1), pb_a(1), pb_sigma(1) * pb_a(2)};
  }

  void validate() const {
    if (max_term_size < 1) throw std::invalid_argument("max_term_size must be >= 1");
    if (budgets.step_cap == 0) throw std::invalid_argument("step budget must be positive");
    if (max_relation_index < 1) throw std::invalid_argument("max_relation_index must be >= 1");
  }
};

// ---------------------------------------------------------------------------
// ALD classes of one-variable terms
// ---------------------------------------------------------------------------

struct TermClasses {
  std::vector<Term> terms;
  std::vector<std::size_t> class_of;  // index into representatives
  std::vector<std::size_t> representatives;
  std::size_t unknown_verdicts = 0;
};

/// Partitions the terms by decide_ald.  Only terms with the same skeleton
/// and sequence length can be equal, so comparisons stay inside those
/// buckets.
template <class Oracle = LdOracle>
TermClasses partition_by_ald(std::vector<Term> terms, const Oracle& oracle = {}) {
  TermClasses out;
  out.terms = std::move(terms);
  const std::size_t n = out.terms.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < n; ++k) {
    AldClassKey key = ald_invariants(out.terms[k]);
    buckets[{render_term(key.i_part), key.j_length()}].push_back(k);
  }
  for (const auto& [key, members] : buckets) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (find(members[a]) == find(members[b])) continue;
        Verdict v = decide_ald(out.terms[members[a]], out.terms[members[b]], oracle);
        if (v == Verdict::Unknown) ++out.unknown_verdicts;
        if (v == Verdict::Equal) parent[find(members[b])] = find(members[a]);
      }
    }
  }
  std::unordered_map<std::size_t, std::size_t> index;
  out.class_of.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t root = find(k);
    auto [it, fresh] = index.emplace(root, out.representatives.size());
    if (fresh) out.representatives.push_back(k);
    out.class_of[k] = it->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Freeness scan
// ---------------------------------------------------------------------------

struct GammaResult {
  PBWord gamma;
  std::size_t non_constant = 0;      // terms whose value differs from their class representative
  std::size_t collisions = 0;        // pairs of classes with equal values
  std::size_t critical_pairs = 0;
  std::size_t critical_failures = 0;
  std::vector<std::string> findings;  // first few violations, for the report

  bool ok() const { return non_constant == 0 && collisions == 0 && critical_failures == 0; }
};

struct FreenessReport {
  int max_term_size = 0;
  std::size_t terms = 0;
  std::size_t classes = 0;
  std::size_t unknown_verdicts = 0;
  std::vector<GammaResult> per_gamma;

  bool ok() const {
    if (unknown_verdicts) return false;
    for (const auto& g : per_gamma)
      if (!g.ok()) return false;
    return true;
  }
};

/// Pairs (a, b) with I(a) < I(b), or I(a) = I(b) and J(a) below J(b)
/// entrywise in the iterated-left-subterm sense.
inline std::vector<std::pair<std::size_t, std::size_t>> critical_pairs(const std::vector<Term>& terms) {
  std::vector<AldClassKey> keys;
  keys.reserve(terms.size());
  for (const Term& t : terms) keys.push_back(ald_invariants(t));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = 0; b < terms.size(); ++b) {
      if (a == b) continue;
      const bool same_skeleton = keys[a].i_part == keys[b].i_part;
      if (circ_less(keys[a].i_part, keys[b].i_part) || (same_skeleton && seq_sq(keys[a].j_entries, keys[b].j_entries)))
        out.emplace_back(a, b);
    }
  return out;
}

namespace detail {

inline void note(GammaResult& r, std::string line) {
  if (r.findings.size() < 8) r.findings.push_back(std::move(line));
}

}  // namespace detail

inline FreenessReport freeness_scan(const ExperimentConfig& config) {
  config.validate();
  FreenessReport report;
  report.max_term_size = config.max_term_size;
  TermClasses classes = partition_by_ald(enumerate_one_variable(config.max_term_size), LdOracle{config.budgets});
  report.terms = classes.terms.size();
  report.classes = classes.representatives.size();
  report.unknown_verdicts = classes.unknown_verdicts;
  const auto pairs = critical_pairs(classes.terms);

  for (const PBWord& gamma : config.gamma_samples) {
    GammaResult r;
    r.gamma = gamma;
    std::vector<PBDiagram> value;
    value.reserve(classes.terms.size());
    for (const Term& t : classes.terms) value.push_back(word_to_diagram(pb_eval_term(t, gamma)));

    for (std::size_t k = 0; k < classes.terms.size(); ++k) {
      std::size_t rep = classes.representatives[classes.class_of[k]];
      if (rep == k || diagram_equal(value[k], value[rep])) continue;
      ++r.non_constant;
      detail::note(r, "not constant: " + render_term(classes.terms[k]) + " vs " + render_term(classes.terms[rep]));
    }

    std::unordered_map<std::string, std::size_t> seen;
    std::vector<std::string> key_of(classes.terms.size());
    for (std::size_t c = 0; c < classes.representatives.size(); ++c) {
      std::size_t rep = classes.representatives[c];
      key_of[rep] = canonical_key(value[rep]);
      auto [it, fresh] = seen.emplace(key_of[rep], rep);
      if (fresh) continue;
      ++r.collisions;
      detail::note(r, "collision: " + render_term(classes.terms[rep]) + " and " + render_term(classes.terms[it->second]));
    }

    for (const auto& [a, b] : pairs) {
      ++r.critical_pairs;
      std::size_t ra = classes.representatives[classes.class_of[a]];
      std::size_t rb = classes.representatives[classes.class_of[b]];
      if (ra != rb && key_of[ra] != key_of[rb]) continue;
      ++r.critical_failures;
      detail::note(r, "critical pair evaluates equally: " + render_term(classes.terms[a]) + " and " + render_term(classes.terms[b]));
    }
    report.per_gamma.push_back(std::move(r));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Relation audit
// ---------------------------------------------------------------------------

struct RelationFamilyResult {
  std::string family;
  std::size_t checked = 0;
  std::size_t failed = 0;
};

struct RelationAuditReport {
  std::vector<RelationFamilyResult> presentation;
  std::vector<EquationCheck> equations;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& f : presentation) n += f.failed;
    for (const auto& e : equations) n += !e.holds;
    return n;
  }
  bool ok() const { return failures() == 0; }
};

inline std::vector<PBWord> random_z_samples(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(1, 4);
  std::vector<PBWord> out;
  for (int k = 0; k < count; ++k) out.push_back(random_pb_word(rng, len(rng), 3));
  return out;
}

inline RelationAuditReport relation_audit(const ExperimentConfig& config, const PBEqual& eq = pb_equal) {
  config.validate();
  RelationAuditReport report;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : presentation_relations(config.max_relation_index)) {
    auto [it, fresh] = slot.emplace(r.family, report.presentation.size());
    if (fresh) report.presentation.push_back({r.family, 0, 0});
    auto& family = report.presentation[it->second];
    ++family.checked;
    if (!eq(r.lhs, r.rhs)) ++family.failed;
  }
  report.equations = audit_ald_word_equations(eq, random_z_samples(config.seed, config.z_samples));
  return report;
}

}  // namespace ald
