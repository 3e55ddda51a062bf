#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "ald/ld_oracle.hpp"
#include "ald/term.hpp"

namespace ald {

/// The pair (I(t), J(t)): the o-skeleton of t and the sequence of *-terms
/// that fills it.  Together they determine the ALD class of t up to LD
/// equivalence of the entries.
struct AldClassKey {
  Term i_part;
  TermSeq j_entries;

  std::size_t j_length() const { return j_entries.length(); }
};

/// I(x_i) = x, J(x_i) = (x_i)
/// I(t1 * t2) = I(t2),          J(t1 * t2) = J(t1) *-> J(t2)
/// I(t1 o t2) = I(t1) o I(t2),  J(t1 o t2) = J(t1) ++ J(t2)
inline AldClassKey ald_invariants(const Term& t) {
  if (t.is_var()) return {var(1), TermSeq{t}};
  AldClassKey l = ald_invariants(t.left());
  AldClassKey r = ald_invariants(t.right());
  if (t.is_star()) return {r.i_part, seq_star(l.j_entries, r.j_entries)};
  return {circ(l.i_part, r.i_part), seq_concat(l.j_entries, r.j_entries)};
}

inline Term inv_I(const Term& t) { return ald_invariants(t).i_part; }
inline TermSeq inv_J(const Term& t) { return ald_invariants(t).j_entries; }

/// I(t)[J(t)]: the special term ALD-equivalent to t.
inline Term specialize(const Term& t) {
  AldClassKey k = ald_invariants(t);
  return substitute(k.i_part, k.j_entries);
}

namespace detail {

/// Given special terms `l` and `r` sitting as the operands of a `*` at
/// `path`, records the rewrites that turn l * r into a special term and
/// returns it.
inline Term normalize_star(const Term& l, const Term& r, Path path, std::vector<LawInstance>& out) {
  if (r.is_circ()) {
    // l * (r1 o r2) -> (l * r1) o (l * r2)
    out.push_back({Law::ALD2, path, Direction::Expand});
    Term left = normalize_star(l, r.left(), path + 'L', out);
    Term right = normalize_star(l, r.right(), path + 'R', out);
    return circ(std::move(left), std::move(right));
  }
  if (l.is_circ()) {
    // (l1 o l2) * r -> l1 * (l2 * r)
    out.push_back({Law::ALD1, path, Direction::Expand});
    Term inner = normalize_star(l.right(), r, path + 'R', out);
    return normalize_star(l.left(), inner, path, out);
  }
  return star(l, r);
}

inline Term normalize_into(const Term& t, const Path& path, std::vector<LawInstance>& out) {
  if (t.is_var()) return t;
  Term l = normalize_into(t.left(), path + 'L', out);
  Term r = normalize_into(t.right(), path + 'R', out);
  if (t.is_circ()) return circ(std::move(l), std::move(r));
  return normalize_star(l, r, path, out);
}

}  // namespace detail

/// Rewriting steps taking t to specialize(t): children first, then ALD2
/// expansions split a `o` on the right of a `*` and ALD1 expansions
/// unfold a `o` on its left.
inline std::vector<LawInstance> derive_special(const Term& t) {
  std::vector<LawInstance> out;
  detail::normalize_into(t, Path{}, out);
  return out;
}

inline Term replay(Term t, const std::vector<LawInstance>& steps) {
  for (const LawInstance& s : steps) t = apply_law(t, s);
  return t;
}

// ---------------------------------------------------------------------------
// Decision
// ---------------------------------------------------------------------------

enum class Verdict : std::uint8_t { Equal, NotEqual, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

struct AldDecision {
  Verdict verdict;
  AldClassKey left;
  AldClassKey right;
  std::string reason;  // set for NotEqual and Unknown
};

/// t =ALD t' iff I(t) = I(t') and J(t), J(t') have equal lengths and
/// pairwise LD-equivalent entries.
template <class Oracle = LdOracle>
AldDecision decide_ald_detailed(const Term& a, const Term& b, const Oracle& oracle = {}) {
  AldDecision d{Verdict::Equal, ald_invariants(a), ald_invariants(b), {}};
  if (!(d.left.i_part == d.right.i_part)) {
    d.verdict = Verdict::NotEqual;
    d.reason = "o-skeletons differ";
    return d;
  }
  // Equal skeletons force equal sequence lengths.
  bool unknown = false;
  for (std::size_t k = 0; k < d.left.j_length(); ++k) {
    LdVerdict v = oracle(d.left.j_entries[k], d.right.j_entries[k]);
    if (v == LdVerdict::Equal) continue;
    if (v == LdVerdict::Unknown) {
      if (!unknown) d.reason = "LD search budget exhausted at entry " + std::to_string(k + 1);
      unknown = true;
      continue;
    }
    d.verdict = Verdict::NotEqual;
    d.reason = "entry " + std::to_string(k + 1) + " is not LD-equivalent";
    return d;
  }
  if (unknown) d.verdict = Verdict::Unknown;
  return d;
}

template <class Oracle = LdOracle>
Verdict decide_ald(const Term& a, const Term& b, const Oracle& oracle = {}) {
  return decide_ald_detailed(a, b, oracle).verdict;
}

/// Breadth-first closure of t under single LD / ALD1 / ALD2 steps in both
/// directions, keeping terms of size <= size_cap and expanding at most
/// step_cap terms.
inline std::unordered_set<Term, TermHash> ald_closure(const Term& t, std::size_t size_cap, std::size_t step_cap) {
  if (size_cap < t.size()) throw std::invalid_argument("ald_closure: size_cap below the size of the term");
  std::unordered_set<Term, TermHash> seen{t};
  std::deque<Term> queue{t};
  std::size_t expanded = 0;
  while (!queue.empty() && expanded < step_cap) {
    Term cur = std::move(queue.front());
    queue.pop_front();
    ++expanded;
    for (auto& rw : all_rewrites(cur)) {
      if (rw.result.size() > size_cap) continue;
      if (seen.insert(rw.result).second) queue.push_back(std::move(rw.result));
    }
  }
  return seen;
}

// ---------------------------------------------------------------------------
// Order on the one-variable free system
// ---------------------------------------------------------------------------

/// Compares the J sequences entrywise in the LD order (a proper prefix is
/// smaller), then the skeletons.
inline Order order_ald(const Term& s, const Term& t) {
  if (!s.is_one_variable() || !t.is_one_variable()) throw std::invalid_argument("order_ald: one-variable terms only");
  AldClassKey a = ald_invariants(s);
  AldClassKey b = ald_invariants(t);
  const std::size_t common = std::min(a.j_length(), b.j_length());
  for (std::size_t k = 0; k < common; ++k) {
    switch (decide_ld_1var(a.j_entries[k], b.j_entries[k])) {
      case LdVerdict::Less: return Order::Less;
      case LdVerdict::Greater: return Order::Greater;
      default: break;
    }
  }
  if (a.j_length() < b.j_length()) return Order::Less;
  if (a.j_length() > b.j_length()) return Order::Greater;
  if (a.i_part == b.i_part) return Order::Equal;
  return circ_less(a.i_part, b.i_part) ? Order::Less : Order::Greater;
}

}  // namespace ald
