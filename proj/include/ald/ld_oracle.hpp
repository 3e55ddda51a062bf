#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ald/braid.hpp"
#include "ald/term.hpp"

namespace ald {

/// Outcome of an LD comparison.  `Distinct` is a certified inequality
/// without an order (multi-variable filters); `Unknown` means the search
/// budget ran out.
enum class LdVerdict : std::uint8_t { Equal, Less, Greater, Distinct, Unknown };

inline const char* ld_verdict_name(LdVerdict v) {
  switch (v) {
    case LdVerdict::Equal: return "Equal";
    case LdVerdict::Less: return "Less";
    case LdVerdict::Greater: return "Greater";
    case LdVerdict::Distinct: return "Distinct";
    case LdVerdict::Unknown: return "Unknown";
  }
  return "?";
}

inline bool is_one_variable_star(const Term& t) { return !t.has_circ() && t.is_one_variable(); }

/// Complete for one variable: the *-closure of the trivial braid is free, so
/// braid evaluation separates LD classes and the braid order orders them.
inline LdVerdict decide_ld_1var(const Term& s, const Term& t) {
  if (!is_one_variable_star(s) || !is_one_variable_star(t))
    throw std::invalid_argument("decide_ld_1var: arguments must be one-variable *-terms");
  if (s == t) return LdVerdict::Equal;
  switch (braid_compare(eval_star_braid(s), eval_star_braid(t))) {
    case Order::Less: return LdVerdict::Less;
    case Order::Greater: return LdVerdict::Greater;
    case Order::Equal: return LdVerdict::Equal;
  }
  return LdVerdict::Equal;
}

struct SearchCaps {
  std::size_t size_cap = 0;  // 0 selects 2 * max input size + 3
  std::size_t step_cap = 100'000;
};

inline std::size_t effective_size_cap(const SearchCaps& caps, const Term& s, const Term& t) {
  return caps.size_cap ? caps.size_cap : 2 * std::max(s.size(), t.size()) + 3;
}

// Both invariants hold for LD steps: x*(y*z) and (x*y)*(x*z) mention the same
// variables and end in the same one.

inline std::set<int> variable_set(const Term& t) {
  std::set<int> out;
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* cur = stack.back();
    stack.pop_back();
    if (cur->is_var()) {
      out.insert(cur->var_index());
    } else {
      stack.push_back(&cur->left());
      stack.push_back(&cur->right());
    }
  }
  return out;
}

inline int rightmost_variable(const Term& t) {
  const Term* cur = &t;
  while (cur->is_compound()) cur = &cur->right();
  return cur->var_index();
}

/// Terms reachable from `start` by LD steps with every intermediate term of
/// size <= size_cap, exploring at most `step_cap` terms breadth first.
/// The second member reports whether the closure was exhausted.
inline std::pair<std::vector<Term>, bool> ld_closure(const Term& start, std::size_t size_cap, std::size_t step_cap) {
  std::unordered_set<Term, TermHash> seen{start};
  std::vector<Term> order{start};
  std::size_t head = 0;
  while (head < order.size()) {
    if (head >= step_cap) return {order, false};
    Term cur = order[head++];
    for (auto& rw : all_rewrites(cur, {Law::LD})) {
      if (rw.result.size() > size_cap) continue;
      if (seen.insert(rw.result).second) order.push_back(rw.result);
    }
  }
  return {order, true};
}

/// Bidirectional breadth-first search over LD expansions and contractions.
/// Equal only when a path within the caps connects the terms; Distinct when a
/// cheap invariant separates them; Unknown otherwise.
inline LdVerdict decide_ld_bounded(const Term& s, const Term& t, SearchCaps caps = {}) {
  if (s.has_circ() || t.has_circ()) throw std::invalid_argument("decide_ld_bounded: arguments must be *-terms");
  if (s == t) return LdVerdict::Equal;
  if (rightmost_variable(s) != rightmost_variable(t) || variable_set(s) != variable_set(t)) return LdVerdict::Distinct;
  const std::size_t size_cap = effective_size_cap(caps, s, t);

  struct Side {
    std::unordered_set<Term, TermHash> seen;
    std::deque<Term> frontier;
  };
  Side a, b;
  a.seen.insert(s);
  a.frontier.push_back(s);
  b.seen.insert(t);
  b.frontier.push_back(t);
  std::size_t steps = 0;
  bool a_done = false, b_done = false;
  while (!(a_done && b_done)) {
    for (int side = 0; side < 2; ++side) {
      Side& me = side == 0 ? a : b;
      Side& other = side == 0 ? b : a;
      bool& done = side == 0 ? a_done : b_done;
      if (done) continue;
      // Expand one full layer.
      std::size_t layer = me.frontier.size();
      if (layer == 0) {
        done = true;
        continue;
      }
      for (std::size_t k = 0; k < layer; ++k) {
        if (++steps > caps.step_cap) return LdVerdict::Unknown;
        Term cur = std::move(me.frontier.front());
        me.frontier.pop_front();
        for (auto& rw : all_rewrites(cur, {Law::LD})) {
          if (rw.result.size() > size_cap) continue;
          if (other.seen.count(rw.result)) return LdVerdict::Equal;
          if (me.seen.insert(rw.result).second) me.frontier.push_back(rw.result);
        }
      }
    }
  }
  return LdVerdict::Unknown;
}

/// Strongest available decision: complete for one variable, bounded
/// otherwise.
inline LdVerdict decide_ld(const Term& s, const Term& t, SearchCaps caps = {}) {
  if (is_one_variable_star(s) && is_one_variable_star(t)) return decide_ld_1var(s, t);
  return decide_ld_bounded(s, t, caps);
}

/// Default oracle handed to the ALD decision procedure.
struct LdOracle {
  SearchCaps caps{};
  LdVerdict operator()(const Term& s, const Term& t) const { return decide_ld(s, t, caps); }
};

enum class Tri : std::uint8_t { False, True, Unknown };

/// Equal lengths and pairwise LD-equivalent entries.
template <class Oracle = LdOracle>
Tri seq_ld_equal(const TermSeq& s, const TermSeq& t, const Oracle& oracle = {}) {
  if (s.length() != t.length()) return Tri::False;
  bool unknown = false;
  for (std::size_t k = 0; k < s.length(); ++k) {
    LdVerdict v = oracle(s[k], t[k]);
    if (v == LdVerdict::Unknown)
      unknown = true;
    else if (v != LdVerdict::Equal)
      return Tri::False;
  }
  return unknown ? Tri::Unknown : Tri::True;
}

/// Pair (s', t') with s' =LD s, t' =LD t and one an iterated left subterm of
/// the other: s' below t' when s < t, t' below s' when s > t.
struct SqWitness {
  Term s_prime;
  Term t_prime;
  bool s_is_lower;
};

namespace detail {

inline std::optional<SqWitness> sq_witness_within(const Term& lower, const Term& upper, bool s_lower, std::size_t size_cap,
                                                  std::size_t step_cap) {
  auto [lower_cl, lower_done] = ld_closure(lower, size_cap, step_cap);
  auto [upper_cl, upper_done] = ld_closure(upper, size_cap, step_cap);
  std::unordered_set<Term, TermHash> lower_set(lower_cl.begin(), lower_cl.end());
  for (const Term& u : upper_cl) {
    const Term* cur = &u;
    while (cur->is_star()) {
      cur = &cur->left();
      if (lower_set.count(*cur)) {
        if (s_lower) return SqWitness{*cur, u, true};
        return SqWitness{u, *cur, false};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Searches the LD closures of both terms.  Without a pinned size cap the
/// cap grows from the larger input size up to 4 * size + 4.
inline std::optional<SqWitness> find_sq_witness(const Term& s, const Term& t, SearchCaps caps = {}) {
  LdVerdict v = decide_ld_1var(s, t);
  if (v == LdVerdict::Equal) throw std::invalid_argument("find_sq_witness: terms are LD-equivalent");
  const bool s_lower = v == LdVerdict::Less;
  const Term& lower = s_lower ? s : t;
  const Term& upper = s_lower ? t : s;
  if (caps.size_cap) return detail::sq_witness_within(lower, upper, s_lower, caps.size_cap, caps.step_cap);
  const std::size_t base = std::max(s.size(), t.size());
  for (std::size_t cap = base + 1; cap <= 4 * base + 4; ++cap)
    if (auto w = detail::sq_witness_within(lower, upper, s_lower, cap, caps.step_cap)) return w;
  return std::nullopt;
}

}  // namespace ald
