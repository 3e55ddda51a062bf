#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ald/braid.hpp"
#include "ald/term.hpp"

namespace ald {

enum class Family : std::uint8_t { Sigma, A };

struct PBLetter {
  Family family;
  int index;  // >= 1
  int sign;   // +1 or -1

  PBLetter inverse() const { return {family, index, -sign}; }
  friend bool operator==(const PBLetter&, const PBLetter&) = default;
};

/// Word in the generators sigma_i, a_i of the parenthesized braid group.
class PBWord {
 public:
  PBWord() = default;
  PBWord(std::initializer_list<PBLetter> letters) : letters_(letters) { check(); }
  explicit PBWord(std::vector<PBLetter> letters) : letters_(std::move(letters)) { check(); }

  const std::vector<PBLetter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  int max_index() const {
    int m = 0;
    for (const auto& l : letters_) m = std::max(m, l.index);
    return m;
  }

  PBWord inverse() const {
    std::vector<PBLetter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
    return PBWord(std::move(out));
  }

  PBWord& operator*=(const PBWord& other) {
    letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
    return *this;
  }
  friend PBWord operator*(PBWord a, const PBWord& b) { return a *= b; }

  friend bool operator==(const PBWord&, const PBWord&) = default;

 private:
  void check() const {
    for (const auto& l : letters_) {
      if (l.index < 1) throw std::invalid_argument("PB letter index must be >= 1");
      if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("PB letter sign must be +1 or -1");
    }
  }
  std::vector<PBLetter> letters_;
};

inline PBWord pb_sigma(int i, int sign = 1) { return PBWord{{Family::Sigma, i, sign}}; }
inline PBWord pb_a(int i, int sign = 1) { return PBWord{{Family::A, i, sign}}; }

/// Letters `s<i>`, `S<i>`, `a<i>`, `A<i>` separated by whitespace.
inline PBWord parse_pb_word(std::string_view text) {
  std::vector<PBLetter> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    char c = text[pos];
    Family fam;
    int sign;
    switch (c) {
      case 's': fam = Family::Sigma; sign = 1; break;
      case 'S': fam = Family::Sigma; sign = -1; break;
      case 'a': fam = Family::A; sign = 1; break;
      case 'A': fam = Family::A; sign = -1; break;
      default: throw ParseError("expected one of s, S, a, A", pos);
    }
    std::size_t start = ++pos;
    long index = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      index = index * 10 + (text[pos] - '0');
      if (index > 1'000'000) throw ParseError("generator index too large", start);
      ++pos;
    }
    if (pos == start || index < 1) throw ParseError("expected a positive generator index", start);
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
      throw ParseError("letters must be separated by whitespace", pos);
    out.push_back({fam, static_cast<int>(index), sign});
  }
  return PBWord(std::move(out));
}

inline std::string render_letter(const PBLetter& l) {
  char c = l.family == Family::Sigma ? (l.sign > 0 ? 's' : 'S') : (l.sign > 0 ? 'a' : 'A');
  return c + std::to_string(l.index);
}

inline std::string render_pb_word(const PBWord& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += render_letter(l);
  }
  return out;
}

inline PBWord pb_free_reduce(const PBWord& w) {
  std::vector<PBLetter> out;
  for (const auto& l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return PBWord(std::move(out));
}

/// The shift endomorphism: sigma_i -> sigma_{i+k}, a_i -> a_{i+k}.
inline PBWord pb_shift(const PBWord& w, int k = 1) {
  if (k < 0) throw std::invalid_argument("pb_shift: negative shift");
  std::vector<PBLetter> out(w.letters());
  for (auto& l : out) l.index += k;
  return PBWord(std::move(out));
}

inline PBWord from_braid(const BraidWord& b) {
  std::vector<PBLetter> out;
  for (int l : b) out.push_back({Family::Sigma, std::abs(l), l > 0 ? 1 : -1});
  return PBWord(std::move(out));
}

// ---------------------------------------------------------------------------
// The two operations and term evaluation
// ---------------------------------------------------------------------------

/// b * c = b . sh(c) . sigma_1 . sh(b)^-1
inline PBWord pb_star(const PBWord& b, const PBWord& c) {
  PBWord out = b;
  out *= pb_shift(c);
  out *= pb_sigma(1);
  out *= pb_shift(b).inverse();
  return out;
}

/// b o c = b . sh(c) . a_1
inline PBWord pb_circ(const PBWord& b, const PBWord& c) {
  PBWord out = b;
  out *= pb_shift(c);
  out *= pb_a(1);
  return out;
}

/// Structural evaluation of a one-variable term at g.
inline PBWord pb_eval_term(const Term& t, const PBWord& g = {}) {
  if (!t.is_one_variable()) throw std::invalid_argument("pb_eval_term: one-variable terms only");
  if (t.is_var()) return g;
  PBWord l = pb_eval_term(t.left(), g);
  PBWord r = pb_eval_term(t.right(), g);
  return t.is_star() ? pb_star(l, r) : pb_circ(l, r);
}

/// v(1): the value of a skeleton at the identity; a word in the a_i only.
inline PBWord eval_at_identity(const Term& v) {
  if (!is_circ_skeleton(v)) throw std::invalid_argument("eval_at_identity: argument must be an o-skeleton");
  return pb_eval_term(v, {});
}

/// t_1(g) . sh t_2(g) . ... . sh^{p-1} t_p(g) . v(1) for t = v[t_1, ..., t_p].
inline PBWord pb_eval_closed(const Term& v, const TermSeq& parts, const PBWord& g = {}) {
  if (!is_circ_skeleton(v)) throw std::invalid_argument("pb_eval_closed: skeleton must be built from o and x only");
  if (v.size() != parts.length()) throw std::invalid_argument("pb_eval_closed: sequence length differs from skeleton size");
  PBWord out;
  for (std::size_t k = 0; k < parts.length(); ++k) {
    if (parts[k].has_circ()) throw std::invalid_argument("pb_eval_closed: entries must be *-terms");
    out *= pb_shift(pb_eval_term(parts[k], g), static_cast<int>(k));
  }
  out *= eval_at_identity(v);
  return out;
}

// ---------------------------------------------------------------------------
// Partial right action on skeletons
// ---------------------------------------------------------------------------

namespace detail {

/// Splits v = b_1 o (b_2 o ... o (b_count o rest)); false if the right branch
/// is too short.
inline bool split_blocks(const Term& v, int count, std::vector<Term>& blocks, Term& rest) {
  blocks.clear();
  const Term* cur = &v;
  for (int k = 0; k < count; ++k) {
    if (!cur->is_circ()) return false;
    blocks.push_back(cur->left());
    cur = &cur->right();
  }
  rest = *cur;
  return true;
}

inline Term join_blocks(const std::vector<Term>& blocks, Term rest) {
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) rest = circ(*it, std::move(rest));
  return rest;
}

}  // namespace detail

/// Acts by one letter.  Writing v = v_1 o ... o v_{i+2}:
///   a_i:        v_1 o ... o (v_i o v_{i+1}) o v_{i+2}
///   a_i^-1:     the inverse split, defined when block i is a compound
///   sigma_i^+-: blocks i and i+1 exchanged
inline std::optional<Term> pb_act_letter(const Term& v, const PBLetter& l) {
  std::vector<Term> blocks;
  Term rest;
  const int i = l.index;
  if (l.family == Family::A && l.sign < 0) {
    if (!detail::split_blocks(v, i, blocks, rest)) return std::nullopt;
    Term bi = blocks.back();
    if (!bi.is_circ()) return std::nullopt;
    blocks.back() = bi.left();
    blocks.push_back(bi.right());
    return detail::join_blocks(blocks, std::move(rest));
  }
  if (!detail::split_blocks(v, i + 1, blocks, rest)) return std::nullopt;
  if (l.family == Family::A) {
    Term merged = circ(blocks[i - 1], blocks[i]);
    blocks.pop_back();
    blocks.back() = std::move(merged);
  } else {
    std::swap(blocks[i - 1], blocks[i]);
  }
  return detail::join_blocks(blocks, std::move(rest));
}

/// Acts letter by letter, left to right; nullopt when some step is undefined.
inline std::optional<Term> pb_act_term(const Term& v, const PBWord& w) {
  if (!is_circ_skeleton(v)) throw std::invalid_argument("pb_act_term: argument must be an o-skeleton");
  std::optional<Term> cur = v;
  for (const auto& l : w) {
    cur = pb_act_letter(*cur, l);
    if (!cur) return std::nullopt;
  }
  return cur;
}

/// Left o-factor of a skeleton (the skeleton itself when it is x).
inline Term left_factor(const Term& v) { return v.is_circ() ? v.left() : v; }

struct ShiftCertificate {
  Term start;
  Term image;
};

inline int default_certificate_depth(const PBWord& w) {
  int a_letters = 0;
  for (const auto& l : w)
    if (l.family == Family::A) ++a_letters;
  return a_letters + w.max_index() + 3;
}

/// One-sided test that w is not in the image of the shift: every shifted
/// word fixes the left o-factor of any skeleton it acts on, so a skeleton
/// whose left factor w changes is a certificate.  Tries x^[N] first, then
/// u o x^[N - |u|] for skeletons u with up to (inverse a-letters + 2) leaves;
/// a compound head is what lets a crossing move the left factor.
inline std::optional<ShiftCertificate> not_in_image_shift(const PBWord& w, int depth = 0) {
  const int n = depth > 0 ? depth : default_certificate_depth(w);
  int inverse_a = 0;
  for (const auto& l : w)
    if (l.family == Family::A && l.sign < 0) ++inverse_a;
  std::vector<Term> heads{var(1)};
  const int max_head = std::min(inverse_a + 2, n - 1);
  if (max_head >= 2) {
    for (const Term& u : enumerate_terms(1, {Op::Circ}, max_head))
      if (u.is_compound()) heads.push_back(u);
  }
  for (const Term& head : heads) {
    const int tail = n - static_cast<int>(head.size());
    if (tail < 1) continue;
    Term start = head.is_var() ? x_power(n) : circ(head, x_power(tail));
    auto image = pb_act_term(start, w);
    if (image && !(left_factor(*image) == left_factor(start))) return ShiftCertificate{start, *image};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Defining relations and their consequences
// ---------------------------------------------------------------------------

/// Equality oracle on words of the parenthesized braid group.
using PBEqual = std::function<bool(const PBWord&, const PBWord&)>;

struct RelationInstance {
  std::string family;
  int i;
  int j;
  PBWord lhs;
  PBWord rhs;
};

/// Every instance of the defining relations with 1 <= i, j <= max_index.
///   j >= i+2: s_j s_i = s_i s_j,  a_j s_i = s_i a_j
///   j <= i-1: a_j s_i = s_{i+1} a_j,  a_j a_i = a_{i+1} a_j
///   j = i+1:  s_j s_i s_j = s_i s_j s_i,  s_i s_j a_i = a_j s_i,
///             s_j s_i a_j = a_i s_i
inline std::vector<RelationInstance> presentation_relations(int max_index) {
  std::vector<RelationInstance> out;
  for (int i = 1; i <= max_index; ++i) {
    for (int j = 1; j <= max_index; ++j) {
      if (j >= i + 2) {
        out.push_back({"sigma_far_commute", i, j, pb_sigma(j) * pb_sigma(i), pb_sigma(i) * pb_sigma(j)});
        out.push_back({"a_sigma_far_commute", i, j, pb_a(j) * pb_sigma(i), pb_sigma(i) * pb_a(j)});
      }
      if (j <= i - 1) {
        out.push_back({"a_sigma_shift", i, j, pb_a(j) * pb_sigma(i), pb_sigma(i + 1) * pb_a(j)});
        out.push_back({"thompson", i, j, pb_a(j) * pb_a(i), pb_a(i + 1) * pb_a(j)});
      }
      if (j == i + 1) {
        out.push_back({"braid", i, j, pb_sigma(j) * pb_sigma(i) * pb_sigma(j), pb_sigma(i) * pb_sigma(j) * pb_sigma(i)});
        out.push_back({"sigma_sigma_a", i, j, pb_sigma(i) * pb_sigma(j) * pb_a(i), pb_a(j) * pb_sigma(i)});
        out.push_back({"sigma_sigma_a_reverse", i, j, pb_sigma(j) * pb_sigma(i) * pb_a(j), pb_a(i) * pb_sigma(i)});
      }
    }
  }
  return out;
}

/// Words obtained by one relation application (either orientation, also on
/// inverted relators), one free cancellation, or one free insertion of a
/// letter with index <= max_index(w) + 1.
inline std::vector<PBWord> pb_relation_neighbors(const PBWord& w) {
  const int top = w.max_index() + 1;
  std::vector<PBWord> out;
  const auto& ls = w.letters();
  auto splice = [&](std::size_t at, std::size_t len, const PBWord& with) {
    std::vector<PBLetter> v(ls.begin(), ls.begin() + static_cast<long>(at));
    v.insert(v.end(), with.begin(), with.end());
    v.insert(v.end(), ls.begin() + static_cast<long>(at + len), ls.end());
    out.emplace_back(std::move(v));
  };
  std::vector<std::pair<PBWord, PBWord>> rules;
  for (const auto& r : presentation_relations(top)) {
    rules.emplace_back(r.lhs, r.rhs);
    rules.emplace_back(r.rhs, r.lhs);
    rules.emplace_back(r.lhs.inverse(), r.rhs.inverse());
    rules.emplace_back(r.rhs.inverse(), r.lhs.inverse());
  }
  for (const auto& [from, to] : rules) {
    const auto& f = from.letters();
    if (f.size() > ls.size()) continue;
    for (std::size_t at = 0; at + f.size() <= ls.size(); ++at)
      if (std::equal(f.begin(), f.end(), ls.begin() + static_cast<long>(at))) splice(at, f.size(), to);
  }
  for (std::size_t at = 0; at + 1 < ls.size(); ++at)
    if (ls[at + 1] == ls[at].inverse()) splice(at, 2, PBWord{});
  for (std::size_t at = 0; at <= ls.size(); ++at)
    for (Family fam : {Family::Sigma, Family::A})
      for (int i = 1; i <= top; ++i)
        for (int sign : {1, -1}) splice(at, 0, PBWord{{fam, i, sign}, {fam, i, -sign}});
  return out;
}

/// v(1) . sh(b) = sh^p(b) . v(1) for a skeleton v with p leaves.
inline bool check_skeleton_commutation(const Term& v, const PBWord& b, const PBEqual& eq) {
  PBWord unit = eval_at_identity(v);
  PBWord lhs = unit * pb_shift(b);
  PBWord rhs = pb_shift(b, static_cast<int>(v.size())) * unit;
  return eq(lhs, rhs);
}

struct EquationCheck {
  std::string name;
  std::string z;  // empty when the equation has no parameter
  PBWord lhs;
  PBWord rhs;
  bool holds;
};

/// Word equations forced on any group carrying operations of the form
/// x*y = x.sh(y).s.sh(x)^-1, x o y = x.sh(y).a: the instances
/// 1*(1*z) = (1*1)*(1*z), 1*(1*z) = (1 o 1)*z, 1*(1 o 1) = (1*1) o (1*1)
/// and the identities derived from them.
inline std::vector<EquationCheck> audit_ald_word_equations(const PBEqual& eq, const std::vector<PBWord>& z_samples) {
  std::vector<EquationCheck> out;
  auto add = [&](std::string name, const PBWord* z, PBWord lhs, PBWord rhs) {
    bool holds = eq(lhs, rhs);
    out.push_back({std::move(name), z ? render_pb_word(*z) : std::string{}, std::move(lhs), std::move(rhs), holds});
  };
  const PBWord s1 = pb_sigma(1), s2 = pb_sigma(2), a1 = pb_a(1), a2 = pb_a(2);
  add("braid_relation", nullptr, s1 * s2 * s1, s2 * s1 * s2);
  add("a1_s1", nullptr, a1 * s1, s2 * s1 * a2);
  add("a2_s1", nullptr, a2 * s1, s1 * s2 * a1);
  for (const PBWord& z : z_samples) {
    const PBWord z1 = pb_shift(z, 1), z2 = pb_shift(z, 2);
    add("ld_instance", &z, z2 * s2 * s1, s1 * z2 * s2 * s1 * s2.inverse());
    add("shift2_commutes_s1", &z, z2 * s1, s1 * z2);
    add("ald1_instance", &z, z2 * s2 * s1, a1 * z1 * s1 * a2.inverse());
    add("shift2_conjugates_a1", &z, z2 * a1, a1 * z1);
  }
  return out;
}

/// Uniform random word of the given length over sigma_i^+-1, a_i^+-1 with
/// indices <= max_index.
template <class Rng>
PBWord random_pb_word(Rng& rng, std::size_t length, int max_index, bool with_a = true) {
  std::uniform_int_distribution<int> idx(1, max_index);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<PBLetter> out;
  for (std::size_t k = 0; k < length; ++k) {
    Family fam = with_a && coin(rng) ? Family::A : Family::Sigma;
    out.push_back({fam, idx(rng), coin(rng) ? 1 : -1});
  }
  return PBWord(std::move(out));
}

}  // namespace ald
