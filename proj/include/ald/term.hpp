#pragma once

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ald {

enum class Op : std::uint8_t { Star, Circ };

/// Immutable binary term over the operators `*` and `o` with variable leaves
/// x1, x2, ...  Copies share structure; equality is structural.
class Term {
 public:
  Term();

  static Term variable(int index);
  static Term compound(Op op, Term left, Term right);

  bool is_var() const;
  bool is_compound() const { return !is_var(); }
  bool is_star() const { return is_compound() && op() == Op::Star; }
  bool is_circ() const { return is_compound() && op() == Op::Circ; }
  int var_index() const;
  Op op() const;
  const Term& left() const;
  const Term& right() const;

  /// Number of variable occurrences.
  std::size_t size() const;
  /// Length of the rightmost branch.
  std::size_t ht_r() const;
  int max_var() const;
  bool has_star() const;
  bool has_circ() const;
  std::size_t hash() const;

  /// Only the variable x1 occurs.
  bool is_one_variable() const { return max_var() == 1; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  int var = 0;  // 0 marks a compound node
  Op op = Op::Star;
  Term left{nullptr};
  Term right{nullptr};
  std::size_t size = 0;
  std::size_t ht_r = 0;
  int max_var = 0;
  bool has_star = false;
  bool has_circ = false;
  std::size_t hash = 0;
};

inline Term::Term() : Term(variable(1)) {}

inline Term Term::variable(int index) {
  if (index < 1) throw std::invalid_argument("variable index must be >= 1");
  auto n = std::make_shared<Node>();
  n->var = index;
  n->size = 1;
  n->ht_r = 0;
  n->max_var = index;
  n->hash = std::hash<int>{}(index) * 0x9E3779B97F4A7C15ULL;
  return Term(std::move(n));
}

inline Term Term::compound(Op op, Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->size = left.size() + right.size();
  n->ht_r = right.ht_r() + 1;
  n->max_var = std::max(left.max_var(), right.max_var());
  n->has_star = op == Op::Star || left.has_star() || right.has_star();
  n->has_circ = op == Op::Circ || left.has_circ() || right.has_circ();
  std::size_t h = op == Op::Star ? 0x51ED27ULL : 0xC1C0ULL;
  h ^= left.hash() + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  h ^= right.hash() * 31 + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  n->hash = h;
  n->left = std::move(left);
  n->right = std::move(right);
  return Term(std::move(n));
}

inline bool Term::is_var() const { return node_->var != 0; }
inline int Term::var_index() const { return node_->var; }
inline Op Term::op() const { return node_->op; }
inline const Term& Term::left() const { return node_->left; }
inline const Term& Term::right() const { return node_->right; }
inline std::size_t Term::size() const { return node_->size; }
inline std::size_t Term::ht_r() const { return node_->ht_r; }
inline int Term::max_var() const { return node_->max_var; }
inline bool Term::has_star() const { return node_->has_star; }
inline bool Term::has_circ() const { return node_->has_circ; }
inline std::size_t Term::hash() const { return node_->hash; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  if (a.is_var() || b.is_var()) return a.node_->var == b.node_->var;
  return a.node_->op == b.node_->op && a.left() == b.left() && a.right() == b.right();
}

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

inline Term var(int index = 1) { return Term::variable(index); }
inline Term star(Term a, Term b) { return Term::compound(Op::Star, std::move(a), std::move(b)); }
inline Term circ(Term a, Term b) { return Term::compound(Op::Circ, std::move(a), std::move(b)); }

/// Only `o` and x1 occur (the skeleton terms).
inline bool is_circ_skeleton(const Term& t) { return !t.has_star() && t.is_one_variable(); }

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  // Both operators share one precedence level and associate to the right.
  Term term() {
    Term lhs = primary();
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == 'o')) {
      Op op = text_[pos_] == '*' ? Op::Star : Op::Circ;
      ++pos_;
      Term rhs = term();
      return Term::compound(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Term primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (c == 'x') {
      ++pos_;
      std::size_t start = pos_;
      long index = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        index = index * 10 + (text_[pos_] - '0');
        if (index > 1'000'000) throw ParseError("variable index too large", start);
        ++pos_;
      }
      if (pos_ == start) return Term::variable(1);
      if (index < 1) throw ParseError("variable index must be >= 1", start);
      return Term::variable(static_cast<int>(index));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void render_into(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += 'x';
    out += std::to_string(t.var_index());
    return;
  }
  if (t.left().is_compound()) {
    out += '(';
    render_into(t.left(), out);
    out += ')';
  } else {
    render_into(t.left(), out);
  }
  out += t.op() == Op::Star ? "*" : " o ";
  render_into(t.right(), out);
}

}  // namespace detail

/// Grammar: `term := atom | term op term | "(" term ")"`, `op := "*" | "o"`,
/// `atom := "x" digits?`.  Operators associate to the right.
inline Term parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

/// Canonical form with minimal parentheses; only compound left operands are
/// bracketed.
inline std::string render_term(const Term& t) {
  std::string out;
  detail::render_into(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Term sequences
// ---------------------------------------------------------------------------

/// Nonempty finite sequence of terms.
class TermSeq {
 public:
  TermSeq(std::initializer_list<Term> entries) : entries_(entries) { check(); }
  explicit TermSeq(std::vector<Term> entries) : entries_(std::move(entries)) { check(); }

  std::size_t length() const { return entries_.size(); }
  const Term& operator[](std::size_t k) const { return entries_[k]; }
  const std::vector<Term>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const TermSeq&, const TermSeq&) = default;

 private:
  void check() const {
    if (entries_.empty()) throw std::invalid_argument("term sequence must be nonempty");
  }
  std::vector<Term> entries_;
};

/// s1 * (s2 * (... * (sp * t))).
inline Term star_chain(const TermSeq& s, const Term& t) {
  Term acc = t;
  for (auto it = s.entries().rbegin(); it != s.entries().rend(); ++it) acc = star(*it, acc);
  return acc;
}

/// Entrywise left action: k-th entry is s1 * ... * sp * t_k.
inline TermSeq seq_star(const TermSeq& s, const TermSeq& t) {
  std::vector<Term> out;
  out.reserve(t.length());
  for (const Term& tk : t) out.push_back(star_chain(s, tk));
  return TermSeq(std::move(out));
}

inline TermSeq seq_concat(const TermSeq& s, const TermSeq& t) {
  std::vector<Term> out(s.entries());
  out.insert(out.end(), t.begin(), t.end());
  return TermSeq(std::move(out));
}

inline std::string render_seq(const TermSeq& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.length(); ++k) {
    if (k) out += ", ";
    out += render_term(s[k]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Substitution into skeletons and special terms
// ---------------------------------------------------------------------------

namespace detail {

inline Term substitute_from(const Term& v, const TermSeq& t, std::size_t& next) {
  if (v.is_var()) return t[next++];
  Term l = substitute_from(v.left(), t, next);
  Term r = substitute_from(v.right(), t, next);
  return circ(std::move(l), std::move(r));
}

inline Term skeleton_of(const Term& t, std::vector<Term>& parts) {
  if (t.is_circ()) {
    Term l = skeleton_of(t.left(), parts);
    Term r = skeleton_of(t.right(), parts);
    return circ(std::move(l), std::move(r));
  }
  parts.push_back(t);
  return var(1);
}

}  // namespace detail

/// Replaces the leaves of the skeleton `v` by the entries of `t`, left to right.
inline Term substitute(const Term& v, const TermSeq& t) {
  if (!is_circ_skeleton(v)) throw std::invalid_argument("substitute: skeleton must be built from o and x only");
  if (v.size() != t.length()) throw std::invalid_argument("substitute: sequence length differs from skeleton size");
  std::size_t next = 0;
  return detail::substitute_from(v, t, next);
}

struct SpecialDecomposition {
  Term skeleton;
  TermSeq parts;
};

/// Inverts `substitute` when no `o` lies below a `*`; nullopt otherwise.
inline std::optional<SpecialDecomposition> decompose_special(const Term& t) {
  std::vector<Term> parts;
  Term skeleton = detail::skeleton_of(t, parts);
  for (const Term& p : parts)
    if (p.has_circ()) return std::nullopt;
  return SpecialDecomposition{std::move(skeleton), TermSeq(std::move(parts))};
}

inline bool is_special(const Term& t) { return decompose_special(t).has_value(); }

// ---------------------------------------------------------------------------
// Orders
// ---------------------------------------------------------------------------

/// Strict linear order on skeletons: x is least; compounds compare by left
/// part first, then by right part.
inline bool circ_less(const Term& u, const Term& v) {
  if (!is_circ_skeleton(u) || !is_circ_skeleton(v)) throw std::invalid_argument("circ_less: arguments must be o-skeletons");
  if (u.is_var()) return !v.is_var();
  if (v.is_var()) return false;
  if (u.left() == v.left()) return circ_less(u.right(), v.right());
  return circ_less(u.left(), v.left());
}

/// True iff t = (...((s * t1) * t2)...) * tp for some p >= 1.
inline bool is_iter_left_subterm(const Term& s, const Term& t) {
  const Term* cur = &t;
  while (cur->is_star()) {
    cur = &cur->left();
    if (*cur == s) return true;
  }
  return false;
}

/// Equal lengths, equal entries up to some k, and s_k an iterated left
/// subterm of t_k.
inline bool seq_sq(const TermSeq& s, const TermSeq& t) {
  if (s.length() != t.length()) return false;
  for (std::size_t k = 0; k < s.length(); ++k) {
    if (s[k] == t[k]) continue;
    return is_iter_left_subterm(s[k], t[k]);
  }
  return false;
}

/// Right comb x o (x o (... o x)) with `n` leaves.
inline Term x_power(int n) {
  if (n < 1) throw std::invalid_argument("x_power: exponent must be >= 1");
  Term acc = var(1);
  for (int k = 1; k < n; ++k) acc = circ(var(1), acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Rewriting by the three laws
// ---------------------------------------------------------------------------

enum class Law : std::uint8_t { LD, ALD1, ALD2 };

/// Expand: LD  a*(b*c) -> (a*b)*(a*c)
///         ALD1 (a o b)*c -> a*(b*c)
///         ALD2 a*(b o c) -> (a*b) o (a*c)
/// Contract is the reverse rewrite.
enum class Direction : std::uint8_t { Expand, Contract };

/// Root-to-node path over 'L' / 'R'.
using Path = std::string;

struct LawInstance {
  Law law;
  Path position;
  Direction direction;

  friend bool operator==(const LawInstance&, const LawInstance&) = default;
};

inline const char* law_name(Law law) {
  switch (law) {
    case Law::LD: return "LD";
    case Law::ALD1: return "ALD1";
    case Law::ALD2: return "ALD2";
  }
  return "?";
}

inline std::string render_instance(const LawInstance& inst) {
  std::string out = law_name(inst.law);
  out += inst.direction == Direction::Expand ? " expand at " : " contract at ";
  out += inst.position.empty() ? std::string("root") : inst.position;
  return out;
}

class LawMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rewrites a redex rooted at the top of `t`; nullopt when the pattern does
/// not match.
inline std::optional<Term> rewrite_root(const Term& t, Law law, Direction dir) {
  if (!t.is_compound()) return std::nullopt;
  switch (law) {
    case Law::LD:
      if (dir == Direction::Expand) {
        if (!t.is_star() || !t.right().is_star()) return std::nullopt;
        const Term& a = t.left();
        return star(star(a, t.right().left()), star(a, t.right().right()));
      } else {
        if (!t.is_star() || !t.left().is_star() || !t.right().is_star()) return std::nullopt;
        if (!(t.left().left() == t.right().left())) return std::nullopt;
        return star(t.left().left(), star(t.left().right(), t.right().right()));
      }
    case Law::ALD1:
      if (dir == Direction::Expand) {
        if (!t.is_star() || !t.left().is_circ()) return std::nullopt;
        return star(t.left().left(), star(t.left().right(), t.right()));
      } else {
        if (!t.is_star() || !t.right().is_star()) return std::nullopt;
        return star(circ(t.left(), t.right().left()), t.right().right());
      }
    case Law::ALD2:
      if (dir == Direction::Expand) {
        if (!t.is_star() || !t.right().is_circ()) return std::nullopt;
        const Term& a = t.left();
        return circ(star(a, t.right().left()), star(a, t.right().right()));
      } else {
        if (!t.is_circ() || !t.left().is_star() || !t.right().is_star()) return std::nullopt;
        if (!(t.left().left() == t.right().left())) return std::nullopt;
        return star(t.left().left(), circ(t.left().right(), t.right().right()));
      }
  }
  return std::nullopt;
}

namespace detail {

inline Term apply_at(const Term& t, std::string_view path, Law law, Direction dir) {
  if (path.empty()) {
    auto r = rewrite_root(t, law, dir);
    if (!r) throw LawMismatch("apply_law: pattern mismatch");
    return *r;
  }
  if (!t.is_compound()) throw LawMismatch("apply_law: position leaves the term");
  if (path.front() == 'L') return Term::compound(t.op(), apply_at(t.left(), path.substr(1), law, dir), t.right());
  if (path.front() == 'R') return Term::compound(t.op(), t.left(), apply_at(t.right(), path.substr(1), law, dir));
  throw std::invalid_argument("apply_law: path letters must be L or R");
}

}  // namespace detail

inline Term apply_law(const Term& t, const LawInstance& inst) {
  return detail::apply_at(t, inst.position, inst.law, inst.direction);
}

inline const Term& subterm_at(const Term& t, std::string_view path) {
  const Term* cur = &t;
  for (char c : path) {
    if (!cur->is_compound()) throw std::invalid_argument("subterm_at: position leaves the term");
    cur = c == 'L' ? &cur->left() : &cur->right();
  }
  return *cur;
}

struct Rewrite {
  LawInstance instance;
  Term result;
};

/// Every single-step rewrite of `t` by the given laws, both directions, all
/// positions (preorder of positions, laws in the given order, expand first).
inline std::vector<Rewrite> all_rewrites(const Term& t, std::initializer_list<Law> laws = {Law::LD, Law::ALD1, Law::ALD2}) {
  std::vector<Rewrite> out;
  std::vector<Law> law_list(laws);
  std::vector<Path> stack{Path{}};
  while (!stack.empty()) {
    Path p = std::move(stack.back());
    stack.pop_back();
    const Term& sub = subterm_at(t, p);
    for (Law law : law_list) {
      for (Direction dir : {Direction::Expand, Direction::Contract}) {
        if (auto r = rewrite_root(sub, law, dir)) {
          LawInstance inst{law, p, dir};
          out.push_back({inst, apply_law(t, inst)});
        }
      }
    }
    if (sub.is_compound()) {
      stack.push_back(p + 'R');
      stack.push_back(p + 'L');
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All terms over variables x1..x{n_vars} and the given operators with size
/// at most `max_size`, ordered by size, then by (left size, left, right, op).
inline std::vector<Term> enumerate_terms(int n_vars, std::vector<Op> ops, int max_size) {
  if (max_size < 1) throw std::invalid_argument("enumerate_terms: max_size must be >= 1");
  if (n_vars < 1) throw std::invalid_argument("enumerate_terms: need at least one variable");
  std::vector<std::vector<Term>> by_size(static_cast<std::size_t>(max_size) + 1);
  for (int i = 1; i <= n_vars; ++i) by_size[1].push_back(var(i));
  for (int s = 2; s <= max_size; ++s) {
    for (int k = 1; k < s; ++k)
      for (const Term& l : by_size[k])
        for (const Term& r : by_size[s - k])
          for (Op op : ops) by_size[s].push_back(Term::compound(op, l, r));
  }
  std::vector<Term> out;
  for (auto& bucket : by_size) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

inline std::vector<Term> enumerate_one_variable(int max_size, std::vector<Op> ops = {Op::Star, Op::Circ}) {
  return enumerate_terms(1, std::move(ops), max_size);
}

}  // namespace ald
