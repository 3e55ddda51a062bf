#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ald/braid.hpp"
#include "ald/garside.hpp"
#include "ald/pb_word.hpp"
#include "ald/term.hpp"

namespace ald {

/// Finite rooted binary tree stored in preorder: 1 marks a caret (internal
/// node), 0 a leaf.  Leaves are numbered left to right from 0.
class Tree {
 public:
  Tree() : nodes_{0} {}

  static Tree right_comb(int leaves) {
    if (leaves < 1) throw std::invalid_argument("right_comb: need at least one leaf");
    Tree t;
    t.nodes_.clear();
    for (int k = 1; k < leaves; ++k) {
      t.nodes_.push_back(1);
      t.nodes_.push_back(0);
    }
    t.nodes_.push_back(0);
    return t;
  }

  /// Shape of an o-skeleton.
  static Tree from_term(const Term& v) {
    if (!is_circ_skeleton(v)) throw std::invalid_argument("Tree::from_term: argument must be an o-skeleton");
    Tree t;
    t.nodes_.clear();
    std::vector<const Term*> stack{&v};
    while (!stack.empty()) {
      const Term* cur = stack.back();
      stack.pop_back();
      if (cur->is_var()) {
        t.nodes_.push_back(0);
      } else {
        t.nodes_.push_back(1);
        stack.push_back(&cur->right());
        stack.push_back(&cur->left());
      }
    }
    return t;
  }

  Term to_term() const {
    std::size_t pos = 0;
    return build(pos);
  }

  /// `x` for a leaf, `(LR)` for a caret.
  static Tree parse(std::string_view text) {
    Tree t;
    t.nodes_.clear();
    std::size_t pos = 0;
    parse_into(text, pos, t.nodes_);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseError("trailing characters in tree", pos);
    return t;
  }

  std::string render() const {
    std::string out;
    std::size_t pos = 0;
    render_into(pos, out);
    return out;
  }

  int leaves() const {
    int n = 0;
    for (auto b : nodes_) n += b == 0;
    return n;
  }

  const std::vector<std::uint8_t>& nodes() const { return nodes_; }

  /// Replaces leaf k by a caret.
  Tree split_leaf(int k) const {
    std::size_t at = leaf_position(k);
    Tree t = *this;
    t.nodes_[at] = 1;
    t.nodes_.insert(t.nodes_.begin() + static_cast<long>(at) + 1, {0, 0});
    return t;
  }

  /// Left leaf index of every caret whose children are both leaves.
  std::vector<int> exposed_carets() const {
    std::vector<int> out;
    int leaf = 0;
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
      if (nodes_[p] == 0) {
        ++leaf;
        continue;
      }
      if (p + 2 < nodes_.size() && nodes_[p + 1] == 0 && nodes_[p + 2] == 0) out.push_back(leaf);
    }
    return out;
  }

  bool has_exposed_caret(int k) const {
    for (int c : exposed_carets())
      if (c == k) return true;
    return false;
  }

  /// Collapses the exposed caret over leaves k, k+1.
  Tree merge_caret(int k) const {
    std::size_t at = leaf_position(k);
    if (at == 0 || nodes_[at - 1] != 1 || at + 1 >= nodes_.size() || nodes_[at + 1] != 0)
      throw std::invalid_argument("merge_caret: leaves are not an exposed caret");
    Tree t = *this;
    t.nodes_.erase(t.nodes_.begin() + static_cast<long>(at), t.nodes_.begin() + static_cast<long>(at) + 2);
    t.nodes_[at - 1] = 0;
    return t;
  }

  /// Caret with a single leaf on the left and this tree on the right.
  Tree graft_right() const {
    Tree t;
    t.nodes_.resize(nodes_.size() + 2);
    t.nodes_[0] = 1;
    t.nodes_[1] = 0;
    std::copy(nodes_.begin(), nodes_.end(), t.nodes_.begin() + 2);
    return t;
  }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  std::size_t leaf_position(int k) const {
    int leaf = 0;
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
      if (nodes_[p] == 0) {
        if (leaf == k) return p;
        ++leaf;
      }
    }
    throw std::out_of_range("tree leaf index out of range");
  }

  Term build(std::size_t& pos) const {
    if (nodes_[pos++] == 0) return var(1);
    Term l = build(pos);
    Term r = build(pos);
    return circ(std::move(l), std::move(r));
  }

  void render_into(std::size_t& pos, std::string& out) const {
    if (nodes_[pos++] == 0) {
      out += 'x';
      return;
    }
    out += '(';
    render_into(pos, out);
    render_into(pos, out);
    out += ')';
  }

  static void parse_into(std::string_view text, std::size_t& pos, std::vector<std::uint8_t>& out) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) throw ParseError("unexpected end of tree", pos);
    if (text[pos] == 'x') {
      ++pos;
      out.push_back(0);
      return;
    }
    if (text[pos] != '(') throw ParseError("expected 'x' or '('", pos);
    ++pos;
    out.push_back(1);
    parse_into(text, pos, out);
    parse_into(text, pos, out);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
    ++pos;
  }

  std::vector<std::uint8_t> nodes_;
};

/// Top tree, braid on its leaves, bottom tree.  The last leaf of each tree
/// stands for the infinite tail of strands.  Products stack the second
/// factor below the first.
struct PBDiagram {
  Tree dom;
  BraidWord braid;
  Tree cod;

  int strands() const { return dom.leaves(); }

  void validate() const {
    if (dom.leaves() != cod.leaves()) throw std::invalid_argument("PBDiagram: trees have different leaf counts");
    if (braid.max_index() >= dom.leaves()) throw std::invalid_argument("PBDiagram: braid uses too many strands");
  }
};

inline PBDiagram identity_diagram() { return {Tree(), BraidWord{}, Tree()}; }

/// Combs with i+2 leaves, one positive crossing of strands i and i+1.
inline PBDiagram gen_sigma(int i) {
  if (i < 1) throw std::invalid_argument("gen_sigma: index must be >= 1");
  return {Tree::right_comb(i + 2), sigma(i), Tree::right_comb(i + 2)};
}

/// Comb with i+2 leaves on top; below, the same blocks with blocks i and i+1
/// joined under one caret.  Straight strands.
inline PBDiagram gen_a(int i) {
  if (i < 1) throw std::invalid_argument("gen_a: index must be >= 1");
  std::vector<Term> blocks(static_cast<std::size_t>(i - 1), var(1));
  blocks.push_back(circ(var(1), var(1)));
  Term bottom = detail::join_blocks(blocks, var(1));
  return {Tree::right_comb(i + 2), BraidWord{}, Tree::from_term(bottom)};
}

inline PBDiagram diagram_inverse(const PBDiagram& d) { return {d.cod, d.braid.inverse(), d.dom}; }

inline std::vector<int> diagram_permutation(const PBDiagram& d) { return braid_permutation(d.braid, d.strands()); }

namespace detail {

/// Replaces the strand starting at 0-based top position p by two parallel
/// strands.
inline std::pair<BraidWord, int> cable_strand(const BraidWord& b, int p) {
  std::vector<int> out;
  out.reserve(b.length() + 8);
  for (int l : b) {
    const int i = std::abs(l);
    const int e = l > 0 ? 1 : -1;
    if (i - 1 > p) {
      out.push_back(e * (i + 1));
    } else if (i < p) {
      out.push_back(l);
    } else if (i - 1 == p) {
      out.push_back(e * (i + 1));
      out.push_back(e * i);
      p = i;
    } else {
      out.push_back(e * i);
      out.push_back(e * (i + 1));
      p = i - 1;
    }
  }
  return {BraidWord(std::move(out)), p};
}

/// Forgets the strand starting at 0-based top position p.
inline BraidWord delete_strand(const BraidWord& b, int p) {
  std::vector<int> out;
  out.reserve(b.length());
  for (int l : b) {
    const int i = std::abs(l);
    const int e = l > 0 ? 1 : -1;
    if (i - 1 == p) {
      p = i;
    } else if (i == p) {
      p = i - 1;
    } else if (i - 1 > p) {
      out.push_back(e * (i - 1));
    } else {
      out.push_back(l);
    }
  }
  return BraidWord(std::move(out));
}

inline PBDiagram split_top(const PBDiagram& d, int k) {
  auto [cabled, end] = cable_strand(d.braid, k);
  return {d.dom.split_leaf(k), std::move(cabled), d.cod.split_leaf(end)};
}

inline PBDiagram split_bottom(const PBDiagram& d, int q) {
  auto perm = diagram_permutation(d);
  for (int k = 0; k < static_cast<int>(perm.size()); ++k)
    if (perm[k] == q) return split_top(d, k);
  throw std::out_of_range("split_bottom: leaf index out of range");
}

}  // namespace detail

/// Splits the strand starting at top leaf k (1-based): a caret on that leaf,
/// a caret on the leaf where the strand ends, and the braid cabled.
inline PBDiagram split_strand(const PBDiagram& d, int k) {
  if (k < 1 || k > d.strands()) throw std::out_of_range("split_strand: leaf index out of range");
  return detail::split_top(d, k - 1);
}

inline PBDiagram diagram_multiply(PBDiagram top, PBDiagram bottom) {
  // Refine both factors until the middle trees agree.
  for (;;) {
    const auto& a = top.cod.nodes();
    const auto& b = bottom.dom.nodes();
    std::size_t i = 0, j = 0;
    int leaf_a = 0, leaf_b = 0;
    bool changed = false;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) {
        if (a[i] == 0) {
          ++leaf_a;
          ++leaf_b;
        }
        ++i;
        ++j;
        continue;
      }
      if (a[i] == 0) {
        top = detail::split_bottom(top, leaf_a);
      } else {
        bottom = detail::split_top(bottom, leaf_b);
      }
      changed = true;
      break;
    }
    if (!changed) break;
  }
  return {std::move(top.dom), top.braid * bottom.braid, std::move(bottom.cod)};
}

/// Model-level shift: graft a leaf on the left of both trees, shift the
/// braid.
inline PBDiagram diagram_shift(const PBDiagram& d) {
  return {d.dom.graft_right(), braid_shift(d.braid, 1), d.cod.graft_right()};
}

enum class SiteOrder : std::uint8_t { First, Last, Random };

/// Merges reducible carets until none remain.  A top caret over leaves
/// (k, k+1) is reducible when the two strands end side by side under a
/// bottom caret and the braid is the cabling of the braid with strand k+1
/// forgotten.
inline PBDiagram diagram_reduce(PBDiagram d, SiteOrder order = SiteOrder::First, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  d.braid = handle_reduce(d.braid);
  for (;;) {
    auto perm = diagram_permutation(d);
    std::vector<int> sites;
    for (int k : d.dom.exposed_carets()) {
      int q = perm[k];
      if (perm[k + 1] != q + 1 || !d.cod.has_exposed_caret(q)) continue;
      sites.push_back(k);
    }
    if (order == SiteOrder::Last) std::reverse(sites.begin(), sites.end());
    if (order == SiteOrder::Random) std::shuffle(sites.begin(), sites.end(), rng);
    bool merged = false;
    for (int k : sites) {
      int q = perm[k];
      BraidWord thin = handle_reduce(detail::delete_strand(d.braid, k + 1));
      if (!braid_equal(detail::cable_strand(thin, k).first, d.braid)) continue;
      d = {d.dom.merge_caret(k), std::move(thin), d.cod.merge_caret(q)};
      merged = true;
      break;
    }
    if (!merged) return d;
  }
}

/// Reduced forms agree: same trees and equal braids.
inline bool diagram_equal(const PBDiagram& a, const PBDiagram& b) {
  PBDiagram ra = diagram_reduce(a);
  PBDiagram rb = diagram_reduce(b);
  return ra.dom == rb.dom && ra.cod == rb.cod && braid_equal(ra.braid, rb.braid);
}

/// Hashable key of the reduced form, with the braid in Garside normal form.
inline std::string canonical_key(const PBDiagram& d) {
  PBDiagram r = diagram_reduce(d);
  return r.dom.render() + "|" + r.cod.render() + "|" + render_garside(garside_normal_form(r.braid, r.strands()));
}

inline PBDiagram letter_diagram(const PBLetter& l) {
  PBDiagram g = l.family == Family::Sigma ? gen_sigma(l.index) : gen_a(l.index);
  return l.sign > 0 ? g : diagram_inverse(g);
}

/// Homomorphic image of a word; the result is reduced.
inline PBDiagram word_to_diagram(const PBWord& w) {
  PBDiagram d = identity_diagram();
  for (const auto& l : w) {
    d = diagram_multiply(std::move(d), letter_diagram(l));
    if (d.braid.length() > 64) d.braid = handle_reduce(d.braid);
  }
  return diagram_reduce(std::move(d));
}

/// Word equality through the diagram model.
inline bool pb_equal(const PBWord& a, const PBWord& b) { return diagram_equal(word_to_diagram(a), word_to_diagram(b)); }

inline std::string render_diagram(const PBDiagram& d) {
  return "dom " + d.dom.render() + " braid [" + render_braid(d.braid) + "] cod " + d.cod.render();
}

}  // namespace ald
