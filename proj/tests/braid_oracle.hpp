#pragma once

// Relation-closure oracle for short braid words over sigma_1..sigma_3.
// Every word of length <= max_length gets a node; nodes are merged along
// free cancellations, far commutations and three-letter braid relations
// (all sign patterns that hold in B_4).  Words in one component are equal
// braids; words in different components are claimed distinct only up to
// the length bound.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ald/braid.hpp"

namespace ald::oracles {

class BraidClosureOracle {
 public:
  static constexpr int kIndices = 3;
  static constexpr int kLetters = 2 * kIndices;

  explicit BraidClosureOracle(int max_length) : max_length_(max_length) {
    offset_.assign(static_cast<std::size_t>(max_length + 2), 0);
    std::uint64_t pow = 1;
    for (int l = 0; l <= max_length; ++l) {
      offset_[l + 1] = offset_[l] + pow;
      pow *= kLetters;
    }
    parent_.resize(offset_[max_length + 1]);
    std::iota(parent_.begin(), parent_.end(), 0u);
    build();
  }

  std::uint32_t id(const BraidWord& w) const {
    std::uint64_t code = 0;
    for (int l : w) code = code * kLetters + letter_code(l);
    return static_cast<std::uint32_t>(offset_[w.length()] + code);
  }

  BraidWord word(std::uint32_t node) const {
    int len = 0;
    while (offset_[len + 1] <= node) ++len;
    std::uint64_t code = node - offset_[len];
    std::vector<int> out(static_cast<std::size_t>(len));
    for (int k = len - 1; k >= 0; --k) {
      out[k] = code_letter(static_cast<int>(code % kLetters));
      code /= kLetters;
    }
    return BraidWord(std::move(out));
  }

  std::uint32_t component(std::uint32_t node) const { return find(node); }
  bool connected(const BraidWord& a, const BraidWord& b) const { return find(id(a)) == find(id(b)); }

  /// All words of length <= max_len, in id order.
  std::vector<std::uint32_t> nodes_up_to(int max_len) const {
    std::vector<std::uint32_t> out(offset_[max_len + 1]);
    std::iota(out.begin(), out.end(), 0u);
    return out;
  }

 private:
  static int letter_code(int l) { return l > 0 ? l - 1 : kIndices - l - 1; }
  static int code_letter(int c) { return c < kIndices ? c + 1 : -(c - kIndices + 1); }

  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

  void build() {
    std::vector<int> w, v;
    for (std::uint32_t node = 0; node < parent_.size(); ++node) {
      w = word(node).letters();
      const std::size_t n = w.size();
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w[k] == -w[k + 1]) {
          v.assign(w.begin(), w.begin() + static_cast<long>(k));
          v.insert(v.end(), w.begin() + static_cast<long>(k) + 2, w.end());
          unite(node, id(BraidWord(v)));
        }
        if (std::abs(std::abs(w[k]) - std::abs(w[k + 1])) >= 2) {
          v = w;
          std::swap(v[k], v[k + 1]);
          unite(node, id(BraidWord(v)));
        }
      }
      for (std::size_t k = 0; k + 2 < n; ++k) {
        const int i = std::abs(w[k]), j = std::abs(w[k + 1]);
        if (std::abs(w[k + 2]) != i || std::abs(i - j) != 1) continue;
        const int a = w[k] > 0 ? 1 : -1, b = w[k + 1] > 0 ? 1 : -1, c = w[k + 2] > 0 ? 1 : -1;
        // s_i^a s_j^b s_i^c = s_j^c s_i^b s_j^a unless a = c != b.
        if (a == c && b != a) continue;
        v = w;
        v[k] = c * j;
        v[k + 1] = b * i;
        v[k + 2] = a * j;
        unite(node, id(BraidWord(v)));
      }
    }
  }

  int max_length_;
  std::vector<std::uint64_t> offset_;
  mutable std::vector<std::uint32_t> parent_;
};

}  // namespace ald::oracles
