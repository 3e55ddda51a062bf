#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ald/braid.hpp"

namespace ald {

// Left normal form Delta^k A_1 ... A_r in B_n.  Simple elements are stored as
// permutations p with p[k] = bottom position of the strand starting at top
// position k; composition "A then B" is p_B o p_A.

using Permutation = std::vector<std::uint8_t>;

struct GarsideForm {
  int strands = 0;
  int delta_power = 0;
  std::vector<Permutation> factors;

  friend bool operator==(const GarsideForm&, const GarsideForm&) = default;
};

namespace garside_detail {

inline Permutation identity(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p[k] = static_cast<std::uint8_t>(k);
  return p;
}

inline Permutation delta(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p[k] = static_cast<std::uint8_t>(n - 1 - k);
  return p;
}

inline bool is_identity(const Permutation& p) {
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != k) return false;
  return true;
}

/// a then b.
inline Permutation then(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = b[a[k]];
  return out;
}

inline Permutation invert(const Permutation& a) {
  Permutation out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[a[k]] = static_cast<std::uint8_t>(k);
  return out;
}

/// Delta^-1 A Delta.
inline Permutation flip(const Permutation& a) {
  const std::size_t n = a.size();
  Permutation out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<std::uint8_t>(n - 1 - a[n - 1 - k]);
  return out;
}

/// A^-1 Delta.
inline Permutation right_complement(const Permutation& a) { return then(invert(a), delta(static_cast<int>(a.size()))); }

/// Largest simple element that left-divides both a and b.
inline Permutation meet(Permutation a, Permutation b) {
  const int n = static_cast<int>(a.size());
  Permutation c = identity(n);
  for (;;) {
    int found = -1;
    for (int i = 0; i + 1 < n; ++i) {
      // sigma_i is a prefix iff the strands starting at i, i+1 cross.
      if (a[i] > a[i + 1] && b[i] > b[i + 1]) {
        found = i;
        break;
      }
    }
    if (found < 0) return c;
    // c := c sigma_i ; a := sigma_i^-1 a ; b := sigma_i^-1 b
    Permutation s = identity(n);
    std::swap(s[found], s[found + 1]);
    c = then(c, s);
    std::swap(a[found], a[found + 1]);
    std::swap(b[found], b[found + 1]);
  }
}

/// Appends a simple factor to a left-weighted sequence and restores
/// left-weightedness.
inline void push_simple(GarsideForm& f, Permutation s) {
  const int n = f.strands;
  if (is_identity(s)) return;
  f.factors.push_back(std::move(s));
  for (std::size_t j = f.factors.size() - 1; j > 0; --j) {
    Permutation& left = f.factors[j - 1];
    Permutation& right = f.factors[j];
    Permutation x = meet(right_complement(left), right);
    if (is_identity(x)) break;
    left = then(left, x);
    right = then(invert(x), right);
  }
  // Delta factors gather at the front.
  const Permutation d = delta(n);
  std::size_t lead = 0;
  while (lead < f.factors.size() && f.factors[lead] == d) ++lead;
  if (lead > 0) {
    f.factors.erase(f.factors.begin(), f.factors.begin() + static_cast<long>(lead));
    f.delta_power += static_cast<int>(lead);
  }
  while (!f.factors.empty() && is_identity(f.factors.back())) f.factors.pop_back();
}

}  // namespace garside_detail

/// Left normal form of `w` viewed in B_n.
inline GarsideForm garside_normal_form(const BraidWord& w, int strands) {
  using namespace garside_detail;
  if (strands < 1) throw std::invalid_argument("garside_normal_form: need at least one strand");
  if (w.max_index() >= strands) throw std::invalid_argument("garside_normal_form: word uses too many strands");
  if (strands > 255) throw std::invalid_argument("garside_normal_form: too many strands");
  GarsideForm f;
  f.strands = strands;
  for (int l : w) {
    int i = std::abs(l) - 1;
    if (l > 0) {
      Permutation s = identity(strands);
      std::swap(s[i], s[i + 1]);
      push_simple(f, std::move(s));
    } else {
      // sigma_i^-1 = Delta^-1 (Delta sigma_i^-1); moving Delta^-1 to the left
      // flips every factor.
      for (Permutation& a : f.factors) a = flip(a);
      f.delta_power -= 1;
      Permutation s = identity(strands);
      std::swap(s[i], s[i + 1]);
      // Delta sigma_i^-1 is simple: Delta then sigma_i^-1.
      push_simple(f, then(delta(strands), s));
    }
  }
  return f;
}

inline std::string render_garside(const GarsideForm& f) {
  std::string out = "D^" + std::to_string(f.delta_power);
  for (const Permutation& p : f.factors) {
    out += " [";
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(p[k]);
    }
    out += ']';
  }
  return out;
}

inline bool garside_equal(const BraidWord& a, const BraidWord& b) {
  int n = std::max(a.max_index(), b.max_index()) + 1;
  return garside_normal_form(a, n) == garside_normal_form(b, n);
}

}  // namespace ald
