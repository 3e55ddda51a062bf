#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ald/term.hpp"

namespace ald {

/// Word in the Artin generators of B_inf.  A letter is a nonzero integer:
/// +i stands for sigma_i, -i for its inverse.  The empty word is the
/// identity.
class BraidWord {
 public:
  BraidWord() = default;
  BraidWord(std::initializer_list<int> letters) : letters_(letters) { check(); }
  explicit BraidWord(std::vector<int> letters) : letters_(std::move(letters)) { check(); }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  int max_index() const {
    int m = 0;
    for (int l : letters_) m = std::max(m, std::abs(l));
    return m;
  }

  BraidWord inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& l : out) l = -l;
    return BraidWord(std::move(out));
  }

  BraidWord& operator*=(const BraidWord& other) {
    letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
    return *this;
  }
  friend BraidWord operator*(BraidWord a, const BraidWord& b) { return a *= b; }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  void check() const {
    for (int l : letters_)
      if (l == 0) throw std::invalid_argument("braid letter index must be >= 1");
  }
  std::vector<int> letters_;
};

inline BraidWord sigma(int i, int sign = 1) {
  if (i < 1) throw std::invalid_argument("braid generator index must be >= 1");
  return BraidWord{sign > 0 ? i : -i};
}

/// Letters `s<i>` and `S<i>` separated by whitespace.
inline BraidWord parse_braid(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    char c = text[pos];
    if (c != 's' && c != 'S') throw ParseError("expected s<i> or S<i>", pos);
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
    out.push_back(c == 's' ? static_cast<int>(index) : -static_cast<int>(index));
  }
  return BraidWord(std::move(out));
}

inline std::string render_braid(const BraidWord& w) {
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    out += l > 0 ? 's' : 'S';
    out += std::to_string(std::abs(l));
  }
  return out;
}

/// Cancels adjacent inverse pairs until none remain.
inline BraidWord free_reduce(const BraidWord& w) {
  std::vector<int> out;
  out.reserve(w.length());
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return BraidWord(std::move(out));
}

/// Every index shifted up by k.
inline BraidWord braid_shift(const BraidWord& w, int k = 1) {
  if (k < 0) throw std::invalid_argument("braid_shift: negative shift");
  std::vector<int> out(w.letters());
  for (int& l : out) l += l > 0 ? k : -k;
  return BraidWord(std::move(out));
}

/// Underlying permutation on `n` strands: entry k is the bottom position of
/// the strand starting at top position k (0-based).
inline std::vector<int> braid_permutation(const BraidWord& w, int n) {
  if (w.max_index() >= n) throw std::invalid_argument("braid_permutation: too few strands");
  // at[p] = strand currently at position p.
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 0);
  for (int l : w) {
    int i = std::abs(l) - 1;
    std::swap(at[i], at[i + 1]);
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) perm[at[p]] = p;
  return perm;
}

// ---------------------------------------------------------------------------
// Handle reduction
// ---------------------------------------------------------------------------

class HandleReductionDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

/// Finds the handle whose closing letter comes first.  Such a handle never
/// contains a nested sigma_{i+1} handle, so it is permitted.  Returns the
/// (open, close) positions or {-1, -1}.
inline std::pair<long, long> first_handle(const std::vector<int>& w, int max_index) {
  // last[i] = last position holding a letter of index i (1-based), -1 if none.
  std::vector<long> last(static_cast<std::size_t>(max_index) + 2, -1);
  for (long q = 0; q < static_cast<long>(w.size()); ++q) {
    int i = std::abs(w[q]);
    long p = -1;
    int pi = 0;
    for (int j = 1; j <= i; ++j) {
      if (last[j] > p) {
        p = last[j];
        pi = j;
      }
    }
    if (p >= 0 && pi == i && w[p] == -w[q]) return {p, q};
    last[i] = q;
  }
  return {-1, -1};
}

}  // namespace detail

/// Handle reduction: rewrites sigma_i^e u sigma_i^-e (u free of indices <= i)
/// into u with every sigma_{i+1}^d replaced by sigma_{i+1}^-e sigma_i^d
/// sigma_{i+1}^e.  The result is handle free, hence empty, sigma-positive or
/// sigma-negative.
inline BraidWord handle_reduce(const BraidWord& input, std::size_t step_cap = 50'000'000) {
  std::vector<int> w = free_reduce(input).letters();
  const int max_index = input.max_index();
  std::vector<int> next;
  std::size_t work = 0;
  for (;;) {
    auto [p, q] = detail::first_handle(w, max_index);
    if (p < 0) break;
    work += w.size();
    if (work > step_cap) throw HandleReductionDefect("handle reduction exceeded its step cap");
    const int i = std::abs(w[p]);
    const int e = w[p] > 0 ? 1 : -1;
    next.clear();
    next.reserve(w.size() + 2 * static_cast<std::size_t>(q - p));
    next.insert(next.end(), w.begin(), w.begin() + p);
    for (long k = p + 1; k < q; ++k) {
      int l = w[k];
      if (std::abs(l) == i + 1) {
        int d = l > 0 ? 1 : -1;
        next.push_back(-e * (i + 1));
        next.push_back(d * i);
        next.push_back(e * (i + 1));
      } else {
        next.push_back(l);
      }
    }
    next.insert(next.end(), w.begin() + q + 1, w.end());
    // Cancel the adjacent inverse pairs that the rewrite may create.
    w.clear();
    for (int l : next) {
      if (!w.empty() && w.back() == -l)
        w.pop_back();
      else
        w.push_back(l);
    }
  }
  return BraidWord(std::move(w));
}

enum class Sign : std::int8_t { Negative = -1, Zero = 0, Positive = 1 };

/// Sign of a handle-free word: the sign of its lowest-index generator.
inline Sign sigma_sign(const BraidWord& handle_free) {
  if (handle_free.empty()) return Sign::Zero;
  int best = 0;
  for (int l : handle_free)
    if (best == 0 || std::abs(l) < std::abs(best)) best = l;
  return best > 0 ? Sign::Positive : Sign::Negative;
}

/// True when the lowest-index generator occurs with a single sign.
inline bool is_sigma_definite(const BraidWord& w) {
  if (w.empty()) return true;
  int lo = 0;
  for (int l : w) lo = lo == 0 ? std::abs(l) : std::min(lo, std::abs(l));
  bool pos = false, neg = false;
  for (int l : w) {
    if (l == lo) pos = true;
    if (l == -lo) neg = true;
  }
  return pos != neg;
}

inline bool braid_equal(const BraidWord& a, const BraidWord& b) {
  return handle_reduce(a * b.inverse()).empty();
}

inline bool is_trivial_braid(const BraidWord& w) { return handle_reduce(w).empty(); }

enum class Order : std::int8_t { Less = -1, Equal = 0, Greater = 1 };

inline const char* order_name(Order o) {
  switch (o) {
    case Order::Less: return "Less";
    case Order::Equal: return "Equal";
    case Order::Greater: return "Greater";
  }
  return "?";
}

inline Order reverse(Order o) { return static_cast<Order>(-static_cast<int>(o)); }

/// Left-invariant order: a < b iff a^-1 b is sigma-positive.
inline Order braid_compare(const BraidWord& a, const BraidWord& b) {
  switch (sigma_sign(handle_reduce(a.inverse() * b))) {
    case Sign::Positive: return Order::Less;
    case Sign::Negative: return Order::Greater;
    case Sign::Zero: return Order::Equal;
  }
  return Order::Equal;
}

/// b * c = b . sh(c) . sigma_1 . sh(b)^-1
inline BraidWord braid_ld(const BraidWord& b, const BraidWord& c) {
  BraidWord out = b;
  out *= braid_shift(c);
  out *= sigma(1);
  out *= braid_shift(b).inverse();
  return out;
}

/// Evaluates a one-variable *-term at `g` through braid_ld.
inline BraidWord eval_star_braid(const Term& t, const BraidWord& g = {}) {
  if (t.has_circ() || !t.is_one_variable()) throw std::invalid_argument("eval_star_braid: term must be a one-variable *-term");
  if (t.is_var()) return g;
  return braid_ld(eval_star_braid(t.left(), g), eval_star_braid(t.right(), g));
}

}  // namespace ald
