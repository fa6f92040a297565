#pragma once

#include "qcdesign/exact.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcdesign {

/// Vector over Z4 = {0,1,2,3}. Immutable value type; digit order is the
/// printed order, and comparison is lexicographic on digits, which is the
/// canonical ordering used for every enumeration in this library.
class Z4Vector {
 public:
  Z4Vector() = default;

  explicit Z4Vector(std::vector<std::uint8_t> digits) : d_(std::move(digits)) {
    for (auto x : d_)
      if (x > 3) throw std::invalid_argument("Z4Vector: digit out of range");
  }

  /// Accepts arbitrary integers and reduces them mod 4 (Euclidean remainder).
  static Z4Vector from_ints(const std::vector<long long>& xs) {
    std::vector<std::uint8_t> d(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      d[i] = static_cast<std::uint8_t>(((xs[i] % 4) + 4) % 4);
    return Z4Vector(std::move(d));
  }

  /// Parses a digit string such as "1220".
  static Z4Vector parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Z4Vector: empty digit string");
    std::vector<std::uint8_t> d;
    d.reserve(s.size());
    for (char c : s) {
      if (c < '0' || c > '3') throw std::invalid_argument(std::string("Z4Vector: bad digit '") + c + "'");
      d.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Z4Vector(std::move(d));
  }

  static Z4Vector zero(int n) { return Z4Vector(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0)); }

  int size() const { return static_cast<int>(d_.size()); }
  std::uint8_t operator[](int i) const { return d_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& digits() const { return d_; }

  Z4Vector operator+(const Z4Vector& o) const {
    check_len(o);
    std::vector<std::uint8_t> d(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) d[i] = static_cast<std::uint8_t>((d_[i] + o.d_[i]) & 3);
    return Z4Vector(std::move(d));
  }

  Z4Vector operator-(const Z4Vector& o) const {
    check_len(o);
    std::vector<std::uint8_t> d(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) d[i] = static_cast<std::uint8_t>((d_[i] + 4 - o.d_[i]) & 3);
    return Z4Vector(std::move(d));
  }

  Z4Vector operator-() const { return scaled(3); }

  /// c*g with digits reduced mod 4.
  Z4Vector scaled(int c) const {
    std::vector<std::uint8_t> d(d_.size());
    const int cc = ((c % 4) + 4) % 4;
    for (std::size_t i = 0; i < d_.size(); ++i) d[i] = static_cast<std::uint8_t>((d_[i] * cc) & 3);
    return Z4Vector(std::move(d));
  }

  bool is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](std::uint8_t x) { return x == 0; });
  }

  bool all_even() const {
    return std::all_of(d_.begin(), d_.end(), [](std::uint8_t x) { return (x & 1) == 0; });
  }

  bool has_odd() const { return !all_even(); }

  /// Digit parities, packed little-endian; two vectors sum to an all-even
  /// vector exactly when their parity patterns agree.
  std::uint32_t parity_pattern() const {
    std::uint32_t p = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) p |= static_cast<std::uint32_t>(d_[i] & 1) << i;
    return p;
  }

  std::string str() const {
    std::string s;
    s.reserve(d_.size());
    for (auto x : d_) s.push_back(static_cast<char>('0' + x));
    return s;
  }

  friend bool operator==(const Z4Vector&, const Z4Vector&) = default;
  friend std::strong_ordering operator<=>(const Z4Vector& a, const Z4Vector& b) {
    return a.d_ <=> b.d_;  // lexicographic = canonical order
  }

 private:
  void check_len(const Z4Vector& o) const {
    if (d_.size() != o.d_.size()) throw std::invalid_argument("Z4Vector: length mismatch");
  }

  std::vector<std::uint8_t> d_;
};

inline int dot_mod4(const Z4Vector& u, const Z4Vector& g) {
  if (u.size() != g.size()) throw std::invalid_argument("dot_mod4: length mismatch");
  int s = 0;
  for (int i = 0; i < u.size(); ++i) s += u[i] * g[i];
  return s & 3;
}

/// A generator column is usable when it has an odd digit and the first odd
/// digit is 1; this picks one representative per multiple-class.
inline bool is_valid_column(const Z4Vector& g) {
  for (int i = 0; i < g.size(); ++i) {
    if (g[i] & 1) return g[i] == 1;
  }
  return false;  // all even: no odd digit at all
}

/// True when g = c*h or h = c*g for some c in {1,2,3}. Both directions are
/// needed because multiplication by 2 is not invertible.
inline bool are_multiples(const Z4Vector& g, const Z4Vector& h) {
  if (g.size() != h.size()) throw std::invalid_argument("are_multiples: length mismatch");
  for (int c = 1; c <= 3; ++c) {
    if (h.scaled(c) == g || g.scaled(c) == h) return true;
  }
  return false;
}

enum class RefKind { full, last_even };

/// The canonical pool of candidate generator columns for a given dimension:
/// all valid columns (RefKind::full), or those with an even last digit
/// (RefKind::last_even), in canonical order.
struct ReferenceSet {
  int n = 0;
  RefKind kind = RefKind::full;
  std::vector<Z4Vector> vectors;

  bool contains(const Z4Vector& g) const {
    return std::binary_search(vectors.begin(), vectors.end(), g);
  }
  int size() const { return static_cast<int>(vectors.size()); }
};

inline long long reference_size(int n, RefKind kind) {
  const long long p4 = 1LL << (2 * n), p2 = 1LL << n;
  if (kind == RefKind::full) return (p4 - p2) / 2;
  return (p4 / 4) - (p2 / 2);
}

namespace detail {
inline void for_each_z4(int n, const auto& fn) {
  std::vector<std::uint8_t> d(static_cast<std::size_t>(n), 0);
  for (;;) {
    fn(d);
    int i = n - 1;
    while (i >= 0 && d[static_cast<std::size_t>(i)] == 3) d[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++d[static_cast<std::size_t>(i)];
  }
}
}  // namespace detail

inline ReferenceSet enumerate_reference(int n, RefKind kind) {
  if (n < 2 || n > 15) throw std::invalid_argument("enumerate_reference: dimension must be in [2,15]");
  ReferenceSet ref;
  ref.n = n;
  ref.kind = kind;
  detail::for_each_z4(n, [&](const std::vector<std::uint8_t>& d) {
    Z4Vector g{std::vector<std::uint8_t>(d)};
    if (!is_valid_column(g)) return;
    if (kind == RefKind::last_even && (g[n - 1] & 1)) return;
    ref.vectors.push_back(std::move(g));
  });
  if (static_cast<long long>(ref.vectors.size()) != reference_size(n, kind))
    throw internal_error("enumerate_reference: size does not match closed form");
  return ref;
}

inline ReferenceSet enumerate_omega(int n) { return enumerate_reference(n, RefKind::full); }
inline ReferenceSet enumerate_omega0(int n) { return enumerate_reference(n, RefKind::last_even); }

/// Unselected reference columns, i.e. the complement driving the
/// complementary-set identities. For odd factor counts odd_role marks the
/// member that is appended to the generator.
struct ComplementSet {
  int n = 0;
  RefKind reference_kind = RefKind::full;
  std::vector<Z4Vector> vectors;
  std::optional<Z4Vector> odd_role;

  int size() const { return static_cast<int>(vectors.size()); }

  bool contains(const Z4Vector& g) const {
    return std::find(vectors.begin(), vectors.end(), g) != vectors.end();
  }

  void validate() const {
    for (const auto& g : vectors) {
      if (g.size() != n) throw std::invalid_argument("ComplementSet: member dimension mismatch");
      if (!is_valid_column(g)) throw std::invalid_argument("ComplementSet: invalid member " + g.str());
      if (reference_kind == RefKind::last_even && (g[n - 1] & 1))
        throw std::invalid_argument("ComplementSet: member has odd last digit: " + g.str());
    }
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = i + 1; j < vectors.size(); ++j) {
        if (vectors[i] == vectors[j]) throw std::invalid_argument("ComplementSet: duplicate member");
        if (are_multiples(vectors[i], vectors[j]))
          throw std::invalid_argument("ComplementSet: members are multiples");
      }
    if (odd_role && !contains(*odd_role))
      throw std::invalid_argument("ComplementSet: odd_role is not a member");
  }
};

/// Set difference reference \ selected, in canonical order. Every selected
/// vector must be a reference member and appear once.
inline ComplementSet complement(const std::vector<Z4Vector>& selected, const ReferenceSet& reference) {
  std::vector<Z4Vector> sel = selected;
  std::sort(sel.begin(), sel.end());
  for (std::size_t i = 0; i + 1 < sel.size(); ++i)
    if (sel[i] == sel[i + 1]) throw std::invalid_argument("complement: duplicate selection " + sel[i].str());
  for (const auto& g : sel)
    if (!reference.contains(g)) throw std::invalid_argument("complement: " + g.str() + " is not a reference member");
  ComplementSet out;
  out.n = reference.n;
  out.reference_kind = reference.kind;
  std::set_difference(reference.vectors.begin(), reference.vectors.end(), sel.begin(), sel.end(),
                      std::back_inserter(out.vectors));
  return out;
}

/// A set is even when every pairwise sum has only even digits. Empty and
/// singleton sets qualify vacuously.
inline bool is_even_set(const std::vector<Z4Vector>& gs) {
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (!(gs[i] + gs[j]).all_even()) return false;
  return true;
}

inline bool is_even_set(const ComplementSet& s) { return is_even_set(s.vectors); }

/// Smallest-first even set of the requested size: leading digit 1 followed by
/// digits in {0,2} counting upward. Sizes above 2^(n-1) are infeasible (the
/// all-even tails are exhausted and any extra member breaks evenness).
inline ComplementSet build_even_set(int n, int size) {
  if (n < 2) throw std::invalid_argument("build_even_set: dimension must be at least 2");
  if (size < 1) throw std::invalid_argument("build_even_set: size must be positive");
  if (size > (1 << (n - 1)))
    throw std::domain_error("build_even_set: no even set of size " + std::to_string(size) +
                            " exists in dimension " + std::to_string(n));
  ComplementSet out;
  out.n = n;
  out.reference_kind = RefKind::last_even;
  for (int idx = 0; idx < size; ++idx) {
    std::vector<std::uint8_t> d(static_cast<std::size_t>(n), 0);
    d[0] = 1;
    for (int bit = 0; bit < n - 1; ++bit)
      if (idx >> (n - 2 - bit) & 1) d[static_cast<std::size_t>(1 + bit)] = 2;
    out.vectors.emplace_back(std::move(d));
  }
  out.validate();
  if (!is_even_set(out)) throw internal_error("build_even_set: constructed set is not even");
  return out;
}

}  // namespace qcdesign
