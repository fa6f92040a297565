#pragma once

#include "qcdesign/z4.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcdesign {

/// Sign the Gray map assigns to a Z4 digit in the second slot of its pair:
/// +1, -1, -1, +1 for z = 0, 1, 2, 3. Accepts any integer, reduced mod 4.
inline int gray_sign(long long z) {
  static constexpr int tab[4] = {1, -1, -1, 1};
  return tab[((z % 4) + 4) % 4];
}

/// Gray image of a digit: 0 -> (1,1), 1 -> (1,-1), 2 -> (-1,-1), 3 -> (-1,1).
/// Equals (gray_sign(-z), gray_sign(z)).
inline std::pair<int, int> gray_pair(int z) {
  if (z < 0 || z > 3) throw std::invalid_argument("gray_pair: digit out of range");
  return {gray_sign(-z), gray_sign(z)};
}

/// Columns of a quaternary generator. When odd is set the last column is the
/// appended one that contributes a single sign column instead of a pair.
struct GeneratorMatrix {
  int n = 0;
  std::vector<Z4Vector> columns;
  bool odd = false;

  int s() const { return static_cast<int>(columns.size()) - (odd ? 1 : 0); }
  int factor_count() const { return 2 * s() + (odd ? 1 : 0); }

  void validate() const {
    const int min_cols = odd ? 2 : 1;
    if (static_cast<int>(columns.size()) < min_cols)
      throw std::invalid_argument("GeneratorMatrix: too few columns");
    for (const auto& g : columns) {
      if (g.size() != n) throw std::invalid_argument("GeneratorMatrix: column dimension mismatch");
      if (!is_valid_column(g)) throw std::invalid_argument("GeneratorMatrix: invalid column " + g.str());
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
      for (std::size_t j = i + 1; j < columns.size(); ++j)
        if (are_multiples(columns[i], columns[j]))
          throw std::invalid_argument("GeneratorMatrix: columns " + columns[i].str() + " and " +
                                      columns[j].str() + " are multiples");
  }

  /// True when every column has an even last digit, the condition for the
  /// half-run reduction.
  bool last_row_even() const {
    for (const auto& g : columns)
      if (g[n - 1] & 1) return false;
    return true;
  }
};

/// Row index spaces. Full designs are indexed by all of Z4^n in canonical
/// order; halved designs keep the rows whose last digit is 0 or 1.
inline long long full_space_size(int n) { return 1LL << (2 * n); }
inline long long half_space_size(int n) { return 1LL << (2 * n - 1); }

inline Z4Vector row_vector_at(int n, long long index, bool half) {
  std::vector<std::uint8_t> d(static_cast<std::size_t>(n));
  if (half) {
    d[static_cast<std::size_t>(n - 1)] = static_cast<std::uint8_t>(index & 1);
    index >>= 1;
    for (int i = n - 2; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index & 3);
      index >>= 2;
    }
  } else {
    for (int i = n - 1; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index & 3);
      index >>= 2;
    }
  }
  return Z4Vector(std::move(d));
}

inline long long row_index_of(const Z4Vector& u, bool half) {
  const int n = u.size();
  long long idx = 0;
  if (half) {
    if (u[n - 1] > 1) throw std::out_of_range("row_index_of: last digit must be 0 or 1 in a halved space");
    for (int i = 0; i < n - 1; ++i) idx = idx * 4 + u[i];
    idx = idx * 2 + u[n - 1];
  } else {
    for (int i = 0; i < n; ++i) idx = idx * 4 + u[i];
  }
  return idx;
}

/// Packed +-1 matrix. Bit set means entry -1. Rows and columns are both kept
/// packed: columns feed the subset-enumeration kernels, rows feed weights,
/// scalar products and serialization.
class SignMatrix {
 public:
  enum class Kind { generic, qc_even, qc_odd };

  SignMatrix() = default;

  /// entry_fn(r, c) must return +1 or -1.
  static SignMatrix build(int runs, int factors, const std::function<int(int, int)>& entry_fn,
                          Kind kind = Kind::generic, int z4_dim = 0, bool half = false,
                          bool trusted_invariant = false) {
    if (runs < 1 || factors < 1) throw std::invalid_argument("SignMatrix: empty shape");
    SignMatrix m;
    m.runs_ = runs;
    m.factors_ = factors;
    m.kind_ = kind;
    m.z4_dim_ = z4_dim;
    m.half_ = half;
    m.trusted_invariant_ = trusted_invariant;
    m.col_words_ = (runs + 63) / 64;
    m.row_words_ = (factors + 63) / 64;
    m.cols_.assign(static_cast<std::size_t>(factors) * m.col_words_, 0);
    m.rows_.assign(static_cast<std::size_t>(runs) * m.row_words_, 0);
    for (int r = 0; r < runs; ++r)
      for (int c = 0; c < factors; ++c) {
        const int e = entry_fn(r, c);
        if (e != 1 && e != -1) throw std::invalid_argument("SignMatrix: entries must be +-1");
        if (e == -1) {
          m.cols_[static_cast<std::size_t>(c) * m.col_words_ + r / 64] |= 1ULL << (r % 64);
          m.rows_[static_cast<std::size_t>(r) * m.row_words_ + c / 64] |= 1ULL << (c % 64);
        }
      }
    return m;
  }

  int runs() const { return runs_; }
  int factors() const { return factors_; }
  Kind kind() const { return kind_; }
  int z4_dim() const { return z4_dim_; }
  bool half() const { return half_; }
  bool trusted_invariant() const { return trusted_invariant_; }
  int col_words() const { return col_words_; }

  int entry(int r, int c) const {
    const std::uint64_t w = cols_[static_cast<std::size_t>(c) * col_words_ + r / 64];
    return (w >> (r % 64)) & 1 ? -1 : 1;
  }

  const std::uint64_t* column(int c) const { return cols_.data() + static_cast<std::size_t>(c) * col_words_; }
  const std::uint64_t* row(int r) const { return rows_.data() + static_cast<std::size_t>(r) * row_words_; }

  /// Number of -1 entries in a row.
  int row_weight(int r) const {
    int w = 0;
    const std::uint64_t* p = row(r);
    for (int i = 0; i < row_words_; ++i) w += std::popcount(p[i]);
    return w;
  }

  int row_sum(int r) const { return factors_ - 2 * row_weight(r); }

  int row_distance(int r1, int r2) const {
    int d = 0;
    const std::uint64_t *a = row(r1), *b = row(r2);
    for (int i = 0; i < row_words_; ++i) d += std::popcount(a[i] ^ b[i]);
    return d;
  }

  long long row_dot(int r1, int r2) const { return factors_ - 2LL * row_distance(r1, r2); }

  bool rows_equal(int r1, int r2) const {
    const std::uint64_t *a = row(r1), *b = row(r2);
    for (int i = 0; i < row_words_; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }

  /// Row position of a Z4 index vector; QC-constructed matrices only.
  int row_of(const Z4Vector& u) const {
    if (z4_dim_ == 0) throw std::logic_error("row_of: matrix has no Z4 row index");
    if (u.size() != z4_dim_) throw std::invalid_argument("row_of: index dimension mismatch");
    return static_cast<int>(row_index_of(u, half_));
  }

 private:
  int runs_ = 0, factors_ = 0;
  Kind kind_ = Kind::generic;
  int z4_dim_ = 0;
  bool half_ = false;
  bool trusted_invariant_ = false;
  int col_words_ = 0, row_words_ = 0;
  std::vector<std::uint64_t> cols_, rows_;
};

namespace detail {
/// Digit z(r, j) = u_r . g_j mod 4 for every row vector and generator column.
inline std::vector<std::vector<std::uint8_t>> dot_table(const GeneratorMatrix& G, bool half) {
  const long long N = half ? half_space_size(G.n) : full_space_size(G.n);
  std::vector<std::vector<std::uint8_t>> tab(static_cast<std::size_t>(N));
  for (long long r = 0; r < N; ++r) {
    const Z4Vector u = row_vector_at(G.n, r, half);
    auto& row = tab[static_cast<std::size_t>(r)];
    row.resize(G.columns.size());
    for (std::size_t j = 0; j < G.columns.size(); ++j)
      row[j] = static_cast<std::uint8_t>(dot_mod4(u, G.columns[j]));
  }
  return tab;
}
}  // namespace detail

/// Gray image with an even factor count: every generator column contributes
/// the adjacent pair (gray_sign(-z), gray_sign(z)); rows run over Z4^n in
/// canonical order, so row 0 is all +1.
inline SignMatrix construct_even(const GeneratorMatrix& G) {
  if (G.odd) throw std::invalid_argument("construct_even: generator is marked odd");
  G.validate();
  if (G.n < 2) throw std::invalid_argument("construct_even: dimension must be at least 2");
  const auto tab = detail::dot_table(G, false);
  const int N = static_cast<int>(full_space_size(G.n));
  const int q = 2 * G.s();
  return SignMatrix::build(
      N, q,
      [&](int r, int c) {
        const int z = tab[static_cast<std::size_t>(r)][static_cast<std::size_t>(c / 2)];
        return (c & 1) ? gray_sign(z) : gray_sign(-z);
      },
      SignMatrix::Kind::qc_even, G.n, false, true);
}

/// Gray image with an odd factor count: the appended generator column keeps
/// only the first member of its pair, gray_sign(-z).
inline SignMatrix construct_odd(const GeneratorMatrix& G) {
  if (!G.odd) throw std::invalid_argument("construct_odd: generator is not marked odd");
  G.validate();
  if (G.n < 2) throw std::invalid_argument("construct_odd: dimension must be at least 2");
  const auto tab = detail::dot_table(G, false);
  const int N = static_cast<int>(full_space_size(G.n));
  const int s = G.s();
  const int q = 2 * s + 1;
  return SignMatrix::build(
      N, q,
      [&](int r, int c) {
        if (c == q - 1) {
          const int z = tab[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
          return gray_sign(-z);
        }
        const int z = tab[static_cast<std::size_t>(r)][static_cast<std::size_t>(c / 2)];
        return (c & 1) ? gray_sign(z) : gray_sign(-z);
      },
      SignMatrix::Kind::qc_odd, G.n, false, true);
}

/// Half-run reduction. Requires every generator column to end in an even
/// digit, which makes rows u and u + (0,...,0,2) identical; the reduction
/// keeps the rows with last digit 0 or 1 and verifies the duplication.
inline SignMatrix halve(const SignMatrix& D, const GeneratorMatrix& G) {
  if (D.z4_dim() != G.n || D.half())
    throw std::invalid_argument("halve: need a full-run QC design with its generator");
  if (!G.last_row_even())
    throw std::domain_error("halve: a generator column has an odd last digit; halves would differ");
  const int n = G.n;
  const long long half_n = half_space_size(n);
  for (long long r = 0; r < half_n; ++r) {
    const Z4Vector u = row_vector_at(n, r, true);
    Z4Vector shifted = u;
    {
      std::vector<std::uint8_t> d = u.digits();
      d[static_cast<std::size_t>(n - 1)] = static_cast<std::uint8_t>((d[static_cast<std::size_t>(n - 1)] + 2) & 3);
      shifted = Z4Vector(std::move(d));
    }
    if (!D.rows_equal(D.row_of(u), static_cast<int>(row_index_of(shifted, false))))
      throw internal_error("halve: halves are not identical at row " + u.str());
  }
  return SignMatrix::build(
      static_cast<int>(half_n), D.factors(),
      [&](int r, int c) {
        const Z4Vector u = row_vector_at(n, r, true);
        return D.entry(D.row_of(u), c);
      },
      D.kind(), n, true, true);
}

}  // namespace qcdesign
