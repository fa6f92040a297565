#pragma once

#include "qcdesign/binmat.hpp"
#include "qcdesign/compset.hpp"
#include "qcdesign/exact.hpp"
#include "qcdesign/gray.hpp"
#include "qcdesign/wlp.hpp"
#include "qcdesign/z4.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcdesign {

/// +-1 image of a binary matrix: 2^rows runs, entry (x, j) = (-1)^(x . b_j),
/// rows in the lambda_row_sums order. Shift-invariant with row 0 all ones.
inline SignMatrix regular_design(const BinaryMatrix& B) {
  if (B.col_count() < 1) throw std::invalid_argument("regular_design: no columns");
  const int R = B.rows;
  std::vector<std::uint32_t> xmasks(static_cast<std::size_t>(1) << R, 0);
  for (std::uint32_t r = 0; r < (1u << R); ++r) {
    std::uint32_t xmask = 0;
    for (int i = 1; i <= R; ++i)
      if (r >> (R - i) & 1) xmask |= 1u << (i - 1);
    xmasks[r] = xmask;
  }
  return SignMatrix::build(
      1 << R, B.col_count(),
      [&](int r, int c) {
        return (std::popcount(xmasks[static_cast<std::size_t>(r)] & B.cols[static_cast<std::size_t>(c)]) & 1)
                   ? -1
                   : 1;
      },
      SignMatrix::Kind::generic, 0, false, true);
}

/// Wordlength pattern of a regular design as exact subset counts:
/// a[k] = number of k-subsets of columns with zero GF(2) sum.
struct RegularWlp {
  int columns = 0;
  std::vector<long long> a;  // index k = 0..columns

  friend bool operator==(const RegularWlp&, const RegularWlp&) = default;
};

inline RegularWlp regular_wlp(const BinaryMatrix& B) {
  const int m = B.col_count();
  if (m < 1 || m > 24) throw std::invalid_argument("regular_wlp: column count out of range");
  RegularWlp out;
  out.columns = m;
  out.a.assign(static_cast<std::size_t>(m) + 1, 0);
  out.a[0] = 1;
  std::vector<std::uint32_t> xr(static_cast<std::size_t>(1) << m, 0);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const int idx = std::countr_zero(low);
    xr[mask] = xr[mask ^ low] ^ B.cols[static_cast<std::size_t>(idx)];
    if (xr[mask] == 0) ++out.a[static_cast<std::size_t>(std::popcount(mask))];
  }
  return out;
}

namespace detail {
inline long long reg_a(const RegularWlp& w, int k) {
  if (k < 0 || k > w.columns) return 0;
  return w.a[static_cast<std::size_t>(k)];
}

/// Number of key entries for a selection over deficiency f = columns + 1:
/// consecutive r = 2, 3, ... while 2r - 1 stays within f, at least one entry.
inline int key_depth(int f) { return std::max(1, (f + 1) / 2 - 1); }
}  // namespace detail

/// Selection key for even factor counts: consecutive word-count pair sums
/// (a3 + a4, a5 + a6, ...); smaller is less aberrant.
inline std::vector<BigInt> pair_sum_key(const BinaryMatrix& B) {
  const RegularWlp w = regular_wlp(B);
  const int f = B.col_count() + 1;
  std::vector<BigInt> key;
  for (int r = 2; r < 2 + detail::key_depth(f); ++r)
    key.push_back(BigInt(detail::reg_a(w, 2 * r - 1)) + detail::reg_a(w, 2 * r));
  return key;
}

/// Even-word count of the folded doubled design, straight from the wordlength
/// pattern of the base design: sum over k <= 2r of
/// C(m - k, r - ceil(k/2)) * 2^k * a_k, with out-of-triangle terms zero.
inline BigInt doubled_fold_even_words(const BinaryMatrix& B, int r) {
  if (r < 1) throw std::invalid_argument("doubled_fold_even_words: r must be positive");
  const RegularWlp w = regular_wlp(B);
  const int m = B.col_count();
  BigInt total = 0;
  for (int k = 0; k <= 2 * r; ++k) {
    const long long ak = detail::reg_a(w, k);
    if (ak == 0) continue;
    total += binomial(m - k, r - (k + 1) / 2) * pow_big(2, k) * ak;
  }
  return total;
}

/// Selection key for odd factor counts: (E_4, E_6, ...) where E_2r is the
/// folded doubled design's even-word count.
inline std::vector<BigInt> doubled_fold_key(const BinaryMatrix& B) {
  const int f = B.col_count() + 1;
  std::vector<BigInt> key;
  for (int r = 2; r < 2 + detail::key_depth(f); ++r) key.push_back(doubled_fold_even_words(B, r));
  return key;
}

/// All column subsets of the given size from the 2^(n-1) - 1 nonnull masks,
/// in lexicographic order of the ascending mask sequences.
inline std::vector<BinaryMatrix> enumerate_b(int n, int m) {
  if (n < 2 || n > 6) throw std::invalid_argument("enumerate_b: dimension out of range");
  const int pool = (1 << (n - 1)) - 1;
  if (m < 1 || m > pool) throw std::invalid_argument("enumerate_b: column count out of range");
  std::vector<BinaryMatrix> all;
  std::vector<std::uint32_t> pick(static_cast<std::size_t>(m));
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == m) {
      all.push_back(BinaryMatrix{n - 1, pick});
      return;
    }
    for (int c = start; c <= pool - (m - depth - 1); ++c) {
      pick[static_cast<std::size_t>(depth)] = static_cast<std::uint32_t>(c);
      self(self, c + 1, depth + 1);
    }
  };
  rec(rec, 1, 0);
  return all;
}

enum class FactorParity { even, odd };

struct Selection {
  BinaryMatrix b;
  std::vector<BigInt> key;
  long long candidates = 0;
};

/// Minimal-key column choice for the given deficiency; ties go to the first
/// candidate in enumeration order.
inline Selection select_b(int n, int deficiency, FactorParity parity) {
  if (deficiency < 2 || deficiency > (1 << (n - 1)))
    throw std::invalid_argument("select_b: deficiency out of range for the dimension");
  Selection best;
  for (auto& cand : enumerate_b(n, deficiency - 1)) {
    std::vector<BigInt> key = parity == FactorParity::even ? pair_sum_key(cand) : doubled_fold_key(cand);
    ++best.candidates;
    if (best.b.col_count() == 0 || std::lexicographical_compare(key.begin(), key.end(), best.key.begin(),
                                                                best.key.end())) {
      best.b = std::move(cand);
      best.key = std::move(key);
    }
  }
  return best;
}

/// Complement realizing a selection: the leading column (1, 0, ..., 0)
/// followed by (1, 2 b_j) for each column of B, in column order. With an
/// empty B this is the deficiency-one singleton.
inline ComplementSet sbar_from_b(const BinaryMatrix& B, RefKind kind) {
  const int n = B.rows + 1;
  ComplementSet out;
  out.n = n;
  out.reference_kind = kind;
  {
    std::vector<std::uint8_t> lead(static_cast<std::size_t>(n), 0);
    lead[0] = 1;
    out.vectors.emplace_back(std::move(lead));
  }
  for (std::uint32_t col : B.cols) {
    std::vector<std::uint8_t> d(static_cast<std::size_t>(n), 0);
    d[0] = 1;
    for (int i = 1; i <= B.rows; ++i)
      if (col >> (i - 1) & 1) d[static_cast<std::size_t>(i)] = 2;
    out.vectors.emplace_back(std::move(d));
  }
  out.validate();
  if (!is_even_set(out)) throw internal_error("sbar_from_b: constructed complement is not even");
  return out;
}

/// Full foldover: mirrored runs with all signs flipped, plus one appended
/// branching column (+1 on the original runs, -1 on the mirror).
inline SignMatrix foldover(const SignMatrix& d) {
  const int N = d.runs(), m = d.factors();
  return SignMatrix::build(
      2 * N, m + 1,
      [&](int r, int c) {
        const int sign = r < N ? 1 : -1;
        if (c == m) return sign;
        return sign * d.entry(r < N ? r : r - N, c);
      },
      SignMatrix::Kind::generic, 0, false, d.trusted_invariant());
}

inline BinaryMatrix doubled_columns(const BinaryMatrix& B) {
  BinaryMatrix two;
  two.rows = B.rows;
  two.cols = B.cols;
  two.cols.insert(two.cols.end(), B.cols.begin(), B.cols.end());
  return two;
}

/// Checks the foldover word-count identities for one column choice:
/// odd counts of a foldover vanish, its even counts collapse onto pair sums
/// of the base, and the folded doubled design reproduces
/// doubled_fold_even_words term by term.
struct FoldReport {
  bool pass = true;
  std::string detail;
};

inline FoldReport fold_wlp_identities(const BinaryMatrix& B) {
  FoldReport rep;
  auto fail = [&](std::string msg) {
    rep.pass = false;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += std::move(msg);
  };
  const int m = B.col_count();
  const SignMatrix d = regular_design(B);
  const Wlp wd = wlp_distance(d);
  if (m <= 20) {
    const RegularWlp cnt = regular_wlp(B);
    for (int k = 0; k <= m; ++k)
      if (wd.num[static_cast<std::size_t>(k)] != BigInt(cnt.a[static_cast<std::size_t>(k)]) * wd.runs * wd.runs)
        fail("base pattern disagrees with subset counts at k=" + std::to_string(k));
  }
  const BigInt nd2 = BigInt(wd.runs) * wd.runs;

  const SignMatrix dt = foldover(d);
  const Wlp wdt = wlp_distance(dt);
  const BigInt nt2 = BigInt(wdt.runs) * wdt.runs;
  for (int k = 1; k <= m + 1; ++k) {
    const BigInt lhs = wdt.num[static_cast<std::size_t>(k)] * nd2;
    if (k % 2 == 1) {
      if (lhs != 0) fail("foldover has an odd-length word at k=" + std::to_string(k));
    } else {
      BigInt base = wd.num[static_cast<std::size_t>(k - 1)];
      if (k <= m) base += wd.num[static_cast<std::size_t>(k)];
      if (lhs != base * nt2) fail("foldover pair-sum identity fails at k=" + std::to_string(k));
    }
  }

  const SignMatrix d0 = regular_design(doubled_columns(B));
  const SignMatrix dt0 = foldover(d0);
  const Wlp w0 = wlp_distance(dt0);
  const BigInt n02 = BigInt(w0.runs) * w0.runs;
  for (int k = 1; k <= 2 * m + 1; k += 2)
    if (w0.num[static_cast<std::size_t>(k)] != 0) fail("folded doubled design has an odd-length word");
  for (int r = 1; r <= m + 1; ++r) {
    const BigInt got = 2 * r <= 2 * m + 1 ? w0.num[static_cast<std::size_t>(2 * r)] : BigInt(0);
    if (got != doubled_fold_even_words(B, r) * n02)
      fail("folded doubled count disagrees with the closed form at 2r=" + std::to_string(2 * r));
  }
  return rep;
}

/// Run-size regime for a dimension: full Gray images have 4^n runs over the
/// full reference pool; halved images have 4^n / 2 runs over the last-even
/// pool. The deficiency is the number of unselected reference columns.
struct Regime {
  int n = 0;
  long long runs = 0;
  int q = 0;
  bool half = false;
  bool odd = false;
  RefKind ref = RefKind::full;
  long long v = 0;
  int s = 0;
  int deficiency = 0;
};

inline Regime derive_regime(int n, long long runs, int q) {
  if (n < 2 || n > 5) throw std::invalid_argument("derive_regime: dimension must be in [2,5]");
  Regime rg;
  rg.n = n;
  rg.runs = runs;
  rg.q = q;
  if (runs == full_space_size(n)) {
    rg.half = false;
  } else if (runs == half_space_size(n)) {
    rg.half = true;
  } else {
    throw std::invalid_argument("derive_regime: runs must be " + std::to_string(full_space_size(n)) + " or " +
                                std::to_string(half_space_size(n)) + " for n=" + std::to_string(n));
  }
  rg.ref = rg.half ? RefKind::last_even : RefKind::full;
  rg.v = reference_size(n, rg.ref);
  rg.odd = q % 2 == 1;
  if (q < 1) throw std::invalid_argument("derive_regime: factor count must be positive");
  rg.s = rg.odd ? (q - 1) / 2 : q / 2;
  rg.deficiency = static_cast<int>(rg.v - rg.s);
  const int max_def = 1 << (n - 1);
  const long long even_lo = std::max(2LL, 2 * (rg.v - max_def));
  const long long even_hi = 2 * rg.v;
  const long long odd_lo = std::max(3LL, 2 * (rg.v - max_def) + 1);
  const long long odd_hi = 2 * rg.v - 1;
  const auto range_msg = [&] {
    return "supported q for n=" + std::to_string(n) + ", runs=" + std::to_string(runs) + ": even in [" +
           std::to_string(even_lo) + "," + std::to_string(even_hi) + "], odd in [" + std::to_string(odd_lo) +
           "," + std::to_string(odd_hi) + "]";
  };
  if (rg.s < 1 || rg.deficiency < 0 || rg.deficiency > max_def || (rg.odd && rg.deficiency < 1))
    throw std::invalid_argument("derive_regime: q=" + std::to_string(q) + " is out of regime; " + range_msg());
  return rg;
}

/// Full aberration-minimizing pipeline: derive the regime, pick the
/// complement by key, build the Gray image (halving it when asked), and
/// attach its exact wordlength pattern.
struct MaDesign {
  Regime regime;
  std::optional<Selection> selection;
  ComplementSet sbar;
  GeneratorMatrix G;
  SignMatrix D;
  Wlp wlp;
};

inline MaDesign ma_design(int n, long long runs, int q) {
  MaDesign out;
  out.regime = derive_regime(n, runs, q);
  const Regime& rg = out.regime;
  const ReferenceSet ref = enumerate_reference(n, rg.ref);
  const FactorParity parity = rg.odd ? FactorParity::odd : FactorParity::even;

  if (rg.deficiency == 0) {
    out.sbar.n = n;
    out.sbar.reference_kind = rg.ref;
  } else if (rg.deficiency == 1) {
    out.sbar = sbar_from_b(BinaryMatrix{n - 1, {}}, rg.ref);
  } else {
    out.selection = select_b(n, rg.deficiency, parity);
    out.sbar = sbar_from_b(out.selection->b, rg.ref);
  }

  const ComplementSet selected = complement(out.sbar.vectors, ref);
  out.G.n = n;
  out.G.columns = selected.vectors;
  out.G.odd = rg.odd;
  if (rg.odd) {
    const Z4Vector lead = out.sbar.vectors.front();
    out.sbar.odd_role = lead;
    out.G.columns.push_back(lead);
  }
  const SignMatrix full = rg.odd ? construct_odd(out.G) : construct_even(out.G);
  out.D = rg.half ? halve(full, out.G) : full;
  if (out.D.factors() != q) throw internal_error("ma_design: factor count mismatch");
  out.wlp = wlp_distance(out.D);
  return out;
}

struct CatalogRow {
  int deficiency = 0;
  Selection selection;
};

/// Selected columns for every deficiency from 2 to 2^(n-1), even-count key.
inline std::vector<CatalogRow> selection_catalog(int n) {
  if (n < 3 || n > 5)
    throw std::invalid_argument("selection_catalog: only computed for n in {3, 4, 5}");
  std::vector<CatalogRow> rows;
  for (int def = 2; def <= (1 << (n - 1)); ++def)
    rows.push_back({def, select_b(n, def, FactorParity::even)});
  return rows;
}

}  // namespace qcdesign
