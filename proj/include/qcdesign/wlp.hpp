#pragma once

#include "qcdesign/exact.hpp"
#include "qcdesign/gray.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qcdesign {

/// Generalized wordlength pattern held exactly: A_k = num[k] / runs^2.
/// num[0] is always runs^2 (A_0 = 1).
struct Wlp {
  int runs = 0;
  int factors = 0;
  std::vector<BigInt> num;  // index k = 0 .. k_max

  int k_max() const { return static_cast<int>(num.size()) - 1; }

  std::pair<BigInt, BigInt> term(int k) const {
    if (k < 0 || k > k_max()) throw std::out_of_range("Wlp::term: k out of range");
    return reduce_fraction(num[static_cast<std::size_t>(k)], BigInt(runs) * runs);
  }

  std::string term_str(int k) const {
    auto [n, d] = term(k);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
  }

  friend bool operator==(const Wlp&, const Wlp&) = default;
};

/// Lexicographic comparison of two patterns from A_3 on, as exact rationals.
/// Requires equal factor counts and equal term counts; runs may differ.
inline int compare_wlp(const Wlp& a, const Wlp& b) {
  if (a.factors != b.factors) throw std::invalid_argument("compare_wlp: factor counts differ");
  if (a.num.size() != b.num.size()) throw std::invalid_argument("compare_wlp: term counts differ");
  const bool same_den = a.runs == b.runs;
  const BigInt da = BigInt(a.runs) * a.runs, db = BigInt(b.runs) * b.runs;
  for (std::size_t k = 3; k < a.num.size(); ++k) {
    const BigInt lhs = same_den ? a.num[k] : a.num[k] * db;
    const BigInt rhs = same_den ? b.num[k] : b.num[k] * da;
    if (lhs != rhs) return lhs < rhs ? -1 : 1;
  }
  return 0;
}

/// Exact aliasing index of a column subset: |column-wise product mean|.
inline Frac aliasing_index(const SignMatrix& D, std::span<const int> H) {
  if (H.empty()) throw std::invalid_argument("aliasing_index: empty subset");
  std::vector<int> sorted(H.begin(), H.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= D.factors())
      throw std::invalid_argument("aliasing_index: column index out of range");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw std::invalid_argument("aliasing_index: duplicate column");
  }
  const int W = D.col_words();
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(W), 0);
  for (int c : sorted)
    for (int w = 0; w < W; ++w) acc[static_cast<std::size_t>(w)] ^= D.column(c)[w];
  int pc = 0;
  for (int w = 0; w < W; ++w) pc += std::popcount(acc[static_cast<std::size_t>(w)]);
  const long long S = D.runs() - 2LL * pc;
  return Frac(S < 0 ? -S : S, D.runs());
}

inline std::vector<int> row_sums(const SignMatrix& D) {
  std::vector<int> s(static_cast<std::size_t>(D.runs()));
  for (int r = 0; r < D.runs(); ++r) s[static_cast<std::size_t>(r)] = D.row_sum(r);
  return s;
}

namespace detail {

template <class Acc>
struct DirectWalk {
  const SignMatrix* D;
  int q, W, k_max, N;
  std::vector<std::uint64_t> xors;  // (k_max + 1) levels of W words
  std::vector<Acc> acc;             // index = subset size

  explicit DirectWalk(const SignMatrix& d, int kmax)
      : D(&d), q(d.factors()), W(d.col_words()), k_max(kmax), N(d.runs()),
        xors(static_cast<std::size_t>(kmax + 1) * W, 0),
        acc(static_cast<std::size_t>(kmax + 1), Acc(0)) {}

  void descend(int start, int depth) {
    const std::uint64_t* prev = xors.data() + static_cast<std::size_t>(depth - 1) * W;
    std::uint64_t* cur = xors.data() + static_cast<std::size_t>(depth) * W;
    for (int c = start; c < q; ++c) {
      const std::uint64_t* col = D->column(c);
      int pc = 0;
      for (int w = 0; w < W; ++w) {
        cur[w] = prev[w] ^ col[w];
        pc += std::popcount(cur[w]);
      }
      const long long s = N - 2LL * pc;
      acc[static_cast<std::size_t>(depth)] += Acc(s * s);
      if (depth < k_max) descend(c + 1, depth + 1);
    }
  }

  /// Walks every subset whose smallest column is first_lo, first_lo + stride, ...
  void run(int first_lo, int stride) {
    std::uint64_t* lvl1 = xors.data() + W;
    for (int c0 = first_lo; c0 < q; c0 += stride) {
      const std::uint64_t* col = D->column(c0);
      int pc = 0;
      for (int w = 0; w < W; ++w) {
        lvl1[w] = col[w];
        pc += std::popcount(lvl1[w]);
      }
      const long long s = N - 2LL * pc;
      acc[1] += Acc(s * s);
      if (k_max > 1) descend(c0 + 1, 2);
    }
  }
};

inline BigInt direct_node_bound(int q, int k_max) {
  BigInt total = 0;
  for (int d = 1; d <= k_max; ++d) total += binomial(q, d);
  return total;
}

}  // namespace detail

/// Exact wordlength terms A_1..A_k_max by enumerating every column subset.
/// Subset Schur products are XORs of packed sign columns; the subset space is
/// partitioned round-robin over worker_count() threads, and the accumulator
/// width is chosen up front so sums cannot overflow.
inline Wlp wlp_direct(const SignMatrix& D, int k_max) {
  if (k_max < 1 || k_max > D.factors()) throw std::invalid_argument("wlp_direct: k_max out of range");
  const int threads = std::max(1, std::min(worker_count(), D.factors()));
  const bool fits64 =
      detail::direct_node_bound(D.factors(), k_max) * BigInt(D.runs()) * D.runs() < (BigInt(1) << 63);

  Wlp out;
  out.runs = D.runs();
  out.factors = D.factors();
  out.num.assign(static_cast<std::size_t>(k_max) + 1, BigInt(0));
  out.num[0] = BigInt(D.runs()) * D.runs();

  auto merge = [&](const auto& walks) {
    for (const auto& walk : walks)
      for (int k = 1; k <= k_max; ++k) out.num[static_cast<std::size_t>(k)] += walk.acc[static_cast<std::size_t>(k)];
  };

  if (fits64) {
    std::vector<detail::DirectWalk<std::uint64_t>> walks(static_cast<std::size_t>(threads),
                                                         detail::DirectWalk<std::uint64_t>(D, k_max));
    if (threads == 1) {
      walks[0].run(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&walks, t, threads] { walks[static_cast<std::size_t>(t)].run(t, threads); });
      for (auto& th : pool) th.join();
    }
    merge(walks);
  } else {
    std::vector<detail::DirectWalk<BigInt>> walks(static_cast<std::size_t>(threads),
                                                  detail::DirectWalk<BigInt>(D, k_max));
    if (threads == 1) {
      walks[0].run(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&walks, t, threads] { walks[static_cast<std::size_t>(t)].run(t, threads); });
      for (auto& th : pool) th.join();
    }
    merge(walks);
  }
  return out;
}

/// Full exact pattern A_0..A_q from a row-weight histogram via binary
/// Krawtchouk polynomials: runs^2 * A_k = runs * sum_w count[w] * K_k(w; q).
inline Wlp wlp_from_weight_counts(int runs, int q, const std::vector<long long>& counts) {
  if (static_cast<int>(counts.size()) != q + 1)
    throw std::invalid_argument("wlp_from_weight_counts: histogram must have q+1 bins");
  long long total = 0;
  for (long long c : counts) total += c;
  if (total != runs) throw std::invalid_argument("wlp_from_weight_counts: histogram does not sum to the run count");
  std::vector<BigInt> acc(static_cast<std::size_t>(q) + 1, BigInt(0));
  for (int w = 0; w <= q; ++w) {
    const long long cnt = counts[static_cast<std::size_t>(w)];
    if (cnt == 0) continue;
    if (cnt < 0) throw std::invalid_argument("wlp_from_weight_counts: negative count");
    // three-term recurrence (k+1) K_{k+1} = (q-2w) K_k - (q-k+1) K_{k-1}
    BigInt prev = 1;
    BigInt cur = q - 2 * w;
    acc[0] += cnt;
    if (q >= 1) acc[1] += cnt * cur;
    for (int k = 1; k < q; ++k) {
      BigInt next = (q - 2 * w) * cur - BigInt(q - k + 1) * prev;
      BigInt quo, rem;
      boost::multiprecision::divide_qr(next, BigInt(k + 1), quo, rem);
      if (rem != 0) throw internal_error("wlp_from_weight_counts: Krawtchouk recurrence not integral");
      acc[static_cast<std::size_t>(k) + 1] += cnt * quo;
      prev = cur;
      cur = quo;
    }
  }
  Wlp out;
  out.runs = runs;
  out.factors = q;
  out.num.resize(static_cast<std::size_t>(q) + 1);
  for (int k = 0; k <= q; ++k) {
    BigInt v = BigInt(runs) * acc[static_cast<std::size_t>(k)];
    if (v < 0) throw internal_error("wlp_from_weight_counts: negative A_" + std::to_string(k));
    out.num[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

namespace detail {
/// The weight-histogram identity needs every row's distance profile to match
/// the design's weight profile; sample a handful of rows and check.
inline bool sampled_profile_invariant(const SignMatrix& D) {
  const int N = D.runs();
  std::vector<int> weights(static_cast<std::size_t>(N));
  for (int r = 0; r < N; ++r) weights[static_cast<std::size_t>(r)] = D.row_weight(r);
  std::vector<int> profile = weights;
  std::sort(profile.begin(), profile.end());
  const int samples = std::min(N, 8);
  for (int i = 0; i < samples; ++i) {
    const int r = static_cast<int>(static_cast<long long>(i) * (N - 1) / std::max(1, samples - 1));
    std::vector<int> dist(static_cast<std::size_t>(N));
    for (int r2 = 0; r2 < N; ++r2) dist[static_cast<std::size_t>(r2)] = D.row_distance(r, r2);
    std::sort(dist.begin(), dist.end());
    if (dist != profile) return false;
  }
  return true;
}
}  // namespace detail

/// Full exact pattern via row weights. Valid for row-shift-invariant designs
/// (all QC constructions, regular designs and their foldovers, which carry a
/// trusted flag); anything else is checked by sampled distance profiles.
inline Wlp wlp_distance(const SignMatrix& D) {
  if (!D.trusted_invariant() && !detail::sampled_profile_invariant(D))
    throw std::domain_error("wlp_distance: design is not group-invariant; use the direct method");
  if (D.trusted_invariant() && D.row_weight(0) != 0)
    throw internal_error("wlp_distance: trusted design lost its all-ones row");
  std::vector<long long> counts(static_cast<std::size_t>(D.factors()) + 1, 0);
  for (int r = 0; r < D.runs(); ++r) ++counts[static_cast<std::size_t>(D.row_weight(r))];
  return wlp_from_weight_counts(D.runs(), D.factors(), counts);
}

/// Largest |subset mean| over all k-subsets, by exhaustive scan.
inline Frac rho_k_max(const SignMatrix& D, int k) {
  if (k < 1 || k > D.factors()) throw std::invalid_argument("rho_k_max: k out of range");
  const int q = D.factors(), W = D.col_words(), N = D.runs();
  std::vector<std::uint64_t> xors(static_cast<std::size_t>(k + 1) * W, 0);
  long long best = 0;
  auto descend = [&](auto&& self, int start, int depth) -> void {
    const std::uint64_t* prev = xors.data() + static_cast<std::size_t>(depth - 1) * W;
    std::uint64_t* cur = xors.data() + static_cast<std::size_t>(depth) * W;
    for (int c = start; c <= q - (k - depth + 1); ++c) {
      const std::uint64_t* col = D.column(c);
      if (depth < k) {
        for (int w = 0; w < W; ++w) cur[w] = prev[w] ^ col[w];
        self(self, c + 1, depth + 1);
      } else {
        int pc = 0;
        for (int w = 0; w < W; ++w) pc += std::popcount(prev[w] ^ col[w]);
        const long long s = N - 2LL * pc;
        best = std::max(best, s < 0 ? -s : s);
        if (best == N) return;
      }
    }
  };
  descend(descend, 0, 1);
  return Frac(best, N);
}

struct Resolution {
  bool unbounded = false;
  int r = 0;          // smallest subset size with any aliasing
  Frac rho_max{0, 1};

  Frac value() const {
    if (unbounded) throw std::logic_error("Resolution::value: design has no aliasing");
    return Frac((r + 1) * rho_max.den - rho_max.num, rho_max.den);
  }
  std::string str() const { return unbounded ? std::string("unbounded") : value().str(); }
};

/// Resolution r + 1 - rho_r,max where r is the smallest size with aliasing;
/// "unbounded" when no subset of any size is aliased.
inline Resolution resolution(const SignMatrix& D) {
  int r = 0;
  if (D.trusted_invariant()) {
    const Wlp w = wlp_distance(D);
    for (int k = 1; k <= w.k_max(); ++k)
      if (w.num[static_cast<std::size_t>(k)] != 0) {
        r = k;
        break;
      }
  } else {
    for (int k = 1; k <= D.factors(); ++k) {
      if (rho_k_max(D, k).num != 0) {
        r = k;
        break;
      }
    }
  }
  Resolution out;
  if (r == 0) {
    out.unbounded = true;
    return out;
  }
  out.r = r;
  out.rho_max = rho_k_max(D, r);
  if (out.rho_max.num == 0) throw internal_error("resolution: aliasing vanished on rescan");
  return out;
}

/// True when every p-subset of columns takes all 2^p sign patterns.
inline bool projectivity_at_least(const SignMatrix& D, int p) {
  if (p < 1 || p > D.factors()) throw std::invalid_argument("projectivity_at_least: p out of range");
  if (p > 24) throw std::invalid_argument("projectivity_at_least: p too large to enumerate patterns");
  const int q = D.factors(), W = D.col_words(), N = D.runs();
  std::vector<std::uint64_t> tail(static_cast<std::size_t>(W), ~0ULL);
  if (N % 64 != 0) tail[static_cast<std::size_t>(W - 1)] = (1ULL << (N % 64)) - 1;

  std::vector<const std::uint64_t*> chosen(static_cast<std::size_t>(p));
  auto covered = [&]() {
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
      bool found = false;
      for (int w = 0; w < W && !found; ++w) {
        std::uint64_t word = tail[static_cast<std::size_t>(w)];
        for (int i = 0; i < p && word; ++i) {
          const std::uint64_t cw = chosen[static_cast<std::size_t>(i)][w];
          word &= (mask >> i & 1) ? cw : ~cw;
        }
        found = word != 0;
      }
      if (!found) return false;
    }
    return true;
  };
  auto descend = [&](auto&& self, int start, int depth) -> bool {
    for (int c = start; c <= q - (p - depth); ++c) {
      chosen[static_cast<std::size_t>(depth)] = D.column(c);
      if (depth + 1 == p) {
        if (!covered()) return false;
      } else if (!self(self, c + 1, depth + 1)) {
        return false;
      }
    }
    return true;
  };
  return descend(descend, 0, 0);
}

struct Moments {
  int runs = 0;
  std::vector<BigInt> m;  // m[k] = sum over rows of row_sum^k, k = 0..k_max
};

/// Naive double sum of k-th powers of row scalar products; small designs only.
inline std::vector<BigInt> scalar_product_moments(const SignMatrix& D, int k_max) {
  if (D.runs() > 512) throw std::invalid_argument("scalar_product_moments: too many runs for the naive sum");
  std::vector<BigInt> M(static_cast<std::size_t>(k_max) + 1, BigInt(0));
  for (int r1 = 0; r1 < D.runs(); ++r1)
    for (int r2 = 0; r2 < D.runs(); ++r2) {
      const BigInt d = D.row_dot(r1, r2);
      BigInt p = 1;
      for (int k = 0; k <= k_max; ++k) {
        M[static_cast<std::size_t>(k)] += p;
        p *= d;
      }
    }
  return M;
}

/// Row-sum power moments. With verify set (shift-invariant designs only) the
/// naive scalar-product moments must equal runs * m_k.
inline Moments moments(const SignMatrix& D, int k_max, bool verify = false) {
  if (k_max < 0) throw std::invalid_argument("moments: k_max must be nonnegative");
  Moments out;
  out.runs = D.runs();
  out.m.assign(static_cast<std::size_t>(k_max) + 1, BigInt(0));
  for (int r = 0; r < D.runs(); ++r) {
    const BigInt s = D.row_sum(r);
    BigInt p = 1;
    for (int k = 0; k <= k_max; ++k) {
      out.m[static_cast<std::size_t>(k)] += p;
      p *= s;
    }
  }
  if (verify) {
    if (!D.trusted_invariant())
      throw std::invalid_argument("moments: verification requires a shift-invariant design");
    const auto M = scalar_product_moments(D, k_max);
    for (int k = 0; k <= k_max; ++k)
      if (M[static_cast<std::size_t>(k)] != BigInt(D.runs()) * out.m[static_cast<std::size_t>(k)])
        throw internal_error("moments: scalar-product moment mismatch at k=" + std::to_string(k));
  }
  return out;
}

}  // namespace qcdesign
