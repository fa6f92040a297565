#pragma once

#include "qcdesign/compset.hpp"
#include "qcdesign/regsel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qcdesign {

/// One verifiable statement with its outcome.
struct Claim {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline bool all_pass(const std::vector<Claim>& claims) {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

/// Result of an exhaustive aberration search over every admissible design of
/// a regime.
struct SearchReport {
  Regime regime;
  long long candidates = 0;
  long long optima_count = 0;         // candidates attaining the best pattern
  std::vector<ComplementSet> optima;  // stored up to optima_cap
  Wlp best;

  static constexpr long long optima_cap = 256;
};

namespace detail {

struct RealizedDesign {
  GeneratorMatrix G;
  SignMatrix D;
};

/// Generator and Gray image realizing a complement choice against its pool.
inline RealizedDesign design_from_complement(const ComplementSet& sbar, const ReferenceSet& ref,
                                             bool half) {
  RealizedDesign out;
  out.G.n = ref.n;
  out.G.odd = sbar.odd_role.has_value();
  out.G.columns = complement(sbar.vectors, ref).vectors;
  if (sbar.odd_role) out.G.columns.push_back(*sbar.odd_role);
  SignMatrix full = out.G.odd ? construct_odd(out.G) : construct_even(out.G);
  out.D = half ? halve(full, out.G) : std::move(full);
  return out;
}

inline void for_each_combination(int v, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > v) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k == 0) {
    fn(idx);
    return;
  }
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == v - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline std::vector<int> random_subset(std::mt19937_64& rng, int v, int k) {
  std::vector<int> all(static_cast<std::size_t>(v));
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, v - 1);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<int> out(all.begin(), all.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

inline ComplementSet make_sbar(const ReferenceSet& ref, const std::vector<int>& idx,
                               std::optional<int> designated = std::nullopt) {
  ComplementSet out;
  out.n = ref.n;
  out.reference_kind = ref.kind;
  for (int j : idx) out.vectors.push_back(ref.vectors[static_cast<std::size_t>(j)]);
  if (designated) out.odd_role = ref.vectors[static_cast<std::size_t>(*designated)];
  return out;
}

/// Pass/fail accumulator that keeps the first failure message.
struct Check {
  bool ok = true;
  long long cases = 0;
  std::string first;

  void pass() { ++cases; }
  void fail(const std::string& msg) {
    ++cases;
    if (ok) {
      ok = false;
      first = msg;
    }
  }
  void that(bool cond, const std::string& msg) {
    if (cond)
      pass();
    else
      fail(msg);
  }
  std::pair<bool, std::string> result() const {
    return {ok, ok ? std::to_string(cases) + " checks" : first};
  }
};

}  // namespace detail

/// Exhaustive minimum-aberration search: every admissible column choice of
/// the regime is enumerated through its complement, row weights are updated
/// incrementally from per-column dot tables, and patterns come from the
/// weight histogram. The stored optima are spot-checked against a fresh
/// construction and the subset-enumeration pattern.
inline SearchReport brute_force_ma(int n, int q, long long runs, long long space_cap = 1'000'000) {
  SearchReport rep;
  rep.regime = derive_regime(n, runs, q);
  const Regime& rg = rep.regime;
  const ReferenceSet ref = enumerate_reference(n, rg.ref);
  const int v = static_cast<int>(rg.v);
  const int def = rg.deficiency;
  {
    BigInt total = binomial(v, def);
    if (rg.odd) total *= def;
    if (total > space_cap)
      throw std::domain_error("brute_force_ma: " + total.str() + " candidates exceed the cap of " +
                              std::to_string(space_cap));
  }

  const int N = static_cast<int>(runs);
  // Per pool column: number of -1 entries each row receives from its Gray
  // pair, and from the single appended sign when the column is designated.
  static constexpr std::uint8_t pair_minus_of[4] = {0, 1, 2, 1};
  std::vector<std::vector<std::uint8_t>> pair_minus(static_cast<std::size_t>(v)),
      odd_minus(static_cast<std::size_t>(v));
  std::vector<int> base(static_cast<std::size_t>(N), 0);
  for (int j = 0; j < v; ++j) {
    auto& pm = pair_minus[static_cast<std::size_t>(j)];
    auto& om = odd_minus[static_cast<std::size_t>(j)];
    pm.resize(static_cast<std::size_t>(N));
    om.resize(static_cast<std::size_t>(N));
    for (int r = 0; r < N; ++r) {
      const int z = dot_mod4(row_vector_at(n, r, rg.half), ref.vectors[static_cast<std::size_t>(j)]);
      pm[static_cast<std::size_t>(r)] = pair_minus_of[z];
      om[static_cast<std::size_t>(r)] = gray_sign(-z) == -1 ? 1 : 0;
      base[static_cast<std::size_t>(r)] += pair_minus_of[z];
    }
  }

  std::map<std::vector<long long>, int> hist_id;
  std::vector<Wlp> wlps;
  int best_id = -1;
  std::vector<int> comb(static_cast<std::size_t>(def));
  std::vector<int> cur = base;  // row weights of the currently selected columns

  auto record_optimum = [&](std::optional<int> designated) {
    ++rep.optima_count;
    if (static_cast<long long>(rep.optima.size()) >= SearchReport::optima_cap) return;
    rep.optima.push_back(detail::make_sbar(ref, comb, designated));
  };

  std::vector<long long> counts(static_cast<std::size_t>(q) + 1);
  auto evaluate = [&](std::optional<int> designated) {
    ++rep.candidates;
    std::fill(counts.begin(), counts.end(), 0);
    if (designated) {
      const auto& om = odd_minus[static_cast<std::size_t>(*designated)];
      for (int r = 0; r < N; ++r)
        ++counts[static_cast<std::size_t>(cur[static_cast<std::size_t>(r)] + om[static_cast<std::size_t>(r)])];
    } else {
      for (int r = 0; r < N; ++r) ++counts[static_cast<std::size_t>(cur[static_cast<std::size_t>(r)])];
    }
    auto [it, inserted] = hist_id.try_emplace(counts, static_cast<int>(wlps.size()));
    if (inserted) wlps.push_back(wlp_from_weight_counts(N, q, counts));
    const int id = it->second;
    int cmp = 0;
    if (best_id < 0)
      cmp = -1;
    else if (id != best_id)
      cmp = compare_wlp(wlps[static_cast<std::size_t>(id)], wlps[static_cast<std::size_t>(best_id)]);
    if (cmp < 0) {
      best_id = id;
      rep.optima.clear();
      rep.optima_count = 0;
      record_optimum(designated);
    } else if (cmp == 0) {
      record_optimum(designated);
    }
  };

  auto descend = [&](auto&& self, int start, int depth) -> void {
    if (depth == def) {
      if (rg.odd)
        for (int d : comb) evaluate(d);
      else
        evaluate(std::nullopt);
      return;
    }
    for (int j = start; j <= v - (def - depth); ++j) {
      comb[static_cast<std::size_t>(depth)] = j;
      const auto& pm = pair_minus[static_cast<std::size_t>(j)];
      for (int r = 0; r < N; ++r) cur[static_cast<std::size_t>(r)] -= pm[static_cast<std::size_t>(r)];
      self(self, j + 1, depth + 1);
      for (int r = 0; r < N; ++r) cur[static_cast<std::size_t>(r)] += pm[static_cast<std::size_t>(r)];
    }
  };
  descend(descend, 0, 0);

  if (best_id < 0) throw internal_error("brute_force_ma: no candidate enumerated");
  rep.best = wlps[static_cast<std::size_t>(best_id)];

  // Spot check: rebuild a few optima for real and compare the histogram
  // pattern against an actual construction and the subset enumeration.
  const std::size_t spot = std::min<std::size_t>(rep.optima.size(), 3);
  for (std::size_t i = 0; i < spot; ++i) {
    const auto rd = detail::design_from_complement(rep.optima[i], ref, rg.half);
    if (rd.D.factors() != q) throw internal_error("brute_force_ma: reconstruction factor mismatch");
    const Wlp wd = wlp_distance(rd.D);
    if (wd.num != rep.best.num)
      throw internal_error("brute_force_ma: reconstructed pattern disagrees with the search");
    const int k_chk = std::min(q, 3);
    const Wlp dir = wlp_direct(rd.D, k_chk);
    for (int k = 0; k <= k_chk; ++k)
      if (dir.num[static_cast<std::size_t>(k)] != rep.best.num[static_cast<std::size_t>(k)])
        throw internal_error("brute_force_ma: direct spot check failed at k=" + std::to_string(k));
  }
  return rep;
}

/// Independent validation of every identity the pipeline rests on, exhaustive
/// at n=2 and densely sampled at n=3. Returns one claim per identity family.
inline std::vector<Claim> verify_identities(int n) {
  if (n < 2 || n > 3)
    throw std::invalid_argument("verify_identities: exhaustive checks only run for n in {2,3}");
  using detail::Check;
  using detail::for_each_combination;
  using detail::make_sbar;
  using detail::random_subset;

  std::vector<Claim> claims;
  auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, det] = body();
      claims.push_back({name, ok, std::move(det)});
    } catch (const std::exception& e) {
      claims.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };

  const ReferenceSet omega = enumerate_omega(n);
  const ReferenceSet omega0 = enumerate_omega0(n);
  const long long full_rows = full_space_size(n);
  const int max_even = 1 << (n - 1);

  // ---- reference pools ----------------------------------------------------
  run("reference-pools", [&]() -> std::pair<bool, std::string> {
    Check c;
    for (const ReferenceSet* ref : {&omega, &omega0}) {
      c.that(ref->size() == reference_size(n, ref->kind), "pool size differs from the closed form");
      c.that(std::is_sorted(ref->vectors.begin(), ref->vectors.end()), "pool not in canonical order");
      for (const auto& g : ref->vectors) {
        const bool last_ok = ref->kind == RefKind::full || g[n - 1] % 2 == 0;
        c.that(is_valid_column(g) && last_ok, "invalid pool member " + g.str());
      }
      for (std::size_t i = 0; i < ref->vectors.size(); ++i)
        for (std::size_t j = i + 1; j < ref->vectors.size(); ++j)
          c.that(!are_multiples(ref->vectors[i], ref->vectors[j]),
                 ref->vectors[i].str() + " and " + ref->vectors[j].str() + " are multiples");
    }
    // Independent size characterization: the full pool together with its
    // negations covers each vector containing an odd digit exactly once.
    std::set<Z4Vector> cover;
    for (const auto& g : omega.vectors) {
      cover.insert(g);
      cover.insert(-g);
    }
    c.that(cover.size() == 2 * omega.vectors.size(), "a pool member coincides with a negation");
    long long with_odd = 0;
    detail::for_each_z4(n, [&](const std::vector<std::uint8_t>& d) {
      Z4Vector u{std::vector<std::uint8_t>(d)};
      if (!u.has_odd()) return;
      ++with_odd;
      if (cover.count(u) == 0) c.fail("odd-digit vector " + u.str() + " is outside the pool cover");
    });
    c.that(with_odd == 2 * omega.size(), "odd-digit vector count mismatch");
    // The last-even pool is exactly the filtered full pool.
    std::vector<Z4Vector> filtered;
    for (const auto& g : omega.vectors)
      if (g[n - 1] % 2 == 0) filtered.push_back(g);
    c.that(filtered == omega0.vectors, "last-even pool is not the filtered full pool");
    return c.result();
  });

  // ---- even sets ----------------------------------------------------------
  run("even-set-criterion", [&]() -> std::pair<bool, std::string> {
    Check c;
    for (std::size_t i = 0; i < omega.vectors.size(); ++i)
      for (std::size_t j = i + 1; j < omega.vectors.size(); ++j) {
        const bool even = is_even_set({omega.vectors[i], omega.vectors[j]});
        const bool same = omega.vectors[i].parity_pattern() == omega.vectors[j].parity_pattern();
        c.that(even == same, "pair evenness disagrees with parity patterns at " + omega.vectors[i].str() +
                                 "," + omega.vectors[j].str());
      }
    auto class_sizes = [&](const ReferenceSet& ref, std::size_t expect_classes) {
      std::map<std::uint32_t, int> cnt;
      for (const auto& g : ref.vectors) ++cnt[g.parity_pattern()];
      c.that(cnt.size() == expect_classes, "parity class count mismatch");
      for (const auto& [p, k] : cnt) c.that(k == max_even, "parity class size is not 2^(n-1)");
    };
    class_sizes(omega, (1u << n) - 1);
    class_sizes(omega0, (1u << (n - 1)) - 1);
    for (int k = 1; k <= max_even; ++k) {
      const ComplementSet es = build_even_set(n, k);
      c.that(es.size() == k && is_even_set(es), "built even set is wrong");
      for (const auto& g : es.vectors)
        c.that(omega.contains(g) && omega0.contains(g), "even-set member outside the pools");
    }
    try {
      build_even_set(n, max_even + 1);
      c.fail("oversized even set did not throw");
    } catch (const std::domain_error&) {
      c.pass();
    }
    return c.result();
  });

  // Shared complement samples per reference kind.
  auto sbar_index_sets = [&](const ReferenceSet& ref, unsigned seed) {
    std::vector<std::vector<int>> out;
    const int v = ref.size();
    if (n == 2) {
      for (int k = 1; k <= std::min(v, 3); ++k)
        for_each_combination(v, k, [&](const std::vector<int>& idx) { out.push_back(idx); });
    } else {
      for (int k = 1; k <= 2; ++k)
        for_each_combination(v, k, [&](const std::vector<int>& idx) { out.push_back(idx); });
      std::mt19937_64 rng(seed);
      for (int t = 0; t < 60; ++t) {
        std::uniform_int_distribution<int> size(3, 5);
        out.push_back(random_subset(rng, v, size(rng)));
      }
    }
    return out;
  };

  // ---- design/complement row-sum identity ---------------------------------
  run("complement-row-sum-identity", [&]() -> std::pair<bool, std::string> {
    Check c;
    if (n == 2) {
      ComplementSet sb;
      sb.n = 2;
      sb.reference_kind = RefKind::full;
      sb.vectors = {Z4Vector::parse("10"), Z4Vector::parse("12")};
      const auto sig = complement_row_sums(sb);
      c.that(sig[static_cast<std::size_t>(row_index_of(Z4Vector::parse("20"), false))] == -4,
             "frozen complement row-sum fixture");
    }
    for (const ReferenceSet* ref : {&omega, &omega0}) {
      for (const auto& idx : sbar_index_sets(*ref, 11u + static_cast<unsigned>(n))) {
        const ComplementSet even_sb = make_sbar(*ref, idx);
        const auto S = complement(even_sb.vectors, *ref).vectors;
        c.that(complement_identity_holds(S, even_sb), "even identity fails for a complement of size " +
                                                          std::to_string(idx.size()));
        const bool all_designated = n == 2 || idx.size() <= 2;
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
          if (!all_designated && pos != 0 && pos + 1 != idx.size()) continue;
          const ComplementSet odd_sb = make_sbar(*ref, idx, idx[pos]);
          c.that(complement_identity_holds(S, odd_sb), "odd identity fails for a complement of size " +
                                                           std::to_string(idx.size()));
        }
      }
    }
    return c.result();
  });

  // ---- complement moment constants ----------------------------------------
  run("complement-moment-constants", [&]() -> std::pair<bool, std::string> {
    Check c;
    for (const ReferenceSet* ref : {&omega, &omega0}) {
      for (const auto& idx : sbar_index_sets(*ref, 29u + static_cast<unsigned>(n))) {
        for (int parity = 0; parity < 2; ++parity) {
          const bool odd = parity == 1;
          const ComplementSet sb = odd ? make_sbar(*ref, idx, idx.front()) : make_sbar(*ref, idx);
          const auto sig = complement_row_sums(sb);
          long long s1 = 0, s2 = 0;
          for (int x : sig) {
            s1 += x;
            s2 += static_cast<long long>(x) * x;
          }
          const long long k = static_cast<long long>(idx.size());
          const long long want2 = odd ? full_rows * (2 * k - 1) : 2 * full_rows * k;
          c.that(s1 == 0, "first raw moment is not zero");
          c.that(s2 == want2, "second raw moment differs from the closed form");
          const auto mb = complement_moments(sb, 1);
          c.that(mb[0] == full_rows && mb[1] == full_rows, "shifted moments lost their constants");
        }
      }
    }
    return c.result();
  });

  // ---- leading aberration term tracks the cubic statistic -----------------
  run("aberration-tracks-complement-statistic", [&]() -> std::pair<bool, std::string> {
    Check c;
    struct Pt {
      BigInt x, y;
    };
    auto regime_points = [&](long long runs, int q) {
      const Regime rg = derive_regime(n, runs, q);
      const ReferenceSet& ref = rg.ref == RefKind::full ? omega : omega0;
      std::vector<Pt> pts;
      if (q < 3) return pts;  // no length-3 term to track
      for_each_combination(static_cast<int>(rg.v), rg.deficiency, [&](const std::vector<int>& idx) {
        if (rg.odd) {
          for (int d : idx) {
            const ComplementSet sb = make_sbar(ref, idx, d);
            const auto rd = detail::design_from_complement(sb, ref, rg.half);
            pts.push_back({f3_statistic(sb), wlp_distance(rd.D).num[3]});
          }
        } else {
          const ComplementSet sb = make_sbar(ref, idx);
          const auto rd = detail::design_from_complement(sb, ref, rg.half);
          pts.push_back({f3_statistic(sb), wlp_distance(rd.D).num[3]});
        }
      });
      return pts;
    };
    auto affine_decreasing = [&](const std::vector<Pt>& pts, const std::string& tag) {
      if (pts.empty()) {
        c.pass();
        return;
      }
      std::size_t i1 = 0;
      while (i1 < pts.size() && pts[i1].x == pts[0].x) ++i1;
      if (i1 == pts.size()) {
        for (const auto& p : pts)
          c.that(p.y == pts[0].y, tag + ": equal statistics with different leading terms");
        return;
      }
      const BigInt dx = pts[i1].x - pts[0].x, dy = pts[i1].y - pts[0].y;
      c.that(dx * dy < 0, tag + ": leading term is not decreasing in the statistic");
      for (const auto& p : pts)
        c.that((p.y - pts[0].y) * dx == (p.x - pts[0].x) * dy, tag + ": points are not collinear");
    };
    std::vector<std::pair<long long, int>> regimes;
    if (n == 2)
      regimes = {{16, 8}, {16, 9}, {16, 10}, {16, 11}, {16, 12}, {8, 2}, {8, 3}, {8, 4}};
    else
      regimes = {{64, 52}, {64, 53}, {32, 20}, {32, 21}};
    for (auto [runs, q] : regimes)
      affine_decreasing(regime_points(runs, q), "runs=" + std::to_string(runs) + ",q=" + std::to_string(q));
    return c.result();
  });

  // ---- cubic statistic bound ----------------------------------------------
  run("complement-statistic-bound", [&]() -> std::pair<bool, std::string> {
    Check c;
    for (const ReferenceSet* ref : {&omega, &omega0}) {
      const int v = ref->size();
      for (int k = 1; k <= max_even; ++k) {
        const BigInt bound_even = f3_upper_bound(n, k, false);
        const BigInt bound_odd = f3_upper_bound(n, k, true);
        for_each_combination(v, k, [&](const std::vector<int>& idx) {
          const ComplementSet sb = make_sbar(*ref, idx);
          const bool even = is_even_set(sb.vectors);
          const BigInt f3 = f3_statistic(sb);
          c.that(even ? f3 == bound_even : f3 < bound_even, "even-form bound fails for size " +
                                                                std::to_string(k));
          for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            if (!even && pos != 0 && pos != idx.size() / 2) continue;
            const ComplementSet sbo = make_sbar(*ref, idx, idx[pos]);
            const BigInt f3o = f3_statistic(sbo);
            c.that(even ? f3o == bound_odd : f3o < bound_odd, "odd-form bound fails for size " +
                                                                  std::to_string(k));
          }
        });
      }
    }
    return c.result();
  });

  // ---- shared design suite ------------------------------------------------
  std::vector<SignMatrix> suite;
  auto even_design = [&](const std::vector<Z4Vector>& cols) {
    GeneratorMatrix G{n, cols, false};
    return construct_even(G);
  };
  auto odd_design = [&](const std::vector<Z4Vector>& cols, std::size_t designated) {
    GeneratorMatrix G{n, {}, true};
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (i != designated) G.columns.push_back(cols[i]);
    G.columns.push_back(cols[designated]);
    return construct_odd(G);
  };
  auto halved_even = [&](const std::vector<Z4Vector>& cols) {
    GeneratorMatrix G{n, cols, false};
    return halve(construct_even(G), G);
  };
  auto halved_odd = [&](const std::vector<Z4Vector>& cols, std::size_t designated) {
    GeneratorMatrix G{n, {}, true};
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (i != designated) G.columns.push_back(cols[i]);
    G.columns.push_back(cols[designated]);
    return halve(construct_odd(G), G);
  };
  auto cols_at = [](const ReferenceSet& ref, const std::vector<int>& idx) {
    std::vector<Z4Vector> out;
    for (int j : idx) out.push_back(ref.vectors[static_cast<std::size_t>(j)]);
    return out;
  };

  run("construction-suite", [&]() -> std::pair<bool, std::string> {
    Check c;
    if (n == 2) {
      for (int k = 1; k <= omega.size(); ++k)
        for_each_combination(omega.size(), k, [&](const std::vector<int>& idx) {
          suite.push_back(even_design(cols_at(omega, idx)));
        });
      for (int k = 2; k <= omega.size(); ++k)
        for_each_combination(omega.size(), k, [&](const std::vector<int>& idx) {
          for (std::size_t d = 0; d < idx.size(); ++d) suite.push_back(odd_design(cols_at(omega, idx), d));
        });
      for (int k = 1; k <= omega0.size(); ++k)
        for_each_combination(omega0.size(), k, [&](const std::vector<int>& idx) {
          suite.push_back(halved_even(cols_at(omega0, idx)));
        });
      for_each_combination(omega0.size(), 2, [&](const std::vector<int>& idx) {
        for (std::size_t d = 0; d < idx.size(); ++d) suite.push_back(halved_odd(cols_at(omega0, idx), d));
      });
    } else {
      std::mt19937_64 rng(71u);
      auto rand_size = [&](int lo, int hi) {
        std::uniform_int_distribution<int> s(lo, hi);
        return s(rng);
      };
      for (int t = 0; t < 12; ++t)
        suite.push_back(even_design(cols_at(omega, random_subset(rng, omega.size(), rand_size(1, omega.size() - 1)))));
      for (int t = 0; t < 12; ++t) {
        const auto idx = random_subset(rng, omega.size(), rand_size(2, omega.size()));
        suite.push_back(odd_design(cols_at(omega, idx),
                                   static_cast<std::size_t>(rand_size(0, static_cast<int>(idx.size()) - 1))));
      }
      for (int t = 0; t < 8; ++t)
        suite.push_back(halved_even(cols_at(omega0, random_subset(rng, omega0.size(), rand_size(1, omega0.size())))));
      for (int t = 0; t < 8; ++t) {
        const auto idx = random_subset(rng, omega0.size(), rand_size(2, omega0.size()));
        suite.push_back(halved_odd(cols_at(omega0, idx),
                                   static_cast<std::size_t>(rand_size(0, static_cast<int>(idx.size()) - 1))));
      }
    }
    for (const SignMatrix& D : suite) {
      c.that(D.row_weight(0) == 0, "first row is not all +1");
      c.that(D.trusted_invariant(), "construction lost its invariance flag");
      c.that(D.runs() == (D.half() ? half_space_size(n) : full_space_size(n)), "run count mismatch");
    }
    // Regular two-level designs and their foldovers join the suite.
    int taken = 0;
    for (const auto& B : enumerate_b(n, std::min(2, (1 << (n - 1)) - 1))) {
      if (++taken > 5) break;
      suite.push_back(regular_design(B));
      suite.push_back(foldover(regular_design(B)));
    }
    return {c.ok, c.ok ? std::to_string(suite.size()) + " designs" : c.first};
  });

  // ---- every row sees the same distance profile ---------------------------
  run("row-profile-invariance", [&]() -> std::pair<bool, std::string> {
    Check c;
    c.that(!suite.empty(), "design suite is empty");
    for (const SignMatrix& D : suite) {
      const int N = D.runs();
      std::vector<int> profile(static_cast<std::size_t>(N));
      for (int r = 0; r < N; ++r) profile[static_cast<std::size_t>(r)] = D.row_weight(r);
      std::sort(profile.begin(), profile.end());
      for (int r = 0; r < N; ++r) {
        std::vector<int> dist(static_cast<std::size_t>(N));
        for (int r2 = 0; r2 < N; ++r2) dist[static_cast<std::size_t>(r2)] = D.row_distance(r, r2);
        std::sort(dist.begin(), dist.end());
        if (dist != profile) {
          c.fail("row " + std::to_string(r) + " has a deviating distance profile");
          break;
        }
        c.pass();
      }
    }
    return c.result();
  });

  // ---- histogram route equals subset enumeration --------------------------
  run("distance-equals-direct", [&]() -> std::pair<bool, std::string> {
    Check c;
    c.that(!suite.empty(), "design suite is empty");
    std::size_t stride = 1, limit = suite.size();
    int k_cap = 1 << 20;
    if (n == 3) {
      stride = 5;  // every fifth design, truncated depth
      k_cap = 4;
    }
    for (std::size_t i = 0; i < limit; i += stride) {
      const SignMatrix& D = suite[i];
      const int k_max = std::min(D.factors(), k_cap);
      const Wlp dist = wlp_distance(D);
      const Wlp dir = wlp_direct(D, k_max);
      for (int k = 0; k <= k_max; ++k)
        c.that(dir.num[static_cast<std::size_t>(k)] == dist.num[static_cast<std::size_t>(k)],
               "routes disagree at k=" + std::to_string(k));
    }
    return c.result();
  });

  // ---- scalar products vs row sums ----------------------------------------
  run("scalar-moment-identity", [&]() -> std::pair<bool, std::string> {
    Check c;
    c.that(!suite.empty(), "design suite is empty");
    const std::size_t stride = n == 2 ? 1 : 7;
    const int k_max = n == 2 ? 8 : 6;
    for (std::size_t i = 0; i < suite.size(); i += stride) {
      try {
        moments(suite[i], k_max, true);
        c.pass();
      } catch (const std::exception& e) {
        c.fail(std::string("moment verification failed: ") + e.what());
      }
    }
    return c.result();
  });

  // ---- halving preserves the pattern --------------------------------------
  run("halving-preserves-wlp", [&]() -> std::pair<bool, std::string> {
    Check c;
    auto compare_pair = [&](const GeneratorMatrix& G, const SignMatrix& full) {
      const SignMatrix half = halve(full, G);
      const Wlp wf = wlp_distance(full), wh = wlp_distance(half);
      const BigInt df = BigInt(wf.runs) * wf.runs, dh = BigInt(wh.runs) * wh.runs;
      for (int k = 0; k <= wf.k_max(); ++k)
        c.that(wh.num[static_cast<std::size_t>(k)] * df == wf.num[static_cast<std::size_t>(k)] * dh,
               "halving changed A_" + std::to_string(k));
    };
    auto even_pair = [&](const std::vector<int>& idx) {
      GeneratorMatrix G{n, cols_at(omega0, idx), false};
      compare_pair(G, construct_even(G));
    };
    auto odd_pair = [&](const std::vector<int>& idx, std::size_t d) {
      GeneratorMatrix G{n, {}, true};
      const auto cols = cols_at(omega0, idx);
      for (std::size_t i = 0; i < cols.size(); ++i)
        if (i != d) G.columns.push_back(cols[i]);
      G.columns.push_back(cols[d]);
      compare_pair(G, construct_odd(G));
    };
    if (n == 2) {
      for (int k = 1; k <= omega0.size(); ++k)
        for_each_combination(omega0.size(), k, [&](const std::vector<int>& idx) { even_pair(idx); });
      for_each_combination(omega0.size(), 2, [&](const std::vector<int>& idx) {
        for (std::size_t d = 0; d < idx.size(); ++d) odd_pair(idx, d);
      });
    } else {
      for (int k = 1; k <= 2; ++k)
        for_each_combination(omega0.size(), k, [&](const std::vector<int>& idx) { even_pair(idx); });
      std::mt19937_64 rng(107u);
      for (int t = 0; t < 15; ++t) {
        std::uniform_int_distribution<int> s(2, 6);
        const auto idx = random_subset(rng, omega0.size(), s(rng));
        std::uniform_int_distribution<int> d(0, static_cast<int>(idx.size()) - 1);
        odd_pair(idx, static_cast<std::size_t>(d(rng)));
      }
    }
    return c.result();
  });

  // ---- the pipeline choice is exhaustively minimal ------------------------
  run("pipeline-matches-search", [&]() -> std::pair<bool, std::string> {
    Check c;
    int regimes = 0;
    for (long long runs : {full_space_size(n), half_space_size(n)}) {
      const long long v = reference_size(n, runs == full_space_size(n) ? RefKind::full : RefKind::last_even);
      for (int q = 1; q <= 2 * v; ++q) {
        Regime rg;
        try {
          rg = derive_regime(n, runs, q);
        } catch (const std::invalid_argument&) {
          continue;
        }
        ++regimes;
        const std::string tag = "runs=" + std::to_string(runs) + ",q=" + std::to_string(q);
        const MaDesign ma = ma_design(n, runs, q);
        const SearchReport rep = brute_force_ma(n, q, runs);
        c.that(compare_wlp(ma.wlp, rep.best) == 0, tag + ": pipeline pattern is not minimal");
        BigInt expect = binomial(v, rg.deficiency);
        if (rg.odd) expect *= rg.deficiency;
        c.that(expect == rep.candidates, tag + ": candidate count mismatch");
        if (rep.optima_count == static_cast<long long>(rep.optima.size())) {
          std::vector<Z4Vector> mine = ma.sbar.vectors;
          std::sort(mine.begin(), mine.end());
          const bool member = std::any_of(rep.optima.begin(), rep.optima.end(), [&](const ComplementSet& o) {
            std::vector<Z4Vector> theirs = o.vectors;
            std::sort(theirs.begin(), theirs.end());
            return theirs == mine && o.odd_role == ma.sbar.odd_role;
          });
          c.that(member, tag + ": pipeline complement is not among the optima");
        }
      }
    }
    return {c.ok, c.ok ? std::to_string(regimes) + " regimes, " + std::to_string(c.cases) + " checks" : c.first};
  });

  // ---- structural floor of every pipeline design --------------------------
  run("design-regularity-floor", [&]() -> std::pair<bool, std::string> {
    Check c;
    for (long long runs : {full_space_size(n), half_space_size(n)}) {
      const long long v = reference_size(n, runs == full_space_size(n) ? RefKind::full : RefKind::last_even);
      for (int q = 1; q <= 2 * v; ++q) {
        try {
          derive_regime(n, runs, q);
        } catch (const std::invalid_argument&) {
          continue;
        }
        const std::string tag = "runs=" + std::to_string(runs) + ",q=" + std::to_string(q);
        const MaDesign ma = ma_design(n, runs, q);
        const SignMatrix& D = ma.D;
        c.that(ma.wlp.num[1] == 0 && (q < 2 || ma.wlp.num[2] == 0), tag + ": short words present");
        const int pairs = std::min(q - 1, 5);
        for (int p = 0; p < pairs; ++p) {
          int cnt[4] = {0, 0, 0, 0};
          for (int r = 0; r < D.runs(); ++r)
            ++cnt[(D.entry(r, p) < 0 ? 2 : 0) + (D.entry(r, p + 1) < 0 ? 1 : 0)];
          c.that(cnt[0] == D.runs() / 4 && cnt[1] == D.runs() / 4 && cnt[2] == D.runs() / 4 &&
                     cnt[3] == D.runs() / 4,
                 tag + ": adjacent columns are not strength-2 balanced");
        }
        if (q >= 3) {
          const Frac r3 = rho_k_max(D, 3);
          c.that(r3.num * 2 <= r3.den, tag + ": triple aliasing above one half");
          c.that(projectivity_at_least(D, 3), tag + ": projectivity below 3");
        }
        const Resolution res = resolution(D);
        if (res.unbounded)
          c.pass();
        else {
          const Frac val = res.value();
          c.that(val.num * 2 >= 7 * val.den, tag + ": resolution below 7/2");
        }
      }
    }
    return c.result();
  });

  return claims;
}

}  // namespace qcdesign
