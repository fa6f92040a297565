// Acceptance gate: one line per criterion, nonzero exit when any fails.
//
// Each criterion re-derives its expectations from scratch where possible and
// compares against frozen exact values; wall-clock budgets are asserted where
// the contract pins them.
#include <qcdesign/qcdesign.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qcdesign;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& msg) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += msg;
  }
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + " ") {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

BinaryMatrix bmat(const std::string& tokens, int rows) { return parse_b_tokens(split(tokens), rows); }

std::string joined_tokens(const BinaryMatrix& B) {
  std::string s;
  for (const auto& t : b_tokens(B)) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

// All factor counts a dimension supports at the given run size.
std::vector<int> regime_qs(int n, long long runs) {
  const RefKind kind = runs == full_space_size(n) ? RefKind::full : RefKind::last_even;
  const long long v = reference_size(n, kind);
  const int max_def = 1 << (n - 1);
  std::vector<int> qs;
  for (long long q = std::max(2LL, 2 * (v - max_def)); q <= 2 * v; ++q) {
    if (q % 2 == 1 && q == 2 * v - 1 && v - (q - 1) / 2 < 1) continue;
    const long long s = (q % 2 == 1) ? (q - 1) / 2 : q / 2;
    const long long def = v - s;
    if (s < 1 || def < 0 || def > max_def) continue;
    if (q % 2 == 1 && def < 1) continue;
    qs.push_back(static_cast<int>(q));
  }
  return qs;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Outcome out;
  const auto t0 = Clock::now();
  const MaDesign ma = ma_design(4, 128, 103);
  if (ma.wlp.term_str(3) != "1360") out.fail("A3 = " + ma.wlp.term_str(3) + ", expected 1360");
  if (ma.wlp.term_str(4) != "35707") out.fail("A4 = " + ma.wlp.term_str(4) + ", expected 35707");
  if (!ma.selection || joined_tokens(ma.selection->b) != "1 2 12 3")
    out.fail("selected columns are not [1 2 12 3]");

  const auto td = Clock::now();
  const Wlp dist = wlp_distance(ma.D);
  const double dist_s = seconds_since(td);
  if (dist.num != ma.wlp.num) out.fail("distance route disagrees with the pipeline pattern");
  if (dist_s > 1.0) out.fail("distance route took " + std::to_string(dist_s) + " s");

  const Wlp direct = wlp_direct(ma.D, 4);
  for (int k = 0; k <= 4; ++k)
    if (direct.num[static_cast<std::size_t>(k)] != ma.wlp.num[static_cast<std::size_t>(k)]) {
      out.fail("direct route disagrees at k=" + std::to_string(k));
      break;
    }

  const double total = seconds_since(t0);
  if (total > 120.0) out.fail("criterion took " + std::to_string(total) + " s, budget 120 s");
  std::ostringstream os;
  os << "A3=" << ma.wlp.term_str(3) << " A4=" << ma.wlp.term_str(4) << ", direct==distance, "
     << "distance " << dist_s << " s";
  if (out.detail.empty()) out.detail = os.str();
  return out;
}

Outcome criterion_2() {
  Outcome out;
  const auto t0 = Clock::now();
  const MaDesign ma = ma_design(4, 256, 228);
  if (ma.wlp.term_str(3) != "7616") out.fail("A3 = " + ma.wlp.term_str(3) + ", expected 7616");
  if (ma.wlp.term_str(4) != "434057") out.fail("A4 = " + ma.wlp.term_str(4) + ", expected 434057");

  const auto td = Clock::now();
  const Wlp dist = wlp_distance(ma.D);
  const double dist_s = seconds_since(td);
  if (dist.num != ma.wlp.num) out.fail("distance route disagrees with the pipeline pattern");
  if (dist_s > 1.0) out.fail("distance route took " + std::to_string(dist_s) + " s, budget 1 s");

  const auto tdir = Clock::now();
  const Wlp direct = wlp_direct(ma.D, 4);
  const double direct_s = seconds_since(tdir);
  for (int k = 0; k <= 4; ++k)
    if (direct.num[static_cast<std::size_t>(k)] != ma.wlp.num[static_cast<std::size_t>(k)]) {
      out.fail("direct route disagrees at k=" + std::to_string(k));
      break;
    }
  if (direct_s > 900.0) out.fail("direct route took " + std::to_string(direct_s) + " s, budget 900 s");

  const double total = seconds_since(t0);
  std::ostringstream os;
  os << "A3=" << ma.wlp.term_str(3) << " A4=" << ma.wlp.term_str(4) << ", direct " << direct_s
     << " s, distance " << dist_s << " s, total " << total << " s";
  if (out.detail.empty()) out.detail = os.str();
  return out;
}

Outcome criterion_3() {
  Outcome out;
  // Five frozen nine-column subset-count tails.
  const std::vector<std::pair<std::string, std::vector<long long>>> fixtures = {
      {"1 2 12 3 13 4 14 234 1234", {4, 14, 8, 0, 4, 1, 0}},
      {"1 2 12 3 13 4 24 34 1234", {6, 9, 9, 6, 0, 0, 1}},
      {"1 2 12 3 13 23 4 14 234", {6, 10, 8, 4, 2, 1, 0}},
      {"1 2 12 3 13 23 4 14 24", {7, 9, 6, 6, 3, 0, 0}},
      {"1 2 12 3 13 23 123 4 14", {8, 10, 4, 4, 4, 1, 0}}};
  for (const auto& [tokens, tail] : fixtures) {
    const RegularWlp w = regular_wlp(bmat(tokens, 4));
    std::vector<long long> got(w.a.begin() + 3, w.a.end());
    if (got != tail) out.fail("subset counts of [" + tokens + "] are off");
  }

  // Both parities pick the second fixture at ten unselected columns.
  const std::string winner = "1 2 12 3 13 4 24 34 1234";
  const Selection even = select_b(5, 10, FactorParity::even);
  if (joined_tokens(even.b) != winner) out.fail("even rule picked " + joined_tokens(even.b));
  if (even.key.empty() || even.key.front() != 15)
    out.fail("even key head is not 15");
  const Selection odd = select_b(5, 10, FactorParity::odd);
  if (joined_tokens(odd.b) != winner) out.fail("odd rule picked " + joined_tokens(odd.b));
  const RegularWlp wodd = regular_wlp(odd.b);
  if (wodd.a[3] + 2 * wodd.a[4] != 24) out.fail("odd criterion A3 + 2 A4 is not 24");

  // Re-derive the even winner independently: no candidate beats the reported
  // key, and the first candidate attaining it is the reported one.
  {
    long long scanned = 0;
    bool located = false;
    for (const auto& cand : enumerate_b(5, 9)) {
      ++scanned;
      const auto k = pair_sum_key(cand);
      if (k < even.key) {
        out.fail("a candidate beats the reported even key");
        break;
      }
      if (!located && k == even.key) {
        located = true;
        if (joined_tokens(cand) != winner) out.fail("first key holder is " + joined_tokens(cand));
      }
    }
    if (!located) out.fail("reported even key never attained");
    if (scanned != even.candidates) out.fail("candidate count is " + std::to_string(scanned));
  }

  // Four unselected columns in dimension four: a genuine tie, broken toward
  // the first choice by both rules, and immaterial to the resulting pattern.
  const BinaryMatrix tie1 = bmat("1 2 12 3", 3), tie2 = bmat("1 2 3 123", 3);
  const auto k1 = pair_sum_key(tie1), k2 = pair_sum_key(tie2);
  if (k1 != k2 || k1.front() != 1) out.fail("tied four-column keys are not both (1, ...)");
  if (joined_tokens(select_b(4, 5, FactorParity::even).b) != "1 2 12 3")
    out.fail("even rule does not keep the first tied choice");
  if (joined_tokens(select_b(4, 5, FactorParity::odd).b) != "1 2 12 3")
    out.fail("odd rule does not select [1 2 12 3]");
  {
    const ReferenceSet ref = enumerate_reference(4, RefKind::full);
    Wlp w[2];
    int i = 0;
    for (const BinaryMatrix* B : {&tie1, &tie2}) {
      const ComplementSet sbar = sbar_from_b(*B, RefKind::full);
      GeneratorMatrix G{4, complement(sbar.vectors, ref).vectors, false};
      w[i++] = wlp_distance(construct_even(G));
    }
    if (w[0].num != w[1].num) out.fail("tied choices give different design patterns");
  }
  if (out.detail.empty())
    out.detail = "five fixtures exact; both parities pick the frozen winner (keys 15 / 24); tie checked";
  return out;
}

Outcome criterion_4() {
  Outcome out;
  const auto t0 = Clock::now();
  int regimes = 0;
  for (int n : {2, 3})
    for (long long runs : {full_space_size(n), half_space_size(n)})
      for (int q : regime_qs(n, runs)) {
        const MaDesign ma = ma_design(n, runs, q);
        const SearchReport rep = brute_force_ma(n, q, runs);
        ++regimes;
        if (compare_wlp(ma.wlp, rep.best) != 0) {
          out.fail("pipeline pattern is not search-minimal at n=" + std::to_string(n) + " runs=" +
                   std::to_string(runs) + " q=" + std::to_string(q));
          continue;
        }
        const Regime rg = ma.regime;
        const BigInt expect =
            binomial(static_cast<int>(rg.v), rg.deficiency) * (rg.odd ? BigInt(std::max(1, rg.deficiency)) : BigInt(1));
        if (BigInt(rep.candidates) != expect)
          out.fail("search size mismatch at n=" + std::to_string(n) + " q=" + std::to_string(q));
      }
  const double total = seconds_since(t0);
  if (total > 600.0) out.fail("took " + std::to_string(total) + " s, budget 600 s");
  if (out.detail.empty()) {
    std::ostringstream os;
    os << regimes << " regimes exhaustively searched in " << total << " s";
    out.detail = os.str();
  }
  return out;
}

Outcome criterion_5() {
  Outcome out;
  long long even_hits = 0, strict = 0, sets = 0;
  for (int n : {2, 3})
    for (RefKind kind : {RefKind::full, RefKind::last_even}) {
      const ReferenceSet ref = enumerate_reference(n, kind);
      const int max_size = 1 << (n - 1);
      for (int size = 1; size <= max_size; ++size) {
        bool strict_here = false, noneven_here = false;
        detail::for_each_combination(ref.size(), size, [&](const std::vector<int>& idx) {
          ++sets;
          const ComplementSet sbar = detail::make_sbar(ref, idx);
          const bool even = is_even_set(sbar);
          const BigInt f3 = f3_statistic(sbar);
          const BigInt bound = f3_upper_bound(n, size, false);
          if (f3 > bound) out.fail("bound violated (even form)");
          if (even != (f3 == bound)) out.fail("even-set equality characterization fails");
          if (even) ++even_hits;
          if (!even) {
            noneven_here = true;
            if (f3 < bound) {
              ++strict;
              strict_here = true;
            }
          }
          // Odd form: every choice of designated member obeys the same law.
          for (int role = 0; role < size; ++role) {
            ComplementSet odd = sbar;
            odd.odd_role = odd.vectors[static_cast<std::size_t>(role)];
            const BigInt f3o = f3_statistic(odd);
            const BigInt bo = f3_upper_bound(n, size, true);
            if (f3o > bo) out.fail("bound violated (odd form)");
            if (even != (f3o == bo)) out.fail("odd equality characterization fails");
          }
        });
        if (noneven_here && !strict_here) out.fail("no strict case at size " + std::to_string(size));
      }
    }
  if (even_hits < 4) out.fail("too few even sets visited");
  if (strict < 4) out.fail("too few strict cases visited");
  if (out.detail.empty()) {
    std::ostringstream os;
    os << sets << " complements checked, " << even_hits << " even (equality), " << strict
       << " strict";
    out.detail = os.str();
  }
  return out;
}

Outcome criterion_6() {
  Outcome out;
  std::mt19937_64 rng(20260822);

  // (a) split identity, exhaustively in dimension two.
  long long splits = 0;
  for (RefKind kind : {RefKind::full, RefKind::last_even}) {
    const ReferenceSet ref = enumerate_reference(2, kind);
    for (int size = 0; size < ref.size(); ++size)
      detail::for_each_combination(ref.size(), size, [&](const std::vector<int>& idx) {
        const ComplementSet sbar = detail::make_sbar(ref, idx);
        const auto selected = complement(sbar.vectors, ref);
        ++splits;
        if (!complement_identity_holds(selected.vectors, sbar)) out.fail("identity fails (even split)");
        for (int role = 0; role < size; ++role) {
          ComplementSet odd = sbar;
          odd.odd_role = odd.vectors[static_cast<std::size_t>(role)];
          ++splits;
          if (!complement_identity_holds(selected.vectors, odd)) out.fail("identity fails (odd split)");
        }
      });
  }
  // ... and on 1000 random splits in each of dimensions three and four.
  for (int n : {3, 4}) {
    for (int t = 0; t < 1000; ++t) {
      const RefKind kind = (rng() & 1) ? RefKind::full : RefKind::last_even;
      const ReferenceSet ref = enumerate_reference(n, kind);
      const int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(ref.size() - 1));
      const auto idx = detail::random_subset(rng, ref.size(), size);
      ComplementSet sbar = detail::make_sbar(ref, idx);
      if (rng() & 1) sbar.odd_role = sbar.vectors[rng() % sbar.vectors.size()];
      const auto selected = complement(sbar.vectors, ref);
      ++splits;
      if (!complement_identity_holds(selected.vectors, sbar)) {
        out.fail("identity fails at n=" + std::to_string(n));
        break;
      }
    }
  }

  // (b) every dimension-two design is row-shift invariant: each row's distance
  // profile equals the weight profile.
  int designs = 0;
  auto check_profiles = [&](const SignMatrix& D) {
    ++designs;
    std::vector<int> weights(static_cast<std::size_t>(D.runs()));
    for (int r = 0; r < D.runs(); ++r) weights[static_cast<std::size_t>(r)] = D.row_weight(r);
    std::vector<int> profile = weights;
    std::sort(profile.begin(), profile.end());
    for (int r = 0; r < D.runs(); ++r) {
      std::vector<int> dist(static_cast<std::size_t>(D.runs()));
      for (int r2 = 0; r2 < D.runs(); ++r2) dist[static_cast<std::size_t>(r2)] = D.row_distance(r, r2);
      std::sort(dist.begin(), dist.end());
      if (dist != profile) {
        out.fail("a row breaks the shared distance profile");
        return;
      }
    }
  };
  std::vector<SignMatrix> two_level_full;  // full-run dimension-two designs
  {
    const ReferenceSet ref = enumerate_reference(2, RefKind::full);
    for (int size = 0; size < ref.size(); ++size)
      detail::for_each_combination(ref.size(), size, [&](const std::vector<int>& idx) {
        const ComplementSet sbar = detail::make_sbar(ref, idx);
        const auto selected = complement(sbar.vectors, ref);
        GeneratorMatrix G{2, selected.vectors, false};
        two_level_full.push_back(construct_even(G));
        check_profiles(two_level_full.back());
        for (int role = 0; role < size; ++role) {
          GeneratorMatrix Go{2, selected.vectors, true};
          Go.columns.push_back(sbar.vectors[static_cast<std::size_t>(role)]);
          two_level_full.push_back(construct_odd(Go));
          check_profiles(two_level_full.back());
        }
      });
  }

  // (c) the scalar-product moments equal runs times the row-sum moments
  // through k = 8 on every one of those designs.
  for (const SignMatrix& D : two_level_full) {
    try {
      moments(D, 8, true);
    } catch (const std::exception& e) {
      out.fail(std::string("moment identity: ") + e.what());
      break;
    }
  }

  // (d) foldover / doubling word identities: every column choice in
  // dimensions up to four, plus 100 random larger ones.
  int folds = 0;
  for (int n : {2, 3, 4}) {
    const int pool = (1 << (n - 1)) - 1;
    for (int m = 1; m <= pool; ++m)
      for (const auto& B : enumerate_b(n, m)) {
        ++folds;
        const FoldReport rep = fold_wlp_identities(B);
        if (!rep.pass) out.fail("fold identities fail for [" + joined_tokens(B) + "]: " + rep.detail);
      }
  }
  for (int t = 0; t < 100; ++t) {
    const int m = 1 + static_cast<int>(rng() % 15);
    std::vector<std::uint32_t> pool;
    for (std::uint32_t c = 1; c <= 15; ++c) pool.push_back(c);
    std::shuffle(pool.begin(), pool.end(), rng);
    BinaryMatrix B{4, std::vector<std::uint32_t>(pool.begin(), pool.begin() + m)};
    std::sort(B.cols.begin(), B.cols.end());
    ++folds;
    const FoldReport rep = fold_wlp_identities(B);
    if (!rep.pass) {
      out.fail("fold identities fail for random [" + joined_tokens(B) + "]: " + rep.detail);
      break;
    }
  }

  // (e) halving preserves the pattern, exhaustively in dimension two and on
  // random splits in dimension three.
  auto check_halving = [&](int n, const std::vector<Z4Vector>& selected, std::optional<Z4Vector> role) {
    GeneratorMatrix G{n, selected, role.has_value()};
    if (role) G.columns.push_back(*role);
    const SignMatrix full = role ? construct_odd(G) : construct_even(G);
    const SignMatrix half = halve(full, G);
    const Wlp wf = wlp_distance(full), wh = wlp_distance(half);
    const BigInt f2 = BigInt(full.runs()) * full.runs(), h2 = BigInt(half.runs()) * half.runs();
    for (std::size_t k = 0; k < wf.num.size(); ++k)
      if (wf.num[k] * h2 != wh.num[k] * f2) {
        out.fail("halving changes A_" + std::to_string(k));
        return;
      }
  };
  {
    const ReferenceSet ref0 = enumerate_reference(2, RefKind::last_even);
    for (int size = 0; size < ref0.size(); ++size)
      detail::for_each_combination(ref0.size(), size, [&](const std::vector<int>& idx) {
        const ComplementSet sbar = detail::make_sbar(ref0, idx);
        const auto selected = complement(sbar.vectors, ref0);
        check_halving(2, selected.vectors, std::nullopt);
        for (const auto& g : sbar.vectors) check_halving(2, selected.vectors, g);
      });
    const ReferenceSet ref3 = enumerate_reference(3, RefKind::last_even);
    for (int t = 0; t < 15; ++t) {
      const int size = 1 + static_cast<int>(rng() % 4);
      const auto idx = detail::random_subset(rng, ref3.size(), size);
      const ComplementSet sbar = detail::make_sbar(ref3, idx);
      const auto selected = complement(sbar.vectors, ref3);
      check_halving(3, selected.vectors, std::nullopt);
      check_halving(3, selected.vectors, sbar.vectors.front());
    }
  }

  if (out.detail.empty()) {
    std::ostringstream os;
    os << splits << " splits, " << designs << " invariance checks, " << folds << " fold checks";
    out.detail = os.str();
  }
  return out;
}

Outcome criterion_7() {
  Outcome out;
  const auto t0 = Clock::now();
  int designs = 0;
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 4})
    for (long long runs : {full_space_size(n), half_space_size(n)})
      for (int q : regime_qs(n, runs)) {
        const MaDesign ma = ma_design(n, runs, q);
        ++designs;
        const std::string tag = " at n=" + std::to_string(n) + " runs=" + std::to_string(runs) +
                                " q=" + std::to_string(q);
        if (ma.wlp.num[1] != 0 || ma.wlp.num[2] != 0) out.fail("A1/A2 nonzero" + tag);
        // Column-pair balance: all four sign combinations equally often.
        for (int t = 0; t < 6 && q >= 2; ++t) {
          const int c1 = static_cast<int>(rng() % static_cast<unsigned>(q));
          int c2 = static_cast<int>(rng() % static_cast<unsigned>(q));
          if (c2 == c1) c2 = (c2 + 1) % q;
          int cnt[2][2] = {{0, 0}, {0, 0}};
          for (int r = 0; r < ma.D.runs(); ++r)
            ++cnt[ma.D.entry(r, c1) == 1][ma.D.entry(r, c2) == 1];
          if (cnt[0][0] != cnt[0][1] || cnt[0][0] != cnt[1][0] || cnt[0][0] != cnt[1][1]) {
            out.fail("a column pair is unbalanced" + tag);
            break;
          }
        }
        if (q >= 3) {
          const Frac r3 = rho_k_max(ma.D, 3);
          if (!(r3 == Frac(0, 1) || r3 == Frac(1, 2)) && r3.value() > 0.5)
            out.fail("rho_3,max = " + r3.str() + tag);
          if (!projectivity_at_least(ma.D, 3)) out.fail("projectivity below three" + tag);
        }
        const Resolution res = resolution(ma.D);
        if (!res.unbounded) {
          const Frac val = res.value();
          if (2 * val.num < 7 * val.den) out.fail("resolution " + res.str() + tag);
        }
      }
  const double total = seconds_since(t0);
  if (out.detail.empty()) {
    std::ostringstream os;
    os << designs << " pipeline designs enumerated in " << total << " s";
    out.detail = os.str();
  }
  return out;
}

Outcome criterion_8() {
  Outcome out;
  const std::vector<std::vector<std::string>> frozen = {
      {"1", "1 2", "1 2 12"},
      {"1", "1 2", "1 2 3", "1 2 12 3", "1 2 12 3 13", "1 2 12 3 13 23", "1 2 12 3 13 23 123"},
      {"1", "1 2", "1 2 3", "1 2 3 4", "1 2 3 4 1234", "1 2 12 3 4 34", "1 2 12 3 13 4 24",
       "1 2 12 3 13 4 24 34", "1 2 12 3 13 4 24 34 1234", "1 2 12 3 13 23 4 14 24 34",
       "1 2 12 3 13 23 123 4 14 24 34", "1 2 12 3 13 23 123 4 14 24 124 34",
       "1 2 12 3 13 23 123 4 14 24 124 34 134", "1 2 12 3 13 23 123 4 14 24 124 34 134 234",
       "1 2 12 3 13 23 123 4 14 24 124 34 134 234 1234"}};
  int rows_checked = 0;
  for (int n : {3, 4, 5}) {
    const auto rows = selection_catalog(n);
    const auto& expect = frozen[static_cast<std::size_t>(n - 3)];
    if (rows.size() != expect.size()) {
      out.fail("catalog for dimension " + std::to_string(n) + " has " + std::to_string(rows.size()) +
               " rows");
      continue;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ++rows_checked;
      const auto want_key = pair_sum_key(bmat(expect[i], n - 1));
      if (rows[i].selection.key != want_key)
        out.fail("key mismatch at n=" + std::to_string(n) + " deficiency " +
                 std::to_string(rows[i].deficiency));
      if (joined_tokens(rows[i].selection.b) != expect[i])
        out.fail("column mismatch at n=" + std::to_string(n) + " deficiency " +
                 std::to_string(rows[i].deficiency));
    }
  }
  if (out.detail.empty())
    out.detail = std::to_string(rows_checked) + " catalog rows match the frozen columns and keys";
  return out;
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Row> rows = {
      {1, "128-run 103-factor fixture", criterion_1},
      {2, "256-run 228-factor fixture", criterion_2},
      {3, "regular fixtures and selection keys", criterion_3},
      {4, "pipeline equals exhaustive search", criterion_4},
      {5, "cubic statistic bound", criterion_5},
      {6, "identity suite", criterion_6},
      {7, "structural floor", criterion_7},
      {8, "catalog reproduction", criterion_8},
  };
  int failures = 0;
  for (const auto& row : rows) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = row.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("threw: ") + e.what();
    }
    const double s = seconds_since(t0);
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", row.id, row.title,
                out.detail.c_str(), s);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("acceptance: %d/8 criteria pass\n", 8 - failures);
  return failures;
}
