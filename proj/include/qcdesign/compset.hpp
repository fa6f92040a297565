#pragma once

#include "qcdesign/exact.hpp"
#include "qcdesign/gray.hpp"
#include "qcdesign/z4.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace qcdesign {

/// i^z + i^(-z) for a Z4 digit: 2, 0, -2, 0. The per-column contribution of a
/// generator column to a row sum of the even-count Gray image.
inline int pair_sum_sign(int z) {
  static constexpr int tab[4] = {2, 0, -2, 0};
  return tab[((z % 4) + 4) % 4];
}

/// Row sums the unselected columns would contribute, indexed by the full row
/// space in canonical order. With odd_role set the designated member
/// contributes the single sign gray_sign(u . g*) instead of its pair.
inline std::vector<int> complement_row_sums(const ComplementSet& sbar) {
  const int n = sbar.n;
  const long long N = full_space_size(n);
  std::vector<int> sig(static_cast<std::size_t>(N), 0);
  for (long long r = 0; r < N; ++r) {
    const Z4Vector u = row_vector_at(n, r, false);
    int s = 0;
    for (const auto& g : sbar.vectors) {
      const int z = dot_mod4(u, g);
      if (sbar.odd_role && g == *sbar.odd_role)
        s += gray_sign(z);
      else
        s += pair_sum_sign(z);
    }
    sig[static_cast<std::size_t>(r)] = s;
  }
  return sig;
}

/// Row sums of the design generated by S (plus the appended column when sbar
/// carries an odd_role), computed straight from the construction.
inline std::vector<int> design_row_sums_from_columns(int n, const std::vector<Z4Vector>& S,
                                                     const std::optional<Z4Vector>& appended) {
  const long long N = full_space_size(n);
  std::vector<int> sig(static_cast<std::size_t>(N), 0);
  for (long long r = 0; r < N; ++r) {
    const Z4Vector u = row_vector_at(n, r, false);
    int s = 0;
    for (const auto& g : S) s += pair_sum_sign(dot_mod4(u, g));
    if (appended) s += gray_sign(-dot_mod4(u, *appended));
    sig[static_cast<std::size_t>(r)] = s;
  }
  return sig;
}

/// The design/complement row-sum identity: for S and S-bar partitioning the
/// reference pool, sigma_u = -(2^n * [u all even] + sigma-bar_u) away from the
/// exempt indices. Exempt: the null row (full reference), or the rows whose
/// first n-1 digits are 0 and whose last digit is 0 or 2 (last-even
/// reference), where sigma_u equals the factor count directly.
inline bool complement_identity_holds(const std::vector<Z4Vector>& S, const ComplementSet& sbar) {
  const int n = sbar.n;
  const bool odd = sbar.odd_role.has_value();
  const int factor_count = 2 * static_cast<int>(S.size()) + (odd ? 1 : 0);
  const auto sigma = design_row_sums_from_columns(n, S, sbar.odd_role);
  const auto sigma_bar = complement_row_sums(sbar);
  const int bar_at_exempt = 2 * sbar.size() - (odd ? 1 : 0);
  const long long N = full_space_size(n);
  for (long long r = 0; r < N; ++r) {
    const Z4Vector u = row_vector_at(n, r, false);
    bool exempt = false;
    if (sbar.reference_kind == RefKind::full) {
      exempt = u.is_zero();
    } else {
      exempt = true;
      for (int i = 0; i < n - 1; ++i)
        if (u[i] != 0) {
          exempt = false;
          break;
        }
      if (exempt && u[n - 1] != 0 && u[n - 1] != 2) exempt = false;
    }
    const int sig = sigma[static_cast<std::size_t>(r)];
    const int bar = sigma_bar[static_cast<std::size_t>(r)];
    if (exempt) {
      if (sig != factor_count) return false;
      if (bar != bar_at_exempt) return false;
    } else {
      const int delta = u.all_even() ? 1 : 0;
      if (sig != -((1 << n) * delta + bar)) return false;
    }
  }
  return true;
}

/// Moments of the shifted complement row sums: sum over u of
/// (2^n * [u all even] + sigma-bar_u)^k, k = 0..k_max.
inline std::vector<BigInt> complement_moments(const ComplementSet& sbar, int k_max) {
  if (k_max < 0) throw std::invalid_argument("complement_moments: k_max must be nonnegative");
  const int n = sbar.n;
  const auto sigma_bar = complement_row_sums(sbar);
  std::vector<BigInt> m(static_cast<std::size_t>(k_max) + 1, BigInt(0));
  const long long N = full_space_size(n);
  for (long long r = 0; r < N; ++r) {
    const Z4Vector u = row_vector_at(n, r, false);
    const BigInt base = ((u.all_even() ? 1 : 0) << n) + sigma_bar[static_cast<std::size_t>(r)];
    BigInt p = 1;
    for (int k = 0; k <= k_max; ++k) {
      m[static_cast<std::size_t>(k)] += p;
      p *= base;
    }
  }
  return m;
}

/// Cubic complement statistic: 3 * 2^n * sum over all-even u of sigma-bar^2
/// plus sum over all u of sigma-bar^3. Strictly maximized, at the bound below,
/// exactly by even complements; drives the leading aberration term.
inline BigInt f3_statistic(const ComplementSet& sbar) {
  const int n = sbar.n;
  const auto sigma_bar = complement_row_sums(sbar);
  BigInt quad = 0, cube = 0;
  const long long N = full_space_size(n);
  for (long long r = 0; r < N; ++r) {
    const Z4Vector u = row_vector_at(n, r, false);
    const BigInt s = sigma_bar[static_cast<std::size_t>(r)];
    if (u.all_even()) quad += s * s;
    cube += s * s * s;
  }
  return 3 * (BigInt(1) << n) * quad + cube;
}

/// Largest possible f3_statistic for a complement of the given size.
inline BigInt f3_upper_bound(int n, int deficiency, bool odd) {
  if (deficiency < 0) throw std::invalid_argument("f3_upper_bound: negative deficiency");
  if (odd && deficiency < 1) throw std::invalid_argument("f3_upper_bound: odd form needs deficiency >= 1");
  if (odd) return 3 * (BigInt(1) << (2 * n)) * (2 * deficiency - 1) * (2 * deficiency - 1);
  return 3 * (BigInt(1) << (2 * n + 2)) * BigInt(deficiency) * deficiency;
}

/// Null-vector indicator after mod-4 reduction.
inline int alpha(const Z4Vector& g) { return g.is_zero() ? 1 : 0; }

inline int alpha_from_ints(const std::vector<long long>& xs) { return alpha(Z4Vector::from_ints(xs)); }

/// Number of sign choices with g1 + g2 = +-g3 = 0 patterns: alpha over the
/// four combinations g1 +- g2 +- g3. Always 0 or 1 when the three vectors
/// come from a common admissible complement.
inline int beta(const Z4Vector& g1, const Z4Vector& g2, const Z4Vector& g3) {
  return alpha(g1 + g2 + g3) + alpha(g1 + g2 - g3) + alpha(g1 - g2 + g3) + alpha(g1 - g2 - g3);
}

/// Partition of a complement by the all-even-pairwise-sum relation. Two
/// members sum to an all-even vector exactly when their digit parity patterns
/// agree, so classes group by parity pattern; the set is even iff one class.
inline std::vector<std::vector<int>> even_classes(const ComplementSet& sbar) {
  std::vector<std::vector<int>> classes;
  std::map<std::uint32_t, std::size_t> by_pattern;
  for (int i = 0; i < sbar.size(); ++i) {
    const std::uint32_t p = sbar.vectors[static_cast<std::size_t>(i)].parity_pattern();
    auto it = by_pattern.find(p);
    if (it == by_pattern.end()) {
      by_pattern.emplace(p, classes.size());
      classes.push_back({i});
    } else {
      classes[it->second].push_back(i);
    }
  }
  return classes;
}

}  // namespace qcdesign
