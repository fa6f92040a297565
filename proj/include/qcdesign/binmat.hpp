#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcdesign {

/// Binary matrix held column-wise as bitmasks: bit i-1 of a mask is row i.
/// Columns are written in the usual product notation, e.g. "13" for the
/// column with ones in rows 1 and 3. Parsed matrices have distinct nonnull
/// columns; internal helpers (column doubling) may relax that.
struct BinaryMatrix {
  int rows = 0;
  std::vector<std::uint32_t> cols;

  int col_count() const { return static_cast<int>(cols.size()); }
};

inline std::string b_token(std::uint32_t mask) {
  std::string t;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1) t += std::to_string(i + 1);
  return t;
}

inline std::vector<std::string> b_tokens(const BinaryMatrix& B) {
  std::vector<std::string> ts;
  ts.reserve(B.cols.size());
  for (auto m : B.cols) ts.push_back(b_token(m));
  return ts;
}

/// Parses tokens like "1", "12", "134" into column masks. Row positions are
/// single digits 1..rows; duplicate positions within a token, tokens naming
/// the same column, and out-of-range positions are rejected.
inline BinaryMatrix parse_b_tokens(const std::vector<std::string>& tokens, int rows) {
  if (rows < 1 || rows > 9) throw std::invalid_argument("parse_b_tokens: rows must be in [1,9]");
  BinaryMatrix B;
  B.rows = rows;
  for (const auto& t : tokens) {
    if (t.empty()) throw std::invalid_argument("parse_b_tokens: empty token");
    std::uint32_t mask = 0;
    for (char c : t) {
      if (c < '1' || c > '9') throw std::invalid_argument("parse_b_tokens: bad character in token '" + t + "'");
      const int pos = c - '0';
      if (pos > rows)
        throw std::invalid_argument("parse_b_tokens: position " + std::to_string(pos) + " exceeds " +
                                    std::to_string(rows) + " rows");
      const std::uint32_t bit = 1u << (pos - 1);
      if (mask & bit) throw std::invalid_argument("parse_b_tokens: repeated position in token '" + t + "'");
      mask |= bit;
    }
    for (auto m : B.cols)
      if (m == mask) throw std::invalid_argument("parse_b_tokens: duplicate column '" + t + "'");
    B.cols.push_back(mask);
  }
  return B;
}

/// GF(2) rank of the columns.
inline int b_rank(const BinaryMatrix& B) {
  std::vector<std::uint32_t> basis;
  for (std::uint32_t m : B.cols) {
    for (std::uint32_t b : basis) {
      std::uint32_t reduced = m ^ b;
      if (reduced < m) m = reduced;
    }
    if (m) basis.push_back(m);
  }
  return static_cast<int>(basis.size());
}

/// Row-wise sums of the +-1 image: lambda_x = sum over columns of
/// (-1)^(x . b_j), rows enumerated with x_1 as the most significant digit.
inline std::vector<int> lambda_row_sums(const BinaryMatrix& B) {
  const int R = B.rows;
  std::vector<int> lam(static_cast<std::size_t>(1) << R, 0);
  for (std::uint32_t r = 0; r < (1u << R); ++r) {
    std::uint32_t xmask = 0;
    for (int i = 1; i <= R; ++i)
      if (r >> (R - i) & 1) xmask |= 1u << (i - 1);
    int s = 0;
    for (std::uint32_t col : B.cols) s += (std::popcount(xmask & col) & 1) ? -1 : 1;
    lam[r] = s;
  }
  return lam;
}

}  // namespace qcdesign
