#ifndef TROP_QLINALG_HPP
#define TROP_QLINALG_HPP

#include <optional>
#include <vector>

#include "trop/common.hpp"

namespace trop {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row-major

inline QMat q_identity(size_t n) {
  QMat m(n, QVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline QVec q_matvec(const QMat& m, const QVec& v) {
  QVec out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline QMat q_matmul(const QMat& a, const QMat& b) {
  size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  QMat out(r, QVec(c, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (size_t j = 0; j < c; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline QMat q_transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat out(m[0].size(), QVec(m.size(), 0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

// Row echelon form in place; returns rank.
inline size_t q_echelon(QMat& m) {
  size_t rank = 0;
  size_t cols = m.empty() ? 0 : m[0].size();
  for (size_t col = 0; col < cols && rank < m.size(); ++col) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    Rat inv = 1 / m[rank][col];
    for (size_t j = col; j < cols; ++j) m[rank][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  m.resize(rank);
  return rank;
}

inline size_t q_rank(QMat m) { return q_echelon(m); }

// Coefficients c with target = sum c_i rows_i, if the target lies in the span.
inline std::optional<QVec> q_in_span(const QVec& target, const QMat& rows) {
  size_t n = target.size(), k = rows.size();
  // Solve rows^T c = target by eliminating the augmented system.
  QMat aug(n, QVec(k + 1, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = rows[j][i];
    aug[i][k] = target[i];
  }
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < k && rank < n; ++col) {
    size_t piv = rank;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(aug[rank], aug[piv]);
    Rat inv = 1 / aug[rank][col];
    for (size_t j = col; j <= k; ++j) aug[rank][j] *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == rank || aug[i][col] == 0) continue;
      Rat f = aug[i][col];
      for (size_t j = col; j <= k; ++j) aug[i][j] -= f * aug[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t i = rank; i < n; ++i)
    if (aug[i][k] != 0) return std::nullopt;
  QVec c(k, 0);
  for (size_t i = 0; i < rank; ++i) c[pivot_col[i]] = aug[i][k];
  return c;
}

// Basis of { v : m v = 0 }.
inline QMat q_nullspace(QMat m, size_t n) {
  for (auto& row : m) row.resize(n, Rat(0));
  size_t rank = 0;
  std::vector<long> pivot_of_col(n, -1);
  for (size_t col = 0; col < n && rank < m.size(); ++col) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    Rat inv = 1 / m[rank][col];
    for (size_t j = 0; j < n; ++j) m[rank][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = 0; j < n; ++j) m[i][j] -= f * m[rank][j];
    }
    pivot_of_col[col] = static_cast<long>(rank);
    ++rank;
  }
  QMat basis;
  for (size_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    QVec v(n, 0);
    v[col] = 1;
    for (size_t c2 = 0; c2 < n; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = -m[pivot_of_col[c2]][col];
    basis.push_back(v);
  }
  return basis;
}

// Inverse of a square rational matrix, if it exists.
inline std::optional<QMat> q_inverse(QMat m) {
  size_t n = m.size();
  QMat inv = q_identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(inv[col], inv[piv]);
    Rat d = 1 / m[col][col];
    for (size_t j = 0; j < n; ++j) {
      m[col][j] *= d;
      inv[col][j] *= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace trop

#endif
