#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace kzb {

using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

struct Rref {
  QMat rows;                  // nonzero rows in reduced echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::vector<std::size_t> free_cols;
};

// Reduced row echelon form; columns are scanned in `order` (default 0..n-1),
// the first nonzero entry in a column becomes the pivot.
inline Rref rref(QMat a, std::size_t ncols, std::vector<std::size_t> order = {}) {
  if (order.empty())
    for (std::size_t c = 0; c < ncols; ++c) order.push_back(c);
  for (auto& r : a)
    if (r.size() != ncols) throw MismatchError("ragged matrix");
  Rref out;
  std::size_t row = 0;
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : order) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Q inv = Q(1) / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Q f = a[i][c];
      for (std::size_t j = 0; j < ncols; ++j)
        if (a[row][j] != 0) a[i][j] -= f * a[row][j];
    }
    out.pivots.push_back(c);
    is_pivot[c] = true;
    ++row;
    if (row == a.size()) break;
  }
  a.resize(row);
  out.rows = std::move(a);
  for (std::size_t c : order)
    if (!is_pivot[c]) out.free_cols.push_back(c);
  return out;
}

inline std::size_t rank(const QMat& a, std::size_t ncols) { return rref(a, ncols).rows.size(); }

inline std::size_t rank(const QMat& a) { return a.empty() ? 0 : rank(a, a.front().size()); }

// Basis of {x : a x = 0}.
inline QMat nullspace(const QMat& a, std::size_t ncols) {
  Rref r = rref(a, ncols);
  QMat basis;
  for (std::size_t f : r.free_cols) {
    QVec v(ncols, Q(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline bool in_row_span(const QMat& a, const QVec& v) {
  QMat b = a;
  b.push_back(v);
  return rank(b, v.size()) == rank(a, v.size());
}

}  // namespace kzb
