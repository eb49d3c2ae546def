#include "pcalc/linalg.hpp"

#include <utility>

namespace pcalc {

std::size_t exact_rank(DenseMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    const GaussRational p = m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const GaussRational a = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] = p * m[r][k] - a * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

namespace {

void axpy(SparseRow& target, const GaussRational& factor, const SparseRow& source) {
  for (const auto& [col, v] : source) {
    auto [it, inserted] = target.try_emplace(col, factor * v);
    if (!inserted) {
      it->second += factor * v;
      if (it->second.is_zero()) target.erase(it);
    }
  }
}

}  // namespace

std::vector<std::vector<GaussRational>> nullspace(std::vector<SparseRow> rows, std::size_t columns) {
  // Gauss-Jordan: pivot_rows[c] holds the normalised row whose pivot is column c.
  std::map<std::size_t, SparseRow> pivot_rows;
  for (auto& row : rows) {
    for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
    // Reduce against existing pivots until the leading column is new.
    for (;;) {
      if (row.empty()) break;
      auto lead = row.begin();
      auto pv = pivot_rows.find(lead->first);
      if (pv == pivot_rows.end()) break;
      axpy(row, -lead->second, pv->second);
    }
    if (row.empty()) continue;
    const std::size_t col = row.begin()->first;
    const GaussRational inv = row.begin()->second.inverse();
    for (auto& [c, v] : row) v *= inv;
    // Keep the echelon form reduced: eliminate col from the other pivot rows.
    for (auto& [pc, prow] : pivot_rows) {
      auto hit = prow.find(col);
      if (hit != prow.end()) axpy(prow, -GaussRational(hit->second), row);
    }
    pivot_rows.emplace(col, std::move(row));
  }
  // Fully reduce: later pivots may still appear in earlier rows' tails.
  for (auto& [pc, prow] : pivot_rows) {
    for (;;) {
      bool changed = false;
      for (auto it = prow.begin(); it != prow.end(); ++it) {
        if (it->first == pc) continue;
        auto pv = pivot_rows.find(it->first);
        if (pv == pivot_rows.end() || pv->first == pc) continue;
        axpy(prow, -GaussRational(it->second), pv->second);
        changed = true;
        break;
      }
      if (!changed) break;
    }
  }

  std::vector<std::vector<GaussRational>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (pivot_rows.count(free)) continue;
    std::vector<GaussRational> v(columns);
    v[free] = 1;
    for (const auto& [pc, prow] : pivot_rows) {
      auto hit = prow.find(free);
      if (hit != prow.end()) v[pc] = -hit->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace pcalc
