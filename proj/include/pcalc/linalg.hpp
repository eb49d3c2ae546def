#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "pcalc/gauss_rational.hpp"

namespace pcalc {

using DenseMatrix = std::vector<std::vector<GaussRational>>;
/// Column index -> nonzero entry.
using SparseRow = std::map<std::size_t, GaussRational>;

/// Exact rank by fraction-free elimination (row_j <- p*row_j - a*row_i, no
/// divisions); pivots are taken in the first column with a nonzero entry.
std::size_t exact_rank(DenseMatrix m);

/// Basis of {v : rows * v = 0} from the reduced row echelon form, pivots in
/// the first available column. Basis vector r has a 1 in the r-th free column
/// and zeros in the other free columns, so the basis is canonical.
std::vector<std::vector<GaussRational>> nullspace(std::vector<SparseRow> rows, std::size_t columns);

}  // namespace pcalc
