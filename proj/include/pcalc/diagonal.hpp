#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcalc/poisson.hpp"

namespace pcalc {

/// Strictly upper triangular lambda_ij (i < j) over coordinates x1..xn; the
/// entries are coordinate-free polynomials (constants or parameter
/// expressions) in table().
class DiagonalSpec {
 public:
  /// `upper` lists lambda_12, lambda_13, ..., lambda_(n-1)n row by row.
  DiagonalSpec(TablePtr table, std::vector<Polynomial> upper);

  /// Parameters l12, l13, ... (l1_2, ... once n > 9).
  static DiagonalSpec symbolic(std::size_t n);
  static DiagonalSpec numeric(std::size_t n, const std::vector<GaussRational>& upper);

  std::size_t n() const { return table_->num_coordinates(); }
  const TablePtr& table() const { return table_; }
  const std::vector<Polynomial>& upper() const { return upper_; }
  bool is_numeric() const;

  /// lambda_ij for 0-based i, j with lambda_ji = -lambda_ij, lambda_ii = 0.
  Polynomial lambda(std::size_t i, std::size_t j) const;
  /// Exact value of lambda_ij; throws unless the entry is constant.
  GaussRational value(std::size_t i, std::size_t j) const;

  /// Sub-block on the kept (increasing, 0-based) coordinates; names and
  /// parameters are preserved.
  DiagonalSpec restricted(const std::vector<std::size_t>& keep) const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  TablePtr table_;
  std::vector<Polynomial> upper_;
};

/// Parameter name of lambda_ij (1-based) in DiagonalSpec::symbolic(n).
std::string lambda_name(std::size_t n, std::size_t i, std::size_t j);

using SkewMatrix = std::vector<std::vector<Polynomial>>;

SkewMatrix lambda_matrix(const DiagonalSpec& spec);

/// Pi = sum_{i<j} lambda_ij x_i x_j xi_i xi_j, integrability verified.
PoissonStructure make_diagonal(const DiagonalSpec& spec);

/// Signed perfect-matching sum, memoised on index subsets. Throws
/// DomainError for odd size or a matrix that is not skew-symmetric.
Polynomial pfaffian(const SkewMatrix& m);

/// mu_i = sum_{j>i} lambda_ij - sum_{j<i} lambda_ji.
std::vector<Polynomial> curl_eigenvalues(const DiagonalSpec& spec);

/// Genericity of a numeric spec: the top Pfaffian (even n) or some maximal
/// sub-Pfaffian (odd n) is nonzero, every mu_i is nonzero and the mu_i are
/// pairwise distinct.
struct Genericity {
  bool pfaffian_nonzero = false;
  bool mu_nonzero = false;
  bool mu_distinct = false;
  bool ok() const { return pfaffian_nonzero && mu_nonzero && mu_distinct; }
  std::string describe() const;
};

Genericity check_genericity(const DiagonalSpec& spec);

/// Integers uniform in [-bound, bound], each divided by `denominator`.
DiagonalSpec random_spec(std::size_t n, std::mt19937_64& rng, std::int64_t bound = 1000000,
                         std::int64_t denominator = 1);
/// random_spec resampled until check_genericity passes.
DiagonalSpec random_generic_spec(std::size_t n, std::mt19937_64& rng, std::int64_t bound = 1000000,
                                 std::int64_t denominator = 1);

/// sum_i r_i dx_i / x_i + holomorphic part.
struct LogForm {
  std::vector<Polynomial> residues;
  DifferentialForm holomorphic_part;

  /// (x1...xn) * form, a polynomial 1-form.
  DifferentialForm cleared() const;
  /// Residue along the hyperplane at infinity of the projective closure.
  Polynomial residue_at_infinity() const;
};

/// Annihilating log form of an odd-dimensional diagonal structure. Residues
/// are the signed maximal sub-Pfaffians r_i = (-1)^(i-1) Pf(Lambda without
/// row/column i), normalised so the first nonzero residue is 1 when the spec
/// is numeric. Throws DomainError("non-generic spec") when they all vanish.
LogForm log_annihilator(const DiagonalSpec& spec);

}  // namespace pcalc
