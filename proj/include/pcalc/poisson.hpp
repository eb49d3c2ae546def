#pragma once

#include <optional>
#include <vector>

#include "pcalc/linalg.hpp"
#include "pcalc/superfield.hpp"

namespace pcalc {

enum class Integrability { unchecked, verified_true, verified_false };

const char* integrability_name(Integrability f);  // "unknown" / "true" / "false"

/// Bivector together with what is known about [Pi, Pi].
class PoissonStructure {
 public:
  /// Throws DomainError unless the bivector has degree 2.
  explicit PoissonStructure(Multivector bivector, Integrability flag = Integrability::unchecked);

  const Multivector& bivector() const { return bivector_; }
  const TablePtr& table() const { return bivector_.table(); }
  std::size_t dimension() const { return table()->num_coordinates(); }
  Integrability integrability() const { return flag_; }

  /// pi_ij with pi_ji = -pi_ij and pi_ii = 0 (coordinate slots).
  Polynomial entry(std::size_t i, std::size_t j) const;

 private:
  friend Multivector jacobi_check(PoissonStructure& pi);

  Multivector bivector_;
  Integrability flag_;
};

/// [Pi, Pi]; records the outcome in the flag.
Multivector jacobi_check(PoissonStructure& pi);

/// Pi#(df) = contract(df, Pi).
Multivector hamiltonian(const PoissonStructure& pi, const Polynomial& f);

/// v(g) for a vector field v.
Polynomial apply_vector_field(const Multivector& v, const Polynomial& g);

/// {f, g} = hamiltonian(f)(g).
Polynomial poisson_bracket(const PoissonStructure& pi, const Polynomial& f, const Polynomial& g);

struct DegeneracyIdeal {
  int two_k = 0;
  /// Nonzero coefficients of Pi^(k+1) in blade order.
  std::vector<Polynomial> generators;

  bool is_zero() const { return generators.empty(); }
  /// Largest monomial in the coordinates dividing every generator (all zero
  /// for the zero ideal).
  Exponents monomial_gcd() const;
};

/// Throws DomainError for odd 2k or 2k outside [0, 2*floor(n/2)).
DegeneracyIdeal degeneracy_ideal(const PoissonStructure& pi, int two_k);

/// Rank of the evaluated skew matrix (pi_ij(p)).
int rank_at(const PoissonStructure& pi, const Assignment& point, const Assignment& params = {});

/// Skew matrix of Pi evaluated at a point.
DenseMatrix evaluated_matrix(const PoissonStructure& pi, const Assignment& point, const Assignment& params = {});

/// Poisson structure on {x_i = 0} in the remaining coordinates. Throws
/// DomainError("not a Poisson hypersurface") unless x_i is invariant.
PoissonStructure restrict_hyperplane(const PoissonStructure& pi, std::size_t coordinate);

/// {x_m, f} lies in (f) for every coordinate x_m. Throws for f = 0.
bool invariant_hypersurface(const PoissonStructure& pi, const Polynomial& f);

/// Coordinates of affine chart `chart` of P^n: X_k/X_chart for k != chart,
/// named c<chart>_<k>; parameters copied from `params_from`.
TablePtr chart_table(std::size_t n, std::size_t chart, const TablePtr& params_from);

/// Pushforward from chart `from` to chart `to` of P^n (n = number of
/// coordinates), coefficients cleared to polynomials in the target chart.
/// The input coordinates are read positionally as chart `from`. Throws
/// DomainError("does not extend") on a genuine pole.
PoissonStructure chart_transition(const PoissonStructure& pi, std::size_t from, std::size_t to,
                                  TablePtr target = nullptr);

/// Chart 0 to chart j; j = 0 returns the input unchanged.
PoissonStructure chart_extend(const PoissonStructure& pi, std::size_t j);

}  // namespace pcalc
