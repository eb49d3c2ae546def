#pragma once

#include <string>
#include <vector>

#include "pcalc/linalg.hpp"
#include "pcalc/superfield.hpp"

namespace pcalc {

/// a_ij^kl, 0-based with i <= j and k < l: the coefficient of x_i x_j xi_k xi_l.
struct RigidityUnknown {
  std::size_t i, j, k, l;
  bool diagonal() const { return i == k && j == l; }
  std::string name() const;
};

/// One residual monomial of the xi_m' component of the Hamiltonian of x_m
/// after reduction modulo x_m'.
struct RigidityConstraint {
  std::size_t m, m_prime;
  Exponents monomial;  ///< coordinate exponents only
  SparseRow row;       ///< unknown index -> coefficient
};

struct RigiditySystem {
  std::size_t N = 0;
  TablePtr table;  ///< coordinates x0..x(N-1), one parameter per unknown
  std::vector<RigidityUnknown> unknowns;
  std::vector<RigidityConstraint> constraints;

  /// sum over all unknowns of a_ij^kl x_i x_j xi_k xi_l.
  Multivector generic_bivector() const;
  /// Every constraint vanishes on the assignment.
  bool satisfied_by(const std::vector<GaussRational>& values) const;
};

/// Requires N >= 2.
RigiditySystem diagonality_constraints(std::size_t N);

struct RigiditySolution {
  std::vector<std::vector<GaussRational>> basis;  ///< over the unknowns, canonical RREF basis
  std::vector<Multivector> bivectors;             ///< basis as bivectors on x0..x(N-1)
  bool diagonal = false;
  std::string diagnostic;  ///< first non-diagonal basis element, if any

  std::size_t dimension() const { return basis.size(); }
};

/// Exact nullspace; `diagonal` holds iff the basis is exactly the unit vectors
/// of the diagonal unknowns a_mm'^mm'.
RigiditySolution solve_rigidity(const RigiditySystem& sys);

struct MonomialSurvivors {
  unsigned k = 0;
  std::size_t examined = 0;
  std::vector<Exponents> survivors;
};

/// Degree k+1 monomials in x0..xk whose second partial in every variable vanishes.
MonomialSurvivors simplex_multiplicity_filter(unsigned k);

/// True iff d^2 f / dx_i^2 = 0 for every coordinate. f must be homogeneous of
/// degree k+1 in exactly k+1 coordinates; DomainError otherwise.
bool check_multiplicity(const Polynomial& f, unsigned k);

}  // namespace pcalc
