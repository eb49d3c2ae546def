#pragma once

#include <cstdint>
#include <random>

#include "pcalc/superfield.hpp"

namespace pcalc {

struct RandomShape {
  std::size_t max_terms = 3;
  unsigned max_degree = 2;  ///< total coordinate degree of each monomial
  long coeff_bound = 3;     ///< real and imaginary parts drawn from [-bound, bound]
  bool gaussian = true;     ///< allow imaginary parts
};

/// Random polynomial in the coordinates of the table (parameters unused).
Polynomial random_polynomial(const TablePtr& table, std::mt19937_64& rng, const RandomShape& shape = {});

template <Generators G>
Graded<G> random_graded(const TablePtr& table, int degree, std::mt19937_64& rng, const RandomShape& shape = {});

inline Multivector random_multivector(const TablePtr& table, int degree, std::mt19937_64& rng,
                                      const RandomShape& shape = {}) {
  return random_graded<Generators::vectors>(table, degree, rng, shape);
}

/// POISSON_SEED if set and numeric, otherwise `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace pcalc
