#include "pcalc/random.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace pcalc {

namespace {

GaussRational random_scalar(std::mt19937_64& rng, const RandomShape& s) {
  std::uniform_int_distribution<long> d(-s.coeff_bound, s.coeff_bound);
  for (;;) {
    GaussRational z(mpq_class(d(rng)), mpq_class(s.gaussian ? d(rng) : 0));
    if (!z.is_zero()) return z;
  }
}

}  // namespace

Polynomial random_polynomial(const TablePtr& table, std::mt19937_64& rng, const RandomShape& shape) {
  const std::size_t n = table->num_coordinates();
  Polynomial p(table);
  std::uniform_int_distribution<std::size_t> count(0, shape.max_terms);
  std::uniform_int_distribution<unsigned> degree(0, shape.max_degree);
  std::uniform_int_distribution<std::size_t> var(0, n == 0 ? 0 : n - 1);
  const std::size_t terms = count(rng);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(table->size(), 0);
    if (n > 0)
      for (unsigned d = degree(rng); d > 0; --d) ++e[var(rng)];
    p.add_term(e, random_scalar(rng, shape));
  }
  return p;
}

template <Generators G>
Graded<G> random_graded(const TablePtr& table, int degree, std::mt19937_64& rng, const RandomShape& shape) {
  const std::size_t n = table->num_coordinates();
  Graded<G> out(table, degree);
  if (degree < 0 || static_cast<std::size_t>(degree) > n) return out;
  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  std::uniform_int_distribution<std::size_t> blades(1, 3);
  for (std::size_t b = blades(rng); b > 0; --b) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> idx(all.begin(), all.begin() + degree);
    std::sort(idx.begin(), idx.end());
    out.add(make_blade(idx), random_polynomial(table, rng, shape));
  }
  return out;
}

template Graded<Generators::vectors> random_graded(const TablePtr&, int, std::mt19937_64&, const RandomShape&);
template Graded<Generators::forms> random_graded(const TablePtr&, int, std::mt19937_64&, const RandomShape&);

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("POISSON_SEED");
  if (!env || !*env) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    return used == std::string(env).size() ? v : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace pcalc
