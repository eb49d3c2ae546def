#include "pcalc/poisson.hpp"

#include <algorithm>
#include <string>

#include "pcalc/error.hpp"

namespace pcalc {

const char* integrability_name(Integrability f) {
  switch (f) {
    case Integrability::verified_true: return "true";
    case Integrability::verified_false: return "false";
    default: return "unknown";
  }
}

PoissonStructure::PoissonStructure(Multivector bivector, Integrability flag)
    : bivector_(std::move(bivector)), flag_(flag) {
  if (bivector_.degree() != 2) throw DomainError("a Poisson structure needs a bivector (degree 2)");
}

Polynomial PoissonStructure::entry(std::size_t i, std::size_t j) const {
  if (i == j) return Polynomial(table());
  if (i < j) return bivector_.coefficient(make_blade({i, j}));
  return -bivector_.coefficient(make_blade({j, i}));
}

Multivector jacobi_check(PoissonStructure& pi) {
  Multivector bracket = schouten(pi.bivector_, pi.bivector_);
  pi.flag_ = bracket.is_zero() ? Integrability::verified_true : Integrability::verified_false;
  return bracket;
}

Multivector hamiltonian(const PoissonStructure& pi, const Polynomial& f) {
  require_same_table(pi.table(), f.table());
  return contract(differential(f), pi.bivector());
}

Polynomial apply_vector_field(const Multivector& v, const Polynomial& g) {
  if (v.degree() != 1) throw DomainError("expected a vector field");
  require_same_table(v.table(), g.table());
  Polynomial out(g.table());
  for (const auto& [b, c] : v.terms()) out += c * partial_derivative(g, blade_indices(b).front());
  return out;
}

Polynomial poisson_bracket(const PoissonStructure& pi, const Polynomial& f, const Polynomial& g) {
  return apply_vector_field(hamiltonian(pi, f), g);
}

Exponents DegeneracyIdeal::monomial_gcd() const {
  if (generators.empty()) return {};
  const auto& table = *generators.front().table();
  Exponents g(table.size(), 0);
  bool first = true;
  for (const auto& p : generators) {
    for (const auto& [e, c] : p.terms()) {
      for (std::size_t k = 0; k < table.num_coordinates(); ++k) g[k] = first ? e[k] : std::min(g[k], e[k]);
      first = false;
    }
  }
  return g;
}

DegeneracyIdeal degeneracy_ideal(const PoissonStructure& pi, int two_k) {
  const int n = static_cast<int>(pi.dimension());
  if (two_k < 0 || two_k % 2 != 0 || two_k >= 2 * (n / 2))
    throw DomainError("degeneracy index must be even with 0 <= 2k < " + std::to_string(2 * (n / 2)));
  DegeneracyIdeal ideal;
  ideal.two_k = two_k;
  const Multivector power = wedge_power(pi.bivector(), static_cast<unsigned>(two_k / 2 + 1));
  for (const auto& [b, c] : power.terms()) ideal.generators.push_back(c);
  return ideal;
}

DenseMatrix evaluated_matrix(const PoissonStructure& pi, const Assignment& point, const Assignment& params) {
  const std::size_t n = pi.dimension();
  std::string missing;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& name = pi.table()->name(k);
    if (!point.count(name)) missing += (missing.empty() ? "" : ", ") + name;
  }
  if (!missing.empty()) throw DomainError("unassigned variables: " + missing);
  DenseMatrix m(n, std::vector<GaussRational>(n));
  for (const auto& [b, c] : pi.bivector().terms()) {
    const auto idx = blade_indices(b);
    const GaussRational v = evaluate(c, point, params);
    m[idx[0]][idx[1]] = v;
    m[idx[1]][idx[0]] = -v;
  }
  return m;
}

int rank_at(const PoissonStructure& pi, const Assignment& point, const Assignment& params) {
  return static_cast<int>(exact_rank(evaluated_matrix(pi, point, params)));
}

bool invariant_hypersurface(const PoissonStructure& pi, const Polynomial& f) {
  if (f.is_zero()) throw DomainError("hypersurface equation must be nonzero");
  require_same_table(pi.table(), f.table());
  for (std::size_t m = 0; m < pi.dimension(); ++m) {
    const Polynomial xm = Polynomial::variable(pi.table(), m);
    if (!reduce_mod(poisson_bracket(pi, xm, f), f).remainder.is_zero()) return false;
  }
  return true;
}

PoissonStructure restrict_hyperplane(const PoissonStructure& pi, std::size_t coordinate) {
  const auto& src = *pi.table();
  if (coordinate >= src.num_coordinates()) throw DomainError("coordinate index out of range");
  if (!invariant_hypersurface(pi, Polynomial::variable(pi.table(), coordinate)))
    throw DomainError("not a Poisson hypersurface");
  std::vector<std::string> coords = src.coordinates();
  coords.erase(coords.begin() + static_cast<std::ptrdiff_t>(coordinate));
  TablePtr target = make_table(coords, src.parameters());

  const Blade low = (Blade{1} << coordinate) - 1;
  Multivector out(target, 2);
  for (const auto& [b, c] : pi.bivector().terms()) {
    if (b & (Blade{1} << coordinate)) continue;
    const Blade nb = (b & low) | ((b >> 1) & ~low);
    Polynomial coeff(target);
    for (const auto& [e, v] : c.terms()) {
      if (e[coordinate] != 0) continue;
      Exponents e2 = e;
      e2.erase(e2.begin() + static_cast<std::ptrdiff_t>(coordinate));
      coeff.add_term(e2, v);
    }
    out.add(nb, coeff);
  }
  PoissonStructure result(std::move(out));
  jacobi_check(result);
  return result;
}

TablePtr chart_table(std::size_t n, std::size_t chart, const TablePtr& params_from) {
  if (chart > n) throw DomainError("chart index out of range");
  std::vector<std::string> names;
  for (std::size_t k = 0; k <= n; ++k)
    if (k != chart) names.push_back("c" + std::to_string(chart) + "_" + std::to_string(k));
  return make_table(names, params_from ? params_from->parameters() : std::vector<std::string>{});
}

namespace {

// Position of homogeneous index k among the coordinates of chart c.
std::size_t position(std::size_t k, std::size_t c) { return k < c ? k : k - 1; }

}  // namespace

PoissonStructure chart_transition(const PoissonStructure& pi, std::size_t from, std::size_t to, TablePtr target) {
  const std::size_t n = pi.dimension();
  if (from > n || to > n) throw DomainError("chart index out of range");
  if (!target) target = chart_table(n, to, pi.table());
  if (target->num_coordinates() != n || target->parameters() != pi.table()->parameters())
    throw DomainError("target chart table has the wrong shape");
  if (from == to) return PoissonStructure(relabel(pi.bivector(), target), pi.integrability());

  const std::size_t za = position(from, to);  // z_a = X_from / X_to = 1 / y_b
  const std::size_t yb = position(to, from);
  const int D = std::max(coordinate_degree(pi.bivector()), 0);

  // Images of the input coordinate vector fields.
  std::vector<Multivector> images;
  const Polynomial z_a = Polynomial::variable(target, za);
  for (std::size_t p = 0; p < n; ++p) {
    Multivector img(target, 1);
    if (p == yb) {
      img.add(Blade{1} << za, -(z_a * z_a));
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == from || k == to) continue;
        const std::size_t q = position(k, to);
        img.add(Blade{1} << q, -(z_a * Polynomial::variable(target, q)));
      }
    } else {
      const std::size_t k = p < from ? p : p + 1;
      img.add(Blade{1} << position(k, to), z_a);
    }
    images.push_back(std::move(img));
  }

  Multivector cleared(target, pi.bivector().degree());
  const std::size_t params = target->num_parameters();
  for (const auto& [b, c] : pi.bivector().terms()) {
    Polynomial coeff(target);
    for (const auto& [e, v] : c.terms()) {
      Exponents e2(target->size(), 0);
      std::uint32_t total = 0;
      for (std::size_t p = 0; p < n; ++p) {
        total += e[p];
        if (p == yb) continue;
        const std::size_t k = p < from ? p : p + 1;
        e2[position(k, to)] += e[p];
      }
      e2[za] += static_cast<std::uint32_t>(D) - total;
      for (std::size_t r = 0; r < params; ++r) e2[n + r] = e[n + r];
      coeff.add_term(e2, v);
    }
    Multivector frame = Multivector::scalar(Polynomial(target, 1));
    for (std::size_t p : blade_indices(b)) frame = wedge(frame, images[p]);
    cleared += coeff * frame;
  }

  Multivector out(target, cleared.degree());
  for (const auto& [b, c] : cleared.terms()) {
    Polynomial coeff(target);
    for (const auto& [e, v] : c.terms()) {
      if (e[za] < static_cast<std::uint32_t>(D)) throw DomainError("does not extend");
      Exponents e2 = e;
      e2[za] -= static_cast<std::uint32_t>(D);
      coeff.add_term(e2, v);
    }
    out.add(b, coeff);
  }
  return PoissonStructure(std::move(out), pi.integrability());
}

PoissonStructure chart_extend(const PoissonStructure& pi, std::size_t j) {
  if (j == 0) return pi;
  return chart_transition(pi, 0, j);
}

}  // namespace pcalc
