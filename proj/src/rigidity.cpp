#include "pcalc/rigidity.hpp"

#include <map>
#include <stdexcept>

#include "pcalc/error.hpp"

namespace pcalc {

std::string RigidityUnknown::name() const {
  return "a" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k) + "_" + std::to_string(l);
}

Multivector RigiditySystem::generic_bivector() const {
  Multivector pi(table, 2);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& a = unknowns[u];
    Exponents e(table->size(), 0);
    e[a.i] += 1;
    e[a.j] += 1;
    e[N + u] = 1;
    pi.add(make_blade({a.k, a.l}), Polynomial::monomial(table, e));
  }
  return pi;
}

bool RigiditySystem::satisfied_by(const std::vector<GaussRational>& values) const {
  if (values.size() != unknowns.size()) throw DomainError("assignment size does not match the unknowns");
  for (const auto& c : constraints) {
    GaussRational s;
    for (const auto& [u, v] : c.row) s += v * values[u];
    if (!s.is_zero()) return false;
  }
  return true;
}

RigiditySystem diagonality_constraints(std::size_t N) {
  if (N < 2) throw DomainError("rigidity needs N >= 2");
  if (N > 12) throw DomainError("rigidity is limited to N <= 12");
  RigiditySystem sys;
  sys.N = N;
  std::vector<std::string> coords, params;
  for (std::size_t c = 0; c < N; ++c) coords.push_back("x" + std::to_string(c));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = k + 1; l < N; ++l) {
          sys.unknowns.push_back({i, j, k, l});
          params.push_back(sys.unknowns.back().name());
        }
  sys.table = make_table(coords, params);
  const Multivector pi = sys.generic_bivector();

  for (std::size_t m = 0; m < N; ++m) {
    const Multivector ham = contract(differential(Polynomial::variable(sys.table, m)), pi);
    for (std::size_t mp = 0; mp < N; ++mp) {
      if (mp == m) continue;
      const Polynomial rest =
          reduce_mod(ham.coefficient(Blade{1} << mp), Polynomial::variable(sys.table, mp)).remainder;
      std::map<Exponents, SparseRow> rows;
      for (const auto& [e, c] : rest.terms()) {
        Exponents mono(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(N));
        std::size_t unknown = 0;
        for (std::size_t u = 0; u < sys.unknowns.size(); ++u)
          if (e[N + u] != 0) { unknown = u; break; }
        rows[mono][unknown] += c;
      }
      for (auto& [mono, row] : rows) sys.constraints.push_back({m, mp, mono, std::move(row)});
    }
  }
  return sys;
}

RigiditySolution solve_rigidity(const RigiditySystem& sys) {
  std::vector<SparseRow> rows;
  for (const auto& c : sys.constraints) rows.push_back(c.row);
  RigiditySolution sol;
  sol.basis = nullspace(std::move(rows), sys.unknowns.size());

  std::vector<std::string> coords(sys.table->coordinates());
  TablePtr plain = make_table(coords);
  std::size_t diagonal_unknowns = 0;
  for (const auto& u : sys.unknowns) diagonal_unknowns += u.diagonal();
  sol.diagonal = sol.basis.size() == diagonal_unknowns;
  for (const auto& v : sol.basis) {
    Multivector b(plain, 2);
    std::size_t nonzero = 0;
    bool unit_on_diagonal = true;
    for (std::size_t u = 0; u < v.size(); ++u) {
      if (v[u].is_zero()) continue;
      const auto& a = sys.unknowns[u];
      ++nonzero;
      unit_on_diagonal &= a.diagonal() && v[u].is_one();
      Exponents e(sys.N, 0);
      e[a.i] += 1;
      e[a.j] += 1;
      b.add(make_blade({a.k, a.l}), Polynomial::monomial(plain, e, v[u]));
    }
    if (nonzero != 1 || !unit_on_diagonal) {
      if (sol.diagonal || sol.diagnostic.empty()) sol.diagnostic = "non-diagonal basis element: " + b.str();
      sol.diagonal = false;
    }
    sol.bivectors.push_back(std::move(b));
  }
  if (!sol.diagonal && sol.diagnostic.empty())
    sol.diagnostic = "dimension " + std::to_string(sol.basis.size()) + ", expected " +
                     std::to_string(diagonal_unknowns);
  return sol;
}

namespace {

void compositions(std::size_t parts, std::uint32_t total, Exponents& cur, std::vector<Exponents>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::uint32_t a = total + 1; a-- > 0;) {
    cur.push_back(a);
    compositions(parts, total - a, cur, out);
    cur.pop_back();
  }
}

bool second_partials_vanish(const Polynomial& f) {
  for (std::size_t i = 0; i < f.table()->num_coordinates(); ++i)
    if (!partial_derivative(partial_derivative(f, i), i).is_zero()) return false;
  return true;
}

}  // namespace

MonomialSurvivors simplex_multiplicity_filter(unsigned k) {
  if (k < 1) throw DomainError("simplex filter needs k >= 1");
  if (k > 12) throw DomainError("simplex filter is limited to k <= 12");
  std::vector<std::string> names;
  for (unsigned c = 0; c <= k; ++c) names.push_back("x" + std::to_string(c));
  TablePtr table = make_table(names);
  std::vector<Exponents> monomials;
  Exponents cur;
  compositions(k + 1, k + 1, cur, monomials);
  MonomialSurvivors out;
  out.k = k;
  out.examined = monomials.size();
  for (const auto& e : monomials)
    if (second_partials_vanish(Polynomial::monomial(table, e))) out.survivors.push_back(e);
  if (out.survivors.size() == 1)
    for (auto x : out.survivors.front())
      if (x > 1) throw std::logic_error("unique survivor is not square-free");
  return out;
}

bool check_multiplicity(const Polynomial& f, unsigned k) {
  const std::size_t n = f.table()->num_coordinates();
  if (n != k + 1) throw DomainError("expected " + std::to_string(k + 1) + " coordinates");
  for (const auto& [e, c] : f.terms()) {
    std::uint32_t d = 0;
    for (std::size_t s = 0; s < n; ++s) d += e[s];
    if (d != k + 1) throw DomainError("not homogeneous of degree " + std::to_string(k + 1));
  }
  if (!second_partials_vanish(f)) return false;
  for (const auto& [e, c] : f.terms())
    for (std::size_t s = 0; s < n; ++s)
      if (e[s] != 1) throw std::logic_error("square-free check passed on a non-square-free monomial");
  return true;
}

}  // namespace pcalc
