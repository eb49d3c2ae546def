#include "pcalc/diagonal.hpp"

#include <unordered_map>

#include "pcalc/error.hpp"

namespace pcalc {

DiagonalSpec::DiagonalSpec(TablePtr table, std::vector<Polynomial> upper)
    : table_(std::move(table)), upper_(std::move(upper)) {
  const std::size_t n = table_->num_coordinates();
  if (upper_.size() != (n < 2 ? 0 : n * (n - 1) / 2))
    throw DomainError("expected " + std::to_string(n * (n - 1) / 2) + " lambda entries");
  for (auto& p : upper_) {
    require_same_table(table_, p.table());
    if (!p.is_coordinate_free()) throw DomainError("lambda entries must not involve coordinates");
  }
}

std::string lambda_name(std::size_t n, std::size_t i, std::size_t j) {
  return "l" + std::to_string(i) + (n > 9 ? "_" : "") + std::to_string(j);
}

DiagonalSpec DiagonalSpec::symbolic(std::size_t n) {
  std::vector<std::string> params;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) params.push_back(lambda_name(n, i, j));
  TablePtr table = make_table(n, params);
  std::vector<Polynomial> upper;
  for (std::size_t k = 0; k < params.size(); ++k) upper.push_back(Polynomial::variable(table, n + k));
  return DiagonalSpec(table, std::move(upper));
}

DiagonalSpec DiagonalSpec::numeric(std::size_t n, const std::vector<GaussRational>& upper) {
  TablePtr table = make_table(n);
  std::vector<Polynomial> entries;
  for (const auto& v : upper) entries.emplace_back(table, v);
  return DiagonalSpec(table, std::move(entries));
}

bool DiagonalSpec::is_numeric() const {
  for (const auto& p : upper_)
    if (!p.is_constant()) return false;
  return true;
}

std::size_t DiagonalSpec::index(std::size_t i, std::size_t j) const {
  // row-major position of (i, j), i < j
  const std::size_t n = this->n();
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Polynomial DiagonalSpec::lambda(std::size_t i, std::size_t j) const {
  if (i >= n() || j >= n()) throw DomainError("lambda index out of range");
  if (i == j) return Polynomial(table_);
  return i < j ? upper_[index(i, j)] : -upper_[index(j, i)];
}

GaussRational DiagonalSpec::value(std::size_t i, std::size_t j) const {
  auto v = lambda(i, j).constant_value();
  if (!v) throw DomainError("lambda entry is not numeric");
  return *v;
}

DiagonalSpec DiagonalSpec::restricted(const std::vector<std::size_t>& keep) const {
  std::vector<std::string> coords;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= n() || (k > 0 && keep[k] <= keep[k - 1])) throw DomainError("kept coordinates must increase");
    coords.push_back(table_->name(keep[k]));
  }
  TablePtr table = make_table(coords, table_->parameters());
  std::vector<Polynomial> upper;
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a + 1; b < keep.size(); ++b) upper.push_back(rebind(lambda(keep[a], keep[b]), table));
  return DiagonalSpec(table, std::move(upper));
}

SkewMatrix lambda_matrix(const DiagonalSpec& spec) {
  SkewMatrix m(spec.n());
  for (std::size_t i = 0; i < spec.n(); ++i)
    for (std::size_t j = 0; j < spec.n(); ++j) m[i].push_back(spec.lambda(i, j));
  return m;
}

PoissonStructure make_diagonal(const DiagonalSpec& spec) {
  const auto& t = spec.table();
  Multivector pi(t, 2);
  for (std::size_t i = 0; i < spec.n(); ++i)
    for (std::size_t j = i + 1; j < spec.n(); ++j)
      pi.add(make_blade({i, j}), spec.lambda(i, j) * Polynomial::variable(t, i) * Polynomial::variable(t, j));
  PoissonStructure out(std::move(pi));
  jacobi_check(out);
  return out;
}

namespace {

Polynomial pfaffian_of(const SkewMatrix& m, std::uint32_t mask, std::unordered_map<std::uint32_t, Polynomial>& memo) {
  const TablePtr& table = m.front().front().table();
  if (mask == 0) return Polynomial(table, 1);
  if (auto it = memo.find(mask); it != memo.end()) return it->second;
  const std::size_t first = static_cast<std::size_t>(__builtin_ctz(mask));
  const std::uint32_t rest = mask & (mask - 1);
  Polynomial sum(table);
  int sign = 1;
  for (std::uint32_t r = rest; r != 0; r &= r - 1) {
    const std::size_t j = static_cast<std::size_t>(__builtin_ctz(r));
    if (!m[first][j].is_zero()) {
      Polynomial term = m[first][j] * pfaffian_of(m, rest & ~(std::uint32_t{1} << j), memo);
      if (sign > 0) sum += term; else sum -= term;
    }
    sign = -sign;
  }
  memo.emplace(mask, sum);
  return sum;
}

}  // namespace

Polynomial pfaffian(const SkewMatrix& m) {
  const std::size_t n = m.size();
  if (n % 2 != 0) throw DomainError("Pfaffian needs even size");
  if (n > 32) throw DomainError("matrix too large");
  for (const auto& row : m)
    if (row.size() != n) throw DomainError("matrix is not square");
  if (n == 0) throw DomainError("empty matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (m[i][j] != -m[j][i]) throw DomainError("matrix is not skew-symmetric");
  std::unordered_map<std::uint32_t, Polynomial> memo;
  const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  return pfaffian_of(m, all, memo);
}

std::vector<Polynomial> curl_eigenvalues(const DiagonalSpec& spec) {
  std::vector<Polynomial> mu;
  for (std::size_t i = 0; i < spec.n(); ++i) {
    Polynomial s(spec.table());
    for (std::size_t j = 0; j < spec.n(); ++j) s += spec.lambda(i, j);
    mu.push_back(std::move(s));
  }
  return mu;
}

std::string Genericity::describe() const {
  std::string out;
  auto add = [&](bool ok, const char* what) {
    if (!ok) out += (out.empty() ? "" : ", ") + std::string(what);
  };
  add(pfaffian_nonzero, "vanishing Pfaffian");
  add(mu_nonzero, "some mu_i = 0");
  add(mu_distinct, "repeated mu_i");
  return out.empty() ? "generic" : out;
}

namespace {

std::vector<Polynomial> maximal_subpfaffians(const SkewMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < n; ++i) {
    SkewMatrix sub;
    for (std::size_t a = 0; a < n; ++a) {
      if (a == i) continue;
      std::vector<Polynomial> row;
      for (std::size_t b = 0; b < n; ++b)
        if (b != i) row.push_back(m[a][b]);
      sub.push_back(std::move(row));
    }
    Polynomial p = sub.empty() ? Polynomial(m.front().front().table(), 1) : pfaffian(sub);
    out.push_back(i % 2 == 0 ? p : -p);
  }
  return out;
}

}  // namespace

Genericity check_genericity(const DiagonalSpec& spec) {
  if (!spec.is_numeric()) throw DomainError("genericity is checked on numeric specs");
  Genericity g;
  const SkewMatrix m = lambda_matrix(spec);
  if (spec.n() % 2 == 0) {
    g.pfaffian_nonzero = spec.n() == 0 || !pfaffian(m).is_zero();
  } else {
    g.pfaffian_nonzero = false;
    for (const auto& p : maximal_subpfaffians(m)) g.pfaffian_nonzero |= !p.is_zero();
  }
  const auto mu = curl_eigenvalues(spec);
  g.mu_nonzero = true;
  g.mu_distinct = true;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    g.mu_nonzero &= !mu[i].is_zero();
    for (std::size_t j = i + 1; j < mu.size(); ++j) g.mu_distinct &= mu[i] != mu[j];
  }
  return g;
}

DiagonalSpec random_spec(std::size_t n, std::mt19937_64& rng, std::int64_t bound, std::int64_t denominator) {
  if (bound < 0 || denominator <= 0) throw DomainError("bad sampling range");
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  std::vector<GaussRational> upper;
  for (std::size_t k = 0; k < (n < 2 ? 0 : n * (n - 1) / 2); ++k)
    upper.push_back(GaussRational::fraction(dist(rng), denominator));
  return DiagonalSpec::numeric(n, upper);
}

DiagonalSpec random_generic_spec(std::size_t n, std::mt19937_64& rng, std::int64_t bound, std::int64_t denominator) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    DiagonalSpec spec = random_spec(n, rng, bound, denominator);
    if (check_genericity(spec).ok()) return spec;
  }
  throw DomainError("could not sample a generic spec");
}

DifferentialForm LogForm::cleared() const {
  const TablePtr& t = holomorphic_part.table();
  const std::size_t n = residues.size();
  Polynomial all(t, 1);
  for (std::size_t k = 0; k < n; ++k) all *= Polynomial::variable(t, k);
  DifferentialForm out = all * holomorphic_part;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial others(t, 1);
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) others *= Polynomial::variable(t, k);
    out.add(Blade{1} << i, residues[i] * others);
  }
  return out;
}

Polynomial LogForm::residue_at_infinity() const {
  Polynomial s(holomorphic_part.table());
  for (const auto& r : residues) s -= r;
  return s;
}

LogForm log_annihilator(const DiagonalSpec& spec) {
  if (spec.n() % 2 == 0) throw DomainError("log annihilator needs an odd number of coordinates");
  auto residues = maximal_subpfaffians(lambda_matrix(spec));
  const Polynomial* lead = nullptr;
  for (const auto& r : residues)
    if (!r.is_zero()) { lead = &r; break; }
  if (!lead) throw DomainError("non-generic spec");
  if (auto c = lead->constant_value(); c && spec.is_numeric()) {
    const GaussRational inv = c->inverse();
    for (auto& r : residues) r *= inv;
  }
  return LogForm{std::move(residues), DifferentialForm(spec.table(), 1)};
}

}  // namespace pcalc
