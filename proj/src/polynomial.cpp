#include "pcalc/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <set>

#include "pcalc/error.hpp"

namespace pcalc {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || s == "i") return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::uint64_t block_degree(const Exponents& e, std::size_t from, std::size_t to) {
  std::uint64_t d = 0;
  for (std::size_t k = from; k < to; ++k) d += e[k];
  return d;
}

}  // namespace

VariableTable::VariableTable(std::vector<std::string> coordinates, std::vector<std::string> parameters)
    : coordinates_(std::move(coordinates)), parameters_(std::move(parameters)) {
  std::set<std::string> seen;
  for (std::size_t k = 0; k < size(); ++k) {
    const std::string& n = name(k);
    if (!valid_identifier(n)) throw DomainError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw DomainError("duplicate variable name '" + n + "'");
  }
}

const std::string& VariableTable::name(std::size_t slot) const {
  return slot < coordinates_.size() ? coordinates_.at(slot) : parameters_.at(slot - coordinates_.size());
}

std::optional<std::size_t> VariableTable::slot_of(std::string_view n) const {
  for (std::size_t k = 0; k < size(); ++k)
    if (name(k) == n) return k;
  return std::nullopt;
}

TablePtr make_table(std::vector<std::string> coordinates, std::vector<std::string> parameters) {
  return std::make_shared<const VariableTable>(std::move(coordinates), std::move(parameters));
}

TablePtr make_table(std::size_t n, std::vector<std::string> parameters, std::string_view prefix) {
  std::vector<std::string> coords;
  for (std::size_t k = 1; k <= n; ++k) coords.push_back(std::string(prefix) + std::to_string(k));
  return make_table(std::move(coords), std::move(parameters));
}

bool same_table(const TablePtr& a, const TablePtr& b) { return a == b || (a && b && *a == *b); }

void require_same_table(const TablePtr& a, const TablePtr& b) {
  if (!same_table(a, b)) throw DomainError("mismatched variable tables");
}

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
  const std::size_t n = num_coordinates;
  const auto da = block_degree(a, 0, n), db = block_degree(b, 0, n);
  if (da != db) return da > db;
  for (std::size_t k = 0; k < n; ++k)
    if (a[k] != b[k]) return a[k] > b[k];
  const auto pa = block_degree(a, n, a.size()), pb = block_degree(b, n, b.size());
  if (pa != pb) return pa > pb;
  for (std::size_t k = n; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] > b[k];
  return false;
}

Polynomial::Polynomial(TablePtr table)
    : table_(std::move(table)), terms_(MonomialOrder{table_->num_coordinates()}) {}

Polynomial::Polynomial(TablePtr table, const GaussRational& constant) : Polynomial(std::move(table)) {
  add_term(Exponents(table_->size(), 0), constant);
}

Polynomial Polynomial::variable(TablePtr table, std::size_t slot) {
  Exponents e(table->size(), 0);
  e.at(slot) = 1;
  return monomial(std::move(table), std::move(e));
}

Polynomial Polynomial::variable(TablePtr table, std::string_view name) {
  auto slot = table->slot_of(name);
  if (!slot) throw DomainError("unknown variable '" + std::string(name) + "'");
  return variable(std::move(table), *slot);
}

Polynomial Polynomial::monomial(TablePtr table, Exponents exponents, const GaussRational& coeff) {
  if (exponents.size() != table->size()) throw DomainError("exponent vector does not match table");
  Polynomial p(std::move(table));
  p.add_term(exponents, coeff);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
}

std::optional<GaussRational> Polynomial::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return terms_.empty() ? GaussRational(0) : terms_.begin()->second;
}

bool Polynomial::is_coordinate_free() const {
  const std::size_t n = table_->num_coordinates();
  return std::all_of(terms_.begin(), terms_.end(),
                     [n](const auto& t) { return block_degree(t.first, 0, n) == 0; });
}

int Polynomial::coordinate_degree() const {
  if (terms_.empty()) return -1;
  // Graded order on coordinates: the first term has the largest degree.
  return static_cast<int>(block_degree(terms_.begin()->first, 0, table_->num_coordinates()));
}

int Polynomial::degree_in(std::size_t slot) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(slot)));
  return d;
}

void Polynomial::add_term(const Exponents& exponents, const GaussRational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_table(table_, o.table_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_table(table_, o.table_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_table(a.table_, b.table_);
  Polynomial out(a.table_);
  Exponents e(a.table_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(table_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
}

namespace {

std::string monomial_text(const VariableTable& t, const Exponents& e) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += t.name(k);
    if (e[k] > 1) out += '^' + std::to_string(e[k]);
  }
  return out;
}

// A coefficient "reads negative" when it can be printed after a '-' joiner.
bool reads_negative(const GaussRational& c) {
  if (!c.is_real() && sgn(c.re()) != 0) return false;
  return c.is_real() ? sgn(c.re()) < 0 : sgn(c.im()) < 0;
}

}  // namespace

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = reads_negative(c);
    const GaussRational mag = neg ? -c : c;
    const std::string mono = monomial_text(*table_, e);
    std::string body;
    if (mono.empty())
      body = mag.str();
    else if (mag.is_one())
      body = mono;
    else
      body = mag.str() + "*" + mono;
    if (first)
      out += neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

DivisionResult reduce_mod(const Polynomial& f, const Polynomial& g) {
  require_same_table(f.table(), g.table());
  if (g.is_zero()) throw DomainError("zero divisor");
  const auto& table = f.table();
  const std::size_t n = table->num_coordinates();

  const auto& [lead, lead_coeff] = *g.terms().begin();
  if (block_degree(lead, n, lead.size()) != 0)
    throw DomainError("leading coefficient of divisor is not an invertible scalar");
  for (auto it = std::next(g.terms().begin()); it != g.terms().end(); ++it) {
    if (std::equal(lead.begin(), lead.begin() + n, it->first.begin()))
      throw DomainError("leading coefficient of divisor is not an invertible scalar");
  }
  const GaussRational lead_inv = lead_coeff.inverse();

  Polynomial quotient(table), remainder(table);
  Polynomial p = f;
  Exponents shift(table->size());
  while (!p.is_zero()) {
    const auto [e, c] = *p.terms().begin();
    bool divisible = true;
    for (std::size_t k = 0; k < n && divisible; ++k) divisible = e[k] >= lead[k];
    if (!divisible) {
      remainder.add_term(e, c);
      p.add_term(e, -c);
      continue;
    }
    for (std::size_t k = 0; k < shift.size(); ++k) shift[k] = e[k] - lead[k];
    Polynomial step = Polynomial::monomial(table, shift, c * lead_inv);
    quotient += step;
    p -= step * g;
  }
  return {std::move(quotient), std::move(remainder)};
}

Polynomial partial_derivative(const Polynomial& f, std::size_t slot) {
  if (!f.table()->is_coordinate(slot)) throw DomainError("not a coordinate");
  Polynomial out(f.table());
  for (const auto& [e, c] : f.terms()) {
    if (e[slot] == 0) continue;
    Exponents d = e;
    --d[slot];
    out.add_term(d, c * GaussRational(static_cast<long>(e[slot])));
  }
  return out;
}

Polynomial partial_derivative(const Polynomial& f, std::string_view coordinate) {
  auto slot = f.table()->slot_of(coordinate);
  if (!slot || !f.table()->is_coordinate(*slot))
    throw DomainError("not a coordinate: '" + std::string(coordinate) + "'");
  return partial_derivative(f, *slot);
}

GaussRational evaluate(const Polynomial& f, const Assignment& point, const Assignment& params) {
  const auto& t = *f.table();
  std::vector<const GaussRational*> value(t.size(), nullptr);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Assignment& source = t.is_coordinate(k) ? point : params;
    if (auto it = source.find(t.name(k)); it != source.end()) value[k] = &it->second;
  }
  // A term killed by an assigned zero needs no other values.
  std::vector<bool> missing(t.size(), false);
  GaussRational total;
  for (const auto& [e, c] : f.terms()) {
    bool killed = false, incomplete = false;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!e[k]) continue;
      if (!value[k]) incomplete = true;
      else if (value[k]->is_zero()) killed = true;
    }
    if (killed) continue;
    if (incomplete) {
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] && !value[k]) missing[k] = true;
      continue;
    }
    GaussRational term = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (std::uint32_t r = 0; r < e[k]; ++r) term *= *value[k];
    total += term;
  }
  std::string names;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (missing[k]) names += (names.empty() ? "" : ", ") + t.name(k);
  if (!names.empty()) throw DomainError("unassigned variables: " + names);
  return total;
}

Polynomial specialize(const Polynomial& f, const Assignment& params) {
  const auto& t = *f.table();
  Polynomial out(f.table());
  for (const auto& [e, c] : f.terms()) {
    Exponents rest = e;
    GaussRational coeff = c;
    for (std::size_t k = t.num_coordinates(); k < t.size(); ++k) {
      auto it = params.find(t.name(k));
      if (it == params.end() || e[k] == 0) continue;
      for (std::uint32_t r = 0; r < e[k]; ++r) coeff *= it->second;
      rest[k] = 0;
    }
    out.add_term(rest, coeff);
  }
  return out;
}

std::complex<double> evaluate_complex(const Polynomial& f, std::span<const std::complex<double>> values) {
  if (values.size() != f.table()->size()) throw DomainError("value vector does not match table");
  std::complex<double> total = 0;
  for (const auto& [e, c] : f.terms()) {
    std::complex<double> term = c.to_complex();
    for (std::size_t k = 0; k < e.size(); ++k)
      for (std::uint32_t r = 0; r < e[k]; ++r) term *= values[k];
    total += term;
  }
  return total;
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
  if (images.size() != f.table()->size()) throw DomainError("substitution does not cover the table");
  if (images.empty()) return f;  // only constants
  const TablePtr& target = images.front().table();
  for (const auto& im : images) require_same_table(target, im.table());

  std::map<std::pair<std::size_t, std::uint32_t>, Polynomial> powers;
  auto power = [&](std::size_t slot, std::uint32_t k) -> const Polynomial& {
    auto key = std::make_pair(slot, k);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, images[slot].pow(k)).first;
    return it->second;
  };

  Polynomial out(target);
  for (const auto& [e, c] : f.terms()) {
    Polynomial term(target, c);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) term *= power(k, e[k]);
    out += term;
  }
  return out;
}

Polynomial rebind(const Polynomial& f, const TablePtr& target) {
  if (same_table(f.table(), target)) {
    Polynomial out(target);
    for (const auto& [e, c] : f.terms()) out.add_term(e, c);
    return out;
  }
  const auto& src = *f.table();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t k = 0; k < src.size(); ++k) {
    auto slot = target->slot_of(src.name(k));
    if (slot && target->is_coordinate(*slot) == src.is_coordinate(k)) map[k] = slot;
  }
  Polynomial out(target);
  Exponents e2(target->size());
  for (const auto& [e, c] : f.terms()) {
    std::fill(e2.begin(), e2.end(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!map[k]) throw DomainError("variable '" + src.name(k) + "' missing from target table");
      e2[*map[k]] = e[k];
    }
    out.add_term(e2, c);
  }
  return out;
}

Polynomial relabel(const Polynomial& f, const TablePtr& target) {
  const auto& src = *f.table();
  if (src.num_coordinates() != target->num_coordinates() || src.num_parameters() != target->num_parameters())
    throw DomainError("relabel needs tables of the same shape");
  Polynomial out(target);
  for (const auto& [e, c] : f.terms()) out.add_term(e, c);
  return out;
}

}  // namespace pcalc
