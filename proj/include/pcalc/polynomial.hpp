#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcalc/gauss_rational.hpp"

namespace pcalc {

/// Ordered variable names. Slots [0, n) are coordinates, [n, n+p) parameters.
/// Coordinate order fixes every sign convention downstream.
class VariableTable {
 public:
  VariableTable(std::vector<std::string> coordinates, std::vector<std::string> parameters = {});

  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<std::string>& parameters() const { return parameters_; }

  std::size_t num_coordinates() const { return coordinates_.size(); }
  std::size_t num_parameters() const { return parameters_.size(); }
  std::size_t size() const { return coordinates_.size() + parameters_.size(); }

  bool is_coordinate(std::size_t slot) const { return slot < coordinates_.size(); }
  const std::string& name(std::size_t slot) const;
  std::optional<std::size_t> slot_of(std::string_view name) const;

  friend bool operator==(const VariableTable& a, const VariableTable& b) {
    return a.coordinates_ == b.coordinates_ && a.parameters_ == b.parameters_;
  }

 private:
  std::vector<std::string> coordinates_;
  std::vector<std::string> parameters_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

TablePtr make_table(std::vector<std::string> coordinates, std::vector<std::string> parameters = {});
/// Coordinates prefix1..prefixN.
TablePtr make_table(std::size_t n, std::vector<std::string> parameters = {}, std::string_view prefix = "x");

bool same_table(const TablePtr& a, const TablePtr& b);
/// Throws DomainError("mismatched variable tables") unless same_table.
void require_same_table(const TablePtr& a, const TablePtr& b);

/// Exponent of every slot of the owning table.
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order on the coordinate block (x1 > x2 > ...), ties
/// broken by graded lex on the parameter block. Sorts descending, so the
/// leading term of a polynomial is the first entry of its term map.
struct MonomialOrder {
  std::size_t num_coordinates = 0;
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse exact polynomial over Q(i) in the variables of a table.
/// No stored term has a zero coefficient.
class Polynomial {
 public:
  using Terms = std::map<Exponents, GaussRational, MonomialOrder>;

  explicit Polynomial(TablePtr table);
  Polynomial(TablePtr table, const GaussRational& constant);

  static Polynomial variable(TablePtr table, std::size_t slot);
  /// Throws DomainError for an unknown name.
  static Polynomial variable(TablePtr table, std::string_view name);
  static Polynomial monomial(TablePtr table, Exponents exponents, const GaussRational& coeff = 1);

  const TablePtr& table() const { return table_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value when the polynomial is constant, nullopt otherwise.
  std::optional<GaussRational> constant_value() const;
  /// True when no coordinate appears (parameters only).
  bool is_coordinate_free() const;

  /// Largest total degree in the coordinates (-1 for zero).
  int coordinate_degree() const;
  int degree_in(std::size_t slot) const;

  /// Accumulates c * monomial; drops the term if it cancels.
  void add_term(const Exponents& exponents, const GaussRational& coeff);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GaussRational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const GaussRational& c) { return a *= c; }
  friend Polynomial operator*(const GaussRational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  Polynomial pow(unsigned k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Canonical text (descending term order); parse_polynomial inverts it.
  std::string str() const;

 private:
  TablePtr table_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Multivariate division of f by the single polynomial g with graded lex on
/// the coordinates; parameters act as coefficients. f = q*g + r and no
/// monomial of r is divisible by the leading monomial of g, so r = 0 iff f
/// lies in the principal ideal (g). The leading coefficient of g must be a
/// nonzero scalar. Throws DomainError("zero divisor") for g = 0.
DivisionResult reduce_mod(const Polynomial& f, const Polynomial& g);

/// Formal partial derivative with respect to a coordinate slot. Throws
/// DomainError("not a coordinate") for parameter slots.
Polynomial partial_derivative(const Polynomial& f, std::size_t slot);
Polynomial partial_derivative(const Polynomial& f, std::string_view coordinate);

/// Name -> value assignment.
using Assignment = std::map<std::string, GaussRational, std::less<>>;

/// Exact evaluation. Every variable occurring in f must be assigned in
/// `point` (coordinates) or `params` (parameters), except in terms that an
/// assigned zero already kills; otherwise DomainError listing the unassigned
/// names.
GaussRational evaluate(const Polynomial& f, const Assignment& point, const Assignment& params = {});

/// Partial evaluation: replace the assigned parameters by their values.
Polynomial specialize(const Polynomial& f, const Assignment& params);

/// Double precision evaluation; `values` is indexed by table slot. Terms are
/// summed in canonical order.
std::complex<double> evaluate_complex(const Polynomial& f, std::span<const std::complex<double>> values);

/// Substitutes slot k of f's table by images[k] (all images share one target
/// table). images.size() must equal f's table size.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images);

/// Re-expresses f in another table by variable name; every variable of f must
/// exist in the target table with the same coordinate/parameter role.
Polynomial rebind(const Polynomial& f, const TablePtr& target);

/// Moves f to a table of the same shape slot by slot, ignoring names.
Polynomial relabel(const Polynomial& f, const TablePtr& target);

/// Parses the polynomial text syntax, e.g. `(3/2+1/2*i)*x1^2*x2 - l12*x3`.
/// Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const TablePtr& table);

}  // namespace pcalc
