#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcalc/polynomial.hpp"

namespace pcalc {

/// Which odd generators a graded element is built from: xi_i = d/dx_i for
/// polyvector fields, delta_i = dx_i for differential forms.
enum class Generators { vectors, forms };

/// Set of coordinate indices (bit k <-> coordinate slot k), always read as the
/// strictly increasing tuple of its members.
using Blade = std::uint32_t;

/// Lexicographic order of the increasing index tuples of two blades of equal size.
struct BladeOrder {
  bool operator()(Blade a, Blade b) const {
    const Blade diff = a ^ b;
    return diff != 0 && (a & (diff & (~diff + 1))) != 0;
  }
};

std::vector<std::size_t> blade_indices(Blade b);
Blade make_blade(const std::vector<std::size_t>& increasing_indices);
/// Sign of g_A ^ g_B = sign * g_(A u B); 0 when A and B overlap.
int wedge_sign(Blade a, Blade b);

/// Homogeneous element of the exterior algebra over the polynomial ring of a
/// table: a super-polynomial with exactly `degree` odd generators per term.
/// Degree -1 denotes the zero space (e.g. the bracket of two functions).
template <Generators G>
class Graded {
 public:
  using Terms = std::map<Blade, Polynomial, BladeOrder>;

  Graded(TablePtr table, int degree);

  /// Degree-0 element with the given coefficient.
  static Graded scalar(const Polynomial& f);
  /// The single generator of coordinate slot `coordinate`.
  static Graded generator(TablePtr table, std::size_t coordinate);
  static Graded term(const Polynomial& coeff, Blade blade);

  const TablePtr& table() const { return table_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a blade (zero if absent).
  Polynomial coefficient(Blade b) const;
  /// Degree-0 value as a polynomial.
  Polynomial as_scalar() const;

  /// Accumulates coeff * g_blade; blade size must equal degree().
  void add(Blade blade, const Polynomial& coeff);

  Graded& operator+=(const Graded& o);
  Graded& operator-=(const Graded& o);
  Graded& operator*=(const Polynomial& f);
  Graded& operator*=(const GaussRational& c);

  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator*(const Polynomial& f, Graded a) { return a *= f; }
  friend Graded operator*(const GaussRational& c, Graded a) { return a *= c; }
  Graded operator-() const;

  friend bool operator==(const Graded& a, const Graded& b) {
    return same_table(a.table_, b.table_) && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Graded& a, const Graded& b) { return !(a == b); }

  /// Human-readable text such as `(x1*x2)*d/dx1^d/dx2` or `(x1)*dx1`.
  std::string str() const;

 private:
  TablePtr table_;
  int degree_;
  Terms terms_;
};

using Multivector = Graded<Generators::vectors>;
using DifferentialForm = Graded<Generators::forms>;

/// Supercommutative product; degree(a) + degree(b).
template <Generators G>
Graded<G> wedge(const Graded<G>& a, const Graded<G>& b);

/// k-fold wedge power (k = 0 gives 1).
template <Generators G>
Graded<G> wedge_power(const Graded<G>& a, unsigned k);

/// Left odd derivative: move the generator of `coordinate` to the front, then drop it.
template <Generators G>
Graded<G> odd_derivative_left(const Graded<G>& a, std::size_t coordinate);

/// Right odd derivative: move the generator to the back, then drop it.
template <Generators G>
Graded<G> odd_derivative_right(const Graded<G>& a, std::size_t coordinate);

/// Coefficient-wise derivative with respect to a coordinate slot.
template <Generators G>
Graded<G> partial_derivative(const Graded<G>& a, std::size_t coordinate);

/// Coefficient-wise substitution of parameter values.
template <Generators G>
Graded<G> specialize(const Graded<G>& a, const Assignment& params);

/// Re-expresses an element in a table with the same coordinate list.
template <Generators G>
Graded<G> rebind(const Graded<G>& a, const TablePtr& target);

/// Positional counterpart of rebind (see relabel for polynomials).
template <Generators G>
Graded<G> relabel(const Graded<G>& a, const TablePtr& target);

/// Largest coordinate degree over all coefficients (-1 for zero).
template <Generators G>
int coordinate_degree(const Graded<G>& a);

/// df as a 1-form.
DifferentialForm differential(const Polynomial& f);

/// Exterior derivative d; d(d(w)) = 0.
DifferentialForm exterior_derivative(const DifferentialForm& w);

/// Contraction i_eta A of a 1-form into the FIRST slot of A:
/// contract(dx1, xi1 xi2) = xi2. Degree-0 A gives the zero element.
/// Throws DomainError unless eta has degree 1.
Multivector contract(const DifferentialForm& eta, const Multivector& a);

/// Schouten-Nijenhuis bracket, degree a + b - 1:
///   [A,B] = sum_i dA/dxi_i * dB/dx_i - (-1)^((a-1)(b-1)) sum_i dB/dxi_i * dA/dx_i
/// with right odd derivatives. [v, f] = v(f) for a vector field v.
Multivector schouten(const Multivector& a, const Multivector& b);

/// Omega(A) = i_A(dx1 ^ ... ^ dxn), contracting the indices of A in order.
DifferentialForm volume_contract(const Multivector& a);
/// Inverse of volume_contract.
Multivector volume_uncontract(const DifferentialForm& w);

/// Curl operator D = Omega^-1 o d o Omega for Omega = dx1 ^ ... ^ dxn.
Multivector curl(const Multivector& a);

/// Curl for the volume form u * dx1 ^ ... ^ dxn, kept exact without rational
/// functions: value = polynomial_part + correction / unit.
struct CurlResult {
  Multivector polynomial_part;
  Multivector correction;
  Polynomial unit;

  /// unit * value, a polynomial multivector.
  Multivector cleared() const { return unit * polynomial_part + correction; }
};

/// Throws DomainError("degenerate volume form") for u = 0.
CurlResult curl(const Multivector& a, const Polynomial& unit);

/// One elementary polynomial automorphism of affine space.
struct ElementaryAutomorphism {
  enum class Kind { translation, scaling, shear };
  Kind kind;
  std::size_t coordinate = 0;        ///< translated or sheared slot
  Polynomial data;                   ///< shift (coordinate-free) or shear polynomial
  std::vector<GaussRational> scales; ///< per-coordinate factors for scaling
};

const char* kind_name(ElementaryAutomorphism::Kind k);

/// Composition of elementary automorphisms together with its exact inverse,
/// both stored as coordinate images x_k -> forward_k(x).
class Automorphism {
 public:
  static Automorphism identity(TablePtr table);
  /// x_i <- x_i + shift, shift free of coordinates.
  static Automorphism translation(TablePtr table, std::size_t coordinate, Polynomial shift);
  /// x_k <- s_k x_k with nonzero constants s_k.
  static Automorphism scaling(TablePtr table, std::vector<GaussRational> scales);
  /// x_i <- x_i + g(x_{i+1}, ..., x_n).
  static Automorphism shear(TablePtr table, std::size_t coordinate, Polynomial g);
  static Automorphism from(const ElementaryAutomorphism& e, TablePtr table);

  const TablePtr& table() const { return table_; }
  const std::vector<Polynomial>& forward() const { return forward_; }
  const std::vector<Polynomial>& inverse() const { return inverse_; }
  const std::vector<ElementaryAutomorphism>& steps() const { return steps_; }

  /// next o this: apply *this first.
  Automorphism then(const Automorphism& next) const;
  Automorphism inverted() const;

  /// Exact image of a point (parameters assigned through `params`).
  std::vector<GaussRational> apply(const std::vector<GaussRational>& point, const Assignment& params = {}) const;
  std::vector<GaussRational> apply_inverse(const std::vector<GaussRational>& point,
                                           const Assignment& params = {}) const;

 private:
  Automorphism(TablePtr table, std::vector<Polynomial> forward, std::vector<Polynomial> inverse,
               std::vector<ElementaryAutomorphism> steps);

  TablePtr table_;
  std::vector<Polynomial> forward_;
  std::vector<Polynomial> inverse_;
  std::vector<ElementaryAutomorphism> steps_;
};

/// phi_* A: (phi_* A)(y) = Dphi(x) . A(x) at x = phi^-1(y).
Multivector pushforward(const Automorphism& phi, const Multivector& a);

extern template class Graded<Generators::vectors>;
extern template class Graded<Generators::forms>;

}  // namespace pcalc
