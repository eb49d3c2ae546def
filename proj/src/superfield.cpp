#include "pcalc/superfield.hpp"

#include <bit>

#include "pcalc/error.hpp"

namespace pcalc {

namespace {

constexpr std::size_t kMaxCoordinates = 32;

Blade bit(std::size_t k) { return Blade{1} << k; }

Blade below(std::size_t k) { return bit(k) - 1; }

Blade above(std::size_t k) { return k + 1 >= 32 ? Blade{0} : ~((Blade{2} << k) - 1); }

Blade all_coordinates(const VariableTable& t) {
  const std::size_t n = t.num_coordinates();
  return n >= 32 ? ~Blade{0} : bit(n) - 1;
}

void check_width(const TablePtr& t) {
  if (t->num_coordinates() > kMaxCoordinates) throw DomainError("at most 32 coordinates are supported");
}

template <Generators G>
const char* generator_prefix() {
  return G == Generators::vectors ? "d/d" : "d";
}

}  // namespace

std::vector<std::size_t> blade_indices(Blade b) {
  std::vector<std::size_t> out;
  while (b) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    b &= b - 1;
  }
  return out;
}

Blade make_blade(const std::vector<std::size_t>& increasing_indices) {
  Blade b = 0;
  for (std::size_t k = 0; k < increasing_indices.size(); ++k) {
    const std::size_t idx = increasing_indices[k];
    if (idx >= kMaxCoordinates || (k > 0 && idx <= increasing_indices[k - 1]))
      throw DomainError("blade indices must be strictly increasing");
    b |= bit(idx);
  }
  return b;
}

int wedge_sign(Blade a, Blade b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Blade rest = b; rest; rest &= rest - 1) {
    const auto k = static_cast<std::size_t>(std::countr_zero(rest));
    inversions += std::popcount(a & above(k));
  }
  return inversions % 2 ? -1 : 1;
}

template <Generators G>
Graded<G>::Graded(TablePtr table, int degree) : table_(std::move(table)), degree_(degree) {
  check_width(table_);
  if (degree_ < -1) throw DomainError("negative degree");
}

template <Generators G>
Graded<G> Graded<G>::scalar(const Polynomial& f) {
  Graded out(f.table(), 0);
  out.add(0, f);
  return out;
}

template <Generators G>
Graded<G> Graded<G>::generator(TablePtr table, std::size_t coordinate) {
  if (!table->is_coordinate(coordinate)) throw DomainError("not a coordinate");
  Graded out(table, 1);
  out.add(bit(coordinate), Polynomial(table, 1));
  return out;
}

template <Generators G>
Graded<G> Graded<G>::term(const Polynomial& coeff, Blade blade) {
  Graded out(coeff.table(), std::popcount(blade));
  out.add(blade, coeff);
  return out;
}

template <Generators G>
Polynomial Graded<G>::coefficient(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Polynomial(table_) : it->second;
}

template <Generators G>
Polynomial Graded<G>::as_scalar() const {
  if (degree_ != 0) throw DomainError("element is not of degree 0");
  return coefficient(0);
}

template <Generators G>
void Graded<G>::add(Blade blade, const Polynomial& coeff) {
  if (std::popcount(blade) != degree_) throw DomainError("blade size does not match degree");
  if (blade & ~all_coordinates(*table_)) throw DomainError("blade index outside the coordinates");
  require_same_table(table_, coeff.table());
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(blade, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

template <Generators G>
Graded<G>& Graded<G>::operator+=(const Graded& o) {
  require_same_table(table_, o.table_);
  if (o.is_zero()) return *this;
  if (is_zero() && degree_ != o.degree_) return *this = o;
  if (degree_ != o.degree_) throw DomainError("sum of elements of different degrees");
  for (const auto& [b, c] : o.terms_) add(b, c);
  return *this;
}

template <Generators G>
Graded<G>& Graded<G>::operator-=(const Graded& o) {
  return *this += -o;
}

template <Generators G>
Graded<G>& Graded<G>::operator*=(const Polynomial& f) {
  require_same_table(table_, f.table());
  Terms out;
  for (auto& [b, c] : terms_) {
    Polynomial p = c * f;
    if (!p.is_zero()) out.emplace(b, std::move(p));
  }
  terms_ = std::move(out);
  return *this;
}

template <Generators G>
Graded<G>& Graded<G>::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, p] : terms_) p *= c;
  return *this;
}

template <Generators G>
Graded<G> Graded<G>::operator-() const {
  Graded out = *this;
  for (auto& [b, p] : out.terms_) p = -p;
  return out;
}

template <Generators G>
std::string Graded<G>::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [b, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")";
    bool first = true;
    for (std::size_t k : blade_indices(b)) {
      out += first ? "*" : "^";
      out += generator_prefix<G>() + table_->name(k);
      first = false;
    }
  }
  return out;
}

template class Graded<Generators::vectors>;
template class Graded<Generators::forms>;

template <Generators G>
Graded<G> wedge(const Graded<G>& a, const Graded<G>& b) {
  require_same_table(a.table(), b.table());
  Graded<G> out(a.table(), a.degree() < 0 || b.degree() < 0 ? -1 : a.degree() + b.degree());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      const int s = wedge_sign(ba, bb);
      if (s == 0) continue;
      Polynomial c = ca * cb;
      if (s < 0) c = -c;
      out.add(ba | bb, c);
    }
  }
  return out;
}

template <Generators G>
Graded<G> wedge_power(const Graded<G>& a, unsigned k) {
  Graded<G> out = Graded<G>::scalar(Polynomial(a.table(), 1));
  for (unsigned r = 0; r < k; ++r) out = wedge(out, a);
  return out;
}

template <Generators G>
Graded<G> odd_derivative_left(const Graded<G>& a, std::size_t coordinate) {
  Graded<G> out(a.table(), std::max(a.degree() - 1, -1));
  for (const auto& [b, c] : a.terms()) {
    if (!(b & bit(coordinate))) continue;
    const bool odd = std::popcount(b & below(coordinate)) % 2;
    out.add(b & ~bit(coordinate), odd ? -c : c);
  }
  return out;
}

template <Generators G>
Graded<G> odd_derivative_right(const Graded<G>& a, std::size_t coordinate) {
  Graded<G> out(a.table(), std::max(a.degree() - 1, -1));
  for (const auto& [b, c] : a.terms()) {
    if (!(b & bit(coordinate))) continue;
    const bool odd = std::popcount(b & above(coordinate)) % 2;
    out.add(b & ~bit(coordinate), odd ? -c : c);
  }
  return out;
}

template <Generators G>
Graded<G> partial_derivative(const Graded<G>& a, std::size_t coordinate) {
  Graded<G> out(a.table(), a.degree());
  for (const auto& [b, c] : a.terms()) out.add(b, partial_derivative(c, coordinate));
  return out;
}

template <Generators G>
Graded<G> specialize(const Graded<G>& a, const Assignment& params) {
  Graded<G> out(a.table(), a.degree());
  for (const auto& [b, c] : a.terms()) out.add(b, specialize(c, params));
  return out;
}

template <Generators G>
Graded<G> rebind(const Graded<G>& a, const TablePtr& target) {
  if (a.table()->coordinates() != target->coordinates())
    throw DomainError("rebind requires the same coordinate list");
  Graded<G> out(target, a.degree());
  for (const auto& [b, c] : a.terms()) out.add(b, rebind(c, target));
  return out;
}

template <Generators G>
Graded<G> relabel(const Graded<G>& a, const TablePtr& target) {
  Graded<G> out(target, a.degree());
  for (const auto& [b, c] : a.terms()) out.add(b, relabel(c, target));
  return out;
}

template <Generators G>
int coordinate_degree(const Graded<G>& a) {
  int d = -1;
  for (const auto& [b, c] : a.terms()) d = std::max(d, c.coordinate_degree());
  return d;
}

#define PCALC_INSTANTIATE(G)                                                          \
  template Graded<G> wedge(const Graded<G>&, const Graded<G>&);                       \
  template Graded<G> wedge_power(const Graded<G>&, unsigned);                         \
  template Graded<G> odd_derivative_left(const Graded<G>&, std::size_t);              \
  template Graded<G> odd_derivative_right(const Graded<G>&, std::size_t);             \
  template Graded<G> partial_derivative(const Graded<G>&, std::size_t);               \
  template Graded<G> specialize(const Graded<G>&, const Assignment&);                 \
  template Graded<G> rebind(const Graded<G>&, const TablePtr&);                       \
  template Graded<G> relabel(const Graded<G>&, const TablePtr&);                      \
  template int coordinate_degree(const Graded<G>&);

PCALC_INSTANTIATE(Generators::vectors)
PCALC_INSTANTIATE(Generators::forms)
#undef PCALC_INSTANTIATE

DifferentialForm differential(const Polynomial& f) {
  DifferentialForm out(f.table(), 1);
  for (std::size_t i = 0; i < f.table()->num_coordinates(); ++i) out.add(bit(i), partial_derivative(f, i));
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& w) {
  const auto& table = w.table();
  DifferentialForm out(table, w.degree() < 0 ? -1 : w.degree() + 1);
  for (const auto& [b, c] : w.terms()) {
    for (std::size_t i = 0; i < table->num_coordinates(); ++i) {
      const int s = wedge_sign(bit(i), b);
      if (s == 0) continue;
      Polynomial dc = partial_derivative(c, i);
      if (dc.is_zero()) continue;
      out.add(b | bit(i), s < 0 ? -dc : dc);
    }
  }
  return out;
}

Multivector contract(const DifferentialForm& eta, const Multivector& a) {
  require_same_table(eta.table(), a.table());
  if (eta.degree() != 1) throw DomainError("contraction needs a 1-form");
  Multivector out(a.table(), std::max(a.degree() - 1, -1));
  if (a.degree() <= 0) return out;
  for (const auto& [b, c] : eta.terms()) {
    const auto i = static_cast<std::size_t>(std::countr_zero(b));
    out += c * odd_derivative_left(a, i);
  }
  return out;
}

Multivector schouten(const Multivector& a, const Multivector& b) {
  require_same_table(a.table(), b.table());
  const int da = a.degree(), db = b.degree();
  Multivector out(a.table(), da < 0 || db < 0 ? -1 : da + db - 1);
  if (out.degree() < 0) return out;
  const std::size_t n = a.table()->num_coordinates();
  const bool flip = ((da - 1) * (db - 1)) % 2 != 0;
  for (std::size_t i = 0; i < n; ++i) {
    out += wedge(odd_derivative_right(a, i), partial_derivative(b, i));
    Multivector second = wedge(odd_derivative_right(b, i), partial_derivative(a, i));
    if (flip)
      out += second;
    else
      out -= second;
  }
  return out;
}

DifferentialForm volume_contract(const Multivector& a) {
  const Blade all = all_coordinates(*a.table());
  const int n = static_cast<int>(a.table()->num_coordinates());
  DifferentialForm out(a.table(), a.degree() < 0 ? -1 : std::max(n - a.degree(), -1));
  for (const auto& [b, c] : a.terms()) out.add(all & ~b, wedge_sign(b, all & ~b) < 0 ? -c : c);
  return out;
}

Multivector volume_uncontract(const DifferentialForm& w) {
  const Blade all = all_coordinates(*w.table());
  const int n = static_cast<int>(w.table()->num_coordinates());
  Multivector out(w.table(), w.degree() < 0 ? -1 : std::max(n - w.degree(), -1));
  for (const auto& [b, c] : w.terms()) out.add(all & ~b, wedge_sign(all & ~b, b) < 0 ? -c : c);
  return out;
}

Multivector curl(const Multivector& a) {
  if (a.degree() <= 0 || a.degree() > static_cast<int>(a.table()->num_coordinates()))
    return Multivector(a.table(), std::max(a.degree() - 1, -1));
  return volume_uncontract(exterior_derivative(volume_contract(a)));
}

CurlResult curl(const Multivector& a, const Polynomial& unit) {
  require_same_table(a.table(), unit.table());
  if (unit.is_zero()) throw DomainError("degenerate volume form");
  Multivector base = curl(a);
  // (u Omega)^-1 d(u Omega(A)) = D(A) + Omega^-1(du ^ Omega(A)) / u
  Multivector correction(a.table(), base.degree());
  if (a.degree() > 0 && !a.is_zero()) correction = volume_uncontract(wedge(differential(unit), volume_contract(a)));
  return {std::move(base), std::move(correction), unit};
}

const char* kind_name(ElementaryAutomorphism::Kind k) {
  switch (k) {
    case ElementaryAutomorphism::Kind::translation:
      return "translation";
    case ElementaryAutomorphism::Kind::scaling:
      return "scaling";
    case ElementaryAutomorphism::Kind::shear:
      return "shear";
  }
  return "?";
}

Automorphism::Automorphism(TablePtr table, std::vector<Polynomial> forward, std::vector<Polynomial> inverse,
                           std::vector<ElementaryAutomorphism> steps)
    : table_(std::move(table)), forward_(std::move(forward)), inverse_(std::move(inverse)), steps_(std::move(steps)) {}

namespace {

std::vector<Polynomial> identity_images(const TablePtr& table) {
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < table->num_coordinates(); ++k) out.push_back(Polynomial::variable(table, k));
  return out;
}

// Coordinate images extended by the identity on parameters, for substitute().
std::vector<Polynomial> full_images(const TablePtr& table, const std::vector<Polynomial>& coords) {
  std::vector<Polynomial> out = coords;
  for (std::size_t k = table->num_coordinates(); k < table->size(); ++k)
    out.push_back(Polynomial::variable(table, k));
  return out;
}

}  // namespace

Automorphism Automorphism::identity(TablePtr table) {
  auto images = identity_images(table);
  return Automorphism(table, images, images, {});
}

Automorphism Automorphism::translation(TablePtr table, std::size_t coordinate, Polynomial shift) {
  require_same_table(table, shift.table());
  if (!table->is_coordinate(coordinate)) throw DomainError("translation of a non-coordinate");
  if (!shift.is_coordinate_free()) throw DomainError("translation shift must not depend on coordinates");
  auto fwd = identity_images(table), inv = fwd;
  fwd[coordinate] += shift;
  inv[coordinate] -= shift;
  ElementaryAutomorphism e{ElementaryAutomorphism::Kind::translation, coordinate, std::move(shift), {}};
  return Automorphism(table, std::move(fwd), std::move(inv), {std::move(e)});
}

Automorphism Automorphism::scaling(TablePtr table, std::vector<GaussRational> scales) {
  if (scales.size() != table->num_coordinates()) throw DomainError("one scale per coordinate is required");
  auto fwd = identity_images(table), inv = fwd;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    if (scales[k].is_zero()) throw DomainError("scaling factors must be nonzero");
    fwd[k] *= scales[k];
    inv[k] *= scales[k].inverse();
  }
  ElementaryAutomorphism e{ElementaryAutomorphism::Kind::scaling, 0, Polynomial(table), std::move(scales)};
  return Automorphism(table, std::move(fwd), std::move(inv), {std::move(e)});
}

Automorphism Automorphism::shear(TablePtr table, std::size_t coordinate, Polynomial g) {
  require_same_table(table, g.table());
  if (!table->is_coordinate(coordinate)) throw DomainError("shear of a non-coordinate");
  for (std::size_t k = 0; k <= coordinate; ++k)
    if (g.degree_in(k) > 0)
      throw DomainError("shear of " + table->name(coordinate) + " may only use later coordinates");
  auto fwd = identity_images(table), inv = fwd;
  fwd[coordinate] += g;
  inv[coordinate] -= g;
  ElementaryAutomorphism e{ElementaryAutomorphism::Kind::shear, coordinate, std::move(g), {}};
  return Automorphism(table, std::move(fwd), std::move(inv), {std::move(e)});
}

Automorphism Automorphism::from(const ElementaryAutomorphism& e, TablePtr table) {
  switch (e.kind) {
    case ElementaryAutomorphism::Kind::translation:
      return translation(table, e.coordinate, rebind(e.data, table));
    case ElementaryAutomorphism::Kind::scaling:
      return scaling(table, e.scales);
    case ElementaryAutomorphism::Kind::shear:
      return shear(table, e.coordinate, rebind(e.data, table));
  }
  throw DomainError("unknown automorphism kind");
}

Automorphism Automorphism::then(const Automorphism& next) const {
  require_same_table(table_, next.table_);
  // (next o this)(x) = next.forward(this.forward(x))
  const auto inner = full_images(table_, forward_);
  std::vector<Polynomial> fwd, inv;
  for (const auto& f : next.forward_) fwd.push_back(substitute(f, inner));
  const auto outer_inv = full_images(table_, next.inverse_);
  for (const auto& f : inverse_) inv.push_back(substitute(f, outer_inv));
  auto steps = steps_;
  steps.insert(steps.end(), next.steps_.begin(), next.steps_.end());
  return Automorphism(table_, std::move(fwd), std::move(inv), std::move(steps));
}

Automorphism Automorphism::inverted() const { return Automorphism(table_, inverse_, forward_, {}); }

namespace {

std::vector<GaussRational> apply_images(const TablePtr& table, const std::vector<Polynomial>& images,
                                        const std::vector<GaussRational>& point, const Assignment& params) {
  if (point.size() != table->num_coordinates()) throw DomainError("point does not match coordinates");
  Assignment at;
  for (std::size_t k = 0; k < point.size(); ++k) at.emplace(table->name(k), point[k]);
  std::vector<GaussRational> out;
  for (const auto& f : images) out.push_back(evaluate(f, at, params));
  return out;
}

}  // namespace

std::vector<GaussRational> Automorphism::apply(const std::vector<GaussRational>& point,
                                               const Assignment& params) const {
  return apply_images(table_, forward_, point, params);
}

std::vector<GaussRational> Automorphism::apply_inverse(const std::vector<GaussRational>& point,
                                                       const Assignment& params) const {
  return apply_images(table_, inverse_, point, params);
}

Multivector pushforward(const Automorphism& phi, const Multivector& a) {
  require_same_table(phi.table(), a.table());
  const auto& table = a.table();
  const std::size_t n = table->num_coordinates();
  const auto back = full_images(table, phi.inverse());

  // Image of d/dx_s: sum_j dphi_j/dx_s d/dy_j, expressed at x = phi^-1(y).
  std::vector<Multivector> columns;
  for (std::size_t s = 0; s < n; ++s) {
    Multivector col(table, 1);
    for (std::size_t j = 0; j < n; ++j) col.add(bit(j), substitute(partial_derivative(phi.forward()[j], s), back));
    columns.push_back(std::move(col));
  }

  Multivector out(table, a.degree());
  for (const auto& [b, c] : a.terms()) {
    Multivector piece = Multivector::scalar(substitute(c, back));
    for (std::size_t s : blade_indices(b)) piece = wedge(piece, columns[s]);
    out += piece;
  }
  return out;
}

}  // namespace pcalc
