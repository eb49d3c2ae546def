#include "pcalc/deform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>

#include "pcalc/error.hpp"

namespace pcalc {

TablePtr DeformationFamily::family_table(const DiagonalSpec& base, const std::string& parameter) {
  return make_table(base.table()->coordinates(), {parameter});
}

DeformationFamily::DeformationFamily(DiagonalSpec base, std::vector<ElementaryAutomorphism> path, std::string parameter)
    : base_(std::move(base)),
      path_(std::move(path)),
      parameter_(std::move(parameter)),
      table_(family_table(base_, parameter_)),
      phi_(Automorphism::identity(table_)),
      pi_t_(table_, 2),
      curl_t_(table_, 1) {
  if (!base_.is_numeric()) throw DomainError("family base must be numeric");
  if (base_.n() % 2 != 0) throw DomainError("family base needs an even number of coordinates");
  if (auto g = check_genericity(base_); !g.ok()) throw DomainError("base spec is not generic: " + g.describe());
  for (const auto& step : path_) phi_ = phi_.then(Automorphism::from(step, table_));
  pi_t_ = pushforward(phi_, rebind(make_diagonal(base_).bivector(), table_));
  curl_t_ = curl(pi_t_);
}

std::vector<Complex> DeformationFamily::slots(std::span<const Complex> point, Complex t) const {
  if (point.size() != base_.n()) throw DomainError("point has the wrong dimension");
  std::vector<Complex> v(point.begin(), point.end());
  v.push_back(t);
  return v;
}

namespace {

std::vector<Blade> all_blades(std::size_t n, int degree) {
  std::vector<Blade> out;
  if (degree < 0 || static_cast<std::size_t>(degree) > n) return out;
  for (Blade b = 0; b < (Blade{1} << n); ++b)
    if (std::popcount(b) == degree) out.push_back(b);
  std::sort(out.begin(), out.end(), BladeOrder{});
  return out;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

struct CurlSystem {
  std::size_t n;
  std::vector<Polynomial> f;                 // component i of the curl field
  std::vector<std::vector<Polynomial>> jac;  // d f_i / d x_j

  explicit CurlSystem(const Multivector& v) : n(v.table()->num_coordinates()) {
    for (std::size_t i = 0; i < n; ++i) f.push_back(v.coefficient(Blade{1} << i));
    jac.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) jac[i].push_back(partial_derivative(f[i], j));
  }

  Eigen::VectorXcd value(const std::vector<Complex>& s) const {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = evaluate_complex(f[i], s);
    return out;
  }

  Eigen::MatrixXcd jacobian(const std::vector<Complex>& s) const {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate_complex(jac[i][j], s);
    return out;
  }
};

// Newton at fixed t from `x`; returns iterations used or -1 on failure.
int newton(const CurlSystem& sys, std::vector<Complex>& s, const TrackOptions& o) {
  const std::size_t n = sys.n;
  for (int it = 0; it <= o.max_iterations; ++it) {
    const Eigen::VectorXcd fx = sys.value(s);
    if (!fx.allFinite()) return -1;
    if (fx.lpNorm<Eigen::Infinity>() <= o.tolerance) return it;
    if (it == o.max_iterations) break;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(sys.jacobian(s));
    if (!lu.isInvertible()) throw TrackingError("non-simple singularity");
    const Eigen::VectorXcd dx = lu.solve(fx);
    for (std::size_t k = 0; k < n; ++k) s[k] -= dx(static_cast<Eigen::Index>(k));
  }
  return -1;
}

}  // namespace

TrackResult track_degenerate_point(const DeformationFamily& family, Complex t, const TrackOptions& o) {
  if (!(std::abs(t) <= o.radius)) throw DomainError("|t| exceeds the tracking radius");
  if (o.initial_step <= 0 || o.min_step <= 0 || o.max_iterations < 1) throw DomainError("bad tracking options");
  const CurlSystem sys(family.curl_field());
  const std::size_t n = sys.n;

  TrackResult r;
  r.t = t;
  std::vector<Complex> s(n + 1, Complex{0, 0});
  const double length = std::abs(t);
  const Complex dir = length > 0 ? t / length : Complex{1, 0};

  int iters = newton(sys, s, o);
  if (iters < 0) throw TrackingError("left basin; reduce step");
  r.newton_iters = iters;

  double pos = 0, h = o.initial_step;
  while (pos < length) {
    const double next = std::min(pos + h, length);
    std::vector<Complex> trial = s;
    trial[n] = dir * next;
    iters = newton(sys, trial, o);
    if (iters < 0) {
      h /= 2;
      if (h < o.min_step) throw TrackingError("left basin; reduce step");
      continue;
    }
    double moved = 0;
    for (std::size_t k = 0; k < n; ++k) moved = std::max(moved, std::abs(trial[k] - s[k]));
    r.lipschitz = std::max(r.lipschitz, moved / (next - pos));
    r.newton_iters += iters;
    ++r.continuation_steps;
    s = std::move(trial);
    pos = next;
  }
  s[n] = t;

  r.gamma.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
  r.residual = sys.value(s).lpNorm<Eigen::Infinity>();
  r.jet0 = max_abs(evaluate_float(family.bivector(), s));
  for (std::size_t k = 0; k < n; ++k)
    r.jet1 = std::max(r.jet1, max_abs(evaluate_float(partial_derivative(family.bivector(), k), s)));
  return r;
}

std::vector<Complex> evaluate_float(const Multivector& a, std::span<const Complex> slots) {
  if (slots.size() != a.table()->size()) throw DomainError("slot vector has the wrong size");
  std::vector<Complex> out;
  for (Blade b : all_blades(a.table()->num_coordinates(), a.degree())) {
    auto it = a.terms().find(b);
    out.push_back(it == a.terms().end() ? Complex{0, 0} : evaluate_complex(it->second, slots));
  }
  return out;
}

namespace {

void multi_indices(std::size_t n, int order, std::size_t from, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (static_cast<int>(cur.size()) == order) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = from; k < n; ++k) {
    cur.push_back(k);
    multi_indices(n, order, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int jet_vanishing(const Multivector& a, std::span<const Complex> slots, int r, double tol) {
  if (r < 0 || r > 3) throw DomainError("jet order must be between 0 and 3");
  const std::size_t n = a.table()->num_coordinates();
  for (int k = 0; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> alphas;
    std::vector<std::size_t> cur;
    multi_indices(n, k, 0, cur, alphas);
    for (const auto& alpha : alphas) {
      // Taylor coefficient = derivative / alpha!
      double factorial = 1;
      for (std::size_t p = 0, run = 1; p < alpha.size(); ++p) {
        run = (p > 0 && alpha[p] == alpha[p - 1]) ? run + 1 : 1;
        factorial *= static_cast<double>(run);
      }
      Multivector d = a;
      for (std::size_t v : alpha) d = partial_derivative(d, v);
      if (max_abs(evaluate_float(d, slots)) / factorial > tol) return k;
    }
  }
  return r + 1;
}

double curl_norm(const Multivector& a, const Polynomial& unit, std::span<const Complex> slots) {
  const CurlResult c = curl(a, unit);
  const Complex u = evaluate_complex(unit, slots);
  if (u == Complex{0, 0}) throw DomainError("degenerate volume form");
  const auto poly = evaluate_float(c.polynomial_part, slots);
  const auto corr = evaluate_float(c.correction, slots);
  double m = 0;
  for (std::size_t k = 0; k < poly.size(); ++k) m = std::max(m, std::abs(poly[k] + corr[k] / u));
  return m;
}

std::vector<std::vector<GaussRational>> scan_degenerate_points(const PoissonStructure& pi, unsigned steps_per_unit,
                                                               const Assignment& params) {
  if (steps_per_unit == 0) throw DomainError("grid needs at least one step per unit");
  const std::size_t n = pi.dimension();
  const Multivector v = curl(pi.bivector());
  const long side = 2 * static_cast<long>(steps_per_unit) + 1;
  std::vector<long> idx(n, 0);
  std::vector<std::vector<GaussRational>> hits;
  for (;;) {
    Assignment point;
    std::vector<GaussRational> coords;
    for (std::size_t k = 0; k < n; ++k) {
      coords.push_back(GaussRational::fraction(idx[k] - static_cast<long>(steps_per_unit), steps_per_unit));
      point[pi.table()->name(k)] = coords.back();
    }
    bool zero = true;
    for (const auto& [b, c] : pi.bivector().terms())
      if (!(zero = evaluate(c, point, params).is_zero())) break;
    if (zero)
      for (const auto& [b, c] : v.terms())
        if (!(zero = evaluate(c, point, params).is_zero())) break;
    if (zero) hits.push_back(coords);
    std::size_t k = 0;
    while (k < n && ++idx[k] == side) idx[k++] = 0;
    if (k == n) break;
  }
  return hits;
}

}  // namespace pcalc
