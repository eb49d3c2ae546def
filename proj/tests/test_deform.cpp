#include <doctest.h>

#include <cmath>
#include <random>

#include "pcalc/deform.hpp"
#include "pcalc/error.hpp"

using namespace pcalc;

namespace {

constexpr std::uint64_t kSeed = 0xdef0;

using Kind = ElementaryAutomorphism::Kind;

// Entries uniform in [-1e6, 1e6] / 1e6.
DiagonalSpec base_spec(std::size_t n, std::mt19937_64& rng) { return random_generic_spec(n, rng, 1000000, 1000000); }

ElementaryAutomorphism translation(const DiagonalSpec& base, std::size_t coordinate, const char* data) {
  auto t = DeformationFamily::family_table(base, "t");
  return {Kind::translation, coordinate, parse_polynomial(data, t), {}};
}

ElementaryAutomorphism shear(const DiagonalSpec& base, std::size_t coordinate, const char* data) {
  auto t = DeformationFamily::family_table(base, "t");
  return {Kind::shear, coordinate, parse_polynomial(data, t), {}};
}

const std::vector<double> kShift{0.3, -0.2, 0.5, 1.0 / 7};

DeformationFamily translation_family(const DiagonalSpec& base) {
  std::vector<ElementaryAutomorphism> path;
  const char* data[] = {"3/10*t", "-1/5*t", "1/2*t", "1/7*t", "-t", "t/3"};
  for (std::size_t k = 0; k < base.n(); ++k) path.push_back(translation(base, k, data[k]));
  return DeformationFamily(base, path);
}

double distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

std::vector<Complex> origin(std::size_t n) { return std::vector<Complex>(n, Complex{0, 0}); }

}  // namespace

TEST_CASE("family construction") {
  std::mt19937_64 rng(kSeed);
  const DiagonalSpec base = base_spec(4, rng);
  const DeformationFamily constant(base, {});
  CHECK(constant.bivector() == rebind(make_diagonal(base).bivector(), constant.table()));
  const DeformationFamily fam = translation_family(base);
  CHECK(fam.jacobi().is_zero());
  CHECK(specialize(fam.bivector(), {{"t", 0}}) == rebind(make_diagonal(base).bivector(), fam.table()));
  CHECK(fam.table()->parameters() == std::vector<std::string>{"t"});
  const DeformationFamily sh(base, {shear(base, 0, "t*x2^2"), shear(base, 1, "x3 - t*x4^2")});
  CHECK(sh.jacobi().is_zero());
  CHECK(curl(sh.bivector()) == sh.curl_field());

  CHECK_THROWS_AS(DeformationFamily(DiagonalSpec::symbolic(4), {}), DomainError);
  CHECK_THROWS_AS(DeformationFamily(DiagonalSpec::numeric(3, {1, 2, 3}), {}), DomainError);
  CHECK_THROWS_WITH_AS(DeformationFamily(DiagonalSpec::numeric(2, {0}), {}), doctest::Contains("not generic"),
                       DomainError);
}

TEST_CASE("tracking at t = 0") {
  std::mt19937_64 rng(kSeed + 1);
  const DeformationFamily fam = translation_family(base_spec(4, rng));
  const TrackResult r = track_degenerate_point(fam, 0);
  CHECK(distance(r.gamma, origin(4)) == 0);
  CHECK(r.residual == 0);
  CHECK(r.jet0 == 0);
  CHECK(r.jet1 == 0);
  CHECK(r.certified(TrackOptions{}));
}

TEST_CASE("translation families move the degenerate point with the map") {
  std::mt19937_64 rng(kSeed + 2);
  for (std::size_t n : {2u, 4u, 6u}) {
    const DeformationFamily fam = translation_family(base_spec(n, rng));
    for (double t : {0.05, -0.2, 0.5, 1.0}) {
      const TrackResult r = track_degenerate_point(fam, t);
      std::vector<Complex> expect;
      const char* data[] = {"3/10", "-1/5", "1/2", "1/7", "-1", "1/3"};
      for (std::size_t k = 0; k < n; ++k) expect.push_back(parse_scalar(data[k]).to_complex() * t);
      CHECK(distance(r.gamma, expect) <= 1e-8);
      CHECK(r.certified(TrackOptions{}));
      CHECK(r.residual <= 1e-12);
    }
    const TrackResult c = track_degenerate_point(fam, Complex{0.1, 0.2});
    CHECK(c.certified(TrackOptions{}));
  }
}

TEST_CASE("shear families fix the origin") {
  std::mt19937_64 rng(kSeed + 3);
  const DiagonalSpec base = base_spec(4, rng);
  const DeformationFamily fam(base, {shear(base, 0, "t*x2^2"), shear(base, 2, "t^2*x4^3 + t*x4^2")});
  for (double t : {0.1, 0.5, -0.9}) {
    const TrackResult r = track_degenerate_point(fam, t);
    CHECK(distance(r.gamma, origin(4)) <= 1e-10);
    CHECK(r.certified(TrackOptions{}));
  }
}

TEST_CASE("continuity along the path") {
  std::mt19937_64 rng(kSeed + 4);
  const DeformationFamily fam = translation_family(base_spec(4, rng));
  const TrackResult a = track_degenerate_point(fam, 0.3), b = track_degenerate_point(fam, 0.35);
  CHECK(a.continuation_steps >= 30);
  CHECK(a.lipschitz > 0);
  CHECK(distance(a.gamma, b.gamma) <= std::max(a.lipschitz, b.lipschitz) * 0.05 * (1 + 1e-6));
  CHECK(a.lipschitz == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("jets at the degenerate point") {
  std::mt19937_64 rng(kSeed + 5);
  const DeformationFamily fam = translation_family(base_spec(4, rng));
  const TrackResult r = track_degenerate_point(fam, 0.4);
  const auto slots = fam.slots(r.gamma, r.t);
  CHECK(jet_vanishing(fam.bivector(), slots, 3) == 2);
  CHECK(jet_vanishing(wedge_power(fam.bivector(), 2), slots, 3) == 4);

  const PoissonStructure diag = make_diagonal(fam.base());
  const std::vector<Complex> zero(4);
  CHECK(jet_vanishing(diag.bivector(), zero, 3) == 2);
  auto t = make_table(2);
  const Multivector unit = Multivector::term(Polynomial(t, 1), make_blade({0, 1}));
  const std::vector<Complex> p{Complex{0.3, 1}, Complex{-2, 0}};
  CHECK(jet_vanishing(unit, p, 3) == 0);
  CHECK(jet_vanishing(Multivector(t, 2), p, 2) == 3);
  CHECK_THROWS_AS(jet_vanishing(unit, p, 4), DomainError);
}

TEST_CASE("evaluate_float") {
  auto t = make_table(2, {"l12"});
  const Multivector a = Multivector::term(parse_polynomial("x1", t), make_blade({0, 1}));
  CHECK(evaluate_float(a, std::vector<Complex>{2, 0, 0}) == std::vector<Complex>{2});
  const Multivector b = Multivector::term(parse_polynomial("l12*x1*x2", t), make_blade({0, 1}));
  CHECK(evaluate_float(b, std::vector<Complex>{1, 1, 3}) == std::vector<Complex>{3});
  CHECK_THROWS_AS(evaluate_float(b, std::vector<Complex>{1, 1}), DomainError);

  std::mt19937_64 rng(kSeed + 6);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  const DiagonalSpec spec = DiagonalSpec::symbolic(4);
  const Multivector pi = make_diagonal(spec).bivector();
  for (int k = 0; k < 100; ++k) {
    Assignment point, params;
    std::vector<Complex> slots;
    for (std::size_t s = 0; s < spec.table()->size(); ++s) {
      const GaussRational v(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
      (spec.table()->is_coordinate(s) ? point : params).emplace(spec.table()->name(s), v);
      slots.push_back(v.to_complex());
    }
    const auto values = evaluate_float(pi, slots);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j, ++idx) {
        const Complex exact = evaluate(pi.coefficient(make_blade({i, j})), point, params).to_complex();
        CHECK(std::abs(values[idx] - exact) <= 1e-14 * std::max(1.0, std::abs(exact)));
      }
  }
}

TEST_CASE("volume independence at the degenerate point") {
  std::mt19937_64 rng(kSeed + 7);
  const DeformationFamily fam = translation_family(base_spec(4, rng));
  const TrackResult r = track_degenerate_point(fam, 0.25);
  const auto slots = fam.slots(r.gamma, r.t);
  REQUIRE(r.jet0 <= 1e-10);
  REQUIRE(r.residual <= 1e-10);
  for (const char* u : {"1", "2 + x1^2", "3 - x2*x3 + t", "(1+i) + x4^3"}) {
    const Polynomial unit = parse_polynomial(u, fam.table());
    CHECK(curl_norm(fam.bivector(), unit, slots) <= 1e-8);
  }
  CHECK_THROWS_AS(curl_norm(fam.bivector(), parse_polynomial("x1 - 3/40", fam.table()), slots), DomainError);
}

TEST_CASE("grid scan finds only the origin") {
  std::mt19937_64 rng(kSeed + 8);
  for (std::size_t n : {2u, 4u}) {
    const auto hits = scan_degenerate_points(make_diagonal(random_generic_spec(n, rng, 20)), n == 2 ? 8 : 2);
    REQUIRE(hits.size() == 1);
    for (const auto& v : hits[0]) CHECK(v.is_zero());
  }
}

TEST_CASE("tracking errors") {
  std::mt19937_64 rng(kSeed + 9);
  const DeformationFamily fam = translation_family(base_spec(4, rng));
  TrackOptions o;
  CHECK_THROWS_AS(track_degenerate_point(fam, 1.5, o), DomainError);
  o.radius = 2;
  CHECK_NOTHROW(track_degenerate_point(fam, 1.5, o));
  TrackOptions strict;
  strict.tolerance = -1;
  CHECK_THROWS_WITH_AS(track_degenerate_point(fam, 0.1, strict), "left basin; reduce step", TrackingError);
  TrackOptions bad;
  bad.min_step = 0;
  CHECK_THROWS_AS(track_degenerate_point(fam, 0.1, bad), DomainError);
}
