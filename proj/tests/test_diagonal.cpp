#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcalc/diagonal.hpp"
#include "pcalc/error.hpp"
#include "pcalc/linalg.hpp"

using namespace pcalc;

namespace {

constexpr std::uint64_t kSeed = 0xd1a6;

Polynomial P(const char* s, const TablePtr& t) { return parse_polynomial(s, t); }

DenseMatrix numeric_matrix(const SkewMatrix& m) {
  DenseMatrix out(m.size(), std::vector<GaussRational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = *m[i][j].constant_value();
  return out;
}

Multivector top_blade(const TablePtr& t, std::size_t n, const Polynomial& coeff) {
  Exponents e(t->size(), 0);
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1;
    idx.push_back(k);
  }
  return Multivector::term(coeff * Polynomial::monomial(t, e), make_blade(idx));
}

}  // namespace

TEST_CASE("make_diagonal") {
  const PoissonStructure two = make_diagonal(DiagonalSpec::numeric(2, {1}));
  CHECK(two.bivector() == Multivector::term(P("x1*x2", two.table()), make_blade({0, 1})));
  CHECK(two.integrability() == Integrability::verified_true);
  const PoissonStructure sym = make_diagonal(DiagonalSpec::symbolic(4));
  CHECK(sym.integrability() == Integrability::verified_true);
  CHECK(schouten(sym.bivector(), sym.bivector()).is_zero());
  CHECK(make_diagonal(DiagonalSpec::numeric(4, std::vector<GaussRational>(6))).bivector().is_zero());
  CHECK(make_diagonal(DiagonalSpec::symbolic(8)).integrability() == Integrability::verified_true);
}

TEST_CASE("spec construction") {
  const DiagonalSpec s = DiagonalSpec::symbolic(4);
  CHECK(s.table()->parameters() == std::vector<std::string>{"l12", "l13", "l14", "l23", "l24", "l34"});
  CHECK(lambda_name(10, 1, 10) == "l1_10");
  CHECK(s.lambda(2, 0) == -P("l13", s.table()));
  CHECK(s.lambda(1, 1).is_zero());
  CHECK_FALSE(s.is_numeric());
  CHECK_THROWS_AS(s.value(0, 1), DomainError);
  const DiagonalSpec num = DiagonalSpec::numeric(3, {1, GaussRational::fraction(2, 3), 5});
  CHECK(num.value(2, 0) == GaussRational::fraction(-2, 3));
  CHECK_THROWS_AS(DiagonalSpec::numeric(3, {1, 2}), DomainError);
  auto t = make_table(2);
  CHECK_THROWS_AS(DiagonalSpec(t, {P("x1", t)}), DomainError);
}

TEST_CASE("pfaffian examples") {
  const DiagonalSpec s2 = DiagonalSpec::symbolic(2);
  CHECK(pfaffian(lambda_matrix(s2)) == P("l12", s2.table()));
  const DiagonalSpec s4 = DiagonalSpec::symbolic(4);
  CHECK(pfaffian(lambda_matrix(s4)) == P("l12*l34 - l13*l24 + l14*l23", s4.table()));
  const DiagonalSpec s6 = DiagonalSpec::symbolic(6);
  CHECK(pfaffian(lambda_matrix(s6)) == oracle::pfaffian(lambda_matrix(s6)));
  CHECK(pfaffian(lambda_matrix(s6)).size() == 15);
  CHECK_THROWS_AS(pfaffian(lambda_matrix(DiagonalSpec::symbolic(3))), DomainError);
  SkewMatrix bad = lambda_matrix(s2);
  bad[1][0] = bad[0][1];
  CHECK_THROWS_AS(pfaffian(bad), DomainError);
}

TEST_CASE("pfaffian squared is the determinant") {
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 50; ++k) {
    const SkewMatrix m = lambda_matrix(random_spec(6, rng, 1000000, 7));
    const GaussRational pf = *pfaffian(m).constant_value();
    CHECK(pf * pf == oracle::determinant(numeric_matrix(m)));
  }
  const SkewMatrix sym = lambda_matrix(DiagonalSpec::symbolic(4));
  const Polynomial pf = pfaffian(sym);
  CHECK(pf * pf == oracle::determinant(sym));
}

TEST_CASE("wedge powers factor through the pfaffian") {
  std::mt19937_64 rng(kSeed + 1);
  GaussRational factorial = 1;
  for (std::size_t m = 1; m <= 4; ++m) {
    factorial *= GaussRational(static_cast<long>(m));
    const std::size_t n = 2 * m;
    std::vector<DiagonalSpec> specs{random_spec(n, rng, 1000)};
    if (m <= 3) specs.push_back(DiagonalSpec::symbolic(n));
    for (const auto& spec : specs) {
      const Multivector pi = make_diagonal(spec).bivector();
      CHECK(wedge_power(pi, static_cast<unsigned>(m)) ==
            top_blade(spec.table(), n, factorial * pfaffian(lambda_matrix(spec))));
    }
  }
}

TEST_CASE("curl eigenvalues") {
  const DiagonalSpec s2 = DiagonalSpec::symbolic(2);
  const auto mu2 = curl_eigenvalues(s2);
  CHECK(mu2 == std::vector<Polynomial>{P("l12", s2.table()), P("-l12", s2.table())});
  for (const auto& mu : curl_eigenvalues(DiagonalSpec::numeric(4, std::vector<GaussRational>(6))))
    CHECK(mu.is_zero());
  for (std::size_t n = 1; n <= 8; ++n) {
    const DiagonalSpec spec = DiagonalSpec::symbolic(n);
    const auto mu = curl_eigenvalues(spec);
    Polynomial sum(spec.table());
    Multivector expect(spec.table(), 1);
    for (std::size_t i = 0; i < n; ++i) {
      sum += mu[i];
      expect.add(make_blade({i}), mu[i] * Polynomial::variable(spec.table(), i));
    }
    CHECK(sum.is_zero());
    CHECK(curl(make_diagonal(spec).bivector()) == expect);
  }
}

TEST_CASE("restricted specs") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const DiagonalSpec spec = DiagonalSpec::symbolic(n);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> keep;
      for (std::size_t k = 0; k < n; ++k)
        if (mask >> k & 1) keep.push_back(k);
      const DiagonalSpec sub = spec.restricted(keep);
      const auto mu = curl_eigenvalues(sub);
      for (std::size_t a = 0; a < keep.size(); ++a) {
        Polynomial expect(sub.table());
        for (std::size_t b = 0; b < keep.size(); ++b) expect += rebind(spec.lambda(keep[a], keep[b]), sub.table());
        CHECK(mu[a] == expect);
      }
    }
  }
  const DiagonalSpec sub = DiagonalSpec::symbolic(4).restricted({0, 2, 3});
  CHECK(sub.table()->coordinates() == std::vector<std::string>{"x1", "x3", "x4"});
  CHECK(sub.lambda(0, 1) == P("l13", sub.table()));
}

TEST_CASE("log annihilator") {
  const DiagonalSpec s3 = DiagonalSpec::symbolic(3);
  const LogForm w3 = log_annihilator(s3);
  CHECK(w3.residues == std::vector<Polynomial>{P("l23", s3.table()), P("-l13", s3.table()), P("l12", s3.table())});
  CHECK(w3.holomorphic_part.is_zero());
  CHECK(contract(w3.cleared(), make_diagonal(s3).bivector()).is_zero());
  CHECK(w3.residue_at_infinity() == P("-l23 + l13 - l12", s3.table()));

  const DiagonalSpec s5 = DiagonalSpec::symbolic(5);
  const LogForm w5 = log_annihilator(s5);
  CHECK(contract(w5.cleared(), make_diagonal(s5).bivector()).is_zero());
  const SkewMatrix m5 = lambda_matrix(s5);
  for (std::size_t i = 0; i < 5; ++i) {
    Polynomial row(s5.table());
    for (std::size_t j = 0; j < 5; ++j) row += m5[i][j] * w5.residues[j];
    CHECK(row.is_zero());
  }

  std::mt19937_64 rng(kSeed + 2);
  for (int k = 0; k < 20; ++k) {
    const DiagonalSpec spec = random_generic_spec(5, rng, 1000);
    const LogForm w = log_annihilator(spec);
    std::vector<SparseRow> rows(5);
    const SkewMatrix m = lambda_matrix(spec);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        if (!m[i][j].is_zero()) rows[i][j] = *m[i][j].constant_value();
    const auto kernel = nullspace(rows, 5);
    REQUIRE(kernel.size() == 1);
    std::size_t first = 0;
    while (kernel[0][first].is_zero()) ++first;
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(*w.residues[i].constant_value() == kernel[0][i] / kernel[0][first]);
    CHECK(*w.residues[first].constant_value() == GaussRational(1));
    CHECK(contract(w.cleared(), make_diagonal(spec).bivector()).is_zero());
  }

  const LogForm single = log_annihilator(DiagonalSpec::numeric(3, {0, 0, 4}));
  CHECK(*single.residues[0].constant_value() == GaussRational(1));
  CHECK(single.residues[1].is_zero());
  CHECK(single.residues[2].is_zero());
  CHECK_THROWS_WITH_AS(log_annihilator(DiagonalSpec::numeric(3, {0, 0, 0})), "non-generic spec", DomainError);
  CHECK_THROWS_WITH_AS(log_annihilator(DiagonalSpec::numeric(5, std::vector<GaussRational>(10))), "non-generic spec",
                       DomainError);
  CHECK_THROWS_AS(log_annihilator(DiagonalSpec::symbolic(4)), DomainError);
}

TEST_CASE("genericity") {
  CHECK(check_genericity(DiagonalSpec::numeric(4, std::vector<GaussRational>(6))).describe() ==
        "vanishing Pfaffian, some mu_i = 0, repeated mu_i");
  const Genericity g = check_genericity(DiagonalSpec::numeric(2, {1}));
  CHECK(g.ok());
  CHECK(g.describe() == "generic");
  CHECK_FALSE(check_genericity(DiagonalSpec::numeric(3, {1, 0, 2})).mu_distinct);
  CHECK_THROWS_AS(check_genericity(DiagonalSpec::symbolic(2)), DomainError);

  std::mt19937_64 rng(kSeed + 3);
  int rejected = 0;
  for (int k = 0; k < 200; ++k) rejected += !check_genericity(random_spec(4, rng, 1)).ok();
  CHECK(rejected > 0);
  for (int k = 0; k < 50; ++k) {
    const DiagonalSpec spec = random_generic_spec(4, rng, 2);
    CHECK(check_genericity(spec).ok());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        CHECK(spec.value(i, j).is_real());
      }
  }
  const DiagonalSpec scaled = random_generic_spec(6, rng, 1000000, 1000000);
  for (std::size_t j = 1; j < 6; ++j) CHECK(abs(scaled.value(0, j).re()) <= 1);
}
