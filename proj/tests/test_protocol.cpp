#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nqc/certificates.hpp"
#include "nqc/error.hpp"
#include "nqc/generators.hpp"
#include "nqc/laser.hpp"
#include "nqc/protocol.hpp"

using namespace nqc;

namespace {

RankCertificate ghz_certificate(std::size_t r, std::size_t k) {
  RankCertificate c{Shape(k, r), {}};
  for (std::size_t a = 0; a < r; ++a) {
    Vector e(r, Scalar(0));
    e[a] = Scalar(1);
    c.terms.push_back(SimpleTerm(k, e));
  }
  return c;
}

// Independent formula: product of 1/||A_j||_F^2 times |sum of the certificate at x|^2.
Rational oracle_probability(const RankCertificate& c, const MultiIndex& x) {
  Rational scale = 1;
  for (std::size_t j = 0; j < c.shape.size(); ++j) {
    Rational frob = 0;
    for (const auto& term : c.terms)
      for (const auto& v : term[j]) frob += v.norm2();
    scale /= frob;
  }
  return scale * certificate_sum(c).at(x).norm2();
}

}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("GHZ protocol") {
    const ProtocolSpec p = build_protocol(ghz_certificate(2, 3), gen_ghz(2, 3), VerifyMode::kExact);
    CHECK(p.r == 2);
    for (const auto& s : p.scale_sq) CHECK(s == Rational(1, 2));
    for (const auto& a : p.operators) CHECK(a == LinearMap::identity(2));
    CHECK(acceptance_probability(p, {0, 0, 0}) == Rational(1, 8));
    CHECK(acceptance_probability(p, {1, 1, 1}) == Rational(1, 8));
    CHECK(acceptance_probability(p, {0, 0, 1}) == 0);
    CHECK_THROWS_AS(acceptance_probability(p, {0, 0, 2}), ArgumentError);
    CHECK_THROWS_AS(acceptance_probability(p, {0, 0}), ArgumentError);
  }

  TEST_CASE("Strassen protocol computes cyclic equality") {
    const ProtocolSpec p = build_protocol(gen_strassen7(), gen_mamu({2, 2, 2}), VerifyMode::kExact);
    CHECK(p.r == 7);
    const FunctionTable eq = eq_cycle_function(3, 1);
    CHECK(eq.ones.size() == 8);
    const ProtocolVerdict v = verify_protocol(p, eq, true);
    CHECK(v.pass);
    CHECK(v.inputs_checked == 64);
    CHECK(v.accepted == 8);
    REQUIRE(v.min_positive.has_value());
    CHECK(*v.min_positive == Rational(1, 1728));
    for (const auto& [x, prob] : v.probabilities) {
      CHECK(prob == oracle_probability(gen_strassen7(), x));
      CHECK(prob <= 1);
      CHECK((prob > 0) == eq(x));
    }
  }

  TEST_CASE("31-term protocol on the 5-cycle") {
    const ProtocolSpec p = build_protocol(gen_imm25_31(), gen_imm(2, 5), VerifyMode::kExact);
    const ProtocolVerdict v = verify_protocol(p, eq_cycle_function(5, 1));
    CHECK(v.pass);
    CHECK(v.accepted == 32);
    CHECK(v.inputs_checked == 1024);
  }

  TEST_CASE("probabilities agree with the oracle on random certificates") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 25; ++trial) {
      RankCertificate c{{2, 2, 3}, {}};
      for (int a = 0; a < 3; ++a) {
        SimpleTerm term;
        for (std::size_t d : c.shape) {
          Vector v;
          for (std::size_t x = 0; x < d; ++x) v.push_back(test::small_scalar(rng, true, 2));
          term.push_back(v);
        }
        c.terms.push_back(term);
      }
      const Tensor sum = certificate_sum(c);
      if (sum.is_zero()) continue;
      bool zero_operator = false;
      for (std::size_t j = 0; j < 3; ++j) {
        bool all_zero = true;
        for (const auto& t : c.terms)
          for (const auto& s : t[j]) all_zero = all_zero && s.is_zero();
        zero_operator = zero_operator || all_zero;
      }
      if (zero_operator) continue;
      const Tensor target = indicator_tensor(sum.shape(), support(sum));
      const ProtocolSpec p = build_protocol(c, target, VerifyMode::kSupport);
      const ProtocolVerdict v = verify_protocol(p, FunctionTable::from_support(target), true);
      CHECK(v.pass);
      for (const auto& [x, prob] : v.probabilities) {
        CHECK(prob == oracle_probability(c, x));
        CHECK(prob <= 1);
      }
    }
  }

  TEST_CASE("wrong functions are rejected") {
    const ProtocolSpec p = build_protocol(ghz_certificate(2, 3), gen_ghz(2, 3), VerifyMode::kExact);
    FunctionTable all{{2, 2, 2}, {}};
    for (std::size_t x = 0; x < 8; ++x) all.ones.insert({x >> 2, (x >> 1) & 1, x & 1});
    const ProtocolVerdict v = verify_protocol(p, all);
    CHECK_FALSE(v.pass);
    REQUIRE(v.first_violation.has_value());
    CHECK(*v.first_violation == MultiIndex{0, 0, 1});
    CHECK_THROWS_AS(verify_protocol(p, eq_cycle_function(3, 1)), ShapeError);
  }

  TEST_CASE("build_protocol preconditions") {
    RankCertificate bad = gen_strassen7();
    bad.terms.pop_back();
    CHECK_THROWS_AS(build_protocol(bad, gen_mamu({2, 2, 2}), VerifyMode::kExact), ArgumentError);
    CHECK_THROWS_AS(build_protocol(ghz_certificate(2, 3), tensor_scale(gen_ghz(2, 3), Scalar(2)), VerifyMode::kSupport),
                    ArgumentError);
    RankCertificate padded = ghz_certificate(2, 3);
    padded.shape = {3, 2, 2};
    for (auto& t : padded.terms) t[0].push_back(Scalar(0));
    Tensor target({3, 2, 2});
    target.set({0, 0, 0}, Scalar(1));
    target.set({1, 1, 1}, Scalar(1));
    const ProtocolSpec p = build_protocol(padded, target, VerifyMode::kExact);
    CHECK(p.operators[0].rows() == 3);
    CHECK(verify_protocol(p, FunctionTable::from_support(target)).pass);
  }

  TEST_CASE("cyclic equality function") {
    for (std::size_t k = 3; k <= 5; ++k) {
      for (std::size_t n = 1; n <= 2; ++n) {
        const FunctionTable f = eq_cycle_function(k, n);
        CHECK(f.ones.size() == (std::size_t{1} << (n * k)));
        CHECK(f.to_tensor() == indicator_tensor(gen_imm(std::size_t{1} << n, k).shape(), support(gen_imm(std::size_t{1} << n, k))));
      }
    }
    CHECK_THROWS_AS(eq_cycle_function(5, 5), SizeCapError);
  }

  TEST_CASE("cleanup functional") {
    Tensor zero({2}), one({2}), plus({2});
    zero.set({0}, Scalar(1));
    one.set({1}, Scalar(1));
    plus.set({0}, Scalar(1));
    plus.set({1}, Scalar(1));
    Tensor minus = plus;
    minus.set({1}, Scalar(-1));
    const auto l = cleanup_functional({zero, one, plus, minus});
    for (const auto& t : {zero, one, plus, minus}) CHECK_FALSE(contract_all(t, l).is_zero());
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const Shape shape{2, 3, 2};
      std::vector<Tensor> psis;
      const int m = 1 + trial % 6;
      for (int i = 0; i < m; ++i) psis.push_back(test::random_tensor(rng, shape, 4));
      const auto cov = cleanup_functional(psis);
      for (const auto& psi : psis) CHECK_FALSE(contract_all(psi, cov).is_zero());
    }
    CHECK_THROWS_AS(cleanup_functional({Tensor({2})}), ArgumentError);
    CHECK_THROWS_AS(cleanup_functional({zero, Tensor({3})}), ShapeError);
  }
}
