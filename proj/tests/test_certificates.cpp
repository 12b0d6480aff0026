#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nqc/certificates.hpp"
#include "nqc/combinatorics.hpp"
#include "nqc/error.hpp"
#include "nqc/generators.hpp"

using namespace nqc;

namespace {

// Dense oracle: enumerate every multi-index and sum the products directly.
Tensor dense_sum(const RankCertificate& c) {
  Tensor out(c.shape);
  MultiIndex idx(c.shape.size(), 0);
  const std::size_t total = shape_volume(c.shape);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = c.shape.size(); i-- > 0;) {
      idx[i] = rest % c.shape[i];
      rest /= c.shape[i];
    }
    Scalar sum(0);
    for (const auto& term : c.terms) {
      Scalar prod(1);
      for (std::size_t i = 0; i < idx.size(); ++i) prod *= term[i][idx[i]];
      sum += prod;
    }
    out.set(idx, sum);
  }
  return out;
}

RankCertificate random_certificate(std::mt19937_64& rng, const Shape& shape, std::size_t r) {
  RankCertificate c{shape, {}};
  for (std::size_t a = 0; a < r; ++a) {
    SimpleTerm t;
    for (std::size_t d : shape) {
      Vector v;
      for (std::size_t x = 0; x < d; ++x) v.push_back(test::small_scalar(rng, true, 2));
      t.push_back(v);
    }
    c.terms.push_back(t);
  }
  return c;
}

RankCertificate diagonal_certificate(std::size_t r, std::size_t k) {
  RankCertificate c{Shape(k, r), {}};
  for (std::size_t a = 0; a < r; ++a) {
    Vector e(r, Scalar(0));
    e[a] = Scalar(1);
    c.terms.push_back(SimpleTerm(k, e));
  }
  return c;
}

}  // namespace

TEST_SUITE("certificates") {
  TEST_CASE("certificate_sum matches the dense oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
      const Shape shape{2, 3, 2};
      const RankCertificate c = random_certificate(rng, shape, 1 + trial % 4);
      CHECK(certificate_sum(c) == dense_sum(c));
    }
    CHECK(certificate_sum(gen_strassen7()) == dense_sum(gen_strassen7()));
  }

  TEST_CASE("Strassen and the 31-term decomposition") {
    const Verdict s = verify_rank_cert(gen_strassen7(), gen_mamu({2, 2, 2}), VerifyMode::kExact);
    CHECK(s.pass);
    CHECK(s.r == 7);
    const Verdict t = verify_rank_cert(gen_imm25_31(), gen_imm(2, 5), VerifyMode::kExact);
    CHECK(t.pass);
    CHECK(t.r == 31);
  }

  TEST_CASE("verification reports the first violation") {
    RankCertificate bad = gen_strassen7();
    bad.terms.pop_back();
    const Verdict v = verify_rank_cert(bad, gen_mamu({2, 2, 2}), VerifyMode::kExact);
    CHECK_FALSE(v.pass);
    REQUIRE(v.first_violation.has_value());
    const Tensor diff = tensor_sub(certificate_sum(bad), gen_mamu({2, 2, 2}));
    CHECK(*v.first_violation == diff.entries().begin()->first);
    CHECK_THROWS_AS(verify_rank_cert(gen_strassen7(), gen_ghz(2, 3), VerifyMode::kExact), ShapeError);
  }

  TEST_CASE("support mode ignores coefficient values") {
    RankCertificate c = diagonal_certificate(2, 3);
    c.terms[0][0][0] = Scalar(5);
    CHECK_FALSE(verify_rank_cert(c, gen_ghz(2, 3), VerifyMode::kExact).pass);
    CHECK(verify_rank_cert(c, gen_ghz(2, 3), VerifyMode::kSupport).pass);
  }

  TEST_CASE("border certificates for Str_q^k") {
    for (std::size_t q = 1; q <= 10; ++q) {
      const BorderCertificate c = gen_str_border(q, 5);
      CHECK(c.rank() == q + 1);
      CHECK(c.h == 1);
      CHECK(verify_border_cert(c, gen_str(q, 5)).pass);
    }
    BorderCertificate wrong = gen_str_border(3, 5);
    wrong.h = 0;
    CHECK_FALSE(verify_border_cert(wrong, gen_str(3, 5)).pass);
    CHECK_FALSE(verify_border_cert(gen_str_border(3, 5), tensor_scale(gen_str(3, 5), Scalar(2))).pass);
  }

  TEST_CASE("degeneration respects the c_h bound") {
    for (std::size_t q = 1; q <= 4; ++q) {
      const BorderCertificate c = gen_str_border(q, 5);
      const RankCertificate exact = degenerate_to_rank(c, gen_str(q, 5));
      CHECK(verify_rank_cert(exact, gen_str(q, 5), VerifyMode::kExact).pass);
      CHECK(exact.rank() <= binomial(5, 4) * c.rank());
    }
    CHECK_THROWS(degenerate_to_rank(gen_str_border(2, 5), gen_str(3, 5)));
  }

  TEST_CASE("tensor products of certificates") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
      const RankCertificate a = random_certificate(rng, {2, 2}, 2);
      const RankCertificate b = random_certificate(rng, {3}, 2);
      const RankCertificate ab = cert_tensor_product(a, b);
      CHECK(ab.rank() == 4);
      CHECK(verify_rank_cert(ab, tensor_product(certificate_sum(a), certificate_sum(b)), VerifyMode::kExact).pass);
    }
    const BorderCertificate bb = cert_tensor_product(gen_str_border(2, 3), gen_str_border(2, 3));
    CHECK(bb.h == 2);
    CHECK(bb.rank() == 9);
    const Tensor target = tensor_product(gen_str(2, 3), gen_str(2, 3));
    CHECK(verify_border_cert(bb, target).pass);
    const RankCertificate exact = degenerate_to_rank(bb, target);
    CHECK(verify_rank_cert(exact, target, VerifyMode::kExact).pass);
    CHECK(exact.rank() <= binomial(2 + 6 - 1, 6 - 1) * 9);
  }

  TEST_CASE("lifting an exact certificate") {
    const BorderCertificate l = lift_certificate(gen_strassen7());
    CHECK(l.h == 0);
    CHECK(verify_border_cert(l, gen_mamu({2, 2, 2})).pass);
    CHECK(degenerate_to_rank(l, gen_mamu({2, 2, 2})).rank() == 7);
  }

  TEST_CASE("malformed certificates") {
    RankCertificate c = gen_strassen7();
    c.terms[0][1].pop_back();
    CHECK_THROWS_AS(c.validate(), ShapeError);
  }
}
