#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nqc/certificates.hpp"
#include "nqc/combinatorics.hpp"
#include "nqc/error.hpp"
#include "nqc/generators.hpp"
#include "nqc/lower_bounds.hpp"

using namespace nqc;

namespace {

std::size_t inversions(const std::vector<std::size_t>& seq) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b) count += seq[a] > seq[b] ? 1 : 0;
  return count;
}

// Wedge map rebuilt from the definition: write the word, count inversions.
LinearMap exterior_oracle(std::size_t n, std::size_t p, WedgeSign sign) {
  const std::size_t m = 2 * n - 1;
  const auto lower = k_subsets(m, p);
  const auto upper = k_subsets(m, p + 1);
  LinearMap out(lower.size() * upper.size(), m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t a = 0; a < lower.size(); ++a) {
      const auto& P = lower[a];
      if (std::find(P.begin(), P.end(), j) != P.end()) continue;
      std::vector<std::size_t> word = P;
      if (sign == WedgeSign::kAppend) {
        word.push_back(j);
      } else {
        word.insert(word.begin(), j);
      }
      std::vector<std::size_t> Q = word;
      std::sort(Q.begin(), Q.end());
      const std::size_t b = static_cast<std::size_t>(std::find(upper.begin(), upper.end(), Q) - upper.begin());
      out.set(a * upper.size() + b, j, Scalar(inversions(word) % 2 == 0 ? 1 : -1));
    }
  }
  return out;
}

AlphaTable random_alphas(std::mt19937_64& rng, std::size_t n) {
  AlphaTable a = AlphaTable::ones(n);
  for (auto& v : a.values) v = test::nonzero_rational(rng);
  return a;
}

}  // namespace

TEST_SUITE("lower_bounds") {
  TEST_CASE("flattening bounds") {
    CHECK(flattening_bound(gen_imm(2, 3)).bound == 4);
    for (const auto& [parts, rank] : flattening_bound(gen_imm(2, 3)).ranks) CHECK(rank == 4);
    CHECK(flattening_bound(gen_imm(2, 3)).ranks.size() == 3);
    CHECK(flattening_bound(gen_imm(2, 4), std::vector<std::vector<std::size_t>>{{0, 2}}).bound == 16);
    CHECK(flattening_bound(gen_imm(2, 4)).bound == 16);
    CHECK(flattening_bound(gen_imm(2, 6), std::vector<std::vector<std::size_t>>{{0, 2, 4}}).bound == 64);
    for (std::size_t r = 1; r <= 4; ++r) CHECK(flattening_bound(gen_ghz(r, 4)).bound == r);
    CHECK_THROWS_AS(flattening_bound(Tensor(Shape{1})), ArgumentError);
  }

  TEST_CASE("flattening never exceeds a verified rank") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      RankCertificate c{{2, 3, 2}, {}};
      const std::size_t r = 1 + trial % 3;
      for (std::size_t a = 0; a < r; ++a) {
        SimpleTerm term;
        for (std::size_t d : c.shape) {
          Vector v;
          for (std::size_t x = 0; x < d; ++x) v.push_back(test::small_scalar(rng));
          term.push_back(v);
        }
        c.terms.push_back(term);
      }
      const Tensor t = certificate_sum(c);
      REQUIRE(verify_rank_cert(c, t, VerifyMode::kExact).pass);
      CHECK(flattening_bound(t).bound <= r);
    }
    CHECK(flattening_bound(gen_mamu({2, 2, 2})).bound <= 7);
  }

  TEST_CASE("exterior maps agree with the inversion-count oracle") {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t p = 0; p <= 2 * n - 2; ++p) {
        for (WedgeSign s : {WedgeSign::kAppend, WedgeSign::kPrepend}) {
          CHECK(exterior_map(n, p, s) == exterior_oracle(n, p, s));
        }
        for (std::size_t j = 0; j < 2 * n - 1; ++j) {
          CHECK(matrix_rank_exact(exterior_image(n, p, j)) == binomial(2 * n - 2, p));
        }
      }
    }
    const LinearMap one = exterior_map(1, 0);
    CHECK(one.rows() == 1);
    CHECK(one.cols() == 1);
    CHECK(one.at(0, 0) == Scalar(1));
    CHECK_THROWS_AS(exterior_map(2, 3), ArgumentError);
  }

  TEST_CASE("middle compression") {
    CHECK(middle_compression(1) == LinearMap::identity(1));
    const LinearMap m = middle_compression(2);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 4);
    CHECK(m.nnz() == 4);
    CHECK(m.at(0, 0) == Scalar(1));
    CHECK(m.at(1, 1) == Scalar(1));
    CHECK(m.at(1, 2) == Scalar(1));
    CHECK(m.at(2, 3) == Scalar(1));
    for (std::size_t n = 1; n <= 5; ++n) {
      for (const auto& col : middle_compression(n).columns()) {
        REQUIRE(col.size() == 1);
        CHECK(col[0].second == Scalar(1));
      }
    }
  }

  TEST_CASE("Young flattening with unit coefficients") {
    const std::size_t ranks[] = {1, 12, 90, 560};
    for (std::size_t n = 1; n <= 4; ++n) {
      const YoungFlatteningReport r = young_flattening_imm3(AlphaTable::ones(n));
      CHECK(r.p == n - 1);
      CHECK(r.e == binomial(2 * n - 2, n - 1));
      CHECK(r.matrix_rank == ranks[n - 1]);
      CHECK(r.matrix_rank == n * n * binomial(2 * n - 1, n - 1));
      CHECK(r.bound == 2 * n * n - n);
      CHECK(r.bound == young_bound_formula(n, 3));
      if (n >= 2) CHECK(r.bound > flattening_bound(gen_imm(n, 3)).bound);
    }
    const YoungFlatteningReport r = young_flattening_imm3(AlphaTable::ones(2), {5, WedgeSign::kPrepend});
    CHECK(r.matrix_rank == 12);
  }

  TEST_CASE("Young flattening with random nonzero coefficients") {
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int trial = 0; trial < 100; ++trial) {
        const YoungFlatteningReport r = young_flattening_imm3(random_alphas(rng, n));
        CHECK(r.matrix_rank == n * n * binomial(2 * n - 1, n - 1));
        CHECK(r.bound == 2 * n * n - n);
      }
    }
  }

  TEST_CASE("Young flattening: blocks and errors") {
    const auto blocks = young_flattening_blocks(AlphaTable::ones(3));
    CHECK(blocks.size() == 3);
    std::size_t total = 0;
    for (const auto& b : blocks) total += matrix_rank_exact(b);
    CHECK(total == 90);
    CHECK(matrix_rank_exact(young_flattening_matrix(AlphaTable::ones(3))) == 90);
    AlphaTable zero = AlphaTable::ones(2);
    zero.values[3] = Scalar(0);
    CHECK_THROWS_AS(young_flattening_imm3(zero), ArgumentError);
    CHECK_THROWS_AS(young_flattening_imm3(AlphaTable::ones(6)), SizeCapError);
  }

  TEST_CASE("Young triangularity argument") {
    for (std::size_t n = 1; n <= 4; ++n) CHECK(young_triangularity_check(n));
  }

  TEST_CASE("closed forms") {
    CHECK(young_bound_formula(2, 3) == 6);
    CHECK(young_bound_formula(2, 5) == 24);
    CHECK(young_bound_formula(3, 5) == 135);
    for (std::uint64_t k = 3; k <= 11; k += 2) CHECK(young_bound_formula(1, k) == 1);
    CHECK_THROWS_AS(young_bound_formula(2, 4), ArgumentError);
    CHECK_THROWS_AS(young_bound_formula(2, 1), ArgumentError);
    CHECK(classical_bound(3, 1) == 3);
    CHECK(classical_bound(5, 2) == 10);
    CHECK(classical_bound(2, 1) == 2);
  }

  TEST_CASE("min-cut message bound") {
    const MincutReport k5 = mincut_message_bound(Multigraph::complete(5), 1);
    CHECK(k5.mincut == 4);
    CHECK(k5.feasible);
    CHECK(k5.edge_lower_bound == 3);
    CHECK(k5.edge_count == 10);
    const MincutReport c5 = mincut_message_bound(Multigraph::cycle(5), 3);
    CHECK(c5.mincut == 2);
    CHECK_FALSE(c5.feasible);
    CHECK(c5.edge_lower_bound == 8);
    for (std::size_t n = 2; n <= 4; ++n) {
      const MincutReport s = mincut_message_bound(Multigraph::star(4), n);
      CHECK(s.mincut == 1);
      CHECK_FALSE(s.feasible);
    }
    const MincutReport split = mincut_message_bound(Multigraph{4, {{0, 1}, {2, 3}}}, 1);
    CHECK_FALSE(split.connected);
    CHECK(split.mincut == 0);
    CHECK_FALSE(split.feasible);
  }

  TEST_CASE("min-cut never exceeds the minimum degree") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t v = 2 + trial % 7;
      Multigraph g{v, {}};
      std::uniform_int_distribution<std::size_t> pick(0, v - 1);
      const std::size_t e = std::uniform_int_distribution<std::size_t>(1, 3 * v)(rng);
      while (g.edges.size() < e) {
        const std::size_t a = pick(rng), b = pick(rng);
        if (a != b) g.edges.emplace_back(a, b);
      }
      const MincutReport r = mincut_message_bound(g, 1);
      const auto deg = g.degrees();
      CHECK(r.mincut <= *std::min_element(deg.begin(), deg.end()));
      CHECK(r.min_degree == *std::min_element(deg.begin(), deg.end()));
    }
  }

  TEST_CASE("log-rank envelope") {
    const double l7 = std::log2(7.0);
    const LogrankEnvelope a = logrank_envelope(3, l7);
    CHECK(a.nq0_lower == doctest::Approx(2.807354922057604).epsilon(1e-12));
    CHECK(a.nq0_upper == doctest::Approx(5.614709844115208).epsilon(1e-12));
    CHECK(a.nq0_asymptotic == doctest::Approx(4.211032383086406).epsilon(1e-12));
    const LogrankEnvelope b = logrank_envelope(2, 6);
    CHECK(b.nq0_lower == 6);
    CHECK(b.nq0_upper == 6);
    CHECK(b.nq0_asymptotic == 6);
    const LogrankEnvelope c = logrank_envelope(5, 1);
    CHECK(c.nq0_upper == 4);
    CHECK(c.nq0_asymptotic == 2.5);
    CHECK_FALSE(c.caveat.empty());
  }
}
