#include <doctest.h>

#include "nqc/error.hpp"
#include "nqc/generators.hpp"
#include "nqc/laser.hpp"

using namespace nqc;

TEST_SUITE("generators") {
  TEST_CASE("matrix multiplication tensors") {
    const Tensor one = gen_mamu({1, 1, 1});
    CHECK(one.shape() == Shape{1, 1, 1});
    CHECK(one.nnz() == 1);
    const Tensor m = gen_mamu({2, 2, 2});
    CHECK(m.shape() == Shape{4, 4, 4});
    CHECK(m.nnz() == 8);
    // x = (1, 0, 1): parties hold (x0 x1), (x1 x2), (x2 x0).
    CHECK(m.at({2, 1, 3}) == Scalar(1));
    const Tensor u = gen_mamu({2, 3, 1});
    CHECK(u.shape() == Shape{6, 3, 2});
    CHECK(u.nnz() == 6);
    CHECK(gen_imm(2, 5).nnz() == 32);
    CHECK(gen_imm(2, 5).shape() == Shape(5, 4));
    CHECK(gen_imm(1, 4).nnz() == 1);
    CHECK_THROWS_AS(gen_mamu({2}), ArgumentError);
    CHECK_THROWS_AS(gen_mamu({2, 0, 2}), ArgumentError);
  }

  TEST_CASE("GHZ tensors") {
    const Tensor g = gen_ghz(2, 3);
    CHECK(g.nnz() == 2);
    CHECK(g.at({0, 0, 0}) == Scalar(1));
    CHECK(g.at({1, 1, 1}) == Scalar(1));
    CHECK(gen_ghz(1, 4).nnz() == 1);
  }

  TEST_CASE("graph equality tensors") {
    Multigraph edge{2, {{0, 1}}};
    CHECK(gen_eq_graph(edge, 1) == gen_ghz(2, 2));
    const Tensor path = gen_eq_graph(Multigraph::path(2), 1);
    CHECK(path.order() == 3);
    CHECK(path.nnz() == 4);
    // The k-cycle gives IMM_{2^n}^k after relabeling.
    for (std::size_t k : {3, 4, 5}) {
      CHECK(iso_relabel_check(gen_eq_graph(Multigraph::cycle(k), 1), gen_imm(2, k), true).has_value());
    }
    CHECK(iso_relabel_check(gen_eq_graph(Multigraph::cycle(3), 2), gen_imm(4, 3), true).has_value());
    CHECK_THROWS_AS(gen_eq_graph(Multigraph{2, {{0, 0}}}, 1), ArgumentError);
  }

  TEST_CASE("bipartite graphs: flattening across the sides is full") {
    // Trivial protocol optimality: rank 2^{n e} across the bipartition.
    struct Case {
      Multigraph g;
      std::vector<std::size_t> side;
    };
    const std::vector<Case> cases = {
        {Multigraph::path(3), {0, 2}},
        {Multigraph::cycle(4), {0, 2}},
        {Multigraph::star(3), {0}},
        {Multigraph{2, {{0, 1}, {0, 1}}}, {0}},
    };
    for (const auto& c : cases) {
      const std::size_t e = c.g.edges.size();
      CHECK(matrix_rank_exact(flatten(gen_eq_graph(c.g, 1), c.side)) == (std::size_t{1} << e));
    }
  }

  TEST_CASE("Str_q^k") {
    CHECK(gen_str(1, 5).nnz() == 2);
    for (std::size_t q = 1; q <= 6; ++q) CHECK(gen_str(q, 5).nnz() == 2 * q);
    CHECK(gen_str(3, 5).shape() == Shape{4, 3, 4, 1, 1});
    CHECK(matrix_rank_exact(flatten(gen_str(2, 5), {1, 2})) == 3);
    CHECK_THROWS_AS(gen_str(0, 5), ArgumentError);
  }

  TEST_CASE("symmetrizers") {
    CHECK(cyclic_sum_symmetrize(gen_imm(2, 3)) == tensor_scale(gen_imm(2, 3), Scalar(3)));
    Tensor e({2, 2, 2, 2, 2});
    e.set({1, 0, 0, 0, 0}, Scalar(1));
    CHECK(cyclic_sum_symmetrize(e).nnz() == 5);
    CHECK(local_symmetrize_sym2(gen_ghz(2, 3)) == tensor_scale(gen_ghz(2, 3), Scalar(2)));
    CHECK(label_swap(label_swap(gen_imm(2, 3))) == gen_imm(2, 3));
    CHECK_THROWS_AS(label_swap(gen_ghz(3, 2)), ShapeError);
    CHECK_THROWS_AS(cyclic_sum_symmetrize(gen_mamu({1, 2, 3})), ShapeError);
  }

  TEST_CASE("cyclic shift product") {
    const Tensor p = cyclic_shift_product(gen_str(2, 5));
    CHECK(p.nnz() == 4 * 4 * 4 * 4 * 4);
    // Each party collects q+1, q, q+1, 1, 1 once: q (q+1)^2.
    CHECK(p.shape() == Shape(5, 2 * 3 * 3));
    CHECK(iso_relabel_check(cyclic_shift_product(gen_ghz(2, 3)), gen_ghz(8, 3), true).has_value());
  }
}
