#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nqc/combinatorics.hpp"
#include "nqc/error.hpp"
#include "nqc/generators.hpp"
#include "nqc/tensor.hpp"

using namespace nqc;

TEST_SUITE("tensor") {
  TEST_CASE("storage never keeps zeros") {
    Tensor t({2, 2});
    t.add({0, 1}, Scalar(3));
    t.add({0, 1}, Scalar(-3));
    CHECK(t.is_zero());
    t.set({1, 1}, Scalar(2));
    t.set({1, 1}, Scalar(0));
    CHECK(t.nnz() == 0);
    CHECK_THROWS_AS(t.set({2, 0}, Scalar(1)), ShapeError);
    CHECK_THROWS_AS(t.at({0}), ShapeError);
  }

  TEST_CASE("order-0 tensor acts as a scalar") {
    Tensor s(Shape{});
    s.set({}, Scalar(5));
    Tensor t({2});
    t.set({1}, Scalar(2));
    const Tensor p = tensor_product(s, t);
    CHECK(p.shape() == Shape{2});
    CHECK(p.at({1}) == Scalar(10));
  }

  TEST_CASE("permutations and cyclic shifts") {
    const Tensor m = gen_mamu({1, 2, 3});
    const Tensor shifted = cyclic_shift(m, 1);
    CHECK(shifted.shape() == Shape{3, 2, 6});
    CHECK(cyclic_shift(cyclic_shift(shifted, 1), 1) == m);
    CHECK(permute_parties(m, {0, 1, 2}) == m);
    CHECK_THROWS_AS(permute_parties(m, {0, 0, 1}), ArgumentError);
  }

  TEST_CASE("kron_parties indexes a-major") {
    Tensor a({2, 1});
    a.set({1, 0}, Scalar(2));
    Tensor b({3, 2});
    b.set({2, 1}, Scalar(5));
    const Tensor k = kron_parties(a, b);
    CHECK(k.shape() == Shape{6, 2});
    CHECK(k.nnz() == 1);
    CHECK(k.at({1 * 3 + 2, 0 * 2 + 1}) == Scalar(10));
  }

  TEST_CASE("flatten uses ascending row parties, first most significant") {
    Tensor t({2, 3, 2});
    t.set({1, 2, 0}, Scalar(7));
    const LinearMap m = flatten(t, {0, 2});
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 3);
    CHECK(m.at(1 * 2 + 0, 2) == Scalar(7));
    CHECK_THROWS_AS(flatten(t, {}), ArgumentError);
    CHECK_THROWS_AS(flatten(t, {0, 1, 2}), ArgumentError);
  }

  TEST_CASE("split_party is inverse to merging") {
    std::mt19937_64 rng(3);
    const Tensor t = test::random_tensor(rng, {6, 2}, 8);
    const Tensor s = split_party(t, 0, 2, 3);
    CHECK(s.shape() == Shape{2, 3, 2});
    for (const auto& [idx, c] : t.entries()) CHECK(s.at({idx[0] / 3, idx[0] % 3, idx[1]}) == c);
    CHECK(s.nnz() == t.nnz());
  }

  TEST_CASE("apply_local_maps is linear and functorial") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      const Shape shape{2, 3};
      const Tensor t = test::random_tensor(rng, shape, 5);
      const Tensor u = test::random_tensor(rng, shape, 5);
      std::vector<LinearMap> a, b, ab;
      for (std::size_t d : shape) {
        b.push_back(test::random_matrix(rng, 2, d, true, 0.7));
        a.push_back(test::random_matrix(rng, 3, 2, true, 0.7));
        ab.push_back(compose(a.back(), b.back()));
      }
      CHECK(apply_local_maps(apply_local_maps(t, b), a) == apply_local_maps(t, ab));
      CHECK(apply_local_maps(tensor_add(t, u), b) == tensor_add(apply_local_maps(t, b), apply_local_maps(u, b)));
    }
    const Tensor t = test::random_tensor(rng, {2, 2}, 4);
    CHECK(apply_local_maps(t, {LinearMap::identity(2), LinearMap::identity(2)}) == t);
    CHECK_THROWS_AS(apply_local_maps(t, {LinearMap::identity(3), LinearMap::identity(2)}), ShapeError);
  }

  TEST_CASE("ring mismatch in run-time dispatch") {
    AnyTensor a = Tensor({2});
    AnyTensor b = EpsTensor({2});
    CHECK_THROWS_AS(tensor_add(a, b), RingError);
    CHECK_THROWS_AS(tensor_product(a, b), RingError);
  }

  TEST_CASE("eps lifting and coefficient slices") {
    Tensor t({2});
    t.set({0}, Scalar(4));
    const EpsTensor e = lift_to_eps(t, 2);
    CHECK(eps_coefficient(e, 2) == t);
    CHECK(eps_coefficient(e, 0).is_zero());
  }

  TEST_CASE("combinatorics") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK_THROWS_AS(binomial(200, 100), SizeCapError);
    CHECK(k_subsets(4, 2).size() == 6);
    CHECK(k_subsets(4, 2).front() == std::vector<std::size_t>{0, 1});
    CHECK(compositions(3, 3).size() == binomial(5, 2));
    for (const auto& c : compositions(4, 3)) CHECK(c[0] + c[1] + c[2] == 4);
  }
}
