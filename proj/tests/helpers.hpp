#pragma once

#include <random>
#include <vector>

#include "nqc/linear_map.hpp"
#include "nqc/tensor.hpp"

namespace nqc::test {

inline Scalar small_scalar(std::mt19937_64& rng, bool complex = true, long range = 3) {
  std::uniform_int_distribution<long> d(-range, range);
  return complex ? Scalar(Rational(d(rng)), Rational(d(rng))) : Scalar(d(rng));
}

inline Scalar nonzero_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
  long p = 0;
  while (p == 0) p = num(rng);
  return Scalar(Rational(p, den(rng)));
}

inline Tensor random_tensor(std::mt19937_64& rng, const Shape& shape, std::size_t max_nnz, bool complex = true) {
  Tensor t(shape);
  const std::size_t cap = std::min(max_nnz, shape_volume(shape));
  const std::size_t want = std::uniform_int_distribution<std::size_t>(1, cap)(rng);
  while (t.nnz() < want) {
    MultiIndex idx;
    for (std::size_t d : shape) idx.push_back(std::uniform_int_distribution<std::size_t>(0, d - 1)(rng));
    t.set(idx, small_scalar(rng, complex));
  }
  return t;
}

inline LinearMap random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, bool complex = true,
                               double density = 1.0) {
  LinearMap m(rows, cols);
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (keep(rng)) m.set(i, j, small_scalar(rng, complex));
    }
  }
  return m;
}

// Determinant by cofactor expansion; only for tiny matrices.
inline Scalar det_laplace(const std::vector<std::vector<Scalar>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Scalar(1);
  Scalar total(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Scalar>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(a[r][j]);
      }
      minor.push_back(row);
    }
    const Scalar term = a[0][c] * det_laplace(minor);
    total += c % 2 == 0 ? term : -term;
  }
  return total;
}

// Largest size of a nonvanishing minor.
inline std::size_t rank_by_minors(const LinearMap& m) {
  const auto dense = m.to_dense();
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t s = std::min(rows, cols); s > 0; --s) {
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(s), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(s), true);
      do {
        std::vector<std::vector<Scalar>> sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          std::vector<Scalar> row;
          for (std::size_t j = 0; j < cols; ++j) {
            if (csel[j]) row.push_back(dense[i][j]);
          }
          sub.push_back(row);
        }
        if (!det_laplace(sub).is_zero()) return s;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace nqc::test
