#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nqc {

/// Direct sum of matrix-multiplication-type blocks with a border rank bound r.
struct BlockSpec {
  std::vector<std::vector<std::uint64_t>> blocks;
  std::uint64_t r = 0;

  /// Throws ArgumentError unless blocks are nonempty, share one party count,
  /// have positive dimensions and r > blocks.size().
  void validate() const;
  /// Product of the dimensions of block i as a double.
  double volume(std::size_t i) const;
};

/// tau with sum_i N_i^tau = r, by bisection; the final residual is checked
/// against tol * r. Throws ArgumentError when unsolvable or tol <= 0.
double solve_tau(const BlockSpec& spec, double tol = 1e-12);

double omega_from_tau(std::size_t k, double tau);

/// k * log_{prod dims} r.
double omega_unbalanced(const std::vector<std::uint64_t>& dims, std::uint64_t r);

/// log_q((q+1)^k / divisor); divisor must be 2 or 4.
double laser_bound(std::size_t k, std::uint64_t q, unsigned divisor = 2);

struct LaserOptimum {
  std::uint64_t q_star = 0;
  double bound = 0;
  bool below_k = false;
};

/// Minimizes laser_bound over q in [2, q_max]; ties go to the smaller q.
LaserOptimum best_laser_bound(std::size_t k, std::uint64_t q_max, unsigned divisor = 2);

/// binom(h + k - 1, k - 1): the blow-up from border rank to rank.
std::uint64_t ch_constant(std::uint64_t h, std::uint64_t k);

/// (3 omega_s - 2) / 2; rejects omega_s < 2.
double cohn_umans(double omega_s);

}  // namespace nqc
