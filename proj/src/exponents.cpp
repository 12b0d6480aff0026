#include "nqc/exponents.hpp"

#include <cmath>
#include <string>

#include "nqc/combinatorics.hpp"
#include "nqc/error.hpp"

namespace nqc {

void BlockSpec::validate() const {
  if (blocks.empty()) throw ArgumentError("block spec: no blocks");
  const std::size_t k = blocks.front().size();
  if (k == 0) throw ArgumentError("block spec: blocks need at least one dimension");
  for (const auto& b : blocks) {
    if (b.size() != k) throw ArgumentError("block spec: blocks have different party counts");
    for (auto d : b) {
      if (d == 0) throw ArgumentError("block spec: dimensions must be positive");
    }
  }
  if (r <= blocks.size()) {
    throw ArgumentError("block spec: need r > number of blocks (r = " + std::to_string(r) + ", p = " +
                        std::to_string(blocks.size()) + ")");
  }
}

double BlockSpec::volume(std::size_t i) const {
  double v = 1;
  for (auto d : blocks.at(i)) v *= static_cast<double>(d);
  return v;
}

double solve_tau(const BlockSpec& spec, double tol) {
  if (!(tol > 0)) throw ArgumentError("solve_tau: tol must be positive");
  spec.validate();
  const std::size_t p = spec.blocks.size();
  const double r = static_cast<double>(spec.r);
  double min_nontrivial = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const double v = spec.volume(i);
    if (v >= 2 && (min_nontrivial == 0 || v < min_nontrivial)) min_nontrivial = v;
  }
  if (min_nontrivial == 0) throw ArgumentError("solve_tau: every block has volume 1, so sum N_i^tau = p != r");

  auto excess = [&](double tau) {
    double s = 0;
    for (std::size_t i = 0; i < p; ++i) s += std::pow(spec.volume(i), tau);
    return s - r;
  };
  double lo = 0;
  // log_{N_min}(2 r p): the factor 2 keeps the p = 1 root strictly inside.
  double hi = std::log(2 * r * static_cast<double>(p)) / std::log(min_nontrivial);
  if (!(excess(lo) < 0 && excess(hi) >= 0)) throw Error("solve_tau: bracket does not contain the root");
  // Fixed schedule: halve until the midpoint no longer moves.
  while (true) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (excess(mid) < 0 ? lo : hi) = mid;
  }
  const double tau = std::fabs(excess(lo)) <= std::fabs(excess(hi)) ? lo : hi;
  if (std::fabs(excess(tau)) > tol * r) {
    throw Error("solve_tau: residual " + std::to_string(excess(tau)) + " exceeds tolerance");
  }
  return tau;
}

double omega_from_tau(std::size_t k, double tau) {
  if (!(tau >= 0)) throw ArgumentError("omega_from_tau: tau must be nonnegative");
  return static_cast<double>(k) * tau;
}

double omega_unbalanced(const std::vector<std::uint64_t>& dims, std::uint64_t r) {
  if (dims.empty()) throw ArgumentError("omega_unbalanced: no dimensions");
  if (r == 0) throw ArgumentError("omega_unbalanced: need r >= 1");
  double log_volume = 0;
  for (auto d : dims) {
    if (d == 0) throw ArgumentError("omega_unbalanced: dimensions must be positive");
    log_volume += std::log(static_cast<double>(d));
  }
  if (log_volume == 0) throw ArgumentError("omega_unbalanced: product of dimensions is 1");
  return static_cast<double>(dims.size()) * std::log(static_cast<double>(r)) / log_volume;
}

double laser_bound(std::size_t k, std::uint64_t q, unsigned divisor) {
  if (k < 3 || k % 2 == 0) throw ArgumentError("laser_bound: k must be odd and >= 3");
  if (q < 2) throw ArgumentError("laser_bound: need q >= 2");
  if (divisor != 2 && divisor != 4) throw ArgumentError("laser_bound: divisor must be 2 or 4");
  const double lq = std::log(static_cast<double>(q));
  return (static_cast<double>(k) * std::log1p(static_cast<double>(q)) - std::log(static_cast<double>(divisor))) / lq;
}

LaserOptimum best_laser_bound(std::size_t k, std::uint64_t q_max, unsigned divisor) {
  if (q_max < 2) throw ArgumentError("best_laser_bound: need q_max >= 2");
  LaserOptimum best;
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    const double b = laser_bound(k, q, divisor);
    if (best.q_star == 0 || b < best.bound) {
      best.q_star = q;
      best.bound = b;
    }
  }
  best.below_k = best.bound < static_cast<double>(k);
  return best;
}

std::uint64_t ch_constant(std::uint64_t h, std::uint64_t k) {
  if (k == 0) throw ArgumentError("ch_constant: need k >= 1");
  return binomial(h + k - 1, k - 1);
}

double cohn_umans(double omega_s) {
  if (!(omega_s >= 2)) throw ArgumentError("cohn_umans: omega_s must be at least 2");
  return (3 * omega_s - 2) / 2;
}

}  // namespace nqc
