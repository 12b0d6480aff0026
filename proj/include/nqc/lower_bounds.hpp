#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nqc/generators.hpp"
#include "nqc/linear_map.hpp"
#include "nqc/tensor.hpp"

namespace nqc {

// ---------------------------------------------------------------------------
// Flattenings

struct FlatteningResult {
  /// Max flattening rank over the examined bipartitions.
  std::size_t bound = 0;
  /// Row parties of a bipartition attaining the bound.
  std::vector<std::size_t> best_parts;
  /// Rank of every examined bipartition, in examination order.
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> ranks;
};

/// Max over bipartitions of the exact flattening rank; a lower bound on border
/// rank. Without explicit parts every bipartition {S, complement} is examined
/// once (S ranges over proper subsets containing party 0), requiring k <= 16.
FlatteningResult flattening_bound(const Tensor& t,
                                  const std::optional<std::vector<std::vector<std::size_t>>>& parts = std::nullopt);

// ---------------------------------------------------------------------------
// Young flattening for <n,n,n>

/// Sign rule used when wedging |j> onto a sorted p-subset.
enum class WedgeSign {
  /// |j> appended last, then sorted: (-1)^{#elements greater than j}.
  kAppend,
  /// |j> prepended first, then sorted: (-1)^{#elements smaller than j}.
  kPrepend,
};

/// phi: C^{2n-1} -> wedge^p C^{2n-1} x wedge^{p+1} C^{2n-1},
/// |j> -> sum_{P} |P> x |P ^ j>. Rows are (P, Q) pairs, row = index(P) *
/// binom(2n-1, p+1) + index(Q), subsets indexed lexicographically.
LinearMap exterior_map(std::size_t n, std::size_t p, WedgeSign sign = WedgeSign::kAppend);

/// phi(v) for v = |j>, reshaped to a binom(2n-1,p) x binom(2n-1,p+1) matrix.
LinearMap exterior_image(std::size_t n, std::size_t p, std::size_t j, WedgeSign sign = WedgeSign::kAppend);

/// C^{n^2} -> C^{2n-1}, |i2 i3> -> |i2 + i3> (0-based).
LinearMap middle_compression(std::size_t n);

/// Nonzero coefficients alpha_{i1,i2,i3}, stored row-major at (i1*n + i2)*n + i3.
struct AlphaTable {
  std::size_t n = 0;
  std::vector<Scalar> values;

  static AlphaTable ones(std::size_t n);
  const Scalar& operator()(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return values[(i1 * n + i2) * n + i3];
  }
  /// Throws ArgumentError on wrong size or a zero coefficient.
  void validate() const;
};

/// <n,n,n> with entry alpha_{x1,x2,x3} at (x1 x2, x2 x3, x3 x1).
Tensor weighted_imm3(const AlphaTable& alphas);

struct YoungFlatteningReport {
  std::size_t n = 0;
  std::size_t p = 0;
  /// Rank of phi(v) for every v: binom(2n-2, p).
  std::size_t e = 0;
  std::size_t matrix_rank = 0;
  /// ceil(matrix_rank / e).
  std::size_t bound = 0;
  std::vector<std::size_t> block_ranks;
  /// Each block is square of this size.
  std::size_t block_size = 0;
  AlphaTable alphas;
};

struct YoungOptions {
  std::size_t max_n = 5;
  WedgeSign sign = WedgeSign::kAppend;
};

/// Young flattening lower bound for the <n,n,n>-supported tensor with the
/// given coefficients: compress the middle leg, apply exterior_map(n, n-1),
/// flatten to (V1 x wedge^p) x (wedge^{p+1} x V3) and sum the ranks of the n
/// diagonal blocks (one per x1).
YoungFlatteningReport young_flattening_imm3(const AlphaTable& alphas, const YoungOptions& options = {});

/// The block-diagonal pieces A_{i1} of the flattened matrix, built through the
/// tensor pipeline. Exposed for tests.
std::vector<LinearMap> young_flattening_blocks(const AlphaTable& alphas, WedgeSign sign = WedgeSign::kAppend);

/// The full (not block-split) flattened matrix A. Only sensible for small n.
LinearMap young_flattening_matrix(const AlphaTable& alphas, WedgeSign sign = WedgeSign::kAppend);

/// Checks, for all-ones coefficients, that each block becomes upper triangular
/// with nonzero diagonal after the row/column permutation given by the
/// Landsberg-Michalek order on targets (P, l). Diagnostic only.
bool young_triangularity_check(std::size_t n);

/// (2n^2 - n) * n^{k-3} for odd k >= 3. Throws ArgumentError for even k.
std::uint64_t young_bound_formula(std::uint64_t n, std::uint64_t k);

// ---------------------------------------------------------------------------
// Classical and message-passing bounds

/// Fooling-set bound for the cyclic equality problem: k * n.
std::uint64_t classical_bound(std::uint64_t k, std::uint64_t n);

struct MincutReport {
  /// Minimum number of edges crossing a cut (0 if disconnected).
  std::size_t mincut = 0;
  /// mincut >= n.
  bool feasible = false;
  /// ceil(k * n / 2).
  std::uint64_t edge_lower_bound = 0;
  std::size_t edge_count = 0;
  std::size_t min_degree = 0;
  bool connected = false;
};

/// Exhaustive cut enumeration, k <= 20 vertices.
MincutReport mincut_message_bound(const Multigraph& g, std::size_t n);

struct LogrankEnvelope {
  double nq0_lower = 0;
  double nq0_upper = 0;
  double nq0_asymptotic = 0;
  std::string caveat;
};

/// (nq, (k-1) nq, k nq / 2). The asymptotic value omits its additive epsilon,
/// which is reported in `caveat`.
LogrankEnvelope logrank_envelope(std::uint64_t k, double nq);

}  // namespace nqc
