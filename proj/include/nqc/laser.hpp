#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nqc/tensor.hpp"

namespace nqc {

/// Per-party ordered partition of the index range into groups.
struct BlockDecomposition {
  /// groups[i][j] lists the indices of party i in group j, ascending.
  std::vector<std::vector<std::vector<std::size_t>>> groups;

  /// Throws ArgumentError unless every party's groups are nonempty, disjoint
  /// and cover [shape[i]].
  void validate(const Shape& shape) const;
  std::vector<std::size_t> group_counts() const;

  static BlockDecomposition trivial(const Shape& shape);
  static BlockDecomposition singletons(const Shape& shape);
};

/// 0/1 tensor over group multi-indices marking the nonzero blocks.
Tensor outer_structure(const Tensor& t, const BlockDecomposition& d);

/// Restriction of t to block j, in group-local coordinates.
Tensor inner_block(const Tensor& t, const BlockDecomposition& d, const MultiIndex& j);

enum class Pairing {
  kPartywise,    // matches kron_parties: group (ga, gb) -> ga * count_b + gb
  kConcatenate,  // matches tensor_product: parties of b appended
};

BlockDecomposition decomposition_product(const BlockDecomposition& a, const BlockDecomposition& b, Pairing pairing);

/// Moves party i's groups to position perm[i] (same convention as permute_parties).
BlockDecomposition permute_decomposition(const BlockDecomposition& d, const std::vector<std::size_t>& perm);

/// Product decomposition aligned with cyclic_shift_product.
BlockDecomposition cyclic_shift_decomposition(const BlockDecomposition& d);

/// {0} | {1..q} on parties 0 and 2 of gen_str(q, k); one group elsewhere.
BlockDecomposition str_decomposition(std::size_t q, std::size_t k);

/// Relabeling: party i of a goes to position party_perm[i] and its index x
/// becomes index_maps[i][x].
struct IsoWitness {
  std::vector<std::size_t> party_perm;
  std::vector<std::vector<std::size_t>> index_maps;
};

Tensor apply_witness(const Tensor& a, const IsoWitness& w);

/// Finds a relabeling taking a to b. Without search only the identity is
/// tried. The search is a backtracking over entry matchings under pruned party
/// permutations; exceeding node_budget throws SizeCapError. Tensors whose
/// party dimensions differ as multisets are reported as not isomorphic.
std::optional<IsoWitness> iso_relabel_check(const Tensor& a, const Tensor& b, bool search,
                                            std::size_t node_budget = 10'000'000);

struct MamuMatch {
  std::vector<std::size_t> dims;
  IsoWitness witness;  // takes the input to gen_mamu(dims)
};

/// Recognizes a relabeled <n_1,...,n_k> pattern (k >= 3, parties in cyclic
/// order, all coefficients 1).
std::optional<MamuMatch> match_mamu_pattern(const Tensor& t);

struct StageVerdict {
  std::string name;
  bool run = false;
  bool passed = false;
  std::string detail;
};

struct LaserOptions {
  std::size_t max_q = 8;
  std::size_t max_k = 7;
  /// Cap on the entries of the cyclic-shift product, (2q)^k.
  std::size_t max_entries = std::size_t{1} << 18;
  bool formula_only = false;
};

struct LaserReport {
  std::size_t k = 0;
  std::size_t q = 0;
  bool formula_only = false;
  std::vector<StageVerdict> stages;
  /// Index of the first failing stage, if any.
  std::optional<std::size_t> failed_stage;
  std::optional<double> bound;
  /// k * solve_tau on two blocks of volume q^k with r = (q+1)^k, when representable.
  std::optional<double> tau_bound;
  std::size_t inner_blocks_checked = 0;

  bool passed() const { return !failed_stage.has_value() && bound.has_value(); }
};

/// Structural checks behind the bound log_q((q+1)^k / 2), then the bound.
/// Even k is accepted so the expected stage-2 failure can be observed.
LaserReport laser_pipeline(std::size_t k, std::size_t q, const LaserOptions& options = {});

}  // namespace nqc
