#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nqc/certificates.hpp"
#include "nqc/tensor.hpp"

namespace nqc {

/// Undirected multigraph; parallel edges allowed, loops are not.
struct Multigraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws ArgumentError on out-of-range endpoints or loops.
  void validate() const;
  std::vector<std::size_t> degrees() const;

  static Multigraph cycle(std::size_t k);
  static Multigraph path(std::size_t edges);
  static Multigraph complete(std::size_t k);
  static Multigraph star(std::size_t leaves);
};

/// <n_1,...,n_k>: party i holds the pair (x_i, x_{i+1 mod k}) encoded as
/// x_i * n_{i+1} + x_{i+1}; all n_1...n_k entries equal 1.
Tensor gen_mamu(const std::vector<std::size_t>& dims);

/// IMM_m^k = <m,...,m>.
Tensor gen_imm(std::size_t m, std::size_t k);

/// GHZ_r^k = sum_a |a>...|a>.
Tensor gen_ghz(std::size_t r, std::size_t k);

/// Graphwise equality tensor on n-bit strings. Vertex v owns one n-bit slot per
/// incident edge, slots ordered by the edge list (first slot most significant);
/// one entry per assignment of a string to each edge, so 2^{n*|E|} entries.
Tensor gen_eq_graph(const Multigraph& g, std::size_t n);

/// Str_q^k = sum_{i=1..q} |i,i,0,...> + |0,i,i,0,...> in
/// C^{q+1} x C^q x C^{q+1} x C x ... x C. On the middle party, index i-1 encodes i.
Tensor gen_str(std::size_t q, std::size_t k);

/// The (q+1)-term certificate sum_i (|0>+e|i>)|i>(|0>+e|i>)|0..0> - |0>(sum_i|i>)|0..0>
/// for Str_q^k with h = 1.
BorderCertificate gen_str_border(std::size_t q, std::size_t k);

/// Strassen's 7-term decomposition of <2,2,2>.
RankCertificate gen_strassen7();

/// 31-term decomposition IMM_2^5 = Cyc_5(Sym_2(t)) + |Phi+>^{x5}.
RankCertificate gen_imm25_31();

/// Sum of all k cyclic party shifts. Throws ShapeError on unequal dimensions.
Tensor cyclic_sum_symmetrize(const Tensor& t);

/// The label swap 1 <-> 2 applied to every two-valued slot of every party
/// (parties of dimension 2 have one slot, dimension 4 two). ShapeError otherwise.
Tensor label_swap(const Tensor& t);
/// t + label_swap(t).
Tensor local_symmetrize_sym2(const Tensor& t);

/// t x (sigma t) x ... x (sigma^{k-1} t) regrouped party-wise, where sigma moves
/// party i to i+1. Party j of the result is the product of the local spaces
/// (sigma^c t)_j for c = 0..k-1, copy 0 most significant.
Tensor cyclic_shift_product(const Tensor& t);

}  // namespace nqc
