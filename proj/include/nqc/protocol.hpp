#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nqc/certificates.hpp"
#include "nqc/linear_map.hpp"
#include "nqc/tensor.hpp"

namespace nqc {

/// GHZ-resource protocol: player j applies A_j (d_j x r) scaled by sqrt(s_j)
/// to its share of a rank-r GHZ state, then measures its input register.
struct ProtocolSpec {
  std::size_t k = 0;
  std::size_t r = 0;
  std::vector<std::size_t> dims;
  std::vector<LinearMap> operators;
  /// s_j = 1 / ||A_j||_F^2, so s_j A_j^* A_j has spectral norm at most 1.
  std::vector<Rational> scale_sq;
  /// Per player, the GHZ branches whose column of A_j is zero.
  std::vector<std::vector<std::size_t>> zero_columns;
};

/// f : [d_1] x ... x [d_k] -> {0, 1}, given by the set of ones.
struct FunctionTable {
  std::vector<std::size_t> dims;
  std::set<MultiIndex> ones;

  void validate() const;
  bool operator()(const MultiIndex& x) const { return ones.count(x) != 0; }
  Tensor to_tensor() const;
  /// Support of t (coefficients are ignored).
  static FunctionTable from_support(const Tensor& t);
};

/// Verifies c against target (which must have 0/1 coefficients) and compiles it.
/// Throws ArgumentError when verification fails or a player's operator is zero.
ProtocolSpec build_protocol(const RankCertificate& c, const Tensor& target, VerifyMode mode);

/// Probability that every control qubit accepts and every player measures x_j.
Rational acceptance_probability(const ProtocolSpec& p, const MultiIndex& x);

struct ProtocolVerdict {
  bool pass = false;
  std::size_t inputs_checked = 0;
  std::size_t accepted = 0;
  std::size_t ones = 0;
  /// Smallest positive acceptance probability seen.
  std::optional<Rational> min_positive;
  std::optional<MultiIndex> first_violation;
  std::string detail;
  /// Filled only when requested: every input with its probability.
  std::vector<std::pair<MultiIndex, Rational>> probabilities;
};

/// Brute force over all inputs: passes iff the probability is positive exactly on f's ones.
ProtocolVerdict verify_protocol(const ProtocolSpec& p, const FunctionTable& f, bool list_probabilities = false);

/// Equality on the k-cycle with n-bit strings: player i holds (a_i, b_i) as
/// a_i * 2^n + b_i and f = 1 iff b_i = a_{i+1} for all i.
FunctionTable eq_cycle_function(std::size_t k, std::size_t n);

/// Covectors l_1, ..., l_k whose contraction with every psi is nonzero.
/// Throws ArgumentError on a zero tensor or mismatched shapes.
std::vector<Vector> cleanup_functional(const std::vector<Tensor>& psis);

/// <l_1| x ... x <l_k| applied to t.
Scalar contract_all(const Tensor& t, const std::vector<Vector>& covectors);

}  // namespace nqc
