#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nqc/scalar.hpp"
#include "nqc/tensor.hpp"

namespace nqc {

using Vector = std::vector<Scalar>;
using EpsVector = std::vector<EpsScalar>;
/// One simple tensor u^1 x ... x u^k, stored as one dense vector per party.
using SimpleTerm = std::vector<Vector>;
using EpsSimpleTerm = std::vector<EpsVector>;

/// Witness that rank(target) <= terms.size() (exact mode) or that
/// supprank(target) <= terms.size() (support mode). The certificate carries the
/// shape it claims to decompose; verification never infers it.
struct RankCertificate {
  Shape shape;
  std::vector<SimpleTerm> terms;

  std::size_t rank() const { return terms.size(); }
  /// Throws ShapeError if some vector length disagrees with the shape.
  void validate() const;
};

/// Witness that sum_i v_i^1 x ... x v_i^k = eps^h target + O(eps^{h+1}),
/// i.e. rank_h(target) <= terms.size().
struct BorderCertificate {
  Shape shape;
  std::size_t h = 0;
  std::vector<EpsSimpleTerm> terms;

  std::size_t rank() const { return terms.size(); }
  void validate() const;
};

enum class VerifyMode { kExact, kSupport };

struct Verdict {
  bool pass = false;
  /// The certified upper bound (number of simple terms).
  std::size_t r = 0;
  /// First multi-index (in lexicographic order) where the check failed.
  std::optional<MultiIndex> first_violation;
  std::string detail;
};

Tensor simple_tensor(const Shape& shape, const SimpleTerm& term);
Tensor certificate_sum(const RankCertificate& c);
/// Sum of the terms with every epsilon power above max_degree discarded.
EpsTensor certificate_sum(const BorderCertificate& c, std::size_t max_degree);

/// Throws ShapeError if the certificate and target shapes differ.
Verdict verify_rank_cert(const RankCertificate& c, const Tensor& target, VerifyMode mode);
Verdict verify_border_cert(const BorderCertificate& c, const Tensor& target);

/// Terms multiply pairwise; parties concatenate (a's parties first).
RankCertificate cert_tensor_product(const RankCertificate& a, const RankCertificate& b);
/// As above with h = h_a + h_b.
BorderCertificate cert_tensor_product(const BorderCertificate& a, const BorderCertificate& b);

/// Exact certificate viewed as a degree-0 border certificate (h = 0).
BorderCertificate lift_certificate(const RankCertificate& c);

/// Extracts an exact decomposition from a verified border certificate by
/// keeping the eps-homogeneous pieces whose degrees sum to h. Produces at most
/// binom(h+k-1, k-1) * r terms; zero terms are dropped. Throws ArgumentError
/// if the input does not verify against target.
RankCertificate degenerate_to_rank(const BorderCertificate& c, const Tensor& target);

}  // namespace nqc
