#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nqc/error.hpp"
#include "nqc/linear_map.hpp"
#include "nqc/scalar.hpp"

namespace nqc {

using Shape = std::vector<std::size_t>;
using MultiIndex = std::vector<std::size_t>;

std::string format_index(const MultiIndex& idx);

/// Sparse order-k tensor with an explicit shape. Zero coefficients are never
/// stored and every key is inside the shape. The order-0 tensor (empty shape)
/// has the single multi-index {} and acts as a scalar.
template <class Coef>
class BasicTensor {
 public:
  using coefficient_type = Coef;
  using EntryMap = std::map<MultiIndex, Coef>;

  BasicTensor() = default;
  explicit BasicTensor(Shape shape) : shape_(std::move(shape)) {}

  const Shape& shape() const { return shape_; }
  std::size_t order() const { return shape_.size(); }
  const EntryMap& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Coef at(const MultiIndex& idx) const {
    check_bounds(idx);
    auto it = entries_.find(idx);
    return it == entries_.end() ? Coef() : it->second;
  }

  void add(const MultiIndex& idx, const Coef& value) {
    if (value.is_zero()) return;
    check_bounds(idx);
    auto [it, inserted] = entries_.try_emplace(idx, value);
    if (!inserted) {
      it->second += value;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  void set(const MultiIndex& idx, const Coef& value) {
    check_bounds(idx);
    if (value.is_zero()) {
      entries_.erase(idx);
    } else {
      entries_[idx] = value;
    }
  }

  bool in_bounds(const MultiIndex& idx) const {
    if (idx.size() != shape_.size()) return false;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= shape_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const BasicTensor& a, const BasicTensor& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const BasicTensor& a, const BasicTensor& b) { return !(a == b); }

 private:
  void check_bounds(const MultiIndex& idx) const {
    if (!in_bounds(idx)) throw ShapeError("multi-index " + format_index(idx) + " outside tensor shape");
  }

  Shape shape_;
  EntryMap entries_;
};

using Tensor = BasicTensor<Scalar>;
using EpsTensor = BasicTensor<EpsScalar>;
/// A tensor whose ring is only known at run time (e.g. after parsing JSON).
using AnyTensor = std::variant<Tensor, EpsTensor>;

/// Product of the entries of a shape; 1 for the empty shape. Throws SizeCapError on overflow.
std::size_t shape_volume(const Shape& shape);

template <class Coef>
BasicTensor<Coef> tensor_add(const BasicTensor<Coef>& a, const BasicTensor<Coef>& b) {
  if (a.shape() != b.shape()) throw ShapeError("tensor_add: shape mismatch");
  BasicTensor<Coef> out = a;
  for (const auto& [idx, c] : b.entries()) out.add(idx, c);
  return out;
}

template <class Coef>
BasicTensor<Coef> tensor_scale(const BasicTensor<Coef>& t, const Scalar& factor) {
  BasicTensor<Coef> out(t.shape());
  if (factor.is_zero()) return out;
  for (const auto& [idx, c] : t.entries()) out.add(idx, c * factor);
  return out;
}

template <class Coef>
BasicTensor<Coef> tensor_sub(const BasicTensor<Coef>& a, const BasicTensor<Coef>& b) {
  return tensor_add(a, tensor_scale(b, Scalar(-1)));
}

/// Run-time ring dispatch; throws RingError when the operands differ in ring.
AnyTensor tensor_add(const AnyTensor& a, const AnyTensor& b);
AnyTensor tensor_product(const AnyTensor& a, const AnyTensor& b);

/// Order k_a + k_b tensor with entry (i, j) = a[i] * b[j].
template <class Coef>
BasicTensor<Coef> tensor_product(const BasicTensor<Coef>& a, const BasicTensor<Coef>& b) {
  Shape shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  BasicTensor<Coef> out(shape);
  MultiIndex idx;
  for (const auto& [ia, ca] : a.entries()) {
    for (const auto& [ib, cb] : b.entries()) {
      idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(idx, ca * cb);
    }
  }
  return out;
}

/// Checks that perm is a permutation of 0..k-1. Throws ArgumentError.
void check_permutation(const std::vector<std::size_t>& perm, std::size_t k);

/// Moves party i to position perm[i]: result.shape[perm[i]] = t.shape[i].
template <class Coef>
BasicTensor<Coef> permute_parties(const BasicTensor<Coef>& t, const std::vector<std::size_t>& perm) {
  check_permutation(perm, t.order());
  Shape shape(t.order());
  for (std::size_t i = 0; i < t.order(); ++i) shape[perm[i]] = t.shape()[i];
  BasicTensor<Coef> out(shape);
  MultiIndex idx(t.order());
  for (const auto& [src, c] : t.entries()) {
    for (std::size_t i = 0; i < src.size(); ++i) idx[perm[i]] = src[i];
    out.add(idx, c);
  }
  return out;
}

/// Cyclic shift by `steps`: party i moves to position (i + steps) mod k.
template <class Coef>
BasicTensor<Coef> cyclic_shift(const BasicTensor<Coef>& t, std::size_t steps) {
  const std::size_t k = t.order();
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = (i + steps) % k;
  return permute_parties(t, perm);
}

/// Party-wise Kronecker product of two k-party tensors: party i of the result
/// is the product space of party i of a and b, index ia * b.shape[i] + ib.
template <class Coef>
BasicTensor<Coef> kron_parties(const BasicTensor<Coef>& a, const BasicTensor<Coef>& b) {
  if (a.order() != b.order()) throw ShapeError("kron_parties: party counts differ");
  const std::size_t k = a.order();
  Shape shape(k);
  for (std::size_t i = 0; i < k; ++i) shape[i] = a.shape()[i] * b.shape()[i];
  BasicTensor<Coef> out(shape);
  MultiIndex idx(k);
  for (const auto& [ia, ca] : a.entries()) {
    for (const auto& [ib, cb] : b.entries()) {
      for (std::size_t i = 0; i < k; ++i) idx[i] = ia[i] * b.shape()[i] + ib[i];
      out.add(idx, ca * cb);
    }
  }
  return out;
}

/// Applies maps[i] to party i (the SLOCC action A_1 x ... x A_k).
template <class Coef>
BasicTensor<Coef> apply_local_maps(const BasicTensor<Coef>& t, const std::vector<LinearMap>& maps) {
  const std::size_t k = t.order();
  if (maps.size() != k) throw ShapeError("apply_local_maps: expected one map per party");
  Shape shape(k);
  std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> cols(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (maps[i].cols() != t.shape()[i]) {
      throw ShapeError("apply_local_maps: map " + std::to_string(i) + " has " + std::to_string(maps[i].cols()) +
                       " columns but party dimension is " + std::to_string(t.shape()[i]));
    }
    shape[i] = maps[i].rows();
    cols[i] = maps[i].columns();
  }
  BasicTensor<Coef> out(shape);
  MultiIndex idx(k);
  for (const auto& [src, c] : t.entries()) {
    // Odometer over the nonzero images of each party's basis vector.
    std::vector<std::size_t> pos(k, 0);
    bool empty = false;
    for (std::size_t i = 0; i < k; ++i) empty = empty || cols[i][src[i]].empty();
    if (empty) continue;
    while (true) {
      Scalar factor(1);
      for (std::size_t i = 0; i < k; ++i) {
        const auto& [row, value] = cols[i][src[i]][pos[i]];
        idx[i] = row;
        factor *= value;
      }
      out.add(idx, c * factor);
      std::size_t i = 0;
      for (; i < k; ++i) {
        if (++pos[i] < cols[i][src[i]].size()) break;
        pos[i] = 0;
      }
      if (i == k) break;
    }
  }
  return out;
}

/// Matrix of t with rows indexed by the parties in `row_parties` (mixed radix,
/// ascending party order, first party most significant) and columns by the rest.
/// Throws ArgumentError if the set is empty, full or out of range.
LinearMap flatten(const Tensor& t, const std::vector<std::size_t>& row_parties);

/// Splits party `party` of dimension d1*d2 into two consecutive parties (d1, d2)
/// with index i -> (i / d2, i % d2).
template <class Coef>
BasicTensor<Coef> split_party(const BasicTensor<Coef>& t, std::size_t party, std::size_t d1, std::size_t d2) {
  if (party >= t.order() || t.shape()[party] != d1 * d2) throw ShapeError("split_party: dimension mismatch");
  Shape shape = t.shape();
  shape[party] = d2;
  shape.insert(shape.begin() + static_cast<std::ptrdiff_t>(party), d1);
  BasicTensor<Coef> out(shape);
  for (const auto& [src, c] : t.entries()) {
    MultiIndex idx = src;
    idx[party] = src[party] % d2;
    idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(party), src[party] / d2);
    out.add(idx, c);
  }
  return out;
}

/// The key set of the entry map.
template <class Coef>
std::set<MultiIndex> support(const BasicTensor<Coef>& t) {
  std::set<MultiIndex> out;
  for (const auto& entry : t.entries()) out.insert(out.end(), entry.first);
  return out;
}

/// Slice of eps^h coefficients of an epsilon-polynomial tensor.
Tensor eps_coefficient(const EpsTensor& t, std::size_t h);

/// The tensor eps^degree * t.
EpsTensor lift_to_eps(const Tensor& t, std::size_t degree = 0);

/// Tensor with the given support and all coefficients 1.
Tensor indicator_tensor(const Shape& shape, const std::set<MultiIndex>& indices);

}  // namespace nqc
