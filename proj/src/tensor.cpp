#include "nqc/tensor.hpp"

#include <limits>

namespace nqc {

std::string format_index(const MultiIndex& idx) {
  std::string out = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(idx[i]);
  }
  return out + ")";
}

std::size_t shape_volume(const Shape& shape) {
  std::size_t volume = 1;
  for (std::size_t d : shape) {
    if (d != 0 && volume > std::numeric_limits<std::size_t>::max() / d) {
      throw SizeCapError("shape volume overflows");
    }
    volume *= d;
  }
  return volume;
}

AnyTensor tensor_add(const AnyTensor& a, const AnyTensor& b) {
  if (a.index() != b.index()) throw RingError("tensor_add: ring mismatch");
  if (const auto* ta = std::get_if<Tensor>(&a)) return tensor_add(*ta, std::get<Tensor>(b));
  return tensor_add(std::get<EpsTensor>(a), std::get<EpsTensor>(b));
}

AnyTensor tensor_product(const AnyTensor& a, const AnyTensor& b) {
  if (a.index() != b.index()) throw RingError("tensor_product: ring mismatch");
  if (const auto* ta = std::get_if<Tensor>(&a)) return tensor_product(*ta, std::get<Tensor>(b));
  return tensor_product(std::get<EpsTensor>(a), std::get<EpsTensor>(b));
}

void check_permutation(const std::vector<std::size_t>& perm, std::size_t k) {
  if (perm.size() != k) throw ArgumentError("permutation has wrong length");
  std::vector<bool> seen(k, false);
  for (std::size_t p : perm) {
    if (p >= k || seen[p]) throw ArgumentError("not a permutation of the parties");
    seen[p] = true;
  }
}

LinearMap flatten(const Tensor& t, const std::vector<std::size_t>& row_parties) {
  const std::size_t k = t.order();
  std::vector<bool> in_rows(k, false);
  for (std::size_t p : row_parties) {
    if (p >= k) throw ArgumentError("flatten: party out of range");
    in_rows[p] = true;
  }
  const auto count = static_cast<std::size_t>(std::count(in_rows.begin(), in_rows.end(), true));
  if (count == 0 || count == k) throw ArgumentError("flatten: party set must be nonempty and proper");

  Shape row_shape;
  Shape col_shape;
  for (std::size_t i = 0; i < k; ++i) (in_rows[i] ? row_shape : col_shape).push_back(t.shape()[i]);
  LinearMap out(shape_volume(row_shape), shape_volume(col_shape));
  for (const auto& [idx, c] : t.entries()) {
    std::size_t row = 0;
    std::size_t col = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (in_rows[i]) {
        row = row * t.shape()[i] + idx[i];
      } else {
        col = col * t.shape()[i] + idx[i];
      }
    }
    out.set(row, col, c);
  }
  return out;
}

Tensor eps_coefficient(const EpsTensor& t, std::size_t h) {
  Tensor out(t.shape());
  for (const auto& [idx, c] : t.entries()) out.add(idx, c.coefficient(h));
  return out;
}

EpsTensor lift_to_eps(const Tensor& t, std::size_t degree) {
  EpsTensor out(t.shape());
  for (const auto& [idx, c] : t.entries()) out.add(idx, EpsScalar::monomial(c, degree));
  return out;
}

Tensor indicator_tensor(const Shape& shape, const std::set<MultiIndex>& indices) {
  Tensor out(shape);
  for (const auto& idx : indices) out.set(idx, Scalar(1));
  return out;
}

}  // namespace nqc
