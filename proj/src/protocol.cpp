#include "nqc/protocol.hpp"

#include "nqc/error.hpp"

namespace nqc {

void FunctionTable::validate() const {
  if (dims.empty()) throw ArgumentError("function table: no players");
  for (std::size_t d : dims) {
    if (d == 0) throw ArgumentError("function table: input sets must be nonempty");
  }
  for (const auto& x : ones) {
    if (x.size() != dims.size()) throw ArgumentError("function table: input " + format_index(x) + " has wrong length");
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] >= dims[i]) throw ArgumentError("function table: input " + format_index(x) + " out of range");
    }
  }
}

Tensor FunctionTable::to_tensor() const {
  validate();
  return indicator_tensor(dims, ones);
}

FunctionTable FunctionTable::from_support(const Tensor& t) { return FunctionTable{t.shape(), support(t)}; }

ProtocolSpec build_protocol(const RankCertificate& c, const Tensor& target, VerifyMode mode) {
  for (const auto& entry : target.entries()) {
    if (!(entry.second == Scalar(1))) throw ArgumentError("build_protocol: target must be 0/1 valued");
  }
  const Verdict v = verify_rank_cert(c, target, mode);
  if (!v.pass) throw ArgumentError("build_protocol: certificate does not verify: " + v.detail);

  ProtocolSpec p;
  p.k = c.shape.size();
  p.r = c.rank();
  p.dims = c.shape;
  for (std::size_t j = 0; j < p.k; ++j) {
    LinearMap a(p.dims[j], p.r);
    Rational frobenius = 0;
    std::vector<std::size_t> zero_cols;
    for (std::size_t col = 0; col < p.r; ++col) {
      const Vector& u = c.terms[col][j];
      bool zero = true;
      for (std::size_t row = 0; row < u.size(); ++row) {
        if (u[row].is_zero()) continue;
        zero = false;
        a.set(row, col, u[row]);
        frobenius += u[row].norm2();
      }
      if (zero) zero_cols.push_back(col);
    }
    if (frobenius == 0) throw ArgumentError("build_protocol: operator of player " + std::to_string(j) + " is zero");
    p.operators.push_back(std::move(a));
    p.scale_sq.push_back(Rational(1) / frobenius);
    p.zero_columns.push_back(std::move(zero_cols));
  }
  return p;
}

namespace {

Rational acceptance_unchecked(const ProtocolSpec& p, const std::vector<std::vector<std::vector<Scalar>>>& dense,
                              const MultiIndex& x) {
  Scalar amplitude(0);
  for (std::size_t a = 0; a < p.r; ++a) {
    Scalar term(1);
    for (std::size_t j = 0; j < p.k && !term.is_zero(); ++j) term *= dense[j][x[j]][a];
    amplitude += term;
  }
  if (amplitude.is_zero()) return 0;
  Rational prob = amplitude.norm2();
  for (const auto& s : p.scale_sq) prob *= s;
  return prob;
}

void check_input(const ProtocolSpec& p, const MultiIndex& x) {
  if (x.size() != p.k) throw ArgumentError("acceptance_probability: input " + format_index(x) + " has wrong length");
  for (std::size_t j = 0; j < p.k; ++j) {
    if (x[j] >= p.dims[j]) throw ArgumentError("acceptance_probability: input " + format_index(x) + " out of range");
  }
}

std::vector<std::vector<std::vector<Scalar>>> dense_operators(const ProtocolSpec& p) {
  std::vector<std::vector<std::vector<Scalar>>> dense;
  for (const auto& a : p.operators) dense.push_back(a.to_dense());
  return dense;
}

}  // namespace

Rational acceptance_probability(const ProtocolSpec& p, const MultiIndex& x) {
  check_input(p, x);
  return acceptance_unchecked(p, dense_operators(p), x);
}

ProtocolVerdict verify_protocol(const ProtocolSpec& p, const FunctionTable& f, bool list_probabilities) {
  f.validate();
  if (f.dims != p.dims) throw ShapeError("verify_protocol: function dimensions differ from the protocol's");
  const auto dense = dense_operators(p);
  ProtocolVerdict v;
  v.ones = f.ones.size();
  MultiIndex x(p.k, 0);
  while (true) {
    const Rational prob = acceptance_unchecked(p, dense, x);
    const bool accepted = prob > 0;
    ++v.inputs_checked;
    if (accepted) {
      ++v.accepted;
      if (!v.min_positive || prob < *v.min_positive) v.min_positive = prob;
    }
    if (accepted != f(x) && !v.first_violation) {
      v.first_violation = x;
      v.detail = std::string(accepted ? "positive probability on a zero of f" : "zero probability on a one of f") +
                 " at " + format_index(x);
    }
    if (list_probabilities) v.probabilities.emplace_back(x, prob);
    std::size_t i = p.k;
    while (i > 0 && ++x[i - 1] == p.dims[i - 1]) x[--i] = 0;
    if (i == 0) break;
  }
  v.pass = !v.first_violation.has_value();
  if (v.pass) v.detail = "accepts exactly on the " + std::to_string(v.ones) + " ones";
  return v;
}

FunctionTable eq_cycle_function(std::size_t k, std::size_t n) {
  if (k < 2 || n == 0) throw ArgumentError("eq_cycle_function: need k >= 2 and n >= 1");
  if (n * k > 20) throw SizeCapError("eq_cycle_function: more than 2^20 ones");
  const std::size_t m = std::size_t{1} << n;
  FunctionTable f;
  f.dims.assign(k, m * m);
  // One shared string per edge (i, i+1): player i's b_i and player i+1's a_{i+1}.
  std::vector<std::size_t> s(k, 0);
  MultiIndex x(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) x[i] = s[(i + k - 1) % k] * m + s[i];
    f.ones.insert(x);
    std::size_t i = k;
    while (i > 0 && ++s[i - 1] == m) s[--i] = 0;
    if (i == 0) break;
  }
  return f;
}

namespace {

// Contracts the first party of t with the covector l.
Tensor contract_first(const Tensor& t, const Vector& l) {
  Tensor out(Shape(t.shape().begin() + 1, t.shape().end()));
  for (const auto& [idx, c] : t.entries()) {
    if (l[idx[0]].is_zero()) continue;
    out.add(MultiIndex(idx.begin() + 1, idx.end()), c * l[idx[0]]);
  }
  return out;
}

}  // namespace

std::vector<Vector> cleanup_functional(const std::vector<Tensor>& psis) {
  if (psis.empty()) throw ArgumentError("cleanup_functional: no tensors");
  const Shape shape = psis.front().shape();
  for (const auto& psi : psis) {
    if (psi.shape() != shape) throw ShapeError("cleanup_functional: tensors have different shapes");
    if (psi.is_zero()) throw ArgumentError("cleanup_functional: a tensor is zero");
  }
  std::vector<Tensor> residual = psis;
  std::vector<Vector> out;
  for (std::size_t party = 0; party < shape.size(); ++party) {
    const std::size_t d = shape[party];
    Vector ell(d, Scalar(0));
    for (std::size_t m = 0; m < residual.size(); ++m) {
      // Basis covector that keeps residual m alive, added with the first
      // alpha in 0..m that keeps residuals 0..m alive.
      const std::size_t u = residual[m].entries().begin()->first[0];
      bool found = false;
      for (long alpha = m == 0 ? 1 : 0; alpha <= static_cast<long>(m) + 1 && !found; ++alpha) {
        Vector trial = ell;
        trial[u] += Scalar(alpha);
        found = true;
        for (std::size_t i = 0; i <= m && found; ++i) found = !contract_first(residual[i], trial).is_zero();
        if (found) ell = std::move(trial);
      }
      if (!found) throw Error("cleanup_functional: no admissible coefficient found");
    }
    for (auto& t : residual) t = contract_first(t, ell);
    out.push_back(std::move(ell));
  }
  return out;
}

Scalar contract_all(const Tensor& t, const std::vector<Vector>& covectors) {
  if (covectors.size() != t.order()) throw ShapeError("contract_all: expected one covector per party");
  Scalar total(0);
  for (const auto& [idx, c] : t.entries()) {
    Scalar term = c;
    for (std::size_t i = 0; i < idx.size() && !term.is_zero(); ++i) {
      if (covectors[i].size() != t.shape()[i]) throw ShapeError("contract_all: covector length mismatch");
      term *= covectors[i][idx[i]];
    }
    total += term;
  }
  return total;
}

}  // namespace nqc
