#include "nqc/generators.hpp"

#include <string>

#include "nqc/error.hpp"

namespace nqc {

namespace {

// Largest tensor the builders will materialize.
constexpr std::size_t kMaxGeneratedEntries = std::size_t{1} << 24;

Vector vector_from(std::size_t dim, std::initializer_list<std::pair<std::size_t, long>> entries) {
  Vector v(dim);
  for (const auto& [i, c] : entries) v.at(i) += Scalar(c);
  return v;
}

}  // namespace

void Multigraph::validate() const {
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw ArgumentError("graph edge endpoint out of range");
    if (u == v) throw ArgumentError("graph loops are not allowed");
  }
}

std::vector<std::size_t> Multigraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& [u, v] : edges) {
    ++deg.at(u);
    ++deg.at(v);
  }
  return deg;
}

Multigraph Multigraph::cycle(std::size_t k) {
  Multigraph g{k, {}};
  for (std::size_t i = 0; i < k; ++i) g.edges.emplace_back(i, (i + 1) % k);
  return g;
}

Multigraph Multigraph::path(std::size_t edges) {
  Multigraph g{edges + 1, {}};
  for (std::size_t i = 0; i < edges; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

Multigraph Multigraph::complete(std::size_t k) {
  Multigraph g{k, {}};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) g.edges.emplace_back(i, j);
  }
  return g;
}

Multigraph Multigraph::star(std::size_t leaves) {
  Multigraph g{leaves + 1, {}};
  for (std::size_t i = 1; i <= leaves; ++i) g.edges.emplace_back(0, i);
  return g;
}

Tensor gen_mamu(const std::vector<std::size_t>& dims) {
  const std::size_t k = dims.size();
  if (k < 2) throw ArgumentError("gen_mamu: need at least two factors");
  for (std::size_t n : dims) {
    if (n == 0) throw ArgumentError("gen_mamu: dimensions must be positive");
  }
  if (shape_volume(dims) > kMaxGeneratedEntries) throw SizeCapError("gen_mamu: too many entries");
  Shape shape(k);
  for (std::size_t i = 0; i < k; ++i) shape[i] = dims[i] * dims[(i + 1) % k];
  Tensor t(shape);
  std::vector<std::size_t> x(k, 0);
  MultiIndex idx(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t next = (i + 1) % k;
      idx[i] = x[i] * dims[next] + x[next];
    }
    t.set(idx, Scalar(1));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++x[i] < dims[i]) break;
      x[i] = 0;
      if (i == 0) return t;
    }
  }
}

Tensor gen_imm(std::size_t m, std::size_t k) {
  if (m == 0 || k < 2) throw ArgumentError("gen_imm: need m >= 1 and k >= 2");
  return gen_mamu(std::vector<std::size_t>(k, m));
}

Tensor gen_ghz(std::size_t r, std::size_t k) {
  if (r == 0 || k == 0) throw ArgumentError("gen_ghz: need r >= 1 and k >= 1");
  Tensor t(Shape(k, r));
  for (std::size_t a = 0; a < r; ++a) t.set(MultiIndex(k, a), Scalar(1));
  return t;
}

Tensor gen_eq_graph(const Multigraph& g, std::size_t n) {
  g.validate();
  if (n == 0) throw ArgumentError("gen_eq_graph: need n >= 1");
  if (g.edges.empty()) throw ArgumentError("gen_eq_graph: graph has no edges");
  const std::size_t e = g.edges.size();
  if (n * e >= 24) throw SizeCapError("gen_eq_graph: 2^(n*edges) entries exceeds the size cap");
  const std::size_t labels = std::size_t{1} << n;

  // Incident edges per vertex in edge-list order.
  std::vector<std::vector<std::size_t>> slots(g.vertex_count);
  for (std::size_t id = 0; id < e; ++id) {
    slots[g.edges[id].first].push_back(id);
    slots[g.edges[id].second].push_back(id);
  }
  Shape shape(g.vertex_count);
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    if (n * slots[v].size() >= 8 * sizeof(std::size_t) - 1) throw SizeCapError("gen_eq_graph: local dimension too large");
    shape[v] = std::size_t{1} << (n * slots[v].size());
  }

  Tensor t(shape);
  std::vector<std::size_t> y(e, 0);
  MultiIndex idx(g.vertex_count);
  while (true) {
    for (std::size_t v = 0; v < g.vertex_count; ++v) {
      std::size_t value = 0;
      for (std::size_t id : slots[v]) value = value * labels + y[id];
      idx[v] = value;
    }
    t.set(idx, Scalar(1));
    std::size_t i = e;
    while (i > 0) {
      --i;
      if (++y[i] < labels) break;
      y[i] = 0;
      if (i == 0) return t;
    }
  }
}

Tensor gen_str(std::size_t q, std::size_t k) {
  if (q == 0 || k < 3) throw ArgumentError("gen_str: need q >= 1 and k >= 3");
  Shape shape(k, 1);
  shape[0] = q + 1;
  shape[1] = q;
  shape[2] = q + 1;
  Tensor t(shape);
  for (std::size_t i = 1; i <= q; ++i) {
    MultiIndex a(k, 0);
    a[0] = i;
    a[1] = i - 1;
    t.set(a, Scalar(1));
    MultiIndex b(k, 0);
    b[1] = i - 1;
    b[2] = i;
    t.set(b, Scalar(1));
  }
  return t;
}

BorderCertificate gen_str_border(std::size_t q, std::size_t k) {
  const Tensor target = gen_str(q, k);
  BorderCertificate c;
  c.shape = target.shape();
  c.h = 1;
  const EpsScalar one(1);
  const EpsScalar eps = EpsScalar::monomial(Scalar(1), 1);
  for (std::size_t i = 1; i <= q; ++i) {
    EpsSimpleTerm term(k);
    EpsVector outer(q + 1);
    outer[0] = one;
    outer[i] = eps;
    term[0] = outer;
    term[1] = EpsVector(q);
    term[1][i - 1] = one;
    term[2] = outer;
    for (std::size_t p = 3; p < k; ++p) term[p] = EpsVector{one};
    c.terms.push_back(std::move(term));
  }
  EpsSimpleTerm last(k);
  last[0] = EpsVector(q + 1);
  last[0][0] = EpsScalar(-1);
  last[1] = EpsVector(q, one);
  last[2] = EpsVector(q + 1);
  last[2][0] = one;
  for (std::size_t p = 3; p < k; ++p) last[p] = EpsVector{one};
  c.terms.push_back(std::move(last));
  return c;
}

RankCertificate gen_strassen7() {
  // Party 0 holds A_{ij} at 2i+j, party 1 holds B_{jk} at 2j+k, party 2 holds
  // the output entry C_{ik} at 2k+i (the pair (x3, x1) of <2,2,2>).
  auto a = [](std::size_t i, std::size_t j) { return 2 * i + j; };
  auto b = [](std::size_t j, std::size_t k) { return 2 * j + k; };
  auto c = [](std::size_t i, std::size_t k) { return 2 * k + i; };
  RankCertificate cert;
  cert.shape = {4, 4, 4};
  cert.terms = {
      // M1 = (A11 + A22)(B11 + B22) -> C11, C22
      {vector_from(4, {{a(0, 0), 1}, {a(1, 1), 1}}), vector_from(4, {{b(0, 0), 1}, {b(1, 1), 1}}),
       vector_from(4, {{c(0, 0), 1}, {c(1, 1), 1}})},
      // M2 = (A21 + A22) B11 -> C21, -C22
      {vector_from(4, {{a(1, 0), 1}, {a(1, 1), 1}}), vector_from(4, {{b(0, 0), 1}}),
       vector_from(4, {{c(1, 0), 1}, {c(1, 1), -1}})},
      // M3 = A11 (B12 - B22) -> C12, C22
      {vector_from(4, {{a(0, 0), 1}}), vector_from(4, {{b(0, 1), 1}, {b(1, 1), -1}}),
       vector_from(4, {{c(0, 1), 1}, {c(1, 1), 1}})},
      // M4 = A22 (B21 - B11) -> C11, C21
      {vector_from(4, {{a(1, 1), 1}}), vector_from(4, {{b(1, 0), 1}, {b(0, 0), -1}}),
       vector_from(4, {{c(0, 0), 1}, {c(1, 0), 1}})},
      // M5 = (A11 + A12) B22 -> -C11, C12
      {vector_from(4, {{a(0, 0), 1}, {a(0, 1), 1}}), vector_from(4, {{b(1, 1), 1}}),
       vector_from(4, {{c(0, 0), -1}, {c(0, 1), 1}})},
      // M6 = (A21 - A11)(B11 + B12) -> C22
      {vector_from(4, {{a(1, 0), 1}, {a(0, 0), -1}}), vector_from(4, {{b(0, 0), 1}, {b(0, 1), 1}}),
       vector_from(4, {{c(1, 1), 1}})},
      // M7 = (A12 - A22)(B21 + B22) -> C11
      {vector_from(4, {{a(0, 1), 1}, {a(1, 1), -1}}), vector_from(4, {{b(1, 0), 1}, {b(1, 1), 1}}),
       vector_from(4, {{c(0, 0), 1}})},
  };
  return cert;
}

namespace {

// |xy> on C^2 x C^2 with labels 1,2 mapped to 0,1, as a vector in C^4.
Vector pair_vector(const Vector& first, const Vector& second) {
  Vector v(4);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) v[2 * x + y] = first[x] * second[y];
  }
  return v;
}

SimpleTerm swap_labels(const SimpleTerm& term) {
  SimpleTerm out = term;
  for (std::size_t p = 0; p < term.size(); ++p) {
    const std::size_t d = term[p].size();
    for (std::size_t i = 0; i < d; ++i) out[p][i] = term[p][d - 1 - i];
  }
  return out;
}

SimpleTerm shift_term(const SimpleTerm& term, std::size_t steps) {
  SimpleTerm out(term.size());
  for (std::size_t i = 0; i < term.size(); ++i) out[(i + steps) % term.size()] = term[i];
  return out;
}

}  // namespace

RankCertificate gen_imm25_31() {
  const Vector one = {Scalar(1), Scalar(0)};
  const Vector two = {Scalar(0), Scalar(1)};
  const Vector minus = {Scalar(1), Scalar(-1)};
  const Vector plus = {Scalar(1), Scalar(1)};
  const Vector phi = {Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
  auto negated = [](Vector v) {
    for (auto& x : v) x = -x;
    return v;
  };

  // t = -|-1>|11>|11>|1+>|22> - |-1>|12>|21>|1+>|22> - |Phi+>|22>|-1>|1+>|22>
  const std::vector<SimpleTerm> t = {
      {negated(pair_vector(minus, one)), pair_vector(one, one), pair_vector(one, one), pair_vector(one, plus),
       pair_vector(two, two)},
      {negated(pair_vector(minus, one)), pair_vector(one, two), pair_vector(two, one), pair_vector(one, plus),
       pair_vector(two, two)},
      {negated(phi), pair_vector(two, two), pair_vector(minus, one), pair_vector(one, plus), pair_vector(two, two)},
  };

  RankCertificate cert;
  cert.shape = Shape(5, 4);
  for (std::size_t shift = 0; shift < 5; ++shift) {
    for (const auto& term : t) {
      cert.terms.push_back(shift_term(term, shift));
      cert.terms.push_back(shift_term(swap_labels(term), shift));
    }
  }
  cert.terms.push_back(SimpleTerm(5, phi));
  return cert;
}

Tensor cyclic_sum_symmetrize(const Tensor& t) {
  for (std::size_t d : t.shape()) {
    if (d != t.shape().front()) throw ShapeError("cyclic_sum_symmetrize: party dimensions differ");
  }
  Tensor out(t.shape());
  for (std::size_t c = 0; c < t.order(); ++c) out = tensor_add(out, cyclic_shift(t, c));
  return out;
}

Tensor label_swap(const Tensor& t) {
  for (std::size_t d : t.shape()) {
    if (d != 2 && d != 4) throw ShapeError("label_swap: party dimension must be 2 or 4");
  }
  Tensor out(t.shape());
  MultiIndex idx(t.order());
  for (const auto& [src, c] : t.entries()) {
    // Flipping every binary digit of i in a space of size d is d - 1 - i.
    for (std::size_t i = 0; i < src.size(); ++i) idx[i] = t.shape()[i] - 1 - src[i];
    out.add(idx, c);
  }
  return out;
}

Tensor local_symmetrize_sym2(const Tensor& t) { return tensor_add(t, label_swap(t)); }

Tensor cyclic_shift_product(const Tensor& t) {
  if (t.order() == 0) return t;
  Tensor out = t;
  for (std::size_t c = 1; c < t.order(); ++c) out = kron_parties(out, cyclic_shift(t, c));
  return out;
}

}  // namespace nqc
