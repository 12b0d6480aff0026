#include "nqc/lower_bounds.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "nqc/combinatorics.hpp"
#include "nqc/error.hpp"

namespace nqc {

FlatteningResult flattening_bound(const Tensor& t, const std::optional<std::vector<std::vector<std::size_t>>>& parts) {
  const std::size_t k = t.order();
  if (k < 2) throw ArgumentError("flattening_bound: need at least two parties");
  std::vector<std::vector<std::size_t>> candidates;
  if (parts) {
    candidates = *parts;
  } else {
    if (k > 16) throw SizeCapError("flattening_bound: more than 16 parties requires explicit bipartitions");
    const std::size_t others = std::size_t{1} << (k - 1);
    for (std::size_t mask = 0; mask + 1 < others; ++mask) {
      std::vector<std::size_t> s{0};
      for (std::size_t i = 1; i < k; ++i) {
        if ((mask >> (i - 1)) & 1U) s.push_back(i);
      }
      candidates.push_back(std::move(s));
    }
  }
  FlatteningResult result;
  for (auto& s : candidates) {
    const std::size_t rank = matrix_rank_exact(flatten(t, s));
    result.ranks.emplace_back(s, rank);
    if (result.ranks.size() == 1 || rank > result.bound) {
      result.bound = rank;
      result.best_parts = s;
    }
  }
  return result;
}

namespace {

// Index of every k-subset of {0..m-1} in lexicographic order.
std::map<std::vector<std::size_t>, std::size_t> subset_index(std::size_t m, std::size_t k) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (auto& s : k_subsets(m, k)) index.emplace(std::move(s), index.size());
  return index;
}

struct ExteriorTerm {
  std::size_t from;  // index of P
  std::size_t to;    // index of P ^ j
  int sign;
};

// Nonzero terms of phi(|j>) = sum_P |P> x |P ^ j>.
std::vector<ExteriorTerm> exterior_terms(std::size_t n, std::size_t p, std::size_t j, WedgeSign sign) {
  const std::size_t m = 2 * n - 1;
  const auto upper = subset_index(m, p + 1);
  std::vector<ExteriorTerm> out;
  std::size_t from = 0;
  for (const auto& s : k_subsets(m, p)) {
    if (!std::binary_search(s.begin(), s.end(), j)) {
      std::vector<std::size_t> merged = s;
      merged.insert(std::upper_bound(merged.begin(), merged.end(), j), j);
      const auto greater = static_cast<std::size_t>(s.end() - std::upper_bound(s.begin(), s.end(), j));
      const std::size_t swaps = sign == WedgeSign::kAppend ? greater : p - greater;
      out.push_back({from, upper.at(merged), swaps % 2 == 0 ? 1 : -1});
    }
    ++from;
  }
  return out;
}

void check_exterior_args(std::size_t n, std::size_t p) {
  if (n == 0) throw ArgumentError("exterior_map: need n >= 1");
  if (p > 2 * n - 2) throw ArgumentError("exterior_map: need 0 <= p <= 2n-2");
}

}  // namespace

LinearMap exterior_map(std::size_t n, std::size_t p, WedgeSign sign) {
  check_exterior_args(n, p);
  const std::size_t m = 2 * n - 1;
  const auto lower_dim = static_cast<std::size_t>(binomial(m, p));
  const auto upper_dim = static_cast<std::size_t>(binomial(m, p + 1));
  LinearMap phi(lower_dim * upper_dim, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& term : exterior_terms(n, p, j, sign)) {
      phi.set(term.from * upper_dim + term.to, j, Scalar(term.sign));
    }
  }
  return phi;
}

LinearMap exterior_image(std::size_t n, std::size_t p, std::size_t j, WedgeSign sign) {
  check_exterior_args(n, p);
  const std::size_t m = 2 * n - 1;
  if (j >= m) throw ArgumentError("exterior_image: basis index out of range");
  LinearMap image(static_cast<std::size_t>(binomial(m, p)), static_cast<std::size_t>(binomial(m, p + 1)));
  for (const auto& term : exterior_terms(n, p, j, sign)) image.set(term.from, term.to, Scalar(term.sign));
  return image;
}

LinearMap middle_compression(std::size_t n) {
  if (n == 0) throw ArgumentError("middle_compression: need n >= 1");
  LinearMap m(2 * n - 1, n * n);
  for (std::size_t i2 = 0; i2 < n; ++i2) {
    for (std::size_t i3 = 0; i3 < n; ++i3) m.set(i2 + i3, i2 * n + i3, Scalar(1));
  }
  return m;
}

AlphaTable AlphaTable::ones(std::size_t n) { return AlphaTable{n, std::vector<Scalar>(n * n * n, Scalar(1))}; }

void AlphaTable::validate() const {
  if (n == 0) throw ArgumentError("alpha table: need n >= 1");
  if (values.size() != n * n * n) throw ArgumentError("alpha table: expected n^3 coefficients");
  for (const auto& v : values) {
    if (v.is_zero()) throw ArgumentError("alpha table: coefficients must be nonzero");
  }
}

Tensor weighted_imm3(const AlphaTable& alphas) {
  alphas.validate();
  const std::size_t n = alphas.n;
  Tensor t(Shape(3, n * n));
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      for (std::size_t x3 = 0; x3 < n; ++x3) t.set({x1 * n + x2, x2 * n + x3, x3 * n + x1}, alphas(x1, x2, x3));
    }
  }
  return t;
}

namespace {

// A = flatten of (id x phi x id)(id x compression x id) t1, rows (x1, x2, P), columns (Q, x3, x1).
LinearMap build_young_matrix(const AlphaTable& alphas, WedgeSign sign) {
  const std::size_t n = alphas.n;
  const std::size_t p = n - 1;
  const auto lower_dim = static_cast<std::size_t>(binomial(2 * n - 1, p));
  const auto upper_dim = static_cast<std::size_t>(binomial(2 * n - 1, p + 1));
  const LinearMap id = LinearMap::identity(n * n);
  const Tensor t2 = apply_local_maps(weighted_imm3(alphas), {id, middle_compression(n), id});
  const Tensor s = apply_local_maps(t2, {id, exterior_map(n, p, sign), id});
  return flatten(split_party(s, 1, lower_dim, upper_dim), {0, 1});
}

}  // namespace

LinearMap young_flattening_matrix(const AlphaTable& alphas, WedgeSign sign) {
  alphas.validate();
  return build_young_matrix(alphas, sign);
}

std::vector<LinearMap> young_flattening_blocks(const AlphaTable& alphas, WedgeSign sign) {
  alphas.validate();
  const std::size_t n = alphas.n;
  const auto lower_dim = static_cast<std::size_t>(binomial(2 * n - 1, n - 1));
  const auto upper_dim = static_cast<std::size_t>(binomial(2 * n - 1, n));
  const LinearMap a = build_young_matrix(alphas, sign);
  std::vector<LinearMap> blocks(n, LinearMap(n * lower_dim, upper_dim * n));
  for (const auto& [pos, v] : a.entries()) {
    const std::size_t row_x1 = pos.first / (n * lower_dim);
    const std::size_t col_x1 = pos.second % n;
    if (row_x1 != col_x1) throw Error("young flattening: entry outside the block diagonal");
    const std::size_t row = pos.first % (n * lower_dim);     // (x2, P)
    const std::size_t col = pos.second / n;                  // (Q, x3)
    blocks[row_x1].set(row, col, v);
  }
  return blocks;
}

YoungFlatteningReport young_flattening_imm3(const AlphaTable& alphas, const YoungOptions& options) {
  alphas.validate();
  if (alphas.n > options.max_n) {
    throw SizeCapError("young_flattening_imm3: n = " + std::to_string(alphas.n) + " exceeds the size cap " +
                       std::to_string(options.max_n));
  }
  YoungFlatteningReport report;
  report.n = alphas.n;
  report.p = alphas.n - 1;
  report.e = static_cast<std::size_t>(binomial(2 * alphas.n - 2, report.p));
  report.alphas = alphas;
  for (const auto& block : young_flattening_blocks(alphas, options.sign)) {
    report.block_size = block.rows();
    report.block_ranks.push_back(matrix_rank_exact(block));
    report.matrix_rank += report.block_ranks.back();
  }
  report.bound = (report.matrix_rank + report.e - 1) / report.e;
  return report;
}

namespace {

struct Target {
  std::vector<std::size_t> set;  // sorted n-subset of {0..2n-2}
  std::size_t level;             // x3, 0-based
};

// (a < b) in the order used for the triangularity argument.
bool lm_less(const Target& a, const Target& b) {
  const std::size_t l = std::min(a.level, b.level) + 1;
  const auto a_head = std::vector<std::size_t>(a.set.begin(), a.set.begin() + static_cast<std::ptrdiff_t>(l));
  const auto b_head = std::vector<std::size_t>(b.set.begin(), b.set.begin() + static_cast<std::ptrdiff_t>(l));
  if (b_head < a_head) return true;
  return a_head == b_head && a.level < b.level;
}

}  // namespace

bool young_triangularity_check(std::size_t n) {
  if (n == 0) throw ArgumentError("young_triangularity_check: need n >= 1");
  const std::size_t m = 2 * n - 1;
  const auto lower = k_subsets(m, n - 1);
  const auto upper = k_subsets(m, n);
  const auto lower_index = subset_index(m, n - 1);
  const std::size_t upper_dim = upper.size();
  const LinearMap block = young_flattening_blocks(AlphaTable::ones(n)).front();
  const auto cols = block.transpose().columns();  // per source row: list of (target column, value)

  // Assign each target (Q, l) the source (Q minus its l-th element, x2 = q_l - l).
  const std::size_t count = upper_dim * n;
  std::vector<std::size_t> source_of(count);
  std::vector<bool> used(count, false);
  for (std::size_t qi = 0; qi < upper_dim; ++qi) {
    for (std::size_t l = 0; l < n; ++l) {
      const auto& q = upper[qi];
      std::vector<std::size_t> rest = q;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(l));
      const std::size_t x2 = q[l] - l;
      const std::size_t src = x2 * lower.size() + lower_index.at(rest);
      const std::size_t tgt = qi * n + l;
      if (used[src] || block.at(src, tgt).is_zero()) return false;
      used[src] = true;
      source_of[tgt] = src;
    }
  }

  // Every other target hit by the assigned source must be strictly smaller.
  std::vector<std::vector<std::size_t>> successors(count);
  std::vector<std::size_t> indegree(count, 0);
  for (std::size_t tgt = 0; tgt < count; ++tgt) {
    const Target t{upper[tgt / n], tgt % n};
    for (const auto& [other, value] : cols[source_of[tgt]]) {
      if (other == tgt) continue;
      if (!lm_less(Target{upper[other / n], other % n}, t)) return false;
      successors[other].push_back(tgt);
      ++indegree[tgt];
    }
  }
  // Acyclic => a topological order of targets makes the block triangular.
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < count; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t cur = ready.front();
    ready.pop_front();
    ++seen;
    for (std::size_t next : successors[cur]) {
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  return seen == count;
}

std::uint64_t young_bound_formula(std::uint64_t n, std::uint64_t k) {
  if (k < 3 || k % 2 == 0) throw ArgumentError("young_bound_formula: k must be odd and >= 3");
  unsigned __int128 value = static_cast<unsigned __int128>(2 * n * n - n);
  for (std::uint64_t i = 3; i < k; ++i) {
    value *= n;
    if (value > std::numeric_limits<std::uint64_t>::max()) throw SizeCapError("young_bound_formula overflows");
  }
  return static_cast<std::uint64_t>(value);
}

std::uint64_t classical_bound(std::uint64_t k, std::uint64_t n) {
  if (k < 2 || n < 1) throw ArgumentError("classical_bound: need k >= 2 and n >= 1");
  return k * n;
}

MincutReport mincut_message_bound(const Multigraph& g, std::size_t n) {
  g.validate();
  const std::size_t k = g.vertex_count;
  if (k < 2) throw ArgumentError("mincut_message_bound: need at least two vertices");
  if (k > 20) throw SizeCapError("mincut_message_bound: cut enumeration limited to 20 vertices");
  MincutReport report;
  report.edge_count = g.edges.size();
  const auto deg = g.degrees();
  report.min_degree = *std::min_element(deg.begin(), deg.end());

  std::vector<bool> reached(k, false);
  std::deque<std::size_t> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& [a, b] : g.edges) {
      const std::size_t other = a == v ? b : (b == v ? a : k);
      if (other < k && !reached[other]) {
        reached[other] = true;
        queue.push_back(other);
      }
    }
  }
  report.connected = std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });

  std::size_t best = std::numeric_limits<std::size_t>::max();
  const std::size_t others = std::size_t{1} << (k - 1);
  for (std::size_t mask = 0; mask + 1 < others; ++mask) {
    // Vertex 0 is always on the inside; vertex i > 0 is inside iff bit i-1 is set.
    auto inside = [mask](std::size_t v) { return v == 0 || ((mask >> (v - 1)) & 1U) != 0; };
    std::size_t crossing = 0;
    for (const auto& [a, b] : g.edges) crossing += inside(a) != inside(b) ? 1 : 0;
    best = std::min(best, crossing);
  }
  report.mincut = best;
  report.feasible = report.mincut >= n;
  report.edge_lower_bound = (static_cast<std::uint64_t>(k) * n + 1) / 2;
  return report;
}

LogrankEnvelope logrank_envelope(std::uint64_t k, double nq) {
  if (k < 2) throw ArgumentError("logrank_envelope: need k >= 2");
  if (!(nq >= 0)) throw ArgumentError("logrank_envelope: need nq >= 0");
  LogrankEnvelope env;
  env.nq0_lower = nq;
  env.nq0_upper = static_cast<double>(k - 1) * nq;
  env.nq0_asymptotic = static_cast<double>(k) * nq / 2.0;
  env.caveat =
      "asymptotic value is k*nq/2; the actual bound is (k+eps)/2 * nq for any eps > 0, "
      "valid only once nq exceeds a threshold depending on eps";
  return env;
}

}  // namespace nqc
