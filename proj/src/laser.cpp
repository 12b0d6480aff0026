#include "nqc/laser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "nqc/certificates.hpp"
#include "nqc/error.hpp"
#include "nqc/exponents.hpp"
#include "nqc/generators.hpp"

namespace nqc {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

// lookup[i][x] = (group, position within group) of index x of party i.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> group_lookup(const BlockDecomposition& d,
                                                                          const Shape& shape) {
  d.validate(shape);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> lookup(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    lookup[i].resize(shape[i]);
    for (std::size_t g = 0; g < d.groups[i].size(); ++g) {
      for (std::size_t pos = 0; pos < d.groups[i][g].size(); ++pos) lookup[i][d.groups[i][g][pos]] = {g, pos};
    }
  }
  return lookup;
}

}  // namespace

void BlockDecomposition::validate(const Shape& shape) const {
  if (groups.size() != shape.size()) throw ArgumentError("block decomposition: party count does not match shape");
  for (std::size_t i = 0; i < shape.size(); ++i) {
    std::vector<bool> seen(shape[i], false);
    std::size_t covered = 0;
    for (const auto& g : groups[i]) {
      if (g.empty()) throw ArgumentError("block decomposition: empty group at party " + std::to_string(i));
      for (std::size_t x : g) {
        if (x >= shape[i] || seen[x]) {
          throw ArgumentError("block decomposition: groups of party " + std::to_string(i) +
                              " overlap or leave the index range");
        }
        seen[x] = true;
        ++covered;
      }
    }
    if (covered != shape[i]) throw ArgumentError("block decomposition: groups of party " + std::to_string(i) +
                                                 " do not cover the index range");
  }
}

std::vector<std::size_t> BlockDecomposition::group_counts() const {
  std::vector<std::size_t> counts;
  for (const auto& party : groups) counts.push_back(party.size());
  return counts;
}

BlockDecomposition BlockDecomposition::trivial(const Shape& shape) {
  BlockDecomposition d;
  for (std::size_t dim : shape) {
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), 0);
    d.groups.push_back({all});
  }
  return d;
}

BlockDecomposition BlockDecomposition::singletons(const Shape& shape) {
  BlockDecomposition d;
  for (std::size_t dim : shape) {
    std::vector<std::vector<std::size_t>> party;
    for (std::size_t x = 0; x < dim; ++x) party.push_back({x});
    d.groups.push_back(std::move(party));
  }
  return d;
}

Tensor outer_structure(const Tensor& t, const BlockDecomposition& d) {
  const auto lookup = group_lookup(d, t.shape());
  Tensor out(d.group_counts());
  MultiIndex j(t.order());
  for (const auto& [idx, c] : t.entries()) {
    for (std::size_t i = 0; i < idx.size(); ++i) j[i] = lookup[i][idx[i]].first;
    out.set(j, Scalar(1));
  }
  return out;
}

Tensor inner_block(const Tensor& t, const BlockDecomposition& d, const MultiIndex& j) {
  const auto lookup = group_lookup(d, t.shape());
  if (j.size() != t.order()) throw ArgumentError("inner_block: group multi-index has the wrong length");
  Shape shape(t.order());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i] >= d.groups[i].size()) throw ArgumentError("inner_block: group index out of range");
    shape[i] = d.groups[i][j[i]].size();
  }
  Tensor out(shape);
  MultiIndex local(t.order());
  for (const auto& [idx, c] : t.entries()) {
    bool inside = true;
    for (std::size_t i = 0; i < idx.size() && inside; ++i) {
      inside = lookup[i][idx[i]].first == j[i];
      local[i] = lookup[i][idx[i]].second;
    }
    if (inside) out.set(local, c);
  }
  return out;
}

BlockDecomposition decomposition_product(const BlockDecomposition& a, const BlockDecomposition& b, Pairing pairing) {
  if (pairing == Pairing::kConcatenate) {
    BlockDecomposition out = a;
    out.groups.insert(out.groups.end(), b.groups.begin(), b.groups.end());
    return out;
  }
  if (a.groups.size() != b.groups.size()) throw ShapeError("decomposition_product: party counts differ");
  BlockDecomposition out;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    std::size_t db = 0;
    for (const auto& g : b.groups[i]) db += g.size();
    std::vector<std::vector<std::size_t>> party;
    for (const auto& ga : a.groups[i]) {
      for (const auto& gb : b.groups[i]) {
        std::vector<std::size_t> g;
        for (std::size_t x : ga) {
          for (std::size_t y : gb) g.push_back(x * db + y);
        }
        std::sort(g.begin(), g.end());
        party.push_back(std::move(g));
      }
    }
    out.groups.push_back(std::move(party));
  }
  return out;
}

BlockDecomposition permute_decomposition(const BlockDecomposition& d, const std::vector<std::size_t>& perm) {
  check_permutation(perm, d.groups.size());
  BlockDecomposition out;
  out.groups.resize(d.groups.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out.groups[perm[i]] = d.groups[i];
  return out;
}

BlockDecomposition cyclic_shift_decomposition(const BlockDecomposition& d) {
  const std::size_t k = d.groups.size();
  BlockDecomposition out = d;
  for (std::size_t c = 1; c < k; ++c) {
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = (i + c) % k;
    out = decomposition_product(out, permute_decomposition(d, perm), Pairing::kPartywise);
  }
  return out;
}

BlockDecomposition str_decomposition(std::size_t q, std::size_t k) {
  const Tensor str = gen_str(q, k);
  BlockDecomposition d = BlockDecomposition::trivial(str.shape());
  std::vector<std::size_t> rest(q);
  std::iota(rest.begin(), rest.end(), 1);
  for (std::size_t party : {0, 2}) d.groups[party] = {{0}, rest};
  return d;
}

Tensor apply_witness(const Tensor& a, const IsoWitness& w) {
  const std::size_t k = a.order();
  check_permutation(w.party_perm, k);
  if (w.index_maps.size() != k) throw ArgumentError("apply_witness: expected one index map per party");
  Shape shape(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (w.index_maps[i].size() != a.shape()[i]) throw ArgumentError("apply_witness: index map size mismatch");
    shape[w.party_perm[i]] = a.shape()[i];
  }
  Tensor out(shape);
  MultiIndex y(k);
  for (const auto& [x, c] : a.entries()) {
    for (std::size_t i = 0; i < k; ++i) y[w.party_perm[i]] = w.index_maps[i].at(x[i]);
    out.add(y, c);
  }
  return out;
}

namespace {

struct PartyProfile {
  std::size_t dim = 0;
  std::vector<std::size_t> degrees;  // sorted entry counts per index value

  bool operator==(const PartyProfile& o) const { return dim == o.dim && degrees == o.degrees; }
};

std::vector<PartyProfile> party_profiles(const Tensor& t) {
  std::vector<PartyProfile> out(t.order());
  for (std::size_t i = 0; i < t.order(); ++i) {
    out[i].dim = t.shape()[i];
    out[i].degrees.assign(t.shape()[i], 0);
  }
  for (const auto& [idx, c] : t.entries()) {
    for (std::size_t i = 0; i < idx.size(); ++i) ++out[i].degrees[idx[i]];
  }
  for (auto& p : out) std::sort(p.degrees.begin(), p.degrees.end());
  return out;
}

// pairs[i][j] = number of distinct (x_i, x_j) in the support.
std::vector<std::vector<std::size_t>> pair_projections(const Tensor& t) {
  const std::size_t k = t.order();
  std::vector<std::vector<std::size_t>> out(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& entry : t.entries()) seen.emplace(entry.first[i], entry.first[j]);
      out[i][j] = out[j][i] = seen.size();
    }
  }
  return out;
}

std::vector<std::string> sorted_coefficients(const Tensor& t) {
  std::vector<std::string> out;
  for (const auto& entry : t.entries()) out.push_back(entry.second.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

// Backtracking matcher for a fixed party alignment: finds bijections f_i with
// f(a) = b, where b's parties are already reordered to a's order.
class EntryMatcher {
 public:
  EntryMatcher(const Tensor& a, const std::vector<std::pair<MultiIndex, Scalar>>& b, std::size_t& nodes,
               std::size_t budget)
      : shape_(a.shape()), b_(b), nodes_(nodes), budget_(budget) {
    for (const auto& entry : a.entries()) a_.push_back(entry);
    fwd_.resize(shape_.size());
    bwd_.resize(shape_.size());
    for (std::size_t i = 0; i < shape_.size(); ++i) {
      fwd_[i].assign(shape_[i], kUnset);
      bwd_[i].assign(shape_[i], kUnset);
    }
    used_.assign(b_.size(), false);
  }

  std::optional<std::vector<std::vector<std::size_t>>> run() {
    if (!extend(0)) return std::nullopt;
    // Indices outside the support are paired up in ascending order.
    for (std::size_t i = 0; i < shape_.size(); ++i) {
      std::size_t next_free = 0;
      for (std::size_t x = 0; x < shape_[i]; ++x) {
        if (fwd_[i][x] != kUnset) continue;
        while (bwd_[i][next_free] != kUnset) ++next_free;
        fwd_[i][x] = next_free;
        bwd_[i][next_free] = x;
      }
    }
    return fwd_;
  }

 private:
  bool extend(std::size_t pos) {
    if (pos == a_.size()) return true;
    const auto& [x, coef] = a_[pos];
    for (std::size_t cand = 0; cand < b_.size(); ++cand) {
      if (used_[cand] || !(b_[cand].second == coef)) continue;
      if (++nodes_ > budget_) throw SizeCapError("iso_relabel_check: search exceeded the node budget");
      const MultiIndex& y = b_[cand].first;
      bool ok = true;
      for (std::size_t i = 0; i < x.size() && ok; ++i) {
        ok = fwd_[i][x[i]] == kUnset ? bwd_[i][y[i]] == kUnset : fwd_[i][x[i]] == y[i];
      }
      if (!ok) continue;
      std::vector<std::size_t> assigned;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (fwd_[i][x[i]] == kUnset) {
          fwd_[i][x[i]] = y[i];
          bwd_[i][y[i]] = x[i];
          assigned.push_back(i);
        }
      }
      used_[cand] = true;
      if (extend(pos + 1)) return true;
      used_[cand] = false;
      for (std::size_t i : assigned) {
        bwd_[i][y[i]] = kUnset;
        fwd_[i][x[i]] = kUnset;
      }
    }
    return false;
  }

  Shape shape_;
  std::vector<std::pair<MultiIndex, Scalar>> a_;
  const std::vector<std::pair<MultiIndex, Scalar>>& b_;
  std::vector<std::vector<std::size_t>> fwd_;
  std::vector<std::vector<std::size_t>> bwd_;
  std::vector<bool> used_;
  std::size_t& nodes_;
  std::size_t budget_;
};

IsoWitness identity_witness(const Shape& shape) {
  IsoWitness w;
  w.party_perm.resize(shape.size());
  std::iota(w.party_perm.begin(), w.party_perm.end(), 0);
  for (std::size_t d : shape) {
    std::vector<std::size_t> id(d);
    std::iota(id.begin(), id.end(), 0);
    w.index_maps.push_back(std::move(id));
  }
  return w;
}

}  // namespace

std::optional<IsoWitness> iso_relabel_check(const Tensor& a, const Tensor& b, bool search, std::size_t node_budget) {
  const std::size_t k = a.order();
  if (b.order() != k) throw ShapeError("iso_relabel_check: party counts differ");
  Shape sa = a.shape();
  Shape sb = b.shape();
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;

  if (!search) {
    if (a == b) return identity_witness(a.shape());
    return std::nullopt;
  }
  if (a.nnz() != b.nnz() || sorted_coefficients(a) != sorted_coefficients(b)) return std::nullopt;

  const auto prof_a = party_profiles(a);
  const auto prof_b = party_profiles(b);
  const auto pairs_a = pair_projections(a);
  const auto pairs_b = pair_projections(b);

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t nodes = 0;
  do {
    bool plausible = true;
    for (std::size_t i = 0; i < k && plausible; ++i) {
      plausible = prof_a[i] == prof_b[perm[i]];
      for (std::size_t j = 0; j < i && plausible; ++j) plausible = pairs_a[i][j] == pairs_b[perm[i]][perm[j]];
    }
    if (!plausible) continue;
    // b with its parties pulled back into a's order.
    std::vector<std::pair<MultiIndex, Scalar>> pulled;
    pulled.reserve(b.nnz());
    MultiIndex y(k);
    for (const auto& [idx, c] : b.entries()) {
      for (std::size_t i = 0; i < k; ++i) y[i] = idx[perm[i]];
      pulled.emplace_back(y, c);
    }
    EntryMatcher matcher(a, pulled, nodes, node_budget);
    if (auto maps = matcher.run()) {
      IsoWitness w{perm, std::move(*maps)};
      if (apply_witness(a, w) == b) return w;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::optional<MamuMatch> match_mamu_pattern(const Tensor& t) {
  const std::size_t k = t.order();
  if (k < 3 || t.is_zero()) return std::nullopt;
  for (const auto& entry : t.entries()) {
    if (!(entry.second == Scalar(1))) return std::nullopt;
  }
  // neighbours[i][x] = values of party i+1 co-occurring with x at party i;
  // back[i][y] = values of party i-1 co-occurring with y at party i.
  std::vector<std::vector<std::set<std::size_t>>> forward(k), back(k);
  for (std::size_t i = 0; i < k; ++i) {
    forward[i].resize(t.shape()[i]);
    back[i].resize(t.shape()[i]);
  }
  for (const auto& entry : t.entries()) {
    const auto& idx = entry.first;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t next = (i + 1) % k;
      forward[i][idx[i]].insert(idx[next]);
      back[next][idx[next]].insert(idx[i]);
    }
  }
  // left[i][x] labels the variable shared with party i-1, in order of first appearance.
  std::vector<std::vector<std::size_t>> left(k);
  std::vector<std::vector<std::set<std::size_t>>> classes(k);  // members of each left label
  std::vector<std::size_t> dims(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::map<std::set<std::size_t>, std::size_t> label;
    left[i].resize(t.shape()[i]);
    for (std::size_t x = 0; x < t.shape()[i]; ++x) {
      if (back[i][x].empty()) return std::nullopt;
      auto [it, inserted] = label.try_emplace(back[i][x], label.size());
      left[i][x] = it->second;
      if (inserted) classes[i].emplace_back();
      classes[i][it->second].insert(x);
    }
    dims[i] = label.size();
  }
  IsoWitness w;
  w.party_perm.resize(k);
  std::iota(w.party_perm.begin(), w.party_perm.end(), 0);
  w.index_maps.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t next = (i + 1) % k;
    if (t.shape()[i] != dims[i] * dims[next]) return std::nullopt;
    std::vector<bool> hit(t.shape()[i], false);
    for (std::size_t x = 0; x < t.shape()[i]; ++x) {
      const auto& nbrs = forward[i][x];
      const std::size_t right = left[next][*nbrs.begin()];
      if (nbrs != classes[next][right]) return std::nullopt;
      const std::size_t target = left[i][x] * dims[next] + right;
      if (hit[target]) return std::nullopt;
      hit[target] = true;
      w.index_maps[i].push_back(target);
    }
  }
  if (apply_witness(t, w) != gen_mamu(dims)) return std::nullopt;
  return MamuMatch{dims, w};
}

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::optional<double> checked_pow(std::size_t base, std::size_t exp) {
  double v = 1;
  for (std::size_t i = 0; i < exp; ++i) v *= static_cast<double>(base);
  if (v > 9007199254740992.0) return std::nullopt;  // 2^53
  return v;
}

}  // namespace

LaserReport laser_pipeline(std::size_t k, std::size_t q, const LaserOptions& options) {
  if (k < 3) throw ArgumentError("laser_pipeline: need k >= 3");
  if (q < 2) throw ArgumentError("laser_pipeline: need q >= 2");
  LaserReport report;
  report.k = k;
  report.q = q;
  report.formula_only = options.formula_only;
  for (const char* name : {"border_certificate", "outer_structure_isomorphism", "delta_restriction_to_ghz",
                           "inner_blocks_matrix_multiplication"}) {
    report.stages.push_back(StageVerdict{name, false, false, ""});
  }

  auto finish = [&]() {
    if (!report.failed_stage && k % 2 == 1) {
      report.bound = laser_bound(k, q, 2);
      const auto volume = checked_pow(q, k);
      const auto r = checked_pow(q + 1, k);
      if (volume && r) {
        BlockSpec spec{{{static_cast<std::uint64_t>(*volume)}, {static_cast<std::uint64_t>(*volume)}},
                       static_cast<std::uint64_t>(*r)};
        report.tau_bound = omega_from_tau(k, solve_tau(spec));
      }
    }
    return report;
  };
  auto fail = [&](std::size_t stage, std::string detail) {
    report.stages[stage].run = true;
    report.stages[stage].passed = false;
    report.stages[stage].detail = std::move(detail);
    report.failed_stage = stage;
    return report;
  };
  auto pass = [&](std::size_t stage, std::string detail) {
    report.stages[stage].run = true;
    report.stages[stage].passed = true;
    report.stages[stage].detail = std::move(detail);
  };

  if (options.formula_only) {
    if (k % 2 == 0) throw ArgumentError("laser_pipeline: the bound needs odd k");
    return finish();
  }
  const auto entries = checked_pow(2 * q, k);
  if (q > options.max_q || k > options.max_k || !entries || *entries > static_cast<double>(options.max_entries)) {
    throw SizeCapError("laser_pipeline: (k, q) = (" + std::to_string(k) + ", " + std::to_string(q) +
                       ") exceeds the size caps; use formula-only mode");
  }

  // (1) q+1 term border certificate for Str_q^k.
  const Tensor str = gen_str(q, k);
  const BorderCertificate border = gen_str_border(q, k);
  const Verdict v = verify_border_cert(border, str);
  if (!v.pass || border.terms.size() != q + 1 || border.h != 1) {
    return fail(0, "border certificate rejected: " + v.detail);
  }
  pass(0, "border rank <= " + std::to_string(border.terms.size()) + " with h = 1");

  // (2) Outer structure of the cyclic-shift product versus <2,...,2>.
  const Tensor product = cyclic_shift_product(str);
  const BlockDecomposition dhat = cyclic_shift_decomposition(str_decomposition(q, k));
  const Tensor outer = outer_structure(product, dhat);
  const Tensor imm = gen_imm(2, k);
  std::optional<IsoWitness> witness;
  try {
    witness = iso_relabel_check(outer, imm, true);
  } catch (const ShapeError& e) {
    return fail(1, std::string("shapes incompatible: ") + e.what());
  }
  if (!witness) {
    return fail(1, "outer structure (" + std::to_string(outer.nnz()) + " entries, group counts " +
                       join(dhat.group_counts()) + ") is not a relabeled <2,...,2>");
  }
  pass(1, "witness party permutation " + join(witness->party_perm));

  // (3) |ab> -> delta_{a=b} |a> on every party of the relabeled outer structure.
  LinearMap delta(2, 4);
  delta.set(0, 0, Scalar(1));
  delta.set(1, 3, Scalar(1));
  const Tensor restricted = apply_local_maps(apply_witness(outer, *witness), std::vector<LinearMap>(k, delta));
  if (restricted != gen_ghz(2, k)) return fail(2, "delta map image differs from GHZ_2^k");
  pass(2, "image equals GHZ_2^k");

  // (4) Every nonzero block is a relabeled matrix multiplication tensor of volume q^k.
  const std::size_t target_volume = static_cast<std::size_t>(*checked_pow(q, k));
  for (const auto& [j, c] : outer.entries()) {
    const Tensor block = inner_block(product, dhat, j);
    const auto match = match_mamu_pattern(block);
    ++report.inner_blocks_checked;
    if (!match) return fail(3, "block " + format_index(j) + " is not a matrix multiplication pattern");
    std::size_t volume = 1;
    for (std::size_t n : match->dims) volume *= n;
    if (volume != target_volume) {
      return fail(3, "block " + format_index(j) + " has dims " + join(match->dims) + ", volume " +
                         std::to_string(volume));
    }
  }
  pass(3, std::to_string(report.inner_blocks_checked) + " blocks, each of volume " + std::to_string(target_volume));
  return finish();
}

}  // namespace nqc
