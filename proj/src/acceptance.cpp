#include "nqc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "nqc/combinatorics.hpp"
#include "nqc/error.hpp"
#include "nqc/exponents.hpp"
#include "nqc/generators.hpp"
#include "nqc/laser.hpp"
#include "nqc/lower_bounds.hpp"
#include "nqc/protocol.hpp"

namespace nqc {

namespace {

// Collects failed expectations; a criterion passes when none were recorded.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    if (ok()) return std::to_string(count_) + " checks";
    std::string s = std::to_string(failed_) + " of " + std::to_string(count_) + " checks failed:";
    for (const auto& f : failures_) s += " [" + f + "]";
    return s;
  }

 private:
  std::size_t count_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

Scalar random_nonzero_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  long p = 0;
  while (p == 0) p = num(rng);
  return Scalar(Rational(p, den(rng)));
}

Scalar random_scalar(std::mt19937_64& rng, bool complex) {
  std::uniform_int_distribution<long> num(-3, 3);
  return complex ? Scalar(Rational(num(rng)), Rational(num(rng))) : Scalar(num(rng));
}

Tensor random_tensor(std::mt19937_64& rng, const Shape& shape, std::size_t max_entries) {
  Tensor t(shape);
  std::uniform_int_distribution<std::size_t> count(1, std::min(max_entries, shape_volume(shape)));
  const std::size_t n = count(rng);
  while (t.nnz() < n) {
    MultiIndex idx;
    for (std::size_t d : shape) idx.push_back(std::uniform_int_distribution<std::size_t>(0, d - 1)(rng));
    Scalar c = random_scalar(rng, true);
    if (!c.is_zero()) t.set(idx, c);
  }
  return t;
}

LinearMap random_map(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  LinearMap m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, random_scalar(rng, true));
  }
  return m;
}

RankCertificate strassen(const AcceptanceOptions& o) { return o.strassen_override ? *o.strassen_override : gen_strassen7(); }

RankCertificate ghz_certificate(std::size_t r, std::size_t k) {
  RankCertificate c{Shape(k, r), {}};
  for (std::size_t a = 0; a < r; ++a) {
    Vector e(r, Scalar(0));
    e[a] = Scalar(1);
    c.terms.push_back(SimpleTerm(k, e));
  }
  return c;
}

void strassen_identity(Checks& c, const AcceptanceOptions& o) {
  const RankCertificate cert = strassen(o);
  const Verdict v = verify_rank_cert(cert, gen_mamu({2, 2, 2}), VerifyMode::kExact);
  c.expect(v.pass, "Strassen certificate verifies exactly: " + v.detail);
  c.expect(v.r == 7, "r = 7 (got " + std::to_string(v.r) + ")");
}

void imm25_identity(Checks& c, const AcceptanceOptions&) {
  const RankCertificate cert = gen_imm25_31();
  c.expect(cert.rank() == 31, "31 terms (got " + std::to_string(cert.rank()) + ")");
  c.expect(certificate_sum(cert) == gen_imm(2, 5), "terms sum to IMM_2^5");
}

void border_certificates(Checks& c, const AcceptanceOptions&) {
  for (std::size_t q = 1; q <= 10; ++q) {
    const BorderCertificate cert = gen_str_border(q, 5);
    const Verdict v = verify_border_cert(cert, gen_str(q, 5));
    c.expect(v.pass && cert.h == 1 && cert.rank() == q + 1, "q = " + std::to_string(q) + ": " + v.detail);
  }
}

void degeneration(Checks& c, const AcceptanceOptions&) {
  const Tensor target = gen_str(3, 5);
  const RankCertificate exact = degenerate_to_rank(gen_str_border(3, 5), target);
  c.expect(verify_rank_cert(exact, target, VerifyMode::kExact).pass, "degenerated certificate verifies");
  c.expect(exact.rank() <= ch_constant(1, 5) * 4, "at most 20 terms (got " + std::to_string(exact.rank()) + ")");
}

void young(Checks& c, const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed);
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t want_rank = n * n * static_cast<std::size_t>(binomial(2 * n - 1, n - 1));
    const std::size_t want_bound = 2 * n * n - n;
    for (std::size_t trial = 0; trial <= o.random_alpha_sets; ++trial) {
      AlphaTable alphas = AlphaTable::ones(n);
      if (trial > 0) {
        for (auto& a : alphas.values) a = random_nonzero_rational(rng);
      }
      const auto r = young_flattening_imm3(alphas);
      c.expect(r.matrix_rank == want_rank && r.bound == want_bound,
               "n = " + std::to_string(n) + ", alpha set " + std::to_string(trial) + ": rank " +
                   std::to_string(r.matrix_rank) + ", bound " + std::to_string(r.bound));
    }
  }
}

void even_flattening(Checks& c, const AcceptanceOptions&) {
  const auto four = flattening_bound(gen_imm(2, 4));
  c.expect(four.bound == 16, "IMM_2^4 bound 16 (got " + std::to_string(four.bound) + ")");
  const auto six = flattening_bound(gen_imm(2, 6), std::vector<std::vector<std::size_t>>{{0, 2, 4}});
  c.expect(six.bound == 64, "IMM_2^6 alternate parties 64 (got " + std::to_string(six.bound) + ")");
}

void laser_exponent(Checks& c, const AcceptanceOptions&) {
  const auto five = best_laser_bound(5, 10000, 2);
  c.expect(std::fabs(five.bound - 4.84438) <= 1e-4, "k = 5 bound " + std::to_string(five.bound));
  for (std::size_t k : {3, 5, 7, 9, 11}) {
    const auto b = best_laser_bound(k, 10000, 2);
    c.expect(b.below_k && b.bound < static_cast<double>(k), "k = " + std::to_string(k) + " bound below k");
  }
}

void tau_consistency(Checks& c, const AcceptanceOptions&) {
  for (std::uint64_t q = 2; q <= 64; ++q) {
    const std::uint64_t vol = q * q * q * q * q;
    const std::uint64_t r = (q + 1) * (q + 1) * (q + 1) * (q + 1) * (q + 1);
    const double tau = solve_tau(BlockSpec{{{vol}, {vol}}, r});
    c.expect(std::fabs(tau - laser_bound(5, q, 2) / 5) <= 1e-10, "q = " + std::to_string(q));
  }
  for (auto [n, r] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{32, 7}, {8, 7}, {2, 3}, {1024, 31}, {9, 100}}) {
    const double tau = solve_tau(BlockSpec{{{n}}, r});
    c.expect(std::fabs(tau - std::log(static_cast<double>(r)) / std::log(static_cast<double>(n))) <= 1e-12,
             "p = 1 closed form for N = " + std::to_string(n) + ", r = " + std::to_string(r));
  }
}

void laser_structure(Checks& c, const AcceptanceOptions&) {
  for (std::size_t k : {3, 5}) {
    for (std::size_t q : {2, 3, 4}) {
      const LaserReport r = laser_pipeline(k, q);
      bool all = r.passed() && r.stages.size() == 4;
      for (const auto& s : r.stages) all = all && s.run && s.passed;
      c.expect(all, "(k, q) = (" + std::to_string(k) + ", " + std::to_string(q) + ") all four stages pass");
    }
  }
  const LaserReport even = laser_pipeline(4, 2);
  c.expect(even.failed_stage == std::optional<std::size_t>(1), "k = 4 fails at the isomorphism stage");
}

void protocols(Checks& c, const AcceptanceOptions& o) {
  const FunctionTable eq3 = eq_cycle_function(3, 1);
  const ProtocolVerdict v3 =
      verify_protocol(build_protocol(strassen(o), gen_mamu({2, 2, 2}), VerifyMode::kExact), eq3);
  c.expect(v3.pass && v3.inputs_checked == 64 && v3.accepted == 8, "Strassen protocol: " + v3.detail);
  const FunctionTable eq5 = eq_cycle_function(5, 1);
  const ProtocolVerdict v5 = verify_protocol(build_protocol(gen_imm25_31(), gen_imm(2, 5), VerifyMode::kExact), eq5);
  c.expect(v5.pass && v5.inputs_checked == 1024 && v5.accepted == 32, "31-term protocol: " + v5.detail);
}

void mincut(Checks& c, const AcceptanceOptions&) {
  const auto k5 = mincut_message_bound(Multigraph::complete(5), 1);
  c.expect(k5.mincut == 4 && k5.feasible, "K_5 min cut 4");
  const auto c5 = mincut_message_bound(Multigraph::cycle(5), 3);
  c.expect(c5.mincut == 2 && !c5.feasible, "C_5 infeasible at n = 3");
}

void formulas(Checks& c, const AcceptanceOptions&) {
  c.expect(classical_bound(3, 1) == 3 && classical_bound(5, 2) == 10 && classical_bound(2, 1) == 2, "classical_bound");
  c.expect(young_bound_formula(2, 3) == 6 && young_bound_formula(2, 5) == 24 && young_bound_formula(1, 7) == 1,
           "young_bound_formula");
  c.expect(ch_constant(0, 5) == 1 && ch_constant(1, 5) == 5 && ch_constant(2, 3) == 6, "ch_constant");
  c.expect(std::fabs(cohn_umans(2) - 2) <= 1e-12 && std::fabs(cohn_umans(8.0 / 3) - 3) <= 1e-12 &&
               std::fabs(cohn_umans(2.3728639) - 2.55929585) <= 1e-12,
           "cohn_umans");
  const double l7 = std::log2(7.0);
  const auto e3 = logrank_envelope(3, l7);
  c.expect(std::fabs(e3.nq0_lower - l7) <= 1e-12 && std::fabs(e3.nq0_upper - 2 * l7) <= 1e-12 &&
               std::fabs(e3.nq0_asymptotic - 1.5 * l7) <= 1e-12,
           "logrank_envelope k = 3");
  const auto e5 = logrank_envelope(5, 1);
  c.expect(e5.nq0_lower == 1 && e5.nq0_upper == 4 && e5.nq0_asymptotic == 2.5 && !e5.caveat.empty(),
           "logrank_envelope k = 5");
}

void properties(Checks& c, const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed + 13);
  // Certificate products and degeneration.
  const RankCertificate s7 = strassen(o);
  const RankCertificate g2 = ghz_certificate(2, 2);
  c.expect(verify_rank_cert(cert_tensor_product(s7, g2), tensor_product(gen_mamu({2, 2, 2}), gen_ghz(2, 2)),
                            VerifyMode::kExact)
               .pass,
           "product of exact certificates verifies");
  for (std::size_t q = 2; q <= 3; ++q) {
    const BorderCertificate prod = cert_tensor_product(gen_str_border(q, 3), lift_certificate(g2));
    const Tensor target = tensor_product(gen_str(q, 3), gen_ghz(2, 2));
    c.expect(verify_border_cert(prod, target).pass && prod.h == 1, "border x lifted exact product verifies");
    const RankCertificate exact = degenerate_to_rank(prod, target);
    c.expect(verify_rank_cert(exact, target, VerifyMode::kExact).pass &&
                 exact.rank() <= ch_constant(prod.h, 5) * prod.rank(),
             "degenerated product verifies within the c_h bound");
  }
  // Flattening lower bound never exceeds a certified upper bound.
  const std::vector<std::pair<RankCertificate, Tensor>> bundled = {
      {s7, gen_mamu({2, 2, 2})},
      {gen_imm25_31(), gen_imm(2, 5)},
      {degenerate_to_rank(gen_str_border(3, 5), gen_str(3, 5)), gen_str(3, 5)},
      {ghz_certificate(3, 3), gen_ghz(3, 3)},
  };
  for (const auto& [cert, target] : bundled) {
    if (!verify_rank_cert(cert, target, VerifyMode::kExact).pass) {
      c.expect(false, "bundled certificate verifies");
      continue;
    }
    c.expect(flattening_bound(target).bound <= cert.rank(), "flattening <= certificate rank");
  }
  // apply_local_maps is functorial: (A B) acts as B then A.
  for (int trial = 0; trial < 20; ++trial) {
    const Shape shape{2, 3, 2};
    const Tensor t = random_tensor(rng, shape, 6);
    std::vector<LinearMap> inner, outer, composed;
    for (std::size_t d : shape) {
      inner.push_back(random_map(rng, d + 1, d));
      outer.push_back(random_map(rng, 2, d + 1));
      composed.push_back(compose(outer.back(), inner.back()));
    }
    c.expect(apply_local_maps(apply_local_maps(t, inner), outer) == apply_local_maps(t, composed),
             "functoriality trial " + std::to_string(trial));
  }
  // cleanup_functional is nonzero on every input tensor.
  for (std::size_t trial = 0; trial < o.cleanup_instances; ++trial) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    Shape shape;
    for (std::size_t i = 0; i < k; ++i) shape.push_back(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
    const std::size_t count = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::vector<Tensor> psis;
    for (std::size_t i = 0; i < count; ++i) psis.push_back(random_tensor(rng, shape, 4));
    const auto ell = cleanup_functional(psis);
    bool ok = true;
    for (const auto& psi : psis) ok = ok && !contract_all(psi, ell).is_zero();
    c.expect(ok, "cleanup instance " + std::to_string(trial));
  }
}

struct Criterion {
  const char* name;
  double budget;
  std::function<void(Checks&, const AcceptanceOptions&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"Strassen identity", 0.1, strassen_identity},
      {"31-term identity", 1, imm25_identity},
      {"Border certificate", 1, border_certificates},
      {"Degeneration", 1, degeneration},
      {"Young flattening", 60, young},
      {"Even-k flattening", 10, even_flattening},
      {"Laser exponent", 1, laser_exponent},
      {"Tau-solver consistency", 1, tau_consistency},
      {"Laser pipeline structure", 30, laser_structure},
      {"Protocol simulation", 10, protocols},
      {"Min-cut bound", 0.1, mincut},
      {"Formula suite", 0.1, formulas},
      {"Property suites", 60, properties},
  };
  return all;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) throw ArgumentError("run_criterion: unknown criterion " + std::to_string(id));
  const Criterion& crit = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult result;
  result.id = id;
  result.name = crit.name;
  result.budget_seconds = crit.budget;
  Checks checks;
  const auto start = std::chrono::steady_clock::now();
  try {
    crit.body(checks, options);
    result.pass = checks.ok();
    result.detail = checks.summary();
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.pass && result.seconds > result.budget_seconds) {
    result.pass = false;
    result.detail += "; exceeded time budget";
  }
  return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

}  // namespace nqc
