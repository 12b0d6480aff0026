#include "nqc/certificates.hpp"

#include <string>

#include "nqc/combinatorics.hpp"
#include "nqc/error.hpp"

namespace nqc {

namespace {

template <class Term>
void validate_terms(const Shape& shape, const std::vector<Term>& terms) {
  for (std::size_t a = 0; a < terms.size(); ++a) {
    if (terms[a].size() != shape.size()) {
      throw ShapeError("certificate term " + std::to_string(a) + " has " + std::to_string(terms[a].size()) +
                       " vectors for " + std::to_string(shape.size()) + " parties");
    }
    for (std::size_t p = 0; p < shape.size(); ++p) {
      if (terms[a][p].size() != shape[p]) {
        throw ShapeError("certificate term " + std::to_string(a) + ", party " + std::to_string(p) +
                         ": vector length " + std::to_string(terms[a][p].size()) + " != " + std::to_string(shape[p]));
      }
    }
  }
}

// Calls visit(idx, coefficients) for every index in the support of the
// simple tensor described by term, with one coefficient per party.
template <class Coef, class Visit>
void for_each_product_entry(const std::vector<std::vector<Coef>>& term, Visit&& visit) {
  const std::size_t k = term.size();
  std::vector<std::vector<std::size_t>> nonzero(k);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t i = 0; i < term[p].size(); ++i) {
      if (!term[p][i].is_zero()) nonzero[p].push_back(i);
    }
    if (nonzero[p].empty()) return;
  }
  std::vector<std::size_t> pos(k, 0);
  MultiIndex idx(k);
  std::vector<const Coef*> coefs(k);
  while (true) {
    for (std::size_t p = 0; p < k; ++p) {
      idx[p] = nonzero[p][pos[p]];
      coefs[p] = &term[p][idx[p]];
    }
    visit(idx, coefs);
    std::size_t p = 0;
    for (; p < k; ++p) {
      if (++pos[p] < nonzero[p].size()) break;
      pos[p] = 0;
    }
    if (p == k) return;
  }
}

void check_shape(const Shape& cert_shape, const Shape& target_shape) {
  if (cert_shape != target_shape) throw ShapeError("certificate shape does not match target shape");
}

// Walks the union of two sorted entry maps and returns the first index where
// `differs(a_coef_or_null, b_coef_or_null)` holds.
template <class MapA, class MapB, class Differs>
std::optional<MultiIndex> first_difference(const MapA& a, const MapB& b, Differs&& differs) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      if (differs(&ia->second, nullptr)) return ia->first;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      if (differs(nullptr, &ib->second)) return ib->first;
      ++ib;
    } else {
      if (differs(&ia->second, &ib->second)) return ia->first;
      ++ia;
      ++ib;
    }
  }
  return std::nullopt;
}

}  // namespace

void RankCertificate::validate() const { validate_terms(shape, terms); }

void BorderCertificate::validate() const { validate_terms(shape, terms); }

Tensor simple_tensor(const Shape& shape, const SimpleTerm& term) {
  validate_terms(shape, std::vector<SimpleTerm>{term});
  Tensor out(shape);
  for_each_product_entry(term, [&](const MultiIndex& idx, const std::vector<const Scalar*>& coefs) {
    Scalar value(1);
    for (const Scalar* c : coefs) value *= *c;
    out.add(idx, value);
  });
  return out;
}

Tensor certificate_sum(const RankCertificate& c) {
  c.validate();
  Tensor out(c.shape);
  for (const auto& term : c.terms) {
    for_each_product_entry(term, [&](const MultiIndex& idx, const std::vector<const Scalar*>& coefs) {
      Scalar value(1);
      for (const Scalar* x : coefs) value *= *x;
      out.add(idx, value);
    });
  }
  return out;
}

EpsTensor certificate_sum(const BorderCertificate& c, std::size_t max_degree) {
  c.validate();
  EpsTensor out(c.shape);
  for (const auto& term : c.terms) {
    for_each_product_entry(term, [&](const MultiIndex& idx, const std::vector<const EpsScalar*>& coefs) {
      EpsScalar value(1);
      for (const EpsScalar* x : coefs) value = EpsScalar::truncated_product(value, *x, max_degree);
      out.add(idx, value);
    });
  }
  return out;
}

Verdict verify_rank_cert(const RankCertificate& c, const Tensor& target, VerifyMode mode) {
  check_shape(c.shape, target.shape());
  const Tensor sum = certificate_sum(c);
  Verdict v;
  v.r = c.rank();
  if (mode == VerifyMode::kExact) {
    v.first_violation = first_difference(sum.entries(), target.entries(), [](const Scalar* a, const Scalar* b) {
      return a == nullptr || b == nullptr || *a != *b;
    });
  } else {
    v.first_violation = first_difference(sum.entries(), target.entries(), [](const Scalar* a, const Scalar* b) {
      return (a == nullptr) != (b == nullptr);
    });
  }
  v.pass = !v.first_violation.has_value();
  if (v.pass) {
    v.detail = mode == VerifyMode::kExact ? "sum of terms equals target" : "sum of terms has the target's support";
  } else {
    const MultiIndex& idx = *v.first_violation;
    v.detail = "mismatch at " + format_index(idx) + ": certificate gives " + sum.at(idx).to_string() +
               ", target has " + target.at(idx).to_string();
  }
  return v;
}

Verdict verify_border_cert(const BorderCertificate& c, const Tensor& target) {
  check_shape(c.shape, target.shape());
  const EpsTensor sum = certificate_sum(c, c.h);
  const std::size_t h = c.h;
  Verdict v;
  v.r = c.rank();
  v.first_violation = first_difference(sum.entries(), target.entries(), [h](const EpsScalar* a, const Scalar* b) {
    if (a != nullptr) {
      for (std::size_t d = 0; d < h; ++d) {
        if (!a->coefficient(d).is_zero()) return true;
      }
    }
    const Scalar top = a == nullptr ? Scalar() : a->coefficient(h);
    const Scalar want = b == nullptr ? Scalar() : *b;
    return top != want;
  });
  v.pass = !v.first_violation.has_value();
  if (v.pass) {
    v.detail = "sum of terms equals eps^" + std::to_string(h) + " * target + O(eps^" + std::to_string(h + 1) + ")";
  } else {
    const MultiIndex& idx = *v.first_violation;
    v.detail = "mismatch at " + format_index(idx) + ": certificate expansion " + sum.at(idx).to_string() +
               " (truncated at degree " + std::to_string(h) + "), target " + target.at(idx).to_string();
  }
  return v;
}

namespace {

template <class Term>
std::vector<Term> product_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      Term t = ta;
      t.insert(t.end(), tb.begin(), tb.end());
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

RankCertificate cert_tensor_product(const RankCertificate& a, const RankCertificate& b) {
  a.validate();
  b.validate();
  RankCertificate out;
  out.shape = a.shape;
  out.shape.insert(out.shape.end(), b.shape.begin(), b.shape.end());
  out.terms = product_terms(a.terms, b.terms);
  return out;
}

BorderCertificate cert_tensor_product(const BorderCertificate& a, const BorderCertificate& b) {
  a.validate();
  b.validate();
  BorderCertificate out;
  out.shape = a.shape;
  out.shape.insert(out.shape.end(), b.shape.begin(), b.shape.end());
  out.h = a.h + b.h;
  out.terms = product_terms(a.terms, b.terms);
  return out;
}

BorderCertificate lift_certificate(const RankCertificate& c) {
  c.validate();
  BorderCertificate out;
  out.shape = c.shape;
  out.h = 0;
  for (const auto& term : c.terms) {
    EpsSimpleTerm lifted;
    for (const auto& v : term) lifted.emplace_back(v.begin(), v.end());
    out.terms.push_back(std::move(lifted));
  }
  return out;
}

RankCertificate degenerate_to_rank(const BorderCertificate& c, const Tensor& target) {
  const Verdict v = verify_border_cert(c, target);
  if (!v.pass) throw ArgumentError("degenerate_to_rank: certificate does not verify: " + v.detail);
  const std::size_t k = c.shape.size();
  const auto degree_splits = compositions(c.h, k);

  RankCertificate out;
  out.shape = c.shape;
  std::size_t produced = 0;
  for (const auto& term : c.terms) {
    for (const auto& split : degree_splits) {
      ++produced;
      SimpleTerm piece(k);
      bool zero = false;
      for (std::size_t p = 0; p < k && !zero; ++p) {
        piece[p].reserve(term[p].size());
        bool any = false;
        for (const auto& x : term[p]) {
          piece[p].push_back(x.coefficient(split[p]));
          any = any || !piece[p].back().is_zero();
        }
        zero = !any;
      }
      if (!zero) out.terms.push_back(std::move(piece));
    }
  }
  const std::uint64_t bound = binomial(c.h + k - 1, k - 1) * c.rank();
  if (produced > bound) throw Error("degenerate_to_rank: produced more summands than binom(h+k-1,k-1)*r");
  return out;
}

}  // namespace nqc
