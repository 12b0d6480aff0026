#include "nqc/linear_map.hpp"

#include <map>
#include <string>

#include "nqc/error.hpp"

namespace nqc {

LinearMap LinearMap::identity(std::size_t n) {
  LinearMap m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar(1));
  return m;
}

LinearMap LinearMap::permutation(const std::vector<std::size_t>& perm) {
  LinearMap m(perm.size(), perm.size());
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (perm[j] >= perm.size() || seen[perm[j]]) throw ArgumentError("LinearMap::permutation: not a permutation");
    seen[perm[j]] = true;
    m.set(perm[j], j, Scalar(1));
  }
  return m;
}

LinearMap LinearMap::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  LinearMap m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw ShapeError("LinearMap::from_dense: ragged rows");
    for (std::size_t c = 0; c < ncols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void LinearMap::check_bounds(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) {
    throw ShapeError("matrix position (" + std::to_string(row) + "," + std::to_string(col) + ") out of bounds " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Scalar LinearMap::at(std::size_t row, std::size_t col) const {
  check_bounds(row, col);
  auto it = entries_.find({row, col});
  return it == entries_.end() ? Scalar() : it->second;
}

void LinearMap::add(std::size_t row, std::size_t col, const Scalar& value) {
  if (value.is_zero()) return;
  check_bounds(row, col);
  auto [it, inserted] = entries_.try_emplace({row, col}, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

void LinearMap::set(std::size_t row, std::size_t col, const Scalar& value) {
  check_bounds(row, col);
  if (value.is_zero()) {
    entries_.erase({row, col});
  } else {
    entries_[{row, col}] = value;
  }
}

std::vector<std::vector<std::pair<std::size_t, Scalar>>> LinearMap::columns() const {
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> out(cols_);
  for (const auto& [pos, v] : entries_) out[pos.second].emplace_back(pos.first, v);
  return out;
}

std::vector<std::vector<Scalar>> LinearMap::to_dense() const {
  std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_));
  for (const auto& [pos, v] : entries_) out[pos.first][pos.second] = v;
  return out;
}

LinearMap LinearMap::transpose() const {
  LinearMap out(cols_, rows_);
  for (const auto& [pos, v] : entries_) out.set(pos.second, pos.first, v);
  return out;
}

LinearMap compose(const LinearMap& outer, const LinearMap& inner) {
  if (outer.cols() != inner.rows()) throw ShapeError("compose: inner dimension mismatch");
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> outer_cols = outer.columns();
  LinearMap out(outer.rows(), inner.cols());
  for (const auto& [pos, v] : inner.entries()) {
    for (const auto& [row, w] : outer_cols[pos.first]) out.add(row, pos.second, w * v);
  }
  return out;
}

namespace {

struct GaussInt {
  mpz_class re;
  mpz_class im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

// a*b - c*d over Z[i], divided exactly by e (e != 0).
GaussInt bareiss_step(const GaussInt& a, const GaussInt& b, const GaussInt& c, const GaussInt& d,
                      const GaussInt& e) {
  mpz_class re = a.re * b.re - a.im * b.im - (c.re * d.re - c.im * d.im);
  mpz_class im = a.re * b.im + a.im * b.re - (c.re * d.im + c.im * d.re);
  if (sgn(e.im) == 0) {
    mpz_divexact(re.get_mpz_t(), re.get_mpz_t(), e.re.get_mpz_t());
    mpz_divexact(im.get_mpz_t(), im.get_mpz_t(), e.re.get_mpz_t());
    return {re, im};
  }
  // (re + i im) * conj(e) / |e|^2
  const mpz_class norm = e.re * e.re + e.im * e.im;
  mpz_class qre = re * e.re + im * e.im;
  mpz_class qim = im * e.re - re * e.im;
  mpz_divexact(qre.get_mpz_t(), qre.get_mpz_t(), norm.get_mpz_t());
  mpz_divexact(qim.get_mpz_t(), qim.get_mpz_t(), norm.get_mpz_t());
  return {qre, qim};
}

std::size_t bareiss_rank_real(std::vector<std::vector<mpz_class>>& m) {
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows == 0 ? 0 : m.front().size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t p = rank;
    while (p < nrows && sgn(m[p][c]) == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[rank]);
    const auto& pivot_row = m[rank];
    const mpz_class& pivot = pivot_row[c];
    mpz_class tmp;
    for (std::size_t i = rank + 1; i < nrows; ++i) {
      auto& row = m[i];
      const bool lead_zero = sgn(row[c]) == 0;
      for (std::size_t j = c + 1; j < ncols; ++j) {
        if (lead_zero) {
          if (sgn(row[j]) == 0) continue;
          row[j] *= pivot;
        } else {
          if (sgn(row[j]) == 0 && sgn(pivot_row[j]) == 0) continue;
          tmp = pivot * row[j];
          tmp -= row[c] * pivot_row[j];
          row[j].swap(tmp);
        }
        mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

std::size_t bareiss_rank_gauss(std::vector<std::vector<GaussInt>>& m) {
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows == 0 ? 0 : m.front().size();
  GaussInt prev{1, 0};
  const GaussInt zero{0, 0};
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t p = rank;
    while (p < nrows && m[p][c].is_zero()) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[rank]);
    const auto& pivot_row = m[rank];
    for (std::size_t i = rank + 1; i < nrows; ++i) {
      auto& row = m[i];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        if (row[j].is_zero() && (row[c].is_zero() || pivot_row[j].is_zero())) continue;
        row[j] = bareiss_step(pivot_row[c], row[j], row[c], pivot_row[j], prev);
      }
      row[c] = zero;
    }
    prev = pivot_row[c];
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t matrix_rank_exact(const LinearMap& m) {
  if (m.nnz() == 0) return 0;
  // Compress to the rows and columns that carry a nonzero entry.
  std::map<std::size_t, std::size_t> row_ids;
  std::map<std::size_t, std::size_t> col_ids;
  bool real = true;
  for (const auto& [pos, v] : m.entries()) {
    row_ids.try_emplace(pos.first, 0);
    col_ids.try_emplace(pos.second, 0);
    real = real && v.is_real();
  }
  std::size_t next = 0;
  for (auto& [key, id] : row_ids) id = next++;
  next = 0;
  for (auto& [key, id] : col_ids) id = next++;

  // Clear denominators row by row.
  std::vector<mpz_class> row_scale(row_ids.size(), 1);
  for (const auto& [pos, v] : m.entries()) {
    mpz_class& s = row_scale[row_ids[pos.first]];
    mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), v.re().get_den_mpz_t());
    mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), v.im().get_den_mpz_t());
  }
  auto scaled = [&](const Rational& q, const mpz_class& s) {
    mpz_class out = s;
    mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), q.get_den_mpz_t());
    out *= q.get_num();
    return out;
  };

  if (real) {
    std::vector<std::vector<mpz_class>> dense(row_ids.size(), std::vector<mpz_class>(col_ids.size()));
    for (const auto& [pos, v] : m.entries()) {
      const std::size_t r = row_ids[pos.first];
      dense[r][col_ids[pos.second]] = scaled(v.re(), row_scale[r]);
    }
    return bareiss_rank_real(dense);
  }
  std::vector<std::vector<GaussInt>> dense(row_ids.size(), std::vector<GaussInt>(col_ids.size()));
  for (const auto& [pos, v] : m.entries()) {
    const std::size_t r = row_ids[pos.first];
    dense[r][col_ids[pos.second]] = GaussInt{scaled(v.re(), row_scale[r]), scaled(v.im(), row_scale[r])};
  }
  return bareiss_rank_gauss(dense);
}

}  // namespace nqc
