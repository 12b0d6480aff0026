#include "nqc/combinatorics.hpp"

#include <limits>

#include "nqc/error.hpp"

namespace nqc {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    const unsigned __int128 wide = static_cast<unsigned __int128>(result) * factor / i;
    if (wide > std::numeric_limits<std::uint64_t>::max()) throw SizeCapError("binomial overflows 64 bits");
    result = static_cast<std::uint64_t>(wide);
  }
  return result;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return out;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

namespace {

void compose_rec(std::size_t remaining, std::size_t part, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out) {
  if (part + 1 == cur.size()) {
    cur[part] = remaining;
    out.push_back(cur);
    return;
  }
  for (std::size_t a = 0; a <= remaining; ++a) {
    cur[part] = a;
    compose_rec(remaining - a, part + 1, cur, out);
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  if (parts == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> cur(parts);
  compose_rec(total, 0, cur, out);
  return out;
}

}  // namespace nqc
