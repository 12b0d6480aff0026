#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nqc {

/// binom(n, k) exactly; throws SizeCapError if it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All k-subsets of {0..n-1} as strictly increasing tuples, in lexicographic order.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

/// All tuples (a_1..a_parts) of nonnegative integers summing to total, in
/// lexicographic order. There are binom(total + parts - 1, parts - 1) of them.
std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts);

}  // namespace nqc
