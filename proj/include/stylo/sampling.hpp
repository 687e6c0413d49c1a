#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stylo/types.hpp"

namespace stylo {

struct IndexSplit {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Seeded per-class shuffle; test gets round(n * fraction) of each class,
/// clamped to [1, n - 1]. Classes are processed in R, U, S order from one stream.
IndexSplit stratified_split_indices(std::span<const ClassLabel> labels, double test_fraction, std::uint64_t seed);

/// All indices in order, followed by draws with replacement from the smaller
/// class of the pair until both classes have equal counts.
std::vector<std::size_t> upsample_indices(std::span<const ClassLabel> labels, ClassPair classes, std::uint64_t seed);

}  // namespace stylo
