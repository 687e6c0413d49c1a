#include "stylo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"

namespace stylo {

IndexSplit stratified_split_indices(std::span<const ClassLabel> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw InputError("test_fraction must lie in (0, 1), got " + std::to_string(test_fraction));
  std::vector<bool> in_test(labels.size(), false);
  Rng rng(seed);
  for (ClassLabel label : kAllLabels) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) members.push_back(i);
    if (members.empty()) continue;
    if (members.size() < 2)
      throw InputError("class " + std::string(to_string(label)) + " has fewer than 2 items; cannot split");
    const auto n = members.size();
    auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
    k = std::clamp<std::size_t>(k, 1, n - 1);
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t i = 0; i < k; ++i) in_test[members[i]] = true;
  }
  IndexSplit split;
  for (std::size_t i = 0; i < labels.size(); ++i) (in_test[i] ? split.test : split.train).push_back(i);
  return split;
}

std::vector<std::size_t> upsample_indices(std::span<const ClassLabel> labels, ClassPair classes, std::uint64_t seed) {
  if (classes.first == classes.second) throw InputError("upsampling requires two distinct classes");
  std::vector<std::size_t> first, second;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == classes.first) first.push_back(i);
    if (labels[i] == classes.second) second.push_back(i);
  }
  if (first.empty()) throw InputError("class " + std::string(to_string(classes.first)) + " is absent; cannot upsample");
  if (second.empty())
    throw InputError("class " + std::string(to_string(classes.second)) + " is absent; cannot upsample");
  const auto& pool = first.size() < second.size() ? first : second;
  const std::size_t deficit = first.size() > second.size() ? first.size() - second.size() : second.size() - first.size();

  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  Rng rng(seed);
  for (std::size_t i = 0; i < deficit; ++i) out.push_back(pool[rng.below(pool.size())]);
  return out;
}

}  // namespace stylo
