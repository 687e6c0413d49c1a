// Seeded synthetic data shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "stylo/features.hpp"
#include "stylo/rng.hpp"

namespace synth {

/// Two-class matrix over the full registry: unit-variance noise everywhere,
/// planted columns shifted by `shift` for the first class.
inline stylo::FeatureMatrix planted_matrix(std::size_t n_first, std::size_t n_second,
                                           const std::vector<std::size_t>& planted, double shift,
                                           std::uint64_t seed, stylo::ClassPair pair = {stylo::ClassLabel::R,
                                                                                        stylo::ClassLabel::U}) {
  stylo::Rng rng(seed);
  stylo::FeatureMatrix m;
  m.corpus_name = "synthetic";
  m.feature_ids = stylo::feature_registry();
  const std::size_t d = m.feature_ids.size();
  for (std::size_t i = 0; i < n_first + n_second; ++i) {
    stylo::FeatureVector row;
    const bool first = i < n_first;
    row.article_id = "s" + std::to_string(i);
    row.label = first ? pair.first : pair.second;
    row.values.resize(d);
    for (std::size_t j = 0; j < d; ++j) row.values[j] = 10.0 + rng.normal();
    if (first)
      for (std::size_t j : planted) row.values[j] += shift;
    m.rows.push_back(std::move(row));
  }
  return m;
}

/// Planted column indices spread over the registry.
inline std::vector<std::size_t> planted_columns(std::size_t count, std::size_t stride = 7) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back((3 + i * stride) % stylo::feature_registry().size());
  return out;
}

/// Pooled two-sample t statistic, written independently of the library.
inline double pooled_t(const std::vector<double>& a, const std::vector<double>& b) {
  auto mean = [](const std::vector<double>& v) {
    long double s = 0;
    for (double x : v) s += x;
    return static_cast<double>(s / v.size());
  };
  auto ss = [](const std::vector<double>& v, double m) {
    long double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return static_cast<double>(s);
  };
  const double ma = mean(a), mb = mean(b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double sp2 = (ss(a, ma) + ss(b, mb)) / (na + nb - 2.0);
  return (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() /
           ("stylo_test_" + tag + "_" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace synth
