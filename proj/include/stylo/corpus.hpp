#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stylo/types.hpp"

namespace stylo {

struct Article {
  std::string id;
  std::string source;
  Language language = Language::En;
  ClassLabel label = ClassLabel::R;
  std::string title;
  std::string body;

  friend bool operator==(const Article&, const Article&) = default;
};

/// Labeled articles in ingestion order. Ids are unique in a loaded corpus;
/// an upsampled corpus repeats ids of duplicated articles.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::string name, std::vector<Article> articles);

  const std::string& name() const { return name_; }
  const std::vector<Article>& articles() const { return articles_; }
  std::size_t size() const { return articles_.size(); }
  bool empty() const { return articles_.empty(); }

  std::size_t count(ClassLabel label) const;
  const std::map<ClassLabel, std::size_t>& class_counts() const { return counts_; }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::string name_;
  std::vector<Article> articles_;
  std::map<ClassLabel, std::size_t> counts_;
};

/// Parses the JSONL corpus format. Validation errors carry the 1-based line number.
Corpus load_corpus(const std::filesystem::path& path, std::optional<Language> expected_language = std::nullopt);
Corpus parse_corpus(std::istream& in, std::string name, std::optional<Language> expected_language = std::nullopt);

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

/// Per-class test count is round(n * test_fraction), at least 1 and at most n - 1.
/// Both partitions keep corpus order.
CorpusSplit stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed);

/// Duplicates randomly drawn members of the smaller of the two classes until
/// both counts match. Duplicates are appended after the original articles.
Corpus upsample_minority(const Corpus& corpus, ClassPair classes, std::uint64_t seed);

}  // namespace stylo
