#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stylo/classifier.hpp"
#include "stylo/stats.hpp"

namespace stylo::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Table, Both };

/// One layer of settings (defaults, config file or flags); unset values fall through.
struct ConfigLayer {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<double> p_threshold;
  std::optional<double> d_select_threshold;
  std::optional<double> d_equality_threshold;
  std::optional<double> lambda;
  std::optional<int> epochs;
  std::optional<double> test_fraction;
  std::optional<unsigned> threads;
  std::optional<std::string> timestamp;
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  Format format = Format::Both;
  AnalysisConfig analysis;
  double lambda = 1e-4;
  int epochs = 200;
  double test_fraction = 0.2;
  unsigned threads = 0;
  std::string timestamp;  // empty: SOURCE_DATE_EPOCH or the Unix epoch

  std::uint64_t require_seed(const std::string& command) const;
  std::string resolved_timestamp() const;
};

/// Flat "key = value" file; '#' starts a comment.
ConfigLayer read_config_file(const std::filesystem::path& path);
/// defaults <- file <- flags
RunConfig resolve_config(const ConfigLayer& file, const ConfigLayer& flags);
Json config_echo(const RunConfig& config);

Json input_entry(const std::filesystem::path& path);

// Report builders
Json analysis_to_json(const DatasetAnalysis& analysis, const RunConfig& config, const Json& inputs);

struct LoadedAnalysis {
  std::string dataset;
  std::vector<ClassPair> pairs;
  OrderingTable ordering;
  std::map<ClassPair, std::vector<FeatureId>> selected;
};
LoadedAnalysis analysis_from_json(const Json& j, const std::string& origin);

Json comparison_to_json(const LoadedAnalysis& a, const LoadedAnalysis& b, const AgreementReport& report,
                        const std::map<ClassPair, std::vector<FeatureId>>& universal, const Json& inputs,
                        const std::vector<std::string>& warnings);
Json eval_to_json(const EvalReport& report, const LinearSvmModel& model);

std::string render_table(const Json& report);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace stylo::cli
