#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/features.hpp"
#include "stylo/types.hpp"

namespace stylo {

struct AnalysisConfig {
  double p_threshold = 0.05;
  double d_select_threshold = 0.5;
  double d_equality_threshold = 0.2;

  /// Throws InputError unless 0 < p < 1 and 0 <= equality < select.
  void validate() const;
};

enum class Relation { FirstGreater, SecondGreater, Equal };

std::string_view to_string(Relation r);
std::optional<Relation> parse_relation(std::string_view s);
Relation mirror(Relation r);

struct AnovaResult {
  double f_stat = 0.0;
  double p_value = 1.0;
  int df_between = 0;
  int df_within = 0;
  bool degenerate = false;  // zero within-group variance, nonzero between
};

/// F = (SSB/(k-1)) / (SSW/(N-k)); p from the F upper tail.
AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

/// (mean(a) - mean(b)) / pooled sample standard deviation.
double cohens_d(std::span<const double> a, std::span<const double> b);

/// |d| below the equality threshold is a tie; otherwise the sign decides.
Relation derive_relation(double d, const AnalysisConfig& config);

struct NormalityDiagnostic {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  bool warn = false;  // |skew| > 2 or |excess kurtosis| > 7
};

/// Moment estimators g1 = m3 / m2^1.5 and g2 = m4 / m2^2 - 3; needs >= 8 values.
NormalityDiagnostic normality_diagnostic(std::span<const double> values);

struct PairwiseStat {
  FeatureId feature;
  ClassPair pair{};
  double f_stat = 0.0;
  double p_value = 1.0;
  double cohens_d = 0.0;  // +/-inf when degenerate
  Relation relation = Relation::Equal;
  bool degenerate = false;
};

/// Per-feature relations for each class pair, e.g. the rows of an agreement table.
class OrderingTable {
 public:
  OrderingTable() = default;
  explicit OrderingTable(std::string dataset_name) : dataset_name_(std::move(dataset_name)) {}

  const std::string& dataset_name() const { return dataset_name_; }
  void set(const FeatureId& feature, ClassPair pair, Relation relation);
  /// Parses "U > R = S" style notation into the three canonical pair relations.
  void set_order(const FeatureId& feature, std::string_view notation);
  std::optional<Relation> relation(const FeatureId& feature, ClassPair pair) const;
  bool contains(const FeatureId& feature) const;
  /// Features in registry order.
  std::vector<FeatureId> features() const;
  /// Renders a feature's relations as "U > R > S"; pairwise list when intransitive.
  std::string order_notation(const FeatureId& feature) const;

 private:
  std::string dataset_name_;
  std::map<std::size_t, std::map<ClassPair, Relation>> entries_;  // keyed by registry index
};

/// Canonical-pair relations implied by an ordering string such as "S = R > U".
std::map<ClassPair, Relation> parse_order_notation(std::string_view notation);

struct ExcludedStat {
  FeatureId feature;
  ClassPair pair{};
  std::string reason;
};

struct NormalityWarning {
  FeatureId feature;
  ClassLabel label{};
  NormalityDiagnostic diagnostic;
};

struct DatasetAnalysis {
  std::string dataset_name;
  AnalysisConfig config;
  std::map<ClassLabel, std::size_t> class_counts;
  std::vector<ClassPair> pairs;  // canonical pairs with both classes populated
  std::vector<PairwiseStat> stats;
  std::vector<ExcludedStat> excluded;
  OrderingTable ordering;
  std::map<ClassPair, std::vector<FeatureId>> selected;
  std::vector<NormalityWarning> normality_warnings;
  std::vector<std::string> warnings;
};

/// Pairwise ANOVA + Cohen's d for every feature and populated canonical pair.
/// Selected: p < p_threshold and |d| >= d_select_threshold.
DatasetAnalysis analyze_dataset(const FeatureMatrix& matrix, const AnalysisConfig& config);

struct AgreementReport {
  double overall = 0.0;
  std::map<ClassPair, double> per_pair;
  std::map<FeatureCategory, double> per_category;
  std::vector<FeatureId> compared_features;
  std::vector<ClassPair> pairs;
  int agreements = 0;
  int disagreements = 0;

  int comparisons() const { return agreements + disagreements; }
};

/// +1 for each identical relation (ties included), -1 otherwise, averaged over
/// features x pairs. Pairs default to the three canonical pairs.
AgreementReport agreement_score(const OrderingTable& a, const OrderingTable& b, std::span<const FeatureId> features,
                                std::span<const ClassPair> pairs = kCanonicalPairs);

/// Features selected for the pair in both analyses, in registry order.
std::vector<FeatureId> universal_features(const std::map<ClassPair, std::vector<FeatureId>>& selected_a,
                                          const std::map<ClassPair, std::vector<FeatureId>>& selected_b,
                                          ClassPair pair);

}  // namespace stylo
