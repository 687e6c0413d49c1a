#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stylo/features.hpp"
#include "stylo/types.hpp"

namespace stylo {

/// z-score parameters fit on training rows. Constant columns get std = 1.
struct Standardizer {
  std::vector<FeatureId> feature_ids;
  std::vector<double> means;
  std::vector<double> stds;

  static Standardizer fit(const FeatureMatrix& matrix);
  std::vector<double> apply(std::span<const double> raw) const;

  friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

struct SvmHyperparams {
  double lambda = 1e-4;
  int epochs = 200;
  std::uint64_t seed = 0;

  friend bool operator==(const SvmHyperparams&, const SvmHyperparams&) = default;
};

struct Provenance {
  std::string corpus_name;
  std::string config_hash;
  std::string created;  // ISO-8601 UTC

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct LinearSvmModel {
  ClassPair task{ClassLabel::R, ClassLabel::U};  // (positive, negative)
  std::vector<FeatureId> feature_ids;
  std::vector<double> weights;
  double bias = 0.0;
  Standardizer standardizer;
  SvmHyperparams hyperparams;
  Provenance provenance;

  /// w . standardize(raw) + b, raw values in feature_ids order.
  double decision_value(std::span<const double> raw) const;

  friend bool operator==(const LinearSvmModel&, const LinearSvmModel&) = default;
};

struct TrainResult {
  LinearSvmModel model;
  std::vector<double> epoch_loss;  // objective after each epoch
};

/// Primal objective lambda/2 (|w|^2 + b^2) + mean hinge(1 - y (w.x + b)) on standardized rows.
double svm_objective(std::span<const double> w, double b, const std::vector<std::vector<double>>& x,
                     std::span<const double> y, double lambda);

/// Subgradient of svm_objective; the last element is the bias component.
std::vector<double> svm_subgradient(std::span<const double> w, double b, const std::vector<std::vector<double>>& x,
                                    std::span<const double> y, double lambda);

/// Epoch-wise stochastic subgradient descent with step 1/(lambda t) and a seeded
/// shuffle per epoch. Rows must carry only the two task labels; +1 = task.first.
TrainResult train_svm(const FeatureMatrix& matrix, ClassPair task, const SvmHyperparams& params,
                      Provenance provenance = {});

struct Prediction {
  ClassLabel label{};
  double margin = 0.0;
};

/// Looks up the model's features by name; decision value 0 goes to the positive class.
Prediction predict(const LinearSvmModel& model, std::span<const FeatureId> ids, std::span<const double> values);
Prediction predict(const LinearSvmModel& model, const FeatureMatrix& matrix, std::size_t row);

struct EvalReport {
  ClassPair task{};
  std::size_t n_test = 0;
  double accuracy = 0.0;
  // confusion[actual][predicted], index 0 = positive class.
  std::size_t confusion[2][2]{};
  double baseline = 0.5;
};

EvalReport evaluate(const LinearSvmModel& model, const FeatureMatrix& test);

inline constexpr int kModelSchemaVersion = 1;

std::string model_to_json(const LinearSvmModel& model);
LinearSvmModel model_from_json(std::string_view text);
void save_model(const std::filesystem::path& path, const LinearSvmModel& model);
LinearSvmModel load_model(const std::filesystem::path& path);

}  // namespace stylo
