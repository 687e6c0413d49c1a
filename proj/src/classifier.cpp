#include "stylo/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"

namespace stylo {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_finite(std::span<const double> values, const std::string& where) {
  for (double v : values)
    if (!std::isfinite(v)) throw InputError("non-finite feature value in " + where);
}

std::vector<std::size_t> resolve(const LinearSvmModel& model, std::span<const FeatureId> ids) {
  std::vector<std::size_t> cols;
  cols.reserve(model.feature_ids.size());
  for (const auto& f : model.feature_ids) {
    auto it = std::find(ids.begin(), ids.end(), f);
    if (it == ids.end()) throw InputError("input lacks model feature " + f.name());
    cols.push_back(static_cast<std::size_t>(it - ids.begin()));
  }
  return cols;
}

Prediction predict_columns(const LinearSvmModel& model, std::span<const std::size_t> cols,
                           std::span<const double> values) {
  std::vector<double> raw;
  raw.reserve(cols.size());
  for (auto c : cols) raw.push_back(values[c]);
  check_finite(raw, "prediction input");
  const double margin = model.decision_value(raw);
  return {margin >= 0.0 ? model.task.first : model.task.second, margin};
}

}  // namespace

Standardizer Standardizer::fit(const FeatureMatrix& matrix) {
  if (matrix.rows.empty()) throw InputError("cannot fit a standardizer on zero rows");
  Standardizer s;
  s.feature_ids = matrix.feature_ids;
  const std::size_t d = matrix.feature_ids.size();
  const double n = static_cast<double>(matrix.rows.size());
  s.means.assign(d, 0.0);
  s.stds.assign(d, 0.0);
  for (const auto& row : matrix.rows)
    for (std::size_t j = 0; j < d; ++j) s.means[j] += row.values[j];
  for (auto& m : s.means) m /= n;
  for (const auto& row : matrix.rows)
    for (std::size_t j = 0; j < d; ++j) s.stds[j] += (row.values[j] - s.means[j]) * (row.values[j] - s.means[j]);
  for (auto& sd : s.stds) {
    sd = std::sqrt(sd / n);
    if (!(sd > 0.0)) sd = 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> raw) const {
  if (raw.size() != means.size()) throw InputError("standardizer dimension mismatch");
  std::vector<double> z(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) z[j] = (raw[j] - means[j]) / stds[j];
  return z;
}

double LinearSvmModel::decision_value(std::span<const double> raw) const {
  const auto z = standardizer.apply(raw);
  return dot(weights, z) + bias;
}

double svm_objective(std::span<const double> w, double b, const std::vector<std::vector<double>>& x,
                     std::span<const double> y, double lambda) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) hinge += std::max(0.0, 1.0 - y[i] * (dot(w, x[i]) + b));
  return 0.5 * lambda * (dot(w, w) + b * b) + hinge / static_cast<double>(x.size());
}

std::vector<double> svm_subgradient(std::span<const double> w, double b, const std::vector<std::vector<double>>& x,
                                    std::span<const double> y, double lambda) {
  std::vector<double> g(w.size() + 1, 0.0);
  for (std::size_t j = 0; j < w.size(); ++j) g[j] = lambda * w[j];
  g[w.size()] = lambda * b;
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] * (dot(w, x[i]) + b) >= 1.0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) g[j] -= inv_n * y[i] * x[i][j];
    g[w.size()] -= inv_n * y[i];
  }
  return g;
}

TrainResult train_svm(const FeatureMatrix& matrix, ClassPair task, const SvmHyperparams& params,
                      Provenance provenance) {
  if (task.first == task.second) throw InputError("training task needs two distinct classes");
  if (matrix.feature_ids.empty()) throw InputError("cannot train on an empty feature list");
  if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) throw InputError("lambda must be positive");
  if (params.epochs < 1) throw InputError("epochs must be at least 1");
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& row : matrix.rows) {
    if (row.label == task.first) ++n_pos;
    else if (row.label == task.second) ++n_neg;
    else
      throw InputError("row '" + row.article_id + "' has label " + std::string(to_string(row.label)) +
                       " outside task " + to_string(task));
    check_finite(row.values, "row '" + row.article_id + "'");
  }
  if (n_pos == 0 || n_neg == 0) throw InputError("training data contains a single class");
  if (n_pos < 2 || n_neg < 2) throw InputError("training needs at least 2 rows per class");

  TrainResult result;
  LinearSvmModel& model = result.model;
  model.task = task;
  model.feature_ids = matrix.feature_ids;
  model.standardizer = Standardizer::fit(matrix);
  model.hyperparams = params;
  model.provenance = std::move(provenance);

  std::vector<std::vector<double>> x;
  std::vector<double> y;
  x.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    x.push_back(model.standardizer.apply(row.values));
    y.push_back(row.label == task.first ? 1.0 : -1.0);
  }

  const std::size_t d = matrix.feature_ids.size();
  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(params.seed);
  std::uint64_t t = 0;
  result.epoch_loss.reserve(static_cast<std::size_t>(params.epochs));
  // The reported iterate after epoch e is the suffix average of all iterates in
  // epochs [e/2, e]; prefix sums over per-epoch iterate sums make it O(d) per epoch.
  const auto epochs = static_cast<std::size_t>(params.epochs);
  std::vector<std::vector<double>> w_prefix(epochs + 1, std::vector<double>(d, 0.0));
  std::vector<double> b_prefix(epochs + 1, 0.0);
  std::vector<double> w_avg(d, 0.0);
  double b_avg = 0.0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<double> w_sum(d, 0.0);
    double b_sum = 0.0;
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (params.lambda * static_cast<double>(t));
      const double margin = y[i] * (dot(w, x[i]) + b);
      const double shrink = 1.0 - eta * params.lambda;
      for (auto& wj : w) wj *= shrink;
      b *= shrink;
      if (margin < 1.0) {
        for (std::size_t j = 0; j < d; ++j) w[j] += eta * y[i] * x[i][j];
        b += eta * y[i];
      }
      for (std::size_t j = 0; j < d; ++j) w_sum[j] += w[j];
      b_sum += b;
    }
    for (std::size_t j = 0; j < d; ++j) w_prefix[epoch + 1][j] = w_prefix[epoch][j] + w_sum[j];
    b_prefix[epoch + 1] = b_prefix[epoch] + b_sum;

    const std::size_t from = epoch / 2;
    const double steps = static_cast<double>((epoch + 1 - from) * order.size());
    for (std::size_t j = 0; j < d; ++j) w_avg[j] = (w_prefix[epoch + 1][j] - w_prefix[from][j]) / steps;
    b_avg = (b_prefix[epoch + 1] - b_prefix[from]) / steps;
    const double loss = svm_objective(w_avg, b_avg, x, y, params.lambda);
    if (!std::isfinite(loss)) throw NumericalError("SVM training diverged (non-finite objective)");
    result.epoch_loss.push_back(loss);
  }
  w = std::move(w_avg);
  b = b_avg;
  model.weights = std::move(w);
  model.bias = b;
  return result;
}

Prediction predict(const LinearSvmModel& model, std::span<const FeatureId> ids, std::span<const double> values) {
  if (ids.size() != values.size()) throw InputError("feature ids and values differ in length");
  const auto cols = resolve(model, ids);
  return predict_columns(model, cols, values);
}

Prediction predict(const LinearSvmModel& model, const FeatureMatrix& matrix, std::size_t row) {
  return predict(model, matrix.feature_ids, matrix.rows.at(row).values);
}

EvalReport evaluate(const LinearSvmModel& model, const FeatureMatrix& test) {
  if (test.rows.empty()) throw InputError("cannot evaluate on an empty test set");
  const auto cols = resolve(model, test.feature_ids);
  EvalReport report;
  report.task = model.task;
  for (const auto& row : test.rows) {
    if (row.label != model.task.first && row.label != model.task.second)
      throw InputError("test row '" + row.article_id + "' has label " + std::string(to_string(row.label)) +
                       " outside task " + to_string(model.task));
    const auto p = predict_columns(model, cols, row.values);
    const std::size_t actual = row.label == model.task.first ? 0 : 1;
    const std::size_t predicted = p.label == model.task.first ? 0 : 1;
    ++report.confusion[actual][predicted];
  }
  report.n_test = test.rows.size();
  report.accuracy =
      static_cast<double>(report.confusion[0][0] + report.confusion[1][1]) / static_cast<double>(report.n_test);
  return report;
}

}  // namespace stylo
