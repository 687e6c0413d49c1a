#include "stylo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stylo/error.hpp"
#include "stylo/special.hpp"

namespace stylo {
namespace {

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sum_sq_dev(std::span<const double> v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

void AnalysisConfig::validate() const {
  if (!(p_threshold > 0.0 && p_threshold < 1.0)) throw InputError("p_threshold must lie in (0, 1)");
  if (!(d_equality_threshold >= 0.0)) throw InputError("d_equality_threshold must be non-negative");
  if (!(d_equality_threshold < d_select_threshold))
    throw InputError("d_equality_threshold must be smaller than d_select_threshold");
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::FirstGreater: return "first_greater";
    case Relation::SecondGreater: return "second_greater";
    case Relation::Equal: return "equal";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "first_greater") return Relation::FirstGreater;
  if (s == "second_greater") return Relation::SecondGreater;
  if (s == "equal") return Relation::Equal;
  return std::nullopt;
}

Relation mirror(Relation r) {
  switch (r) {
    case Relation::FirstGreater: return Relation::SecondGreater;
    case Relation::SecondGreater: return Relation::FirstGreater;
    case Relation::Equal: return Relation::Equal;
  }
  return r;
}

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw InputError("ANOVA needs at least 2 groups");
  std::size_t n_total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw InputError("ANOVA needs at least 2 values per group");
    for (double x : g) {
      if (!std::isfinite(x)) throw InputError("ANOVA input contains a non-finite value");
      grand_sum += x;
    }
    n_total += g.size();
  }
  const auto k = static_cast<int>(groups.size());
  AnovaResult r;
  r.df_between = k - 1;
  r.df_within = static_cast<int>(n_total) - k;

  const bool within_constant = std::all_of(groups.begin(), groups.end(), [](const auto& g) { return constant(g); });
  if (within_constant) {
    const double first = groups.front().front();
    const bool all_same =
        std::all_of(groups.begin(), groups.end(), [&](const auto& g) { return g.front() == first; });
    if (all_same) throw InputError("no variance: all values are identical");
    r.f_stat = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
    r.degenerate = true;
    return r;
  }

  const double grand_mean = grand_sum / static_cast<double>(n_total);
  double ssb = 0.0;
  double ssw = 0.0;
  for (const auto& g : groups) {
    const double m = mean(g);
    ssb += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    ssw += sum_sq_dev(g, m);
  }
  r.f_stat = (ssb / r.df_between) / (ssw / r.df_within);
  r.p_value = std::clamp(special::f_survival(r.f_stat, r.df_between, r.df_within), 0.0, 1.0);
  return r;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InputError("Cohen's d needs at least 2 values per sample");
  if (constant(a) && constant(b)) throw InputError("Cohen's d undefined: zero pooled variance");
  const double ma = mean(a);
  const double mb = mean(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double pooled = (sum_sq_dev(a, ma) + sum_sq_dev(b, mb)) / (na + nb - 2.0);
  return (ma - mb) / std::sqrt(pooled);
}

Relation derive_relation(double d, const AnalysisConfig& config) {
  if (std::fabs(d) < config.d_equality_threshold) return Relation::Equal;
  return d > 0 ? Relation::FirstGreater : Relation::SecondGreater;
}

NormalityDiagnostic normality_diagnostic(std::span<const double> values) {
  if (values.size() < 8) throw InputError("normality diagnostic needs at least 8 values");
  if (constant(values)) throw InputError("normality diagnostic undefined: zero variance");
  const double n = static_cast<double>(values.size());
  const double m = mean(values);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : values) {
    const double d = x - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  NormalityDiagnostic out;
  out.skewness = m3 / std::pow(m2, 1.5);
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  out.warn = std::fabs(out.skewness) > 2.0 || std::fabs(out.excess_kurtosis) > 7.0;
  return out;
}

DatasetAnalysis analyze_dataset(const FeatureMatrix& matrix, const AnalysisConfig& config) {
  config.validate();
  DatasetAnalysis out;
  out.dataset_name = matrix.corpus_name;
  out.config = config;
  out.ordering = OrderingTable(matrix.corpus_name);
  for (ClassLabel label : kAllLabels)
    if (auto n = matrix.count(label); n > 0) out.class_counts[label] = n;

  for (ClassLabel label : kAllLabels) {
    const auto n = matrix.count(label);
    if (n == 1) {
      out.warnings.push_back("class " + std::string(to_string(label)) + " has a single row and is ignored");
      out.class_counts.erase(label);
    }
  }
  for (ClassPair pair : kCanonicalPairs) {
    if (out.class_counts.contains(pair.first) && out.class_counts.contains(pair.second))
      out.pairs.push_back(pair);
    else
      out.warnings.push_back("class pair " + to_string(pair) + " skipped: a class is absent");
  }
  if (out.pairs.empty())
    throw InputError("degenerate feature matrix: need at least two classes with two or more rows each");

  for (std::size_t f = 0; f < matrix.feature_ids.size(); ++f) {
    const FeatureId& id = matrix.feature_ids[f];
    std::map<ClassLabel, std::vector<double>> by_class;
    for (const auto& [label, n] : out.class_counts) by_class[label] = matrix.column(f, label);

    for (const auto& [label, values] : by_class) {
      if (values.size() < 8 || constant(values)) continue;
      auto diag = normality_diagnostic(values);
      if (diag.warn) out.normality_warnings.push_back({id, label, diag});
    }

    for (ClassPair pair : out.pairs) {
      const auto& a = by_class.at(pair.first);
      const auto& b = by_class.at(pair.second);
      const std::vector<double> groups[2] = {a, b};
      AnovaResult anova;
      try {
        anova = one_way_anova(groups);
      } catch (const InputError&) {
        out.excluded.push_back({id, pair, "no variance"});
        out.ordering.set(id, pair, Relation::Equal);
        continue;
      }
      PairwiseStat st;
      st.feature = id;
      st.pair = pair;
      st.f_stat = anova.f_stat;
      st.p_value = anova.p_value;
      st.degenerate = anova.degenerate;
      if (anova.degenerate) {
        st.cohens_d = a.front() > b.front() ? std::numeric_limits<double>::infinity()
                                            : -std::numeric_limits<double>::infinity();
      } else {
        st.cohens_d = cohens_d(a, b);
      }
      st.relation = derive_relation(st.cohens_d, config);
      out.ordering.set(id, pair, st.relation);
      if (st.p_value < config.p_threshold && std::fabs(st.cohens_d) >= config.d_select_threshold)
        out.selected[pair].push_back(id);
      out.stats.push_back(std::move(st));
    }
  }
  for (ClassPair pair : out.pairs) out.selected.try_emplace(pair);
  return out;
}

}  // namespace stylo
