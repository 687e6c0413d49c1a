#include <algorithm>
#include <array>

#include "stylo/error.hpp"
#include "stylo/stats.hpp"

namespace stylo {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::size_t label_slot(ClassLabel l) { return static_cast<std::size_t>(l); }

}  // namespace

std::map<ClassPair, Relation> parse_order_notation(std::string_view notation) {
  std::array<int, 3> rank{-1, -1, -1};
  int tier = 0;
  std::string_view rest = notation;
  auto fail = [&] { throw InputError("invalid ordering notation '" + std::string(notation) + "'"); };
  while (true) {
    const auto gt = rest.find('>');
    std::string_view group = rest.substr(0, gt);
    while (true) {
      const auto eq = group.find('=');
      const auto token = trim(group.substr(0, eq));
      auto label = parse_label(token);
      if (!label || rank[label_slot(*label)] != -1) fail();
      rank[label_slot(*label)] = tier;
      if (eq == std::string_view::npos) break;
      group = group.substr(eq + 1);
    }
    if (gt == std::string_view::npos) break;
    rest = rest.substr(gt + 1);
    ++tier;
  }
  std::map<ClassPair, Relation> out;
  for (ClassPair pair : kCanonicalPairs) {
    const int a = rank[label_slot(pair.first)];
    const int b = rank[label_slot(pair.second)];
    if (a < 0 || b < 0) continue;
    out[pair] = a == b ? Relation::Equal : (a < b ? Relation::FirstGreater : Relation::SecondGreater);
  }
  if (out.empty()) fail();
  return out;
}

void OrderingTable::set(const FeatureId& feature, ClassPair pair, Relation relation) {
  if (std::find(kCanonicalPairs.begin(), kCanonicalPairs.end(), pair) == kCanonicalPairs.end()) {
    pair = ClassPair{pair.second, pair.first};
    relation = mirror(relation);
  }
  entries_[registry_index(feature)][pair] = relation;
}

void OrderingTable::set_order(const FeatureId& feature, std::string_view notation) {
  for (const auto& [pair, rel] : parse_order_notation(notation)) set(feature, pair, rel);
}

std::optional<Relation> OrderingTable::relation(const FeatureId& feature, ClassPair pair) const {
  auto it = entries_.find(registry_index(feature));
  if (it == entries_.end()) return std::nullopt;
  bool flipped = false;
  if (std::find(kCanonicalPairs.begin(), kCanonicalPairs.end(), pair) == kCanonicalPairs.end()) {
    pair = ClassPair{pair.second, pair.first};
    flipped = true;
  }
  auto jt = it->second.find(pair);
  if (jt == it->second.end()) return std::nullopt;
  return flipped ? mirror(jt->second) : jt->second;
}

bool OrderingTable::contains(const FeatureId& feature) const { return entries_.contains(registry_index(feature)); }

std::vector<FeatureId> OrderingTable::features() const {
  std::vector<FeatureId> out;
  for (const auto& [idx, rels] : entries_) out.push_back(feature_registry()[idx]);
  return out;
}

std::string OrderingTable::order_notation(const FeatureId& feature) const {
  auto it = entries_.find(registry_index(feature));
  if (it == entries_.end()) return "";
  const auto& rels = it->second;

  std::vector<ClassLabel> involved;
  for (ClassLabel l : kAllLabels)
    for (const auto& [pair, rel] : rels)
      if ((pair.first == l || pair.second == l) && std::find(involved.begin(), involved.end(), l) == involved.end())
        involved.push_back(l);

  // Search the weak orders of the involved classes for one consistent with every relation.
  const std::size_t m = involved.size();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < m; ++i) combos *= m;
  for (std::size_t code = 0; code < combos; ++code) {
    std::array<int, 3> rank{};
    std::size_t c = code;
    for (std::size_t i = 0; i < m; ++i) {
      rank[label_slot(involved[i])] = static_cast<int>(c % m);
      c /= m;
    }
    const bool consistent = std::all_of(rels.begin(), rels.end(), [&](const auto& kv) {
      const int a = rank[label_slot(kv.first.first)];
      const int b = rank[label_slot(kv.first.second)];
      switch (kv.second) {
        case Relation::Equal: return a == b;
        case Relation::FirstGreater: return a < b;
        case Relation::SecondGreater: return a > b;
      }
      return false;
    });
    if (!consistent) continue;
    std::string out;
    int last = -1;
    for (int r = 0; r < static_cast<int>(m); ++r) {
      for (ClassLabel l : involved) {
        if (rank[label_slot(l)] != r) continue;
        if (!out.empty()) out += last == r ? " = " : " > ";
        out += to_string(l);
        last = r;
      }
    }
    return out;
  }

  std::string out;
  for (const auto& [pair, rel] : rels) {
    if (!out.empty()) out += "; ";
    out += to_string(pair.first);
    out += rel == Relation::Equal ? " = " : (rel == Relation::FirstGreater ? " > " : " < ");
    out += to_string(pair.second);
  }
  return out;
}

AgreementReport agreement_score(const OrderingTable& a, const OrderingTable& b, std::span<const FeatureId> features,
                                std::span<const ClassPair> pairs) {
  AgreementReport report;
  report.pairs.assign(pairs.begin(), pairs.end());
  report.compared_features.assign(features.begin(), features.end());
  std::map<ClassPair, std::pair<int, int>> pair_tally;
  std::map<FeatureCategory, std::pair<int, int>> category_tally;

  for (const auto& feature : features) {
    for (ClassPair pair : pairs) {
      const auto ra = a.relation(feature, pair);
      const auto rb = b.relation(feature, pair);
      if (!ra || !rb)
        throw InputError("feature " + feature.name() + " has no " + to_string(pair) + " relation in '" +
                         (ra ? b.dataset_name() : a.dataset_name()) + "'");
      const int score = *ra == *rb ? 1 : -1;
      (score > 0 ? report.agreements : report.disagreements) += 1;
      pair_tally[pair].first += score;
      pair_tally[pair].second += 1;
      category_tally[feature.category].first += score;
      category_tally[feature.category].second += 1;
    }
  }
  if (report.comparisons() > 0)
    report.overall = static_cast<double>(report.agreements - report.disagreements) / report.comparisons();
  for (const auto& [pair, t] : pair_tally) report.per_pair[pair] = static_cast<double>(t.first) / t.second;
  for (const auto& [cat, t] : category_tally) report.per_category[cat] = static_cast<double>(t.first) / t.second;
  return report;
}

std::vector<FeatureId> universal_features(const std::map<ClassPair, std::vector<FeatureId>>& selected_a,
                                          const std::map<ClassPair, std::vector<FeatureId>>& selected_b,
                                          ClassPair pair) {
  auto ia = selected_a.find(pair);
  auto ib = selected_b.find(pair);
  if (ia == selected_a.end() || ib == selected_b.end())
    throw InputError("class pair " + to_string(pair) + " is not present in both analyses");
  std::vector<FeatureId> out;
  for (const auto& id : feature_registry()) {
    const bool in_a = std::find(ia->second.begin(), ia->second.end(), id) != ia->second.end();
    const bool in_b = std::find(ib->second.begin(), ib->second.end(), id) != ib->second.end();
    if (in_a && in_b) out.push_back(id);
  }
  return out;
}

}  // namespace stylo
