#include "atp/rule_tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace atp {
namespace {

struct TopChange {
  Change change;
  std::size_t count = 0;
};

template <typename Range>
TopChange most_frequent(const Range& instances) {
  std::map<Change, std::size_t> counts;
  for (const Instance* inst : instances) ++counts[change_of(*inst)];
  TopChange top;
  bool first = true;
  for (const auto& [change, count] : counts) {
    if (first || count > top.count || (count == top.count && canonical_less(change, top.change))) {
      top = TopChange{change, count};
      first = false;
    }
  }
  return top;
}

MemorizedEntry memorize(const Instance& inst) {
  return MemorizedEntry{inst.lemma, inst.features, inst.inflection, inst.frequency};
}

void sort_memorized(std::vector<MemorizedEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.lemma != b.lemma) return a.lemma < b.lemma;
    return a.features < b.features;
  });
}

class Grower {
 public:
  Grower(const TrainConfig& config) : config_(config) {}

  Node grow(const InstanceRefs& instances, const std::vector<Feature>& inherited) {
    Node node;
    const NodeVerdict verdict = node_verdict(instances);
    node.stats = NodeStats{instances.size(), verdict.change, verdict.count, verdict.verdict};

    if (verdict.verdict.productive) {
      node.rule = verdict.change;
      for (const Instance* inst : instances) {
        if (change_of(*inst) != verdict.change) node.memorized.push_back(memorize(*inst));
      }
      sort_memorized(node.memorized);
      return node;
    }

    std::vector<Feature> omega = inherited;
    InductionOptions options{config_.max_ending_length, config_.suffixal_induction_only};
    for (auto& induced : induce_ending_features(instances, options)) {
      if (std::find(omega.begin(), omega.end(), induced.feature) == omega.end()) {
        omega.push_back(induced.feature);
      }
      feature_space_.insert(std::move(induced.feature));
    }

    const std::vector<Feature> usable = usable_features(instances, omega);
    const auto split = best_split(instances, usable);
    if (!split) {
      for (const Instance* inst : instances) node.memorized.push_back(memorize(*inst));
      sort_memorized(node.memorized);
      return node;
    }

    InstanceRefs with, without;
    for (const Instance* inst : instances) {
      (split->feature.matches(*inst) ? with : without).push_back(inst);
    }
    node.split = split->feature;
    node.children.push_back(grow(with, omega));
    node.children.push_back(grow(without, omega));
    return node;
  }

  std::set<Feature> take_feature_space() { return std::move(feature_space_); }
  void add_to_feature_space(const Feature& f) { feature_space_.insert(f); }

 private:
  const TrainConfig& config_;
  std::set<Feature> feature_space_;
};

void collect_rules(const Node& node, std::set<Change>& out) {
  if (node.is_leaf()) {
    if (node.rule) out.insert(*node.rule);
    return;
  }
  for (const Node& child : node.children) collect_rules(child, out);
}

}  // namespace

NodeVerdict node_verdict(std::span<const Instance* const> instances) {
  if (instances.empty()) throw std::invalid_argument("node_verdict needs instances");
  const TopChange top = most_frequent(instances);
  return NodeVerdict{top.change, top.count,
                     is_productive(instances.size(), instances.size() - top.count)};
}

std::vector<Feature> usable_features(std::span<const Instance* const> instances,
                                     std::span<const Feature> features) {
  std::vector<Feature> out;
  for (const Feature& f : features) {
    std::size_t bearing = 0;
    for (const Instance* inst : instances) bearing += f.matches(*inst) ? 1 : 0;
    if (bearing > 0 && bearing < instances.size()) out.push_back(f);
  }
  return out;
}

std::optional<SplitScore> best_split(std::span<const Instance* const> instances,
                                     std::span<const Feature> usable) {
  std::optional<SplitScore> best;
  InstanceRefs subset;
  for (const Feature& f : usable) {
    subset.clear();
    for (const Instance* inst : instances) {
      if (f.matches(*inst)) subset.push_back(inst);
    }
    if (subset.empty()) continue;
    const TopChange top = most_frequent(subset);
    SplitScore score{f, subset.size(), top.count,
                     static_cast<double>(top.count) / static_cast<double>(subset.size())};
    if (!best) {
      best = std::move(score);
      continue;
    }
    // Exact comparison of top/size ratios by cross-multiplication.
    const auto lhs = score.top_change_count * best->subset_size;
    const auto rhs = best->top_change_count * score.subset_size;
    const bool better = lhs > rhs ||
                        (lhs == rhs && (score.subset_size > best->subset_size ||
                                        (score.subset_size == best->subset_size &&
                                         score.feature < best->feature)));
    if (better) best = std::move(score);
  }
  return best;
}

LearnedTree train(std::span<const Instance> instances, const FeatureSet& declared_tags,
                  const TrainConfig& config) {
  if (instances.empty()) throw std::invalid_argument("cannot train on an empty instance set");
  InstanceRefs refs;
  refs.reserve(instances.size());
  for (const Instance& inst : instances) {
    if (inst.lemma.empty() || inst.inflection.empty()) {
      throw std::invalid_argument("instances need a nonempty lemma and inflection");
    }
    for (const auto& tag : inst.features) {
      if (!declared_tags.contains(tag)) {
        throw std::invalid_argument("undeclared feature '" + tag + "'");
      }
    }
    refs.push_back(&inst);
  }

  std::vector<Feature> declared;
  for (const auto& tag : declared_tags) declared.push_back(Feature::categorical(tag));

  Grower grower(config);
  for (const auto& f : declared) grower.add_to_feature_space(f);

  LearnedTree tree;
  tree.root = grower.grow(refs, declared);
  const auto space = grower.take_feature_space();
  tree.feature_space.assign(space.begin(), space.end());
  tree.declared_tags = declared_tags;
  tree.training_size = instances.size();
  return tree;
}

std::vector<Change> rule_changes(const LearnedTree& tree) {
  std::set<Change> rules;
  collect_rules(tree.root, rules);
  std::vector<Change> out(rules.begin(), rules.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace atp
