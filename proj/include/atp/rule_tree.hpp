#pragma once

#include <optional>
#include <span>
#include <vector>

#include "atp/feature_induction.hpp"
#include "atp/morph.hpp"

namespace atp {

struct TrainConfig {
  std::size_t max_ending_length = 3;
  bool suffixal_induction_only = true;
};

struct NodeVerdict {
  Change change;  // most frequent change
  std::size_t count = 0;
  TpVerdict verdict;
};

/// Most frequent change (ties: canonical_less) and its TP verdict with
/// n = |instances|, e = n - count. Requires nonempty input.
NodeVerdict node_verdict(std::span<const Instance* const> instances);

struct SplitScore {
  Feature feature;
  std::size_t subset_size = 0;      // instances bearing the feature
  std::size_t top_change_count = 0; // most frequent change among them
  double consistency = 0.0;         // top_change_count / subset_size
};

/// Feature maximizing the consistency of the instances that bear it. Ties
/// go to the larger subset, then to the canonically smaller feature.
/// `usable` must exclude features uniform over `instances`.
std::optional<SplitScore> best_split(std::span<const Instance* const> instances,
                                     std::span<const Feature> usable);

/// Drops features that every instance has, or that no instance has.
std::vector<Feature> usable_features(std::span<const Instance* const> instances,
                                     std::span<const Feature> features);

/// Grows the tree recursively. At each node: a productive most-frequent
/// change makes a rule leaf; otherwise ending features are induced and
/// added to those inherited from ancestors, uniform features are dropped,
/// and the node either splits on the best-consistency feature or, with
/// nothing to split on, memorizes everything.
///
/// Throws std::invalid_argument on empty input or an undeclared tag.
LearnedTree train(std::span<const Instance> instances, const FeatureSet& declared_tags,
                  const TrainConfig& config = {});

/// Every distinct change used as a leaf rule, canonical order.
std::vector<Change> rule_changes(const LearnedTree& tree);

}  // namespace atp
