#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "atp/segments.hpp"
#include "atp/tolerance.hpp"

namespace atp {

using FeatureId = std::string;
using FeatureSet = std::set<FeatureId>;

/// One training observation: lemma + declared categorical features -> form.
/// Frequency is a token count; jittered samples may carry fractional values.
struct Instance {
  Segments lemma;
  FeatureSet features;
  Segments inflection;
  double frequency = 0.0;

  bool operator==(const Instance&) const = default;
};

/// Delete `delete_count` final segments, then append `suffix`.
struct Change {
  std::size_t delete_count = 0;
  Segments suffix;

  bool operator==(const Change&) const = default;
  auto operator<=>(const Change&) const = default;

  bool is_suffixal() const { return delete_count == 0; }
};

/// Canonical tie-break order among changes of equal frequency: shorter
/// suffix first, then lexicographic suffix, then fewer deletions.
bool canonical_less(const Change& a, const Change& b);

/// "-t", "-∅", or "-3+æŋ" for a change that deletes three segments first.
std::string describe(const Change& change);

class InapplicableChange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Change built from the longest common prefix of lemma and inflection.
Change derive_change(const Segments& lemma, const Segments& inflection);

/// Throws InapplicableChange if the change deletes more than the lemma holds.
Segments apply_change(const Segments& lemma, const Change& change);

inline Change change_of(const Instance& instance) {
  return derive_change(instance.lemma, instance.inflection);
}

/// Either a declared categorical tag or an induced set of lemma endings.
///
/// Ordering is the canonical feature order used for tie-breaks:
/// categorical tags (lexicographic) before ending sets (by sorted ending
/// list).
class Feature {
 public:
  struct Categorical {
    FeatureId tag;
    auto operator<=>(const Categorical&) const = default;
  };
  struct EndingSet {
    std::vector<Segments> endings;  // sorted, unique, nonempty
    auto operator<=>(const EndingSet&) const = default;
  };

  static Feature categorical(FeatureId tag);
  /// Sorts and deduplicates. Throws std::invalid_argument if empty or if an
  /// ending is empty.
  static Feature ending_set(std::vector<Segments> endings);

  bool is_categorical() const { return std::holds_alternative<Categorical>(value_); }
  const FeatureId& tag() const { return std::get<Categorical>(value_).tag; }
  const std::vector<Segments>& endings() const {
    return std::get<EndingSet>(value_).endings;
  }

  /// Membership of an instance, decidable from lemma and tags alone.
  bool matches(const Segments& lemma, const FeatureSet& features) const;
  bool matches(const Instance& instance) const {
    return matches(instance.lemma, instance.features);
  }

  /// "past" or "[k|p|s]".
  std::string label() const;

  bool operator==(const Feature&) const = default;
  auto operator<=>(const Feature&) const = default;

 private:
  std::variant<Categorical, EndingSet> value_;
};

/// True when `lemma` ends in any of `endings`. Shared by induction and
/// production so both agree on membership.
bool ends_with_any(const Segments& lemma, const std::vector<Segments>& endings);

struct MemorizedEntry {
  Segments lemma;
  FeatureSet features;
  Segments inflection;
  double frequency = 0.0;

  bool operator==(const MemorizedEntry&) const = default;
};

/// TP bookkeeping for the training instances that reached a node.
struct NodeStats {
  std::size_t support = 0;
  Change top_change;
  std::size_t top_count = 0;
  TpVerdict verdict;

  bool operator==(const NodeStats& other) const {
    return support == other.support && top_change == other.top_change &&
           top_count == other.top_count && verdict.n == other.verdict.n &&
           verdict.e == other.verdict.e &&
           verdict.productive == other.verdict.productive;
  }
};

/// Binary decision node. Internal nodes hold a split feature and exactly two
/// children, [present, absent]. Leaves hold an optional productive rule and
/// the memorized forms of their instances that the rule does not produce.
struct Node {
  std::optional<Feature> split;
  std::vector<Node> children;
  std::optional<Change> rule;
  std::vector<MemorizedEntry> memorized;
  NodeStats stats;

  bool is_leaf() const { return !split.has_value(); }
  const Node& present() const { return children.at(0); }
  const Node& absent() const { return children.at(1); }

  bool operator==(const Node&) const = default;
};

struct LearnedTree {
  Node root;
  std::vector<Feature> feature_space;  // sorted canonical order
  FeatureSet declared_tags;
  std::size_t training_size = 0;

  bool operator==(const LearnedTree&) const = default;
};

/// Keeps one instance per (lemma, features): the higher-frequency one, first
/// occurrence on ties. Returns the dropped instances.
std::vector<Instance> resolve_doublets(std::vector<Instance>& instances);

}  // namespace atp
