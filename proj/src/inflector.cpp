#include "atp/inflector.hpp"

#include <algorithm>
#include <stdexcept>

namespace atp {
namespace {

struct ReachedLeaf {
  const Node* node;
  std::size_t depth;
  std::vector<std::string> path;
};

class Traversal {
 public:
  explicit Traversal(const Query& query) : query_(query) {}

  void walk(const Node& node, std::size_t depth, std::vector<std::string>& path) {
    if (node.is_leaf()) {
      leaves.push_back(ReachedLeaf{&node, depth, path});
      return;
    }
    const Feature& f = *node.split;
    const bool unknown = f.is_categorical() && query_.unknown.contains(f.tag());
    const bool present = !unknown && f.matches(query_.lemma, query_.known);
    if (unknown || present) {
      path.push_back(f.label());
      walk(node.present(), depth + 1, path);
      path.pop_back();
    }
    if (unknown || !present) {
      path.push_back("¬" + f.label());
      walk(node.absent(), depth + 1, path);
      path.pop_back();
    }
  }

  std::vector<ReachedLeaf> leaves;

 private:
  const Query& query_;
};

bool compatible_entry(const MemorizedEntry& entry, const Query& query,
                      const FeatureSet& declared) {
  if (entry.lemma != query.lemma) return false;
  for (const auto& tag : declared) {
    if (query.unknown.contains(tag)) continue;
    if (query.known.contains(tag) != entry.features.contains(tag)) return false;
  }
  return true;
}

// a is strictly preferable to b among rule leaves of equal depth.
bool better_rule_leaf(const ReachedLeaf& a, const ReachedLeaf& b) {
  const NodeStats& sa = a.node->stats;
  const NodeStats& sb = b.node->stats;
  const auto lhs = sa.top_count * sb.support;
  const auto rhs = sb.top_count * sa.support;
  if (lhs != rhs) return lhs > rhs;
  return sa.support > sb.support;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Rule: return "rule";
    case Provenance::Memorized: return "memorized";
    case Provenance::Analogy: return "analogy";
  }
  return "unknown";
}

std::size_t hamming_padded(std::u32string_view a, std::u32string_view b) {
  const std::size_t common = std::min(a.size(), b.size());
  std::size_t distance = std::max(a.size(), b.size()) - common;
  for (std::size_t i = 0; i < common; ++i) distance += a[i] != b[i] ? 1 : 0;
  return distance;
}

std::vector<MemorizedLemma> rank_by_distance(std::span<const MemorizedLemma> memorized,
                                             const Segments& target) {
  std::vector<std::pair<std::size_t, MemorizedLemma>> scored;
  scored.reserve(memorized.size());
  for (const auto& m : memorized) scored.emplace_back(hamming_padded(m.lemma, target), m);
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.frequency != b.second.frequency) return a.second.frequency > b.second.frequency;
    if (a.second.lemma != b.second.lemma) return a.second.lemma < b.second.lemma;
    return canonical_less(a.second.change, b.second.change);
  });
  std::vector<MemorizedLemma> out;
  out.reserve(scored.size());
  for (auto& s : scored) out.push_back(std::move(s.second));
  return out;
}

MemorizedLemma nearest_memorized(std::span<const MemorizedLemma> memorized,
                                 const Segments& target) {
  if (memorized.empty()) throw std::invalid_argument("no memorized lemmas to compare against");
  return rank_by_distance(memorized, target).front();
}

ProductionResult inflect(const LearnedTree& tree, const Query& query, AnalogyMode mode) {
  if (query.lemma.empty()) throw std::invalid_argument("query lemma is empty");
  for (const auto& tag : query.known) {
    if (query.unknown.contains(tag)) {
      throw std::invalid_argument("feature '" + tag + "' is both known and unknown");
    }
    if (!tree.declared_tags.contains(tag)) {
      throw std::invalid_argument("feature '" + tag + "' is not declared by the tree");
    }
  }
  for (const auto& tag : query.unknown) {
    if (!tree.declared_tags.contains(tag)) {
      throw std::invalid_argument("feature '" + tag + "' is not declared by the tree");
    }
  }

  Traversal traversal(query);
  std::vector<std::string> path;
  traversal.walk(tree.root, 0, path);
  const auto& leaves = traversal.leaves;

  ProductionResult result;
  result.rule_compatible = std::any_of(leaves.begin(), leaves.end(),
                                       [](const ReachedLeaf& l) { return l.node->rule.has_value(); });

  const MemorizedEntry* stored = nullptr;
  for (const auto& leaf : leaves) {
    for (const auto& entry : leaf.node->memorized) {
      if (!compatible_entry(entry, query, tree.declared_tags)) continue;
      if (!stored || entry.frequency > stored->frequency) stored = &entry;
    }
  }
  if (stored) {
    result.inflection = stored->inflection;
    result.provenance = Provenance::Memorized;
    result.change = derive_change(query.lemma, stored->inflection);
    return result;
  }

  const ReachedLeaf* chosen = nullptr;
  for (const auto& leaf : leaves) {
    if (!leaf.node->rule) continue;
    if (!chosen || leaf.depth > chosen->depth ||
        (leaf.depth == chosen->depth && better_rule_leaf(leaf, *chosen))) {
      chosen = &leaf;
    }
  }
  if (chosen) {
    const Change& rule = *chosen->node->rule;
    try {
      result.inflection = apply_change(query.lemma, rule);
      result.provenance = Provenance::Rule;
      result.change = rule;
      result.path = chosen->path;
      result.depth = chosen->depth;
      return result;
    } catch (const InapplicableChange&) {
      // A rule that deletes more than a short lemma holds falls through to
      // analogy.
    }
  }

  std::vector<MemorizedLemma> pool;
  for (const auto& leaf : leaves) {
    for (const auto& entry : leaf.node->memorized) {
      pool.push_back(MemorizedLemma{entry.lemma, derive_change(entry.lemma, entry.inflection),
                                    entry.inflection, entry.frequency});
    }
  }
  if (pool.empty()) {
    // Only reachable when the sole compatible rules cannot apply to a very
    // short lemma and store no exceptions: leave the lemma unchanged.
    result.inflection = query.lemma;
    result.provenance = Provenance::Analogy;
    result.change = Change{};
    return result;
  }
  const auto ranked = rank_by_distance(pool, query.lemma);
  result.provenance = Provenance::Analogy;
  result.neighbor = ranked.front().lemma;
  if (mode == AnalogyMode::ApplyChange) {
    for (const auto& candidate : ranked) {
      if (candidate.change.delete_count > query.lemma.size()) continue;
      result.inflection = apply_change(query.lemma, candidate.change);
      result.change = candidate.change;
      result.neighbor = candidate.lemma;
      return result;
    }
  }
  result.inflection = ranked.front().inflection;
  result.change = derive_change(query.lemma, result.inflection);
  return result;
}

}  // namespace atp
