#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atp/morph.hpp"

namespace atp {

enum class AnalogyMode {
  ApplyChange,  // apply the neighbor's change to the query lemma
  Verbatim,     // return the neighbor's stored inflection
};

/// A production request. Tags in `unknown` are neither asserted nor denied;
/// every other declared tag is present iff it is in `known`.
struct Query {
  Segments lemma;
  FeatureSet known;
  FeatureSet unknown;
};

enum class Provenance { Rule, Memorized, Analogy };

std::string to_string(Provenance p);

struct ProductionResult {
  Segments inflection;
  Provenance provenance = Provenance::Rule;
  Change change;                  // change realized on the query lemma
  std::vector<std::string> path;  // branch labels to the rule leaf used
  std::size_t depth = 0;          // depth of that leaf
  std::optional<Segments> neighbor;  // analogy source lemma
  bool rule_compatible = false;   // some compatible path reached a rule leaf
};

/// Positionwise mismatch count after right-padding the shorter sequence
/// with a pad symbol that differs from every real segment.
std::size_t hamming_padded(std::u32string_view a, std::u32string_view b);

struct MemorizedLemma {
  Segments lemma;
  Change change;
  Segments inflection;
  double frequency = 0.0;
};

/// Entries ordered by (distance to target, higher frequency, lemma,
/// change). The first element is the nearest neighbor.
std::vector<MemorizedLemma> rank_by_distance(std::span<const MemorizedLemma> memorized,
                                             const Segments& target);

/// Requires a nonempty `memorized`.
MemorizedLemma nearest_memorized(std::span<const MemorizedLemma> memorized,
                                 const Segments& target);

/// Memorized lookup, then the deepest compatible rule, then analogy over
/// the memorized lemmas of every compatible leaf.
///
/// Throws std::invalid_argument for an empty lemma, overlapping
/// known/unknown sets, or tags the tree never saw declared.
ProductionResult inflect(const LearnedTree& tree, const Query& query,
                         AnalogyMode mode = AnalogyMode::ApplyChange);

}  // namespace atp
