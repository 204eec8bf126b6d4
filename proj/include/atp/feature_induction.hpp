#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "atp/morph.hpp"

namespace atp {

using InstanceRefs = std::vector<const Instance*>;

InstanceRefs refs_of(const std::vector<Instance>& instances);

/// Final min(k, len) segments of `lemma`. Requires k >= 1.
Segments ending_of(const Segments& lemma, std::size_t k);

/// Per-ending TP bookkeeping: of `scope_count` instances whose lemma ends in
/// `ending`, `violations` do not take `target_change`.
struct EndingCandidate {
  Segments ending;
  Change target_change;
  std::size_t scope_count = 0;
  std::size_t violations = 0;
};

struct InducedFeature {
  Feature feature;       // always an ending set
  Change target_change;  // the change its endings predict
  std::vector<EndingCandidate> endings;
};

struct InductionOptions {
  std::size_t max_ending_length = 3;
  // Only pure suffixation changes (no deleted segments) seed ending
  // searches; other changes still count as violations.
  bool suffixal_only = true;
};

/// Shortest lemma endings that productively predict a change, grouped into
/// one ending-set feature per change. A change's endings are kept only when
/// both "ending set -> change" and "change -> ending set" pass the TP over
/// the given instances. Results are structurally deduplicated and ordered by
/// the change processing order (most frequent change first).
std::vector<InducedFeature> induce_ending_features(std::span<const Instance* const> instances,
                                                   const InductionOptions& options = {});

}  // namespace atp
