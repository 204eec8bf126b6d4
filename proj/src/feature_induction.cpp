#include "atp/feature_induction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace atp {

InstanceRefs refs_of(const std::vector<Instance>& instances) {
  InstanceRefs refs;
  refs.reserve(instances.size());
  for (const auto& i : instances) refs.push_back(&i);
  return refs;
}

Segments ending_of(const Segments& lemma, std::size_t k) {
  if (k == 0) throw std::invalid_argument("ending length must be at least 1");
  const std::size_t len = std::min(k, lemma.size());
  return lemma.substr(lemma.size() - len);
}

std::vector<InducedFeature> induce_ending_features(std::span<const Instance* const> instances,
                                                   const InductionOptions& options) {
  std::vector<InducedFeature> out;
  if (instances.empty() || options.max_ending_length == 0) return out;

  std::vector<Change> changes;
  changes.reserve(instances.size());
  std::map<Change, std::size_t> frequency;
  for (const Instance* inst : instances) {
    changes.push_back(change_of(*inst));
    ++frequency[changes.back()];
  }

  // How many instances at this level end in each ending up to max length.
  std::unordered_map<Segments, std::size_t> scope;
  for (const Instance* inst : instances) {
    const std::size_t longest = std::min(options.max_ending_length, inst->lemma.size());
    for (std::size_t k = 1; k <= longest; ++k) ++scope[ending_of(inst->lemma, k)];
  }

  std::vector<std::pair<Change, std::size_t>> order(frequency.begin(), frequency.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    if (a.first.suffix != b.first.suffix) return a.first.suffix < b.first.suffix;
    return a.first.delete_count < b.first.delete_count;
  });

  for (const auto& [target, target_count] : order) {
    if (options.suffixal_only && !target.is_suffixal()) continue;

    std::vector<std::size_t> takers;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (changes[i] == target) takers.push_back(i);
    }

    std::vector<Segments> cached;
    std::vector<EndingCandidate> accepted;
    for (std::size_t k = 1; k <= options.max_ending_length; ++k) {
      // Candidate ending -> number of target takers bearing it.
      std::map<Segments, std::size_t> candidates;
      for (std::size_t i : takers) {
        const Segments& lemma = instances[i]->lemma;
        if (lemma.size() < k || ends_with_any(lemma, cached)) continue;
        ++candidates[ending_of(lemma, k)];
      }
      std::vector<Segments> fresh;
      for (const auto& [ending, hits] : candidates) {
        const std::size_t n = scope.at(ending);
        const std::size_t e = n - hits;
        if (is_productive(n, e).productive) {
          fresh.push_back(ending);
          accepted.push_back(EndingCandidate{ending, target, n, e});
        }
      }
      cached.insert(cached.end(), fresh.begin(), fresh.end());
    }
    if (cached.empty()) continue;

    std::size_t in_e = 0, e_not_s = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (!ends_with_any(instances[i]->lemma, cached)) continue;
      ++in_e;
      if (changes[i] != target) ++e_not_s;
    }
    const std::size_t s_not_e = target_count - (in_e - e_not_s);
    if (!is_productive(in_e, e_not_s).productive ||
        !is_productive(target_count, s_not_e).productive) {
      continue;
    }

    Feature feature = Feature::ending_set(std::move(cached));
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const InducedFeature& f) { return f.feature == feature; });
    if (!seen) out.push_back(InducedFeature{std::move(feature), target, std::move(accepted)});
  }
  return out;
}

}  // namespace atp
