#include "atp/morph.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace atp {

bool canonical_less(const Change& a, const Change& b) {
  if (a.suffix.size() != b.suffix.size()) return a.suffix.size() < b.suffix.size();
  if (a.suffix != b.suffix) return a.suffix < b.suffix;
  return a.delete_count < b.delete_count;
}

std::string describe(const Change& change) {
  const std::string suffix = change.suffix.empty() ? "∅" : to_utf8(change.suffix);
  if (change.delete_count == 0) return "-" + suffix;
  return "-" + std::to_string(change.delete_count) + "+" + suffix;
}

Change derive_change(const Segments& lemma, const Segments& inflection) {
  const auto [lemma_end, infl_end] =
      std::mismatch(lemma.begin(), lemma.end(), inflection.begin(), inflection.end());
  const auto prefix = static_cast<std::size_t>(lemma_end - lemma.begin());
  return Change{lemma.size() - prefix, Segments(infl_end, inflection.end())};
}

Segments apply_change(const Segments& lemma, const Change& change) {
  if (change.delete_count > lemma.size()) {
    throw InapplicableChange("change " + describe(change) +
                             " deletes more segments than '" + to_utf8(lemma) + "' has");
  }
  Segments out = lemma.substr(0, lemma.size() - change.delete_count);
  out += change.suffix;
  return out;
}

Feature Feature::categorical(FeatureId tag) {
  Feature f;
  f.value_ = Categorical{std::move(tag)};
  return f;
}

Feature Feature::ending_set(std::vector<Segments> endings) {
  if (endings.empty()) throw std::invalid_argument("ending set must be nonempty");
  std::sort(endings.begin(), endings.end());
  endings.erase(std::unique(endings.begin(), endings.end()), endings.end());
  if (endings.front().empty()) throw std::invalid_argument("ending must be nonempty");
  Feature f;
  f.value_ = EndingSet{std::move(endings)};
  return f;
}

bool ends_with_any(const Segments& lemma, const std::vector<Segments>& endings) {
  return std::any_of(endings.begin(), endings.end(),
                     [&](const Segments& e) { return ends_with(lemma, e); });
}

bool Feature::matches(const Segments& lemma, const FeatureSet& features) const {
  if (const auto* cat = std::get_if<Categorical>(&value_)) {
    return features.contains(cat->tag);
  }
  return ends_with_any(lemma, std::get<EndingSet>(value_).endings);
}

std::string Feature::label() const {
  if (is_categorical()) return tag();
  std::string out = "[";
  bool first = true;
  for (const auto& e : endings()) {
    if (!first) out += "|";
    out += to_utf8(e);
    first = false;
  }
  return out + "]";
}

std::vector<Instance> resolve_doublets(std::vector<Instance>& instances) {
  std::map<std::pair<Segments, FeatureSet>, std::size_t> kept;
  std::vector<bool> drop(instances.size(), false);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto key = std::make_pair(instances[i].lemma, instances[i].features);
    auto [it, inserted] = kept.emplace(std::move(key), i);
    if (inserted) continue;
    if (instances[i].frequency > instances[it->second].frequency) {
      drop[it->second] = true;
      it->second = i;
    } else {
      drop[i] = true;
    }
  }
  std::vector<Instance> dropped;
  std::vector<Instance> remaining;
  remaining.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    (drop[i] ? dropped : remaining).push_back(std::move(instances[i]));
  }
  instances = std::move(remaining);
  return dropped;
}

}  // namespace atp
