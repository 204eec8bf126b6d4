#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "atp/morph.hpp"

namespace atp {

struct Dataset {
  std::string name;
  FeatureSet declared_tags;
  std::vector<Instance> instances;
};

/// Malformed input. `line` is 1-based, 0 when not tied to a line.
class DatasetError : public std::runtime_error {
 public:
  DatasetError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Tab-separated rows `lemma<TAB>tag1,tag2<TAB>inflection<TAB>frequency`.
/// A `#features: a,b,c` line declares the tag universe; other `#` lines and
/// blank lines are ignored. An empty or "-" tag field means no tags.
/// Doublets keep the higher-frequency row and are reported on `warnings`.
Dataset parse_dataset(std::istream& in, std::string name, std::ostream* warnings = nullptr);
Dataset load_dataset(const std::filesystem::path& path, std::ostream* warnings = nullptr);

void write_dataset(std::ostream& out, const Dataset& dataset);

/// `n` distinct instances drawn without replacement, each draw picking a
/// remaining instance with probability proportional to its frequency.
/// Returned in draw order, so every prefix is itself such a sample.
/// Throws std::invalid_argument when n exceeds the dataset.
Dataset sample_frequency_weighted(const Dataset& ds, std::size_t n, std::uint64_t seed);

/// Nested frequency-weighted samples at each of `sizes` (ascending).
std::vector<Dataset> sample_frequency_weighted_stages(const Dataset& ds,
                                                      const std::vector<std::size_t>& sizes,
                                                      std::uint64_t seed);

/// Frequency bin of each instance (0 = lowest). Bins are log-spaced over
/// [min positive frequency, max frequency]; zero frequencies fall in bin 0.
/// When all positive frequencies are equal, instances are ranked by
/// frequency (stable) and cut into near-equal consecutive bins instead.
std::vector<std::size_t> log_frequency_bins(const Dataset& ds, std::size_t bins);

/// Cumulative vocabularies: stage i adds `per_bin` instances drawn
/// uniformly without replacement from the i-th highest-frequency bin
/// (the whole bin when it is smaller; shortfalls go to `warnings`).
std::vector<Dataset> sample_log_binned(const Dataset& ds, std::size_t bins, std::size_t per_bin,
                                       std::uint64_t seed, std::ostream* warnings = nullptr);

/// Adds an independent uniform real draw from [lo, hi] to every frequency.
Dataset jitter_frequencies(const Dataset& ds, double lo, double hi, std::uint64_t seed);

/// The `n` most frequent instances after jittering (stable on ties).
Dataset top_n(const Dataset& ds, std::size_t n, double jitter_lo, double jitter_hi,
              std::uint64_t seed);

struct FrequencyWeightedPlan {
  std::vector<std::size_t> sizes;
};
struct LogBinnedPlan {
  std::size_t bins = 20;
  std::size_t per_bin = 50;
};
struct TopNPlan {
  std::vector<std::size_t> sizes;
  double jitter_lo = 0.0;
  double jitter_hi = 0.0;
};
using SamplePlan = std::variant<FrequencyWeightedPlan, LogBinnedPlan, TopNPlan>;

/// Throws std::invalid_argument on nonpositive parameters or lo > hi.
void validate(const SamplePlan& plan);

/// The vocabulary stages a simulated child sees under `plan`.
std::vector<Dataset> draw_stages(const Dataset& ds, const SamplePlan& plan, std::uint64_t seed,
                                 std::ostream* warnings = nullptr);

}  // namespace atp
