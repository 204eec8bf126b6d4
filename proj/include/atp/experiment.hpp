#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atp/corpus.hpp"
#include "atp/inflector.hpp"
#include "atp/rule_tree.hpp"
#include "atp/stats.hpp"

namespace atp {

/// Runs fn(0..count-1) on up to `workers` threads. The first exception
/// thrown by any call is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

/// A named group of changes reported together, e.g. "-(e)n" = {-n, -en}.
struct SuffixClass {
  std::string label;
  std::vector<Change> changes;
};

/// -(e)n, -e, -∅, -er, -s (pure suffixation only).
std::vector<SuffixClass> german_plural_classes();

/// "label=suf|suf;label=suf" where each suf is a pure suffix (empty for
/// the null suffix). Throws std::invalid_argument on malformed input.
std::vector<SuffixClass> parse_suffix_classes(const std::string& text);

/// Label of the first class containing `change`, else "other".
std::string classify(const Change& change, const std::vector<SuffixClass>& classes);

struct ExperimentOptions {
  SamplePlan plan = LogBinnedPlan{};
  std::size_t children = 1;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  TrainConfig train;
  AnalogyMode analogy = AnalogyMode::ApplyChange;
};

/// Seed of simulated child `child`: derive_seed(master, child).
std::uint64_t child_seed(std::uint64_t master, std::size_t child);

/// Changes used as leaf rules by one child's tree at one stage.
struct AcquisitionStage {
  std::size_t vocab_size = 0;
  std::vector<Change> rules;
};
using AcquisitionRuns = std::vector<std::vector<AcquisitionStage>>;  // [child][stage]

AcquisitionRuns simulate_acquisition(const Dataset& ds, const ExperimentOptions& options);

/// Tidy `child,stage,vocab_size,change,acquired` over every change attested
/// in the dataset.
std::string acquisition_csv(const Dataset& ds, const AcquisitionRuns& runs);
/// `stage,mean_vocab_size,change,fraction` for changes some child acquired.
std::string acquisition_summary_csv(const AcquisitionRuns& runs);

struct ErrorCounts {
  std::size_t rule_on_regular = 0;      // wrong rule applied to a regular item
  std::size_t rule_on_irregular = 0;    // over-regularized exception
  std::size_t analogy_no_rule_regular = 0;
  std::size_t analogy_no_rule_irregular = 0;
  std::size_t irregularization = 0;     // non-rule output while a rule was compatible
  std::size_t memorized = 0;            // wrong memorized form

  std::size_t total() const {
    return rule_on_regular + rule_on_irregular + analogy_no_rule_regular +
           analogy_no_rule_irregular + irregularization + memorized;
  }
};

struct GrowthStage {
  std::size_t vocab_size = 0;
  std::vector<Change> rules;
  std::size_t test_total = 0, test_correct = 0;
  // Irregulars of the child's final vocabulary, queried at every stage.
  std::size_t irregular_total = 0, irregular_correct = 0;
  // Irregulars of the current stage's vocabulary.
  std::size_t current_irregular_total = 0, current_irregular_correct = 0;
  ErrorCounts errors;

  double test_accuracy() const;
  double irregular_accuracy() const;
  double current_irregular_accuracy() const;
};
using GrowthRuns = std::vector<std::vector<GrowthStage>>;  // [child][stage]

/// Items the adult grammar (a tree trained on all of `pool`) produces by
/// rule are regular; memorized or analogized ones are irregular.
class RegularityOracle {
 public:
  RegularityOracle(const Dataset& pool, const TrainConfig& config);
  bool is_regular(const Instance& item) const;
  const LearnedTree& tree() const { return tree_; }

 private:
  LearnedTree tree_;
};

GrowthRuns simulate_growth(const Dataset& pool, const Dataset& test, const ExperimentOptions& options);
std::string growth_csv(const GrowthRuns& runs);
std::string growth_summary_csv(const GrowthRuns& runs);

struct Stimulus {
  Segments lemma;
  std::optional<FeatureId> gender;
  std::string stimulus_class;  // "R" or "NR"
};

/// `lemma<TAB>gender-or-?<TAB>R|NR`; `#` lines are comments.
std::vector<Stimulus> load_stimuli(const std::filesystem::path& path);

struct WugResult {
  std::vector<Stimulus> stimuli;
  std::vector<std::string> conditions;  // "unknown", "given"
  std::vector<std::string> suffixes;    // class labels, then "other"
  // [condition][stimulus][suffix] = fraction of models
  std::vector<std::vector<std::vector<double>>> probability;
};

/// Trains `options.children` models on the last stage of the sample plan
/// and queries every stimulus with all tags unknown ("unknown") and with
/// its listed gender ("given"; same as unknown when none is listed).
WugResult simulate_wug(const Dataset& ds, const std::vector<Stimulus>& stimuli,
                       const ExperimentOptions& options, const std::vector<SuffixClass>& classes);

/// (stimulus, suffix) -> probability; pairs absent from the file count as 0.
using HumanTable = std::map<std::pair<std::string, std::string>, double>;
HumanTable load_human_table(const std::filesystem::path& path);

struct WugCorrelation {
  std::string condition;
  std::string suffix;
  std::optional<stats::CorrelationResult> result;  // empty when undefined
};

std::vector<WugCorrelation> correlate(const WugResult& wug, const HumanTable& human);

std::string wug_productions_csv(const WugResult& wug);
std::string wug_summary_csv(const WugResult& wug);
std::string wug_correlations_csv(const std::vector<WugCorrelation>& correlations);
/// The "unknown" condition as a `stimulus,suffix,probability` table.
std::string wug_as_human_table(const WugResult& wug, const std::string& condition = "unknown");

/// Writes `text` to `dir / name`, creating `dir`. Throws on failure.
void write_text(const std::filesystem::path& dir, const std::string& name, const std::string& text);

}  // namespace atp
