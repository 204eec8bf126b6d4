// Command-line front end: train, predict, acquisition, growth, wug, export-tree.

#include <chrono>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "atp/experiment.hpp"
#include "atp/tree_io.hpp"

namespace {

struct SamplingArgs {
  std::string sample;
  std::vector<std::size_t> vocab_sizes;
  std::size_t bins = 20;
  std::size_t per_bin = 50;
  std::vector<double> jitter{0.0, 0.0};
};

struct RunArgs {
  std::uint64_t seed = 0;
  std::size_t children = 100;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::string out = "results";
  std::string analogy = "apply-change";
  std::size_t max_ending_len = 3;
};

atp::AnalogyMode analogy_mode(const std::string& s) {
  return s == "verbatim" ? atp::AnalogyMode::Verbatim : atp::AnalogyMode::ApplyChange;
}

atp::SamplePlan make_plan(const SamplingArgs& a) {
  if (a.sample == "weighted") return atp::FrequencyWeightedPlan{a.vocab_sizes};
  if (a.sample == "top-n") return atp::TopNPlan{a.vocab_sizes, a.jitter[0], a.jitter[1]};
  return atp::LogBinnedPlan{a.bins, a.per_bin};
}

atp::ExperimentOptions make_options(const RunArgs& r, const SamplingArgs& s) {
  atp::ExperimentOptions o;
  o.plan = make_plan(s);
  o.children = r.children;
  o.master_seed = r.seed;
  o.workers = r.workers;
  o.train.max_ending_length = r.max_ending_len;
  o.analogy = analogy_mode(r.analogy);
  return o;
}

void add_run_flags(CLI::App* cmd, RunArgs& r, SamplingArgs& s, const std::string& default_sample) {
  s.sample = default_sample;
  cmd->add_option("--seed", r.seed, "Master seed")->capture_default_str();
  cmd->add_option("--children", r.children, "Simulated children (models)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--workers", r.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", r.out, "Output directory")->capture_default_str();
  cmd->add_option("--analogy-mode", r.analogy, "Analogical production")
      ->check(CLI::IsMember({"apply-change", "verbatim"}))
      ->capture_default_str();
  cmd->add_option("--max-ending-len", r.max_ending_len, "Longest induced ending")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--sample", s.sample, "Sampling regime")
      ->check(CLI::IsMember({"log-binned", "weighted", "top-n"}))
      ->capture_default_str();
  cmd->add_option("--vocab-size", s.vocab_sizes, "Stage sizes for weighted / top-n sampling")
      ->delimiter(',');
  cmd->add_option("--bins", s.bins, "Frequency bins (log-binned)")->capture_default_str();
  cmd->add_option("--per-bin", s.per_bin, "Words drawn per bin (log-binned)")->capture_default_str();
  cmd->add_option("--jitter", s.jitter, "Uniform frequency jitter lo,hi (top-n)")
      ->delimiter(',')
      ->expected(2);
}

atp::Dataset load(const std::string& path) { return atp::load_dataset(path, &std::cerr); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tolerance-gated morphological rule learner"};
  app.require_subcommand(1);

  // train
  std::string train_data, train_out = "tree.json";
  std::size_t train_max_len = 3;
  auto* train_cmd = app.add_subcommand("train", "Learn a tree from a dataset");
  train_cmd->add_option("dataset", train_data, "Training TSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train_out, "Tree file (JSON)")->capture_default_str();
  train_cmd->add_option("--max-ending-len", train_max_len)->check(CLI::PositiveNumber);

  // predict
  std::string predict_tree, predict_lemma, predict_analogy = "apply-change";
  std::vector<std::string> known, unknown;
  auto* predict_cmd = app.add_subcommand("predict", "Inflect one lemma with a saved tree");
  predict_cmd->add_option("tree", predict_tree)->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("lemma", predict_lemma)->required();
  predict_cmd->add_option("--features", known, "Known tags")->delimiter(',');
  predict_cmd->add_option("--unknown", unknown, "Tags treated as unknown")->delimiter(',');
  predict_cmd->add_option("--analogy-mode", predict_analogy)
      ->check(CLI::IsMember({"apply-change", "verbatim"}));

  // acquisition
  std::string acq_data;
  RunArgs acq_run;
  SamplingArgs acq_sampling;
  auto* acq_cmd = app.add_subcommand("acquisition", "Which changes each child has as rules, by stage");
  acq_cmd->add_option("dataset", acq_data)->required()->check(CLI::ExistingFile);
  add_run_flags(acq_cmd, acq_run, acq_sampling, "log-binned");

  // growth
  std::string growth_data, growth_test;
  RunArgs growth_run;
  SamplingArgs growth_sampling;
  auto* growth_cmd = app.add_subcommand("growth", "Held-out accuracy and errors by stage");
  growth_cmd->add_option("dataset", growth_data)->required()->check(CLI::ExistingFile);
  growth_cmd->add_option("--test", growth_test, "Held-out TSV")->required()->check(CLI::ExistingFile);
  add_run_flags(growth_cmd, growth_run, growth_sampling, "log-binned");

  // wug
  std::string wug_data, wug_stimuli, wug_human, wug_classes;
  RunArgs wug_run;
  wug_run.children = 500;
  SamplingArgs wug_sampling;
  wug_sampling.vocab_sizes = {400};
  auto* wug_cmd = app.add_subcommand("wug", "Nonce-word production probabilities");
  wug_cmd->add_option("dataset", wug_data)->required()->check(CLI::ExistingFile);
  wug_cmd->add_option("--stimuli", wug_stimuli)->required()->check(CLI::ExistingFile);
  wug_cmd->add_option("--human", wug_human, "stimulus,suffix,probability table")
      ->check(CLI::ExistingFile);
  wug_cmd->add_option("--suffix-classes", wug_classes,
                      "label=suf|suf;... (default: German plural classes)");
  add_run_flags(wug_cmd, wug_run, wug_sampling, "weighted");

  // export-tree
  std::string export_in, export_out, export_format = "dot";
  auto* export_cmd = app.add_subcommand("export-tree", "Re-emit a saved tree as JSON or DOT");
  export_cmd->add_option("tree", export_in)->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--format", export_format)
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  export_cmd->add_option("--out", export_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) {
      const auto ds = load(train_data);
      const auto start = std::chrono::steady_clock::now();
      atp::TrainConfig config;
      config.max_ending_length = train_max_len;
      const auto tree = atp::train(ds.instances, ds.declared_tags, config);
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
      atp::save_tree(tree, train_out);
      std::cerr << "trained on " << ds.instances.size() << " instances in " << took.count()
                << " s; rules:";
      for (const auto& c : atp::rule_changes(tree)) std::cerr << ' ' << atp::describe(c);
      std::cerr << "\n";
    } else if (*predict_cmd) {
      const auto tree = atp::load_tree(predict_tree);
      const atp::Query q{atp::from_utf8(predict_lemma), {known.begin(), known.end()},
                         {unknown.begin(), unknown.end()}};
      const auto r = atp::inflect(tree, q, analogy_mode(predict_analogy));
      std::cout << atp::to_utf8(r.inflection) << '\t' << atp::to_string(r.provenance) << '\t'
                << atp::describe(r.change);
      if (r.provenance == atp::Provenance::Rule) {
        std::cout << "\tdepth=" << r.depth << "\tpath=";
        for (std::size_t i = 0; i < r.path.size(); ++i) std::cout << (i ? " / " : "") << r.path[i];
      }
      if (r.neighbor) std::cout << "\tneighbor=" << atp::to_utf8(*r.neighbor);
      std::cout << '\n';
    } else if (*acq_cmd) {
      const auto ds = load(acq_data);
      const auto runs = atp::simulate_acquisition(ds, make_options(acq_run, acq_sampling));
      atp::write_text(acq_run.out, "acquisition.csv", atp::acquisition_csv(ds, runs));
      atp::write_text(acq_run.out, "acquisition_summary.csv", atp::acquisition_summary_csv(runs));
    } else if (*growth_cmd) {
      const auto ds = load(growth_data);
      const auto test = load(growth_test);
      const auto runs = atp::simulate_growth(ds, test, make_options(growth_run, growth_sampling));
      atp::write_text(growth_run.out, "growth.csv", atp::growth_csv(runs));
      atp::write_text(growth_run.out, "growth_summary.csv", atp::growth_summary_csv(runs));
    } else if (*wug_cmd) {
      const auto ds = load(wug_data);
      const auto stimuli = atp::load_stimuli(wug_stimuli);
      const auto classes =
          wug_classes.empty() ? atp::german_plural_classes() : atp::parse_suffix_classes(wug_classes);
      const auto wug = atp::simulate_wug(ds, stimuli, make_options(wug_run, wug_sampling), classes);
      atp::write_text(wug_run.out, "wug_productions.csv", atp::wug_productions_csv(wug));
      atp::write_text(wug_run.out, "wug_summary.csv", atp::wug_summary_csv(wug));
      if (!wug_human.empty()) {
        const auto human = atp::load_human_table(wug_human);
        atp::write_text(wug_run.out, "wug_correlations.csv",
                        atp::wug_correlations_csv(atp::correlate(wug, human)));
      }
    } else if (*export_cmd) {
      const auto tree = atp::load_tree(export_in);
      const auto format = export_format == "json" ? atp::TreeFormat::Json : atp::TreeFormat::Dot;
      if (export_out.empty()) {
        std::cout << (format == atp::TreeFormat::Json ? atp::tree_to_json(tree) + "\n"
                                                      : atp::tree_to_dot(tree));
      } else {
        atp::save_tree(tree, export_out, format);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
