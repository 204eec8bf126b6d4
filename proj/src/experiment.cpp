#include "atp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "atp/random.hpp"

namespace atp {
namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<Change> attested_changes(const Dataset& ds) {
  std::set<Change, decltype(&canonical_less)> seen(&canonical_less);
  for (const auto& inst : ds.instances) seen.insert(change_of(inst));
  return {seen.begin(), seen.end()};
}

Query full_query(const Instance& inst) { return Query{inst.lemma, inst.features, {}}; }

std::string trim_copy(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<SuffixClass> german_plural_classes() {
  return {
      {"-(e)n", {Change{0, U"n"}, Change{0, U"en"}}},
      {"-e", {Change{0, U"e"}}},
      {"-∅", {Change{0, U""}}},
      {"-er", {Change{0, U"er"}}},
      {"-s", {Change{0, U"s"}}},
  };
}

std::vector<SuffixClass> parse_suffix_classes(const std::string& text) {
  std::vector<SuffixClass> classes;
  for (const auto& item : split_on(text, ';')) {
    const auto entry = trim_copy(item);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("suffix class '" + entry + "' must look like label=suf|suf");
    }
    SuffixClass cls{trim_copy(entry.substr(0, eq)), {}};
    for (const auto& suf : split_on(entry.substr(eq + 1), '|')) {
      cls.changes.push_back(Change{0, from_utf8(trim_copy(suf))});
    }
    if (cls.changes.empty()) cls.changes.push_back(Change{0, U""});
    if (cls.label == "other") throw std::invalid_argument("'other' is reserved");
    classes.push_back(std::move(cls));
  }
  if (classes.empty()) throw std::invalid_argument("no suffix classes given");
  return classes;
}

std::string classify(const Change& change, const std::vector<SuffixClass>& classes) {
  for (const auto& cls : classes) {
    if (std::find(cls.changes.begin(), cls.changes.end(), change) != cls.changes.end()) {
      return cls.label;
    }
  }
  return "other";
}

std::uint64_t child_seed(std::uint64_t master, std::size_t child) {
  return derive_seed(master, child);
}

// ---------------------------------------------------------------- acquisition

AcquisitionRuns simulate_acquisition(const Dataset& ds, const ExperimentOptions& options) {
  if (options.children == 0) throw std::invalid_argument("need at least one simulated child");
  validate(options.plan);
  AcquisitionRuns runs(options.children);
  parallel_for(options.children, options.workers, [&](std::size_t child) {
    const auto stages = draw_stages(ds, options.plan, child_seed(options.master_seed, child));
    auto& out = runs[child];
    for (const auto& stage : stages) {
      const auto tree = train(stage.instances, ds.declared_tags, options.train);
      out.push_back(AcquisitionStage{stage.instances.size(), rule_changes(tree)});
    }
  });
  return runs;
}

std::string acquisition_csv(const Dataset& ds, const AcquisitionRuns& runs) {
  const auto changes = attested_changes(ds);
  std::ostringstream out;
  out << "child,stage,vocab_size,change,acquired\n";
  for (std::size_t c = 0; c < runs.size(); ++c) {
    for (std::size_t s = 0; s < runs[c].size(); ++s) {
      const auto& stage = runs[c][s];
      for (const auto& change : changes) {
        const bool acquired =
            std::find(stage.rules.begin(), stage.rules.end(), change) != stage.rules.end();
        out << c << ',' << s + 1 << ',' << stage.vocab_size << ',' << csv_field(describe(change))
            << ',' << (acquired ? 1 : 0) << '\n';
      }
    }
  }
  return out.str();
}

std::string acquisition_summary_csv(const AcquisitionRuns& runs) {
  std::set<Change, decltype(&canonical_less)> ever(&canonical_less);
  std::size_t max_stages = 0;
  for (const auto& child : runs) {
    max_stages = std::max(max_stages, child.size());
    for (const auto& stage : child) ever.insert(stage.rules.begin(), stage.rules.end());
  }
  std::ostringstream out;
  out << "stage,mean_vocab_size,change,fraction\n";
  for (std::size_t s = 0; s < max_stages; ++s) {
    double vocab = 0;
    std::size_t present = 0;
    for (const auto& child : runs) {
      if (s < child.size()) {
        vocab += static_cast<double>(child[s].vocab_size);
        ++present;
      }
    }
    for (const auto& change : ever) {
      std::size_t have = 0;
      for (const auto& child : runs) {
        if (s < child.size() &&
            std::find(child[s].rules.begin(), child[s].rules.end(), change) != child[s].rules.end()) {
          ++have;
        }
      }
      out << s + 1 << ',' << num(vocab / static_cast<double>(present)) << ','
          << csv_field(describe(change)) << ',' << num(ratio(have, present)) << '\n';
    }
  }
  return out.str();
}

// --------------------------------------------------------------------- growth

double GrowthStage::test_accuracy() const { return ratio(test_correct, test_total); }
double GrowthStage::irregular_accuracy() const { return ratio(irregular_correct, irregular_total); }
double GrowthStage::current_irregular_accuracy() const {
  return ratio(current_irregular_correct, current_irregular_total);
}

RegularityOracle::RegularityOracle(const Dataset& pool, const TrainConfig& config)
    : tree_(train(pool.instances, pool.declared_tags, config)) {}

bool RegularityOracle::is_regular(const Instance& item) const {
  const auto r = inflect(tree_, full_query(item));
  return r.provenance == Provenance::Rule && r.inflection == item.inflection;
}

GrowthRuns simulate_growth(const Dataset& pool, const Dataset& test, const ExperimentOptions& options) {
  if (options.children == 0) throw std::invalid_argument("need at least one simulated child");
  if (test.instances.empty()) throw std::invalid_argument("test set is empty");
  validate(options.plan);
  for (const auto& inst : test.instances) {
    for (const auto& tag : inst.features) {
      if (!pool.declared_tags.contains(tag)) {
        throw std::invalid_argument("test feature '" + tag + "' is not declared by the training data");
      }
    }
  }

  const RegularityOracle oracle(pool, options.train);
  std::vector<char> pool_regular(pool.instances.size());
  std::map<std::pair<Segments, FeatureSet>, std::size_t> pool_index;
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    pool_regular[i] = oracle.is_regular(pool.instances[i]);
    pool_index.emplace(std::pair{pool.instances[i].lemma, pool.instances[i].features}, i);
  }
  std::vector<char> test_regular(test.instances.size());
  for (std::size_t i = 0; i < test.instances.size(); ++i) {
    test_regular[i] = oracle.is_regular(test.instances[i]);
  }
  auto index_of = [&](const Instance& inst) {
    return pool_index.at(std::pair{inst.lemma, inst.features});
  };

  GrowthRuns runs(options.children);
  parallel_for(options.children, options.workers, [&](std::size_t child) {
    const auto stages = draw_stages(pool, options.plan, child_seed(options.master_seed, child));
    std::vector<std::size_t> final_irregulars;
    for (const auto& inst : stages.back().instances) {
      const auto i = index_of(inst);
      if (!pool_regular[i]) final_irregulars.push_back(i);
    }

    auto& out = runs[child];
    for (const auto& stage : stages) {
      const auto tree = train(stage.instances, pool.declared_tags, options.train);
      GrowthStage g;
      g.vocab_size = stage.instances.size();
      g.rules = rule_changes(tree);

      for (std::size_t t = 0; t < test.instances.size(); ++t) {
        const auto& item = test.instances[t];
        const auto r = inflect(tree, full_query(item), options.analogy);
        ++g.test_total;
        if (r.inflection == item.inflection) {
          ++g.test_correct;
          continue;
        }
        const bool regular = test_regular[t];
        auto& e = g.errors;
        if (r.provenance == Provenance::Rule) {
          ++(regular ? e.rule_on_regular : e.rule_on_irregular);
        } else if (r.rule_compatible) {
          ++e.irregularization;
        } else if (r.provenance == Provenance::Analogy) {
          ++(regular ? e.analogy_no_rule_regular : e.analogy_no_rule_irregular);
        } else {
          ++e.memorized;
        }
      }

      for (std::size_t i : final_irregulars) {
        const auto& item = pool.instances[i];
        ++g.irregular_total;
        if (inflect(tree, full_query(item), options.analogy).inflection == item.inflection) {
          ++g.irregular_correct;
        }
      }
      for (const auto& item : stage.instances) {
        if (pool_regular[index_of(item)]) continue;
        ++g.current_irregular_total;
        if (inflect(tree, full_query(item), options.analogy).inflection == item.inflection) {
          ++g.current_irregular_correct;
        }
      }
      out.push_back(std::move(g));
    }
  });
  return runs;
}

std::string growth_csv(const GrowthRuns& runs) {
  std::ostringstream out;
  out << "child,stage,vocab_size,test_accuracy,test_n,train_irregular_accuracy,train_irregular_n,"
         "current_irregular_accuracy,current_irregular_n,err_rule_regular,err_rule_irregular,"
         "err_analogy_no_rule_regular,err_analogy_no_rule_irregular,err_irregularization,"
         "err_memorized\n";
  for (std::size_t c = 0; c < runs.size(); ++c) {
    for (std::size_t s = 0; s < runs[c].size(); ++s) {
      const auto& g = runs[c][s];
      const auto& e = g.errors;
      out << c << ',' << s + 1 << ',' << g.vocab_size << ',' << num(g.test_accuracy()) << ','
          << g.test_total << ',' << num(g.irregular_accuracy()) << ',' << g.irregular_total << ','
          << num(g.current_irregular_accuracy()) << ',' << g.current_irregular_total << ','
          << e.rule_on_regular << ',' << e.rule_on_irregular << ',' << e.analogy_no_rule_regular
          << ',' << e.analogy_no_rule_irregular << ',' << e.irregularization << ',' << e.memorized
          << '\n';
    }
  }
  return out.str();
}

std::string growth_summary_csv(const GrowthRuns& runs) {
  std::size_t max_stages = 0;
  for (const auto& child : runs) max_stages = std::max(max_stages, child.size());
  std::ostringstream out;
  out << "stage,mean_vocab_size,mean_test_accuracy,mean_train_irregular_accuracy,"
         "mean_current_irregular_accuracy\n";
  for (std::size_t s = 0; s < max_stages; ++s) {
    double vocab = 0, test = 0, irr = 0, cur = 0;
    std::size_t n = 0;
    for (const auto& child : runs) {
      if (s >= child.size()) continue;
      const auto& g = child[s];
      vocab += static_cast<double>(g.vocab_size);
      test += g.test_accuracy();
      irr += g.irregular_accuracy();
      cur += g.current_irregular_accuracy();
      ++n;
    }
    const double d = static_cast<double>(n);
    out << s + 1 << ',' << num(vocab / d) << ',' << num(test / d) << ',' << num(irr / d) << ','
        << num(cur / d) << '\n';
  }
  return out.str();
}

// ------------------------------------------------------------------------ wug

std::vector<Stimulus> load_stimuli(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open stimuli " + path.string(), 0);
  std::vector<Stimulus> stimuli;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim_copy(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_on(line, '\t');
    if (fields.size() != 3) throw DatasetError("expected lemma, gender and class", line_no);
    Stimulus s;
    try {
      s.lemma = from_utf8(trim_copy(fields[0]));
    } catch (const std::invalid_argument& e) {
      throw DatasetError(e.what(), line_no);
    }
    if (s.lemma.empty()) throw DatasetError("empty lemma", line_no);
    const auto gender = trim_copy(fields[1]);
    if (gender != "?" && !gender.empty()) s.gender = gender;
    s.stimulus_class = trim_copy(fields[2]);
    if (s.stimulus_class != "R" && s.stimulus_class != "NR") {
      throw DatasetError("class must be R or NR", line_no);
    }
    stimuli.push_back(std::move(s));
  }
  return stimuli;
}

WugResult simulate_wug(const Dataset& ds, const std::vector<Stimulus>& stimuli,
                       const ExperimentOptions& options, const std::vector<SuffixClass>& classes) {
  if (options.children == 0) throw std::invalid_argument("need at least one model");
  if (stimuli.empty()) throw std::invalid_argument("no stimuli");
  validate(options.plan);
  for (const auto& s : stimuli) {
    if (s.gender && !ds.declared_tags.contains(*s.gender)) {
      throw std::invalid_argument("stimulus gender '" + *s.gender + "' is not a declared feature");
    }
  }

  WugResult result;
  result.stimuli = stimuli;
  result.conditions = {"unknown", "given"};
  for (const auto& cls : classes) result.suffixes.push_back(cls.label);
  result.suffixes.push_back("other");
  const std::size_t n_suffix = result.suffixes.size();
  auto suffix_index = [&](const std::string& label) {
    return static_cast<std::size_t>(
        std::find(result.suffixes.begin(), result.suffixes.end(), label) - result.suffixes.begin());
  };

  // [model][condition][stimulus] -> suffix index
  std::vector<std::vector<std::vector<std::size_t>>> picks(options.children);
  parallel_for(options.children, options.workers, [&](std::size_t model) {
    const auto stages = draw_stages(ds, options.plan, child_seed(options.master_seed, model));
    const auto tree = train(stages.back().instances, ds.declared_tags, options.train);
    auto& mine = picks[model];
    mine.assign(2, std::vector<std::size_t>(stimuli.size()));
    for (std::size_t i = 0; i < stimuli.size(); ++i) {
      const auto& s = stimuli[i];
      const Query unknown{s.lemma, {}, ds.declared_tags};
      const auto r = inflect(tree, unknown, options.analogy);
      mine[0][i] = suffix_index(classify(derive_change(s.lemma, r.inflection), classes));
      if (!s.gender) {
        mine[1][i] = mine[0][i];
        continue;
      }
      // Gender is known; other declared tags are treated as absent.
      const auto g = inflect(tree, Query{s.lemma, {*s.gender}, {}}, options.analogy);
      mine[1][i] = suffix_index(classify(derive_change(s.lemma, g.inflection), classes));
    }
  });

  result.probability.assign(
      2, std::vector<std::vector<double>>(stimuli.size(), std::vector<double>(n_suffix, 0.0)));
  std::vector<std::vector<std::vector<std::size_t>>> counts(
      2, std::vector<std::vector<std::size_t>>(stimuli.size(), std::vector<std::size_t>(n_suffix, 0)));
  for (const auto& model : picks) {
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < stimuli.size(); ++i) ++counts[c][i][model[c][i]];
    }
  }
  const double models = static_cast<double>(options.children);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < stimuli.size(); ++i) {
      for (std::size_t k = 0; k < n_suffix; ++k) {
        result.probability[c][i][k] = static_cast<double>(counts[c][i][k]) / models;
      }
    }
  }
  return result;
}

HumanTable load_human_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open human table " + path.string(), 0);
  HumanTable table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim_copy(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_on(line, ',');
    if (fields.size() != 3) throw DatasetError("expected stimulus,suffix,probability", line_no);
    const auto p_text = trim_copy(fields[2]);
    if (line_no == 1 && trim_copy(fields[0]) == "stimulus") continue;
    double p = 0;
    try {
      std::size_t used = 0;
      p = std::stod(p_text, &used);
      if (used != p_text.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw DatasetError("bad probability '" + p_text + "'", line_no);
    }
    if (!(p >= 0.0 && p <= 1.0)) throw DatasetError("probability outside [0, 1]", line_no);
    table[{trim_copy(fields[0]), trim_copy(fields[1])}] = p;
  }
  return table;
}

std::vector<WugCorrelation> correlate(const WugResult& wug, const HumanTable& human) {
  std::vector<WugCorrelation> out;
  for (std::size_t c = 0; c < wug.conditions.size(); ++c) {
    for (std::size_t k = 0; k < wug.suffixes.size(); ++k) {
      std::vector<double> model, people;
      for (std::size_t i = 0; i < wug.stimuli.size(); ++i) {
        model.push_back(wug.probability[c][i][k]);
        const auto it = human.find({to_utf8(wug.stimuli[i].lemma), wug.suffixes[k]});
        people.push_back(it == human.end() ? 0.0 : it->second);
      }
      WugCorrelation wc{wug.conditions[c], wug.suffixes[k], std::nullopt};
      try {
        wc.result = stats::spearman(model, people);
      } catch (const stats::UndefinedCorrelation&) {
      } catch (const std::invalid_argument&) {
      }
      out.push_back(std::move(wc));
    }
  }
  return out;
}

std::string wug_productions_csv(const WugResult& wug) {
  std::ostringstream out;
  out << "condition,stimulus,class,suffix,probability\n";
  for (std::size_t c = 0; c < wug.conditions.size(); ++c) {
    for (std::size_t i = 0; i < wug.stimuli.size(); ++i) {
      for (std::size_t k = 0; k < wug.suffixes.size(); ++k) {
        out << wug.conditions[c] << ',' << csv_field(to_utf8(wug.stimuli[i].lemma)) << ','
            << wug.stimuli[i].stimulus_class << ',' << csv_field(wug.suffixes[k]) << ','
            << num(wug.probability[c][i][k]) << '\n';
      }
    }
  }
  return out.str();
}

std::string wug_summary_csv(const WugResult& wug) {
  std::ostringstream out;
  out << "condition,class,suffix,mean_probability,stimuli\n";
  for (std::size_t c = 0; c < wug.conditions.size(); ++c) {
    for (const std::string cls : {"R", "NR"}) {
      for (std::size_t k = 0; k < wug.suffixes.size(); ++k) {
        double sum = 0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < wug.stimuli.size(); ++i) {
          if (wug.stimuli[i].stimulus_class != cls) continue;
          sum += wug.probability[c][i][k];
          ++n;
        }
        if (n == 0) continue;
        out << wug.conditions[c] << ',' << cls << ',' << csv_field(wug.suffixes[k]) << ','
            << num(sum / static_cast<double>(n)) << ',' << n << '\n';
      }
    }
  }
  return out.str();
}

std::string wug_correlations_csv(const std::vector<WugCorrelation>& correlations) {
  std::ostringstream out;
  out << "condition,suffix,rho,n,significant\n";
  for (const auto& wc : correlations) {
    out << wc.condition << ',' << csv_field(wc.suffix) << ',';
    if (wc.result) {
      out << num(wc.result->rho) << ',' << wc.result->n << ',' << (wc.result->significant ? 1 : 0);
    } else {
      out << "NA,NA,NA";
    }
    out << '\n';
  }
  return out.str();
}

std::string wug_as_human_table(const WugResult& wug, const std::string& condition) {
  const auto it = std::find(wug.conditions.begin(), wug.conditions.end(), condition);
  if (it == wug.conditions.end()) throw std::invalid_argument("unknown condition " + condition);
  const auto c = static_cast<std::size_t>(it - wug.conditions.begin());
  std::ostringstream out;
  out << "stimulus,suffix,probability\n";
  for (std::size_t i = 0; i < wug.stimuli.size(); ++i) {
    for (std::size_t k = 0; k < wug.suffixes.size(); ++k) {
      out << to_utf8(wug.stimuli[i].lemma) << ',' << wug.suffixes[k] << ','
          << exact(wug.probability[c][i][k]) << '\n';
    }
  }
  return out.str();
}

void write_text(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace atp
