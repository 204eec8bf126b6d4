#include "atp/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "atp/random.hpp"

namespace atp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

FeatureSet parse_tags(std::string_view field) {
  FeatureSet tags;
  field = trim(field);
  if (field.empty() || field == "-") return tags;
  for (auto part : split(field, ',')) {
    part = trim(part);
    if (!part.empty()) tags.emplace(part);
  }
  return tags;
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& indices) {
  Dataset out{ds.name, ds.declared_tags, {}};
  out.instances.reserve(indices.size());
  for (std::size_t i : indices) out.instances.push_back(ds.instances[i]);
  return out;
}

// Efraimidis-Spirakis keys: sorting by log(u)/w descending reproduces
// sequential weighted draws without replacement.
std::vector<std::size_t> weighted_order(const Dataset& ds, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = ds.instances.size();
  std::vector<double> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform_open_closed();
    const double w = ds.instances[i].frequency;
    keys[i] = w > 0 ? std::log(u) / w : -std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  return order;
}

}  // namespace

Dataset parse_dataset(std::istream& in, std::string name, std::ostream* warnings) {
  Dataset ds;
  ds.name = std::move(name);
  std::vector<std::size_t> line_of;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kHeader = "#features:";
      if (line.substr(0, kHeader.size()) == kHeader) {
        for (const auto& tag : parse_tags(line.substr(kHeader.size()))) {
          ds.declared_tags.insert(tag);
        }
      }
      continue;
    }
    const auto fields = split(std::string_view(raw).substr(0, raw.find_last_not_of("\r") + 1), '\t');
    if (fields.size() != 4) {
      throw DatasetError("expected 4 tab-separated fields, found " +
                             std::to_string(fields.size()), line_no);
    }
    Instance inst;
    try {
      inst.lemma = from_utf8(trim(fields[0]));
      inst.inflection = from_utf8(trim(fields[2]));
    } catch (const std::invalid_argument& e) {
      throw DatasetError(e.what(), line_no);
    }
    if (inst.lemma.empty()) throw DatasetError("empty lemma", line_no);
    if (inst.inflection.empty()) throw DatasetError("empty inflection", line_no);
    inst.features = parse_tags(fields[1]);

    const auto freq_text = trim(fields[3]);
    double freq = 0.0;
    const auto [ptr, ec] = std::from_chars(freq_text.data(), freq_text.data() + freq_text.size(), freq);
    if (ec != std::errc{} || ptr != freq_text.data() + freq_text.size() || !std::isfinite(freq) ||
        freq < 0.0) {
      throw DatasetError("frequency must be a nonnegative number, got '" +
                             std::string(freq_text) + "'", line_no);
    }
    inst.frequency = freq;
    ds.instances.push_back(std::move(inst));
    line_of.push_back(line_no);
  }

  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    for (const auto& tag : ds.instances[i].features) {
      if (!ds.declared_tags.contains(tag)) {
        throw DatasetError("feature '" + tag + "' is not declared in a #features: header",
                           line_of[i]);
      }
    }
  }

  const auto dropped = resolve_doublets(ds.instances);
  if (warnings) {
    for (const auto& d : dropped) {
      *warnings << "warning: " << ds.name << ": dropped doublet " << to_utf8(d.lemma) << " -> "
                << to_utf8(d.inflection) << " (frequency " << d.frequency << ")\n";
    }
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, std::ostream* warnings) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset " + path.string(), 0);
  return parse_dataset(in, path.stem().string(), warnings);
}

void write_dataset(std::ostream& out, const Dataset& ds) {
  out << "#features: ";
  bool first = true;
  for (const auto& tag : ds.declared_tags) {
    out << (first ? "" : ",") << tag;
    first = false;
  }
  out << '\n';
  for (const auto& inst : ds.instances) {
    std::string tags;
    for (const auto& t : inst.features) tags += (tags.empty() ? "" : ",") + t;
    out << to_utf8(inst.lemma) << '\t' << (tags.empty() ? "-" : tags) << '\t'
        << to_utf8(inst.inflection) << '\t' << std::setprecision(17) << inst.frequency << '\n';
  }
}

Dataset sample_frequency_weighted(const Dataset& ds, std::size_t n, std::uint64_t seed) {
  if (n > ds.instances.size()) {
    throw std::invalid_argument("sample size exceeds dataset size");
  }
  auto order = weighted_order(ds, seed);
  order.resize(n);
  return subset(ds, order);
}

std::vector<Dataset> sample_frequency_weighted_stages(const Dataset& ds,
                                                      const std::vector<std::size_t>& sizes,
                                                      std::uint64_t seed) {
  const auto order = weighted_order(ds, seed);
  std::vector<Dataset> stages;
  for (std::size_t size : sizes) {
    if (size > ds.instances.size()) {
      throw std::invalid_argument("sample size exceeds dataset size");
    }
    stages.push_back(subset(ds, {order.begin(), order.begin() + static_cast<long>(size)}));
  }
  return stages;
}

std::vector<std::size_t> log_frequency_bins(const Dataset& ds, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("need at least one bin");
  const std::size_t n = ds.instances.size();
  std::vector<std::size_t> bin(n, 0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& inst : ds.instances) {
    if (inst.frequency > 0) {
      lo = std::min(lo, inst.frequency);
      hi = std::max(hi, inst.frequency);
    }
  }
  if (!(hi > lo)) {
    // Degenerate spread: equal-size bins by frequency rank.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ds.instances[a].frequency < ds.instances[b].frequency;
    });
    for (std::size_t r = 0; r < n; ++r) bin[order[r]] = r * bins / std::max<std::size_t>(n, 1);
    return bin;
  }
  const double log_lo = std::log(lo);
  const double span = std::log(hi) - log_lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = ds.instances[i].frequency;
    if (f <= 0) continue;
    const auto b = static_cast<std::size_t>((std::log(f) - log_lo) / span * static_cast<double>(bins));
    bin[i] = std::min(b, bins - 1);
  }
  return bin;
}

std::vector<Dataset> sample_log_binned(const Dataset& ds, std::size_t bins, std::size_t per_bin,
                                       std::uint64_t seed, std::ostream* warnings) {
  if (per_bin == 0) throw std::invalid_argument("per_bin must be positive");
  const auto bin = log_frequency_bins(ds, bins);
  std::vector<std::vector<std::size_t>> members(bins);
  for (std::size_t i = 0; i < bin.size(); ++i) members[bin[i]].push_back(i);

  Rng rng(seed);
  std::vector<Dataset> stages;
  std::vector<std::size_t> chosen;
  for (std::size_t step = 0; step < bins; ++step) {
    auto& pool = members[bins - 1 - step];
    const std::size_t take = std::min(per_bin, pool.size());
    if (take < per_bin && warnings) {
      *warnings << "warning: " << ds.name << ": frequency bin " << step + 1 << " holds "
                << pool.size() << " instances, fewer than " << per_bin << '\n';
    }
    for (std::size_t k = 0; k < take; ++k) {
      const auto j = k + static_cast<std::size_t>(rng.below(pool.size() - k));
      std::swap(pool[k], pool[j]);
      chosen.push_back(pool[k]);
    }
    stages.push_back(subset(ds, chosen));
  }
  return stages;
}

Dataset jitter_frequencies(const Dataset& ds, double lo, double hi, std::uint64_t seed) {
  if (lo > hi) throw std::invalid_argument("jitter lower bound exceeds upper bound");
  Rng rng(seed);
  Dataset out = ds;
  for (auto& inst : out.instances) inst.frequency += lo + (hi - lo) * rng.uniform01();
  return out;
}

Dataset top_n(const Dataset& ds, std::size_t n, double jitter_lo, double jitter_hi,
              std::uint64_t seed) {
  if (n > ds.instances.size()) throw std::invalid_argument("top-n exceeds dataset size");
  const Dataset jittered = jitter_frequencies(ds, jitter_lo, jitter_hi, seed);
  std::vector<std::size_t> order(jittered.instances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return jittered.instances[a].frequency > jittered.instances[b].frequency;
  });
  order.resize(n);
  return subset(jittered, order);
}

void validate(const SamplePlan& plan) {
  auto check_sizes = [](const std::vector<std::size_t>& sizes) {
    if (sizes.empty()) throw std::invalid_argument("sample plan needs at least one size");
    for (auto s : sizes) {
      if (s == 0) throw std::invalid_argument("sample sizes must be positive");
    }
  };
  if (const auto* w = std::get_if<FrequencyWeightedPlan>(&plan)) {
    check_sizes(w->sizes);
  } else if (const auto* b = std::get_if<LogBinnedPlan>(&plan)) {
    if (b->bins == 0 || b->per_bin == 0) {
      throw std::invalid_argument("bins and per-bin must be positive");
    }
  } else {
    const auto& t = std::get<TopNPlan>(plan);
    check_sizes(t.sizes);
    if (t.jitter_lo > t.jitter_hi) throw std::invalid_argument("jitter lo exceeds hi");
  }
}

std::vector<Dataset> draw_stages(const Dataset& ds, const SamplePlan& plan, std::uint64_t seed,
                                 std::ostream* warnings) {
  validate(plan);
  if (const auto* w = std::get_if<FrequencyWeightedPlan>(&plan)) {
    return sample_frequency_weighted_stages(ds, w->sizes, seed);
  }
  if (const auto* b = std::get_if<LogBinnedPlan>(&plan)) {
    return sample_log_binned(ds, b->bins, b->per_bin, seed, warnings);
  }
  const auto& t = std::get<TopNPlan>(plan);
  std::vector<Dataset> stages;
  // One jitter draw per child; stages are nested top-n cuts of it.
  for (std::size_t size : t.sizes) stages.push_back(top_n(ds, size, t.jitter_lo, t.jitter_hi, seed));
  return stages;
}

}  // namespace atp
