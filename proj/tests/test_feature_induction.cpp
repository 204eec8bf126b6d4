#include <doctest.h>

#include <algorithm>

#include "atp/feature_induction.hpp"
#include "helpers.hpp"

using namespace atp;
using testing::inst;
using testing::seg;
using testing::suffix;

namespace {

std::vector<Instance> voicing_fixture() {
  std::vector<Instance> xs;
  const std::vector<std::string> onsets = {"w", "b", "st", "fl", "kr"};
  for (const std::string final : {"k", "p", "s", "ʃ", "f", "ʧ"}) {
    for (const auto& on : onsets) xs.push_back(inst(on + "ɔ" + final, {"past"}, on + "ɔ" + final + "t"));
  }
  for (const std::string final : {"b", "g", "n", "l", "m", "z"}) {
    for (const auto& on : onsets) xs.push_back(inst(on + "æ" + final, {"past"}, on + "æ" + final + "d"));
  }
  return xs;
}

const InducedFeature* for_change(const std::vector<InducedFeature>& fs, const Change& c) {
  const auto it = std::find_if(fs.begin(), fs.end(), [&](const auto& f) { return f.target_change == c; });
  return it == fs.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("ending_of") {
  CHECK(ending_of(seg("walk"), 2) == seg("lk"));
  CHECK(ending_of(seg("go"), 3) == seg("go"));
  CHECK_THROWS_AS(ending_of(seg("go"), 0), std::invalid_argument);
}

TEST_CASE("voiceless finals become one ending set for -t") {
  const auto xs = voicing_fixture();
  const auto refs = refs_of(xs);
  const auto induced = induce_ending_features(refs);
  const auto* t = for_change(induced, suffix("t"));
  REQUIRE(t != nullptr);
  CHECK(t->feature == Feature::ending_set({seg("k"), seg("p"), seg("s"), seg("ʃ"), seg("f"), seg("ʧ")}));
  for (const auto& e : t->endings) {
    CHECK(e.ending.size() == 1);
    CHECK(e.scope_count == 5);
    CHECK(e.violations == 0);
  }
  const auto* d = for_change(induced, suffix("d"));
  REQUIRE(d != nullptr);
  CHECK(d->feature.endings().size() == 6);
}

TEST_CASE("a mixed final segment is refined to longer endings") {
  // Final n takes -d after æ and -t after ɔ (a made-up pattern).
  std::vector<Instance> xs;
  for (const std::string on : {"b", "d", "k", "l", "m", "r"}) {
    xs.push_back(inst(on + "æn", {}, on + "ænd"));
    xs.push_back(inst(on + "ɔn", {}, on + "ɔnt"));
  }
  const auto induced = induce_ending_features(refs_of(xs));
  const auto* d = for_change(induced, suffix("d"));
  REQUIRE(d != nullptr);
  CHECK(d->feature == Feature::ending_set({seg("æn")}));
  const auto* t = for_change(induced, suffix("t"));
  REQUIRE(t != nullptr);
  CHECK(t->feature == Feature::ending_set({seg("ɔn")}));
}

TEST_CASE("both directions of the TP must pass") {
  // Every -t lemma ends in ʌɪk, but so do twice as many -d lemmas, so no
  // ending up to length 3 predicts -t.
  std::vector<Instance> xs;
  for (const std::string on : {"b", "d", "f", "g"}) xs.push_back(inst(on + "ʌɪk", {}, on + "ʌɪkt"));
  for (const std::string on : {"h", "j", "l", "m", "n", "p", "r", "s"}) {
    xs.push_back(inst(on + "ʌɪk", {}, on + "ʌɪkd"));
  }
  const auto induced = induce_ending_features(refs_of(xs));
  CHECK(for_change(induced, suffix("t")) == nullptr);
  const auto* d = for_change(induced, suffix("d"));
  REQUIRE(d != nullptr);
  CHECK(d->feature == Feature::ending_set({seg("k")}));  // 4 exceptions <= 12 / ln 12
}

TEST_CASE("non-suffixal changes do not seed features by default") {
  std::vector<Instance> xs;
  for (const std::string on : {"s", "r", "spr", "str"}) xs.push_back(inst(on + "ɪŋ", {}, on + "æŋ"));
  CHECK(induce_ending_features(refs_of(xs)).empty());
  InductionOptions opts;
  opts.suffixal_only = false;
  const auto induced = induce_ending_features(refs_of(xs), opts);
  REQUIRE(induced.size() == 1);
  CHECK(induced[0].target_change == Change{2, U"æŋ"});
}

TEST_CASE("edge cases") {
  CHECK(induce_ending_features({}).empty());
  std::vector<Instance> xs = {inst("a", {}, "ab")};
  InductionOptions none;
  none.max_ending_length = 0;
  CHECK(induce_ending_features(refs_of(xs), none).empty());
  // Lemmas shorter than k contribute only their whole form.
  const auto induced = induce_ending_features(refs_of(xs));
  REQUIRE(induced.size() == 1);
  CHECK(induced[0].feature == Feature::ending_set({seg("a")}));
}

TEST_CASE("identical ending sets are reported once") {
  // -s and -z cannot share endings here, so check dedup via repetition.
  const auto xs = voicing_fixture();
  const auto refs = refs_of(xs);
  const auto a = induce_ending_features(refs);
  const auto b = induce_ending_features(refs);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].feature == b[i].feature);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) CHECK_FALSE(a[i].feature == a[j].feature);
  }
}
