#include <doctest.h>

#include "atp/morph.hpp"
#include "helpers.hpp"

using namespace atp;
using testing::inst;
using testing::seg;
using testing::suffix;

TEST_CASE("changes come from the longest common prefix") {
  CHECK(derive_change(seg("walk"), seg("walked")) == suffix("ed"));
  CHECK(derive_change(seg("sing"), seg("sang")) == Change{3, U"ang"});
  CHECK(derive_change(seg("go"), seg("went")) == Change{2, U"went"});
  CHECK(derive_change(seg("sheep"), seg("sheep")) == suffix(""));
  CHECK(derive_change(seg("blume"), seg("blumen")) == suffix("n"));
}

TEST_CASE("apply_change") {
  CHECK(apply_change(seg("sing"), Change{3, U"ang"}) == seg("sang"));
  CHECK(apply_change(seg("ring"), Change{3, U"ang"}) == seg("rang"));
  CHECK(apply_change(seg("kæt"), suffix("s")) == seg("kæts"));
  CHECK_THROWS_AS(apply_change(seg("go"), Change{3, U"x"}), InapplicableChange);
}

TEST_CASE("round trip on awkward pairs") {
  for (auto [l, i] : {std::pair{"a", "a"}, {"ab", "a"}, {"a", "ab"}, {"abc", "xyz"}, {"æŋ", "ŋæ"}}) {
    CHECK(apply_change(seg(l), derive_change(seg(l), seg(i))) == seg(i));
  }
}

TEST_CASE("canonical change order") {
  CHECK(canonical_less(suffix("t"), suffix("ɪd")));
  CHECK(canonical_less(suffix("d"), suffix("t")));
  CHECK(canonical_less(suffix("ab"), Change{1, U"ab"}));
  CHECK_FALSE(canonical_less(suffix("t"), suffix("t")));
  CHECK(describe(suffix("t")) == "-t");
  CHECK(describe(suffix("")) == "-∅");
  CHECK(describe(Change{3, U"æŋ"}) == "-3+æŋ");
}

TEST_CASE("features") {
  const auto voiceless = Feature::ending_set({seg("p"), seg("k"), seg("p")});
  CHECK(voiceless.endings() == std::vector<Segments>{seg("k"), seg("p")});
  CHECK(voiceless.label() == "[k|p]");
  CHECK(voiceless.matches(seg("wɔk"), {}));
  CHECK_FALSE(voiceless.matches(seg("ræn"), {}));
  CHECK_THROWS_AS(Feature::ending_set({}), std::invalid_argument);
  CHECK_THROWS_AS(Feature::ending_set({seg("")}), std::invalid_argument);

  const auto past = Feature::categorical("past");
  CHECK(past.label() == "past");
  CHECK(past.matches(seg("x"), {"past"}));
  CHECK_FALSE(past.matches(seg("x"), {"plural"}));
  CHECK(past < voiceless);
  CHECK(Feature::categorical("a") < Feature::categorical("b"));
  CHECK(Feature::ending_set({seg("a")}) < Feature::ending_set({seg("b")}));
}

TEST_CASE("doublets keep the more frequent row") {
  std::vector<Instance> xs = {inst("dive", {"past"}, "dived", 3), inst("dive", {"past"}, "dove", 5),
                              inst("dive", {}, "dives", 1), inst("fit", {"past"}, "fit", 2),
                              inst("fit", {"past"}, "fitted", 2)};
  const auto dropped = resolve_doublets(xs);
  REQUIRE(xs.size() == 3);
  CHECK(xs[0].inflection == seg("dove"));
  CHECK(xs[2].inflection == seg("fit"));
  CHECK(dropped.size() == 2);
}
