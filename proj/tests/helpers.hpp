#pragma once

#include <string>
#include <stdexcept>
#include <vector>

#include "atp/morph.hpp"

namespace testing {

inline atp::Instance inst(const std::string& lemma, atp::FeatureSet tags, const std::string& form,
                          double freq = 1.0) {
  return atp::Instance{atp::from_utf8(lemma), std::move(tags), atp::from_utf8(form), freq};
}

inline atp::Segments seg(const std::string& s) { return atp::from_utf8(s); }

inline atp::Change suffix(const std::string& s) { return atp::Change{0, atp::from_utf8(s)}; }

}  // namespace testing
