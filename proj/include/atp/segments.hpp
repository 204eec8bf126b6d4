#pragma once

#include <string>
#include <string_view>

namespace atp {

// One segment is one Unicode code point: an orthographic letter or a
// single-symbol phone.
using Segment = char32_t;
using Segments = std::u32string;

// Throws std::invalid_argument on malformed UTF-8.
Segments from_utf8(std::string_view text);
std::string to_utf8(std::u32string_view segments);

inline bool ends_with(std::u32string_view word, std::u32string_view ending) {
  return ending.size() <= word.size() &&
         word.substr(word.size() - ending.size()) == ending;
}

}  // namespace atp
