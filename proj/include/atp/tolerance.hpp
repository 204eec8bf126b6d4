#pragma once

#include <cstddef>

namespace atp {

/// Outcome of a Tolerance Principle test over a scope of `n` items of which
/// `e` are exceptions.
///
/// For n >= 2 the threshold is n / ln(n). For n in {0, 1} the logarithm is
/// zero, so the threshold is reported as 0 and the rule is productive only
/// when it has no exceptions.
struct TpVerdict {
  std::size_t n = 0;
  std::size_t e = 0;
  double threshold = 0.0;
  bool productive = false;
};

/// n / ln(n). Throws std::invalid_argument for n < 2.
double threshold(std::size_t n);

/// Throws std::invalid_argument when e > n. Equality with the threshold
/// counts as productive.
TpVerdict is_productive(std::size_t n, std::size_t e);

}  // namespace atp
