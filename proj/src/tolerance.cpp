#include "atp/tolerance.hpp"

#include <cmath>
#include <stdexcept>

namespace atp {

double threshold(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("tolerance threshold needs a scope of at least 2");
  }
  const auto size = static_cast<double>(n);
  return size / std::log(size);
}

TpVerdict is_productive(std::size_t n, std::size_t e) {
  if (e > n) {
    throw std::invalid_argument("exception count exceeds scope size");
  }
  TpVerdict verdict{n, e, 0.0, false};
  if (n < 2) {
    verdict.productive = (e == 0);
    return verdict;
  }
  verdict.threshold = threshold(n);
  verdict.productive = static_cast<double>(e) <= verdict.threshold;
  return verdict;
}

}  // namespace atp
