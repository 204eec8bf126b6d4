#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace atp::stats {

class UndefinedCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct CorrelationResult {
  double rho = 0.0;
  std::size_t n = 0;
  bool significant = false;  // two-sided, alpha = 0.05
};

struct TTestResult {
  double t = 0.0;
  std::size_t df = 0;
  bool significant = false;  // two-sided, alpha = 0.05
  bool degenerate = false;   // differences had zero variance
};

/// Two-sided 0.05 critical value of Student's t. Tabulated for df <= 200,
/// Cornish-Fisher expansion beyond. Throws for df == 0.
double t_critical_05(std::size_t df);

/// Ranks starting at 1; tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho as the Pearson correlation of average ranks. Significance
/// uses t = rho * sqrt((n - 2) / (1 - rho^2)) with n - 2 degrees of freedom.
///
/// Throws std::invalid_argument on length mismatch or n < 2, and
/// UndefinedCorrelation when either side has zero rank variance.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// Two-sided permutation p-value for Spearman's rho: the fraction of
/// `permutations` shuffles of y (plus the observed ordering) with
/// |rho| >= the observed |rho|.
double spearman_permutation_p(std::span<const double> x, std::span<const double> y,
                              std::size_t permutations, std::uint64_t seed);

/// Paired t-test on a - b. Zero-variance differences are flagged
/// degenerate: t = 0 and not significant when the mean is zero, otherwise
/// t = +/-inf and significant.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace atp::stats
