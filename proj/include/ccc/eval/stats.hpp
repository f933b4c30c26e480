#pragma once

#include <vector>

namespace ccc::eval {

/// Throws DataError on length mismatch, fewer than 2 points or zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);
/// Tie-adjusted tau-b. Same errors; all-tied input is zero variance.
double kendall_tau(const std::vector<double>& xs, const std::vector<double>& ys);
/// counts[i][j]: raters who put item i in category j. Every row must sum to
/// the same rater count n >= 2.
double fleiss_kappa(const std::vector<std::vector<int>>& counts);

}  // namespace ccc::eval
