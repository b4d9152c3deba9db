#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "cspread/core/series.hpp"

namespace cspread {

/// Sample autocorrelations at lags 0..max_lag (demeaned, 1/n normalisation).
[[nodiscard]] Eigen::VectorXd autocorrelation(std::span<const double> x, int max_lag);

struct PacfResult {
    std::vector<int> lags;             // 1..L
    Eigen::VectorXd coefficients;      // coefficients[i] is the partial autocorrelation at lags[i]
    double confidence_bound = 0.0;     // symmetric 5% band, 1.96 / sqrt(n)
};

/// Partial autocorrelations by Durbin-Levinson recursion on the sample
/// autocorrelations. Requires n > max_lag + 1.
[[nodiscard]] PacfResult pacf(std::span<const double> x, int max_lag);
[[nodiscard]] PacfResult pacf(const TradingDaySeries& s, int max_lag);

struct PearsonResult {
    double r;
    double p_value;  // two-sided, Student-t with n - 2 degrees of freedom
};

/// Pearson correlation with a test of zero correlation. Equal lengths >= 3;
/// throws DataError("degenerate input") when either input has zero variance.
[[nodiscard]] PearsonResult pearson_test(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of a t statistic with `dof` degrees of freedom.
[[nodiscard]] double student_t_two_sided_p(double t, double dof);

/// "", "*", "**", "***" at the 10/5/1% two-sided levels.
[[nodiscard]] const char* significance_stars(double p_value);

}  // namespace cspread
