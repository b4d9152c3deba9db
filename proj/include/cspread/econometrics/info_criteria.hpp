#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cspread {

struct InfoCriteria {
    double aic;
    double bic;
};

/// AIC = -2 ll + 2k, BIC = -2 ll + k ln(n).
[[nodiscard]] inline InfoCriteria info_criteria(double log_likelihood, int k_params, long n_obs) {
    if (n_obs <= k_params) throw std::invalid_argument("info_criteria: need n_obs > k_params");
    const double base = -2.0 * log_likelihood;
    return {base + 2.0 * k_params, base + k_params * std::log(static_cast<double>(n_obs))};
}

/// Concentrated Gaussian log-likelihood of a regression with residual sum of squares `rss`.
[[nodiscard]] inline double gaussian_log_likelihood(double rss, long n_obs) {
    const double n = static_cast<double>(n_obs);
    return -0.5 * n * (std::log(2.0 * std::numbers::pi * rss / n) + 1.0);
}

}  // namespace cspread
