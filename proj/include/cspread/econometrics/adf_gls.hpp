#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "cspread/core/series.hpp"

namespace cspread {

enum class Deterministic { constant, trend };
enum class LagRule { fixed, bic };

struct UnitRootResult {
    double statistic = 0.0;   // t-ratio on the lagged level
    double p_value = 1.0;     // interpolated, clamped to [0.001, 0.999]
    int lags_used = 0;
    Deterministic deterministic = Deterministic::constant;
    std::size_t n_obs = 0;    // rows in the final test regression
};

[[nodiscard]] Deterministic parse_deterministic(std::string_view name);

/// Schwert bound floor(12 (n/100)^(1/4)).
[[nodiscard]] int schwert_max_lag(std::size_t n);

/// Elliott-Rothenberg-Stock DF-GLS test of a unit root.
///
/// The series is GLS-demeaned (cbar = -7) or GLS-detrended (cbar = -13.5);
/// the detrended series then enters an augmented Dickey-Fuller regression
/// without deterministic terms. With LagRule::bic the lag order minimises BIC
/// over 0..max_lag in the same regression on the OLS-detrended series (common
/// sample); the test regression then uses the chosen order on all usable rows. `max_lag` defaults to the Schwert bound. Requires n >= 30.
[[nodiscard]] UnitRootResult adf_gls(std::span<const double> y, Deterministic deterministic,
                                     std::optional<int> max_lag = std::nullopt, LagRule lag_rule = LagRule::bic);
[[nodiscard]] UnitRootResult adf_gls(const TradingDaySeries& s, Deterministic deterministic,
                                     std::optional<int> max_lag = std::nullopt, LagRule lag_rule = LagRule::bic);

/// Left-tail p-value of a DF-GLS statistic by log-linear interpolation in the
/// stored quantile grid, clamped to [0.001, 0.999].
[[nodiscard]] double dfgls_p_value(double statistic, Deterministic deterministic);

/// Quantile of the null distribution at probability `p` (interpolated in the grid).
[[nodiscard]] double dfgls_critical_value(double p, Deterministic deterministic);

}  // namespace cspread
