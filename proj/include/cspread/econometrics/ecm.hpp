#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cspread/core/series.hpp"

namespace cspread {

/// Exogenous controls Y_{j,t}: S&P 500 and WTI log-returns, VIX level, and
/// the GARCH conditional volatility of EUA spot returns.
struct ControlSet {
    TradingDaySeries spx_logret;
    TradingDaySeries vix_level;
    TradingDaySeries wti_logret;
    TradingDaySeries sigma;
};

/// Which regressors enter the error-correction regression. The constant is always included.
struct RegressorSet {
    bool lags = false;   // dC_{t-1..t-n_lags}
    bool dz = false;
    bool dr = false;
    bool psi = false;    // psi_{t-1}
    bool wti = false;
    bool spx = false;
    bool vix = false;
    bool sigma = false;

    [[nodiscard]] bool uses_controls() const { return wti || spx || vix || sigma; }
};

/// Columns of the daily error-correction table.
enum class EcmVariant { I, II, III, IV, V, VI };

[[nodiscard]] EcmVariant parse_ecm_variant(std::string_view name);
[[nodiscard]] std::string to_string(EcmVariant v);
[[nodiscard]] RegressorSet regressors_for(EcmVariant v);

struct EcmInputs {
    TradingDaySeries dC;
    TradingDaySeries dZ;
    TradingDaySeries dr;
    TradingDaySeries psi_lagged;  // psi_{t-1} dated at t, same dates as dC
    std::optional<ControlSet> controls;
};

struct EcmFit {
    std::vector<std::string> names;  // table row order, "const" last
    Eigen::VectorXd coefficients;
    Eigen::VectorXd hac_std_errors;
    Eigen::VectorXd p_values;        // two-sided, Student-t with n - k dof
    TradingDaySeries residuals;
    long n_obs = 0;
    int n_lags = 0;
    int bandwidth = 0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double bic = 0.0;

    /// Index of a named coefficient, or -1.
    [[nodiscard]] Eigen::Index index_of(std::string_view name) const;
};

/// OLS of
///
///   dC_t = a0 + sum_i b_i dC_{t-i} + a1 dZ_t + a2 dr_t + a3 psi_{t-1} + sum_j d_j Y_{j,t} + e_t
///
/// restricted to `regressors`, with Newey-West standard errors (automatic
/// bandwidth unless given) and Gaussian AIC/BIC counting every coefficient.
/// The first max(n_lags, 1) observations are always dropped so that all
/// variants share one sample. When controls are used, rows are restricted to
/// dates present in every control series.
[[nodiscard]] EcmFit fit_ecm(const EcmInputs& inputs, int n_lags, const RegressorSet& regressors,
                             std::optional<int> bandwidth = std::nullopt);
[[nodiscard]] EcmFit fit_ecm(const EcmInputs& inputs, int n_lags, EcmVariant variant,
                             std::optional<int> bandwidth = std::nullopt);

/// psi_t = C_t - gamma_1 Z_t - gamma_2 r_t on the common dates of the three levels.
[[nodiscard]] TradingDaySeries cointegration_residual(const TradingDaySeries& c, const TradingDaySeries& z,
                                                      const TradingDaySeries& r, double gamma1, double gamma2);

/// psi_{t-1} dated at t: drops the last value and the first date.
[[nodiscard]] TradingDaySeries lag_one(const TradingDaySeries& s);

}  // namespace cspread
