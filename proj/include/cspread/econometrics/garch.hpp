#pragma once

#include <Eigen/Dense>
#include <limits>

#include "cspread/core/series.hpp"

namespace cspread {

struct GarchFit {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    Eigen::Vector3d std_errors = Eigen::Vector3d::Constant(std::numeric_limits<double>::quiet_NaN());
    double log_likelihood = 0.0;
    double initial_log_likelihood = 0.0;
    int iterations = 0;
    TradingDaySeries conditional_vol;  // sigma_t, same dates as the returns
};

/// Gaussian log-likelihood of demeaned returns `e` under GARCH(1,1), variance
/// recursion started at the sample variance. Fills `variance` when non-null.
[[nodiscard]] double garch11_log_likelihood(const Eigen::VectorXd& e, double omega, double alpha, double beta,
                                            Eigen::VectorXd* variance = nullptr);

/// GARCH(1,1) quasi-MLE by Nelder-Mead over transformed parameters
/// (omega = exp(a), alpha + beta = 0.9999 logistic(b), alpha = (alpha + beta) logistic(c)).
/// Standard errors come from the inverse numerical Hessian in (omega, alpha,
/// beta) and are NaN where it is not positive definite. Requires n >= 250.
[[nodiscard]] GarchFit garch11_fit(const TradingDaySeries& returns);

}  // namespace cspread
