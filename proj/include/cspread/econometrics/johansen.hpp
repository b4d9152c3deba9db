#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace cspread {

enum class ConfidenceLevel { p90 = 0, p95 = 1, p99 = 2 };

struct JohansenResult {
    Eigen::VectorXd trace_stats;    // null q <= 0 .. q <= g-1
    Eigen::VectorXd eigen_stats;
    Eigen::MatrixXd trace_critical;  // g x 3, columns 90/95/99%
    Eigen::MatrixXd eigen_critical;
    Eigen::VectorXd eigenvalues;    // descending
    Eigen::MatrixXd vectors;        // column j pairs with eigenvalues[j], first component 1
    int selected_rank = 0;
    int lag_order = 1;              // VAR order k; the VECM has k-1 lagged differences
    long n_obs = 0;                 // effective sample after lag trimming

    /// Cointegration vector for the largest eigenvalue, (1, -gamma_1, -gamma_2, ...).
    [[nodiscard]] Eigen::VectorXd leading_vector() const { return vectors.col(0); }
};

/// Critical values of the no-deterministic-term trace and maximum-eigenvalue
/// tests for `dim` = g - q in 1..6, at 90/95/99%.
[[nodiscard]] std::array<double, 3> johansen_trace_critical(int dim);
[[nodiscard]] std::array<double, 3> johansen_eigen_critical(int dim);

/// Johansen reduced-rank test on an n x g matrix of levels, no deterministic
/// terms, VAR order k (k - 1 lagged differences).
///
/// The rank is the smallest q whose trace null is accepted at `level`; when
/// every null is rejected the rank is reported as g.
[[nodiscard]] JohansenResult johansen(const Eigen::MatrixXd& levels, int k,
                                      ConfidenceLevel level = ConfidenceLevel::p95);

/// VAR order in 1..max_lag minimising BIC of a levels VAR without
/// deterministic terms, fitted on a common sample.
[[nodiscard]] int select_var_lag_bic(const Eigen::MatrixXd& levels, int max_lag = 10);

}  // namespace cspread
