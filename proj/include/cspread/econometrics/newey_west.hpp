#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace cspread {

/// Newey-West automatic bandwidth floor(4 (n/100)^(2/9)).
[[nodiscard]] inline int newey_west_bandwidth(Eigen::Index n_obs) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n_obs) / 100.0, 2.0 / 9.0)));
}

/// HAC covariance of OLS coefficients with Bartlett weights 1 - l/(L+1):
///
///   (X'X)^{-1} [ sum_t e_t^2 x_t x_t' + sum_{l=1..L} w_l sum_t e_t e_{t-l} (x_t x_{t-l}' + x_{t-l} x_t') ] (X'X)^{-1}
///
/// Bandwidth 0 gives White's HC0 sandwich. No small-sample scaling.
template <typename DerivedX, typename DerivedE>
[[nodiscard]] Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic> newey_west_cov(
    const Eigen::MatrixBase<DerivedX>& X, const Eigen::MatrixBase<DerivedE>& residuals, int bandwidth) {
    using Scalar = typename DerivedX::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (X.rows() != residuals.rows()) throw std::invalid_argument("newey_west_cov: dimension mismatch");
    if (bandwidth < 0) throw std::invalid_argument("newey_west_cov: negative bandwidth");

    // Scores x_t e_t, one row per observation.
    const Matrix scores = X.array().colwise() * residuals.array();
    Matrix meat = scores.transpose() * scores;
    const Eigen::Index n = X.rows();
    for (int l = 1; l <= bandwidth && l < n; ++l) {
        const Scalar w = Scalar(1) - static_cast<Scalar>(l) / static_cast<Scalar>(bandwidth + 1);
        const Matrix gamma = scores.bottomRows(n - l).transpose() * scores.topRows(n - l);
        meat += w * (gamma + gamma.transpose());
    }
    const Matrix xtx = X.transpose() * X;
    const Matrix bread = xtx.ldlt().solve(Matrix::Identity(X.cols(), X.cols()));
    Matrix cov = bread * meat * bread;
    return Scalar(0.5) * (cov + cov.transpose());
}

}  // namespace cspread
