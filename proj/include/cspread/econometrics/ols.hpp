#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <string>

#include "cspread/core/errors.hpp"

namespace cspread {

template <typename Scalar>
struct OlsFit {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Vector coefficients;
    Vector residuals;
    Scalar rss{};
};

namespace detail {

template <typename Derived>
[[noreturn]] void report_collinear(const Eigen::MatrixBase<Derived>& X, std::span<const std::string> names) {
    using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    for (Eigen::Index j = 1; j <= X.cols(); ++j) {
        Eigen::ColPivHouseholderQR<Matrix> qr(X.leftCols(j));
        if (qr.rank() < j) {
            const auto col = static_cast<std::size_t>(j - 1);
            const std::string label = col < names.size() ? names[col] : "column " + std::to_string(col);
            throw NumericalError("ols_fit: design matrix is rank deficient; '" + label +
                                 "' is collinear with the preceding columns");
        }
    }
    throw NumericalError("ols_fit: design matrix is rank deficient");
}

}  // namespace detail

/// Least squares by column-pivoted Householder QR.
///
/// Requires rows >= columns and full column rank; on rank deficiency the
/// error names the first column that is a combination of the ones before it
/// (using `names` when given).
template <typename DerivedX, typename DerivedY>
[[nodiscard]] OlsFit<typename DerivedX::Scalar> ols_fit(const Eigen::MatrixBase<DerivedX>& X,
                                                        const Eigen::MatrixBase<DerivedY>& y,
                                                        std::span<const std::string> names = {}) {
    using Scalar = typename DerivedX::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (X.rows() != y.rows()) throw std::invalid_argument("ols_fit: X and y row counts differ");
    if (X.rows() < X.cols()) throw std::invalid_argument("ols_fit: fewer rows than columns");

    Eigen::ColPivHouseholderQR<Matrix> qr(X);
    if (qr.rank() < X.cols()) detail::report_collinear(X, names);

    OlsFit<Scalar> fit;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - X * fit.coefficients;
    fit.rss = fit.residuals.squaredNorm();
    return fit;
}

/// Classical OLS covariance s^2 (X'X)^{-1} with s^2 = rss / (n - k).
template <typename DerivedX, typename DerivedE>
[[nodiscard]] Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic> classical_ols_cov(
    const Eigen::MatrixBase<DerivedX>& X, const Eigen::MatrixBase<DerivedE>& residuals) {
    using Scalar = typename DerivedX::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Scalar s2 = residuals.squaredNorm() / static_cast<Scalar>(X.rows() - X.cols());
    const Matrix xtx = X.transpose() * X;
    return s2 * xtx.ldlt().solve(Matrix::Identity(X.cols(), X.cols()));
}

}  // namespace cspread
