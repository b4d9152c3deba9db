#include "cspread/core/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cspread/core/errors.hpp"

namespace cspread {

Eigen::VectorXd autocorrelation(std::span<const double> x, int max_lag) {
    const auto n = static_cast<Eigen::Index>(x.size());
    if (max_lag < 0 || max_lag >= n) throw std::invalid_argument("autocorrelation: invalid max_lag");
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), n);
    const Eigen::VectorXd c = v.array() - v.mean();
    const double c0 = c.squaredNorm();
    Eigen::VectorXd acf(max_lag + 1);
    for (int k = 0; k <= max_lag; ++k) {
        acf[k] = c0 > 0.0 ? c.head(n - k).dot(c.tail(n - k)) / c0 : (k == 0 ? 1.0 : 0.0);
    }
    return acf;
}

PacfResult pacf(std::span<const double> x, int max_lag) {
    if (max_lag < 1) throw std::invalid_argument("pacf: max_lag must be positive");
    if (x.size() <= static_cast<std::size_t>(max_lag) + 1) throw std::invalid_argument("pacf: series too short");
    const Eigen::VectorXd rho = autocorrelation(x, max_lag);

    PacfResult out;
    out.coefficients.resize(max_lag);
    out.confidence_bound = 1.96 / std::sqrt(static_cast<double>(x.size()));

    // phi holds the AR(k) coefficients of the current order.
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(max_lag + 1);
    Eigen::VectorXd prev = phi;
    double v = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = rho[k];
        for (int j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        const double kappa = v > 0.0 ? num / v : 0.0;
        phi[k] = kappa;
        for (int j = 1; j < k; ++j) phi[j] = prev[j] - kappa * prev[k - j];
        v *= 1.0 - kappa * kappa;
        prev = phi;
        out.lags.push_back(k);
        out.coefficients[k - 1] = kappa;
    }
    return out;
}

PacfResult pacf(const TradingDaySeries& s, int max_lag) {
    return pacf(std::span<const double>(s.values().data(), s.size()), max_lag);
}

double student_t_two_sided_p(double t, double dof) {
    if (!std::isfinite(t)) return 0.0;
    const boost::math::students_t dist(dof);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

PearsonResult pearson_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson_test: lengths differ");
    if (x.size() < 3) throw std::invalid_argument("pearson_test: need at least 3 observations");
    const auto n = static_cast<Eigen::Index>(x.size());
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
    const Eigen::VectorXd xc = xv.array() - xv.mean();
    const Eigen::VectorXd yc = yv.array() - yv.mean();
    const double sxx = xc.squaredNorm();
    const double syy = yc.squaredNorm();
    if (sxx <= 0.0 || syy <= 0.0) throw DataError("pearson_test: degenerate input (zero variance)");
    const double r = std::clamp(xc.dot(yc) / std::sqrt(sxx * syy), -1.0, 1.0);
    const double dof = static_cast<double>(n - 2);
    if (std::abs(r) >= 1.0) return {r, 0.0};
    const double t = r * std::sqrt(dof / (1.0 - r * r));
    return {r, student_t_two_sided_p(t, dof)};
}

const char* significance_stars(double p) {
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.10) return "*";
    return "";
}

}  // namespace cspread
