#include "cspread/econometrics/adf_gls.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cspread/core/errors.hpp"
#include "cspread/econometrics/ols.hpp"

namespace cspread {

namespace {

struct GridPoint {
    double p;
    double stat;
};

// Null quantiles of the zero-lag DF-GLS t-ratio, Monte Carlo with 200k
// driftless random walks of length 2000 (tools/gen_dfgls_quantiles.py).
constexpr std::array<GridPoint, 23> kConstantGrid{{
    {0.001, -3.2835}, {0.005, -2.8087}, {0.010, -2.5741}, {0.025, -2.2277}, {0.050, -1.9506},
    {0.100, -1.6280}, {0.150, -1.4123}, {0.200, -1.2465}, {0.250, -1.1036}, {0.300, -0.9760},
    {0.400, -0.7443}, {0.500, -0.5156}, {0.600, -0.2599}, {0.700, 0.0318},  {0.750, 0.1959},
    {0.800, 0.3799},  {0.850, 0.5953},  {0.900, 0.8624},  {0.950, 1.2583},  {0.975, 1.5998},
    {0.990, 2.0012},  {0.995, 2.2553},  {0.999, 2.7872},
}};

constexpr std::array<GridPoint, 23> kTrendGrid{{
    {0.001, -4.0827}, {0.005, -3.6289}, {0.010, -3.4258}, {0.025, -3.1142}, {0.050, -2.8535},
    {0.100, -2.5689}, {0.150, -2.3783}, {0.200, -2.2310}, {0.250, -2.1069}, {0.300, -1.9989},
    {0.400, -1.8064}, {0.500, -1.6314}, {0.600, -1.4605}, {0.700, -1.2873}, {0.750, -1.1917},
    {0.800, -1.0865}, {0.850, -0.9634}, {0.900, -0.8080}, {0.950, -0.5760}, {0.975, -0.3737},
    {0.990, -0.1416}, {0.995, 0.0117},  {0.999, 0.3258},
}};

const std::array<GridPoint, 23>& grid_for(Deterministic d) {
    return d == Deterministic::constant ? kConstantGrid : kTrendGrid;
}

constexpr int kMinObs = 30;

}  // namespace

Deterministic parse_deterministic(std::string_view name) {
    if (name == "constant") return Deterministic::constant;
    if (name == "trend") return Deterministic::trend;
    throw std::invalid_argument("unknown deterministic case '" + std::string(name) + "'");
}

int schwert_max_lag(std::size_t n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double dfgls_p_value(double statistic, Deterministic deterministic) {
    const auto& g = grid_for(deterministic);
    if (statistic <= g.front().stat) return g.front().p;
    if (statistic >= g.back().stat) return g.back().p;
    const auto hi = std::upper_bound(g.begin(), g.end(), statistic,
                                     [](double s, const GridPoint& pt) { return s < pt.stat; });
    const auto lo = hi - 1;
    const double w = (statistic - lo->stat) / (hi->stat - lo->stat);
    return std::exp(std::log(lo->p) + w * (std::log(hi->p) - std::log(lo->p)));
}

double dfgls_critical_value(double p, Deterministic deterministic) {
    const auto& g = grid_for(deterministic);
    if (p <= g.front().p) return g.front().stat;
    if (p >= g.back().p) return g.back().stat;
    const auto hi = std::upper_bound(g.begin(), g.end(), p, [](double q, const GridPoint& pt) { return q < pt.p; });
    const auto lo = hi - 1;
    const double w = (std::log(p) - std::log(lo->p)) / (std::log(hi->p) - std::log(lo->p));
    return lo->stat + w * (hi->stat - lo->stat);
}

UnitRootResult adf_gls(std::span<const double> y, Deterministic deterministic, std::optional<int> max_lag,
                       LagRule lag_rule) {
    const auto n = static_cast<Eigen::Index>(y.size());
    if (n < kMinObs) throw std::invalid_argument("adf_gls: series too short (need at least 30 observations)");

    // GLS detrending.
    const double cbar = deterministic == Deterministic::constant ? -7.0 : -13.5;
    const double a = 1.0 + cbar / static_cast<double>(n);
    const Eigen::Index k_det = deterministic == Deterministic::constant ? 1 : 2;
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
    Eigen::MatrixXd z(n, k_det);
    z.col(0).setOnes();
    if (k_det == 2) z.col(1) = Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n));
    Eigen::VectorXd ya(n);
    Eigen::MatrixXd za(n, k_det);
    ya[0] = yv[0];
    za.row(0) = z.row(0);
    ya.tail(n - 1) = yv.tail(n - 1) - a * yv.head(n - 1);
    za.bottomRows(n - 1) = z.bottomRows(n - 1) - a * z.topRows(n - 1);
    const Eigen::VectorXd delta = ols_fit(za, ya).coefficients;
    const Eigen::VectorXd yd = yv - z * delta;

    int p_max = max_lag.value_or(schwert_max_lag(static_cast<std::size_t>(n)));
    p_max = std::clamp(p_max, 0, static_cast<int>(n) / 2 - 2);

    // Regression row for time t (1 <= t <= n-1): dy[t-1] on level[t-1], dy[t-2], ..., dy[t-1-p].
    const auto design = [n](const Eigen::VectorXd& level, int p, Eigen::Index t0) {
        const Eigen::VectorXd d = level.tail(n - 1) - level.head(n - 1);
        const Eigen::Index rows = n - t0;
        Eigen::MatrixXd X(rows, p + 1);
        X.col(0) = level.segment(t0 - 1, rows);
        for (int j = 1; j <= p; ++j) X.col(j) = d.segment(t0 - 1 - j, rows);
        return std::pair{X, Eigen::VectorXd(d.segment(t0 - 1, rows))};
    };

    int p_use = p_max;
    if (lag_rule == LagRule::bic && p_max > 0) {
        // Lags are chosen on the OLS-detrended series. The GLS fit pins the
        // level near y[0], and under stationary alternatives that offset makes
        // BIC pile on lags and wrecks power.
        const Eigen::VectorXd yo = yv - z * ols_fit(z, yv).coefficients;
        const auto [X, target] = design(yo, p_max, p_max + 1);
        const Eigen::MatrixXd gram = X.transpose() * X;
        const Eigen::VectorXd xty = X.transpose() * target;
        const double yty = target.squaredNorm();
        const auto rows = static_cast<double>(X.rows());
        double best = std::numeric_limits<double>::infinity();
        for (int p = 0; p <= p_max; ++p) {
            const Eigen::Index k = p + 1;
            const Eigen::VectorXd coef = gram.topLeftCorner(k, k).ldlt().solve(xty.head(k));
            const double rss = std::max(yty - coef.dot(xty.head(k)), std::numeric_limits<double>::min());
            const double bic = rows * std::log(rss / rows) + static_cast<double>(k) * std::log(rows);
            if (bic < best) {
                best = bic;
                p_use = p;
            }
        }
    }

    const auto [X, target] = design(yd, p_use, p_use + 1);
    const auto fit = ols_fit(X, target);
    const double se = std::sqrt(classical_ols_cov(X, fit.residuals)(0, 0));
    if (!(se > 0.0)) throw NumericalError("adf_gls: degenerate test regression (zero standard error)");

    UnitRootResult out;
    out.statistic = fit.coefficients[0] / se;
    out.p_value = dfgls_p_value(out.statistic, deterministic);
    out.lags_used = p_use;
    out.deterministic = deterministic;
    out.n_obs = static_cast<std::size_t>(X.rows());
    return out;
}

UnitRootResult adf_gls(const TradingDaySeries& s, Deterministic deterministic, std::optional<int> max_lag,
                       LagRule lag_rule) {
    return adf_gls(std::span<const double>(s.values().data(), s.size()), deterministic, max_lag, lag_rule);
}

}  // namespace cspread
