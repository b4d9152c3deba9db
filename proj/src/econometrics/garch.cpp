#include "cspread/econometrics/garch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cspread/core/errors.hpp"

namespace cspread {

namespace {

constexpr double kMaxPersistence = 0.9999;
constexpr double kRelTol = 1e-10;
constexpr int kMaxIterations = 20000;
constexpr int kMaxRestarts = 8;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

Eigen::Vector3d to_natural(const Eigen::Vector3d& u) {
    const double p = kMaxPersistence * logistic(u[1]);
    const double alpha = p * logistic(u[2]);
    return {std::exp(u[0]), alpha, p - alpha};
}

// Nelder-Mead on f; returns the best vertex. Stops when the spread of the
// simplex values is below kRelTol relative to the best value.
template <typename F>
Eigen::Vector3d nelder_mead(F&& f, Eigen::Vector3d x0, double step, int& iterations) {
    constexpr int dim = 3;
    std::array<Eigen::Vector3d, dim + 1> x;
    std::array<double, dim + 1> fx{};
    x[0] = x0;
    for (int i = 0; i < dim; ++i) {
        x[i + 1] = x0;
        x[i + 1][i] += step;
    }
    for (int i = 0; i <= dim; ++i) fx[i] = f(x[i]);

    for (int it = 0; it < kMaxIterations; ++it, ++iterations) {
        std::array<int, dim + 1> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const int best = order[0], worst = order[dim], second = order[dim - 1];
        if (std::abs(fx[worst] - fx[best]) <= kRelTol * std::max(std::abs(fx[best]), 1.0)) break;

        Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
        for (int i = 0; i < dim; ++i) centroid += x[order[i]];
        centroid /= dim;

        const Eigen::Vector3d xr = centroid + (centroid - x[worst]);
        const double fr = f(xr);
        if (fr < fx[best]) {
            const Eigen::Vector3d xe = centroid + 2.0 * (centroid - x[worst]);
            const double fe = f(xe);
            if (fe < fr) {
                x[worst] = xe;
                fx[worst] = fe;
            } else {
                x[worst] = xr;
                fx[worst] = fr;
            }
        } else if (fr < fx[second]) {
            x[worst] = xr;
            fx[worst] = fr;
        } else {
            const bool outside = fr < fx[worst];
            const Eigen::Vector3d xc =
                outside ? Eigen::Vector3d(centroid + 0.5 * (xr - centroid)) : Eigen::Vector3d(centroid + 0.5 * (x[worst] - centroid));
            const double fc = f(xc);
            if (fc < (outside ? fr : fx[worst])) {
                x[worst] = xc;
                fx[worst] = fc;
            } else {
                for (int i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    x[i] = x[best] + 0.5 * (x[i] - x[best]);
                    fx[i] = f(x[i]);
                }
            }
        }
    }
    const auto best = std::min_element(fx.begin(), fx.end()) - fx.begin();
    return x[static_cast<std::size_t>(best)];
}

}  // namespace

double garch11_log_likelihood(const Eigen::VectorXd& e, double omega, double alpha, double beta,
                              Eigen::VectorXd* variance) {
    const Eigen::Index n = e.size();
    double h = e.squaredNorm() / static_cast<double>(n);
    double ll = 0.0;
    if (variance) variance->resize(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        if (t > 0) h = omega + alpha * e[t - 1] * e[t - 1] + beta * h;
        if (!(h > 0.0)) return -std::numeric_limits<double>::infinity();
        if (variance) (*variance)[t] = h;
        ll -= 0.5 * (std::log(2.0 * std::numbers::pi) + std::log(h) + e[t] * e[t] / h);
    }
    return ll;
}

GarchFit garch11_fit(const TradingDaySeries& returns) {
    if (returns.size() < 250) throw std::invalid_argument("garch11_fit: need at least 250 returns");
    const Eigen::VectorXd e = returns.values().array() - returns.values().mean();
    const double var = e.squaredNorm() / static_cast<double>(e.size());
    if (!(var > 0.0) || returns.values().minCoeff() == returns.values().maxCoeff())
        throw DataError("garch11_fit: returns have zero variance");

    const auto objective = [&](const Eigen::Vector3d& u) {
        const Eigen::Vector3d th = to_natural(u);
        const double ll = garch11_log_likelihood(e, th[0], th[1], th[2]);
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
    };

    const double p0 = 0.95, a0 = 0.05;
    Eigen::Vector3d u(std::log(var * (1.0 - p0)), logit(p0 / kMaxPersistence), logit(a0 / p0));
    GarchFit fit;
    fit.initial_log_likelihood = -objective(u);
    double f_best = -fit.initial_log_likelihood;
    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        u = nelder_mead(objective, u, restart == 0 ? 0.5 : 0.1, fit.iterations);
        const double f = objective(u);
        const double gain = f_best - f;
        f_best = f;
        if (restart > 0 && gain <= kRelTol * std::abs(f)) break;
    }

    const Eigen::Vector3d th = to_natural(u);
    fit.omega = th[0];
    fit.alpha = th[1];
    fit.beta = th[2];
    Eigen::VectorXd h;
    fit.log_likelihood = garch11_log_likelihood(e, fit.omega, fit.alpha, fit.beta, &h);
    if (!(fit.log_likelihood > fit.initial_log_likelihood)) {
        std::ostringstream msg;
        msg << "garch11_fit: optimizer did not improve on the starting point (ll0 = " << fit.initial_log_likelihood
            << ", ll = " << fit.log_likelihood << ", iterations = " << fit.iterations << ")";
        throw NumericalError(msg.str());
    }
    fit.conditional_vol = TradingDaySeries(returns.dates(), Eigen::VectorXd(h.cwiseSqrt()), "sigma");

    // Observed information from a central-difference Hessian in (omega, alpha, beta).
    const auto ll = [&](const Eigen::Vector3d& p) { return garch11_log_likelihood(e, p[0], p[1], p[2]); };
    Eigen::Vector3d step;
    for (int i = 0; i < 3; ++i) step[i] = 1e-4 * std::max(std::abs(th[i]), i == 0 ? 1e-3 * var : 1e-4);
    Eigen::Matrix3d hess;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const Eigen::Vector3d di = Eigen::Vector3d::Unit(i) * step[i];
            const Eigen::Vector3d dj = Eigen::Vector3d::Unit(j) * step[j];
            const double v = (ll(th + di + dj) - ll(th + di - dj) - ll(th - di + dj) + ll(th - di - dj)) /
                             (4.0 * step[i] * step[j]);
            hess(i, j) = hess(j, i) = v;
        }
    }
    const Eigen::LDLT<Eigen::Matrix3d> info(-hess);
    if (info.info() == Eigen::Success && info.isPositive() && (info.vectorD().array() > 0.0).all()) {
        const Eigen::Matrix3d cov = info.solve(Eigen::Matrix3d::Identity());
        fit.std_errors = cov.diagonal().cwiseSqrt();
    }
    return fit;
}

}  // namespace cspread
