#include "cspread/econometrics/ecm.hpp"

#include <stdexcept>

#include "cspread/core/errors.hpp"
#include "cspread/core/stats.hpp"
#include "cspread/econometrics/info_criteria.hpp"
#include "cspread/econometrics/newey_west.hpp"
#include "cspread/econometrics/ols.hpp"

namespace cspread {

namespace {

void require_same_dates(const TradingDaySeries& reference, const TradingDaySeries& s, const char* what) {
    if (s.dates() != reference.dates())
        throw DataError(std::string("fit_ecm: misaligned inputs: ") + what + " dates differ from dC");
}

}  // namespace

EcmVariant parse_ecm_variant(std::string_view name) {
    if (name == "I") return EcmVariant::I;
    if (name == "II") return EcmVariant::II;
    if (name == "III") return EcmVariant::III;
    if (name == "IV") return EcmVariant::IV;
    if (name == "V") return EcmVariant::V;
    if (name == "VI") return EcmVariant::VI;
    throw std::invalid_argument("unknown ECM variant '" + std::string(name) + "' (expected I..VI)");
}

std::string to_string(EcmVariant v) {
    switch (v) {
        case EcmVariant::I: return "I";
        case EcmVariant::II: return "II";
        case EcmVariant::III: return "III";
        case EcmVariant::IV: return "IV";
        case EcmVariant::V: return "V";
        case EcmVariant::VI: return "VI";
    }
    return "?";
}

RegressorSet regressors_for(EcmVariant v) {
    RegressorSet r;
    switch (v) {
        case EcmVariant::I:
            r.lags = r.psi = true;
            break;
        case EcmVariant::II:
            r.lags = r.dz = r.dr = r.psi = true;
            break;
        case EcmVariant::III:
            r.wti = true;
            break;
        case EcmVariant::IV:
            r.lags = r.dz = r.dr = r.psi = r.wti = true;
            break;
        case EcmVariant::V:
            r.wti = r.spx = r.vix = r.sigma = true;
            break;
        case EcmVariant::VI:
            r.lags = r.dz = r.dr = r.psi = r.wti = r.spx = r.vix = r.sigma = true;
            break;
    }
    return r;
}

Eigen::Index EcmFit::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<Eigen::Index>(i);
    return -1;
}

EcmFit fit_ecm(const EcmInputs& in, int n_lags, const RegressorSet& reg, std::optional<int> bandwidth) {
    if (n_lags < 0) throw std::invalid_argument("fit_ecm: negative lag count");
    const TradingDaySeries& dc = in.dC;
    if (reg.dz) require_same_dates(dc, in.dZ, "dZ");
    if (reg.dr) require_same_dates(dc, in.dr, "dr");
    if (reg.psi) require_same_dates(dc, in.psi_lagged, "psi_lagged");
    if (reg.uses_controls() && !in.controls) throw DataError("fit_ecm: variant needs controls but none were supplied");

    // Control columns in table order.
    std::vector<std::pair<std::string, const TradingDaySeries*>> controls;
    if (in.controls) {
        if (reg.wti) controls.emplace_back("WTI", &in.controls->wti_logret);
        if (reg.spx) controls.emplace_back("SPX", &in.controls->spx_logret);
        if (reg.vix) controls.emplace_back("VIX", &in.controls->vix_level);
        if (reg.sigma) controls.emplace_back("sigma", &in.controls->sigma);
    }

    const auto start = static_cast<std::size_t>(std::max(n_lags, 1));
    std::vector<std::size_t> rows;
    std::vector<std::vector<double>> control_values(controls.size());
    for (std::size_t i = start; i < dc.size(); ++i) {
        bool ok = true;
        std::vector<double> vals;
        for (const auto& [name, s] : controls) {
            const auto v = s->at(dc.dates()[i]);
            if (!v) {
                ok = false;
                break;
            }
            vals.push_back(*v);
        }
        if (!ok) continue;
        rows.push_back(i);
        for (std::size_t j = 0; j < vals.size(); ++j) control_values[j].push_back(vals[j]);
    }

    EcmFit fit;
    fit.n_lags = reg.lags ? n_lags : 0;
    if (reg.lags)
        for (int l = 1; l <= n_lags; ++l) fit.names.push_back("dC(-" + std::to_string(l) + ")");
    if (reg.dz) fit.names.emplace_back("dZ");
    if (reg.dr) fit.names.emplace_back("dr");
    if (reg.psi) fit.names.emplace_back("psi(-1)");
    for (const auto& c : controls) fit.names.push_back(c.first);
    fit.names.emplace_back("const");

    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto k = static_cast<Eigen::Index>(fit.names.size());
    if (n <= k + 1) throw DataError("fit_ecm: too few observations after lag trimming");

    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd y(n);
    std::vector<Date> dates;
    dates.reserve(rows.size());
    for (Eigen::Index r = 0; r < n; ++r) {
        const std::size_t i = rows[static_cast<std::size_t>(r)];
        dates.push_back(dc.dates()[i]);
        y[r] = dc[i];
        Eigen::Index c = 0;
        if (reg.lags)
            for (int l = 1; l <= n_lags; ++l) X(r, c++) = dc[i - static_cast<std::size_t>(l)];
        if (reg.dz) X(r, c++) = in.dZ[i];
        if (reg.dr) X(r, c++) = in.dr[i];
        if (reg.psi) X(r, c++) = in.psi_lagged[i];
        for (const auto& col : control_values) X(r, c++) = col[static_cast<std::size_t>(r)];
        X(r, c) = 1.0;
    }

    const auto ols = ols_fit(X, y, fit.names);
    fit.bandwidth = bandwidth.value_or(newey_west_bandwidth(n));
    const Eigen::MatrixXd cov = newey_west_cov(X, ols.residuals, fit.bandwidth);
    fit.coefficients = ols.coefficients;
    fit.hac_std_errors = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    fit.p_values.resize(k);
    const double dof = static_cast<double>(n - k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double se = fit.hac_std_errors[j];
        fit.p_values[j] = se > 0.0 ? student_t_two_sided_p(fit.coefficients[j] / se, dof) : 1.0;
    }
    fit.residuals = TradingDaySeries(std::move(dates), ols.residuals, "residual");
    fit.n_obs = static_cast<long>(n);
    fit.log_likelihood = gaussian_log_likelihood(ols.rss, fit.n_obs);
    const auto ic = info_criteria(fit.log_likelihood, static_cast<int>(k), fit.n_obs);
    fit.aic = ic.aic;
    fit.bic = ic.bic;
    return fit;
}

EcmFit fit_ecm(const EcmInputs& inputs, int n_lags, EcmVariant variant, std::optional<int> bandwidth) {
    return fit_ecm(inputs, n_lags, regressors_for(variant), bandwidth);
}

TradingDaySeries cointegration_residual(const TradingDaySeries& c, const TradingDaySeries& z,
                                        const TradingDaySeries& r, double gamma1, double gamma2) {
    const std::vector<TradingDaySeries> parts{c, z, r};
    const AlignedSeries a = align(parts);
    const Eigen::VectorXd psi = a.values.col(0) - gamma1 * a.values.col(1) - gamma2 * a.values.col(2);
    return TradingDaySeries(a.dates, psi, "psi");
}

TradingDaySeries lag_one(const TradingDaySeries& s) {
    if (s.size() < 2) throw std::invalid_argument("lag_one: series too short");
    std::vector<Date> dates(s.dates().begin() + 1, s.dates().end());
    const auto n = static_cast<Eigen::Index>(s.size());
    return TradingDaySeries(std::move(dates), Eigen::VectorXd(s.values().head(n - 1)), s.label() + "(-1)");
}

}  // namespace cspread
