#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

#include "cspread/core/errors.hpp"
#include "cspread/core/stats.hpp"
#include "cspread/econometrics/adf_gls.hpp"
#include "cspread/econometrics/ecm.hpp"
#include "cspread/econometrics/garch.hpp"
#include "cspread/econometrics/johansen.hpp"
#include "cspread/pipeline/config.hpp"
#include "cspread/pipeline/io.hpp"
#include "cspread/pipeline/report.hpp"

namespace cspread {

struct MarketInputs {
    std::vector<FuturesQuote> futures;
    std::vector<SpotProxy> spot;
    OisQuotesByDate ois;
    BondTable bonds;
    std::vector<BondQuote> bond_quotes;
    std::vector<IssuerRecord> issuers;
    std::optional<ControlLevels> controls;
    std::vector<std::pair<std::string, std::string>> digests;  // file name, sha256
};

/// Everything built before estimation: curves, C_t, Z_t (all variants
/// requested) and r_t, restricted to the config window.
struct ConstructedSeries {
    std::map<Date, DiscountCurve> curves;
    CSpreadSeries c_spread;
    std::map<ZIndexVariant, std::vector<ZIndexPoint>> z_points;
    TradingDaySeries c;
    std::map<ZIndexVariant, TradingDaySeries> z;
    TradingDaySeries r;
};

[[nodiscard]] MarketInputs ingest(const PipelineConfig& cfg);
[[nodiscard]] std::map<Date, DiscountCurve> bootstrap_curves(const OisQuotesByDate& quotes);
/// Zero rate from each date's curve to t + 3 calendar months.
[[nodiscard]] TradingDaySeries three_month_rate(const std::map<Date, DiscountCurve>& curves);
/// Z-index per date for each requested variant; bond spreads are solved once per date.
[[nodiscard]] std::map<ZIndexVariant, std::vector<ZIndexPoint>> build_z_indices(
    std::span<const BondQuote> quotes, const std::map<Date, DiscountCurve>& curves,
    std::span<const IssuerRecord> issuers, std::span<const ZIndexVariant> variants);

/// Curves, C-spread, Z-index and r_t. `all_z_variants` also builds the robustness variants.
[[nodiscard]] ConstructedSeries construct_series(const MarketInputs& in, const PipelineConfig& cfg,
                                                 bool all_z_variants);

/// Johansen on aligned (C, Z, r) levels with the configured lag rule.
[[nodiscard]] JohansenResult cointegrate(const TradingDaySeries& c, const TradingDaySeries& z,
                                         const TradingDaySeries& r, const PipelineConfig& cfg);

/// ECM inputs (differences, psi_{t-1}, optional controls) from levels and a cointegration vector.
/// `winsorize` clips the differenced series only.
[[nodiscard]] EcmInputs ecm_inputs(const TradingDaySeries& c, const TradingDaySeries& z, const TradingDaySeries& r,
                                   double gamma1, double gamma2, std::optional<int> winsorize,
                                   const std::optional<ControlSet>& controls);

/// GARCH(1,1) on spot log-returns; its sigma_t completes the control set.
[[nodiscard]] GarchFit spot_garch(std::span<const SpotProxy> spot);
[[nodiscard]] ControlSet make_controls(const ControlLevels& levels, const GarchFit& garch);

/// Full battery. Errors abort with a stage-tagged message; no partial report is returned.
[[nodiscard]] Report run_pipeline(const PipelineConfig& cfg);

/// Runs `fn`, prefixing any DataError / NumericalError / std::invalid_argument message with the stage name.
template <typename F>
decltype(auto) run_stage(const std::string& stage, F&& fn) {
    try {
        return fn();
    } catch (const NumericalError& e) {
        throw NumericalError("[" + stage + "] " + e.what());
    } catch (const DataError& e) {
        throw DataError("[" + stage + "] " + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError("[" + stage + "] " + e.what());
    }
}

}  // namespace cspread
