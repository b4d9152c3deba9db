#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "cspread/core/series.hpp"
#include "cspread/pipeline/io.hpp"

namespace cspread {

/// Parameters of the synthetic market. Defaults are calibrated to the
/// Phase III moments (C about 1.1% +- 0.5%, Z 1.0% +- 0.4%, r -0.2% +- 0.2%).
struct SimSpec {
    int n_days = 2008;
    Date start = make_date(2013, 1, 2);

    // Long-run relation C = gamma1 Z + gamma2 r + psi.
    double gamma1 = 1.21;
    double gamma2 = 0.40;

    // dC_t = a0 + sum b_i dC_{t-i} + a1 dZ_t + a2 dr_t + a3 psi_{t-1} + e_t
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = -0.02;
    std::array<double, 3> beta{-0.33, -0.28, -0.12};
    double sigma_c = 1e-5;

    // Z and r are correlated random walks rescaled to these sample moments.
    double z_mean = 0.010;
    double z_sd = 0.004;
    double r_mean = -0.002;
    double r_sd = 0.002;
    double zr_correlation = 0.3;

    double curve_slope = 0.002;  // zero-rate slope per year of maturity around the 3M point

    // EUA spot proxy: GARCH(1,1) log-returns.
    double spot0 = 5.0;
    double spot_omega = 2e-5;
    double spot_alpha = 0.08;
    double spot_beta = 0.90;

    // Issuer spread deviations: AR(1), demeaned across issuers every day.
    double issuer_sd = 0.002;
    double issuer_ar = 0.98;
    double quote_drop_probability = 0.15;

    bool controls = true;
    std::uint64_t seed = 20130102;

    /// Throws std::invalid_argument for alpha3 >= 0 or other unusable settings.
    void validate() const;
};

struct SimTruth {
    TradingDaySeries c;
    TradingDaySeries z;
    TradingDaySeries r;
};

struct MarketBundle {
    std::vector<FuturesQuote> futures;
    std::vector<SpotProxy> spot;
    OisQuotesByDate ois;
    BondTable bonds;
    std::vector<BondQuote> bond_quotes;
    std::vector<IssuerRecord> issuers;
    std::optional<ControlLevels> controls;
    SimTruth truth;
};

/// The twelve issuers of the Phase III polluter list with their emissions and sectors.
[[nodiscard]] std::vector<IssuerRecord> fixture_issuers();

/// The OIS tenor strip used by the simulator: 1W 1M 3M 6M 1Y 2Y 3Y 4Y 5Y.
[[nodiscard]] std::vector<Tenor> fixture_tenors();

/// Generates the synthetic market. C_t, Z_t and r_t in `truth` are what the
/// pipeline reconstructs from the emitted quotes.
[[nodiscard]] MarketBundle simulate_market(const SimSpec& spec);

/// Writes the input CSVs, truth/{c,z,r}.csv, simspec.txt and a config.yaml
/// pointing at the directory.
void write_bundle(const MarketBundle& bundle, const SimSpec& spec, const std::filesystem::path& dir);

/// `key: value` listing of the spec.
[[nodiscard]] std::string describe_spec(const SimSpec& spec);

}  // namespace cspread
