#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cspread/core/series.hpp"
#include "cspread/curves/discount_curve.hpp"

namespace cspread {

struct FuturesQuote {
    std::string contract_id;
    Date quote_date{};
    Date maturity{};            // penultimate Monday of a December
    double settle_price = 0.0;  // EUR per EUA
    long long volume = 0;       // lots
};

struct SpotProxy {
    Date quote_date{};
    double price = 0.0;
};

struct CSpreadPoint {
    Date date;
    double c_spread;
    std::string contract_id;
    double ttm;  // ACT/365 years to the contract maturity
};

/// C = ln(F / S) / tau(t, T) - r(t, T), tau in ACT/365 and r the continuously
/// compounded zero rate of `curve`. Throws std::invalid_argument for
/// non-positive prices or T <= t.
[[nodiscard]] double c_spread_point(double futures_price, double spot_price, Date t, Date T,
                                    const DiscountCurve& curve);

/// True when t falls in the roll window before expiry
/// (t >= maturity - roll_months calendar months).
[[nodiscard]] bool in_roll_month(Date t, Date maturity, int roll_months = 1);

/// Nearest December contract that has not yet entered its roll month.
/// Throws DataError("no eligible December contract") when none qualifies.
[[nodiscard]] const FuturesQuote& select_front_december(std::span<const FuturesQuote> chain, Date t,
                                                        int roll_months = 1);

struct CSpreadSeries {
    std::vector<CSpreadPoint> points;
    std::vector<std::string> skipped;  // one message per date dropped

    [[nodiscard]] TradingDaySeries series(std::string label = "C") const;
};

/// One C-spread point per date on which futures, spot and a curve all exist.
/// Dates where selection fails are skipped and reported in `skipped`.
[[nodiscard]] CSpreadSeries build_c_spread_series(std::span<const FuturesQuote> futures,
                                                  std::span<const SpotProxy> spot,
                                                  const std::map<Date, DiscountCurve>& curves,
                                                  int roll_months = 1);

}  // namespace cspread
