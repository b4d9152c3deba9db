#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cspread/core/series.hpp"
#include "cspread/instruments/bond.hpp"

namespace cspread {

struct IssuerRecord {
    std::string issuer_id;
    std::string name;
    double emissions = 0.0;  // average yearly Mt CO2, scope 1
    std::string sector;
};

struct AmountSpread {
    double z;
    double issue_amount;
};

struct TenorSpread {
    double z;
    double tenor;  // years to maturity
};

struct IssuerSpread {
    std::string issuer_id;
    double z;
};

enum class IndexWeighting { equal, emissions };

/// How an issuer-level spread is formed and how issuers are combined.
enum class ZIndexVariant { equal, emissions, interp1y, interp3y, interp5y };

[[nodiscard]] ZIndexVariant parse_z_index_variant(std::string_view name);
[[nodiscard]] std::string to_string(ZIndexVariant v);

/// Issue-amount weighted mean of per-bond spreads.
[[nodiscard]] double issuer_z_spread_weighted(std::span<const AmountSpread> spreads);

/// Linear interpolation in tenor of per-bond spreads, flat beyond the observed
/// range. Bonds sharing a tenor are averaged.
[[nodiscard]] double issuer_z_spread_interpolated(std::span<const TenorSpread> spreads, double target_tenor);

/// Cross-issuer index: arithmetic mean, or emissions-weighted mean (every
/// issuer must then have a record; unknown ids raise DataError).
[[nodiscard]] double z_index(std::span<const IssuerSpread> issuer_spreads, IndexWeighting weighting,
                             std::span<const IssuerRecord> records = {});

struct ZIndexPoint {
    Date date;
    double z_index;
    std::size_t n_issuers;
};

/// Per-bond Z-spreads on one date, as produced by `solve_bond_spreads`.
struct BondSpread {
    std::shared_ptr<const FixedCouponBond> bond;
    double z;
    double tenor;
};

[[nodiscard]] std::vector<BondSpread> solve_bond_spreads(std::span<const BondQuote> quotes, const DiscountCurve& curve);

/// Aggregates one date's bond spreads into the index. Issuers without a quote
/// that day simply do not contribute.
[[nodiscard]] ZIndexPoint aggregate_z_index(Date date, std::span<const BondSpread> spreads, ZIndexVariant variant,
                                            std::span<const IssuerRecord> records);

[[nodiscard]] TradingDaySeries to_series(std::span<const ZIndexPoint> points, std::string label = "Z");

}  // namespace cspread
