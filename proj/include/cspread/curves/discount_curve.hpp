#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cspread/core/date.hpp"

namespace cspread {

/// Calendar length such as 1W, 3M or 5Y.
struct Tenor {
    enum class Unit { day, week, month, year };

    int count = 0;
    Unit unit = Unit::month;

    /// Parses tokens like "1W", "3M", "10Y", "2D". Throws std::invalid_argument.
    [[nodiscard]] static Tenor parse(std::string_view token);
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] Date advance(Date from) const;
};

struct OisQuote {
    Tenor tenor;
    double par_rate = 0.0;  // annualised decimal
};

/// Discount factors at pillar dates with log-linear interpolation in the
/// discount factor over ACT/365 time, and flat zero-rate extrapolation past
/// the last pillar. DF(value_date) = 1.
class DiscountCurve {
public:
    DiscountCurve() = default;
    /// Pillars must be strictly increasing, strictly after value_date, with
    /// positive discount factors.
    DiscountCurve(Date value_date, std::vector<Date> pillar_dates, std::vector<double> discount_factors);

    [[nodiscard]] Date value_date() const { return value_date_; }
    [[nodiscard]] const std::vector<Date>& pillar_dates() const { return dates_; }
    [[nodiscard]] const std::vector<double>& pillar_discount_factors() const { return dfs_; }

    /// Throws std::invalid_argument for d < value_date.
    [[nodiscard]] double discount(Date d) const;

    /// Continuously compounded ACT/365 rate between t and T (T > t >= value_date).
    [[nodiscard]] double zero_rate(Date t, Date T) const;

private:
    Date value_date_{};
    std::vector<Date> dates_;
    std::vector<double> dfs_;
    std::vector<double> times_;     // ACT/365 from value date
    std::vector<double> log_dfs_;
};

/// True when the quote is a single-payment deposit-style OIS (maturity <= 1Y).
[[nodiscard]] bool is_single_payment(const Tenor& tenor, Date value_date);

/// Annual fixed-leg payment dates, generated backward from maturity; the first
/// period may be a short stub.
[[nodiscard]] std::vector<Date> fixed_leg_dates(Date value_date, Date maturity);

/// Par rate of the OIS with this tenor implied by `curve`.
[[nodiscard]] double ois_par_rate(const DiscountCurve& curve, const Tenor& tenor);

/// Sequential bootstrap. Tenors <= 1Y: DF = 1 / (1 + rate * tau_ACT360).
/// Longer tenors: annual fixed leg priced at par, solved for the final
/// discount factor (intermediate dates beyond the last known pillar are
/// log-linearly interpolated against the unknown). Throws DataError for
/// non-increasing tenors or a rate that implies DF <= 0.
[[nodiscard]] DiscountCurve bootstrap_ois(std::span<const OisQuote> quotes, Date value_date);

}  // namespace cspread
