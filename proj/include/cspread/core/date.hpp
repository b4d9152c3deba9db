#pragma once

#include <chrono>
#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cspread {

/// Calendar date at day resolution.
using Date = std::chrono::sys_days;

[[nodiscard]] Date make_date(int year, unsigned month, unsigned day);

/// Parses an ISO-8601 `YYYY-MM-DD` date. Throws std::invalid_argument on
/// malformed or out-of-range input.
[[nodiscard]] Date parse_date(std::string_view text);

[[nodiscard]] std::string format_date(Date d);

[[nodiscard]] int year_of(Date d);
[[nodiscard]] unsigned month_of(Date d);
[[nodiscard]] unsigned day_of(Date d);

/// Adds calendar months, clamping the day to the end of the target month
/// (31 Jan + 1M = 28/29 Feb).
[[nodiscard]] Date add_months(Date d, int months);

[[nodiscard]] inline Date add_days(Date d, int days) { return d + std::chrono::days{days}; }

[[nodiscard]] inline long days_between(Date from, Date to) { return (to - from).count(); }

[[nodiscard]] inline double act365(Date from, Date to) {
    return static_cast<double>(days_between(from, to)) / 365.0;
}

[[nodiscard]] inline double act360(Date from, Date to) {
    return static_cast<double>(days_between(from, to)) / 360.0;
}

[[nodiscard]] bool is_weekend(Date d);

struct IsoWeek {
    int year;
    unsigned week;
    auto operator<=>(const IsoWeek&) const = default;
};

[[nodiscard]] IsoWeek iso_week(Date d);

/// Second-to-last Monday of the given month (expiry rule of EUA December futures).
[[nodiscard]] Date penultimate_monday(int year, unsigned month);

/// Weekend-only business-day calendar with an optional holiday list.
class BusinessCalendar {
public:
    BusinessCalendar() = default;
    explicit BusinessCalendar(std::set<Date> holidays) : holidays_(std::move(holidays)) {}

    [[nodiscard]] bool is_business_day(Date d) const;
    [[nodiscard]] Date next_business_day(Date d) const;  // first business day >= d
    /// `count` consecutive business days starting at the first business day >= start.
    [[nodiscard]] std::vector<Date> business_days(Date start, std::size_t count) const;
    [[nodiscard]] std::vector<Date> business_days_between(Date first, Date last) const;

private:
    std::set<Date> holidays_;
};

}  // namespace cspread
