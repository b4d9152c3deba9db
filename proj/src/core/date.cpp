#include "cspread/core/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace cspread {

using namespace std::chrono;

Date make_date(int y, unsigned m, unsigned d) {
    const year_month_day ymd{year{y}, month{m}, day{d}};
    if (!ymd.ok()) {
        throw std::invalid_argument("invalid calendar date " + std::to_string(y) + "-" +
                                    std::to_string(m) + "-" + std::to_string(d));
    }
    return sys_days{ymd};
}

namespace {

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

year_month_day ymd_of(Date d) { return year_month_day{d}; }

}  // namespace

Date parse_date(std::string_view text) {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_int(text.substr(0, 4), y) ||
        !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d)) {
        throw std::invalid_argument("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    return make_date(y, m, d);
}

std::string format_date(Date d) {
    const auto ymd = ymd_of(d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int year_of(Date d) { return static_cast<int>(ymd_of(d).year()); }
unsigned month_of(Date d) { return static_cast<unsigned>(ymd_of(d).month()); }
unsigned day_of(Date d) { return static_cast<unsigned>(ymd_of(d).day()); }

Date add_months(Date d, int months) {
    const auto ymd = ymd_of(d);
    const year_month ym = year_month{ymd.year(), ymd.month()} + std::chrono::months{months};
    const auto last = year_month_day_last{ym.year(), month_day_last{ym.month()}};
    const day dd = ymd.day() > last.day() ? last.day() : ymd.day();
    return sys_days{year_month_day{ym.year(), ym.month(), dd}};
}

bool is_weekend(Date d) {
    const weekday wd{d};
    return wd == Saturday || wd == Sunday;
}

IsoWeek iso_week(Date d) {
    // The ISO week-year is the year of the Thursday in the same week.
    const weekday wd{d};
    const int iso_dow = static_cast<int>(wd.iso_encoding());  // Mon=1..Sun=7
    const Date thursday = d + days{4 - iso_dow};
    const int wy = year_of(thursday);
    const Date jan1 = make_date(wy, 1, 1);
    const auto week = static_cast<unsigned>(days_between(jan1, thursday) / 7 + 1);
    return {wy, week};
}

Date penultimate_monday(int y, unsigned m) {
    const year_month_weekday_last last_monday{year{y}, month{m}, weekday_last{Monday}};
    return sys_days{last_monday} - days{7};
}

bool BusinessCalendar::is_business_day(Date d) const {
    return !is_weekend(d) && !holidays_.contains(d);
}

Date BusinessCalendar::next_business_day(Date d) const {
    while (!is_business_day(d)) d += days{1};
    return d;
}

std::vector<Date> BusinessCalendar::business_days(Date start, std::size_t count) const {
    std::vector<Date> out;
    out.reserve(count);
    Date d = next_business_day(start);
    while (out.size() < count) {
        out.push_back(d);
        d = next_business_day(d + days{1});
    }
    return out;
}

std::vector<Date> BusinessCalendar::business_days_between(Date first, Date last) const {
    std::vector<Date> out;
    for (Date d = first; d <= last; d += days{1}) {
        if (is_business_day(d)) out.push_back(d);
    }
    return out;
}

}  // namespace cspread
