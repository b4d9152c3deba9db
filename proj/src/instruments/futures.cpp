#include "cspread/instruments/futures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cspread/core/errors.hpp"

namespace cspread {

double c_spread_point(double futures_price, double spot_price, Date t, Date T, const DiscountCurve& curve) {
    if (!(futures_price > 0.0) || !(spot_price > 0.0)) {
        throw std::invalid_argument("c_spread_point: prices must be positive");
    }
    if (T <= t) throw std::invalid_argument("c_spread_point: maturity must be after the quote date");
    return std::log(futures_price / spot_price) / act365(t, T) - curve.zero_rate(t, T);
}

bool in_roll_month(Date t, Date maturity, int roll_months) { return t >= add_months(maturity, -roll_months); }

const FuturesQuote& select_front_december(std::span<const FuturesQuote> chain, Date t, int roll_months) {
    const FuturesQuote* best = nullptr;
    for (const auto& q : chain) {
        if (month_of(q.maturity) != 12 || q.maturity <= t || in_roll_month(t, q.maturity, roll_months)) continue;
        if (best == nullptr || q.maturity < best->maturity) best = &q;
    }
    if (best == nullptr) throw DataError("no eligible December contract on " + format_date(t));
    return *best;
}

TradingDaySeries CSpreadSeries::series(std::string label) const {
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& p : points) {
        dates.push_back(p.date);
        values.push_back(p.c_spread);
    }
    return TradingDaySeries(std::move(dates), values, std::move(label));
}

CSpreadSeries build_c_spread_series(std::span<const FuturesQuote> futures, std::span<const SpotProxy> spot,
                                    const std::map<Date, DiscountCurve>& curves, int roll_months) {
    std::map<Date, std::vector<FuturesQuote>> chains;
    for (const auto& q : futures) chains[q.quote_date].push_back(q);
    std::map<Date, double> spot_by_date;
    for (const auto& s : spot) spot_by_date[s.quote_date] = s.price;

    CSpreadSeries out;
    for (const auto& [date, chain] : chains) {
        const auto s = spot_by_date.find(date);
        const auto c = curves.find(date);
        if (s == spot_by_date.end() || c == curves.end()) continue;
        try {
            const auto& front = select_front_december(chain, date, roll_months);
            out.points.push_back({date, c_spread_point(front.settle_price, s->second, date, front.maturity, c->second),
                                  front.contract_id, act365(date, front.maturity)});
        } catch (const std::exception& e) {
            out.skipped.push_back(format_date(date) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace cspread
