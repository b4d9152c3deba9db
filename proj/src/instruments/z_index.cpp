#include "cspread/instruments/z_index.hpp"

#include <algorithm>
#include <stdexcept>

#include "cspread/core/errors.hpp"

namespace cspread {

ZIndexVariant parse_z_index_variant(std::string_view name) {
    if (name == "equal") return ZIndexVariant::equal;
    if (name == "emissions") return ZIndexVariant::emissions;
    if (name == "interp1y") return ZIndexVariant::interp1y;
    if (name == "interp3y") return ZIndexVariant::interp3y;
    if (name == "interp5y") return ZIndexVariant::interp5y;
    throw std::invalid_argument("unknown z-index variant '" + std::string(name) + "'");
}

std::string to_string(ZIndexVariant v) {
    switch (v) {
        case ZIndexVariant::equal: return "equal";
        case ZIndexVariant::emissions: return "emissions";
        case ZIndexVariant::interp1y: return "interp1y";
        case ZIndexVariant::interp3y: return "interp3y";
        case ZIndexVariant::interp5y: return "interp5y";
    }
    return "?";
}

double issuer_z_spread_weighted(std::span<const AmountSpread> spreads) {
    if (spreads.empty()) throw std::invalid_argument("issuer_z_spread_weighted: no spreads");
    double total = 0.0;
    double acc = 0.0;
    for (const auto& s : spreads) {
        if (!(s.issue_amount > 0.0)) throw std::invalid_argument("issuer_z_spread_weighted: non-positive amount");
        total += s.issue_amount;
        acc += s.z * s.issue_amount;
    }
    return acc / total;
}

double issuer_z_spread_interpolated(std::span<const TenorSpread> spreads, double target) {
    if (spreads.empty()) throw std::invalid_argument("issuer_z_spread_interpolated: no spreads");
    std::vector<TenorSpread> sorted(spreads.begin(), spreads.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.tenor < b.tenor; });
    // Collapse equal tenors to their mean.
    std::vector<TenorSpread> nodes;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < sorted.size() && sorted[j].tenor == sorted[i].tenor) sum += sorted[j++].z;
        nodes.push_back({sum / static_cast<double>(j - i), sorted[i].tenor});
        i = j;
    }
    if (target <= nodes.front().tenor) return nodes.front().z;
    if (target >= nodes.back().tenor) return nodes.back().z;
    const auto hi = std::upper_bound(nodes.begin(), nodes.end(), target,
                                     [](double t, const TenorSpread& n) { return t < n.tenor; });
    const auto lo = hi - 1;
    const double w = (target - lo->tenor) / (hi->tenor - lo->tenor);
    return lo->z + w * (hi->z - lo->z);
}

double z_index(std::span<const IssuerSpread> issuer_spreads, IndexWeighting weighting,
               std::span<const IssuerRecord> records) {
    if (issuer_spreads.empty()) throw std::invalid_argument("z_index: no issuer spreads");
    if (weighting == IndexWeighting::equal) {
        double acc = 0.0;
        for (const auto& s : issuer_spreads) acc += s.z;
        return acc / static_cast<double>(issuer_spreads.size());
    }
    double acc = 0.0;
    double total = 0.0;
    for (const auto& s : issuer_spreads) {
        const auto it = std::find_if(records.begin(), records.end(),
                                     [&](const IssuerRecord& r) { return r.issuer_id == s.issuer_id; });
        if (it == records.end()) throw DataError("z_index: no emissions record for issuer '" + s.issuer_id + "'");
        acc += s.z * it->emissions;
        total += it->emissions;
    }
    return acc / total;
}

std::vector<BondSpread> solve_bond_spreads(std::span<const BondQuote> quotes, const DiscountCurve& curve) {
    std::vector<BondSpread> out;
    out.reserve(quotes.size());
    for (const auto& q : quotes) {
        out.push_back({q.bond, z_spread(q, curve), act365(q.quote_date, q.bond->maturity)});
    }
    return out;
}

ZIndexPoint aggregate_z_index(Date date, std::span<const BondSpread> spreads, ZIndexVariant variant,
                              std::span<const IssuerRecord> records) {
    std::map<std::string, std::vector<const BondSpread*>> by_issuer;
    for (const auto& s : spreads) by_issuer[s.bond->issuer_id].push_back(&s);
    if (by_issuer.empty()) throw DataError("z_index: no bond spreads on " + format_date(date));

    std::vector<IssuerSpread> issuers;
    for (const auto& [issuer, bonds] : by_issuer) {
        double z = 0.0;
        switch (variant) {
            case ZIndexVariant::equal:
            case ZIndexVariant::emissions: {
                std::vector<AmountSpread> v;
                for (const auto* b : bonds) v.push_back({b->z, b->bond->issue_amount});
                z = issuer_z_spread_weighted(v);
                break;
            }
            case ZIndexVariant::interp1y:
            case ZIndexVariant::interp3y:
            case ZIndexVariant::interp5y: {
                const double target = variant == ZIndexVariant::interp1y ? 1.0 : variant == ZIndexVariant::interp3y ? 3.0 : 5.0;
                std::vector<TenorSpread> v;
                for (const auto* b : bonds) v.push_back({b->z, b->tenor});
                z = issuer_z_spread_interpolated(v, target);
                break;
            }
        }
        issuers.push_back({issuer, z});
    }
    const auto weighting = variant == ZIndexVariant::emissions ? IndexWeighting::emissions : IndexWeighting::equal;
    return {date, z_index(issuers, weighting, records), issuers.size()};
}

TradingDaySeries to_series(std::span<const ZIndexPoint> points, std::string label) {
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& p : points) {
        dates.push_back(p.date);
        values.push_back(p.z_index);
    }
    return TradingDaySeries(std::move(dates), values, std::move(label));
}

}  // namespace cspread
