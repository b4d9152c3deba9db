#include "cspread/instruments/bond.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cspread/core/errors.hpp"

namespace cspread {

std::vector<CashFlow> bond_cash_flows(const FixedCouponBond& bond, Date settle) {
    if (settle >= bond.maturity) {
        throw std::invalid_argument("bond_cash_flows: settlement " + format_date(settle) + " not before maturity of " +
                                    bond.bond_id);
    }
    if (bond.frequency != 1 && bond.frequency != 2) {
        throw std::invalid_argument("bond_cash_flows: frequency must be 1 or 2 for " + bond.bond_id);
    }
    const int step = 12 / bond.frequency;
    const double coupon = bond.coupon_rate / bond.frequency * 100.0;
    std::vector<CashFlow> flows;
    for (int k = 0;; ++k) {
        const Date d = add_months(bond.maturity, -step * k);
        if (d <= settle) break;
        flows.push_back({d, k == 0 ? coupon + 100.0 : coupon});
    }
    std::reverse(flows.begin(), flows.end());
    if (coupon == 0.0) {
        std::erase_if(flows, [](const CashFlow& cf) { return cf.amount == 0.0; });
    }
    return flows;
}

double dirty_price_from_curve(const std::vector<CashFlow>& flows, const DiscountCurve& curve, double z) {
    double pv = 0.0;
    for (const auto& cf : flows) {
        pv += cf.amount * curve.discount(cf.date) * std::exp(-z * act365(curve.value_date(), cf.date));
    }
    return pv;
}

double dirty_price_from_curve(const FixedCouponBond& bond, const DiscountCurve& curve, double z) {
    return dirty_price_from_curve(bond_cash_flows(bond, curve.value_date()), curve, z);
}

double z_spread(const BondQuote& quote, const DiscountCurve& curve) {
    if (!quote.bond) throw std::invalid_argument("z_spread: quote without bond");
    if (quote.quote_date != curve.value_date()) {
        throw std::invalid_argument("z_spread: quote date " + format_date(quote.quote_date) +
                                    " differs from curve value date " + format_date(curve.value_date()));
    }
    if (!(quote.dirty_price > 0.0)) throw std::invalid_argument("z_spread: dirty price must be positive");

    const auto flows = bond_cash_flows(*quote.bond, quote.quote_date);
    std::vector<double> pv0;   // CF * DF
    std::vector<double> taus;
    for (const auto& cf : flows) {
        pv0.push_back(cf.amount * curve.discount(cf.date));
        taus.push_back(act365(quote.quote_date, cf.date));
    }
    const auto error = [&](double z) {
        double pv = 0.0;
        for (std::size_t i = 0; i < pv0.size(); ++i) pv += pv0[i] * std::exp(-z * taus[i]);
        return pv - quote.dirty_price;
    };

    double lo = kZSpreadLower;
    double hi = kZSpreadUpper;
    double f_lo = error(lo);
    double f_hi = error(hi);
    if (f_lo < 0.0 || f_hi > 0.0) {
        throw NumericalError("z_spread: unpriceable quote for " + quote.bond->bond_id + " on " +
                             format_date(quote.quote_date) + " at " + std::to_string(quote.dirty_price) +
                             ": no root in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    constexpr double kPriceTol = 1e-10;
    if (std::abs(f_lo) < kPriceTol) return lo;
    if (std::abs(f_hi) < kPriceTol) return hi;

    // Price is decreasing in z: f_lo > 0 > f_hi throughout.
    for (int it = 0; it < 40 && hi - lo > 1e-7; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = error(mid);
        if (f_mid > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }

    double z = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    for (int it = 0; it < 100; ++it) {
        const double f = error(z);
        if (std::abs(f) < kPriceTol) return z;
        if (f > 0.0) {
            lo = z;
            f_lo = f;
        } else {
            hi = z;
            f_hi = f;
        }
        z = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        if (!(z > lo && z < hi)) z = 0.5 * (lo + hi);
    }
    throw NumericalError("z_spread: no convergence for " + quote.bond->bond_id + " on " +
                         format_date(quote.quote_date));
}

}  // namespace cspread
