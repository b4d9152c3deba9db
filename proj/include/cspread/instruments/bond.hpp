#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cspread/core/date.hpp"
#include "cspread/curves/discount_curve.hpp"

namespace cspread {

/// Fixed-coupon, bullet, euro-denominated bond. Amounts are per 100 notional.
struct FixedCouponBond {
    std::string bond_id;
    std::string issuer_id;
    double coupon_rate = 0.0;   // annual decimal
    int frequency = 1;          // coupons per year, 1 or 2
    Date maturity{};
    double issue_amount = 0.0;  // currency units
};

/// Dirty price quote per 100 notional.
struct BondQuote {
    std::shared_ptr<const FixedCouponBond> bond;
    Date quote_date{};
    double dirty_price = 0.0;
};

struct CashFlow {
    Date date;
    double amount;
};

/// Remaining flows strictly after `settle`: coupon_rate / frequency * 100 on
/// each coupon date (rolled backward from maturity) plus 100 at maturity.
/// Throws std::invalid_argument when settle >= maturity.
[[nodiscard]] std::vector<CashFlow> bond_cash_flows(const FixedCouponBond& bond, Date settle);

/// Dirty price of the flows under the curve shifted by a continuously
/// compounded spread z: sum CF_i * DF(t_i) * exp(-z * tau_i), ACT/365.
[[nodiscard]] double dirty_price_from_curve(const std::vector<CashFlow>& flows, const DiscountCurve& curve, double z);
[[nodiscard]] double dirty_price_from_curve(const FixedCouponBond& bond, const DiscountCurve& curve, double z);

/// Lower and upper ends of the Z-spread search bracket.
inline constexpr double kZSpreadLower = -0.5;
inline constexpr double kZSpreadUpper = 5.0;

/// Spread over the zero curve that reprices the quote. Bisection narrows the
/// bracket [-50%, 500%], secant steps finish until |price error| < 1e-10.
/// The quote date must equal the curve value date. Throws NumericalError
/// ("unpriceable quote") when the price lies outside the bracket image.
[[nodiscard]] double z_spread(const BondQuote& quote, const DiscountCurve& curve);

}  // namespace cspread
