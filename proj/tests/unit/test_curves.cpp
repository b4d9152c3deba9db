#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cspread/core/errors.hpp"
#include "cspread/curves/discount_curve.hpp"

using namespace cspread;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const Date kValue = make_date(2016, 3, 15);

std::vector<OisQuote> strip(std::initializer_list<std::pair<const char*, double>> q) {
    std::vector<OisQuote> out;
    for (const auto& [t, r] : q) out.push_back({Tenor::parse(t), r});
    return out;
}

// Independent repricer: single payment up to one year, otherwise an annual
// ACT/360 fixed leg rolled back from maturity with a short first stub.
double reprice(const DiscountCurve& c, const Tenor& tenor) {
    const Date v = c.value_date();
    const Date m = tenor.advance(v);
    if (m <= add_months(v, 12)) return (1.0 / c.discount(m) - 1.0) / (days_between(v, m) / 360.0);
    std::vector<Date> pay;
    for (int k = 0;; ++k) {
        const Date d = add_months(m, -12 * k);
        if (d <= v) break;
        pay.insert(pay.begin(), d);
    }
    double annuity = 0.0;
    Date prev = v;
    for (Date d : pay) {
        annuity += days_between(prev, d) / 360.0 * c.discount(d);
        prev = d;
    }
    return (1.0 - c.discount(m)) / annuity;
}

}  // namespace

TEST_CASE("tenor tokens", "[curves][tenor]") {
    CHECK(Tenor::parse("1W").advance(kValue) == add_days(kValue, 7));
    CHECK(Tenor::parse("3M").advance(kValue) == make_date(2016, 6, 15));
    CHECK(Tenor::parse("2Y").advance(kValue) == make_date(2018, 3, 15));
    CHECK(Tenor::parse("10Y").to_string() == "10Y");
    CHECK_THROWS_AS(Tenor::parse("Y"), std::invalid_argument);
    CHECK_THROWS_AS(Tenor::parse("3Q"), std::invalid_argument);
}

TEST_CASE("bootstrap_ois single-payment pillars", "[curves][bootstrap]") {
    SECTION("1Y at 0% gives DF 1") {
        const auto c = bootstrap_ois(strip({{"1Y", 0.0}}), kValue);
        CHECK(c.discount(make_date(2017, 3, 15)) == 1.0);
    }
    SECTION("180 days at 2% has tau 0.5 and DF 1/1.01") {
        const auto c = bootstrap_ois(strip({{"180D", 0.02}}), kValue);
        CHECK_THAT(c.discount(add_days(kValue, 180)), WithinAbs(1.0 / 1.01, 1e-15));
        CHECK_THAT(c.discount(add_days(kValue, 180)), WithinAbs(0.990099, 1e-6));
    }
    SECTION("6M uses the actual ACT/360 accrual") {
        const auto c = bootstrap_ois(strip({{"6M", 0.02}}), kValue);
        const Date m = make_date(2016, 9, 15);
        CHECK_THAT(c.discount(m), WithinAbs(1.0 / (1.0 + 0.02 * 184.0 / 360.0), 1e-15));
    }
}

TEST_CASE("bootstrap_ois reprices a full strip", "[curves][bootstrap]") {
    const auto q = strip({{"1W", -0.0035}, {"1M", -0.0034}, {"3M", -0.0033}, {"6M", -0.0031}, {"1Y", -0.0028},
                          {"2Y", -0.0022}, {"3Y", -0.0012}, {"4Y", 0.0001}, {"5Y", 0.0015}});
    const auto c = bootstrap_ois(q, kValue);
    for (const auto& x : q) CHECK_THAT(reprice(c, x.tenor), WithinAbs(x.par_rate, 1e-12));
    for (const auto& x : q) CHECK_THAT(ois_par_rate(c, x.tenor), WithinAbs(x.par_rate, 1e-12));
}

TEST_CASE("bootstrap_ois errors", "[curves][bootstrap]") {
    CHECK_THROWS_AS(bootstrap_ois(strip({{"1Y", 0.01}, {"6M", 0.01}}), kValue), DataError);
    CHECK_THROWS_AS(bootstrap_ois(strip({{"1Y", 0.01}, {"12M", 0.01}}), kValue), DataError);
    CHECK_THROWS_AS(bootstrap_ois({}, kValue), DataError);
    CHECK_THROWS_WITH(bootstrap_ois(strip({{"1Y", -2.0}}), kValue), ContainsSubstring("1Y"));
    CHECK_THROWS_WITH(bootstrap_ois(strip({{"1Y", 0.01}, {"3Y", -1.0}}), kValue), ContainsSubstring("3Y"));
}

TEST_CASE("discount factor interpolation", "[curves][discount]") {
    const DiscountCurve c(kValue, {add_days(kValue, 100), add_days(kValue, 300)}, {0.99, 0.98});
    CHECK(c.discount(kValue) == 1.0);
    CHECK(c.discount(add_days(kValue, 100)) == 0.99);
    CHECK(c.discount(add_days(kValue, 300)) == 0.98);
    CHECK_THAT(c.discount(add_days(kValue, 200)), WithinAbs(std::sqrt(0.99 * 0.98), 1e-15));
    CHECK_THROWS_AS(c.discount(add_days(kValue, -1)), std::invalid_argument);

    SECTION("flat zero-rate extrapolation past the last pillar") {
        const double z = c.zero_rate(kValue, add_days(kValue, 300));
        CHECK_THAT(c.zero_rate(kValue, add_days(kValue, 3000)), WithinAbs(z, 1e-14));
    }
    SECTION("interpolated DF lies between its neighbours") {
        for (int d = 101; d < 300; ++d) {
            const double df = c.discount(add_days(kValue, d));
            CHECK(df < 0.99);
            CHECK(df > 0.98);
        }
    }
}

TEST_CASE("zero_rate", "[curves][zero]") {
    SECTION("flat 1% curve") {
        std::vector<Date> d;
        std::vector<double> df;
        for (int y = 1; y <= 5; ++y) {
            d.push_back(add_days(kValue, 365 * y));
            df.push_back(std::exp(-0.01 * y));
        }
        const DiscountCurve c(kValue, d, df);
        CHECK_THAT(c.zero_rate(kValue, add_days(kValue, 90)), WithinAbs(0.01, 1e-14));
        CHECK_THAT(c.zero_rate(add_days(kValue, 400), add_days(kValue, 1500)), WithinAbs(0.01, 1e-14));
    }
    SECTION("DF 0.995 at half a year") {
        const DiscountCurve c(kValue, {add_days(kValue, 365)}, {0.99});
        const DiscountCurve h(kValue, {add_days(kValue, 182)}, {0.995});
        const double r = h.zero_rate(kValue, add_days(kValue, 182));
        CHECK_THAT(r, WithinAbs(-std::log(0.995) / (182.0 / 365.0), 1e-15));
        // With tau exactly 0.5 the rate is about 1.00251%.
        CHECK_THAT(-std::log(0.995) / 0.5, WithinAbs(0.0100251, 1e-7));
        CHECK_THROWS_AS(c.zero_rate(kValue, kValue), std::invalid_argument);
    }
}

TEST_CASE("curve properties over random strips", "[curves][property]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> level(0.0, 0.04), step(0.0, 0.004);
    std::uniform_int_distribution<int> offset(0, 3000);
    const char* tenors[] = {"1W", "1M", "3M", "6M", "1Y", "2Y", "3Y", "5Y", "7Y", "10Y"};
    for (int draw = 0; draw < 100; ++draw) {
        const Date v = add_days(make_date(2010, 1, 4), offset(rng));
        std::vector<OisQuote> q;
        double r = level(rng);
        for (const char* t : tenors) {
            q.push_back({Tenor::parse(t), r});
            r += step(rng);
        }
        const auto c = bootstrap_ois(q, v);
        for (const auto& x : q) CHECK_THAT(reprice(c, x.tenor), WithinAbs(x.par_rate, 1e-12));

        // Non-negative rates give non-increasing discount factors.
        double prev = 1.0;
        for (int d = 1; d < 3700; d += 7) {
            const double df = c.discount(add_days(v, d));
            CHECK(df <= prev + 1e-16);
            prev = df;
        }

        // Zero rates are additive over adjacent intervals.
        const Date t = add_days(v, offset(rng) % 500), u = add_days(t, 1 + offset(rng) % 900),
                   T = add_days(u, 1 + offset(rng) % 900);
        const double lhs = act365(t, u) * c.zero_rate(t, u) + act365(u, T) * c.zero_rate(u, T);
        CHECK_THAT(lhs, WithinAbs(act365(t, T) * c.zero_rate(t, T), 1e-14));
    }
}
