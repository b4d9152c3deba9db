#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "cspread/core/errors.hpp"
#include "cspread/core/series.hpp"
#include "cspread/core/stats.hpp"
#include "cspread/econometrics/adf_gls.hpp"
#include "support.hpp"

using namespace cspread;
using namespace cspread::testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("series construction enforces its invariants", "[series]") {
    const auto d = business_dates(3);
    CHECK_THROWS_AS(TradingDaySeries({d[1], d[0]}, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(TradingDaySeries({d[0], d[0]}, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(TradingDaySeries({d[0], d[1]}, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TradingDaySeries({d[0]}, std::vector<double>{std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(TradingDaySeries({d[0]}, std::vector<double>{INFINITY}), std::invalid_argument);
}

TEST_CASE("align returns the inner join in input order", "[series][align]") {
    const auto d = business_dates(4);
    const TradingDaySeries a({d[0], d[1], d[2]}, std::vector<double>{1, 2, 3}, "a");
    const TradingDaySeries b({d[1], d[2], d[3]}, std::vector<double>{20, 30, 40}, "b");

    SECTION("identical series keep full length") {
        const std::vector<TradingDaySeries> in{a, a};
        const auto out = align(in);
        CHECK(out.dates == a.dates());
        CHECK(out.values.rows() == 3);
        CHECK(out.values.col(0) == out.values.col(1));
    }
    SECTION("partial overlap gives the intersection") {
        const std::vector<TradingDaySeries> in{a, b};
        const auto out = align(in);
        CHECK(out.dates == std::vector<Date>{d[1], d[2]});
        CHECK(out.values(0, 0) == 2.0);
        CHECK(out.values(1, 1) == 30.0);
    }
    SECTION("2008 common dates give a 2008 x 3 matrix") {
        const auto s = make_series(std::vector<double>(2008, 1.0));
        const auto longer = make_series(std::vector<double>(2100, 2.0));
        const std::vector<TradingDaySeries> in{s, longer, s};
        CHECK(align(in).values.rows() == 2008);
        CHECK(align(in).values.cols() == 3);
    }
    SECTION("permuting inputs permutes columns only") {
        const std::vector<TradingDaySeries> ab{a, b}, ba{b, a};
        const auto x = align(ab), y = align(ba);
        CHECK(x.dates == y.dates);
        CHECK(x.values.col(0) == y.values.col(1));
    }
    SECTION("disjoint dates raise a data error") {
        const TradingDaySeries c({d[3]}, std::vector<double>{1.0});
        const TradingDaySeries e({d[0]}, std::vector<double>{1.0});
        const std::vector<TradingDaySeries> in{c, e};
        CHECK_THROWS_WITH(align(in), Catch::Matchers::ContainsSubstring("no common dates"));
    }
}

TEST_CASE("first_diff", "[series][diff]") {
    CHECK(first_diff(make_series({4.0, 4.0, 4.0})).values().isZero());
    const auto d = first_diff(make_series({1.0, 3.0, 2.0}));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 2.0);
    CHECK(d[1] == -1.0);
    CHECK(d.dates().front() == business_dates(3)[1]);
    CHECK_THROWS_WITH(first_diff(make_series({1.0})), Catch::Matchers::ContainsSubstring("too short"));

    SECTION("differencing a cumulative sum recovers the increments exactly") {
        std::mt19937_64 rng(7);
        // Integer-valued increments keep the cumulative sum exact in floating point.
        std::uniform_int_distribution<int> step(-50, 50);
        std::vector<double> inc(300), level(300);
        double acc = 0.0;
        for (std::size_t i = 0; i < inc.size(); ++i) {
            inc[i] = step(rng);
            acc += inc[i];
            level[i] = acc;
        }
        const auto out = first_diff(make_series(level));
        for (std::size_t i = 1; i < inc.size(); ++i) CHECK(out[i - 1] == inc[i]);
    }

    SECTION("differenced random walks look stationary to ADF-GLS") {
        std::mt19937_64 rng(11);
        int rejected = 0;
        for (int draw = 0; draw < 500; ++draw) {
            const auto rw = make_series(random_walk(rng, 400));
            if (adf_gls(first_diff(rw), Deterministic::constant).p_value < 0.05) ++rejected;
        }
        CHECK(rejected >= 450);
    }
}

TEST_CASE("winsorize", "[series][winsorize]") {
    SECTION("values inside the band are untouched") {
        const auto s = make_series({1.0, 1.0, 1.0, 1.0});
        CHECK(winsorize(s, 95).values() == s.values());
    }
    SECTION("1..100 at 95 clips to the 2.5th and 97.5th percentile order statistics") {
        std::vector<double> v(100);
        for (int i = 0; i < 100; ++i) v[static_cast<std::size_t>(i)] = i + 1;
        const auto w = winsorize(make_series(v), 95);
        // Brute force: the lower clip is the largest value with at most 2.5% of the
        // sample strictly below it; the upper clip mirrors it from the top.
        double lo = 0, hi = 0;
        for (double x : v) {
            const auto below = std::count_if(v.begin(), v.end(), [&](double y) { return y < x; });
            const auto above = std::count_if(v.begin(), v.end(), [&](double y) { return y > x; });
            if (below <= 2.475) lo = x;
            if (above <= 2.475 && hi == 0) hi = x;
        }
        CHECK(lo == 3.0);
        CHECK(hi == 98.0);
        CHECK(w.values().minCoeff() == lo);
        CHECK(w.values().maxCoeff() == hi);
        CHECK(w.size() == 100);
        CHECK(w.dates() == make_series(v).dates());
    }
    SECTION("idempotent") {
        std::mt19937_64 rng(3);
        const auto s = make_series(gaussian(rng, 1000));
        for (double level : {95.0, 99.0}) {
            const auto once = winsorize(s, level);
            CHECK(winsorize(once, level).values() == once.values());
        }
    }
    CHECK_THROWS_AS(winsorize(make_series({1.0, 2.0}), 50), std::invalid_argument);
    CHECK_THROWS_AS(winsorize(make_series({1.0, 2.0}), 100), std::invalid_argument);
}

TEST_CASE("to_weekly keeps the last business day of each ISO week", "[series][weekly]") {
    SECTION("five days collapse to Friday") {
        // 2013-01-07 is a Monday.
        const TradingDaySeries s(business_dates(5, make_date(2013, 1, 7)), std::vector<double>{1, 2, 3, 4, 5});
        const auto w = to_weekly(s);
        REQUIRE(w.size() == 1);
        CHECK(w.dates()[0] == make_date(2013, 1, 11));
        CHECK(w[0] == 5.0);
    }
    SECTION("weekly input is unchanged") {
        std::vector<Date> d;
        for (int i = 0; i < 10; ++i) d.push_back(add_days(make_date(2013, 1, 9), 7 * i));
        const TradingDaySeries s(d, std::vector<double>(10, 1.0));
        CHECK(to_weekly(s).dates() == d);
    }
    SECTION("2008 business days give about 402 weeks") {
        const auto w = to_weekly(make_series(std::vector<double>(2008, 0.0)));
        // Wednesday start: a three-day first week, then 2005 / 5 = 401 full weeks.
        CHECK(w.size() == 402);
        for (std::size_t i = 1; i < w.size(); ++i) CHECK(w.dates()[i] > w.dates()[i - 1]);
    }
}

TEST_CASE("pacf", "[stats][pacf]") {
    std::mt19937_64 rng(5);
    SECTION("lag 1 equals the lag-1 sample autocorrelation") {
        const Eigen::VectorXd x = ar1(rng, 500, 0.3);
        const auto p = pacf(to_std(x), 5);
        const Eigen::VectorXd d = x.array() - x.mean();
        const double r1 = d.head(499).dot(d.tail(499)) / d.squaredNorm();
        CHECK_THAT(p.coefficients[0], WithinAbs(r1, 1e-14));
        CHECK(p.lags == std::vector<int>{1, 2, 3, 4, 5});
        CHECK_THAT(p.confidence_bound, WithinAbs(1.96 / std::sqrt(500.0), 1e-15));
    }
    SECTION("AR(1) with phi 0.5") {
        const auto p = pacf(to_std(ar1(rng, 5000, 0.5)), 10);
        CHECK_THAT(p.coefficients[0], WithinAbs(0.5, 0.05));
        for (int k = 1; k < 10; ++k) CHECK(std::abs(p.coefficients[k]) <= 1.0);
    }
    SECTION("white noise stays inside the band on at least 94% of lags") {
        int inside = 0, total = 0;
        for (int draw = 0; draw < 20; ++draw) {
            const auto p = pacf(to_std(gaussian(rng, 10000)), 20);
            for (int k = 0; k < 20; ++k, ++total) inside += std::abs(p.coefficients[k]) < p.confidence_bound;
        }
        CHECK(inside >= 0.94 * total);
    }
    SECTION("AR(2) partials beyond lag 2 fall inside the band at least 90% of the time") {
        int inside = 0, total = 0;
        for (int draw = 0; draw < 500; ++draw) {
            Eigen::VectorXd e = gaussian(rng, 5000);
            for (Eigen::Index i = 2; i < e.size(); ++i) e[i] += 0.5 * e[i - 1] - 0.3 * e[i - 2];
            const auto p = pacf(to_std(e), 6);
            for (int k = 2; k < 6; ++k, ++total) inside += std::abs(p.coefficients[k]) < p.confidence_bound;
        }
        CHECK(inside >= 0.90 * total);
    }
    CHECK_THROWS_AS(pacf(std::vector<double>{1, 2, 3}, 2), std::invalid_argument);
}

TEST_CASE("pearson_test", "[stats][pearson]") {
    std::mt19937_64 rng(9);
    SECTION("perfect correlation") {
        const auto x = to_std(gaussian(rng, 50));
        CHECK_THAT(pearson_test(x, x).r, WithinAbs(1.0, 1e-14));
    }
    SECTION("r = -0.16 at n = 2008 is significant at 1%") {
        // Build y with sample correlation exactly -0.16 against x.
        Eigen::VectorXd x = gaussian(rng, 2008), e = gaussian(rng, 2008);
        x = (x.array() - x.mean()).matrix().normalized();
        e = (e.array() - e.mean()).matrix();
        e = (e - e.dot(x) * x).normalized();
        const Eigen::VectorXd y = -0.16 * x + std::sqrt(1 - 0.16 * 0.16) * e;
        const auto res = pearson_test(to_std(x), to_std(y));
        CHECK_THAT(res.r, WithinAbs(-0.16, 1e-12));
        CHECK(res.p_value < 0.01);
        // t = r sqrt((n-2)/(1-r^2)) = -7.26; its two-sided normal tail is about 4e-13.
        CHECK(res.p_value < 1e-9);
    }
    SECTION("independent samples: |r| < 0.05 in at least 95% of draws and 5% size") {
        int small = 0, rejected = 0;
        const int draws = 2000;
        for (int i = 0; i < draws; ++i) {
            const auto res = pearson_test(to_std(gaussian(rng, 2000)), to_std(gaussian(rng, 2000)));
            small += std::abs(res.r) < 0.05;
            rejected += res.p_value < 0.05;
        }
        CHECK(small >= 0.95 * draws);
        CHECK(rejected >= 0.035 * draws);
        CHECK(rejected <= 0.065 * draws);
    }
    CHECK_THROWS_WITH(pearson_test(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                      Catch::Matchers::ContainsSubstring("degenerate input"));
    CHECK_THROWS_AS(pearson_test(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("describe", "[stats][describe]") {
    const auto c = describe(make_series({0.7, 0.7, 0.7}));
    CHECK(c.mean == 0.7);
    CHECK(c.std_dev == 0.0);
    const auto h = describe(make_series({0.0, 2.0}));
    CHECK(h.mean == 1.0);
    CHECK_THAT(h.std_dev, WithinAbs(std::sqrt(2.0), 1e-15));
    CHECK(h.n_obs == 2);
    CHECK_THROWS_AS(describe(make_series({1.0})), std::invalid_argument);
}

TEST_CASE("significance stars use 10/5/1% cut-offs", "[stats]") {
    CHECK(std::string(significance_stars(0.2)).empty());
    CHECK(std::string(significance_stars(0.09)) == "*");
    CHECK(std::string(significance_stars(0.04)) == "**");
    CHECK(std::string(significance_stars(0.009)) == "***");
}

TEST_CASE("series CSV round trip", "[series][csv]") {
    const auto dir = scratch_dir("series_csv");
    const auto s = make_series({0.1, -1e-17, 3.14159265358979}, "c");
    write_series_csv(dir / "c.csv", s);
    const auto back = read_series_csv(dir / "c.csv");
    CHECK(back.dates() == s.dates());
    CHECK(back.values() == s.values());
    CHECK(back.label() == "c");
}
