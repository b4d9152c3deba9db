#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "cspread/core/errors.hpp"
#include "cspread/econometrics/adf_gls.hpp"
#include "cspread/econometrics/ecm.hpp"
#include "cspread/econometrics/garch.hpp"
#include "cspread/econometrics/info_criteria.hpp"
#include "cspread/econometrics/johansen.hpp"
#include "cspread/econometrics/newey_west.hpp"
#include "cspread/econometrics/ols.hpp"
#include "support.hpp"

using namespace cspread;
using namespace cspread::testing;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Deterministic uniform draws on (-0.5, 0.5) shared with the offline
// statsmodels / arch runs that produced the reference values below.
Eigen::MatrixXd lcg_uniform(Eigen::Index n, Eigen::Index cols) {
    std::uint64_t x = 12345;
    Eigen::MatrixXd u(n, cols);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            x = 6364136223846793005ULL * x + 1442695040888963407ULL;
            u(i, j) = static_cast<double>(x >> 11) * 0x1p-53 - 0.5;
        }
    return u;
}

// (C, Z, r) = (1.21 Z + 0.4 r + u3, cumsum u1, cumsum u2) on the LCG draws.
Eigen::MatrixXd lcg_triple() {
    const Eigen::MatrixXd u = lcg_uniform(300, 3);
    Eigen::MatrixXd x(300, 3);
    double z = 0.0, r = 0.0;
    for (Eigen::Index i = 0; i < 300; ++i) {
        z += u(i, 0);
        r += u(i, 1);
        x.row(i) << 1.21 * z + 0.4 * r + u(i, 2), z, r;
    }
    return x;
}

Eigen::MatrixXd white_sandwich(const Eigen::MatrixXd& X, const Eigen::VectorXd& e) {
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(X.cols(), X.cols());
    for (Eigen::Index t = 0; t < X.rows(); ++t) meat += e[t] * e[t] * X.row(t).transpose() * X.row(t);
    const Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    return bread * meat * bread;
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x) {
    Eigen::MatrixXd X(x.rows(), x.cols() + 1);
    X << Eigen::VectorXd::Ones(x.rows()), x;
    return X;
}

double two_sided_ok(const EcmFit& f, std::string_view name, double truth) {
    const auto i = f.index_of(name);
    return std::abs(f.coefficients[i] - truth) <= 2.0 * f.hac_std_errors[i];
}

}  // namespace

TEST_CASE("ols_fit", "[econometrics][ols]") {
    std::mt19937_64 rng(1);
    SECTION("exact linear response") {
        const Eigen::MatrixXd X = with_intercept(Eigen::MatrixXd::Random(50, 3));
        const Eigen::Vector4d b(0.5, -2.0, 3.0, 1e-3);
        const auto f = ols_fit(X, X * b);
        CHECK(f.residuals.cwiseAbs().maxCoeff() < 1e-10);
        CHECK((f.coefficients - b).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("intercept-only regression gives the mean") {
        const Eigen::VectorXd y = gaussian(rng, 137);
        const auto f = ols_fit(Eigen::MatrixXd::Ones(137, 1), y);
        CHECK_THAT(f.coefficients[0], WithinAbs(y.mean(), 1e-14));
    }
    SECTION("200 x 5 system against the normal equations") {
        const Eigen::MatrixXd X = with_intercept(Eigen::MatrixXd::NullaryExpr(200, 4, [&] { return gaussian(rng, 1)[0]; }));
        const Eigen::VectorXd y = gaussian(rng, 200);
        const auto f = ols_fit(X, y);
        const Eigen::VectorXd brute = (X.transpose() * X).inverse() * (X.transpose() * y);
        CHECK((f.coefficients - brute).cwiseAbs().maxCoeff() < 1e-8);
        CHECK_THAT(f.rss, WithinRel((y - X * brute).squaredNorm(), 1e-10));
    }
    SECTION("rank deficiency names the collinear column") {
        Eigen::MatrixXd X = with_intercept(Eigen::MatrixXd::Random(40, 3));
        X.col(3) = 2.0 * X.col(1) - X.col(2);
        const std::vector<std::string> names{"const", "a", "b", "c"};
        CHECK_THROWS_AS(ols_fit(X, Eigen::VectorXd::Ones(40), names), NumericalError);
        CHECK_THROWS_WITH(ols_fit(X, Eigen::VectorXd::Ones(40), names), ContainsSubstring("'c'"));
    }
    SECTION("shape errors") {
        CHECK_THROWS_AS(ols_fit(Eigen::MatrixXd::Ones(3, 4), Eigen::VectorXd::Ones(3)), std::invalid_argument);
        CHECK_THROWS_AS(ols_fit(Eigen::MatrixXd::Ones(5, 1), Eigen::VectorXd::Ones(4)), std::invalid_argument);
    }
}

TEST_CASE("newey_west_cov", "[econometrics][hac]") {
    std::mt19937_64 rng(2);
    SECTION("bandwidth 0 equals the White sandwich and every bandwidth is PSD") {
        for (int draw = 0; draw < 100; ++draw) {
            const Eigen::MatrixXd X = with_intercept(Eigen::MatrixXd::NullaryExpr(120, 3, [&] { return gaussian(rng, 1)[0]; }));
            Eigen::VectorXd e = gaussian(rng, 120);
            e.array() *= X.col(1).array().abs() + 0.1;
            const Eigen::MatrixXd w = white_sandwich(X, e);
            CHECK((newey_west_cov(X, e, 0) - w).cwiseAbs().maxCoeff() < 1e-12 * w.cwiseAbs().maxCoeff());
            for (int L : {0, 1, 4, 12, 60}) {
                const Eigen::MatrixXd v = newey_west_cov(X, e, L);
                CHECK((v - v.transpose()).cwiseAbs().maxCoeff() == 0.0);
                CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(v).eigenvalues().minCoeff() >= -1e-10);
            }
        }
    }
    SECTION("i.i.d. residuals: HAC within 10% of classical at n = 5000") {
        const Eigen::MatrixXd X = with_intercept(gaussian(rng, 5000));
        const Eigen::VectorXd y = X * Eigen::Vector2d(1.0, 0.5) + gaussian(rng, 5000);
        const auto f = ols_fit(X, y);
        const Eigen::VectorXd hac = newey_west_cov(X, f.residuals, newey_west_bandwidth(5000)).diagonal().cwiseSqrt();
        const Eigen::VectorXd cls = classical_ols_cov(X, f.residuals).diagonal().cwiseSqrt();
        for (int j = 0; j < 2; ++j) CHECK_THAT(hac[j], WithinRel(cls[j], 0.10));
    }
    SECTION("AR(1) residuals inflate the intercept error in >= 95% of draws") {
        int larger = 0;
        for (int draw = 0; draw < 200; ++draw) {
            const Eigen::MatrixXd X = with_intercept(gaussian(rng, 1000));
            const Eigen::VectorXd y = ar1(rng, 1000, 0.5);
            const auto f = ols_fit(X, y);
            const double hac = newey_west_cov(X, f.residuals, newey_west_bandwidth(1000))(0, 0);
            if (hac > classical_ols_cov(X, f.residuals)(0, 0)) ++larger;
        }
        CHECK(larger >= 190);
    }
    SECTION("automatic bandwidth") {
        CHECK(newey_west_bandwidth(100) == 4);
        CHECK(newey_west_bandwidth(2000) == 7);
        CHECK_THROWS_AS(newey_west_cov(Eigen::MatrixXd::Ones(3, 1), Eigen::VectorXd::Ones(3), -1), std::invalid_argument);
    }
}

TEST_CASE("adf_gls matches the arch package on fixed lags", "[econometrics][adf]") {
    const Eigen::MatrixXd u = lcg_uniform(300, 3);
    std::vector<double> walk(300), noise(300);
    double z = 0.0;
    for (int i = 0; i < 300; ++i) {
        z += u(i, 0);
        walk[static_cast<std::size_t>(i)] = z;
        noise[static_cast<std::size_t>(i)] = u(i, 2);
    }
    CHECK_THAT(adf_gls(walk, Deterministic::constant, 0, LagRule::fixed).statistic, WithinAbs(-1.5884990351939767, 1e-9));
    CHECK_THAT(adf_gls(walk, Deterministic::constant, 2, LagRule::fixed).statistic, WithinAbs(-1.5642191125151168, 1e-9));
    CHECK_THAT(adf_gls(walk, Deterministic::trend, 3, LagRule::fixed).statistic, WithinAbs(-1.7282716198674897, 1e-9));
    CHECK_THAT(adf_gls(noise, Deterministic::constant, 1, LagRule::fixed).statistic, WithinAbs(-5.235767484877627, 1e-9));
}

TEST_CASE("adf_gls size and power", "[econometrics][adf][montecarlo]") {
    std::mt19937_64 rng(3);
    int accepted = 0, rejected = 0;
    for (int draw = 0; draw < 500; ++draw) {
        if (adf_gls(to_std(random_walk(rng, 2000)), Deterministic::constant).p_value >= 0.05) ++accepted;
        if (adf_gls(to_std(gaussian(rng, 2000)), Deterministic::constant).p_value < 0.05) ++rejected;
    }
    CHECK(accepted >= 450);
    CHECK(rejected >= 475);
}

TEST_CASE("adf_gls p-values and invariance", "[econometrics][adf]") {
    CHECK_THAT(dfgls_p_value(-0.58, Deterministic::constant), WithinAbs(0.48, 0.02));
    CHECK(dfgls_p_value(-7.30, Deterministic::constant) == 0.001);
    CHECK(dfgls_p_value(5.0, Deterministic::trend) == 0.999);
    CHECK_THAT(dfgls_critical_value(0.05, Deterministic::constant), WithinAbs(-1.95, 0.01));
    CHECK(dfgls_critical_value(0.05, Deterministic::trend) < dfgls_critical_value(0.05, Deterministic::constant));

    std::mt19937_64 rng(4);
    for (int draw = 0; draw < 20; ++draw) {
        const Eigen::VectorXd y = ar1(rng, 400, 0.9);
        const Eigen::VectorXd t = (3.7 + 0.02 * y.array()).matrix();
        const auto a = adf_gls(to_std(y), Deterministic::constant);
        const auto b = adf_gls(to_std(t), Deterministic::constant);
        CHECK(a.lags_used == b.lags_used);
        CHECK_THAT(b.statistic, WithinAbs(a.statistic, 1e-8));
    }

    const auto r = adf_gls(make_series(ar1(rng, 500, 0.5)), Deterministic::trend);
    CHECK(r.deterministic == Deterministic::trend);
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
    CHECK(r.lags_used <= schwert_max_lag(500));
    CHECK(schwert_max_lag(2000) == 25);
    CHECK_THROWS_AS(adf_gls(to_std(gaussian(rng, 29)), Deterministic::constant), std::invalid_argument);
    CHECK_THROWS_AS(parse_deterministic("drift"), std::invalid_argument);
}

TEST_CASE("johansen matches statsmodels coint_johansen", "[econometrics][johansen]") {
    // statsmodels coint_johansen(x, det_order=-1, k_ar_diff=2).
    const auto j = johansen(lcg_triple(), 3);
    const Eigen::Vector3d eig(0.2462055708, 0.0345146000, 0.0035995415);
    const Eigen::Vector3d trace(95.44567909, 11.50290931, 1.07099253);
    const Eigen::Vector3d eigstat(83.94276978, 10.43191678, 1.07099253);
    CHECK((j.eigenvalues - eig).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((j.trace_stats - trace).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((j.eigen_stats - eigstat).cwiseAbs().maxCoeff() < 1e-6);
    CHECK_THAT(j.vectors(1, 0), WithinAbs(-1.21545277, 1e-7));
    CHECK_THAT(j.vectors(2, 0), WithinAbs(-0.40295167, 1e-7));
    CHECK(j.selected_rank == 1);
    CHECK(j.n_obs == 297);
}

TEST_CASE("johansen critical values reproduce the published grid", "[econometrics][johansen]") {
    auto r1 = [](double x) { return std::round(x * 10.0) / 10.0; };
    const auto t3 = johansen_trace_critical(3), t2 = johansen_trace_critical(2), t1 = johansen_trace_critical(1);
    const auto e3 = johansen_eigen_critical(3), e2 = johansen_eigen_critical(2), e1 = johansen_eigen_critical(1);
    CHECK(r1(t3[0]) == 21.8);
    CHECK(r1(t3[1]) == 24.3);
    CHECK(r1(t3[2]) == 29.5);
    CHECK(r1(e3[0]) == 15.7);
    CHECK(r1(e3[1]) == 17.8);
    CHECK(r1(e3[2]) == 22.3);
    // The published 90% trace value for q <= 1 reads 9.1; the tabulated
    // quantile is 10.47 and the eigenvalue column of the same row is 9.5.
    CHECK(r1(t2[0]) == 10.5);
    CHECK(r1(t2[1]) == 12.3);
    CHECK(r1(t2[2]) == 16.4);
    CHECK(r1(e2[0]) == 9.5);
    CHECK(r1(e2[1]) == 11.2);
    CHECK(r1(e2[2]) == 15.1);
    for (const auto& row : {t1, e1}) {
        CHECK(r1(row[0]) == 3.0);
        CHECK(r1(row[1]) == 4.1);
        CHECK(r1(row[2]) == 6.9);
    }
    CHECK_THROWS_AS(johansen_trace_critical(7), std::invalid_argument);
}

TEST_CASE("johansen statistics reconcile", "[econometrics][johansen]") {
    std::mt19937_64 rng(5);
    for (int draw = 0; draw < 20; ++draw) {
        const auto j = johansen(cointegrated_triple(rng, 500), 2);
        const double n = static_cast<double>(j.n_obs);
        CHECK_THAT(j.trace_stats[0], WithinRel(-n * (1.0 - j.eigenvalues.array()).log().sum(), 1e-12));
        for (int q = 0; q < 2; ++q) {
            CHECK_THAT(j.trace_stats[q] - j.trace_stats[q + 1], WithinAbs(j.eigen_stats[q], 1e-9));
            CHECK(j.trace_stats[q] >= j.trace_stats[q + 1]);
            CHECK(j.eigenvalues[q] >= j.eigenvalues[q + 1]);
        }
        CHECK(j.trace_stats[2] == j.eigen_stats[2]);
        CHECK(j.eigenvalues.minCoeff() > 0.0);
        CHECK(j.eigenvalues.maxCoeff() < 1.0);
        CHECK((j.vectors.row(0).array() == 1.0).all());
        CHECK(j.trace_critical(0, 1) == johansen_trace_critical(3)[1]);
    }
}

TEST_CASE("johansen vectors are invariant to column scaling", "[econometrics][johansen]") {
    std::mt19937_64 rng(6);
    const Eigen::MatrixXd x = cointegrated_triple(rng, 800);
    const Eigen::Vector3d scale(100.0, 0.5, 3.0);
    const auto a = johansen(x, 2), b = johansen(x * scale.asDiagonal(), 2);
    CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 1; i < 3; ++i) CHECK_THAT(b.vectors(i, 0) * scale[i] / scale[0], WithinAbs(a.vectors(i, 0), 1e-8));
}

TEST_CASE("johansen rank recovery", "[econometrics][johansen][montecarlo]") {
    std::mt19937_64 rng(7);
    SECTION("one cointegration vector at n = 2000") {
        int ok = 0;
        for (int draw = 0; draw < 100; ++draw) {
            const Eigen::MatrixXd x = cointegrated_triple(rng, 2000);
            const auto j = johansen(x, select_var_lag_bic(x));
            const Eigen::VectorXd v = j.leading_vector();
            if (j.selected_rank == 1 && std::abs(v[1] + 1.21) < 0.05 && std::abs(v[2] + 0.40) < 0.05) ++ok;
        }
        CHECK(ok >= 90);
    }
    SECTION("independent random walks give rank 0") {
        int zero = 0;
        for (int draw = 0; draw < 500; ++draw) {
            Eigen::MatrixXd x(500, 3);
            for (int c = 0; c < 3; ++c) x.col(c) = random_walk(rng, 500);
            if (johansen(x, 1).selected_rank == 0) ++zero;
        }
        CHECK(zero >= 450);
    }
    SECTION("BIC picks the generating VAR order") {
        Eigen::MatrixXd x(1500, 2);
        const Eigen::VectorXd e1 = gaussian(rng, 1500), e2 = gaussian(rng, 1500);
        x.row(0).setZero();
        x.row(1).setZero();
        for (int t = 2; t < 1500; ++t) {
            // Differences follow a VAR(1), so the levels VAR has order 2.
            const Eigen::Vector2d d = x.row(t - 1) - x.row(t - 2);
            x(t, 0) = x(t - 1, 0) + 0.6 * d[0] + e1[t];
            x(t, 1) = x(t - 1, 1) - 0.5 * d[1] + e2[t];
        }
        CHECK(select_var_lag_bic(x) == 2);
    }
    SECTION("input errors") {
        CHECK_THROWS_AS(johansen(Eigen::MatrixXd::Random(100, 1), 1), std::invalid_argument);
        CHECK_THROWS_AS(johansen(Eigen::MatrixXd::Random(29, 3), 3), std::invalid_argument);
        Eigen::MatrixXd x = cointegrated_triple(rng, 200);
        x.col(2) = x.col(1);
        CHECK_THROWS_AS(johansen(x, 1), NumericalError);
    }
}

TEST_CASE("fit_ecm structure", "[econometrics][ecm]") {
    std::mt19937_64 rng(8);
    const auto s = ecm_sample(rng, 400, {-0.33, -0.28, -0.12}, -0.02, true);
    const auto f2 = fit_ecm(s.inputs, 3, EcmVariant::II);
    CHECK(f2.names == std::vector<std::string>{"dC(-1)", "dC(-2)", "dC(-3)", "dZ", "dr", "psi(-1)", "const"});
    CHECK(f2.n_obs == 399 - 3);
    CHECK(f2.coefficients.size() == 7);
    CHECK(f2.hac_std_errors.size() == 7);
    CHECK((f2.hac_std_errors.array() > 0.0).all());
    CHECK(f2.residuals.size() == static_cast<std::size_t>(f2.n_obs));
    CHECK(f2.bandwidth == newey_west_bandwidth(f2.n_obs));
    const auto ic = info_criteria(f2.log_likelihood, 7, f2.n_obs);
    CHECK_THAT(f2.aic, WithinAbs(ic.aic, 1e-9));
    CHECK_THAT(f2.bic, WithinAbs(ic.bic, 1e-9));

    const auto f6 = fit_ecm(s.inputs, 3, EcmVariant::VI);
    CHECK(f6.names.size() == 11);
    CHECK(f6.index_of("sigma") == 9);
    // Variants without lags still drop the first observations so all share one sample.
    CHECK(fit_ecm(s.inputs, 3, EcmVariant::III).n_obs == f2.n_obs);
    CHECK(fit_ecm(s.inputs, 0, EcmVariant::II).n_obs == 399 - 1);

    EcmInputs shifted = s.inputs;
    shifted.dZ = s.inputs.dZ.slice(s.inputs.dZ.dates()[1], s.inputs.dZ.dates().back());
    CHECK_THROWS_AS(fit_ecm(shifted, 3, EcmVariant::II), DataError);
    CHECK_THROWS_WITH(fit_ecm(shifted, 3, EcmVariant::II), ContainsSubstring("misaligned"));
    EcmInputs bare = s.inputs;
    bare.controls.reset();
    CHECK_THROWS_AS(fit_ecm(bare, 3, EcmVariant::V), DataError);
    CHECK_THROWS_AS(fit_ecm(s.inputs, -1, EcmVariant::I), std::invalid_argument);

    EcmInputs zero = s.inputs;
    zero.psi_lagged = TradingDaySeries(zero.dC.dates(), Eigen::VectorXd::Zero(399), "psi");
    CHECK_THROWS_WITH(fit_ecm(zero, 3, EcmVariant::I), ContainsSubstring("psi(-1)"));
}

TEST_CASE("fit_ecm recovery and selection", "[econometrics][ecm][montecarlo]") {
    std::mt19937_64 rng(9);
    SECTION("model I coefficients within 2 HAC standard errors") {
        std::array<int, 5> hits{};
        for (int draw = 0; draw < 100; ++draw) {
            const auto s = ecm_sample(rng, 2008, {-0.33, -0.28, -0.12}, -0.02);
            const auto f = fit_ecm(s.inputs, 3, EcmVariant::I);
            hits[0] += two_sided_ok(f, "dC(-1)", -0.33);
            hits[1] += two_sided_ok(f, "dC(-2)", -0.28);
            hits[2] += two_sided_ok(f, "dC(-3)", -0.12);
            hits[3] += two_sided_ok(f, "psi(-1)", -0.02);
            hits[4] += two_sided_ok(f, "const", 0.0);
        }
        for (int h : hits) CHECK(h >= 90);
    }
    SECTION("no dynamics: each coefficient insignificant in >= 90% of draws") {
        std::array<int, 5> quiet{};
        for (int draw = 0; draw < 200; ++draw) {
            auto s = ecm_sample(rng, 1000, {0.0, 0.0, 0.0}, 0.0);
            s.inputs.psi_lagged = TradingDaySeries(s.inputs.dC.dates(), gaussian(rng, 999), "psi");
            const auto f = fit_ecm(s.inputs, 3, EcmVariant::I);
            for (int i = 0; i < 5; ++i) quiet[static_cast<std::size_t>(i)] += f.p_values[i] >= 0.05;
        }
        for (int q : quiet) CHECK(q >= 180);
    }
    SECTION("BIC prefers model I over VI when controls are irrelevant") {
        int wins = 0;
        for (int draw = 0; draw < 100; ++draw) {
            const auto s = ecm_sample(rng, 2008, {-0.33, -0.28, -0.12}, -0.02, true);
            if (fit_ecm(s.inputs, 3, EcmVariant::I).bic < fit_ecm(s.inputs, 3, EcmVariant::VI).bic) ++wins;
        }
        CHECK(wins >= 85);
    }
}

TEST_CASE("ecm helpers", "[econometrics][ecm]") {
    const auto c = make_series({1.0, 2.0, 3.5}, "C"), z = make_series({0.5, 1.0, 2.0}, "Z"), r = make_series({0.1, 0.0, -0.1}, "r");
    const auto psi = cointegration_residual(c, z, r, 1.2, 0.4);
    CHECK_THAT(psi.values()[2], WithinAbs(3.5 - 2.4 + 0.04, 1e-15));
    const auto lagged = lag_one(psi);
    CHECK(lagged.size() == 2);
    CHECK(lagged.dates().front() == psi.dates()[1]);
    CHECK(lagged.values()[1] == psi.values()[1]);
    CHECK(parse_ecm_variant("IV") == EcmVariant::IV);
    CHECK(to_string(EcmVariant::VI) == "VI");
    CHECK_THROWS_AS(parse_ecm_variant("VII"), std::invalid_argument);
    CHECK(!regressors_for(EcmVariant::II).uses_controls());
    CHECK(regressors_for(EcmVariant::III).wti);
}

TEST_CASE("garch11_fit", "[econometrics][garch][montecarlo]") {
    std::mt19937_64 rng(10);
    SECTION("recovers (1e-6, 0.08, 0.90) within 3 standard errors") {
        int ok = 0;
        for (int draw = 0; draw < 50; ++draw) {
            const auto x = garch_returns(rng, 4000, 1e-6, 0.08, 0.90);
            const auto f = garch11_fit(x);
            CHECK(f.alpha + f.beta < 1.0);
            CHECK(f.log_likelihood >= f.initial_log_likelihood);
            CHECK(f.conditional_vol.values().minCoeff() > 0.0);
            const Eigen::Vector3d est(f.omega, f.alpha, f.beta), truth(1e-6, 0.08, 0.90);
            if (((est - truth).array().abs() <= 3.0 * f.std_errors.array()).all()) ++ok;
        }
        CHECK(ok >= 45);
    }
    SECTION("i.i.d. returns: unconditional variance near the sample variance") {
        for (int draw = 0; draw < 10; ++draw) {
            const auto x = make_series(gaussian(rng, 2000, 0.01));
            const auto f = garch11_fit(x);
            const Eigen::VectorXd v = x.values();
            const double sample = (v.array() - v.mean()).square().mean();
            CHECK_THAT(f.omega / (1.0 - f.alpha - f.beta), WithinRel(sample, 0.10));
            CHECK(f.conditional_vol.dates() == x.dates());
        }
    }
    SECTION("likelihood and errors") {
        const Eigen::VectorXd e = gaussian(rng, 300);
        Eigen::VectorXd h;
        const double ll = garch11_log_likelihood(e, 0.1, 0.05, 0.85, &h);
        CHECK(h.size() == 300);
        CHECK(h.minCoeff() > 0.0);
        CHECK_THAT(h[0], WithinRel(e.squaredNorm() / 300.0, 1e-12));
        double brute = 0.0;
        for (int t = 0; t < 300; ++t) brute += -0.5 * (std::log(2.0 * std::numbers::pi * h[t]) + e[t] * e[t] / h[t]);
        CHECK_THAT(ll, WithinRel(brute, 1e-12));
        CHECK_THROWS_AS(garch11_fit(make_series(gaussian(rng, 249))), std::invalid_argument);
        CHECK_THROWS_AS(garch11_fit(make_series(std::vector<double>(300, 0.01))), DataError);
    }
}

TEST_CASE("info_criteria", "[econometrics][ic]") {
    const auto none = info_criteria(-12.5, 0, 40);
    CHECK(none.aic == 25.0);
    CHECK(none.bic == 25.0);
    // ln(n) = 2 needs n = e^2; with integer n the BIC penalty is k ln(n).
    const auto two = info_criteria(0.0, 2, 7);
    CHECK(two.aic == 4.0);
    CHECK_THAT(two.bic, WithinAbs(2.0 * std::log(7.0), 1e-15));
    CHECK_THAT(2.0 * std::log(std::exp(2.0)), WithinAbs(4.0, 1e-15));
    CHECK_THROWS_AS(info_criteria(0.0, 5, 5), std::invalid_argument);

    std::mt19937_64 rng(11);
    int raised = 0;
    for (int draw = 0; draw < 500; ++draw) {
        const Eigen::MatrixXd X = with_intercept(gaussian(rng, 300));
        const Eigen::VectorXd y = X * Eigen::Vector2d(0.1, 1.0) + gaussian(rng, 300);
        Eigen::MatrixXd Xb(300, 3);
        Xb << X, gaussian(rng, 300);
        const double small = info_criteria(gaussian_log_likelihood(ols_fit(X, y).rss, 300), 2, 300).bic;
        const double big = info_criteria(gaussian_log_likelihood(ols_fit(Xb, y).rss, 300), 3, 300).bic;
        if (big > small) ++raised;
    }
    CHECK(raised >= 425);
}
