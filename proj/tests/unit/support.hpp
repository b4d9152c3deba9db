#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

#include "cspread/core/date.hpp"
#include "cspread/core/series.hpp"
#include "cspread/econometrics/ecm.hpp"
#include "cspread/pipeline/simulate.hpp"

namespace cspread::testing {

inline std::vector<Date> business_dates(std::size_t n, Date start = make_date(2013, 1, 2)) {
    return BusinessCalendar{}.business_days(start, n);
}

inline TradingDaySeries make_series(const std::vector<double>& values, std::string label = "x",
                                    Date start = make_date(2013, 1, 2)) {
    return TradingDaySeries(business_dates(values.size(), start), values, std::move(label));
}

inline TradingDaySeries make_series(std::initializer_list<double> values, std::string label = "x") {
    return make_series(std::vector<double>(values), std::move(label));
}

inline TradingDaySeries make_series(const Eigen::VectorXd& values, std::string label = "x",
                                    Date start = make_date(2013, 1, 2)) {
    return TradingDaySeries(business_dates(static_cast<std::size_t>(values.size()), start), values, std::move(label));
}

inline Eigen::VectorXd gaussian(std::mt19937_64& rng, Eigen::Index n, double sd = 1.0) {
    std::normal_distribution<double> g(0.0, sd);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
    return v;
}

inline Eigen::VectorXd random_walk(std::mt19937_64& rng, Eigen::Index n, double sd = 1.0) {
    Eigen::VectorXd e = gaussian(rng, n, sd);
    for (Eigen::Index i = 1; i < n; ++i) e[i] += e[i - 1];
    return e;
}

inline Eigen::VectorXd ar1(std::mt19937_64& rng, Eigen::Index n, double phi, double sd = 1.0) {
    Eigen::VectorXd e = gaussian(rng, n, sd);
    for (Eigen::Index i = 1; i < n; ++i) e[i] += phi * e[i - 1];
    return e;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Levels C = 1.21 Z + 0.40 r + psi with Z, r independent random walks from
// zero and psi an AR(1) with coefficient phi. Columns are (C, Z, r).
inline Eigen::MatrixXd cointegrated_triple(std::mt19937_64& rng, Eigen::Index n, double phi = 0.5) {
    Eigen::MatrixXd x(n, 3);
    x.col(1) = random_walk(rng, n);
    x.col(2) = random_walk(rng, n);
    x.col(0) = 1.21 * x.col(1) + 0.40 * x.col(2) + ar1(rng, n, phi);
    return x;
}

struct EcmSample {
    TradingDaySeries c, z, r;
    EcmInputs inputs;
};

// dC_t = sum b_i dC_{t-i} + a3 psi_{t-1} + e_t with psi = C - 1.21 Z - 0.40 r,
// Z and r random walks. With `controls` four N(0,1) series that play no part
// in the generating process are attached.
inline EcmSample ecm_sample(std::mt19937_64& rng, Eigen::Index n, std::array<double, 3> beta, double a3,
                            bool controls = false) {
    const Eigen::VectorXd z = random_walk(rng, n), r = random_walk(rng, n), e = gaussian(rng, n);
    Eigen::VectorXd c(n), dc = Eigen::VectorXd::Zero(n);
    c[0] = 1.21 * z[0] + 0.40 * r[0];
    for (Eigen::Index t = 1; t < n; ++t) {
        double step = a3 * (c[t - 1] - 1.21 * z[t - 1] - 0.40 * r[t - 1]) + e[t];
        for (Eigen::Index i = 1; i <= 3 && t - i >= 1; ++i) step += beta[static_cast<std::size_t>(i - 1)] * dc[t - i];
        dc[t] = step;
        c[t] = c[t - 1] + step;
    }
    EcmSample s{make_series(c, "C"), make_series(z, "Z"), make_series(r, "r"), {}};
    s.inputs.dC = first_diff(s.c);
    s.inputs.dZ = first_diff(s.z);
    s.inputs.dr = first_diff(s.r);
    s.inputs.psi_lagged = lag_one(cointegration_residual(s.c, s.z, s.r, 1.21, 0.40));
    if (controls) {
        const auto& d = s.inputs.dC.dates();
        const auto m = static_cast<Eigen::Index>(d.size());
        s.inputs.controls = ControlSet{TradingDaySeries(d, gaussian(rng, m), "spx"),
                                       TradingDaySeries(d, gaussian(rng, m), "vix"),
                                       TradingDaySeries(d, gaussian(rng, m), "wti"),
                                       TradingDaySeries(d, gaussian(rng, m), "sigma")};
    }
    return s;
}

// GARCH(1,1) returns started from the unconditional variance after a burn-in.
inline TradingDaySeries garch_returns(std::mt19937_64& rng, Eigen::Index n, double omega, double alpha, double beta) {
    const Eigen::Index burn = 500;
    const Eigen::VectorXd z = gaussian(rng, n + burn);
    Eigen::VectorXd x(n);
    double h = omega / (1.0 - alpha - beta), prev = 0.0;
    for (Eigen::Index t = 0; t < n + burn; ++t) {
        if (t > 0) h = omega + alpha * prev * prev + beta * h;
        prev = std::sqrt(h) * z[t];
        if (t >= burn) x[t - burn] = prev;
    }
    return make_series(x, "ret");
}

// Fresh empty directory under the system temp path, removed at process exit.
inline std::filesystem::path scratch_dir(const std::string& name) {
    struct Registry {
        std::vector<std::filesystem::path> paths;
        ~Registry() {
            std::error_code ec;
            for (const auto& p : paths) std::filesystem::remove_all(p, ec);
        }
    };
    static Registry registry;
    const auto p = std::filesystem::temp_directory_path() /
                   ("cspread_" + name + "_" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    registry.paths.push_back(p);
    return p;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every regular file below `dir`, keyed by relative path.
inline std::map<std::string, std::string> read_tree(const std::filesystem::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
        if (e.is_regular_file()) out[std::filesystem::relative(e.path(), dir).generic_string()] = read_file(e.path());
    return out;
}

// Largest |a - b| over the dates of `a`; +inf when a date is missing from `b`.
inline double max_abs_diff(const TradingDaySeries& a, const TradingDaySeries& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto v = b.at(a.dates()[i]);
        if (!v) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::abs(a.values()[static_cast<Eigen::Index>(i)] - *v));
    }
    return worst;
}

}  // namespace cspread::testing
