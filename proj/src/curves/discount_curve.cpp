#include "cspread/curves/discount_curve.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "cspread/core/errors.hpp"

namespace cspread {

Tenor Tenor::parse(std::string_view token) {
    if (token.size() < 2) throw std::invalid_argument("invalid tenor '" + std::string(token) + "'");
    Tenor t;
    const auto digits = token.substr(0, token.size() - 1);
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), t.count);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || t.count <= 0) {
        throw std::invalid_argument("invalid tenor '" + std::string(token) + "'");
    }
    switch (token.back()) {
        case 'D': case 'd': t.unit = Unit::day; break;
        case 'W': case 'w': t.unit = Unit::week; break;
        case 'M': case 'm': t.unit = Unit::month; break;
        case 'Y': case 'y': t.unit = Unit::year; break;
        default: throw std::invalid_argument("invalid tenor unit in '" + std::string(token) + "'");
    }
    return t;
}

std::string Tenor::to_string() const {
    static constexpr char units[] = {'D', 'W', 'M', 'Y'};
    return std::to_string(count) + units[static_cast<int>(unit)];
}

Date Tenor::advance(Date from) const {
    switch (unit) {
        case Unit::day: return add_days(from, count);
        case Unit::week: return add_days(from, 7 * count);
        case Unit::month: return add_months(from, count);
        case Unit::year: return add_months(from, 12 * count);
    }
    return from;
}

DiscountCurve::DiscountCurve(Date value_date, std::vector<Date> pillar_dates, std::vector<double> discount_factors)
    : value_date_(value_date), dates_(std::move(pillar_dates)), dfs_(std::move(discount_factors)) {
    if (dates_.size() != dfs_.size()) throw std::invalid_argument("DiscountCurve: size mismatch");
    Date prev = value_date_;
    for (std::size_t i = 0; i < dates_.size(); ++i) {
        if (dates_[i] <= prev) throw std::invalid_argument("DiscountCurve: pillar dates must increase after value date");
        if (!(dfs_[i] > 0.0) || !std::isfinite(dfs_[i])) {
            throw std::invalid_argument("DiscountCurve: non-positive discount factor at " + format_date(dates_[i]));
        }
        prev = dates_[i];
        times_.push_back(act365(value_date_, dates_[i]));
        log_dfs_.push_back(std::log(dfs_[i]));
    }
}

double DiscountCurve::discount(Date d) const {
    if (d < value_date_) {
        throw std::invalid_argument("discount: date " + format_date(d) + " before value date " +
                                    format_date(value_date_));
    }
    if (d == value_date_ || dates_.empty()) return 1.0;
    const auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    const auto i = static_cast<std::size_t>(it - dates_.begin());
    if (it != dates_.end() && *it == d) return dfs_[i];
    const double t = act365(value_date_, d);
    if (it == dates_.end()) {
        // flat zero rate beyond the last pillar
        return std::exp(log_dfs_.back() * t / times_.back());
    }
    const double t0 = i == 0 ? 0.0 : times_[i - 1];
    const double l0 = i == 0 ? 0.0 : log_dfs_[i - 1];
    const double w = (t - t0) / (times_[i] - t0);
    return std::exp(l0 + w * (log_dfs_[i] - l0));
}

double DiscountCurve::zero_rate(Date t, Date T) const {
    if (T <= t) throw std::invalid_argument("zero_rate: end date must be after start date");
    return -std::log(discount(T) / discount(t)) / act365(t, T);
}

bool is_single_payment(const Tenor& tenor, Date value_date) {
    return tenor.advance(value_date) <= add_months(value_date, 12);
}

std::vector<Date> fixed_leg_dates(Date value_date, Date maturity) {
    std::vector<Date> out;
    for (int k = 0;; ++k) {
        const Date d = add_months(maturity, -12 * k);
        if (d <= value_date) break;
        out.push_back(d);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

double ois_par_rate(const DiscountCurve& curve, const Tenor& tenor) {
    const Date v = curve.value_date();
    const Date maturity = tenor.advance(v);
    if (is_single_payment(tenor, v)) {
        return (1.0 / curve.discount(maturity) - 1.0) / act360(v, maturity);
    }
    double annuity = 0.0;
    Date start = v;
    for (Date pay : fixed_leg_dates(v, maturity)) {
        annuity += act360(start, pay) * curve.discount(pay);
        start = pay;
    }
    return (1.0 - curve.discount(maturity)) / annuity;
}

namespace {

[[noreturn]] void no_solution(const OisQuote& q) {
    throw DataError("bootstrap_ois: no positive discount factor solves the " + q.tenor.to_string() +
                    " quote (rate " + std::to_string(q.par_rate) + ")");
}

double solve_swap_pillar(const OisQuote& q, Date v, Date maturity, const std::vector<Date>& dates,
                         const std::vector<double>& dfs) {
    const DiscountCurve known(v, dates, dfs);
    const Date last = dates.empty() ? v : dates.back();
    const double t_last = act365(v, last);
    const double log_last = dates.empty() ? 0.0 : std::log(dfs.back());
    const double t_mat = act365(v, maturity);

    double known_annuity = 0.0;
    std::vector<std::pair<double, double>> gap;  // (accrual, interpolation weight)
    double tau_final = 0.0;
    Date start = v;
    for (Date pay : fixed_leg_dates(v, maturity)) {
        const double tau = act360(start, pay);
        if (pay == maturity) {
            tau_final = tau;
        } else if (pay <= last) {
            known_annuity += tau * known.discount(pay);
        } else {
            gap.emplace_back(tau, (act365(v, pay) - t_last) / (t_mat - t_last));
        }
        start = pay;
    }

    if (gap.empty()) {
        const double denom = 1.0 + q.par_rate * tau_final;
        const double num = 1.0 - q.par_rate * known_annuity;
        if (!(denom > 0.0) || !(num > 0.0)) no_solution(q);
        return num / denom;
    }

    // Par condition as a function of x = ln DF(maturity).
    const auto par_gap = [&](double x) {
        double annuity = known_annuity + tau_final * std::exp(x);
        for (const auto& [tau, w] : gap) annuity += tau * std::exp(log_last + w * (x - log_last));
        return q.par_rate * annuity + std::exp(x) - 1.0;
    };
    double lo = -30.0;
    double hi = 3.0;
    if (par_gap(lo) * par_gap(hi) > 0.0) no_solution(q);
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(par_gap, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                          max_iter);
    return std::exp(0.5 * (a + b));
}

}  // namespace

DiscountCurve bootstrap_ois(std::span<const OisQuote> quotes, Date value_date) {
    if (quotes.empty()) throw DataError("bootstrap_ois: no quotes for " + format_date(value_date));
    std::vector<Date> dates;
    std::vector<double> dfs;
    for (const auto& q : quotes) {
        const Date maturity = q.tenor.advance(value_date);
        if (!dates.empty() && maturity <= dates.back()) {
            throw DataError("bootstrap_ois: tenors not strictly increasing at " + q.tenor.to_string() + " on " +
                            format_date(value_date));
        }
        double df = 0.0;
        if (is_single_payment(q.tenor, value_date)) {
            const double denom = 1.0 + q.par_rate * act360(value_date, maturity);
            if (!(denom > 0.0)) no_solution(q);
            df = 1.0 / denom;
        } else {
            df = solve_swap_pillar(q, value_date, maturity, dates, dfs);
        }
        dates.push_back(maturity);
        dfs.push_back(df);
    }
    return DiscountCurve(value_date, std::move(dates), std::move(dfs));
}

}  // namespace cspread
