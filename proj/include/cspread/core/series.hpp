#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cspread/core/date.hpp"

namespace cspread {

/// Date-indexed observations on a business-day calendar.
///
/// Dates are strictly increasing, one finite value per date. Instances are
/// immutable; every transform returns a new series.
class TradingDaySeries {
public:
    TradingDaySeries() = default;
    TradingDaySeries(std::vector<Date> dates, Eigen::VectorXd values, std::string label = {});
    TradingDaySeries(std::vector<Date> dates, const std::vector<double>& values, std::string label = {});

    [[nodiscard]] const std::vector<Date>& dates() const { return dates_; }
    [[nodiscard]] const Eigen::VectorXd& values() const { return values_; }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] std::size_t size() const { return dates_.size(); }
    [[nodiscard]] bool empty() const { return dates_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

    /// Value on date `d` if observed.
    [[nodiscard]] std::optional<double> at(Date d) const;
    [[nodiscard]] TradingDaySeries with_label(std::string label) const;
    /// Observations with first <= date <= last.
    [[nodiscard]] TradingDaySeries slice(Date first, Date last) const;

private:
    std::vector<Date> dates_;
    Eigen::VectorXd values_;
    std::string label_;
};

/// Inner join of several series: one row per common date, one column per input.
struct AlignedSeries {
    std::vector<Date> dates;
    Eigen::MatrixXd values;

    [[nodiscard]] TradingDaySeries column(Eigen::Index j, std::string label = {}) const;
};

[[nodiscard]] AlignedSeries align(std::span<const TradingDaySeries> series);

/// values[i+1] - values[i], dated at the later date.
[[nodiscard]] TradingDaySeries first_diff(const TradingDaySeries& s);

/// Symmetric two-sided winsorization: `level` 95 clips at the 2.5% / 97.5%
/// order-statistic percentiles. Level must lie in (50, 100).
[[nodiscard]] TradingDaySeries winsorize(const TradingDaySeries& s, double level);

/// Last available observation of every ISO week.
[[nodiscard]] TradingDaySeries to_weekly(const TradingDaySeries& s);

struct SummaryStats {
    double mean;
    double std_dev;  // sample, n - 1 denominator
    std::size_t n_obs;
};

[[nodiscard]] SummaryStats describe(const TradingDaySeries& s);
[[nodiscard]] SummaryStats describe(std::span<const double> values);

/// `date,value` CSV, ISO dates.
[[nodiscard]] TradingDaySeries read_series_csv(const std::filesystem::path& path, std::string label = {});
void write_series_csv(const std::filesystem::path& path, const TradingDaySeries& s);
[[nodiscard]] std::string series_csv_text(const TradingDaySeries& s);

}  // namespace cspread
