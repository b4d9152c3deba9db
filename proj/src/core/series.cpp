#include "cspread/core/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "cspread/core/csv.hpp"
#include "cspread/core/errors.hpp"

namespace cspread {

namespace {

void validate(const std::vector<Date>& dates, const Eigen::VectorXd& values, const std::string& label) {
    const std::string who = label.empty() ? "series" : "series '" + label + "'";
    if (static_cast<Eigen::Index>(dates.size()) != values.size()) {
        throw std::invalid_argument(who + ": dates and values differ in length");
    }
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i] <= dates[i - 1]) {
            throw std::invalid_argument(who + ": dates not strictly increasing at " + format_date(dates[i]));
        }
    }
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument(who + ": non-finite value at " + format_date(dates[static_cast<std::size_t>(i)]));
        }
    }
}

}  // namespace

TradingDaySeries::TradingDaySeries(std::vector<Date> dates, Eigen::VectorXd values, std::string label)
    : dates_(std::move(dates)), values_(std::move(values)), label_(std::move(label)) {
    validate(dates_, values_, label_);
}

TradingDaySeries::TradingDaySeries(std::vector<Date> dates, const std::vector<double>& values, std::string label)
    : TradingDaySeries(std::move(dates),
                       Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
                       std::move(label)) {}

std::optional<double> TradingDaySeries::at(Date d) const {
    const auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end() || *it != d) return std::nullopt;
    return values_[it - dates_.begin()];
}

TradingDaySeries TradingDaySeries::with_label(std::string label) const {
    TradingDaySeries out = *this;
    out.label_ = std::move(label);
    return out;
}

TradingDaySeries TradingDaySeries::slice(Date first, Date last) const {
    const auto lo = std::lower_bound(dates_.begin(), dates_.end(), first) - dates_.begin();
    const auto hi = std::upper_bound(dates_.begin(), dates_.end(), last) - dates_.begin();
    if (hi <= lo) return TradingDaySeries({}, Eigen::VectorXd(), label_);
    return TradingDaySeries(std::vector<Date>(dates_.begin() + lo, dates_.begin() + hi),
                            values_.segment(lo, hi - lo), label_);
}

TradingDaySeries AlignedSeries::column(Eigen::Index j, std::string label) const {
    return TradingDaySeries(dates, Eigen::VectorXd(values.col(j)), std::move(label));
}

AlignedSeries align(std::span<const TradingDaySeries> series) {
    if (series.empty()) throw std::invalid_argument("align: no series given");
    for (const auto& s : series) {
        if (s.empty()) throw std::invalid_argument("align: empty series '" + s.label() + "'");
    }
    std::vector<Date> common = series.front().dates();
    for (std::size_t k = 1; k < series.size(); ++k) {
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), series[k].dates().begin(), series[k].dates().end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    if (common.empty()) throw DataError("align: no common dates");

    AlignedSeries out{common, Eigen::MatrixXd(static_cast<Eigen::Index>(common.size()),
                                              static_cast<Eigen::Index>(series.size()))};
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& dates = series[k].dates();
        std::size_t pos = 0;
        for (std::size_t i = 0; i < common.size(); ++i) {
            while (dates[pos] < common[i]) ++pos;
            out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = series[k][pos];
        }
    }
    return out;
}

TradingDaySeries first_diff(const TradingDaySeries& s) {
    if (s.size() < 2) throw std::invalid_argument("first_diff: series too short");
    const auto n = static_cast<Eigen::Index>(s.size());
    Eigen::VectorXd d = s.values().tail(n - 1) - s.values().head(n - 1);
    return TradingDaySeries(std::vector<Date>(s.dates().begin() + 1, s.dates().end()), std::move(d),
                            s.label().empty() ? std::string{} : "d" + s.label());
}

TradingDaySeries winsorize(const TradingDaySeries& s, double level) {
    if (!(level > 50.0 && level < 100.0)) {
        throw std::invalid_argument("winsorize: level must lie in (50, 100)");
    }
    if (s.empty()) return s;
    std::vector<double> sorted(s.values().data(), s.values().data() + s.values().size());
    std::sort(sorted.begin(), sorted.end());
    const double tail = (100.0 - level) / 200.0;
    const double span = static_cast<double>(sorted.size() - 1);
    // Order statistics (no interpolation) keep the clip points inside the
    // data, so clipping twice changes nothing.
    const auto lo_idx = static_cast<std::size_t>(std::floor(span * tail + 1e-9));
    const auto hi_idx = static_cast<std::size_t>(std::ceil(span * (1.0 - tail) - 1e-9));
    const double lo = sorted[lo_idx];
    const double hi = sorted[hi_idx];
    Eigen::VectorXd clipped = s.values().cwiseMax(lo).cwiseMin(hi);
    return TradingDaySeries(s.dates(), std::move(clipped), s.label());
}

TradingDaySeries to_weekly(const TradingDaySeries& s) {
    std::vector<Date> dates;
    std::vector<double> values;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool last_of_week = i + 1 == s.size() || iso_week(s.dates()[i + 1]) != iso_week(s.dates()[i]);
        if (last_of_week) {
            dates.push_back(s.dates()[i]);
            values.push_back(s[i]);
        }
    }
    return TradingDaySeries(std::move(dates), values, s.label());
}

SummaryStats describe(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("describe: need at least 2 observations");
    const Eigen::Map<const Eigen::VectorXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
    // Second pass corrects the rounding of the naive mean, so constant input is exact.
    double mean = v.mean();
    mean += (v.array() - mean).sum() / static_cast<double>(values.size());
    const double var = (v.array() - mean).square().sum() / static_cast<double>(values.size() - 1);
    return {mean, std::sqrt(var), values.size()};
}

SummaryStats describe(const TradingDaySeries& s) {
    return describe(std::span<const double>(s.values().data(), s.size()));
}

TradingDaySeries read_series_csv(const std::filesystem::path& path, std::string label) {
    const auto table = csv::read(path);
    const auto dc = table.column("date");
    const auto vc = table.column("value");
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& row : table.rows) {
        try {
            dates.push_back(parse_date(row.fields[dc]));
        } catch (const std::invalid_argument& e) {
            csv::fail(table, row, e.what());
        }
        values.push_back(csv::to_double(table, row, vc));
        if (dates.size() > 1 && dates.back() <= dates[dates.size() - 2]) {
            csv::fail(table, row, "dates not strictly increasing");
        }
    }
    if (label.empty()) label = path.stem().string();
    return TradingDaySeries(std::move(dates), values, std::move(label));
}

std::string series_csv_text(const TradingDaySeries& s) {
    std::string out = "date,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += format_date(s.dates()[i]);
        out += ',';
        out += csv::format_exact(s[i]);
        out += '\n';
    }
    return out;
}

void write_series_csv(const std::filesystem::path& path, const TradingDaySeries& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path.string() + ": cannot write file");
    out << series_csv_text(s);
}

}  // namespace cspread
