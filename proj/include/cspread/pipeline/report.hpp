#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cspread/core/stats.hpp"
#include "cspread/econometrics/adf_gls.hpp"
#include "cspread/econometrics/ecm.hpp"
#include "cspread/econometrics/garch.hpp"
#include "cspread/econometrics/johansen.hpp"

namespace cspread {

/// One report table: pre-rendered text lines plus its CSV form.
struct ReportTable {
    std::string id;  // file stem in the csv bundle
    std::string title;
    std::vector<std::string> text;
    std::string csv;
};

/// Plot-ready data behind a figure analog.
struct FigureSeries {
    std::string id;
    std::string csv;
};

struct Report {
    std::vector<std::string> notes;
    std::vector<ReportTable> tables;  // provenance first
    std::vector<std::pair<std::string, std::string>> omitted;  // title, reason
    std::vector<FigureSeries> figures;

    [[nodiscard]] std::string render_text() const;
};

enum class ReportFormat { text, csv };

/// text: `report.txt`; csv: one `<id>.csv` per table and figure. Creates the
/// directory; throws DataError when it cannot be written.
void render_report(const Report& report, ReportFormat format, const std::filesystem::path& out_dir);

// Table builders.
[[nodiscard]] ReportTable provenance_table(std::span<const std::pair<std::string, std::string>> entries);
[[nodiscard]] ReportTable descriptive_table(std::span<const TradingDaySeries> series);
[[nodiscard]] ReportTable unit_root_table(std::span<const std::pair<std::string, UnitRootResult>> rows);
[[nodiscard]] ReportTable johansen_table(const JohansenResult& result, std::span<const std::string> names);
[[nodiscard]] ReportTable correlation_table(std::span<const TradingDaySeries> series);
[[nodiscard]] ReportTable ecm_table(std::string id, std::string title, std::span<const std::string> columns,
                                    std::span<const EcmFit> fits);
[[nodiscard]] ReportTable garch_table(const GarchFit& fit);

/// "-0.33***" style cell and "(0.06)" style error cell.
[[nodiscard]] std::string coefficient_cell(double value, double p_value);
[[nodiscard]] std::string error_cell(double std_error);

[[nodiscard]] FigureSeries series_figure(std::string id, const TradingDaySeries& s);
[[nodiscard]] FigureSeries pacf_figure(std::string id, const PacfResult& p);

}  // namespace cspread
