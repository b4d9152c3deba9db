#include "cspread/pipeline/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "cspread/core/csv.hpp"
#include "cspread/pipeline/io.hpp"

namespace cspread {

namespace {

using csv::format_exact;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string percent(double v, int digits) { return fixed(100.0 * v, digits) + "%"; }

// Left-aligned first column, right-aligned others, two spaces apart.
std::vector<std::string> layout(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
    }
    std::vector<std::string> out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const std::string pad(width[j] - r[j].size(), ' ');
            if (j == 0) {
                line += r[j] + pad;
            } else {
                line += "  " + pad + r[j];
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out.push_back(line);
    }
    return out;
}

const char* stat_stars(double stat, double c90, double c95, double c99) {
    if (stat > c99) return "***";
    if (stat > c95) return "**";
    if (stat > c90) return "*";
    return "";
}

// Canonical row order of the error-correction tables.
const std::vector<std::string>& term_order() {
    static const std::vector<std::string> order{"dC(-1)", "dC(-2)", "dC(-3)", "dZ",    "dr",
                                                "psi(-1)", "WTI",   "SPX",    "VIX",   "sigma", "const"};
    return order;
}

}  // namespace

std::string coefficient_cell(double value, double p_value) { return fixed(value, 2) + significance_stars(p_value); }

std::string error_cell(double std_error) { return "(" + fixed(std_error, 2) + ")"; }

std::string Report::render_text() const {
    std::string out = "C-spread and Z-index cointegration report\n";
    out += std::string(42, '=') + "\n";
    for (const auto& n : notes) out += "note: " + n + "\n";
    for (const auto& t : tables) {
        out += "\n" + t.title + "\n" + std::string(t.title.size(), '-') + "\n";
        for (const auto& line : t.text) out += line + "\n";
    }
    for (const auto& [title, reason] : omitted) {
        out += "\n" + title + "\n" + std::string(title.size(), '-') + "\n";
        out += "omitted: " + reason + "\n";
    }
    if (!figures.empty()) {
        out += "\nFigure data\n-----------\n";
        for (const auto& f : figures) out += f.id + ".csv\n";
    }
    return out;
}

void render_report(const Report& report, ReportFormat format, const std::filesystem::path& out_dir) {
    if (format == ReportFormat::text) {
        write_text_file(out_dir / "report.txt", report.render_text());
        return;
    }
    for (const auto& t : report.tables) write_text_file(out_dir / (t.id + ".csv"), t.csv);
    for (const auto& f : report.figures) write_text_file(out_dir / (f.id + ".csv"), f.csv);
}

ReportTable provenance_table(std::span<const std::pair<std::string, std::string>> entries) {
    ReportTable t{"provenance", "Provenance", {}, "key,value\n"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : entries) {
        rows.push_back({k, v});
        t.csv += k + "," + v + "\n";
    }
    for (auto& line : layout(rows)) t.text.push_back(std::move(line));
    return t;
}

ReportTable descriptive_table(std::span<const TradingDaySeries> series) {
    ReportTable t{"table2_descriptive", "Descriptive statistics", {}, "series,mean,std_dev,n_obs\n"};
    std::vector<std::vector<std::string>> rows{{""}, {"Average"}, {"Standard deviation"}, {"Obs."}};
    for (const auto& s : series) {
        const auto d = describe(s);
        rows[0].push_back(s.label());
        rows[1].push_back(percent(d.mean, 1));
        rows[2].push_back(percent(d.std_dev, 1));
        rows[3].push_back(std::to_string(d.n_obs));
        t.csv += s.label() + "," + format_exact(d.mean) + "," + format_exact(d.std_dev) + "," + std::to_string(d.n_obs) + "\n";
    }
    t.text = layout(rows);
    return t;
}

ReportTable unit_root_table(std::span<const std::pair<std::string, UnitRootResult>> entries) {
    ReportTable t{"unit_root", "ADF-GLS unit-root tests", {}, "series,deterministic,p_value,statistic,lags,n_obs\n"};
    std::vector<std::vector<std::string>> rows{{"", "P-value", "Test stat.", "Lags"}};
    for (const auto& [name, r] : entries) {
        const std::string p = r.p_value <= 0.001 ? "<0.1%" : r.p_value >= 0.999 ? ">99.9%" : percent(r.p_value, 0);
        rows.push_back({name, p, fixed(r.statistic, 2), std::to_string(r.lags_used)});
        t.csv += name + "," + (r.deterministic == Deterministic::constant ? "constant" : "trend") + "," +
                 format_exact(r.p_value) + "," + format_exact(r.statistic) + "," + std::to_string(r.lags_used) + "," +
                 std::to_string(r.n_obs) + "\n";
    }
    t.text = layout(rows);
    return t;
}

ReportTable johansen_table(const JohansenResult& j, std::span<const std::string> names) {
    ReportTable t{"table3_johansen", "Johansen cointegration tests (no deterministic terms)", {}, ""};
    t.csv = "null,trace_stat,eig_stat,trace_cv90,trace_cv95,trace_cv99,eig_cv90,eig_cv95,eig_cv99,eigenvalue\n";
    std::vector<std::vector<std::string>> rows{
        {"Null", "Trace Stat.", "Eig Stat.", "Trace 90%", "95%", "99%", "Eig 90%", "95%", "99%"}};
    for (Eigen::Index q = 0; q < j.trace_stats.size(); ++q) {
        const auto& tc = j.trace_critical;
        const auto& ec = j.eigen_critical;
        std::string label = "q<=" + std::to_string(q);
        if (q == j.selected_rank) label += " (selected)";
        rows.push_back({label, fixed(j.trace_stats[q], 1) + stat_stars(j.trace_stats[q], tc(q, 0), tc(q, 1), tc(q, 2)),
                        fixed(j.eigen_stats[q], 1) + stat_stars(j.eigen_stats[q], ec(q, 0), ec(q, 1), ec(q, 2)),
                        fixed(tc(q, 0), 1), fixed(tc(q, 1), 1), fixed(tc(q, 2), 1), fixed(ec(q, 0), 1),
                        fixed(ec(q, 1), 1), fixed(ec(q, 2), 1)});
        t.csv += "q<=" + std::to_string(q) + "," + format_exact(j.trace_stats[q]) + "," + format_exact(j.eigen_stats[q]);
        for (int c = 0; c < 3; ++c) t.csv += "," + format_exact(tc(q, c));
        for (int c = 0; c < 3; ++c) t.csv += "," + format_exact(ec(q, c));
        t.csv += "," + format_exact(j.eigenvalues[q]) + "\n";
    }
    t.text = layout(rows);
    const Eigen::VectorXd v = j.leading_vector();
    std::string vec = "cointegration vector {";
    for (Eigen::Index i = 0; i < v.size(); ++i) vec += (i ? ", " : "") + fixed(v[i], 2);
    vec += "} on (";
    for (std::size_t i = 0; i < names.size(); ++i) vec += (i ? ", " : "") + names[i];
    vec += ")";
    t.text.push_back(vec);
    t.text.push_back("selected rank " + std::to_string(j.selected_rank) + " (trace test, 5%); VAR order k = " +
                     std::to_string(j.lag_order) + "; effective obs. " + std::to_string(j.n_obs));
    t.csv += "vector";
    for (Eigen::Index i = 0; i < v.size(); ++i) t.csv += "," + format_exact(v[i]);
    t.csv += "\nselected_rank," + std::to_string(j.selected_rank) + "\nlag_order," + std::to_string(j.lag_order) +
             "\nn_obs," + std::to_string(j.n_obs) + "\n";
    return t;
}

ReportTable correlation_table(std::span<const TradingDaySeries> series) {
    ReportTable t{"table4_correlation", "Pearson correlation of controls", {}, "x,y,r,p_value,stars\n"};
    const AlignedSeries a = align(series);
    std::vector<std::vector<std::string>> rows{{""}};
    for (const auto& s : series) rows[0].push_back(s.label());
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::vector<std::string> row{series[i].label()};
        for (std::size_t j = 0; j <= i; ++j) {
            if (i == j) {
                row.emplace_back("1");
                continue;
            }
            const auto ci = static_cast<Eigen::Index>(i), cj = static_cast<Eigen::Index>(j);
            const Eigen::VectorXd x = a.values.col(ci), y = a.values.col(cj);
            const auto p = pearson_test(std::span<const double>(x.data(), x.size()), std::span<const double>(y.data(), y.size()));
            row.push_back(coefficient_cell(p.r, p.p_value));
            t.csv += series[i].label() + "," + series[j].label() + "," + format_exact(p.r) + "," + format_exact(p.p_value) +
                     "," + significance_stars(p.p_value) + "\n";
        }
        rows.push_back(std::move(row));
    }
    t.text = layout(rows);
    t.text.push_back("common dates: " + std::to_string(a.dates.size()));
    return t;
}

ReportTable ecm_table(std::string id, std::string title, std::span<const std::string> columns,
                      std::span<const EcmFit> fits) {
    ReportTable t{std::move(id), std::move(title), {}, "model,term,coefficient,std_error,p_value,stars\n"};
    std::vector<std::vector<std::string>> rows{{""}};
    for (const auto& c : columns) rows[0].push_back("(" + c + ")");
    for (const auto& term : term_order()) {
        bool present = false;
        for (const auto& f : fits) present |= f.index_of(term) >= 0;
        if (!present) continue;
        std::vector<std::string> coef{term}, err{""};
        for (const auto& f : fits) {
            const auto k = f.index_of(term);
            coef.push_back(k >= 0 ? coefficient_cell(f.coefficients[k], f.p_values[k]) : "");
            err.push_back(k >= 0 ? error_cell(f.hac_std_errors[k]) : "");
        }
        rows.push_back(std::move(coef));
        rows.push_back(std::move(err));
    }
    std::vector<std::string> obs{"Obs."}, bic{"BIC"}, aic{"AIC"}, bw{"HAC lags"};
    for (const auto& f : fits) {
        obs.push_back(std::to_string(f.n_obs));
        bic.push_back(fixed(f.bic, 0));
        aic.push_back(fixed(f.aic, 0));
        bw.push_back(std::to_string(f.bandwidth));
    }
    rows.push_back(std::move(obs));
    rows.push_back(std::move(bic));
    rows.push_back(std::move(aic));
    rows.push_back(std::move(bw));
    t.text = layout(rows);

    for (std::size_t m = 0; m < fits.size(); ++m) {
        const auto& f = fits[m];
        for (const auto& term : term_order()) {
            const auto k = f.index_of(term);
            if (k < 0) continue;
            t.csv += columns[m] + "," + term + "," + format_exact(f.coefficients[k]) + "," +
                     format_exact(f.hac_std_errors[k]) + "," + format_exact(f.p_values[k]) + "," +
                     significance_stars(f.p_values[k]) + "\n";
        }
        t.csv += columns[m] + ",Obs.," + std::to_string(f.n_obs) + ",,,\n";
        t.csv += columns[m] + ",BIC," + format_exact(f.bic) + ",,,\n";
        t.csv += columns[m] + ",AIC," + format_exact(f.aic) + ",,,\n";
    }
    return t;
}

ReportTable garch_table(const GarchFit& g) {
    ReportTable t{"garch", "GARCH(1,1) of EUA spot log-returns", {}, "parameter,estimate,std_error\n"};
    const auto se = [](double v) { return std::isfinite(v) ? format_exact(v) : std::string("nan"); };
    std::vector<std::vector<std::string>> rows{{"", "Estimate", "Std. err."}};
    const std::array<std::pair<const char*, double>, 3> params{{{"omega", g.omega}, {"alpha", g.alpha}, {"beta", g.beta}}};
    for (int i = 0; i < 3; ++i) {
        char est[32], err[32];
        std::snprintf(est, sizeof est, "%.4g", params[static_cast<std::size_t>(i)].second);
        std::snprintf(err, sizeof err, "%.2g", g.std_errors[i]);
        rows.push_back({params[static_cast<std::size_t>(i)].first, est, std::isfinite(g.std_errors[i]) ? err : "n/a"});
        t.csv += std::string(params[static_cast<std::size_t>(i)].first) + "," +
                 format_exact(params[static_cast<std::size_t>(i)].second) + "," + se(g.std_errors[i]) + "\n";
    }
    rows.push_back({"log-likelihood", fixed(g.log_likelihood, 1), ""});
    t.csv += "log_likelihood," + format_exact(g.log_likelihood) + ",\n";
    t.text = layout(rows);
    return t;
}

FigureSeries series_figure(std::string id, const TradingDaySeries& s) { return {std::move(id), series_csv_text(s)}; }

FigureSeries pacf_figure(std::string id, const PacfResult& p) {
    std::string csv = "lag,pacf,bound\n";
    for (std::size_t i = 0; i < p.lags.size(); ++i)
        csv += std::to_string(p.lags[i]) + "," + format_exact(p.coefficients[static_cast<Eigen::Index>(i)]) + "," +
               format_exact(p.confidence_bound) + "\n";
    return {std::move(id), std::move(csv)};
}

}  // namespace cspread
