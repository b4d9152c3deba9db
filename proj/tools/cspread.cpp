// Command-line front end for the C-spread / Z-index pipeline.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cspread/core/csv.hpp"
#include "cspread/core/errors.hpp"
#include "cspread/pipeline/config.hpp"
#include "cspread/pipeline/pipeline.hpp"
#include "cspread/pipeline/simulate.hpp"

namespace fs = std::filesystem;
using namespace cspread;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumerical = 3;

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "text";
};

PipelineConfig config_from(const Globals& g) {
    PipelineConfig cfg = g.config.empty() ? PipelineConfig{} : load_config(g.config);
    if (g.seed) cfg.seed = *g.seed;
    return cfg;
}

// Writes to <out>/<name> when --out is given, otherwise to stdout.
void emit(const Globals& g, const std::string& name, const std::string& content) {
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    write_text_file(fs::path(g.out) / name, content);
}

void emit_table(const Globals& g, const ReportTable& t) {
    if (g.format == "csv") {
        emit(g, t.id + ".csv", t.csv);
        return;
    }
    std::string text = t.title + "\n";
    for (const auto& line : t.text) text += line + "\n";
    emit(g, t.id + ".txt", text);
}

struct Built {
    PipelineConfig cfg;
    MarketInputs in;
    ConstructedSeries series;
};

Built build(const Globals& g, bool all_variants = false) {
    Built b{config_from(g), {}, {}};
    b.in = ingest(b.cfg);
    b.series = construct_series(b.in, b.cfg, all_variants);
    return b;
}

struct Levels {
    TradingDaySeries c, z, r;
};

Levels levels(const Built& b) {
    const std::vector<TradingDaySeries> parts{b.series.c, b.series.z.at(b.cfg.z_index), b.series.r};
    const AlignedSeries a = run_stage("transform", [&] { return align(parts); });
    Levels l{a.column(0, "C"), a.column(1, "Z"), a.column(2, "r")};
    if (b.cfg.frequency == Frequency::weekly) l = {to_weekly(l.c), to_weekly(l.z), to_weekly(l.r)};
    return l;
}

int cmd_bootstrap(const Globals& g) {
    const PipelineConfig cfg = config_from(g);
    const MarketInputs in = ingest(cfg);
    const auto curves = run_stage("bootstrap", [&] { return bootstrap_curves(in.ois); });
    std::ostringstream os;
    os << "date,pillar_date,discount_factor,zero_rate\n";
    for (const auto& [d, curve] : curves) {
        const auto& dates = curve.pillar_dates();
        for (std::size_t i = 0; i < dates.size(); ++i)
            os << format_date(d) << ',' << format_date(dates[i]) << ','
               << csv::format_exact(curve.pillar_discount_factors()[i]) << ','
               << csv::format_exact(curve.zero_rate(d, dates[i])) << '\n';
    }
    emit(g, "curves.csv", os.str());
    return 0;
}

int cmd_cspread(const Globals& g) {
    const Built b = build(g);
    std::ostringstream os;
    os << "date,c_spread,contract_id,ttm\n";
    for (const auto& p : b.series.c_spread.points)
        os << format_date(p.date) << ',' << csv::format_exact(p.c_spread) << ',' << p.contract_id << ','
           << csv::format_exact(p.ttm) << '\n';
    for (const auto& s : b.series.c_spread.skipped) std::cerr << "skipped: " << s << '\n';
    emit(g, "c_spread.csv", os.str());
    return 0;
}

int cmd_zindex(const Globals& g) {
    const Built b = build(g);
    std::ostringstream os;
    os << "date,z_index,issuers\n";
    for (const auto& p : b.series.z_points.at(b.cfg.z_index))
        os << format_date(p.date) << ',' << csv::format_exact(p.z_index) << ',' << p.n_issuers << '\n';
    emit(g, "z_index.csv", os.str());
    return 0;
}

int cmd_unitroot(const Globals& g) {
    const Built b = build(g);
    const Levels l = levels(b);
    std::vector<std::pair<std::string, UnitRootResult>> rows;
    run_stage("unitroot", [&] {
        for (const auto& s : {l.c, l.z, l.r}) {
            rows.emplace_back(s.label(), adf_gls(s, b.cfg.adf_deterministic, b.cfg.adf_max_lag));
            const auto d = first_diff(s);
            rows.emplace_back(d.label(), adf_gls(d, b.cfg.adf_deterministic, b.cfg.adf_max_lag));
        }
    });
    emit_table(g, unit_root_table(rows));
    return 0;
}

int cmd_cointegrate(const Globals& g) {
    const Built b = build(g);
    const Levels l = levels(b);
    const auto jo = run_stage("johansen", [&] { return cointegrate(l.c, l.z, l.r, b.cfg); });
    const std::vector<std::string> names{"C", "Z", "r"};
    emit_table(g, johansen_table(jo, names));
    return 0;
}

int cmd_ecm(const Globals& g) {
    const Built b = build(g);
    const Levels l = levels(b);
    const auto jo = run_stage("johansen", [&] { return cointegrate(l.c, l.z, l.r, b.cfg); });
    const Eigen::VectorXd v = jo.leading_vector();
    std::optional<ControlSet> controls;
    if (regressors_for(b.cfg.ecm_variant).uses_controls()) {
        if (!b.in.controls) throw DataError("[ecm] variant " + to_string(b.cfg.ecm_variant) + " needs controls");
        const auto garch = run_stage("garch", [&] { return spot_garch(b.in.spot); });
        controls = run_stage("controls", [&] { return make_controls(*b.in.controls, garch); });
    }
    const auto fit = run_stage("ecm", [&] {
        return fit_ecm(ecm_inputs(l.c, l.z, l.r, -v[1], -v[2], b.cfg.winsorize, controls), b.cfg.ecm_lags,
                       b.cfg.ecm_variant, b.cfg.hac_bandwidth);
    });
    const std::vector<std::string> cols{to_string(b.cfg.ecm_variant)};
    const std::vector<EcmFit> fits{fit};
    emit_table(g, ecm_table("ecm", "Error-correction model for dC", cols, fits));
    return 0;
}

int cmd_report(const Globals& g) {
    const PipelineConfig cfg = config_from(g);
    const Report report = run_pipeline(cfg);
    render_report(report, g.format == "csv" ? ReportFormat::csv : ReportFormat::text, g.out.empty() ? "report" : g.out);
    return 0;
}

int cmd_simulate(const Globals& g, int n_days, bool no_controls) {
    if (g.out.empty()) throw std::invalid_argument("simulate: --out <dir> is required");
    SimSpec spec;
    if (g.seed) spec.seed = *g.seed;
    spec.n_days = n_days;
    spec.controls = !no_controls;
    spec.validate();
    write_bundle(simulate_market(spec), spec, g.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"C-spread / Z-index cointegration pipeline"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Pipeline config file (flat dotted YAML keys)")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv"}));

    int n_days = SimSpec{}.n_days;
    bool no_controls = false;
    auto* bootstrap = app.add_subcommand("bootstrap", "Bootstrap the OIS discount curve for every date");
    auto* cspread = app.add_subcommand("cspread", "Build the front-December C-spread series");
    auto* zindex = app.add_subcommand("zindex", "Build the Z-index series");
    auto* unitroot = app.add_subcommand("unitroot", "ADF-GLS tests on levels and differences");
    auto* coint = app.add_subcommand("cointegrate", "Johansen trace test on (C, Z, r)");
    auto* ecm = app.add_subcommand("ecm", "Fit the configured error-correction model");
    auto* report = app.add_subcommand("report", "Run the full pipeline and render the report");
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic market bundle");
    simulate->add_option("--days", n_days, "Number of business days")->check(CLI::Range(60, 100000));
    simulate->add_flag("--no-controls", no_controls, "Omit the control-variable file");
    // Global flags may also follow the subcommand.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsage;
    }

    try {
        if (*bootstrap) return cmd_bootstrap(g);
        if (*cspread) return cmd_cspread(g);
        if (*zindex) return cmd_zindex(g);
        if (*unitroot) return cmd_unitroot(g);
        if (*coint) return cmd_cointegrate(g);
        if (*ecm) return cmd_ecm(g);
        if (*report) return cmd_report(g);
        if (*simulate) return cmd_simulate(g, n_days, no_controls);
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
