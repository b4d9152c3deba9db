#include "cspread/pipeline/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <future>
#include <thread>

#include "cspread/pipeline/digest.hpp"

namespace cspread {

namespace {

bool in_window(Date d, const PipelineConfig& cfg) {
    return (!cfg.start || d >= *cfg.start) && (!cfg.end || d <= *cfg.end);
}

template <typename T, typename DateOf>
void filter_window(std::vector<T>& v, const PipelineConfig& cfg, DateOf date_of) {
    std::erase_if(v, [&](const T& x) { return !in_window(date_of(x), cfg); });
}

// Applies fn to every index in [0, n) on a few worker threads. Results land in
// their own slots, so output order never depends on scheduling; the error from
// the lowest failing index is rethrown.
template <typename R, typename F>
std::vector<R> parallel_map(std::size_t n, F fn) {
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    const std::size_t chunk = (n + workers - 1) / std::max<std::size_t>(workers, 1);
    std::vector<std::future<void>> jobs;
    for (std::size_t lo = 0; lo < n; lo += chunk) {
        const std::size_t hi = std::min(n, lo + chunk);
        jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) {
                try {
                    slots[i].emplace(fn(i));
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        }));
    }
    for (auto& j : jobs) j.get();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

constexpr std::array<ZIndexVariant, 5> kAllVariants{ZIndexVariant::equal, ZIndexVariant::emissions,
                                                    ZIndexVariant::interp1y, ZIndexVariant::interp3y,
                                                    ZIndexVariant::interp5y};

struct Levels {
    TradingDaySeries c, z, r;
};

Levels aligned_levels(const TradingDaySeries& c, const TradingDaySeries& z, const TradingDaySeries& r) {
    const std::vector<TradingDaySeries> parts{c, z, r};
    const AlignedSeries a = align(parts);
    return {a.column(0, "C"), a.column(1, "Z"), a.column(2, "r")};
}

Levels weekly(const Levels& l) { return {to_weekly(l.c), to_weekly(l.z), to_weekly(l.r)}; }

// Weekly table: (I) psi only, (II) lags + psi, (III) lags + dZ + dr + psi; all on one sample.
std::vector<EcmFit> weekly_models(const EcmInputs& in, const PipelineConfig& cfg) {
    RegressorSet one, two, three;
    one.psi = true;
    two = regressors_for(EcmVariant::I);
    three = regressors_for(EcmVariant::II);
    return {fit_ecm(in, cfg.ecm_lags, one, cfg.hac_bandwidth), fit_ecm(in, cfg.ecm_lags, two, cfg.hac_bandwidth),
            fit_ecm(in, cfg.ecm_lags, three, cfg.hac_bandwidth)};
}

std::pair<double, double> gammas(const JohansenResult& j) {
    const Eigen::VectorXd v = j.leading_vector();
    return {-v[1], -v[2]};
}

ReportTable roll_table(const CSpreadSeries& cs) {
    ReportTable t{"roll_schedule", "Front December contract schedule", {}, "contract_id,first_date,last_date,days\n"};
    std::vector<std::vector<std::string>> rows{{"Contract", "First", "Last", "Days"}};
    std::size_t i = 0;
    while (i < cs.points.size()) {
        std::size_t j = i;
        while (j + 1 < cs.points.size() && cs.points[j + 1].contract_id == cs.points[i].contract_id) ++j;
        const auto& id = cs.points[i].contract_id;
        const auto first = format_date(cs.points[i].date), last = format_date(cs.points[j].date);
        const auto days = std::to_string(j - i + 1);
        rows.push_back({id, first, last, days});
        t.csv += id + "," + first + "," + last + "," + days + "\n";
        i = j + 1;
    }
    // Same layout helper as the other tables: pad by hand here to keep report.cpp free of pipeline types.
    std::vector<std::size_t> w(4, 0);
    for (const auto& r : rows)
        for (std::size_t k = 0; k < 4; ++k) w[k] = std::max(w[k], r[k].size());
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t k = 0; k < 4; ++k) line += (k ? "  " : "") + r[k] + std::string(w[k] - r[k].size(), ' ');
        while (!line.empty() && line.back() == ' ') line.pop_back();
        t.text.push_back(line);
    }
    return t;
}

}  // namespace

MarketInputs ingest(const PipelineConfig& cfg) {
    return run_stage("ingest", [&] {
        MarketInputs in;
        const auto digest = [&](const std::filesystem::path& p) {
            in.digests.emplace_back(p.generic_string(), file_sha256(cfg.resolve(p)));
        };
        in.futures = load_futures(cfg.resolve(cfg.futures));
        digest(cfg.futures);
        in.spot = load_spot(cfg.resolve(cfg.spot));
        digest(cfg.spot);
        in.ois = load_ois(cfg.resolve(cfg.ois));
        digest(cfg.ois);
        in.bonds = load_bonds(cfg.resolve(cfg.bonds));
        digest(cfg.bonds);
        in.bond_quotes = load_bond_quotes(cfg.resolve(cfg.bond_quotes), in.bonds);
        digest(cfg.bond_quotes);
        in.issuers = load_issuers(cfg.resolve(cfg.issuers));
        digest(cfg.issuers);
        if (cfg.has_controls()) {
            in.controls = load_controls(cfg.resolve(cfg.controls));
            digest(cfg.controls);
        }

        filter_window(in.futures, cfg, [](const FuturesQuote& q) { return q.quote_date; });
        filter_window(in.spot, cfg, [](const SpotProxy& s) { return s.quote_date; });
        filter_window(in.bond_quotes, cfg, [](const BondQuote& q) { return q.quote_date; });
        std::erase_if(in.ois, [&](const auto& kv) { return !in_window(kv.first, cfg); });
        if (in.controls) {
            ControlLevels kept;
            for (std::size_t i = 0; i < in.controls->dates.size(); ++i) {
                if (!in_window(in.controls->dates[i], cfg)) continue;
                kept.dates.push_back(in.controls->dates[i]);
                kept.spx.push_back(in.controls->spx[i]);
                kept.vix.push_back(in.controls->vix[i]);
                kept.wti.push_back(in.controls->wti[i]);
            }
            in.controls = std::move(kept);
        }
        if (in.futures.empty() || in.spot.empty() || in.ois.empty() || in.bond_quotes.empty())
            throw DataError("no observations inside the configured date window");
        return in;
    });
}

std::map<Date, DiscountCurve> bootstrap_curves(const OisQuotesByDate& quotes) {
    const std::vector<std::pair<Date, const std::vector<OisQuote>*>> work = [&] {
        std::vector<std::pair<Date, const std::vector<OisQuote>*>> w;
        for (const auto& [d, strip] : quotes) w.emplace_back(d, &strip);
        return w;
    }();
    auto curves = parallel_map<DiscountCurve>(work.size(), [&](std::size_t i) {
        try {
            return bootstrap_ois(*work[i].second, work[i].first);
        } catch (const DataError& e) {
            throw DataError(format_date(work[i].first) + ": " + e.what());
        }
    });
    std::map<Date, DiscountCurve> out;
    for (std::size_t i = 0; i < work.size(); ++i) out.emplace(work[i].first, std::move(curves[i]));
    return out;
}

TradingDaySeries three_month_rate(const std::map<Date, DiscountCurve>& curves) {
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& [d, curve] : curves) {
        dates.push_back(d);
        values.push_back(curve.zero_rate(d, add_months(d, 3)));
    }
    return TradingDaySeries(std::move(dates), values, "r");
}

std::map<ZIndexVariant, std::vector<ZIndexPoint>> build_z_indices(std::span<const BondQuote> quotes,
                                                                 const std::map<Date, DiscountCurve>& curves,
                                                                 std::span<const IssuerRecord> issuers,
                                                                 std::span<const ZIndexVariant> variants) {
    std::map<Date, std::vector<BondQuote>> by_date;
    for (const auto& q : quotes) by_date[q.quote_date].push_back(q);
    std::vector<std::pair<const std::vector<BondQuote>*, const DiscountCurve*>> work;
    for (const auto& [d, day_quotes] : by_date)
        if (const auto c = curves.find(d); c != curves.end()) work.emplace_back(&day_quotes, &c->second);
    const auto per_date = parallel_map<std::vector<ZIndexPoint>>(work.size(), [&](std::size_t i) {
        const Date d = work[i].first->front().quote_date;
        try {
            const auto spreads = solve_bond_spreads(*work[i].first, *work[i].second);
            std::vector<ZIndexPoint> points;
            for (const auto v : variants) points.push_back(aggregate_z_index(d, spreads, v, issuers));
            return points;
        } catch (const DataError& e) {
            throw DataError(format_date(d) + ": " + e.what());
        }
    });
    std::map<ZIndexVariant, std::vector<ZIndexPoint>> out;
    for (const auto& points : per_date)
        for (std::size_t k = 0; k < variants.size(); ++k) out[variants[k]].push_back(points[k]);
    return out;
}

ConstructedSeries construct_series(const MarketInputs& in, const PipelineConfig& cfg, bool all_z_variants) {
    ConstructedSeries s;
    s.curves = run_stage("bootstrap", [&] { return bootstrap_curves(in.ois); });
    s.r = run_stage("bootstrap", [&] { return three_month_rate(s.curves); });
    s.c_spread = run_stage("cspread", [&] { return build_c_spread_series(in.futures, in.spot, s.curves, cfg.roll_months); });
    if (s.c_spread.points.empty()) throw DataError("[cspread] no C-spread observations could be built");
    s.c = s.c_spread.series("C");

    std::vector<ZIndexVariant> variants{cfg.z_index};
    if (all_z_variants)
        for (const auto v : kAllVariants)
            if (v != cfg.z_index) variants.push_back(v);
    s.z_points = run_stage("zindex", [&] { return build_z_indices(in.bond_quotes, s.curves, in.issuers, variants); });
    for (const auto& [v, pts] : s.z_points) s.z.emplace(v, to_series(pts, "Z"));
    if (s.z.at(cfg.z_index).empty()) throw DataError("[zindex] no Z-index observations could be built");
    return s;
}

JohansenResult cointegrate(const TradingDaySeries& c, const TradingDaySeries& z, const TradingDaySeries& r,
                           const PipelineConfig& cfg) {
    const std::vector<TradingDaySeries> parts{c, z, r};
    const AlignedSeries a = align(parts);
    const int k = cfg.johansen_lag ? *cfg.johansen_lag : select_var_lag_bic(a.values, cfg.johansen_max_lag);
    return johansen(a.values, k);
}

EcmInputs ecm_inputs(const TradingDaySeries& c, const TradingDaySeries& z, const TradingDaySeries& r, double gamma1,
                     double gamma2, std::optional<int> winsorize_level, const std::optional<ControlSet>& controls) {
    const Levels l = aligned_levels(c, z, r);
    EcmInputs in;
    in.dC = first_diff(l.c);
    in.dZ = first_diff(l.z);
    in.dr = first_diff(l.r);
    if (winsorize_level) {
        in.dC = winsorize(in.dC, *winsorize_level);
        in.dZ = winsorize(in.dZ, *winsorize_level);
        in.dr = winsorize(in.dr, *winsorize_level);
    }
    in.psi_lagged = lag_one(cointegration_residual(l.c, l.z, l.r, gamma1, gamma2));
    in.controls = controls;
    return in;
}

GarchFit spot_garch(std::span<const SpotProxy> spot) {
    std::vector<SpotProxy> sorted(spot.begin(), spot.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.quote_date < b.quote_date; });
    std::vector<Date> dates;
    std::vector<double> rets;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        dates.push_back(sorted[i].quote_date);
        rets.push_back(std::log(sorted[i].price / sorted[i - 1].price));
    }
    return garch11_fit(TradingDaySeries(std::move(dates), rets, "spot_logret"));
}

ControlSet make_controls(const ControlLevels& levels, const GarchFit& garch) {
    ControlSet set = to_control_set(levels);
    set.sigma = garch.conditional_vol.with_label("sigma");
    return set;
}

Report run_pipeline(const PipelineConfig& cfg) {
    Report report;
    const MarketInputs in = ingest(cfg);
    const bool daily = cfg.frequency == Frequency::daily;
    const bool robustness = cfg.robustness && daily;
    const ConstructedSeries built = construct_series(in, cfg, robustness);

    Levels base = run_stage("transform", [&] { return aligned_levels(built.c, built.z.at(cfg.z_index), built.r); });
    if (!daily) base = run_stage("transform", [&] { return weekly(base); });

    std::vector<std::pair<std::string, std::string>> prov{{"config_sha256", sha256_hex(canonical_config(cfg))},
                                                          {"seed", std::to_string(cfg.seed)}};
    for (const auto& [file, digest] : in.digests) prov.emplace_back("sha256:" + file, digest);
    report.tables.push_back(provenance_table(prov));

    report.notes.push_back("two-step estimation: (gamma1, gamma2) come from the Johansen step and are held fixed in the ECM");
    report.notes.push_back("frequency " + to_string(cfg.frequency) + ", Z-index " + to_string(cfg.z_index) +
                           ", winsorize " + (cfg.winsorize ? std::to_string(*cfg.winsorize) : std::string("none")));
    report.notes.push_back("observations: " + std::to_string(base.c.size()) + " common dates");
    if (!built.c_spread.skipped.empty())
        report.notes.push_back("C-spread dates skipped: " + std::to_string(built.c_spread.skipped.size()) + " (first: " +
                               built.c_spread.skipped.front() + ")");
    report.tables.push_back(roll_table(built.c_spread));

    // Descriptive statistics and unit roots.
    const std::vector<TradingDaySeries> levels{base.c, base.z, base.r};
    report.tables.push_back(run_stage("describe", [&] { return descriptive_table(levels); }));
    const std::vector<TradingDaySeries> diffs{first_diff(base.c), first_diff(base.z), first_diff(base.r)};
    std::vector<std::pair<std::string, UnitRootResult>> ur;
    run_stage("unitroot", [&] {
        for (const auto& s : levels) ur.emplace_back(s.label(), adf_gls(s, cfg.adf_deterministic, cfg.adf_max_lag));
        for (const auto& s : diffs) ur.emplace_back(s.label(), adf_gls(s, cfg.adf_deterministic, cfg.adf_max_lag));
    });
    report.tables.push_back(unit_root_table(ur));

    // Cointegration.
    const JohansenResult jo = run_stage("johansen", [&] { return cointegrate(base.c, base.z, base.r, cfg); });
    const std::vector<std::string> names{"C", "Z", "r"};
    report.tables.push_back(johansen_table(jo, names));
    const auto [g1, g2] = gammas(jo);

    // Controls.
    const GarchFit garch = run_stage("garch", [&] { return spot_garch(in.spot); });
    report.tables.push_back(garch_table(garch));
    std::optional<ControlSet> controls;
    if (in.controls) {
        controls = run_stage("controls", [&] { return make_controls(*in.controls, garch); });
        const std::vector<TradingDaySeries> cs{controls->spx_logret, controls->vix_level, controls->wti_logret,
                                               controls->sigma};
        report.tables.push_back(run_stage("correlation", [&] { return correlation_table(cs); }));
    } else {
        report.omitted.emplace_back("Pearson correlation of controls", "controls disabled or no controls file configured");
    }

    // Error-correction models.
    const EcmInputs main_in =
        run_stage("ecm", [&] { return ecm_inputs(base.c, base.z, base.r, g1, g2, cfg.winsorize, daily ? controls : std::nullopt); });
    if (daily) {
        std::vector<EcmFit> fits;
        std::vector<std::string> cols;
        for (const auto v : {EcmVariant::I, EcmVariant::II, EcmVariant::III, EcmVariant::IV, EcmVariant::V, EcmVariant::VI}) {
            if (regressors_for(v).uses_controls() && !controls) continue;
            fits.push_back(run_stage("ecm", [&] { return fit_ecm(main_in, cfg.ecm_lags, v, cfg.hac_bandwidth); }));
            cols.push_back(to_string(v));
        }
        report.tables.push_back(ecm_table("table5_ecm", "Error-correction models for dC", cols, fits));
        if (!controls)
            report.omitted.emplace_back("Error-correction models with controls (III-VI)",
                                        "controls disabled or no controls file configured");
        report.notes.push_back("headline model: (" + to_string(cfg.ecm_variant) + ")");
    } else {
        const auto fits = run_stage("ecm", [&] { return weekly_models(main_in, cfg); });
        const std::vector<std::string> cols{"I", "II", "III"};
        report.tables.push_back(ecm_table("table7_ecm_weekly", "Error-correction models for dC, weekly data", cols, fits));
    }

    if (robustness) {
        std::vector<EcmFit> fits;
        const std::vector<std::string> cols{"I", "II", "III", "IV", "V", "VI"};
        run_stage("robustness", [&] {
            for (const auto v : {ZIndexVariant::interp1y, ZIndexVariant::interp3y, ZIndexVariant::interp5y,
                                 ZIndexVariant::emissions}) {
                const Levels l = aligned_levels(built.c, built.z.at(v), built.r);
                const auto [a1, a2] = gammas(cointegrate(l.c, l.z, l.r, cfg));
                fits.push_back(fit_ecm(ecm_inputs(l.c, l.z, l.r, a1, a2, std::nullopt, std::nullopt), cfg.ecm_lags,
                                       EcmVariant::I, cfg.hac_bandwidth));
            }
            for (const int level : {95, 99})
                fits.push_back(fit_ecm(ecm_inputs(base.c, base.z, base.r, g1, g2, level, std::nullopt), cfg.ecm_lags,
                                       EcmVariant::I, cfg.hac_bandwidth));
        });
        auto t = ecm_table("table6_robustness", "Robustness of model (I)", cols, fits);
        t.text.push_back("(I)-(III) interpolated issuer spreads at 1y/3y/5y; (IV) emissions-weighted index;");
        t.text.push_back("(V)-(VI) differences winsorized at 95%/99%");
        report.tables.push_back(std::move(t));

        const Levels w = run_stage("weekly", [&] { return weekly(base); });
        const auto wfits = run_stage("weekly", [&] {
            const auto [a1, a2] = gammas(cointegrate(w.c, w.z, w.r, cfg));
            return weekly_models(ecm_inputs(w.c, w.z, w.r, a1, a2, std::nullopt, std::nullopt), cfg);
        });
        const std::vector<std::string> wcols{"I", "II", "III"};
        report.tables.push_back(ecm_table("table7_ecm_weekly", "Error-correction models for dC, weekly data", wcols, wfits));
        report.figures.push_back(
            run_stage("pacf", [&] { return pacf_figure("fig_pacf_dc_weekly", pacf(first_diff(w.c), cfg.pacf_lags)); }));
    } else if (cfg.robustness) {
        report.omitted.emplace_back("Robustness of model (I)", "robustness tables are built from daily data only");
    }

    // Figure data.
    run_stage("pacf", [&] {
        report.figures.push_back(series_figure("fig_series_c", base.c));
        report.figures.push_back(series_figure("fig_series_z", base.z));
        report.figures.push_back(series_figure("fig_series_r", base.r));
        report.figures.push_back(pacf_figure("fig_pacf_c", pacf(base.c, cfg.pacf_lags)));
        report.figures.push_back(pacf_figure("fig_pacf_z", pacf(base.z, cfg.pacf_lags)));
        report.figures.push_back(pacf_figure("fig_pacf_r", pacf(base.r, cfg.pacf_lags)));
        report.figures.push_back(pacf_figure(daily ? "fig_pacf_dc" : "fig_pacf_dc_weekly", pacf(diffs[0], cfg.pacf_lags)));
        report.figures.push_back(series_figure("fig_conditional_vol", garch.conditional_vol));
    });
    return report;
}

}  // namespace cspread
