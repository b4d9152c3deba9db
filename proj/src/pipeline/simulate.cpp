#include "cspread/pipeline/simulate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cspread/core/csv.hpp"
#include "cspread/curves/discount_curve.hpp"

namespace cspread {

namespace {

// Independent streams so that switching one component off leaves the others unchanged.
enum Stream : std::uint64_t { kRates = 1, kCSpread, kSpot, kBonds, kIssuerNoise, kQuotes, kControls, kVolumes };

std::mt19937_64 stream(std::uint64_t seed, Stream s) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    return std::mt19937_64(seq);
}

// Affine map of x onto the given sample mean and standard deviation (mean only when x is flat).
Eigen::VectorXd rescale(const Eigen::VectorXd& x, double mean, double sd) {
    const double m = x.mean();
    const double s = std::sqrt((x.array() - m).square().sum() / static_cast<double>(x.size() - 1));
    if (!(s > 0.0) || sd == 0.0) return Eigen::VectorXd::Constant(x.size(), mean);
    return ((x.array() - m) * (sd / s) + mean).matrix();
}

DiscountCurve sim_curve(Date t, double r3m, double slope, const std::vector<Tenor>& tenors) {
    const double tau3m = act365(t, add_months(t, 3));
    std::vector<Date> dates;
    std::vector<double> dfs;
    for (const auto& tenor : tenors) {
        const Date d = tenor.advance(t);
        const double tau = act365(t, d);
        dates.push_back(d);
        dfs.push_back(std::exp(-(r3m + slope * (tau - tau3m)) * tau));
    }
    return DiscountCurve(t, std::move(dates), std::move(dfs));
}

std::string contract_id(int year) { return "EUAZ" + std::to_string(year); }

}  // namespace

void SimSpec::validate() const {
    if (!(alpha3 < 0.0)) throw std::invalid_argument("simulate: unstable spec (alpha3 must be negative)");
    if (n_days < 50) throw std::invalid_argument("simulate: n_days must be at least 50");
    if (sigma_c < 0.0 || z_sd < 0.0 || r_sd < 0.0 || issuer_sd < 0.0)
        throw std::invalid_argument("simulate: volatilities must be non-negative");
    if (std::abs(zr_correlation) > 1.0) throw std::invalid_argument("simulate: correlation outside [-1, 1]");
    if (!(spot0 > 0.0) || !(spot_omega > 0.0) || spot_alpha < 0.0 || spot_beta < 0.0 || spot_alpha + spot_beta >= 1.0)
        throw std::invalid_argument("simulate: invalid spot GARCH parameters");
    if (!(issuer_ar > -1.0 && issuer_ar < 1.0)) throw std::invalid_argument("simulate: issuer_ar outside (-1, 1)");
    if (quote_drop_probability < 0.0 || quote_drop_probability >= 1.0)
        throw std::invalid_argument("simulate: quote_drop_probability outside [0, 1)");
}

std::vector<IssuerRecord> fixture_issuers() {
    return {
        {"MT", "ArcelorMittal", 169, "Industrial Metals and Mining"},
        {"ENEL", "ENEL", 96, "Electricity"},
        {"ENGIE", "ENGIE", 95, "Gas Water and Multi-utilities"},
        {"LAFARGE", "Lafarge", 92, "Construction and Materials"},
        {"HEIG", "Heidelberg Materials", 64, "Construction and Materials"},
        {"EDF", "EDF", 57, "Electricity"},
        {"ENI", "ENI", 42, "Oil Gas and Coal"},
        {"TTE", "TotalEnergies", 41, "Oil Gas and Coal"},
        {"EOAN", "E.ON", 40, "Gas Water and Multi-utilities"},
        {"MAERSK", "AP Moeller", 35, "Industrial Transportation"},
        {"CEZ", "CEZ", 28, "Electricity"},
        {"VIE", "Veolia Environnement", 28, "Gas Water and Multi-utilities"},
    };
}

std::vector<Tenor> fixture_tenors() {
    std::vector<Tenor> out;
    for (const char* t : {"1W", "1M", "3M", "6M", "1Y", "2Y", "3Y", "4Y", "5Y"}) out.push_back(Tenor::parse(t));
    return out;
}

MarketBundle simulate_market(const SimSpec& spec) {
    spec.validate();
    const auto n = static_cast<Eigen::Index>(spec.n_days);
    const std::vector<Date> dates = BusinessCalendar{}.business_days(spec.start, static_cast<std::size_t>(spec.n_days));
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;

    // Z and r.
    auto rates_rng = stream(spec.seed, kRates);
    Eigen::VectorXd wz(n), wr(n);
    wz[0] = wr[0] = 0.0;
    const double rho = spec.zr_correlation;
    for (Eigen::Index t = 1; t < n; ++t) {
        const double e1 = gauss(rates_rng);
        const double e2 = rho * e1 + std::sqrt(1.0 - rho * rho) * gauss(rates_rng);
        wz[t] = wz[t - 1] + e1;
        wr[t] = wr[t - 1] + e2;
    }
    const Eigen::VectorXd z = rescale(wz, spec.z_mean, spec.z_sd);
    const Eigen::VectorXd r = rescale(wr, spec.r_mean, spec.r_sd);

    // C from the error-correction law.
    auto c_rng = stream(spec.seed, kCSpread);
    Eigen::VectorXd c(n), dc = Eigen::VectorXd::Zero(n);
    c[0] = spec.gamma1 * z[0] + spec.gamma2 * r[0];
    for (Eigen::Index t = 1; t < n; ++t) {
        const double psi_prev = c[t - 1] - spec.gamma1 * z[t - 1] - spec.gamma2 * r[t - 1];
        double d = spec.alpha0 + spec.alpha1 * (z[t] - z[t - 1]) + spec.alpha2 * (r[t] - r[t - 1]) + spec.alpha3 * psi_prev;
        for (Eigen::Index i = 1; i <= 3 && t - i >= 1; ++i) d += spec.beta[static_cast<std::size_t>(i - 1)] * dc[t - i];
        dc[t] = d + spec.sigma_c * gauss(c_rng);
        c[t] = c[t - 1] + dc[t];
    }

    MarketBundle out;
    out.issuers = fixture_issuers();
    const auto tenors = fixture_tenors();

    // Spot proxy.
    auto spot_rng = stream(spec.seed, kSpot);
    std::vector<double> spot(static_cast<std::size_t>(n));
    {
        double h = spec.spot_omega / (1.0 - spec.spot_alpha - spec.spot_beta);
        double eps = 0.0;
        spot[0] = spec.spot0;
        for (std::size_t t = 1; t < spot.size(); ++t) {
            h = spec.spot_omega + spec.spot_alpha * eps * eps + spec.spot_beta * h;
            eps = std::sqrt(h) * gauss(spot_rng);
            spot[t] = spot[t - 1] * std::exp(eps);
        }
    }

    // Bonds: two or three per issuer, maturing after the simulated window.
    auto bond_rng = stream(spec.seed, kBonds);
    const int last_year = year_of(dates.back());
    std::vector<std::vector<std::shared_ptr<const FixedCouponBond>>> issuer_bonds(out.issuers.size());
    for (std::size_t i = 0; i < out.issuers.size(); ++i) {
        const int count = 2 + static_cast<int>(unif(bond_rng) < 0.5);
        for (int b = 0; b < count; ++b) {
            auto bond = std::make_shared<FixedCouponBond>();
            bond->bond_id = out.issuers[i].issuer_id + "-" + std::to_string(b + 1);
            bond->issuer_id = out.issuers[i].issuer_id;
            bond->coupon_rate = std::round((0.5 + 4.0 * unif(bond_rng)) * 8.0) / 800.0;
            bond->frequency = unif(bond_rng) < 0.25 ? 2 : 1;
            const int year = last_year + 1 + static_cast<int>(unif(bond_rng) * 10.0);
            bond->maturity = make_date(year, 1 + static_cast<unsigned>(unif(bond_rng) * 12.0), 15);
            bond->issue_amount = 5e8 * (1.0 + std::floor(unif(bond_rng) * 4.0));
            out.bonds.emplace(bond->bond_id, bond);
            issuer_bonds[i].push_back(std::move(bond));
        }
    }

    auto noise_rng = stream(spec.seed, kIssuerNoise);
    auto quote_rng = stream(spec.seed, kQuotes);
    auto volume_rng = stream(spec.seed, kVolumes);
    const std::size_t n_issuers = out.issuers.size();
    std::vector<double> u(n_issuers, 0.0);
    const double u_innov = spec.issuer_sd * std::sqrt(1.0 - spec.issuer_ar * spec.issuer_ar);
    for (auto& x : u) x = spec.issuer_sd * gauss(noise_rng);

    std::vector<double> truth_r(static_cast<std::size_t>(n));
    for (Eigen::Index ti = 0; ti < n; ++ti) {
        const auto t = static_cast<std::size_t>(ti);
        const Date d = dates[t];
        const DiscountCurve curve = sim_curve(d, r[ti], spec.curve_slope, tenors);
        truth_r[t] = curve.zero_rate(d, add_months(d, 3));

        auto& strip = out.ois[d];
        for (const auto& tenor : tenors) strip.push_back({tenor, ois_par_rate(curve, tenor)});

        out.spot.push_back({d, spot[t]});
        std::vector<FuturesQuote> chain;
        for (int y = year_of(d); y <= year_of(d) + 2; ++y) {
            const Date mat = penultimate_monday(y, 12);
            if (mat <= d) continue;
            const double f = spot[t] * std::exp((c[ti] + curve.zero_rate(d, mat)) * act365(d, mat));
            chain.push_back({contract_id(y), d, mat, f, 0});
        }
        const Date front = select_front_december(chain, d).maturity;
        for (auto& q : chain) {
            const double base = q.maturity == front ? 20000.0 : 1500.0;
            q.volume = static_cast<long long>(base * (1.0 + 0.5 * unif(volume_rng)));
            out.futures.push_back(std::move(q));
        }

        // Issuer spreads z_i = Z + u_i with u demeaned across issuers.
        if (ti > 0)
            for (auto& x : u) x = spec.issuer_ar * x + u_innov * gauss(noise_rng);
        double u_mean = 0.0;
        for (double x : u) u_mean += x;
        u_mean /= static_cast<double>(n_issuers);
        for (std::size_t i = 0; i < n_issuers; ++i) {
            const double zi = z[ti] + (u[i] - u_mean);
            const auto& bonds = issuer_bonds[i];
            std::vector<bool> keep(bonds.size());
            bool any = false;
            for (std::size_t b = 0; b < bonds.size(); ++b) any |= (keep[b] = unif(quote_rng) >= spec.quote_drop_probability);
            if (!any) keep[static_cast<std::size_t>(unif(quote_rng) * static_cast<double>(bonds.size()))] = true;
            for (std::size_t b = 0; b < bonds.size(); ++b)
                if (keep[b]) out.bond_quotes.push_back({bonds[b], d, dirty_price_from_curve(*bonds[b], curve, zi)});
        }
    }

    if (spec.controls) {
        auto ctl_rng = stream(spec.seed, kControls);
        ControlLevels cl;
        double spx = 1500.0, vix = 15.0, wti = 90.0;
        for (Eigen::Index ti = 0; ti < n; ++ti) {
            if (ti > 0) {
                spx *= std::exp(0.0003 + 0.01 * gauss(ctl_rng));
                wti *= std::exp(0.02 * gauss(ctl_rng));
                vix = std::max(9.0, 17.0 + 0.97 * (vix - 17.0) + 1.2 * gauss(ctl_rng));
            }
            cl.dates.push_back(dates[static_cast<std::size_t>(ti)]);
            cl.spx.push_back(spx);
            cl.vix.push_back(vix);
            cl.wti.push_back(wti);
        }
        out.controls = std::move(cl);
    }

    out.truth.c = TradingDaySeries(dates, c, "C");
    out.truth.z = TradingDaySeries(dates, z, "Z");
    out.truth.r = TradingDaySeries(dates, truth_r, "r");
    return out;
}

std::string describe_spec(const SimSpec& s) {
    using csv::format_exact;
    std::ostringstream o;
    o << "n_days: " << s.n_days << "\n"
      << "start: " << format_date(s.start) << "\n"
      << "gamma1: " << format_exact(s.gamma1) << "\n"
      << "gamma2: " << format_exact(s.gamma2) << "\n"
      << "alpha0: " << format_exact(s.alpha0) << "\n"
      << "alpha1: " << format_exact(s.alpha1) << "\n"
      << "alpha2: " << format_exact(s.alpha2) << "\n"
      << "alpha3: " << format_exact(s.alpha3) << "\n"
      << "beta: " << format_exact(s.beta[0]) << ", " << format_exact(s.beta[1]) << ", " << format_exact(s.beta[2]) << "\n"
      << "sigma_c: " << format_exact(s.sigma_c) << "\n"
      << "z_mean: " << format_exact(s.z_mean) << "\n"
      << "z_sd: " << format_exact(s.z_sd) << "\n"
      << "r_mean: " << format_exact(s.r_mean) << "\n"
      << "r_sd: " << format_exact(s.r_sd) << "\n"
      << "zr_correlation: " << format_exact(s.zr_correlation) << "\n"
      << "curve_slope: " << format_exact(s.curve_slope) << "\n"
      << "spot0: " << format_exact(s.spot0) << "\n"
      << "spot_garch: " << format_exact(s.spot_omega) << ", " << format_exact(s.spot_alpha) << ", "
      << format_exact(s.spot_beta) << "\n"
      << "issuer_sd: " << format_exact(s.issuer_sd) << "\n"
      << "issuer_ar: " << format_exact(s.issuer_ar) << "\n"
      << "quote_drop_probability: " << format_exact(s.quote_drop_probability) << "\n"
      << "controls: " << (s.controls ? "true" : "false") << "\n"
      << "seed: " << s.seed << "\n";
    return o.str();
}

void write_bundle(const MarketBundle& b, const SimSpec& spec, const std::filesystem::path& dir) {
    write_text_file(dir / "futures.csv", futures_csv(b.futures));
    write_text_file(dir / "spot.csv", spot_csv(b.spot));
    write_text_file(dir / "ois.csv", ois_csv(b.ois));
    write_text_file(dir / "bonds.csv", bonds_csv(b.bonds));
    write_text_file(dir / "bond_quotes.csv", bond_quotes_csv(b.bond_quotes));
    write_text_file(dir / "issuers.csv", issuers_csv(b.issuers));
    std::string config = "data.dir: .\nseed: " + std::to_string(spec.seed) + "\n";
    if (b.controls) {
        write_text_file(dir / "controls.csv", controls_csv(*b.controls));
    } else {
        config += "data.controls: \"\"\n";
    }
    write_text_file(dir / "truth" / "c.csv", series_csv_text(b.truth.c));
    write_text_file(dir / "truth" / "z.csv", series_csv_text(b.truth.z));
    write_text_file(dir / "truth" / "r.csv", series_csv_text(b.truth.r));
    write_text_file(dir / "simspec.txt", describe_spec(spec));
    write_text_file(dir / "config.yaml", config);
}

}  // namespace cspread
