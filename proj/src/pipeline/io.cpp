#include "cspread/pipeline/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "cspread/core/csv.hpp"
#include "cspread/core/errors.hpp"

namespace cspread {

namespace {

using csv::fail;
using csv::format_exact;
using csv::to_double;

csv::Table read_nonempty(const std::filesystem::path& path) {
    csv::Table t = csv::read(path);
    if (t.rows.empty()) throw DataError(t.source + ":1: no data rows");
    return t;
}

Date date_field(const csv::Table& t, const csv::Row& r, std::size_t col) {
    try {
        return parse_date(r.fields[col]);
    } catch (const std::invalid_argument& e) {
        fail(t, r, e.what());
    }
}

double positive(const csv::Table& t, const csv::Row& r, std::size_t col) {
    const double v = to_double(t, r, col);
    if (!(v > 0.0)) fail(t, r, "'" + t.header[col] + "' must be positive");
    return v;
}

}  // namespace

std::vector<FuturesQuote> load_futures(const std::filesystem::path& path) {
    const auto t = read_nonempty(path);
    const auto c_date = t.column("date"), c_id = t.column("contract_id"), c_mat = t.column("maturity"),
               c_settle = t.column("settle"), c_vol = t.column("volume");
    std::vector<FuturesQuote> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        FuturesQuote q;
        q.quote_date = date_field(t, r, c_date);
        q.contract_id = r.fields[c_id];
        q.maturity = date_field(t, r, c_mat);
        q.settle_price = positive(t, r, c_settle);
        q.volume = csv::to_integer(t, r, c_vol);
        if (q.volume < 0) fail(t, r, "volume must be non-negative");
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<SpotProxy> load_spot(const std::filesystem::path& path) {
    const auto t = read_nonempty(path);
    const auto c_date = t.column("date"), c_price = t.column("price");
    std::vector<SpotProxy> out;
    std::set<Date> seen;
    for (const auto& r : t.rows) {
        const Date d = date_field(t, r, c_date);
        if (!seen.insert(d).second) fail(t, r, "duplicate date " + format_date(d));
        out.push_back({d, positive(t, r, c_price)});
    }
    return out;
}

OisQuotesByDate load_ois(const std::filesystem::path& path) {
    const auto t = read_nonempty(path);
    const auto c_date = t.column("date"), c_tenor = t.column("tenor"), c_rate = t.column("rate");
    OisQuotesByDate out;
    for (const auto& r : t.rows) {
        OisQuote q;
        try {
            q.tenor = Tenor::parse(r.fields[c_tenor]);
        } catch (const std::invalid_argument& e) {
            fail(t, r, e.what());
        }
        q.par_rate = to_double(t, r, c_rate);
        if (!(q.par_rate > -0.10 && q.par_rate < 0.50)) fail(t, r, "rate outside sanity bounds (-10%, 50%)");
        out[date_field(t, r, c_date)].push_back(q);
    }
    return out;
}

BondTable load_bonds(const std::filesystem::path& path) {
    const auto t = read_nonempty(path);
    const auto c_id = t.column("bond_id"), c_issuer = t.column("issuer_id"), c_coupon = t.column("coupon"),
               c_freq = t.column("frequency"), c_mat = t.column("maturity"), c_amount = t.column("issue_amount");
    BondTable out;
    for (const auto& r : t.rows) {
        auto b = std::make_shared<FixedCouponBond>();
        b->bond_id = r.fields[c_id];
        b->issuer_id = r.fields[c_issuer];
        b->coupon_rate = to_double(t, r, c_coupon);
        if (b->coupon_rate < 0.0) fail(t, r, "coupon must be non-negative");
        const auto freq = csv::to_integer(t, r, c_freq);
        if (freq != 1 && freq != 2) fail(t, r, "frequency must be 1 or 2");
        b->frequency = static_cast<int>(freq);
        b->maturity = date_field(t, r, c_mat);
        b->issue_amount = positive(t, r, c_amount);
        if (!out.emplace(b->bond_id, std::move(b)).second) fail(t, r, "duplicate bond_id");
    }
    return out;
}

std::vector<BondQuote> load_bond_quotes(const std::filesystem::path& path, const BondTable& bonds) {
    const auto t = read_nonempty(path);
    const auto c_date = t.column("date"), c_id = t.column("bond_id");
    const bool dirty = t.has_column("dirty_price");
    if (!dirty && !(t.has_column("clean_price") && t.has_column("accrued")))
        throw DataError(t.source + ":1: expected dirty_price or clean_price and accrued columns");
    const std::size_t c_dirty = dirty ? t.column("dirty_price") : 0;
    const std::size_t c_clean = dirty ? 0 : t.column("clean_price");
    const std::size_t c_accrued = dirty ? 0 : t.column("accrued");
    std::vector<BondQuote> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        const auto it = bonds.find(r.fields[c_id]);
        if (it == bonds.end()) fail(t, r, "unknown bond_id '" + r.fields[c_id] + "'");
        const double price = dirty ? to_double(t, r, c_dirty) : to_double(t, r, c_clean) + to_double(t, r, c_accrued);
        if (!(price > 0.0)) fail(t, r, "dirty price must be positive");
        out.push_back({it->second, date_field(t, r, c_date), price});
    }
    return out;
}

std::vector<IssuerRecord> load_issuers(const std::filesystem::path& path) {
    const auto t = read_nonempty(path);
    const auto c_id = t.column("issuer_id"), c_name = t.column("name"), c_em = t.column("emissions_mt"),
               c_sector = t.column("sector");
    std::vector<IssuerRecord> out;
    for (const auto& r : t.rows) out.push_back({r.fields[c_id], r.fields[c_name], positive(t, r, c_em), r.fields[c_sector]});
    return out;
}

ControlLevels load_controls(const std::filesystem::path& path) {
    const auto t = read_nonempty(path);
    const auto c_date = t.column("date"), c_spx = t.column("spx"), c_vix = t.column("vix"), c_wti = t.column("wti");
    ControlLevels out;
    for (const auto& r : t.rows) {
        const Date d = date_field(t, r, c_date);
        if (!out.dates.empty() && d <= out.dates.back()) fail(t, r, "dates must be strictly increasing");
        out.dates.push_back(d);
        out.spx.push_back(positive(t, r, c_spx));
        out.vix.push_back(to_double(t, r, c_vix));
        out.wti.push_back(positive(t, r, c_wti));
    }
    if (out.dates.size() < 2) throw DataError(t.source + ": need at least two control rows for log-returns");
    return out;
}

ControlSet to_control_set(const ControlLevels& c) {
    const std::size_t n = c.dates.size();
    std::vector<Date> dates(c.dates.begin() + 1, c.dates.end());
    std::vector<double> spx(n - 1), wti(n - 1), vix(c.vix.begin() + 1, c.vix.end());
    for (std::size_t i = 1; i < n; ++i) {
        spx[i - 1] = std::log(c.spx[i] / c.spx[i - 1]);
        wti[i - 1] = std::log(c.wti[i] / c.wti[i - 1]);
    }
    ControlSet out;
    out.spx_logret = TradingDaySeries(dates, spx, "SPX");
    out.vix_level = TradingDaySeries(dates, vix, "VIX");
    out.wti_logret = TradingDaySeries(std::move(dates), wti, "WTI");
    return out;
}

std::string futures_csv(std::span<const FuturesQuote> quotes) {
    std::string out = "date,contract_id,maturity,settle,volume\n";
    for (const auto& q : quotes)
        out += format_date(q.quote_date) + "," + q.contract_id + "," + format_date(q.maturity) + "," +
               format_exact(q.settle_price) + "," + std::to_string(q.volume) + "\n";
    return out;
}

std::string spot_csv(std::span<const SpotProxy> spot) {
    std::string out = "date,price\n";
    for (const auto& s : spot) out += format_date(s.quote_date) + "," + format_exact(s.price) + "\n";
    return out;
}

std::string ois_csv(const OisQuotesByDate& quotes) {
    std::string out = "date,tenor,rate\n";
    for (const auto& [d, strip] : quotes)
        for (const auto& q : strip) out += format_date(d) + "," + q.tenor.to_string() + "," + format_exact(q.par_rate) + "\n";
    return out;
}

std::string bonds_csv(const BondTable& bonds) {
    std::string out = "bond_id,issuer_id,coupon,frequency,maturity,issue_amount\n";
    for (const auto& [id, b] : bonds)
        out += id + "," + b->issuer_id + "," + format_exact(b->coupon_rate) + "," + std::to_string(b->frequency) + "," +
               format_date(b->maturity) + "," + format_exact(b->issue_amount) + "\n";
    return out;
}

std::string bond_quotes_csv(std::span<const BondQuote> quotes) {
    std::string out = "date,bond_id,dirty_price\n";
    for (const auto& q : quotes)
        out += format_date(q.quote_date) + "," + q.bond->bond_id + "," + format_exact(q.dirty_price) + "\n";
    return out;
}

std::string issuers_csv(std::span<const IssuerRecord> issuers) {
    std::string out = "issuer_id,name,emissions_mt,sector\n";
    for (const auto& i : issuers) out += i.issuer_id + "," + i.name + "," + format_exact(i.emissions) + "," + i.sector + "\n";
    return out;
}

std::string controls_csv(const ControlLevels& c) {
    std::string out = "date,spx,vix,wti\n";
    for (std::size_t i = 0; i < c.dates.size(); ++i)
        out += format_date(c.dates[i]) + "," + format_exact(c.spx[i]) + "," + format_exact(c.vix[i]) + "," +
               format_exact(c.wti[i]) + "\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path.string() + ": cannot write file");
    out << text;
    if (!out) throw DataError(path.string() + ": write failed");
}

}  // namespace cspread
