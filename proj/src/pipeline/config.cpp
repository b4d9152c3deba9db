#include "cspread/pipeline/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cspread {

namespace {

std::optional<int> parse_auto_int(const std::string& key, const std::string& v) {
    if (v == "auto") return std::nullopt;
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || out < 0)
        throw std::invalid_argument("config: " + key + " expects a non-negative integer or 'auto', got '" + v + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    const auto out = parse_auto_int(key, v);
    if (!out) throw std::invalid_argument("config: " + key + " expects an integer");
    return *out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "off" || v == "no") return false;
    throw std::invalid_argument("config: " + key + " expects true/false, got '" + v + "'");
}

std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "auto"; }

using Setter = std::function<void(PipelineConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"data.dir", [](auto& c, auto&, auto& v) { c.data_dir = v; }},
        {"data.futures", [](auto& c, auto&, auto& v) { c.futures = v; }},
        {"data.spot", [](auto& c, auto&, auto& v) { c.spot = v; }},
        {"data.ois", [](auto& c, auto&, auto& v) { c.ois = v; }},
        {"data.bonds", [](auto& c, auto&, auto& v) { c.bonds = v; }},
        {"data.bond_quotes", [](auto& c, auto&, auto& v) { c.bond_quotes = v; }},
        {"data.issuers", [](auto& c, auto&, auto& v) { c.issuers = v; }},
        {"data.controls", [](auto& c, auto&, auto& v) { c.controls = v; }},
        {"window.start", [](auto& c, auto&, auto& v) { c.start = parse_date(v); }},
        {"window.end", [](auto& c, auto&, auto& v) { c.end = parse_date(v); }},
        {"roll.months", [](auto& c, auto& k, auto& v) { c.roll_months = parse_int(k, v); }},
        {"zindex.variant", [](auto& c, auto&, auto& v) { c.z_index = parse_z_index_variant(v); }},
        {"transform.winsorize",
         [](auto& c, auto& k, auto& v) {
             if (v == "none") {
                 c.winsorize.reset();
             } else {
                 const int level = parse_int(k, v);
                 if (level != 95 && level != 99) throw std::invalid_argument("config: " + k + " must be none, 95 or 99");
                 c.winsorize = level;
             }
         }},
        {"transform.frequency",
         [](auto& c, auto& k, auto& v) {
             if (v == "daily") c.frequency = Frequency::daily;
             else if (v == "weekly") c.frequency = Frequency::weekly;
             else throw std::invalid_argument("config: " + k + " must be daily or weekly");
         }},
        {"adf.deterministic", [](auto& c, auto&, auto& v) { c.adf_deterministic = parse_deterministic(v); }},
        {"adf.max_lag", [](auto& c, auto& k, auto& v) { c.adf_max_lag = parse_auto_int(k, v); }},
        {"johansen.lag", [](auto& c, auto& k, auto& v) { c.johansen_lag = parse_auto_int(k, v); }},
        {"johansen.max_lag", [](auto& c, auto& k, auto& v) { c.johansen_max_lag = parse_int(k, v); }},
        {"ecm.variant", [](auto& c, auto&, auto& v) { c.ecm_variant = parse_ecm_variant(v); }},
        {"ecm.lags", [](auto& c, auto& k, auto& v) { c.ecm_lags = parse_int(k, v); }},
        {"ecm.hac_bandwidth", [](auto& c, auto& k, auto& v) { c.hac_bandwidth = parse_auto_int(k, v); }},
        {"pacf.lags", [](auto& c, auto& k, auto& v) { c.pacf_lags = parse_int(k, v); }},
        {"controls.enabled", [](auto& c, auto& k, auto& v) { c.controls_enabled = parse_bool(k, v); }},
        {"robustness.enabled", [](auto& c, auto& k, auto& v) { c.robustness = parse_bool(k, v); }},
        {"seed",
         [](auto& c, auto& k, auto& v) {
             std::uint64_t s = 0;
             const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
             if (ec != std::errc{} || ptr != v.data() + v.size())
                 throw std::invalid_argument("config: " + k + " expects an unsigned integer");
             c.seed = s;
         }},
        {"mc.draws", [](auto& c, auto& k, auto& v) { c.mc_draws = parse_int(k, v); }},
        {"mc.seeds", [](auto& c, auto& k, auto& v) { c.mc_seeds = parse_int(k, v); }},
    };
    return table;
}

void validate(const PipelineConfig& c) {
    if (c.start && c.end && !(*c.start < *c.end)) throw std::invalid_argument("config: window.start must precede window.end");
    if (c.roll_months < 0) throw std::invalid_argument("config: roll.months must be non-negative");
    if (c.johansen_max_lag < 1) throw std::invalid_argument("config: johansen.max_lag must be at least 1");
    if (c.johansen_lag && *c.johansen_lag < 1) throw std::invalid_argument("config: johansen.lag must be at least 1");
    if (c.pacf_lags < 1) throw std::invalid_argument("config: pacf.lags must be at least 1");
}

}  // namespace

std::filesystem::path PipelineConfig::resolve(const std::filesystem::path& p) const {
    return p.is_absolute() ? p : data_dir / p;
}

PipelineConfig parse_config(const std::string& yaml_text, const std::filesystem::path& base_dir) {
    PipelineConfig cfg;
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (root.IsNull()) return cfg;
    if (!root.IsMap()) throw std::invalid_argument("config: expected a mapping of dotted keys");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!kv.second.IsScalar()) throw std::invalid_argument("config: " + key + " must be a scalar (use dotted keys)");
        const auto it = setters().find(key);
        if (it == setters().end()) throw std::invalid_argument("config: unknown key '" + key + "'");
        it->second(cfg, key, kv.second.Scalar());
    }
    if (cfg.data_dir.is_relative()) cfg.data_dir = base_dir / cfg.data_dir;
    cfg.data_dir = cfg.data_dir.lexically_normal();
    validate(cfg);
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.parent_path().empty() ? "." : path.parent_path());
}

std::string canonical_config(const PipelineConfig& c) {
    std::map<std::string, std::string> kv{
        {"data.dir", c.data_dir.generic_string()},
        {"data.futures", c.futures.generic_string()},
        {"data.spot", c.spot.generic_string()},
        {"data.ois", c.ois.generic_string()},
        {"data.bonds", c.bonds.generic_string()},
        {"data.bond_quotes", c.bond_quotes.generic_string()},
        {"data.issuers", c.issuers.generic_string()},
        {"data.controls", c.controls.generic_string()},
        {"window.start", c.start ? format_date(*c.start) : "auto"},
        {"window.end", c.end ? format_date(*c.end) : "auto"},
        {"roll.months", std::to_string(c.roll_months)},
        {"zindex.variant", to_string(c.z_index)},
        {"transform.winsorize", c.winsorize ? std::to_string(*c.winsorize) : "none"},
        {"transform.frequency", to_string(c.frequency)},
        {"adf.deterministic", to_string(c.adf_deterministic)},
        {"adf.max_lag", opt_text(c.adf_max_lag)},
        {"johansen.lag", opt_text(c.johansen_lag)},
        {"johansen.max_lag", std::to_string(c.johansen_max_lag)},
        {"ecm.variant", to_string(c.ecm_variant)},
        {"ecm.lags", std::to_string(c.ecm_lags)},
        {"ecm.hac_bandwidth", opt_text(c.hac_bandwidth)},
        {"pacf.lags", std::to_string(c.pacf_lags)},
        {"controls.enabled", c.controls_enabled ? "true" : "false"},
        {"robustness.enabled", c.robustness ? "true" : "false"},
        {"seed", std::to_string(c.seed)},
        {"mc.draws", std::to_string(c.mc_draws)},
        {"mc.seeds", std::to_string(c.mc_seeds)},
    };
    std::string out;
    for (const auto& [k, v] : kv) out += k + ": " + v + "\n";
    return out;
}

std::string to_string(Frequency f) { return f == Frequency::daily ? "daily" : "weekly"; }
std::string to_string(Deterministic d) { return d == Deterministic::constant ? "constant" : "trend"; }

}  // namespace cspread
