#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cspread/core/date.hpp"
#include "cspread/econometrics/adf_gls.hpp"
#include "cspread/econometrics/ecm.hpp"
#include "cspread/instruments/z_index.hpp"

namespace cspread {

enum class Frequency { daily, weekly };

/// Resolved run configuration. Every field has a default, so a config file
/// only needs the keys it changes (usually just `data.dir`).
struct PipelineConfig {
    // Inputs. Relative paths resolve against data_dir; an empty controls path disables controls.
    std::filesystem::path data_dir = ".";
    std::filesystem::path futures = "futures.csv";
    std::filesystem::path spot = "spot.csv";
    std::filesystem::path ois = "ois.csv";
    std::filesystem::path bonds = "bonds.csv";
    std::filesystem::path bond_quotes = "bond_quotes.csv";
    std::filesystem::path issuers = "issuers.csv";
    std::filesystem::path controls = "controls.csv";

    std::optional<Date> start;
    std::optional<Date> end;
    int roll_months = 1;

    ZIndexVariant z_index = ZIndexVariant::equal;
    std::optional<int> winsorize;  // 95 or 99
    Frequency frequency = Frequency::daily;

    Deterministic adf_deterministic = Deterministic::constant;
    std::optional<int> adf_max_lag;
    std::optional<int> johansen_lag;  // VAR order; BIC over 1..johansen_max_lag when unset
    int johansen_max_lag = 10;
    EcmVariant ecm_variant = EcmVariant::I;
    int ecm_lags = 3;
    std::optional<int> hac_bandwidth;
    int pacf_lags = 20;

    bool controls_enabled = true;
    bool robustness = true;

    std::uint64_t seed = 20130102;
    int mc_draws = 500;
    int mc_seeds = 100;

    [[nodiscard]] std::filesystem::path resolve(const std::filesystem::path& p) const;
    [[nodiscard]] bool has_controls() const { return controls_enabled && !controls.empty(); }
};

/// Reads a YAML mapping of flat dotted keys (`data.dir: fixture`). Unknown
/// keys and malformed values raise std::invalid_argument. Relative
/// `data.dir` values resolve against the config file's directory.
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);
[[nodiscard]] PipelineConfig parse_config(const std::string& yaml_text, const std::filesystem::path& base_dir = ".");

/// Canonical `key: value` listing of every resolved setting, sorted by key.
[[nodiscard]] std::string canonical_config(const PipelineConfig& cfg);

[[nodiscard]] std::string to_string(Frequency f);
[[nodiscard]] std::string to_string(Deterministic d);

}  // namespace cspread
