#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cspread/curves/discount_curve.hpp"
#include "cspread/econometrics/ecm.hpp"
#include "cspread/instruments/bond.hpp"
#include "cspread/instruments/futures.hpp"
#include "cspread/instruments/z_index.hpp"

namespace cspread {

/// Raw control levels as ingested from `date,spx,vix,wti`.
struct ControlLevels {
    std::vector<Date> dates;
    std::vector<double> spx;
    std::vector<double> vix;
    std::vector<double> wti;
};

using BondTable = std::map<std::string, std::shared_ptr<const FixedCouponBond>>;
using OisQuotesByDate = std::map<Date, std::vector<OisQuote>>;

// Loaders. All failures are DataError with `file:line` context; files with a
// header but no rows are rejected.
[[nodiscard]] std::vector<FuturesQuote> load_futures(const std::filesystem::path& path);
[[nodiscard]] std::vector<SpotProxy> load_spot(const std::filesystem::path& path);
[[nodiscard]] OisQuotesByDate load_ois(const std::filesystem::path& path);
[[nodiscard]] BondTable load_bonds(const std::filesystem::path& path);
/// Accepts `date,bond_id,dirty_price` or `date,bond_id,clean_price,accrued`.
[[nodiscard]] std::vector<BondQuote> load_bond_quotes(const std::filesystem::path& path, const BondTable& bonds);
[[nodiscard]] std::vector<IssuerRecord> load_issuers(const std::filesystem::path& path);
[[nodiscard]] ControlLevels load_controls(const std::filesystem::path& path);

/// SPX and WTI to log-returns, VIX kept in levels on the return dates.
/// `sigma` is left empty; the pipeline fills it from the GARCH fit.
[[nodiscard]] ControlSet to_control_set(const ControlLevels& levels);

// Writers producing the same formats, values in shortest round-trip form.
[[nodiscard]] std::string futures_csv(std::span<const FuturesQuote> quotes);
[[nodiscard]] std::string spot_csv(std::span<const SpotProxy> spot);
[[nodiscard]] std::string ois_csv(const OisQuotesByDate& quotes);
[[nodiscard]] std::string bonds_csv(const BondTable& bonds);
[[nodiscard]] std::string bond_quotes_csv(std::span<const BondQuote> quotes);
[[nodiscard]] std::string issuers_csv(std::span<const IssuerRecord> issuers);
[[nodiscard]] std::string controls_csv(const ControlLevels& controls);

/// Writes `text` to `path`, creating parent directories. Throws DataError when unwritable.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cspread
