#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coinopt/core.hpp"
#include "coinopt/greeks.hpp"

namespace coinopt {

/// Exchange-style instrument name, e.g. "BTC-30SEP22-25000-C".
struct InstrumentName {
    Currency asset;
    std::chrono::year_month_day expiry{};
    double strike{};
    OptionSide side{OptionSide::Call};

    /// Canonical text form: uppercase asset, day without leading zero,
    /// strike with trailing zeros trimmed.
    std::string str() const;
};

/// Grammar: ASSET "-" D?D MMM YY "-" STRIKE "-" ("C"|"P"). Errors name the
/// offending token.
InstrumentName parse_instrument(const std::string& text);

struct ChainRow {
    InstrumentName instrument;
    ProductClass product{};
    double spot{};
    double vol{};
    double rate{};
    std::optional<double> quanto_fix;
    std::optional<double> observed_price;
    std::size_t line{};
};

/// Read rows under the header
/// `instrument,class,spot,vol,rate,quanto_fix,observed_price`. In strict
/// mode any bad row aborts with its line number; in lenient mode bad rows
/// are dropped and a warning goes to `warnings`.
std::vector<ChainRow> load_chain(std::istream& in, bool lenient = false,
                                 std::vector<std::string>* warnings = nullptr);

struct PricedRow {
    std::string instrument;
    GreekReport greeks;
    std::optional<double> implied_vol;
};

/// Price and differentiate one row as of the given valuation time (seconds
/// since the Unix epoch, UTC). Expiry counts as midnight UTC; ACT/365.
/// Prices and Greeks are reported in the class's natural settlement
/// denomination. When observed_price is present the implied vol is backed
/// out from it.
PricedRow price_row(const ChainRow& row, std::chrono::sys_seconds asof);

std::vector<PricedRow> price_chain(const std::vector<ChainRow>& rows,
                                   std::chrono::sys_seconds asof);

/// Write `instrument,price,delta,gamma,vega,volga,vanna,theta,implied_vol`
/// with 17-significant-digit values (bit round-trip safe); implied_vol is
/// blank when absent.
void emit_priced_chain(const std::vector<PricedRow>& rows, std::ostream& out);

/// Read back a file written by emit_priced_chain; values reproduce
/// bit-for-bit.
std::vector<PricedRow> load_priced_chain(std::istream& in);

/// "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SSZ" to a UTC timestamp.
std::chrono::sys_seconds parse_timestamp(const std::string& text);

}  // namespace coinopt
