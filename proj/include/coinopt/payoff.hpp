#pragma once

#include <span>
#include <vector>

#include "coinopt/core.hpp"

namespace coinopt {

/// Settlement inputs. `price` is the settlement index value S_T; the optional
/// `spot_at_settlement` is the instantaneous spot used to translate
/// coin-denominated payoffs into the quote currency.
struct Settlement {
    double price{};
    std::optional<double> spot_at_settlement;

    void validate() const;
};

/// Terminal payoff of a contract. Denomination follows the product class:
/// standard/direct in quote units, inverse in base units, quanto classes in
/// the fix's target units.
Money payoff(const OptionContract& contract, const Settlement& settlement);

/// Translate a base-denominated inverse payoff into quote units at the
/// instantaneous spot.
Money usd_translation(const Money& inverse_payoff, const OptionContract& contract,
                      const Settlement& settlement);

/// One row per contract, one column per settlement price.
std::vector<std::vector<Money>> payoff_table(std::span<const double> settlement_prices,
                                             std::span<const OptionContract> contracts);

}  // namespace coinopt
