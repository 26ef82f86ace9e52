#include "coinopt/payoff.hpp"

#include <algorithm>

namespace coinopt {

void Settlement::validate() const {
    if (!(price > 0.0)) throw std::invalid_argument("settlement price must be positive");
    if (spot_at_settlement && !(*spot_at_settlement > 0.0))
        throw std::invalid_argument("spot at settlement must be positive");
}

Money payoff(const OptionContract& contract, const Settlement& settlement) {
    contract.validate();
    settlement.validate();
    const double s = settlement.price;
    const double intrinsic = std::max(omega(contract.side) * (s - contract.strike), 0.0);
    const double n = contract.notional;
    switch (contract.product) {
        case ProductClass::Standard:
        case ProductClass::Direct:
            return {n * intrinsic, contract.underlying_quote};
        case ProductClass::Inverse:
            return {n * intrinsic / s, contract.underlying_base};
        case ProductClass::StandardQuanto:
        case ProductClass::QuantoDirect:
            return {n * contract.fix->xbar * intrinsic, contract.fix->target};
        case ProductClass::QuantoInverse:
            return {n * contract.fix->xbar * intrinsic / s, contract.fix->target};
    }
    throw std::logic_error("unreachable product class");
}

Money usd_translation(const Money& inverse_payoff, const OptionContract& contract,
                      const Settlement& settlement) {
    if (inverse_payoff.denom != contract.underlying_base)
        throw std::invalid_argument("usd_translation: payoff not denominated in the base currency");
    if (!settlement.spot_at_settlement)
        throw std::invalid_argument("usd_translation: spot at settlement missing");
    return {inverse_payoff.amount * *settlement.spot_at_settlement, contract.underlying_quote};
}

std::vector<std::vector<Money>> payoff_table(std::span<const double> settlement_prices,
                                             std::span<const OptionContract> contracts) {
    if (settlement_prices.empty()) throw std::invalid_argument("payoff_table: empty settlement grid");
    std::vector<std::vector<Money>> table;
    table.reserve(contracts.size());
    for (const auto& contract : contracts) {
        auto& row = table.emplace_back();
        row.reserve(settlement_prices.size());
        for (double s : settlement_prices) row.push_back(payoff(contract, Settlement{s, {}}));
    }
    return table;
}

}  // namespace coinopt
