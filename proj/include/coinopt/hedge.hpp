#pragma once

#include "coinopt/core.hpp"
#include "coinopt/mc.hpp"

namespace coinopt {

/// Which closed-form delta the rebalancing uses. Auto follows the contract
/// class.
enum class GreekSource { Auto, Inverse, QuantoInverse };

GreekSource parse_greek_source(const std::string& text);
std::string to_string(GreekSource g);

/// Delta hedging of a contract written on a non-tradable index, trading a
/// correlated instrument. Both processes are GBM with instantaneous
/// correlation rho between their drivers.
struct HedgeSimConfig {
    double mu_index{};
    double sigma_index{};
    double mu_hedge{};
    double sigma_hedge{};
    double rho{1.0};
    double rebalance_dt{};
    GreekSource greek_source{GreekSource::Auto};
    PathConfig paths;

    void validate(double tau) const;
};

struct HedgeReport {
    Money mean_pnl;
    Money std_pnl;
    Money q01, q05, q50, q95, q99;
    std::size_t n_paths{};
};

/// Simulate discrete delta hedging to expiry. The writer receives the
/// closed-form premium, rebalances a delta-equivalent position in the hedge
/// instrument on a fixed grid, and accrues cash at r. Reported P&L is the
/// discounted difference between the terminal portfolio and the payoff,
/// valued in the contract's cash currency. Draws depend only on
/// (seed, path, step), so a rho sweep with one seed is coupled by common
/// random numbers.
HedgeReport simulate_hedge(const OptionContract& contract, const MarketState& market,
                           const HedgeSimConfig& cfg);

}  // namespace coinopt
