#pragma once

#include "coinopt/core.hpp"

namespace coinopt {

struct PriceQuote {
    Money value;
    ProductClass product{};
    OptionSide side{};
    MarketState inputs;
};

enum class InverseDenom { Base, Quote };

/// Garman-Kohlhagen price, quote denomination:
/// omega [ e^{-r_f tau} S Phi(omega d1) - e^{-r tau} K Phi(omega d2) ].
/// tau <= 1e-12 returns the intrinsic payoff.
double price_standard(OptionSide side, double S, double K, double r, double r_f, double sigma,
                      double tau);

/// Inverse option price. Quote denomination equals the standard price;
/// base denomination is the standard price divided by spot (FX duality).
double price_inverse(OptionSide side, double S, double K, double r, double r_f, double sigma,
                     double tau, InverseDenom denom);

/// Quanto-inverse price in target denomination:
/// omega e^{-r tau} xbar [ Phi(omega d2) - e^{(sigma^2-r) tau} (K/S) Phi(omega d3) ].
/// The derivation takes the base-coin rate as zero.
double price_quanto_inverse(OptionSide side, double S, double K, double xbar, double r,
                            double sigma, double tau);

/// (C^q - P^q) - e^{-r tau} xbar [1 - e^{(sigma^2-r) tau} K/S]; zero up to
/// rounding for prices from price_quanto_inverse.
double parity_gap(double call_price, double put_price, double S, double K, double xbar, double r,
                  double sigma, double tau);

/// Per-contract dispatcher; scales by notional and quanto fix, tags the
/// natural settlement denomination of the class.
PriceQuote price(const OptionContract& contract, const MarketState& market);

}  // namespace coinopt
