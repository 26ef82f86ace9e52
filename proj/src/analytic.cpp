#include "coinopt/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "coinopt/payoff.hpp"

namespace coinopt {

namespace {

constexpr double kExpiryTau = 1e-12;  // years; below this we price at intrinsic

void check_positive_inputs(double S, double K, double sigma) {
    if (!(S > 0.0) || !(K > 0.0)) throw std::invalid_argument("S and K must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
}

double intrinsic(OptionSide side, double S, double K) {
    return std::max(omega(side) * (S - K), 0.0);
}

}  // namespace

double price_standard(OptionSide side, double S, double K, double r, double r_f, double sigma,
                      double tau) {
    check_positive_inputs(S, K, sigma);
    if (tau <= kExpiryTau) return intrinsic(side, S, K);
    const auto d = d_values(S, K, r, r_f, sigma, tau);
    const double w = omega(side);
    return w * (discount(r_f, tau) * S * norm_cdf(w * d.d1) -
                discount(r, tau) * K * norm_cdf(w * d.d2));
}

double price_inverse(OptionSide side, double S, double K, double r, double r_f, double sigma,
                     double tau, InverseDenom denom) {
    const double quote = price_standard(side, S, K, r, r_f, sigma, tau);
    return denom == InverseDenom::Quote ? quote : quote / S;
}

double price_quanto_inverse(OptionSide side, double S, double K, double xbar, double r,
                            double sigma, double tau) {
    check_positive_inputs(S, K, sigma);
    if (!(xbar > 0.0)) throw std::invalid_argument("xbar must be positive");
    if (tau <= kExpiryTau) return xbar * intrinsic(side, S, K) / S;
    const auto d = d_values(S, K, r, 0.0, sigma, tau);
    const double w = omega(side);
    const double px = w * discount(r, tau) * xbar *
                      (norm_cdf(w * d.d2) -
                       std::exp((sigma * sigma - r) * tau) * (K / S) * norm_cdf(w * d.d3));
    if (px < -1e-12 * std::max(1.0, xbar))
        throw std::runtime_error("quanto-inverse price came out negative");
    return std::max(px, 0.0);
}

double parity_gap(double call_price, double put_price, double S, double K, double xbar, double r,
                  double sigma, double tau) {
    const double bracket =
        discount(r, tau) * xbar * (1.0 - std::exp((sigma * sigma - r) * tau) * K / S);
    return (call_price - put_price) - bracket;
}

PriceQuote price(const OptionContract& contract, const MarketState& market) {
    contract.validate();
    market.validate();
    const double n = contract.notional;
    const double S = market.spot;
    const double K = contract.strike;
    const double std_px = price_standard(contract.side, S, K, market.rate_dom, market.rate_for,
                                         market.vol, market.tau);
    Money value;
    switch (contract.product) {
        case ProductClass::Standard:
        case ProductClass::Direct:
            value = {n * std_px, contract.underlying_quote};
            break;
        case ProductClass::Inverse:
            value = {n * std_px / S, contract.underlying_base};
            break;
        case ProductClass::StandardQuanto:
        case ProductClass::QuantoDirect:
            value = {n * contract.fix->xbar * std_px, contract.fix->target};
            break;
        case ProductClass::QuantoInverse:
            if (market.rate_for != 0.0)
                throw std::invalid_argument(
                    "quanto-inverse pricing assumes a zero base-coin rate; got nonzero rate_for");
            value = {n * price_quanto_inverse(contract.side, S, K, contract.fix->xbar,
                                              market.rate_dom, market.vol, market.tau),
                     contract.fix->target};
            break;
    }
    return {value, contract.product, contract.side, market};
}

}  // namespace coinopt
