#pragma once

#include <functional>
#include <span>
#include <vector>

#include "coinopt/core.hpp"

namespace coinopt {

/// Price plus sensitivities. Theta is reported as -d(price)/d(tau).
struct GreekReport {
    double price{};
    double delta{};
    double gamma{};
    double vega{};
    double volga{};
    double vanna{};
    double theta{};
    Currency denom;
};

/// Central-difference bump sizes. Spot bump is relative, vol and tau bumps
/// absolute. Seconds derivatives use Richardson extrapolation, so the vol
/// bump can sit well above the first-derivative optimum.
struct BumpSpec {
    double h_spot_rel{1e-4};
    double h_vol{4e-3};
    double h_tau{1e-5};

    void validate() const;
};

/// Closed-form Greeks of the quote-denominated inverse (Garman-Kohlhagen)
/// price.
GreekReport greeks_inverse(OptionSide side, double S, double K, double r, double r_f, double sigma,
                           double tau);

/// Closed-form Greeks of the quanto-inverse price, xbar included in every
/// entry. The volga expression ships in the finite-difference-consistent
/// grouping: the phi(d3) term enters with weight +omega sigma (dd3/dsigma).
GreekReport greeks_quanto_inverse(OptionSide side, double S, double K, double xbar, double r,
                                  double sigma, double tau);

/// Per-class dispatch. Standard, direct and both plain quanto classes carry
/// the quote-denominated sensitivities (scaled by the fix where one
/// applies); the inverse class reports its base-denominated price alongside
/// the quote-denominated sensitivities of Garman-Kohlhagen.
GreekReport greeks_for(ProductClass product, OptionSide side, double S, double K,
                       std::optional<double> xbar, double r, double r_f, double sigma, double tau);

/// Price as a function of (spot, vol, tau); everything else held fixed.
using PriceFn = std::function<double(double S, double sigma, double tau)>;

/// Central finite differences of an arbitrary pricer, with Richardson
/// extrapolation on every entry. Tau bumps that would cross zero are shrunk.
GreekReport fd_greeks(const PriceFn& pricer, double S, double sigma, double tau,
                      const BumpSpec& bumps = {});

struct GreekCurvePoint {
    ProductClass product{};
    OptionSide side{};
    double maturity_days{};
    double strike{};
    GreekReport greeks;
};

/// Greek curves over a strike grid for inverse and quanto-inverse options,
/// both sides, one block per maturity.
std::vector<GreekCurvePoint> greek_curves(double spot, double xbar, double r, double sigma,
                                          std::span<const double> strikes,
                                          std::span<const double> maturities_days);

}  // namespace coinopt
