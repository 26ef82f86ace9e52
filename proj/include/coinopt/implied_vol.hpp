#pragma once

#include <optional>

#include "coinopt/core.hpp"

namespace coinopt {

struct IvResult {
    double sigma{};
    int iterations{};
    double residual{};
    /// True when the price-vs-vol curve crosses the target more than once in
    /// the search bracket. `sigma` is then the smallest crossing.
    bool multiple_roots{false};
};

/// Back out sigma from an observed price. Searches sigma in [1e-4, 10] with
/// a sign-scan followed by bisection-safeguarded refinement; converges to
/// |price(sigma) - target| <= 1e-10 * max(1, target). Quanto-inverse prices
/// are not monotone in sigma, so multiple crossings are reported rather than
/// silently collapsed.
IvResult implied_vol(ProductClass product, OptionSide side, double target_price, double S,
                     double K, std::optional<double> xbar, double r, double r_f, double tau);

}  // namespace coinopt
