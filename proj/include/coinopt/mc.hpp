#pragma once

#include <cstdint>
#include <vector>

#include "coinopt/core.hpp"

namespace coinopt {

struct PathConfig {
    std::uint64_t seed{1};
    std::size_t n_paths{1'000'000};
    bool antithetic{true};
    unsigned workers{1};

    void validate() const;
};

struct McEstimate {
    Money value;
    double std_error{};
    std::size_t n_effective{};
};

/// The i-th uniform variate in (0,1) of the stream identified by `seed`.
/// Pure function of (seed, i); every sampler in the library draws from it.
double counter_uniform(std::uint64_t seed, std::uint64_t i);

/// Terminal GBM levels S * exp{(drift - sigma^2/2) tau + sigma sqrt(tau) Z}.
/// Variates are counter-based (path index -> uniform -> inverse normal CDF),
/// so the output is a pure function of (inputs, seed) no matter how many
/// workers run. Antithetic mode pairs consecutive samples as (Z, -Z).
std::vector<double> terminal_samples(double S, double drift, double sigma, double tau,
                                     const PathConfig& cfg);

/// Monte-Carlo price of a contract. Quote- and target-denominated classes
/// discount at r under the drift r - r_f; the base-denominated inverse class
/// discounts at r_f under the base-coin measure, drift r - r_f + sigma^2.
/// Estimates are bit-identical across worker counts (block-ordered
/// reduction). tau <= 1e-12 returns the exact payoff with zero error.
McEstimate mc_price(const OptionContract& contract, const MarketState& market,
                    const PathConfig& cfg);

}  // namespace coinopt
