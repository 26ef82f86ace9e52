#include "coinopt/mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "coinopt/payoff.hpp"

namespace coinopt {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::size_t kBlock = 1 << 16;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

// Z for sample index i; antithetic pairs (2k, 2k+1) share a uniform.
double normal_at(std::uint64_t seed, std::size_t i, bool antithetic) {
    if (antithetic) {
        double z = inv_norm_cdf(counter_uniform(seed, i / 2));
        return (i % 2 == 0) ? z : -z;
    }
    return inv_norm_cdf(counter_uniform(seed, i));
}

void run_workers(unsigned workers, std::size_t n_blocks,
                 const std::function<void(std::size_t)>& do_block) {
    if (workers <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) do_block(b);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t b = w; b < n_blocks; b += workers) do_block(b);
        });
    }
    for (auto& t : pool) t.join();
}

double intrinsic(const OptionContract& c, double terminal_spot) {
    const double i = std::max(omega(c.side) * (terminal_spot - c.strike), 0.0);
    double v = c.notional * i;
    switch (c.product) {
        case ProductClass::Standard:
        case ProductClass::Direct:
            return v;
        case ProductClass::Inverse:
            return v / terminal_spot;
        case ProductClass::StandardQuanto:
        case ProductClass::QuantoDirect:
            return v * c.fix->xbar;
        case ProductClass::QuantoInverse:
            return v * c.fix->xbar / terminal_spot;
    }
    throw std::logic_error("unreachable product class");
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t v = mix64(mix64(seed ^ kGolden) + (i + 1) * kGolden);
    return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

void PathConfig::validate() const {
    if (n_paths < 2) throw std::invalid_argument("n_paths must be at least 2");
    if (antithetic && n_paths % 2 != 0)
        throw std::invalid_argument("antithetic sampling needs an even n_paths");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
}

std::vector<double> terminal_samples(double S, double drift, double sigma, double tau,
                                     const PathConfig& cfg) {
    cfg.validate();
    if (!(S > 0.0) || !(sigma > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("terminal_samples requires positive spot, vol and tau");
    const double base = std::log(S) + (drift - 0.5 * sigma * sigma) * tau;
    const double scale = sigma * std::sqrt(tau);

    std::vector<double> out(cfg.n_paths);
    const std::size_t n_blocks = (cfg.n_paths + kBlock - 1) / kBlock;
    run_workers(cfg.workers, n_blocks, [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(lo + kBlock, cfg.n_paths);
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = std::exp(base + scale * normal_at(cfg.seed, i, cfg.antithetic));
    });
    return out;
}

McEstimate mc_price(const OptionContract& contract, const MarketState& market,
                    const PathConfig& cfg) {
    contract.validate();
    market.validate();
    cfg.validate();

    const Currency denom = contract.payoff_denom();
    if (market.tau <= 1e-12) {
        // expiry: the estimate is the realized payoff itself
        return {{intrinsic(contract, market.spot), denom}, 0.0, cfg.n_paths};
    }

    // Base-denominated payoffs price under the base-coin measure; everything
    // else under the quote measure.
    const bool base_measure = contract.product == ProductClass::Inverse;
    const double s2 = market.vol * market.vol;
    const double drift = base_measure ? market.rate_dom - market.rate_for + s2
                                      : market.rate_dom - market.rate_for;
    const double df = base_measure ? discount(market.rate_for, market.tau)
                                   : discount(market.rate_dom, market.tau);

    const double base = std::log(market.spot) + (drift - 0.5 * s2) * market.tau;
    const double scale = market.vol * std::sqrt(market.tau);

    // One statistical unit is an antithetic pair (or a single path). Block
    // sums are combined in index order so the reduction does not depend on
    // the worker count.
    const std::size_t stride = cfg.antithetic ? 2 : 1;
    const std::size_t n_units = cfg.n_paths / stride;
    const std::size_t n_blocks = (n_units + kBlock - 1) / kBlock;
    std::vector<double> block_sum(n_blocks, 0.0), block_sumsq(n_blocks, 0.0);

    run_workers(cfg.workers, n_blocks, [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n_units);
        double s = 0.0, ss = 0.0;
        for (std::size_t u = lo; u < hi; ++u) {
            double v;
            if (cfg.antithetic) {
                const double z = inv_norm_cdf(counter_uniform(cfg.seed, u));
                v = 0.5 * (intrinsic(contract, std::exp(base + scale * z)) +
                           intrinsic(contract, std::exp(base - scale * z)));
            } else {
                const double z = inv_norm_cdf(counter_uniform(cfg.seed, u));
                v = intrinsic(contract, std::exp(base + scale * z));
            }
            s += v;
            ss += v * v;
        }
        block_sum[b] = s;
        block_sumsq[b] = ss;
    });

    double sum = 0.0, sumsq = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        sum += block_sum[b];
        sumsq += block_sumsq[b];
    }
    const double n = static_cast<double>(n_units);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    McEstimate est;
    est.value = {df * mean, denom};
    est.std_error = df * std::sqrt(var / n);
    est.n_effective = n_units;
    return est;
}

}  // namespace coinopt
