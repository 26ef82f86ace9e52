#include "coinopt/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "coinopt/analytic.hpp"
#include "coinopt/greeks.hpp"

namespace coinopt {

namespace {

constexpr double kZeroVol = 1e-12;

// Cash value of the payoff: base-denominated inverse payoffs are translated
// at the terminal index level, which collapses them to the standard payoff.
double cash_payoff(const OptionContract& c, double terminal_index) {
    const double i = std::max(omega(c.side) * (terminal_index - c.strike), 0.0);
    switch (c.product) {
        case ProductClass::Standard:
        case ProductClass::Direct:
        case ProductClass::Inverse:
            return c.notional * i;
        case ProductClass::StandardQuanto:
        case ProductClass::QuantoDirect:
            return c.notional * c.fix->xbar * i;
        case ProductClass::QuantoInverse:
            return c.notional * c.fix->xbar * i / terminal_index;
    }
    throw std::logic_error("unreachable product class");
}

bool forward_itm(const OptionContract& c, const MarketState& m, double level, double rem) {
    const double fwd = level * std::exp((m.rate_dom - m.rate_for) * rem);
    return omega(c.side) * (fwd - c.strike) > 0.0;
}

// Premium in cash units; degrades to the deterministic-forward value when
// the pricing vol is zero.
double cash_price(const OptionContract& c, const MarketState& m, double level, double rem) {
    const double w = omega(c.side);
    const bool quanto_std =
        c.product == ProductClass::StandardQuanto || c.product == ProductClass::QuantoDirect;
    const double mult = quanto_std ? c.fix->xbar : 1.0;
    if (m.vol < kZeroVol) {
        if (!forward_itm(c, m, level, rem)) return 0.0;
        if (c.product == ProductClass::QuantoInverse) {
            const double fwd = level * std::exp(m.rate_dom * rem);
            return c.notional * c.fix->xbar * discount(m.rate_dom, rem) * w * (fwd - c.strike) /
                   fwd;
        }
        return c.notional * mult *
               w * (level * discount(m.rate_for, rem) - c.strike * discount(m.rate_dom, rem));
    }
    if (c.product == ProductClass::QuantoInverse)
        return c.notional *
               price_quanto_inverse(c.side, level, c.strike, c.fix->xbar, m.rate_dom, m.vol, rem);
    return c.notional * mult *
           price_standard(c.side, level, c.strike, m.rate_dom, m.rate_for, m.vol, rem);
}

double cash_delta(const OptionContract& c, const MarketState& m, GreekSource source, double level,
                  double rem) {
    const double w = omega(c.side);
    bool quanto = source == GreekSource::QuantoInverse ||
                  (source == GreekSource::Auto && c.product == ProductClass::QuantoInverse);
    const bool quanto_std =
        c.product == ProductClass::StandardQuanto || c.product == ProductClass::QuantoDirect;
    const double mult = quanto_std && !quanto ? c.fix->xbar : 1.0;
    if (m.vol < kZeroVol) {
        if (!forward_itm(c, m, level, rem)) return 0.0;
        if (quanto)
            return c.notional * w * c.fix->xbar * std::exp(-2.0 * m.rate_dom * rem) * c.strike /
                   (level * level);
        return c.notional * mult * w * discount(m.rate_for, rem);
    }
    if (quanto)
        return c.notional * greeks_quanto_inverse(c.side, level, c.strike, c.fix->xbar, m.rate_dom,
                                                  m.vol, rem)
                                .delta;
    return c.notional * mult *
           greeks_inverse(c.side, level, c.strike, m.rate_dom, m.rate_for, m.vol, rem).delta;
}

double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

GreekSource parse_greek_source(const std::string& text) {
    if (text == "auto") return GreekSource::Auto;
    if (text == "inverse") return GreekSource::Inverse;
    if (text == "quanto-inverse") return GreekSource::QuantoInverse;
    throw std::invalid_argument("unknown greek source: " + text);
}

std::string to_string(GreekSource g) {
    switch (g) {
        case GreekSource::Auto: return "auto";
        case GreekSource::Inverse: return "inverse";
        case GreekSource::QuantoInverse: return "quanto-inverse";
    }
    throw std::logic_error("unreachable greek source");
}

void HedgeSimConfig::validate(double tau) const {
    if (!(sigma_index >= 0.0) || !(sigma_hedge >= 0.0))
        throw std::invalid_argument("simulation vols must be nonnegative");
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [-1, 1]");
    if (!(rebalance_dt > 0.0) || rebalance_dt > tau + 1e-15)
        throw std::invalid_argument("rebalance_dt must be positive and at most tau");
    paths.validate();
}

HedgeReport simulate_hedge(const OptionContract& contract, const MarketState& market,
                           const HedgeSimConfig& cfg) {
    contract.validate();
    market.validate();
    if (!(market.tau > 0.0)) throw std::invalid_argument("hedge simulation requires tau > 0");
    cfg.validate(market.tau);

    const auto n_steps =
        static_cast<std::size_t>(std::llround(market.tau / cfg.rebalance_dt));
    const double dt = market.tau / static_cast<double>(n_steps);
    const double sq_dt = std::sqrt(dt);
    const double eps = std::sqrt(std::max(0.0, 1.0 - cfg.rho * cfg.rho));
    const double drift_b = (cfg.mu_index - 0.5 * cfg.sigma_index * cfg.sigma_index) * dt;
    const double drift_h = (cfg.mu_hedge - 0.5 * cfg.sigma_hedge * cfg.sigma_hedge) * dt;
    const double grow = std::exp(market.rate_dom * dt);
    const double df = discount(market.rate_dom, market.tau);
    const double premium = cash_price(contract, market, market.spot, market.tau);

    const std::size_t n = cfg.paths.n_paths;
    std::vector<double> pnl(n);

    // Two driver draws per step; the stream index ignores rho so that a rho
    // sweep under one seed reuses identical shocks.
    auto shock = [&](std::size_t unit, std::size_t step, int which) {
        return inv_norm_cdf(
            counter_uniform(cfg.paths.seed, (unit * n_steps + step) * 2 + which));
    };

    auto run_path = [&](std::size_t i) {
        const std::size_t unit = cfg.paths.antithetic ? i / 2 : i;
        const double sign = (cfg.paths.antithetic && i % 2 == 1) ? -1.0 : 1.0;
        double b = market.spot;
        double s = market.spot;
        double pos = cash_delta(contract, market, cfg.greek_source, b, market.tau) * b / s;
        double cash = premium - pos * s;
        for (std::size_t step = 0; step < n_steps; ++step) {
            const double zh = sign * shock(unit, step, 0);
            const double zo = sign * shock(unit, step, 1);
            const double zb = cfg.rho * zh + eps * zo;
            cash *= grow;
            b *= std::exp(drift_b + cfg.sigma_index * sq_dt * zb);
            s *= std::exp(drift_h + cfg.sigma_hedge * sq_dt * zh);
            if (step + 1 < n_steps) {
                const double rem = market.tau - static_cast<double>(step + 1) * dt;
                const double next =
                    cash_delta(contract, market, cfg.greek_source, b, rem) * b / s;
                cash -= (next - pos) * s;
                pos = next;
            }
        }
        pnl[i] = df * (pos * s + cash - cash_payoff(contract, b));
    };

    const unsigned workers = std::min<unsigned>(cfg.paths.workers, 64);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_path(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) run_path(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    double sum = 0.0;
    for (double v : pnl) sum += v;
    const double mean = sum / static_cast<double>(n);
    double ssq = 0.0;
    for (double v : pnl) ssq += (v - mean) * (v - mean);
    const double sd = n > 1 ? std::sqrt(ssq / static_cast<double>(n - 1)) : 0.0;

    std::vector<double> sorted = pnl;
    std::sort(sorted.begin(), sorted.end());
    const Currency denom = is_quanto(contract.product) ? contract.fix->target
                                                       : contract.underlying_quote;
    HedgeReport rep;
    rep.mean_pnl = {mean, denom};
    rep.std_pnl = {sd, denom};
    rep.q01 = {quantile(sorted, 0.01), denom};
    rep.q05 = {quantile(sorted, 0.05), denom};
    rep.q50 = {quantile(sorted, 0.50), denom};
    rep.q95 = {quantile(sorted, 0.95), denom};
    rep.q99 = {quantile(sorted, 0.99), denom};
    rep.n_paths = n;
    return rep;
}

}  // namespace coinopt
