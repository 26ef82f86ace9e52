#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coinopt/hedge.hpp"

using namespace coinopt;

namespace {

OptionContract qi_call() {
    OptionContract c;
    c.underlying_base = BTC;
    c.underlying_quote = USD;
    c.product = ProductClass::QuantoInverse;
    c.side = OptionSide::Call;
    c.strike = 25000.0;
    c.fix = QuantoFix{25000.0, BTC, USD};
    return c;
}

OptionContract std_call(double strike) {
    OptionContract c;
    c.underlying_base = BTC;
    c.underlying_quote = USD;
    c.product = ProductClass::Standard;
    c.side = OptionSide::Call;
    c.strike = strike;
    return c;
}

HedgeSimConfig base_cfg(double tau, int steps) {
    HedgeSimConfig cfg;
    cfg.mu_index = cfg.mu_hedge = 0.0;
    cfg.sigma_index = cfg.sigma_hedge = 0.75;
    cfg.rho = 1.0;
    cfg.rebalance_dt = tau / steps;
    cfg.paths = {17, 4000, true, 4};
    return cfg;
}

}  // namespace

TEST_CASE("deterministic degenerate case has exactly zero pnl") {
    const MarketState m{30000.0, 0.0, 0.0, 0.0, 0.25};
    auto cfg = base_cfg(m.tau, 16);
    cfg.sigma_index = cfg.sigma_hedge = 0.0;
    cfg.paths.n_paths = 100;
    const auto rep = simulate_hedge(std_call(25000.0), m, cfg);
    CHECK(rep.mean_pnl.amount == 0.0);
    CHECK(rep.std_pnl.amount == 0.0);
    CHECK(rep.q01.amount == 0.0);
    CHECK(rep.q99.amount == 0.0);
}

TEST_CASE("degenerate case with carry stays at zero within rounding") {
    const MarketState m{30000.0, 0.0, 0.05, 0.0, 0.25};
    auto cfg = base_cfg(m.tau, 16);
    cfg.sigma_index = cfg.sigma_hedge = 0.0;
    cfg.mu_index = cfg.mu_hedge = 0.05;
    cfg.paths.n_paths = 100;
    const auto rep = simulate_hedge(std_call(25000.0), m, cfg);
    CHECK(std::abs(rep.mean_pnl.amount) < 1e-8);
    CHECK(rep.std_pnl.amount < 1e-8);
}

TEST_CASE("finer rebalancing shrinks the hedge error in the complete case") {
    const MarketState m{25000.0, 0.75, 0.0, 0.0, 30.0 / 365.0};
    const auto coarse = simulate_hedge(std_call(25000.0), m, base_cfg(m.tau, 16));
    const auto fine = simulate_hedge(std_call(25000.0), m, base_cfg(m.tau, 128));
    CHECK(fine.std_pnl.amount < coarse.std_pnl.amount);
    // replication limit: the residual error is already small next to the
    // premium scale
    CHECK(fine.std_pnl.amount < 0.05 * 25000.0);
    // and the mean vanishes within noise when the hedge drift equals r
    CHECK(std::abs(fine.mean_pnl.amount) <=
          3.0 * fine.std_pnl.amount / std::sqrt(static_cast<double>(fine.n_paths)) + 1e-9);
}

TEST_CASE("hedge error is nonincreasing in correlation under common random numbers") {
    const MarketState m{25000.0, 0.5, 0.0, 0.0, 30.0 / 365.0};
    auto cfg = base_cfg(m.tau, 32);
    cfg.sigma_index = cfg.sigma_hedge = 0.5;
    double prev = 1e300;
    for (double rho : {0.5, 0.8, 0.95, 1.0}) {
        cfg.rho = rho;
        const auto rep = simulate_hedge(qi_call(), m, cfg);
        CHECK(rep.std_pnl.amount <= prev);
        prev = rep.std_pnl.amount;
    }
}

TEST_CASE("imperfect correlation leaves irreducible risk") {
    const MarketState m{25000.0, 0.5, 0.0, 0.0, 30.0 / 365.0};
    auto cfg = base_cfg(m.tau, 64);
    cfg.sigma_index = cfg.sigma_hedge = 0.5;
    cfg.rho = 1.0;
    const auto complete = simulate_hedge(qi_call(), m, cfg);
    cfg.rho = 0.8;
    const auto basis = simulate_hedge(qi_call(), m, cfg);
    CHECK(basis.std_pnl.amount > 3.0 * complete.std_pnl.amount);
}

TEST_CASE("reports are bit-identical across worker counts") {
    const MarketState m{25000.0, 0.75, 0.01, 0.0, 30.0 / 365.0};
    auto cfg = base_cfg(m.tau, 32);
    cfg.rho = 0.9;
    cfg.paths.workers = 1;
    const auto a = simulate_hedge(qi_call(), m, cfg);
    cfg.paths.workers = 2;
    const auto b = simulate_hedge(qi_call(), m, cfg);
    cfg.paths.workers = 8;
    const auto c = simulate_hedge(qi_call(), m, cfg);
    CHECK(a.mean_pnl.amount == b.mean_pnl.amount);
    CHECK(a.mean_pnl.amount == c.mean_pnl.amount);
    CHECK(a.std_pnl.amount == b.std_pnl.amount);
    CHECK(a.q50.amount == c.q50.amount);
}

TEST_CASE("config validation") {
    const MarketState m{25000.0, 0.75, 0.0, 0.0, 30.0 / 365.0};
    auto cfg = base_cfg(m.tau, 32);
    cfg.rho = 1.5;
    CHECK_THROWS_AS(simulate_hedge(qi_call(), m, cfg), std::invalid_argument);
    cfg.rho = 0.9;
    cfg.rebalance_dt = m.tau * 2.0;
    CHECK_THROWS_AS(simulate_hedge(qi_call(), m, cfg), std::invalid_argument);
    cfg.rebalance_dt = m.tau / 32.0;
    cfg.sigma_index = -0.1;
    CHECK_THROWS_AS(simulate_hedge(qi_call(), m, cfg), std::invalid_argument);
}
