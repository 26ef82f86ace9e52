#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coinopt/analytic.hpp"
#include "coinopt/chain.hpp"
#include "coinopt/greeks.hpp"
#include "coinopt/hedge.hpp"
#include "coinopt/implied_vol.hpp"
#include "coinopt/mc.hpp"
#include "coinopt/payoff.hpp"

namespace {

using namespace coinopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFailed = 3;

std::string shortest(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return {buf.data(), end};
}

/// DUR grammar: positive integer plus 'd' (days) or 'h' (hours), ACT/365.
double parse_dur(const std::string& text) {
    if (text.size() < 2) throw CLI::ValidationError("duration", "want <int>{d|h}: '" + text + "'");
    const char unit = text.back();
    long long n{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size() - 1, n);
    if (ec != std::errc{} || p != text.data() + text.size() - 1 || n < 0 ||
        (unit != 'd' && unit != 'h'))
        throw CLI::ValidationError("duration", "want <int>{d|h}: '" + text + "'");
    return unit == 'd' ? static_cast<double>(n) / 365.0
                       : static_cast<double>(n) / (365.0 * 24.0);
}

/// Contract and market flags shared by price/greeks/payoff/iv/hedge.
struct InstrumentArgs {
    std::string klass = "standard";
    std::string side_text = "call";
    double spot{};
    double strike{};
    double vol{};
    double rate{0.0};
    double rate_foreign{0.0};
    std::string tau_text;
    double quanto_fix{0.0};
    double notional{1.0};

    void add_common(CLI::App* cmd, bool need_market) {
        cmd->add_option("--class", klass, "product class")->required();
        cmd->add_option("--side", side_text, "call or put")->required();
        cmd->add_option("--strike", strike, "strike, quote units")->required();
        cmd->add_option("--quanto-fix", quanto_fix, "fixed conversion multiplier");
        cmd->add_option("--notional", notional, "contract size in coins");
        if (need_market) {
            cmd->add_option("--spot", spot, "spot, quote units")->required();
            cmd->add_option("--vol", vol, "volatility per sqrt(year)")->required();
            cmd->add_option("--rate", rate, "quote-currency rate");
            cmd->add_option("--rate-foreign", rate_foreign, "base-coin rate");
            cmd->add_option("--tau", tau_text, "time to expiry, e.g. 10d or 12h")->required();
        }
    }

    OptionSide side() const {
        if (side_text == "call") return OptionSide::Call;
        if (side_text == "put") return OptionSide::Put;
        throw std::invalid_argument("side must be 'call' or 'put'");
    }

    OptionContract contract() const {
        OptionContract c;
        c.underlying_base = BTC;
        c.underlying_quote = USD;
        c.product = parse_product_class(klass);
        c.side = side();
        c.strike = strike;
        c.notional = notional;
        if (is_quanto(c.product)) {
            const bool to_quote = c.product == ProductClass::QuantoInverse;
            c.fix = QuantoFix{quanto_fix, to_quote ? BTC : USD, to_quote ? USD : BTC};
        } else if (quanto_fix != 0.0) {
            throw std::invalid_argument("--quanto-fix given for non-quanto class " + klass);
        }
        c.validate();
        return c;
    }

    MarketState market() const {
        MarketState m;
        m.spot = spot;
        m.vol = vol;
        m.rate_dom = rate;
        m.rate_for = rate_foreign;
        m.tau = parse_dur(tau_text);
        m.validate();
        return m;
    }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

void emit_table1(std::ostream& out) {
    struct Panel {
        Currency asset;
        double strike;
        std::array<double, 5> settles;
        double fix_std;   // standard payoff, quote to coin
        double fix_inv;   // inverse payoff, coin to quote
    };
    const Panel panels[] = {
        {BTC, 25000.0, {10000, 20000, 30000, 40000, 50000}, 1.0 / 22500.0, 22500.0},
        {ETH, 1750.0, {500, 1000, 1500, 2000, 2500}, 1.0 / 22500.0, 2000.0},
    };
    out << "asset,side,class,settlement,payoff,denom\n";
    for (const auto& p : panels) {
        for (OptionSide side : {OptionSide::Call, OptionSide::Put}) {
            for (ProductClass product :
                 {ProductClass::Standard, ProductClass::Inverse, ProductClass::StandardQuanto,
                  ProductClass::QuantoInverse}) {
                OptionContract c;
                c.underlying_base = p.asset;
                c.underlying_quote = USD;
                c.product = product;
                c.side = side;
                c.strike = p.strike;
                if (product == ProductClass::StandardQuanto)
                    c.fix = QuantoFix{p.fix_std, USD, BTC};
                else if (product == ProductClass::QuantoInverse)
                    c.fix = QuantoFix{p.fix_inv, p.asset, USD};
                for (double settle : p.settles) {
                    const Money v = payoff(c, Settlement{settle, std::nullopt});
                    out << p.asset.code << ',' << to_string(side) << ',' << to_string(product)
                        << ',' << shortest(settle) << ',' << shortest(v.amount) << ','
                        << v.denom.code << '\n';
                }
            }
        }
    }
}

std::vector<double> parse_grid(const std::string& text) {
    double lo{}, hi{};
    int n{};
    char c1{}, c2{};
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 2 || !(hi > lo))
        throw CLI::ValidationError("--spot-grid", "want LO:HI:N with N >= 2: '" + text + "'");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double natural_price(ProductClass product, OptionSide side, double S, double K,
                     std::optional<double> xbar, double r, double r_f, double sigma, double tau) {
    switch (product) {
        case ProductClass::Standard:
        case ProductClass::Direct:
            return price_standard(side, S, K, r, r_f, sigma, tau);
        case ProductClass::Inverse:
            return price_inverse(side, S, K, r, r_f, sigma, tau, InverseDenom::Base);
        case ProductClass::StandardQuanto:
        case ProductClass::QuantoDirect:
            return *xbar * price_standard(side, S, K, r, r_f, sigma, tau);
        case ProductClass::QuantoInverse:
            if (r_f != 0.0)
                throw std::invalid_argument(
                    "quanto-inverse pricing assumes a zero base-coin rate");
            return price_quanto_inverse(side, S, K, *xbar, r, sigma, tau);
    }
    throw std::logic_error("unreachable product class");
}

// Deterministic parameter grid for the oracle suite, derived from the seed.
struct VerifyPoint {
    double S, K, sigma, r, r_f, tau, xbar;
};

VerifyPoint verify_point(std::uint64_t seed, ProductClass product, int cls_idx, int i) {
    auto u = [&](int j) {
        return counter_uniform(seed ^ 0x5EEDu, static_cast<std::uint64_t>(cls_idx) * 1000003u +
                                                   static_cast<std::uint64_t>(i) * 17u + j);
    };
    VerifyPoint p;
    p.S = 5000.0 + 45000.0 * u(0);
    p.K = p.S * (0.5 + u(1));
    p.sigma = 0.2 + 1.8 * u(2);
    p.r = 0.05 * u(3);
    p.r_f = product == ProductClass::QuantoInverse ? 0.0 : 0.03 * u(4);
    p.tau = 5.0 / 365.0 + u(5) * (1.0 - 5.0 / 365.0);
    p.xbar = product == ProductClass::StandardQuanto || product == ProductClass::QuantoDirect
                 ? 1.0 / 22500.0
                 : 22500.0;
    return p;
}

int run_verify(std::size_t n_paths, std::uint64_t seed, int grid, unsigned workers,
               std::ostream& out) {
    const ProductClass classes[] = {ProductClass::Standard,      ProductClass::Direct,
                                    ProductClass::Inverse,       ProductClass::StandardQuanto,
                                    ProductClass::QuantoDirect,  ProductClass::QuantoInverse};
    bool ok = true;
    out << "class,points,breaches,allowed,max_abs_z\n";
    int cls_idx = 0;
    for (ProductClass product : classes) {
        int breaches = 0;
        double max_z = 0.0;
        for (int i = 0; i < grid; ++i) {
            const auto p = verify_point(seed, product, cls_idx, i);
            OptionContract c;
            c.underlying_base = BTC;
            c.underlying_quote = USD;
            c.product = product;
            c.side = (i % 2 == 0) ? OptionSide::Call : OptionSide::Put;
            c.strike = p.K;
            if (is_quanto(product)) {
                const bool to_quote = product == ProductClass::QuantoInverse;
                c.fix = QuantoFix{p.xbar, to_quote ? BTC : USD, to_quote ? USD : BTC};
            }
            MarketState m{p.S, p.sigma, p.r, p.r_f, p.tau};
            PathConfig cfg{seed + static_cast<std::uint64_t>(cls_idx * grid + i), n_paths, true,
                           workers};
            const McEstimate est = mc_price(c, m, cfg);
            const double closed = natural_price(product, c.side, p.S, p.K,
                                                is_quanto(product)
                                                    ? std::optional<double>(p.xbar)
                                                    : std::nullopt,
                                                p.r, p.r_f, p.sigma, p.tau);
            const double z =
                est.std_error > 0.0 ? std::abs(closed - est.value.amount) / est.std_error : 0.0;
            max_z = std::max(max_z, z);
            if (z > 3.0) ++breaches;
        }
        // a few 3-sigma events are expected; fail above the 1% binomial band
        const double g = static_cast<double>(grid);
        const int allowed =
            static_cast<int>(std::ceil(0.01 * g + 3.0 * std::sqrt(0.01 * 0.99 * g)));
        if (breaches > allowed) ok = false;
        out << to_string(product) << ',' << grid << ',' << breaches << ',' << allowed << ','
            << shortest(max_z) << '\n';
        ++cls_idx;
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int run(int argc, char** argv) {
    CLI::App app{"inverse and quanto-inverse crypto option pricing toolkit"};
    app.require_subcommand(1);

    // price / greeks / payoff / iv
    InstrumentArgs price_args, greeks_args, payoff_args, iv_args, hedge_args;
    auto* price_cmd = app.add_subcommand("price", "closed-form price");
    price_args.add_common(price_cmd, true);

    auto* greeks_cmd = app.add_subcommand("greeks", "closed-form price and sensitivities");
    greeks_args.add_common(greeks_cmd, true);

    auto* payoff_cmd = app.add_subcommand("payoff", "terminal payoff at a settlement price");
    double settle{};
    std::optional<double> spot_at_settle;
    payoff_args.add_common(payoff_cmd, false);
    payoff_cmd->add_option("--settle", settle, "settlement index value")->required();
    payoff_cmd->add_option("--spot-at-settle", spot_at_settle,
                           "instantaneous spot for coin-to-quote translation");

    auto* table1_cmd = app.add_subcommand("table1", "payoff comparison panels as CSV");
    std::string table1_out;
    table1_cmd->add_option("--out", table1_out, "output file (default stdout)");

    auto* surface_cmd = app.add_subcommand("surface", "price grid over spot/tau/vol as CSV");
    InstrumentArgs surf_args;
    std::string surf_grid, surf_taus, surf_vols, surf_out;
    surf_args.add_common(surface_cmd, false);
    surface_cmd->add_option("--rate", surf_args.rate, "quote-currency rate");
    surface_cmd->add_option("--rate-foreign", surf_args.rate_foreign, "base-coin rate");
    surface_cmd->add_option("--spot-grid", surf_grid, "LO:HI:N")->required();
    surface_cmd->add_option("--tau", surf_taus, "comma list of durations, e.g. 10d,90d")
        ->required();
    surface_cmd->add_option("--vol", surf_vols, "comma list of vols")->required();
    surface_cmd->add_option("--out", surf_out, "output file")->required();

    auto* curves_cmd = app.add_subcommand("curves", "Greek curves over a strike grid as CSV");
    std::string curves_out;
    double curves_spot = 25000.0, curves_fix = 25000.0, curves_vol = 0.75, curves_rate = 0.0;
    std::string curves_maturities = "10,30,90";
    curves_cmd->add_option("--out", curves_out, "output file")->required();
    curves_cmd->add_option("--spot", curves_spot, "underlying level");
    curves_cmd->add_option("--quanto-fix", curves_fix, "conversion multiplier");
    curves_cmd->add_option("--vol", curves_vol, "volatility");
    curves_cmd->add_option("--rate", curves_rate, "rate");
    curves_cmd->add_option("--maturities", curves_maturities, "comma list of days");

    auto* verify_cmd = app.add_subcommand("verify", "Monte-Carlo oracle suite");
    std::size_t verify_paths = 1'000'000;
    std::uint64_t verify_seed = 1;
    int verify_grid = 50;
    unsigned verify_workers = 8;
    verify_cmd->add_option("--paths", verify_paths, "paths per point");
    verify_cmd->add_option("--seed", verify_seed, "RNG seed");
    verify_cmd->add_option("--grid", verify_grid, "points per class");
    verify_cmd->add_option("--workers", verify_workers, "worker threads");

    auto* iv_cmd = app.add_subcommand("iv", "implied volatility from a price");
    double iv_price{};
    iv_args.add_common(iv_cmd, true);
    iv_cmd->get_option("--vol")->required(false);
    iv_cmd->add_option("--price", iv_price, "observed price, natural denomination")->required();

    auto* hedge_cmd = app.add_subcommand("hedge", "discrete delta-hedging simulation");
    HedgeSimConfig hcfg;
    std::string hedge_rebalance, hedge_source = "auto", hedge_out;
    hcfg.mu_index = hcfg.mu_hedge = 0.0;
    hcfg.sigma_index = hcfg.sigma_hedge = -1.0;
    hcfg.paths.n_paths = 10'000;
    hedge_args.add_common(hedge_cmd, true);
    hedge_cmd->add_option("--rho", hcfg.rho, "index/hedge correlation")->required();
    hedge_cmd->add_option("--rebalance", hedge_rebalance, "rebalance step, e.g. 1d or 4h")
        ->required();
    hedge_cmd->add_option("--mu-index", hcfg.mu_index, "index drift");
    hedge_cmd->add_option("--sigma-index", hcfg.sigma_index, "index vol (default --vol)");
    hedge_cmd->add_option("--mu-hedge", hcfg.mu_hedge, "hedge instrument drift");
    hedge_cmd->add_option("--sigma-hedge", hcfg.sigma_hedge, "hedge instrument vol (default --vol)");
    hedge_cmd->add_option("--greek-source", hedge_source, "auto, inverse or quanto-inverse");
    hedge_cmd->add_option("--paths", hcfg.paths.n_paths, "simulated paths");
    hedge_cmd->add_option("--seed", hcfg.paths.seed, "RNG seed");
    hedge_cmd->add_option("--workers", hcfg.paths.workers, "worker threads");
    hedge_cmd->add_option("--out", hedge_out, "output file (default stdout)");

    auto* chain_cmd = app.add_subcommand("chain", "option chain batch jobs");
    chain_cmd->require_subcommand(1);
    auto* chain_price_cmd = chain_cmd->add_subcommand("price", "price a CSV chain");
    std::string chain_in, chain_out, chain_asof;
    bool chain_lenient = false;
    chain_price_cmd->add_option("--in", chain_in, "input chain CSV")->required();
    chain_price_cmd->add_option("--out", chain_out, "output CSV")->required();
    chain_price_cmd->add_option("--asof", chain_asof,
                                "valuation time, YYYY-MM-DD[THH:MM:SSZ] (default now, UTC)");
    chain_price_cmd->add_flag("--lenient", chain_lenient, "skip bad rows with a warning");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (price_cmd->parsed()) {
        const auto c = price_args.contract();
        const auto m = price_args.market();
        std::cout << shortest(price(c, m).value.amount) << '\n';
        return kExitOk;
    }

    if (greeks_cmd->parsed()) {
        const auto c = greeks_args.contract();
        const auto m = greeks_args.market();
        const std::optional<double> xbar =
            c.fix ? std::optional<double>(c.fix->xbar) : std::nullopt;
        auto g = greeks_for(c.product, c.side, m.spot, c.strike, xbar, m.rate_dom, m.rate_for,
                            m.vol, m.tau);
        std::cout << "price,delta,gamma,vega,volga,vanna,theta\n"
                  << shortest(c.notional * g.price) << ',' << shortest(c.notional * g.delta) << ','
                  << shortest(c.notional * g.gamma) << ',' << shortest(c.notional * g.vega) << ','
                  << shortest(c.notional * g.volga) << ',' << shortest(c.notional * g.vanna) << ','
                  << shortest(c.notional * g.theta) << '\n';
        return kExitOk;
    }

    if (payoff_cmd->parsed()) {
        const auto c = payoff_args.contract();
        const Money v = payoff(c, Settlement{settle, spot_at_settle});
        std::cout << shortest(v.amount) << '\n';
        return kExitOk;
    }

    if (table1_cmd->parsed()) {
        std::ofstream file;
        emit_table1(open_out(table1_out, file));
        return kExitOk;
    }

    if (surface_cmd->parsed()) {
        const auto product = parse_product_class(surf_args.klass);
        const auto side = surf_args.side();
        const std::optional<double> xbar =
            is_quanto(product) ? std::optional<double>(surf_args.quanto_fix) : std::nullopt;
        const auto spots = parse_grid(surf_grid);
        std::ofstream file;
        auto& out = open_out(surf_out, file);
        out << "class,side,strike,vol,tau_years,spot,price\n";
        for (const auto& tau_text : split_list(surf_taus)) {
            const double tau = parse_dur(tau_text);
            for (const auto& vol_text : split_list(surf_vols)) {
                const double vol = std::stod(vol_text);
                for (double s : spots) {
                    const double px =
                        natural_price(product, side, s, surf_args.strike, xbar, surf_args.rate,
                                      surf_args.rate_foreign, vol, std::max(tau, 1e-12));
                    out << surf_args.klass << ',' << surf_args.side_text << ','
                        << shortest(surf_args.strike) << ',' << shortest(vol) << ','
                        << shortest(tau) << ',' << shortest(s) << ',' << shortest(px) << '\n';
                }
            }
        }
        return kExitOk;
    }

    if (curves_cmd->parsed()) {
        std::vector<double> strikes;
        for (double k = 5000.0; k <= 50000.0 + 1e-9; k += 500.0) strikes.push_back(k);
        std::vector<double> maturities;
        for (const auto& d : split_list(curves_maturities)) maturities.push_back(std::stod(d));
        const auto pts =
            greek_curves(curves_spot, curves_fix, curves_rate, curves_vol, strikes, maturities);
        std::ofstream file;
        auto& out = open_out(curves_out, file);
        out << "class,side,maturity_days,strike,price,delta,gamma,vega,volga,vanna,theta\n";
        for (const auto& p : pts) {
            out << to_string(p.product) << ',' << to_string(p.side) << ','
                << shortest(p.maturity_days) << ',' << shortest(p.strike) << ','
                << shortest(p.greeks.price) << ',' << shortest(p.greeks.delta) << ','
                << shortest(p.greeks.gamma) << ',' << shortest(p.greeks.vega) << ','
                << shortest(p.greeks.volga) << ',' << shortest(p.greeks.vanna) << ','
                << shortest(p.greeks.theta) << '\n';
        }
        return kExitOk;
    }

    if (verify_cmd->parsed())
        return run_verify(verify_paths, verify_seed, verify_grid, verify_workers, std::cout);

    if (iv_cmd->parsed()) {
        const auto c = iv_args.contract();
        const double tau = parse_dur(iv_args.tau_text);
        const std::optional<double> xbar =
            c.fix ? std::optional<double>(c.fix->xbar) : std::nullopt;
        const auto res = implied_vol(c.product, c.side, iv_price, iv_args.spot, c.strike, xbar,
                                     iv_args.rate, iv_args.rate_foreign, tau);
        if (res.multiple_roots)
            std::cerr << "warning: multiple vols match this price; smallest reported\n";
        std::cout << shortest(res.sigma) << '\n';
        return kExitOk;
    }

    if (hedge_cmd->parsed()) {
        const auto c = hedge_args.contract();
        const auto m = hedge_args.market();
        hcfg.rebalance_dt = parse_dur(hedge_rebalance);
        hcfg.greek_source = parse_greek_source(hedge_source);
        if (hcfg.sigma_index < 0.0) hcfg.sigma_index = m.vol;
        if (hcfg.sigma_hedge < 0.0) hcfg.sigma_hedge = m.vol;
        const auto rep = simulate_hedge(c, m, hcfg);
        std::ofstream file;
        auto& out = open_out(hedge_out, file);
        out << "mean_pnl,std_pnl,q01,q05,q50,q95,q99,denom\n"
            << shortest(rep.mean_pnl.amount) << ',' << shortest(rep.std_pnl.amount) << ','
            << shortest(rep.q01.amount) << ',' << shortest(rep.q05.amount) << ','
            << shortest(rep.q50.amount) << ',' << shortest(rep.q95.amount) << ','
            << shortest(rep.q99.amount) << ',' << rep.mean_pnl.denom.code << '\n';
        return kExitOk;
    }

    if (chain_price_cmd->parsed()) {
        std::ifstream in(chain_in);
        if (!in) throw std::runtime_error("cannot open input file: " + chain_in);
        std::vector<std::string> warnings;
        const auto rows = load_chain(in, chain_lenient, &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
        const auto asof = chain_asof.empty()
                              ? std::chrono::time_point_cast<std::chrono::seconds>(
                                    std::chrono::system_clock::now())
                              : parse_timestamp(chain_asof);
        const auto priced = price_chain(rows, asof);
        std::ofstream out(chain_out);
        if (!out) throw std::runtime_error("cannot open output file: " + chain_out);
        emit_priced_chain(priced, out);
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
