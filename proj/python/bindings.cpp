#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "coinopt/analytic.hpp"
#include "coinopt/chain.hpp"
#include "coinopt/core.hpp"
#include "coinopt/greeks.hpp"
#include "coinopt/hedge.hpp"
#include "coinopt/implied_vol.hpp"
#include "coinopt/mc.hpp"
#include "coinopt/payoff.hpp"

namespace py = pybind11;
using namespace coinopt;

namespace {

OptionSide parse_side(const std::string& text) {
    if (text == "call" || text == "C") return OptionSide::Call;
    if (text == "put" || text == "P") return OptionSide::Put;
    throw std::invalid_argument("side must be 'call' or 'put', got '" + text + "'");
}

OptionContract build_contract(const std::string& product, const std::string& side, double strike,
                              std::optional<double> fix, double notional,
                              const std::string& base, const std::string& quote,
                              std::optional<std::string> fix_target) {
    OptionContract c;
    c.underlying_base = Currency{base};
    c.underlying_quote = Currency{quote};
    c.product = parse_product_class(product);
    c.side = parse_side(side);
    c.strike = strike;
    c.notional = notional;
    if (is_quanto(c.product)) {
        if (!fix) throw std::invalid_argument("quanto classes need a fix");
        const bool to_quote = c.product == ProductClass::QuantoInverse;
        Currency target = to_quote ? c.underlying_quote : c.underlying_base;
        if (fix_target) target = Currency{*fix_target};
        c.fix = QuantoFix{*fix, to_quote ? c.underlying_base : c.underlying_quote, target};
    }
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_coinopt, m) {
    m.doc() = "crypto option pricing: inverse and quanto-inverse contracts";

    py::class_<GreekReport>(m, "GreekReport")
        .def_readonly("price", &GreekReport::price)
        .def_readonly("delta", &GreekReport::delta)
        .def_readonly("gamma", &GreekReport::gamma)
        .def_readonly("vega", &GreekReport::vega)
        .def_readonly("volga", &GreekReport::volga)
        .def_readonly("vanna", &GreekReport::vanna)
        .def_readonly("theta", &GreekReport::theta)
        .def_property_readonly("denom",
                               [](const GreekReport& g) { return g.denom.code; })
        .def("__repr__", [](const GreekReport& g) {
            return "GreekReport(price=" + std::to_string(g.price) +
                   ", delta=" + std::to_string(g.delta) + ", denom='" + g.denom.code + "')";
        });

    py::class_<IvResult>(m, "IvResult")
        .def_readonly("sigma", &IvResult::sigma)
        .def_readonly("iterations", &IvResult::iterations)
        .def_readonly("residual", &IvResult::residual)
        .def_readonly("multiple_roots", &IvResult::multiple_roots);

    py::class_<McEstimate>(m, "McEstimate")
        .def_property_readonly("value", [](const McEstimate& e) { return e.value.amount; })
        .def_property_readonly("denom", [](const McEstimate& e) { return e.value.denom.code; })
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("n_effective", &McEstimate::n_effective);

    py::class_<HedgeReport>(m, "HedgeReport")
        .def_property_readonly("mean_pnl", [](const HedgeReport& h) { return h.mean_pnl.amount; })
        .def_property_readonly("std_pnl", [](const HedgeReport& h) { return h.std_pnl.amount; })
        .def_property_readonly("q01", [](const HedgeReport& h) { return h.q01.amount; })
        .def_property_readonly("q05", [](const HedgeReport& h) { return h.q05.amount; })
        .def_property_readonly("q50", [](const HedgeReport& h) { return h.q50.amount; })
        .def_property_readonly("q95", [](const HedgeReport& h) { return h.q95.amount; })
        .def_property_readonly("q99", [](const HedgeReport& h) { return h.q99.amount; })
        .def_readonly("n_paths", &HedgeReport::n_paths);

    m.def(
        "price_standard",
        [](const std::string& side, double spot, double strike, double rate, double rate_foreign,
           double vol, double tau) {
            return price_standard(parse_side(side), spot, strike, rate, rate_foreign, vol, tau);
        },
        py::arg("side"), py::arg("spot"), py::arg("strike"), py::arg("rate"),
        py::arg("rate_foreign"), py::arg("vol"), py::arg("tau"));

    m.def(
        "price_inverse",
        [](const std::string& side, double spot, double strike, double rate, double rate_foreign,
           double vol, double tau, const std::string& denom) {
            InverseDenom d;
            if (denom == "base")
                d = InverseDenom::Base;
            else if (denom == "quote")
                d = InverseDenom::Quote;
            else
                throw std::invalid_argument("denom must be 'base' or 'quote'");
            return price_inverse(parse_side(side), spot, strike, rate, rate_foreign, vol, tau, d);
        },
        py::arg("side"), py::arg("spot"), py::arg("strike"), py::arg("rate"),
        py::arg("rate_foreign"), py::arg("vol"), py::arg("tau"), py::arg("denom") = "base");

    m.def(
        "price_quanto_inverse",
        [](const std::string& side, double spot, double strike, double fix, double rate,
           double vol, double tau) {
            return price_quanto_inverse(parse_side(side), spot, strike, fix, rate, vol, tau);
        },
        py::arg("side"), py::arg("spot"), py::arg("strike"), py::arg("fix"), py::arg("rate"),
        py::arg("vol"), py::arg("tau"));

    m.def(
        "payoff",
        [](const std::string& product, const std::string& side, double strike, double settle,
           std::optional<double> fix, double notional, std::optional<double> spot_at_settlement,
           const std::string& base, const std::string& quote,
           std::optional<std::string> fix_target) {
            const auto c =
                build_contract(product, side, strike, fix, notional, base, quote, fix_target);
            const auto value = payoff(c, Settlement{settle, spot_at_settlement});
            return py::make_tuple(value.amount, value.denom.code);
        },
        py::arg("product"), py::arg("side"), py::arg("strike"), py::arg("settle"),
        py::arg("fix") = std::nullopt, py::arg("notional") = 1.0,
        py::arg("spot_at_settlement") = std::nullopt, py::arg("base") = "BTC",
        py::arg("quote") = "USD", py::arg("fix_target") = std::nullopt,
        "Settlement payoff as (amount, denomination).");

    m.def(
        "greeks",
        [](const std::string& product, const std::string& side, double spot, double strike,
           std::optional<double> fix, double rate, double rate_foreign, double vol, double tau) {
            auto g = greeks_for(parse_product_class(product), parse_side(side), spot, strike, fix,
                                rate, rate_foreign, vol, tau);
            g.denom = build_contract(product, side, strike, fix.value_or(1.0), 1.0, "BTC", "USD",
                                     {})
                          .payoff_denom();
            return g;
        },
        py::arg("product"), py::arg("side"), py::arg("spot"), py::arg("strike"),
        py::arg("fix") = std::nullopt, py::arg("rate") = 0.0, py::arg("rate_foreign") = 0.0,
        py::arg("vol") = 0.0, py::arg("tau") = 0.0,
        "Closed-form price and six Greeks in the class's natural denomination.");

    m.def(
        "implied_vol",
        [](const std::string& product, const std::string& side, double target_price, double spot,
           double strike, std::optional<double> fix, double rate, double rate_foreign,
           double tau) {
            return implied_vol(parse_product_class(product), parse_side(side), target_price, spot,
                               strike, fix, rate, rate_foreign, tau);
        },
        py::arg("product"), py::arg("side"), py::arg("target_price"), py::arg("spot"),
        py::arg("strike"), py::arg("fix") = std::nullopt, py::arg("rate") = 0.0,
        py::arg("rate_foreign") = 0.0, py::arg("tau") = 0.0,
        "Smallest vol in [1e-4, 10] reproducing the target price.");

    m.def(
        "mc_price",
        [](const std::string& product, const std::string& side, double spot, double strike,
           std::optional<double> fix, double rate, double rate_foreign, double vol, double tau,
           std::uint64_t seed, std::size_t n_paths, bool antithetic, unsigned workers) {
            const auto c = build_contract(product, side, strike, fix, 1.0, "BTC", "USD", {});
            const MarketState market{spot, vol, rate, rate_foreign, tau};
            return mc_price(c, market, PathConfig{seed, n_paths, antithetic, workers});
        },
        py::arg("product"), py::arg("side"), py::arg("spot"), py::arg("strike"),
        py::arg("fix") = std::nullopt, py::arg("rate") = 0.0, py::arg("rate_foreign") = 0.0,
        py::arg("vol") = 0.0, py::arg("tau") = 0.0, py::arg("seed") = 1,
        py::arg("n_paths") = 1'000'000, py::arg("antithetic") = true, py::arg("workers") = 1,
        "Simulation price; bit-identical for a given seed across worker counts.");

    m.def(
        "simulate_hedge",
        [](const std::string& product, const std::string& side, double spot, double strike,
           std::optional<double> fix, double rate, double vol, double tau, double mu_index,
           double sigma_index, double mu_hedge, double sigma_hedge, double rho,
           double rebalance_dt, std::uint64_t seed, std::size_t n_paths, unsigned workers) {
            const auto c = build_contract(product, side, strike, fix, 1.0, "BTC", "USD", {});
            const MarketState market{spot, vol, rate, 0.0, tau};
            HedgeSimConfig cfg;
            cfg.mu_index = mu_index;
            cfg.sigma_index = sigma_index;
            cfg.mu_hedge = mu_hedge;
            cfg.sigma_hedge = sigma_hedge;
            cfg.rho = rho;
            cfg.rebalance_dt = rebalance_dt;
            cfg.paths = PathConfig{seed, n_paths, true, workers};
            return simulate_hedge(c, market, cfg);
        },
        py::arg("product"), py::arg("side"), py::arg("spot"), py::arg("strike"),
        py::arg("fix") = std::nullopt, py::arg("rate") = 0.0, py::arg("vol") = 0.0,
        py::arg("tau") = 0.0, py::arg("mu_index") = 0.0, py::arg("sigma_index") = 0.0,
        py::arg("mu_hedge") = 0.0, py::arg("sigma_hedge") = 0.0, py::arg("rho") = 1.0,
        py::arg("rebalance_dt") = 0.0, py::arg("seed") = 1, py::arg("n_paths") = 10'000,
        py::arg("workers") = 1,
        "Discrete delta-hedge P&L distribution for a written contract.");

    m.def(
        "canonical_instrument",
        [](const std::string& text) { return parse_instrument(text).str(); }, py::arg("text"),
        "Canonical form of an instrument name, e.g. 'btc-05jan24-1750.50-c' "
        "-> 'BTC-5JAN24-1750.5-C'.");
}
