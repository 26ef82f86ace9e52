#include "coinopt/greeks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coinopt/analytic.hpp"

namespace coinopt {

void BumpSpec::validate() const {
    if (!(h_spot_rel > 0.0) || !(h_vol > 0.0) || !(h_tau > 0.0))
        throw std::invalid_argument("bump sizes must be positive");
    if (h_spot_rel > 1e-3 || h_vol > 1e-2 || h_tau > 1e-2)
        throw std::invalid_argument("bump sizes too large for a local derivative estimate");
}

GreekReport greeks_inverse(OptionSide side, double S, double K, double r, double r_f, double sigma,
                           double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("greeks require tau > 0");
    const double w = omega(side);
    const auto d = d_values(S, K, r, r_f, sigma, tau);
    const double sq = std::sqrt(tau);
    const double df_f = discount(r_f, tau);
    const double df_d = discount(r, tau);
    const double pdf1 = norm_pdf(d.d1);

    GreekReport g;
    g.price = price_standard(side, S, K, r, r_f, sigma, tau);
    g.delta = w * df_f * norm_cdf(w * d.d1);
    g.gamma = df_f * pdf1 / (S * sigma * sq);
    g.vega = S * df_f * pdf1 * sq;
    g.volga = g.vega * d.d1 * d.d2 / sigma;
    g.vanna = -df_f * pdf1 * d.d2 / sigma;
    g.theta = w * r_f * S * df_f * norm_cdf(w * d.d1) - w * r * K * df_d * norm_cdf(w * d.d2) -
              S * df_f * pdf1 * sigma / (2.0 * sq);
    return g;
}

GreekReport greeks_quanto_inverse(OptionSide side, double S, double K, double xbar, double r,
                                  double sigma, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("greeks require tau > 0");
    if (!(xbar > 0.0)) throw std::invalid_argument("conversion multiplier must be positive");
    const double w = omega(side);
    const auto d = d_values(S, K, r, 0.0, sigma, tau);
    const double sq = std::sqrt(tau);
    const double df = discount(r, tau);
    const double A = std::exp((sigma * sigma - 2.0 * r) * tau);
    const double ks = K / S;
    const double cdf3 = norm_cdf(w * d.d3);
    const double pdf2 = norm_pdf(d.d2);
    const double pdf3 = norm_pdf(d.d3);
    // dd3/dsigma, used by the cross and second vol derivatives
    const double d3s = -d.d1 / sigma - sq;

    GreekReport g;
    g.price = price_quanto_inverse(side, S, K, xbar, r, sigma, tau);
    g.delta = xbar * w * A * (K / (S * S)) * cdf3;
    g.gamma = xbar * A * (K / (S * S * S)) * (pdf3 / (sigma * sq) - 2.0 * w * cdf3);
    g.vega = xbar * (df * pdf2 * sq - 2.0 * w * sigma * tau * A * ks * cdf3);
    g.volga = xbar * (df * sq * pdf2 * d.d1 * d.d2 / sigma -
                      2.0 * w * tau * ks * A *
                          ((1.0 + 2.0 * sigma * sigma * tau) * cdf3 + w * sigma * pdf3 * d3s));
    g.vanna = xbar * w * A * (K / (S * S)) * (2.0 * sigma * tau * cdf3 + w * pdf3 * d3s);
    g.theta = xbar * (w * r * df * norm_cdf(w * d.d2) +
                      w * (sigma * sigma - 2.0 * r) * A * ks * cdf3 -
                      df * pdf2 * sigma / (2.0 * sq));
    return g;
}

GreekReport greeks_for(ProductClass product, OptionSide side, double S, double K,
                       std::optional<double> xbar, double r, double r_f, double sigma, double tau) {
    if (is_quanto(product) && (!xbar || !(*xbar > 0.0)))
        throw std::invalid_argument("quanto classes require a positive conversion multiplier");
    switch (product) {
        case ProductClass::Standard:
        case ProductClass::Direct:
            return greeks_inverse(side, S, K, r, r_f, sigma, tau);
        case ProductClass::Inverse: {
            auto g = greeks_inverse(side, S, K, r, r_f, sigma, tau);
            g.price = price_inverse(side, S, K, r, r_f, sigma, tau, InverseDenom::Base);
            return g;
        }
        case ProductClass::StandardQuanto:
        case ProductClass::QuantoDirect: {
            auto g = greeks_inverse(side, S, K, r, r_f, sigma, tau);
            g.price *= *xbar;
            g.delta *= *xbar;
            g.gamma *= *xbar;
            g.vega *= *xbar;
            g.volga *= *xbar;
            g.vanna *= *xbar;
            g.theta *= *xbar;
            return g;
        }
        case ProductClass::QuantoInverse:
            if (r_f != 0.0)
                throw std::invalid_argument(
                    "quanto-inverse pricing assumes a zero base-coin rate");
            return greeks_quanto_inverse(side, S, K, *xbar, r, sigma, tau);
    }
    throw std::logic_error("unreachable product class");
}

namespace {

// Richardson-extrapolated central differences, second order in h before
// extrapolation.
double central1(const std::function<double(double)>& f, double x, double h) {
    auto est = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
    return (4.0 * est(h / 2.0) - est(h)) / 3.0;
}

double central2(const std::function<double(double)>& f, double x, double h) {
    const double f0 = f(x);
    auto est = [&](double hh) { return (f(x + hh) - 2.0 * f0 + f(x - hh)) / (hh * hh); };
    return (4.0 * est(h / 2.0) - est(h)) / 3.0;
}

}  // namespace

GreekReport fd_greeks(const PriceFn& pricer, double S, double sigma, double tau,
                      const BumpSpec& bumps) {
    bumps.validate();
    if (!(S > 0.0) || !(sigma > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("fd_greeks requires positive spot, vol and tau");

    const double hs = bumps.h_spot_rel * S;
    const double hv = bumps.h_vol;
    // shrink the tau bump so tau - h stays safely inside the domain
    const double ht = std::min(bumps.h_tau, tau / 10.0);

    GreekReport g;
    g.price = pricer(S, sigma, tau);
    auto in_s = [&](double x) { return pricer(x, sigma, tau); };
    auto in_v = [&](double x) { return pricer(S, x, tau); };
    auto in_t = [&](double x) { return pricer(S, sigma, x); };
    g.delta = central1(in_s, S, hs);
    g.gamma = central2(in_s, S, hs);
    g.vega = central1(in_v, sigma, hv);
    g.volga = central2(in_v, sigma, hv);
    g.theta = -central1(in_t, tau, ht);
    auto mixed = [&](double a, double b) {
        return (pricer(S + a, sigma + b, tau) - pricer(S + a, sigma - b, tau) -
                pricer(S - a, sigma + b, tau) + pricer(S - a, sigma - b, tau)) /
               (4.0 * a * b);
    };
    g.vanna = (4.0 * mixed(hs / 2.0, hv / 2.0) - mixed(hs, hv)) / 3.0;
    return g;
}

std::vector<GreekCurvePoint> greek_curves(double spot, double xbar, double r, double sigma,
                                          std::span<const double> strikes,
                                          std::span<const double> maturities_days) {
    if (strikes.empty() || maturities_days.empty())
        throw std::invalid_argument("greek_curves requires nonempty strike and maturity grids");
    std::vector<GreekCurvePoint> out;
    out.reserve(strikes.size() * maturities_days.size() * 4);
    for (double days : maturities_days) {
        const double tau = days / 365.0;
        for (ProductClass product : {ProductClass::Inverse, ProductClass::QuantoInverse}) {
            for (OptionSide side : {OptionSide::Call, OptionSide::Put}) {
                for (double K : strikes) {
                    if (!(K > 0.0)) throw std::invalid_argument("strike grid must be positive");
                    GreekCurvePoint p;
                    p.product = product;
                    p.side = side;
                    p.maturity_days = days;
                    p.strike = K;
                    p.greeks = product == ProductClass::Inverse
                                   ? greeks_inverse(side, spot, K, r, 0.0, sigma, tau)
                                   : greeks_quanto_inverse(side, spot, K, xbar, r, sigma, tau);
                    out.push_back(std::move(p));
                }
            }
        }
    }
    return out;
}

}  // namespace coinopt
