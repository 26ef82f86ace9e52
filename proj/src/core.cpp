#include "coinopt/core.hpp"

#include <cmath>

namespace coinopt {

std::string to_string(ProductClass c) {
    switch (c) {
        case ProductClass::Standard: return "standard";
        case ProductClass::Direct: return "direct";
        case ProductClass::Inverse: return "inverse";
        case ProductClass::StandardQuanto: return "standard-quanto";
        case ProductClass::QuantoDirect: return "quanto-direct";
        case ProductClass::QuantoInverse: return "quanto-inverse";
    }
    throw std::logic_error("unreachable product class");
}

ProductClass parse_product_class(const std::string& text) {
    if (text == "standard") return ProductClass::Standard;
    if (text == "direct") return ProductClass::Direct;
    if (text == "inverse") return ProductClass::Inverse;
    if (text == "standard-quanto") return ProductClass::StandardQuanto;
    if (text == "quanto-direct") return ProductClass::QuantoDirect;
    if (text == "quanto-inverse") return ProductClass::QuantoInverse;
    throw std::invalid_argument("unknown product class: " + text);
}

std::string to_string(OptionSide s) {
    return s == OptionSide::Call ? "call" : "put";
}

void QuantoFix::validate() const {
    if (!(xbar > 0.0)) throw std::invalid_argument("quanto fix must be positive");
    if (source == target) throw std::invalid_argument("quanto fix source equals target denomination");
}

Money Money::operator+(const Money& rhs) const {
    if (denom != rhs.denom)
        throw std::invalid_argument("money denomination mismatch: " + denom.code + " vs " + rhs.denom.code);
    return {amount + rhs.amount, denom};
}

Money Money::operator-(const Money& rhs) const {
    if (denom != rhs.denom)
        throw std::invalid_argument("money denomination mismatch: " + denom.code + " vs " + rhs.denom.code);
    return {amount - rhs.amount, denom};
}

void OptionContract::validate() const {
    if (!(strike > 0.0)) throw std::invalid_argument("strike must be positive");
    if (!(notional > 0.0)) throw std::invalid_argument("notional must be positive");
    if (is_quanto(product)) {
        if (!fix) throw std::invalid_argument("missing quanto fix for " + to_string(product));
        fix->validate();
    } else if (fix) {
        throw std::invalid_argument("quanto fix attached to non-quanto class " + to_string(product));
    }
}

Currency OptionContract::payoff_denom() const {
    switch (product) {
        case ProductClass::Standard:
        case ProductClass::Direct: return underlying_quote;
        case ProductClass::Inverse: return underlying_base;
        case ProductClass::StandardQuanto:
        case ProductClass::QuantoDirect:
        case ProductClass::QuantoInverse:
            if (!fix) throw std::invalid_argument("missing quanto fix");
            return fix->target;
    }
    throw std::logic_error("unreachable product class");
}

void MarketState::validate() const {
    if (!(spot > 0.0)) throw std::invalid_argument("spot must be positive");
    if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
    // vol = 0 is admitted as the deterministic degenerate case; the closed
    // forms that cannot take it reject it themselves.
    if (tau > 0.0 && !(vol >= 0.0)) throw std::invalid_argument("vol must be nonnegative");
}

double norm_cdf(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("norm_cdf: non-finite input");
    // 0.5 erfc(-x/sqrt(2)); erfc keeps full absolute precision in the tails.
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double norm_pdf(double x) {
    return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

namespace {

// Acklam's rational approximation with one Halley refinement step.
double inv_norm_cdf_impl(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = norm_cdf(x) - p;
    const double u = e * 2.506628274631000502 * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double inv_norm_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inv_norm_cdf: p must be in (0,1)");
    return inv_norm_cdf_impl(p);
}

double discount(double r, double tau) {
    if (tau < 0.0) throw std::invalid_argument("discount: negative tau");
    return std::exp(-r * tau);
}

DValues d_values(double S, double K, double r, double r_f, double sigma, double tau) {
    if (!(S > 0.0) || !(K > 0.0)) throw std::invalid_argument("d_values: S and K must be positive");
    if (!(sigma > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("d_values: degenerate sigma or tau");
    const double vol_sqrt_tau = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / K) + (r - r_f + 0.5 * sigma * sigma) * tau) / vol_sqrt_tau;
    return {d1, d1 - vol_sqrt_tau, d1 - 2.0 * vol_sqrt_tau};
}

}  // namespace coinopt
