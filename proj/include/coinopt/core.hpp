#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace coinopt {

/// Currency tag. Comparison is exact code equality.
struct Currency {
    std::string code;
    bool operator==(const Currency&) const = default;
};

inline const Currency USD{"USD"};
inline const Currency USDT{"USDT"};
inline const Currency BTC{"BTC"};
inline const Currency ETH{"ETH"};
inline const Currency SOL{"SOL"};

/// +1 call, -1 put.
enum class OptionSide : int { Call = +1, Put = -1 };

constexpr double omega(OptionSide side) { return static_cast<double>(static_cast<int>(side)); }

enum class ProductClass {
    Standard,
    Direct,
    Inverse,
    StandardQuanto,
    QuantoDirect,
    QuantoInverse,
};

constexpr bool is_quanto(ProductClass c) {
    return c == ProductClass::StandardQuanto || c == ProductClass::QuantoDirect ||
           c == ProductClass::QuantoInverse;
}

std::string to_string(ProductClass c);
ProductClass parse_product_class(const std::string& text);

std::string to_string(OptionSide s);

/// Fixed conversion multiplier agreed at inception. `xbar` is the literal
/// factor applied to the payoff; source/target record the denomination change.
struct QuantoFix {
    double xbar{};
    Currency source;
    Currency target;
    void validate() const;
};

/// Scalar amount tagged with its denomination. Arithmetic between different
/// denominations throws.
struct Money {
    double amount{};
    Currency denom;

    Money operator+(const Money& rhs) const;
    Money operator-(const Money& rhs) const;
    Money operator*(double k) const { return {amount * k, denom}; }
};

struct OptionContract {
    Currency underlying_base;   // e.g. BTC
    Currency underlying_quote;  // e.g. USD
    ProductClass product{ProductClass::Standard};
    OptionSide side{OptionSide::Call};
    double strike{};            // quote units per base unit
    double notional{1.0};       // number of coins N
    std::optional<QuantoFix> fix;

    void validate() const;
    /// Denomination of the contract's payoff.
    Currency payoff_denom() const;
};

struct MarketState {
    double spot{};      // quote units per base unit
    double vol{};       // per sqrt(year)
    double rate_dom{};  // quote-currency rate r
    double rate_for{};  // base-currency rate r_f
    double tau{};       // years to expiry, ACT/365

    void validate() const;
};

struct DValues {
    double d1{};
    double d2{};
    double d3{};
};

/// Standard normal CDF, absolute error <= 1e-15.
double norm_cdf(double x);
double norm_pdf(double x);
/// Inverse standard normal CDF on (0,1).
double inv_norm_cdf(double p);

/// e^{-r tau}; tau must be nonnegative.
double discount(double r, double tau);

/// d1 = [ln(S/K) + (r - r_f + sigma^2/2) tau] / (sigma sqrt(tau)),
/// d2 = d1 - sigma sqrt(tau), d3 = d2 - sigma sqrt(tau).
/// Throws on degenerate sigma or tau; callers handle expiry analytically.
DValues d_values(double S, double K, double r, double r_f, double sigma, double tau);

}  // namespace coinopt
