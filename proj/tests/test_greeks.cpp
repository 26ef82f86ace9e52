#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "coinopt/analytic.hpp"
#include "coinopt/greeks.hpp"
#include "coinopt/mc.hpp"

using namespace coinopt;

namespace {

double draw(std::uint64_t seed, int i, int j, double lo, double hi) {
    return lo + (hi - lo) * counter_uniform(seed, static_cast<std::uint64_t>(i) * 31 + j);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void check_all(const GreekReport& g, const GreekReport& fd, double tol) {
    CHECK(rel_err(g.delta, fd.delta) <= tol);
    CHECK(rel_err(g.gamma, fd.gamma) <= tol);
    CHECK(rel_err(g.vega, fd.vega) <= tol);
    CHECK(rel_err(g.volga, fd.volga) <= tol);
    CHECK(rel_err(g.vanna, fd.vanna) <= tol);
    CHECK(rel_err(g.theta, fd.theta) <= tol);
}

}  // namespace

TEST_CASE("inverse greeks match the frozen reference point") {
    // put, S=30000, K=27000, r=0.03, r_f=0.01, sigma=0.75, tau=120/365;
    // all values frozen from independent high-precision differentiation
    const auto g = greeks_inverse(OptionSide::Put, 30000.0, 27000.0, 0.03, 0.01, 0.75,
                                  120.0 / 365.0);
    CHECK(g.price == doctest::Approx(3397.5472315105012).epsilon(1e-12));
    CHECK(g.delta == doctest::Approx(-0.31624086445694191).epsilon(1e-12));
    CHECK(g.gamma == doctest::Approx(2.7529434539608456e-5).epsilon(1e-12));
    CHECK(g.vega == doctest::Approx(6109.2717745432465).epsilon(1e-12));
    CHECK(g.volga == doctest::Approx(175.2951402069627).epsilon(1e-11));
    CHECK(g.vanna == doctest::Approx(-0.021440038911532059).epsilon(1e-11));
    CHECK(g.theta == doctest::Approx(-6676.7171822189103).epsilon(1e-12));
}

TEST_CASE("quanto-inverse greeks match the frozen reference point") {
    // call, S=28000, K=25000, xbar=22500, r=0.02, sigma=0.9, tau=75/365
    const auto g = greeks_quanto_inverse(OptionSide::Call, 28000.0, 25000.0, 22500.0, 0.02, 0.9,
                                         75.0 / 365.0);
    CHECK(g.price == doctest::Approx(3176.5101496213466).epsilon(1e-12));
    CHECK(g.delta == doctest::Approx(0.31343860132018701).epsilon(1e-12));
    CHECK(g.gamma == doctest::Approx(5.4623070778221967e-6).epsilon(1e-12));
    CHECK(g.vega == doctest::Approx(791.95970015986479).epsilon(1e-11));
    CHECK(g.volga == doctest::Approx(-1328.1223039076524).epsilon(1e-11));
    CHECK(g.vanna == doctest::Approx(-0.20214767045240013).epsilon(1e-11));
    CHECK(g.theta == doctest::Approx(-1846.3871570969817).epsilon(1e-12));
}

TEST_CASE("inverse greek identities") {
    const double S = 25000.0, K = 25000.0, v = 0.75, t = 30.0 / 365.0;
    const auto c = greeks_inverse(OptionSide::Call, S, K, 0.0, 0.0, v, t);
    const auto p = greeks_inverse(OptionSide::Put, S, K, 0.0, 0.0, v, t);
    // at the money with zero rates, d1 = sigma sqrt(tau)/2
    CHECK(c.delta == doctest::Approx(norm_cdf(v * std::sqrt(t) / 2.0)).epsilon(1e-14));
    CHECK(c.delta > 0.5);
    CHECK(c.delta + std::abs(p.delta) == doctest::Approx(1.0).epsilon(1e-14));
    // gamma and vega carry no omega
    CHECK(c.gamma == p.gamma);
    CHECK(c.vega == p.vega);
    CHECK(c.volga == p.volga);
    CHECK(c.vanna == p.vanna);
    CHECK_THROWS_AS(greeks_inverse(OptionSide::Call, S, K, 0.0, 0.0, v, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(greeks_quanto_inverse(OptionSide::Call, S, K, 22500.0, 0.0, v, 0.0),
                    std::invalid_argument);
}

TEST_CASE("finite differences recover a quadratic exactly") {
    const PriceFn quad = [](double S, double sigma, double tau) {
        return 3.0e-4 * S * S + 2.0 * S + 7.0 + 0.0 * sigma + 0.0 * tau;
    };
    const auto g = fd_greeks(quad, 20000.0, 0.5, 0.5);
    CHECK(g.delta == doctest::Approx(3.0e-4 * 2.0 * 20000.0 + 2.0).epsilon(1e-10));
    CHECK(g.gamma == doctest::Approx(6.0e-4).epsilon(1e-9));
    CHECK(std::abs(g.vega) < 1e-9);
    CHECK(std::abs(g.theta) < 1e-9);
}

TEST_CASE("finite differences validate both closed-form sets") {
    const double tol = 1e-6;
    for (int i = 0; i < 120; ++i) {
        const double S = draw(71, i, 0, 8000.0, 60000.0);
        const double K = draw(71, i, 1, 0.6, 1.5) * S;
        const double r = draw(71, i, 2, 0.0, 0.05);
        const double rf = draw(71, i, 3, 0.0, 0.03);
        const double v = draw(71, i, 4, 0.25, 1.8);
        const double t = draw(71, i, 5, 0.02, 1.2);
        const OptionSide side = i % 2 == 0 ? OptionSide::Call : OptionSide::Put;

        const auto gi = greeks_inverse(side, S, K, r, rf, v, t);
        const PriceFn std_fn = [&](double s_, double v_, double t_) {
            return price_standard(side, s_, K, r, rf, v_, t_);
        };
        check_all(gi, fd_greeks(std_fn, S, v, t), tol);

        const double X = 22500.0;
        const auto gq = greeks_quanto_inverse(side, S, K, X, r, v, t);
        const PriceFn qi_fn = [&](double s_, double v_, double t_) {
            return price_quanto_inverse(side, s_, K, X, r, v_, t_);
        };
        check_all(gq, fd_greeks(qi_fn, S, v, t), tol);
    }
}

TEST_CASE("quanto-inverse call delta peaks and gamma changes sign once") {
    const double K = 25000.0, X = 25000.0, v = 0.75, t = 30.0 / 365.0;
    double prev_delta = -1.0;
    int delta_direction_changes = 0;
    int gamma_sign_changes = 0;
    double prev_gamma = 0.0;
    bool rising = true;
    for (double S = 5000.0; S <= 200000.0; S += 250.0) {
        const auto g = greeks_quanto_inverse(OptionSide::Call, S, K, X, 0.0, v, t);
        if (prev_delta >= 0.0) {
            const bool now_rising = g.delta > prev_delta;
            if (rising && !now_rising) ++delta_direction_changes;
            rising = now_rising;
        }
        if (prev_gamma != 0.0 && (g.gamma < 0.0) != (prev_gamma < 0.0)) ++gamma_sign_changes;
        prev_delta = g.delta;
        prev_gamma = g.gamma;
    }
    CHECK(delta_direction_changes == 1);  // interior maximum
    CHECK(gamma_sign_changes == 1);
    // far in the money the delta decays to zero
    CHECK(greeks_quanto_inverse(OptionSide::Call, 5e6, K, X, 0.0, v, t).delta <
          greeks_quanto_inverse(OptionSide::Call, 30000.0, K, X, 0.0, v, t).delta);
}

TEST_CASE("quanto-inverse put delta is negative and unbounded below") {
    const double K = 25000.0, X = 25000.0, v = 0.75, t = 90.0 / 365.0;
    double prev = -1e300;
    for (double S = 500.0; S <= 200000.0; S *= 1.4) {
        const double d = greeks_quanto_inverse(OptionSide::Put, S, K, X, 0.0, v, t).delta;
        CHECK(d < 0.0);
        CHECK(d > prev);  // recovers toward zero as the spot rises
        prev = d;
    }
    // blows up as the spot collapses
    CHECK(greeks_quanto_inverse(OptionSide::Put, 1.0, K, X, 0.0, v, t).delta < -1e3);
}

TEST_CASE("low-strike quanto-inverse calls can carry positive theta") {
    // deep in the money at the reference curve parameters
    const auto g = greeks_quanto_inverse(OptionSide::Call, 25000.0, 5000.0, 25000.0, 0.0, 0.75,
                                         30.0 / 365.0);
    CHECK(g.theta > 0.0);
}

TEST_CASE("greek curves over the strike grid") {
    std::vector<double> strikes;
    for (double k = 5000.0; k <= 50000.0; k += 1000.0) strikes.push_back(k);
    const std::vector<double> maturities{10.0, 30.0, 90.0};
    const auto pts = greek_curves(25000.0, 25000.0, 0.0, 0.75, strikes, maturities);
    REQUIRE(pts.size() == strikes.size() * maturities.size() * 4);

    for (double days : maturities) {
        // inverse call delta decreases in strike
        double prev = 2.0;
        int qi_delta_rises = 0;
        double prev_qi = 2.0;
        for (const auto& p : pts) {
            if (p.maturity_days != days || p.side != OptionSide::Call) continue;
            if (p.product == ProductClass::Inverse) {
                // deep in the money the delta saturates at 1, so ties
                // are allowed at the low-strike end
                CHECK(p.greeks.delta <= prev);
                prev = p.greeks.delta;
                // self-consistency with pointwise evaluation
                const auto direct = greeks_inverse(p.side, 25000.0, p.strike, 0.0, 0.0, 0.75,
                                                   days / 365.0);
                CHECK(p.greeks.delta == direct.delta);
            } else if (p.product == ProductClass::QuantoInverse) {
                if (prev_qi < 1.9 && p.greeks.delta > prev_qi) ++qi_delta_rises;
                prev_qi = p.greeks.delta;
            }
        }
        // the quanto-inverse call delta curve is not monotone in strike
        CHECK(qi_delta_rises > 0);
    }
    CHECK_THROWS_AS(greek_curves(25000.0, 25000.0, 0.0, 0.75, {}, maturities),
                    std::invalid_argument);
}

TEST_CASE("bump spec validation") {
    CHECK_THROWS_AS((BumpSpec{0.0, 1e-3, 1e-5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BumpSpec{1e-2, 1e-3, 1e-5}.validate()), std::invalid_argument);
    const PriceFn f = [](double S, double, double) { return S; };
    CHECK_THROWS_AS(fd_greeks(f, -1.0, 0.5, 0.5), std::invalid_argument);
}
