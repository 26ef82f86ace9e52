#include "coinopt/implied_vol.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "coinopt/analytic.hpp"

namespace coinopt {

namespace {

constexpr double kSigmaLo = 1e-4;
constexpr double kSigmaHi = 10.0;
constexpr int kScanPoints = 400;
constexpr int kMaxIter = 200;

// Bisection with a secant acceleration step when the secant point stays
// inside the bracket. Robust against the flat/non-monotone regions of the
// quanto-inverse price.
double refine(const std::function<double(double)>& f, double lo, double hi, double flo, double fhi,
              double tol, int& iterations) {
    double x = lo, fx = flo;
    for (int i = 0; i < kMaxIter; ++i) {
        ++iterations;
        double mid = 0.5 * (lo + hi);
        if (std::abs(fhi - flo) > 0.0) {
            double sec = lo - flo * (hi - lo) / (fhi - flo);
            if (sec > lo && sec < hi) mid = sec;
        }
        x = mid;
        fx = f(x);
        if (std::abs(fx) <= tol || hi - lo < 1e-14) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return x;
}

}  // namespace

IvResult implied_vol(ProductClass product, OptionSide side, double target_price, double S,
                     double K, std::optional<double> xbar, double r, double r_f, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("implied vol requires tau > 0");
    if (!(S > 0.0) || !(K > 0.0)) throw std::invalid_argument("spot and strike must be positive");
    if (!(target_price > 0.0))
        throw std::invalid_argument("target price is below the attainable range");
    if (product == ProductClass::QuantoInverse || product == ProductClass::StandardQuanto ||
        product == ProductClass::QuantoDirect) {
        if (!xbar || !(*xbar > 0.0))
            throw std::invalid_argument("quanto classes require a positive conversion multiplier");
    }

    std::function<double(double)> price_at = [&](double sigma) {
        switch (product) {
            case ProductClass::Standard:
            case ProductClass::Direct:
                return price_standard(side, S, K, r, r_f, sigma, tau);
            case ProductClass::StandardQuanto:
            case ProductClass::QuantoDirect:
                return *xbar * price_standard(side, S, K, r, r_f, sigma, tau);
            case ProductClass::Inverse:
                return price_inverse(side, S, K, r, r_f, sigma, tau, InverseDenom::Base);
            case ProductClass::QuantoInverse:
                if (r_f != 0.0)
                    throw std::invalid_argument(
                        "quanto-inverse pricing assumes a zero base-coin rate");
                return price_quanto_inverse(side, S, K, *xbar, r, sigma, tau);
        }
        throw std::logic_error("unreachable product class");
    };

    const double tol = 1e-10 * std::max(1.0, target_price);
    auto g = [&](double sigma) { return price_at(sigma) - target_price; };

    IvResult out;
    std::vector<std::pair<double, double>> brackets;
    double prev_x = kSigmaLo;
    double prev_g = g(prev_x);
    if (std::abs(prev_g) <= tol) {
        out.sigma = prev_x;
        out.residual = std::abs(prev_g);
        return out;
    }
    for (int i = 1; i <= kScanPoints; ++i) {
        double x = kSigmaLo + (kSigmaHi - kSigmaLo) * static_cast<double>(i) / kScanPoints;
        double gx = g(x);
        if (std::abs(gx) <= tol) {
            brackets.emplace_back(x, x);
        } else if ((gx < 0.0) != (prev_g < 0.0)) {
            brackets.emplace_back(prev_x, x);
        }
        prev_x = x;
        prev_g = gx;
    }
    if (brackets.empty())
        throw std::invalid_argument("target price is outside the attainable range on sigma in "
                                    "[1e-4, 10]");

    const auto [lo, hi] = brackets.front();
    if (lo == hi) {
        out.sigma = lo;
    } else {
        out.sigma = refine(g, lo, hi, g(lo), g(hi), tol, out.iterations);
    }
    out.residual = std::abs(g(out.sigma));
    out.multiple_roots = brackets.size() > 1;
    if (out.residual > tol)
        throw std::runtime_error("implied vol solver failed to converge to tolerance");
    return out;
}

}  // namespace coinopt
