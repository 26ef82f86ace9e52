import math

import pytest

import coinopt


def test_quanto_inverse_price_anchor():
    p = coinopt.price_quanto_inverse(
        "call", spot=30000.0, strike=25000.0, fix=25000.0, rate=0.0, vol=2.0, tau=10.0 / 365.0
    )
    assert p == pytest.approx(4123.757944201624, rel=1e-12)


def test_inverse_duality():
    kw = dict(spot=30000.0, strike=25000.0, rate=0.01, rate_foreign=0.005, vol=0.8, tau=0.25)
    quote = coinopt.price_inverse("call", denom="quote", **kw)
    base = coinopt.price_inverse("call", denom="base", **kw)
    assert quote == pytest.approx(30000.0 * base, rel=1e-12)
    assert quote == pytest.approx(coinopt.price_standard("call", **kw), rel=1e-12)


def test_payoff_table_cells():
    amount, denom = coinopt.payoff("quanto-inverse", "call", 25000.0, 40000.0, fix=22500.0)
    assert amount == pytest.approx(8437.5)
    assert denom == "USD"
    amount, denom = coinopt.payoff("inverse", "put", 9000.0, 3500.0)
    assert amount == pytest.approx(5500.0 / 3500.0)
    assert denom == "BTC"


def test_greeks_match_finite_differences():
    g = coinopt.greeks(
        "quanto-inverse", "call", spot=30000.0, strike=25000.0, fix=25000.0,
        rate=0.01, vol=0.8, tau=0.25,
    )
    h = 1e-4 * 30000.0
    up = coinopt.price_quanto_inverse("call", 30000.0 + h, 25000.0, 25000.0, 0.01, 0.8, 0.25)
    dn = coinopt.price_quanto_inverse("call", 30000.0 - h, 25000.0, 25000.0, 0.01, 0.8, 0.25)
    assert g.delta == pytest.approx((up - dn) / (2.0 * h), rel=1e-6)
    assert g.denom == "USD"


def test_implied_vol_round_trip():
    target = coinopt.price_standard("put", 30000.0, 32000.0, 0.02, 0.0, 0.6, 0.5)
    res = coinopt.implied_vol(
        "standard", "put", target, spot=30000.0, strike=32000.0, rate=0.02, tau=0.5
    )
    assert res.sigma == pytest.approx(0.6, abs=1e-6)
    assert not res.multiple_roots


def test_mc_within_three_standard_errors():
    est = coinopt.mc_price(
        "quanto-inverse", "call", spot=30000.0, strike=25000.0, fix=25000.0,
        vol=1.0, tau=0.25, seed=7, n_paths=200_000, workers=4,
    )
    closed = coinopt.price_quanto_inverse("call", 30000.0, 25000.0, 25000.0, 0.0, 1.0, 0.25)
    assert abs(est.value - closed) <= 3.0 * est.std_error
    # determinism across worker counts
    again = coinopt.mc_price(
        "quanto-inverse", "call", spot=30000.0, strike=25000.0, fix=25000.0,
        vol=1.0, tau=0.25, seed=7, n_paths=200_000, workers=1,
    )
    assert est.value == again.value
    assert est.std_error == again.std_error


def test_hedge_pnl_shrinks_with_finer_rebalancing():
    tau = 30.0 / 365.0
    kw = dict(
        spot=25000.0, strike=25000.0, fix=25000.0, vol=0.5, tau=tau,
        sigma_index=0.5, sigma_hedge=0.5, rho=1.0, seed=11, n_paths=2000, workers=4,
    )
    coarse = coinopt.simulate_hedge("quanto-inverse", "call", rebalance_dt=tau / 16, **kw)
    fine = coinopt.simulate_hedge("quanto-inverse", "call", rebalance_dt=tau / 256, **kw)
    assert fine.std_pnl < coarse.std_pnl
    assert not math.isnan(fine.mean_pnl)


def test_canonical_instrument():
    assert coinopt.canonical_instrument("btc-05jan24-1750.50-c") == "BTC-5JAN24-1750.5-C"
    with pytest.raises(ValueError):
        coinopt.canonical_instrument("BTC-32JAN24-100-C")
