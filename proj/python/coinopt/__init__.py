"""Crypto option pricing: inverse and quanto-inverse contracts."""

from ._coinopt import (
    GreekReport,
    HedgeReport,
    IvResult,
    McEstimate,
    canonical_instrument,
    greeks,
    implied_vol,
    mc_price,
    payoff,
    price_inverse,
    price_quanto_inverse,
    price_standard,
    simulate_hedge,
)

__all__ = [
    "GreekReport",
    "HedgeReport",
    "IvResult",
    "McEstimate",
    "canonical_instrument",
    "greeks",
    "implied_vol",
    "mc_price",
    "payoff",
    "price_inverse",
    "price_quanto_inverse",
    "price_standard",
    "simulate_hedge",
]
