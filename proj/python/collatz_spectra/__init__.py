"""Exact residue-class spectra of the 3x+1 and 5x+1 maps.

Integers are plain Python ints and exact densities are fractions.Fraction.
Maps are named as on the command line: c3, t3, u3, u3g, fraku3, c5, t5, u5,
u5g, fraku5.
"""

from ._core import (
    branch,
    chain,
    cumulative_SL,
    distribution_DL,
    distribution_F,
    families,
    rising_fraction,
    run_cli,
    slices,
    solve_word,
    step,
    stopping_time,
    survivor_triangle,
    to_decimal,
)

__all__ = [
    "branch",
    "chain",
    "cumulative_SL",
    "distribution_DL",
    "distribution_F",
    "families",
    "rising_fraction",
    "run_cli",
    "slices",
    "solve_word",
    "step",
    "stopping_time",
    "survivor_triangle",
    "to_decimal",
]
