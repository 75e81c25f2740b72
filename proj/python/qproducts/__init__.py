"""Exact coefficients and progression sums of prod_{j<=n} (1 - q^j)^s."""

from ._qproducts import (
    PrecisionError,
    ResourceLimitError,
    character_sum,
    closed_form,
    coefficient,
    coefficient_cap,
    cyclic_reduce,
    degree,
    expand,
    max_abs_coefficient,
    parity_counts,
    progression_sum,
    q_binomial,
    run_cli,
    series,
    set_coefficient_cap,
    sudler_constant,
    tau_progression,
    trig_form,
)

__all__ = [
    "PrecisionError",
    "ResourceLimitError",
    "character_sum",
    "closed_form",
    "coefficient",
    "coefficient_cap",
    "cyclic_reduce",
    "degree",
    "expand",
    "max_abs_coefficient",
    "parity_counts",
    "progression_sum",
    "q_binomial",
    "run_cli",
    "series",
    "set_coefficient_cap",
    "sudler_constant",
    "tau_progression",
    "trig_form",
]
