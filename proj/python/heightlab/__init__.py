"""Exact Weil heights, local Weil functions, and proximity functions for
rational and quadratic points, with the extremal S-unit constructions."""

from ._core import (
    canonical,
    degree_tag,
    excon_lines,
    exinf_lines,
    galg_bound,
    gen_excon,
    gen_exinf,
    genth_bound,
    height,
    height_str,
    places,
    product_formula_defect,
    proximity,
    run_campaign,
    ruwang_bound,
    s_units,
    verify,
)

__all__ = [
    "canonical",
    "degree_tag",
    "excon_lines",
    "exinf_lines",
    "galg_bound",
    "gen_excon",
    "gen_exinf",
    "genth_bound",
    "height",
    "height_str",
    "places",
    "product_formula_defect",
    "proximity",
    "run_campaign",
    "ruwang_bound",
    "s_units",
    "verify",
]
