"""Exact random assignment mechanisms and incentive checks.

Agents, objects and ranks are 0-based. A preference is a list of objects,
best first; a profile is one preference per agent. Shares come back as
fractions.Fraction.
"""

from ._core import (
    InputError,
    InternalError,
    Mechanism,
    ResourceError,
    check,
    check_obic,
    decompose,
    ex_post_efficient,
    fosd,
    interim_shares,
    load_table,
    lp_dominance,
    lrobic_search,
    obic_decomposition,
    ordinally_efficient,
    probabilistic_serial,
    random_priority,
    rank_vectors,
    recombine,
    sample_prior,
    sd,
    sea,
    serial_dictatorship,
    tabulated,
    uniform_prior,
)
from ._core import ps, rp

__all__ = [
    "InputError",
    "InternalError",
    "Mechanism",
    "ResourceError",
    "check",
    "check_obic",
    "decompose",
    "ex_post_efficient",
    "fosd",
    "interim_shares",
    "load_table",
    "lp_dominance",
    "lrobic_search",
    "obic_decomposition",
    "ordinally_efficient",
    "probabilistic_serial",
    "ps",
    "random_priority",
    "rank_vectors",
    "recombine",
    "rp",
    "sample_prior",
    "sd",
    "sea",
    "serial_dictatorship",
    "tabulated",
    "uniform_prior",
]
