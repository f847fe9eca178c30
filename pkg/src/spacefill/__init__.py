"""Ordered space-filling designs on compact domains.

Incremental constructions (greedy covering-criterion maximization,
coffee-house spacings, relaxed covering radius) with covering/packing
diagnostics and analytic bounds.
"""

__version__ = "0.1.0"

from . import bounds, cdf_criterion, coffeehouse, domain, greedy_engine, metrics, pointgen, relaxed_cr

__all__ = [
    "bounds",
    "cdf_criterion",
    "coffeehouse",
    "domain",
    "greedy_engine",
    "metrics",
    "pointgen",
    "relaxed_cr",
    "__version__",
]
