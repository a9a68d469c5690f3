"""Bounds on how many preferences a d-dimensional Euclidean model can represent."""

from fractions import Fraction

from . import _prefbound
from ._prefbound import (
    CapacityError,
    DegeneracyError,
    ball_sizes_bfs,
    banned_probability,
    contains_circulant,
    event_B_holds,
    find_circulant,
    info_loss_cdf_bound,
    info_loss_lower_bound,
    kendall_distance,
    mahonian_counts,
    max_representable_upper_bound,
    mc_pathology_probability,
    one_dim_distinct_orders,
    pathology_probability_lower_bound,
    restrict_to,
    sufficiency_threshold,
)


def exact_pathology_probability(A, I, k):
    """Exhaustive probability that a uniform profile holds a size-k circulant pathology."""
    return Fraction(*_prefbound.exact_pathology_probability(A, I, k))


def enumerate_event_B(A, d):
    return Fraction(*_prefbound.enumerate_event_B(A, d))


def run_csv(subcommand, **options):
    """CSV text for a sweep, byte-identical to the CLI. Returns (text, all_passed)."""
    return _prefbound.run_csv(subcommand, **options)


__all__ = [name for name in dir() if not name.startswith("_")]
