"""Polycyclic groups, Engel laws and the protocols built on them."""

from ._core import (
    BudgetExceeded,
    Element,
    EngelError,
    Group,
    InvalidArgument,
    ParseError,
    ProtocolError,
    TransportError,
    check_law,
    commutator,
    degree,
    dlp_cyclic,
    engel_commutator,
    geodesic_length,
    power_decision,
    run_session,
    word_problem,
)

__all__ = [
    "BudgetExceeded",
    "Element",
    "EngelError",
    "Group",
    "InvalidArgument",
    "ParseError",
    "ProtocolError",
    "TransportError",
    "check_law",
    "commutator",
    "degree",
    "dlp_cyclic",
    "engel_commutator",
    "geodesic_length",
    "power_decision",
    "run_session",
    "word_problem",
]


def catalog(name):
    return Group.catalog(name)
