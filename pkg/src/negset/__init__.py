"""Negotiation-set algebra: double sets with compromise operators,
consistency over contradiction relations, a session DSL, and an
exhaustive law oracle."""

from .core import (
    FiniteSet,
    InclusionMode,
    NegotiationSet,
    SpecialKind,
    Universe,
    complement,
    difference,
    included,
    inter_all,
    make_negset,
    make_universe,
    negset_of,
    odot,
    odot_all,
    oplus,
    oplus_all,
    special,
    union_all,
)
from .consistency import (
    AgentPriority,
    ContradictionSpec,
    DiscViolation,
    Failed,
    FewestNecessities,
    ObjectDominance,
    Resolved,
    Strict,
    disc_violations,
    is_disc,
    make_contradiction_spec,
    resolve_odot,
)
from .session import (
    SessionReport,
    SessionScript,
    eval_expr,
    format_negset,
    parse_session,
    print_session,
    run_session,
)
from .oracle import (
    check_law,
    enumerate_negsets,
    fixture_ids,
    law_ids,
    verify_fixture,
)

__all__ = [name for name in dir() if not name.startswith("_")]
