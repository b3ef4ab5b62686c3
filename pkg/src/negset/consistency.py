"""Contradiction relations, the consistency class DISC, and conflict resolution.

A negotiation set is admitted to discussion (DISC) when no strongly
contradictory pair sits inside its admissibility range, and no weakly
contradictory pair inside the admissibility range touches the necessity
range.  Compromise by minimalization can leave DISC; the resolution
policies here decide what happens then.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import FiniteSet, NegotiationSet, Universe, odot
from .errors import (
    DominanceNotStrictOrder,
    InputNotDisc,
    OverlappingKinds,
    PolicyError,
    ReflexivePair,
    UniverseMismatch,
)

STRONG_IN_ADMISSIBILITY = "strong-in-admissibility"
WEAK_WITH_NECESSITY = "weak-with-necessity"


@dataclass(frozen=True)
class ContradictionSpec:
    """Strong and weak contradiction pairs, plus an optional dominance order.

    Pairs are stored as index pairs (i, j) with i < j; dominance pairs are
    ordered (winner, loser).
    """

    universe: Universe
    strong: frozenset[tuple[int, int]]
    weak: frozenset[tuple[int, int]]
    dominance: frozenset[tuple[int, int]] = frozenset()

    def pair_names(self, pair: tuple[int, int]) -> tuple[str, str]:
        return self.universe.objects[pair[0]], self.universe.objects[pair[1]]

    def dominates(self, x: str, y: str) -> bool:
        return (self.universe.index(x), self.universe.index(y)) in self.dominance

    @property
    def empty(self) -> bool:
        return not self.strong and not self.weak


def make_contradiction_spec(
    universe: Universe,
    strong_pairs: Iterable[tuple[str, str]] = (),
    weak_pairs: Iterable[tuple[str, str]] = (),
    dominance_pairs: Iterable[tuple[str, str]] = (),
) -> ContradictionSpec:
    def normalize(pairs):
        out = set()
        for x, y in pairs:
            i, j = universe.index(x), universe.index(y)
            if i == j:
                raise ReflexivePair(x)
            out.add((min(i, j), max(i, j)))
        return frozenset(out)

    strong = normalize(strong_pairs)
    weak = normalize(weak_pairs)
    overlap = strong & weak
    if overlap:
        i, j = sorted(overlap)[0]
        raise OverlappingKinds(universe.objects[i], universe.objects[j])

    dom = set()
    for x, y in dominance_pairs:
        i, j = universe.index(x), universe.index(y)
        if i == j:
            raise DominanceNotStrictOrder(f"({x}, {x}) is reflexive")
        dom.add((i, j))
    for i, j in dom:
        if (j, i) in dom:
            raise DominanceNotStrictOrder(
                f"({universe.objects[i]}, {universe.objects[j]}) declared in both directions"
            )
    for i, j in dom:
        for k, l in dom:
            if j == k and (i, l) not in dom:
                raise DominanceNotStrictOrder(
                    f"missing transitive pair ({universe.objects[i]}, {universe.objects[l]})"
                )
    return ContradictionSpec(universe, strong, weak, frozenset(dom))


@dataclass(frozen=True)
class DiscViolation:
    kind: str
    pair: tuple[str, str]

    def __str__(self) -> str:
        return f"{self.kind} ({self.pair[0]}, {self.pair[1]})"


def disc_violations(a: NegotiationSet, spec: ContradictionSpec) -> list[DiscViolation]:
    """Every offending pair, exactly once, in deterministic index order."""
    if a.universe != spec.universe:
        raise UniverseMismatch("set and contradiction spec over different universes")
    nec, adm = a.necessity.mask, a.admissibility.mask
    out = []
    for i, j in sorted(spec.strong):
        if adm >> i & 1 and adm >> j & 1:
            out.append(DiscViolation(STRONG_IN_ADMISSIBILITY, spec.pair_names((i, j))))
    for i, j in sorted(spec.weak):
        if adm >> i & 1 and adm >> j & 1 and (nec >> i & 1 or nec >> j & 1):
            out.append(DiscViolation(WEAK_WITH_NECESSITY, spec.pair_names((i, j))))
    return out


def is_disc(a: NegotiationSet, spec: ContradictionSpec) -> bool:
    return not disc_violations(a, spec)


# --- resolution policies ---

@dataclass(frozen=True)
class Strict:
    name = "strict"


@dataclass(frozen=True)
class ObjectDominance:
    name = "dominance"


@dataclass(frozen=True)
class AgentPriority:
    ranking: tuple[str, ...]
    name = "agent-priority"


@dataclass(frozen=True)
class FewestNecessities:
    name = "fewest-necessities"


ResolutionPolicy = Strict | ObjectDominance | AgentPriority | FewestNecessities


@dataclass(frozen=True)
class Resolved:
    result: NegotiationSet
    dropped: frozenset[str] = frozenset()

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class Failed:
    reason: str
    pairs: tuple[tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return False


ResolutionOutcome = Resolved | Failed


def _drop_by_preferred(result, spec, pairs, preferred_adm):
    """Keep, per pair, the element the preferred operand admits; drop the other."""
    dropped = set()
    ambiguous = []
    for x, y in pairs:
        in_x, in_y = x in preferred_adm, y in preferred_adm
        if in_x == in_y:
            ambiguous.append((x, y))
        elif in_x:
            dropped.add(y)
        else:
            dropped.add(x)
    if ambiguous:
        return Failed("ambiguous provenance", tuple(ambiguous))
    return _apply_drops(result, spec, dropped)


def _apply_drops(result: NegotiationSet, spec: ContradictionSpec, dropped: set[str]) -> ResolutionOutcome:
    u = result.universe
    drop_mask = u.mask_of(dropped)
    # conflict locality: strong violators never sit in the necessity range of a
    # DISC-input minimalization, so only the admissibility range shrinks
    assert result.necessity.mask & drop_mask == 0
    repaired = NegotiationSet(
        result.necessity, FiniteSet(u, result.admissibility.mask & ~drop_mask)
    )
    remaining = disc_violations(repaired, spec)
    if remaining:
        return Failed("violations survive drops", tuple(v.pair for v in remaining))
    return Resolved(repaired, frozenset(dropped))


def resolve_odot(
    a: NegotiationSet,
    b: NegotiationSet,
    spec: ContradictionSpec,
    policy: ResolutionPolicy,
    agent_names: tuple[str | None, str | None] | None = None,
) -> ResolutionOutcome:
    """Compute a minimalization and repair it per policy if it leaves DISC."""
    if not is_disc(a, spec):
        raise InputNotDisc("left operand is not admitted to discussion")
    if not is_disc(b, spec):
        raise InputNotDisc("right operand is not admitted to discussion")

    result = odot(a, b)
    violations = disc_violations(result, spec)
    if not violations:
        return Resolved(result)
    # weak violations cannot arise from DISC operands
    assert all(v.kind == STRONG_IN_ADMISSIBILITY for v in violations)
    pairs = tuple(v.pair for v in violations)

    if isinstance(policy, Strict):
        return Failed("strong conflict", pairs)

    if isinstance(policy, ObjectDominance):
        dropped = set()
        unordered = []
        for x, y in pairs:
            if spec.dominates(x, y):
                dropped.add(y)
            elif spec.dominates(y, x):
                dropped.add(x)
            else:
                unordered.append((x, y))
        if unordered:
            return Failed("pair not ordered by dominance", tuple(unordered))
        return _apply_drops(result, spec, dropped)

    if isinstance(policy, AgentPriority):
        if agent_names is None or agent_names[0] is None or agent_names[1] is None:
            return Failed("ambiguous provenance", pairs)
        for name in agent_names:
            if name not in policy.ranking:
                raise PolicyError(f"agent {name!r} missing from priority ranking")
        ranks = {name: i for i, name in enumerate(policy.ranking)}
        preferred = a if ranks[agent_names[0]] < ranks[agent_names[1]] else b
        return _drop_by_preferred(result, spec, pairs, preferred.admissibility)

    if isinstance(policy, FewestNecessities):
        if len(a.necessity) == len(b.necessity):
            return Failed(
                f"incomparable: both operands have {len(a.necessity)} necessities", pairs
            )
        preferred = a if len(a.necessity) < len(b.necessity) else b
        return _drop_by_preferred(result, spec, pairs, preferred.admissibility)

    raise PolicyError(f"unknown policy: {policy!r}")
