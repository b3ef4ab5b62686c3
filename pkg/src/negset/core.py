"""Core algebra of negotiation sets.

A negotiation set is an ordered pair [necessity, admissibility] of subsets
of a finite universe with necessity contained in admissibility.  Membership
is stored as a bitmask indexed by declaration order, so every operation is
a couple of integer operations and all output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateName,
    EmptyFamily,
    EmptyUniverse,
    InvalidName,
    NotDouble,
    UniverseMismatch,
    UnknownObject,
)


@dataclass(frozen=True)
class Universe:
    """Ordered, finite collection of distinct object names."""

    objects: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.objects)})

    def __len__(self) -> int:
        return len(self.objects)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownObject(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def full_mask(self) -> int:
        return (1 << len(self.objects)) - 1

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(name for i, name in enumerate(self.objects) if mask >> i & 1)


def make_universe(names: Sequence[str]) -> Universe:
    """Build a universe, enforcing non-emptiness and name validity."""
    if not names:
        raise EmptyUniverse("universe must contain at least one object")
    seen = set()
    for name in names:
        if not name or any(c.isspace() for c in name):
            raise InvalidName(name)
        if name in seen:
            raise DuplicateName(name)
        seen.add(name)
    return Universe(tuple(names))


@dataclass(frozen=True)
class FiniteSet:
    """Subset of a universe, represented as a bitmask."""

    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask & ~self.universe.full_mask:
            raise UnknownObject(f"mask {self.mask:#x} has bits outside the universe")

    @classmethod
    def of(cls, universe: Universe, names: Iterable[str]) -> "FiniteSet":
        return cls(universe, universe.mask_of(names))

    @classmethod
    def empty(cls, universe: Universe) -> "FiniteSet":
        return cls(universe, 0)

    @classmethod
    def full(cls, universe: Universe) -> "FiniteSet":
        return cls(universe, universe.full_mask)

    def _check(self, other: "FiniteSet") -> None:
        if self.universe != other.universe:
            raise UniverseMismatch("sets over different universes")

    def __or__(self, other: "FiniteSet") -> "FiniteSet":
        self._check(other)
        return FiniteSet(self.universe, self.mask | other.mask)

    def __and__(self, other: "FiniteSet") -> "FiniteSet":
        self._check(other)
        return FiniteSet(self.universe, self.mask & other.mask)

    def __sub__(self, other: "FiniteSet") -> "FiniteSet":
        self._check(other)
        return FiniteSet(self.universe, self.mask & ~other.mask)

    def complement(self) -> "FiniteSet":
        return FiniteSet(self.universe, self.universe.full_mask & ~self.mask)

    def issubset(self, other: "FiniteSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __contains__(self, name: str) -> bool:
        return bool(self.mask >> self.universe.index(name) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def names(self) -> tuple[str, ...]:
        return self.universe.names_of(self.mask)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names())

    def __str__(self) -> str:
        return "{" + " ".join(self.names()) + "}"


class InclusionMode(Enum):
    """Which components participate in an inclusion test."""

    FULL = "full"
    NECESSITY = "necessity-only"
    ADMISSIBILITY = "admissibility-only"


class SpecialKind(Enum):
    EMPTY_N = "empty-N"
    FULL_N = "full-N"
    HALF_EMPTY = "half-empty"
    POINT_HALF = "point-half"
    POINT_FULL = "point-full"


@dataclass(frozen=True)
class NegotiationSet:
    """Pair [necessity, admissibility] with necessity contained in admissibility."""

    necessity: FiniteSet
    admissibility: FiniteSet

    def __post_init__(self):
        if self.necessity.universe != self.admissibility.universe:
            raise UniverseMismatch("components over different universes")
        if not self.necessity.issubset(self.admissibility):
            raise NotDouble(
                f"necessity {self.necessity} not contained in admissibility {self.admissibility}"
            )

    @property
    def universe(self) -> Universe:
        return self.necessity.universe

    def __str__(self) -> str:
        return f"[{self.necessity} {self.admissibility}]"


def make_negset(necessity: FiniteSet, admissibility: FiniteSet) -> NegotiationSet:
    return NegotiationSet(necessity, admissibility)


def negset_of(universe: Universe, necessity: Iterable[str], admissibility: Iterable[str]) -> NegotiationSet:
    """Convenience constructor from name collections."""
    return NegotiationSet(FiniteSet.of(universe, necessity), FiniteSet.of(universe, admissibility))


def complement(a: NegotiationSet) -> NegotiationSet:
    return NegotiationSet(a.admissibility.complement(), a.necessity.complement())


def difference(a: NegotiationSet, b: NegotiationSet) -> NegotiationSet:
    return NegotiationSet(a.necessity - b.admissibility, a.admissibility - b.necessity)


def included(a: NegotiationSet, b: NegotiationSet, mode: InclusionMode = InclusionMode.FULL) -> bool:
    if a.universe != b.universe:
        raise UniverseMismatch("operands over different universes")
    if mode is InclusionMode.NECESSITY:
        return a.necessity.issubset(b.necessity)
    if mode is InclusionMode.ADMISSIBILITY:
        return a.admissibility.issubset(b.admissibility)
    return a.necessity.issubset(b.necessity) and a.admissibility.issubset(b.admissibility)


def _family(family: Sequence[NegotiationSet]) -> Sequence[NegotiationSet]:
    if not family:
        raise EmptyFamily("generalized operations need a non-empty family")
    universe = family[0].universe
    for a in family[1:]:
        if a.universe != universe:
            raise UniverseMismatch("family members over different universes")
    return family


def union_all(family: Sequence[NegotiationSet]) -> NegotiationSet:
    family = _family(family)
    nec = reduce(lambda m, a: m | a.necessity.mask, family, 0)
    adm = reduce(lambda m, a: m | a.admissibility.mask, family, 0)
    u = family[0].universe
    return NegotiationSet(FiniteSet(u, nec), FiniteSet(u, adm))


def inter_all(family: Sequence[NegotiationSet]) -> NegotiationSet:
    family = _family(family)
    u = family[0].universe
    nec = reduce(lambda m, a: m & a.necessity.mask, family, u.full_mask)
    adm = reduce(lambda m, a: m & a.admissibility.mask, family, u.full_mask)
    return NegotiationSet(FiniteSet(u, nec), FiniteSet(u, adm))


def odot_all(family: Sequence[NegotiationSet]) -> NegotiationSet:
    """Minimalization of necessities: [intersection of necessities, union of admissibilities]."""
    family = _family(family)
    u = family[0].universe
    nec = reduce(lambda m, a: m & a.necessity.mask, family, u.full_mask)
    adm = reduce(lambda m, a: m | a.admissibility.mask, family, 0)
    return NegotiationSet(FiniteSet(u, nec), FiniteSet(u, adm))


def oplus_all(family: Sequence[NegotiationSet]) -> NegotiationSet:
    """Relative maximalization: necessities are pooled, then clipped into the shared admissibility."""
    family = _family(family)
    u = family[0].universe
    adm = reduce(lambda m, a: m & a.admissibility.mask, family, u.full_mask)
    nec = reduce(lambda m, a: m | a.necessity.mask, family, 0) & adm
    return NegotiationSet(FiniteSet(u, nec), FiniteSet(u, adm))


def odot(a: NegotiationSet, b: NegotiationSet) -> NegotiationSet:
    return odot_all([a, b])


def oplus(a: NegotiationSet, b: NegotiationSet) -> NegotiationSet:
    return oplus_all([a, b])


def special(universe: Universe, kind: SpecialKind, name: str | None = None) -> NegotiationSet:
    """The distinguished constant sets, plus the two point constructions."""
    empty = FiniteSet.empty(universe)
    full = FiniteSet.full(universe)
    if kind is SpecialKind.EMPTY_N:
        return NegotiationSet(empty, empty)
    if kind is SpecialKind.FULL_N:
        return NegotiationSet(full, full)
    if kind is SpecialKind.HALF_EMPTY:
        return NegotiationSet(empty, full)
    if name is None:
        raise UnknownObject(None)
    point = FiniteSet.of(universe, [name])
    if kind is SpecialKind.POINT_HALF:
        return NegotiationSet(empty, point)
    return NegotiationSet(point, point)
