"""Independent reference semantics built on plain frozensets.

Deliberately shares no code with the package: values are
(necessity, admissibility) frozenset pairs and every operator is written
straight from its componentwise definition.  Used as the second route in
dual-route checks.
"""

from functools import reduce

Pair = tuple[frozenset, frozenset]


def ref_odot(*family: Pair) -> Pair:
    nec = reduce(frozenset.intersection, (a[0] for a in family))
    adm = reduce(frozenset.union, (a[1] for a in family))
    return nec, adm


def ref_oplus(*family: Pair) -> Pair:
    adm = reduce(frozenset.intersection, (a[1] for a in family))
    nec = reduce(frozenset.union, (a[0] for a in family)) & adm
    return nec, adm


def ref_union(*family: Pair) -> Pair:
    return (
        reduce(frozenset.union, (a[0] for a in family)),
        reduce(frozenset.union, (a[1] for a in family)),
    )


def ref_inter(*family: Pair) -> Pair:
    return (
        reduce(frozenset.intersection, (a[0] for a in family)),
        reduce(frozenset.intersection, (a[1] for a in family)),
    )


def ref_complement(universe: frozenset, a: Pair) -> Pair:
    return universe - a[1], universe - a[0]


def ref_difference(a: Pair, b: Pair) -> Pair:
    return a[0] - b[1], a[1] - b[0]


def ref_is_disc(a: Pair, strong, weak) -> bool:
    nec, adm = a
    for x, y in strong:
        if x in adm and y in adm:
            return False
    for x, y in weak:
        if x in adm and y in adm and (x in nec or y in nec):
            return False
    return True


def as_pair(negset) -> Pair:
    return frozenset(negset.necessity.names()), frozenset(negset.admissibility.names())
