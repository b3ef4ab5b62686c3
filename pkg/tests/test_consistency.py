import random

import pytest
from hypothesis import given, strategies as st

import negset as ns
from negset.consistency import (
    STRONG_IN_ADMISSIBILITY,
    WEAK_WITH_NECESSITY,
    AgentPriority,
    Failed,
    FewestNecessities,
    ObjectDominance,
    Resolved,
    Strict,
)
from negset.errors import (
    DominanceNotStrictOrder,
    InputNotDisc,
    OverlappingKinds,
    PolicyError,
    ReflexivePair,
)

from refimpl import as_pair, ref_is_disc

LETTERS = "abcdef"


def u2():
    return ns.make_universe(["a", "b"])


class TestContradictionSpec:
    def test_valid(self):
        spec = ns.make_contradiction_spec(u2(), strong_pairs=[("a", "b")])
        assert spec.strong == frozenset({(0, 1)})
        assert not spec.weak

    def test_pairs_normalized_symmetric(self):
        spec = ns.make_contradiction_spec(u2(), strong_pairs=[("b", "a")])
        assert spec.strong == frozenset({(0, 1)})

    def test_reflexive(self):
        with pytest.raises(ReflexivePair):
            ns.make_contradiction_spec(u2(), strong_pairs=[("a", "a")])

    def test_overlapping_kinds(self):
        with pytest.raises(OverlappingKinds):
            ns.make_contradiction_spec(
                u2(), strong_pairs=[("a", "b")], weak_pairs=[("b", "a")]
            )

    def test_dominance_symmetric_pair_rejected(self):
        with pytest.raises(DominanceNotStrictOrder):
            ns.make_contradiction_spec(u2(), dominance_pairs=[("a", "b"), ("b", "a")])

    def test_dominance_missing_transitive_pair(self):
        u = ns.make_universe(["a", "b", "c"])
        with pytest.raises(DominanceNotStrictOrder):
            ns.make_contradiction_spec(u, dominance_pairs=[("a", "b"), ("b", "c")])

    def test_dominance_transitive_ok(self):
        u = ns.make_universe(["a", "b", "c"])
        spec = ns.make_contradiction_spec(
            u, dominance_pairs=[("a", "b"), ("b", "c"), ("a", "c")]
        )
        assert spec.dominates("a", "c")
        assert not spec.dominates("c", "a")


class TestDisc:
    def test_point_is_disc(self):
        spec = ns.make_contradiction_spec(u2(), strong_pairs=[("a", "b")])
        a = ns.negset_of(u2(), ["a"], ["a"])
        assert ns.is_disc(a, spec)

    def test_strong_pair_in_admissibility(self):
        spec = ns.make_contradiction_spec(u2(), strong_pairs=[("a", "b")])
        bad = ns.negset_of(u2(), [], ["a", "b"])
        violations = ns.disc_violations(bad, spec)
        assert [(v.kind, v.pair) for v in violations] == [
            (STRONG_IN_ADMISSIBILITY, ("a", "b"))
        ]

    def test_weak_pair(self):
        u = ns.make_universe(["x", "y"])
        spec = ns.make_contradiction_spec(u, weak_pairs=[("x", "y")])
        assert not ns.is_disc(ns.negset_of(u, ["x"], ["x", "y"]), spec)
        assert ns.is_disc(ns.negset_of(u, [], ["x", "y"]), spec)

    def test_weak_violation_kind(self):
        u = ns.make_universe(["x", "y"])
        spec = ns.make_contradiction_spec(u, weak_pairs=[("x", "y")])
        violations = ns.disc_violations(ns.negset_of(u, ["y"], ["x", "y"]), spec)
        assert [v.kind for v in violations] == [WEAK_WITH_NECESSITY]

    def test_each_pair_reported_once(self):
        u = ns.make_universe(["a", "b", "c"])
        spec = ns.make_contradiction_spec(u, strong_pairs=[("a", "b"), ("a", "c")])
        bad = ns.negset_of(u, [], ["a", "b", "c"])
        assert len(ns.disc_violations(bad, spec)) == 2


def conflict_fixture():
    u = u2()
    spec = ns.make_contradiction_spec(
        u, strong_pairs=[("a", "b")], dominance_pairs=[("a", "b")]
    )
    a = ns.negset_of(u, ["a"], ["a"])
    b = ns.negset_of(u, ["b"], ["b"])
    return u, spec, a, b


class TestResolveOdot:
    def test_no_conflict_passes_through(self):
        u, spec, a, _ = conflict_fixture()
        outcome = ns.resolve_odot(a, a, spec, Strict())
        assert isinstance(outcome, Resolved)
        assert outcome.result == a
        assert not outcome.dropped

    def test_strict_fails(self):
        _, spec, a, b = conflict_fixture()
        outcome = ns.resolve_odot(a, b, spec, Strict())
        assert isinstance(outcome, Failed)
        assert outcome.pairs == (("a", "b"),)

    def test_dominance_resolves(self):
        # expected repaired value re-verified against the reference DISC check
        u, spec, a, b = conflict_fixture()
        outcome = ns.resolve_odot(a, b, spec, ObjectDominance())
        assert isinstance(outcome, Resolved)
        assert outcome.result == ns.negset_of(u, [], ["a"])
        assert outcome.dropped == frozenset({"b"})
        assert ref_is_disc(as_pair(outcome.result), [("a", "b")], [])
        assert ns.is_disc(outcome.result, spec)

    def test_dominance_unordered_pair_fails(self):
        u = u2()
        spec = ns.make_contradiction_spec(u, strong_pairs=[("a", "b")])
        a = ns.negset_of(u, ["a"], ["a"])
        b = ns.negset_of(u, ["b"], ["b"])
        outcome = ns.resolve_odot(a, b, spec, ObjectDominance())
        assert isinstance(outcome, Failed)
        assert "dominance" in outcome.reason

    def test_agent_priority_keeps_higher_ranked_choice(self):
        u = u2()
        spec = ns.make_contradiction_spec(u, strong_pairs=[("a", "b")])
        a = ns.negset_of(u, ["a"], ["a"])
        b = ns.negset_of(u, ["b"], ["b"])
        outcome = ns.resolve_odot(a, b, spec, AgentPriority(("A", "B")), ("A", "B"))
        assert isinstance(outcome, Resolved)
        assert outcome.result == ns.negset_of(u, [], ["a"])

    def test_agent_priority_without_names_is_ambiguous(self):
        u = u2()
        spec = ns.make_contradiction_spec(u, strong_pairs=[("a", "b")])
        a = ns.negset_of(u, ["a"], ["a"])
        b = ns.negset_of(u, ["b"], ["b"])
        outcome = ns.resolve_odot(a, b, spec, AgentPriority(("A", "B")), (None, "B"))
        assert isinstance(outcome, Failed)
        assert "ambiguous" in outcome.reason

    def test_agent_priority_unranked_agent_is_an_error(self):
        u = u2()
        spec = ns.make_contradiction_spec(u, strong_pairs=[("a", "b")])
        a = ns.negset_of(u, ["a"], ["a"])
        b = ns.negset_of(u, ["b"], ["b"])
        with pytest.raises(PolicyError):
            ns.resolve_odot(a, b, spec, AgentPriority(("A",)), ("A", "B"))

    def test_fewest_necessities_tie_fails(self):
        _, spec, a, b = conflict_fixture()
        outcome = ns.resolve_odot(a, b, spec, FewestNecessities())
        assert isinstance(outcome, Failed)
        assert "incomparable" in outcome.reason

    def test_fewest_necessities_resolves(self):
        u = ns.make_universe(["a", "b", "c"])
        spec = ns.make_contradiction_spec(u, strong_pairs=[("a", "b")])
        lean = ns.negset_of(u, [], ["a"])
        heavy = ns.negset_of(u, ["c"], ["b", "c"])
        outcome = ns.resolve_odot(lean, heavy, spec, FewestNecessities())
        assert isinstance(outcome, Resolved)
        # lean has fewer necessities, admits a, so b is dropped
        assert outcome.dropped == frozenset({"b"})
        assert ns.is_disc(outcome.result, spec)

    def test_non_disc_input_rejected(self):
        u, spec, a, _ = conflict_fixture()
        bad = ns.negset_of(u, [], ["a", "b"])
        with pytest.raises(InputNotDisc):
            ns.resolve_odot(bad, a, spec, Strict())

    def test_strict_never_modifies(self):
        u, spec, a, _ = conflict_fixture()
        good = ns.negset_of(u, [], ["a"])
        outcome = ns.resolve_odot(a, good, spec, Strict())
        assert outcome.ok and outcome.result == ns.odot(a, good)


@st.composite
def disc_setup(draw, max_size=4):
    n = draw(st.integers(2, max_size))
    u = ns.make_universe(list(LETTERS[:n]))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    labels = draw(st.lists(st.sampled_from(["none", "strong", "weak"]),
                           min_size=len(pairs), max_size=len(pairs)))
    strong = [(u.objects[i], u.objects[j])
              for (i, j), l in zip(pairs, labels) if l == "strong"]
    weak = [(u.objects[i], u.objects[j])
            for (i, j), l in zip(pairs, labels) if l == "weak"]
    spec = ns.make_contradiction_spec(u, strong, weak)

    def one():
        adm = draw(st.integers(0, u.full_mask))
        nec = draw(st.integers(0, u.full_mask)) & adm
        return ns.NegotiationSet(ns.FiniteSet(u, nec), ns.FiniteSet(u, adm))

    return u, spec, strong, weak, one(), one()


class TestDiscProperties:
    @given(disc_setup())
    def test_is_disc_matches_reference(self, data):
        _, spec, strong, weak, a, _ = data
        assert ns.is_disc(a, spec) == ref_is_disc(as_pair(a), strong, weak)

    @given(disc_setup())
    def test_oplus_closure(self, data):
        _, spec, _, _, a, b = data
        if ns.is_disc(a, spec) and ns.is_disc(b, spec):
            assert ns.is_disc(ns.oplus(a, b), spec)

    @given(disc_setup())
    def test_odot_never_weak_violates(self, data):
        _, spec, _, _, a, b = data
        if ns.is_disc(a, spec) and ns.is_disc(b, spec):
            violations = ns.disc_violations(ns.odot(a, b), spec)
            assert all(v.kind == STRONG_IN_ADMISSIBILITY for v in violations)

    @given(disc_setup())
    def test_conflict_locality(self, data):
        _, spec, _, _, a, b = data
        if ns.is_disc(a, spec) and ns.is_disc(b, spec):
            result = ns.odot(a, b)
            for v in ns.disc_violations(result, spec):
                if v.kind == STRONG_IN_ADMISSIBILITY:
                    x, y = v.pair
                    assert x not in result.necessity
                    assert y not in result.necessity


def random_disc_case(rng, max_size=6):
    n = rng.randint(2, max_size)
    u = ns.make_universe(list(LETTERS[:n]))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    strong, weak, dominance = [], [], []
    for i, j in pairs:
        label = rng.random()
        if label < 0.3:
            strong.append((u.objects[i], u.objects[j]))
            if rng.random() < 0.5:
                dominance.append((u.objects[i], u.objects[j]))
            else:
                dominance.append((u.objects[j], u.objects[i]))
        elif label < 0.45:
            weak.append((u.objects[i], u.objects[j]))
    try:
        spec = ns.make_contradiction_spec(u, strong, weak, dominance)
    except DominanceNotStrictOrder:
        return None

    def draw_disc():
        for _ in range(50):
            adm = rng.randrange(u.full_mask + 1)
            nec = rng.randrange(u.full_mask + 1) & adm
            cand = ns.NegotiationSet(ns.FiniteSet(u, nec), ns.FiniteSet(u, adm))
            if ns.is_disc(cand, spec):
                return cand
        return ns.special(u, ns.SpecialKind.EMPTY_N)

    return u, spec, draw_disc(), draw_disc()


@pytest.mark.parametrize("policy_maker", [
    lambda: Strict(),
    lambda: ObjectDominance(),
    lambda: AgentPriority(("A", "B")),
    lambda: FewestNecessities(),
])
def test_resolution_soundness_randomized(policy_maker):
    rng = random.Random(20240817)
    resolved = 0
    for _ in range(800):
        case = random_disc_case(rng)
        if case is None:
            continue
        _, spec, a, b = case
        outcome = ns.resolve_odot(a, b, spec, policy_maker(), ("A", "B"))
        if outcome.ok:
            resolved += 1
            raw = ns.odot(a, b)
            assert ns.is_disc(outcome.result, spec)
            assert outcome.result.necessity == raw.necessity
            dropped_mask = raw.universe.mask_of(outcome.dropped)
            assert outcome.result.admissibility.mask == raw.admissibility.mask & ~dropped_mask
    assert resolved > 0
