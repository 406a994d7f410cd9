import random

import pytest

from assigncoh import PosetMap, StratSpace, Subalgebra, chains, minimal_strata, poset_morphism_check
from assigncoh.errors import CycleError, StabilizerMonotonicityError, UnknownIdError
from oracles import brute_tuples
from spaces import cp2, two_stratum


def test_two_stratum_space_valid():
    space, _ = two_stratum()
    assert space.ids == ("open", "pt")
    assert space.leq("pt", "open")
    assert not space.leq("open", "pt")
    assert space.stabilizer("pt").dim == 1
    assert space.stabilizer("open").dim == 0


def test_cycle_rejected():
    strata = {"a": Subalgebra.full(1), "b": Subalgebra.zero(1)}
    with pytest.raises(CycleError):
        StratSpace.from_covers(1, strata, [("a", "b"), ("b", "a")])


def test_stabilizer_growth_rejected():
    # open below fixed: stabilizer would grow along the cover
    strata = {"a": Subalgebra.zero(1), "b": Subalgebra.full(1)}
    with pytest.raises(StabilizerMonotonicityError) as exc:
        StratSpace.from_covers(1, strata, [("a", "b")])
    assert exc.value.pair == ("a", "b")


def test_equal_stabilizer_cover_rejected():
    strata = {"a": Subalgebra.full(1), "b": Subalgebra.full(1)}
    with pytest.raises(StabilizerMonotonicityError):
        StratSpace.from_covers(1, strata, [("a", "b")])


def test_unknown_cover_endpoint():
    with pytest.raises(UnknownIdError):
        StratSpace.from_covers(1, {"a": Subalgebra.full(1)}, [("a", "ghost")])


def test_chains_cp2_strict_degree_one():
    space, _ = cp2()
    got = chains(space, 1, strict=True)
    assert len(got) == 12
    assert got == brute_tuples(space.ids, space.leq, 1, strict=True)


def test_chains_degree_zero():
    space, _ = cp2()
    assert chains(space, 0, strict=True) == [(x,) for x in sorted(space.ids)]


def test_chains_single_stratum():
    space = StratSpace.from_covers(1, {"x": Subalgebra.zero(1)}, [])
    assert chains(space, 1, strict=True) == []
    assert chains(space, 1, strict=False) == [("x", "x")]


def test_chains_match_brute_force_non_strict():
    space, _ = cp2()
    for k in (1, 2):
        assert chains(space, k, strict=False) == brute_tuples(
            space.ids, space.leq, k, strict=False
        )


def test_strict_chains_vanish_beyond_stratum_count():
    space, _ = two_stratum()
    for k in range(2, 5):
        assert chains(space, k, strict=True) == []


def test_minimal_strata():
    space, _ = cp2()
    assert minimal_strata(space) == ("p1", "p2", "p3")
    discrete = StratSpace.from_covers(
        1, {"a": Subalgebra.zero(1), "b": Subalgebra.zero(1)}, []
    )
    assert minimal_strata(discrete) == ("a", "b")


def test_morphism_identity_ok():
    space, _ = cp2()
    rep = poset_morphism_check({x: x for x in space.ids}, space, space)
    assert rep.ok
    assert rep.monotonicity_violations == ()
    assert rep.stabilizer_violations == ()


def test_morphism_collapse_to_minimum():
    space, _ = two_stratum()
    # everything to the unique minimum: monotone, and stab(x) <= stab(pt) holds
    rep = poset_morphism_check({x: "pt" for x in space.ids}, space, space)
    assert rep.ok


def test_morphism_violations_reported():
    space, _ = cp2()
    f = {x: x for x in space.ids}
    f["p1"] = "open"   # sends a vertex above its own edge's image
    f["e12"] = "p2"
    rep = poset_morphism_check(f, space, space)
    assert not rep.ok
    assert ("p1", "e12") in rep.monotonicity_violations
    assert "p1" in rep.stabilizer_violations


def test_morphism_requires_total_map():
    space, _ = cp2()
    with pytest.raises(UnknownIdError):
        poset_morphism_check({"p1": "p1"}, space, space)


def test_posetmap_call():
    space, _ = cp2()
    f = PosetMap(space, space, {x: x for x in space.ids})
    assert f("p1") == "p1"


def test_subalgebra_saturation():
    # index-two sublattice spans the same rational line
    assert Subalgebra.span(1, [[2]]) == Subalgebra.span(1, [[1]])
    assert Subalgebra.span(2, [[2, 4]]) == Subalgebra.span(2, [[1, 2]])


def test_subalgebra_canonical_under_unimodular_mixes():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.randint(1, 4)
        k = rng.randint(1, n)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(k)]
        base = Subalgebra.span(n, rows)
        mixed = [list(r) for r in rows]
        for _ in range(6):
            i, j = rng.randrange(k), rng.randrange(k)
            if i != j:
                c = rng.randint(-3, 3)
                mixed[i] = [a + c * b for a, b in zip(mixed[i], mixed[j])]
            elif rng.random() < 0.5:
                mixed[i] = [-a for a in mixed[i]]
        assert Subalgebra.span(n, mixed) == base


def test_subalgebra_contains():
    h = Subalgebra.span(2, [[1, 1]])
    assert h.contains_vector([2, 2])
    assert not h.contains_vector([1, 0])
    assert Subalgebra.full(2).contains_vector([7, -3])
    assert not Subalgebra.zero(2).contains_vector([1, 0])
    assert Subalgebra.zero(2).contains_vector([0, 0])
    assert h.contains(Subalgebra.zero(2))
    assert Subalgebra.full(2).contains(h)
    assert not h.contains(Subalgebra.full(2))
