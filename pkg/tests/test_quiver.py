from __future__ import annotations

import itertools
import math

import pytest

from cartan_strat.quiver import (
    LinearOrder,
    NotAPosetError,
    PathWord,
    ProperCycleError,
    Quiver,
    QuiverError,
    is_refinement,
    linear_refinements,
    loop_count,
    on_oriented_cycle,
    proper_cycle_exists,
    quasi_sources,
    reaches,
    synthesize_weak_triangular_order,
)
from helpers import random_quiver, rng

SQUARE = Quiver.build([1, 2, 3, 4], [("b", 1, 2), ("g", 2, 4), ("d", 1, 3), ("e", 3, 4), ("a", 4, 4)])


def test_build_stringifies_and_validates():
    assert SQUARE.vertices == ("1", "2", "3", "4")
    with pytest.raises(QuiverError):
        Quiver.build([1], [("a", 1, 2)])
    with pytest.raises(QuiverError):
        Quiver.build([1, 1], [])
    with pytest.raises(QuiverError):
        Quiver.build([1, 2], [("a", 1, 2), ("a", 2, 1)])


def test_path_composition():
    p = PathWord.from_arrows(SQUARE, ["b", "g", "a"])
    assert (p.source, p.target, p.length) == ("1", "4", 3)
    assert str(p) == "b.g.a"
    assert str(PathWord.stationary("2")) == "e_2"
    with pytest.raises(QuiverError):
        PathWord.from_arrows(SQUARE, ["b", "e"])


def test_square_structure():
    assert quasi_sources(SQUARE) == ["1"]
    assert loop_count(SQUARE, "4") == 1
    assert not proper_cycle_exists(SQUARE)
    assert on_oriented_cycle(SQUARE, "4") and not on_oriented_cycle(SQUARE, "1")
    assert reaches(SQUARE, "1", "4") and not reaches(SQUARE, "4", "1")
    assert SQUARE.sinks() == []


def test_refinements_of_square():
    refs = linear_refinements(SQUARE)
    assert [str(o) for o in refs] == ["1<2<3<4", "1<3<2<4"]
    assert not refs.truncated
    assert linear_refinements(SQUARE, limit=1).truncated


def test_proper_cycle_blocks_orders():
    q = Quiver.build([1, 2], [("a", 1, 2), ("b", 2, 1)])
    assert proper_cycle_exists(q)
    with pytest.raises(NotAPosetError):
        linear_refinements(q)
    with pytest.raises(ProperCycleError):
        synthesize_weak_triangular_order(q)


def test_order_parse_and_cover():
    o = LinearOrder.parse("2 < 1")
    assert o.vertices == ("2", "1") and o.rank("1") == 2
    assert o.above("2") == ["1"]
    with pytest.raises(QuiverError):
        LinearOrder.parse("1<<2")
    with pytest.raises(QuiverError):
        LinearOrder.parse("1<1")
    with pytest.raises(QuiverError):
        o.check_covers(SQUARE)


def test_refinement_enumeration_matches_permutations():
    r = rng(11)
    for _ in range(60):
        q = random_quiver(r, r.randint(1, 5), r.randint(0, 6), acyclic=True)
        expected = [LinearOrder(p) for p in itertools.permutations(q.vertices) if is_refinement(q, LinearOrder(p))]
        got = linear_refinements(q, limit=math.factorial(5))
        assert sorted(map(str, got)) == sorted(map(str, expected))
        synth = synthesize_weak_triangular_order(q)
        assert is_refinement(q, synth)
        for a in q.arrows:
            assert a.is_loop or synth.rank(a.source) < synth.rank(a.target)
