from __future__ import annotations

import pytest

from cartan_strat.fields import FieldSpec
from cartan_strat.golden import load_algebra, load_presentation
from cartan_strat.presentation import AlgebraPresentation, parse_presentation
from cartan_strat.quiver import PathWord, Quiver
from cartan_strat.rewriting import (
    Inconclusive,
    NotAdmissible,
    NotFiniteDimensionalWithinCap,
    SegmentViolation,
    build_algebra,
    cartan_matrix,
    complete_rewrite_system,
    corner_algebra,
    multiply,
)
from helpers import (
    oracle_block_dims,
    random_binomial_presentation,
    random_monomial_presentation,
    random_rad2_presentation,
    rng,
)


def _rules(rs):
    return sorted(str(r) for r in rs.rules)


def test_ej1_completion():
    rs = complete_rewrite_system(load_presentation("ej1"))
    assert _rules(rs) == ["b.a.b -> 0"]
    assert rs.certificate.max_normal_length == 3
    assert rs.certificate.processed_degree >= 2 * (rs.certificate.max_normal_length + 1)


def test_ej2_completion():
    rs = complete_rewrite_system(load_presentation("ej2"))
    assert _rules(rs) == ["a.a -> 0", "d.e -> b.g"]
    assert rs.certificate.max_normal_length == 3


def test_polynomial_ring_is_rejected():
    p = parse_presentation("arrows x:1->1")
    with pytest.raises(NotFiniteDimensionalWithinCap) as info:
        complete_rewrite_system(p, degree_cap=8)
    assert info.value.degree == 8


def test_idempotent_quotient_is_not_admissible():
    p = parse_presentation("arrows x:1->1; relations: x.x - x.x.x")
    with pytest.raises(NotAdmissible):
        build_algebra(p)


def test_degree_cap_validated():
    with pytest.raises(ValueError):
        complete_rewrite_system(load_presentation("ej1"), degree_cap=1)


def test_inconclusive_when_leading_word_exceeds_cap():
    p = parse_presentation("arrows x:1->1; relations: x.x.x.x.x")
    with pytest.raises(Inconclusive):
        complete_rewrite_system(p, degree_cap=4)


def test_ej1_basis():
    b = load_algebra("ej1")
    assert [str(p) for p in b.paths_from("1")] == ["e_1", "a", "a.b", "a.b.a"]
    assert [str(p) for p in b.paths_from("2")] == ["e_2", "b", "b.a"]
    assert b.total_dimension == 7


def test_single_vertex_basis():
    b = build_algebra(AlgebraPresentation(Quiver(("1",))))
    assert [str(p) for p in b.paths] == ["e_1"]
    assert cartan_matrix(b) == [[1]]


def test_ej5_basis():
    b = load_algebra("ej5")
    assert sorted(str(p) for p in b.paths) == ["a", "b", "e_1", "e_2"]
    assert b.dims_of_projective("1") == {"1": 1, "2": 1}
    assert b.dims_of_projective("2") == {"1": 0, "2": 2}


def test_cartan_examples():
    assert cartan_matrix(load_algebra("ej1")) == [[2, 1], [2, 2]]
    assert cartan_matrix(load_algebra("ej2")) == [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [2, 2, 2, 2]]
    assert cartan_matrix(load_algebra("ej3"))[3] == [4, 2, 2, 2]


def _element(b, *names_and_vertex):
    words = {str(p): p for p in b.paths}
    return b.coordinates([(b.field.one, words[n]) for n in names_and_vertex])


def test_multiply_examples():
    b = load_algebra("ej1")
    assert multiply(b, _element(b, "a"), _element(b, "b")) == _element(b, "a.b")
    assert not any(multiply(b, _element(b, "b.a"), _element(b, "b")))
    for v in ("1", "2"):
        e = _element(b, f"e_{v}")
        assert multiply(b, e, e) == e
    assert not any(multiply(b, _element(b, "e_1"), _element(b, "e_2")))


def test_multiply_ej2_commutativity_relation():
    b = load_algebra("ej2")
    assert multiply(b, _element(b, "d"), _element(b, "e")) == _element(b, "b.g")


def test_corner_examples():
    b = load_algebra("ej2")
    # P(2), P(3), P(4) restricted to {2,3,4}: 3 + 3 + 2 basis paths
    c = corner_algebra(b, ["2", "3", "4"])
    assert c.total_dimension == 8
    assert sorted(str(p) for p in c.paths) == ["a", "e", "e.a", "e_2", "e_3", "e_4", "g", "g.a"]
    assert corner_algebra(b, b.quiver.vertices) is b
    one = corner_algebra(b, ["1"])
    assert [str(p) for p in one.paths] == ["e_1"]


def test_corner_segment_violation():
    b = load_algebra("ej2")
    with pytest.raises(SegmentViolation):
        corner_algebra(b, ["1", "4"])


def test_basis_matches_linear_algebra_oracle():
    r = rng(21)
    for _ in range(120):
        field = FieldSpec(r.choice([0, 5, 7]))
        p, k = random_binomial_presentation(r, field)
        b = build_algebra(p)
        expected = oracle_block_dims(p, k)
        vs = p.quiver.vertices
        assert {(i, j): len(b.normal_forms(i, j)) for i in vs for j in vs} == expected


def test_monomial_basis_matches_oracle():
    r = rng(22)
    for _ in range(80):
        p = random_monomial_presentation(r, max_vertices=4)
        b = build_algebra(p)
        k = b.rewrite_system.certificate.max_normal_length + 1
        # any relation longer than k is already zero, so truncating at k is exact
        assert {(i, j): len(b.normal_forms(i, j)) for i in p.quiver.vertices for j in p.quiver.vertices} == (
            oracle_block_dims(p, k)
        )


def test_column_sums_are_projective_dimensions():
    r = rng(23)
    for _ in range(60):
        b = build_algebra(random_monomial_presentation(r))
        c = cartan_matrix(b)
        for j, v in enumerate(b.quiver.vertices):
            assert sum(row[j] for row in c) == sum(b.dims_of_projective(v).values())
        assert sum(map(sum, c)) == b.total_dimension


def test_radical_square_zero_cartan_is_identity_plus_adjacency():
    r = rng(24)
    for _ in range(60):
        p = random_rad2_presentation(r, allow_cycles=True)
        b = build_algebra(p)
        q = p.quiver
        expected = [
            [int(i == j) + sum(1 for a in q.arrows if a.source == j and a.target == i) for j in q.vertices]
            for i in q.vertices
        ]
        assert cartan_matrix(b) == expected


def test_relations_reduce_to_zero():
    r = rng(25)
    for _ in range(60):
        field = FieldSpec(r.choice([0, 7]))
        p, _ = random_binomial_presentation(r, field)
        rs = build_algebra(p).rewrite_system
        for rel in p.all_relations():
            total = {}
            for c, w in rel.terms:
                for tc, nw in rs.normal_form(w):
                    total[nw] = total.get(nw, field.zero) + c * tc
            assert not any(total.values())


def test_multiplication_is_associative():
    r = rng(26)
    for _ in range(25):
        field = FieldSpec(r.choice([0, 5]))
        p, _ = random_binomial_presentation(r, field)
        b = build_algebra(p)
        n = len(b.paths)
        for _ in range(4):
            x, y, z = ([field(r.randint(-2, 2)) for _ in range(n)] for _ in range(3))
            assert multiply(b, multiply(b, x, y), z) == multiply(b, x, multiply(b, y, z))


def test_normal_forms_are_normal():
    b = load_algebra("ej3")
    rs = b.rewrite_system
    for p in b.paths:
        assert rs.normal_form(p) == [(b.field.one, p)]
    assert rs.normal_form(PathWord("4", "4", ("a", "a"))) == []
