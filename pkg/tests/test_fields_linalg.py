from __future__ import annotations

from fractions import Fraction

import pytest

from cartan_strat.fields import FieldSpec, ModP, is_prime
from cartan_strat.linalg import Subspace, identity, matmul, nullspace, rank
from helpers import rng


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_modp_arithmetic():
    f = FieldSpec(7)
    x, y = f(3), f(5)
    assert x + y == f(1)
    assert x * y == f(1)
    assert x / y == f(2)
    assert -x == f(4)
    assert f(Fraction(1, 2)) * 2 == f.one
    assert not f(14)


def test_field_rejects_composite_and_bad_denominator():
    with pytest.raises(ValueError):
        FieldSpec(6)
    with pytest.raises(ZeroDivisionError):
        FieldSpec(3)(Fraction(1, 3))


def test_field_parse_round_trip():
    for text in ("QQ", "GF(2)", "GF(101)"):
        assert str(FieldSpec.parse(text)) == text
    with pytest.raises(ValueError):
        FieldSpec.parse("RR")


def test_modp_mixed_primes_rejected():
    with pytest.raises(ValueError):
        ModP(1, 3) + ModP(1, 5)


@pytest.mark.parametrize("p", [0, 2, 3, 7])
def test_rank_nullity(p):
    f = FieldSpec(p)
    r = rng(p)
    for _ in range(40):
        rows, cols = r.randint(1, 5), r.randint(1, 5)
        a = [[f(r.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
        ker = nullspace(f, a, cols)
        assert rank(f, a) + len(ker) == cols
        for v in ker:
            assert all(sum((a[i][j] * v[j] for j in range(cols)), f.zero) == 0 for i in range(rows))


def test_identity_is_neutral():
    f = FieldSpec(0)
    a = [[f(1), f(2)], [f(3), f(4)]]
    assert matmul(f, identity(f, 2), a) == a
    assert matmul(f, a, identity(f, 2)) == a


def test_subspace_membership_and_quotient():
    f = FieldSpec(0)
    s = Subspace(f, 3, [[f(1), f(1), f(0)]])
    assert s.dimension == 1
    assert [f(2), f(2), f(0)] in s
    assert [f(1), f(0), f(0)] not in s
    assert not s.add([f(3), f(3), f(0)])
    assert s.add([f(0), f(0), f(1)])
    assert s.dimension == 2
    assert len(s.complement_indices()) == 1
