import random

import pytest
from hypothesis import given, strategies as st

from conlab.core import (
    Carrier,
    ConsequenceOperator,
    StructureError,
    constant,
    identity,
    operator_from_relation,
    operators_equal,
    power,
    relation_from_operator,
    submasks,
    w_infinity,
)


def swap2():
    return ConsequenceOperator(Carrier(("p", "q")), (0, 2, 1, 3))


def random_table(n, rng):
    c = Carrier.of_size(n)
    return ConsequenceOperator(c, tuple(rng.randrange(c.size) for _ in c.subsets()))


def test_carrier_rejects_duplicates_and_oversize():
    with pytest.raises(StructureError):
        Carrier(("a", "a"))
    with pytest.raises(StructureError):
        Carrier.of_size(17)
    assert Carrier.of_size(16).n == 16


def test_table_validation():
    c = Carrier.of_size(2)
    with pytest.raises(StructureError):
        ConsequenceOperator(c, (0, 0, 0))
    with pytest.raises(StructureError):
        ConsequenceOperator(c, (0, 0, 0, 4))


def test_relation_direct_readings():
    c = Carrier(("a",))
    W = operator_from_relation({(1, 0)}, c)
    assert W.table == (0, 1)
    assert operator_from_relation(set(), Carrier.of_size(2)).table == (0, 0, 0, 0)
    with pytest.raises(StructureError):
        operator_from_relation({(0, 3)}, c)


def test_relation_of_identity_and_full():
    c = Carrier.of_size(2)
    assert relation_from_operator(identity(c)) == {(1, 0), (2, 1), (3, 0), (3, 1)}
    full = constant(c, 3)
    assert relation_from_operator(full) == {(g, a) for g in range(4) for a in range(2)}


def test_round_trip_random_n3():
    rng = random.Random(3)
    for _ in range(50):
        W = random_table(3, rng)
        rel = relation_from_operator(W)
        assert operators_equal(operator_from_relation(rel, W.carrier), W)
        assert relation_from_operator(operator_from_relation(rel, W.carrier)) == rel


def test_power_and_infinity():
    S = swap2()
    assert power(S, 1, 0) == 1
    assert power(S, 1, 2) == 1
    assert power(S, 1, 1) == 2
    assert w_infinity(S, 1) == 3
    c = Carrier.of_size(3)
    assert all(w_infinity(identity(c), g) == g for g in c.subsets())
    empty = constant(c, 0)
    assert power(empty, 5, 3) == 0
    assert all(w_infinity(empty, g) == g for g in c.subsets())
    with pytest.raises(ValueError):
        power(S, 1, -1)


@given(st.lists(st.integers(0, 7), min_size=8, max_size=8), st.integers(0, 7), st.integers(0, 20))
def test_power_step_and_infinity_bound(table, g, i):
    W = ConsequenceOperator(Carrier.of_size(3), tuple(table))
    assert power(W, g, i + 1) == W(power(W, g, i))
    inf = w_infinity(W, g)
    assert g & ~inf == 0
    assert power(W, g, i) & ~inf == 0


def test_operators_equal():
    c = Carrier.of_size(2)
    assert operators_equal(identity(c), identity(c))
    assert not operators_equal(identity(c), constant(c, 0))
    with pytest.raises(StructureError):
        operators_equal(identity(c), identity(Carrier.of_size(3)))


def test_submasks_complete():
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]
