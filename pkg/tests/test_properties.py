import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conlab.core import Carrier, ConsequenceOperator, PreconditionError, constant, identity
from conlab.generators import GeneratorSpec, gen_named, gen_random_monotone
from conlab.properties import (
    anti_reflexive_theorem_check,
    char_p_condition,
    charq_equivalents,
    check_anti_reflexive_global,
    check_internally_kappa,
    check_r_type,
    check_s_type,
    classify,
    finite_subset_bound,
    is_downward_q_closed,
    r_prop_checks,
    s1_witness,
)

tables3 = st.lists(st.integers(0, 7), min_size=8, max_size=8).map(
    lambda t: ConsequenceOperator(Carrier.of_size(3), tuple(t))
)


def named(family, **kw):
    return gen_named(GeneratorSpec(family, **kw))


def test_identity_has_everything():
    r = classify(identity(Carrier.of_size(3)))
    for flag in ("reflexive", "monotonic", "transitive", "tarski", "idempotent",
                 "quasi_closed", "q_type", "p_type", "cm_type", "wct_type"):
        assert getattr(r, flag), flag


def test_constant_empty():
    r = classify(constant(Carrier.of_size(3), 0))
    assert r.monotonic and r.quasi_closed and r.q_type
    assert not r.reflexive and r.anti_reflexive_global


def test_cm_witness_is_cm_not_monotonic():
    W, _, _ = named("cm-witness")
    r = classify(W)
    assert r.cm_type and not r.monotonic


@settings(max_examples=300)
@given(tables3)
def test_flags_match_literal_definitions(W):
    r = classify(W)
    assert r.reflexive == oracles.reflexive(W)
    assert r.monotonic == oracles.monotonic(W)
    assert r.transitive == oracles.transitive(W)
    assert r.quasi_closed == oracles.quasi_closed(W)
    assert r.cm_type == oracles.cautious_monotonic(W)
    assert r.wct_type == oracles.weakly_cumulative_transitive(W)
    assert r.tarski == (r.reflexive and r.monotonic and r.transitive)
    assert r.q_type == (r.monotonic and r.quasi_closed)
    assert r.p_type == (r.reflexive and r.monotonic)


@settings(max_examples=300)
@given(tables3)
def test_char_p_matches_p_type(W):
    assert char_p_condition(W) == oracles.char_p(W) == classify(W).p_type


@settings(max_examples=300)
@given(tables3)
def test_charq_literal_and_agreement(W):
    cq = charq_equivalents(W)
    assert cq.as_tuple() == oracles.charq_literal(W)
    assert cq.agree


def test_charq_exhaustive_n2():
    c = Carrier.of_size(2)
    for t in itertools.product(range(4), repeat=4):
        assert charq_equivalents(ConsequenceOperator(c, t)).agree


def test_charq_examples():
    c = Carrier.of_size(3)
    assert charq_equivalents(constant(c, 0)).as_tuple() == (True,) * 5
    assert charq_equivalents(identity(c)).as_tuple() == (True,) * 5
    W, _, _ = named("r-example", size=4, kappa=2)
    assert charq_equivalents(W).as_tuple() == (False,) * 5


def test_downward_q_closed():
    c = Carrier.of_size(3)
    assert all(is_downward_q_closed(identity(c), d) for d in c.subsets())
    W, _, _ = named("r-example", size=4, kappa=2)
    assert any(not is_downward_q_closed(W, d) for d in W.carrier.subsets())
    for d in W.carrier.subsets():
        assert is_downward_q_closed(W, d) == oracles.downward_q_closed(
            W, frozenset(k for k in range(4) if d >> k & 1))


def test_internally_kappa():
    assert check_internally_kappa({1}, 1)
    assert not check_internally_kappa({3}, 1)
    assert not check_internally_kappa(set(), 0)


def test_s_type_examples():
    W, K, k = named("swap")
    assert check_s_type(W, K, k)
    c = Carrier.of_size(3)
    assert check_s_type(constant(c, 0), {1, 6}, 1)
    rng = random.Random(0)
    for seed in range(20):
        P = gen_random_monotone(3, seed)
        P = ConsequenceOperator(c, tuple(w | g for g, w in enumerate(P.table)))
        K = {g for g in range(1, 8) if rng.random() < 0.5} or {1}
        assert not check_s_type(P, K, 1)


def test_r_type_examples():
    W, _, _ = named("r-example", size=4, kappa=2)
    assert check_r_type(W, 2)
    assert not check_r_type(identity(Carrier.of_size(3)), 2)


@settings(max_examples=300)
@given(tables3)
def test_no_r1_operator(W):
    assert not check_r_type(W, 1)


def test_anti_reflexive_global_and_theorem():
    c = Carrier.of_size(3)
    assert check_anti_reflexive_global(constant(c, 0))
    assert anti_reflexive_theorem_check(constant(c, 0)) is True
    assert not check_anti_reflexive_global(identity(c))
    W, K, k = named("pair-swap", size=4)
    assert not check_anti_reflexive_global(W)
    assert all(g & W(g) == 0 for g in K)


def test_anti_reflexive_theorem_on_monotone():
    for seed in range(200):
        W = gen_random_monotone(3, seed)
        assert anti_reflexive_theorem_check(W) is True


def test_finite_subset_bound():
    for seed in range(50):
        assert finite_subset_bound(gen_random_monotone(3, seed))
    assert not finite_subset_bound(ConsequenceOperator(Carrier.of_size(1), (1, 0)))
    c = Carrier.of_size(2)
    assert finite_subset_bound(constant(c, 3))


def test_s1_witness_for_non_reflexive_monotone():
    for seed in range(300):
        W = gen_random_monotone(3, seed)
        if classify(W).reflexive:
            continue
        a, K = s1_witness(W)
        assert check_s_type(W, K, 1)
    with pytest.raises(PreconditionError):
        s1_witness(identity(Carrier.of_size(2)))


def test_r_prop_examples():
    c = Carrier.of_size(3)
    assert r_prop_checks(constant(c, 0), {1, 2}, 1).as_tuple() == (True, True, True)
    W, K, k = named("swap")
    assert r_prop_checks(W, K, k).as_tuple() == (True, True, True)
    # no member of K has its complement in K: clause 2 holds vacuously
    W, K, k = named("pair-swap-fixed")
    assert r_prop_checks(W, K, k).disjoint_images
    with pytest.raises(PreconditionError):
        r_prop_checks(identity(c), {1}, 1)


def test_r_prop_holds_on_s_type_samples():
    rng = random.Random(5)
    checked = 0
    for seed in range(400):
        W = gen_random_monotone(3, seed)
        K = {g for g in range(1, 8) if g & W(g) == 0 and rng.random() < 0.7}
        if not K:
            continue
        kappa = min(bin(g).count("1") for g in K)
        if check_s_type(W, K, kappa):
            checked += 1
            assert all(r_prop_checks(W, K, kappa).as_tuple())
    assert checked > 20
