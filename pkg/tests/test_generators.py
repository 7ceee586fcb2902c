import pytest

from conlab.core import StructureError
from conlab.generators import (
    FAMILIES,
    GeneratorSpec,
    gen_named,
    gen_random_monotone,
    gen_random_typed,
    random_functional,
    random_operator,
    union_completion,
)
from conlab.properties import check_r_type, check_s_type, classify

import oracles


def advertised(family, W, K, kappa):
    r = classify(W)
    if family in ("swap", "pair-swap", "pair-swap-fixed", "partition-s"):
        return check_s_type(W, K, kappa)
    if family == "r-example":
        return check_r_type(W, kappa)
    return {
        "identity": r.tarski,
        "constant-empty": r.q_type and not r.reflexive,
        "constant-full": r.tarski,
        "cm-witness": r.cm_type and not r.monotonic,
        "wct-witness": r.wct_type and not r.monotonic,
        "random": True,
        "random-monotone": r.monotonic,
        "random-q": r.q_type,
        "random-p": r.p_type,
        "random-tarski": r.tarski,
    }[family]


def test_named_families_have_their_type():
    specs = [GeneratorSpec(f) for f in FAMILIES]
    specs += [GeneratorSpec("partition-s", size=n, lam=l) for n in (2, 4, 6) for l in range(1, n // 2 + 1)]
    specs += [GeneratorSpec("r-example", size=n, kappa=k, pivot=p)
              for n in (2, 3, 4, 5) for k in range(2, n + 1) for p in range(n)]
    for spec in specs:
        W, K, kappa = gen_named(spec)
        assert advertised(spec.family, W, K, kappa), spec


def test_random_families_thousand_samples():
    count = 0
    for fam in ("random-monotone", "random-q", "random-p", "random-tarski"):
        for seed in range(250):
            spec = GeneratorSpec(fam, size=2 + seed % 4, seed=seed)
            W, K, kappa = gen_named(spec)
            assert advertised(fam, W, K, kappa), spec
            count += 1
    assert count == 1000


def test_monotone_by_both_methods():
    for seed in range(3):
        assert classify(gen_random_monotone(4, seed, "semantics")).monotonic
        assert classify(gen_random_monotone(4, seed, "completion")).monotonic
    with pytest.raises(ValueError):
        gen_random_monotone(3, 0, "other")


def test_union_completion():
    for seed in range(50):
        W = random_operator(3, seed)
        M = union_completion(W)
        assert oracles.monotonic(M)
        assert union_completion(M) == M
        assert all(w & ~m == 0 for w, m in zip(W.table, M.table))


def test_determinism():
    for fam in FAMILIES:
        a = gen_named(GeneratorSpec(fam, seed=7))
        b = gen_named(GeneratorSpec(fam, seed=7))
        assert a[0] == b[0] and a[1] == b[1] and a[2] == b[2]
    assert random_operator(4, 1) != random_operator(4, 2)


def test_typed_samples_and_equal_designation():
    for seed in range(100):
        assert classify(gen_random_typed("q", 4, seed)).q_type
        assert classify(gen_random_typed("p", 4, seed)).p_type
        f = random_functional(4, seed, 3, {0, 1}, {0, 1})
        assert classify(f.induced_operator()).tarski
    with pytest.raises(ValueError):
        gen_random_typed("s", 3, 0)


def test_specific_examples():
    W, _, kappa = gen_named(GeneratorSpec("r-example", size=4, kappa=3))
    assert not check_r_type(W, 2)
    assert check_r_type(W, 3)
    W, K, lam = gen_named(GeneratorSpec("partition-s", size=6, lam=2))
    assert check_s_type(W, K, lam)
    W, _, _ = gen_named(GeneratorSpec("pair-swap"))
    assert not classify(W).q_type
    assert W.carrier.labels == ("1,1", "1,2", "2,1", "2,2")


def test_parameter_errors():
    for spec in (
        GeneratorSpec("pair-swap", size=5),
        GeneratorSpec("partition-s", size=3),
        GeneratorSpec("partition-s", size=4, lam=3),
        GeneratorSpec("r-example", size=3, kappa=4),
        GeneratorSpec("r-example", size=3, pivot=3),
        GeneratorSpec("nope"),
    ):
        with pytest.raises(StructureError):
            gen_named(spec)
