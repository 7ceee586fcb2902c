"""Finite versions of the standard example operators, plus seeded random
operators of each type.

Typed random operators are produced as operators induced by random
semantics of a shape that forces the type, so no rejection sampling is
needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .core import (
    Carrier,
    ConsequenceOperator,
    StructureError,
    constant,
    down_union,
    identity,
    popcount,
)
from .semantics import FunctionalSemantics

NAMED = (
    "identity",
    "constant-empty",
    "constant-full",
    "swap",
    "pair-swap",
    "pair-swap-fixed",
    "partition-s",
    "r-example",
    "cm-witness",
    "wct-witness",
)
RANDOM = ("random", "random-monotone", "random-q", "random-p", "random-tarski")
FAMILIES = NAMED + RANDOM


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    size: Optional[int] = None
    kappa: Optional[int] = None
    lam: Optional[int] = None
    pivot: int = 0
    seed: int = 0


def _image(carrier: Carrier, g: int, perm: list[int]) -> int:
    out = 0
    for k in range(carrier.n):
        if g >> k & 1:
            out |= 1 << perm[k]
    return out


def _permutation_operator(carrier: Carrier, perm: list[int]) -> ConsequenceOperator:
    return ConsequenceOperator.from_function(carrier, lambda g: _image(carrier, g, perm))


def pair_swap(side: int) -> tuple[ConsequenceOperator, frozenset, int]:
    """Grid {1..side}^2 with W the transpose; K is every nonempty set of
    cells (2t+1, 2t+2) lying in the grid."""
    if side < 2:
        raise StructureError("pair-swap needs a grid of side at least 2")
    cells = [(i, j) for i in range(1, side + 1) for j in range(1, side + 1)]
    carrier = Carrier(tuple(f"{i},{j}" for i, j in cells))
    pos = {cell: k for k, cell in enumerate(cells)}
    perm = [pos[(j, i)] for i, j in cells]
    phi = 0
    for t in range(side // 2):
        phi |= 1 << pos[(2 * t + 1, 2 * t + 2)]
    K = frozenset(g for g in range(1, phi + 1) if g & ~phi == 0)
    return _permutation_operator(carrier, perm), K, 1


def partition_s(n: int, lam: int) -> tuple[ConsequenceOperator, frozenset, int]:
    """X = first half, Y = second half, f swaps x_i and y_i; W(G) = f(G)
    when |G| >= lam, else empty.  K holds the sets of size at least lam
    inside X or inside Y."""
    if n < 2 or n % 2:
        raise StructureError("partition-s needs an even carrier size of at least 2")
    half = n // 2
    if not 1 <= lam <= half:
        raise StructureError(f"partition-s needs 1 <= lambda <= {half}")
    carrier = Carrier.of_size(n)
    perm = [(k + half) % n for k in range(n)]
    W = ConsequenceOperator.from_function(
        carrier, lambda g: _image(carrier, g, perm) if popcount(g) >= lam else 0
    )
    x_mask = (1 << half) - 1
    y_mask = x_mask << half
    K = frozenset(
        g for g in carrier.subsets()
        if popcount(g) >= lam and (g & ~x_mask == 0 or g & ~y_mask == 0)
    )
    return W, K, lam


def r_example(n: int, kappa: int, pivot: int = 0) -> ConsequenceOperator:
    """W(G) = {pivot} when |G| < kappa, else G together with the pivot."""
    if not 2 <= kappa <= n:
        raise StructureError("r-example needs 2 <= kappa <= n")
    if not 0 <= pivot < n:
        raise StructureError("pivot outside the carrier")
    carrier = Carrier.of_size(n)
    p = 1 << pivot
    return ConsequenceOperator.from_function(
        carrier, lambda g: p if popcount(g) < kappa else g | p
    )


def _two(table: list[int]) -> ConsequenceOperator:
    return ConsequenceOperator(Carrier.of_size(2), tuple(table))


def gen_named(spec: GeneratorSpec) -> tuple[ConsequenceOperator, Optional[frozenset], Optional[int]]:
    """The operator of a family, its family K and kappa where the family has them."""
    fam = spec.family
    n = spec.size
    if fam == "identity":
        return identity(Carrier.of_size(3 if n is None else n)), None, None
    if fam == "constant-empty":
        return constant(Carrier.of_size(3 if n is None else n), 0), None, None
    if fam == "constant-full":
        c = Carrier.of_size(3 if n is None else n)
        return constant(c, c.full), None, None
    if fam == "swap":
        c = Carrier(("p", "q"))
        return _permutation_operator(c, [1, 0]), frozenset({1}), 1
    if fam == "pair-swap-fixed":
        c = Carrier(("p", "q", "r"))
        return _permutation_operator(c, [1, 0, 2]), frozenset({1}), 1
    if fam == "pair-swap":
        n = 4 if n is None else n
        side = int(round(n ** 0.5))
        if side * side != n:
            raise StructureError("pair-swap needs a square carrier size")
        return pair_swap(side)
    if fam == "partition-s":
        n = 4 if n is None else n
        return partition_s(n, 1 if spec.lam is None else spec.lam)
    if fam == "r-example":
        n = 4 if n is None else n
        kappa = 2 if spec.kappa is None else spec.kappa
        return r_example(n, kappa, spec.pivot), None, kappa
    if fam == "cm-witness":
        return _two([0b01, 0b01, 0b00, 0b00]), None, None
    if fam == "wct-witness":
        return _two([0b01, 0b01, 0b11, 0b01]), None, None
    if fam in RANDOM:
        n = 4 if n is None else n
        if fam == "random":
            return random_operator(n, spec.seed), None, None
        if fam == "random-monotone":
            return gen_random_monotone(n, spec.seed), None, None
        if fam == "random-tarski":
            return random_tarski(n, spec.seed), None, None
        return gen_random_typed(fam[len("random-"):], n, spec.seed), None, None
    raise StructureError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")


def random_operator(n: int, seed: int) -> ConsequenceOperator:
    rng = random.Random(seed)
    carrier = Carrier.of_size(n)
    return ConsequenceOperator(carrier, tuple(rng.randrange(carrier.size) for _ in carrier.subsets()))


def union_completion(W: ConsequenceOperator) -> ConsequenceOperator:
    """The least monotonic operator above W: G goes to the union of W below G."""
    return ConsequenceOperator(W.carrier, tuple(down_union(W)))


def random_functional(n: int, seed: int, value_count: int = 3, d1=None, d2=None,
                      model_count: Optional[int] = None) -> FunctionalSemantics:
    """Random valuations; designated sets drawn at random unless given."""
    rng = random.Random(seed)
    carrier = Carrier.of_size(n)
    if d1 is None or d2 is None:
        while True:
            d1 = frozenset(v for v in range(value_count) if rng.random() < 0.5)
            d2 = frozenset(v for v in range(value_count) if rng.random() < 0.5)
            if d1 and d2 and len(d1 | d2) < value_count:
                break
    count = rng.randint(1, 2 * n + 2) if model_count is None else model_count
    models = tuple(tuple(rng.randrange(value_count) for _ in range(n)) for _ in range(count))
    return FunctionalSemantics(carrier, value_count, models, {1: frozenset(d1), 2: frozenset(d2)})


def gen_random_monotone(n: int, seed: int, method: str = "completion") -> ConsequenceOperator:
    if method == "completion":
        return union_completion(random_operator(n, seed))
    if method == "semantics":
        return random_functional(n, seed).induced_operator()
    raise ValueError(f"unknown method {method!r}")


def gen_random_typed(kind: str, n: int, seed: int, value_count: int = 3) -> ConsequenceOperator:
    """Induced operator of a random functional semantics whose designated
    sets nest: D2 inside D1 gives a q-type operator, D1 inside D2 a p-type one."""
    if kind not in ("q", "p"):
        raise ValueError("kind must be 'q' or 'p'")
    rng = random.Random(seed)
    values = list(range(value_count))
    rng.shuffle(values)
    # a nonempty chain small inside large, leaving at least one value out
    size_large = rng.randint(1, value_count - 1)
    large = frozenset(values[:size_large])
    small = frozenset(values[: rng.randint(1, size_large)])
    d1, d2 = (large, small) if kind == "q" else (small, large)
    return random_functional(n, rng.randrange(2**32), value_count, d1, d2).induced_operator()


def random_tarski(n: int, seed: int) -> ConsequenceOperator:
    """Closure operator of a random family of closed sets (L always closed)."""
    rng = random.Random(seed)
    carrier = Carrier.of_size(n)
    closed = [g for g in carrier.subsets() if rng.random() < 0.3] + [carrier.full]
    table = []
    for g in carrier.subsets():
        out = carrier.full
        for c in closed:
            if g & ~c == 0:
                out &= c
        table.append(out)
    return ConsequenceOperator(carrier, tuple(table))


def random_normal_ssemantics(n: int, seed: int, pair_count: Optional[int] = None):
    """Normal S-semantics with random bivaluation pairs."""
    from .suszko import SSemantics

    rng = random.Random(seed)
    carrier = Carrier.of_size(n)
    count = rng.randint(0, 2 * carrier.size) if pair_count is None else pair_count
    pairs = {(rng.randrange(carrier.size), rng.randrange(carrier.size)) for _ in range(count)}
    return SSemantics.normal(carrier, pairs)
