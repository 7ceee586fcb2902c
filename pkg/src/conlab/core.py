"""Finite carriers, bitmask subsets and consequence operators as total tables.

A subset of a carrier with ``n`` elements is an ``int`` whose bit ``k`` is set
when the element at position ``k`` belongs to it.  A consequence operator is
the full table of its values on all ``2**n`` subsets, so every property in
this package can be decided by plain enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

MAX_CARRIER = 16


class ConlabError(Exception):
    """Base class for errors raised by this package."""


class StructureError(ConlabError, ValueError):
    """Malformed input: bad labels, out-of-range bits, incomplete tables."""


class PreconditionError(ConlabError):
    """An operation was applied to an operator of the wrong type."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Positions of the set bits, in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class Carrier:
    labels: tuple[str, ...]
    cap: int = field(default=MAX_CARRIER, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise StructureError(f"duplicate carrier labels in {list(self.labels)}")
        if len(self.labels) > self.cap:
            raise StructureError(
                f"carrier has {len(self.labels)} elements, cap is {self.cap}"
            )

    @classmethod
    def of_size(cls, n: int) -> "Carrier":
        """Carrier labelled a, b, c, ..."""
        names = [chr(ord("a") + k) if k < 26 else f"e{k}" for k in range(n)]
        return cls(tuple(names))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        """Number of subsets, 2**n."""
        return 1 << self.n

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"unknown label {label!r}") from None

    def subset(self, labels: Iterable[str]) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return mask

    def names(self, mask: int) -> list[str]:
        self.check(mask)
        return [self.labels[k] for k in bits(mask)]

    def check(self, mask: int) -> int:
        if not isinstance(mask, int) or mask < 0 or mask >> self.n:
            raise StructureError(f"{mask!r} is not a subset of a {self.n}-element carrier")
        return mask

    def subsets(self) -> range:
        return range(self.size)

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"


@dataclass(frozen=True)
class ConsequenceOperator:
    """The pair (L, W) with W stored as a tuple indexed by subset bitmask."""

    carrier: Carrier
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.carrier.size:
            raise StructureError(
                f"table has {len(table)} entries, expected {self.carrier.size}"
            )
        for g, out in enumerate(table):
            if not isinstance(out, int) or out < 0 or out >> self.carrier.n:
                raise StructureError(f"entry for subset {g} is not a valid subset: {out!r}")

    def __call__(self, g: int) -> int:
        return self.table[g]

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def full(self) -> int:
        return self.carrier.full

    @classmethod
    def from_function(cls, carrier: Carrier, fn: Callable[[int], int]) -> "ConsequenceOperator":
        return cls(carrier, tuple(fn(g) for g in carrier.subsets()))

    def describe(self) -> str:
        c = self.carrier
        return ", ".join(f"{c.format(g)}->{c.format(w)}" for g, w in enumerate(self.table))


def identity(carrier: Carrier) -> ConsequenceOperator:
    return ConsequenceOperator(carrier, tuple(carrier.subsets()))


def constant(carrier: Carrier, value: int) -> ConsequenceOperator:
    carrier.check(value)
    return ConsequenceOperator(carrier, (value,) * carrier.size)


# An entailment relation is a frozenset of (premise bitmask, element index).
EntailmentRelation = frozenset


def operator_from_relation(rel: Iterable[tuple[int, int]], carrier: Carrier) -> ConsequenceOperator:
    table = [0] * carrier.size
    for gamma, alpha in rel:
        carrier.check(gamma)
        if not 0 <= alpha < carrier.n:
            raise StructureError(f"element index {alpha} out of range for n={carrier.n}")
        table[gamma] |= 1 << alpha
    return ConsequenceOperator(carrier, tuple(table))


def relation_from_operator(W: ConsequenceOperator) -> frozenset[tuple[int, int]]:
    return frozenset((g, a) for g, out in enumerate(W.table) for a in bits(out))


def power(W: ConsequenceOperator, g: int, i: int) -> int:
    """W applied ``i`` times to ``g``; power(W, g, 0) == g."""
    if i < 0:
        raise ValueError("iteration count must be nonnegative")
    W.carrier.check(g)
    seen: dict[int, int] = {}
    step = 0
    while step < i:
        # iterates are eventually periodic, so long runs can be cut short
        if g in seen:
            period = step - seen[g]
            remaining = (i - step) % period
            for _ in range(remaining):
                g = W(g)
            return g
        seen[g] = step
        g = W(g)
        step += 1
    return g


def w_infinity(W: ConsequenceOperator, g: int) -> int:
    """Union of all iterates W^i(g), i >= 0, stopping once an iterate repeats."""
    W.carrier.check(g)
    seen: set[int] = set()
    acc = 0
    while g not in seen:
        seen.add(g)
        acc |= g
        g = W(g)
    return acc


def operators_equal(W1: ConsequenceOperator, W2: ConsequenceOperator) -> bool:
    if W1.carrier != W2.carrier:
        raise StructureError("operators live on different carriers")
    return W1.table == W2.table


def compose(W1: ConsequenceOperator, W2: ConsequenceOperator) -> ConsequenceOperator:
    """The operator g -> W1(W2(g))."""
    if W1.carrier != W2.carrier:
        raise StructureError("operators live on different carriers")
    return ConsequenceOperator(W1.carrier, tuple(W1(w) for w in W2.table))


def down_union(W: ConsequenceOperator) -> list[int]:
    """For every g, the union of W(h) over all h subset of g (a subset-sum transform)."""
    acc = list(W.table)
    for k in range(W.n):
        bit = 1 << k
        for g in range(W.carrier.size):
            if g & bit:
                acc[g] |= acc[g ^ bit]
    return acc
