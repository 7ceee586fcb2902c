"""Explicit functional semantics for monotone, q-, p- and s-type operators,
exhaustive adequacy checks, and the hypotheses of the converse directions
as checkable predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .core import (
    ConsequenceOperator,
    PreconditionError,
    StructureError,
    bits,
    popcount,
)
from .properties import check_s_type, classify
from .semantics import (
    FunctionalSemantics,
    GenericSemantics,
    functional_to_generic,
    granularity,
    induced_operator,
)

MISSING = "missing"  # alpha in W(G) but not entailed by the semantics
EXTRA = "extra"  # entailed by the semantics but alpha not in W(G)


@dataclass(frozen=True)
class AdequacyVerdict:
    discrepancies: tuple = ()
    restricted: Optional[bool] = None

    @property
    def adequate(self) -> bool:
        return not self.discrepancies


def compare_operators(target: ConsequenceOperator, induced: ConsequenceOperator,
                      K: Optional[Iterable[int]] = None) -> AdequacyVerdict:
    """Every (G, a, direction) where ``induced`` disagrees with ``target``.

    With a family K, also decide restricted adequacy: target(G) inside
    induced(G) everywhere, and equality on members of K."""
    if target.carrier != induced.carrier:
        raise StructureError("operators live on different carriers")
    found = []
    for g, (w, v) in enumerate(zip(target.table, induced.table)):
        for a in bits(w & ~v):
            found.append((g, a, MISSING))
        for a in bits(v & ~w):
            found.append((g, a, EXTRA))
    restricted = None
    if K is not None:
        K = frozenset(K)
        restricted = all(d == EXTRA and g not in K for g, _, d in found)
    return AdequacyVerdict(tuple(found), restricted)


def verify_adequacy(W: ConsequenceOperator, fsem: FunctionalSemantics) -> AdequacyVerdict:
    if fsem.carrier != W.carrier:
        raise StructureError("semantics and operator live on different carriers")
    return compare_operators(W, induced_operator(functional_to_generic(fsem)))


def _build(W: ConsequenceOperator, value_count: int, value_of, d1, d2) -> FunctionalSemantics:
    models = []
    for s, ws in enumerate(W.table):
        models.append(tuple(value_of(1 << b, s, ws) for b in range(W.n)))
    return FunctionalSemantics(
        W.carrier, value_count, tuple(dict.fromkeys(models)), {1: frozenset(d1), 2: frozenset(d2)}
    )


def build_mon4(W: ConsequenceOperator) -> FunctionalSemantics:
    """Four values: 0 outside W(S) and S, 1 in both, 2 only in S, 3 only in W(S)."""
    if not classify(W).monotonic:
        raise PreconditionError("not monotonic")

    def value(b, s, ws):
        if b & s:
            return 1 if b & ws else 2
        return 3 if b & ws else 0

    return _build(W, 4, value, {1, 2}, {1, 3})


def build_q3(W: ConsequenceOperator) -> FunctionalSemantics:
    """Three values: 1 on W(S), 2 on S outside W(S), 0 elsewhere."""
    if not classify(W).q_type:
        raise PreconditionError("not q-type")

    def value(b, s, ws):
        if b & ws:
            return 1
        return 2 if b & s else 0

    return _build(W, 3, value, {1, 2}, {1})


def build_p3(W: ConsequenceOperator) -> FunctionalSemantics:
    """Three values: 1 on S, 2 on W(S) outside S, 0 outside W(S).

    Reflexivity puts S inside W(S), which keeps the three cases disjoint."""
    if not classify(W).p_type:
        raise PreconditionError("not p-type")

    def value(b, s, ws):
        if not b & ws:
            return 0
        return 1 if b & s else 2

    return _build(W, 3, value, {1}, {1, 2})


def build_s3(W: ConsequenceOperator, K: Iterable[int], kappa: int
             ) -> tuple[FunctionalSemantics, AdequacyVerdict]:
    """Three values: 2 on W(S), then 1 on the rest of S, 0 elsewhere.

    When S meets W(S) the value 2 takes precedence.  The verdict lists every
    disagreement with W and certifies restricted adequacy (W inside the
    induced operator, equal on K); full adequacy may fail for operators that
    are not anti-reflexive outside K.
    """
    K = frozenset(K)
    if not check_s_type(W, K, kappa):
        raise PreconditionError("not s-type for the given family")

    def value(b, s, ws):
        if b & ws:
            return 2
        return 1 if b & s else 0

    fsem = _build(W, 3, value, {1}, {2})
    induced = induced_operator(functional_to_generic(fsem))
    return fsem, compare_operators(W, induced, K)


@dataclass(frozen=True)
class HypothesisReport:
    strongly_granular: bool
    second_in_first: bool
    first_in_second: bool
    s_projection: Optional[bool] = None
    r_conditions: Optional[tuple[bool, bool, bool]] = None
    q_projection_statement: bool = False
    q_projection_proof_variant: bool = False

    @property
    def r_all(self) -> Optional[bool]:
        return None if self.r_conditions is None else all(self.r_conditions)


def _projections(sem: GenericSemantics, index) -> list[int]:
    """For each subset G, the bitmask of model positions m with m |=_index G."""
    pos = {m: k for k, m in enumerate(sem.models)}
    out = [0] * sem.carrier.size
    for m, g in sem.relations[index]:
        out[g] |= 1 << pos[m]
    return out


def hypothesis_checks(sem: Union[GenericSemantics, FunctionalSemantics],
                      K: Optional[Iterable[int]] = None,
                      kappa: Optional[int] = None) -> HypothesisReport:
    if isinstance(sem, FunctionalSemantics):
        sem = functional_to_generic(sem)
    if len(sem.pairs) != 1:
        raise StructureError("hypothesis checks need a single pair in S")
    (first, second), = sem.pairs
    if first == second:
        raise StructureError("hypothesis checks need two distinct indices")
    carrier = sem.carrier
    rel1, rel2 = sem.relations[first], sem.relations[second]
    p1 = _projections(sem, first)
    p2 = _projections(sem, second)
    atom2 = [p2[1 << a] for a in range(carrier.n)]
    W = induced_operator(sem)

    s_projection = None
    if K is not None:
        s_projection = all(
            p1[g] & ~atom2[a] for g in K for a in bits(g)
        )

    r_conditions = None
    if kappa is not None:
        c1 = not rel1 <= rel2
        c2 = any(
            (s & ~(W(d) | d)) == 0 and W(s) & ~W(d)
            for s in carrier.subsets() for d in carrier.subsets()
        )
        c3 = all(
            any(p1[lam] & ~atom2[a] == 0 for a in bits(lam))
            for lam in carrier.subsets() if popcount(lam) >= kappa
        )
        r_conditions = (c1, c2, bool(c3))

    statement = True
    proof_variant = True
    subsets = list(carrier.subsets())
    for a in range(carrier.n):
        for s in subsets:
            if not p1[s] & ~atom2[a]:
                continue
            cover = W(s) | s
            for g in subsets:
                escapes = bool(p1[g] & ~atom2[a])
                if not escapes:
                    proof_variant = False
                    if g & ~cover == 0:
                        statement = False
    return HypothesisReport(
        strongly_granular=granularity(sem).strong,
        second_in_first=rel2 <= rel1,
        first_in_second=rel1 <= rel2,
        s_projection=s_projection,
        r_conditions=r_conditions,
        q_projection_statement=statement,
        q_projection_proof_variant=proof_variant,
    )
