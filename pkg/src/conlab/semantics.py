"""Semantics (M, {|=_i}, S) and the consequence operators they induce.

A generic semantics lists, for each index i, the satisfaction relation |=_i as
a set of (model, subset) pairs.  Models are opaque hashable ids.  The induced
operator puts alpha in W(Gamma) when every model that satisfies Gamma under i
satisfies {alpha} under j, for every (i, j) in S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from .core import (
    Carrier,
    ConsequenceOperator,
    PreconditionError,
    StructureError,
    submasks,
)
from .properties import classify


@dataclass(frozen=True, eq=False)
class GenericSemantics:
    carrier: Carrier
    models: tuple
    indices: tuple
    relations: Mapping[Hashable, frozenset]
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        rels = {i: frozenset(self.relations.get(i, ())) for i in self.indices}
        object.__setattr__(self, "relations", rels)
        if len(set(self.models)) != len(self.models):
            raise StructureError("model ids must be distinct")
        if not self.pairs:
            raise StructureError("the pair set S must be nonempty")
        known = set(self.indices)
        for i, j in self.pairs:
            if i not in known or j not in known:
                raise StructureError(f"pair ({i!r}, {j!r}) uses an unknown index")
        model_set = set(self.models)
        for i, rel in rels.items():
            for m, g in rel:
                if m not in model_set:
                    raise StructureError(f"relation {i!r} mentions unknown model {m!r}")
                self.carrier.check(g)

    def satisfied(self, index) -> dict:
        """model -> set of subsets it satisfies under ``index``."""
        out = {m: set() for m in self.models}
        for m, g in self.relations[index]:
            out[m].add(g)
        return out

    def atoms(self, index) -> dict:
        """model -> bitmask of elements a with m |= {a} under ``index``."""
        out = {m: 0 for m in self.models}
        for m, g in self.relations[index]:
            if g and g & (g - 1) == 0:
                out[m] |= g
        return out


def induced_operator(sem: GenericSemantics) -> ConsequenceOperator:
    carrier = sem.carrier
    table = [carrier.full] * carrier.size
    for i, j in sorted(sem.pairs, key=repr):
        premises = sem.satisfied(i)
        conclusions = sem.atoms(j)
        for m in sem.models:
            allowed = conclusions[m]
            for g in premises[m]:
                table[g] &= allowed
    return ConsequenceOperator(carrier, tuple(table))


def canonical_semantics(W: ConsequenceOperator) -> GenericSemantics:
    """Models are all subsets S; S |=_1 G iff S = G, S |=_2 G iff G is inside W(S)."""
    models = tuple(W.carrier.subsets())
    first = frozenset((s, s) for s in models)
    second = frozenset((s, g) for s in models for g in submasks(W(s)))
    return GenericSemantics(W.carrier, models, (1, 2), {1: first, 2: second}, frozenset({(1, 2)}))


def empty_semantics(carrier: Carrier) -> GenericSemantics:
    """The semantics with no models; it induces W(G) = L for every G."""
    return GenericSemantics(carrier, (), (1,), {1: frozenset()}, frozenset({(1, 1)}))


@dataclass(frozen=True)
class Granularity:
    per_index: dict
    witnesses: dict = field(default_factory=dict)

    @property
    def strong(self) -> bool:
        return all(self.per_index.values())


def granularity(sem: GenericSemantics) -> Granularity:
    """Index i is granular when m |=_i G exactly when m |=_i {a} for every a in G."""
    per_index = {}
    witnesses = {}
    for i in sem.indices:
        sat = sem.satisfied(i)
        atoms = sem.atoms(i)
        ok = True
        for m in sem.models:
            expected = set(submasks(atoms[m]))
            if sat[m] != expected:
                ok = False
                bad = min(sat[m] ^ expected)
                witnesses[i] = (m, bad)
                break
        per_index[i] = ok
    return Granularity(per_index, witnesses)


@dataclass(frozen=True, eq=False)
class FunctionalSemantics:
    """Valuations into A = {0, ..., value_count-1} with designated sets D_i.

    ``m |=_i G`` iff every element of G takes a value in D_i under m.
    """

    carrier: Carrier
    value_count: int
    models: tuple
    designated: Mapping[Hashable, frozenset]
    pairs: frozenset = frozenset({(1, 2)})

    def __post_init__(self):
        models = tuple(tuple(m) for m in self.models)
        object.__setattr__(self, "models", models)
        designated = {i: frozenset(d) for i, d in self.designated.items()}
        object.__setattr__(self, "designated", designated)
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        mu = self.value_count
        if mu < 1:
            raise StructureError("value set must be nonempty")
        if not models:
            raise StructureError("a functional semantics needs at least one model")
        for m in models:
            if len(m) != self.carrier.n:
                raise StructureError(f"valuation {m} does not cover the carrier")
            if any(not 0 <= v < mu for v in m):
                raise StructureError(f"valuation {m} uses values outside 0..{mu - 1}")
        union = set()
        for i, d in designated.items():
            if not d:
                raise StructureError(f"designated set for index {i!r} is empty")
            if any(not 0 <= v < mu for v in d):
                raise StructureError(f"designated set for index {i!r} leaves the value set")
            union |= d
        if len(union) >= mu:
            raise StructureError("the designated sets together must miss some value")
        if not self.pairs:
            raise StructureError("the pair set S must be nonempty")
        for i, j in self.pairs:
            if i not in designated or j not in designated:
                raise StructureError(f"pair ({i!r}, {j!r}) uses an unknown index")

    def designated_mask(self, m: Sequence[int], index) -> int:
        d = self.designated[index]
        mask = 0
        for k, v in enumerate(m):
            if v in d:
                mask |= 1 << k
        return mask

    def induced_operator(self) -> ConsequenceOperator:
        """Direct evaluation: m |=_i G iff G is inside the designated mask of m."""
        carrier = self.carrier
        table = [carrier.full] * carrier.size
        for i, j in self.pairs:
            for m in self.models:
                allowed = self.designated_mask(m, j)
                for g in submasks(self.designated_mask(m, i)):
                    table[g] &= allowed
        return ConsequenceOperator(carrier, tuple(table))


def functional_to_generic(fsem: FunctionalSemantics) -> GenericSemantics:
    models = tuple(dict.fromkeys(fsem.models))
    relations = {}
    for i in fsem.designated:
        relations[i] = frozenset(
            (m, g) for m in models for g in submasks(fsem.designated_mask(m, i))
        )
    return GenericSemantics(fsem.carrier, models, tuple(fsem.designated), relations, fsem.pairs)


def tarski_bivalent(W: ConsequenceOperator) -> GenericSemantics:
    """Bivaluations characteristic of the sets W(S); v |= G iff v maps G into {1}."""
    if not classify(W).tarski:
        raise PreconditionError("not Tarski-type")
    models = tuple(sorted(set(W.table)))
    rel = frozenset((v, g) for v in models for g in submasks(v))
    return GenericSemantics(W.carrier, models, (1,), {1: rel}, frozenset({(1, 1)}))


def relation_included(sem: GenericSemantics, i, j) -> bool:
    """Whether |=_i is a subset of |=_j."""
    return sem.relations[i] <= sem.relations[j]
