"""Bivalent S-semantics: points, a pair relation R and a satisfaction relation.

Points carry an opaque id and, for normal semantics, a bivaluation stored as
the bitmask of elements sent to 1.  A normal point satisfies G exactly when G
is inside its bivaluation.  Points built from an arbitrary semantics have no
bivaluation; their satisfaction is carried over verbatim, which keeps the
tagging one point per (model, index) even when there are more such pairs
than bivaluations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional

from .core import (
    Carrier,
    ConsequenceOperator,
    PreconditionError,
    StructureError,
    is_subset,
    submasks,
)
from .minimality import SearchCapError
from .properties import check_s_type, classify
from .representations import AdequacyVerdict, compare_operators
from .semantics import GenericSemantics, empty_semantics

LITERAL_U_LIMIT = 12


@dataclass(frozen=True)
class SPoint:
    id: Hashable
    bivaluation: Optional[int] = None


@dataclass(frozen=True, eq=False)
class SSemantics:
    carrier: Carrier
    points: tuple
    R: frozenset
    sat: Mapping[Hashable, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "R", frozenset(self.R))
        ids = [p.id for p in self.points]
        if len(set(ids)) != len(ids):
            raise StructureError("point ids must be distinct")
        known = set(ids)
        sat = {}
        for p in self.points:
            if p.bivaluation is not None:
                self.carrier.check(p.bivaluation)
            sat[p.id] = frozenset(self.carrier.check(g) for g in self.sat.get(p.id, ()))
        object.__setattr__(self, "sat", sat)
        for v, w in self.R:
            if v not in known or w not in known:
                raise StructureError(f"pair ({v!r}, {w!r}) leaves the point set")

    @classmethod
    def normal(cls, carrier: Carrier, pairs: Iterable[tuple[int, int]],
               extra: Iterable[int] = ()) -> "SSemantics":
        """Normal semantics whose points are bivaluations used as their own ids."""
        pairs = frozenset(pairs)
        masks = set(extra)
        for v, w in pairs:
            masks.update((v, w))
        points = tuple(SPoint(m, m) for m in sorted(masks))
        sat = {m: frozenset(submasks(m)) for m in masks}
        return cls(carrier, points, pairs, sat)

    def atoms(self, pid) -> int:
        out = 0
        for g in self.sat[pid]:
            if g and g & (g - 1) == 0:
                out |= g
        return out

    def bivaluation_of(self, pid) -> Optional[int]:
        for p in self.points:
            if p.id == pid:
                return p.bivaluation
        raise KeyError(pid)


def is_atomic(s: SSemantics) -> bool:
    return all(s.sat[p.id] == frozenset(submasks(s.atoms(p.id))) for p in s.points)


def is_normal(s: SSemantics) -> bool:
    """Every point has a bivaluation, bivaluations are distinct, and points
    satisfy exactly the sets mapped into 1."""
    bivs = [p.bivaluation for p in s.points]
    if any(b is None for b in bivs) or len(set(bivs)) != len(bivs):
        return False
    return all(s.sat[p.id] == frozenset(submasks(p.bivaluation)) for p in s.points)


def type1_operator(s: SSemantics) -> ConsequenceOperator:
    """a in W(G) iff every (v, w) in R with v |= G has w |= {a}."""
    carrier = s.carrier
    table = [carrier.full] * carrier.size
    for v, w in sorted(s.R, key=repr):
        allowed = s.atoms(w)
        for g in s.sat[v]:
            table[g] &= allowed
    return ConsequenceOperator(carrier, tuple(table))


def _mandatory(s: SSemantics, W_ref: ConsequenceOperator) -> dict[int, Optional[tuple]]:
    """For each G, the pair (chi_G, chi_W(G)) as point ids if it lies in R."""
    by_biv = {p.bivaluation: p.id for p in s.points}
    out = {}
    for g in s.carrier.subsets():
        v, w = by_biv.get(g), by_biv.get(W_ref(g))
        out[g] = (v, w) if v is not None and w is not None and (v, w) in s.R else None
    return out


def mandatory_gaps(s: SSemantics, W_ref: ConsequenceOperator) -> list[int]:
    """Premise sets whose mandatory pair is absent from R (they map to the empty set)."""
    return [g for g, pair in _mandatory(s, W_ref).items() if pair is None]


def type2_operator(s: SSemantics, W_ref: ConsequenceOperator, literal: bool = False) -> ConsequenceOperator:
    """a in W(G) iff some U inside R containing (chi_G, chi_W_ref(G)) has
    v |= G imply w |= {a} for all its pairs.

    Any qualifying U can be shrunk to the mandatory pair alone, so the default
    evaluation checks that single pair.  ``literal=True`` enumerates every U
    instead (only for |R| <= 12)."""
    if not is_normal(s):
        raise PreconditionError("type-II entailment needs a normal S-semantics")
    if W_ref.carrier != s.carrier:
        raise StructureError("reference operator lives on a different carrier")
    mandatory = _mandatory(s, W_ref)
    carrier = s.carrier
    table = [0] * carrier.size
    if not literal:
        for g, pair in mandatory.items():
            if pair is None:
                continue
            v, w = pair
            table[g] = s.atoms(w) if g in s.sat[v] else carrier.full
        return ConsequenceOperator(carrier, tuple(table))

    rel = sorted(s.R, key=repr)
    if len(rel) > LITERAL_U_LIMIT:
        raise SearchCapError(f"literal enumeration is limited to |R| <= {LITERAL_U_LIMIT}")
    for g, pair in mandatory.items():
        if pair is None:
            continue
        others = [p for p in rel if p != pair]
        found = 0
        for a in range(carrier.n):
            bit = 1 << a
            for r in range(len(others) + 1):
                if any(
                    all(g not in s.sat[v] or s.atoms(w) & bit for v, w in (pair,) + combo)
                    for combo in itertools.combinations(others, r)
                ):
                    found |= bit
                    break
        table[g] = found
    return ConsequenceOperator(carrier, tuple(table))


def normalize(s: SSemantics) -> SSemantics:
    """Replace each point v by the bivaluation sending b to 1 iff v |= {b}."""
    if not is_atomic(s):
        raise PreconditionError("normalization needs an atomic S-semantics")
    nu = {p.id: s.atoms(p.id) for p in s.points}
    pairs = {(nu[v], nu[w]) for v, w in s.R}
    return SSemantics.normal(s.carrier, pairs, nu.values())


def s_from_semantics(sem: GenericSemantics) -> SSemantics:
    """One point per (model, index); R links (m, i) to (m, j) for (i, j) in S."""
    points = []
    sat = {}
    for m in sem.models:
        for i in sem.indices:
            points.append(SPoint((m, i)))
    for i in sem.indices:
        for m, g in sem.relations[i]:
            sat.setdefault((m, i), set()).add(g)
    pairs = {((m, i), (m, j)) for m in sem.models for i, j in sem.pairs}
    return SSemantics(sem.carrier, tuple(points), frozenset(pairs), sat)


def semantics_from_s(s: SSemantics) -> GenericSemantics:
    """A single model with one satisfaction relation per point and S = R.

    With R empty the type-I operator is constantly L; since S must be
    nonempty, the model-free semantics stands in for that case."""
    if not s.R:
        return empty_semantics(s.carrier)
    star = "*"
    relations = {p.id: frozenset((star, g) for g in s.sat[p.id]) for p in s.points}
    return GenericSemantics(s.carrier, (star,), tuple(p.id for p in s.points), relations, s.R)


def build_s_mon(W: ConsequenceOperator) -> SSemantics:
    if not classify(W).monotonic:
        raise PreconditionError("not monotonic")
    pairs = {(g, W(g)) for g in W.carrier.subsets()}
    return SSemantics.normal(W.carrier, pairs, W.carrier.subsets())


def build_s_q(W: ConsequenceOperator) -> SSemantics:
    if not classify(W).q_type:
        raise PreconditionError("not q-type")
    pairs = {(W(g) | g, W(g)) for g in W.carrier.subsets()}
    return SSemantics.normal(W.carrier, pairs)


def build_s_p(W: ConsequenceOperator) -> SSemantics:
    if not classify(W).p_type:
        raise PreconditionError("not p-type")
    pairs = {(g, g | W(g)) for g in W.carrier.subsets()}
    return SSemantics.normal(W.carrier, pairs)


def build_s_s(W: ConsequenceOperator, K: Iterable[int], kappa: int
              ) -> tuple[SSemantics, AdequacyVerdict]:
    """Pairs (chi_{L-W(G)}, chi_W(G)) for G in K with L-W(G) in K, and
    (chi_G, chi_W(G)) for every other G.  Endpoints of pairs are always
    included among the points so that R stays inside B x B."""
    K = frozenset(K)
    if not check_s_type(W, K, kappa):
        raise PreconditionError("not s-type for the given family")
    full = W.full
    pairs = set()
    for g in W.carrier.subsets():
        co = full & ~W(g)
        if g in K and co in K:
            pairs.add((co, W(g)))
        else:
            pairs.add((g, W(g)))
    s = SSemantics.normal(W.carrier, pairs)
    return s, compare_operators(W, type1_operator(s), K)


def build_s_cm(W: ConsequenceOperator, strict: bool = True) -> SSemantics:
    """Union over G of the pairs (chi_S, chi_W(S)) with S = G or S inside W(G)."""
    if strict and not classify(W).cm_type:
        raise PreconditionError("not cm-type")
    pairs = set()
    for g in W.carrier.subsets():
        pairs.add((g, W(g)))
        for s in submasks(W(g)):
            pairs.add((s, W(s)))
    return SSemantics.normal(W.carrier, pairs, W.carrier.subsets())


def build_s_wct(W: ConsequenceOperator, strict: bool = True) -> SSemantics:
    """Union over G of (chi_G, chi_W(G)) and (chi_W(S), chi_W(S)) for S inside G."""
    if strict and not classify(W).wct_type:
        raise PreconditionError("not wct-type")
    pairs = set()
    for g in W.carrier.subsets():
        pairs.add((g, W(g)))
        for s in submasks(g):
            pairs.add((W(s), W(s)))
    return SSemantics.normal(W.carrier, pairs, W.carrier.subsets())


@dataclass(frozen=True)
class SHypothesisReport:
    normal: bool
    shrinking: bool  # every (v, w) in R has w inside v
    shrinking_exact: bool  # R is exactly the pairs of points with w inside v
    growing: bool  # every (v, w) in R has v inside w
    growing_exact: bool
    s_pairs: Optional[bool] = None


def s_hypothesis_checks(s: SSemantics, K: Optional[Iterable[int]] = None) -> SHypothesisReport:
    if not is_normal(s):
        raise PreconditionError("shape checks need a normal S-semantics")
    biv = {p.id: p.bivaluation for p in s.points}
    ids = list(biv)
    shrink_all = {(v, w) for v in ids for w in ids if is_subset(biv[w], biv[v])}
    grow_all = {(v, w) for v in ids for w in ids if is_subset(biv[v], biv[w])}
    s_pairs = None
    if K is not None:
        s_pairs = all(
            any(is_subset(g, biv[v]) and not biv[w] >> a & 1 for v, w in s.R)
            for g in K for a in range(s.carrier.n) if g >> a & 1
        )
    return SHypothesisReport(
        normal=True,
        shrinking=s.R <= shrink_all,
        shrinking_exact=s.R == shrink_all,
        growing=s.R <= grow_all,
        growing_exact=s.R == grow_all,
        s_pairs=s_pairs,
    )
