"""Exact inferential valuedness by kill-set covering.

Fix designated sets D1, D2 in A = {0, ..., mu-1}.  A valuation m excludes the
pair (G, a) when m maps G into D1 but a outside D2.  Writing P(m) for the
elements sent into D1 and B(m) for those sent outside D2, the kill set of m
is every (G, a) with G inside P(m) and a in B(m).  The operator induced by a
model set M has as non-consequences exactly the union of the kill sets, so W
is induced by some M iff the valuations whose kill sets avoid W's
consequences (the admissible ones) jointly kill every non-consequence.

Only the role of each value matters: whether it lies in D1 and whether it
lies outside D2.  The default search groups designated-set choices by the set
of roles they realise, and for each premise mask P takes the largest bad
mask B any admissible valuation can reach.  ``reduce=False`` runs the
literal loop over all valuations instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    Carrier,
    ConlabError,
    ConsequenceOperator,
    PreconditionError,
    bits,
    down_union,
    submasks,
)
from .semantics import FunctionalSemantics

# role of a value: (lies in D1, lies outside D2)
KEEP = (True, False)
FLIP = (True, True)
SPARE = (False, False)
DROP = (False, True)

DEFAULT_CAPS = {2: 12, 3: 8, 4: 6}


class SearchCapError(ConlabError):
    """The requested search exceeds the configured size caps."""


def kill_set(m: Sequence[int], d1, d2, carrier: Carrier) -> frozenset[tuple[int, int]]:
    """All (G, a) excluded by valuation ``m``: m(G) inside D1 and m(a) outside D2."""
    if len(m) != carrier.n:
        raise ValueError("valuation does not cover the carrier")
    premise = sum(1 << k for k, v in enumerate(m) if v in d1)
    bad = sum(1 << k for k, v in enumerate(m) if v not in d2)
    return frozenset((g, a) for g in submasks(premise) for a in bits(bad))


def admissible_designations(mu: int):
    """All (D1, D2): nonempty subsets of range(mu) whose union misses a value."""
    if mu < 2:
        raise ValueError("at least two values are needed")
    values = range(mu)
    nonempty = [
        frozenset(c) for r in range(1, mu) for c in itertools.combinations(values, r)
    ]
    for d1 in nonempty:
        for d2 in nonempty:
            if len(d1 | d2) < mu:
                yield d1, d2


def roles(mu: int, d1, d2) -> dict:
    """Role -> smallest value playing it."""
    out = {}
    for v in range(mu):
        out.setdefault((v in d1, v not in d2), v)
    return out


def _superset_union(values: list[int], n: int) -> list[int]:
    """out[g] = union of values[h] over all h containing g."""
    acc = list(values)
    for k in range(n):
        bit = 1 << k
        for g in range(len(acc)):
            if not g & bit:
                acc[g] |= acc[g | bit]
    return acc


def _covers(W: ConsequenceOperator, best: list[Optional[int]]) -> bool:
    if all(b is None for b in best):
        return False
    full = W.full
    cover = _superset_union([b or 0 for b in best], W.n)
    return all(cover[g] == full & ~w for g, w in enumerate(W.table))


def _best_by_roles(W: ConsequenceOperator, present) -> list[Optional[int]]:
    """For each premise mask P, the union of bad masks over admissible
    valuations with that premise mask (None when there is none)."""
    full = W.full
    reach = down_union(W)
    keep, flip, spare = KEEP in present, FLIP in present, SPARE in present
    best: list[Optional[int]] = [None] * (full + 1)
    for p in range(full + 1):
        if p and not (keep or flip):
            continue
        rest = full & ~p
        forced = (0 if keep else p) | (0 if spare else rest)
        optional = (p if keep and flip else 0) | (rest if spare else 0)
        if forced & reach[p]:
            continue
        best[p] = forced | (optional & ~reach[p])
    return best


def _best_direct(W: ConsequenceOperator, mu: int, d1, d2) -> list[Optional[int]]:
    full = W.full
    reach = down_union(W)
    best: list[Optional[int]] = [None] * (full + 1)
    for m in itertools.product(range(mu), repeat=W.n):
        p = sum(1 << k for k, v in enumerate(m) if v in d1)
        b = sum(1 << k for k, v in enumerate(m) if v not in d2)
        if b & reach[p]:
            continue
        best[p] = b if best[p] is None else best[p] | b
    return best


def _witness(W: ConsequenceOperator, mu: int, d1, d2, best) -> FunctionalSemantics:
    rep = roles(mu, d1, d2)
    models = []
    for p, b in enumerate(best):
        if b is None:
            continue
        m = []
        for k in range(W.n):
            bit = 1 << k
            m.append(rep[(bool(p & bit), bool(b & bit))])
        models.append(tuple(m))
    return FunctionalSemantics(W.carrier, mu, tuple(dict.fromkeys(models)), {1: d1, 2: d2})


def _check_caps(n: int, mu: int, caps) -> None:
    caps = DEFAULT_CAPS if caps is None else caps
    limit = caps.get(mu)
    if limit is None:
        # values without an explicit cap get the largest budget among the caps
        budget = max(k ** v for k, v in caps.items())
        if mu ** n > budget:
            raise SearchCapError(f"direct search over {mu}**{n} valuations exceeds the caps")
    elif n > limit:
        raise SearchCapError(f"direct search at {mu} values is capped at n <= {limit}")


def find_semantics(W: ConsequenceOperator, mu: int, reduce: bool = True,
                   caps: Optional[dict] = None) -> Optional[FunctionalSemantics]:
    """An adequate functional semantics with ``mu`` values, or None."""
    if mu < 2:
        raise ValueError("at least two values are needed")
    if not reduce:
        _check_caps(W.n, mu, caps)
    seen = set()
    for d1, d2 in admissible_designations(mu):
        if reduce:
            present = frozenset(roles(mu, d1, d2))
            if present in seen:
                continue
            seen.add(present)
            best = _best_by_roles(W, present)
        else:
            best = _best_direct(W, mu, d1, d2)
        if _covers(W, best):
            return _witness(W, mu, d1, d2, best)
    return None


def achievable_at(W: ConsequenceOperator, mu: int, reduce: bool = True,
                  caps: Optional[dict] = None) -> bool:
    return find_semantics(W, mu, reduce, caps) is not None


def witness_semantics(W: ConsequenceOperator, mu: int) -> FunctionalSemantics:
    found = find_semantics(W, mu)
    if found is None:
        raise PreconditionError(f"not achievable with {mu} values")
    return found


@dataclass(frozen=True)
class MinimalityResult:
    min_values: Optional[int]
    witness: Optional[FunctionalSemantics]
    per_mu: dict = field(default_factory=dict)


def inferential_valuedness(W: ConsequenceOperator, mu_max: int = 4) -> MinimalityResult:
    """Least mu in [2, mu_max] admitting an adequate functional semantics."""
    if mu_max < 2:
        raise ValueError("mu_max must be at least 2")
    per_mu = {}
    least = None
    witness = None
    for mu in range(2, mu_max + 1):
        found = find_semantics(W, mu)
        per_mu[mu] = found is not None
        if found is not None and least is None:
            least, witness = mu, found
    return MinimalityResult(least, witness, per_mu)
