"""Many-valued semantics of finite order: levels of carriers, each with models
valuing every subset of its carrier into a finite value set.

A premise set G over the base carrier L0 is read at level i through the
inverse image of the declared injection from L_i into L0.  Levels whose
injection does not cover G cannot evaluate it and raise instead of guessing.
Model pairs (m_i, m_j) range over M_i x M_j independently, also when i = j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional

from .core import Carrier, ConsequenceOperator, StructureError, bits, relation_from_operator
from .minimality import SearchCapError

SEARCH_CAPS = {"carrier": 2, "levels": 2, "values": 3}


@dataclass(frozen=True, eq=False)
class Level:
    """One level: a carrier, model ids, ``value_count`` values and a total
    valuation keyed by (model, subset mask)."""

    carrier: Carrier
    models: tuple
    value_count: int
    valuation: Mapping[tuple, int]

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))
        object.__setattr__(self, "valuation", dict(self.valuation))

    def value(self, model: Hashable, mask: int) -> int:
        return self.valuation[(model, mask)]

    def values_at(self, mask: int) -> frozenset:
        return frozenset(self.valuation[(m, mask)] for m in self.models)


@dataclass(frozen=True, eq=False)
class OrderedFamily:
    """Levels 0..lam-1, injections keyed (i, j) for i < j mapping positions of
    L_j to positions of L_i, and the pair set S of ((i, a), (j, b))."""

    base: Carrier
    levels: tuple
    injections: Mapping[tuple, tuple] = field(default_factory=dict)
    pairs: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "injections", {k: tuple(v) for k, v in self.injections.items()})
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        if not self.levels:
            raise StructureError("a family needs at least one level")
        if not self.pairs:
            raise StructureError("the pair set S must be nonempty")

    @property
    def order(self) -> int:
        return len(self.levels)


def bivalent_level(carrier: Carrier, bivaluations: dict) -> Level:
    """Two values; a model gives G the value 1 iff its bivaluation maps G into {1}."""
    valuation = {}
    for m, biv in bivaluations.items():
        for g in carrier.subsets():
            valuation[(m, g)] = int(g & ~biv == 0)
    return Level(carrier, tuple(bivaluations), 2, valuation)


def family_problems(f: OrderedFamily, kappa: Optional[int] = None) -> list[str]:
    """Every structural violation, each prefixed with its location."""
    problems = []
    if f.levels[0].carrier != f.base:
        problems.append("level 0: carrier differs from the base carrier")
    for i, lev in enumerate(f.levels):
        if kappa is not None and lev.value_count < kappa:
            problems.append(f"level {i}: {lev.value_count} values, fewer than {kappa}")
        if len(set(lev.models)) != len(lev.models):
            problems.append(f"level {i}: duplicate model ids")
        for m in lev.models:
            for g in lev.carrier.subsets():
                v = lev.valuation.get((m, g))
                if v is None:
                    problems.append(f"level {i}: no value for model {m!r} at subset {g}")
                elif not 0 <= v < lev.value_count:
                    problems.append(f"level {i}: value {v} out of range at ({m!r}, {g})")
    if kappa is not None and not any(lev.value_count == kappa for lev in f.levels):
        problems.append(f"no level has exactly {kappa} values")
    for i, j in itertools.combinations(range(f.order), 2):
        inj = f.injections.get((i, j))
        if inj is None:
            problems.append(f"injection {j}->{i}: missing")
            continue
        if len(inj) != f.levels[j].carrier.n:
            problems.append(f"injection {j}->{i}: wrong length")
        elif any(not 0 <= x < f.levels[i].carrier.n for x in inj):
            problems.append(f"injection {j}->{i}: target out of range")
        elif len(set(inj)) != len(inj):
            problems.append(f"injection {j}->{i}: not injective")
    for key in f.injections:
        if not (isinstance(key, tuple) and len(key) == 2 and 0 <= key[0] < key[1] < f.order):
            problems.append(f"injection {key!r}: not a pair of levels i < j")
    for (i, a), (j, b) in f.pairs:
        for lev, val in ((i, a), (j, b)):
            if not 0 <= lev < f.order:
                problems.append(f"pair uses unknown level {lev}")
            elif not 0 <= val < f.levels[lev].value_count:
                problems.append(f"pair uses value {val} outside level {lev}")
    return problems


def validate_family(f: OrderedFamily, kappa: int) -> bool:
    return not family_problems(f, kappa)


def translate(f: OrderedFamily, level: int, g: int) -> int:
    """Inverse image of G (a subset of L0) in L_level."""
    if level == 0:
        return g
    inj = f.injections[(0, level)]
    image = 0
    out = 0
    for pos, target in enumerate(inj):
        image |= 1 << target
        if g >> target & 1:
            out |= 1 << pos
    if g & ~image:
        raise StructureError(f"subset {g} is not inside the image of level {level}")
    return out


def _reached(f: OrderedFamily) -> tuple[dict, dict]:
    """premise[i][a] = subsets G of L0 with some model of level i valuing G at a;
    spoiled[j][b] = elements alpha with some model of level j valuing {alpha}
    at a value other than b."""
    base = f.base
    used = {i for (i, _), _ in f.pairs} | {j for _, (j, _) in f.pairs}
    premise, spoiled = {}, {}
    for i in used:
        lev = f.levels[i]
        values = {g: lev.values_at(translate(f, i, g)) for g in base.subsets()}
        premise[i] = {a: frozenset(g for g, vs in values.items() if a in vs)
                      for a in range(lev.value_count)}
        singles = {x: lev.values_at(translate(f, i, 1 << x)) for x in range(base.n)}
        spoiled[i] = {b: sum(1 << x for x, vs in singles.items() if vs - {b})
                      for b in range(lev.value_count)}
    return premise, spoiled


def induced_operator_order(f: OrderedFamily, kappa: Optional[int] = None) -> ConsequenceOperator:
    """alpha in W(G) unless some ((i, a), (j, b)) in S and models m_i, m_j
    have m_i valuing G at a while m_j values {alpha} other than b."""
    if kappa is not None:
        problems = family_problems(f, kappa)
        if problems:
            raise StructureError("; ".join(problems))
    premise, spoiled = _reached(f)
    table = [f.base.full] * f.base.size
    for (i, a), (j, b) in f.pairs:
        bad = spoiled[j][b]
        for g in premise[i][a]:
            table[g] &= ~bad
    return ConsequenceOperator(f.base, tuple(table))


def induced_entailment_order(f: OrderedFamily, kappa: Optional[int] = None) -> frozenset:
    return relation_from_operator(induced_operator_order(f, kappa))


def _value_maps(n_subsets: int, mu: int):
    """Every assignment of value sets to subsets a nonempty model set can
    realise, plus the all-empty assignment of an empty model set."""
    choices = [frozenset(c) for r in range(1, mu + 1) for c in itertools.combinations(range(mu), r)]
    yield (frozenset(),) * n_subsets
    yield from itertools.product(choices, repeat=n_subsets)


def _signatures(f: OrderedFamily, level: int, mu: int) -> Optional[set]:
    """Distinct (premise sets per value, spoiled masks per value) over every
    possible value map of one level, expressed over L0.  None when the level
    cannot read every subset of L0 and so cannot appear in S."""
    base = f.base
    lev_carrier = f.levels[level].carrier
    try:
        prem_index = [translate(f, level, g) for g in base.subsets()]
    except StructureError:
        return None
    single_index = [translate(f, level, 1 << x) for x in range(base.n)]
    out = set()
    for vmap in _value_maps(lev_carrier.size, mu):
        prem = tuple(
            sum(1 << g for g, h in enumerate(prem_index) if a in vmap[h]) for a in range(mu)
        )
        spoil = tuple(
            sum(1 << x for x, h in enumerate(single_index) if vmap[h] - {b}) for b in range(mu)
        )
        out.add((prem, spoil))
    return out


def _pair_kills(prem_mask: int, spoil: int, base: Carrier) -> int:
    """Excluded (G, alpha) pairs as a bitmask over positions G * n + alpha."""
    n = base.n
    out = 0
    for g in bits(prem_mask):
        out |= spoil << (g * n)
    return out


def _achievable(f: OrderedFamily, mu: int, non_consequences: int) -> bool:
    base = f.base
    found_sigs = {i: _signatures(f, i, mu) for i in range(f.order)}
    usable = [i for i, sig in found_sigs.items() if sig is not None]
    sigs = [sorted(found_sigs[i]) for i in usable]
    for chosen in itertools.product(*sigs):
        combo = dict(zip(usable, chosen))
        union = 0
        found = False
        for i, j in itertools.product(usable, repeat=2):
            for a in range(mu):
                for b in range(mu):
                    kills = _pair_kills(combo[i][0][a], combo[j][1][b], base)
                    if kills & ~non_consequences:
                        continue
                    union |= kills
                    found = True
        if found and union == non_consequences:
            return True
    return False


@dataclass(frozen=True)
class OrderSearchResult:
    least: Optional[int]
    per_mu: dict


def order_minimality_search(template: OrderedFamily, kappa_max: int = 3,
                            target: Optional[ConsequenceOperator] = None,
                            caps: Optional[dict] = None) -> OrderSearchResult:
    """Least mu in [2, kappa_max] such that some family with the template's
    carriers and injections, every level holding mu values, induces ``target``
    (by default the template's own operator).

    Within a level only the set of values the models give each subset
    matters, so the search runs over those value-set maps, and for each
    choice the pair set S is taken maximal among pairs excluding nothing
    outside the target's non-consequences."""
    caps = dict(SEARCH_CAPS, **(caps or {}))
    if template.order > caps["levels"]:
        raise SearchCapError(f"order {template.order} exceeds the cap {caps['levels']}")
    if any(lev.carrier.n > caps["carrier"] for lev in template.levels):
        raise SearchCapError(f"level carriers are capped at {caps['carrier']} elements")
    if kappa_max > caps["values"]:
        raise SearchCapError(f"value sets are capped at {caps['values']}")
    if kappa_max < 2:
        raise ValueError("kappa_max must be at least 2")
    if target is None:
        target = induced_operator_order(template)
    base = template.base
    non = 0
    for g, w in enumerate(target.table):
        non |= (base.full & ~w) << (g * base.n)
    per_mu = {}
    least = None
    for mu in range(2, kappa_max + 1):
        per_mu[mu] = _achievable(template, mu, non)
        if per_mu[mu] and least is None:
            least = mu
    return OrderSearchResult(least, per_mu)
