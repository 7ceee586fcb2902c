"""Structural properties and type classification of consequence operators.

Every check is a direct quantifier evaluation over the finite powerset.  Where
a condition quantifies over all subsets of some set X, the union of W over
those subsets is precomputed once with a subset-sum transform; this is the
same quantifier, just evaluated without re-enumerating subsets.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Optional

from .core import (
    ConsequenceOperator,
    PreconditionError,
    down_union,
    is_subset,
    popcount,
    submasks,
    w_infinity,
)

FamilyK = frozenset


def _union_below(values: list[int], n: int) -> list[int]:
    """out[g] = union of values[h] over all h subset of g."""
    acc = list(values)
    for k in range(n):
        bit = 1 << k
        for g in range(len(acc)):
            if g & bit:
                acc[g] |= acc[g ^ bit]
    return acc


def is_reflexive(W: ConsequenceOperator) -> bool:
    return all(is_subset(g, w) for g, w in enumerate(W.table))


def is_monotonic(W: ConsequenceOperator) -> bool:
    # Gamma <= Sigma is a chain of single-element extensions, and inclusion is
    # transitive, so checking those covering pairs decides the full quantifier.
    table = W.table
    for g, w in enumerate(table):
        for k in range(W.n):
            bit = 1 << k
            if not g & bit and w & ~table[g | bit]:
                return False
    return True


def is_transitive(W: ConsequenceOperator) -> bool:
    """Gamma subset W(Sigma) implies W(Gamma) subset W(Sigma)."""
    below = down_union(W)
    return all(is_subset(below[w], w) for w in W.table)


def is_idempotent(W: ConsequenceOperator) -> bool:
    return all(W(w) == w for w in W.table)


def is_quasi_closed(W: ConsequenceOperator) -> bool:
    return all(W(w | g) == w for g, w in enumerate(W.table))


def is_cautious_monotonic(W: ConsequenceOperator) -> bool:
    """Gamma subset Sigma subset W(Gamma) implies W(Gamma) subset W(Sigma)."""
    for g, w in enumerate(W.table):
        if not is_subset(g, w):
            continue
        for extra in submasks(w & ~g):
            if not is_subset(w, W(g | extra)):
                return False
    return True


def is_weakly_cumulative_transitive(W: ConsequenceOperator) -> bool:
    """Gamma subset Sigma subset W(Gamma) implies W(Sigma) subset W(Gamma)."""
    for g, w in enumerate(W.table):
        if not is_subset(g, w):
            continue
        for extra in submasks(w & ~g):
            if not is_subset(W(g | extra), w):
                return False
    return True


def check_anti_reflexive_global(W: ConsequenceOperator) -> bool:
    return all(g & w == 0 for g, w in enumerate(W.table))


def anti_reflexive_theorem_check(W: ConsequenceOperator) -> Optional[bool]:
    """For monotonic W on a nonempty carrier, global anti-reflexivity must
    coincide with W vanishing on every nonempty set.  Returns whether it does,
    or None when the hypotheses do not apply."""
    if W.n == 0 or not is_monotonic(W):
        return None
    vanishes = all(w == 0 for w in W.table[1:])
    return check_anti_reflexive_global(W) == vanishes


@dataclass(frozen=True)
class ClassificationReport:
    reflexive: bool
    monotonic: bool
    transitive: bool
    idempotent: bool
    quasi_closed: bool
    cm_type: bool
    wct_type: bool
    anti_reflexive_global: bool

    @property
    def tarski(self) -> bool:
        return self.reflexive and self.monotonic and self.transitive

    @property
    def q_type(self) -> bool:
        return self.monotonic and self.quasi_closed

    @property
    def p_type(self) -> bool:
        return self.reflexive and self.monotonic

    def as_dict(self) -> dict[str, bool]:
        out = asdict(self)
        out.update(tarski=self.tarski, q_type=self.q_type, p_type=self.p_type)
        return out


def classify(W: ConsequenceOperator) -> ClassificationReport:
    return ClassificationReport(
        reflexive=is_reflexive(W),
        monotonic=is_monotonic(W),
        transitive=is_transitive(W),
        idempotent=is_idempotent(W),
        quasi_closed=is_quasi_closed(W),
        cm_type=is_cautious_monotonic(W),
        wct_type=is_weakly_cumulative_transitive(W),
        anti_reflexive_global=check_anti_reflexive_global(W),
    )


def char_p_condition(W: ConsequenceOperator) -> bool:
    """For all Gamma subset Sigma: Gamma union W(Gamma) subset W(Sigma)."""
    below = _union_below([g | w for g, w in enumerate(W.table)], W.n)
    return all(is_subset(below[s], w) for s, w in enumerate(W.table))


def is_downward_q_closed(W: ConsequenceOperator, delta: int) -> bool:
    reach = w_infinity(W, delta)
    target = W(delta)
    return all(is_subset(W(s), target) for s in submasks(reach))


@dataclass(frozen=True)
class CharQ:
    """The five equivalent conditions characterising q-type operators."""

    q_operator: bool
    infinity_fixed: bool
    all_downward_closed: bool
    extension: bool
    absorption: bool

    def as_tuple(self) -> tuple[bool, ...]:
        return (self.q_operator, self.infinity_fixed, self.all_downward_closed,
                self.extension, self.absorption)

    @property
    def agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


def charq_equivalents(W: ConsequenceOperator) -> CharQ:
    table = W.table
    monotonic = is_monotonic(W)
    q_operator = monotonic and is_quasi_closed(W)
    infinity_fixed = monotonic and all(
        W(w_infinity(W, g)) == w for g, w in enumerate(table)
    )
    below = down_union(W)
    closed = [is_subset(below[w_infinity(W, d)], table[d]) for d in range(len(table))]
    all_closed = all(closed)
    closed_sets = [d for d, ok in enumerate(closed) if ok]
    extension = True
    for g, w in enumerate(table):
        missing = W.full & ~w
        # elements alpha outside W(Gamma) that some closed superset also omits
        escaped = 0
        for s in closed_sets:
            if is_subset(g, s):
                escaped |= missing & ~table[s]
        if escaped != missing:
            extension = False
            break
    absorption = True
    for s, ws in enumerate(table):
        # every Gamma inside W(Sigma) union Sigma must have W(Gamma) inside W(Sigma)
        if not is_subset(below[ws | s], ws):
            absorption = False
            break
    return CharQ(q_operator, infinity_fixed, all_closed, extension, absorption)


def check_internally_kappa(K: Iterable[int], kappa: int) -> bool:
    sizes = [popcount(g) for g in K]
    return bool(sizes) and min(sizes) >= kappa and kappa in sizes


def check_s_type(W: ConsequenceOperator, K: Iterable[int], kappa: int) -> bool:
    K = [W.carrier.check(g) for g in K]
    return (
        check_internally_kappa(K, kappa)
        and is_monotonic(W)
        and all(g & W(g) == 0 for g in K)
    )


def check_r_type(W: ConsequenceOperator, kappa: int) -> bool:
    table = W.table
    non_reflexive = any(g & ~w for g, w in enumerate(table))
    non_quasi_closed = any(w & ~g for g, w in enumerate(table))
    non_anti_reflexive = all(
        g & w for g, w in enumerate(table) if popcount(g) >= kappa
    )
    return non_reflexive and non_quasi_closed and non_anti_reflexive and is_monotonic(W)


def finite_subset_bound(W: ConsequenceOperator) -> bool:
    """W(Gamma) = L, or the union of W over subsets of Gamma stays inside W(Gamma)."""
    below = down_union(W)
    return all(w == W.full or is_subset(below[g], w) for g, w in enumerate(W.table))


def s1_witness(W: ConsequenceOperator) -> tuple[int, frozenset[int]]:
    """For a non-reflexive monotonic W, an element a with a outside W({a}),
    together with the family K = {{a}} that makes W an s_1 operator."""
    if not is_monotonic(W) or is_reflexive(W):
        raise PreconditionError("s_1 witness needs a non-reflexive monotonic operator")
    for a in range(W.n):
        if not W(1 << a) >> a & 1:
            return a, frozenset({1 << a})
    raise AssertionError("non-reflexive monotonic operator without a singleton witness")


@dataclass(frozen=True)
class RPropReport:
    complement_of_image: bool
    disjoint_images: bool
    image_avoids_members: bool

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return (self.complement_of_image, self.disjoint_images, self.image_avoids_members)


def r_prop_checks(W: ConsequenceOperator, K: Iterable[int], kappa: int) -> RPropReport:
    """Consequences of anti-reflexivity relative to K for an s-type operator.

    1. W(G) <= W(L - W(G)), with equality when L - W(G) is in K.
    2. If L - G is in K then W(G) and W(L - G) are disjoint.
    3. For S in K, no set G meeting S equals W(S).
    """
    K = frozenset(K)
    if not check_s_type(W, K, kappa):
        raise PreconditionError("operator is not s-type for the given family")
    full = W.full
    first = True
    second = True
    for g in K:
        wg = W(g)
        co = full & ~wg
        if not is_subset(wg, W(co)) or (co in K and W(co) != wg):
            first = False
        if (full & ~g) in K and wg & W(full & ~g):
            second = False
    third = all(
        W(s) != g for s in K for g in W.carrier.subsets() if g & s
    )
    return RPropReport(first, second, third)
