"""Consequence operators over finite carriers: classification, adequate
semantics, bivalent reductions and exact inferential valuedness."""

from .core import (
    MAX_CARRIER,
    Carrier,
    ConlabError,
    ConsequenceOperator,
    PreconditionError,
    StructureError,
    constant,
    identity,
    operator_from_relation,
    operators_equal,
    power,
    relation_from_operator,
    w_infinity,
)
from .minimality import (
    MinimalityResult,
    SearchCapError,
    achievable_at,
    inferential_valuedness,
    kill_set,
    witness_semantics,
)
from .properties import (
    charq_equivalents,
    check_internally_kappa,
    check_r_type,
    check_s_type,
    classify,
    finite_subset_bound,
    is_downward_q_closed,
    r_prop_checks,
)
from .representations import (
    AdequacyVerdict,
    build_mon4,
    build_p3,
    build_q3,
    build_s3,
    hypothesis_checks,
    verify_adequacy,
)
from .semantics import (
    FunctionalSemantics,
    GenericSemantics,
    canonical_semantics,
    functional_to_generic,
    granularity,
    induced_operator,
    tarski_bivalent,
)
from .suszko import (
    SPoint,
    SSemantics,
    build_s_cm,
    build_s_mon,
    build_s_p,
    build_s_q,
    build_s_s,
    build_s_wct,
    is_atomic,
    normalize,
    s_from_semantics,
    semantics_from_s,
    type1_operator,
    type2_operator,
)

__version__ = "0.1.0"
