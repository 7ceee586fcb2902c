"""Command-line entry point: read a structure document, run an analysis, print
a JSON report.

Structure documents look like::

    {"carrier": ["a", "b"],
     "operator": [{"input": [], "output": ["a"]}, {"input": ["a"], "output": ["a"]}, ...],
     "K": [["a"]],
     "kappa": 1}

Every subset needs exactly one entry.  Exit status is 0 on success, 1 on bad
input and 2 when the operator does not meet a command's type precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from .core import (
    MAX_CARRIER,
    Carrier,
    ConlabError,
    ConsequenceOperator,
    PreconditionError,
    StructureError,
)
from .generators import FAMILIES, GeneratorSpec, gen_named
from .hierarchy import (
    Level,
    OrderedFamily,
    family_problems,
    induced_operator_order,
    order_minimality_search,
)
from .minimality import SearchCapError, inferential_valuedness
from .properties import (
    anti_reflexive_theorem_check,
    charq_equivalents,
    check_r_type,
    check_s_type,
    classify,
    finite_subset_bound,
    is_monotonic,
    is_reflexive,
    r_prop_checks,
    s1_witness,
)
from .representations import (
    AdequacyVerdict,
    build_mon4,
    build_p3,
    build_q3,
    build_s3,
    compare_operators,
    verify_adequacy,
)
from .semantics import (
    FunctionalSemantics,
    canonical_semantics,
    induced_operator,
    tarski_bivalent,
)
from .suszko import (
    SSemantics,
    build_s_cm,
    build_s_mon,
    build_s_p,
    build_s_q,
    build_s_s,
    build_s_wct,
    mandatory_gaps,
    type1_operator,
    type2_operator,
)

TARGETS = ("canonical", "tarski2", "mon4", "q3", "p3", "s3",
           "smon", "sq", "sp", "ss", "cm", "wct")

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command"],
    "properties": {
        "command": {"type": "string"},
        "classification": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "r_type": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "charq": {
            "type": "object",
            "additionalProperties": {"type": "boolean"},
        },
        "adequacy": {"$ref": "#/definitions/verdict"},
        "minimality": {
            "type": "object",
            "required": ["min_values", "per_mu"],
            "properties": {
                "min_values": {"type": ["integer", "null"]},
                "per_mu": {"type": "object", "additionalProperties": {"type": "boolean"}},
            },
        },
        "summary": {"type": "object"},
        "semantics": {"type": "object"},
        "findings": {"type": "array", "items": {"type": "string"}},
    },
    "definitions": {
        "verdict": {
            "type": "object",
            "required": ["adequate", "discrepancies"],
            "properties": {
                "adequate": {"type": "boolean"},
                "restricted": {"type": ["boolean", "null"]},
                "discrepancies": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["input", "element", "direction"],
                        "properties": {
                            "input": {"type": "array", "items": {"type": "string"}},
                            "element": {"type": "string"},
                            "direction": {"enum": ["missing", "extra"]},
                        },
                    },
                },
            },
        }
    },
}


class InputError(ConlabError):
    """A document could not be turned into a structure."""


# -- structure documents ---------------------------------------------------

def _labels(value: Any, carrier: Carrier, path: str) -> int:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise InputError(f"{path}: expected a list of labels")
    if len(set(value)) != len(value):
        raise InputError(f"{path}: repeated label")
    mask = 0
    for x in value:
        try:
            mask |= 1 << carrier.index(x)
        except (KeyError, ValueError, StructureError):
            raise InputError(f"{path}: unknown label {x!r}") from None
    return mask


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _carrier(value: Any, path: str) -> Carrier:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise InputError(f"{path}: expected a list of labels")
    if len(value) > MAX_CARRIER:
        raise InputError(f"{path}: {len(value)} elements exceed the cap of {MAX_CARRIER}")
    try:
        return Carrier(tuple(value))
    except StructureError as exc:
        raise InputError(f"{path}: {exc}") from None


def structure_from_document(doc: Any) -> tuple[ConsequenceOperator, Optional[frozenset], Optional[int]]:
    if not isinstance(doc, dict):
        raise InputError("document: expected an object")
    carrier = _carrier(doc.get("carrier"), "carrier")
    entries = doc.get("operator")
    if not isinstance(entries, list):
        raise InputError("operator: expected a list of entries")
    table: list[Optional[int]] = [None] * carrier.size
    for k, entry in enumerate(entries):
        path = f"operator[{k}]"
        if not isinstance(entry, dict) or set(entry) != {"input", "output"}:
            raise InputError(f"{path}: expected an object with 'input' and 'output'")
        g = _labels(entry["input"], carrier, f"{path}.input")
        w = _labels(entry["output"], carrier, f"{path}.output")
        if table[g] is not None:
            raise InputError(f"{path}: duplicate entry for {carrier.format(g)}")
        table[g] = w
    missing = [g for g, w in enumerate(table) if w is None]
    if missing:
        raise InputError(f"operator: incomplete table, no entry for {carrier.format(missing[0])}")
    W = ConsequenceOperator(carrier, tuple(table))
    K = None
    if doc.get("K") is not None:
        if not isinstance(doc["K"], list):
            raise InputError("K: expected a list of label lists")
        K = frozenset(_labels(m, carrier, f"K[{k}]") for k, m in enumerate(doc["K"]))
    kappa = doc.get("kappa")
    if kappa is not None and (not isinstance(kappa, int) or isinstance(kappa, bool) or kappa < 0):
        raise InputError("kappa: expected a nonnegative integer")
    return W, K, kappa


def parse_structure(text: str) -> tuple[ConsequenceOperator, Optional[frozenset], Optional[int]]:
    return structure_from_document(_load(text))


def structure_document(W: ConsequenceOperator, K=None, kappa: Optional[int] = None) -> dict:
    c = W.carrier
    doc: dict = {
        "carrier": list(c.labels),
        "operator": [{"input": c.names(g), "output": c.names(w)} for g, w in enumerate(W.table)],
    }
    if K is not None:
        doc["K"] = [c.names(g) for g in sorted(K)]
    if kappa is not None:
        doc["kappa"] = kappa
    return doc


def emit_structure(W: ConsequenceOperator, K=None, kappa: Optional[int] = None) -> str:
    return emit_report(structure_document(W, K, kappa))


def emit_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# -- semantics documents ---------------------------------------------------

def functional_document(fsem: FunctionalSemantics) -> dict:
    return {
        "kind": "functional",
        "values": fsem.value_count,
        "designated": {str(i): sorted(d) for i, d in fsem.designated.items()},
        "pairs": sorted([str(i), str(j)] for i, j in fsem.pairs),
        "models": [list(m) for m in fsem.models],
    }


def s_document(s: SSemantics) -> dict:
    c = s.carrier
    return {
        "kind": "s",
        "points": [c.names(p.bivaluation) for p in s.points],
        "pairs": sorted([c.names(v), c.names(w)] for v, w in s.R),
    }


def semantics_from_document(doc: Any, carrier: Carrier):
    if not isinstance(doc, dict) or doc.get("kind") not in ("functional", "s"):
        raise InputError("semantics: expected an object with kind 'functional' or 's'")
    try:
        if doc["kind"] == "functional":
            designated = {int(i): frozenset(d) for i, d in doc["designated"].items()}
            pairs = frozenset((int(i), int(j)) for i, j in doc.get("pairs", [["1", "2"]]))
            return FunctionalSemantics(carrier, int(doc["values"]),
                                       tuple(tuple(m) for m in doc["models"]), designated, pairs)
        points = [_labels(p, carrier, f"semantics.points[{k}]") for k, p in enumerate(doc["points"])]
        pairs = {(_labels(v, carrier, f"semantics.pairs[{k}][0]"),
                  _labels(w, carrier, f"semantics.pairs[{k}][1]"))
                 for k, (v, w) in enumerate(doc["pairs"])}
        return SSemantics.normal(carrier, pairs, points)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"semantics: {exc}") from None


# -- reports ---------------------------------------------------------------

def verdict_document(verdict: AdequacyVerdict, carrier: Carrier) -> dict:
    return {
        "adequate": verdict.adequate,
        "restricted": verdict.restricted,
        "discrepancies": [
            {"input": carrier.names(g), "element": carrier.labels[a], "direction": d}
            for g, a, d in verdict.discrepancies
        ],
    }


def classify_report(W: ConsequenceOperator, K=None, kappa=None) -> dict:
    report: dict = {"command": "classify", "classification": classify(W).as_dict()}
    report["classification"]["finite_subset_bound"] = finite_subset_bound(W)
    report["r_type"] = {str(k): check_r_type(W, k) for k in range(1, W.n + 1)}
    findings = []
    theorem = anti_reflexive_theorem_check(W)
    if theorem is False:
        findings.append("global anti-reflexivity disagrees with vanishing on nonempty sets")
    if is_monotonic(W) and not is_reflexive(W):
        a, wK = s1_witness(W)
        report["s1_witness"] = {"element": W.carrier.labels[a], "K": [[W.carrier.labels[a]]]}
    if K is not None and kappa is not None:
        s_type = check_s_type(W, K, kappa)
        report["s_type"] = s_type
        if s_type:
            report["r_prop"] = dict(zip(
                ("complement_of_image", "disjoint_images", "image_avoids_members"),
                r_prop_checks(W, K, kappa).as_tuple(),
            ))
    report["findings"] = findings
    return report


def construct_report(W: ConsequenceOperator, target: str, K=None, kappa=None,
                     lenient: bool = False) -> dict:
    c = W.carrier
    report: dict = {"command": "construct", "target": target}
    findings: list[str] = []
    if target == "canonical":
        sem = canonical_semantics(W)
        verdict = compare_operators(W, induced_operator(sem))
        report["summary"] = {"models": len(sem.models), "indices": len(sem.indices)}
    elif target == "tarski2":
        sem = tarski_bivalent(W)
        verdict = compare_operators(W, induced_operator(sem))
        report["summary"] = {"models": len(sem.models), "indices": 1}
    elif target in ("mon4", "q3", "p3", "s3"):
        if target == "s3":
            if K is None or kappa is None:
                raise InputError("s3 needs K and kappa in the document or on the command line")
            fsem, verdict = build_s3(W, K, kappa)
            if not verdict.adequate:
                findings.append(
                    f"three-valued s-type construction disagrees with W on "
                    f"{len(verdict.discrepancies)} pairs; restricted adequacy "
                    f"{'holds' if verdict.restricted else 'fails'}"
                )
        else:
            fsem = {"mon4": build_mon4, "q3": build_q3, "p3": build_p3}[target](W)
            verdict = verify_adequacy(W, fsem)
        report["summary"] = {"values": fsem.value_count, "models": len(fsem.models)}
        report["semantics"] = functional_document(fsem)
    else:
        if target == "ss":
            if K is None or kappa is None:
                raise InputError("ss needs K and kappa in the document or on the command line")
            s, verdict = build_s_s(W, K, kappa)
            if not verdict.adequate:
                findings.append(f"S-semantics for the s-type operator disagrees on "
                                f"{len(verdict.discrepancies)} pairs")
        elif target in ("cm", "wct"):
            builder = build_s_cm if target == "cm" else build_s_wct
            s = builder(W, strict=not lenient)
            verdict = compare_operators(W, type2_operator(s, W))
            gaps = mandatory_gaps(s, W)
            if gaps:
                findings.append(f"{len(gaps)} premise sets lack their mandatory pair")
        else:
            s = {"smon": build_s_mon, "sq": build_s_q, "sp": build_s_p}[target](W)
            verdict = compare_operators(W, type1_operator(s))
        report["summary"] = {"points": len(s.points), "pairs": len(s.R)}
        report["semantics"] = s_document(s)
    report["adequacy"] = verdict_document(verdict, c)
    report["findings"] = findings
    return report


def verify_report(W: ConsequenceOperator, sem, entailment: str = "type1") -> dict:
    if isinstance(sem, FunctionalSemantics):
        verdict = verify_adequacy(W, sem)
    elif entailment == "type2":
        verdict = compare_operators(W, type2_operator(sem, W))
    else:
        verdict = compare_operators(W, type1_operator(sem))
    return {"command": "verify", "adequacy": verdict_document(verdict, W.carrier), "findings": []}


def minimality_report(W: ConsequenceOperator, max_values: int) -> dict:
    result = inferential_valuedness(W, max_values)
    report: dict = {
        "command": "minimality",
        "minimality": {
            "min_values": result.min_values,
            "per_mu": {str(k): v for k, v in result.per_mu.items()},
        },
        "findings": [],
    }
    if result.witness is not None:
        report["semantics"] = functional_document(result.witness)
    return report


def charq_report(W: ConsequenceOperator) -> dict:
    cq = charq_equivalents(W)
    names = ("q_operator", "infinity_fixed", "all_downward_closed", "extension", "absorption")
    findings = [] if cq.agree else ["the five q-type conditions disagree"]
    return {"command": "charq", "charq": dict(zip(names, cq.as_tuple())),
            "agree": cq.agree, "findings": findings}


# -- order-lambda families -------------------------------------------------

def family_from_document(doc: Any) -> tuple[OrderedFamily, Optional[int]]:
    """Family documents::

        {"base": ["a", "b"],
         "levels": [{"carrier": [...], "values": 2,
                     "models": [{"id": "m", "valuation": [{"input": [...], "value": 1}, ...]}]}],
         "injections": [{"from": 1, "to": 0, "map": ["a", "b"]}],
         "pairs": [[[0, 1], [0, 1]]],
         "kappa": 2}
    """
    if not isinstance(doc, dict):
        raise InputError("family: expected an object")
    base = _carrier(doc.get("base"), "base")
    levels = []
    carriers = []
    for i, lev in enumerate(doc.get("levels") or []):
        path = f"levels[{i}]"
        try:
            carrier = base if lev.get("carrier") is None else _carrier(lev["carrier"], f"{path}.carrier")
            valuation = {}
            ids = []
            for k, model in enumerate(lev["models"]):
                mid = model["id"]
                ids.append(mid)
                for e, entry in enumerate(model["valuation"]):
                    g = _labels(entry["input"], carrier, f"{path}.models[{k}].valuation[{e}].input")
                    valuation[(mid, g)] = int(entry["value"])
            levels.append(Level(carrier, tuple(ids), int(lev["values"]), valuation))
            carriers.append(carrier)
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"{path}: malformed level ({exc})") from None
    injections = {}
    for k, inj in enumerate(doc.get("injections") or []):
        try:
            i, j = int(inj["to"]), int(inj["from"])
            target = carriers[i]
            injections[(i, j)] = tuple(target.index(x) for x in inj["map"])
        except (KeyError, TypeError, IndexError, ValueError, StructureError) as exc:
            raise InputError(f"injections[{k}]: {exc}") from None
    try:
        pairs = frozenset(((int(p[0][0]), int(p[0][1])), (int(p[1][0]), int(p[1][1])))
                          for p in doc.get("pairs") or [])
        family = OrderedFamily(base, tuple(levels), injections, pairs)
    except (TypeError, IndexError, ValueError) as exc:
        raise InputError(f"pairs: {exc}") from None
    kappa = doc.get("kappa")
    return family, kappa


def hierarchy_report(family: OrderedFamily, kappa: Optional[int], action: str,
                     max_values: int) -> dict:
    problems = family_problems(family, kappa)
    report: dict = {"command": f"hierarchy {action}", "valid": not problems, "problems": problems}
    if problems:
        report["findings"] = []
        return report
    W = induced_operator_order(family)
    report["operator"] = structure_document(W)["operator"]
    if action == "search":
        result = order_minimality_search(family, max_values)
        report["search"] = {"least": result.least,
                            "per_mu": {str(k): v for k, v in result.per_mu.items()}}
    report["findings"] = []
    return report


# -- entry point -----------------------------------------------------------

def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conlab", description="Analyse finite consequence operators and print JSON reports.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="structure document (default: stdin)")
    common.add_argument("--kappa", type=int, help="overrides kappa from the document")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; analyses run single-threaded")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="structural properties and types")
    p = sub.add_parser("construct", parents=[common], help="build and verify a semantics")
    p.add_argument("--target", required=True, choices=TARGETS)
    p.add_argument("--lenient", action="store_true",
                   help="cm/wct: skip the type check and report what happens")
    p = sub.add_parser("verify", parents=[common], help="check a serialized semantics")
    p.add_argument("--semantics", required=True, help="semantics document")
    p.add_argument("--entailment", choices=("type1", "type2"), default="type1")
    p = sub.add_parser("minimality", parents=[common], help="least number of values")
    p.add_argument("--max-values", type=int, default=4)
    sub.add_parser("charq", parents=[common], help="the five q-type conditions")
    p = sub.add_parser("generate", help="print a structure document for a family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kappa", type=int)
    p.add_argument("--lam", type=int)
    p.add_argument("--pivot", type=int, default=0)
    p.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)
    p = sub.add_parser("hierarchy", parents=[common], help="order-lambda families")
    p.add_argument("action", choices=("eval", "search"))
    p.add_argument("--max-values", type=int, default=3)
    return parser


def run_command(args: argparse.Namespace) -> dict:
    if args.command == "generate":
        spec = GeneratorSpec(args.family, args.size, args.kappa, args.lam, args.pivot, args.seed)
        W, K, kappa = gen_named(spec)
        return structure_document(W, K, kappa)
    text = _read(args.input)
    if args.command == "hierarchy":
        family, kappa = family_from_document(_load(text))
        if args.kappa is not None:
            kappa = args.kappa
        return hierarchy_report(family, kappa, args.action, args.max_values)
    W, K, kappa = parse_structure(text)
    if args.kappa is not None:
        kappa = args.kappa
    if args.command == "classify":
        return classify_report(W, K, kappa)
    if args.command == "construct":
        return construct_report(W, args.target, K, kappa, args.lenient)
    if args.command == "verify":
        sem = semantics_from_document(_load(_read(args.semantics)), W.carrier)
        return verify_report(W, sem, args.entailment)
    if args.command == "minimality":
        return minimality_report(W, args.max_values)
    if args.command == "charq":
        return charq_report(W)
    raise InputError(f"unknown command {args.command!r}")


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run_command(args)
    except (PreconditionError, SearchCapError) as exc:
        print(f"conlab: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InputError, StructureError) as exc:
        print(f"conlab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(emit_report(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
