"""Command-line front end.

Every command prints one JSON document (or DOT / markdown where offered)
with sorted keys, so identical invocations give identical bytes.  Exit
status 0 means the computation ran, whatever the verdict; 1 a rejected
input or contract violation; 2 a usage error; 3 a run-length/engine
conflict under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import __version__
from .eligibility import Caps, CriterionConflict, check_quotient, enumerate_quotients
from .findim import (
    DEFAULT_STEP_CAP,
    Finite,
    SelfInjective,
    SelfInjectivityUndecided,
    cartan_determinant,
    cartan_matrix,
    global_dimension,
    resolution_to_dict,
    resolve_simple,
    self_injectivity,
)
from .linalg import field_from_env, parse_field
from .normalform import GradedAlgebra, graded_basis
from .order import DEFAULT_ORDER_CAP, ideal_square_test, truncate
from .presentations import (
    GroupData,
    delete_vertices,
    mckay_presentation,
    presentation_from_json,
    presentation_to_dict,
    to_dot,
)

EXAMPLES = {"three-cycle": "three_cycle.json"}


class UsageError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _int_list(flag: str, text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _group(args) -> GroupData:
    if args.n is None:
        raise UsageError("--n: required")
    if args.n < 1:
        raise UsageError(f"--n: must be positive, got {args.n}")
    if args.weights is None:
        weights = [1, 1, args.n - 2]
    else:
        weights = _int_list("--weights", args.weights)
        if len(weights) != 3:
            raise UsageError(f"--weights: need three values, got {len(weights)}")
    try:
        return GroupData(args.n, tuple(weights))
    except ValueError as exc:
        raise UsageError(f"--weights: {exc}") from None


def _vertex_set(args, group: GroupData, required: bool = False) -> list[int]:
    text = getattr(args, "delete", None)
    if text is None:
        if required:
            raise UsageError("--delete: required")
        return []
    vs = _int_list("--delete", text)
    for v in vs:
        if not 0 <= v < group.n:
            raise UsageError(f"--delete: vertex {v} is outside 0..{group.n - 1}")
    return sorted(set(vs))


def _presentation(args):
    if getattr(args, "presentation", None) and getattr(args, "example", None):
        raise UsageError("--presentation and --example are mutually exclusive")
    if getattr(args, "example", None):
        name = EXAMPLES.get(args.example)
        if name is None:
            raise UsageError(f"--example: unknown example {args.example!r}; "
                             f"available: {', '.join(sorted(EXAMPLES))}")
        text = resources.files("qtwist.fixtures").joinpath(name).read_text()
        return presentation_from_json(text)
    if getattr(args, "presentation", None):
        try:
            with open(args.presentation) as fh:
                return presentation_from_json(fh.read())
        except OSError as exc:
            raise UsageError(f"--presentation: {exc}") from None
    group = _group(args)
    return delete_vertices(mckay_presentation(group), _vertex_set(args, group))


def _algebra(args, field):
    pres = _presentation(args)
    basis = graded_basis(pres, args.degree_cap, field)
    if not basis.stabilized:
        raise ValueError(f"algebra has not vanished by degree {basis.degree_cap}; "
                         "raise --degree-cap or check that it is finite dimensional")
    return GradedAlgebra(basis)


def _caps(args) -> dict:
    return {k: getattr(args, k) for k in ("degree_cap", "step_cap", "order_cap")
            if getattr(args, k, None) is not None}


# -- commands ------------------------------------------------------------------

def cmd_mckay(args, field) -> str:
    pres = mckay_presentation(_group(args))
    if args.dot or args.format == "dot":
        return to_dot(pres)
    return _dump(presentation_to_dict(pres))


def cmd_quotient(args, field) -> str:
    pres = _presentation(args)
    if args.format == "dot":
        return to_dot(pres)
    basis = graded_basis(pres, args.degree_cap, field)
    summary = {"finite": basis.stabilized, "degree_cap": basis.degree_cap,
               "by_degree": basis.dims()}
    if basis.stabilized:
        summary.update(total=basis.total_dim, nilpotency=basis.nilpotency,
                       by_degree=basis.dims()[: basis.nilpotency])
    return _dump({"version": 1, "field": field.name, "presentation": presentation_to_dict(pres),
                  "dims": summary})


def _vertex_index(alg, label: int) -> int:
    try:
        return alg.quiver.index_of(label)
    except ValueError:
        raise UsageError(f"--simple: vertex {label} is not in the quotient "
                         f"(vertices {list(alg.quiver.labels)})") from None


def cmd_resolve(args, field) -> str:
    alg = _algebra(args, field)
    res = resolve_simple(alg, _vertex_index(alg, args.simple), args.step_cap)
    doc = resolution_to_dict(res, with_differentials=args.differentials)
    doc["field"] = field.name
    return _dump(doc)


def cmd_gldim(args, field) -> str:
    alg = _algebra(args, field)
    verdict, resolutions = global_dimension(alg, args.step_cap)
    kind = "finite" if isinstance(verdict, Finite) else "at_least"
    return _dump({
        "version": 1,
        "field": field.name,
        "vertices": list(alg.quiver.labels),
        "gldim": {"kind": kind, "value": verdict.value},
        "step_cap": args.step_cap,
        "cartan_matrix": cartan_matrix(alg),
        "cartan_det": int(cartan_determinant(alg)),
        "resolutions": [resolution_to_dict(r) for r in resolutions],
    })


def cmd_selfinj(args, field) -> str:
    alg = _algebra(args, field)
    labels = alg.quiver.labels
    res = self_injectivity(alg)
    doc = {"version": 1, "field": field.name, "vertices": list(labels)}
    if isinstance(res, SelfInjective):
        doc["verdict"] = "self-injective"
        doc["sigma"] = {str(labels[i]): labels[j] for i, j in enumerate(res.sigma)}
        doc["witnesses"] = [
            {"P": labels[i], "I": labels[j], "equivariant": w.commutes(),
             "invertible": w.is_invertible()}
            for (i, j), w in zip(enumerate(res.sigma), res.nakayama.witnesses)
        ]
    else:
        undecided = isinstance(res, SelfInjectivityUndecided)
        doc["verdict"] = "undecided" if undecided else "not self-injective"
        doc["sigma"] = None
        doc["reason"] = res.reason
    return _dump(doc)


def cmd_eligibility(args, field) -> str:
    group = _group(args)
    V = _vertex_set(args, group, required=True)
    rep = check_quotient(group, V, Caps(**_caps(args)), field, strict=args.strict)
    return rep.to_json()


def cmd_enumerate(args, field) -> str:
    group = _group(args)
    if args.jobs < 1:
        raise UsageError(f"--jobs: must be positive, got {args.jobs}")
    cat = enumerate_quotients(group, Caps(**_caps(args)), args.up_to_rotation, args.jobs, field)
    if args.strict:
        for r in cat.reports:
            if r.criterion_agrees is False:
                raise CriterionConflict(
                    f"V={list(r.V)}: run-length rule predicts {r.criterion['predicts']} "
                    f"global dimension, engine gives {r.gldim['engine']}")
    return cat.to_markdown() if args.format == "md" else cat.to_json()


def cmd_order_check(args, field) -> str:
    group = _group(args)
    V = _vertex_set(args, group, required=True)
    if args.degree_cap is None:
        args.degree_cap = DEFAULT_ORDER_CAP
    trunc = truncate(group, args.degree_cap, field)
    return ideal_square_test(trunc, V, literal=args.literal).to_json()


# -- parser --------------------------------------------------------------------

def _add_group(p):
    p.add_argument("--n", type=int, help="group order")
    p.add_argument("--weights", help="weights a,b,c (default 1,1,n-2)")


def _add_source(p):
    _add_group(p)
    p.add_argument("--delete", help="vertices to delete, comma separated")
    p.add_argument("--presentation", help="presentation JSON file instead of --n/--weights")
    p.add_argument("--example", help="bundled presentation: " + ", ".join(sorted(EXAMPLES)))
    p.add_argument("--degree-cap", type=int, help="graded basis cap (default 3n+3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtwist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--field", help="rational or fp:<prime> (overrides QTWIST_FIELD)")
    parser.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mckay", help="McKay quiver presentation")
    _add_group(p)
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_mckay)

    p = sub.add_parser("quotient", help="quotient presentation and graded dimensions")
    _add_source(p)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("resolve", help="minimal projective resolution of a simple module")
    _add_source(p)
    p.add_argument("--simple", type=int, required=True, help="vertex label")
    p.add_argument("--cap", dest="step_cap", type=int, default=DEFAULT_STEP_CAP,
                   help="maximum number of resolution terms")
    p.add_argument("--differentials", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("gldim", help="global dimension verdict")
    _add_source(p)
    p.add_argument("--cap", dest="step_cap", type=int, default=DEFAULT_STEP_CAP)
    p.set_defaults(func=cmd_gldim)

    p = sub.add_parser("selfinj", help="self-injectivity and Nakayama permutation")
    _add_source(p)
    p.set_defaults(func=cmd_selfinj)

    for name, func in (("eligibility", cmd_eligibility), ("enumerate", cmd_enumerate)):
        p = sub.add_parser(name, help="eligibility report" if name == "eligibility"
                           else "catalogue of all idempotent quotients")
        _add_group(p)
        if name == "eligibility":
            p.add_argument("--delete", help="vertices to delete, comma separated")
        else:
            p.add_argument("--up-to-rotation", action="store_true")
            p.add_argument("--format", choices=["json", "md"], default="json")
            p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--degree-cap", type=int)
        p.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)
        p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
        p.add_argument("--strict", action="store_true",
                       help="fail when the run-length rule and the engine disagree")
        p.set_defaults(func=func)

    p = sub.add_parser("order-check", help="compare (K^2)_d with K_d in truncated R#G")
    _add_group(p)
    p.add_argument("--delete", help="vertices generating K, comma separated")
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--literal", action="store_true", help="form every product K_a K_b")
    p.set_defaults(func=cmd_order_check)
    return parser


def _check_caps(args) -> None:
    for flag in ("degree_cap", "step_cap", "order_cap"):
        v = getattr(args, flag, None)
        if v is not None and v < 1 and not (flag == "degree_cap" and args.command == "order-check"
                                            and v == 0):
            raise UsageError(f"--{flag.replace('_', '-')}: must be positive, got {v}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = parse_field(args.field) if args.field else field_from_env()
    except ValueError as exc:
        parser.error(f"--field: {exc}" if args.field else f"QTWIST_FIELD: {exc}")
    try:
        _check_caps(args)
        out = args.func(args, field)
    except UsageError as exc:
        parser.error(str(exc))
    except CriterionConflict as exc:
        print(f"qtwist: conflict: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        print(f"qtwist: error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
