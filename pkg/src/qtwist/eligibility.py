"""Spherical-twist eligibility of idempotent quotients B = A/<e_V> of A = R#G.

B qualifies when it is finite dimensional, has finite global dimension or
is self-injective, and the kernel <e_V> is idempotent.  For the weights
(1, 1, n - 2) with n odd the run-length rule "no four successive surviving
vertices" is reported next to the engine's own verdict; the engine decides,
and any disagreement is flagged in the report.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .findim import (
    DEFAULT_STEP_CAP,
    AtLeast,
    Finite,
    SelfInjective,
    SelfInjectivityUndecided,
    cartan_determinant,
    global_dimension,
    self_injectivity,
)
from .linalg import RATIONAL, Field
from .normalform import GradedAlgebra, default_degree_cap, graded_basis
from .order import DEFAULT_ORDER_CAP, ideal_square_test, truncate
from .presentations import GroupData, delete_vertices, mckay_presentation

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Caps:
    degree_cap: int | None = None  # None: 3n + 3
    step_cap: int = DEFAULT_STEP_CAP
    order_cap: int = DEFAULT_ORDER_CAP

    def __post_init__(self):
        for name in ("step_cap", "order_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.degree_cap is not None and self.degree_cap < 1:
            raise ValueError("degree_cap must be positive")


class CriterionConflict(RuntimeError):
    pass


# -- vertex sets ---------------------------------------------------------------

def _normalize(n: int, V) -> tuple[int, ...]:
    vs = tuple(sorted(set(V)))
    for v in vs:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} is outside Z_{n}")
    return vs


def rotate(n: int, V, s: int) -> tuple[int, ...]:
    return tuple(sorted((v + s) % n for v in V))


def canonical(n: int, V) -> tuple[int, ...]:
    """Lexicographically least rotation of ``V``."""
    vs = _normalize(n, V)
    return min(rotate(n, vs, s) for s in range(n))


def longest_run(n: int, V) -> int:
    """Length of the longest cyclic run of residues outside ``V``."""
    vs = set(_normalize(n, V))
    if not vs:
        return n
    best = run = 0
    start = next(v for v in range(n) if v in vs)
    for k in range(1, n + 1):
        if (start + k) % n in vs:
            run = 0
        else:
            run += 1
            best = max(best, run)
    return best


def four_successive(n: int, V) -> bool:
    """Whether the complement of ``V`` has four cyclically consecutive residues."""
    if n < 1:
        raise ValueError("n must be positive")
    return longest_run(n, V) >= 4


def proper_subsets(n: int, up_to_rotation: bool = False) -> list[tuple[int, ...]]:
    subsets = [c for r in range(1, n) for c in itertools.combinations(range(n), r)]
    if up_to_rotation:
        subsets = sorted({canonical(n, c) for c in subsets})
    return sorted(subsets)


# -- kernel idempotency ----------------------------------------------------------

@lru_cache(maxsize=8)
def _truncated(group: GroupData, degree_cap: int, field: Field):
    return truncate(group, degree_cap, field)


@dataclass(frozen=True)
class KernelVerdict:
    structural: str
    numerical: str
    degree_cap: int
    equal: bool
    duality: bool | None
    table: dict

    @property
    def holds(self) -> bool:
        return self.equal


def kernel_idempotency(group: GroupData, V, degree_cap: int = DEFAULT_ORDER_CAP,
                       field: Field = RATIONAL) -> KernelVerdict:
    vs = _normalize(group.n, V)
    structural = ("holds by construction: p e_v q = (p e_v)(e_v q)" if vs
                  else "K = 0, so K^2 = K")
    rep = ideal_square_test(_truncated(group, degree_cap, field), vs)
    return KernelVerdict(structural, rep.status, degree_cap, rep.equal, rep.duality,
                         rep.to_dict()["table"])


# -- reports -------------------------------------------------------------------

@dataclass
class EligibilityReport:
    n: int
    weights: tuple[int, int, int]
    V: tuple[int, ...]
    canonical_V: tuple[int, ...]
    caps: dict
    field: str
    finite_dimensional: bool
    total_dim: int | None = None
    nilpotency: int | None = None
    degree_dims: list[int] = field(default_factory=list)
    criterion: dict | None = None
    gldim: dict = field(default_factory=dict)
    cartan_det: int | None = None
    self_injective: dict = field(default_factory=dict)
    kernel_idempotent: dict = field(default_factory=dict)
    criterion_agrees: bool | None = None
    eligible: str = "inconclusive"
    prediction: str = ""

    def to_dict(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "group": {"n": self.n, "weights": list(self.weights)},
            "V": list(self.V),
            "canonical_V": list(self.canonical_V),
            "caps": self.caps,
            "field": self.field,
            "dims": {"finite": self.finite_dimensional, "total": self.total_dim,
                     "nilpotency": self.nilpotency, "by_degree": self.degree_dims},
            "criterion": self.criterion,
            "criterion_agrees": self.criterion_agrees,
            "gldim": self.gldim,
            "cartan_det": self.cartan_det,
            "self_injective": self.self_injective,
            "kernel_idempotent": self.kernel_idempotent,
            "eligible": self.eligible,
            "prediction": self.prediction,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _idempotent_sum(V) -> str:
    return " + ".join(f"e_{v}" for v in V)


def _prediction(rep: EligibilityReport, sigma: dict | None) -> str:
    if rep.eligible != "yes":
        return "no twist predicted: the quotient is " + (
            "not eligible" if rep.eligible == "no" else "not decided within the caps")
    e = _idempotent_sum(rep.V)
    lines = [
        f"twist T = RHom_A(ker p, -) with ker p = <{e}> = A e A",
        "cotwist C = N_B[-4] (Nakayama functor of B shifted by -d-1, d = 3)",
        "T F = F N_B[-2]; RHom_A(ker p, B) = DB[-2]",
    ]
    if sigma is not None:
        inverse = {t: s for s, t in sigma.items()}
        lines.append("; ".join(f"RHom_A(ker p, S({i})) = S({inverse[i]})[-2]"
                               for i in sorted(inverse)))
    return "\n".join(lines)


def _gldim_verdict(alg: GradedAlgebra, step_cap: int) -> tuple[dict, int]:
    verdict, resolutions = global_dimension(alg, step_cap)
    labels = alg.quiver.labels
    det = int(cartan_determinant(alg))
    engine = {"kind": "finite", "value": verdict.value} if isinstance(verdict, Finite) \
        else {"kind": "at_least", "value": verdict.value}
    out = {"engine": engine, "kind": engine["kind"], "value": engine["value"], "source": "engine",
           "pd": {str(labels[i]): r.projective_dimension for i, r in enumerate(resolutions)},
           "checks": all(all(r.checks.values()) for r in resolutions)}
    if isinstance(verdict, AtLeast) and abs(det) != 1:
        # a finite global dimension forces det C = +-1
        out.update(kind="infinite", value=None, source="cartan determinant")
    return out, det


def check_quotient(group: GroupData, V, caps: Caps = Caps(), field: Field = RATIONAL,
                   strict: bool = False) -> EligibilityReport:
    """Check every hypothesis for B = A/<e_V>, A the McKay algebra of ``group``.

    With ``strict`` a disagreement between the run-length rule and the
    engine raises ``CriterionConflict``.
    """
    n = group.n
    vs = _normalize(n, V)
    if not vs or len(vs) == n:
        raise ValueError("V must be a nonempty proper subset of the vertices")
    degree_cap = caps.degree_cap
    pres = delete_vertices(mckay_presentation(group), vs)
    if degree_cap is None:
        degree_cap = default_degree_cap(pres)
    rep = EligibilityReport(
        n, group.weights, vs, canonical(n, vs),
        {"degree_cap": degree_cap, "step_cap": caps.step_cap, "order_cap": caps.order_cap},
        field.name, False)

    if group.in_criterion_family():
        four = four_successive(n, vs)
        rep.criterion = {"four_successive": four,
                         "predicts": "infinite" if four else "finite"}

    basis = graded_basis(pres, degree_cap, field)
    sigma = None
    if basis.stabilized:
        rep.finite_dimensional = True
        rep.total_dim, rep.nilpotency = basis.total_dim, basis.nilpotency
        rep.degree_dims = basis.dims()[: basis.nilpotency]
        alg = GradedAlgebra(basis)
        rep.gldim, rep.cartan_det = _gldim_verdict(alg, caps.step_cap)
        si = self_injectivity(alg)
        labels = alg.quiver.labels
        if isinstance(si, SelfInjective):
            sigma = {labels[i]: labels[j] for i, j in enumerate(si.sigma)}
            rep.self_injective = {"verdict": "yes",
                                  "sigma": {str(k): v for k, v in sigma.items()}}
        else:
            rep.self_injective = {
                "verdict": "undecided" if isinstance(si, SelfInjectivityUndecided) else "no",
                "sigma": None, "reason": si.reason}
    else:
        rep.gldim = {"kind": "inconclusive", "value": None, "source": "algebra did not stabilize"}
        rep.self_injective = {"verdict": "undecided", "sigma": None,
                              "reason": f"no stabilization below degree {degree_cap}"}

    kv = kernel_idempotency(group, vs, caps.order_cap, field)
    rep.kernel_idempotent = {"structural": kv.structural, "numerical": kv.numerical,
                             "degree_cap": kv.degree_cap, "equal": kv.equal,
                             "duality": kv.duality}

    if rep.criterion is not None and rep.finite_dimensional:
        engine_finite = rep.gldim["engine"]["kind"] == "finite"
        rep.criterion_agrees = engine_finite == (rep.criterion["predicts"] == "finite")
        if strict and not rep.criterion_agrees:
            raise CriterionConflict(
                f"n={n} V={list(vs)}: run-length rule predicts {rep.criterion['predicts']} "
                f"global dimension, engine gives {rep.gldim['engine']} "
                f"(Cartan determinant {rep.cartan_det})")

    if not rep.finite_dimensional:
        rep.eligible = "inconclusive"
    else:
        homological = rep.gldim["kind"] == "finite" or rep.self_injective["verdict"] == "yes"
        undecided = (rep.gldim["kind"] == "at_least"
                     and rep.self_injective["verdict"] != "yes")
        if not kv.equal:
            rep.eligible = "no"
        elif homological:
            rep.eligible = "yes"
        elif undecided or rep.self_injective["verdict"] == "undecided":
            rep.eligible = "inconclusive"
        else:
            rep.eligible = "no"
    rep.prediction = _prediction(rep, sigma)
    return rep


# -- enumeration -----------------------------------------------------------------

@dataclass
class Catalogue:
    n: int
    weights: tuple[int, int, int]
    up_to_rotation: bool
    reports: list[EligibilityReport]

    def summary(self) -> dict:
        counts = {"eligible": 0, "ineligible": 0, "inconclusive": 0}
        key = {"yes": "eligible", "no": "ineligible", "inconclusive": "inconclusive"}
        for r in self.reports:
            counts[key[r.eligible]] += 1
        counts["total"] = len(self.reports)
        counts["criterion_conflicts"] = sum(1 for r in self.reports if r.criterion_agrees is False)
        return counts

    def to_dict(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "group": {"n": self.n, "weights": list(self.weights)},
            "up_to_rotation": self.up_to_rotation,
            "summary": self.summary(),
            "reports": [r.to_dict() for r in self.reports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_markdown(self) -> str:
        head = ["V", "surviving", "dim", "Loewy", "4-run", "gldim", "self-inj", "K^2 = K", "eligible"]
        lines = [f"Idempotent quotients for n = {self.n}, weights {self.weights}"
                 + (" (up to rotation)" if self.up_to_rotation else ""), "",
                 "| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for r in self.reports:
            keep = ",".join(str(v) for v in range(self.n) if v not in r.V)
            g = r.gldim
            gl = {"finite": f"{g.get('value')}", "infinite": "inf",
                  "at_least": f">= {g.get('value')}"}.get(g.get("kind"), "?")
            four = "-" if r.criterion is None else ("yes" if r.criterion["four_successive"] else "no")
            if r.criterion_agrees is False:
                four += " (conflict)"
            cells = ["{" + ",".join(map(str, r.V)) + "}", keep, str(r.total_dim), str(r.nilpotency),
                     four, gl, r.self_injective.get("verdict", "?"),
                     "yes" if r.kernel_idempotent.get("equal") else "no", r.eligible]
            lines.append("| " + " | ".join(cells) + " |")
        s = self.summary()
        lines += ["", f"eligible: {s['eligible']}, ineligible: {s['ineligible']}, "
                      f"inconclusive: {s['inconclusive']}, "
                      f"criterion conflicts: {s['criterion_conflicts']}"]
        return "\n".join(lines) + "\n"


def _check_one(args):
    group, V, caps, field = args
    return check_quotient(group, V, caps, field)


def enumerate_quotients(group: GroupData, caps: Caps = Caps(), up_to_rotation: bool = False,
                        jobs: int = 1, field: Field = RATIONAL) -> Catalogue:
    """Reports for every nonempty proper V, in canonical order."""
    subsets = proper_subsets(group.n, up_to_rotation)
    work = [(group, V, caps, field) for V in subsets]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_check_one, work))
    else:
        reports = [_check_one(w) for w in work]
    return Catalogue(group.n, group.weights, up_to_rotation, reports)
