"""The verification battery: ring checks, modularity checks, divisibility and determinant checks."""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

from . import modular as mod
from .fusion_ring import (
    ConvergenceError,
    DimensionFunction,
    FusionRing,
    NotTransitiveError,
    fp_dims,
    is_transitive,
    regular_check,
    verify_axioms,
)
from .modular import FAIL, PASS, UNSUPPORTED, CheckResult, ModularData

MODULAR_KINDS = (
    "unit_twist",
    "unit_entry",
    "symmetry",
    "s_squared",
    "charge_conjugation",
    "gauss_sum",
    "st_cubed",
    "verlinde",
    "fs_indicator",
)
DIMENSION_FUNCTIONS = ("categorical", "fp")
MAX_WITNESSES = 5


def _summarize(items) -> str:
    items = [str(x) for x in items]
    text = "; ".join(items[:MAX_WITNESSES])
    if len(items) > MAX_WITNESSES:
        text += f"; ... ({len(items) - MAX_WITNESSES} more)"
    return text


def ring_checks(ring: FusionRing, tolerance: float = 1e-10) -> list[CheckResult]:
    out = []
    violations = verify_axioms(ring)
    out.append(mod.verdict("ring.axioms", not violations, _summarize(violations)))
    transitive = is_transitive(ring)
    out.append(mod.verdict("ring.transitive", transitive, "some pair (X, Z) is not connected"))
    if violations or not transitive:
        out.append(CheckResult("ring.fp_dims", UNSUPPORTED, "ring fails axioms or transitivity"))
        out.append(CheckResult("ring.regular_element", UNSUPPORTED, "no FP data"))
        return out
    try:
        fp = fp_dims(ring, tolerance)
    except (ConvergenceError, NotTransitiveError) as exc:
        out.append(CheckResult("ring.fp_dims", FAIL, str(exc)))
        out.append(CheckResult("ring.regular_element", UNSUPPORTED, "no FP data"))
        return out
    out.append(CheckResult("ring.fp_dims", PASS, None, fp.to_dict()))
    out.append(
        mod.verdict("ring.regular_element", regular_check(ring, fp, tolerance), "XR = d(X)R or RY = d(Y)R fails")
    )
    return out


def _group(results: list[CheckResult], name: str, key) -> list[CheckResult]:
    """Fold per-pair results into one line per key."""
    groups: OrderedDict = OrderedDict()
    for r in results:
        groups.setdefault(key(r), []).append(r)
    out = []
    for k, rs in groups.items():
        failed = [r for r in rs if r.status == FAIL]
        unsup = [r for r in rs if r.status == UNSUPPORTED]
        if failed:
            out.append(CheckResult(f"{name}{k}", FAIL, _summarize(f"{r.check}: {r.witness}" for r in failed)))
        elif unsup:
            out.append(CheckResult(f"{name}{k}", UNSUPPORTED, _summarize(r.witness for r in unsup)))
        else:
            out.append(CheckResult(f"{name}{k}", PASS))
    return out


def dimension_functions(md: ModularData, which=DIMENSION_FUNCTIONS) -> tuple[list[DimensionFunction], list[CheckResult]]:
    dfs, notes = [], []
    if "categorical" in which:
        dfs.append(mod.categorical_dimensions(md))
    if "fp" in which:
        try:
            dfs.append(mod.fp_exact(md))
            notes.append(CheckResult("fp_exact", PASS, None, [str(v) for v in dfs[-1].values]))
        except (mod.NonModularError, ConvergenceError, NotTransitiveError, ZeroDivisionError) as exc:
            notes.append(CheckResult("fp_exact", FAIL, str(exc)))
    return dfs, notes


def modular_checks(
    md: ModularData, tolerance: float = 1e-10, which=DIMENSION_FUNCTIONS
) -> list[CheckResult]:
    out = ring_checks(md.ring, tolerance)
    violations = mod.verify_modular(md)
    for kind in MODULAR_KINDS:
        bad = [v for v in violations if v.check == kind]
        out.append(mod.verdict(f"modular.{kind}", not bad, _summarize(bad)))

    dim = mod.global_dimension(md)
    positive = dim.real_embeddings_positive()
    out.append(
        mod.verdict(
            "global_dimension",
            dim.is_algebraic_integer() and positive,
            f"D = {dim} is not a totally positive algebraic integer",
            {"exact": str(dim), "numeric": dim.embed().real},
        )
    )
    try:
        plus, minus = mod.gauss_sums(md)
        out.append(mod.verdict("gauss_product", plus * minus == dim, f"p+ p- = {plus * minus} != D = {dim}"))
    except mod.NonModularError as exc:
        out.append(CheckResult("gauss_product", FAIL, str(exc)))

    charge = None
    try:
        charge = mod.central_charge(md)
        out.append(CheckResult("central_charge", PASS, None, {"c_mod_8": str(charge.value), "method": charge.method}))
    except mod.NonModularError as exc:
        out.append(CheckResult("central_charge", FAIL, str(exc)))

    out.extend(mod.vafa_divisibility(md))
    out.extend(mod.dim_divisibility(md))

    dfs, notes = dimension_functions(md, which)
    out.extend(notes)
    for d in dfs:
        out.extend(mod.theta_power_identity(md, d))
        out.extend(mod.theta_power_identity(md, d, casimir=True))
        out.extend(
            _group(
                mod.det_beta_identity(md, d),
                f"det_beta[{d.name}]",
                key=lambda r: "[" + r.check.split("][", 1)[1].split(",")[0] + ",*]",
            )
        )
    if "fp" in which and not any(d.name == "frobenius-perron" for d in dfs):
        out.append(CheckResult("theta_power[frobenius-perron]", UNSUPPORTED, "FP dimensions not identified exactly"))

    if charge is not None:
        out.append(mod.detT_identity(md, charge))
        out.append(mod.charge_integrality(md, charge))
        shifted = mod.charge_integrality(md, charge.value + 8)
        out.append(
            mod.verdict(
                "charge_integrality.representative",
                shifted.status == out[-1].status,
                "verdict changes when c is replaced by c + 8",
            )
        )
    else:
        for name in ("detT_identity", "charge_integrality"):
            out.append(CheckResult(name, UNSUPPORTED, "central charge unavailable"))
    out.append(mod.exponent_check(md))
    out.extend(mod.casimir_orders(md))
    return out


@dataclass
class VafaReport:
    name: str
    twist_orders: list[int]
    order: int
    global_dimension: str
    global_dimension_numeric: float
    central_charge: str | None
    central_charge_method: str | None
    exponent: int
    casimir_orders: list[int]
    verdicts: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.status == PASS for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "twist_orders": self.twist_orders,
            "n": self.order,
            "D": {"exact": self.global_dimension, "numeric": self.global_dimension_numeric},
            "central_charge": {
                "c_mod_8": self.central_charge,
                "method": self.central_charge_method,
                "sqrt_convention": "positive real square root of D",
            },
            "exponent": self.exponent,
            "casimir_orders": self.casimir_orders,
            "verdict": PASS if self.passed else FAIL,
            "checks": [v.to_dict() for v in self.verdicts],
        }


def vafa_report(md: ModularData, which=DIMENSION_FUNCTIONS) -> VafaReport:
    dim = mod.global_dimension(md)
    verdicts = list(mod.vafa_divisibility(md)) + mod.dim_divisibility(md)
    dfs, notes = dimension_functions(md, which)
    verdicts += notes
    for d in dfs:
        verdicts += mod.theta_power_identity(md, d)
        verdicts += mod.theta_power_identity(md, d, casimir=True)
        verdicts += mod.det_beta_identity(md, d)
    try:
        charge = mod.central_charge(md)
    except mod.NonModularError as exc:
        charge = None
        verdicts.append(CheckResult("central_charge", FAIL, str(exc)))
    if charge is not None:
        verdicts.append(mod.detT_identity(md, charge))
        verdicts.append(mod.charge_integrality(md, charge))
    verdicts.append(mod.exponent_check(md))
    verdicts += mod.casimir_orders(md)
    orders = mod.twist_orders(md)
    return VafaReport(
        name=md.name,
        twist_orders=orders,
        order=mod.twist_order(md),
        global_dimension=str(dim),
        global_dimension_numeric=dim.embed().real,
        central_charge=None if charge is None else str(charge.value),
        central_charge_method=None if charge is None else charge.method,
        exponent=mod.exponent(md),
        casimir_orders=[n // (2 if n % 2 == 0 else 1) for n in orders],
        verdicts=verdicts,
    )


def render_text(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        line = f"{r.status.upper():<11} {r.check}"
        if r.value is not None and r.status == PASS and not isinstance(r.value, dict):
            line += f" = {r.value}"
        lines.append(line)
        if r.status != PASS and r.witness:
            lines.append(f"    {r.witness}")
    return "\n".join(lines) + "\n"


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.status == PASS for r in results)
