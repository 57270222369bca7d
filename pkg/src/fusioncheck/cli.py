"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when any check fails or
is unsupported, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, io
from . import modular as mod
from .fusion_ring import FusionRing
from .modular import ModularData
from .report import (
    all_passed,
    modular_checks,
    render_text,
    ring_checks,
    vafa_report,
)


class InputError(Exception):
    pass


def _catalog_from_args(args) -> ModularData:
    params = {}
    for key in ("k", "n", "q", "nu", "form"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    try:
        return catalog.generate(catalog.CatalogEntry(args.family, params))
    except catalog.CatalogError as exc:
        raise InputError(str(exc)) from None


def _parse_catalog_spec(spec: str) -> ModularData:
    # catalog:<family>[:key=value,...]
    parts = spec.split(":", 2)
    params = {}
    if len(parts) == 3 and parts[2]:
        for item in parts[2].split(","):
            key, _, value = item.partition("=")
            try:
                params[key] = int(value)
            except ValueError:
                raise InputError(f"catalog parameter {item!r} must be key=integer") from None
    try:
        return catalog.generate(catalog.CatalogEntry(parts[1], params))
    except catalog.CatalogError as exc:
        raise InputError(str(exc)) from None


def _load_input(args) -> ModularData | FusionRing:
    if args.input is None and getattr(args, "family", None):
        return _catalog_from_args(args)
    if args.input is None:
        raise InputError("an input file, catalog:<family> spec or --family is required")
    if args.input.startswith("catalog:"):
        return _parse_catalog_spec(args.input)
    try:
        return io.load_path(args.input)
    except io.ParseError as exc:
        raise InputError(str(exc)) from None


def _which(args) -> tuple[str, ...]:
    return ("categorical", "fp") if args.dimension_function == "both" else (args.dimension_function,)


def _emit(args, results, extra: dict | None = None) -> int:
    if args.format == "json":
        payload = dict(extra or {})
        payload["checks"] = [r.to_dict() for r in results]
        payload["status"] = "pass" if all_passed(results) else "fail"
        sys.stdout.write(json.dumps(payload, indent=2, default=str) + "\n")
    else:
        if extra:
            for key, value in extra.items():
                sys.stdout.write(f"# {key}: {value}\n")
        sys.stdout.write(render_text(results))
    return 0 if all_passed(results) else 1


def cmd_generate(args) -> int:
    md = _catalog_from_args(args)
    text = io.dumps(io.modular_to_json(md))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check(args) -> int:
    data = _load_input(args)
    if isinstance(data, FusionRing):
        return _emit(args, ring_checks(data, args.tolerance))
    return _emit(args, modular_checks(data, args.tolerance, _which(args)), {"name": data.name})


def cmd_fpdim(args) -> int:
    data = _load_input(args)
    ring = data if isinstance(data, FusionRing) else data.ring
    results = ring_checks(ring, args.tolerance)
    extra = {}
    if isinstance(data, ModularData):
        from .report import dimension_functions

        _, notes = dimension_functions(data, ("fp",))
        results += notes
        extra["name"] = data.name
    fp = next((r.value for r in results if r.check == "ring.fp_dims" and r.value), None)
    if fp is not None:
        extra.update(
            dims=fp["dims"], regular=fp["regular"], fp_dim_category=fp["fp_dim_category"], residual=fp["residual"]
        )
    return _emit(args, results, extra)


def cmd_vafa(args) -> int:
    data = _load_input(args)
    if not isinstance(data, ModularData):
        raise InputError("vafa needs modular data, not a bare fusion ring")
    rep = vafa_report(data, _which(args))
    if args.format == "json":
        sys.stdout.write(json.dumps(rep.to_dict(), indent=2, default=str) + "\n")
    else:
        sys.stdout.write(f"# name: {rep.name}\n")
        sys.stdout.write(f"# twist orders: {rep.twist_orders} (n = {rep.order})\n")
        sys.stdout.write(f"# D = {rep.global_dimension} ~ {rep.global_dimension_numeric:.10g}\n")
        sys.stdout.write(f"# c = {rep.central_charge} (mod 8, {rep.central_charge_method})\n")
        sys.stdout.write(f"# exponent = {rep.exponent}\n")
        sys.stdout.write(render_text(rep.verdicts))
    return 0 if rep.passed else 1


def cmd_exponent(args) -> int:
    data = _load_input(args)
    if not isinstance(data, ModularData):
        raise InputError("exponent needs modular data, not a bare fusion ring")
    names = data.ring.basis_names
    spectrum = {
        f"{names[x]},{names[y]}": [
            {"Z": names[z], "eigenvalue": f"zeta_{data.conductor}^{e}", "multiplicity": mult}
            for e, mult, z in mod.braiding_spectrum(data, x, y)
        ]
        for x in range(data.rank)
        for y in range(data.rank)
    }
    result = mod.exponent_check(data)
    extra = {"name": data.name, "exponent": result.value}
    if args.format == "json":
        extra["braiding_spectrum"] = spectrum
    return _emit(args, [result], extra)


def cmd_report(args) -> int:
    data = _load_input(args)
    if isinstance(data, FusionRing):
        return _emit(args, ring_checks(data, args.tolerance))
    results = modular_checks(data, args.tolerance, _which(args))
    rep = vafa_report(data, _which(args))
    extra = {
        "name": data.name,
        "conductor": data.conductor,
        "twists": list(data.twists),
        "twist_orders": rep.twist_orders,
        "D": rep.global_dimension,
        "D_numeric": rep.global_dimension_numeric,
        "central_charge": rep.central_charge,
        "central_charge_method": rep.central_charge_method,
        "exponent": rep.exponent,
    }
    return _emit(args, results, extra)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusioncheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def catalog_args(p, required=False):
        p.add_argument("--family", choices=catalog.FAMILIES, required=required)
        p.add_argument("--k", type=int, help="level for su2_level_k")
        p.add_argument("--n", type=int, help="group order for pointed_Zn")
        p.add_argument("--q", type=int, help="quadratic form coefficient for pointed_Zn")
        p.add_argument("--nu", type=int, help="odd twist exponent for ising")
        p.add_argument("--form", type=int, help="twist exponent 2 or 3 for fibonacci")

    gen = sub.add_parser("generate", help="write catalog modular data as JSON")
    catalog_args(gen, required=True)
    gen.add_argument("--out", help="output path (default: stdout)")
    gen.set_defaults(func=cmd_generate)

    for verb, func, help_ in (
        ("check", cmd_check, "run the full verification battery"),
        ("fpdim", cmd_fpdim, "Frobenius-Perron dimensions and the regular element"),
        ("vafa", cmd_vafa, "twist-order, central-charge and determinant verdicts"),
        ("exponent", cmd_exponent, "exponent of the category and its braiding spectrum"),
        ("report", cmd_report, "full battery with derived quantities"),
    ):
        p = sub.add_parser(verb, help=help_)
        p.add_argument("input", nargs="?", help="JSON file or catalog:<family>[:k=v,...]")
        catalog_args(p)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--tolerance", type=float, default=1e-10)
        p.add_argument(
            "--dimension-function", choices=("categorical", "fp", "both"), default="both"
        )
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tolerance", 1.0) <= 0:
        parser.error("--tolerance must be positive")
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
