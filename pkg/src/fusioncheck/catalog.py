"""Exact generators for standard modular data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CycloNum, zeta
from .fusion_ring import FusionRing
from .modular import ModularData

FAMILIES = ("trivial", "semion", "fibonacci", "ising", "toric_code", "su2_level_k", "pointed_Zn")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    parameters: dict = field(default_factory=dict)
    # golden values: D (float), c mod 8 (Fraction), twist orders, exponent
    expected: dict | None = None

    @property
    def label(self) -> str:
        if not self.parameters:
            return self.family
        args = ",".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        return f"{self.family}({args})"


def from_twists(name: str, conductor: int, ring: FusionRing, twists, dims) -> ModularData:
    """Modular data whose S~ is given by the balancing formula.

    S~[a][b] = theta_a^-1 theta_b^-1 sum_c N[a*][b][c] theta_c d_c.
    """
    n = ring.rank
    dual = ring.dual or ring.inferred_dual()
    if dual is None:
        raise CatalogError(f"{name}: fusion ring has no duality")
    theta = [zeta(conductor, t) for t in twists]
    dims = [d if isinstance(d, CycloNum) else CycloNum.rational(d) for d in dims]
    smat = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = CycloNum.rational(0, conductor)
            for c, mult in ring.product(dual[a], b).items():
                acc = acc + theta[c] * dims[c] * mult
            row.append(acc * zeta(conductor, -twists[a] - twists[b]))
        smat.append(tuple(row))
    return ModularData(name, conductor, ring, tuple(twists), tuple(smat))


def _pointed_ring(n: int) -> FusionRing:
    names = [str(a) for a in range(n)]
    return FusionRing.from_rule(names, lambda a, b: {(a + b) % n: 1}, 0, [(-a) % n for a in range(n)])


def trivial() -> ModularData:
    ring = FusionRing(("1",), 0, (((1,),),), (0,))
    return ModularData("trivial", 1, ring, (0,), ((CycloNum.rational(1),),))


def pointed(n: int, q: int = 1) -> ModularData:
    """Z_n with quadratic form theta_a = exp(2 pi i q a^2 / M), M = n (odd) or 2n (even)."""
    if n < 1:
        raise CatalogError("pointed_Zn needs n >= 1")
    if math.gcd(q, n) != 1:
        raise CatalogError(f"pointed_Zn: quadratic form q = {q} is degenerate on Z_{n} (gcd(q, n) != 1)")
    m = n if n % 2 else 2 * n
    twists = tuple((q * a * a) % m for a in range(n))
    return from_twists(f"pointed_Z{n}(q={q})", m, _pointed_ring(n), twists, [1] * n)


def semion() -> ModularData:
    md = pointed(2, 1)
    ring = FusionRing(("1", "s"), 0, md.ring.tensor, md.ring.dual)
    return ModularData("semion", md.conductor, ring, md.twists, md.smat)


def golden_ratio() -> CycloNum:
    # (1 + sqrt 5)/2 = 1 + zeta_5 + zeta_5^4
    return 1 + zeta(5) + zeta(5, 4)


def fibonacci(form: int = 2) -> ModularData:
    """theta_tau = zeta_5^form, form 2 or its Galois partner 3."""
    if form not in (2, 3):
        raise CatalogError("fibonacci form must be 2 or 3")
    ring = FusionRing.from_rule(
        ("1", "tau"), lambda a, b: {0: 1, 1: 1} if a == b == 1 else {a + b: 1}, 0, (0, 1)
    )
    return from_twists(f"fibonacci(theta=z5^{form})", 5, ring, (0, form), [1, golden_ratio()])


def ising(nu: int = 1) -> ModularData:
    """Ising-type data with theta_sigma = zeta_16^nu (nu odd), d_sigma = sqrt 2."""
    if nu % 2 == 0:
        raise CatalogError("ising needs odd nu")
    nu %= 16
    sqrt2 = zeta(8) + zeta(8, 7)
    rule = {
        (1, 1): {0: 1, 2: 1},
        (1, 2): {1: 1},
        (2, 1): {1: 1},
        (2, 2): {0: 1},
    }
    ring = FusionRing.from_rule(
        ("1", "sigma", "psi"),
        lambda a, b: rule.get((a, b), {a + b: 1}),
        0,
        (0, 1, 2),
    )
    name = "ising" if nu == 1 else f"ising(nu={nu})"
    return from_twists(name, 16, ring, (0, nu, 8), [1, sqrt2, 1])


def toric_code() -> ModularData:
    names = ("1", "e", "m", "psi")
    # Z2 x Z2 with e = (1,0), m = (0,1), psi = (1,1)
    ring = FusionRing.from_rule(names, lambda a, b: {a ^ b: 1}, 0, (0, 1, 2, 3))
    return from_twists("toric_code", 2, ring, (0, 0, 0, 1), [1, 1, 1, 1])


def su2(k: int) -> ModularData:
    """SU(2) at level k: labels a = 0..k (twice the spin)."""
    if k < 1:
        raise CatalogError("su2_level_k needs k >= 1")
    m = 4 * (k + 2)
    n = k + 1

    def rule(a: int, b: int) -> dict[int, int]:
        return {
            c: 1
            for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1)
            if (a + b + c) % 2 == 0
        }

    ring = FusionRing.from_rule([str(a) for a in range(n)], rule, 0, tuple(range(n)))
    h = 2 * (k + 2)
    q = zeta(h)  # zeta_{2(k+2)} = zeta_M^2
    denom = (q - q.inverse()).inverse()
    smat = tuple(
        tuple(
            ((zeta(h, (a + 1) * (b + 1)) - zeta(h, -(a + 1) * (b + 1))) * denom).lift(m)
            for b in range(n)
        )
        for a in range(n)
    )
    twists = tuple(a * (a + 2) for a in range(n))
    return ModularData(f"su2_level_{k}", m, ring, twists, smat)


def generate(entry: CatalogEntry | str, **params) -> ModularData:
    if isinstance(entry, str):
        entry = CatalogEntry(entry, params)
    p = dict(entry.parameters)
    family = entry.family
    try:
        if family == "trivial":
            return trivial()
        if family == "semion":
            return semion()
        if family == "fibonacci":
            return fibonacci(int(p.get("form", 2)))
        if family == "ising":
            return ising(int(p.get("nu", 1)))
        if family == "toric_code":
            return toric_code()
        if family == "su2_level_k":
            return su2(int(p["k"]))
        if family == "pointed_Zn":
            return pointed(int(p["n"]), int(p.get("q", 1)))
    except KeyError as exc:
        raise CatalogError(f"{family} needs parameter {exc}") from None
    raise CatalogError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


_GOLDEN = {
    "trivial": dict(D=1.0, c=Fraction(0), orders=(1,), exponent=1),
    "semion": dict(D=2.0, c=Fraction(1), orders=(1, 4), exponent=2),
    "fibonacci": dict(D=(5 + 5**0.5) / 2, c=Fraction(14, 5), orders=(1, 5), exponent=5),
    "ising": dict(D=4.0, c=Fraction(1, 2), orders=(1, 16, 2), exponent=8),
    "toric_code": dict(D=4.0, c=Fraction(0), orders=(1, 1, 1, 2), exponent=2),
}


def _su2_expected(k: int) -> dict:
    dim = (k + 2) / (2 * math.sin(math.pi / (k + 2)) ** 2)
    m = 4 * (k + 2)
    orders = tuple(m // math.gcd(m, a * (a + 2)) for a in range(k + 1))
    return dict(D=dim, c=Fraction(3 * k, k + 2) % 8, orders=orders)


def standard_entries() -> list[CatalogEntry]:
    """The benchmark list: small categories, su(2) levels 1-6, pointed Z3 and Z4."""
    entries = [CatalogEntry(f, {}, _GOLDEN[f]) for f in ("trivial", "semion", "fibonacci", "ising", "toric_code")]
    entries += [CatalogEntry("su2_level_k", {"k": k}, _su2_expected(k)) for k in range(1, 7)]
    entries += [
        CatalogEntry("pointed_Zn", {"n": 3, "q": 1}, dict(D=3.0, c=Fraction(2), orders=(1, 3, 3))),
        CatalogEntry("pointed_Zn", {"n": 4, "q": 1}, dict(D=4.0, c=Fraction(1), orders=(1, 8, 2, 8))),
    ]
    return entries
