"""Modular data and the twist/braiding/central-charge verifications.

Conventions
-----------
``smat`` is the unnormalised s-matrix S~ with S~[u][u] = 1 and S~[u][i] = d(X_i),
the categorical dimension (u the unit). The normalised S = S~ / sqrt(D) with
D = sum_i d(X_i)^2, so the modular relations are checked in the forms

    S~^2 = D C,    (S~ T)^3 = p+ S~^2,    p+ = sum_i d(X_i)^2 theta_i,

which keep every entry inside Q(zeta_M). Twists are integer exponents t_i
with theta_i = zeta_M^t_i.

On the Z-isotypic part of X (x) Y the twist acts by theta_Z, and
theta_{X(x)Y} = (theta_X (x) theta_Y) beta^-2 forces the squared braiding to
act there by theta_Z / (theta_X theta_Y). Every braiding statement below is a
statement about these root-of-unity eigenvalues and their multiplicities
N[X][Y][Z].

Half-integer powers of D are handled by squaring: for beta in Q(zeta_M),
beta^(1/2) is an algebraic integer iff beta is, because the algebraic
integers are integrally closed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .cyclotomic import CycloNum
from .fusion_ring import (
    DimensionFunction,
    FusionRing,
    Violation,
    dimension_function_check,
    fp_dims,
    verify_axioms,
)
from .linalg import matmul
from .tordet import (
    BlockAutomorphism,
    NonIntegralExponentError,
    UnsupportedValueError,
    det_automorphism,
    power,
    torsion_value,
)

PASS, FAIL, UNSUPPORTED = "pass", "fail", "unsupported"


class NonModularError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str
    witness: str | None = None
    value: object = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"check": self.check, "status": self.status, "witness": self.witness}
        if self.value is not None:
            out["value"] = self.value
        return out


def verdict(check: str, ok: bool, witness: str | None = None, value=None) -> CheckResult:
    return CheckResult(check, PASS if ok else FAIL, None if ok else witness, value)


@dataclass(frozen=True, eq=False)
class ModularData:
    name: str
    conductor: int
    ring: FusionRing
    twists: tuple[int, ...]
    smat: tuple[tuple[CycloNum, ...], ...]

    def __post_init__(self) -> None:
        m, n = self.conductor, self.ring.rank
        if m < 1:
            raise ValueError("conductor must be positive")
        if len(self.twists) != n:
            raise ValueError(f"expected {n} twists, got {len(self.twists)}")
        if len(self.smat) != n or any(len(row) != n for row in self.smat):
            raise ValueError(f"smat must be {n}x{n}")
        object.__setattr__(self, "twists", tuple(int(t) % m for t in self.twists))
        rows = []
        for i, row in enumerate(self.smat):
            out = []
            for j, x in enumerate(row):
                x = x if isinstance(x, CycloNum) else CycloNum.rational(Fraction(x))
                if m % x.conductor:
                    raise ValueError(
                        f"smat[{i}][{j}] has conductor {x.conductor}, which does not divide {m}"
                    )
                out.append(x.lift(m))
            rows.append(tuple(out))
        object.__setattr__(self, "smat", tuple(rows))

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def unit(self) -> int:
        return self.ring.unit_index

    @property
    def dims(self) -> tuple[CycloNum, ...]:
        return self.smat[self.unit]

    def theta(self, i: int, power_: int = 1) -> CycloNum:
        return CycloNum.zeta(self.conductor, self.twists[i] * power_)


def categorical_dimensions(md: ModularData) -> DimensionFunction:
    return DimensionFunction(tuple(md.dims), "categorical")


def global_dimension(md: ModularData) -> CycloNum:
    return reduce(lambda acc, d: acc + d * d, md.dims, CycloNum.rational(0, md.conductor))


def gauss_sums(md: ModularData) -> tuple[CycloNum, CycloNum]:
    plus = CycloNum.rational(0, md.conductor)
    minus = CycloNum.rational(0, md.conductor)
    for i, d in enumerate(md.dims):
        d2 = d * d
        plus = plus + d2 * md.theta(i)
        minus = minus + d2 * md.theta(i, -1)
    if plus.is_zero():
        raise NonModularError("Gauss sum p+ vanishes: the data is not modular")
    return plus, minus


def smat_squared(md: ModularData) -> list[list[CycloNum]]:
    return matmul(md.smat, md.smat)


def st_cubed(md: ModularData) -> list[list[CycloNum]]:
    n = md.rank
    st = [[md.smat[i][j] * md.theta(j) for j in range(n)] for i in range(n)]
    return matmul(matmul(st, st), st)


def _charge_conjugation(md: ModularData, s2, dim: CycloNum) -> tuple[list[int] | None, list[Violation]]:
    n = md.rank
    out: list[Violation] = []
    if dim.is_zero():
        return None, [Violation("s_squared", (), "global dimension D = 0")]
    perm: list[int] = []
    for i in range(n):
        hits = []
        for j in range(n):
            if s2[i][j].is_zero():
                continue
            if s2[i][j] == dim:
                hits.append(j)
            else:
                out.append(
                    Violation("s_squared", (i, j), f"(S~^2)[{i}][{j}] = {s2[i][j]}, expected 0 or D = {dim}")
                )
        if len(hits) != 1:
            out.append(Violation("s_squared", (i,), f"row {i} of S~^2 / D has {len(hits)} unit entries"))
        perm.append(hits[0] if hits else -1)
    if out:
        return None, out
    for i in range(n):
        if perm[perm[i]] != i:
            out.append(Violation("charge_conjugation", (i,), "C^2 != I"))
    expected = md.ring.dual or md.ring.inferred_dual()
    if expected is not None and tuple(perm) != tuple(expected):
        out.append(
            Violation("charge_conjugation", (), f"C = {perm} disagrees with fusion duality {list(expected)}")
        )
    return (perm if not out else None), out


def verlinde_tensor(md: ModularData, dual: Sequence[int]) -> list[list[list[CycloNum]]]:
    n, u = md.rank, md.unit
    s = md.smat
    dim = global_dimension(md)
    weight = [(dim * s[u][x]).inverse() for x in range(n)]
    out = []
    for a in range(n):
        plane = []
        for b in range(n):
            ab = [s[a][x] * s[b][x] * weight[x] for x in range(n)]
            row = []
            for c in range(n):
                cd = dual[c]
                acc = CycloNum.rational(0, md.conductor)
                for x in range(n):
                    acc = acc + ab[x] * s[cd][x]
                row.append(acc)
            plane.append(row)
        out.append(plane)
    return out


def frobenius_schur_indicators(md: ModularData) -> list[CycloNum]:
    """nu_2(X_k) = (1/D) sum_ij N[i][j][k] d_i d_j (theta_i / theta_j)^2."""
    n, m = md.rank, md.conductor
    d = md.dims
    dim = global_dimension(md)
    if dim.is_zero():
        raise NonModularError("global dimension D = 0")
    inv = dim.inverse()
    out = []
    for k in range(n):
        acc = CycloNum.rational(0, m)
        for i in range(n):
            for j in range(n):
                mult = md.ring.tensor[i][j][k]
                if mult:
                    acc = acc + d[i] * d[j] * CycloNum.zeta(m, 2 * (md.twists[i] - md.twists[j])) * mult
        out.append(acc * inv)
    return out


def verify_modular(md: ModularData) -> list[Violation]:
    out = list(verify_axioms(md.ring))
    n, u = md.rank, md.unit
    s = md.smat
    if md.twists[u] != 0:
        out.append(Violation("unit_twist", (u,), f"theta_unit = zeta_{md.conductor}^{md.twists[u]} != 1"))
    if s[u][u] != 1:
        out.append(Violation("unit_entry", (u, u), f"S~[unit][unit] = {s[u][u]}, expected 1"))
    for i in range(n):
        for j in range(i + 1, n):
            if s[i][j] != s[j][i]:
                out.append(Violation("symmetry", (i, j), f"S~[{i}][{j}] = {s[i][j]} but S~[{j}][{i}] = {s[j][i]}"))
    dim = global_dimension(md)
    s2 = smat_squared(md)
    perm, bad = _charge_conjugation(md, s2, dim)
    out.extend(bad)
    try:
        plus, _ = gauss_sums(md)
    except NonModularError as exc:
        out.append(Violation("gauss_sum", (), str(exc)))
        plus = None
    if plus is not None:
        lhs = st_cubed(md)
        for i in range(n):
            for j in range(n):
                rhs = plus * s2[i][j]
                if lhs[i][j] != rhs:
                    out.append(
                        Violation("st_cubed", (i, j), f"((S~T)^3)[{i}][{j}] = {lhs[i][j]} but (p+ S~^2)[{i}][{j}] = {rhs}")
                    )
    dual = perm or md.ring.dual or md.ring.inferred_dual()
    if dual is not None and not dim.is_zero():
        # a self-dual simple has indicator +-1, any other simple 0
        for k, nu in enumerate(frobenius_schur_indicators(md)):
            allowed = (1, -1) if dual[k] == k else (0,)
            if not any(nu == a for a in allowed):
                out.append(
                    Violation(
                        "fs_indicator",
                        (k,),
                        f"nu_2 = {nu} for {'self-dual' if dual[k] == k else 'non-self-dual'} simple {k}",
                    )
                )
    if dual is None:
        out.append(Violation("verlinde", (), "no duality available for the Verlinde formula"))
    elif dim.is_zero() or any(s[u][x].is_zero() for x in range(n)):
        out.append(Violation("verlinde", (), "zero dimension: Verlinde formula undefined"))
    else:
        ver = verlinde_tensor(md, dual)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    v = ver[a][b][c]
                    want = md.ring.tensor[a][b][c]
                    if v != want:
                        out.append(
                            Violation("verlinde", (a, b, c), f"Verlinde gives {v}, fusion rules give {want}")
                        )
    return out


@dataclass(frozen=True)
class CentralCharge:
    value: Fraction  # representative in [0, 8)
    method: str  # "exact_sqrt" or "mod4_plus_numeric"
    sqrt_dim: CycloNum | None = None

    def __str__(self) -> str:
        return f"{self.value} (mod 8, {self.method})"


def central_charge(md: ModularData) -> CentralCharge:
    """c mod 8 with exp(pi i c / 4) = p+ / sqrt(D), sqrt(D) > 0.

    p+/p- = exp(pi i c / 2) pins c mod 4. Then s = p+ * exp(-pi i c' / 4) for
    one representative c' is a square root of D inside the cyclotomic field
    (s^2 = p+ p- = D); the sign making s positive fixes c mod 8.
    """
    plus, minus = gauss_sums(md)
    dim = global_dimension(md)
    ratio = plus / minus
    root = ratio.as_root_of_unity()
    if root is None:
        raise NonModularError(f"p+/p- = {ratio} is not a root of unity")
    _, e = root
    base = _lcm(2, md.conductor)  # ratio = zeta_base^e
    double = 2 * base
    s = plus * CycloNum.zeta(double, -e)
    if s * s == dim:
        if s.embed().real < 0:
            s = -s
        phase = (plus / s).as_root_of_unity()
        if phase is None:  # pragma: no cover - s^2 = D forces a root of unity
            raise NonModularError("p+/sqrt(D) is not a root of unity")
        _, f = phase
        big = _lcm(2, (plus / s).conductor)
        return CentralCharge(Fraction(8 * f, big) % 8, "exact_sqrt", s)
    # p+ p- != D: keep the exact mod-4 information, lift numerically
    c4 = Fraction(4 * e, base) % 4
    sqrt_d = math.sqrt(abs(dim.embed().real))
    arg = cmath.phase(plus.embed() / sqrt_d)
    best = min(
        (c4, c4 + 4),
        key=lambda c: abs(cmath.exp(1j * math.pi * float(c) / 4) - cmath.exp(1j * arg)),
    )
    return CentralCharge(best % 8, "mod4_plus_numeric", None)


def twist_orders(md: ModularData) -> list[int]:
    m = md.conductor
    return [m // math.gcd(m, t) for t in md.twists]


def twist_order(md: ModularData) -> int:
    return reduce(_lcm, twist_orders(md), 1)


def vafa_divisibility(md: ModularData) -> list[CheckResult]:
    """Order of theta divides D^(5/2), tested as D^5 / n^2 in A."""
    dim = global_dimension(md)
    d5 = dim**5
    out = []
    n = twist_order(md)
    q = d5 * Fraction(1, n * n)
    out.append(verdict("vafa.lcm_order", q.is_algebraic_integer(), f"D^5/n^2 = {q} is not integral (n = {n})", {"n": n}))
    for i, ni in enumerate(twist_orders(md)):
        qi = d5 * Fraction(1, ni * ni)
        out.append(
            verdict(
                f"vafa.object[{md.ring.basis_names[i]}]",
                qi.is_algebraic_integer(),
                f"D^5/n_i^2 = {qi} is not integral (n_i = {ni})",
                {"n": ni},
            )
        )
    return out


def dim_divisibility(md: ModularData) -> list[CheckResult]:
    """d(X) divides D^(1/2), tested as D / d(X)^2 in A."""
    dim = global_dimension(md)
    out = []
    for i, d in enumerate(md.dims):
        name = f"dim_divides_sqrtD[{md.ring.basis_names[i]}]"
        if d.is_zero():
            out.append(CheckResult(name, FAIL, "categorical dimension is zero (invalid data)"))
            continue
        q = dim / (d * d)
        out.append(verdict(name, q.is_algebraic_integer(), f"D/d^2 = {q} is not integral"))
    return out


def theta_power_identity(md: ModularData, d: DimensionFunction, casimir: bool = False) -> list[CheckResult]:
    """theta_X^(d(X) d(R)^2) = 1, or (z_X)^(d(X) d(R)^2) = 1 with z = theta^2."""
    label = "casimir_power" if casimir else "theta_power"
    big = d.regular_dimension()
    out = []
    for i in range(md.rank):
        name = f"{label}[{d.name}][{md.ring.basis_names[i]}]"
        exponent = d[i] * big * big
        t = md.twists[i] * (2 if casimir else 1)
        try:
            value = torsion_value(md.conductor, t, exponent)
        except NonIntegralExponentError as exc:
            out.append(CheckResult(name, UNSUPPORTED, str(exc)))
            continue
        out.append(verdict(name, value.is_identity(), f"exponent class {value.rep} is not integral"))
    return out


def braiding_spectrum(md: ModularData, x: int, y: int) -> list[tuple[int, int, int]]:
    """(eigenvalue exponent mod M, multiplicity, Z) of beta^2 on X (x) Y."""
    m = md.conductor
    t = md.twists
    return [
        ((t[z] - t[x] - t[y]) % m, mult, z)
        for z, mult in md.ring.product(x, y).items()
    ]


def squared_braiding(md: ModularData, x: int, y: int) -> BlockAutomorphism:
    blocks = {}
    for e, mult, z in braiding_spectrum(md, x, y):
        blocks[z] = BlockAutomorphism.scalar({z: mult}, CycloNum.zeta(md.conductor, e)).blocks[z]
    return BlockAutomorphism(blocks)


def det_beta_identity(md: ModularData, d: DimensionFunction) -> list[CheckResult]:
    """det(beta^2_{XY})^(d(R)) = 1 in the torsion model, for every pair."""
    big = d.regular_dimension()
    names = md.ring.basis_names
    out = []
    for x in range(md.rank):
        for y in range(md.rank):
            name = f"det_beta[{d.name}][{names[x]},{names[y]}]"
            try:
                v = det_automorphism(squared_braiding(md, x, y), d)
                w = power(v, big)
            except (NonIntegralExponentError, UnsupportedValueError) as exc:
                out.append(CheckResult(name, UNSUPPORTED, str(exc)))
                continue
            out.append(verdict(name, w.is_identity(), f"det(beta^2)^d(R) has class {w.rep}"))
    return out


def exponent(md: ModularData) -> int:
    m = md.conductor
    result = 1
    for x in range(md.rank):
        for y in range(md.rank):
            for e, _, _ in braiding_spectrum(md, x, y):
                result = _lcm(result, m // math.gcd(m, e))
    return result


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def braiding_power_trivial(md: ModularData, k: int) -> bool:
    """(beta^2)^k = 1 on every X (x) Y, checked on the exact eigenvalues."""
    for x in range(md.rank):
        for y in range(md.rank):
            for e, _, _ in braiding_spectrum(md, x, y):
                if CycloNum.zeta(md.conductor, e * k) != 1:
                    return False
    return True


def exponent_check(md: ModularData) -> CheckResult:
    n = exponent(md)
    if not braiding_power_trivial(md, n):
        return CheckResult("exponent", FAIL, f"(beta^2)^{n} != 1", n)
    for p in _prime_factors(n):
        if braiding_power_trivial(md, n // p):
            return CheckResult("exponent", FAIL, f"(beta^2)^{n // p} = 1 already; {n} not minimal", n)
    return CheckResult("exponent", PASS, None, n)


def casimir_orders(md: ModularData) -> list[CheckResult]:
    out = []
    for i, ni in enumerate(twist_orders(md)):
        z = md.theta(i, 2)
        k = ni // math.gcd(ni, 2)
        root = z.as_root_of_unity()
        ok = root is not None and root[0] == k and z**k == 1
        out.append(
            verdict(
                f"casimir_order[{md.ring.basis_names[i]}]",
                ok,
                f"z = theta^2 has order {root and root[0]}, expected {k}",
                k,
            )
        )
    return out


def det_t_exponent(md: ModularData) -> Fraction:
    """det(T) = exp(2 pi i q); returns q mod 1."""
    return Fraction(sum(md.twists), md.conductor) % 1


def detT_identity(md: ModularData, c: CentralCharge) -> CheckResult:
    """exp(pi i c N) = det(T)^12, compared as exact rational phases mod 1."""
    n = md.rank
    lhs = (c.value * n / 2) % 1
    rhs = (12 * det_t_exponent(md)) % 1
    return verdict(
        "detT_identity",
        lhs == rhs,
        f"exp(pi i c N) = exp(2 pi i {lhs}) but det(T)^12 = exp(2 pi i {rhs})",
        {"det_T_phase": str(det_t_exponent(md)), "cN_over_2_mod_1": str(lhs)},
    )


def charge_integrality(md: ModularData, c: CentralCharge | Fraction) -> CheckResult:
    """c N D^(5/2) / 2 in A, tested as (c N / 2)^2 D^5 in A."""
    value = c.value if isinstance(c, CentralCharge) else Fraction(c)
    half = value * md.rank / 2
    q = global_dimension(md) ** 5 * (half * half)
    return verdict("charge_integrality", q.is_algebraic_integer(), f"(cN/2)^2 D^5 = {q} is not integral")


def fp_exact(md: ModularData, tolerance: float = 1e-8) -> DimensionFunction:
    """The Frobenius-Perron character, read off a positive column of S~."""
    s, u, n = md.smat, md.unit, md.rank
    fp = fp_dims(md.ring)
    for j in range(n):
        if s[u][j].is_zero():
            continue
        inv = s[u][j].inverse()
        values = [s[i][j] * inv for i in range(n)]
        emb = [v.embed() for v in values]
        if all(abs(z.imag) < 1e-9 and z.real > 0 for z in emb):
            numeric = np.array([z.real for z in emb])
            if np.abs(numeric - fp.dims).max() > tolerance:
                raise NonModularError(
                    f"positive column {j} gives {numeric}, power iteration gives {fp.dims}"
                )
            d = DimensionFunction(tuple(values), "frobenius-perron")
            if not dimension_function_check(md.ring, d):
                raise NonModularError(f"column {j} is not a ring homomorphism")
            return d
    raise NonModularError("no column of S~ gives a positive character")


def galois_conjugate(md: ModularData, s: int) -> ModularData:
    """Apply zeta_M -> zeta_M^s to S~ and T."""
    return ModularData(
        name=f"{md.name}^sigma_{s}",
        conductor=md.conductor,
        ring=md.ring,
        twists=tuple(t * s for t in md.twists),
        smat=tuple(tuple(x.galois(s) for x in row) for row in md.smat),
    )
