"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored in the power basis ``1, z, ..., z^(phi(M)-1)`` of
``Q(z)``, ``z = exp(2 pi i / M)``, reduced modulo the cyclotomic polynomial.
Internally a value is an integer numerator vector with one positive common
denominator, which keeps the hot loops on plain Python integers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

__all__ = [
    "CycloNum",
    "RationalPoly",
    "cyclotomic_polynomial",
    "euler_phi",
    "zeta",
]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _mobius(n: int) -> int:
    sign, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials, den monic; lowest degree first
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    """Per-conductor tables: powers of z reduced mod Phi_M, and traces."""

    def __init__(self, m: int):
        self.m = m
        self.phi = euler_phi(m)
        n = self.phi
        cyc = cyclotomic_polynomial(m)
        # powers[k] = coordinates of z^k, 0 <= k < m
        powers: list[tuple[int, ...]] = []
        vec = [0] * n
        vec[0] = 1
        for _ in range(m):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(n):
                    vec[j] -= top * cyc[j]
        self.powers = powers
        self.root_index: dict[tuple[int, ...], tuple[int, int]] = {}
        for k, p in enumerate(powers):
            self.root_index.setdefault(p, (1, k))
        for k, p in enumerate(powers):
            self.root_index.setdefault(tuple(-x for x in p), (-1, k))
        # Tr(z^j) is the Ramanujan sum c_m(j)
        self.traces = tuple(self._ramanujan(j) for j in range(n))

    def _ramanujan(self, j: int) -> int:
        g = math.gcd(j, self.m)
        return sum(_mobius(self.m // d) * d for d in range(1, g + 1) if g % d == 0)

    def fold(self, exps: Sequence[int]) -> list[int]:
        """Reduce a coefficient vector on z^0, z^1, ... (any length)."""
        m, n = self.m, self.phi
        if len(exps) <= n:
            return list(exps) + [0] * (n - len(exps))
        acc = [0] * m
        for k, c in enumerate(exps):
            if c:
                acc[k % m] += c
        out = acc[:n]
        powers = self.powers
        for k in range(n, m):
            c = acc[k]
            if c:
                for j, pj in enumerate(powers[k]):
                    if pj:
                        out[j] += c * pj
        return out


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    return _Field(m)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial with rational coefficients, lowest degree first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        if len(self.coefficients) == 1 and self.coefficients[0] == 0:
            return -1
        return len(self.coefficients) - 1

    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __mul__(self, other: RationalPoly) -> RationalPoly:
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPoly(tuple(out))

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0 and self.degree >= 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(f"+ {mono}")
            elif mono and c == -1:
                terms.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c)) + (f"*{mono}" if mono else "")
                terms.append(f"{sign} {body}")
        text = " ".join(terms) or "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected a rational, got {type(value).__name__}")


class CycloNum:
    """An element of Q(zeta_M) in the reduced power basis.

    Mixed-conductor arithmetic lifts both operands to Q(zeta_lcm). Instances
    are immutable; ints and Fractions are accepted wherever a CycloNum is.
    """

    __slots__ = ("_m", "_num", "_den")

    def __init__(self, conductor: int, coeffs: Iterable = ()):
        field = _field(conductor)
        fracs = [_parse_rational(c) for c in coeffs]
        if len(fracs) > field.phi:
            raise ValueError(
                f"conductor {conductor} takes at most {field.phi} coefficients, got {len(fracs)}"
            )
        den = reduce(_lcm, (f.denominator for f in fracs), 1)
        num = [f.numerator * (den // f.denominator) for f in fracs]
        num += [0] * (field.phi - len(num))
        self._set(conductor, num, den)

    def _set(self, m: int, num: list[int], den: int) -> None:
        if den < 0:
            num, den = [-x for x in num], -den
        g = reduce(math.gcd, num, den)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self._m = m
        self._num = tuple(num)
        self._den = den

    @classmethod
    def _raw(cls, m: int, num: list[int], den: int = 1) -> CycloNum:
        obj = cls.__new__(cls)
        obj._set(m, num, den)
        return obj

    # ---- constructors ----------------------------------------------------

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycloNum:
        """The root of unity exp(2 pi i k / m) as an element of Q(zeta_m)."""
        field = _field(m)
        return cls._raw(m, list(field.powers[k % m]))

    @classmethod
    def rational(cls, value, conductor: int = 1) -> CycloNum:
        value = _parse_rational(value)
        num = [0] * euler_phi(conductor)
        num[0] = value.numerator
        return cls._raw(conductor, num, value.denominator)

    @classmethod
    def from_exponents(cls, m: int, terms: dict[int, object] | Sequence) -> CycloNum:
        """Build sum c_k z^k from exponent -> coefficient (exponents taken mod m)."""
        items = terms.items() if isinstance(terms, dict) else enumerate(terms)
        fracs: dict[int, Fraction] = {}
        for k, c in items:
            fracs[k % m] = fracs.get(k % m, Fraction(0)) + _parse_rational(c)
        den = reduce(_lcm, (f.denominator for f in fracs.values()), 1)
        exps = [0] * m
        for k, f in fracs.items():
            exps[k] += f.numerator * (den // f.denominator)
        return cls._raw(m, _field(m).fold(exps), den)

    # ---- accessors -------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._m

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # ---- conductor changes ----------------------------------------------

    def lift(self, m: int) -> CycloNum:
        """Embed into Q(zeta_m); m must be a multiple of the conductor."""
        if m == self._m:
            return self
        if m % self._m:
            raise ValueError(f"cannot lift conductor {self._m} to {m}")
        step = m // self._m
        exps = [0] * m
        for j, c in enumerate(self._num):
            exps[j * step] = c
        return CycloNum._raw(m, _field(m).fold(exps), self._den)

    def galois(self, s: int) -> CycloNum:
        """Apply the automorphism z -> z^s, gcd(s, M) = 1."""
        m = self._m
        if math.gcd(s, m) != 1:
            raise ValueError(f"{s} is not a unit modulo {m}")
        exps = [0] * m
        for j, c in enumerate(self._num):
            exps[(j * s) % m] += c
        return CycloNum._raw(m, _field(m).fold(exps), self._den)

    def conjugate(self) -> CycloNum:
        return self.galois(-1)

    @staticmethod
    def common(*values: CycloNum) -> list[CycloNum]:
        m = reduce(_lcm, (v._m for v in values), 1)
        return [v.lift(m) for v in values]

    # ---- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> CycloNum | None:
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(other)
        return None

    def __add__(self, other) -> CycloNum:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = (self, other) if self._m == other._m else CycloNum.common(self, other)
        den = _lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return CycloNum._raw(a._m, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum._raw(self._m, [-x for x in self._num], self._den)

    def __sub__(self, other) -> CycloNum:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycloNum:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycloNum._raw(
                self._m, [x * other.numerator for x in self._num], self._den * other.denominator
            )
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = (self, other) if self._m == other._m else CycloNum.common(self, other)
        if a.is_rational():
            return b * Fraction(a._num[0], a._den)
        if b.is_rational():
            return a * Fraction(b._num[0], b._den)
        n = len(a._num)
        prod = [0] * (2 * n - 1)
        bn = [(j, y) for j, y in enumerate(b._num) if y]
        for i, x in enumerate(a._num):
            if x:
                for j, y in bn:
                    prod[i + j] += x * y
        return CycloNum._raw(a._m, _field(a._m).fold(prod), a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self * (1 / Fraction(other))
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> CycloNum:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> CycloNum:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloNum.rational(1, self._m)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._m != other._m:
            a, b = CycloNum.common(self, other)
        else:
            a, b = self, other
        return a._den == b._den and a._num == b._num

    __hash__ = None  # equality spans conductors, so no cheap consistent hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ---- linear algebra views -------------------------------------------

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of x -> self * x on coordinate vectors (columns = images of z^j)."""
        n = len(self._num)
        cols = []
        for j in range(n):
            exps = [0] * (n + j)
            exps[j:] = self._num
            cols.append(_field(self._m).fold(exps))
        return [[Fraction(cols[j][i], self._den) for j in range(n)] for i in range(n)]

    def _integer_char_poly(self) -> list[int]:
        """Char poly of den*self (an integral element), highest degree first.

        Uses Newton's identities on the power sums Tr((den*a)^k), all of which
        are integers; e_k = coefficient of (-1)^k x^(n-k).
        """
        field = _field(self._m)
        n = field.phi
        traces = field.traces
        base_num = list(self._num)
        power = base_num
        sums = []
        for k in range(1, n + 1):
            sums.append(sum(c * t for c, t in zip(power, traces) if c))
            if k < n:
                prod = [0] * (2 * n - 1)
                for i, x in enumerate(power):
                    if x:
                        for j, y in enumerate(base_num):
                            if y:
                                prod[i + j] += x * y
                power = field.fold(prod)
        e = [1]
        for k in range(1, n + 1):
            acc = 0
            for i in range(1, k + 1):
                term = e[k - i] * sums[i - 1]
                acc += term if i % 2 else -term
            if acc % k:
                raise ArithmeticError("non-integral elementary symmetric function")
            e.append(acc // k)
        return e

    def char_poly(self) -> RationalPoly:
        """det(x I - mult_matrix(self)), a monic polynomial of degree phi(M)."""
        e = self._integer_char_poly()
        n, den = len(e) - 1, self._den
        coeffs = [Fraction(0)] * (n + 1)
        for k, ek in enumerate(e):
            coeffs[n - k] = Fraction((-1) ** k * ek, den**k)
        return RationalPoly(tuple(coeffs))

    def is_algebraic_integer(self) -> bool:
        """True iff the characteristic polynomial has integer coefficients."""
        if self._den == 1:
            return True
        e = self._integer_char_poly()
        den = self._den
        return all(ek % den**k == 0 for k, ek in enumerate(e))

    def inverse(self) -> CycloNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return CycloNum.rational(Fraction(self._den, self._num[0]), self._m)
        from .linalg import solve_integer_system

        n = len(self._num)
        cols = []
        for j in range(n):
            exps = [0] * (n + j)
            exps[j:] = self._num
            cols.append(_field(self._m).fold(exps))
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [self._den] + [0] * (n - 1)
        sol = solve_integer_system(matrix, rhs)
        den = reduce(_lcm, (x.denominator for x in sol), 1)
        return CycloNum._raw(self._m, [x.numerator * (den // x.denominator) for x in sol], den)

    # ---- roots of unity and embeddings ----------------------------------

    def as_root_of_unity(self) -> tuple[int, int] | None:
        """Return (order, e) with self = exp(2 pi i e / L), L = lcm(2, M), or None."""
        if self._den != 1:
            return None
        hit = _field(self._m).root_index.get(self._num)
        if hit is None:
            return None
        sign, k = hit
        m = self._m
        big = _lcm(2, m)
        e = k * (big // m)
        if sign < 0:
            e += big // 2
        e %= big
        return big // math.gcd(big, e), e

    def embed(self) -> complex:
        m = self._m
        total = sum(c * cmath.exp(2j * math.pi * k / m) for k, c in enumerate(self._num) if c)
        return complex(total) / self._den

    def real_embeddings_positive(self, tol: float = 1e-9) -> bool:
        """Every Galois conjugate embeds as a positive real number."""
        m = self._m
        for s in range(1, max(m, 2)):
            if math.gcd(s, m) == 1:
                z = self.galois(s).embed()
                if abs(z.imag) > tol * max(1.0, abs(z)) or z.real <= 0:
                    return False
        return True

    # ---- serialisation and display --------------------------------------

    def to_json(self) -> dict:
        return {"conductor": self._m, "coeffs": [_fmt_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> CycloNum:
        if not isinstance(obj, dict):
            raise ValueError("cyclotomic number must be an object with conductor and coeffs")
        extra = set(obj) - {"conductor", "coeffs"}
        if extra:
            raise ValueError(f"unknown field(s) in cyclotomic number: {sorted(extra)}")
        m = obj.get("conductor")
        coeffs = obj.get("coeffs")
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise ValueError("cyclotomic number field 'conductor' must be a positive integer")
        if not isinstance(coeffs, list) or not all(isinstance(c, str) for c in coeffs):
            raise ValueError("cyclotomic number field 'coeffs' must be a list of rational strings")
        if len(coeffs) != euler_phi(m):
            raise ValueError(
                f"cyclotomic number field 'coeffs' must have length phi({m}) = {euler_phi(m)}"
            )
        try:
            return cls(m, coeffs)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cyclotomic number field 'coeffs': {exc}") from None

    def __repr__(self) -> str:
        return f"CycloNum({self._m}, [{', '.join(repr(str(c)) for c in self.coeffs)}])"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (f"z{self._m}" if k == 1 else f"z{self._m}^{k}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _fmt_rational(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def zeta(m: int, k: int = 1) -> CycloNum:
    return CycloNum.zeta(m, k)
