"""Categorical determinants of automorphisms in semisimple categories.

A determinant lives in A (x) C*, A the algebraic integers. Every determinant
evaluated here is a product of symbols r^a with r a root of unity and a in A,
so only the torsion part is modelled: ``exp(2 pi i k / m) (x) a`` is stored as
the class of ``k a / m`` in (A (x) Q) / A. Two values agree exactly when their
representatives differ by an algebraic integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .cyclotomic import CycloNum
from .fusion_ring import DimensionFunction, FusionRing
from .linalg import determinant, matmul

__all__ = [
    "BlockAutomorphism",
    "DimensionFunction",
    "InvalidAutomorphismError",
    "NonIntegralExponentError",
    "TorsionDetValue",
    "UnsupportedValueError",
    "combine",
    "det_automorphism",
    "is_identity",
    "power",
    "torsion_value",
]


class NonIntegralExponentError(ValueError):
    pass


class UnsupportedValueError(ValueError):
    """The determinant is not a root of unity, so it has no torsion representative."""


class InvalidAutomorphismError(ValueError):
    pass


def _as_cyclo(value) -> CycloNum:
    if isinstance(value, CycloNum):
        return value
    return CycloNum.rational(Fraction(value))


@dataclass(frozen=True, eq=False)
class TorsionDetValue:
    rep: CycloNum

    @classmethod
    def identity(cls) -> TorsionDetValue:
        return cls(CycloNum.rational(0))

    def is_identity(self) -> bool:
        return self.rep.is_algebraic_integer()

    def __mul__(self, other: TorsionDetValue) -> TorsionDetValue:
        return TorsionDetValue(self.rep + other.rep)

    def __pow__(self, exponent) -> TorsionDetValue:
        return power(self, exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorsionDetValue):
            return NotImplemented
        return (self.rep - other.rep).is_algebraic_integer()

    __hash__ = None

    def __str__(self) -> str:
        return f"exp(2 pi i * ({self.rep}))"


def torsion_value(root_order: int, root_exponent: int, power_: CycloNum | int) -> TorsionDetValue:
    """The symbol (zeta_m^k)^a."""
    a = _as_cyclo(power_)
    if not a.is_algebraic_integer():
        raise NonIntegralExponentError(f"exponent {a} is not an algebraic integer")
    return TorsionDetValue(a * Fraction(root_exponent, root_order))


def combine(u: TorsionDetValue, v: TorsionDetValue) -> TorsionDetValue:
    return u * v


def power(u: TorsionDetValue, a) -> TorsionDetValue:
    a = _as_cyclo(a)
    if not a.is_algebraic_integer():
        raise NonIntegralExponentError(f"exponent {a} is not an algebraic integer")
    return TorsionDetValue(u.rep * a)


def is_identity(u: TorsionDetValue) -> bool:
    return u.is_identity()


Matrix = tuple[tuple[CycloNum, ...], ...]


def _freeze(matrix: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(_as_cyclo(x) for x in row) for row in matrix)


@dataclass(frozen=True, eq=False)
class BlockAutomorphism:
    """An automorphism of X = sum_Z Z^(m_Z) given by its action on each Hom(Z, X)."""

    blocks: Mapping[int, Matrix]

    def __post_init__(self) -> None:
        frozen = {}
        for z, block in sorted(self.blocks.items()):
            block = _freeze(block)
            if not block:
                continue
            if any(len(row) != len(block) for row in block):
                raise InvalidAutomorphismError(f"block for simple {z} is not square")
            frozen[z] = block
        object.__setattr__(self, "blocks", frozen)

    @property
    def object(self) -> dict[int, int]:
        return {z: len(b) for z, b in self.blocks.items()}

    @classmethod
    def scalar(cls, multiplicities: Mapping[int, int], value) -> BlockAutomorphism:
        value = _as_cyclo(value)
        blocks = {}
        for z, m in multiplicities.items():
            if m:
                blocks[z] = tuple(
                    tuple(value if i == j else CycloNum.rational(0) for j in range(m))
                    for i in range(m)
                )
        return cls(blocks)

    @classmethod
    def identity(cls, multiplicities: Mapping[int, int]) -> BlockAutomorphism:
        return cls.scalar(multiplicities, 1)

    def compose(self, other: BlockAutomorphism) -> BlockAutomorphism:
        if self.object != other.object:
            raise InvalidAutomorphismError("automorphisms act on different objects")
        return BlockAutomorphism(
            {z: matmul(self.blocks[z], other.blocks[z]) for z in self.blocks}
        )

    def direct_sum(self, other: BlockAutomorphism) -> BlockAutomorphism:
        blocks = dict(self.blocks)
        for z, b in other.blocks.items():
            if z not in blocks:
                blocks[z] = b
                continue
            a = blocks[z]
            p, q = len(a), len(b)
            zero = CycloNum.rational(0)
            blocks[z] = tuple(
                tuple(a[i][j] if j < p else zero for j in range(p + q)) for i in range(p)
            ) + tuple(tuple(zero if j < p else b[i][j - p] for j in range(p + q)) for i in range(q))
        return BlockAutomorphism(blocks)

    def block_determinants(self) -> dict[int, CycloNum]:
        return {z: determinant(b) for z, b in self.blocks.items()}


def tensor_with_identity(ring: FusionRing, x: int, a: BlockAutomorphism) -> BlockAutomorphism:
    """1_X (x) a on X (x) Y, for simple X.

    Hom(Z, X (x) Y) = sum_W Hom(Z, X (x) W) (x) Hom(W, Y), and 1 (x) a acts
    as identity (x) a_W on the W summand.
    """
    zero = CycloNum.rational(0)
    pieces: dict[int, list[Matrix]] = {}
    for w, block in a.blocks.items():
        for z, n in ring.product(x, w).items():
            k = len(block)
            kron = tuple(
                tuple(
                    block[i % k][j % k] if i // k == j // k else zero
                    for j in range(n * k)
                )
                for i in range(n * k)
            )
            pieces.setdefault(z, []).append(kron)
    result = BlockAutomorphism({})
    for z, mats in pieces.items():
        for m in mats:
            result = result.direct_sum(BlockAutomorphism({z: m}))
    return result


def det_automorphism(a: BlockAutomorphism, d: DimensionFunction) -> TorsionDetValue:
    """prod_Z det(a on Hom(Z, X))^d(Z), as a torsion class."""
    total = TorsionDetValue.identity()
    for z, det in a.block_determinants().items():
        if det.is_zero():
            raise InvalidAutomorphismError(f"block for simple {z} is singular")
        root = det.as_root_of_unity()
        if root is None:
            raise UnsupportedValueError(
                f"block determinant {det} for simple {z} is not a root of unity"
            )
        _, e = root
        # det = exp(2 pi i e / L), L = lcm(2, conductor)
        base = det.conductor if det.conductor % 2 == 0 else 2 * det.conductor
        total = total * torsion_value(base, e, d[z])
    return total
