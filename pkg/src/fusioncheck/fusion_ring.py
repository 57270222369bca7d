"""Finite Z+-rings with a distinguished basis and their Frobenius-Perron theory."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cyclotomic import CycloNum

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_ITER = 10**6


class NotTransitiveError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Violation:
    """One failed constraint; ``indices`` locate it in the input data."""

    check: str
    indices: tuple
    message: str

    def __str__(self) -> str:
        return f"{self.check} {self.indices}: {self.message}"


@dataclass(frozen=True)
class FusionRing:
    basis_names: tuple[str, ...]
    unit_index: int
    tensor: tuple[tuple[tuple[int, ...], ...], ...]  # tensor[a][b][c] = [a.b : c]
    dual: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis_names", tuple(self.basis_names))
        object.__setattr__(
            self, "tensor", tuple(tuple(tuple(int(x) for x in row) for row in plane) for plane in self.tensor)
        )
        if self.dual is not None:
            object.__setattr__(self, "dual", tuple(self.dual))
        n = len(self.basis_names)
        if len(self.tensor) != n or any(
            len(plane) != n or any(len(row) != n for row in plane) for plane in self.tensor
        ):
            raise ValueError(f"fusion tensor must have shape {n}x{n}x{n}")
        if not 0 <= self.unit_index < n:
            raise ValueError(f"unit index {self.unit_index} out of range")
        if self.dual is not None and (
            len(self.dual) != n or any(not 0 <= d < n for d in self.dual)
        ):
            raise ValueError("dual must be an index array of length n")

    @classmethod
    def from_rule(cls, names: Sequence[str], rule, unit: int = 0, dual=None) -> FusionRing:
        """Build from ``rule(a, b) -> {c: N}``."""
        n = len(names)
        tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                for c, mult in rule(a, b).items():
                    tensor[a][b][c] += mult
        return cls(tuple(names), unit, tensor, None if dual is None else tuple(dual))

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def N(self, a: int, b: int, c: int) -> int:
        return self.tensor[a][b][c]

    def product(self, a: int, b: int) -> dict[int, int]:
        return {c: m for c, m in enumerate(self.tensor[a][b]) if m}

    def array(self) -> np.ndarray:
        return np.array(self.tensor, dtype=np.int64).reshape(self.rank, self.rank, self.rank)

    def left_matrix(self, x: int) -> np.ndarray:
        """Matrix of Y -> X.Y acting on coordinate columns: [Z][Y] = N[X][Y][Z]."""
        return self.array()[x].T.astype(float)

    def right_matrix(self, y: int) -> np.ndarray:
        """Matrix of X -> X.Y acting on coordinate columns: [Z][X] = N[X][Y][Z]."""
        return self.array()[:, y, :].T.astype(float)

    def is_commutative(self) -> bool:
        n = self.rank
        return all(self.tensor[a][b] == self.tensor[b][a] for a in range(n) for b in range(n))

    def inferred_dual(self) -> tuple[int, ...] | None:
        """a* read off from N[a][b][unit] = delta(b, a*), if that rule is consistent."""
        n, u = self.rank, self.unit_index
        out = []
        for a in range(n):
            hits = [b for b in range(n) if self.tensor[a][b][u]]
            if len(hits) != 1 or self.tensor[a][hits[0]][u] != 1:
                return None
            out.append(hits[0])
        return tuple(out)


def verify_axioms(ring: FusionRing) -> list[Violation]:
    n, u, N = ring.rank, ring.unit_index, ring.tensor
    out: list[Violation] = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if N[a][b][c] < 0:
                    out.append(Violation("nonnegativity", (a, b, c), f"N = {N[a][b][c]} < 0"))
    for a in range(n):
        for b in range(n):
            want = int(a == b)
            if N[u][a][b] != want or N[a][u][b] != want:
                out.append(
                    Violation(
                        "unit",
                        (a, b),
                        f"N[u][{a}][{b}] = {N[u][a][b]}, N[{a}][u][{b}] = {N[a][u][b]}, expected {want}",
                    )
                )
    arr = ring.array()
    # (ab)c versus a(bc), coefficient on d
    left = np.einsum("abe,ecd->abcd", arr, arr)
    right = np.einsum("bcf,afd->abcd", arr, arr)
    for a, b, c, d in zip(*np.nonzero(left != right)):
        out.append(
            Violation(
                "associativity",
                (int(a), int(b), int(c), int(d)),
                f"((ab)c)_d = {left[a, b, c, d]} but (a(bc))_d = {right[a, b, c, d]}",
            )
        )
    if ring.dual is not None:
        dual = ring.dual
        for a in range(n):
            if dual[dual[a]] != a:
                out.append(Violation("dual", (a,), f"dual is not an involution: {a}** = {dual[dual[a]]}"))
            for b in range(n):
                want = int(b == dual[a])
                if N[a][b][u] != want:
                    out.append(
                        Violation("dual", (a, b), f"N[{a}][{b}][unit] = {N[a][b][u]}, expected {want}")
                    )
    return out


def is_transitive(ring: FusionRing) -> bool:
    arr = ring.array()
    right_ok = (arr.sum(axis=1) > 0).all()  # for each X, Z some Y1 with N[X][Y1][Z] > 0
    left_ok = (arr.sum(axis=0) > 0).all()  # for each X, Z some Y2 with N[Y2][X][Z] > 0
    return bool(right_ok and left_ok)


def perron_root(
    matrix: np.ndarray,
    start: np.ndarray | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[float, np.ndarray]:
    """Spectral radius and a nonnegative eigenvector of a nonnegative matrix.

    Plain power iteration first; if the iterates oscillate (a periodic,
    reducible matrix) the iteration restarts on A + I, whose dominant
    eigenvalue rho + 1 is strictly largest in modulus.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    v0 = np.ones(n) if start is None else np.asarray(start, dtype=float)
    if (v0 <= 0).any():
        raise ValueError("power iteration needs a strictly positive start vector")
    target = min(tolerance * 1e-3, 1e-12)
    for shift in (0.0, 1.0):
        b = a + shift * np.eye(n)
        v = v0 / np.linalg.norm(v0)
        # unshifted iterates of a periodic matrix never settle; give up early
        budget = min(max_iter, 2000) if shift == 0.0 else max_iter
        for _ in range(budget):
            w = b @ v
            norm = np.linalg.norm(w)
            if norm == 0:
                return 0.0, v
            lam = float(v @ w)
            w /= norm
            resid = np.abs(b @ w - lam * w).max()
            if resid <= target * max(1.0, lam) and np.abs(w - v).max() <= 1e-10:
                return lam - shift, w
            v = w
    raise ConvergenceError(f"power iteration did not converge within {max_iter} steps")


@dataclass(frozen=True)
class FPData:
    dims: np.ndarray
    regular: np.ndarray
    perron_eigenvalue: float
    fp_dim_category: float
    residual: float
    semisimple_normalized: bool = field(default=True)

    def to_dict(self) -> dict:
        return {
            "dims": [float(x) for x in self.dims],
            "regular": [float(x) for x in self.regular],
            "perron_eigenvalue": float(self.perron_eigenvalue),
            "fp_dim_category": float(self.fp_dim_category),
            "residual": float(self.residual),
            "semisimple_normalized": self.semisimple_normalized,
        }


def homomorphism_residual(ring: FusionRing, dims: np.ndarray) -> float:
    arr = ring.array().astype(float)
    lhs = np.outer(dims, dims)
    rhs = np.einsum("xyz,z->xy", arr, dims)
    return float(np.abs(lhs - rhs).max())


def regular_vector(
    ring: FusionRing,
    start: np.ndarray | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[float, np.ndarray]:
    """Perron eigenpair of right multiplication by the sum of the basis, unit entry 1."""
    arr = ring.array().astype(float)
    total = arr.sum(axis=1).T  # [Z][Y] = sum_X N[Y][X][Z]
    lam, vec = perron_root(total, start=start, tolerance=tolerance, max_iter=max_iter)
    vec = np.abs(vec)
    return lam, vec / vec[ring.unit_index]


def fp_dims(
    ring: FusionRing, tolerance: float = DEFAULT_TOLERANCE, max_iter: int = DEFAULT_MAX_ITER
) -> FPData:
    if not is_transitive(ring):
        raise NotTransitiveError("Frobenius-Perron dimensions need a transitive ring")
    lam, regular = regular_vector(ring, tolerance=tolerance, max_iter=max_iter)
    if (regular <= 0).any():
        raise ConvergenceError(f"Perron vector is not strictly positive: {regular}")
    dims = np.empty(ring.rank)
    for x in range(ring.rank):
        # the regular vector is a positive eigenvector of every left
        # multiplication, so it is an exact warm start
        dims[x], _ = perron_root(ring.left_matrix(x), start=regular, tolerance=tolerance, max_iter=max_iter)
    residual = homomorphism_residual(ring, dims)
    if residual >= tolerance:
        raise ConvergenceError(f"homomorphism residual {residual:.3e} exceeds tolerance {tolerance:.1e}")
    normalized = bool(np.abs(regular - dims).max() <= tolerance * max(1.0, float(dims.max())) * 10)
    if ring.dual is not None and not normalized:
        raise ConvergenceError(
            f"rigid ring but regular element {regular} differs from dimensions {dims}"
        )
    return FPData(
        dims=dims,
        regular=regular,
        perron_eigenvalue=lam,
        fp_dim_category=float(regular @ dims),
        residual=residual,
        semisimple_normalized=normalized,
    )


def regular_check(ring: FusionRing, fp: FPData, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    r = fp.regular
    scale = tolerance * max(1.0, float(np.abs(r).max()) * float(fp.dims.max()))
    for x in range(ring.rank):
        if np.abs(ring.left_matrix(x) @ r - fp.dims[x] * r).max() > scale:
            return False
        if np.abs(ring.right_matrix(x) @ r - fp.dims[x] * r).max() > scale:
            return False
    return True


@dataclass(frozen=True)
class DimensionFunction:
    """Exact values of a ring homomorphism K0 -> C on the basis."""

    values: tuple[CycloNum, ...]
    name: str = "custom"

    def __getitem__(self, index: int) -> CycloNum:
        return self.values[index]

    def __len__(self) -> int:
        return len(self.values)

    def of_object(self, multiplicities: dict[int, int]) -> CycloNum:
        total = CycloNum.rational(0)
        for z, m in multiplicities.items():
            total = total + self.values[z] * m
        return total

    def regular_dimension(self) -> CycloNum:
        """d(R) for R = sum d(X) X, i.e. sum d(X)^2."""
        total = CycloNum.rational(0)
        for v in self.values:
            total = total + v * v
        return total


def dimension_function_check(ring: FusionRing, d: DimensionFunction) -> bool:
    if len(d) != ring.rank or d[ring.unit_index] != 1:
        return False
    if all(v.is_zero() for v in d.values):
        return False
    n = ring.rank
    for x in range(n):
        for y in range(n):
            rhs = CycloNum.rational(0)
            for z, m in ring.product(x, y).items():
                rhs = rhs + d[z] * m
            if d[x] * d[y] != rhs:
                return False
    return True
