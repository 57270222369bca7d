from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fusioncheck.catalog import golden_ratio
from fusioncheck.cyclotomic import CycloNum, zeta
from fusioncheck.fusion_ring import (
    ConvergenceError,
    DimensionFunction,
    FusionRing,
    NotTransitiveError,
    dimension_function_check,
    fp_dims,
    homomorphism_residual,
    is_transitive,
    perron_root,
    regular_check,
    regular_vector,
    verify_axioms,
)
from ringgen import random_commutative_ring

GOLDEN = (1 + 5**0.5) / 2


def trivial_ring():
    return FusionRing(("1",), 0, (((1,),),), (0,))


def fibonacci_ring(tau_tau=(1, 1)):
    rule = lambda a, b: dict(enumerate(tau_tau)) if a == b == 1 else {a + b: 1}
    return FusionRing.from_rule(("1", "tau"), rule, 0, (0, 1))


def ising_ring():
    table = {(1, 1): {0: 1, 2: 1}, (1, 2): {1: 1}, (2, 1): {1: 1}, (2, 2): {0: 1}}
    return FusionRing.from_rule(("1", "sigma", "psi"), lambda a, b: table.get((a, b), {a + b: 1}), 0, (0, 1, 2))


def group_ring(factors):
    elements = list(itertools.product(*(range(f) for f in factors)))
    index = {g: i for i, g in enumerate(elements)}

    def mul(a, b):
        g = tuple((x + y) % f for x, y, f in zip(elements[a], elements[b], factors))
        return {index[g]: 1}

    dual = [index[tuple((-x) % f for x, f in zip(g, factors))] for g in elements]
    return FusionRing.from_rule([str(g) for g in elements], mul, 0, dual)


def abelian_groups(max_order):
    """Cyclic-factor lists for every abelian group of order <= max_order."""
    out = []
    for n in range(1, max_order + 1):
        seen = set()
        for k in range(1, 4):
            for fs in itertools.product(range(2, n + 1), repeat=k):
                if math.prod(fs) != n or any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
                    continue
                seen.add(fs)
        out.extend([list(fs) for fs in sorted(seen)] or [[1]])
    return out


# ---- axioms -------------------------------------------------------------------


def test_axioms_of_standard_rings():
    assert verify_axioms(trivial_ring()) == []
    assert verify_axioms(fibonacci_ring()) == []
    assert verify_axioms(ising_ring()) == []


def _brute_force_associativity(ring):
    n = ring.rank
    arr = ring.array()
    return {
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(n), repeat=4)
        if sum(arr[a, b, e] * arr[e, c, d] for e in range(n)) != sum(arr[b, c, f] * arr[a, f, d] for f in range(n))
    }


def test_altered_fibonacci_is_still_associative():
    # any unital rank-2 ring x^2 = a + b x is a quotient of Z[x], hence associative
    ring = fibonacci_ring(tau_tau=(1, 2))
    assert _brute_force_associativity(ring) == set()
    assert verify_axioms(ring) == []
    fp = fp_dims(ring)
    assert fp.dims[1] == pytest.approx(1 + 2**0.5)


def test_altered_ising_breaks_associativity():
    # sigma * psi = sigma + psi instead of sigma
    table = {(1, 1): {0: 1, 2: 1}, (1, 2): {1: 1, 2: 1}, (2, 1): {1: 1, 2: 1}, (2, 2): {0: 1}}
    ring = FusionRing.from_rule(("1", "sigma", "psi"), lambda a, b: table.get((a, b), {a + b: 1}), 0)
    bad = _brute_force_associativity(ring)
    assert bad
    reported = {v.indices for v in verify_axioms(ring) if v.check == "associativity"}
    assert reported == bad


def test_unit_and_dual_violations():
    ring = FusionRing(("1", "x"), 0, (((1, 0), (0, 1)), ((0, 2), (1, 0))), (0, 1))
    kinds = {v.check for v in verify_axioms(ring)}
    assert "unit" in kinds
    bad_dual = FusionRing(("1", "x"), 0, fibonacci_ring().tensor, (0, 0))
    assert {v.check for v in verify_axioms(bad_dual)} == {"dual"}


def test_shape_validation():
    with pytest.raises(ValueError):
        FusionRing(("1", "x"), 0, (((1,),),))
    with pytest.raises(ValueError):
        FusionRing(("1",), 3, (((1,),),))


# ---- transitivity -------------------------------------------------------------


def test_transitivity_examples():
    assert is_transitive(fibonacci_ring())
    assert is_transitive(group_ring([2]))
    # x^2 = 0: unital and associative, but nothing maps x back to the unit
    zero_square = FusionRing(("1", "x"), 0, (((1, 0), (0, 1)), ((0, 1), (0, 0))))
    assert verify_axioms(zero_square) == []
    assert not is_transitive(zero_square)
    with pytest.raises(NotTransitiveError):
        fp_dims(zero_square)


def test_transitivity_checks_both_sides():
    # a noncommutative ring that is transitive on one side only
    n = 3
    tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
    for b in range(n):
        tensor[0][b][b] = tensor[b][0][b] = 1
    # x1 * y = x1 and x2 * y = x2 for y != 1: left zero semigroup on {x1, x2}
    for a in (1, 2):
        for b in (1, 2):
            tensor[a][b][a] = 1
    ring = FusionRing(("1", "a", "b"), 0, tensor)
    assert verify_axioms(ring) == []
    assert not is_transitive(ring)


# ---- Frobenius-Perron -------------------------------------------------------


def test_fp_dims_examples():
    fp = fp_dims(trivial_ring())
    assert fp.dims.tolist() == pytest.approx([1.0])
    assert fp.fp_dim_category == pytest.approx(1.0)

    fp = fp_dims(fibonacci_ring())
    assert fp.dims == pytest.approx([1.0, GOLDEN], abs=1e-12)
    assert fp.fp_dim_category == pytest.approx(1 + GOLDEN**2, abs=1e-12)
    assert fp.fp_dim_category == pytest.approx(3.6180339887498949, abs=1e-12)

    fp = fp_dims(ising_ring())
    assert fp.dims == pytest.approx([1.0, 2**0.5, 1.0], abs=1e-12)
    assert fp.fp_dim_category == pytest.approx(4.0, abs=1e-12)


def test_regular_check_examples():
    for ring in (trivial_ring(), fibonacci_ring(), ising_ring()):
        fp = fp_dims(ring)
        assert regular_check(ring, fp)
        assert fp.semisimple_normalized
        assert fp.regular == pytest.approx(fp.dims)


def test_fp_data_invariants():
    for ring in (trivial_ring(), fibonacci_ring(), ising_ring()):
        fp = fp_dims(ring)
        assert fp.dims[ring.unit_index] == pytest.approx(1.0)
        assert (fp.dims > 0).all() and (fp.regular > 0).all()
        assert fp.fp_dim_category == pytest.approx(float((fp.dims**2).sum()))
        assert fp.to_dict()["semisimple_normalized"] is True


@pytest.mark.parametrize("factors", abelian_groups(12), ids=lambda f: "x".join(map(str, f)))
def test_group_rings(factors):
    ring = group_ring(factors)
    assert verify_axioms(ring) == []
    fp = fp_dims(ring)
    assert fp.dims == pytest.approx(np.ones(ring.rank), abs=1e-10)
    assert fp.fp_dim_category == pytest.approx(ring.rank, abs=1e-9)


def test_abelian_group_list_is_complete():
    # numbers of abelian groups of orders 1..12
    counts = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2]
    groups = abelian_groups(12)
    assert [sum(1 for g in groups if math.prod(g) == n) for n in range(1, 13)] == counts


def test_dims_are_roots_of_integer_char_polys():
    for ring in (fibonacci_ring(), ising_ring(), group_ring([2, 2])):
        fp = fp_dims(ring)
        for x in range(ring.rank):
            poly = oracles.integer_charpoly(ring.array()[x].T.tolist())
            value = sum(c * fp.dims[x] ** k for k, c in enumerate(poly))
            assert abs(value) < 1e-9


def test_uniqueness_from_two_starts():
    rng = np.random.default_rng(7)
    for ring in (fibonacci_ring(), ising_ring(), group_ring([3])):
        _, a = regular_vector(ring)
        _, b = regular_vector(ring, start=rng.uniform(0.1, 5.0, ring.rank))
        assert np.abs(a - b).max() < 1e-8


def test_perron_root_handles_periodic_matrix():
    # permutation matrix: unshifted iteration oscillates
    perm = np.array([[0, 1], [1, 0]], dtype=float)
    lam, vec = perron_root(perm, start=np.array([1.0, 2.0]))
    assert lam == pytest.approx(1.0, abs=1e-10)
    assert vec[0] == pytest.approx(vec[1])
    with pytest.raises(ValueError):
        perron_root(perm, start=np.array([1.0, 0.0]))


def test_perron_root_budget():
    # a Jordan block converges only like 1/k
    jordan = np.array([[1, 1], [0, 1]], dtype=float)
    with pytest.raises(ConvergenceError):
        perron_root(jordan, max_iter=3)


def test_non_rigid_ring_reports_regular_separately():
    # x^2 = 2 + x: no duality, regular element differs from the dims vector
    ring = FusionRing(("1", "x"), 0, (((1, 0), (0, 1)), ((0, 1), (2, 1))))
    fp = fp_dims(ring)
    assert fp.dims == pytest.approx([1.0, 2.0])
    assert not fp.semisimple_normalized
    assert regular_check(ring, fp)
    assert fp.fp_dim_category == pytest.approx(float(fp.regular @ fp.dims))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10**6))
def test_random_rings_match_eigenvalue_oracle(rank, seed):
    ring = random_commutative_ring(rank, random.Random(seed), method="monogenic" if seed % 2 else "search")
    if ring is None:
        return
    fp = fp_dims(ring, 1e-9)
    assert homomorphism_residual(ring, fp.dims) < 1e-9
    for x in range(rank):
        assert fp.dims[x] == pytest.approx(oracles.perron_root(ring.array()[x].T), rel=1e-9)
    assert (fp.regular > 0).all()


# ---- exact dimension functions ---------------------------------------------


def test_dimension_function_check_examples():
    ring = fibonacci_ring()
    phi = golden_ratio()
    conj = 1 - phi
    assert dimension_function_check(ring, DimensionFunction((CycloNum.rational(1), phi)))
    assert dimension_function_check(ring, DimensionFunction((CycloNum.rational(1), conj)))
    assert not dimension_function_check(ring, DimensionFunction((CycloNum.rational(1), CycloNum.rational(1))))
    sqrt2 = zeta(8) + zeta(8, 7)
    assert dimension_function_check(ising_ring(), DimensionFunction((CycloNum.rational(1), sqrt2, CycloNum.rational(1))))
    assert dimension_function_check(ising_ring(), DimensionFunction((CycloNum.rational(1), -sqrt2, CycloNum.rational(1))))


def test_regular_dimension():
    d = DimensionFunction((CycloNum.rational(1), golden_ratio()))
    assert d.regular_dimension() == 2 + golden_ratio()
    assert d.of_object({0: 2, 1: 1}) == 2 + golden_ratio()
