from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from fusioncheck import catalog
from fusioncheck import modular as mod
from fusioncheck.catalog import golden_ratio
from fusioncheck.cyclotomic import CycloNum, zeta
from fusioncheck.modular import FAIL, PASS, ModularData

Q = Fraction
PHI = golden_ratio()


@pytest.fixture(scope="module")
def ising():
    return catalog.ising()


@pytest.fixture(scope="module")
def fib():
    return catalog.fibonacci()


@pytest.fixture(scope="module")
def toric():
    return catalog.toric_code()


@pytest.fixture(scope="module")
def semion():
    return catalog.semion()


def by_name(results):
    return {r.check: r for r in results}


# ---- verify_modular ------------------------------------------------------------


def test_verify_modular_clean(ising, toric, fib):
    assert mod.verify_modular(ising) == []
    assert mod.verify_modular(toric) == []
    assert mod.verify_modular(fib) == []


def _with_twists(md, twists):
    return ModularData("bad", md.conductor, md.ring, tuple(twists), md.smat)


def test_sigma_twist_is_invisible_to_st_cubed(ising):
    # S~[sigma][sigma] = 0, so theta_sigma drops out of (S~T)^3 = p+ S~^2
    for nu in range(16):
        bad = _with_twists(ising, (0, nu, 8))
        assert not {v.check for v in mod.verify_modular(bad)} & {"st_cubed", "s_squared"}


def test_perturbed_sigma_twist_fails_fs_indicator(ising):
    bad = _with_twists(ising, (0, 2, 8))
    found = [v for v in mod.verify_modular(bad) if v.check == "fs_indicator"]
    assert [v.indices for v in found] == [(1,)]
    # nu_2(sigma) = sqrt2 cos(pi nu / 4)
    for nu in range(16):
        nu2 = mod.frobenius_schur_indicators(_with_twists(ising, (0, nu, 8)))[1]
        assert abs(nu2.embed() - 2**0.5 * math.cos(math.pi * nu / 4)) < 1e-12


def test_perturbed_psi_twist_breaks_st_cubed(ising):
    bad = _with_twists(ising, (0, 1, 9))
    witnesses = [v for v in mod.verify_modular(bad) if v.check == "st_cubed"]
    assert witnesses and all(len(v.indices) == 2 for v in witnesses)


def test_fs_indicators_of_catalog():
    assert [str(x) for x in mod.frobenius_schur_indicators(catalog.su2(3))] == ["1", "-1", "1", "-1"]
    assert [str(x) for x in mod.frobenius_schur_indicators(catalog.pointed(3))] == ["1", "0", "0"]
    assert [str(x) for x in mod.frobenius_schur_indicators(catalog.semion())] == ["1", "-1"]


def test_asymmetric_smat_reported(toric):
    rows = [list(r) for r in toric.smat]
    rows[1][2] = rows[1][2] + 1
    bad = ModularData("bad", toric.conductor, toric.ring, toric.twists, tuple(map(tuple, rows)))
    kinds = {v.check for v in mod.verify_modular(bad)}
    assert "symmetry" in kinds


def test_modular_data_validation(ising):
    with pytest.raises(ValueError):
        ModularData("x", 16, ising.ring, (0, 1), ising.smat)
    with pytest.raises(ValueError, match="conductor"):
        ModularData("x", 4, ising.ring, (0, 1, 2), ising.smat)


# ---- dimensions, Gauss sums, central charge -----------------------------------


def test_global_dimension_examples(toric, ising, fib):
    assert mod.global_dimension(toric) == 4
    assert mod.global_dimension(ising) == 4
    sqrt5 = 2 * PHI - 1
    assert mod.global_dimension(fib) == (5 + sqrt5) * Q(1, 2)


def test_gauss_sums_examples(toric, ising, fib):
    plus, minus = mod.gauss_sums(toric)
    assert plus == 2 and minus == 2
    plus, minus = mod.gauss_sums(ising)
    assert plus == 2 * zeta(16) and minus == 2 * zeta(16, -1)
    plus, minus = mod.gauss_sums(fib)
    assert plus * minus == mod.global_dimension(fib)


def test_central_charge_examples(toric, ising, semion):
    assert mod.central_charge(toric).value == 0
    c = mod.central_charge(ising)
    assert c.value == Q(1, 2) and c.method == "exact_sqrt"
    assert c.sqrt_dim == 2
    assert mod.central_charge(semion).value == 1


def test_central_charge_matches_numeric_phase():
    for entry in catalog.standard_entries():
        md = catalog.generate(entry)
        c = mod.central_charge(md)
        plus, _ = mod.gauss_sums(md)
        dim = mod.global_dimension(md).embed().real
        phase = plus.embed() / math.sqrt(dim)
        assert abs(phase - np.exp(1j * math.pi * float(c.value) / 4)) < 1e-9, md.name
        assert 0 <= c.value < 8


# ---- twist orders and divisibility --------------------------------------------


def test_twist_orders_examples(toric, ising):
    assert mod.twist_orders(toric) == [1, 1, 1, 2]
    assert mod.twist_order(toric) == 2
    assert mod.twist_orders(ising) == [1, 16, 2]
    assert mod.twist_order(ising) == 16
    su2 = catalog.su2(1)
    assert mod.twist_orders(su2) == [1, 4]
    assert su2.theta(1) in (zeta(4), zeta(4, 3))


def test_vafa_examples(ising, fib):
    su2 = catalog.su2(1)
    res = by_name(mod.vafa_divisibility(su2))
    assert res["vafa.lcm_order"].status == PASS and res["vafa.lcm_order"].value == {"n": 4}
    assert mod.global_dimension(su2) ** 5 * Q(1, 16) == 2
    assert by_name(mod.vafa_divisibility(ising))["vafa.lcm_order"].status == PASS
    assert mod.global_dimension(ising) ** 5 * Q(1, 256) == 4
    dim = mod.global_dimension(fib)
    sqrt5 = 2 * PHI - 1
    assert dim**5 * Q(1, 25) == sqrt5 * PHI**5
    assert by_name(mod.vafa_divisibility(fib))["vafa.lcm_order"].status == PASS


def test_vafa_fails_for_wrong_order(ising):
    # claim an order that does not divide D^(5/2): conductor 64, theta_sigma of order 64
    sqrt2 = zeta(8) + zeta(8, 7)
    fake = ModularData("fake", 64, ising.ring, (0, 1, 32), ising.smat)
    res = by_name(mod.vafa_divisibility(fake))
    assert res["vafa.lcm_order"].status == FAIL
    assert sqrt2 * sqrt2 == 2


def test_dim_divisibility_examples(ising, fib):
    res = by_name(mod.dim_divisibility(ising))
    assert res["dim_divides_sqrtD[sigma]"].status == PASS
    assert mod.global_dimension(ising) / (ising.dims[1] ** 2) == 2
    res = by_name(mod.dim_divisibility(fib))
    assert res["dim_divides_sqrtD[tau]"].status == PASS
    res = by_name(mod.dim_divisibility(catalog.trivial()))
    assert all(r.status == PASS for r in res.values())


def test_theta_power_examples(toric, ising, fib):
    d = mod.categorical_dimensions(toric)
    assert all(r.status == PASS for r in mod.theta_power_identity(toric, d))
    d = mod.categorical_dimensions(ising)
    res = by_name(mod.theta_power_identity(ising, d))
    assert res["theta_power[categorical][sigma]"].status == PASS
    d = mod.fp_exact(fib)
    res = by_name(mod.theta_power_identity(fib, d))
    assert res["theta_power[frobenius-perron][tau]"].status == PASS
    # rep = (2/5) phi D^2 with D = sqrt5 phi gives 2 phi^3
    big = d.regular_dimension()
    assert Q(2, 5) * PHI * big * big == 2 * PHI**3


# ---- braiding -----------------------------------------------------------------


def test_braiding_spectrum_examples(toric, fib):
    for md in (toric, fib):
        for x in range(md.rank):
            assert mod.braiding_spectrum(md, md.unit, x) == [(0, 1, x)]
    e, m, psi = 1, 2, 3
    assert mod.braiding_spectrum(toric, e, m) == [(1, 1, psi)]  # zeta_2^1 = -1
    spec = mod.braiding_spectrum(fib, 1, 1)
    assert spec == [(1, 1, 0), (3, 1, 1)]


def test_det_beta_examples(toric, fib):
    d = mod.categorical_dimensions(toric)
    res = by_name(mod.det_beta_identity(toric, d))
    assert res["det_beta[categorical][1,1]"].status == PASS
    assert res["det_beta[categorical][e,m]"].status == PASS
    v = mod.det_automorphism(mod.squared_braiding(toric, 1, 2), d)
    assert v.rep == Q(1, 2)

    d = mod.fp_exact(fib)
    v = mod.det_automorphism(mod.squared_braiding(fib, 1, 1), d)
    assert v == mod.torsion_value(5, 1, 1) * mod.torsion_value(5, 3, PHI)
    assert (v.rep - (1 + 3 * PHI) * Q(1, 5)).is_algebraic_integer()
    res = by_name(mod.det_beta_identity(fib, d))
    assert res["det_beta[frobenius-perron][tau,tau]"].status == PASS


# ---- exponent -----------------------------------------------------------------


def test_exponent_examples(toric, semion, fib, ising):
    assert mod.exponent(catalog.trivial()) == 1
    assert mod.exponent(toric) == 2
    assert mod.exponent(semion) == 2
    assert mod.exponent(fib) == 5
    assert mod.exponent(ising) == 8
    for md in (toric, semion, fib, ising):
        assert mod.exponent_check(md).status == PASS


def test_exponent_minimality_brute_force():
    for entry in catalog.standard_entries():
        md = catalog.generate(entry)
        n = mod.exponent(md)
        assert mod.braiding_power_trivial(md, n)
        assert not any(mod.braiding_power_trivial(md, k) for k in range(1, n)), md.name


def test_casimir_orders(ising):
    res = mod.casimir_orders(ising)
    assert [r.value for r in res] == [1, 8, 1]
    assert all(r.status == PASS for r in res)


# ---- detT and charge integrality ---------------------------------------------


def test_detT_examples(ising, toric, semion):
    for md in (ising, toric, semion):
        c = mod.central_charge(md)
        assert mod.detT_identity(md, c).status == PASS
    # det T for Ising is -zeta16: phase (0 + 1 + 8)/16
    assert mod.det_t_exponent(ising) == Q(9, 16)
    assert mod.det_t_exponent(toric) == Q(1, 2)
    assert mod.det_t_exponent(semion) == Q(1, 4)


def test_detT_detects_wrong_charge(ising):
    wrong = mod.CentralCharge(Q(3, 2), "exact_sqrt")
    assert mod.detT_identity(ising, wrong).status == FAIL


def test_charge_integrality_examples(ising, semion, toric):
    c = mod.central_charge(ising)
    assert mod.charge_integrality(ising, c).status == PASS
    half = c.value * ising.rank / 2
    assert half * 32 == 24  # D^(5/2) = 32
    assert (half**2) * mod.global_dimension(ising) ** 5 == 576
    assert mod.charge_integrality(semion, mod.central_charge(semion)).status == PASS
    assert mod.charge_integrality(toric, mod.central_charge(toric)).status == PASS


def test_charge_integrality_representative_independent():
    for entry in catalog.standard_entries():
        md = catalog.generate(entry)
        c = mod.central_charge(md)
        assert mod.charge_integrality(md, c.value + 8).status == mod.charge_integrality(md, c).status


def test_charge_integrality_can_fail(toric):
    # a c with denominator 3 is not allowed at D = 4, N = 4
    assert mod.charge_integrality(toric, Q(1, 3)).status == FAIL


# ---- Frobenius-Perron identification -----------------------------------------


def test_fp_exact_examples(ising, fib, toric):
    sqrt2 = zeta(8) + zeta(8, 7)
    assert mod.fp_exact(ising).values == (1, sqrt2, 1)
    assert mod.fp_exact(fib).values == (1, PHI)
    assert all(v == 1 for v in mod.fp_exact(toric).values)


def test_fp_exact_galois_conjugate_column():
    # theta_tau = zeta5^3 with d_tau = phi still has a positive column
    md = catalog.fibonacci(form=3)
    assert mod.fp_exact(md).values == (1, PHI)


# ---- Galois sanity --------------------------------------------------------------


@pytest.mark.parametrize("name", ["fibonacci", "ising", "su2_level_k", "pointed_Zn"])
def test_galois_preserves_polynomial_identities(name):
    params = {"su2_level_k": {"k": 3}, "pointed_Zn": {"n": 4}}.get(name, {})
    md = catalog.generate(name, **params)
    m = md.conductor
    for s in range(2, m):
        if math.gcd(s, m) != 1:
            continue
        g = mod.galois_conjugate(md, s)
        kinds = {v.check for v in mod.verify_modular(g)}
        assert "s_squared" not in kinds and "st_cubed" not in kinds, (name, s)


def test_nonmodular_input(toric):
    zero = tuple(tuple(CycloNum.rational(0) for _ in range(4)) for _ in range(4))
    rows = [list(r) for r in zero]
    rows[0] = [CycloNum.rational(1)] * 4
    md = ModularData("degenerate", 2, toric.ring, (0, 0, 0, 1), tuple(map(tuple, rows)))
    assert mod.verify_modular(md)
