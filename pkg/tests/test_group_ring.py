"""Group-ring identities over Z, F_p and Z[w]."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ajtkit.errors import InputError, PhaseInNonCyclotomicRing
from ajtkit.fp_core import FpMatrix, random_nonsingular
from ajtkit.group_ring import (
    CyclotomicInt,
    CyclotomicRing,
    FactorSpec,
    GroupRingElem,
    IntegerRing,
    ModPRing,
    check_p3,
    check_p3_integer,
    check_p4,
    delete_one_factor_scan,
    one_minus_g,
    product_of_factors,
    sigma_of_factors,
    sigma_vanishing_candidate,
)

P = 5


def cyc(coeffs):
    return CyclotomicInt(P, coeffs)


cyc_elems = st.builds(
    lambda c: cyc(c),
    st.lists(st.integers(-9, 9), min_size=P - 1, max_size=P - 1),
)


# ---------------------------------------------------------------------------
# cyclotomic integers


def test_cyclotomic_int_round_trip():
    x = CyclotomicInt.from_int(P, 7)
    assert x.as_int() == 7
    assert CyclotomicInt.zero(P).is_zero()
    assert not x.is_zero()
    assert cyc([1, 2, 0, 0]).as_int() is None


def test_omega_power_relations():
    for a in range(P):
        for b in range(P):
            lhs = CyclotomicInt.omega_pow(P, a) * CyclotomicInt.omega_pow(P, b)
            assert lhs == CyclotomicInt.omega_pow(P, (a + b) % P)


def test_omega_powers_sum_to_zero():
    total = CyclotomicInt.zero(P)
    for k in range(P):
        total = total + CyclotomicInt.omega_pow(P, k)
    assert total.is_zero()


def test_omega_top_power_uses_minimal_polynomial():
    # w^(p-1) = -(1 + w + ... + w^(p-2)) on the power basis
    top = CyclotomicInt.omega_pow(P, P - 1)
    assert top == cyc([-1] * (P - 1))


@settings(max_examples=120, deadline=None)
@given(cyc_elems, cyc_elems, cyc_elems)
def test_cyclotomic_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + CyclotomicInt.zero(P) == a
    assert a * CyclotomicInt.from_int(P, 1) == a
    assert (a - a).is_zero()


def test_cyclotomic_nonzero_product_of_nonzero():
    # Z[w] is an integral domain; spot-check with (1 - w)^k
    one = CyclotomicInt.from_int(P, 1)
    x = one - CyclotomicInt.omega_pow(P, 1)
    acc = one
    for _ in range(3 * P):
        acc = acc * x
        assert not acc.is_zero()


# ---------------------------------------------------------------------------
# group-ring elements


def test_identity_and_monomial():
    e = GroupRingElem.identity(P, 2, ModPRing)
    assert e.coeff((0, 0)) == 1
    assert e.coeff((1, 0)) == 0
    m = GroupRingElem.monomial(P, 2, ModPRing, (2, 3))
    assert m.coeff((2, 3)) == 1
    assert (e * m).coeff((2, 3)) == 1


def test_translate_is_monomial_multiplication():
    x = GroupRingElem.identity(P, 2, ModPRing) + GroupRingElem.monomial(
        P, 2, ModPRing, (1, 1)
    )
    g = GroupRingElem.monomial(P, 2, ModPRing, (2, 0))
    assert (x * g) == x.translate((2, 0))


def test_apply_one_minus_g_matches_definition():
    rng = random.Random(2)
    for _ in range(20):
        coeffs = np.array(
            [[rng.randrange(P) for _ in range(P)] for _ in range(P)],
            dtype=np.int64,
        )
        x = GroupRingElem(P, 2, ModPRing, coeffs)
        v = (rng.randrange(P), rng.randrange(P))
        direct = x.apply_one_minus_g(v)
        assert direct == x - x.translate(v)
        assert direct == x * one_minus_g(P, 2, v, ModPRing)


def test_one_minus_g_powers_mod_p():
    # (1-g)^(p-1) has all coefficients 1; one more factor kills it
    x = one_minus_g(P, 1, (1,), ModPRing)
    acc = GroupRingElem.identity(P, 1, ModPRing)
    for _ in range(P - 1):
        acc = acc * x
    assert list(acc.coeffs) == [1] * P
    assert (acc * x).is_zero()


def test_one_minus_g_powers_integer_never_vanish():
    x = one_minus_g(P, 1, (1,), IntegerRing)
    acc = GroupRingElem.identity(P, 1, IntegerRing)
    for _ in range(2 * P):
        acc = acc * x
        assert not acc.is_zero()


def test_reduce_mod_p_is_a_ring_map():
    rng = random.Random(5)
    for _ in range(15):
        a = GroupRingElem(
            P,
            1,
            IntegerRing,
            np.array([rng.randrange(-20, 20) for _ in range(P)], dtype=object),
        )
        b = GroupRingElem(
            P,
            1,
            IntegerRing,
            np.array([rng.randrange(-20, 20) for _ in range(P)], dtype=object),
        )
        assert (a * b).reduce_mod_p() == a.reduce_mod_p() * b.reduce_mod_p()
        assert (a + b).reduce_mod_p() == a.reduce_mod_p() + b.reduce_mod_p()


def test_phase_needs_cyclotomic_ring():
    x = GroupRingElem.identity(P, 1, ModPRing)
    with pytest.raises(PhaseInNonCyclotomicRing):
        x.apply_one_minus_g((1,), phase=2)
    y = GroupRingElem.identity(P, 1, CyclotomicRing)
    y.apply_one_minus_g((1,), phase=2)  # fine


# ---------------------------------------------------------------------------
# factor specs and products


def test_factor_spec_validation():
    with pytest.raises(InputError):
        FactorSpec(P, 2, vectors=((1, 0),), exponents=(1, 2))
    with pytest.raises(InputError):
        FactorSpec(P, 2, vectors=((1, 0),), exponents=(2,), phases=((0, 0),))
    with pytest.raises(InputError):
        FactorSpec(P, 2, vectors=((1, 0, 0),), exponents=(1,))
    FactorSpec(P, 2, vectors=((1, 0),), exponents=(2,), phases=((0, 1),))


def test_from_matrix_lists_units_then_rows():
    m = FpMatrix([[1, 1], [1, 2]], P)
    spec = FactorSpec.from_matrix(m)
    assert spec.vectors == ((1, 0), (0, 1), (1, 1), (1, 2))
    assert spec.exponents == (1, 1, 1, 1)


def test_zero_phase_cyclotomic_product_matches_integer_product():
    rng = random.Random(8)
    for _ in range(10):
        m = random_nonsingular(P, 2, rng=rng)
        spec = FactorSpec.from_matrix(m)
        over_z = product_of_factors(spec, IntegerRing)
        phased = FactorSpec.from_matrix(
            m, c_lists=[[0]] * 2, d_lists=[[0]] * 2
        )
        over_zw = product_of_factors(phased, CyclotomicRing)
        assert over_z.is_zero() == over_zw.is_zero()
        for v, val in over_zw.support_items():
            assert val.as_int() == over_z.coeff(v)


def test_product_brute_force_small():
    # multiply out (1-g^(1,0))(1-g^(0,1)) by hand
    spec = FactorSpec(P, 2, vectors=((1, 0), (0, 1)), exponents=(1, 1))
    got = product_of_factors(spec, ModPRing)
    want = np.zeros((P, P), dtype=np.int64)
    want[0, 0] = 1
    want[1, 0] = P - 1
    want[0, 1] = P - 1
    want[1, 1] = 1
    assert np.array_equal(got.coeffs, want)


def test_check_p4_known_values():
    m = FpMatrix([[1, 1], [1, 2]], P)
    assert check_p4(m) is False  # product does not vanish
    assert check_p3_integer(m) is False
    one_by_one = FpMatrix([[1]], P)
    # five factors of (1-g) vanish mod 5
    assert check_p4(one_by_one, t=[2], t_prime=[3]) is True
    assert check_p4(one_by_one, t=[2], t_prime=[2]) is False


def test_check_p3_full_forbidden_column_vanishes():
    one_by_one = FpMatrix([[1]], P)
    # forbidding every residue for x_1 leaves no witness, and the phased
    # product collapses: prod over c of (1 - w^c g) = 1 - g^p = 0
    assert check_p3(one_by_one, c_lists=[range(P)], d_lists=[[]]) is True
    assert check_p3(one_by_one, c_lists=[[0]], d_lists=[[0]]) is False


# ---------------------------------------------------------------------------
# elementary symmetric functions of the factors


def sigma_oracle(m):
    """Expand the elementary symmetric functions by raw subset enumeration."""
    p, n = m.p, m.n
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    fs = [one_minus_g(p, n, v, ModPRing) for v in units]
    fs += [one_minus_g(p, n, tuple(row), ModPRing) for row in m.rows]
    out = []
    for j in range(len(fs) + 1):
        total = GroupRingElem.zero(p, n, ModPRing)
        for combo in itertools.combinations(fs, j):
            term = GroupRingElem.identity(p, n, ModPRing)
            for f in combo:
                term = term * f
            total = total + term
        out.append(total)
    return out


def test_sigma_matches_subset_expansion():
    rng = random.Random(31)
    for _ in range(5):
        m = random_nonsingular(P, 2, rng=rng)
        got = sigma_of_factors(m)
        want = sigma_oracle(m)
        assert len(got) == 2 * m.n + 1
        for a, b in zip(got, want):
            assert a == b


def test_sigma_zero_is_one():
    m = random_nonsingular(P, 2, seed=1)
    sigmas = sigma_of_factors(m)
    assert sigmas[0] == GroupRingElem.identity(P, 2, ModPRing)


def test_sigma_top_is_full_product():
    m = random_nonsingular(P, 2, seed=2)
    sigmas = sigma_of_factors(m)
    full = product_of_factors(FactorSpec.from_matrix(m), ModPRing)
    assert sigmas[-1] == full


def test_sigma_candidate_vacuously_false_when_2n_small():
    # indices run down from 2n; at 2n <= p-1 the run includes sigma_0 = 1
    m = random_nonsingular(P, 2, seed=3)
    report = sigma_vanishing_candidate(m)
    assert report.candidate is False
    assert report.vanishing[2 * m.n] is False  # the sigma_0 slot


def test_sigma_candidate_probe_shape_at_n3():
    m = random_nonsingular(P, 3, seed=4)
    report = sigma_vanishing_candidate(m)
    assert len(report.vanishing) == P
    sigmas = sigma_of_factors(m)
    for i in range(P):
        j = 2 * 3 - i
        assert report.vanishing[i] == sigmas[j].is_zero()


# ---------------------------------------------------------------------------
# delete-one-factor scan


def test_delete_scan_nonzero_products_stay_nonzero():
    rng = random.Random(17)
    for _ in range(6):
        m = random_nonsingular(P, 2, rng=rng)
        report = delete_one_factor_scan(m)
        assert report.full_zero is False
        # a vanishing subproduct would force the full product to vanish
        assert report.some_drop_vanishes is False


def test_delete_scan_can_separate_full_from_drops():
    one_by_one = FpMatrix([[1]], P)
    report = delete_one_factor_scan(one_by_one, k=3)
    # (1-g)^6 = 0 mod 5 but (1-g)^3 is not
    assert report.full_zero is True
    assert report.dropped_zero == (False,)
