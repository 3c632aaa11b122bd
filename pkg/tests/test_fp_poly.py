"""Reduced polynomials, coefficient duality, scalar-product conditions."""

import itertools
import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ajtkit.errors import DegreeMismatch, InputError
from ajtkit.fp_core import FpMatrix, random_nonsingular
from ajtkit.fp_poly import (
    ReducedPoly,
    check_p2,
    check_p5,
    coeff,
    duality_check,
    mul_reduce,
    power_sum,
    reduce,
    reduce_exponent,
    scalar_product_condition,
)
from ajtkit.properties import ForbiddenSpec, check_p1

P = 5


def term_lists(p, n, max_exp, size=6):
    return st.lists(
        st.tuples(
            st.tuples(*[st.integers(0, max_exp)] * n),
            st.integers(0, p - 1),
        ),
        max_size=size,
    )


def eval_raw(terms, point, p):
    total = 0
    for exps, c in terms:
        v = c
        for e, x in zip(exps, point):
            v = v * pow(x, e, p) % p
        total = (total + v) % p
    return total


# ---------------------------------------------------------------------------
# exponent folding


def test_reduce_exponent_values():
    assert reduce_exponent(0, P) == 0
    assert reduce_exponent(1, P) == 1
    assert reduce_exponent(P - 1, P) == P - 1
    assert reduce_exponent(P, P) == 1
    assert reduce_exponent(2 * (P - 1), P) == P - 1
    assert reduce_exponent(2 * P - 1, P) == 1  # 9 = 2*4 + 1


def test_reduce_exponent_never_exceeds_p_minus_1():
    for e in range(0, 40):
        r = reduce_exponent(e, P)
        assert 0 <= r <= P - 1
        if e:
            assert r >= 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 200))
def test_reduce_exponent_preserves_power_functions(e):
    r = reduce_exponent(e, P)
    for x in range(P):
        assert pow(x, e, P) == pow(x, r, P)


# ---------------------------------------------------------------------------
# reduced polynomials as functions


@settings(max_examples=80, deadline=None)
@given(term_lists(P, 2, 3 * P), st.tuples(st.integers(0, P - 1), st.integers(0, P - 1)))
def test_reduce_preserves_evaluation(terms, point):
    f = reduce(P, 2, terms)
    assert f.evaluate(point) == eval_raw(terms, point, P)


def test_canonical_form_detects_equal_functions():
    # x^p and x induce the same function and the same reduced form
    a = reduce(P, 1, [((P,), 1)])
    b = ReducedPoly.monomial(P, 1, (1,))
    assert a == b
    assert (a - b).is_zero()


def test_zero_reduced_iff_zero_function():
    rng = random.Random(0)
    for _ in range(40):
        terms = [
            (
                (rng.randrange(3 * P), rng.randrange(3 * P)),
                rng.randrange(P),
            )
            for _ in range(5)
        ]
        f = reduce(P, 2, terms)
        table_zero = not f.evaluate_table().any()
        assert f.is_zero() == table_zero


def test_evaluate_matches_table():
    rng = random.Random(1)
    for _ in range(20):
        f = ReducedPoly.from_terms(
            P,
            2,
            [
                ((rng.randrange(P), rng.randrange(P)), rng.randrange(P))
                for _ in range(6)
            ],
        )
        table = f.evaluate_table()
        for x in range(P):
            for y in range(P):
                assert table[x, y] == f.evaluate((x, y))


def test_dense_round_trip():
    rng = random.Random(2)
    for _ in range(20):
        f = ReducedPoly.from_terms(
            P,
            3,
            [
                (
                    (rng.randrange(P), rng.randrange(P), rng.randrange(P)),
                    rng.randrange(P),
                )
                for _ in range(6)
            ],
        )
        assert ReducedPoly.from_dense(P, f.to_dense()) == f


def test_json_round_trip():
    f = ReducedPoly.from_terms(P, 2, [((1, 2), 3), ((0, 4), 2)])
    assert ReducedPoly.from_json(P, 2, f.to_json()) == f


def test_linear_form():
    f = ReducedPoly.linear_form(P, [2, 3])
    assert f.evaluate((1, 1)) == 0  # 2+3 = 5
    assert f.evaluate((2, 1)) == 2
    assert f.total_degree() == 1


def test_total_degree():
    assert ReducedPoly.zero(P, 2).total_degree() == -1
    assert ReducedPoly.constant(P, 2, 3).total_degree() == 0
    assert ReducedPoly.monomial(P, 2, (4, 4)).total_degree() == 8


def test_coeff_rejects_unreduced_exponents():
    f = ReducedPoly.monomial(P, 1, (2,))
    assert coeff(f, (2,)) == 1
    assert f.coeff((3,)) == 0
    with pytest.raises(InputError):
        f.coeff((P,))


# ---------------------------------------------------------------------------
# multiplication routes


@settings(max_examples=60, deadline=None)
@given(term_lists(P, 2, P - 1), term_lists(P, 2, P - 1))
def test_mul_routes_agree(fterms, gterms):
    f = ReducedPoly.from_terms(P, 2, fterms)
    g = ReducedPoly.from_terms(P, 2, gterms)
    assert mul_reduce(f, g, "hash") == mul_reduce(f, g, "interpolate")


def test_mul_is_pointwise_product():
    rng = random.Random(3)
    for _ in range(25):
        f = ReducedPoly.from_terms(
            P, 2, [((rng.randrange(P), rng.randrange(P)), rng.randrange(P)) for _ in range(4)]
        )
        g = ReducedPoly.from_terms(
            P, 2, [((rng.randrange(P), rng.randrange(P)), rng.randrange(P)) for _ in range(4)]
        )
        h = f * g
        for pt in itertools.product(range(P), repeat=2):
            assert h.evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) % P


def test_pow_matches_repeated_mul():
    f = ReducedPoly.from_terms(P, 2, [((1, 0), 1), ((0, 1), 2), ((0, 0), 3)])
    acc = ReducedPoly.constant(P, 2, 1)
    for k in range(8):
        assert f**k == acc
        acc = acc * f


def test_mul_route_rejects_unknown():
    f = ReducedPoly.constant(P, 2, 1)
    with pytest.raises(InputError):
        mul_reduce(f, f, "telepathy")


# ---------------------------------------------------------------------------
# power sums


@pytest.mark.parametrize("p", [3, 5, 7])
def test_power_sum_closed_form(p):
    for k in range(0, 2 * p + 3):
        want = sum(pow(x, k, p) for x in range(p)) % p
        assert power_sum(p, k) == want
        if k > 0 and k % (p - 1) == 0:
            assert power_sum(p, k) == p - 1
        elif k == 0:
            assert power_sum(p, k) == 0  # p terms of 1
        else:
            assert power_sum(p, k) == 0


# ---------------------------------------------------------------------------
# coefficient duality


def sympy_side_coeffs(rows, r, s, p):
    """Exact integer coefficients of both duality sides, via symbolic expansion."""
    n = len(rows)
    xs = sympy.symbols(f"x0:{n}")
    row_prod = sympy.prod(
        sum(rows[i][j] * xs[j] for j in range(n)) ** r[i] for i in range(n)
    )
    col_prod = sympy.prod(
        sum(rows[i][j] * xs[i] for i in range(n)) ** s[j] for j in range(n)
    )
    lhs = sympy.Poly(sympy.expand(row_prod), *xs).coeff_monomial(
        sympy.prod(x**e for x, e in zip(xs, s))
    )
    rhs = sympy.Poly(sympy.expand(col_prod), *xs).coeff_monomial(
        sympy.prod(x**e for x, e in zip(xs, r))
    )
    return int(lhs), int(rhs)


def test_duality_against_symbolic_expansion():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.choice((1, 2, 3))
        m = random_nonsingular(P, n, rng=rng)
        r = [rng.randrange(P) for _ in range(n)]
        total = sum(r)
        s = []
        left = total
        for i in range(n - 1):
            lo = max(0, left - (P - 1) * (n - 1 - i))
            hi = min(P - 1, left)
            pick = rng.randint(lo, hi)
            s.append(pick)
            left -= pick
        s.append(left)
        if not all(0 <= e <= P - 1 for e in s):
            continue
        got = duality_check(m, r, s)
        lhs_z, rhs_z = sympy_side_coeffs(m.rows, r, s, P)
        assert got.lhs_coeff == lhs_z % P
        assert got.rhs_coeff == rhs_z % P
        # the exact integer identity behind the equivalence
        fact_s = math.prod(math.factorial(e) for e in s)
        fact_r = math.prod(math.factorial(e) for e in r)
        assert fact_s * lhs_z == fact_r * rhs_z
        assert got.agree
        assert got.factorial_relation_holds()


def test_duality_zero_iff_zero():
    # factorials of entries <= p-1 are units mod p, so vanishing transfers
    rng = random.Random(5)
    seen_zero = seen_nonzero = 0
    for _ in range(150):
        m = random_nonsingular(P, 2, rng=rng)
        r = [rng.randrange(P), rng.randrange(P)]
        s0 = rng.randint(max(0, sum(r) - (P - 1)), min(P - 1, sum(r)))
        s = [s0, sum(r) - s0]
        got = duality_check(m, r, s)
        assert (got.lhs_coeff == 0) == (got.rhs_coeff == 0)
        if got.lhs_coeff == 0:
            seen_zero += 1
        else:
            seen_nonzero += 1
    assert seen_zero and seen_nonzero  # both branches exercised


def test_duality_rejects_unbalanced():
    m = FpMatrix([[1, 1], [1, 2]], P)
    with pytest.raises(DegreeMismatch):
        duality_check(m, [1, 2], [1, 1])
    with pytest.raises(InputError):
        duality_check(m, [1, P], [1, P])  # exponents above p-1


# ---------------------------------------------------------------------------
# scalar products


def test_scalar_product_routes_agree_on_randoms():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.choice((1, 2))
        m = random_nonsingular(P, n, rng=rng)
        r = [rng.randrange(1, P) for _ in range(n)]
        s = [rng.randrange(1, P) for _ in range(n)]
        assert scalar_product_condition(
            m, r, s, route="evaluate"
        ) == scalar_product_condition(m, r, s, route="coefficient")


def test_scalar_product_sign_pinned():
    # sum over x of x^4 is -1 mod 5, while the reduced coefficient of x^4
    # in x^2 * x^2 is +1: the two differ by (-1)^n and the conversion
    # has to carry that sign
    m = FpMatrix([[1]], P)
    assert scalar_product_condition(m, [2], [2], route="evaluate") == P - 1
    assert scalar_product_condition(m, [2], [2], route="coefficient") == P - 1
    prod = ReducedPoly.monomial(P, 1, (2,)) * ReducedPoly.monomial(P, 1, (2,))
    assert prod.coeff((4,)) == 1


def test_scalar_product_counts_witnesses_mod_p():
    # with all exponents p-1 each summand is the witness indicator
    full = [P - 1, P - 1]
    for m in _all_nonsingular_5_2():
        val = scalar_product_condition(m, full, full)
        count = 0
        for x in itertools.product(range(1, P), repeat=2):
            y = m.matvec(x)
            if all(c != 0 for c in y.entries):
                count += 1
        assert val == count % P
        if val != 0:
            assert check_p1(m) is not None  # a witness certainly exists


def _all_nonsingular_5_2():
    from ajtkit.fp_core import enumerate_nonsingular

    return enumerate_nonsingular(5, 2)


# ---------------------------------------------------------------------------
# property bridges


def test_check_p2_agrees_with_witness_search():
    rng = random.Random(7)
    for _ in range(60):
        m = random_nonsingular(P, 2, rng=rng)
        spec = ForbiddenSpec.random(P, 2, rng)
        has_witness = check_p1(m, spec) is not None
        vanishes = check_p2(m, spec.c_lists, spec.d_lists)
        assert vanishes == (not has_witness)


def test_check_p5_degree_drop_definition():
    m = FpMatrix([[1, 1], [1, 2]], P)
    # the default product has full degree 2n < 4 is false, so no drop
    assert check_p5(m) is False
    one_by_one = FpMatrix([[1]], P)
    # (x)^2 * (x)^3 reduces to x^5 -> x, degree 1 < 5
    assert check_p5(one_by_one, t=[2], t_prime=[3]) is True
