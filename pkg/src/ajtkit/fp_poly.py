"""Polynomials over F_p reduced by the relation x^p = x on nonzero exponents.

The reduction rule sends exponent e to ((e - 1) mod (p - 1)) + 1 for e >= 1
and keeps 0; it preserves the polynomial as a function on F_p. Reduced
polynomials have every exponent in [0, p-1], and two of them agree as
functions exactly when they agree coefficientwise, so vanishing checks are
coefficient checks.

Multiplication has two independent routes: hash-map convolution on exponent
vectors, and evaluate-multiply-interpolate through the Vandermonde matrix.
Both land on the same canonical form; tests compare them, the auto route
picks by size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .budget import Budget, current_budget
from .errors import DegreeMismatch, InputError
from .fp_core import FpMatrix, _as_prime

ExponentVector = tuple[int, ...]


@dataclass(frozen=True)
class Monomial:
    """An exponent vector with every entry in [0, p-1]."""

    exponents: ExponentVector

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise InputError("exponents must be nonnegative")


def reduce_exponent(e: int, p: int) -> int:
    """0 stays 0; positive e maps into [1, p-1] preserving e mod (p-1)."""
    if e < 0:
        raise InputError("exponents must be nonnegative")
    if e == 0:
        return 0
    return (e - 1) % (p - 1) + 1


class ReducedPoly:
    """A polynomial over F_p in canonical reduced form.

    Stored as a hash map from exponent vectors (each entry in [0, p-1]) to
    nonzero coefficients in [1, p-1].
    """

    __slots__ = ("p", "n", "coeffs")

    def __init__(self, p: int, n: int, coeffs: dict[ExponentVector, int]):
        self.p = _as_prime(p)
        self.n = int(n)
        self.coeffs = coeffs

    @classmethod
    def zero(cls, p: int, n: int) -> "ReducedPoly":
        return cls(p, n, {})

    @classmethod
    def constant(cls, p: int, n: int, c: int) -> "ReducedPoly":
        return cls.from_terms(p, n, [((0,) * n, c)])

    @classmethod
    def monomial(cls, p: int, n: int, exps: Sequence[int], coeff: int = 1) -> "ReducedPoly":
        return cls.from_terms(p, n, [(tuple(exps), coeff)])

    @classmethod
    def linear_form(cls, p: int, coefficients: Sequence[int]) -> "ReducedPoly":
        """The polynomial sum_j coefficients[j] * x_j."""
        n = len(coefficients)
        terms = []
        for j, c in enumerate(coefficients):
            e = [0] * n
            e[j] = 1
            terms.append((tuple(e), c))
        return cls.from_terms(p, n, terms)

    @classmethod
    def from_terms(
        cls, p: int, n: int, terms: Iterable[tuple[Sequence[int], int]]
    ) -> "ReducedPoly":
        """Reduce a raw term stream into canonical form."""
        p = _as_prime(p)
        acc: dict[ExponentVector, int] = {}
        for exps, c in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise InputError("exponent vector has the wrong length")
            key = tuple(reduce_exponent(e, p) for e in exps)
            acc[key] = (acc.get(key, 0) + int(c)) % p
        return cls(p, n, {k: v for k, v in acc.items() if v})

    def terms(self) -> list[tuple[ExponentVector, int]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exps: Sequence[int] | Monomial) -> int:
        if isinstance(exps, Monomial):
            exps = exps.exponents
        exps = tuple(int(e) for e in exps)
        if any(not 0 <= e <= self.p - 1 for e in exps):
            raise InputError("coefficient lookup requires reduced exponents")
        return self.coeffs.get(exps, 0)

    def total_degree(self) -> int:
        """Max total degree of the canonical form; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def _same_space(self, other: "ReducedPoly") -> None:
        if not isinstance(other, ReducedPoly):
            raise InputError("expected a ReducedPoly")
        if (other.p, other.n) != (self.p, self.n):
            raise InputError("polynomials live over different spaces")

    def __add__(self, other: "ReducedPoly") -> "ReducedPoly":
        self._same_space(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = (acc.get(k, 0) + v) % self.p
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
        return ReducedPoly(self.p, self.n, acc)

    def __neg__(self) -> "ReducedPoly":
        return ReducedPoly(
            self.p, self.n, {k: (self.p - v) % self.p for k, v in self.coeffs.items()}
        )

    def __sub__(self, other: "ReducedPoly") -> "ReducedPoly":
        return self + (-other)

    def __mul__(self, other: "ReducedPoly") -> "ReducedPoly":
        return mul_reduce(self, other)

    def __pow__(self, e: int) -> "ReducedPoly":
        if e < 0:
            raise InputError("negative powers are not defined")
        out = ReducedPoly.constant(self.p, self.n, 1)
        base = self
        while e:
            if e & 1:
                out = mul_reduce(out, base)
            e >>= 1
            if e:
                base = mul_reduce(base, base)
        return out

    def __eq__(self, other):
        if not isinstance(other, ReducedPoly):
            return NotImplemented
        return (self.p, self.n) == (other.p, other.n) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"ReducedPoly(p={self.p}, n={self.n}, terms={len(self.coeffs)})"

    def evaluate(self, point: Sequence[int]) -> int:
        point = [int(x) % self.p for x in point]
        total = 0
        for exps, c in self.coeffs.items():
            term = c
            for x, e in zip(point, exps):
                term = term * pow(x, e, self.p) % self.p
            total = (total + term) % self.p
        return total

    def evaluate_table(self) -> np.ndarray:
        """Values on the full grid, shape (p,) * n."""
        dense = self.to_dense()
        return _eval_dense(dense, self.p)

    def to_dense(self) -> np.ndarray:
        """Coefficient tensor of shape (p,) * n indexed by exponent."""
        out = np.zeros((self.p,) * self.n, dtype=np.int64)
        for exps, c in self.coeffs.items():
            out[exps] = c
        return out

    @classmethod
    def from_dense(cls, p: int, dense: np.ndarray) -> "ReducedPoly":
        n = dense.ndim
        coeffs = {}
        for idx in np.argwhere(dense % p):
            key = tuple(int(e) for e in idx)
            coeffs[key] = int(dense[tuple(idx)]) % p
        return cls(p, n, coeffs)

    def to_json(self) -> list[dict]:
        return [
            {"exps": list(exps), "coeff": c} for exps, c in self.terms()
        ]

    @classmethod
    def from_json(cls, p: int, n: int, items: list[dict]) -> "ReducedPoly":
        try:
            terms = [(tuple(item["exps"]), int(item["coeff"])) for item in items]
        except (KeyError, TypeError):
            raise InputError("poly JSON needs 'exps' and 'coeff' per term") from None
        return cls.from_terms(p, n, terms)


def reduce(p: int, n: int, terms: Iterable[tuple[Sequence[int], int]]) -> ReducedPoly:
    """Canonical reduced form of a raw term stream."""
    return ReducedPoly.from_terms(p, n, terms)


@lru_cache(maxsize=None)
def vandermonde(p: int) -> np.ndarray:
    """V[t, e] = t^e mod p for t, e in [0, p-1]; 0^0 = 1."""
    v = np.ones((p, p), dtype=np.int64)
    for t in range(p):
        for e in range(1, p):
            v[t, e] = v[t, e - 1] * t % p
    return v


@lru_cache(maxsize=None)
def vandermonde_inverse(p: int) -> np.ndarray:
    inv = FpMatrix([list(row) for row in vandermonde(p)], p).invert()
    return np.array(inv.rows, dtype=np.int64)


def _eval_dense(dense: np.ndarray, p: int) -> np.ndarray:
    """Apply the Vandermonde matrix along every axis: coefficients -> values."""
    out = dense % p
    v = vandermonde(p)
    for axis in range(dense.ndim):
        out = np.moveaxis(np.tensordot(v, out, axes=([1], [axis])) % p, 0, axis)
    return out


def _interpolate_dense(values: np.ndarray, p: int) -> np.ndarray:
    """Inverse of _eval_dense: values -> canonical coefficients."""
    out = values % p
    vinv = vandermonde_inverse(p)
    for axis in range(values.ndim):
        out = np.moveaxis(np.tensordot(vinv, out, axes=([1], [axis])) % p, 0, axis)
    return out


def mul_reduce(f: ReducedPoly, g: ReducedPoly, route: str = "auto") -> ReducedPoly:
    """Product in canonical reduced form.

    route 'hash' convolves exponent maps; route 'interpolate' multiplies the
    value tables pointwise and interpolates back. The canonical form is the
    unique representative with all exponents <= p-1, so the routes agree.
    """
    f._same_space(g)
    p, n = f.p, f.n
    if route == "auto":
        pairs = len(f.coeffs) * len(g.coeffs)
        route = "interpolate" if pairs > 4 * p**n and p**n <= 2**18 else "hash"
    if route == "hash":
        acc: dict[ExponentVector, int] = {}
        for e1, c1 in f.coeffs.items():
            for e2, c2 in g.coeffs.items():
                key = tuple(reduce_exponent(a + b, p) for a, b in zip(e1, e2))
                v = (acc.get(key, 0) + c1 * c2) % p
                if v:
                    acc[key] = v
                else:
                    acc.pop(key, None)
        return ReducedPoly(p, n, acc)
    if route == "interpolate":
        # evaluation is a bijection between polynomials with exponents
        # <= p-1 and functions on the grid, so interpolating the pointwise
        # product lands on the same canonical form as the hash route
        values = _eval_dense(f.to_dense(), p) * _eval_dense(g.to_dense(), p) % p
        return ReducedPoly.from_dense(p, _interpolate_dense(values, p))
    raise InputError(f"unknown route {route!r}")


def coeff(f: ReducedPoly, exps: Sequence[int] | Monomial) -> int:
    return f.coeff(exps)


def power_sum(p: int, k: int) -> int:
    """sum over x in F_p of x^k, reduced mod p (0^0 counts as 1)."""
    p = _as_prime(p)
    return sum(pow(x, k, p) if (x or k) else 1 for x in range(p)) % p


def check_p2(
    m: FpMatrix,
    c_lists: Sequence[Sequence[int]],
    d_lists: Sequence[Sequence[int]],
    budget: Budget | str | None = None,
) -> bool:
    """Vanishing of the forbidden-value product as a reduced polynomial.

    h = prod_i prod_k (<a_i, x> - d_{i,k}) * prod_i prod_k (x_i - c_{i,k});
    the reduced form is zero exactly when h is zero at every point.
    """
    p, n = m.p, m.n
    current_budget(budget).check_entries(p**n, what="reduced product")
    h = ReducedPoly.constant(p, n, 1)
    for i, row in enumerate(m.rows):
        form = ReducedPoly.linear_form(p, row)
        for d in d_lists[i]:
            h = h * (form - ReducedPoly.constant(p, n, d))
    for i in range(n):
        e = [0] * n
        e[i] = 1
        var = ReducedPoly.monomial(p, n, e)
        for c in c_lists[i]:
            h = h * (var - ReducedPoly.constant(p, n, c))
    return h.is_zero()


def check_p5(
    m: FpMatrix,
    t: Sequence[int] | None = None,
    t_prime: Sequence[int] | None = None,
    budget: Budget | str | None = None,
) -> bool:
    """Degree drop of f = prod_i <a_i, x>^(t'_i) * prod_i x_i^(t_i).

    True when the reduced form has total degree strictly below
    sum(t) + sum(t').
    """
    p, n = m.p, m.n
    current_budget(budget).check_entries(p**n, what="reduced product")
    if t is None:
        t = [1] * n
    if t_prime is None:
        t_prime = [1] * n
    f = ReducedPoly.constant(p, n, 1)
    for i, row in enumerate(m.rows):
        f = f * (ReducedPoly.linear_form(p, row) ** t_prime[i])
    for i in range(n):
        e = [0] * n
        e[i] = 1
        f = f * (ReducedPoly.monomial(p, n, e) ** t[i])
    return f.total_degree() < sum(t) + sum(t_prime)


@dataclass(frozen=True)
class DualityResult:
    """Both sides of the row/column coefficient duality at one (r, s) pair."""

    p: int
    n: int
    r: tuple[int, ...]
    s: tuple[int, ...]
    lhs_coeff: int
    rhs_coeff: int

    @property
    def lhs_zero(self) -> bool:
        return self.lhs_coeff == 0

    @property
    def rhs_zero(self) -> bool:
        return self.rhs_coeff == 0

    @property
    def agree(self) -> bool:
        return self.lhs_zero == self.rhs_zero

    def factorial_relation_holds(self) -> bool:
        """prod(s_i!) * lhs == prod(r_i!) * rhs mod p (exact over Z before
        reduction; the balanced degrees keep reduction out of the picture)."""
        sf = 1
        for x in self.s:
            sf = sf * math.factorial(x) % self.p
        rf = 1
        for x in self.r:
            rf = rf * math.factorial(x) % self.p
        return (sf * self.lhs_coeff - rf * self.rhs_coeff) % self.p == 0

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "r": list(self.r),
            "s": list(self.s),
            "lhs_coeff": self.lhs_coeff,
            "rhs_coeff": self.rhs_coeff,
            "lhs_zero": self.lhs_zero,
            "rhs_zero": self.rhs_zero,
            "agree": self.agree,
            "factorial_relation": self.factorial_relation_holds(),
        }


def duality_check(
    m: FpMatrix,
    r: Sequence[int],
    s: Sequence[int],
    budget: Budget | str | None = None,
) -> DualityResult:
    """Coefficient duality between the rows of m and the columns of m.

    With sum(r) == sum(s) (else DegreeMismatch) and entries in [0, p-1]:
    the coefficient of x^s in prod_i <row_i, x>^(r_i) vanishes exactly when
    the coefficient of x^r in prod_j <col_j, x>^(s_j) does.
    """
    p, n = m.p, m.n
    current_budget(budget).check_entries(p**n, what="reduced product")
    r = tuple(int(x) for x in r)
    s = tuple(int(x) for x in s)
    if len(r) != n or len(s) != n:
        raise InputError("need one exponent per coordinate on both sides")
    if any(not 0 <= x <= p - 1 for x in r + s):
        raise InputError("exponents must lie in [0, p-1]")
    if sum(r) != sum(s):
        raise DegreeMismatch(f"sum(r) = {sum(r)} differs from sum(s) = {sum(s)}")
    lhs = ReducedPoly.constant(p, n, 1)
    for i, row in enumerate(m.rows):
        lhs = lhs * (ReducedPoly.linear_form(p, row) ** r[i])
    rhs = ReducedPoly.constant(p, n, 1)
    cols = list(zip(*m.rows))
    for j, col in enumerate(cols):
        rhs = rhs * (ReducedPoly.linear_form(p, col) ** s[j])
    return DualityResult(
        p=p, n=n, r=r, s=s, lhs_coeff=lhs.coeff(s), rhs_coeff=rhs.coeff(r)
    )


def _vec_pow_mod(base: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % p
    while e:
        if e & 1:
            out = out * b % p
        e >>= 1
        if e:
            b = b * b % p
    return out


def _grid_points(p: int, n: int) -> np.ndarray:
    """All of F_p^n as an array of shape (p^n, n)."""
    return np.indices((p,) * n).reshape(n, -1).T


def scalar_product_condition(
    m: FpMatrix,
    r: Sequence[int],
    s: Sequence[int],
    route: str = "auto",
    budget: Budget | str | None = None,
) -> int:
    """The full-grid sum of prod_i <a_i, x>^(r_i) * prod_j x_j^(s_j), mod p.

    Exponents must lie in [1, p-1]. Route 'evaluate' sums over the grid;
    route 'coefficient' reads the sum off the reduced product: only the
    all-(p-1) monomial survives the power-sum filter, with sign (-1)^n.
    """
    p, n = m.p, m.n
    b = current_budget(budget)
    r = tuple(int(x) for x in r)
    s = tuple(int(x) for x in s)
    if len(r) != n or len(s) != n:
        raise InputError("need one exponent per coordinate on both sides")
    if any(not 1 <= x <= p - 1 for x in r + s):
        raise InputError("exponents must lie in [1, p-1]")
    if route == "auto":
        route = "evaluate" if p**n <= 2**20 and p**n <= b.entries else "coefficient"
    if route == "evaluate":
        b.check_entries(p**n, what="grid evaluation")
        points = _grid_points(p, n)
        rows = np.array(m.rows, dtype=np.int64)
        forms = points @ rows.T % p
        vals = np.ones(points.shape[0], dtype=np.int64)
        for i in range(n):
            vals = vals * _vec_pow_mod(forms[:, i], r[i], p) % p
            vals = vals * _vec_pow_mod(points[:, i], s[i], p) % p
        return int(vals.sum() % p)
    if route == "coefficient":
        b.check_entries(p**n, what="reduced product")
        f = ReducedPoly.constant(p, n, 1)
        for i, row in enumerate(m.rows):
            f = f * (ReducedPoly.linear_form(p, row) ** r[i])
        mono = [0] * n
        for j in range(n):
            mono[j] = s[j]
        f = f * ReducedPoly.monomial(p, n, mono)
        c = f.coeff((p - 1,) * n)
        return c * pow(-1, n, p) % p
    raise InputError(f"unknown route {route!r}")
