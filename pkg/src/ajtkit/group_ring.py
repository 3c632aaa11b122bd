"""Group rings R[(Z/p)^n] with R one of Z, F_p, or the cyclotomic integers.

Elements are dense coefficient tables of shape (p,) * n; multiplying by a
group element g^v is an axis roll. The vanishing checks below are the
translation layer between nowhere-zero statements about matrices and
products of factors (1 - phase * g^v) in these rings. All cyclotomic
arithmetic is exact integer arithmetic in Z[x] modulo the p-th cyclotomic
polynomial, so zero tests are decisions, not float comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .budget import Budget, current_budget
from .errors import (
    InputError,
    PhaseInNonCyclotomicRing,
    RingMismatch,
)
from .fp_core import FpMatrix, _as_prime


class _RingTag:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name


IntegerRing = _RingTag("IntegerRing")
ModPRing = _RingTag("ModPRing")
CyclotomicRing = _RingTag("CyclotomicRing")

_RINGS = (IntegerRing, ModPRing, CyclotomicRing)


class CyclotomicInt:
    """An element of Z[w], w a primitive p-th root of unity.

    Stored on the integral basis 1, w, ..., w^(p-2); products are cyclic
    convolutions of length p followed by elimination of the w^(p-1)
    coordinate via 1 + w + ... + w^(p-1) = 0. The representation is unique,
    so equality and zero tests are exact.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        self.p = p
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != p - 1:
            raise InputError(f"need exactly p - 1 = {p - 1} coefficients")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, p: int) -> "CyclotomicInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_int(cls, p: int, c: int) -> "CyclotomicInt":
        return cls(p, (c,) + (0,) * (p - 2))

    @classmethod
    def omega_pow(cls, p: int, k: int) -> "CyclotomicInt":
        k %= p
        if k == p - 1:
            # w^(p-1) = -(1 + w + ... + w^(p-2))
            return cls(p, (-1,) * (p - 1))
        return cls(p, tuple(1 if i == k else 0 for i in range(p - 1)))

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, CyclotomicInt):
            if other.p != self.p:
                raise RingMismatch("cyclotomic elements of different orders")
            return other
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInt(
            self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInt(
            self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        conv = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[(i + j) % p] += a * b
        top = conv[p - 1]
        return CyclotomicInt(p, tuple(conv[i] - top for i in range(p - 1)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def as_int(self) -> int | None:
        """The rational integer this element equals, or None."""
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CyclotomicInt(p={self.p}, {list(self.coeffs)})"


def _ring_zero(p: int, ring: _RingTag):
    if ring is CyclotomicRing:
        return CyclotomicInt.zero(p)
    return 0


def _ring_one(p: int, ring: _RingTag):
    if ring is CyclotomicRing:
        return CyclotomicInt.from_int(p, 1)
    return 1


class GroupRingElem:
    """A dense element of R[(Z/p)^n]; coefficients indexed by group vectors."""

    __slots__ = ("p", "n", "ring", "coeffs")

    def __init__(self, p: int, n: int, ring: _RingTag, coeffs: np.ndarray):
        self.p = _as_prime(p)
        self.n = int(n)
        if ring not in _RINGS:
            raise InputError(f"unknown ring {ring!r}")
        self.ring = ring
        if coeffs.shape != (p,) * n:
            raise InputError("coefficient table has the wrong shape")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, p: int, n: int, ring: _RingTag) -> "GroupRingElem":
        if ring is ModPRing:
            table = np.zeros((p,) * n, dtype=np.int64)
        else:
            table = np.full((p,) * n, _ring_zero(p, ring), dtype=object)
        return cls(p, n, ring, table)

    @classmethod
    def monomial(
        cls, p: int, n: int, ring: _RingTag, v: Sequence[int], coeff=None
    ) -> "GroupRingElem":
        """The element coeff * g^v."""
        out = cls.zero(p, n, ring)
        if coeff is None:
            coeff = _ring_one(p, ring)
        idx = tuple(int(a) % p for a in v)
        if ring is ModPRing:
            out.coeffs[idx] = int(coeff) % p
        else:
            out.coeffs[idx] = coeff
        return out

    @classmethod
    def identity(cls, p: int, n: int, ring: _RingTag) -> "GroupRingElem":
        return cls.monomial(p, n, ring, (0,) * n)

    def _same_ring(self, other: "GroupRingElem") -> None:
        if not isinstance(other, GroupRingElem):
            raise RingMismatch("expected a GroupRingElem")
        if (other.p, other.n, other.ring) != (self.p, self.n, self.ring):
            raise RingMismatch(
                f"elements live in different rings: "
                f"({self.p},{self.n},{self.ring}) vs ({other.p},{other.n},{other.ring})"
            )

    def _wrap(self, table: np.ndarray) -> "GroupRingElem":
        if self.ring is ModPRing:
            table = table % self.p
        return GroupRingElem(self.p, self.n, self.ring, table)

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._same_ring(other)
        return self._wrap(self.coeffs + other.coeffs)

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._same_ring(other)
        return self._wrap(self.coeffs - other.coeffs)

    def __neg__(self) -> "GroupRingElem":
        return self._wrap(-self.coeffs)

    def translate(self, v: Sequence[int]) -> "GroupRingElem":
        """Multiplication by the group element g^v."""
        shift = tuple(int(a) % self.p for a in v)
        return GroupRingElem(
            self.p, self.n, self.ring,
            np.roll(self.coeffs, shift, axis=tuple(range(self.n))),
        )

    def scale(self, c) -> "GroupRingElem":
        if self.ring is ModPRing:
            return self._wrap(self.coeffs * (int(c) % self.p))
        flat = self.coeffs.ravel()
        out = np.array([x * c for x in flat], dtype=object).reshape(self.coeffs.shape)
        return GroupRingElem(self.p, self.n, self.ring, out)

    def apply_one_minus_g(self, v: Sequence[int], phase: int | None = None) -> "GroupRingElem":
        """Multiply by (1 - g^v), or by (1 - w^(-phase) * g^v) over the cyclotomic ring."""
        rolled = self.translate(v)
        if phase is None:
            return self - rolled
        if self.ring is not CyclotomicRing:
            raise PhaseInNonCyclotomicRing(
                "phases require the cyclotomic coefficient ring"
            )
        return self - rolled.scale(CyclotomicInt.omega_pow(self.p, -phase))

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._same_ring(other)
        # convolve against the sparser operand
        a, b = self, other
        if _support_size(b.coeffs) > _support_size(a.coeffs):
            a, b = b, a
        out = GroupRingElem.zero(self.p, self.n, self.ring)
        acc = out.coeffs
        for v, c in b.support_items():
            rolled = np.roll(a.coeffs, v, axis=tuple(range(self.n)))
            if self.ring is ModPRing:
                acc = (acc + rolled * c) % self.p
            else:
                flat = acc.ravel()
                rflat = rolled.ravel()
                acc = np.array(
                    [x + y * c for x, y in zip(flat, rflat)], dtype=object
                ).reshape(acc.shape)
        return GroupRingElem(self.p, self.n, self.ring, acc)

    def coeff(self, v: Sequence[int]):
        return self.coeffs[tuple(int(a) % self.p for a in v)]

    def support_items(self) -> Iterator[tuple[tuple[int, ...], object]]:
        for idx in np.ndindex(*self.coeffs.shape):
            c = self.coeffs[idx]
            if (not c.is_zero()) if isinstance(c, CyclotomicInt) else c != 0:
                yield idx, c

    def is_zero(self) -> bool:
        if self.ring is ModPRing:
            return not np.any(self.coeffs)
        for x in self.coeffs.ravel():
            if (not x.is_zero()) if isinstance(x, CyclotomicInt) else x != 0:
                return False
        return True

    def reduce_mod_p(self) -> "GroupRingElem":
        """Coefficientwise reduction Z -> F_p."""
        if self.ring is not IntegerRing:
            raise RingMismatch("reduction maps the integer ring to the mod-p ring")
        table = np.array(
            [int(x) % self.p for x in self.coeffs.ravel()], dtype=np.int64
        ).reshape(self.coeffs.shape)
        return GroupRingElem(self.p, self.n, ModPRing, table)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        try:
            self._same_ring(other)
        except RingMismatch:
            return False
        return (self - other).is_zero()

    def __repr__(self):
        return (
            f"GroupRingElem(p={self.p}, n={self.n}, ring={self.ring}, "
            f"support={_support_size(self.coeffs)})"
        )

    def to_json(self) -> dict:
        nonzero = []
        for v, c in self.support_items():
            if isinstance(c, CyclotomicInt):
                coeff = list(c.coeffs)
            else:
                coeff = int(c)
            nonzero.append({"vector": list(v), "coeff": coeff})
        return {
            "p": self.p,
            "n": self.n,
            "ring": self.ring.name,
            "nonzero": nonzero,
        }


def _support_size(table: np.ndarray) -> int:
    if table.dtype == object:
        return sum(
            1
            for x in table.ravel()
            if ((not x.is_zero()) if isinstance(x, CyclotomicInt) else x != 0)
        )
    return int(np.count_nonzero(table))


def one_minus_g(
    p: int, n: int, v: Sequence[int], ring: _RingTag, phase: int | None = None
) -> GroupRingElem:
    """The factor 1 - g^v, or 1 - w^(-phase) * g^v over the cyclotomic ring."""
    out = GroupRingElem.identity(p, n, ring)
    if phase is None:
        return out - GroupRingElem.monomial(p, n, ring, v)
    if ring is not CyclotomicRing:
        raise PhaseInNonCyclotomicRing("phases require the cyclotomic coefficient ring")
    return out - GroupRingElem.monomial(
        p, n, ring, v, CyclotomicInt.omega_pow(p, -phase)
    )


@dataclass(frozen=True)
class FactorSpec:
    """A product of factors (1 - phase * g^v) grouped by base vector.

    vectors[i] appears exponents[i] times; phases, when given, holds one
    phase exponent per repetition (the factor is 1 - w^(-phase) * g^v) and
    the phases of one vector must be pairwise distinct mod p.
    """

    p: int
    n: int
    vectors: tuple[tuple[int, ...], ...]
    exponents: tuple[int, ...]
    phases: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if len(self.exponents) != len(self.vectors):
            raise InputError("one exponent per vector")
        if any(e < 0 for e in self.exponents):
            raise InputError("exponents must be nonnegative")
        if any(len(v) != self.n for v in self.vectors):
            raise InputError("vectors must have length n")
        if self.phases is not None:
            if len(self.phases) != len(self.vectors):
                raise InputError("one phase tuple per vector")
            for ph, e in zip(self.phases, self.exponents):
                if len(ph) != e:
                    raise InputError("need one phase per factor repetition")
                if len({c % self.p for c in ph}) != len(ph):
                    raise InputError("phases of one vector must be distinct mod p")

    @classmethod
    def from_matrix(
        cls,
        m: FpMatrix,
        t: Sequence[int] | None = None,
        t_prime: Sequence[int] | None = None,
        c_lists: Sequence[Sequence[int]] | None = None,
        d_lists: Sequence[Sequence[int]] | None = None,
    ) -> "FactorSpec":
        """Factors for the unit vectors (exponents t, phases c) then the rows
        of m (exponents t', phases d)."""
        p, n = m.p, m.n
        if c_lists is not None:
            t = [len(c) for c in c_lists]
        elif t is None:
            t = [1] * n
        if d_lists is not None:
            t_prime = [len(d) for d in d_lists]
        elif t_prime is None:
            t_prime = [1] * n
        if len(t) != n or len(t_prime) != n:
            raise InputError("need one exponent per coordinate")
        vectors = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        vectors += [tuple(row) for row in m.rows]
        exponents = tuple(t) + tuple(t_prime)
        phases = None
        if c_lists is not None or d_lists is not None:
            if c_lists is None or d_lists is None:
                raise InputError("give both phase families or neither")
            phases = tuple(tuple(int(x) for x in ph) for ph in c_lists) + tuple(
                tuple(int(x) for x in ph) for ph in d_lists
            )
        return cls(
            p=p, n=n, vectors=tuple(vectors), exponents=exponents, phases=phases
        )


def product_of_factors(
    spec: FactorSpec, ring: _RingTag, budget: Budget | str | None = None
) -> GroupRingElem:
    """Expand the factor product as a dense group-ring element."""
    b = current_budget(budget)
    b.check_entries(spec.p**spec.n, what="group-ring table")
    if spec.phases is not None and ring is not CyclotomicRing:
        raise PhaseInNonCyclotomicRing("phases require the cyclotomic coefficient ring")
    out = GroupRingElem.identity(spec.p, spec.n, ring)
    for i, (v, e) in enumerate(zip(spec.vectors, spec.exponents)):
        for rep in range(e):
            phase = spec.phases[i][rep] if spec.phases is not None else None
            out = out.apply_one_minus_g(v, phase=phase)
    return out


def check_p4(
    m: FpMatrix,
    t: Sequence[int] | None = None,
    t_prime: Sequence[int] | None = None,
    budget: Budget | str | None = None,
) -> bool:
    """Vanishing of prod (1-g^(e_i))^(t_i) * prod (1-g^(a_i))^(t'_i) over F_p."""
    spec = FactorSpec.from_matrix(m, t=t, t_prime=t_prime)
    return product_of_factors(spec, ModPRing, budget=budget).is_zero()


def check_p3(
    m: FpMatrix,
    c_lists: Sequence[Sequence[int]],
    d_lists: Sequence[Sequence[int]],
    budget: Budget | str | None = None,
) -> bool:
    """Vanishing of the phased factor product over the cyclotomic integers.

    Factor i,k for the unit vectors is 1 - w^(-c_{i,k}) g^(e_i), and for the
    rows 1 - w^(-d_{i,k}) g^(a_i). Exact integer arithmetic, so this decides
    the complex-coefficient vanishing.
    """
    spec = FactorSpec.from_matrix(m, c_lists=c_lists, d_lists=d_lists)
    return product_of_factors(spec, CyclotomicRing, budget=budget).is_zero()


def check_p3_integer(m: FpMatrix, budget: Budget | str | None = None) -> bool:
    """Vanishing of prod (1-g^(e_i)) * prod (1-g^(a_i)) over Z (all phases trivial)."""
    spec = FactorSpec.from_matrix(m)
    return product_of_factors(spec, IntegerRing, budget=budget).is_zero()


def sigma_of_factors(
    m: FpMatrix, budget: Budget | str | None = None
) -> list[GroupRingElem]:
    """Elementary symmetric functions sigma_0..sigma_2n of the 2n factors
    (1-g^(e_1)), ..., (1-g^(e_n)), (1-g^(a_1)), ..., (1-g^(a_n)) over F_p."""
    b = current_budget(budget)
    p, n = m.p, m.n
    b.check_entries(p**n, what="group-ring table")
    unit_vectors = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    factors = [one_minus_g(p, n, v, ModPRing) for v in unit_vectors]
    factors += [one_minus_g(p, n, row, ModPRing) for row in m.rows]
    sigmas = [GroupRingElem.identity(p, n, ModPRing)]
    for w in factors:
        new = [sigmas[0]]
        for j in range(1, len(sigmas) + 1):
            term = sigmas[j - 1] * w
            if j < len(sigmas):
                term = sigmas[j] + term
            new.append(term)
        sigmas = new
    return sigmas


@dataclass(frozen=True)
class SigmaReport:
    """Which sigma_(2n-i) vanish for i = 0..p-1; all must for a candidate."""

    p: int
    n: int
    vanishing: tuple[bool, ...]

    @property
    def candidate(self) -> bool:
        return all(self.vanishing)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "candidate": self.candidate,
            "vanishing": list(self.vanishing),
        }


def sigma_vanishing_candidate(
    m: FpMatrix, budget: Budget | str | None = None
) -> SigmaReport:
    """Test sigma_(2n-i) == 0 for all 0 <= i <= p-1.

    Out-of-range indices count as vanishing (sigma_j = 0 for j < 0 or
    j > 2n) except sigma_0 = 1, which never vanishes; so the candidate
    test is decidably false whenever 2n <= p - 1.
    """
    sigmas = sigma_of_factors(m, budget=budget)
    p, n = m.p, m.n
    flags = []
    for i in range(p):
        j = 2 * n - i
        if j == 0:
            flags.append(False)
        elif j < 0 or j > 2 * n:
            flags.append(True)
        else:
            flags.append(sigmas[j].is_zero())
    return SigmaReport(p=p, n=n, vanishing=tuple(flags))


@dataclass(frozen=True)
class DeleteScanReport:
    """Vanishing pattern when one row factor block is removed."""

    full_zero: bool
    dropped_zero: tuple[bool, ...]

    @property
    def some_drop_vanishes(self) -> bool:
        return any(self.dropped_zero)


def delete_one_factor_scan(
    m: FpMatrix, k: int = 1, budget: Budget | str | None = None
) -> DeleteScanReport:
    """Check the full product prod (1-g^(e_i))^k * prod (1-g^(a_i))^k over F_p
    and each variant with one row block (1-g^(a_j))^k removed."""
    n = m.n
    full = check_p4(m, t=[k] * n, t_prime=[k] * n, budget=budget)
    dropped = []
    for j in range(n):
        t_prime = [k] * n
        t_prime[j] = 0
        dropped.append(check_p4(m, t=[k] * n, t_prime=t_prime, budget=budget))
    return DeleteScanReport(full_zero=full, dropped_zero=tuple(dropped))
