"""Prime-field scalars, vectors and matrices.

Everything downstream works over F_p for an odd prime p. Residues are kept
canonical in [0, p-1]. Matrices are immutable; determinants are computed by
Gaussian elimination over the field and cached.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Iterator, Sequence

from .budget import Budget, current_budget
from .errors import (
    IndexOutOfRange,
    InputError,
    NotPrime,
    SingularMatrix,
)

# Deterministic Miller-Rabin witness set, exact for every n < 3.3 * 10^24,
# far beyond the 2^31 modulus range supported here.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(m: int) -> bool:
    """Deterministic Miller-Rabin for the supported modulus range."""
    if m < 2:
        return False
    for q in _SMALL_PRIMES:
        if m % q == 0:
            return m == q
    d = m - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


class Prime(int):
    """An odd prime modulus, validated at construction."""

    def __new__(cls, value: int) -> "Prime":
        value = int(value)
        if value < 3 or not is_probable_prime(value):
            raise NotPrime(f"modulus must be an odd prime >= 3, got {value}")
        return super().__new__(cls, value)


def _as_prime(p: int) -> int:
    return int(p) if isinstance(p, Prime) else int(Prime(p))


class FpScalar:
    """A residue modulo an odd prime, with field arithmetic."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = _as_prime(p)
        self.value = int(value) % self.p

    def _coerce(self, other) -> "FpScalar":
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise InputError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpScalar(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def __pow__(self, e: int):
        if e < 0 and self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FpScalar(pow(self.value, e, self.p), self.p)

    def inverse(self) -> "FpScalar":
        return self ** (-1)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpScalar({self.value}, p={self.p})"


class FpVector:
    """An immutable vector over F_p."""

    __slots__ = ("entries", "p")

    def __init__(self, entries: Iterable[int], p: int):
        self.p = _as_prime(p)
        self.entries = tuple(int(e) % self.p for e in entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if isinstance(other, FpVector):
            return self.p == other.p and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.entries, self.p))

    def __add__(self, other: "FpVector") -> "FpVector":
        self._same_space(other)
        return FpVector(
            (a + b for a, b in zip(self.entries, other.entries)), self.p
        )

    def __sub__(self, other: "FpVector") -> "FpVector":
        self._same_space(other)
        return FpVector(
            (a - b for a, b in zip(self.entries, other.entries)), self.p
        )

    def scale(self, c: int) -> "FpVector":
        return FpVector((c * a for a in self.entries), self.p)

    def dot(self, other: "FpVector") -> int:
        self._same_space(other)
        return sum(a * b for a, b in zip(self.entries, other.entries)) % self.p

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _same_space(self, other: "FpVector") -> None:
        if not isinstance(other, FpVector):
            raise InputError("expected an FpVector")
        if other.p != self.p or len(other) != len(self):
            raise InputError("vectors live in different spaces")

    def __repr__(self):
        return f"FpVector({list(self.entries)}, p={self.p})"


class FpMatrix:
    """An immutable square matrix over F_p."""

    __slots__ = ("p", "n", "rows", "_det")

    def __init__(self, rows: Sequence[Sequence[int]], p: int):
        self.p = _as_prime(p)
        rows = tuple(tuple(int(a) % self.p for a in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise InputError("matrix must be square and nonempty")
        self.rows = rows
        self.n = n
        self._det = None

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    def row(self, i: int) -> FpVector:
        return FpVector(self.rows[i], self.p)

    def column(self, j: int) -> FpVector:
        return FpVector((row[j] for row in self.rows), self.p)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(list(zip(*self.rows)), self.p)

    def matvec(self, x: Sequence[int]) -> FpVector:
        x = list(x)
        if len(x) != self.n:
            raise InputError("dimension mismatch in matvec")
        return FpVector(
            (sum(a * b for a, b in zip(row, x)) for row in self.rows), self.p
        )

    def matmul(self, other: "FpMatrix") -> "FpMatrix":
        if not isinstance(other, FpMatrix) or other.p != self.p or other.n != self.n:
            raise InputError("matrix product needs matching shapes and moduli")
        cols = list(zip(*other.rows))
        return FpMatrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.rows
            ],
            self.p,
        )

    def det(self) -> int:
        if self._det is None:
            self._det = _det_mod_p(self.rows, self.p)
        return self._det

    def is_nonsingular(self) -> bool:
        return self.det() != 0

    def invert(self) -> "FpMatrix":
        """Inverse via Gauss-Jordan elimination; SingularMatrix when det is 0."""
        p, n = self.p, self.n
        a = [list(row) + [1 if i == j else 0 for j in range(n)]
             for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col]), None)
            if pivot is None:
                raise SingularMatrix(f"matrix is singular modulo {p}")
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
            inv = pow(a[col][col], -1, p)
            a[col] = [x * inv % p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    c = a[r][col]
                    a[r] = [(x - c * y) % p for x, y in zip(a[r], a[col])]
        return FpMatrix([row[n:] for row in a], p)

    def minor(self, i: int, j: int) -> "FpMatrix":
        """Delete row i and column j, 1-based indices."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexOutOfRange(
                f"minor indices must lie in [1, {self.n}], got ({i}, {j})"
            )
        if self.n == 1:
            raise IndexOutOfRange("a 1x1 matrix has no minors")
        rows = [
            [a for jj, a in enumerate(row) if jj != j - 1]
            for ii, row in enumerate(self.rows)
            if ii != i - 1
        ]
        return FpMatrix(rows, self.p)

    def __eq__(self, other):
        if isinstance(other, FpMatrix):
            return self.p == other.p and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.rows, self.p))

    def __repr__(self):
        return f"FpMatrix({[list(r) for r in self.rows]}, p={self.p})"

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "FpMatrix":
        try:
            p = obj["p"]
            rows = obj["rows"]
        except (KeyError, TypeError):
            raise InputError("matrix JSON needs keys 'p' and 'rows'") from None
        m = cls(rows, p)
        if "n" in obj and int(obj["n"]) != m.n:
            raise InputError("matrix JSON 'n' does not match row count")
        return m


def _det_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            if a[r][col]:
                c = a[r][col] * inv % p
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def nonsingular_count(p: int, n: int) -> int:
    """Order of GL_n(F_p)."""
    q = p**n
    out = 1
    for i in range(n):
        out *= q - p**i
    return out


def enumerate_nonzero_rows(p: int, n: int) -> Iterator[tuple[int, ...]]:
    """All nonzero length-n row tuples over F_p in lexicographic order."""
    p = _as_prime(p)
    for row in itertools.product(range(p), repeat=n):
        if any(row):
            yield row


def enumerate_nonsingular(
    p: int,
    n: int,
    budget: Budget | str | None = None,
    prefix: Sequence[Sequence[int]] | None = None,
) -> Iterator[FpMatrix]:
    """Yield every nonsingular n x n matrix over F_p.

    Order is lexicographic in the flattened row tuple. A prefix pins the
    leading rows (yielding nothing if they are dependent), which lets
    callers split the enumeration into independent chunks. The candidate
    count p^(n^2) is charged against the node budget up front.
    """
    p = _as_prime(p)
    b = current_budget(budget)
    b.check_nodes(p ** (n * n), what=f"enumeration of {n}x{n} matrices over F_{p}")
    echelon: list = []
    for row in prefix or []:
        cand = tuple(int(a) % p for a in row)
        if len(cand) != n:
            raise InputError("prefix rows must have length n")
        v = list(cand)
        for col, red, _ in echelon:
            if v[col]:
                c = v[col]
                v = [(x - c * y) % p for x, y in zip(v, red)]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            return
        inv = pow(v[lead], -1, p)
        echelon.append((lead, [x * inv % p for x in v], cand))
    if len(echelon) == n:
        yield FpMatrix([e[2] for e in echelon], p)
        return
    yield from _enumerate_rows(p, n, echelon)


def _enumerate_rows(p: int, n: int, echelon: list) -> Iterator[FpMatrix]:
    # echelon holds (pivot_col, normalized_row) pairs for the chosen prefix;
    # each stored row is reduced against all earlier ones, so a fresh candidate
    # reduces to zero exactly when it is dependent.
    prefix = [e[2] for e in echelon]
    for cand in itertools.product(range(p), repeat=n):
        v = list(cand)
        for col, row, _ in echelon:
            if v[col]:
                c = v[col]
                v = [(x - c * y) % p for x, y in zip(v, row)]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], -1, p)
        norm = [x * inv % p for x in v]
        echelon.append((lead, norm, cand))
        if len(echelon) == n:
            yield FpMatrix(prefix + [cand], p)
        else:
            yield from _enumerate_rows(p, n, echelon)
        echelon.pop()


def random_nonsingular(p: int, n: int, seed: int | None = None,
                       rng: random.Random | None = None) -> FpMatrix:
    """Rejection-sample a nonsingular matrix; deterministic for a fixed seed."""
    p = _as_prime(p)
    if rng is None:
        rng = random.Random(seed)
    while True:
        m = FpMatrix(
            [[rng.randrange(p) for _ in range(n)] for _ in range(n)], p
        )
        if m.is_nonsingular():
            return m
