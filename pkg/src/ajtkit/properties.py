"""Equivalence chain between nowhere-forbidden solvability and vanishing checks.

For a nonsingular matrix M with rows a_i, forbidden residue lists c_i for the
coordinates and d_i for the images, the five properties are:

  P1: no x has x_i outside c_i for all i and <a_i, x> outside d_i for all i.
  P2: the product of (x_i - c) and (<a_i, x> - d) factors reduces to zero.
  P3: the phased group-ring product over the cyclotomic integers vanishes.
  P4: the unphased group-ring product over F_p vanishes (multiplicities
      t_i = |c_i|, t'_i = |d_i|).
  P5: the monomial product prod <a_i,x>^(t'_i) * prod x_i^(t_i) drops total
      degree after reduction.

P1, P2, P3 are equivalent; P3 implies P4 implies P5 (p > 3). check_all runs
all five and reports any violation of that chain.

The delta operators and the pairing test exercise the functional reading of
P4: difference operators along unit vectors and along the rows of M, images
characterized by vanishing line sums, and the orthogonality between the two
images when the product vanishes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .budget import Budget, current_budget
from .errors import (
    InputError,
    MathViolation,
    PreconditionViolated,
)
from .fp_core import FpMatrix, _as_prime
from .fp_poly import (
    _eval_dense,
    _interpolate_dense,
    check_p2,
    check_p5,
)
from .group_ring import (
    FactorSpec,
    ModPRing,
    check_p3,
    check_p4,
    product_of_factors,
)


@dataclass(frozen=True)
class ForbiddenSpec:
    """Forbidden residue lists: c_lists for coordinates, d_lists for images.

    Values within one list must be distinct mod p; empty lists mean the
    coordinate or image is unconstrained.
    """

    p: int
    n: int
    c_lists: tuple[tuple[int, ...], ...]
    d_lists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.c_lists) != self.n or len(self.d_lists) != self.n:
            raise InputError("need one forbidden list per coordinate and per image")
        for lists in (self.c_lists, self.d_lists):
            for vals in lists:
                if any(not 0 <= v < self.p for v in vals):
                    raise InputError("forbidden residues must lie in [0, p)")
                if len(set(vals)) != len(vals):
                    raise InputError("forbidden residues must be distinct")

    @classmethod
    def default(cls, p: int, n: int) -> "ForbiddenSpec":
        """The nowhere-zero case: c_i = d_i = {0}."""
        return cls(p=p, n=n, c_lists=((0,),) * n, d_lists=((0,),) * n)

    @classmethod
    def random(
        cls, p: int, n: int, rng: random.Random, max_size: int | None = None
    ) -> "ForbiddenSpec":
        if max_size is None:
            max_size = min(3, p - 1)
        def draw():
            out = []
            for _ in range(n):
                size = rng.randrange(max_size + 1)
                out.append(tuple(sorted(rng.sample(range(p), size))))
            return tuple(out)
        return cls(p=p, n=n, c_lists=draw(), d_lists=draw())

    @property
    def t(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.c_lists)

    @property
    def t_prime(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.d_lists)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "c_lists": [list(c) for c in self.c_lists],
            "d_lists": [list(d) for d in self.d_lists],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ForbiddenSpec":
        try:
            return cls(
                p=int(obj["p"]),
                n=int(obj["n"]),
                c_lists=tuple(tuple(int(v) for v in c) for c in obj["c_lists"]),
                d_lists=tuple(tuple(int(v) for v in d) for d in obj["d_lists"]),
            )
        except (KeyError, TypeError):
            raise InputError(
                "forbidden-spec JSON needs p, n, c_lists, d_lists"
            ) from None


# ---------------------------------------------------------------------------
# witness search


def _search_rows(
    p: int,
    n: int,
    allowed_per_coord: Sequence[Sequence[int]],
    rows: Sequence[Sequence[int]],
    forbidden_per_row: Sequence[frozenset[int]],
    budget: Budget,
    value_orders: Sequence[Sequence[int]] | None = None,
) -> tuple[int, ...] | None:
    """Depth-first search for x with x_i allowed and <row_i, x> never forbidden.

    Coordinates are assigned in ascending-slack order (fewest allowed values
    first); a row is checked as soon as its last participating coordinate is
    assigned. Returns the first witness in that deterministic order.
    """
    order = sorted(range(n), key=lambda i: (len(allowed_per_coord[i]), i))
    position = {coord: pos for pos, coord in enumerate(order)}
    due: list[list[int]] = [[] for _ in range(n)]
    for ri, row in enumerate(rows):
        involved = [j for j, a in enumerate(row) if a % p]
        if not involved:
            # a zero row has constant image 0
            if 0 in forbidden_per_row[ri]:
                return None
            continue
        due[max(position[j] for j in involved)].append(ri)

    if value_orders is None:
        value_orders = [allowed_per_coord[i] for i in range(n)]

    assignment = [0] * n
    sums = [0] * len(rows)
    nodes = 0

    def walk(pos: int) -> tuple[int, ...] | None:
        nonlocal nodes
        if pos == n:
            return tuple(assignment)
        coord = order[pos]
        for val in value_orders[coord]:
            nodes += 1
            budget.check_nodes(nodes, what="witness search")
            assignment[coord] = val
            touched = []
            ok = True
            for ri, row in enumerate(rows):
                a = row[coord] % p
                if a:
                    sums[ri] = (sums[ri] + a * val) % p
                    touched.append(ri)
            for ri in due[pos]:
                if sums[ri] in forbidden_per_row[ri]:
                    ok = False
                    break
            if ok:
                result = walk(pos + 1)
                if result is not None:
                    return result
            for ri in touched:
                a = rows[ri][coord] % p
                sums[ri] = (sums[ri] - a * val) % p
        return None

    return walk(0)


def check_p1(
    m: FpMatrix,
    spec: ForbiddenSpec | None = None,
    budget: Budget | str | None = None,
) -> tuple[int, ...] | None:
    """Exhaustive witness search for the solvability property.

    Returns x with every x_i off its forbidden list and every <a_i, x> off
    its list, or None when no such x exists (the property holds).
    """
    p, n = m.p, m.n
    if spec is None:
        spec = ForbiddenSpec.default(p, n)
    if (spec.p, spec.n) != (p, n):
        raise InputError("forbidden spec does not match the matrix")
    b = current_budget(budget)
    allowed = [
        [v for v in range(p) if v not in set(c)] for c in spec.c_lists
    ]
    return _search_rows(
        p,
        n,
        allowed,
        [list(row) for row in m.rows],
        [frozenset(d) for d in spec.d_lists],
        b,
    )


def check_multi(
    matrices: Sequence[FpMatrix],
    seed: int | None = None,
    budget: Budget | str | None = None,
) -> tuple[int, ...] | None:
    """Witness x such that every M_j x is nowhere zero (x itself unconstrained).

    Exhaustive over F_p^n in a deterministic order; a seed permutes the
    per-coordinate value order (the search stays exhaustive). A single
    matrix degenerates to the plain witness search with x unconstrained.
    """
    if not matrices:
        raise InputError("need at least one matrix")
    p, n = matrices[0].p, matrices[0].n
    for m in matrices:
        if (m.p, m.n) != (p, n):
            raise InputError("matrices must share p and n")
        if not m.is_nonsingular():
            raise PreconditionViolated("matrices must be nonsingular")
    b = current_budget(budget)
    rows = [list(row) for m in matrices for row in m.rows]
    forbidden = [frozenset((0,))] * len(rows)
    allowed = [list(range(p)) for _ in range(n)]
    orders = None
    if seed is not None:
        rng = random.Random(seed)
        orders = [rng.sample(range(p), p) for _ in range(n)]
    return _search_rows(p, n, allowed, rows, forbidden, b, value_orders=orders)


# ---------------------------------------------------------------------------
# difference operators along unit vectors and along rows


@dataclass(frozen=True)
class FunctionTable:
    """A function F_p^n -> F_p as a dense value table."""

    p: int
    values: np.ndarray

    def __post_init__(self):
        p = _as_prime(self.p)
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.int64) % p)
        if self.values.shape != (p,) * self.values.ndim:
            raise InputError("table must have shape (p,) * n")

    @property
    def n(self) -> int:
        return self.values.ndim

    @classmethod
    def random(cls, p: int, n: int, rng: random.Random) -> "FunctionTable":
        vals = np.array(
            [rng.randrange(p) for _ in range(p**n)], dtype=np.int64
        ).reshape((p,) * n)
        return cls(p, vals)

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def __eq__(self, other):
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.values, other.values)


def delta(f: FunctionTable, v: Sequence[int]) -> FunctionTable:
    """(delta_v f)(x) = f(x) - f(x + v)."""
    shift = tuple(-(int(a) % f.p) for a in v)
    return FunctionTable(
        f.p, (f.values - np.roll(f.values, shift, axis=tuple(range(f.n)))) % f.p
    )


def line_sum(f: FunctionTable, v: Sequence[int]) -> FunctionTable:
    """(L_v f)(x) = sum over t in F_p of f(x + t v)."""
    p = f.p
    acc = np.zeros_like(f.values)
    for t in range(p):
        shift = tuple(-(t * int(a) % p) for a in v)
        acc = (acc + np.roll(f.values, shift, axis=tuple(range(f.n)))) % p
    return FunctionTable(p, acc)


def line_sums_zero(f: FunctionTable, directions: Sequence[Sequence[int]]) -> bool:
    return all(line_sum(f, v).is_zero() for v in directions)


def image_membership_routes(
    f: FunctionTable, m: FpMatrix | None = None
) -> tuple[bool, bool]:
    """Both routes for membership in the image of the composed delta operators.

    Directions are the unit vectors, or the rows of m when given. Route one
    tests that every line sum along each direction vanishes. Route two works
    at the coefficient level: membership means the function is a polynomial
    of per-variable degree <= p-2 in the dual coordinates, which the
    interpolated coefficient tensor shows directly.
    """
    p, n = f.p, f.n
    if m is None:
        directions = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        table = f.values
    else:
        if (m.p, m.n) != (p, n):
            raise InputError("matrix does not match the table")
        directions = [list(row) for row in m.rows]
        # pull back through y -> transpose(M) y; membership along the rows of
        # M becomes membership along unit vectors for the pulled-back table
        points = np.indices((p,) * n).reshape(n, -1).T
        mt = np.array(m.transpose().rows, dtype=np.int64)
        images = points @ mt.T % p
        flat = f.values[tuple(images.T)]
        table = flat.reshape((p,) * n)
    by_sums = all(
        line_sum(f, v).is_zero() for v in directions
    )
    coeffs = _interpolate_dense(table, p)
    by_coeffs = True
    for axis in range(n):
        slab = np.take(coeffs, p - 1, axis=axis)
        if np.any(slab):
            by_coeffs = False
            break
    return by_sums, by_coeffs


def image_membership_delta(f: FunctionTable, m: FpMatrix | None = None) -> bool:
    """Image membership with both routes run and compared."""
    by_sums, by_coeffs = image_membership_routes(f, m)
    if by_sums != by_coeffs:
        raise MathViolation(
            "line-sum route and coefficient route disagree on image membership"
        )
    return by_sums


@dataclass(frozen=True)
class PairingReport:
    """Outcome of the orthogonality test between the two delta images."""

    p: int
    n: int
    p4: bool
    trials: int
    seed: int
    nonzero_pairings: int
    exhaustive: bool
    converse_confirmed: bool

    @property
    def ok(self) -> bool:
        # the proved direction: a vanishing product forces zero pairings
        return not (self.p4 and self.nonzero_pairings > 0)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "P4": self.p4,
            "trials": self.trials,
            "seed": self.seed,
            "nonzero_pairings": self.nonzero_pairings,
            "exhaustive": self.exhaustive,
            "converse_confirmed": self.converse_confirmed,
            "ok": self.ok,
        }


def _table_from_coeff_tensor(c: np.ndarray, p: int) -> np.ndarray:
    full = np.zeros((p,) * c.ndim, dtype=np.int64)
    full[tuple(slice(0, p - 1) for _ in range(c.ndim))] = c
    return _eval_dense(full, p)


def pairing_test(
    m: FpMatrix,
    trials: int = 200,
    seed: int = 0,
    budget: Budget | str | None = None,
) -> PairingReport:
    """Sample the pairing sum_x f(x) g(x) over the two delta images.

    f runs over the image of the unit-direction deltas (per-variable degree
    <= p-2); g over the image of the row-direction deltas (polynomials in
    the dual coordinates with per-variable degree <= p-2). When the P4
    product vanishes every pairing must be zero; that direction is asserted
    by ok. The converse is reported: with P4 false, a nonzero pairing is
    searched for (exhaustively over the basis when the budget allows).
    """
    p, n = m.p, m.n
    b = current_budget(budget)
    b.check_entries(p**n, what="pairing table")
    p4 = check_p4(m, budget=b)
    rng = random.Random(seed)
    minv = m.invert()
    # g(x) = h(transpose(M') x) with M' the inverse; build by substitution
    points = np.indices((p,) * n).reshape(n, -1).T
    mprime = np.array(minv.rows, dtype=np.int64)
    subst = points @ mprime % p  # row x gives transpose(M') x
    nonzero = 0
    for _ in range(trials):
        cf = np.array(
            [rng.randrange(p) for _ in range((p - 1) ** n)], dtype=np.int64
        ).reshape((p - 1,) * n)
        ch = np.array(
            [rng.randrange(p) for _ in range((p - 1) ** n)], dtype=np.int64
        ).reshape((p - 1,) * n)
        f_table = _table_from_coeff_tensor(cf, p)
        h_table = _table_from_coeff_tensor(ch, p)
        g_flat = h_table[tuple(subst.T)]
        pairing = int((f_table.ravel() * g_flat).sum() % p)
        if pairing:
            nonzero += 1
    exhaustive = False
    converse = nonzero > 0
    if not p4 and nonzero == 0:
        # basis scan: f = x^b, h = y^c over b, c in [0, p-2]^n
        if (p - 1) ** (2 * n) * p**n <= b.nodes:
            exhaustive = True
            basis_f = []
            for b_exp in np.ndindex(*((p - 1,) * n)):
                cf = np.zeros((p - 1,) * n, dtype=np.int64)
                cf[b_exp] = 1
                basis_f.append(_table_from_coeff_tensor(cf, p).ravel())
            for c_exp in np.ndindex(*((p - 1,) * n)):
                ch = np.zeros((p - 1,) * n, dtype=np.int64)
                ch[c_exp] = 1
                g_flat = _table_from_coeff_tensor(ch, p)[tuple(subst.T)]
                for f_flat in basis_f:
                    if int((f_flat * g_flat).sum() % p):
                        converse = True
                        break
                if converse:
                    break
    return PairingReport(
        p=p,
        n=n,
        p4=p4,
        trials=trials,
        seed=seed,
        nonzero_pairings=nonzero,
        exhaustive=exhaustive,
        converse_confirmed=converse,
    )


# ---------------------------------------------------------------------------
# scaling invariance and the full report


@dataclass(frozen=True)
class InvarianceReport:
    """Vanishing of the scaled factor products against the unscaled one."""

    p: int
    n: int
    base: bool
    trials: int
    seed: int
    mismatches: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "base": self.base,
            "trials": self.trials,
            "seed": self.seed,
            "mismatches": list(self.mismatches),
            "ok": self.ok,
        }


def multiplier_invariance_test(
    m: FpMatrix,
    t: Sequence[int] | None = None,
    t_prime: Sequence[int] | None = None,
    trials: int = 100,
    seed: int = 0,
    budget: Budget | str | None = None,
) -> InvarianceReport:
    """Vanishing of the F_p factor product is blind to nonzero scalings.

    Replaces e_i by lambda_i e_i and a_i by mu_i a_i with random nonzero
    scalars and rechecks; every trial must agree with the unscaled verdict.
    """
    p, n = m.p, m.n
    if t is None:
        t = [1] * n
    if t_prime is None:
        t_prime = [1] * n
    base = check_p4(m, t=t, t_prime=t_prime, budget=budget)
    rng = random.Random(seed)
    mismatches = []
    for trial in range(trials):
        lams = [rng.randrange(1, p) for _ in range(n)]
        mus = [rng.randrange(1, p) for _ in range(n)]
        vectors = [
            tuple(lams[i] if j == i else 0 for j in range(n)) for i in range(n)
        ]
        vectors += [
            tuple(mus[i] * a % p for a in row) for i, row in enumerate(m.rows)
        ]
        spec = FactorSpec(
            p=p,
            n=n,
            vectors=tuple(vectors),
            exponents=tuple(t) + tuple(t_prime),
        )
        scaled = product_of_factors(spec, ModPRing, budget=budget).is_zero()
        if scaled != base:
            mismatches.append(
                {"trial": trial, "lambdas": lams, "mus": mus, "scaled": scaled}
            )
    return InvarianceReport(
        p=p,
        n=n,
        base=base,
        trials=trials,
        seed=seed,
        mismatches=tuple(mismatches),
    )


@dataclass(frozen=True)
class PropertyReport:
    """All five properties for one matrix and forbidden spec, plus violations."""

    matrix: FpMatrix
    spec: ForbiddenSpec
    p1_witness: tuple[int, ...] | None
    p2: bool
    p3: bool
    p4: bool
    p5: bool

    @property
    def p1(self) -> bool:
        return self.p1_witness is None

    @property
    def violations(self) -> tuple[str, ...]:
        out = []
        if self.p1 != self.p2:
            out.append("P1 != P2")
        if self.p2 != self.p3:
            out.append("P2 != P3")
        if self.p3 and not self.p4:
            out.append("P3 without P4")
        if self.p4 and not self.p5:
            out.append("P4 without P5")
        return tuple(out)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "forbidden": self.spec.to_json(),
            "P1": {
                "vanishes": self.p1,
                "witness": list(self.p1_witness) if self.p1_witness else None,
            },
            "P2": self.p2,
            "P3": self.p3,
            "P4": self.p4,
            "P5": self.p5,
            "violations": list(self.violations),
        }


def check_all(
    m: FpMatrix,
    spec: ForbiddenSpec | None = None,
    budget: Budget | str | None = None,
) -> PropertyReport:
    """Run P1 through P5 for one matrix; requires p > 3."""
    p, n = m.p, m.n
    if p <= 3:
        raise PreconditionViolated("the property chain needs p > 3")
    if not m.is_nonsingular():
        raise PreconditionViolated("the property chain is stated for nonsingular matrices")
    if spec is None:
        spec = ForbiddenSpec.default(p, n)
    if (spec.p, spec.n) != (p, n):
        raise InputError("forbidden spec does not match the matrix")
    witness = check_p1(m, spec, budget=budget)
    p2 = check_p2(m, spec.c_lists, spec.d_lists, budget=budget)
    p3 = check_p3(m, spec.c_lists, spec.d_lists, budget=budget)
    p4 = check_p4(m, t=spec.t, t_prime=spec.t_prime, budget=budget)
    p5 = check_p5(m, t=spec.t, t_prime=spec.t_prime, budget=budget)
    return PropertyReport(
        matrix=m, spec=spec, p1_witness=witness, p2=p2, p3=p3, p4=p4, p5=p5
    )
