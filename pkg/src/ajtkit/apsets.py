"""Subsets of Z/p closed under arithmetic-progression witnessing.

A set A is S_k-type when every a in A is the center of a (2k+1)-term
arithmetic progression contained in A (common difference d != 0). It is
N_k-type when additionally every b outside A starts a progression
b + d, ..., b + k*d contained in A. These sets certify nowhere-zero
solvability results downstream; this module builds them, searches for
minimum ones, and verifies a frozen table of small optimal examples.

Sets are bit masks over residues (bit i == residue i), so membership
scans are word rotations.
"""

from __future__ import annotations

import csv
import importlib.resources
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import kernels
from .budget import Budget, current_budget
from .errors import (
    ConstructionFailed,
    InputError,
    MathViolation,
    NotFound,
    PartitionNotFound,
    PreconditionViolated,
    RadiusTooLarge,
)
from .fp_core import FpMatrix, FpVector, Prime, _as_prime


def _rotl(mask: int, s: int, p: int) -> int:
    s %= p
    if s == 0:
        return mask
    full = (1 << p) - 1
    return ((mask << s) | (mask >> (p - s))) & full


class ResidueSet:
    """An immutable subset of Z/p stored as a p-bit mask."""

    __slots__ = ("p", "mask")

    def __init__(self, p: int, mask: int):
        self.p = _as_prime(p)
        if not 0 <= mask < (1 << self.p):
            raise InputError("mask has bits outside [0, p)")
        self.mask = mask

    @classmethod
    def from_elements(cls, p: int, elements: Iterable[int]) -> "ResidueSet":
        p = _as_prime(p)
        mask = 0
        for e in elements:
            e = int(e)
            if not 0 <= e < p:
                raise InputError(f"residue {e} outside [0, {p})")
            mask |= 1 << e
        return cls(p, mask)

    def elements(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.p) if self.mask >> i & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, e: int) -> bool:
        return bool(self.mask >> (int(e) % self.p) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __eq__(self, other):
        if isinstance(other, ResidueSet):
            return self.p == other.p and self.mask == other.mask
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.mask))

    def __repr__(self):
        return f"ResidueSet(p={self.p}, {{{', '.join(map(str, self.elements()))}}})"

    def translate(self, c: int) -> "ResidueSet":
        """The set A + c."""
        return ResidueSet(self.p, _rotl(self.mask, c, self.p))

    def dilate(self, lam: int) -> "ResidueSet":
        """The set lam * A; lam must be nonzero mod p."""
        lam %= self.p
        if lam == 0:
            raise InputError("dilation factor must be nonzero mod p")
        return ResidueSet.from_elements(
            self.p, (lam * e % self.p for e in self.elements())
        )

    def complement(self) -> "ResidueSet":
        return ResidueSet(self.p, ~self.mask & ((1 << self.p) - 1))

    def union(self, other: "ResidueSet") -> "ResidueSet":
        self._same_space(other)
        return ResidueSet(self.p, self.mask | other.mask)

    def intersect(self, other: "ResidueSet") -> "ResidueSet":
        self._same_space(other)
        return ResidueSet(self.p, self.mask & other.mask)

    def _same_space(self, other: "ResidueSet") -> None:
        if not isinstance(other, ResidueSet) or other.p != self.p:
            raise InputError("sets live over different moduli")

    def to_json(self) -> dict:
        return {"p": self.p, "elements": list(self.elements())}

    @classmethod
    def from_json(cls, obj: dict) -> "ResidueSet":
        try:
            return cls.from_elements(obj["p"], obj["elements"])
        except (KeyError, TypeError):
            raise InputError("set JSON needs keys 'p' and 'elements'") from None


@dataclass(frozen=True)
class ApWitness:
    """A progression witness: element, common difference, radius."""

    element: int
    step: int
    radius: int


def witness_covers_centered(aset: ResidueSet, w: ApWitness) -> bool:
    """Check a + i*d in A for all -k <= i <= k."""
    p = aset.p
    return all(
        (w.element + i * w.step) % p in aset
        for i in range(-w.radius, w.radius + 1)
    )


def witness_covers_forward(aset: ResidueSet, w: ApWitness) -> bool:
    """Check b + i*d in A for all 1 <= i <= k."""
    p = aset.p
    return all(
        (w.element + i * w.step) % p in aset for i in range(1, w.radius + 1)
    )


@dataclass(frozen=True)
class SkReport:
    """Verdict of an S_k scan with per-element witnesses on success."""

    ok: bool
    k: int
    witnesses: dict[int, ApWitness] | None = None
    failing: int | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class NkReport:
    """Verdict of an N_k scan: inside witnesses plus outside witnesses."""

    ok: bool
    k: int
    inside: dict[int, ApWitness] | None = None
    outside: dict[int, ApWitness] | None = None
    failing: int | None = None
    failing_side: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_radius(p: int, k: int) -> None:
    if k < 1:
        raise InputError(f"radius k must be >= 1, got {k}")
    if 2 * k + 1 > p:
        raise RadiusTooLarge(f"need 2k + 1 <= p, got k={k}, p={p}")


def _first_hit_scan(
    mask: int, target: int, p: int, steps: Sequence[int], k: int
) -> tuple[dict[int, ApWitness], int]:
    """Witness map for all bits of `target` coverable by the AND of rotations.

    For each difference d in ascending order, intersect the rotations of
    `mask` listed in `steps` (as multiples of d) and record d as the witness
    for every still-uncovered bit. Returns (witnesses, leftover_mask).
    """
    witnesses: dict[int, ApWitness] = {}
    remaining = target
    for d in range(1, p):
        if remaining == 0:
            break
        hit = remaining
        for i in steps:
            hit &= _rotl(mask, (-i * d) % p, p)
            if hit == 0:
                break
        new = hit
        while new:
            low = new & -new
            witnesses[low.bit_length() - 1] = ApWitness(low.bit_length() - 1, d, k)
            new ^= low
        remaining &= ~hit
    return witnesses, remaining


def is_sk_type(aset: ResidueSet, k: int) -> SkReport:
    """Scan for centered progression witnesses for every element of the set.

    The empty set passes vacuously. On failure the report carries the
    smallest element with no witness.
    """
    p = aset.p
    _check_radius(p, k)
    steps = [i for i in range(-k, k + 1) if i != 0]
    witnesses, remaining = _first_hit_scan(aset.mask, aset.mask, p, steps, k)
    if remaining:
        return SkReport(ok=False, k=k, failing=(remaining & -remaining).bit_length() - 1)
    return SkReport(ok=True, k=k, witnesses=witnesses)


def is_nk_type(aset: ResidueSet, k: int) -> NkReport:
    """S_k scan plus forward progression witnesses for every outside element."""
    p = aset.p
    inside_report = is_sk_type(aset, k)
    if not inside_report.ok:
        return NkReport(
            ok=False, k=k, failing=inside_report.failing, failing_side="inside"
        )
    outside_target = ~aset.mask & ((1 << p) - 1)
    steps = list(range(1, k + 1))
    outside, remaining = _first_hit_scan(aset.mask, outside_target, p, steps, k)
    if remaining:
        return NkReport(
            ok=False,
            k=k,
            failing=(remaining & -remaining).bit_length() - 1,
            failing_side="outside",
        )
    return NkReport(
        ok=True, k=k, inside=inside_report.witnesses, outside=outside
    )


# ---------------------------------------------------------------------------
# constructions


def build_s1_log(p: int) -> ResidueSet:
    """Logarithmic-size S_1-type set: halving chains plus fixed anchors.

    Seeds {-1, 0, 1, (p-1)/2} and adds the chains s, floor(s/2), ..., 1 and
    their negatives, where s = (p-1)/4 for p = 1 mod 4 and s = (p+1)/4 for
    p = 3 mod 4. The size is exactly 2*(floor(log2 s) + 1) + 2.
    """
    p = _as_prime(p)
    if p < 5:
        raise InputError("need p >= 5")
    s = (p - 1) // 4 if p % 4 == 1 else (p + 1) // 4
    elems = {0, 1, p - 1, (p - 1) // 2}
    c = s
    while c >= 1:
        elems.add(c)
        elems.add(p - c)
        c //= 2
    return ResidueSet.from_elements(p, elems)


def _ceil_root(value: int, r: int) -> int:
    """Smallest x with x**r >= value."""
    x = max(1, round(value ** (1.0 / r)))
    while x**r >= value:
        x -= 1
    while (x + 1) ** r < value:
        x += 1
    return x + 1


@dataclass(frozen=True)
class SkConstruction:
    """Result of the staged S_k construction: the set plus build trace."""

    aset: ResidueSet
    k: int
    x: int
    stage_sizes: tuple[int, ...]
    report: SkReport

    @property
    def size(self) -> int:
        return len(self.aset)


def _forward_hit(c: int, target: set[int], d: int, p: int) -> int:
    """c + i*d with i >= 1 minimal landing in target."""
    cur = c
    for _ in range(p):
        cur = (cur + d) % p
        if cur in target:
            return cur
    raise MathViolation("progression failed to meet a nonempty set")


def _backward_hit(c: int, target: set[int], d: int, p: int) -> int:
    """c + i*d with i <= -1 maximal landing in target."""
    cur = c
    for _ in range(p):
        cur = (cur - d) % p
        if cur in target:
            return cur
    raise MathViolation("progression failed to meet a nonempty set")


def build_sk(p: int, k: int, budget: Budget | str | None = None) -> SkConstruction:
    """Staged S_k-type construction with step sizes x, x^2, ..., x^(4k+3).

    x is the smallest integer with x^(4k+4) >= p. Stage 1 is the interval
    [-kx, kx] plus fringe hops; each later stage spreads the previous fringe
    sets by multiples of the next power of x. The result is certified by
    is_sk_type and ConstructionFailed carries the failure when p is too
    small for the stages to close up.
    """
    p = _as_prime(p)
    if k < 2:
        raise InputError("staged construction needs k >= 2; use build_s1_log for k=1")
    _check_radius(p, k)
    b = current_budget(budget)
    x = _ceil_root(p, 4 * k + 4)
    kx = k * x
    span = 2 * kx

    a_cur = {t % p for t in range(-kx, kx + 1)}
    b_cur = {(-kx + t) % p for t in range(k + 1)}
    b_cur |= {_forward_hit(j % p, a_cur, x, p) for j in range(kx - k, kx + 1)}
    c_cur = {(kx - k + t) % p for t in range(k + 1)}
    c_cur |= {_backward_hit(j % p, a_cur, x, p) for j in range(-kx, -kx + k + 1)}

    union = set(a_cur)
    stage_sizes = [len(a_cur)]
    work = 0
    for stage in range(2, 4 * k + 4):
        step = pow(x, stage - 1, p)
        bigstep = pow(x, stage, p)
        work += (len(b_cur) + len(c_cur)) * span
        b.check_nodes(work, what="staged construction")
        a_next = {(a + j * step) % p for a in c_cur for j in range(1, span + 1)}
        a_next |= {(a - j * step) % p for a in b_cur for j in range(1, span + 1)}
        b_next = {
            (a - j * step) % p for a in b_cur for j in range(span - k, span + 1)
        }
        b_next |= {
            _forward_hit((a + j * step) % p, a_next, bigstep, p)
            for a in c_cur
            for j in range(span - k, span + 1)
        }
        c_next = {
            (a + j * step) % p for a in c_cur for j in range(span - k, span + 1)
        }
        c_next |= {
            _backward_hit((a - j * step) % p, a_next, bigstep, p)
            for a in b_cur
            for j in range(span - k, span + 1)
        }
        union |= a_next
        stage_sizes.append(len(a_next))
        a_prev, b_cur, c_cur = a_next, b_next, c_next

    last = pow(x, 4 * k + 3, p)
    a_final: set[int] = set()
    for a in c_cur:
        cur = a
        a_final.add(cur)
        for _ in range(p):
            cur = (cur + last) % p
            a_final.add(cur)
            if cur in a_prev:
                break
    union |= a_final
    stage_sizes.append(len(a_final))

    aset = ResidueSet.from_elements(p, union)
    report = is_sk_type(aset, k)
    result = SkConstruction(
        aset=aset, k=k, x=x, stage_sizes=tuple(stage_sizes), report=report
    )
    if not report.ok:
        raise ConstructionFailed(
            f"staged construction does not certify at p={p}, k={k} "
            f"(element {report.failing} has no witness)",
            candidate=aset,
            report=report,
        )
    return result


@dataclass(frozen=True)
class Partition:
    """A partition of Z/p into N_k-type parts."""

    p: int
    k: int
    parts: tuple[ResidueSet, ...]
    seed: int
    attempts: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "seed": self.seed,
            "attempts": self.attempts,
            "parts": [list(part.elements()) for part in self.parts],
        }


def partition_nk(
    p: int,
    k: int,
    parts: int | None = None,
    seed: int = 0,
    max_tries: int = 200,
) -> Partition:
    """Random partition of Z/p into N_k-type parts.

    Each residue gets an independent uniform label; a draw is accepted when
    every part is N_k-type. The default part count is ceil(p^(1/(2k+1))).
    """
    p = _as_prime(p)
    _check_radius(p, k)
    if parts is None:
        parts = _ceil_root(p, 2 * k + 1)
    if parts < 1:
        raise InputError("part count must be >= 1")
    rng = random.Random(seed)
    for attempt in range(1, max_tries + 1):
        labels = [rng.randrange(parts) for _ in range(p)]
        masks = [0] * parts
        for residue, lab in enumerate(labels):
            masks[lab] |= 1 << residue
        sets = [ResidueSet(p, m) for m in masks]
        if all(is_nk_type(s, k).ok for s in sets):
            return Partition(
                p=p, k=k, parts=tuple(sets), seed=seed, attempts=attempt
            )
    raise PartitionNotFound(
        f"no N_{k} partition of F_{p} into {parts} parts in {max_tries} draws",
        attempts=max_tries,
    )


@dataclass(frozen=True)
class MinS1Result:
    """Outcome of the branch-and-bound minimum S_1 search."""

    p: int
    size: int
    aset: ResidueSet
    proven_optimal: bool
    nodes: int
    sizes_exhausted: tuple[int, ...]
    backend: str

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "size": self.size,
            "elements": list(self.aset.elements()),
            "proven_optimal": self.proven_optimal,
            "nodes": self.nodes,
            "sizes_exhausted": list(self.sizes_exhausted),
            "backend": self.backend,
        }


def min_s1_search(p: int, budget: Budget | str | None = None) -> MinS1Result:
    """Minimum-size S_1-type subset of Z/p by iterative deepening.

    Every S_1-type set with at least two elements maps onto one containing
    {0, 1} under an affine bijection, so the kernel searches upward from
    {0, 1}, repairing witness-less elements. Size limits run from 3 up to
    one below the logarithmic construction; proven_optimal is True only
    when every smaller size was exhausted within the node budget.
    """
    p = _as_prime(p)
    if p < 5:
        raise InputError("need p >= 5")
    b = current_budget(budget)
    upper = build_s1_log(p)
    if not is_sk_type(upper, 1).ok:
        raise MathViolation(f"logarithmic construction failed certification at p={p}")
    best = upper
    nodes_total = 0
    exhausted_sizes: list[int] = []
    proven = True
    for limit in range(3, len(upper)):
        found, exhausted, used = kernels.s1_exhaust(p, limit, b.nodes - nodes_total)
        nodes_total += used
        if found:
            best = ResidueSet(p, found)
            if not is_sk_type(best, 1).ok:
                raise MathViolation("search returned an uncertified set")
            break
        if not exhausted:
            proven = False
            break
        exhausted_sizes.append(limit)
    return MinS1Result(
        p=p,
        size=len(best),
        aset=best,
        proven_optimal=proven,
        nodes=nodes_total,
        sizes_exhausted=tuple(exhausted_sizes),
        backend=kernels.BACKEND,
    )


# ---------------------------------------------------------------------------
# multiplier certificates and good subset families


@dataclass(frozen=True)
class MultiplierCertificate:
    """Nonzero multipliers separating two boxed sum sets, with trace data."""

    p: int
    lambdas: tuple[int, ...]
    seed: int
    attempts: int
    route: str


def _box_points(boxes: Sequence[ResidueSet]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*[box.elements() for box in boxes])


def _combination(basis: Sequence[FpVector], coeffs: Sequence[int], p: int) -> tuple[int, ...]:
    n = len(basis[0])
    out = [0] * n
    for c, vec in zip(coeffs, basis):
        for i in range(n):
            out[i] = (out[i] + c * vec[i]) % p
    return tuple(out)


def _basis_matrix(basis: Sequence[FpVector], p: int) -> FpMatrix:
    # basis vectors become columns
    n = len(basis)
    if any(len(v) != n for v in basis):
        raise InputError("basis vectors must have length n")
    return FpMatrix([[basis[j][i] for j in range(n)] for i in range(n)], p)


def multipliers_valid(
    e_basis: Sequence[FpVector],
    f_basis: Sequence[FpVector],
    u_boxes: Sequence[ResidueSet],
    v_boxes: Sequence[ResidueSet],
    lambdas: Sequence[int],
    route: str = "auto",
    budget: Budget | str | None = None,
) -> bool:
    """Decide whether sum(x_i e_i) = sum(lam_i y_i f_i) has no solution.

    Two routes: 'exhaustive' materializes both point sets and intersects;
    'solve' expresses each e-box point in f-coordinates c and tests
    c_i * lam_i^(-1) membership in V_i for all i. 'auto' picks by size.
    """
    p = u_boxes[0].p
    n = len(e_basis)
    b = current_budget(budget)
    nu = math.prod(len(u) for u in u_boxes)
    nv = math.prod(len(v) for v in v_boxes)
    if route == "auto":
        route = "exhaustive" if nu * nv <= b.nodes and nu + nv <= b.entries else "solve"
    lambdas = [int(c) % p for c in lambdas]
    if any(c == 0 for c in lambdas):
        raise InputError("multipliers must be nonzero mod p")
    if route == "exhaustive":
        b.check_nodes(nu + nv, what="exhaustive sum-set intersection")
        left = {_combination(e_basis, u, p) for u in _box_points(u_boxes)}
        for v in _box_points(v_boxes):
            scaled = [lam * y % p for lam, y in zip(lambdas, v)]
            if _combination(f_basis, scaled, p) in left:
                return False
        return True
    if route == "solve":
        b.check_nodes(nu, what="basis-solve collision scan")
        finv = _basis_matrix(f_basis, p).invert()
        inv_l = [pow(lam, -1, p) for lam in lambdas]
        for u in _box_points(u_boxes):
            point = _combination(e_basis, u, p)
            coords = finv.matvec(point)
            if all(
                c != 0 and (c * il % p) in box
                for c, il, box in zip(coords, inv_l, v_boxes)
            ):
                return False
        return True
    raise InputError(f"unknown route {route!r}")


def random_multipliers(
    e_basis: Sequence[FpVector],
    f_basis: Sequence[FpVector],
    u_boxes: Sequence[ResidueSet],
    v_boxes: Sequence[ResidueSet],
    seed: int = 0,
    max_tries: int = 1000,
    route: str = "auto",
    budget: Budget | str | None = None,
) -> MultiplierCertificate:
    """Sample nonzero multipliers until the two boxed sum sets are disjoint.

    Requires prod |U_i| * prod |V_i| < (p-1)^n, the counting bound that
    guarantees a valid choice exists, and every box inside the nonzero
    residues.
    """
    if not e_basis or len(e_basis) != len(f_basis):
        raise InputError("need two bases of equal positive length")
    p = u_boxes[0].p
    n = len(e_basis)
    if len(u_boxes) != n or len(v_boxes) != n:
        raise InputError("need one U box and one V box per coordinate")
    for box in itertools.chain(u_boxes, v_boxes):
        if box.p != p:
            raise InputError("boxes live over different moduli")
        if len(box) == 0 or 0 in box:
            raise PreconditionViolated("boxes must be nonempty subsets of F_p \\ {0}")
    if _basis_matrix(e_basis, p).det() == 0 or _basis_matrix(f_basis, p).det() == 0:
        raise PreconditionViolated("both families must be bases")
    sizes = math.prod(len(b) for b in u_boxes) * math.prod(len(b) for b in v_boxes)
    if sizes >= (p - 1) ** n:
        raise PreconditionViolated(
            f"box size product {sizes} must stay below (p-1)^n = {(p - 1) ** n}"
        )
    rng = random.Random(seed)
    for attempt in range(1, max_tries + 1):
        lambdas = tuple(rng.randrange(1, p) for _ in range(n))
        if multipliers_valid(
            e_basis, f_basis, u_boxes, v_boxes, lambdas, route=route, budget=budget
        ):
            return MultiplierCertificate(
                p=p, lambdas=lambdas, seed=seed, attempts=attempt, route=route
            )
    raise NotFound(
        f"no separating multipliers in {max_tries} draws", attempts=max_tries
    )


@dataclass(frozen=True)
class GoodSubsets:
    """Per-coordinate set families A_i, B_i with the disjoint sum-set certificate."""

    p: int
    k: int
    a_sets: tuple[ResidueSet, ...]
    b_sets: tuple[ResidueSet, ...]
    certificate: MultiplierCertificate
    base_a: ResidueSet
    base_b: ResidueSet


def _shift_off_zero(aset: ResidueSet) -> ResidueSet:
    """Translate the set so it avoids 0; smallest nonnegative shift."""
    if len(aset) >= aset.p:
        raise PreconditionViolated("a proper subset is required")
    for c in range(aset.p):
        if (aset.p - c) % aset.p not in aset:
            return aset.translate(c)
    raise MathViolation("unreachable: proper subset admits a shift off zero")


def appendix_lookup(p: int) -> ResidueSet | None:
    """The frozen small-prime S_1 table entry for p, if present."""
    for row in appendix_rows():
        if row.p == p:
            return ResidueSet.from_elements(row.p, row.elements)
    return None


def good_subsets(
    p: int,
    k: int,
    e_basis: Sequence[FpVector],
    f_basis: Sequence[FpVector],
    seed: int = 0,
    max_tries: int = 1000,
    a_set: ResidueSet | None = None,
    b_set: ResidueSet | None = None,
) -> GoodSubsets:
    """Assemble A_i = A and B_i = lam_i * B with disjoint boxed sum sets.

    The base pair (A, B) is shifted off zero and must satisfy
    |A| * |B| < p - 1. For k = 1 both bases default to the smallest known
    S_1-type set (frozen table first, logarithmic construction otherwise);
    for k >= 2 the defaults are the staged construction and the smallest
    part of a random N_k partition. Dilation preserves both properties, so
    each B_i inherits the base certificate.
    """
    p = _as_prime(p)
    n = len(e_basis)
    if k == 1:
        base_a = a_set if a_set is not None else appendix_lookup(p) or build_s1_log(p)
        base_b = b_set if b_set is not None else base_a
        if not is_sk_type(base_a, 1).ok or not is_sk_type(base_b, 1).ok:
            raise PreconditionViolated("base sets must certify S_1")
    elif k >= 2:
        base_a = a_set if a_set is not None else build_sk(p, k).aset
        if b_set is not None:
            base_b = b_set
        else:
            partition = partition_nk(p, k, seed=seed)
            base_b = min(partition.parts, key=len)
        if not is_sk_type(base_a, k).ok:
            raise PreconditionViolated("base A must certify S_k")
        if not is_nk_type(base_b, k).ok:
            raise PreconditionViolated("base B must certify N_k")
    else:
        raise InputError("k must be >= 1")
    base_a = _shift_off_zero(base_a)
    base_b = _shift_off_zero(base_b)
    if len(base_a) * len(base_b) >= p - 1:
        raise PreconditionViolated(
            f"need |A| * |B| < p - 1, got {len(base_a)} * {len(base_b)} vs {p - 1}"
        )
    cert = random_multipliers(
        e_basis,
        f_basis,
        [base_a] * n,
        [base_b] * n,
        seed=seed,
        max_tries=max_tries,
    )
    b_sets = tuple(base_b.dilate(lam) for lam in cert.lambdas)
    return GoodSubsets(
        p=p,
        k=k,
        a_sets=(base_a,) * n,
        b_sets=b_sets,
        certificate=cert,
        base_a=base_a,
        base_b=base_b,
    )


# ---------------------------------------------------------------------------
# frozen table of small optimal S_1 sets


@dataclass(frozen=True)
class AppendixRow:
    """One frozen table row: prime, elements, stated size."""

    p: int
    elements: tuple[int, ...]
    size: int


@dataclass(frozen=True)
class AppendixRowCheck:
    p: int
    stated_size: int
    actual_size: int
    is_s1: bool
    below_sqrt: bool

    @property
    def ok(self) -> bool:
        return self.is_s1 and self.stated_size == self.actual_size and self.below_sqrt


@dataclass(frozen=True)
class AppendixReport:
    rows: tuple[AppendixRowCheck, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rows": [
                {
                    "p": r.p,
                    "stated_size": r.stated_size,
                    "actual_size": r.actual_size,
                    "is_s1": r.is_s1,
                    "below_sqrt": r.below_sqrt,
                    "ok": r.ok,
                }
                for r in self.rows
            ],
        }


def appendix_csv_text() -> str:
    """Raw text of the packaged table, exactly as shipped."""
    return (
        importlib.resources.files("ajtkit").joinpath("appendix.csv").read_text()
    )


def appendix_rows() -> list[AppendixRow]:
    reader = csv.DictReader(appendix_csv_text().splitlines())
    rows = []
    for rec in reader:
        elements = tuple(int(tok) for tok in rec["elements"].split(","))
        rows.append(AppendixRow(p=int(rec["p"]), elements=elements, size=int(rec["size"])))
    return rows


def verify_appendix() -> AppendixReport:
    """Re-certify every frozen table row: parse, S_1 scan, size, sqrt bound."""
    checks = []
    for row in appendix_rows():
        aset = ResidueSet.from_elements(row.p, row.elements)
        checks.append(
            AppendixRowCheck(
                p=row.p,
                stated_size=row.size,
                actual_size=len(aset),
                is_s1=is_sk_type(aset, 1).ok,
                below_sqrt=len(aset) ** 2 < row.p - 1,
            )
        )
    return AppendixReport(rows=tuple(checks))
