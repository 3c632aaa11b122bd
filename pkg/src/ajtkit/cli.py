"""Command-line interface.

Subcommands mirror the library: table verification, set construction and
search, partitioning, property reports, exhaustive sweeps, duality and
pairing probes. Output is deterministic for a fixed seed and configuration;
exit codes are 0 (success), 1 (a verified mathematical statement failed),
2 (bad input), 3 (budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import apsets, fp_core, fp_poly, group_ring, properties
from .budget import current_budget
from .errors import (
    AjtError,
    BudgetExceeded,
    ConstructionFailed,
    InputError,
    MathViolation,
    NotFound,
    PartitionNotFound,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class RunConfig:
    """Echo of the run parameters, embedded in every JSON report."""

    command: str
    seed: int | None = None
    budget: str | None = None
    threads: int = 1

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "budget": self.budget,
            "threads": self.threads,
        }


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    if fmt == "table":
        _emit_table(payload)
        return
    raise InputError(f"format {fmt!r} not supported for this command")


def _emit_table(payload: dict, indent: str = "") -> None:
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _emit_table(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                print(f"{indent}{key}[{i}]:")
                _emit_table(item, indent + "  ")
        else:
            print(f"{indent}{key} = {value}")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _matrix_from_args(args) -> fp_core.FpMatrix:
    if getattr(args, "matrix", None):
        return fp_core.FpMatrix.from_json(_load_json(args.matrix))
    if getattr(args, "p", None) is None or getattr(args, "n", None) is None:
        raise InputError("give --matrix FILE or both --p and --n for a random matrix")
    return fp_core.random_nonsingular(args.p, args.n, seed=args.seed or 0)


# ---------------------------------------------------------------------------
# subcommands


def cmd_appendix_verify(args) -> int:
    report = apsets.verify_appendix()
    if args.format == "csv":
        sys.stdout.write(apsets.appendix_csv_text())
    else:
        payload = {"config": RunConfig("appendix-verify").to_json()}
        payload.update(report.to_json())
        _emit(payload, args.format)
    if not report.ok:
        print("table verification failed", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_s1(args) -> int:
    config = RunConfig("s1", seed=args.seed, budget=args.budget)
    if args.mode == "build":
        aset = apsets.build_s1_log(args.p)
        report = apsets.is_sk_type(aset, 1)
        payload = {
            "config": config.to_json(),
            "p": args.p,
            "mode": "build",
            "elements": list(aset.elements()),
            "size": len(aset),
            "certified": report.ok,
        }
        _emit(payload, args.format)
        return EXIT_OK if report.ok else EXIT_VIOLATION
    result = apsets.min_s1_search(args.p, budget=args.budget)
    payload = {"config": config.to_json(), "mode": "min"}
    payload.update(result.to_json())
    _emit(payload, args.format)
    return EXIT_OK


def cmd_sk_build(args) -> int:
    config = RunConfig("sk-build", budget=args.budget)
    result = apsets.build_sk(args.p, args.k, budget=args.budget)
    payload = {
        "config": config.to_json(),
        "p": args.p,
        "k": args.k,
        "x": result.x,
        "stage_sizes": list(result.stage_sizes),
        "elements": list(result.aset.elements()),
        "size": result.size,
        "certified": result.report.ok,
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_nk_partition(args) -> int:
    config = RunConfig("nk-partition", seed=args.seed)
    partition = apsets.partition_nk(
        args.p, args.k, parts=args.parts, seed=args.seed, max_tries=args.max_tries
    )
    payload = {"config": config.to_json()}
    payload.update(partition.to_json())
    _emit(payload, args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    m = _matrix_from_args(args)
    spec = None
    if args.forbidden:
        spec = properties.ForbiddenSpec.from_json(_load_json(args.forbidden))
    report = properties.check_all(m, spec, budget=args.budget)
    config = RunConfig("check", seed=args.seed, budget=args.budget)
    payload = {"config": config.to_json()}
    payload.update(report.to_json())
    _emit(payload, args.format)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _sweep_one_prefix(job: tuple[int, int, tuple[int, ...]]) -> dict:
    p, n, first_row = job
    counts = {
        "matrices": 0,
        "p1_witness": 0,
        "integer_nonzero": 0,
        "modp_nonzero": 0,
        "violations": [],
    }
    for m in fp_core.enumerate_nonsingular(p, n, prefix=[list(first_row)]):
        counts["matrices"] += 1
        witness = properties.check_p1(m)
        has_witness = witness is not None
        int_zero = group_ring.check_p3_integer(m)
        modp_zero = group_ring.check_p4(m)
        if has_witness:
            counts["p1_witness"] += 1
        if not int_zero:
            counts["integer_nonzero"] += 1
        if not modp_zero:
            counts["modp_nonzero"] += 1
        if not has_witness or int_zero or modp_zero:
            counts["violations"].append(
                {
                    "matrix": m.to_json(),
                    "p1_witness": list(witness) if witness else None,
                    "integer_zero": int_zero,
                    "modp_zero": modp_zero,
                }
            )
    return counts


def cmd_sweep(args) -> int:
    p, n = args.p, args.n
    budget = current_budget(args.budget)
    budget.check_nodes(p ** (n * n), what="matrix sweep")
    jobs = [
        (p, n, row)
        for row in fp_core.enumerate_nonzero_rows(p, n)
    ]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            partials = list(pool.map(_sweep_one_prefix, jobs))
    else:
        partials = [_sweep_one_prefix(job) for job in jobs]
    totals = {
        "matrices": 0,
        "p1_witness": 0,
        "integer_nonzero": 0,
        "modp_nonzero": 0,
    }
    violations: list[dict] = []
    for part in partials:
        for key in totals:
            totals[key] += part[key]
        violations.extend(part["violations"])
    expected = fp_core.nonsingular_count(p, n)
    config = RunConfig("sweep", budget=args.budget, threads=args.threads)
    payload = {
        "config": config.to_json(),
        "p": p,
        "n": n,
        "expected_nonsingular": expected,
        "violations": violations,
        **totals,
    }
    _emit(payload, args.format)
    if totals["matrices"] != expected or violations:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_duality(args) -> int:
    import random as _random

    rng = _random.Random(args.seed)
    p, n = args.p, args.n
    disagreements = []
    factorial_failures = []
    for trial in range(args.trials):
        m = fp_core.random_nonsingular(p, n, rng=rng)
        r = [rng.randrange(0, p) for _ in range(n)]
        s = _random_balanced_partner(rng, r, p)
        result = fp_poly.duality_check(m, r, s, budget=args.budget)
        if not result.agree:
            disagreements.append(result.to_json())
        if not result.factorial_relation_holds():
            factorial_failures.append(result.to_json())
    config = RunConfig("duality", seed=args.seed, budget=args.budget)
    payload = {
        "config": config.to_json(),
        "p": p,
        "n": n,
        "trials": args.trials,
        "disagreements": disagreements,
        "factorial_failures": factorial_failures,
    }
    _emit(payload, args.format)
    if disagreements or factorial_failures:
        return EXIT_VIOLATION
    return EXIT_OK


def _random_balanced_partner(rng, r: list[int], p: int) -> list[int]:
    """A second exponent family with entries in [0, p-1] and equal sum."""
    n = len(r)
    total = sum(r)
    while True:
        s = []
        left = total
        for i in range(n - 1):
            lo = max(0, left - (n - 1 - i) * (p - 1))
            hi = min(p - 1, left)
            v = rng.randint(lo, hi)
            s.append(v)
            left -= v
        s.append(left)
        if 0 <= s[-1] <= p - 1:
            return s


def cmd_multi(args) -> int:
    import random as _random

    if args.k < 2:
        raise InputError("multi needs k >= 2 matrices per tuple")
    if args.trials < 1:
        raise InputError("need at least one trial")
    rng = _random.Random(args.seed)
    found = 0
    witness_free = []
    for _ in range(args.trials):
        matrices = [
            fp_core.random_nonsingular(args.p, args.n, rng=rng)
            for _ in range(args.k)
        ]
        witness = properties.check_multi(
            matrices, seed=args.seed, budget=args.budget
        )
        if witness is not None:
            found += 1
        else:
            # a tuple with no witness is the interesting outcome; echo it
            witness_free.append([list(list(r) for r in m.rows) for m in matrices])
    config = RunConfig("multi", seed=args.seed, budget=args.budget)
    payload = {
        "config": config.to_json(),
        "p": args.p,
        "n": args.n,
        "k": args.k,
        "trials": args.trials,
        "found": found,
        "rate": found / args.trials if args.trials else None,
        "witness_free": witness_free,
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_pairing(args) -> int:
    m = _matrix_from_args(args)
    report = properties.pairing_test(
        m, trials=args.trials, seed=args.seed or 0, budget=args.budget
    )
    config = RunConfig("pairing", seed=args.seed, budget=args.budget)
    payload = {"config": config.to_json(), "matrix": m.to_json()}
    payload.update(report.to_json())
    _emit(payload, args.format)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_sigma(args) -> int:
    import random as _random

    config = RunConfig("sigma", seed=args.seed, budget=args.budget)
    if args.matrix:
        matrices = [fp_core.FpMatrix.from_json(_load_json(args.matrix))]
    else:
        rng = _random.Random(args.seed)
        matrices = [
            fp_core.random_nonsingular(args.p, args.n, rng=rng)
            for _ in range(args.trials)
        ]
    candidates = []
    for m in matrices:
        report = group_ring.sigma_vanishing_candidate(m, budget=args.budget)
        if report.candidate:
            candidates.append(m.to_json())
    payload = {
        "config": config.to_json(),
        "checked": len(matrices),
        "candidates": candidates,
    }
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, budget=True, seed=False, fmt=True):
    if fmt:
        sub.add_argument(
            "--format", choices=["json", "table", "csv"], default="json"
        )
    if budget:
        sub.add_argument(
            "--budget",
            default=None,
            help="preset (low/default/high) or node count; AJT_BUDGET otherwise",
        )
    if seed:
        sub.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ajtkit",
        description="progression sets, group-ring vanishing, and solvability checks over F_p",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("appendix-verify", help="re-certify the frozen S_1 table")
    _add_common(s, budget=False)
    s.set_defaults(func=cmd_appendix_verify)

    s = subs.add_parser("s1", help="build or minimize an S_1-type set")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--mode", choices=["build", "min"], default="build")
    _add_common(s, seed=True)
    s.set_defaults(func=cmd_s1)

    s = subs.add_parser("sk-build", help="staged S_k-type construction")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_sk_build)

    s = subs.add_parser("nk-partition", help="random partition into N_k-type parts")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--parts", type=int, default=None)
    s.add_argument("--max-tries", type=int, default=200)
    _add_common(s, budget=False, seed=True)
    s.set_defaults(func=cmd_nk_partition)

    s = subs.add_parser("check", help="run the P1..P5 chain on one matrix")
    s.add_argument("--matrix", help="JSON file with p, n, rows")
    s.add_argument("--random", action="store_true")
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--forbidden", help="JSON file with c_lists and d_lists")
    _add_common(s, seed=True)
    s.set_defaults(func=cmd_check)

    s = subs.add_parser("sweep", help="exhaust all nonsingular matrices at (p, n)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--threads", type=int, default=1)
    _add_common(s)
    s.set_defaults(func=cmd_sweep)

    s = subs.add_parser("duality", help="row/column coefficient duality probe")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    _add_common(s, seed=True)
    s.set_defaults(func=cmd_duality)

    s = subs.add_parser("multi", help="joint nowhere-zero witness for several matrices")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=2, help="number of matrices (>= 2)")
    s.add_argument("--trials", type=int, default=100, help="random tuples to sample")
    _add_common(s, seed=True)
    s.set_defaults(func=cmd_multi)

    s = subs.add_parser("pairing", help="orthogonality probe for the delta images")
    s.add_argument("--matrix")
    s.add_argument("--random", action="store_true")
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int, default=200)
    _add_common(s, seed=True)
    s.set_defaults(func=cmd_pairing)

    s = subs.add_parser("sigma", help="symmetric-function vanishing probe")
    s.add_argument("--matrix")
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int, default=100)
    _add_common(s, seed=True)
    s.set_defaults(func=cmd_sigma)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        # reject a malformed budget up front, even if the command never
        # consults it
        current_budget(getattr(args, "budget", None))
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MathViolation, NotFound, PartitionNotFound, ConstructionFailed) as exc:
        # no certificate: either a verified statement failed or a randomized
        # search ran out of retries without one
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
