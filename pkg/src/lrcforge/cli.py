"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 precondition failure (including a
descriptor that disagrees with recomputation), 3 budget or capability
exhausted.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter

import numpy as np

from .cyclic import AboveCeiling
from .descriptor import CodeDescriptor, recheck
from .errors import AmbiguousErasure, InfeasibleBudget, LrcError, PreconditionError
from .lrc import ConstructionKind, LrcParams, construct, search_params, verify
from .repair import ErasurePattern, RepairPlan, RepairResult, global_erasure_decode, repair

log = logging.getLogger("lrcforge")

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3


class CapabilityExceeded(LrcError):
    pass


def _int_range(text: str) -> list[int]:
    """``"3"``, ``"2-6"`` or ``"2,4,7"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _add_code_flags(p, required):
    p.add_argument("--q", type=int, required=required)
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--r", type=int, required=required)
    p.add_argument("--delta", type=int, required=required)
    p.add_argument("--kind", choices=["t1", "t2", "t3", "remark3", "t4"], required=required)
    p.add_argument("--d", type=int, default=None, help="target distance (remark3 only)")


def _params_from_flags(args):
    missing = [f for f in ("q", "n", "r", "delta", "kind") if getattr(args, f) is None]
    if missing:
        raise PreconditionError("missing flags: " + ", ".join("--" + m for m in missing))
    return LrcParams(args.q, args.n, args.r, args.delta), ConstructionKind.parse(args.kind, args.d)


def _read_descriptor(path) -> CodeDescriptor:
    if path == "-":
        return CodeDescriptor.loads(sys.stdin.read())
    try:
        with open(path) as fh:
            return CodeDescriptor.loads(fh.read())
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from None


def _descriptor_from_args(args) -> CodeDescriptor:
    if args.input is not None:
        return _read_descriptor(args.input)
    params, kind = _params_from_flags(args)
    return CodeDescriptor.from_report(verify(params, kind, backend=args.backend))


def cmd_construct(args):
    params, kind = _params_from_flags(args)
    desc = CodeDescriptor.from_report(verify(params, kind, backend=args.backend))
    text = desc.dumps()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _fmt(v):
    return json.dumps(v, separators=(",", ":")) if not isinstance(v, str) else v


def cmd_verify(args):
    desc = _descriptor_from_args(args)
    checks = recheck(desc, backend=args.backend)
    ok = all(c.ok for c in checks)
    if args.json:
        print(json.dumps({
            "ok": ok,
            "checks": [{"name": c.name, "recorded": c.recorded, "recomputed": c.recomputed, "ok": c.ok}
                       for c in checks],
        }, indent=2))
    else:
        w = 30
        print(f"{'check':<24} {'recorded':<{w}} {'recomputed':<{w}} status")
        for c in checks:
            rec, got = _fmt(c.recorded), _fmt(c.recomputed)
            if len(rec) > w:
                rec = rec[: w - 3] + "..."
            if len(got) > w:
                got = got[: w - 3] + "..."
            print(f"{c.name:<24} {rec:<{w}} {got:<{w}} {'ok' if c.ok else 'MISMATCH'}")
    if not ok:
        bad = ", ".join(c.name for c in checks if not c.ok)
        print(f"verification failed: {bad}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


def cmd_search(args):
    n_max = args.n_max
    r_range = _int_range(args.r_range) if args.r_range else list(range(1, n_max + 1))
    d_range = _int_range(args.delta_range) if args.delta_range else list(range(2, n_max + 1))
    found = search_params([args.q], range(1, n_max + 1), r_range, d_range)
    rows = [(p.n, p.r, p.delta, kd) for p, kinds in found for kd in kinds]
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    if args.json:
        print(json.dumps([
            {"q": args.q, "n": n, "r": r, "delta": d, "kind": kd.tag.value, "target_d": kd.target_d}
            for n, r, d, kd in rows
        ], indent=2))
    else:
        print(f"{'n':>6} {'r':>4} {'delta':>6}  kind")
        for n, r, d, kd in rows:
            print(f"{n:>6} {r:>4} {d:>6}  {kd}")
    return EXIT_OK


def parse_erasures(spec: str):
    """``local:w``, ``global:w`` or an explicit comma-separated index list."""
    if ":" in spec:
        mode, w = spec.split(":", 1)
        if mode not in ("local", "global"):
            raise PreconditionError(f"unknown erasure mode {mode!r}")
        try:
            count = int(w)
        except ValueError:
            raise PreconditionError(f"bad erasure count {w!r}") from None
        if count < 0:
            raise PreconditionError("erasure count must be >= 0")
        return mode, count
    try:
        idx = sorted({int(v) for v in spec.split(",") if v.strip()})
    except ValueError:
        raise PreconditionError(f"bad erasure spec {spec!r}") from None
    return "explicit", idx


def simulate(desc: CodeDescriptor, erasures: str, trials: int, seed: int, allow_failures=False):
    """Encode random messages, erase, repair; return summary statistics.

    ``global:w`` always decodes globally; the other modes try local repair
    first and fall back to global decoding.
    """
    params, kind = desc.params, desc.kind
    code = construct(params, kind)
    if code.generator.to_json() != desc.generator:
        raise PreconditionError("descriptor generator does not match its construction")
    mode, arg = parse_erasures(erasures)
    n, L, rho = code.n, params.group_size, params.rho
    count = arg if mode != "explicit" else len(arg)
    if mode == "local" and count > L:
        raise PreconditionError(f"local:{count} exceeds the group size {L}")
    if mode == "global" and count > n:
        raise PreconditionError(f"global:{count} exceeds n={n}")
    if mode == "explicit" and any(not 0 <= i < n for i in arg):
        raise PreconditionError("explicit erasure index out of range")
    d = desc.d_exact
    guaranteed = (d.ceiling if isinstance(d, AboveCeiling) else d) - 1
    if count > guaranteed and not allow_failures:
        raise CapabilityExceeded(
            f"{count} erasures exceed the guaranteed capability d-1={guaranteed}; pass --allow-failures")
    plan = RepairPlan(code, params.r, params.delta)
    paths = Counter()
    contacts = Counter()
    successes = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        msg = rng.integers(0, code.q, size=code.k)
        cw = code.encode(msg)
        if mode == "local":
            grp = plan.groups[int(rng.integers(rho))]
            erased = rng.choice(grp.positions, size=count, replace=False)
        elif mode == "global":
            erased = rng.choice(n, size=count, replace=False)
        else:
            erased = arg
        received = ErasurePattern.from_codeword(cw, [int(i) for i in erased])
        try:
            if mode == "global":
                res = RepairResult(global_erasure_decode(code, received), "global",
                                   {-1: tuple(j for j in range(n) if j not in received.erased)})
            else:
                res = repair(code, received, params.r, params.delta, plan)
        except AmbiguousErasure:
            paths["failed"] += 1
            continue
        paths[res.path] += 1
        for c in res.contacts.values():
            contacts[len(c)] += 1
        successes += bool(np.array_equal(res.word, cw))
    return {
        "q": desc.q, "n": n, "r": desc.r, "delta": desc.delta,
        "construction": desc.construction, "target_d": desc.target_d,
        "erasures": erasures, "trials": trials, "seed": seed,
        "successes": successes, "failures": trials - successes,
        "paths": {k: paths.get(k, 0) for k in ("none", "local", "global", "failed")},
        "contact_sizes": {
            "max": max(contacts, default=0),
            "histogram": {str(k): v for k, v in sorted(contacts.items())},
        },
    }


def cmd_simulate(args):
    desc = _descriptor_from_args(args)
    stats = simulate(desc, args.erasures, args.trials, args.seed, args.allow_failures)
    print(json.dumps(stats, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrc-forge", description="Optimal cyclic (r, delta) locally repairable codes")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--backend", choices=["numba", "numpy"], default=None,
                        help="kernel backend (default: numba unless LRC_FORGE_NO_JIT=1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and print its JSON descriptor")
    _add_code_flags(p, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="recompute and compare a descriptor")
    p.add_argument("--in", dest="input", default=None, help="descriptor file, '-' for stdin")
    _add_code_flags(p, required=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="list parameters where a construction applies")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--r-range", default=None)
    p.add_argument("--delta-range", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("simulate", help="random erasure/repair trials")
    p.add_argument("--in", dest="input", default=None, help="descriptor file, '-' for stdin")
    _add_code_flags(p, required=False)
    p.add_argument("--erasures", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-failures", action="store_true")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InfeasibleBudget, CapabilityExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
