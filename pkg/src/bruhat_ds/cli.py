"""Command line entry point: interval sweeps and single-interval queries."""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from contextlib import nullcontext

from .bruhat import MAX_RANK, NotComparable, interval
from .perm import Permutation, RankMismatch, parse_perm
from .rpoly import rtilde
from .shortcut import ds_multiset, equivalence_classes
from .verify import DEFAULT_SEED, SUITES, run_one, select_intervals, sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _perm(text: str) -> Permutation:
    try:
        return parse_perm(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bruhat-ds", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ver = sub.add_parser("verify", help="sweep a check suite over intervals of S_n")
    ver.add_argument("check", choices=sorted(SUITES))
    ver.add_argument("--n", type=int)
    ver.add_argument("--sample", type=int, help="number of seeded random intervals")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--u", type=_perm)
    ver.add_argument("--v", type=_perm)
    ver.add_argument("--replay", metavar="PATH", help="rerun the failing reports of a report file")
    ver.add_argument("--json", metavar="PATH", help="write reports here instead of stdout")

    ds = sub.add_parser("ds", help="DS(z, z') and DS(z', z) on one interval")
    rp = sub.add_parser("rpoly", help="R-tilde polynomial of one interval")
    cl = sub.add_parser("classes", help="DS equivalence classes of one interval")
    for q in (ds, rp, cl):
        q.add_argument("--u", type=_perm, required=True)
        q.add_argument("--v", type=_perm, required=True)
        q.add_argument("--json", metavar="PATH")
    ds.add_argument("--z", type=_perm, required=True)
    ds.add_argument("--zprime", type=_perm, required=True)
    return p


def _emit(out, obj):
    out.write(json.dumps(obj) + "\n")
    out.flush()


def _open(path):
    return open(path, "w") if path else nullcontext(sys.stdout)


def _replay_pairs(path: str, check: str):
    pairs = []
    with open(path) as fh:
        for line in fh:
            rec = json.loads(line)
            if rec.get("status") == "fail" and rec.get("check") == check:
                iv = rec["interval"]
                pairs.append((tuple(parse_perm(iv["u"])), tuple(parse_perm(iv["v"]))))
    return pairs


def _verify(args) -> int:
    if args.replay:
        pairs = _replay_pairs(args.replay, args.check)
    elif args.u is not None or args.v is not None:
        if args.u is None or args.v is None:
            raise UsageError("--u and --v go together")
        interval(args.u, args.v)
        pairs = [(tuple(args.u), tuple(args.v))]
    else:
        if args.n is None:
            raise UsageError("one of --n, --u/--v or --replay is required")
        if not 1 <= args.n <= MAX_RANK:
            raise UsageError(f"--n must be in 1..{MAX_RANK}")
        if args.n == MAX_RANK and args.sample is None:
            raise UsageError(f"rank {MAX_RANK} needs --sample")
        if args.sample is not None and args.sample < 1:
            raise UsageError("--sample must be positive")
        pairs = select_intervals(args.n, args.sample, args.seed)
    t0 = time.perf_counter()
    counts = Counter()
    with _open(args.json) as out:
        for rep in sweep(args.check, pairs, max(1, args.jobs)):
            counts[rep.status] += 1
            _emit(out, rep.to_json())
        _emit(out, {"summary": True, "check": args.check, "n": args.n, "seed": args.seed,
                    "intervals": len(pairs), "pass": counts["pass"], "fail": counts["fail"],
                    "skip": counts["skip"], "elapsed": round(time.perf_counter() - t0, 3)})
    return 1 if counts["fail"] else 0


def _single(args) -> int:
    iv = interval(args.u, args.v)
    with _open(args.json) as out:
        if args.command == "rpoly":
            poly = rtilde(iv.u, iv.v)
            if args.json:
                _emit(out, {"u": str(iv.u), "v": str(iv.v), "rtilde": poly.to_list(), "text": str(poly)})
            else:
                print(poly, file=out)
            return 0
        if args.command == "ds":
            for w in (args.z, args.zprime):
                if w not in iv:
                    raise UsageError(f"{w} is not in [{iv.u}, {iv.v}]")
            m1 = ds_multiset(iv, args.z, args.zprime)
            m2 = ds_multiset(iv, args.zprime, args.z)
            _emit(out, {"u": str(iv.u), "v": str(iv.v), "z": str(args.z), "zprime": str(args.zprime),
                        "ds": m1.to_json(), "ds_swapped": m2.to_json(), "symmetric": m1 == m2})
            return 0 if m1 == m2 else 1
        classes = equivalence_classes(iv)
        _emit(out, {"u": str(iv.u), "v": str(iv.v),
                    "classes": [[str(z) for z in c] for c in classes]})
        return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            return _verify(args)
        return _single(args)
    except (UsageError, NotComparable, RankMismatch, ValueError) as exc:
        print(f"bruhat-ds: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
