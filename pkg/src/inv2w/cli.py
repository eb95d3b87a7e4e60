"""Command line front end: invert, verify, search-seed, latency, bench."""

from __future__ import annotations

import argparse
import random
import sys
import time

import numpy as np

from . import latency as lat
from .inverse import AlgoKind, invert, invert_array, parse_algo
from .modring import MAX_WIDTH, InverseDoesNotExist, Residue, mask, to_machine
from .seed_search import search
from .seeds import SeedKind, parse_seed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EXHAUSTIVE_MAX_WIDTH = 24

ALGO_NAMES = [a.value for a in AlgoKind]
SEED_NAMES = [s.value for s in SeedKind]

BENCH_DISCLAIMER = (
    "note: wall-clock timings of interpreted code on this machine; they are not "
    "cycle counts and need not follow the latency model's ordering.")


def _int(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _width(text: str) -> int:
    w = _int(text)
    if not 1 <= w <= MAX_WIDTH:
        raise argparse.ArgumentTypeError(f"width must be in 1..{MAX_WIDTH}")
    return w


def _positive(text: str) -> int:
    n = _int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _hex(v: int, width: int) -> str:
    return f"0x{v:0{max(1, -(-width // 4))}x}"


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    print(f"RESULT: ERROR {msg}")
    return code


def cmd_invert(args) -> int:
    a = Residue(args.a, args.width)
    try:
        out = invert(a, args.algo, args.seed, trace=args.trace)
    except InverseDoesNotExist:
        return _fail("inverse does not exist for even a", EXIT_USAGE)
    except ValueError as e:
        return _fail(str(e), EXIT_USAGE)
    if args.trace:
        x, tr = out
        print(f"trace: algo={tr.algo.value} k={tr.k} p={tr.p} width={tr.width}")
        for n, xn, yn in tr.steps:
            print(f"  n={n} x={xn.value} ({_hex(xn.value, args.width)}) "
                  f"y={yn.value} ({_hex(yn.value, args.width)}) "
                  f"trailing_zeros={yn.trailing_zeros()}")
    else:
        x = out
    print(f"inverse of {a.value} mod 2^{args.width}: {x.value} ({_hex(x.value, args.width)})")
    print(f"RESULT: {x.value}")
    return EXIT_OK


def _product_is_one(a, x, width):
    if isinstance(x, np.ndarray) and x.dtype != object:
        prod = (a.astype(x.dtype) * x) & x.dtype.type(mask(width))
        return np.all(prod == 1)
    m = mask(width)
    return all((int(ai) * int(xi)) & m == 1 for ai, xi in zip(a, x))


def cmd_verify(args) -> int:
    w = args.width
    if args.exhaustive:
        if w > EXHAUSTIVE_MAX_WIDTH:
            return _fail(f"--exhaustive is limited to width <= {EXHAUSTIVE_MAX_WIDTH}; "
                         "use --samples N for wider widths", EXIT_USAGE)
        if w <= 64:
            values = np.arange(1, 1 << w, 2, dtype=np.uint64)
        else:
            values = list(range(1, 1 << w, 2))
    else:
        rng = random.Random(args.rng_seed)
        values = [rng.getrandbits(w) | 1 for _ in range(args.samples)]
        if w <= 64:
            values = to_machine(values, w)
    try:
        algos = [parse_algo(s) for s in args.algos.split(",") if s.strip()]
    except ValueError as e:
        return _fail(str(e), EXIT_USAGE)
    count = len(values)
    try:
        oracle = invert_array(values, w, AlgoKind.EUCLID)
        bad = 0
        if not _product_is_one(values, oracle, w):
            print("euclid: oracle product check FAILED")
            bad += 1
        for algo in algos:
            got = invert_array(values, w, algo, args.seed)
            mismatches = int(np.count_nonzero(got != oracle))
            ok = mismatches == 0 and _product_is_one(values, got, w)
            print(f"{algo.value}: {count - mismatches}/{count} match euclid"
                  f"{'' if ok else '  FAILED'}")
            bad += not ok
    except ValueError as e:
        return _fail(str(e), EXIT_USAGE)
    if bad:
        print(f"RESULT: FAIL {bad} algorithm(s) disagree at width {w}")
        return EXIT_FAIL
    print(f"RESULT: PASS {count} odd values OK")
    return EXIT_OK


def cmd_search_seed(args) -> int:
    try:
        found = search(args.k, args.width, args.const_max)
    except ValueError as e:
        return _fail(str(e), EXIT_USAGE)
    for c in found:
        print(c)
    print(f"total: {len(found)} candidates (k={args.k}, width={args.width}, "
          f"const_max={args.const_max})")
    print(f"RESULT: {len(found)}")
    return EXIT_OK


def cmd_latency(args) -> int:
    try:
        model = lat.CostModel.load(args.model) if args.model else lat.CostModel()
        overrides = {k: getattr(args, k) for k in ("mul", "add", "xor", "mul3")
                     if getattr(args, k) is not None}
        if overrides:
            model = lat.CostModel(**{**model.__dict__, **overrides})
        prog = lat.build_program(lat.PROGRAMS[args.program], args.width, args.seed)
    except (OSError, ValueError) as e:
        return _fail(str(e), EXIT_USAGE)
    sched = lat.schedule(prog, model)
    sched.validate(prog, model)
    print(f"{args.program} ({prog.name}), width {args.width}, model mul={model.mul} "
          f"add={model.add} xor={model.xor} mul3={model.mul3}")
    print("cycle: operation(s)")
    print(lat.render_timeline(sched, prog))
    print(f"total latency: {sched.total_latency} cycles")
    print(f"RESULT: {sched.total_latency}")
    return EXIT_OK


def cmd_bench(args) -> int:
    w = args.width
    for algo in (AlgoKind.IMPROVED, AlgoKind.NEWTON, AlgoKind.DUMAS_ORIGINAL):
        x = Residue(0x9E3779B97F4A7C15, w) | 1
        start = time.perf_counter_ns()
        for _ in range(args.iters):
            # each result feeds the next input: a latency-bound chain
            x = invert(x | 1, algo)
        elapsed = time.perf_counter_ns() - start
        print(f"{algo.value:>8}: {elapsed / args.iters:10.1f} ns/op  "
              f"({args.iters} chained inverses, width {w})")
    print(BENCH_DISCLAIMER)
    print("RESULT: report-only")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inv2w", description="Integer multiplicative inverse modulo 2^w.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invert", help="invert one odd value")
    p.add_argument("--a", type=_int, required=True, help="value, decimal or 0x-hex")
    p.add_argument("--width", type=_width, default=64)
    p.add_argument("--algo", choices=ALGO_NAMES, default="improved")
    p.add_argument("--seed", choices=SEED_NAMES, default=None)
    p.add_argument("--trace", action="store_true", help="print every (n, x_n, y_n)")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("verify", help="check algorithms against the Euclid oracle")
    p.add_argument("--width", type=_width, default=64)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=_positive, default=10000)
    p.add_argument("--algos", default="improved,newton,dumas",
                   help="comma separated, from " + ",".join(ALGO_NAMES))
    p.add_argument("--seed", choices=SEED_NAMES, default=None)
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-seed", help="brute-force two-operation seed formulas")
    p.add_argument("--k", type=_positive, default=4)
    p.add_argument("--width", type=_width, default=8)
    p.add_argument("--const-max", type=_int, default=15)
    p.set_defaults(func=cmd_search_seed)

    p = sub.add_parser("latency", help="cycle timeline under the latency model")
    p.add_argument("--program", choices=sorted(lat.PROGRAMS), default="fig1")
    p.add_argument("--width", type=_width, default=64)
    p.add_argument("--seed", choices=SEED_NAMES, default="k4")
    p.add_argument("--mul", type=_positive)
    p.add_argument("--add", type=_positive)
    p.add_argument("--xor", type=_positive)
    p.add_argument("--mul3", type=_positive)
    p.add_argument("--model", help="key=value cost model file (mul, add, xor, mul3)")
    p.set_defaults(func=cmd_latency)

    p = sub.add_parser("bench", help="wall-clock timing, report only")
    p.add_argument("--width", type=_width, default=64)
    p.add_argument("--iters", type=_positive, default=100000)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
