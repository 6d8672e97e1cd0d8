"""Command-line frontend.

`query` is a thin client of the HTTP service: by default it mounts the
FastAPI app over an in-process ASGI transport (no server needed for batch
runs); pass --server to target a running instance.  `fuzz` and `bench`
drive the engines directly because they compare against the brute-force
oracle after every edit and read the instrumented counters.

Edit script format, one op per line:  sub <i> <char> | ins <i> <char> | del <i>
Queries: whitespace-separated 1-based integers, or `all`.
Exit codes: 0 ok, 1 mismatch/engine error, 2 parse error, 3 unsupported op.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
import time

from .counters import Counters
from .dynstr import EditOp
from . import oracle


class ScriptError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"script line {lineno}: {message}")
        self.lineno = lineno


def parse_script(lines):
    ops = []
    for lineno, line in enumerate(lines, start=1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        parts = body.split()
        kind = parts[0]
        if kind == "del":
            if len(parts) != 2:
                raise ScriptError(lineno, "del takes one argument")
            try:
                ops.append(EditOp("del", int(parts[1])))
            except ValueError:
                raise ScriptError(lineno, f"bad position {parts[1]!r}")
        elif kind in ("sub", "ins"):
            if len(parts) != 3 or len(parts[2]) != 1 or not parts[2].isprintable():
                raise ScriptError(lineno, f"{kind} takes a position and one printable byte")
            try:
                pos = int(parts[1])
            except ValueError:
                raise ScriptError(lineno, f"bad position {parts[1]!r}")
            ops.append(EditOp(kind, pos, parts[2]))
        else:
            raise ScriptError(lineno, f"unknown op {kind!r}")
    return ops


def _alphabet_arg(spec_str):
    if spec_str is None:
        return "ab"
    if spec_str.isdigit():
        size = int(spec_str)
        if not 1 <= size <= 26:
            raise ValueError("numeric alphabet size must be in 1..26")
        return "abcdefghijklmnopqrstuvwxyz"[:size]
    return spec_str


def _parse_n_range(text):
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


# ---------------------------------------------------------------------------
# query


def cmd_query(args):
    import httpx

    try:
        raw = open(args.text, "rb").read().decode("latin-1")
    except OSError as ex:
        print(f"cannot read text file: {ex}", file=sys.stderr)
        return 1
    ops = []
    if args.script:
        try:
            with open(args.script) as fh:
                ops = parse_script(fh)
        except ScriptError as ex:
            print(str(ex), file=sys.stderr)
            return 2
        except OSError as ex:
            print(f"cannot read script file: {ex}", file=sys.stderr)
            return 1
    if args.mode == "isa" and any(op.kind != "sub" for op in ops):
        print("mode isa only supports substitution updates", file=sys.stderr)
        return 3

    if args.server:
        client = httpx.Client(base_url=args.server, timeout=600.0)
    else:
        from fastapi.testclient import TestClient

        from .service import create_app

        client = TestClient(create_app())
    with client:
        mode = "isa" if args.mode == "isa" else "sa"
        resp = client.post("/texts", json={"text": raw, "mode": mode})
        if resp.status_code != 200:
            print(f"create failed: {resp.text}", file=sys.stderr)
            return 1
        tid = resp.json()["text_id"]
        if ops:
            payload = [{"kind": o.kind, "position": o.position,
                        "symbol": None if o.symbol is None else chr(o.symbol)}
                       for o in ops]
            resp = client.post(f"/texts/{tid}/edits", json={"ops": payload})
            if resp.status_code == 409:
                print(resp.json()["detail"], file=sys.stderr)
                return 3
            if resp.status_code != 200:
                print(f"edit failed: {resp.text}", file=sys.stderr)
                return 1
        queries = (args.queries or "").strip()
        if not queries:
            return 0
        resp = client.get(f"/texts/{tid}/query",
                          params={"op": args.mode, "positions": queries})
        if resp.status_code != 200:
            detail = resp.json().get("detail", resp.text)
            print(f"query failed: {detail}", file=sys.stderr)
            return 1
        data = resp.json()
        out = sys.stdout
        for pos, ans in zip(data["positions"], data["answers"]):
            out.write(f"{pos}\t{ans}\n")
    return 0


# ---------------------------------------------------------------------------
# fuzz


def _random_text(rng, n, alphabet):
    if rng.random() < 0.35:
        parts = []
        while sum(map(len, parts)) < n:
            motif = "".join(rng.choice(alphabet) for _ in range(rng.randrange(1, 4)))
            parts.append(motif * rng.randrange(2, 20))
        return "".join(parts)[:n]
    return "".join(rng.choice(alphabet) for _ in range(n))


def _random_op(rng, text, alphabet, mode):
    n = len(text)
    kind = "sub" if mode == "isa" else rng.choice(["sub", "ins", "del"])
    if kind == "sub" and n == 0:
        kind = "ins"
    if kind == "del" and n <= 1:
        kind = "ins"
    if kind == "sub":
        x = rng.randrange(1, n + 1)
        c = rng.choice(alphabet)
        if c == text[x - 1]:
            others = [a for a in alphabet if a != c] or [chr(ord(c) % 120 + 1)]
            c = rng.choice(others)
        return EditOp("sub", x, c)
    if kind == "ins":
        return EditOp("ins", rng.randrange(0, n + 1), rng.choice(alphabet))
    return EditOp("del", rng.randrange(1, n + 1))


def _apply_to_str(text, op):
    if op.kind == "sub":
        return text[:op.position - 1] + chr(op.symbol) + text[op.position:]
    if op.kind == "ins":
        return text[:op.position] + chr(op.symbol) + text[op.position:]
    return text[:op.position - 1] + text[op.position:]


def _check(mode, engine, text):
    inject = os.environ.get("DYNSA_INJECT_FAULT")
    if mode == "isa":
        got = engine.isa_all()
        exp = oracle.naive_isa(text)
    else:
        got = engine.sa_all()
        exp = oracle.naive_sa(text)
    if inject and got:
        got = got[:]
        got[0] += 1
    return got == exp


def _run_script(mode, text, ops):
    """Replay from scratch; True when every per-op differential passes."""
    from .csr import DynamicISA
    from .dsa import DynamicSA

    engine = DynamicISA(text) if mode == "isa" else DynamicSA(text)
    cur = text
    if not _check(mode, engine, cur):
        return False
    for op in ops:
        try:
            if mode == "isa":
                engine.substitute(op.position, op.symbol)
            else:
                engine.apply_edit(op)
        except Exception:
            return False
        cur = _apply_to_str(cur, op)
        if not _check(mode, engine, cur):
            return False
    return True


def _minimize(mode, text, ops):
    """Shortest failing prefix, then greedily drop earlier ops."""
    lo, hi = 1, len(ops)
    while lo < hi:
        mid = (lo + hi) // 2
        if _run_script(mode, text, ops[:mid]):
            lo = mid + 1
        else:
            hi = mid
    ops = ops[:lo]
    keep = list(ops)
    idx = 0
    while idx < len(keep) - 1:
        trial = keep[:idx] + keep[idx + 1:]
        if not _run_script(mode, text, trial):
            keep = trial
        else:
            idx += 1
    return keep


def cmd_fuzz(args):
    from .csr import DynamicISA
    from .dsa import DynamicSA

    rng = random.Random(args.seed)
    alphabet = _alphabet_arg(args.alphabet)
    lo, hi = _parse_n_range(args.n)
    total_ops = 0
    for round_no in range(args.rounds):
        n = rng.randrange(lo, hi + 1)
        text = _random_text(rng, max(n, 1), alphabet)
        engine = DynamicISA(text) if args.mode == "isa" else DynamicSA(text)
        cur = text
        script = []
        for _ in range(args.ops):
            op = _random_op(rng, cur, alphabet, args.mode)
            script.append(op)
            try:
                if args.mode == "isa":
                    engine.substitute(op.position, op.symbol)
                else:
                    engine.apply_edit(op)
                cur = _apply_to_str(cur, op)
                ok = _check(args.mode, engine, cur)
            except Exception as ex:
                print(f"engine raised: {ex!r}", file=sys.stderr)
                ok = False
            total_ops += 1
            if not ok:
                small = _minimize(args.mode, text, script)
                print(f"MISMATCH round={round_no} seed={args.seed} mode={args.mode}",
                      file=sys.stderr)
                print("# reproduction", file=sys.stderr)
                print(f"# text: {text!r}", file=sys.stderr)
                for op in small:
                    if op.kind == "del":
                        print(f"del {op.position}", file=sys.stderr)
                    else:
                        print(f"{op.kind} {op.position} {chr(op.symbol)}", file=sys.stderr)
                return 1
    print(f"PASS rounds={args.rounds} ops={total_ops} seed={args.seed} mode={args.mode}")
    return 0


# ---------------------------------------------------------------------------
# bench


def cmd_bench(args):
    from .csr import DynamicISA
    from .dsa import DynamicSA

    rng = random.Random(args.seed)
    alphabet = _alphabet_arg(args.alphabet)
    grid = [int(v) for v in args.n.split(",") if v.strip()] if args.n else []
    out = sys.stdout
    out.write("n\tlce_per_update\trange_per_update\twall_ms_per_update\n")
    rows = []
    for n in grid:
        text = "".join(rng.choice(alphabet) for _ in range(n))
        counters = Counters()
        engine = (DynamicISA(text, counters=counters) if args.mode == "isa"
                  else DynamicSA(text, counters=counters))
        cur = text
        counters.reset()
        t0 = time.perf_counter()
        for _ in range(args.ops):
            op = _random_op(rng, cur, alphabet, args.mode)
            if args.mode == "isa":
                engine.substitute(op.position, op.symbol)
            else:
                engine.apply_edit(op)
            cur = _apply_to_str(cur, op)
        wall = (time.perf_counter() - t0) * 1000 / max(args.ops, 1)
        lce = counters.lce_calls / max(args.ops, 1)
        rng_ops = counters.range_visits / max(args.ops, 1)
        rows.append((n, lce + rng_ops))
        out.write(f"{n}\t{lce:.1f}\t{rng_ops:.1f}\t{wall:.3f}\n")
    if len(rows) >= 2:
        xs = [math.log(n) for n, _ in rows]
        ys = [math.log(max(c, 1.0)) for _, c in rows]
        mx = sum(xs) / len(xs)
        my = sum(ys) / len(ys)
        den = sum((x - mx) ** 2 for x in xs)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / den if den else 0.0
        print(f"# per-update cost slope (log-log): {slope:.3f}", file=sys.stderr)
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="dynsa", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="build an index, apply a script, answer queries")
    q.add_argument("text", help="text file (read as raw bytes)")
    q.add_argument("--mode", choices=["isa", "sa", "bwt", "lcp"], required=True)
    q.add_argument("--script", help="edit script file")
    q.add_argument("--queries", default="", help="whitespace-separated positions or 'all'")
    q.add_argument("--server", help="base URL of a running service (default: in-process)")
    q.set_defaults(fn=cmd_query)

    f = sub.add_parser("fuzz", help="randomized differential testing vs the oracle")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--n", default="32:96", help="text length or lo:hi range")
    f.add_argument("--alphabet", default="ab")
    f.add_argument("--ops", type=int, default=25, help="edits per round")
    f.add_argument("--rounds", type=int, default=5)
    f.add_argument("--mode", choices=["isa", "sa"], default="isa")
    f.set_defaults(fn=cmd_fuzz)

    b = sub.add_parser("bench", help="operation-count benchmarks over an n grid")
    b.add_argument("--n", default="", help="comma-separated text lengths")
    b.add_argument("--mode", choices=["isa", "sa"], default="isa")
    b.add_argument("--ops", type=int, default=8, help="updates per grid point")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--alphabet", default="ab")
    b.set_defaults(fn=cmd_bench)

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8321)
    s.set_defaults(fn=cmd_serve)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
