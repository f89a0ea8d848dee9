"""Command-line driver: verification sweeps, statistics, traces and JSON reports.

Every command builds one report dictionary; ``--json`` prints it verbatim and
the default output is a rendering of the same dictionary.  Exit status is 0
when every check passes, 1 on a mathematical mismatch and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable, Optional

from .bijection import lower, raise_, target_index_set
from .core import (
    IndexSet,
    SignedPermutation,
    all_index_sets,
    check_rank,
    descent_set,
    is_chessboard,
    length,
    parse_index_set,
    parse_window,
    sign,
)
from .enumeration import (
    ClassQuery,
    DescentTable,
    decompose_by_pinned_column,
    iter_class,
    s_bipoly,
    s_poly,
    s_poly_chessboard,
)
from .polynomials import UniPoly, divides_xt_plus_one, f_poly, f_recursion_check
from .statistics import abc, big_l
from .swaps import (
    KINDS,
    PreconditionError,
    classify_finally_uncanceled,
    classify_initially_uncanceled,
    decompose_blocks,
    least_swap,
    swaps_by_kind,
)

SCHEMA = "octavo-report/1"


def render_matrix(w: SignedPermutation, marks: Optional[dict[int, str]] = None) -> str:
    """Fixed-width matrix art; ``marks`` labels columns above the matrix."""
    n = w.rank
    width = max(3, len(str(n)) + 2)
    lines = []
    if marks:
        lines.append("    " + "".join((marks.get(c, "")).rjust(width) for c in range(1, n + 1)))
    lines.append("    " + "".join(str(c).rjust(width) for c in range(1, n + 1)))
    grid = w.matrix()
    for r in range(n):
        cells = "".join(("." if v == 0 else str(v)).rjust(width) for v in grid[r])
        lines.append(f"{r + 1:>3} {cells}")
    return "\n".join(lines)


def _element_record(w: SignedPermutation) -> dict:
    return {
        "window": list(w.window),
        "length": length(w),
        "sign": sign(w),
        "L": big_l(w),
        "descents": list(descent_set(w).members),
    }


# verify


def _counterexample(n: int, I: IndexSet, diff: UniPoly) -> Optional[dict]:
    """An element whose L-degree carries part of the discrepancy."""
    target = next((d for d in range(diff.degree + 1) if diff[d]), None)
    first = None
    for w in iter_class(ClassQuery(n, I)):
        if first is None:
            first = w
        if big_l(w) == target:
            return _element_record(w)
    return None if first is None else _element_record(first)


def cmd_verify(
    n: int,
    I: Optional[IndexSet] = None,
    jobs: int = 1,
    oracle: bool = False,
    f_func: Optional[Callable[[int, IndexSet], UniPoly]] = None,
) -> dict:
    """Compare the class sums with the product formula; ``f_func`` replaces the formula in tests."""
    check_rank(n)
    f_func = f_func or f_poly
    start = time.perf_counter()
    subsets = [I] if I is not None else list(all_index_sets(n))
    table = chess = None
    if not oracle and I is None:
        table = DescentTable.build(n, jobs=jobs)
        chess = DescentTable.build(n, chessboard=True, jobs=jobs)
    records = []
    counterexamples = []
    chess_ok = True
    for J in subsets:
        S = table.signed(J) if table else s_poly(n, J, oracle=oracle)
        C = chess.signed(J) if chess else s_poly_chessboard(n, J, oracle=oracle)
        f = f_func(n, J)
        equal = S == f
        chess_ok = chess_ok and S == C
        records.append({"I": list(J.members), "S": str(S), "f": str(f), "equal": equal})
        if not equal:
            counterexamples.append({"I": list(J.members), "difference": str(S - f),
                                    "element": _counterexample(n, J, S - f)})
    recursion = all(f_recursion_check(n, J) for J in subsets) if n >= 2 else True
    lemmas = {"chessboard": chess_ok, "recursion": recursion}
    passed = all(r["equal"] for r in records) and all(lemmas.values())
    return {
        "schema": SCHEMA,
        "command": "verify",
        "n": n,
        "records": records,
        "lemmas": lemmas,
        "counterexamples": counterexamples,
        "overall_pass": passed,
        "timing": {"seconds": round(time.perf_counter() - start, 3)},
    }


def cmd_conjecture(n: int, jobs: int = 1, oracle: bool = False) -> dict:
    check_rank(n)
    start = time.perf_counter()
    table = None if oracle else DescentTable.build(n, jobs=jobs)
    records = []
    for J in all_index_sets(n):
        B = table.bivariate(J) if table else s_bipoly(n, J, oracle=True)
        divisible = divides_xt_plus_one(B)
        expected = 0 in J
        records.append({"I": list(J.members), "divisible": divisible,
                        "zero_in_I": expected, "agree": divisible == expected})
    return {
        "schema": SCHEMA,
        "command": "conjecture",
        "n": n,
        "records": records,
        "overall_pass": all(r["agree"] for r in records),
        "timing": {"seconds": round(time.perf_counter() - start, 3)},
    }


def cmd_stats(w: SignedPermutation) -> dict:
    br = abc(w)
    return {
        "schema": SCHEMA,
        "command": "stats",
        **_element_record(w),
        "chessboard": is_chessboard(w),
        "abc": {"a": br.a, "b": br.b, "c": br.c, "total": br.total},
        "matrix": w.matrix(),
        "overall_pass": br.total == big_l(w),
    }


def cmd_gf(n: int, I: IndexSet, oracle: bool = False) -> dict:
    check_rank(n)
    S = s_poly(n, I, oracle=oracle)
    f = f_poly(n, I)
    pinned = decompose_by_pinned_column(n, I, oracle=oracle)
    total = UniPoly()
    for p in pinned.values():
        total = total + p
    return {
        "schema": SCHEMA,
        "command": "gf",
        "n": n,
        "I": list(I.members),
        "S": str(S),
        "f": str(f),
        "difference": str(S - f),
        "pinned": [{"k": k, "sum": str(p)} for k, p in sorted(pinned.items())],
        "pinned_total": str(total),
        "overall_pass": S == f and total == S,
    }


def cmd_bijection(n: int, I: IndexSet, j: int, trace: bool = False) -> dict:
    check_rank(n)
    if n < 2:
        raise PreconditionError("lowering needs rank at least 2")
    members = I.members
    if not 0 < j <= n or (n - j) % 2 or (j != n and j not in members):
        raise PreconditionError(f"column {j} must lie in I + {{n}} with n - j even")
    if any((i - n) % 2 for i in members if i > j):
        raise PreconditionError(f"every element of I above {j} must have the parity of n = {n}")
    J = target_index_set(n, members, j)
    JJ = IndexSet(n - 1, J)
    U = [w for w in iter_class(ClassQuery(n, I, chessboard_only=True))
         if w.window[j - 1] == n and classify_initially_uncanceled(w, j, members).overall]
    V = [v for v in iter_class(ClassQuery(n - 1, JJ, chessboard_only=True))
         if classify_finally_uncanceled(v, j - 1, J).overall]
    failures = []
    image = set()
    traces = []
    for w in U:
        h, tr = lower(w, j, members)
        image.add(h)
        back = raise_(h, j, J)[0]
        problems = []
        if big_l(h) != big_l(w) - (n - j):
            problems.append("L shift")
        if sign(h) != sign(w):
            problems.append("sign")
        if back != w:
            problems.append("R(H(w)) != w")
        if problems:
            failures.append({"window": list(w.window), "image": list(h.window), "problems": problems})
        if trace:
            traces.append(tr.to_json())
    for v in V:
        if lower(raise_(v, j, J)[0], j, members)[0] != v:
            failures.append({"window": list(v.window), "problems": ["H(R(v)) != v"]})
    onto = image == set(V)
    report = {
        "schema": SCHEMA,
        "command": "bijection",
        "n": n,
        "I": list(members),
        "j": j,
        "J": list(J),
        "domain_size": len(U),
        "codomain_size": len(V),
        "bijective": onto and len(image) == len(U),
        "failures": failures,
        "overall_pass": onto and len(image) == len(U) and not failures,
    }
    if trace:
        report["traces"] = traces
    return report


def cmd_trace(w: SignedPermutation, j: int) -> dict:
    """Step-by-step lowering of a single element, with the inverse check."""
    v, tr = lower(w, j)
    back = raise_(v, j)[0]
    return {
        "schema": SCHEMA,
        "command": "bijection",
        "window": list(w.window),
        "j": j,
        "image": list(v.window),
        "stages": tr.to_json(),
        "round_trip": back == w,
        "overall_pass": back == w and big_l(v) == big_l(w) - (w.rank - j) and sign(v) == sign(w),
    }


def cmd_swaps(w: SignedPermutation, k: int) -> dict:
    found = swaps_by_kind(w, k)
    least = {}
    for family in ("general-left", "general-minus", "general-plus"):
        x = least_swap(w, k, family)
        least[family] = None if x is None else x.to_json()
    classes = {}
    for side, fn in (("initial", classify_initially_uncanceled), ("final", classify_finally_uncanceled)):
        try:
            classes[side] = fn(w, k).to_json()
        except PreconditionError as e:
            classes[side] = {"not_applicable": str(e)}
    return {
        "schema": SCHEMA,
        "command": "swaps",
        "window": list(w.window),
        "k": k,
        "blocks": decompose_blocks(w, k).to_json(),
        "swaps": {kind: sorted([list(x.columns) for x in found[kind]]) for kind in KINDS},
        "least": least,
        "uncanceled": classes,
        "overall_pass": True,
    }


# human rendering


def _render(report: dict) -> str:
    cmd = report["command"]
    out = []
    if cmd in ("verify", "conjecture"):
        out.append(f"{cmd} n={report['n']}")
        for r in report["records"]:
            I = "{" + ",".join(map(str, r["I"])) + "}"
            if cmd == "verify":
                mark = "ok " if r["equal"] else "BAD"
                out.append(f"  {mark} I={I:<16} S={r['S']}")
            else:
                mark = "ok " if r["agree"] else "BAD"
                out.append(f"  {mark} I={I:<16} divisible={r['divisible']} 0 in I={r['zero_in_I']}")
        for name, ok in report.get("lemmas", {}).items():
            out.append(f"  lemma {name}: {'ok' if ok else 'FAILED'}")
        for ce in report.get("counterexamples", []):
            out.append(f"  counterexample I={ce['I']} difference={ce['difference']} element={ce['element']}")
    elif cmd == "stats":
        w = SignedPermutation(tuple(report["window"]))
        out.append(f"window     {w}")
        out.append(render_matrix(w))
        out.append(f"D(w)       {{{','.join(map(str, report['descents']))}}}")
        out.append(f"length     {report['length']}")
        out.append(f"sign       {report['sign']}")
        out.append(f"L          {report['L']}")
        a = report["abc"]
        out.append(f"a, b, c    {a['a']}, {a['b']}, {a['c']}  (a + b + 2c = {a['total']})")
        out.append(f"chessboard {str(report['chessboard']).lower()}")
    elif cmd == "gf":
        out.append(f"n={report['n']} I={{{','.join(map(str, report['I']))}}}")
        out.append(f"S          {report['S']}")
        out.append(f"f          {report['f']}")
        out.append(f"S - f      {report['difference']}")
        for p in report["pinned"]:
            out.append(f"  pinned k={p['k']}: {p['sum']}")
        out.append(f"  pinned total: {report['pinned_total']}")
    elif cmd == "bijection" and "stages" in report:
        for st in report["stages"]:
            w = SignedPermutation(tuple(st["window"]))
            head = f"{st['stage']}: L={st['L']} sign={st['sign']}"
            if st["word"]:
                head += f"  [{st['word']}]"
            out.append(head)
            out.append(render_matrix(w))
        out.append(f"round trip: {'ok' if report['round_trip'] else 'FAILED'}")
    elif cmd == "bijection":
        out.append(f"n={report['n']} I={report['I']} j={report['j']} J={report['J']}")
        out.append(f"|U| = {report['domain_size']}, |V| = {report['codomain_size']}, bijective: {report['bijective']}")
        for f in report["failures"]:
            out.append(f"  failure {f}")
        for tr in report.get("traces", []):
            out.append("  " + " -> ".join(f"{s['stage']}{s['window']}" for s in tr))
    elif cmd == "swaps":
        w = SignedPermutation(tuple(report["window"]))
        marks = {report["k"]: "k"} if report["k"] >= 1 else {}
        out.append(render_matrix(w, marks))
        for kind, moves in report["swaps"].items():
            text = ", ".join("(" + ",".join(map(str, m)) + ")" for m in moves) or "none"
            out.append(f"  {kind:<13} {text}")
        for family, x in report["least"].items():
            out.append(f"  least {family}: {'none' if x is None else x}")
        for side, res in report["uncanceled"].items():
            out.append(f"  {side}: {res}")
    status = "PASS" if report["overall_pass"] else "FAIL"
    out.append(status)
    return "\n".join(out)


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_render(report))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="octavo", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine-readable report")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker processes for sweeps (default: all cores)")
    common.add_argument("--oracle", action="store_true",
                        help="enumerate by filtering the whole group (slow cross-check)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="compare S_{n,I} with f_{n,I}")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--set", dest="index_set", default=None, help="restrict to one I, e.g. 0,2")

    c = sub.add_parser("conjecture", parents=[common], help="check divisibility by Xt+1")
    c.add_argument("--n", type=int, required=True)

    s = sub.add_parser("stats", parents=[common], help="statistics of one element")
    s.add_argument("--window", required=True)

    g = sub.add_parser("gf", parents=[common], help="generating function and pinned sums")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--set", dest="index_set", default="")

    b = sub.add_parser("bijection", parents=[common], help="lowering/raising round trip")
    b.add_argument("--n", type=int)
    b.add_argument("--set", dest="index_set", default=None)
    b.add_argument("--j", type=int, required=True)
    b.add_argument("--window", default=None, help="trace a single element instead of a sweep")
    b.add_argument("--trace", action="store_true", help="include per-element stage windows")

    w = sub.add_parser("swaps", parents=[common], help="blocks, swaps and uncanceled verdicts")
    w.add_argument("--window", required=True)
    w.add_argument("--j", "--k", dest="j", type=int, required=True, help="reference column")
    return p


def run(args: argparse.Namespace) -> dict:
    jobs = max(1, args.jobs)
    if args.command == "verify":
        I = None if args.index_set is None else parse_index_set(args.index_set, args.n)
        return cmd_verify(args.n, I, jobs=jobs, oracle=args.oracle)
    if args.command == "conjecture":
        return cmd_conjecture(args.n, jobs=jobs, oracle=args.oracle)
    if args.command == "stats":
        return cmd_stats(parse_window(args.window))
    if args.command == "gf":
        return cmd_gf(args.n, parse_index_set(args.index_set, args.n), oracle=args.oracle)
    if args.command == "bijection":
        if args.window is not None:
            return cmd_trace(parse_window(args.window), args.j)
        if args.n is None or args.index_set is None:
            raise ValueError("bijection needs --window, or both --n and --set")
        return cmd_bijection(args.n, parse_index_set(args.index_set, args.n), args.j, args.trace)
    if args.command == "swaps":
        return cmd_swaps(parse_window(args.window), args.j)
    raise AssertionError(args.command)


def _glue_windows(argv: list[str]) -> list[str]:
    """Let ``--window -9,2,...`` through: argparse would read the value as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_windows(argv))
    try:
        report = run(args)
    except (ValueError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(report, args.json)
    return 0 if report["overall_pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
