"""``schottky`` command line.

Every command writes one JSON report to stdout.  Exit codes: 0 success (for
``certify``, a CERTIFIED_FREE verdict; for ``oracle``, no relation found),
2 when the pipeline ran but did not certify or found a relation, 1 on usage,
parse or runtime errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .building import VertexClass, apartment_intersection, pi_diag
from .burau import BraidWord, braid_eval, burau_reduced, burau_unreduced, family_generators, family_pair
from .certify import POLICIES, Presentation, certify_family, certify_pair, sweep_family
from .exactalg import render
from .matqt import MatK, render_matrix, val_matrix
from .oracle import displacement_profile, freeness_scan
from .parsing import ParseError, parse_matrix_text

SCHEMA_VERSION = "1.0"


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(x) for x in text.split(",") if x.strip()]


def _val(v):
    return v if isinstance(v, int) else "INFINITY"


def braid_relations_hold(gens: Sequence[MatK]) -> bool:
    k = len(gens)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = gens[i], gens[j]
            if j == i + 1:
                if a * b * a != b * a * b:
                    return False
            elif a * b != b * a:
                return False
    return True


def cmd_certify(args) -> tuple[dict, dict, int]:
    if args.conj_file:
        conj = parse_matrix_text(_read(args.conj_file))
        f = parse_matrix_text(args.f) if args.f else family_pair(0, 0)[0]
        cert = certify_pair(Presentation(f, conj), args.policy)
        inputs = {"f": render_matrix(f), "conj": render_matrix(conj), "policy": args.policy}
    else:
        cert = certify_family(args.alpha, args.beta, args.policy)
        inputs = {"alpha": _q(args.alpha), "beta": _q(args.beta), "policy": args.policy}
    code = 0 if cert.status == "CERTIFIED_FREE" else 2
    return inputs, {"certificate": cert.to_dict()}, code


def cmd_sweep(args) -> tuple[dict, dict, int]:
    rows = sweep_family(args.alphas, args.betas, args.policy, workers=args.workers)
    table = [{"alpha": _q(a), "beta": _q(b), **c.to_dict()} for a, b, c in rows]
    summary = {}
    for entry in table:
        summary[entry["status"]] = summary.get(entry["status"], 0) + 1
    inputs = {"alphas": [_q(a) for a in args.alphas], "betas": [_q(b) for b in args.betas], "policy": args.policy}
    return inputs, {"table": table, "summary": dict(sorted(summary.items()))}, 0


def cmd_intersect(args) -> tuple[dict, dict, int]:
    s = parse_matrix_text(_read(args.matrix_file))
    res = apartment_intersection(s)
    result = {
        "status": res.status,
        "val_matrix": [[_val(v) for v in r] for r in val_matrix(s)],
        "val_det": _val(res.val_det),
        "tropical_minimum": _val(res.tropical_minimum),
        "solutions": [{"a": list(a), "b": list(b)} for a, b in res.vertices],
        "vertices": [str(v) for v in res.common_vertices()],
    }
    return {"matrix": render_matrix(s)}, {"intersection": result}, 0


def cmd_burau(args) -> tuple[dict, dict, int]:
    gens = burau_reduced(args.n) if args.reduced else burau_unreduced(args.n)
    rep = "reduced" if args.reduced else "unreduced"
    result = {
        "representation": rep,
        "generators": [render_matrix(g) for g in gens],
        "braid_relations_hold": braid_relations_hold(gens),
    }
    inputs = {"n": args.n, "reduced": bool(args.reduced)}
    if args.word is not None:
        w = BraidWord.parse(args.n, args.word)
        result["word"] = str(w)
        result["word_matrix"] = render_matrix(braid_eval(w, rep))
        inputs["word"] = args.word
    return inputs, {"burau": result}, 0


def cmd_oracle(args) -> tuple[dict, dict, int]:
    pair = family_generators(args.alpha, args.beta)
    strategy = "exact" if args.exact else "specialize_then_confirm"
    scan = freeness_scan(pair, args.max_len, strategy, progress=sys.stderr if args.progress else None)
    result = {"scan": scan.to_dict()}
    if args.profile:
        base = VertexClass(pi_diag([-1, 0, 0]))
        result["displacement"] = [
            {"word": str(w), "distance": d} for w, d in displacement_profile(pair, base, args.profile)
        ]
    inputs = {"alpha": _q(args.alpha), "beta": _q(args.beta), "max_len": args.max_len, "strategy": strategy}
    return inputs, result, 0 if scan.relation is None else 2


def cmd_parse(args) -> tuple[dict, dict, int]:
    src = _read(args.file) if args.file else sys.stdin.read()
    m = parse_matrix_text(src)
    text = render_matrix(m)
    result = {"canonical": text, "n": m.n, "entries": [[render(x) for x in r] for r in m.rows]}
    if args.check:
        again = parse_matrix_text(text)
        result["round_trip"] = again == m and render_matrix(again) == text
        code = 0 if result["round_trip"] else 2
    else:
        code = 0
    return {"source": src.strip()}, result, code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schottky", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="also print a human summary on stderr")
    common.add_argument("--output", "-o", help="write the report to this file as well")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="certify a family member or a presented pair")
    p.add_argument("--alpha", type=_rational, default=Fraction(0))
    p.add_argument("--beta", type=_rational, default=Fraction(0))
    p.add_argument("--policy", choices=POLICIES, default="matched_ends")
    p.add_argument("--conj-file", help="conjugator matrix file (overrides --alpha/--beta)")
    p.add_argument("--f", help="diagonal generator as matrix text (default diag(1,-1/t,-t))")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sweep", parents=[common], help="certify every point of a parameter grid")
    p.add_argument("--alphas", type=_rational_list, required=True)
    p.add_argument("--betas", type=_rational_list, required=True)
    p.add_argument("--policy", choices=POLICIES, default="matched_ends")
    p.add_argument("--workers", type=int, default=None, help="default: $SCHOTTKY_WORKERS or CPU count")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("intersect", parents=[common], help="intersect the standard apartment with its image")
    p.add_argument("--matrix-file", required=True)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("burau", parents=[common], help="Burau generator matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--word", help='signed generator indices, e.g. "3 -1"')
    p.set_defaults(func=cmd_burau)

    p = sub.add_parser("oracle", parents=[common], help="search for short relations")
    p.add_argument("--alpha", type=_rational, default=Fraction(0))
    p.add_argument("--beta", type=_rational, default=Fraction(0))
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--exact", action="store_true", help="exact scan without specialization")
    p.add_argument("--profile", type=int, default=0, metavar="LEN", help="add a displacement profile up to LEN")
    p.add_argument("--no-progress", dest="progress", action="store_false")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("parse", parents=[common], help="parse and canonicalize a matrix")
    p.add_argument("file", nargs="?")
    p.add_argument("--check", action="store_true", help="verify the render/parse round trip")
    p.set_defaults(func=cmd_parse)
    return parser


def _summary(command: str, result: dict) -> str:
    if "certificate" in result:
        c = result["certificate"]
        return f"{c['status']} (intersection {c['intersection_status']}, vertex {c['vertex']}, pairs {c['pair_verdicts']})"
    if "table" in result:
        return "; ".join(f"{r['alpha']},{r['beta']}: {r['status']}" for r in result["table"])
    if "scan" in result:
        rel = result["scan"]["relation"]
        return f"checked {result['scan']['words_checked']} words; relation: {rel or 'none'}"
    if "intersection" in result:
        return f"{result['intersection']['status']}: {result['intersection']['vertices']}"
    return command


def run(argv: Optional[Sequence[str]] = None) -> tuple[dict, int, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    inputs, result, code = args.func(args)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "timing": {"elapsed_ms": int((time.perf_counter() - t0) * 1000)},
    }
    return report, code, args


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        report, code, args = run(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(report, indent=2)
    sys.stdout.write(text + "\n")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.pretty:
        print(_summary(report["command"], report["result"]), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
