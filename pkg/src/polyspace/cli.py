"""``polyspace`` command line interface.

Exit codes: 0 success, 1 internal fault, 2 invalid weights, 3 weights on a
wall, 4 bad subcommand arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence, TextIO

from . import intersection, poincare, positivity, ring, weights
from .errors import DegreeError, InvalidWeights, NotSmooth, ParseError, PolyspaceError
from .ring import Monomial, RingElement
from .weights import WeightVector, bits_of, format_rational, format_subset

EXIT_OK = 0
EXIT_FAULT = 1
EXIT_WEIGHTS = 2
EXIT_WALL = 3
EXIT_ARGS = 4

COMMANDS = ("validate", "poincare", "betti", "relations", "intersect", "evaluate",
            "ample", "fano", "maximal", "quadrangles", "chamber")


class UsageError(PolyspaceError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_monomial(text: str, n: int | None = None) -> Monomial:
    return Monomial.parse(text, n)


def _index_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated indices, got {text!r}") from None


def _coeff_list(text: str) -> list[Fraction]:
    out = []
    for tok in text.split(","):
        try:
            out.append(Fraction(tok.strip()))
        except ValueError:
            raise ParseError(f"bad coefficient {tok!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--m", dest="weights", help="weights, e.g. 1,1,1,3/2")
    src.add_argument("--file", help="file with one weight vector per line")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--threads", type=int, default=1, help="worker processes for --file")

    parser = _Parser(prog="polyspace", description="Invariants of polygon spaces M_n(m).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("validate", parents=[common], help="check the weight vector")
    sub.add_parser("poincare", parents=[common], help="Poincare polynomial")
    sub.add_parser("betti", parents=[common], help="even Betti numbers")
    rel = sub.add_parser("relations", parents=[common], help="ring presentation")
    rel.add_argument("--dims", action="store_true", help="also print graded dimensions")
    inter = sub.add_parser("intersect", parents=[common], help="top intersection of l_J p^k")
    inter.add_argument("--J", default="", help="indices of J, e.g. 1,2")
    inter.add_argument("--p", type=int, default=None, help="power of p")
    inter.add_argument("--monomial", help="monomial such as l1*l2*p^2 (instead of --J/--p)")
    inter.add_argument("--oracle", choices=("signs", "cycles", "both"), default="signs")
    ev = sub.add_parser("evaluate", parents=[common],
                        help="evaluate a top-degree class (default c_1^(n-3))")
    ev.add_argument("--expr", help="ring element, e.g. '1/2*l1*l2 + p'")
    ev.add_argument("--coeffs", help="evaluate (sum a_i l_i)^(n-3)")
    ev.add_argument("--oracle", choices=("signs", "cycles", "both"), default="signs")
    amp = sub.add_parser("ample", parents=[common], help="ampleness of sum a_i l_i")
    amp.add_argument("--coeffs", help="a_1,...,a_n (default: the weights)")
    sub.add_parser("fano", parents=[common], help="Fano test by both criteria")
    sub.add_parser("maximal", parents=[common], help="maximal degenerations")
    sub.add_parser("quadrangles", parents=[common], help="quadrangle degenerations")
    sub.add_parser("chamber", parents=[common], help="chamber signature")
    return parser


def _weights_json(m: WeightVector) -> list[str]:
    return [format_rational(e) for e in m.entries]


def _route_values(m: WeightVector, compute, oracle: str) -> dict[str, Fraction]:
    routes = ("signs", "cycles") if oracle == "both" else (oracle,)
    values = {route: compute(route) for route in routes}
    if len(set(values.values())) > 1:
        raise AssertionError(f"routes disagree: {values}")
    return values


def _show(q: Fraction) -> str:
    return format_rational(q) if q >= 0 else "-" + format_rational(-q)


def compute(args: argparse.Namespace, m: WeightVector) -> tuple[int, str, dict]:
    """Run one subcommand on one weight vector: (exit code, text, json payload)."""
    cmd = args.command
    out: dict = {"weights": _weights_json(m)}
    if cmd == "validate":
        wall = weights.find_wall(m)
        out.update(n=m.n, total=format_rational(m.total), smooth=wall is None)
        if wall is not None:
            out["wall"] = list(weights.indices_of(wall))
            return EXIT_WALL, f"valid n={m.n} total={m.total}; singular: wall subset {format_subset(wall)}", out
        return EXIT_OK, f"valid n={m.n} total={m.total}; smooth", out

    if cmd == "poincare":
        poly = poincare.poincare_polynomial(m)
        out["poincare"] = poly.to_json()
        return EXIT_OK, f"P(q) = {poly}", out

    if cmd == "betti":
        b = poincare.betti_numbers(m)
        out.update(betti=[str(x) for x in b], euler=str(sum(b)))
        return EXIT_OK, "b: " + " ".join(map(str, b)), out

    if cmd == "relations":
        pres = ring.presentation(m)
        lines = [f"{format_subset(I)}: {rel} = 0" for I, rel in pres]
        out["relations"] = [{"long_set": list(weights.indices_of(I)), "relation": rel.to_json()}
                            for I, rel in pres]
        if args.dims:
            dims = [ring.graded_dimension(m, d, pres) for d in range(m.n - 2)]
            out["graded_dimensions"] = [str(x) for x in dims]
            lines.append("graded dims: " + " ".join(map(str, dims)))
        return EXIT_OK, "\n".join(lines), out

    if cmd == "intersect":
        if args.monomial is not None:
            mono = parse_monomial(args.monomial, m.n)
        else:
            J = _index_list(args.J)
            if any(not 1 <= i <= m.n for i in J) or len(set(J)) != len(J):
                raise ParseError(f"--J must list distinct indices in 1..{m.n}")
            k = args.p if args.p is not None else (m.n - 3 - len(J)) // 2
            mono = Monomial(bits_of(J), k)
        values = _route_values(m, lambda r: intersection.intersect(m, mono, r), args.oracle)
        out["monomial"] = str(mono)
        out.update({r: str(v) for r, v in values.items()})
        value = next(iter(values.values()))
        if len(values) > 1:
            return EXIT_OK, " ".join(f"{r}={v}" for r, v in values.items()), out
        return EXIT_OK, str(value), out

    if cmd == "evaluate":
        if args.expr is not None:
            element = RingElement.parse(args.expr, m.n)
        else:
            a = _coeff_list(args.coeffs) if args.coeffs else [1] * m.n
            if len(a) != m.n:
                raise ParseError(f"--coeffs needs {m.n} entries, got {len(a)}")
            divisor = sum((RingElement.l(i) * c for i, c in enumerate(a, 1)), RingElement())
            element = divisor ** (m.n - 3)
        values = _route_values(m, lambda r: intersection.evaluate(m, element, r), args.oracle)
        value = next(iter(values.values()))
        out.update(element=element.to_json(), value=_show(value))
        return EXIT_OK, _show(value), out

    if cmd == "ample":
        a = _coeff_list(args.coeffs) if args.coeffs else list(m.entries)
        if len(a) != m.n:
            raise ParseError(f"--coeffs needs {m.n} entries, got {len(a)}")
        result = positivity.is_ample(m, a)
        out.update(coeffs=[_show(x) for x in a], ample=result.ample,
                   certificate=str(result.certificate) if result.certificate else None)
        text = "ample: yes" if result.ample else f"ample: no\ncertificate: {result.certificate}"
        return EXIT_OK, text, out

    if cmd == "fano":
        verdict = positivity.fano_verdict(m)
        if not verdict.consistent:
            raise AssertionError(f"Fano criteria disagree for {m}: {verdict}")
        payload = verdict.to_json()
        lines = [f"fano: {'yes' if verdict.fano else 'no'}",
                 f"quadrangle criterion: {verdict.method_quadrangle}",
                 f"maximal-degeneration criterion: {verdict.method_maximal}"]
        lines += [f"witness: {w}" for w in verdict.witnesses]
        return EXIT_OK, "\n".join(lines), {**payload, "weights": out["weights"]}

    if cmd == "maximal":
        degs = positivity.maximal_degenerations(m)
        out["maximal"] = [{"set": list(weights.indices_of(d.bits)), "dimension": d.dimension}
                          for d in degs]
        return EXIT_OK, "\n".join(str(d) for d in degs), out

    if cmd == "quadrangles":
        quads = positivity.quadrangles(m)
        out["quadrangles"] = [q.to_json() for q in quads]
        return EXIT_OK, "\n".join(str(q) for q in quads), out

    if cmd == "chamber":
        sig = weights.chamber_signature(m)
        report = weights.massive_points(m)
        out.update(short_sets=[list(weights.indices_of(b)) for b in sig.short_sets],
                   structure=str(report))
        return EXIT_OK, f"structure: {report}\nshort sets: {sig}", out

    raise UsageError(f"unknown command {cmd}")


def _run_one(args: argparse.Namespace, text: str) -> tuple[int, str, dict | None]:
    """Never raises for expected failures; returns (code, text, json)."""
    try:
        m = WeightVector.parse(text)
    except (InvalidWeights, ParseError) as exc:
        return EXIT_WEIGHTS, f"error: invalid weights {text.strip()!r}: {exc}", {"error": str(exc)}
    try:
        return compute(args, m)
    except NotSmooth as exc:
        return EXIT_WALL, f"error: {exc}", {"error": str(exc), "wall": list(exc.wall_subset)}
    except (DegreeError, ParseError, ValueError, PolyspaceError) as exc:
        return EXIT_ARGS, f"error: {exc}", {"error": str(exc)}
    except AssertionError as exc:
        return EXIT_FAULT, f"internal error: {exc}", {"error": str(exc)}


def _job(payload):
    args, text = payload
    return _run_one(args, text)


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_ARGS
    if args.weights is None and args.file is None:
        print("usage error: one of --m or --file is required", file=stderr)
        return EXIT_ARGS

    if args.file is not None:
        try:
            with open(args.file) as fh:
                lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        except OSError as exc:
            print(f"usage error: {exc}", file=stderr)
            return EXIT_ARGS
    else:
        lines = [args.weights]

    if args.threads > 1 and len(lines) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_job, [(args, ln) for ln in lines]))
    else:
        results = [_run_one(args, ln) for ln in lines]

    code = EXIT_OK
    for (rc, text, payload), line in zip(results, lines):
        if len(lines) > 1 and not args.json:
            print(f"# m = {line}", file=stdout)
        if args.json:
            print(json.dumps(payload, sort_keys=True, separators=(",", ":")), file=stdout if rc == EXIT_OK else stderr)
        else:
            print(text, file=stdout if rc == EXIT_OK else stderr)
        code = max(code, rc)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
