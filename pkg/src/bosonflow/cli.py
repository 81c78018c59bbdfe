"""Command-line front end.

Subcommands parse boson words, vector fields and operators, run the
pipelines, and emit matrices and coefficient grids as JSON, CSV or
aligned text.  Rationals always serialize as "p/q" strings (integers
when the denominator is 1); JSON keys are sorted so identical
invocations produce byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 I/O error.
"""

import argparse
import csv
import io
import json
import os
import sys

from . import boson, flows, riordan, triangular, verify
from .errors import BosonflowError
from .scalar import format_rational, parse_rational
from .series import Convention, TruncSeries

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

OUTPUT_DIR_ENV = "BOSONFLOW_OUTPUT_DIR"


# -- output plumbing --------------------------------------------------


def _resolve_output(path):
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write(text, path):
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_dump(payload):
    return json.dumps(payload, sort_keys=True, indent=2)


def _csv_dump(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _pretty_table(rows):
    """Right-align a ragged table of strings."""
    width = max((len(c) for row in rows for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in rows)


def _read_matrix(path):
    if path == "-":
        data = json.load(sys.stdin)
    else:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    return triangular.matrix_from_json(data)


def _convention(name):
    return Convention(name.lower())


def _series_arg(text, conv, order):
    coeffs = [parse_rational(c.strip()) for c in text.split(",")]
    return TruncSeries.from_display(conv, coeffs, order=order)


def _grid_output(fmt, rows_of_fractions, meta):
    """Common emitter for coefficient grids indexed by (n, k)."""
    table = [[format_rational(c) for c in row] for row in rows_of_fractions]
    if fmt == "json":
        payload = dict(meta)
        payload["coefficients"] = table
        return _json_dump(payload)
    if fmt == "csv":
        width = max(len(row) for row in table)
        header = ["n"] + [str(k) for k in range(width)]
        rows = [[str(n)] + row + [""] * (width - len(row)) for n, row in enumerate(table)]
        return _csv_dump(header, rows)
    return _pretty_table(table)


# -- subcommands ------------------------------------------------------


def _cmd_normal_order(args):
    word = boson.BosonWord.parse(args.word)
    nf = boson.normalize_power(word, args.power)
    terms = sorted(nf.terms.items())
    if args.format == "json":
        payload = {
            "word": args.word,
            "power": args.power,
            "terms": [
                {"creations": i, "annihilations": j, "coeff": format_rational(c)}
                for (i, j), c in terms
            ],
        }
        text = _json_dump(payload)
    elif args.format == "csv":
        text = _csv_dump(
            ["creations", "annihilations", "coeff"],
            [[i, j, format_rational(c)] for (i, j), c in terms],
        )
    else:
        parts = []
        for (i, j), c in terms:
            body = []
            if i:
                body.append("(a+)^%d" % i if i > 1 else "a+")
            if j:
                body.append("a^%d" % j if j > 1 else "a")
            if not body:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(" ".join(body))
            else:
                parts.append(f"{format_rational(c)} " + " ".join(body))
        text = " + ".join(parts) if parts else "0"
    _write(text, args.output)
    return EXIT_OK


def _cmd_stirling(args):
    word = boson.BosonWord.parse(args.word)
    sm = boson.stirling_matrix(word, args.n)
    meta = {"word": args.word, "excess": sm.excess, "n_max": args.n}
    text = _grid_output(args.format, sm.rows, meta)
    _write(text, args.output)
    return EXIT_OK


def _cmd_riordan_build(args):
    conv = _convention(args.convention)
    g = _series_arg(args.g, conv, args.n)
    phi = _series_arg(args.phi, conv, args.n)
    m = riordan.riordan_matrix(riordan.RiordanPair(g, phi), args.n)
    if args.format == "json":
        text = _json_dump(triangular.matrix_to_json(m))
    else:
        rows = [[m.entry(n, k) for k in range(n + 1)] for n in range(m.size)]
        text = _grid_output(args.format, rows, {})
    _write(text, args.output)
    return EXIT_OK


def _cmd_riordan_recover(args):
    m = _read_matrix(args.matrix)
    pair = riordan.recover_pair(m, _convention(args.convention))
    if args.format == "json":
        text = _json_dump(riordan.pair_to_json(pair))
    elif args.format == "csv":
        text = _csv_dump(
            ["series"] + [str(n) for n in range(pair.order + 1)],
            [
                ["g"] + [format_rational(c) for c in pair.g.coeffs],
                ["phi"] + [format_rational(c) for c in pair.phi.coeffs],
            ],
        )
    else:
        text = "g:   %s\nphi: %s\norder: %d (%s)" % (
            ", ".join(format_rational(c) for c in pair.g.coeffs),
            ", ".join(format_rational(c) for c in pair.phi.coeffs),
            pair.order,
            pair.convention.value.upper(),
        )
    _write(text, args.output)
    return EXIT_OK


def _cmd_sheffer_check(args):
    m = _read_matrix(args.matrix)
    result = riordan.is_sheffer(m, _convention(args.convention))
    if args.format == "json":
        payload = {
            "ok": result.ok,
            "witness": list(result.witness) if result.witness else None,
            "pair": riordan.pair_to_json(result.pair) if result.pair else None,
        }
        text = _json_dump(payload)
    else:
        if result.ok:
            text = "PASS: the matrix satisfies the column law"
        elif result.witness:
            k, n = result.witness
            text = f"FAIL: column law breaks at column {k}, row {n}"
        else:
            text = "FAIL: no candidate pair (column 0 or 1 degenerate)"
    _write(text, args.output)
    return EXIT_OK if result.ok else EXIT_VERIFY


def _cmd_flow(args):
    n_x, n_lam = args.orders
    v = flows.parse_field(args.field, n_x + n_lam)
    flow = flows.formal_flow(v, (n_x, n_lam))
    rows = [[flow.coeff(n, k) for k in range(n_lam + 1)] for n in range(n_x + 1)]
    meta = {"field": args.field, "orders": [n_x, n_lam]}
    text = _grid_output(args.format, rows, meta)
    _write(text, args.output)
    return EXIT_OK


def _cmd_group_action(args):
    n_x, n_lam = args.orders
    op = flows.parse_operator(args.op)
    if not op.is_single_word:
        raise BosonflowError("group-action needs a single-word operator")
    f = TruncSeries.monomial(Convention.OGF, n_x + n_lam, args.monomial)
    result = flows.group_action(op, f, (n_x, n_lam))
    rows = [[result.coeff(n, k) for k in range(n_lam + 1)] for n in range(n_x + 1)]
    meta = {"operator": args.op, "monomial": args.monomial, "orders": [n_x, n_lam]}
    text = _grid_output(args.format, rows, meta)
    _write(text, args.output)
    return EXIT_OK


def _cmd_correspond(args):
    op = flows.parse_operator(args.op)
    triangle, pair, report = flows.characteristic_correspondence(
        op, args.n, lam_order=args.lam_order, mono_max=args.mono_max
    )
    if args.format == "json":
        payload = {
            "operator": args.op,
            "ok": report.ok,
            "sheffer_ok": report.sheffer_ok,
            "detail": report.detail,
            "pair": riordan.pair_to_json(pair) if pair is not None else None,
            "triangle": [[format_rational(c) for c in row] for row in triangle.rows],
        }
        text = _json_dump(payload)
    else:
        lines = []
        if pair is not None:
            lines.append("g:   " + ", ".join(format_rational(c) for c in pair.g.coeffs))
            lines.append("phi: " + ", ".join(format_rational(c) for c in pair.phi.coeffs))
        lines.append("PASS" if report.ok else "FAIL" + (f": {report.detail}" if report.detail else ""))
        text = "\n".join(lines)
    _write(text, args.output)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _cmd_verify(args):
    lines = []
    ok = verify.run_all(out=lines.append)
    _write("\n".join(lines), args.output)
    return EXIT_OK if ok else EXIT_VERIFY


# -- parser -----------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bosonflow",
        description="exact boson normal ordering and substitution groups",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
        p.add_argument("--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("normal-order", help="normal form of a word power")
    p.add_argument("--word", required=True)
    p.add_argument("--power", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_normal_order)

    p = sub.add_parser("stirling", help="generalized Stirling triangle of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int, default=8)
    common(p)
    p.set_defaults(func=_cmd_stirling)

    p = sub.add_parser("riordan-build", help="matrix of a pair (g, phi)")
    p.add_argument("--g", required=True, help="comma-separated displayed coefficients")
    p.add_argument("--phi", required=True, help="comma-separated displayed coefficients")
    p.add_argument("--convention", choices=("OGF", "EGF", "DEGF"), default="EGF")
    p.add_argument("--n", type=int, default=8)
    common(p)
    p.set_defaults(func=_cmd_riordan_build)

    p = sub.add_parser("riordan-recover", help="pair (g, phi) of a matrix")
    p.add_argument("--matrix", required=True, help="matrix JSON file, or - for stdin")
    p.add_argument("--convention", choices=("OGF", "EGF", "DEGF"), default="EGF")
    common(p)
    p.set_defaults(func=_cmd_riordan_recover)

    p = sub.add_parser("sheffer-check", help="full column-law test for a matrix")
    p.add_argument("--matrix", required=True, help="matrix JSON file, or - for stdin")
    p.add_argument("--convention", choices=("OGF", "EGF", "DEGF"), default="EGF")
    common(p)
    p.set_defaults(func=_cmd_sheffer_check)

    p = sub.add_parser("flow", help="integrate ds/dlam = v(s), s_0 = x")
    p.add_argument("--field", required=True, help="polynomial field, e.g. 'x^2' or '1 + x^2'")
    p.add_argument("--orders", type=int, nargs=2, required=True, metavar=("N_X", "N_LAM"))
    common(p)
    p.set_defaults(func=_cmd_flow)

    p = sub.add_parser("group-action", help="e^{lam Omega}[x^m] coefficient grid")
    p.add_argument("--op", required=True)
    p.add_argument("--monomial", type=int, default=1, metavar="M")
    p.add_argument("--orders", type=int, nargs=2, default=(8, 6), metavar=("N_X", "N_LAM"))
    common(p)
    p.set_defaults(func=_cmd_group_action)

    p = sub.add_parser("correspond", help="triangle vs group action, both ways")
    p.add_argument("--op", required=True)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--lam-order", type=int, default=6)
    p.add_argument("--mono-max", type=int, default=6)
    common(p)
    p.set_defaults(func=_cmd_correspond)

    p = sub.add_parser("verify", help="run the acceptance suite")
    common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        parser.error("--n must be positive")
    if getattr(args, "power", 1) < 1:
        parser.error("--power must be positive")
    orders = getattr(args, "orders", None)
    if orders is not None and min(orders) < 1:
        parser.error("--orders must be positive")
    args.output = _resolve_output(args.output)
    try:
        return args.func(args)
    except BosonflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
