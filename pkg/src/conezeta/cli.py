"""Command-line surface: exact, deterministic, golden-file friendly.

Every command prints reduced rationals (``p/q``, integers without
``/1``); exit code 0 on success, 1 with a one-line diagnostic on error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .cones import (ConeParseError, NonUnimodularError, exp_integral,
                    exp_sum, faces, format_cone, parse_cone, transverse_cone)
from .coalgebra import coproduct_cone
from .laurent import em_power_sum
from .mero import decompose
from .special import bernoulli_number, format_rational, zeta_nonpositive
from .zeta import (mzv, mzv_table, stuffle_check_depth2,
                   stuffle_residual_depth3)


def _cmd_bernoulli(args) -> int:
    for n in range(args.max + 1):
        print(f"{n}\t{format_rational(bernoulli_number(n))}")
    return 0


def _cmd_zeta(args) -> int:
    print(format_rational(zeta_nonpositive(args.neg)))
    return 0


def _cmd_em_sum(args) -> int:
    value = em_power_sum(args.power, args.upper)
    if args.check:
        brute = sum((Fraction(n) ** args.power for n in range(args.upper + 1)),
                    Fraction(0))
        verdict = "MATCH" if value == brute else "MISMATCH"
        print(f"{format_rational(value)} {verdict}")
        return 0 if verdict == "MATCH" else 1
    print(format_rational(value))
    return 0


def _cmd_mzv(args) -> int:
    try:
        exponents = tuple(int(p) for p in args.args.split(","))
    except ValueError:
        raise SystemExit("error: --args must be comma-separated integers")
    if not 1 <= len(exponents) <= 3 or any(a < 0 for a in exponents):
        raise SystemExit("error: depth must be 1..3 with non-negative args")
    print(format_rational(mzv(exponents, star=args.star, path=args.path)))
    return 0


def _render_table(rows, a_max: int, star: bool, fmt: str) -> str:
    cells = [[format_rational(x) for x in row] for row in rows]
    if fmt == "tsv":
        return "\n".join("\t".join(row) for row in cells) + "\n"
    name = "zeta*" if star else "zeta"
    header = [f"{name}(-a1,-a2)"] + [f"a1={c}" for c in range(1, a_max + 1)]
    lines = ["| " + " | ".join(header) + " |",
             "|" + "---|" * len(header)]
    for r, row in enumerate(cells, start=1):
        lines.append("| " + " | ".join([f"a2={r}"] + row) + " |")
    return "\n".join(lines) + "\n"


def _cmd_table(args) -> int:
    rows = mzv_table(args.depth, args.max, star=args.star)
    sys.stdout.write(_render_table(rows, args.max, args.star, args.format))
    return 0


def _render_germ(germ) -> str:
    holo, polar = decompose(germ)
    lines = [f"holomorphic validity {holo.validity}"]
    for mono, coeff in sorted(holo.terms.items(),
                              key=lambda t: (sum(e for _, e in t[0]), t[0])):
        mono_str = " ".join(f"e{v}^{e}" if e > 1 else f"e{v}" for v, e in mono)
        lines.append(f"  {format_rational(coeff)}"
                     + (f" {mono_str}" if mono_str else ""))
    for term in polar:
        dens = " ".join(
            "(" + "+".join(f"{format_rational(c)}*e{v}"
                           for v, c in sorted(f.coeffs.items())) + ")"
            + (f"^{s}" if s > 1 else "")
            for f, s in term.denominator)
        lines.append(f"polar / {dens}: {len(term.numerator.terms)} terms")
    return "\n".join(lines) + "\n"


def _cmd_cone(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        cone = parse_cone(fh.read())
    action = args.action
    if action == "faces":
        for f in faces(cone):
            if f.is_zero:
                print("{0}")
            else:
                sys.stdout.write(format_cone(f))
            print("--")
    elif action == "transverse":
        idx = ([int(p) - 1 for p in args.face.split(",")]
               if args.face else [])
        t = transverse_cone(cone, idx)
        if t.is_zero:
            print("{0}")
        else:
            sys.stdout.write(format_cone(t))
    elif action == "coproduct":
        for left, right in coproduct_cone(cone):
            lhs = "{0}" if left.is_zero else repr(left)
            rhs = "{0}" if right.is_zero else repr(right)
            print(f"{lhs} (x) {rhs}")
    elif action == "sum":
        germ = exp_sum(cone, open_=args.open, w=args.order)
        sys.stdout.write(_render_germ(germ))
    elif action == "integral":
        sys.stdout.write(_render_germ(exp_integral(cone, args.order)))
    else:
        raise SystemExit(f"error: unknown cone action {action!r}")
    return 0


def _cmd_stuffle(args) -> int:
    n = args.grid
    bad = []
    for a1 in range(n + 1):
        row = []
        for a2 in range(n + 1):
            if args.depth == 2:
                r = stuffle_check_depth2(a1, a2)
            else:
                r = stuffle_residual_depth3(a1, a2, 0)
                if r != 0:
                    bad.append((a1, a2, r))
            row.append(format_rational(r))
        print("\t".join(row))
    for a1, a2, r in bad:
        print(f"nonzero at ({a1},{a2},0): {format_rational(r)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conezeta",
        description="Exact renormalized conical zeta values on lattice cones")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bernoulli", help="print Bernoulli numbers")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(fn=_cmd_bernoulli)

    p = sub.add_parser("zeta", help="zeta at a non-positive integer")
    p.add_argument("--neg", type=int, required=True)
    p.set_defaults(fn=_cmd_zeta)

    p = sub.add_parser("em-sum", help="closed-form power sum")
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--upper", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(fn=_cmd_em_sum)

    p = sub.add_parser("mzv", help="multiple zeta value at non-positive args")
    p.add_argument("--args", required=True)
    p.add_argument("--star", action="store_true")
    p.add_argument("--path", choices=("direct", "birkhoff"), default="direct")
    p.set_defaults(fn=_cmd_mzv)

    p = sub.add_parser("table", help="double zeta value table")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--max", type=int, default=6)
    p.add_argument("--star", action="store_true")
    p.add_argument("--format", choices=("tsv", "markdown"), default="tsv")
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("cone", help="cone-file operations")
    p.add_argument("file")
    p.add_argument("action", choices=("faces", "transverse", "coproduct",
                                      "sum", "integral"))
    p.add_argument("--face", default="")
    p.add_argument("--open", action="store_true")
    p.add_argument("--closed", dest="open", action="store_false")
    p.add_argument("--order", type=int, default=8)
    p.set_defaults(fn=_cmd_cone)

    p = sub.add_parser("stuffle", help="stuffle residual grids")
    p.add_argument("--depth", type=int, choices=(2, 3), required=True)
    p.add_argument("--grid", type=int, default=3)
    p.set_defaults(fn=_cmd_stuffle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConeParseError, NonUnimodularError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
