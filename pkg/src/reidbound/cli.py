"""Command-line front end.

Every subcommand builds a list of flat records; ``--json`` prints them as
JSON lines, otherwise they are rendered as an aligned table.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .basket import cartier_index, chi_of, enumerate_baskets, format_basket, parse_basket
from .certify import MODES, birational_from, case_analysis, rho0_bound
from .rational import fmt_q, parse_q
from .reid import FREE, Fixed, Numerics, h0_margin, parse_residues, table_a
from .reproduce import run_all
from .wps import cross_check_reid, degree_L3, fit_invariants, hilbert_coeffs, parse_variety


class Output:
    def __init__(self, stream, as_json: bool):
        self.stream = stream
        self.as_json = as_json

    def records(self, rows: list[dict], columns: Optional[Sequence[str]] = None) -> None:
        if self.as_json:
            for row in rows:
                self.stream.write(json.dumps({k: _plain(v) for k, v in row.items()}, ensure_ascii=False) + "\n")
            return
        if not rows:
            return
        cols = list(columns or rows[0].keys())
        cells = [[_cell(row.get(c, "")) for c in cols] for row in rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        self.line("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        for r in cells:
            self.line("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())

    def line(self, text: str = "") -> None:
        # free-form lines only make sense in text mode
        if not self.as_json:
            self.stream.write(text + "\n")


def _plain(v):
    if isinstance(v, Fraction):
        return fmt_q(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


def _cell(v) -> str:
    v = _plain(v)
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return " ".join(f"{k}:{_cell(x)}" for k, x in v.items())
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# -- subcommands -----------------------------------------------------------------

def cmd_table_a(args, out: Output) -> int:
    rows = [{"point": f"({b},{r})", "c_Q": vals} for (b, r), vals in table_a().items()]
    out.records(rows)
    return 0


def cmd_chi(args, out: Output) -> int:
    basket = parse_basket(args.basket)
    out.records([{"basket": format_basket(basket), "chi": chi_of(basket), "iX": cartier_index(basket)}])
    return 0


def cmd_baskets(args, out: Output) -> int:
    found = enumerate_baskets(args.chi, args.index)
    rows = [{"n": i + 1, "basket": format_basket(b), "chi": chi_of(b), "iX": cartier_index(b)}
            for i, b in enumerate(found)]
    out.records(rows)
    out.line(f"{len(found)} basket(s)")
    return 0


def cmd_h0(args, out: Output) -> int:
    basket = parse_basket(args.basket)
    if args.residues is None:
        residues = [FREE] * len(basket)
    else:
        residues = parse_residues(args.residues, basket)
    n = Numerics(basket, parse_q(args.L3), parse_q(args.lam),
                 chi=None if args.chi is None else parse_q(args.chi))
    exact = all(isinstance(x, Fixed) for x in residues)
    value = h0_margin(basket, args.m, residues, chi=n.chi, mode=args.mode).at(n.L3, n.lam)
    out.records([{
        "basket": format_basket(basket),
        "m": args.m,
        "residues": ",".join(str(x) for x in residues),
        "L3": n.L3,
        "lambda": n.lam,
        "h0": value,
        "exact": exact,
    }])
    return 0


def cmd_rho0(args, out: Output) -> int:
    out.records([{"iX": args.index, "rho0": rho0_bound(args.index)}])
    return 0


def cmd_bound(args, out: Output) -> int:
    mu0, zeta = parse_q(args.mu0), parse_q(args.zeta)
    if zeta <= 0:
        raise ValueError("zeta must be positive")
    m = birational_from(args.m0, args.m1, mu0, args.rho0, zeta)
    out.records([{"m0": args.m0, "m1": args.m1, "mu0": mu0, "rho0": args.rho0, "zeta": zeta, "birational_from": m}])
    return 0


_CASE_COLUMNS = ("branch", "m0", "m1", "h0_floor", "mu0_upper", "zeta_lb",
                 "combinatorial_threshold", "epsilon_threshold", "final_m")


def cmd_case(args, out: Output) -> int:
    cert = case_analysis(args.index, args.mode)
    out.line(f"i(X) = {cert.iX}, mode {cert.mode}, chi in {list(cert.chis)}, rho0 = {cert.rho0}")
    out.records(cert.to_json_lines(), _CASE_COLUMNS)
    for note in cert.notes:
        out.line(f"note: {note}")
    out.line(f"case_bound {cert.case_bound}")
    return 0


def cmd_verify_paper(args, out: Output) -> int:
    checks = run_all()
    rows = [{"criterion": c.number, "check": label, "paper": paper, "computed": got,
             "status": "pass" if ok else "FAIL"}
            for c in checks for label, paper, got, ok in c.rows]
    out.records(rows)
    out.line()
    for c in checks:
        out.line(f"[{'PASS' if c.passed else 'FAIL'}] {c.number}. {c.name}")
    ok = all(c.passed for c in checks)
    out.line(f"{sum(c.passed for c in checks)}/{len(checks)} criteria pass")
    return 0 if ok else 1


def cmd_wps(args, out: Output) -> int:
    v = parse_variety(args.variety)
    n = fit_invariants(v, check_up_to=1)
    h = hilbert_coeffs(v, args.check)
    agree = cross_check_reid(v, args.check)
    out.line(f"{v}: L^3 = {fmt_q(degree_L3(v))}, lambda = {fmt_q(n.lam)}, "
             f"Reid agrees up to m = {args.check}: {'yes' if agree else 'no'}")
    rows = []
    for m in range(1, args.check + 1):
        reid = n.chi + n.lam_multiple(m)
        rows.append({"m": m, "hilbert": h[m], "reid": reid, "match": reid == h[m]})
    out.records(rows)
    return 0 if agree else 1


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reidbound", description="Orbifold Riemann-Roch and birationality bounds for K = 0 threefolds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="emit JSON lines")
    # accepted after the subcommand too; SUPPRESS keeps it from resetting the global flag
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON lines")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("table-a", parents=[common], help="c_Q for every admissible point type")
    s.set_defaults(func=cmd_table_a)

    s = sub.add_parser("chi", parents=[common], help="chi(O_X) of a basket")
    s.add_argument("basket", help='e.g. "5x(1,2) 4x(1,3) 1x(1,6)"')
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("baskets", parents=[common], help="enumerate baskets")
    s.add_argument("--chi", type=int, required=True)
    s.add_argument("--index", type=int, required=True)
    s.set_defaults(func=cmd_baskets)

    s = sub.add_parser("h0", parents=[common], help="h0(mL) by Riemann-Roch")
    s.add_argument("--basket", required=True)
    s.add_argument("--L3", required=True, help="p/q")
    s.add_argument("--lambda", dest="lam", required=True, help="p/q")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--residues", help="local indices of L, comma separated; * = unknown")
    s.add_argument("--chi", help="defaults to the basket's chi")
    s.add_argument("--mode", choices=MODES, default="sharp", help="worst case for unknown indices")
    s.set_defaults(func=cmd_h0)

    s = sub.add_parser("rho0", parents=[common], help="threshold for h0(mL + T) > 0")
    s.add_argument("--index", type=int, required=True)
    s.set_defaults(func=cmd_rho0)

    s = sub.add_parser("bound", parents=[common], help="birationality threshold from the five inputs")
    s.add_argument("--m0", type=int, required=True)
    s.add_argument("--m1", type=int, required=True)
    s.add_argument("--mu0", required=True)
    s.add_argument("--rho0", type=int, required=True)
    s.add_argument("--zeta", required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("case", parents=[common], help="certificate for one Cartier index")
    s.add_argument("--index", type=int, required=True)
    s.add_argument("--mode", choices=MODES, default="paper")
    s.set_defaults(func=cmd_case)

    s = sub.add_parser("verify-paper", parents=[common], help="run every reproduction check")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("wps", parents=[common], help="Hilbert series vs Riemann-Roch for a weighted CY")
    s.add_argument("variety", help='e.g. "X10 in P(1,1,1,2,5)"')
    s.add_argument("--check", type=int, default=20, metavar="M")
    s.set_defaults(func=cmd_wps)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, Output(stdout, args.json))
    except (ValueError, ArithmeticError) as e:
        stderr.write(f"reidbound {args.command}: error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())
