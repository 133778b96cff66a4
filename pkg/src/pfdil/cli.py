"""Command-line interface.

Every subcommand builds a CommandResult; ``--json`` prints it inside a
{"command", "status", "result"} envelope, otherwise a short text rendering is
printed.  Exit codes: 0 ok, 2 mismatch against reference values, 1 error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import digraph as dg
from . import fiberedface as ff
from . import traintrack as tt
from .errors import CircuitError, DivisionError, DomainError, FoldError, PolySyntaxError
from .intpoly import format_poly, lt_polynomial, parse
from .rootloc import DEFAULT_TOL, house, mahler_measure

EXIT = {"ok": 0, "mismatch": 2, "error": 1}


@dataclass
class CommandResult:
    status: str
    payload: object
    diagnostics: list[str] = field(default_factory=list)
    text: str = ""
    csv: str | None = None

    def __post_init__(self):
        if self.status not in EXIT:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "ok" and self.diagnostics:
            raise ValueError("an ok result carries no diagnostics")

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def envelope(self, command: str) -> dict:
        out = {"command": command, "status": self.status, "result": self.payload}
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _digits(tol: float) -> int:
    return max(1, math.ceil(-math.log10(tol)))


def _tol(text: str) -> float:
    x = float(text)
    if not 0 < x < 1:
        raise argparse.ArgumentTypeError("tol must lie in (0, 1)")
    return x


def _matrix_text(m) -> str:
    width = max(len(str(x)) for r in m for x in r)
    return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in m)


# --- commands -------------------------------------------------------------

def cmd_house(args, measure=house, name="house") -> CommandResult:
    p = parse(args.poly)
    enc = measure(p, args.tol)
    d = _digits(args.tol)
    lo, hi = enc.rounded(d)
    payload = {"polynomial": format_poly(p), name: enc.to_json(d)}
    return CommandResult("ok", payload, text=f"{name}({format_poly(p)}) in [{lo}, {hi}]")


def cmd_mahler(args) -> CommandResult:
    return cmd_house(args, mahler_measure, "mahler")


def cmd_lt(args) -> CommandResult:
    p = lt_polynomial(args.a, args.b)
    d = _digits(args.tol)
    payload = {"a": args.a, "b": args.b, "polynomial": format_poly(p)}
    if math.gcd(args.a, args.b) == 1:
        inv = ff.invariants(args.a, args.b, args.tol)
        payload["invariants"] = inv.to_json()
        lam = inv.dilatation
        extra = f"genus {inv.genus}, punctures {inv.punctures}, orientable {inv.orientable}"
    else:
        lam = house(p, args.tol)
        payload["invariants"] = None
        extra = "class is not primitive; no monodromy invariants"
    payload["dilatation"] = lam.to_json(d)
    lo, hi = lam.rounded(d)
    text = f"LT_{{{args.a},{args.b}}} = {format_poly(p)}\ndilatation in [{lo}, {hi}]\n{extra}"
    return CommandResult("ok", payload, text=text)


def cmd_magic(args) -> CommandResult:
    c = (args.x, args.y, args.z)
    lam = ff.magic_dilatation(c, args.tol)
    p = ff.magic_specialization(c)
    d = _digits(args.tol)
    lo, hi = lam.rounded(d)
    payload = {"class": list(c), "polynomial": format_poly(p), "dilatation": lam.to_json(d)}
    return CommandResult("ok", payload, text=f"P{c} = {format_poly(p)}\ndilatation in [{lo}, {hi}]")


def cmd_digraph(args) -> CommandResult:
    g = dg.min_dilatation_digraph(args.n) if args.family == "mindil" else dg.lt_digraph(args.n)
    payload = {"family": args.family, **g.to_json(), "perron_frobenius": dg.is_perron_frobenius(g)}
    lines = [_matrix_text(g.adj)]
    if args.charpoly:
        payload["charpoly"] = format_poly(dg.charpoly(g))
        lines.append(f"charpoly: {payload['charpoly']}")
    if args.spectral:
        d = _digits(args.tol)
        lam = dg.spectral_radius(g, args.tol)
        payload["spectral_radius"] = lam.to_json(d)
        lo, hi = lam.rounded(d)
        lines.append(f"spectral radius in [{lo}, {hi}]")
    return CommandResult("ok", payload, text="\n".join(lines))


def cmd_track(args) -> CommandResult:
    t = tt.family_traintrack(args.n)
    everything = not (args.genus or args.orientable or args.boundary or args.weights)
    payload: dict = {"n": args.n}
    lines = []
    if everything or args.genus:
        payload["genus"] = tt.genus_closed(t)
        lines.append(f"genus: {payload['genus']}")
    if everything or args.orientable:
        payload["orientable"] = tt.is_orientable(t)
        lines.append(f"orientable: {payload['orientable']}")
    if everything or args.boundary:
        payload["boundary_cusps"] = [k for _, k in tt.boundary_components(t)]
        lines.append(f"boundary cusps: {payload['boundary_cusps']}")
    if everything or args.weights:
        w = tt.weight_space(t)
        payload["weight_dim"] = w.dim
        payload["real_weight_dim"] = w.real_dim
        payload["weight_basis"] = list(w.basis_edges)
        lines.append(f"weight space: dim {w.dim} ({w.real_dim} on real edges), free edges {' '.join(w.basis_edges)}")
    if args.full:
        payload["track"] = t.to_json()
    return CommandResult("ok", payload, text="\n".join(lines))


def cmd_circuit(args) -> CommandResult:
    c = tt.family_circuit(args.n)
    m, g = tt.circuit_transition_matrix(c)
    everything = not (args.matrix or args.charpoly)
    payload: dict = {"n": args.n, "moves": [mv.to_json() for mv in c.moves]}
    lines = []
    if everything or args.matrix:
        payload["matrix"] = m
        lines.append(_matrix_text(m))
    if everything or args.charpoly:
        payload["charpoly"] = format_poly(dg.charpoly(g))
        lines.append(f"charpoly: {payload['charpoly']}")
    return CommandResult("ok", payload, text="\n".join(lines))


def cmd_table(args) -> CommandResult:
    rows = ff.table_smalldil(args.tol) if args.name == "smalldil" else ff.table_mindil(args.tol)
    diags = [d for r in rows for d in r.diagnostics]
    lines = []
    for r in rows:
        lo, hi = r.dilatation.rounded(8)
        lines.append(f"g={r.g:<3d} {r.column:<13s} {r.label:<34s} [{lo}, {hi}]  ref {r.reference:.5f}  {r.status}")
    return CommandResult(
        "mismatch" if diags else "ok",
        ff.rows_to_json(rows),
        diags,
        text="\n".join(lines),
        csv=ff.rows_to_csv(rows),
    )


def cmd_converge(args) -> CommandResult:
    rows = ff.pn_convergence(args.max, args.tol) if args.pn else ff.convergence_report(args.max, args.tol)
    mono = ff.monotone(rows)
    payload = {
        "family": "pn" if args.pn else "lt",
        "monotone": mono,
        "rows": ff.rows_to_json(rows),
    }
    diags = [] if mono else ["lambda_n^n is not certified to decrease strictly"]
    lines = [f"{'n':>3s}  {'lambda':>14s}  {'lambda^n':>14s}  {'lambda^2n':>14s}  gap"]
    for r in rows:
        gap = float(r.gap_hi)
        lines.append(f"{r.n:>3d}  {r.lam.mid:14.10f}  {r.lam_n.mid:14.10f}  {r.lam_2n.mid:14.10f}  {gap:.10f}")
    lines.append(f"monotone: {mono}")
    return CommandResult("mismatch" if diags else "ok", payload, diags, text="\n".join(lines), csv=ff.rows_to_csv(rows))


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON envelope")
    common.add_argument("--tol", type=_tol, default=DEFAULT_TOL, help="enclosure width (default 1e-10)")

    p = _Parser(prog="pfdil", description="Certified dilatation computations.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    for name, fn, what in (("house", cmd_house, "house"), ("mahler", cmd_mahler, "Mahler measure")):
        s = sub.add_parser(name, parents=[common], help=f"certified {what} of a polynomial in t")
        s.add_argument("poly")
        s.set_defaults(func=fn)

    s = sub.add_parser("lt", parents=[common], help="LT_{a,b} and its monodromy invariants")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.set_defaults(func=cmd_lt)

    s = sub.add_parser("magic", parents=[common], help="dilatation of a class (x, y, z) on the magic fibered face")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--y", type=int, required=True)
    s.add_argument("--z", type=int, required=True)
    s.set_defaults(func=cmd_magic)

    s = sub.add_parser("digraph", parents=[common], help="explicit digraph families")
    s.add_argument("family", choices=["mindil", "lt"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--charpoly", action="store_true")
    s.add_argument("--spectral", action="store_true")
    s.set_defaults(func=cmd_digraph)

    s = sub.add_parser("track", parents=[common], help="the train track family tau_n")
    s.add_argument("family", choices=["family"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--genus", action="store_true")
    s.add_argument("--orientable", action="store_true")
    s.add_argument("--boundary", action="store_true")
    s.add_argument("--weights", action="store_true")
    s.add_argument("--full", action="store_true", help="include the serialized track")
    s.set_defaults(func=cmd_track)

    s = sub.add_parser("circuit", parents=[common], help="the folding circuit on tau_n")
    s.add_argument("family", choices=["family"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--matrix", action="store_true")
    s.add_argument("--charpoly", action="store_true")
    s.set_defaults(func=cmd_circuit)

    s = sub.add_parser("table", parents=[common], help="regenerate a reference table")
    s.add_argument("name", choices=["smalldil", "mindil"])
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("converge", parents=[common], help="lambda_n^n and lambda_n^(2n) for LT_{1,n}")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--pn", action="store_true", help="use p_n = t^n - t - 1 instead")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_converge)
    return p


_EXPECTED = (DomainError, DivisionError, PolySyntaxError, FoldError, CircuitError)


def run(argv: Sequence[str]) -> tuple[CommandResult, str, dict]:
    """Parse and execute; returns the result, the command name and the output flags."""
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return CommandResult("error", None, [str(exc)]), "", {}
    flags = {"json": args.json, "csv": getattr(args, "csv", False)}
    try:
        return args.func(args), args.command, flags
    except _EXPECTED as exc:
        return CommandResult("error", None, [f"{type(exc).__name__}: {exc}"]), args.command, flags


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0
    try:
        res, command, flags = run(argv)
    except SystemExit as exc:
        # --help on a subcommand
        return int(exc.code or 0)
    if flags.get("json"):
        print(json.dumps(res.envelope(command), indent=2))
    elif flags.get("csv") and res.csv is not None:
        sys.stdout.write(res.csv)
    elif res.status != "error":
        print(res.text)
    for d in res.diagnostics:
        print(("error: " if res.status == "error" else "mismatch: ") + d, file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
