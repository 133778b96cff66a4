"""The fibered face of the magic manifold and its Dehn fillings M_s.

Classes on the face are integer triples (x, y, z); classes on the filled
manifold are pairs (a, b) with 0 <= a < b.  Dilatations are houses of
specializations of the Teichmueller polynomial, returned as certified
enclosures, and every derived quantity (powers, gaps, table comparisons) is
computed from those enclosures rather than from floats.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import DivisionError, DomainError
from .intpoly import IntLaurentPoly, format_poly, lt_polynomial, named_polynomial, parse, specialize
from .rootloc import DEFAULT_TOL, RootEnclosure, house

__all__ = [
    "CohomologyClass",
    "MonodromyInvariants",
    "MAGIC_POLYNOMIAL",
    "magic_cone_contains",
    "magic_specialization",
    "magic_dilatation",
    "theta_s",
    "alexander_s",
    "orientable_criterion",
    "punctures_and_genus",
    "normalized_dilatation",
    "dehn_filled_specialization",
    "dehn_filled_expansion",
    "invariants",
    "golden_power",
    "ConvergenceRow",
    "convergence_report",
    "pn_convergence",
    "monotone",
    "TableRow",
    "reference_values",
    "table_smalldil",
    "table_mindil",
    "rows_to_csv",
    "rows_to_json",
]

MAGIC_POLYNOMIAL = parse("x*y*z^-1 - x - y - x*z^-1 - y*z^-1 + 1", ("x", "y", "z"))
TABLE_TOL = 1e-4


@dataclass(frozen=True)
class CohomologyClass:
    coords: tuple[int, ...]

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        coords = tuple(int(c) for c in coords)
        if len(coords) not in (2, 3):
            raise DomainError("a class is a triple (x, y, z) or a pair (a, b)")
        if not any(coords):
            raise DomainError("the zero class has no monodromy")
        object.__setattr__(self, "coords", coords)

    @property
    def is_primitive(self) -> bool:
        return math.gcd(*self.coords) == 1


def _triple(c) -> tuple[int, int, int]:
    coords = c.coords if isinstance(c, CohomologyClass) else tuple(int(v) for v in c)
    if len(coords) != 3:
        raise DomainError(f"expected a triple (x, y, z), got {coords}")
    return coords


def magic_cone_contains(c) -> bool:
    """x + y - z > max(x, y, x - z, y - z, 0), strictly."""
    x, y, z = _triple(c)
    return x + y - z > max(x, y, x - z, y - z, 0)


def magic_specialization(c) -> IntLaurentPoly:
    """P(t^x, t^y, t^z) for the magic Teichmueller polynomial P."""
    return specialize(MAGIC_POLYNOMIAL, _triple(c))


def magic_dilatation(c, tol: float = DEFAULT_TOL) -> RootEnclosure:
    x, y, z = _triple(c)
    if not magic_cone_contains((x, y, z)):
        raise DomainError(f"({x},{y},{z}) is not in the fibered cone: need x+y-z > max(x, y, x-z, y-z, 0)")
    return _house_cached(magic_specialization((x, y, z)), tol)


def _check_ab(a: int, b: int) -> None:
    if not (0 <= a < b):
        raise DomainError(f"({a},{b}) is outside the cone: need 0 <= a < b")


def theta_s(a: int, b: int) -> IntLaurentPoly:
    """Teichmueller polynomial of M_s at (a, b); this is LT_{a,b}."""
    _check_ab(a, b)
    return lt_polynomial(a, b)


def alexander_s(a: int, b: int) -> IntLaurentPoly:
    """t^(2b) - t^(b+a) + t^b - t^(b-a) + 1."""
    _check_ab(a, b)
    terms: dict = {}
    for e, c in ((2 * b, 1), (b + a, -1), (b, 1), (b - a, -1), (0, 1)):
        terms[(e,)] = terms.get((e,), 0) + c
    return IntLaurentPoly(("t",), terms)


def orientable_criterion(a: int, b: int) -> bool:
    return b % 2 == 0 and a % 2 == 1


def punctures_and_genus(a: int, b: int) -> tuple[int, int]:
    """Number of punctures s = gcd(a, 3b) + gcd(3a, b) and genus g = 1 + b - s/2.

    For a = 1 this gives s = 2, or 4 when 3 divides b.  Other values of a use
    the same boundary counts and are best-effort.
    """
    _check_ab(a, b)
    if math.gcd(a, b) != 1:
        raise DomainError(f"({a},{b}) is not primitive: gcd(a, b) = {math.gcd(a, b)}")
    s = math.gcd(a, 3 * b) + math.gcd(3 * a, b)
    return s, 1 + b - s // 2


def normalized_dilatation(lam: RootEnclosure, chi: int) -> RootEnclosure:
    """lambda^|chi| as an enclosure."""
    return lam.power(abs(chi))


def dehn_filled_specialization(a: int, b: int) -> IntLaurentPoly:
    """The magic polynomial at x = b, y = 2(b + a), z = a.

    The result factors as (t^(b+a) + 1) * LT_{a,b}.
    """
    _check_ab(a, b)
    return magic_specialization((b, 2 * (b + a), a))


def dehn_filled_expansion(a: int, b: int) -> IntLaurentPoly:
    """t^(3b+a) - t^(2b+2a) - t^(2b+a) - t^b - t^(b-a) + 1, written out term by term."""
    _check_ab(a, b)
    terms: dict = {}
    for e, c in ((3 * b + a, 1), (2 * b + 2 * a, -1), (2 * b + a, -1), (b, -1), (b - a, -1), (0, 1)):
        terms[(e,)] = terms.get((e,), 0) + c
    return IntLaurentPoly(("t",), terms)


@lru_cache(maxsize=512)
def _house_cached(p: IntLaurentPoly, tol: float) -> RootEnclosure:
    return house(p, tol)


@dataclass(frozen=True)
class MonodromyInvariants:
    dilatation: RootEnclosure
    genus: int
    punctures: int
    orientable: bool
    normalized: RootEnclosure
    genus_normalized: RootEnclosure

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    def to_json(self) -> dict:
        return {
            "dilatation": self.dilatation.to_json(),
            "genus": self.genus,
            "punctures": self.punctures,
            "orientable": self.orientable,
            "euler_characteristic": self.euler_characteristic,
            "normalized": self.normalized.to_json(),
            "genus_normalized": self.genus_normalized.to_json(),
        }


def invariants(a: int, b: int, tol: float = DEFAULT_TOL) -> MonodromyInvariants:
    s, g = punctures_and_genus(a, b)
    lam = _house_cached(theta_s(a, b), tol)
    chi = 2 - 2 * g - s
    return MonodromyInvariants(
        dilatation=lam,
        genus=g,
        punctures=s,
        orientable=orientable_criterion(a, b),
        normalized=normalized_dilatation(lam, chi),
        genus_normalized=lam.power(g),
    )


def _sqrt5(digits: int = 40) -> tuple[Fraction, Fraction]:
    scale = 10**digits
    r = math.isqrt(5 * scale * scale)
    return Fraction(r, scale), Fraction(r + 1, scale)


def golden_power(k: int) -> tuple[Fraction, Fraction]:
    """Rational bounds on gamma_0^k for k in {2, 4}, the golden mean gamma_0."""
    lo5, hi5 = _sqrt5()
    if k == 2:
        return (3 + lo5) / 2, (3 + hi5) / 2
    if k == 4:
        return (7 + 3 * lo5) / 2, (7 + 3 * hi5) / 2
    raise DomainError("golden_power supports k = 2 and k = 4")


def _gap(e: RootEnclosure, target: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    """Bounds on |x - y| for x in e and y in target."""
    lo = max(e.lo - target[1], target[0] - e.hi, Fraction(0))
    hi = max(e.hi - target[0], target[1] - e.lo)
    return lo, hi


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    lam: RootEnclosure
    lam_n: RootEnclosure
    lam_2n: RootEnclosure
    gap_lo: Fraction
    gap_hi: Fraction
    decreasing: bool | None

    def to_json(self, digits: int = 10) -> dict:
        return {
            "n": self.n,
            "lambda": self.lam.to_json(digits),
            "lambda^n": self.lam_n.to_json(digits),
            "lambda^2n": self.lam_2n.to_json(digits),
            "gap": [f"{float(self.gap_lo):.{digits}f}", f"{float(self.gap_hi):.{digits}f}"],
            "decreasing": self.decreasing,
        }


def _series(polys, target: tuple[Fraction, Fraction], doubled: bool, tol: float) -> list[ConvergenceRow]:
    rows: list[ConvergenceRow] = []
    prev = None
    for n, p in polys:
        lam = _house_cached(p, tol)
        ln = lam.power(n)
        l2n = lam.power(2 * n)
        gap = _gap(l2n if doubled else ln, target)
        # certified only when the enclosures are disjoint
        dec = None if prev is None else ln.hi < prev.lo
        rows.append(ConvergenceRow(n, lam, ln, l2n, gap[0], gap[1], dec))
        prev = ln
    return rows


def convergence_report(n_max: int, tol: float = DEFAULT_TOL) -> list[ConvergenceRow]:
    """lambda_n = |LT_{1,n}| with lambda_n^n, lambda_n^(2n) and the gap |lambda_n^(2n) - gamma_0^4|."""
    if n_max < 2:
        raise DomainError("convergence_report needs n_max >= 2")
    return _series(((n, lt_polynomial(1, n)) for n in range(2, n_max + 1)), golden_power(4), True, tol)


def pn_convergence(n_max: int, tol: float = DEFAULT_TOL) -> list[ConvergenceRow]:
    """|p_n| for p_n = t^n - t - 1, with the gap |p_n|^n - 2."""
    if n_max < 2:
        raise DomainError("pn_convergence needs n_max >= 2")
    return _series(((n, named_polynomial("pn", n)) for n in range(2, n_max + 1)), (Fraction(2), Fraction(2)), False, tol)


def monotone(rows: list[ConvergenceRow]) -> bool:
    return all(r.decreasing for r in rows[1:])


# --- table regeneration ---------------------------------------------------

@dataclass
class TableRow:
    table: str
    g: int
    column: str
    label: str
    params: tuple[int, ...]
    reference: float
    dilatation: RootEnclosure
    polynomial: str
    cite: str
    diagnostics: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "mismatch" if self.diagnostics else "ok"

    def to_json(self, digits: int = 8) -> dict:
        lo, hi = self.dilatation.rounded(digits)
        p = self.params
        return {
            "table": self.table,
            "g": self.g,
            "column": self.column,
            "label": self.label,
            "a": p[0] if len(p) == 2 else None,
            "b": p[1] if len(p) == 2 else None,
            "x": p[0] if len(p) == 3 else None,
            "y": p[1] if len(p) == 3 else None,
            "z": p[2] if len(p) == 3 else None,
            "dilatation_lo": lo,
            "dilatation_hi": hi,
            "reference": f"{self.reference:.5f}",
            "status": self.status,
            "polynomial": self.polynomial,
            "cite": self.cite,
            "diagnostics": list(self.diagnostics),
        }


def reference_values() -> dict:
    text = resources.files("pfdil").joinpath("data/reference_values.json").read_text()
    return json.loads(text)


def _params_poly(params) -> IntLaurentPoly:
    if len(params) == 2:
        return theta_s(*params)
    if not magic_cone_contains(params):
        raise DomainError(f"{tuple(params)} is not in the fibered cone")
    return magic_specialization(params)


def _compare(row: TableRow, tol: float) -> TableRow:
    if not row.dilatation.contains(row.reference, slack=tol):
        row.diagnostics.append(
            f"g={row.g} {row.column} {row.label}: regenerated {row.dilatation} differs from {row.reference} by more than {tol}"
        )
    return row


def table_smalldil(tol: float = DEFAULT_TOL, match_tol: float = TABLE_TOL) -> list[TableRow]:
    """Both columns (orientable, unconstrained) for g = 2..12."""
    rows = []
    for entry in reference_values()["smalldil"]["rows"]:
        for column in ("orientable", "unconstrained"):
            spec = entry[column]
            if spec == "same":
                spec = entry["orientable"]
            params = tuple(spec["params"])
            p = _params_poly(params)
            row = TableRow(
                "smalldil", entry["g"], column, spec["label"], params, spec["value"],
                _house_cached(p, tol), format_poly(p), entry["cite"],
            )
            rows.append(_compare(row, match_tol))
    return rows


def table_mindil(tol: float = DEFAULT_TOL, match_tol: float = TABLE_TOL) -> list[TableRow]:
    """Minimum dilatations with their polynomials; factorizations are checked by exact division.

    Rows listed as irreducible are checked to have no sigma = t^2 - t + 1 factor.
    """
    data = reference_values()["mindil"]
    sigma = parse(data["sigma"])
    rows = []
    for entry in data["rows"]:
        p = parse(entry["polynomial"])
        row = TableRow(
            "mindil", entry["g"], "minimum", entry["polynomial"], (), entry["value"],
            _house_cached(p, tol), format_poly(p), entry["cite"],
        )
        if entry["factor"] is None:
            try:
                p.exact_div(sigma)
                row.diagnostics.append(f"g={row.g}: sigma divides a polynomial listed as irreducible")
            except DivisionError:
                pass
        else:
            cyc = parse(entry["cyclotomic"])
            try:
                ok = p.exact_div(cyc) == parse(entry["factor"])
            except DivisionError:
                ok = False
            if not ok:
                row.diagnostics.append(f"g={row.g}: {entry['polynomial']} != ({entry['cyclotomic']}) * ({entry['factor']})")
        rows.append(_compare(row, match_tol))
    return rows


CSV_COLUMNS = [
    "table", "g", "column", "label", "a", "b", "x", "y", "z",
    "dilatation_lo", "dilatation_hi", "reference", "status", "polynomial",
]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    dicts = [r.to_json() for r in rows]
    cols = CSV_COLUMNS if rows and isinstance(rows[0], TableRow) else list(_flat(dicts[0]).keys()) if dicts else []
    w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for d in dicts:
        w.writerow(_flat(d))
    return buf.getvalue()


def _flat(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, dict) and "lo" in v:
            out[f"{k}_lo"], out[f"{k}_hi"] = v["lo"], v["hi"]
        elif isinstance(v, list) and k == "gap":
            out["gap_lo"], out["gap_hi"] = v
        elif v is None:
            out[k] = ""
        else:
            out[k] = v
    return out


def rows_to_json(rows) -> list[dict]:
    return [r.to_json() for r in rows]
