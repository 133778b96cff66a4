"""Certified enclosures for root moduli: house, Mahler measure, Perron tests.

Floating point is only used to *guess* where roots are.  Every interval
that leaves this module is justified by one of two exact arguments over the
rationals:

* a sign change of p between two rational points of the real axis, which
  certifies a real root in between, and
* an exact root count in the disk |z| < r (Schur-Cohn recursion in Marden's
  counting form, run on integer coefficients of p(r z)).

Together these pin the house of p from both sides.  The Mahler measure is
enclosed by certifying annuli around clusters of equal-modulus roots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2
import numpy as np

from .errors import DomainError
from .intpoly import IntLaurentPoly

__all__ = [
    "RootEnclosure",
    "Indeterminate",
    "DEFAULT_TOL",
    "cauchy_bound",
    "house",
    "mahler_measure",
    "is_perron_poly",
    "count_roots_in_disk",
    "positive_real_roots_may_exist",
]

DEFAULT_TOL = 1e-10
GOLDEN = (1 + math.sqrt(5)) / 2


class _IndeterminateType:
    """Third truth value: the answer could not be certified.

    It refuses to be used as a bool so that an uncertified answer can never
    silently pass for ``False``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise TypeError("Indeterminate has no truth value; compare with `is` instead")

    def __repr__(self):
        return "Indeterminate"

    def __reduce__(self):
        return (_IndeterminateType, ())


Indeterminate = _IndeterminateType()


@dataclass(frozen=True)
class RootEnclosure:
    """A certified interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction
    tol: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __float__(self):
        return self.mid

    def contains(self, x, slack: float = 0.0) -> bool:
        x = Fraction(x)
        s = Fraction(slack)
        return self.lo - s <= x <= self.hi + s

    def power(self, k: int) -> "RootEnclosure":
        """Enclosure of value**k for a non-negative value; exact, hence trivially outward."""
        if k < 0:
            raise DomainError("negative powers are not supported")
        if self.lo < 0:
            raise DomainError("power() expects a non-negative enclosure")
        lo, hi = self.lo**k, self.hi**k
        return RootEnclosure(lo, hi, max(self.tol, float(hi - lo)))

    def rounded(self, digits: int = 12) -> tuple[str, str]:
        """Decimal strings with lo rounded down and hi rounded up."""
        scale = 10**digits
        lo = math.floor(self.lo * scale)
        hi = math.ceil(self.hi * scale)
        return _dec(lo, digits), _dec(hi, digits)

    def to_json(self, digits: int = 12) -> dict:
        lo, hi = self.rounded(digits)
        return {"lo": lo, "hi": hi, "tol": repr(self.tol)}

    def __str__(self):
        lo, hi = self.rounded(12)
        return f"[{lo}, {hi}]"


def _dec(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


# exact primitives


def _int_coeffs(p: IntLaurentPoly) -> list[int]:
    """Coefficients low to high with monomial content stripped; degree must be >= 1."""
    if not isinstance(p, IntLaurentPoly):
        raise TypeError("expected an IntLaurentPoly")
    if p.is_zero():
        raise DomainError("the zero polynomial has no roots to locate")
    c = p.coeffs()
    if len(c) < 2:
        raise DomainError(f"{p} is a unit times a monomial; it has no non-zero roots")
    return c


def _sign(c: Sequence[int], x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    d = len(c) - 1
    acc = 0
    for k in range(d, -1, -1):
        acc = acc * num + c[k] * den ** (d - k)
    return (acc > 0) - (acc < 0)


def _scaled(c: Sequence[int], r: Fraction) -> list[int]:
    """Integer coefficients of den^d * p((num/den) z)."""
    num, den = r.numerator, r.denominator
    d = len(c) - 1
    return [a * num**k * den ** (d - k) for k, a in enumerate(c)]


def _unit_disk_count(a: list[int]) -> int | None:
    """Number of roots strictly inside |z| < 1, or None if the recursion degenerates.

    Marden's form of the Schur-Cohn test: f_{j+1} = a_0 f_j - a_m f_j^*,
    delta_{j+1} = a_0^2 - a_m^2.  When every partial product of deltas is
    non-zero there are no roots on the circle, and the number inside equals
    the number of negative partial products.  Dividing by positive content
    preserves every sign, which keeps coefficient growth in check.
    """
    f = [gmpy2.mpz(x) for x in a]
    inside = 0
    sign = 1
    while len(f) > 1:
        a0, am = f[0], f[-1]
        delta = a0 * a0 - am * am
        if delta == 0:
            return None
        sign *= 1 if delta > 0 else -1
        if sign < 0:
            inside += 1
        m = len(f) - 1
        g = [a0 * f[k] - am * f[m - k] for k in range(m)]
        content = gmpy2.mpz(0)
        for x in g:
            content = gmpy2.gcd(content, x)
            if content == 1:
                break
        if content == 0:
            return None
        if content > 1:
            g = [x // content for x in g]
        f = g
    return inside


def count_roots_in_disk(p: IntLaurentPoly | Sequence[int], r) -> int | None:
    """Exact number of roots (with multiplicity) of p in the open disk |z| < r.

    ``r`` must be a positive rational.  Returns None when r happens to be a
    degenerate radius (for instance a root lies on |z| = r); callers then
    nudge r.  Zero roots from monomial content are ignored.
    """
    c = _int_coeffs(p) if isinstance(p, IntLaurentPoly) else list(p)
    r = Fraction(r)
    if r <= 0:
        raise DomainError("radius must be positive")
    return _unit_disk_count(_scaled(c, r))


def _all_inside(c: Sequence[int], r: Fraction) -> bool:
    """Certified: every root satisfies |z| < r."""
    return _unit_disk_count(_scaled(c, r)) == len(c) - 1


def positive_real_roots_may_exist(p: IntLaurentPoly | Sequence[int], lo, hi) -> bool:
    """Descartes' rule on (lo, hi) after the Mobius map x -> (lo + hi x)/(1 + x).

    False certifies that p has no root in the open interval (lo, hi).
    """
    c = _int_coeffs(p) if isinstance(p, IntLaurentPoly) else list(p)
    lo, hi = Fraction(lo), Fraction(hi)
    den = lo.denominator * hi.denominator
    A, B = int(lo * den), int(hi * den)
    d = len(c) - 1
    # sum c_k (A + B x)^k (den (1 + x))^(d - k), all exact integers
    out = [0] * (d + 1)
    for k, ck in enumerate(c):
        if not ck:
            continue
        poly = [ck]
        for _ in range(k):
            poly = _mul_lin(poly, A, B)
        for _ in range(d - k):
            poly = _mul_lin(poly, den, den)
        for i, v in enumerate(poly):
            out[i] += v
    signs = [v > 0 for v in out if v]
    changes = sum(1 for x, y in zip(signs, signs[1:]) if x != y)
    return changes > 0


def _mul_lin(poly: list[int], a: int, b: int) -> list[int]:
    out = [0] * (len(poly) + 1)
    for i, v in enumerate(poly):
        out[i] += a * v
        out[i + 1] += b * v
    return out


def _numeric_roots(c: Sequence[int]) -> np.ndarray:
    top = max(abs(x) for x in c)
    return np.roots([x / top for x in reversed(c)])


def _rat(x: float) -> Fraction:
    return Fraction(x).limit_denominator(1 << 60) if x else Fraction(0)


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational in [lo, hi] with small denominator (keeps exact tests cheap)."""
    if lo == hi:
        return lo
    mid = (lo + hi) / 2
    den = 1
    while True:
        cand = Fraction(round(mid * den), den)
        if lo <= cand <= hi:
            return cand
        den *= 2


def _check_tol(tol):
    if not (tol > 0):
        raise DomainError(f"tolerance must be positive, got {tol}")


# public operations


def cauchy_bound(p: IntLaurentPoly) -> float:
    """1 + max |a_i| / |a_d|; every root satisfies |z| < this value."""
    c = _int_coeffs(p)
    lead = abs(c[-1])
    return 1 + max(abs(x) for x in c[:-1]) / lead


def _cauchy_exact(c: Sequence[int]) -> Fraction:
    return 1 + Fraction(max(abs(x) for x in c[:-1]), abs(c[-1]))


def _perron_annulus(c: list[int], roots: np.ndarray):
    """Certify an annulus a <= |z| < b holding exactly one root, which is positive real.

    Returns (a, b) with N(b) = d, N(a) = d - 1 and a sign change of p on
    [a, b], or None when the numerical picture does not suggest a Perron
    root or the certificate fails.  Radii are chosen with small denominators
    so the two exact counts stay cheap.
    """
    d = len(c) - 1
    mods = np.abs(roots)
    k = int(mods.argmax())
    top = float(mods[k])
    z = roots[k]
    if not (z.real > 0 and abs(z.imag) <= 1e-9 * max(top, 1.0)):
        return None
    rest = np.delete(mods, k)
    second = float(rest.max()) if rest.size else 0.0
    gap = top - second
    if gap <= 1e-9 * top:
        return None
    lo_a, hi_a = _rat(second + gap / 3), _rat(top - gap / 3)
    lo_b, hi_b = _rat(top + min(gap, top) / 4), _rat(top + min(gap, top) / 2)
    if lo_a <= 0:
        return None
    b, nb = _count_between(c, lo_b, hi_b)
    if nb != d:
        return None
    a, na = _count_between(c, lo_a, hi_a)
    if na != d - 1:
        return None
    if _sign(c, a) * _sign(c, b) >= 0:
        return None
    return a, b


def _count_between(c: list[int], lo: Fraction, hi: Fraction, tries: int = 8):
    """Pick a cheap radius in [lo, hi] where the exact disk count is non-degenerate."""
    r = _simplest_between(lo, hi)
    for i in range(tries):
        n = count_roots_in_disk(c, r)
        if n is not None and _sign(c, r) != 0:
            return r, n
        r = lo + (hi - lo) * Fraction(i + 1, tries + 1)
    return r, None


def _bisect_real(c: list[int], a: Fraction, b: Fraction, tol: float) -> RootEnclosure:
    """Shrink a sign-change bracket of p to width <= tol with exact evaluations."""
    sa = _sign(c, a)
    t = Fraction(tol)
    while b - a > t:
        m = _simplest_between(a + (b - a) / 3, b - (b - a) / 3)
        sm = _sign(c, m)
        if sm == 0:
            return RootEnclosure(m, m, tol)
        if sm == sa:
            a = m
        else:
            b = m
    return RootEnclosure(a, b, tol)


def _house_modulus_search(c: list[int], guess: float | None, tol: float) -> RootEnclosure:
    """Bisection on the radius r with the certified predicate 'all roots in |z| < r'."""
    lo, hi = Fraction(0), _cauchy_exact(c)
    if guess is not None and guess > 0:
        g = _rat(guess)
        for rel in (Fraction(1, 10**9), Fraction(1, 10**6), Fraction(1, 10**3)):
            cand_hi = g * (1 + rel)
            cand_lo = g * (1 - rel)
            if cand_hi < hi and _all_inside(c, cand_hi):
                hi = cand_hi
                if not _all_inside(c, cand_lo):
                    lo = max(lo, cand_lo)
                break
    if not _all_inside(c, hi):
        raise AssertionError("Cauchy bound failed to contain all roots")
    t = Fraction(tol)
    while hi - lo > t:
        m = _simplest_between(lo + (hi - lo) / 3, hi - (hi - lo) / 3)
        if _all_inside(c, m):
            hi = m
        else:
            lo = m
    return RootEnclosure(lo, hi, tol)


def house(p: IntLaurentPoly, tol: float = DEFAULT_TOL) -> RootEnclosure:
    """Certified enclosure of max |z| over the roots of p, of width at most ``tol``.

    Perron candidates go through an annulus certificate followed by exact
    bisection on the real axis; everything else falls back to bisection on
    the radius with exact disk counts.
    """
    _check_tol(tol)
    c = _int_coeffs(p)
    roots = _numeric_roots(c)
    ann = _perron_annulus(c, roots)
    if ann is not None:
        return _bisect_real(c, ann[0], ann[1], tol)
    return _house_modulus_search(c, float(np.abs(roots).max()), tol)


def _cluster(mods: list[float], rel: float) -> list[list[float]]:
    groups: list[list[float]] = []
    for m in sorted(mods):
        if groups and m - groups[-1][-1] <= rel * max(m, 1e-300):
            groups[-1].append(m)
        else:
            groups.append([m])
    return groups


def _certified_annuli(c: list[int], eps: float):
    """Certified annuli (r1, r2, count) covering every root of modulus > 1 - margin."""
    d = len(c) - 1
    mods = [float(x) for x in np.abs(_numeric_roots(c))]
    groups = _cluster(mods, 1e-6)
    out = []
    prev_hi = Fraction(0)
    prev_count = 0
    for grp in groups:
        lo_m, hi_m = min(grp), max(grp)
        r1 = _rat(lo_m * (1 - eps))
        r2 = _rat(hi_m * (1 + eps))
        if r1 < prev_hi:
            return None
        n1 = count_roots_in_disk(c, r1) if r1 > 0 else 0
        n2 = count_roots_in_disk(c, r2)
        if n1 is None or n2 is None or n1 != prev_count or n2 - n1 != len(grp):
            return None
        out.append((r1, r2, len(grp)))
        prev_hi, prev_count = r2, n2
    if prev_count != d:
        return None
    return out


def mahler_measure(p: IntLaurentPoly, tol: float = DEFAULT_TOL) -> RootEnclosure:
    """Certified enclosure of |a_d| * prod max(1, |z|) over the roots of p."""
    _check_tol(tol)
    c = _int_coeffs(p)
    d = len(c) - 1
    lead = abs(c[-1])
    eps = min(1e-3, tol / (8 * d))
    for _ in range(12):
        ann = _certified_annuli(c, eps)
        if ann is not None:
            lo, hi = Fraction(lead), Fraction(lead)
            for r1, r2, k in ann:
                lo *= max(Fraction(1), r1) ** k
                hi *= max(Fraction(1), r2) ** k
            if hi - lo <= Fraction(tol):
                return RootEnclosure(lo, hi, tol)
            eps /= 16
        else:
            eps *= 4
            if eps > 0.25:
                break
    # Slow but always valid fallback: M(p) <= lead * prod over annuli from a radius grid.
    return _mahler_by_counting(c, tol)


def _mahler_by_counting(c: list[int], tol: float) -> RootEnclosure:
    """Enclose M(p) from exact counts on a geometric grid of radii >= 1, refined until tight."""
    d = len(c) - 1
    lead = abs(c[-1])
    B = _cauchy_exact(c)
    steps = 64
    while True:
        q = 1 + Fraction(1, steps)
        radii = [Fraction(1)]
        while radii[-1] < B:
            radii.append(radii[-1] * q)
        radii[-1] = B
        counts = []
        for i, r in enumerate(radii):
            n = count_roots_in_disk(c, r)
            while n is None:
                # a root sits on this circle; a slightly larger radius is still a valid grid point
                r += Fraction(1, steps * 1024)
                n = count_roots_in_disk(c, r)
            radii[i] = r
            counts.append(n)
        lo, hi = Fraction(lead), Fraction(lead)
        for i in range(1, len(radii)):
            k = counts[i] - counts[i - 1]
            lo *= radii[i - 1] ** k
            hi *= radii[i] ** k
        if hi - lo <= Fraction(tol) or steps > 1 << 20:
            return RootEnclosure(lo, hi, max(tol, float(hi - lo)))
        steps *= 4


def is_perron_poly(p: IntLaurentPoly, tol: float = DEFAULT_TOL):
    """True, False, or Indeterminate.

    True certifies a simple positive real root lambda > 1 with every other
    root in a smaller disk, the separating annulus being found by exact
    counting.  False is returned only on a certificate: the house is at most
    1, or no positive real root lies in the house enclosure.  Anything else,
    including roots whose moduli are closer than ``tol``, is Indeterminate.
    """
    _check_tol(tol)
    c = _int_coeffs(p)
    roots = _numeric_roots(c)
    ann = _perron_annulus(c, roots)
    if ann is not None and ann[1] - ann[0] > 0:
        a, b = ann
        enc = _bisect_real(c, a, b, tol)
        if enc.lo > 1:
            return True
        if enc.hi <= 1:
            return False
    h = house(p, tol)
    if h.hi <= 1:
        return False
    lo, hi = h.lo, h.hi
    if lo > 0 and _sign(c, lo) != 0 and _sign(c, hi) != 0:
        if not positive_real_roots_may_exist(c, lo, hi):
            return False
    return Indeterminate
