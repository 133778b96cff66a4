"""Independent reference computations used only by the tests."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import sympy


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _sign(perm) -> int:
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def brute_charpoly(adj) -> list[int]:
    """det(tI - A) by the Leibniz expansion; coefficients low to high."""
    n = len(adj)
    entry = [[[-adj[i][j], 1] if i == j else [-adj[i][j]] for j in range(n)] for i in range(n)]
    total = [0]
    for perm in permutations(range(n)):
        term = [_sign(perm)]
        for i in range(n):
            term = _pmul(term, entry[i][perm[i]])
        total = _padd(total, term)
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return total


def isolated_moduli(coeffs_low_to_high, eps=Fraction(1, 10**7)):
    """Exact isolating boxes for every root (sympy), reduced to modulus intervals."""
    t = sympy.Symbol("t")
    p = sympy.Poly(list(reversed(coeffs_low_to_high)), t)
    out = []
    for (lo, hi), mult in p.intervals(eps=eps):
        lo, hi = Fraction(str(lo)), Fraction(str(hi))
        m = (min(abs(lo), abs(hi)) if lo * hi > 0 else Fraction(0), max(abs(lo), abs(hi)))
        out += [m] * mult
    for (a, b), mult in p.intervals(all=True, eps=eps)[1]:
        a, b = sympy.sympify(a), sympy.sympify(b)
        xs = [Fraction(str(sympy.re(a))), Fraction(str(sympy.re(b)))]
        ys = [Fraction(str(sympy.im(a))), Fraction(str(sympy.im(b)))]
        near_x = Fraction(0) if xs[0] <= 0 <= xs[1] else min(map(abs, xs))
        near_y = Fraction(0) if ys[0] <= 0 <= ys[1] else min(map(abs, ys))
        far2 = max(map(abs, xs)) ** 2 + max(map(abs, ys)) ** 2
        near2 = near_x**2 + near_y**2
        out += [(near2, far2, True)] * mult
    return out


def house_interval(coeffs_low_to_high):
    """(lo, hi) floats bracketing the largest root modulus, from exact isolation."""
    best_lo, best_hi = 0.0, 0.0
    for item in isolated_moduli(coeffs_low_to_high):
        if len(item) == 3:
            lo, hi = float(item[0]) ** 0.5, float(item[1]) ** 0.5
        else:
            lo, hi = float(item[0]), float(item[1])
        best_lo, best_hi = max(best_lo, lo), max(best_hi, hi)
    return best_lo, best_hi


def power_iteration(adj, iters=5000) -> float:
    import numpy as np

    A = np.array(adj, dtype=float)
    n = len(adj)
    B = (A + np.eye(n)) / 2
    v = np.ones(n)
    lam = 0.0
    for _ in range(iters):
        w = B @ v
        lam = w.max()
        v = w / lam
    return 2 * lam - 1
