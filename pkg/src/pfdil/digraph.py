"""Directed multigraphs given by non-negative integer adjacency matrices.

``adj[i][j]`` counts the edges from vertex i to vertex j.  The module covers
the Perron-Frobenius test (strong connectivity plus aperiodicity), exact
characteristic polynomials, certified spectral radii, complexity, and two
explicit families: the minimum-dilatation digraphs with charpoly t^n - t - 1
and the digraphs G_n with charpoly LT_{1,n}.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .errors import DomainError
from .intpoly import IntLaurentPoly, from_coeffs
from .rootloc import DEFAULT_TOL, Indeterminate, RootEnclosure, house

__all__ = [
    "Digraph",
    "is_perron_frobenius",
    "charpoly",
    "charpoly_coeffs",
    "spectral_radius",
    "complexity",
    "ham_song_check",
    "min_dilatation_digraph",
    "lt_digraph",
    "lt_permutation",
    "lt_matrix",
    "power_iteration",
]

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Digraph:
    adj: Matrix

    def __init__(self, adj: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in adj)
        n = len(rows)
        if n < 1:
            raise DomainError("a digraph needs at least one vertex")
        if any(len(r) != n for r in rows):
            raise DomainError("adjacency matrix must be square")
        if any(x < 0 for r in rows for x in r):
            raise DomainError("edge multiplicities must be non-negative")
        object.__setattr__(self, "adj", rows)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return sum(map(sum, self.adj))

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(self.n))
        for i, row in enumerate(self.adj):
            for j, m in enumerate(row):
                for _ in range(m):
                    g.add_edge(i, j)
        return g

    def to_json(self) -> dict:
        return {"n": self.n, "adj": [list(r) for r in self.adj]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Digraph":
        if isinstance(data, str):
            data = json.loads(data)
        d = cls(data["adj"])
        if "n" in data and data["n"] != d.n:
            raise DomainError(f"n={data['n']} does not match a {d.n}x{d.n} matrix")
        return d


def is_perron_frobenius(d: Digraph) -> bool:
    """Strongly connected and aperiodic (gcd of cycle lengths equal to 1)."""
    g = d.to_networkx()
    if not any(d.adj[i][j] for i in range(d.n) for j in range(d.n)):
        return False
    return nx.is_strongly_connected(g) and nx.is_aperiodic(g)


def charpoly_coeffs(adj: Sequence[Sequence[int]]) -> list[int]:
    """det(tI - A), coefficients from t^n down to t^0 (Berkowitz, division free)."""
    A = [list(r) for r in adj]
    n = len(A)
    if n == 0:
        return [1]
    p = [1, -A[0][0]]
    for k in range(1, n):
        row = A[k][:k]
        col = [A[i][k] for i in range(k)]
        q = [1, -A[k][k]]
        v = col
        for _ in range(k):
            q.append(-sum(r * x for r, x in zip(row, v)))
            v = [sum(A[i][j] * v[j] for j in range(k)) for i in range(k)]
        new = []
        for i in range(k + 2):
            s = 0
            for j in range(max(0, i - len(q) + 1), min(i, k) + 1):
                s += q[i - j] * p[j]
            new.append(s)
        p = new
    return p


def charpoly(d: Digraph | Sequence[Sequence[int]], var: str = "t") -> IntLaurentPoly:
    adj = d.adj if isinstance(d, Digraph) else d
    return from_coeffs(reversed(charpoly_coeffs(adj)), var)


def spectral_radius(d: Digraph, tol: float = DEFAULT_TOL) -> RootEnclosure:
    """Certified Perron-Frobenius eigenvalue, i.e. the house of the charpoly."""
    if not is_perron_frobenius(d):
        raise DomainError("spectral_radius needs a Perron-Frobenius digraph")
    return house(charpoly(d), tol)


def complexity(d: Digraph) -> int:
    """Number of edges minus number of vertices."""
    return d.edge_count - d.n


def ham_song_check(d: Digraph, tol: float = DEFAULT_TOL):
    """Certify c <= lambda^(2n) - 1; Indeterminate when the enclosure straddles the bound."""
    lam = spectral_radius(d, tol)
    c = complexity(d)
    bound = lam.power(2 * d.n)
    if c <= bound.lo - 1:
        return True
    if c > bound.hi - 1:
        return False
    return Indeterminate


def min_dilatation_digraph(n: int) -> Digraph:
    """Cycle 1 -> 2 -> ... -> n -> 1 plus an extra edge n -> 2; charpoly t^n - t - 1."""
    if n < 2:
        raise DomainError("min_dilatation_digraph needs n >= 2")
    adj = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        adj[i][i + 1] += 1
    adj[n - 1][0] += 1
    adj[n - 1][1] += 1
    return Digraph(adj)


def lt_permutation(n: int) -> list[int]:
    """The relabelling p with (P w)_i = w_{p(i)} closing the LT circuit.

    Two cycles: 0 -> 3 -> 4 -> ... -> n -> 0 of length n - 1 and
    1 -> n+1 -> n+2 -> ... -> 2n-1 -> 2 -> 1 of length n + 1.
    """
    if n < 2:
        raise DomainError("lt_permutation needs n >= 2")
    p = [0] * (2 * n)
    cyc_a = [0] + list(range(3, n + 1))
    cyc_b = [1] + list(range(n + 1, 2 * n)) + [2]
    for cyc in (cyc_a, cyc_b):
        for i, x in enumerate(cyc):
            p[x] = cyc[(i + 1) % len(cyc)]
    return p


def lt_matrix(n: int) -> list[list[int]]:
    """P * (I + E_{2,1}) * (I + E_{0,1}) * (I + E_{2,0}) on 2n real edges.

    Edge 0, 1, 2 play the roles of a, b, c: fold a into c, b into a, then
    b into c, and finally relabel by ``lt_permutation``.
    """
    m = 2 * n
    F = [[int(i == j) for j in range(m)] for i in range(m)]
    for tgt, src in ((2, 0), (0, 1), (2, 1)):
        # left multiplication by I + E[tgt, src]: row tgt += row src
        F[tgt] = [x + y for x, y in zip(F[tgt], F[src])]
    p = lt_permutation(n)
    return [list(F[p[i]]) for i in range(m)]


def lt_digraph(n: int) -> Digraph:
    """The digraph G_n of the folding circuit on the track of genus about n; charpoly LT_{1,n}."""
    if n < 2:
        raise DomainError("lt_digraph needs n >= 2")
    return Digraph(lt_matrix(n))


def power_iteration(d: Digraph, iters: int = 2000) -> float:
    """Floating estimate of the Perron eigenvalue, used only for cross-checks."""
    n = d.n
    v = [1.0] * n
    lam = 0.0
    for _ in range(iters):
        # average with the identity to kill periodic oscillation, then undo
        w = [0.5 * (v[i] + sum(d.adj[i][j] * v[j] for j in range(n))) for i in range(n)]
        s = max(w)
        lam = 2 * s - 1
        v = [x / s for x in w]
    return lam

