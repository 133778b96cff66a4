"""Fat train tracks, folds, and folding circuits.

A fat train track is a ribbon graph (half-edges with an involution and a
counterclockwise cyclic order at each vertex) together with a smoothing:
the half-edges at each vertex are split into two gates, each gate occupying
a contiguous arc of the cyclic order.  Adjacent half-edges in the same gate
meet in a cusp; half-edges in different gates meet smoothly.

Weights are column vectors indexed by edges.  A fold of e1 over e2 adds the
weight of e1 to e2, so its matrix is I + E[e2, e1] (row = new edge, column =
old edge).  A circuit multiplies these left to right in move order, i.e.
``M_k ... M_2 M_1``, and applies the final relabelling permutation P last:
``P M_k ... M_1``.  With the n = 2 labels a, b, c, d this order reproduces
[[1,1,0,0],[0,0,0,1],[0,1,0,0],[1,1,1,0]] exactly.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import sympy

from .digraph import Digraph
from .errors import CircuitError, DomainError, FoldError

__all__ = [
    "FatTrainTrack",
    "WeightSpace",
    "FoldMove",
    "FoldingCircuit",
    "boundary_components",
    "genus_closed",
    "is_orientable",
    "weight_space",
    "fold",
    "find_isomorphisms",
    "circuit_transition_matrix",
    "family_traintrack",
    "family_circuit",
    "simplest_braid_track",
    "simplest_braid_matrix",
]

GATE_NAMES = ("A", "B")


class FatTrainTrack:
    """Immutable fat train track.

    Half-edges are the integers ``0 .. 2E-1``.  ``edge[h]`` names the edge a
    half-edge belongs to, ``pair[h]`` is the other half, ``vertex[h]`` its
    vertex, ``cyclic_next[h]`` the next half-edge counterclockwise at that
    vertex, and ``gate[h]`` is 0 or 1.  ``real`` lists the edges that carry
    the weight coordinates of interest; the rest are treated as
    infinitesimal.  With ``strict=False`` the train-track conditions on
    vertex degrees and gates are not enforced, which allows degenerate
    examples such as a single smooth loop.
    """

    __slots__ = ("edge", "pair", "vertex", "cyclic_next", "gate", "real", "edges", "_at")

    def __init__(
        self,
        edge: Sequence[str],
        pair: Sequence[int],
        vertex: Sequence[int],
        cyclic_next: Sequence[int],
        gate: Sequence[int],
        real: Iterable[str] = (),
        edges: Sequence[str] | None = None,
        strict: bool = True,
    ):
        self.edge = tuple(edge)
        self.pair = tuple(pair)
        self.vertex = tuple(vertex)
        self.cyclic_next = tuple(cyclic_next)
        self.gate = tuple(int(g) for g in gate)
        names = list(dict.fromkeys(self.edge))
        if edges is not None:
            if sorted(edges) != sorted(names):
                raise DomainError("edge order does not list exactly the edges of the track")
            names = list(edges)
        self.edges = tuple(names)
        self.real = frozenset(real)
        self._at: dict[int, tuple[int, ...]] = {}
        self._check_structure()
        self._build_rotations()
        if strict:
            self._check_smoothing()

    # validation

    def _check_structure(self):
        H = len(self.edge)
        if not (len(self.pair) == len(self.vertex) == len(self.cyclic_next) == len(self.gate) == H):
            raise DomainError("half-edge tables have different lengths")
        for h in range(H):
            q = self.pair[h]
            if not 0 <= q < H or q == h or self.pair[q] != h:
                raise DomainError(f"pair is not a fixed-point-free involution at half-edge {h}")
            if self.edge[q] != self.edge[h]:
                raise DomainError(f"half-edges {h} and {q} are paired but named differently")
            if self.gate[h] not in (0, 1):
                raise DomainError(f"gate of half-edge {h} must be 0 or 1")
        counts = Counter(self.edge)
        bad = [e for e, k in counts.items() if k != 2]
        if bad:
            raise DomainError(f"edges {bad} do not have exactly two half-edges")
        if sorted(self.cyclic_next) != list(range(H)):
            raise DomainError("cyclic_next is not a permutation")
        unknown = self.real - set(counts)
        if unknown:
            raise DomainError(f"real edges {sorted(unknown)} are not edges of the track")

    def _build_rotations(self):
        seen = set()
        for h0 in range(len(self.edge)):
            if h0 in seen:
                continue
            orbit = [h0]
            seen.add(h0)
            h = self.cyclic_next[h0]
            while h != h0:
                orbit.append(h)
                seen.add(h)
                h = self.cyclic_next[h]
            verts = {self.vertex[x] for x in orbit}
            if len(verts) != 1:
                raise DomainError(f"cyclic order mixes vertices {sorted(verts)}")
            v = verts.pop()
            if v in self._at:
                raise DomainError(f"vertex {v} has more than one cyclic orbit")
            self._at[v] = tuple(orbit)

    def _check_smoothing(self):
        for v, hs in self._at.items():
            if len(hs) < 3:
                raise DomainError(f"vertex {v} has degree {len(hs)} < 3")
            gs = [self.gate[h] for h in hs]
            if len(set(gs)) < 2:
                raise DomainError(f"vertex {v} has an empty gate")
            changes = sum(1 for i in range(len(gs)) if gs[i] != gs[(i + 1) % len(gs)])
            if changes != 2:
                raise DomainError(f"gates at vertex {v} are not contiguous arcs")

    # accessors

    def vertices(self) -> list[int]:
        return sorted(self._at)

    def at(self, v: int) -> tuple[int, ...]:
        """Half-edges at v in counterclockwise order, starting from the smallest id."""
        hs = self._at[v]
        k = hs.index(min(hs))
        return hs[k:] + hs[:k]

    def degree(self, v: int) -> int:
        return len(self._at[v])

    def prev(self, h: int) -> int:
        hs = self._at[self.vertex[h]]
        return hs[hs.index(h) - 1]

    def half_edges(self, e: str) -> tuple[int, int]:
        hs = tuple(h for h in range(len(self.edge)) if self.edge[h] == e)
        if len(hs) != 2:
            raise DomainError(f"unknown edge {e!r}")
        return hs

    def edge_index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def real_edges(self) -> list[str]:
        return [e for e in self.edges if e in self.real]

    def euler_characteristic(self) -> int:
        return len(self._at) - len(self.edges)

    def _replace(self, **kw) -> "FatTrainTrack":
        args = dict(
            edge=self.edge,
            pair=self.pair,
            vertex=self.vertex,
            cyclic_next=self.cyclic_next,
            gate=self.gate,
            real=self.real,
            edges=self.edges,
            strict=True,
        )
        args.update(kw)
        return FatTrainTrack(**args)

    def __eq__(self, other):
        if not isinstance(other, FatTrainTrack):
            return NotImplemented
        return (
            self.edge == other.edge
            and self.pair == other.pair
            and self.vertex == other.vertex
            and self.cyclic_next == other.cyclic_next
            and self.gate == other.gate
            and self.real == other.real
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.edge, self.pair, self.vertex, self.cyclic_next, self.gate))

    def __repr__(self):
        return f"FatTrainTrack(V={len(self._at)}, E={len(self.edges)}, real={len(self.real)})"

    # serialization

    def to_json(self) -> dict:
        H = range(len(self.edge))
        return {
            "half_edges": list(H),
            "edge": {str(h): self.edge[h] for h in H},
            "pair": {str(h): self.pair[h] for h in H},
            "vertex": {str(h): self.vertex[h] for h in H},
            "cyclic_next": {str(h): self.cyclic_next[h] for h in H},
            "gate": {str(h): GATE_NAMES[self.gate[h]] for h in H},
            "edges": list(self.edges),
            "real": sorted(self.real, key=self.edges.index),
        }

    @classmethod
    def from_json(cls, data: Mapping | str, strict: bool = True) -> "FatTrainTrack":
        if isinstance(data, str):
            data = json.loads(data)
        hs = [int(h) for h in data["half_edges"]]
        if sorted(hs) != list(range(len(hs))):
            raise DomainError("half_edges must be 0 .. 2E-1")

        def col(name, conv=int):
            table = data[name]
            return [conv(table[str(h)]) for h in range(len(hs))]

        gate = [GATE_NAMES.index(g) if g in GATE_NAMES else int(g) for g in col("gate", str)]
        edge = col("edge", str) if "edge" in data else [f"e{min(h, int(data['pair'][str(h)]))}" for h in range(len(hs))]
        return cls(
            edge=edge,
            pair=col("pair"),
            vertex=col("vertex"),
            cyclic_next=col("cyclic_next"),
            gate=gate,
            real=data.get("real", ()),
            edges=data.get("edges"),
            strict=strict,
        )


# boundary, genus, orientation


def boundary_components(t: FatTrainTrack) -> list[tuple[tuple[int, ...], int]]:
    """Boundary cycles of the ribbon surface with their cusp counts.

    The boundary walk leaves along h and turns to cyclic_next(pair(h)); the
    corner passed at each turn is a cusp when both half-edges share a gate.
    Components are sorted by cusp count, largest first.
    """
    seen = set()
    out = []
    for h0 in range(len(t.edge)):
        if h0 in seen:
            continue
        walk = []
        cusps = 0
        h = h0
        while h not in seen:
            seen.add(h)
            walk.append(h)
            q = t.pair[h]
            nxt = t.cyclic_next[q]
            if t.gate[q] == t.gate[nxt] and q != nxt:
                cusps += 1
            h = nxt
        out.append((tuple(walk), cusps))
    out.sort(key=lambda x: (-x[1], x[0]))
    return out


def cusp_profile(t: FatTrainTrack) -> list[int]:
    return sorted((k for _, k in boundary_components(t)), reverse=True)


def genus_closed(t: FatTrainTrack) -> int:
    """Genus after capping every boundary component with a disk: chi + b = 2 - 2g."""
    b = len(boundary_components(t))
    chi = t.euler_characteristic()
    if (chi + b) % 2:
        raise AssertionError(f"inconsistent ribbon structure: chi={chi}, b={b} has odd sum")
    return (2 - chi - b) // 2


def is_orientable(t: FatTrainTrack) -> bool:
    """Can the edges be directed so each vertex has one incoming and one outgoing gate?

    A colour col[v] says which gate is incoming at v.  An edge from h (at v)
    to q (at w) is incoming at v iff gate[h] == col[v], and must then be
    outgoing at w, which forces col[w] = 1 ^ gate[h] ^ gate[q] ^ col[v].
    """
    col: dict[int, int] = {}
    for start in t.vertices():
        if start in col:
            continue
        col[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for h in t.at(v):
                q = t.pair[h]
                w = t.vertex[q]
                need = 1 ^ t.gate[h] ^ t.gate[q] ^ col[v]
                if w in col:
                    if col[w] != need:
                        return False
                else:
                    col[w] = need
                    stack.append(w)
    return True


# weights


@dataclass(frozen=True)
class WeightSpace:
    """Solutions of the switch conditions, one row per vertex."""

    edges: tuple[str, ...]
    constraint_matrix: tuple[tuple[int, ...], ...]
    dim: int
    basis_edges: tuple[str, ...]
    real_basis: bool
    real_dim: int = 0
    _solution: tuple = field(repr=False, compare=False, default=())

    def contains(self, w: Mapping[str, object] | Sequence) -> bool:
        vec = [w[e] for e in self.edges] if isinstance(w, Mapping) else list(w)
        return all(sum(a * x for a, x in zip(row, vec)) == 0 for row in self.constraint_matrix)

    def extend(self, values: Mapping[str, object]) -> dict[str, object]:
        """Full weight vector from values on ``basis_edges`` (exact rationals)."""
        missing = [e for e in self.basis_edges if e not in values]
        if missing:
            raise DomainError(f"missing basis values for {missing}")
        out = {}
        for e, expr in zip(self.edges, self._solution):
            out[e] = sum((sympy.Rational(c) * sympy.sympify(values[b]) for b, c in expr), sympy.Integer(0))
        return out

    def integer_basis(self) -> list[list[int]]:
        """An integer basis of the solution space, as vectors over ``edges``."""
        M = sympy.Matrix(self.constraint_matrix) if self.constraint_matrix else sympy.zeros(0, len(self.edges))
        vecs = M.nullspace() if M.rows else [sympy.eye(len(self.edges))[:, i] for i in range(len(self.edges))]
        out = []
        for v in vecs:
            den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v]) if len(v) else 1
            out.append([int(x * den) for x in v])
        return out


def switch_matrix(t: FatTrainTrack) -> list[list[int]]:
    idx = t.edge_index()
    rows = []
    for v in t.vertices():
        r = [0] * len(t.edges)
        for h in t.at(v):
            r[idx[t.edge[h]]] += 1 if t.gate[h] == 0 else -1
        rows.append(r)
    return rows


def weight_space(t: FatTrainTrack) -> WeightSpace:
    """Exact rank computation; free coordinates are chosen among real edges first."""
    rows = switch_matrix(t)
    # infinitesimal columns first so rref pivots land on them and real edges stay free
    order = [e for e in t.edges if e not in t.real] + [e for e in t.edges if e in t.real]
    idx = t.edge_index()
    M = sympy.Matrix([[r[idx[e]] for e in order] for r in rows]) if rows else sympy.zeros(0, len(order))
    R, pivots = M.rref()
    free = [j for j in range(len(order)) if j not in pivots]
    solution = {}
    for j in free:
        solution[order[j]] = ((order[j], 1),)
    for i, pj in enumerate(pivots):
        solution[order[pj]] = tuple((order[j], -R[i, j]) for j in free if R[i, j] != 0)
    basis = tuple(sorted((order[j] for j in free), key=t.edges.index))
    # rank of the projection onto the real coordinates
    col = {order[j]: k for k, j in enumerate(free)}
    proj = sympy.zeros(len(t.real), len(free))
    for i, e in enumerate(e for e in t.edges if e in t.real):
        for b, c in solution[e]:
            proj[i, col[b]] += c
    return WeightSpace(
        edges=t.edges,
        constraint_matrix=tuple(tuple(r) for r in rows),
        dim=len(free),
        basis_edges=basis,
        real_basis=all(e in t.real for e in basis),
        real_dim=proj.rank() if free and t.real else 0,
        _solution=tuple(solution[e] for e in t.edges),
    )


# folding


def _identity(m: int) -> list[list[int]]:
    return [[int(i == j) for j in range(m)] for i in range(m)]


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _cusps_between(t: FatTrainTrack, e1: str, e2: str, at: int | None):
    """Half-edge pairs (h1, h2) of e1, e2 that sit next to each other in one gate."""
    out = []
    verts = [at] if at is not None else t.vertices()
    for v in verts:
        if v not in t._at:
            raise FoldError(f"no vertex {v} in the track")
        for h1 in t.at(v):
            if t.edge[h1] != e1:
                continue
            for h2 in (t.cyclic_next[h1], t.prev(h1)):
                if h2 != h1 and t.edge[h2] == e2 and t.gate[h2] == t.gate[h1]:
                    if (h1, h2) not in out:
                        out.append((h1, h2))
    return out


def _fold_half_edges(t: FatTrainTrack, h1: int, h2: int) -> FatTrainTrack:
    """Fold the edge of h1 over the whole edge of h2.  Returns an unchecked track."""
    v = t.vertex[h1]
    e1, e2 = t.edge[h1], t.edge[h2]
    cusp = f"({e1}, {e2}) at vertex {v}"
    if t.cyclic_next[h2] == h1:
        side = "left"
    elif t.cyclic_next[h1] == h2:
        side = "right"
    else:
        raise FoldError(f"cusp {cusp}: half-edges are not adjacent")
    far = t.pair[h2]
    u = t.vertex[far]
    if far == h1 or t.pair[h1] == h2 or u == v:
        raise FoldError(f"cusp {cusp}: folding along a loop is not supported")
    hs = list(t._at[u])
    i = hs.index(far)
    nb = hs[i - 1] if side == "left" else hs[(i + 1) % len(hs)]
    if t.gate[nb] == t.gate[far]:
        raise FoldError(f"cusp {cusp}: the far end of {e2} has no room on the {side} side")
    nxt = list(t.cyclic_next)
    vert = list(t.vertex)
    gate = list(t.gate)
    p = t.prev(h1)
    nxt[p] = t.cyclic_next[h1]
    vert[h1] = u
    gate[h1] = 1 - t.gate[far]
    if side == "left":
        nxt[nb] = h1
        nxt[h1] = far
    else:
        nxt[far] = h1
        nxt[h1] = nb
    return t._replace(vertex=vert, cyclic_next=nxt, gate=gate, strict=False)


def _infinitesimal_neighbour(t: FatTrainTrack, h1: int) -> int:
    cands = [
        h
        for h in {t.cyclic_next[h1], t.prev(h1)}
        if h != h1 and t.gate[h] == t.gate[h1] and t.edge[h] not in t.real
    ]
    if len(cands) != 1:
        raise FoldError(
            f"edge {t.edge[h1]} at vertex {t.vertex[h1]} has {len(cands)} adjacent infinitesimal edges in its gate"
        )
    return cands[0]


def _locate(t: FatTrainTrack, e1: str, e2: str, at: int | None) -> tuple[int, int]:
    if e1 == e2:
        raise FoldError(f"cannot fold edge {e1} over itself")
    for e in (e1, e2):
        if e not in t.edges:
            raise FoldError(f"unknown edge {e!r}")
    cands = _cusps_between(t, e1, e2, at)
    where = f"vertex {at}" if at is not None else "any vertex"
    if not cands:
        raise FoldError(f"no cusp between {e1} and {e2} at {where}")
    legal = []
    errors = []
    for h1, h2 in cands:
        try:
            _fold_half_edges(t, h1, h2)
            legal.append((h1, h2))
        except FoldError as exc:
            errors.append(str(exc))
    if not legal:
        raise FoldError("; ".join(errors))
    if len(legal) > 1:
        raise FoldError(f"fold of {e1} over {e2} at {where} is ambiguous ({len(legal)} cusps)")
    return legal[0]


def fold(
    t: FatTrainTrack, e1: str, e2: str, at: int | None = None, extend: bool = False
) -> tuple[FatTrainTrack, list[list[int]]]:
    """Fold e1 over e2 at the cusp they share at vertex ``at``.

    With ``extend=True`` the fold continues over the infinitesimal edge that
    e1 meets in a cusp at the far end of e2.  Returns the new track and the
    matrix on edge space (rows are new weights, columns old ones), which is
    I + E[e2, e1], times I + E[e', e1] when extended over e'.
    """
    h1, h2 = _locate(t, e1, e2, at)
    idx = t.edge_index()
    M = _identity(len(t.edges))
    new = _fold_half_edges(t, h1, h2)
    M[idx[e2]][idx[e1]] += 1
    if extend:
        h3 = _infinitesimal_neighbour(new, h1)
        e3 = new.edge[h3]
        new = _fold_half_edges(new, h1, h3)
        M[idx[e3]][idx[e1]] += 1
    try:
        new = new._replace(strict=True)
    except DomainError as exc:
        raise FoldError(f"fold of {e1} over {e2} leaves an invalid track: {exc}") from None
    return new, M


def restrict(M: Sequence[Sequence[int]], t: FatTrainTrack, edges: Sequence[str] | None = None):
    """Sub-matrix of an edge-space matrix on the given edges (real edges by default)."""
    idx = t.edge_index()
    cols = [idx[e] for e in (edges if edges is not None else t.real_edges)]
    return [[M[i][j] for j in cols] for i in cols]


# isomorphisms and circuits


def find_isomorphisms(a: FatTrainTrack, b: FatTrainTrack, limit: int | None = None) -> list[dict[int, int]]:
    """Half-edge bijections a -> b respecting pair, cyclic order, gate classes and real edges.

    Gate names may be swapped independently at each vertex.
    """
    if len(a.edge) != len(b.edge) or len(a.vertices()) != len(b.vertices()):
        return []
    out = []
    a0 = 0
    for b0 in range(len(b.edge)):
        m = {a0: b0}
        used = {b0}
        swap: dict[int, bool] = {}
        stack = [a0]
        ok = True
        while stack and ok:
            x = stack.pop()
            y = m[x]
            if (a.edge[x] in a.real) != (b.edge[y] in b.real):
                ok = False
                break
            s = a.gate[x] != b.gate[y]
            if swap.setdefault(a.vertex[x], s) != s:
                ok = False
                break
            for fx, fy in ((a.pair[x], b.pair[y]), (a.cyclic_next[x], b.cyclic_next[y])):
                if fx in m:
                    if m[fx] != fy:
                        ok = False
                        break
                elif fy in used:
                    ok = False
                    break
                else:
                    m[fx] = fy
                    used.add(fy)
                    stack.append(fx)
        if ok and len(m) == len(a.edge):
            out.append(m)
            if limit is not None and len(out) >= limit:
                break
    return out


def _check_isomorphism(a: FatTrainTrack, b: FatTrainTrack, m: Mapping[int, int]) -> None:
    H = len(a.edge)
    if sorted(m) != list(range(H)) or sorted(m.values()) != list(range(len(b.edge))):
        raise DomainError("relabelling is not a bijection of half-edges")
    swap: dict[int, bool] = {}
    for x, y in m.items():
        if m[a.pair[x]] != b.pair[y] or m[a.cyclic_next[x]] != b.cyclic_next[y]:
            raise DomainError(f"relabelling breaks the ribbon structure at half-edge {x}")
        if (a.edge[x] in a.real) != (b.edge[y] in b.real):
            raise DomainError(f"relabelling sends edge {a.edge[x]} across the real/infinitesimal divide")
        s = a.gate[x] != b.gate[y]
        if swap.setdefault(a.vertex[x], s) != s:
            raise DomainError(f"relabelling does not preserve gates at vertex {a.vertex[x]}")


@dataclass(frozen=True)
class FoldMove:
    e1: str
    e2: str
    at: int
    extend: bool = False

    def to_json(self) -> dict:
        return {"fold": [self.e1, self.e2], "at": self.at, "extend": self.extend}

    @classmethod
    def from_json(cls, d: Mapping) -> "FoldMove":
        e1, e2 = d["fold"]
        return cls(e1, e2, int(d["at"]), bool(d.get("extend", False)))


@dataclass(frozen=True)
class FoldingCircuit:
    """Fold moves on ``start`` followed by a relabelling of the final track onto ``start``.

    ``relabel`` maps half-edges of the final track to half-edges of ``start``.
    """

    start: FatTrainTrack
    moves: tuple[FoldMove, ...]
    relabel: Mapping[int, int]

    def tracks(self) -> list[FatTrainTrack]:
        """The start track followed by the track after each move."""
        out = [self.start]
        for k, mv in enumerate(self.moves, 1):
            try:
                nxt, _ = fold(out[-1], mv.e1, mv.e2, mv.at, mv.extend)
            except FoldError as exc:
                raise CircuitError(k, str(exc)) from None
            out.append(nxt)
        return out

    def edge_permutation(self) -> dict[str, str]:
        final = self.tracks()[-1]
        return {final.edge[x]: self.start.edge[y] for x, y in self.relabel.items()}

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "moves": [m.to_json() for m in self.moves],
            "relabel": {str(k): v for k, v in sorted(self.relabel.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "FoldingCircuit":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            start=FatTrainTrack.from_json(data["start"]),
            moves=tuple(FoldMove.from_json(m) for m in data["moves"]),
            relabel={int(k): int(v) for k, v in data["relabel"].items()},
        )


def circuit_transition_matrix(
    c: FoldingCircuit, full: bool = False
) -> tuple[list[list[int]], Digraph]:
    """P * M_k * ... * M_1, restricted to the real edges of the start track unless ``full``.

    Real weights never receive contributions from infinitesimal ones, so the
    real block of the product is the product of the real blocks.
    """
    t = c.start
    m = len(t.edges)
    total = _identity(m)
    cur = t
    for k, mv in enumerate(c.moves, 1):
        try:
            cur, M = fold(cur, mv.e1, mv.e2, mv.at, mv.extend)
        except FoldError as exc:
            raise CircuitError(k, str(exc)) from None
        total = _matmul(M, total)
    try:
        _check_isomorphism(cur, t, c.relabel)
    except DomainError as exc:
        raise CircuitError(len(c.moves) + 1, f"final relabelling: {exc}") from None
    idx = t.edge_index()
    P = [[0] * m for _ in range(m)]
    for x, y in c.relabel.items():
        P[idx[t.edge[y]]][idx[cur.edge[x]]] = 1
    total = _matmul(P, total)
    out = total if full else restrict(total, t)
    return out, Digraph(out)


# the family tau_n


def _family_chords(n: int):
    V = 3 * n
    A = [(j, (j + n - 1) % V) for j in range(n - 1)]
    B = [((2 * n - 3 + j) % V, (3 * n - 2 + j) % V) for j in range(n + 1)]
    return A, B


def _family_labels(n: int) -> list[int]:
    """Real-edge label of each chord in the list A_0..A_{n-2}, B_0..B_n."""
    labels = []
    for j in range(n - 1):
        labels.append(0 if j == n - 2 else n - j)
    for j in range(n + 1):
        labels.append(2 if j == 0 else 1 if j == n else 2 * n - j)
    return labels


def family_traintrack(n: int) -> FatTrainTrack:
    """The track tau_n: a 3n-gon of infinitesimal edges p0..p{3n-1} meeting in cusps,
    with 2n real edges r0..r{2n-1} attached smoothly.

    Vertex i of the polygon carries the chords ending there.  Chords are
    A_j = (j, j+n-1) for j < n-1 and B_j = (2n-3+j, 3n-2+j) for j <= n,
    indices mod 3n; vertices 0..n-2 and 2n-3 are 4-valent.  Real edges are
    numbered so that r0, r1, r2 are the edges a, b, c of the folding circuit
    and, for n = 2, r3 is d.
    """
    if n < 2:
        raise DomainError("family_traintrack needs n >= 2")
    V = 3 * n
    A, B = _family_chords(n)
    chords = A + B
    labels = _family_labels(n)
    edge: list[str] = []
    vert: list[int] = []
    gate: list[int] = []

    def half(v, g, name):
        edge.append(name)
        vert.append(v)
        gate.append(g)
        return len(edge) - 1

    pair: dict[int, int] = {}
    pin, pout = {}, {}
    for i in range(V):
        a = half(i, 0, f"p{i}")
        b = half((i + 1) % V, 0, f"p{i}")
        pair[a], pair[b] = b, a
        pout[i] = a
        pin[(i + 1) % V] = b
    slots: dict[int, list[int]] = {i: [] for i in range(V)}
    for (x, y), lab in zip(chords, labels):
        name = f"r{lab}"
        a = half(x, 1, name)
        b = half(y, 1, name)
        pair[a], pair[b] = b, a
        slots[x].append(a)
        slots[y].append(b)
    nxt = [0] * len(edge)
    for i in range(V):
        cyc = [pin[i], pout[i]] + slots[i][::-1]
        for k, h in enumerate(cyc):
            nxt[h] = cyc[(k + 1) % len(cyc)]
    reals = [f"r{k}" for k in range(2 * n)]
    return FatTrainTrack(
        edge=edge,
        pair=[pair[h] for h in range(len(edge))],
        vertex=vert,
        cyclic_next=nxt,
        gate=gate,
        real=reals,
        edges=reals + [f"p{i}" for i in range(V)],
    )


def family_circuit(n: int) -> FoldingCircuit:
    """Three extended folds on tau_n (a over c, b over a, b over c) closed by a rotation.

    Each fold continues over the infinitesimal edge it meets next.  The
    final track is tau_n rotated by one step around the polygon; the
    relabelling undoes that rotation.
    """
    t = family_traintrack(n)
    moves = []
    cur = t
    for e1, e2 in (("r0", "r2"), ("r1", "r0"), ("r1", "r2")):
        h1, h2 = _locate(cur, e1, e2, None)
        mv = FoldMove(e1, e2, cur.vertex[h1], True)
        cur, _ = fold(cur, mv.e1, mv.e2, mv.at, mv.extend)
        moves.append(mv)
    V = 3 * n
    for m in find_isomorphisms(cur, t):
        if all(t.vertex[y] == (cur.vertex[x] + 1) % V for x, y in m.items()):
            return FoldingCircuit(t, tuple(moves), m)
    raise AssertionError(f"no closing rotation found for n={n}")


# the simplest braid


def simplest_braid_track() -> FatTrainTrack:
    """Track for the 3-strand braid sigma_1 sigma_2^{-1} on the 4-punctured sphere.

    Two long edges L1, L2 join three vertices; each vertex carries a loop
    (l1, m, l2) whose two ends share a gate, cutting off a once-punctured
    monogon.  Switch conditions 2 l1 = L1, 2 m = L1 + L2, 2 l2 = L2 leave the
    weights determined by L1 and L2.
    """
    # half-edges: l1: 0,1  L1: 2,3  m: 4,5  L2: 6,7  l2: 8,9
    edge = ["l1", "l1", "L1", "L1", "m", "m", "L2", "L2", "l2", "l2"]
    pair = [1, 0, 3, 2, 5, 4, 7, 6, 9, 8]
    vertex = [0, 0, 0, 1, 1, 1, 1, 2, 2, 2]
    gate = [0, 0, 1, 1, 0, 0, 1, 1, 0, 0]
    nxt = [0] * 10
    for cyc in ([0, 1, 2], [4, 5, 6, 3], [8, 9, 7]):
        for k, h in enumerate(cyc):
            nxt[h] = cyc[(k + 1) % len(cyc)]
    return FatTrainTrack(edge, pair, vertex, nxt, gate, real=["L1", "L2"], edges=["L1", "L2", "l1", "m", "l2"])


def simplest_braid_matrix() -> list[list[int]]:
    """Action on the weights of the two long edges."""
    return [[1, 1], [1, 2]]
