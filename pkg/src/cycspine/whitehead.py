"""Whitehead graphs: construction, planarity, embeddings, pattern matching.

Vertices come in two families: ``('p', i)`` for the positive end of
generator i and ``('m', i)`` for the negative end.  Each cyclic length-2
subword of a relator contributes one edge:

* ``x y^-1``      ->  p(x) -- p(y)
* ``x^-1 y``      ->  m(x) -- m(y)
* ``(x y)^+-1``   ->  p(x) -- m(y)

Multiedges are stored as a (pair -> multiplicity) map.  Loops (which arise
only from non-cyclically-reduced words) are retained and reported, but
excluded from pattern matching.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import gcd

import networkx as nx

from .words import CyclicPresentation, FamilySpec, build_family

Vertex = tuple[str, int]


def pos(i: int, n: int) -> Vertex:
    return ("p", i % n)


def neg(i: int, n: int) -> Vertex:
    return ("m", i % n)


@dataclass
class WhiteheadGraph:
    rank: int
    edges: dict[tuple[Vertex, Vertex], int] = field(default_factory=dict)

    def vertices(self) -> list[Vertex]:
        n = self.rank
        return [("p", i) for i in range(n)] + [("m", i) for i in range(n)]

    def add_edge(self, a: Vertex, b: Vertex, mult: int = 1):
        key = (a, b) if a <= b else (b, a)
        self.edges[key] = self.edges.get(key, 0) + mult

    def multiplicity(self, a: Vertex, b: Vertex) -> int:
        key = (a, b) if a <= b else (b, a)
        return self.edges.get(key, 0)

    def total_multiplicity(self) -> int:
        return sum(self.edges.values())

    def has_loops(self) -> bool:
        return any(a == b for a, b in self.edges)

    def without_loops(self) -> "WhiteheadGraph":
        return WhiteheadGraph(self.rank, {e: m for e, m in self.edges.items() if e[0] != e[1]})

    def loop_vertices(self) -> list[Vertex]:
        return sorted(a for (a, b) in self.edges if a == b)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "edges": [
                {"u": _vname(a), "v": _vname(b), "multiplicity": m}
                for (a, b), m in sorted(self.edges.items())
            ],
        }

    def to_dot(self) -> str:
        lines = ["graph whitehead {"]
        for v in self.vertices():
            lines.append(f"  {_vname(v)};")
        for (a, b), m in sorted(self.edges.items()):
            lines.append(f"  {_vname(a)} -- {_vname(b)} [label={m}];")
        lines.append("}")
        return "\n".join(lines)


def _vname(v: Vertex) -> str:
    return f"{v[0]}{v[1]}"


def whitehead_graph(p: CyclicPresentation) -> WhiteheadGraph:
    """Edge multiset over the 2n link vertices, derived from the relators."""
    n = p.rank
    g = WhiteheadGraph(n)
    for rel in p.relators():
        letters = rel.letters
        if not letters:
            continue
        for idx, (a, sa) in enumerate(letters):
            b, sb = letters[(idx + 1) % len(letters)]
            left = pos(a, n) if sa > 0 else neg(a, n)
            right = neg(b, n) if sb > 0 else pos(b, n)
            g.add_edge(left, right)
    return g


def reduce_graph(g: WhiteheadGraph) -> WhiteheadGraph:
    """Clamp every multiplicity to 1; the vertex set is unchanged."""
    return WhiteheadGraph(g.rank, {e: 1 for e in g.edges})


def is_connected(g: WhiteheadGraph) -> bool:
    """Connectivity over all 2n vertices (isolated vertices disconnect)."""
    verts = g.vertices()
    if len(verts) <= 1:
        return True
    adj: dict[Vertex, set[Vertex]] = {v: set() for v in verts}
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def shift_indices(g: WhiteheadGraph, s: int) -> WhiteheadGraph:
    """Apply i -> i+s to both vertex families."""
    n = g.rank
    out = WhiteheadGraph(n)
    for (a, b), m in g.edges.items():
        out.add_edge((a[0], (a[1] + s) % n), (b[0], (b[1] + s) % n), m)
    return out


def shift_mixed_edges(g: WhiteheadGraph, d: int) -> WhiteheadGraph:
    """Replace each p(i) -- m(j) edge by p(i) -- m(j+d); others unchanged."""
    n = g.rank
    out = WhiteheadGraph(n)
    for (a, b), m in g.edges.items():
        if a[0] != b[0]:
            pa = a if a[0] == "p" else b
            ma = b if a[0] == "p" else a
            out.add_edge(pa, ("m", (ma[1] + d) % n), m)
        else:
            out.add_edge(a, b, m)
    return out


# ---------------------------------------------------------------------------
# Rotation systems and face tracing
# ---------------------------------------------------------------------------


@dataclass
class RotationSystem:
    """Combinatorial embedding: edge endpoints plus a cyclic end order per vertex.

    ``edges[e]`` is the (u, v) endpoint pair of edge instance e; the two
    ends are (e, 0) at u and (e, 1) at v.  Faces are traced by the usual
    next-end-in-rotation rule, so Euler's formula certifies sphericality.
    """

    edges: list[tuple[Vertex, Vertex]]
    rotation: dict[Vertex, list[tuple[int, int]]]

    def __post_init__(self):
        seen = set()
        for v, ends in self.rotation.items():
            for e in ends:
                if e in seen:
                    raise ValueError(f"edge end {e} appears twice in the rotation system")
                seen.add(e)
        expected = {(i, k) for i in range(len(self.edges)) for k in (0, 1)}
        if seen != expected:
            raise ValueError("rotation system does not cover every edge end exactly once")

    def trace_faces(self) -> list[list[tuple[int, int]]]:
        """Faces as dart cycles; a dart (e, d) runs from end d to end 1-d."""
        end_pos = {}
        for v, ends in self.rotation.items():
            for idx, e in enumerate(ends):
                end_pos[e] = (v, idx)
        faces = []
        seen: set[tuple[int, int]] = set()
        for start in sorted((e, d) for e in range(len(self.edges)) for d in (0, 1)):
            if start in seen:
                continue
            face = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                e, d = cur
                to_end = (e, 1 - d)
                v, idx = end_pos[to_end]
                ends = self.rotation[v]
                cur = ends[(idx + 1) % len(ends)]
            faces.append(face)
        return faces

    def face_degrees(self) -> list[int]:
        return [len(f) for f in self.trace_faces()]

    def components(self) -> list[set[Vertex]]:
        adj: dict[Vertex, set[Vertex]] = {v: set() for v in self.rotation}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        comps = []
        left = set(self.rotation)
        while left:
            v0 = left.pop()
            comp = {v0}
            stack = [v0]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            comps.append(comp)
        return comps

    def euler_ok(self) -> bool:
        """V - E + F = 2 on every connected component."""
        comps = self.components()
        faces = self.trace_faces()
        comp_of = {}
        for idx, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = idx
        e_count = [0] * len(comps)
        for u, v in self.edges:
            e_count[comp_of[u]] += 1
        f_count = [0] * len(comps)
        for face in faces:
            e, d = face[0]
            f_count[comp_of[self.edges[e][0]]] += 1
        for idx, comp in enumerate(comps):
            fc = f_count[idx] if e_count[idx] else 1
            if len(comp) - e_count[idx] + fc != 2:
                return False
        return True

    def is_spherical(self) -> bool:
        return len(self.components()) == 1 and self.euler_ok()


def face_census(rs: RotationSystem) -> dict[int, int]:
    """Face-degree histogram of a certified connected spherical embedding."""
    if not rs.is_spherical():
        raise ValueError("face census requires a connected embedding with V - E + F = 2")
    return dict(sorted(Counter(rs.face_degrees()).items()))


def is_planar(g: WhiteheadGraph):
    """Planarity of the underlying reduced graph, with an embedding witness.

    Returns ``(False, None)`` or ``(True, rs)`` where ``rs`` is a rotation
    system for the full multigraph: parallel copies are inserted adjacently
    (creating 2-gon faces between them) and loops as small 1-gons.  The
    witness is checked against Euler's formula before being returned.
    """
    simple = g.without_loops()
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices())
    for (a, b), m in simple.edges.items():
        nxg.add_edge(a, b)
    planar, embedding = nx.check_planarity(nxg)
    if not planar:
        return False, None

    edges: list[tuple[Vertex, Vertex]] = []
    instance: dict[tuple[Vertex, Vertex], list[int]] = {}
    for (a, b), m in sorted(simple.edges.items()):
        ids = []
        for _ in range(m):
            ids.append(len(edges))
            edges.append((a, b))
        instance[(a, b)] = ids
    rotation: dict[Vertex, list[tuple[int, int]]] = {}
    for v in g.vertices():
        ends: list[tuple[int, int]] = []
        if v in nxg and nxg.degree(v) > 0:
            for w in embedding.neighbors_cw_order(v):
                key = (v, w) if v <= w else (w, v)
                ids = instance[key]
                ordered = ids if v == key[0] else list(reversed(ids))
                for e in ordered:
                    ends.append((e, 0 if edges[e][0] == v else 1))
        rotation[v] = ends
    # loops: both ends adjacent, appended after everything else at the vertex
    for (a, b), m in sorted(g.edges.items()):
        if a == b:
            for _ in range(m):
                e = len(edges)
                edges.append((a, a))
                rotation[a].extend([(e, 0), (e, 1)])
    rs = RotationSystem(edges, rotation)
    if not rs.euler_ok():
        raise AssertionError("planar embedding witness failed the Euler check")
    return True, rs


def planarity_criterion_G(k: int, l: int, n: int, f: int) -> bool:
    """Closed-form planarity test for the fractional family; needs n >= 4."""
    if n < 4:
        raise ValueError("criterion is stated for n >= 4")
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    if not 0 <= f < n:
        raise ValueError("offset f must satisfy 0 <= f < n")
    return n % 2 == 0 and (f * k) % n in (0, 2)


# ---------------------------------------------------------------------------
# Canonical embeddings of the two family graph patterns
# ---------------------------------------------------------------------------


def canonical_embedding(spec: FamilySpec) -> RotationSystem:
    """Explicit rotation system for a family Whitehead graph.

    For the positive family this is the single alternating cycle with the
    (r-1)-fold edges doubled in place; for the fractional family it is the
    standard two-primed-rows picture.  Raises ValueError when the family
    parameters do not admit the pattern (disconnected or non-planar cases).
    """
    if spec.kind == "H":
        r, n = spec.params
        if r <= 1 or gcd(r, n) != 1:
            raise ValueError("pattern requires r > 1 and gcd(r, n) = 1")
        return _embed_positive_cycle(r, n)
    k, l, n, f = spec.normalized_params()
    if n < 4 or n % 2 != 0 or (f * k) % n not in (0, 2):
        raise ValueError("pattern requires n >= 4 even and f*k = 0 or 2 mod n")
    return _embed_fractional(k, l, n, f)


def _embed_positive_cycle(r: int, n: int) -> RotationSystem:
    edges: list[tuple[Vertex, Vertex]] = []
    eid: dict[tuple, int] = {}

    def mk(tag, i, c, a, b):
        eid[(tag, i % n, c)] = len(edges)
        edges.append((a, b))

    def end(tag, i, c, v):
        e = eid[(tag, i % n, c)]
        return (e, 0) if edges[e][0] == v else (e, 1)

    for i in range(n):
        for c in range(r - 1):
            mk("up", i, c, pos(i, n), neg(i + 1, n))
        mk("dn", i, 0, pos(i, n), neg(i - r + 1, n))
    rotation = {}
    for i in range(n):
        v = pos(i, n)
        rotation[v] = [end("dn", i, 0, v)] + [end("up", i, c, v) for c in range(r - 1)]
        w = neg(i, n)
        rotation[w] = [end("up", i - 1, c, w) for c in reversed(range(r - 1))] + [
            end("dn", i + r - 1, 0, w)
        ]
    return RotationSystem(edges, rotation)


def _embed_fractional(k: int, l: int, n: int, f: int) -> RotationSystem:
    lam = 2 * l + k - 3
    edges: list[tuple[Vertex, Vertex]] = []
    eid: dict[tuple, int] = {}

    def mk(tag, i, c, a, b):
        eid[(tag, i % n, c)] = len(edges)
        edges.append((a, b))

    def end(tag, i, c, v):
        e = eid[(tag, i % n, c)]
        return (e, 0) if edges[e][0] == v else (e, 1)

    for i in range(n):
        mk("pp", i, 0, pos(i, n), pos(i + 1, n))
        mk("mm", i, 0, neg(i, n), neg(i + 2, n))
        for c in range(lam):
            mk("lam", i, c, pos(i, n), neg(i + f, n))
        mk("one", i, 0, pos(i, n), neg(i + f + 1, n))
    rotation = {}
    for i in range(n):
        v = pos(i, n)
        if i % 2 == 0:
            rotation[v] = (
                [end("pp", i, 0, v), end("one", i, 0, v), end("pp", i - 1, 0, v)]
                + [end("lam", i, c, v) for c in range(lam)]
            )
        else:
            rotation[v] = (
                [end("pp", i, 0, v)]
                + [end("lam", i, c, v) for c in range(lam)]
                + [end("pp", i - 1, 0, v), end("one", i, 0, v)]
            )
    for j in range(n):
        v = neg(j, n)
        if (j - f) % 2 == 1:
            rotation[v] = (
                [end("mm", j, 0, v), end("mm", j - 2, 0, v), end("one", j - f - 1, 0, v)]
                + [end("lam", j - f, c, v) for c in reversed(range(lam))]
            )
        else:
            rotation[v] = (
                [end("mm", j, 0, v)]
                + [end("lam", j - f, c, v) for c in reversed(range(lam))]
                + [end("one", j - f - 1, 0, v), end("mm", j - 2, 0, v)]
            )
    return RotationSystem(edges, rotation)


# ---------------------------------------------------------------------------
# Pattern recognition
# ---------------------------------------------------------------------------


class PatternType(Enum):
    TYPE_I5 = "I5"
    TYPE_II7 = "II7"
    TYPE_II11 = "II11"
    NONE = "NONE"


def _dihedral_images(g: WhiteheadGraph):
    n = g.rank
    for eps in (1, -1):
        for c in range(n):
            out = WhiteheadGraph(n)
            for (a, b), m in g.edges.items():
                out.add_edge((a[0], (eps * a[1] + c) % n), (b[0], (eps * b[1] + c) % n), m)
            yield out


def match_family_pattern(g: WhiteheadGraph, spec: FamilySpec) -> PatternType:
    """Recognize the two family graph patterns up to the 2n dihedral index maps.

    Loops are stripped before matching.  Returns NONE when the family
    parameters do not define a connected planar pattern, or when no
    dihedral image of g equals the parametric target multiset.
    """
    g = g.without_loops()
    if spec.kind == "H":
        r, n = spec.params
        if r <= 1 or gcd(r, n) != 1 or g.rank != n:
            return PatternType.NONE
        target = whitehead_graph(build_family(spec))
        kind = PatternType.TYPE_I5
    else:
        k, l, n, f = spec.normalized_params()
        if g.rank != n or n < 4 or n % 2 != 0 or (f * k) % n not in (0, 2):
            return PatternType.NONE
        target = whitehead_graph(build_family(spec))
        kind = PatternType.TYPE_II11 if (k, l) == (1, 1) else PatternType.TYPE_II7
    for image in _dihedral_images(g):
        if image.edges == target.edges:
            return kind
    return PatternType.NONE


def graph_json_str(g: WhiteheadGraph) -> str:
    return json.dumps(g.to_json())


__all__ = [
    "WhiteheadGraph",
    "RotationSystem",
    "PatternType",
    "pos",
    "neg",
    "whitehead_graph",
    "reduce_graph",
    "is_connected",
    "is_planar",
    "planarity_criterion_G",
    "face_census",
    "canonical_embedding",
    "shift_indices",
    "shift_mixed_edges",
    "match_family_pattern",
]
