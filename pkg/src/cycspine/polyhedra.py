"""Face-pairing polyhedra, identification quotients, and manifold certificates.

A scheme is the boundary 2-sphere of a polyhedral 3-ball: named vertices,
directed labelled arcs, and 2n faces F_i^+ / F_i^- whose boundary walks
spell relator i of a cyclic presentation.  Identifying each F_i^+ with
F_i^- (matching boundary positions) produces a closed pseudo-manifold with
one 3-cell; it is a genuine closed oriented 3-manifold exactly when the
quotient Euler characteristic vanishes, which for these schemes means a
single vertex orbit.

The family builders generate the parametric polyhedra: a bipyramid-like
sphere for the positive family, and the two-pole pictures for the
fractional family shapes (k,1), (1,l), (5,2) and (2,5).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from .words import CyclicPresentation, FamilySpec, Word, build_family


class SchemeError(ValueError):
    """Structural inconsistency detected while tracing a scheme."""

    def __init__(self, message: str, face_index: int | None = None):
        super().__init__(message)
        self.face_index = face_index


@dataclass(frozen=True)
class Arc:
    id: str
    tail: str
    head: str
    label: int


@dataclass(frozen=True)
class Face:
    name: str
    index: int
    sign: int
    boundary: tuple[tuple[str, int], ...]  # (arc id, traversal direction)


@dataclass
class FacePairingScheme:
    rank: int
    arcs: dict[str, Arc]
    faces: dict[str, Face]
    # pairing[i] is the induced boundary-arc correspondence of F_i^+ / F_i^-
    pairing: dict[int, list[tuple[str, str]]]

    def vertices(self) -> list[str]:
        vs = set()
        for a in self.arcs.values():
            vs.add(a.tail)
            vs.add(a.head)
        return sorted(vs)

    def face(self, index: int, sign: int) -> Face:
        return self.faces[face_name(index % self.rank, sign)]

    def basepoints(self) -> dict[str, str]:
        """Start vertex of each face's stored boundary walk."""
        out = {}
        for name, f in self.faces.items():
            arc_id, d = f.boundary[0]
            arc = self.arcs[arc_id]
            out[name] = arc.tail if d > 0 else arc.head
        return out

    def arc_slots(self) -> dict[str, list[tuple[str, int]]]:
        """(face name, position) occurrences of each arc."""
        slots: dict[str, list[tuple[str, int]]] = {a: [] for a in self.arcs}
        for name, f in self.faces.items():
            for p, (arc_id, _) in enumerate(f.boundary):
                slots.setdefault(arc_id, []).append((name, p))
        return slots

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "vertices": self.vertices(),
            "arcs": [
                {"id": a.id, "tail": a.tail, "head": a.head, "label": a.label}
                for a in sorted(self.arcs.values(), key=lambda a: a.id)
            ],
            "faces": [
                {
                    "name": f.name,
                    "index": f.index,
                    "sign": f.sign,
                    "boundary": [[aid, d] for aid, d in f.boundary],
                }
                for f in sorted(self.faces.values(), key=lambda f: (f.index, -f.sign))
            ],
            "pairing": [
                {"index": i, "arcs": [[a, b] for a, b in pairs]}
                for i, pairs in sorted(self.pairing.items())
            ],
            "basepoints": self.basepoints(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FacePairingScheme":
        arcs = {
            a["id"]: Arc(a["id"], a["tail"], a["head"], int(a["label"]))
            for a in data["arcs"]
        }
        faces = {
            f["name"]: Face(
                f["name"],
                int(f["index"]),
                int(f["sign"]),
                tuple((aid, int(d)) for aid, d in f["boundary"]),
            )
            for f in data["faces"]
        }
        pairing = {
            int(entry["index"]): [(a, b) for a, b in entry["arcs"]]
            for entry in data["pairing"]
        }
        return cls(int(data["rank"]), arcs, faces, pairing)

    def to_dot(self) -> str:
        lines = ["digraph skeleton {"]
        for a in sorted(self.arcs.values(), key=lambda a: a.id):
            lines.append(f'  "{a.tail}" -> "{a.head}" [label="x{a.label}"];')
        lines.append("}")
        return "\n".join(lines)


def face_name(index: int, sign: int) -> str:
    return f"F{index}{'+' if sign > 0 else '-'}"


def _derive_pairing(faces: dict[str, Face], rank: int) -> dict[int, list[tuple[str, str]]]:
    pairing = {}
    for i in range(rank):
        plus = faces[face_name(i, 1)]
        minus = faces[face_name(i, -1)]
        pairing[i] = [(a[0], b[0]) for a, b in zip(plus.boundary, minus.boundary)]
    return pairing


# ---------------------------------------------------------------------------
# Walking and validation
# ---------------------------------------------------------------------------


def _walk(s: FacePairingScheme, f: Face):
    """Yield (arc, dir, from_vertex, to_vertex) along the stored boundary."""
    for arc_id, d in f.boundary:
        a = s.arcs[arc_id]
        if d > 0:
            yield a, d, a.tail, a.head
        else:
            yield a, d, a.head, a.tail


def _spelled(s: FacePairingScheme, f: Face) -> tuple[tuple[int, int], ...]:
    return tuple((a.label, d) for a, d, _, _ in _walk(s, f))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, passed, detail))

    def to_json(self) -> list[dict]:
        return [
            {"check": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
        ]


def validate_scheme(s: FacePairingScheme, p: CyclicPresentation) -> ValidationReport:
    """Run every structural check; failures are reported, never thrown."""
    rep = ValidationReport()
    n = p.rank
    L = len(p.defining_word)
    rels = p.relators()

    names = {face_name(i, sg) for i in range(n) for sg in (1, -1)}
    rep.add(
        "face_count",
        set(s.faces) == names and s.rank == n,
        f"expected the 2n = {2*n} faces F_i^+/-",
    )

    bad = []
    for f in s.faces.values():
        want = tuple(rels[f.index % n].letters) if f.index % n < n else ()
        if _spelled(s, f) != want:
            bad.append(f.name)
    rep.add(
        "relator_spelling",
        not bad,
        "" if not bad else f"relator mismatch at {', '.join(sorted(bad))}",
    )

    rep.add(
        "arc_count",
        len(s.arcs) == n * L,
        f"have {len(s.arcs)}, expected n*L = {n * L}",
    )
    nverts = len(s.vertices())
    rep.add(
        "vertex_count",
        nverts == n * (L - 2) + 2,
        f"have {nverts}, expected n(L-2)+2 = {n * (L - 2) + 2}",
    )

    slots = s.arc_slots()
    bad_arcs = sorted(a for a, sl in slots.items() if len(sl) != 2)
    rep.add(
        "arc_sides",
        not bad_arcs,
        "" if not bad_arcs else f"arcs not on exactly two face sides: {bad_arcs[:5]}",
    )

    broken = []
    for f in s.faces.values():
        steps = list(_walk(s, f))
        ok = all(steps[i][3] == steps[(i + 1) % len(steps)][2] for i in range(len(steps)))
        if not ok or not steps:
            broken.append(f.name)
    rep.add(
        "boundary_continuity",
        not broken,
        "" if not broken else f"boundary walk not a closed path at {sorted(broken)[:5]}",
    )

    # orientability: with coherent orientations (reverse the minus faces),
    # every arc must be traversed once forwards and once backwards
    orient_ok = True
    detail = ""
    if not bad_arcs and not broken:
        seen: dict[str, list[int]] = {a: [] for a in s.arcs}
        for f in s.faces.values():
            for arc_id, d in f.boundary:
                seen[arc_id].append(d if f.sign > 0 else -d)
        offenders = sorted(a for a, ds in seen.items() if sorted(ds) != [-1, 1])
        orient_ok = not offenders
        if offenders:
            detail = f"incoherently traversed arcs: {offenders[:5]}"
    rep.add("orientable_surface", orient_ok, detail)

    surface_ok, surface_detail = _closed_surface_check(s) if orient_ok and not bad_arcs and not broken else (False, "skipped: prior structural failure")
    rep.add("closed_surface", surface_ok, surface_detail)

    align_ok = True
    detail = ""
    derived = _derive_pairing(s.faces, s.rank) if set(s.faces) == names else None
    if derived is None:
        align_ok, detail = False, "face set incomplete"
    else:
        for i in range(n):
            if s.pairing.get(i) != derived[i]:
                align_ok, detail = False, f"stored pairing differs from the aligned one at face pair {i}"
                break
            plus = s.faces[face_name(i, 1)]
            minus = s.faces[face_name(i, -1)]
            if _spelled(s, plus) != _spelled(s, minus):
                align_ok, detail = False, f"face pair {i} spells different words"
                break
    rep.add("pairing_alignment", align_ok, detail)
    return rep


def _closed_surface_check(s: FacePairingScheme) -> tuple[bool, str]:
    """Vertex links must be single cycles and chi(V - E + F) must equal 2."""
    verts = s.vertices()
    chi = len(verts) - len(s.arcs) + len(s.faces)
    if chi != 2:
        return False, f"V - E + F = {chi}, expected 2"
    # corner edges of the link graph at each vertex
    link_edges: dict[str, list[tuple]] = {v: [] for v in verts}
    for f in s.faces.values():
        steps = list(_walk(s, f))
        if f.sign < 0:
            steps = [(a, -d, tv, fv) for a, d, fv, tv in reversed(steps)]
        m = len(steps)
        for i in range(m):
            a_in, d_in, _, v = steps[i]
            a_out, d_out, v2, _ = steps[(i + 1) % m]
            if v != v2:
                return False, f"boundary of {f.name} is not a closed path"
            in_end = (a_in.id, "head" if d_in > 0 else "tail")
            out_end = (a_out.id, "tail" if d_out > 0 else "head")
            link_edges[v].append((in_end, out_end))
    for v in verts:
        ends = set()
        for a in s.arcs.values():
            if a.tail == v:
                ends.add((a.id, "tail"))
            if a.head == v:
                ends.add((a.id, "head"))
        adj: dict[tuple, list[tuple]] = {e: [] for e in ends}
        for e1, e2 in link_edges[v]:
            if e1 not in adj or e2 not in adj:
                return False, f"corner at {v} references a non-incident arc end"
            adj[e1].append(e2)
            adj[e2].append(e1)
        if any(len(nbrs) != 2 for nbrs in adj.values()):
            return False, f"link of {v} is not 2-regular"
        if not ends:
            return False, f"isolated vertex {v}"
        start = next(iter(ends))
        comp = {start}
        stack = [start]
        while stack:
            e = stack.pop()
            for w in adj[e]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        if comp != ends:
            return False, f"link of {v} is not a single circle"
    # connectivity of the 1-skeleton
    adj2: dict[str, set[str]] = {v: set() for v in verts}
    for a in s.arcs.values():
        adj2[a.tail].add(a.head)
        adj2[a.head].add(a.tail)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for w in adj2[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(verts):
        return False, "boundary complex is disconnected"
    return True, ""


# ---------------------------------------------------------------------------
# Edge orbits and the identification quotient
# ---------------------------------------------------------------------------


@dataclass
class OrbitCycle:
    label: int
    arcs: list[str]
    via_faces: list[int]

    def endpoints(self, s: FacePairingScheme) -> list[tuple[str, str]]:
        return [(s.arcs[a].tail, s.arcs[a].head) for a in self.arcs]


class _OrbitTracer:
    """Shared machinery for walking arc identification cycles.

    Hopping rule: from one side of an arc, the face pairing hands us the
    arc at the same boundary position of the opposite face; the walk then
    continues from that arc's other side.  Arcs matched across a face pair
    must carry the same label and the same traversal direction; violations
    raise SchemeError naming the offending face pair.
    """

    def __init__(self, s: FacePairingScheme):
        self.s = s
        self.slots = s.arc_slots()
        for a, sl in self.slots.items():
            if len(sl) != 2:
                raise SchemeError(f"arc {a} lies on {len(sl)} face sides, expected 2")
        self.by_slot = {}
        for f in s.faces.values():
            for p, (arc_id, d) in enumerate(f.boundary):
                self.by_slot[(f.name, p)] = (arc_id, d)

    def step(self, slot: tuple[str, int]) -> tuple[str, tuple[str, int], int]:
        s = self.s
        nm, p = slot
        f = s.faces[nm]
        other = face_name(f.index, -f.sign)
        if other not in s.faces or (other, p) not in self.by_slot:
            raise SchemeError(f"face pair {f.index} has no partner slot {p}", f.index)
        arc_id, d = self.by_slot[slot]
        mate, dm = self.by_slot[(other, p)]
        pair = (arc_id, mate) if f.sign > 0 else (mate, arc_id)
        stored = s.pairing.get(f.index, [])
        if p >= len(stored) or stored[p] != pair:
            raise SchemeError(
                f"stored pairing of face pair {f.index} does not match slot {p}", f.index
            )
        if s.arcs[arc_id].label != s.arcs[mate].label:
            raise SchemeError(
                f"face pair {f.index} matches arcs {arc_id} (x{s.arcs[arc_id].label}) and "
                f"{mate} (x{s.arcs[mate].label}) of different labels",
                f.index,
            )
        if d != dm:
            raise SchemeError(
                f"face pair {f.index} matches arcs {arc_id} and {mate} "
                "with incompatible directions",
                f.index,
            )
        return mate, (other, p), f.index

    def start_slot(self, arc_id: str) -> tuple[str, int]:
        def key(slot):
            nm, p = slot
            return (0 if self.s.faces[nm].sign < 0 else 1, p, self.s.faces[nm].index)

        return min(self.slots[arc_id], key=key)

    def trace(self, arc_id: str) -> OrbitCycle:
        s = self.s
        first_slot = self.start_slot(arc_id)
        cycle = [arc_id]
        via = []
        cur_slot = first_slot
        for _ in range(2 * len(s.arcs) + 1):
            mate, arrived, via_face = self.step(cur_slot)
            via.append(via_face)
            rest = [sl for sl in self.slots[mate] if sl != arrived]
            if len(rest) != 1:
                raise SchemeError(f"arc {mate} has ambiguous face incidences")
            cur_slot = rest[0]
            if mate == arc_id and cur_slot == first_slot:
                break
            cycle.append(mate)
        else:
            raise SchemeError(f"orbit of arc {arc_id} did not close")
        labels = {s.arcs[a].label for a in cycle}
        if len(labels) != 1:
            raise SchemeError(f"orbit {cycle} carries labels {sorted(labels)}")
        return OrbitCycle(labels.pop(), cycle, via)


def edge_orbits(s: FacePairingScheme) -> list[OrbitCycle]:
    """Arc identification cycles induced by the face pairing, as a partition."""
    tracer = _OrbitTracer(s)
    orbits = []
    visited: set[str] = set()
    for arc_id in sorted(s.arcs):
        if arc_id in visited:
            continue
        orbit = tracer.trace(arc_id)
        visited.update(orbit.arcs)
        orbits.append(orbit)
    return orbits


def orbit_containing(s: FacePairingScheme, arc_id: str) -> OrbitCycle:
    """The identification cycle through a chosen arc, traversed from it."""
    if arc_id not in s.arcs:
        raise KeyError(arc_id)
    return _OrbitTracer(s).trace(arc_id)


class _UnionFind:
    """Union-find with deterministic smallest-representative roots."""

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        lo, hi = (ra, rb) if ra <= rb else (rb, ra)
        self.parent[hi] = lo

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass
class QuotientComplex:
    V: int
    E: int
    F: int
    C: int
    vertex_orbits: dict[str, list[str]]
    arc_orbits: dict[str, list[str]]

    @property
    def chi(self) -> int:
        return self.V - self.E + self.F - self.C

    def cell_counts(self) -> tuple[int, int, int, int]:
        return (self.V, self.E, self.F, self.C)


def quotient(s: FacePairingScheme) -> QuotientComplex:
    """Identify paired faces; arcs glue head-to-head and tail-to-tail."""
    uf_v = _UnionFind(s.vertices())
    uf_a = _UnionFind(sorted(s.arcs))
    by_slot = {}
    for f in s.faces.values():
        for p, (arc_id, d) in enumerate(f.boundary):
            by_slot[(f.name, p)] = (arc_id, d)
    for i in range(s.rank):
        plus = s.faces.get(face_name(i, 1))
        minus = s.faces.get(face_name(i, -1))
        if plus is None or minus is None:
            raise SchemeError(f"face pair {i} incomplete", i)
        if len(plus.boundary) != len(minus.boundary):
            raise SchemeError(f"face pair {i} has boundaries of different lengths", i)
        for p in range(len(plus.boundary)):
            a_id, da = by_slot[(plus.name, p)]
            b_id, db = by_slot[(minus.name, p)]
            a, b = s.arcs[a_id], s.arcs[b_id]
            uf_a.union(a_id, b_id)
            a_start, a_end = (a.tail, a.head) if da > 0 else (a.head, a.tail)
            b_start, b_end = (b.tail, b.head) if db > 0 else (b.head, b.tail)
            uf_v.union(a_start, b_start)
            uf_v.union(a_end, b_end)
    v_classes = uf_v.classes()
    a_classes = uf_a.classes()
    return QuotientComplex(
        V=len(v_classes),
        E=len(a_classes),
        F=s.rank,
        C=1,
        vertex_orbits={k: sorted(v) for k, v in v_classes.items()},
        arc_orbits={k: sorted(v) for k, v in a_classes.items()},
    )


def seifert_threlfall(s: FacePairingScheme) -> bool:
    """True iff the identification quotient has Euler characteristic zero."""
    return quotient(s).chi == 0


# ---------------------------------------------------------------------------
# Closed-form spine decision and the odd-offset obstruction
# ---------------------------------------------------------------------------

SUPPORTED_SHAPES = "(k,1), (1,l), (5,2), (2,5)"


def _supported_shape(k: int, l: int) -> bool:
    return l == 1 or k == 1 or (k, l) in ((5, 2), (2, 5))


def spine_decision(k: int, l: int, n: int, f: int) -> bool:
    """Closed-form answer to 'is this fractional member a spine'.

    Valid for n >= 4, f*k != 2 mod n, and the supported (k, l) shapes;
    anything else is rejected rather than answered.
    """
    if n < 4:
        raise ValueError("decision requires n >= 4")
    if k < 1 or l < 1 or not 0 <= f < n:
        raise ValueError("need k, l >= 1 and 0 <= f < n")
    if (f * k) % n == 2:
        raise ValueError("f*k = 2 mod n is outside the scope of the decision")
    if not _supported_shape(k, l):
        raise ValueError(f"unsupported (k, l) shape; supported: {SUPPORTED_SHAPES}")
    return n % 2 == 0 and f % 2 == 0 and (f * k) % n == 0


@dataclass(frozen=True)
class ObstructionRecord:
    """Witness that an odd offset cannot yield a face-pairing polyhedron.

    In a putative polyhedron, the terminal vertex of the arc path starting
    with the second pole arc has degree 4, with incoming arcs labelled
    y_{(l-1)f+1}, y_{(l-1)f+2} and outgoing arcs labelled y_{lf+1},
    y_{lf+3}; the outgoing pair bounds a face of index lf+1, which is even
    and therefore already claimed by the opposite pole.
    """

    duplicated_face_index: int
    incoming_labels: tuple[int, int]
    outgoing_labels: tuple[int, int]


def odd_f_obstruction(k: int, l: int, n: int, f: int) -> ObstructionRecord:
    if n < 4 or n % 2 != 0:
        raise ValueError("obstruction requires even n >= 4")
    if gcd(k, l) != 1:
        raise ValueError("obstruction requires gcd(k, l) = 1")
    if not 0 <= f < n or (f * k) % n != 0:
        raise ValueError("obstruction requires 0 <= f < n with f*k = 0 mod n")
    if f % 2 == 0:
        raise ValueError("offset f is even; the obstruction applies to odd f only")
    idx = (l * f + 1) % n
    if idx % 2 != 0:
        raise AssertionError("duplicated face index should be even for odd l*f")
    return ObstructionRecord(
        duplicated_face_index=idx,
        incoming_labels=(((l - 1) * f + 1) % n, ((l - 1) * f + 2) % n),
        outgoing_labels=((l * f + 1) % n, (l * f + 3) % n),
    )


# ---------------------------------------------------------------------------
# Scheme builders
# ---------------------------------------------------------------------------


def build_scheme(spec: FamilySpec) -> FacePairingScheme:
    """Parametric face-pairing polyhedron for a supported family instance.

    Positive family: r > 1 with gcd(r, n) = 1.  Fractional family: n >= 4
    even, f even with f*k = 0 mod n, and (k, l) one of the supported
    shapes.  Everything else is rejected.
    """
    if spec.kind == "H":
        r, n = spec.params
        if r <= 1:
            raise ValueError("positive-family polyhedron requires r > 1")
        if gcd(r, n) != 1:
            raise ValueError("positive-family polyhedron requires gcd(r, n) = 1")
        return _build_positive(r, n)
    k, l, n, f = spec.normalized_params()
    if n < 4 or n % 2 != 0:
        raise ValueError("fractional-family polyhedron requires even n >= 4")
    if (f * k) % n == 2:
        raise ValueError("f*k = 2 mod n is outside theorem scope")
    if (f * k) % n != 0:
        raise ValueError("polyhedron requires f*k = 0 mod n")
    if f % 2 != 0:
        raise ValueError("polyhedron requires even f")
    if not _supported_shape(k, l):
        raise ValueError(f"unsupported (k, l) shape; supported: {SUPPORTED_SHAPES}")
    if l == 1:
        return _build_k_over_1(k, n, f)
    if k == 1:
        return _build_1_over_l(l, n)
    if (k, l) == (5, 2):
        return _build_5_over_2(n, f)
    return _build_2_over_5(n, f)


class _SchemeDraft:
    def __init__(self, n: int):
        self.n = n
        self.arcs: dict[str, Arc] = {}
        self.faces: dict[str, Face] = {}

    def arc(self, arc_id: str, tail: str, head: str, label: int) -> str:
        if arc_id in self.arcs:
            raise AssertionError(f"duplicate arc id {arc_id}")
        self.arcs[arc_id] = Arc(arc_id, tail, head, label % self.n)
        return arc_id

    def face(self, index: int, sign: int, boundary: list[tuple[str, int]]):
        name = face_name(index % self.n, sign)
        if name in self.faces:
            raise AssertionError(f"duplicate face {name}")
        self.faces[name] = Face(name, index % self.n, sign, tuple(boundary))

    def done(self) -> FacePairingScheme:
        s = FacePairingScheme(self.n, self.arcs, self.faces, {})
        s.pairing = _derive_pairing(self.faces, self.n)
        return s


def _build_positive(r: int, n: int) -> FacePairingScheme:
    """Bipyramid-like sphere for the positive relators x_i .. x_{i+r-1}.

    One long arc S -> N labelled x_c per index, and one descending chain
    N -> w_c^{r-1} -> ... -> w_c^2 -> S labelled x_{c+1} .. x_{c+r-1};
    F_c^+ sits between arc c and chain c, F_{c+1}^- between chain c and
    arc c+r.
    """
    d = _SchemeDraft(n)

    def wv(c: int, j: int) -> str:
        if j >= r:
            return "N"
        if j <= 1:
            return "S"
        return f"w{c % n}^{j}"

    for c in range(n):
        d.arc(f"bez{c}", "S", "N", c)
        for j in range(1, r):
            d.arc(f"ch{c}_{j}", wv(c, r - j + 1), wv(c, r - j), c + j)
    for c in range(n):
        d.face(c, 1, [(f"bez{c}", 1)] + [(f"ch{c}_{j}", 1) for j in range(1, r)])
        d.face(c + 1, -1, [(f"ch{c}_{j}", 1) for j in range(1, r)] + [(f"bez{(c + r) % n}", 1)])
    return d.done()


def _build_k_over_1(k: int, n: int, f: int) -> FacePairingScheme:
    """Two-pole polyhedron for the shape (k, 1), k >= 1.

    Pole arcs reach a ring of vertices u_c; each u_c sends one arc to
    v_{c+f-1} and one to v_{c+f}, and from each v_m a chain of k-1 arcs
    (through w_{m+1}^1 .. w_{m+1}^{k-2}) returns to u_{m-f+2}.  For k = 1
    the chain is empty and v_m collapses onto u_{m-f+2}.
    """
    d = _SchemeDraft(n)

    def u(c: int) -> str:
        return f"u{c % n}"

    def v(m: int) -> str:
        if k == 1:
            return u(m - f + 2)
        return f"v{m % n}"

    def cv(m: int, j: int) -> str:
        if j <= 0:
            return v(m)
        if j >= k - 1:
            return u(m - f + 2)
        return f"w{(m + 1) % n}^{j}"

    for c in range(n):
        pole = "N" if c % 2 == 0 else "S"
        d.arc(f"pole{c}", pole, u(c), c)
        d.arc(f"vert{c}", u(c), v(c + f - 1), c + f - 1)
        d.arc(f"hor{c}", u(c), v(c + f), c + f + 1)
    for m in range(n):
        for j in range(1, k):
            d.arc(f"ch{m}_{j}", cv(m, j - 1), cv(m, j), m + j * f + 1)

    def chain(m: int) -> list[tuple[str, int]]:
        return [(f"ch{m % n}_{j}", 1) for j in range(1, k)]

    half = n // 2
    for j in range(half):
        top, bot = 2 * j, 2 * j + 1
        d.face(top, -1, [(f"pole{top}", 1), (f"hor{top}", 1)] + chain(f + top) + [(f"pole{(top + 2) % n}", -1)])
        d.face(bot, 1, [(f"pole{bot}", 1), (f"hor{bot}", 1)] + chain(f + bot) + [(f"pole{(bot + 2) % n}", -1)])
        i = (f + top) % n
        d.face(i, 1, [(f"vert{(top + 1) % n}", 1)] + chain(i) + [(f"vert{(top + 2) % n}", 1), (f"hor{(top + 1) % n}", -1)])
        i = (f + bot) % n
        d.face(i, -1, [(f"vert{(bot + 1) % n}", 1)] + chain(i) + [(f"vert{(bot + 2) % n}", 1), (f"hor{(bot + 1) % n}", -1)])
    return d.done()


def _build_1_over_l(l: int, n: int) -> FacePairingScheme:
    """Two-pole polyhedron for the shape (1, l), l >= 2 (offset 0 only).

    Pole chains run through u_c^1 .. u_c^{l-1} to w_{c-1}; each w_c sends
    an arc to w_{c+2} and a chain through t_c^1 .. t_c^{l-2} to v_{c-1};
    the v ring is joined consecutively.
    """
    if l < 2:
        raise AssertionError("shape (1, 1) is built by the (k, 1) builder")
    d = _SchemeDraft(n)

    def ucv(c: int, j: int) -> str:
        if j <= 0:
            return "N" if c % 2 == 0 else "S"
        if j >= l:
            return f"w{(c - 1) % n}"
        return f"u{c % n}^{j}"

    def tcv(c: int, j: int) -> str:
        if j <= 0:
            return f"w{c % n}"
        if j >= l - 1:
            return f"v{(c - 1) % n}"
        return f"t{c % n}^{j}"

    for c in range(n):
        for j in range(1, l + 1):
            d.arc(f"uch{c}_{j}", ucv(c, j - 1), ucv(c, j), c)
        d.arc(f"wa{c}", f"w{c}", f"w{(c + 2) % n}", c + 2)
        for j in range(1, l):
            d.arc(f"tch{c}_{j}", tcv(c, j - 1), tcv(c, j), c)
        d.arc(f"va{c}", f"v{c}", f"v{(c + 1) % n}", c + 1)

    def uch(c, sign):
        ids = [f"uch{c % n}_{j}" for j in range(1, l + 1)]
        return [(a, 1) for a in ids] if sign > 0 else [(a, -1) for a in reversed(ids)]

    def tch(c, sign):
        ids = [f"tch{c % n}_{j}" for j in range(1, l)]
        return [(a, 1) for a in ids] if sign > 0 else [(a, -1) for a in reversed(ids)]

    half = n // 2
    for j in range(half):
        top, bot = 2 * j, 2 * j + 1
        d.face(top, -1, uch(top, 1) + [(f"wa{(top - 1) % n}", 1)] + uch(top + 2, -1))
        d.face(bot, 1, uch(bot, 1) + [(f"wa{(bot - 1) % n}", 1)] + uch(bot + 2, -1))
        i = (top - 1) % n
        d.face(i, -1, tch(i, 1) + [(f"va{(i - 1) % n}", 1), (f"va{i}", 1)] + tch(i + 2, -1) + [(f"wa{i}", -1)])
        i = top
        d.face(i, 1, tch(i, 1) + [(f"va{(i - 1) % n}", 1), (f"va{i}", 1)] + tch(i + 2, -1) + [(f"wa{i}", -1)])
    return d.done()


def _build_5_over_2(n: int, f: int) -> FacePairingScheme:
    """Two-pole polyhedron for the shape (5, 2)."""
    d = _SchemeDraft(n)
    for c in range(n):
        pole = "N" if c % 2 == 0 else "S"
        d.arc(f"pole{c}", pole, f"s{c}", c)
        d.arc(f"su{c}", f"s{c}", f"u{c}", c + f)
        d.arc(f"ur{c}", f"u{c}", f"r{c}", c + 2 * f + 1)
        d.arc(f"rv{c}", f"r{c}", f"v{(c + 2 * f) % n}", c + 3 * f + 1)
        d.arc(f"vw{c}", f"v{c}", f"w{c}^1", c + 2 * f + 1)
        d.arc(f"ww{c}", f"w{c}^1", f"w{c}^2", c + 3 * f + 1)
        d.arc(f"wu{c}", f"w{c}^2", f"u{(c - 2 * f + 2) % n}", c + 4 * f + 1)
        d.arc(f"ut{c}", f"u{c}", f"t{(c + 2 * f - 1) % n}", c + 2 * f - 1)
        d.arc(f"tv{c}", f"t{c}", f"v{c}", c + f)
    half = n // 2
    for j in range(half):
        for (base, sign) in ((2 * j, -1), (2 * j + 1, 1)):
            m = (base + 2 * f) % n
            d.face(
                base,
                sign,
                [
                    (f"pole{base}", 1),
                    (f"su{base}", 1),
                    (f"ur{base}", 1),
                    (f"rv{base}", 1),
                    (f"vw{m}", 1),
                    (f"ww{m}", 1),
                    (f"wu{m}", 1),
                    (f"su{(base + 2) % n}", -1),
                    (f"pole{(base + 2) % n}", -1),
                ],
            )
        for (base, sign) in ((2 * j, -1), (2 * j + 1, 1)):
            i = (2 * f + base - 1) % n
            d.face(
                i,
                sign,
                [
                    (f"ut{base}", 1),
                    (f"tv{i}", 1),
                    (f"vw{i}", 1),
                    (f"ww{i}", 1),
                    (f"wu{i}", 1),
                    (f"ut{(base + 1) % n}", 1),
                    (f"tv{(i + 1) % n}", 1),
                    (f"rv{base}", -1),
                    (f"ur{base}", -1),
                ],
            )
    return d.done()


def _build_2_over_5(n: int, f: int) -> FacePairingScheme:
    """Two-pole polyhedron for the shape (2, 5)."""
    d = _SchemeDraft(n)

    def ucv(c: int, j: int) -> str:
        if j <= 0:
            return "N" if c % 2 == 0 else "S"
        if j >= 5:
            return f"w{(c + f - 1) % n}"
        return f"u{c % n}^{j}"

    def tcv(c: int, j: int) -> str:
        if j <= 0:
            return f"w{c % n}"
        if j >= 3:
            return f"v{(c - 1) % n}"
        return f"t{c % n}^{j}"

    for c in range(n):
        for j in range(1, 6):
            d.arc(f"uch{c}_{j}", ucv(c, j - 1), ucv(c, j), c if j % 2 == 1 else c + f)
        d.arc(f"wr{c}", f"w{c}", f"r{c}", c + 2)
        d.arc(f"rw{c}", f"r{c}", f"w{(c + 2) % n}", c + f + 2)
        for j in range(1, 4):
            d.arc(f"tch{c}_{j}", tcv(c, j - 1), tcv(c, j), c if j % 2 == 1 else c + f)
        d.arc(f"vs{c}", f"v{c}", f"s{c}", c + f + 1)
        d.arc(f"sv{c}", f"s{c}", f"v{(c + 1) % n}", c + 1)

    def uch(c, sign):
        ids = [f"uch{c % n}_{j}" for j in range(1, 6)]
        return [(a, 1) for a in ids] if sign > 0 else [(a, -1) for a in reversed(ids)]

    def tch(c, sign):
        ids = [f"tch{c % n}_{j}" for j in range(1, 4)]
        return [(a, 1) for a in ids] if sign > 0 else [(a, -1) for a in reversed(ids)]

    half = n // 2
    for j in range(half):
        for (base, sign) in ((2 * j, -1), (2 * j + 1, 1)):
            m = (base + f - 1) % n
            d.face(
                base,
                sign,
                uch(base, 1) + [(f"wr{m}", 1), (f"rw{m}", 1)] + uch(base + 2, -1),
            )
        for (base, sign) in ((2 * j, 1), (2 * j + 1, -1)):
            i = (f + base) % n
            d.face(
                i,
                sign,
                tch(i, 1)
                + [
                    (f"vs{(i - 1) % n}", 1),
                    (f"sv{(i - 1) % n}", 1),
                    (f"vs{i}", 1),
                    (f"sv{i}", 1),
                ]
                + tch(i + 2, -1)
                + [(f"rw{i}", -1), (f"wr{i}", -1)],
            )
    return d.done()


# ---------------------------------------------------------------------------
# Heegaard diagrams for the positive family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeegaardDiagram:
    """Combinatorial genus-n diagram: discs on a cycle plus strand bundles."""

    discs: tuple[str, ...]
    bundles: tuple[tuple[str, str, int], ...]
    strand_labels: tuple[int, ...] = ()

    def degree(self, disc: str) -> int:
        return sum(m for a, b, m in self.bundles if disc in (a, b))


def heegaard_H(r: int, n: int) -> HeegaardDiagram:
    """Diagram of the positive-family manifold from its face pairing.

    Disc j-pair: F_{jr}^+ below, F_{jr+1}^- above; each F_{jr}^+ sends one
    strand to F_{(j-1)r+1}^- and a bundle of r-1 strands to F_{jr+1}^-.
    Every disc meets exactly r strands.
    """
    if r <= 1 or gcd(r, n) != 1:
        raise ValueError("diagram requires r > 1 and gcd(r, n) = 1")
    discs = []
    bundles = []
    for j in range(n):
        plus = face_name((j * r) % n, 1)
        minus = face_name((j * r + 1) % n, -1)
        discs.extend([plus, minus])
        bundles.append((plus, face_name(((j - 1) * r + 1) % n, -1), 1))
        if r > 1:
            bundles.append((plus, minus, r - 1))
    diagram = HeegaardDiagram(tuple(discs), tuple(sorted(bundles)))
    for disc in diagram.discs:
        if diagram.degree(disc) != r:
            raise AssertionError(f"disc {disc} has degree {diagram.degree(disc)} != {r}")
    return diagram


def _rotate_name(name: str, r: int, n: int) -> str:
    idx = int(name[1:-1])
    return face_name((idx + r) % n, 1 if name.endswith("+") else -1)


def apply_rotation(d: HeegaardDiagram, r: int, n: int) -> HeegaardDiagram:
    """Apply the index map F_i^+- -> F_{i+r}^+- to every disc."""
    discs = tuple(_rotate_name(nm, r, n) for nm in d.discs)
    bundles = tuple(
        sorted((_rotate_name(a, r, n), _rotate_name(b, r, n), m) for a, b, m in d.bundles)
    )
    return HeegaardDiagram(discs, bundles, d.strand_labels)


def canonical_lens_diagram(r: int) -> HeegaardDiagram:
    """One-pair diagram with r strands, endpoint labels 1..r on one side."""
    return HeegaardDiagram(("F+", "F-"), (("F+", "F-", r),), tuple(range(1, r + 1)))


def rho_quotient(d: HeegaardDiagram, r: int) -> HeegaardDiagram:
    """Verify invariance under the index-r rotation and collapse its orbits.

    Raises ValueError naming the first strand bundle that is not carried to
    a bundle of the same multiplicity.
    """
    n = len(d.discs) // 2
    rotated = apply_rotation(d, r, n)
    if set(rotated.bundles) != set(d.bundles):
        for b in sorted(d.bundles):
            img = (_rotate_name(b[0], r, n), _rotate_name(b[1], r, n), b[2])
            if img not in d.bundles:
                raise ValueError(f"diagram is not rotation invariant: bundle {b} maps to {img}")
        raise ValueError("diagram is not rotation invariant")
    total = sum(m for a, b, m in d.bundles if a.endswith("+") and b.endswith("-"))
    strands = total // n
    return HeegaardDiagram(("F+", "F-"), (("F+", "F-", strands),), tuple(range(1, strands + 1)))


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def certificate(s: FacePairingScheme, p: CyclicPresentation) -> dict:
    """Machine-readable record of the validation, orbits, and quotient."""
    report = validate_scheme(s, p)
    out: dict = {
        "schema": 1,
        "rank": s.rank,
        "checks": report.to_json(),
        "valid": report.passed,
    }
    if report.passed:
        orbits = edge_orbits(s)
        q = quotient(s)
        out["orbits"] = [
            {"label": o.label, "arcs": o.arcs, "via_faces": o.via_faces} for o in orbits
        ]
        out["cells"] = {"V": q.V, "E": q.E, "F": q.F, "C": q.C}
        out["chi"] = q.chi
        out["seifert_threlfall"] = q.chi == 0
    return out


def scheme_json_str(s: FacePairingScheme) -> str:
    return json.dumps(s.to_json(), indent=1)


__all__ = [
    "Arc",
    "Face",
    "FacePairingScheme",
    "SchemeError",
    "ValidationReport",
    "OrbitCycle",
    "QuotientComplex",
    "ObstructionRecord",
    "HeegaardDiagram",
    "face_name",
    "build_scheme",
    "validate_scheme",
    "edge_orbits",
    "quotient",
    "seifert_threlfall",
    "spine_decision",
    "odd_f_obstruction",
    "heegaard_H",
    "apply_rotation",
    "rho_quotient",
    "canonical_lens_diagram",
    "certificate",
]
