"""Todd-Coxeter coset enumeration (HLT strategy, trivial subgroup).

The table has one column per generator and inverse; entries are coset
numbers or None.  Coincidences are processed immediately through the
standard replace-by-smaller-representative queue, so a closed table gives
exactly the group order.  Running out of the coset allowance is a valid
outcome (EXCEEDED), never an error: enumeration is a semi-decision
procedure and a cap proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .words import CyclicPresentation, TwoGeneratorPresentation, Word, free_reduce

DEFAULT_MAX_COSETS = 200_000


@dataclass(frozen=True)
class EnumerationResult:
    status: str  # "FINITE" or "EXCEEDED"
    order: int | None
    live_cosets: int
    total_defined: int

    @property
    def finite(self) -> bool:
        return self.status == "FINITE"

    def __repr__(self):
        if self.finite:
            return f"FINITE({self.order})"
        return f"EXCEEDED(live={self.live_cosets}, defined={self.total_defined})"


class _Exceeded(Exception):
    pass


class CosetTable:
    """HLT coset table over the trivial subgroup, with lookahead.

    Column 2g is generator g, column 2g+1 its inverse.  Scan order is
    fixed (relators in presentation order, cosets in creation order), so
    identical inputs produce identical tables and traces.  When the live
    count hits the allowance, one deduction-only pass over the whole table
    is tried before giving up; this collapses the presentations on which
    plain relator scanning balloons.
    """

    def __init__(
        self,
        ngens: int,
        relators: list[list[int]],
        max_cosets: int = DEFAULT_MAX_COSETS,
        record_trace: bool = False,
    ):
        if max_cosets < 1:
            raise ValueError("max_cosets must be >= 1")
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.relators = relators
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p: list[int] = [0]
        self.n_live = 1
        self.record_trace = record_trace
        self.trace: list[tuple] = []

    # -- coset bookkeeping --------------------------------------------------

    def is_live(self, a: int) -> bool:
        return self.p[a] == a

    def rep(self, a: int) -> int:
        root = a
        while self.p[root] != root:
            root = self.p[root]
        while self.p[a] != root:
            self.p[a], a = root, self.p[a]
        return root

    def define(self, a: int, x: int) -> int:
        if self.n_live >= self.max_cosets:
            raise _Exceeded()
        b = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(b)
        self.n_live += 1
        self.table[a][x] = b
        self.table[b][x ^ 1] = a
        if self.record_trace:
            self.trace.append(("def", a, x, b))
        return b

    # -- coincidences ---------------------------------------------------------

    def _merge(self, a: int, b: int, queue: list[int]):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = (a, b) if a < b else (b, a)
        self.p[hi] = lo
        self.n_live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        if self.record_trace:
            self.trace.append(("coi", a, b))
        table = self.table
        ncols = self.ncols
        pos = 0
        while pos < len(queue):
            y = queue[pos]
            pos += 1
            row = table[y]
            for x in range(ncols):
                d = row[x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = self.rep(y), self.rep(d)
                if table[mu][x] is not None:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self._merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    # -- scanning -------------------------------------------------------------

    def scan_and_fill(self, a: int, word: list[int]):
        table = self.table
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt is None:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][word[j] ^ 1]
                if nxt is None:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                if self.record_trace:
                    self.trace.append(("ded", f, word[i], b))
                return
            self.define(f, word[i])
            table = self.table

    def scan(self, a: int, word: list[int]):
        """Deduction-only scan: close single gaps and record coincidences."""
        table = self.table
        f, i = a, 0
        b, j = a, len(word) - 1
        while i <= j:
            nxt = table[f][word[i]]
            if nxt is None:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i:
            nxt = table[b][word[j] ^ 1]
            if nxt is None:
                break
            b = nxt
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][word[i]] = b
            table[b][word[i] ^ 1] = f
            if self.record_trace:
                self.trace.append(("ded", f, word[i], b))

    def lookahead(self) -> bool:
        """Scan every relator at every live coset without defining; compact.

        Returns True when the pass freed space below the allowance.
        """
        before = self.n_live
        a = 0
        while a < len(self.table):
            if self.is_live(a):
                for rel in self.relators:
                    self.scan(a, rel)
                    if not self.is_live(a):
                        break
            a += 1
        if self.record_trace:
            self.trace.append(("lka", before, self.n_live))
        if self.n_live < before:
            self.compact()
        return self.n_live < self.max_cosets

    def compact(self):
        """Renumber live cosets consecutively, dropping dead rows."""
        live = [a for a in range(len(self.table)) if self.is_live(a)]
        new_index = {old: new for new, old in enumerate(live)}
        new_table = []
        for old in live:
            row = self.table[old]
            new_table.append([None if e is None else new_index[self.rep(e)] for e in row])
        self.table = new_table
        self.p = list(range(len(live)))

    _MAX_LOOKAHEADS = 50

    def _sweep(self) -> bool:
        """One HLT pass; True when the table closed, False when it filled up."""
        a = 0
        while a < len(self.table):
            if self.is_live(a):
                try:
                    for rel in self.relators:
                        self.scan_and_fill(a, rel)
                        if not self.is_live(a):
                            break
                    if self.is_live(a):
                        for x in range(self.ncols):
                            if self.table[a][x] is None:
                                self.define(a, x)
                except _Exceeded:
                    return False
            a += 1
        return True

    def enumerate(self) -> EnumerationResult:
        defined_before = 0
        for _ in range(self._MAX_LOOKAHEADS):
            if self._sweep():
                return EnumerationResult(
                    "FINITE", self.n_live, self.n_live, defined_before + len(self.table)
                )
            defined_before += len(self.table)
            if not self.lookahead():
                break
            # table was compacted: re-sweep from the start (cheap re-scans)
        return EnumerationResult("EXCEEDED", None, self.n_live, defined_before + len(self.table))


class FelschTable(CosetTable):
    """Definition-light strategy: new entries are pushed on a deduction
    stack and every relator is scanned from each position at which the
    deduced column occurs, so the table stays near the group order.

    Slower per step than relator scanning but immune to the ballooning
    that plain HLT suffers on presentations with long repeated-letter
    blocks.
    """

    def __init__(self, ngens: int, relators: list[list[int]], max_cosets: int = DEFAULT_MAX_COSETS):
        super().__init__(ngens, relators, max_cosets)
        self.deductions: list[tuple[int, int]] = []
        by_col: dict[int, list[tuple[int, ...]]] = {x: [] for x in range(self.ncols)}
        seen = set()
        for rel in relators:
            inv = [c ^ 1 for c in reversed(rel)]
            for base in (rel, inv):
                for i in range(len(base)):
                    rot = tuple(base[i:] + base[:i])
                    if rot not in seen:
                        seen.add(rot)
                        by_col[rot[0]].append(rot)
        self.cycles_by_col = by_col

    def _push(self, a: int, x: int):
        self.deductions.append((a, x))

    def _set(self, a: int, x: int, b: int):
        self.table[a][x] = b
        self.table[b][x ^ 1] = a
        self._push(a, x)
        self._push(b, x ^ 1)

    def define(self, a: int, x: int) -> int:
        b = super().define(a, x)
        self._push(a, x)
        self._push(b, x ^ 1)
        return b

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        if self.record_trace:
            self.trace.append(("coi", a, b))
        table = self.table
        ncols = self.ncols
        push = self.deductions.append
        pos = 0
        while pos < len(queue):
            y = queue[pos]
            pos += 1
            row = table[y]
            for x in range(ncols):
                d = row[x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = self.rep(y), self.rep(d)
                if table[mu][x] is not None:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self._merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu
                    push((mu, x))
                    push((nu, x ^ 1))

    def _scan_deducing(self, a: int, word: tuple[int, ...]):
        table = self.table
        f, i = a, 0
        b, j = a, len(word) - 1
        while i <= j:
            nxt = table[f][word[i]]
            if nxt is None:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i:
            nxt = table[b][word[j] ^ 1]
            if nxt is None:
                break
            b = nxt
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            self._set(f, word[i], b)

    def process_deductions(self):
        while self.deductions:
            a, x = self.deductions.pop()
            if not self.is_live(a):
                continue
            for cyc in self.cycles_by_col[x]:
                self._scan_deducing(a, cyc)
                if not self.is_live(a):
                    break

    def enumerate(self) -> EnumerationResult:
        try:
            a = 0
            while a < len(self.table):
                if self.is_live(a):
                    x = 0
                    while x < self.ncols:
                        if self.is_live(a) and self.table[a][x] is None:
                            self.define(a, x)
                            self.process_deductions()
                        x += 1
                a += 1
        except _Exceeded:
            return EnumerationResult("EXCEEDED", None, self.n_live, len(self.table))
        return EnumerationResult("FINITE", self.n_live, self.n_live, len(self.table))


def _word_to_columns(w: Word) -> list[int]:
    return [2 * g if s > 0 else 2 * g + 1 for g, s in w.letters]


STRATEGIES = ("hlt", "felsch", "auto")


def coset_enumerate(
    relators: list[Word],
    ngens: int,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: str = "hlt",
) -> EnumerationResult:
    """Enumerate cosets of the trivial subgroup; relators must be freely reduced.

    ``strategy`` picks between relator scanning with lookahead ("hlt") and
    the deduction-stack strategy ("felsch").  Both are deterministic and
    both are exact; they differ only in how large the intermediate table
    gets on hostile presentations.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}")
    cols = []
    for rel in relators:
        if rel.rank != ngens:
            raise ValueError("relator rank does not match the generator count")
        if not rel.is_freely_reduced():
            raise ValueError(f"relator {rel.to_text()} is not freely reduced")
        word = _word_to_columns(rel)
        if word:
            cols.append(word)
    if strategy == "auto":
        probe = CosetTable(ngens, [list(c) for c in cols], min(max_cosets, 50_000)).enumerate()
        if probe.finite:
            return probe
        return FelschTable(ngens, cols, max_cosets).enumerate()
    cls = CosetTable if strategy == "hlt" else FelschTable
    return cls(ngens, cols, max_cosets).enumerate()


Presentation = Union[CyclicPresentation, TwoGeneratorPresentation]


def order_of(
    p: Presentation,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: str = "hlt",
) -> EnumerationResult:
    """Enumeration wrapper; relators are freely reduced before scanning."""
    if isinstance(p, CyclicPresentation):
        rels = [free_reduce(r) for r in p.relators()]
        return coset_enumerate(rels, p.rank, max_cosets, strategy)
    rels = [free_reduce(r) for r in p.relators]
    return coset_enumerate(rels, 2, max_cosets, strategy)


@dataclass(frozen=True)
class OrderIndependence:
    """Outcome of comparing the orders of two same-extension members."""

    result1: EnumerationResult
    result2: EnumerationResult

    @property
    def conclusive(self) -> bool:
        return self.result1.finite and self.result2.finite

    @property
    def equal(self) -> bool | None:
        """True/False when both enumerations closed, None when inconclusive."""
        if not self.conclusive:
            return None
        return self.result1.order == self.result2.order


def verify_order_independence(
    k: int,
    l: int,
    n: int,
    f1: int,
    f2: int,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: str = "hlt",
) -> OrderIndependence:
    """Enumerate two members sharing an extension and compare their orders.

    Requires f1*k = f2*k = 0 mod n (both offsets must define retractions of
    the same extension).  A pair of EXCEEDED runs is inconclusive, not a
    pass.
    """
    from .words import G, build_family

    if (f1 * k) % n != 0 or (f2 * k) % n != 0:
        raise ValueError("both offsets must satisfy f*k = 0 mod n")
    r1 = order_of(build_family(G(k, l, n, f1)), max_cosets, strategy)
    r2 = order_of(build_family(G(k, l, n, f2)), max_cosets, strategy)
    return OrderIndependence(r1, r2)


__all__ = [
    "DEFAULT_MAX_COSETS",
    "EnumerationResult",
    "CosetTable",
    "OrderIndependence",
    "coset_enumerate",
    "order_of",
    "verify_order_independence",
]
