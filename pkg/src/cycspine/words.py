"""Free-group words, cyclic presentations, and shift-extension machinery.

A word over the rank-n free group is a sequence of letters ``(g, s)`` with
generator index ``0 <= g < n`` and sign ``s = +1`` or ``-1``.  A cyclic
presentation on n generators is determined by a single defining word; its
relators are the n images of that word under the index-rotation automorphism
``x_i -> x_{i+1}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Word:
    """A word in the free group of the given rank.

    ``letters`` is a tuple of ``(generator, sign)`` pairs.  Generator
    indices are normalized into ``[0, rank)`` at construction.
    """

    rank: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        norm = []
        for g, s in self.letters:
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
            norm.append((g % self.rank, s))
        object.__setattr__(self, "letters", tuple(norm))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if other.rank != self.rank:
            raise ValueError("cannot multiply words of different rank")
        return Word(self.rank, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple((g, -s) for g, s in reversed(self.letters)))

    def is_freely_reduced(self) -> bool:
        return all(
            not (a[0] == b[0] and a[1] == -b[1])
            for a, b in zip(self.letters, self.letters[1:])
        )

    def is_cyclically_reduced(self) -> bool:
        if not self.is_freely_reduced():
            return False
        if len(self.letters) >= 2:
            a, b = self.letters[0], self.letters[-1]
            if a[0] == b[0] and a[1] == -b[1]:
                return False
        return True

    def to_text(self) -> str:
        """Render as whitespace-separated ``x<i>``/``x<i>^-1`` tokens."""
        if not self.letters:
            return "1"
        parts = []
        for g, s in self.letters:
            parts.append(f"x{g}" if s > 0 else f"x{g}^-1")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"rank": self.rank, "word": [[g, s] for g, s in self.letters]}

    @classmethod
    def from_json(cls, data: dict) -> "Word":
        return cls(int(data["rank"]), tuple((int(g), int(s)) for g, s in data["word"]))


_TOKEN = re.compile(r"^([a-zA-Z]+)(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, rank: int) -> Word:
    """Parse whitespace-separated tokens like ``x0 x1^3 x2^-1``.

    Exponents are expanded at parse time; any alphabetic generator name is
    accepted, only the index matters.  ``1`` denotes the empty word.
    """
    letters: list[tuple[int, int]] = []
    for token in text.split():
        if token == "1":
            continue
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"cannot parse word token {token!r}")
        idx = int(m.group(2))
        exp = int(m.group(3)) if m.group(3) is not None else 1
        sign = 1 if exp > 0 else -1
        letters.extend([(idx, sign)] * abs(exp))
    return Word(rank, tuple(letters))


def free_reduce(w: Word) -> Word:
    """Cancel adjacent mutually inverse letters until none remain."""
    out: list[tuple[int, int]] = []
    for g, s in w.letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return Word(w.rank, tuple(out))


def cyclic_reduce(w: Word) -> Word:
    """Freely reduce, then strip mutually inverse first/last letters."""
    w = free_reduce(w)
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return Word(w.rank, tuple(letters))


def shift(w: Word, s: int) -> Word:
    """Apply the index rotation ``x_i -> x_{i+s}`` (indices mod rank)."""
    return Word(w.rank, tuple(((g + s) % w.rank, sg) for g, sg in w.letters))


def exponent_vector(w: Word) -> tuple[int, ...]:
    """Signed count of occurrences of each generator."""
    v = [0] * w.rank
    for g, s in w.letters:
        v[g] += s
    return tuple(v)


@dataclass(frozen=True)
class CyclicPresentation:
    """Presentation on n generators whose relators are the n shifts of one word."""

    rank: int
    defining_word: Word

    def __post_init__(self):
        if self.defining_word.rank != self.rank:
            raise ValueError("defining word rank does not match presentation rank")

    def relators(self) -> list[Word]:
        return [shift(self.defining_word, i) for i in range(self.rank)]

    def to_json(self) -> dict:
        return self.defining_word.to_json()

    @classmethod
    def from_json(cls, data: dict) -> "CyclicPresentation":
        w = Word.from_json(data)
        return cls(w.rank, w)


def relators(p: CyclicPresentation) -> list[Word]:
    return p.relators()


# ---------------------------------------------------------------------------
# Presentation families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Parameter record for the built-in presentation families.

    kind 'H': positive word x0 x1 ... x_{r-1} on n generators (params r, n).
    kind 'G': the two-parameter fractional family (params k, l, n, f).
    kind 'F': shorthand for 'G' with f = 0 (params k, l, n).
    """

    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.kind == "H":
            r, n = self.params
            if n <= 1 or r < 1:
                raise ValueError(f"H family needs n > 1 and r >= 1, got r={r}, n={n}")
        elif self.kind in ("G", "F"):
            k, l, n, f = self.normalized_params()
            if n < 2 or k < 1 or l < 1:
                raise ValueError(f"family needs n >= 2 and k, l >= 1, got k={k}, l={l}, n={n}")
            if not 0 <= f < n:
                raise ValueError(f"offset f must satisfy 0 <= f < n, got f={f}")
        else:
            raise ValueError(f"unknown family kind {self.kind!r}")

    def normalized_params(self) -> tuple[int, int, int, int]:
        """(k, l, n, f) for G/F kinds; F has f = 0."""
        if self.kind == "H":
            raise ValueError("H family has no (k, l, n, f) parameters")
        if self.kind == "F":
            k, l, n = self.params
            return k, l, n, 0
        return self.params  # type: ignore[return-value]

    def shorthand(self) -> str:
        return f"{self.kind}:" + ",".join(str(x) for x in self.params)


def H(r: int, n: int) -> FamilySpec:
    return FamilySpec("H", (r, n))


def G(k: int, l: int, n: int, f: int) -> FamilySpec:
    return FamilySpec("G", (k, l, n, f))


def F(k: int, l: int, n: int) -> FamilySpec:
    return FamilySpec("F", (k, l, n))


def parse_family(text: str) -> FamilySpec:
    """Parse shorthand strings ``H:r,n``, ``G:k,l,n,f``, ``F:k,l,n``."""
    try:
        kind, rest = text.split(":", 1)
        params = tuple(int(x) for x in rest.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse family shorthand {text!r}") from exc
    kind = kind.strip().upper()
    expected = {"H": 2, "G": 4, "F": 3}
    if kind not in expected:
        raise ValueError(f"unknown family kind {kind!r} in {text!r}")
    if len(params) != expected[kind]:
        raise ValueError(f"{kind} family takes {expected[kind]} parameters, got {len(params)}")
    return FamilySpec(kind, params)


def build_family(spec: FamilySpec) -> CyclicPresentation:
    """Construct the defining word of a family instance.

    H(r,n): x0 x1 ... x_{r-1}.
    G(k,l,n,f): (y0 y_f .. y_{(l-1)f}) (y_{lf+1} .. y_{(l+(k-1))f+1})
                (y_2 y_{2+f} .. y_{2+(l-1)f})^{-1}, indices mod n.
    F(k,l,n) = G(k,l,n,0), i.e. x0^l x1^k x2^{-l}.
    """
    if spec.kind == "H":
        r, n = spec.params
        return CyclicPresentation(n, Word(n, tuple((i, 1) for i in range(r))))
    k, l, n, f = spec.normalized_params()
    letters = [(j * f, 1) for j in range(l)]
    letters += [(l * f + 1 + j * f, 1) for j in range(k)]
    letters += [(2 + j * f, -1) for j in reversed(range(l))]
    return CyclicPresentation(n, Word(n, tuple(letters)))


def family_presentation(text_or_spec) -> CyclicPresentation:
    """Accept a FamilySpec, shorthand string, or ready presentation."""
    if isinstance(text_or_spec, CyclicPresentation):
        return text_or_spec
    if isinstance(text_or_spec, FamilySpec):
        return build_family(text_or_spec)
    return build_family(parse_family(text_or_spec))


# ---------------------------------------------------------------------------
# Equality up to the symmetries of a cyclic presentation
# ---------------------------------------------------------------------------


def cyclic_word_normal_form(w: Word) -> tuple:
    """Normal form under free/cyclic reduction, rotation, and index shift.

    Two defining words give the same presentation complex exactly when they
    agree up to these moves, so this is the right equality for kernel
    rewrites and family comparisons.
    """
    w = cyclic_reduce(w)
    if not w.letters:
        return (w.rank, ())
    candidates = []
    letters = w.letters
    m = len(letters)
    for rot in range(m):
        rotated = letters[rot:] + letters[:rot]
        for s in range(w.rank):
            candidates.append(tuple(((g + s) % w.rank, sg) for g, sg in rotated))
    return (w.rank, min(candidates))


def presentations_equal(p: CyclicPresentation, q: CyclicPresentation) -> bool:
    if p.rank != q.rank:
        return False
    return cyclic_word_normal_form(p.defining_word) == cyclic_word_normal_form(q.defining_word)


# ---------------------------------------------------------------------------
# Two-generator shift extensions and kernel rewriting
# ---------------------------------------------------------------------------

X, T = 0, 1  # generator indices in two-generator presentations


@dataclass(frozen=True)
class TwoGeneratorPresentation:
    """Presentation on generators x, t whose first relator is t^n."""

    order_of_t: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        n = self.order_of_t
        if n < 1:
            raise ValueError("order of t must be >= 1")
        if not self.relators:
            raise ValueError("at least the torsion relator t^n is required")
        first = self.relators[0]
        if first.letters != tuple((T, 1) for _ in range(n)):
            raise ValueError("first relator must be t^n")
        for rel in self.relators[1:]:
            if not rel.is_freely_reduced():
                raise ValueError("relators after t^n must be freely reduced")


def _power(gen: int, exp: int) -> list[tuple[int, int]]:
    s = 1 if exp > 0 else -1
    return [(gen, s)] * abs(exp)


def shift_extension(k: int, l: int, n: int, f: int) -> TwoGeneratorPresentation:
    """Two-generator presentation of the degree-n cyclic extension.

    Relators: t^n and x^l t x^k t^(1-f*k) x^-l t^-2.  The middle t-exponent
    is kept as the literal integer 1 - f*k; for f = 0 this is the familiar
    x^l t x^k t x^-l t^-2.
    """
    if n < 2 or k < 1 or l < 1:
        raise ValueError("need n >= 2 and k, l >= 1")
    if not 0 <= f < n:
        raise ValueError("offset f must satisfy 0 <= f < n")
    e = 1 - f * k
    letters = _power(X, l) + _power(T, 1) + _power(X, k) + _power(T, e) + _power(X, -l) + _power(T, -2)
    rel = free_reduce(Word(2, tuple(letters)))
    torsion = Word(2, tuple((T, 1) for _ in range(n)))
    return TwoGeneratorPresentation(n, (torsion, rel))


def rewrite_kernel(e: TwoGeneratorPresentation, f: int) -> CyclicPresentation:
    """Rewrite the kernel of the retraction x -> t^f, t -> t onto Z_n.

    Uses the coset representatives t^0, ..., t^{n-1} in that order and the
    kernel generators y_i = t^i x t^-(i+f).  The retraction must kill every
    relator, i.e. f*(x-exponent sum) + (t-exponent sum) = 0 mod n; otherwise
    no such retraction exists and a ValueError is raised.
    """
    n = e.order_of_t
    if not 0 <= f < n:
        raise ValueError("offset f must satisfy 0 <= f < n")
    others = e.relators[1:]
    for rel in others:
        xsum = sum(s for g, s in rel.letters if g == X)
        tsum = sum(s for g, s in rel.letters if g == T)
        if (f * xsum + tsum) % n != 0:
            raise ValueError(
                f"no retraction with x -> t^{f}: relator {rel.to_text()} does not map to 1"
            )
    if len(others) != 1:
        raise ValueError("expected exactly one relator besides t^n")
    rel = others[0]
    coset = 0
    out: list[tuple[int, int]] = []
    for g, s in rel.letters:
        if g == T:
            coset = (coset + s) % n
        elif s > 0:
            out.append((coset, 1))
            coset = (coset + f) % n
        else:
            coset = (coset - f) % n
            out.append((coset, -1))
    if coset != 0:
        raise AssertionError("rewrite did not return to the base coset")
    return CyclicPresentation(n, free_reduce(Word(n, tuple(out))))


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


def word_to_json_str(w: Word) -> str:
    return json.dumps(w.to_json())


__all__ = [
    "Word",
    "CyclicPresentation",
    "FamilySpec",
    "TwoGeneratorPresentation",
    "H",
    "G",
    "F",
    "X",
    "T",
    "parse_word",
    "parse_family",
    "free_reduce",
    "cyclic_reduce",
    "shift",
    "exponent_vector",
    "relators",
    "build_family",
    "family_presentation",
    "cyclic_word_normal_form",
    "presentations_equal",
    "shift_extension",
    "rewrite_kernel",
    "coprime",
]
