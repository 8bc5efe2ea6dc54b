"""Braid words, Temperley-Lieb diagrams and annular closures.

A TL diagram on ``n = m + 1`` strands has endpoints ``0..n-1`` along the
bottom and ``n..2n-1`` along the top, both numbered left to right.  Products
stack bottom to top, so ``compose_tl(a, b)`` places ``a`` below ``b``.

TL letters are integers: ``i`` in ``1..m`` stands for ``U_i`` and ``0`` for
the identity diagram.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

ID = 0


class BraidParseError(ValueError):
    pass


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``strands`` strands."""

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise BraidParseError(f"need at least 2 strands, got {self.strands}")
        object.__setattr__(self, "letters", tuple((int(i), int(s)) for i, s in self.letters))
        for i, s in self.letters:
            if not 1 <= i <= self.m:
                raise BraidParseError(f"generator index {i} out of range 1..{self.m}")
            if s not in (1, -1):
                raise BraidParseError(f"sign must be +1 or -1, got {s}")

    @classmethod
    def from_ints(cls, entries: Iterable[int], strands: int) -> BraidWord:
        return cls(strands, tuple((abs(e), 1 if e > 0 else -1) for e in entries))

    @property
    def m(self) -> int:
        return self.strands - 1

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(s for _, s in self.letters)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.letters)

    @property
    def n_plus(self) -> int:
        return sum(1 for _, s in self.letters if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for _, s in self.letters if s < 0)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def rotate(self, k: int) -> BraidWord:
        """Cyclic rotation; the closure is unchanged up to isotopy."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])

    def to_ints(self) -> list[int]:
        return [i * s for i, s in self.letters]

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.to_ints())


_TOKEN_SPLIT = re.compile(r"[\s,]+")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse whitespace/comma separated signed generator indices, e.g. ``"1 -2 1"``."""
    tokens = [t for t in _TOKEN_SPLIT.split(text.strip()) if t]
    entries: list[int] = []
    for tok in tokens:
        try:
            x = int(tok)
        except ValueError:
            raise BraidParseError(f"not an integer: {tok!r}") from None
        if x == 0:
            raise BraidParseError("generator index 0 is not allowed")
        entries.append(x)
    if strands is None:
        if not entries:
            raise BraidParseError("empty braid word needs an explicit strand count")
        strands = max(abs(x) for x in entries) + 1
    for x in entries:
        if abs(x) > strands - 1:
            raise BraidParseError(f"index {abs(x)} out of range for {strands} strands")
    return BraidWord.from_ints(entries, strands)


def mirror(w: BraidWord) -> BraidWord:
    """Reverse every crossing."""
    return BraidWord(w.strands, tuple((i, -s) for i, s in w.letters))


class Convention(str, Enum):
    """Which resolution of a crossing carries the TL generator."""

    KH = "Kh"
    KS = "KS"


def resolve(w: BraidWord, v: Sequence[int], convention: Convention | str = Convention.KH) -> tuple[int, ...]:
    """TL letters of the complete resolution of ``w`` at cube vertex ``v``.

    Khovanov convention puts ``U_i`` where ``v_j * eps_j == 1``; the
    Khovanov-Seidel convention puts it where ``v_j * eps_j == -1``.
    """
    convention = Convention(convention)
    if len(v) != len(w):
        raise ValueError(f"vertex has length {len(v)}, word has length {len(w)}")
    want = 1 if convention is Convention.KH else -1
    out = []
    for (i, eps), vj in zip(w.letters, v):
        if vj not in (1, -1):
            raise ValueError(f"vertex entries must be +-1, got {vj}")
        out.append(i if vj * eps == want else ID)
    return tuple(out)


def _is_planar(matching: Sequence[int]) -> bool:
    n = len(matching) // 2

    # walk the boundary of the rectangle: bottoms left to right, tops right to left
    def pos(e: int) -> int:
        return e if e < n else 3 * n - 1 - e

    order = sorted(range(2 * n), key=pos)
    stack: list[int] = []
    for e in order:
        partner = matching[e]
        if pos(partner) > pos(e):
            stack.append(e)
        elif not stack or stack.pop() != partner:
            return False
    return True


@dataclass(frozen=True)
class TLDiagram:
    strands: int
    matching: tuple[int, ...]
    circles: int = 0

    def __post_init__(self) -> None:
        n = self.strands
        mt = self.matching
        if len(mt) != 2 * n:
            raise ValueError(f"matching must have {2 * n} entries")
        if any(not 0 <= mt[e] < 2 * n or mt[e] == e or mt[mt[e]] != e for e in range(2 * n)):
            raise ValueError("matching is not a fixed-point-free involution")
        if not _is_planar(mt):
            raise ValueError("matching is not planar")
        if self.circles < 0:
            raise ValueError("negative circle count")

    @classmethod
    def identity(cls, strands: int) -> TLDiagram:
        n = strands
        return cls(n, tuple(list(range(n, 2 * n)) + list(range(n))))

    @classmethod
    def generator(cls, strands: int, i: int) -> TLDiagram:
        """``U_i``: a cap joining bottoms ``i-1, i`` and a cup joining tops ``i-1, i``."""
        n = strands
        if not 1 <= i <= n - 1:
            raise ValueError(f"U_{i} does not exist on {n} strands")
        mt = list(range(n, 2 * n)) + list(range(n))
        mt[i - 1], mt[i] = i, i - 1
        mt[n + i - 1], mt[n + i] = n + i, n + i - 1
        return cls(n, tuple(mt))

    @classmethod
    def letter(cls, strands: int, letter: int) -> TLDiagram:
        return cls.identity(strands) if letter == ID else cls.generator(strands, letter)

    @classmethod
    def from_word(cls, strands: int, letters: Iterable[int]) -> TLDiagram:
        d = cls.identity(strands)
        for x in letters:
            d = compose_tl(d, cls.letter(strands, x))
        return d

    @property
    def m(self) -> int:
        return self.strands - 1

    def same_matching(self, other: TLDiagram) -> bool:
        return self.strands == other.strands and self.matching == other.matching


def compose_tl(a: TLDiagram, b: TLDiagram) -> TLDiagram:
    """Stack ``a`` below ``b``; closed loops formed in the middle add to ``circles``."""
    if a.strands != b.strands:
        raise ValueError(f"strand mismatch: {a.strands} vs {b.strands}")
    n = a.strands
    # nodes: a-bottoms 0..n-1, middle n..2n-1, b-tops 2n..3n-1
    uf = UnionFind(3 * n)
    for e in range(2 * n):
        f = a.matching[e]
        if e < f:
            uf.union(e, f)
        f = b.matching[e]
        if e < f:
            uf.union(e + n, f + n)
    matching = [0] * (2 * n)
    loops = 0
    for members in uf.groups().values():
        outer = [x for x in members if x < n or x >= 2 * n]
        if not outer:
            loops += 1
            continue
        x, y = (p if p < n else p - n for p in outer)
        matching[x], matching[y] = y, x
    return TLDiagram(n, tuple(matching), a.circles + b.circles + loops)


@dataclass(frozen=True)
class ClosureCensus:
    """Components of an annular closure.

    ``component_of[e]`` is the component id of endpoint/node ``e``; ids past the
    last node-carrying component stand for free circles.
    """

    trivial: int
    nontrivial: int
    component_of: tuple[int, ...]
    is_nontrivial: tuple[bool, ...]

    @property
    def components(self) -> int:
        return len(self.is_nontrivial)


def _census(uf: UnionFind, nnodes: int, seam_edges: Sequence[tuple[int, int]], extra_trivial: int) -> ClosureCensus:
    groups = uf.groups()
    roots = sorted(groups)
    cid = {r: k for k, r in enumerate(roots)}
    seam_count = [0] * len(roots)
    for a, _ in seam_edges:
        seam_count[cid[uf.find(a)]] += 1
    flags = [c % 2 == 1 for c in seam_count] + [False] * extra_trivial
    component_of = tuple(cid[uf.find(x)] for x in range(nnodes))
    nontriv = sum(flags)
    return ClosureCensus(len(flags) - nontriv, nontriv, component_of, tuple(flags))


def closure_census(d: TLDiagram) -> ClosureCensus:
    """Components of the annular closure of ``d`` (top ``j`` joined to bottom ``j``).

    A component is nontrivial iff it uses an odd number of closure arcs.
    """
    n = d.strands
    uf = UnionFind(2 * n)
    for e in range(2 * n):
        if e < d.matching[e]:
            uf.union(e, d.matching[e])
    seam = [(n + j, j) for j in range(n)]
    for a, b in seam:
        uf.union(a, b)
    return _census(uf, 2 * n, seam, d.circles)


def stacked_closure(strands: int, letters: Sequence[int]) -> ClosureCensus:
    """Closure components of a TL word kept at full resolution.

    Node ``level * strands + p`` is point ``p`` on level ``level`` where letter
    ``j`` spans levels ``j`` and ``j + 1``; closure arcs join the top level to
    level 0.  Unlike :func:`closure_census` every component, including closed
    loops inside the word, carries node labels, which is what cube edge maps
    need to follow components through a single surgery.
    """
    n = strands
    letters = list(letters) or [ID]
    k = len(letters)
    uf = UnionFind((k + 1) * n)
    for j, x in enumerate(letters):
        lo, hi = j * n, (j + 1) * n
        for p in range(n):
            if x != ID and p in (x - 1, x):
                continue
            uf.union(lo + p, hi + p)
        if x != ID:
            uf.union(lo + x - 1, lo + x)
            uf.union(hi + x - 1, hi + x)
    seam = [(k * n + p, p) for p in range(n)]
    for a, b in seam:
        uf.union(a, b)
    return _census(uf, (k + 1) * n, seam, 0)


def letter_nodes(strands: int, j: int, letter_index: int) -> tuple[int, int, int, int]:
    """The four nodes touched by a crossing at position ``j`` on strands ``i-1, i``."""
    n = strands
    i = letter_index
    return (j * n + i - 1, j * n + i, (j + 1) * n + i - 1, (j + 1) * n + i)
