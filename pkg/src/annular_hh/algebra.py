"""The zigzag algebra ``A_m`` on the line quiver and bimodules over it.

Paths are labelled by the vertices they visit, ``(i|j|k)``, and multiply by
concatenation.  The internal grading is minus the path length.  In ``A_m``
every nonzero path has length at most two and the only length-two paths are
the loops ``(i|i-1|i) = (i|i+1|i)`` at vertices ``1..m``; the loop at vertex
0 is zero.

A bimodule whose underlying space is a tensor product of slots, one path per
slot, is described by a *TL word* ``(a_1, ..., a_n)``:

    P_{a_1} (x) a_1 A a_2 (x) ... (x) a_{n-1} A a_n (x) _{a_n}P

which is ``(P_{a_1} (x) _{a_1}P) (x)_A ... (x)_A (P_{a_n} (x) _{a_n}P)`` with each
``_aP (x)_A P_b`` contracted to the paths from ``a`` to ``b``.  The empty
word is ``A_m`` itself.  Generators are tuples of basis indices, one per slot.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .f2 import Reducer, bits


@dataclass(frozen=True, order=True)
class PathElement:
    kind: str  # "idem" | "edge" | "loop"
    source: int
    target: int

    def __post_init__(self) -> None:
        if self.kind == "idem" and self.source != self.target:
            raise ValueError("idempotent must start and end at the same vertex")
        if self.kind == "edge" and abs(self.source - self.target) != 1:
            raise ValueError("edges join adjacent vertices")
        if self.kind == "loop" and (self.source != self.target or self.source < 1):
            raise ValueError("loops live at vertices >= 1")
        if self.kind not in ("idem", "edge", "loop"):
            raise ValueError(f"unknown path kind {self.kind!r}")

    @property
    def length(self) -> int:
        return {"idem": 0, "edge": 1, "loop": 2}[self.kind]

    @property
    def qdeg(self) -> int:
        return -self.length

    @property
    def vertices(self) -> tuple[int, ...]:
        if self.kind == "idem":
            return (self.source,)
        if self.kind == "edge":
            return (self.source, self.target)
        return (self.source, self.source - 1, self.source)

    def __str__(self) -> str:
        return "(" + "|".join(map(str, self.vertices)) + ")"


def idem(i: int) -> PathElement:
    return PathElement("idem", i, i)


def edge(i: int, j: int) -> PathElement:
    return PathElement("edge", i, j)


def loop(i: int) -> PathElement:
    return PathElement("loop", i, i)


def _product(p: PathElement, q: PathElement) -> PathElement | None:
    if p.target != q.source:
        return None
    if p.kind == "idem":
        return q
    if q.kind == "idem":
        return p
    if p.kind == "edge" and q.kind == "edge" and q.target == p.source:
        # (a|b|a): the loop at a, zero at vertex 0
        return loop(p.source) if p.source >= 1 else None
    return None


class AmAlgebra:
    """``A_m`` with a dense multiplication table on its ``4m + 1`` basis paths."""

    def __init__(self, m: int) -> None:
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        self.m = m
        basis = [idem(i) for i in range(m + 1)]
        for i in range(m):
            basis += [edge(i, i + 1), edge(i + 1, i)]
        basis += [loop(i) for i in range(1, m + 1)]
        self.basis: tuple[PathElement, ...] = tuple(basis)
        self.index = {p: k for k, p in enumerate(self.basis)}
        n = len(basis)
        table = [[-1] * n for _ in range(n)]
        for a, p in enumerate(basis):
            for b, q in enumerate(basis):
                r = _product(p, q)
                if r is not None:
                    table[a][b] = self.index[r]
        self.table = tuple(tuple(row) for row in table)
        self.qdeg = tuple(p.qdeg for p in basis)
        self.source = tuple(p.source for p in basis)
        self.target = tuple(p.target for p in basis)

    def __repr__(self) -> str:
        return f"AmAlgebra(m={self.m})"

    def __len__(self) -> int:
        return len(self.basis)

    def idem(self, i: int) -> int:
        return self.index[idem(i)]

    def edge(self, i: int, j: int) -> int:
        return self.index[edge(i, j)]

    def loop(self, i: int) -> int:
        return self.index[loop(i)]

    def mul(self, a: int, b: int) -> int:
        """Index of the product of basis elements ``a`` and ``b``, or -1 for zero."""
        return self.table[a][b]

    @cached_property
    def starting_at(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(k for k, p in enumerate(self.basis) if p.source == i) for i in range(self.m + 1))

    @cached_property
    def ending_at(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(k for k, p in enumerate(self.basis) if p.target == i) for i in range(self.m + 1))

    def paths(self, source: int | None, target: int | None) -> tuple[int, ...]:
        """Basis paths with the given endpoints; ``None`` leaves an end free."""
        return tuple(
            k
            for k, p in enumerate(self.basis)
            if (source is None or p.source == source) and (target is None or p.target == target)
        )

    def unit(self) -> int:
        """The identity ``sum_i (i)`` as a bitset over the basis."""
        out = 0
        for i in range(self.m + 1):
            out |= 1 << self.idem(i)
        return out


@lru_cache(maxsize=None)
def build_am(m: int) -> AmAlgebra:
    return AmAlgebra(m)


def multiply(A: AmAlgebra, p: PathElement, q: PathElement) -> frozenset[PathElement]:
    """Product ``p * q`` as an F_2 combination (a set of basis paths)."""
    if p not in A.index or q not in A.index:
        raise ValueError(f"{p} or {q} is not a basis element of A_{A.m}")
    r = A.mul(A.index[p], A.index[q])
    return frozenset() if r < 0 else frozenset({A.basis[r]})


# --------------------------------------------------------------------------
# independent construction: free path algebra modulo the relations


def _quiver_paths(m: int, length: int) -> list[tuple[int, ...]]:
    out = [(v,) for v in range(m + 1)]
    for _ in range(length):
        out = [p + (p[-1] + d,) for p in out for d in (-1, 1) if 0 <= p[-1] + d <= m]
    return out


def _relations(m: int) -> list[list[tuple[int, ...]]]:
    rels: list[list[tuple[int, ...]]] = [[(0, 1, 0)]]
    for i in range(1, m):
        rels.append([(i - 1, i, i + 1)])
        rels.append([(i + 1, i, i - 1)])
        rels.append([(i, i + 1, i), (i, i - 1, i)])
    return rels


@dataclass
class PathQuotient:
    """The path algebra of the line quiver modulo the zigzag relations, up to a length cutoff."""

    m: int
    max_length: int
    paths: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)
    index: dict[tuple[int, ...], int] = field(default_factory=dict)
    ideal: dict[int, Reducer] = field(default_factory=dict)

    def dims(self) -> dict[int, int]:
        return {L: len(self.paths[L]) - self.ideal[L].rank for L in self.paths}

    def normal_form(self, path: tuple[int, ...]) -> int:
        L = len(path) - 1
        return self.ideal[L].reduce(1 << self.index[path])


def path_algebra_quotient(m: int, max_length: int = 4) -> PathQuotient:
    """Enumerate paths of ``Gamma_m`` up to ``max_length`` and quotient by the two-sided relation ideal."""
    Q = PathQuotient(m, max_length)
    for L in range(max_length + 1):
        Q.paths[L] = _quiver_paths(m, L)
        for k, p in enumerate(Q.paths[L]):
            Q.index[p] = k
        Q.ideal[L] = Reducer()
    rels = _relations(m)
    for rel in rels:
        a, b = rel[0][0], rel[0][-1]
        for lu in range(max_length - 1):
            for lv in range(max_length - 1 - lu):
                for u in Q.paths[lu]:
                    if u[-1] != a:
                        continue
                    for v in Q.paths[lv]:
                        if v[0] != b:
                            continue
                        vec = 0
                        for r in rel:
                            vec ^= 1 << Q.index[u[:-1] + r + v[1:]]
                        Q.ideal[lu + lv + 2].add(vec)
    return Q


def path_enumeration_dimension(m: int, max_length: int = 4) -> int:
    """Dimension of ``A_m`` computed from the free path algebra; lengths above two must vanish."""
    return sum(path_algebra_quotient(m, max_length).dims().values())


# --------------------------------------------------------------------------
# bimodules


Combination = int  # bitset over a bimodule basis


@dataclass(eq=False)
class Bimodule:
    """A finite-dimensional graded bimodule over ``A_m`` given by action tables.

    ``left[a][g]`` is ``a * g`` and ``right[a][g]`` is ``g * a`` as bitsets over
    the basis.  A side whose table is ``None`` is acted on by the ground field
    only (used for one-sided projectives); its idempotent entries are ``None``.
    ``word`` is set for slot bimodules (see the module docstring).
    """

    algebra: AmAlgebra
    basis: tuple
    qdeg: tuple[int, ...]
    left_idem: tuple[int | None, ...]
    right_idem: tuple[int | None, ...]
    left: tuple[tuple[Combination, ...], ...] | None
    right: tuple[tuple[Combination, ...], ...] | None
    word: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def position(self) -> dict:
        return {g: k for k, g in enumerate(self.basis)}

    def qprofile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for q in self.qdeg:
            out[q] = out.get(q, 0) + 1
        return out

    def act_left(self, a: int, v: Combination) -> Combination:
        if self.left is None:
            raise ValueError("left side is the ground field")
        row = self.left[a]
        out = 0
        for g in bits(v):
            out ^= row[g]
        return out

    def act_right(self, v: Combination, a: int) -> Combination:
        if self.right is None:
            raise ValueError("right side is the ground field")
        row = self.right[a]
        out = 0
        for g in bits(v):
            out ^= row[g]
        return out


def _slot_ranges(A: AmAlgebra, word: Sequence[int]) -> list[tuple[int, ...]]:
    if not word:
        return [tuple(range(len(A)))]
    ranges = [A.paths(None, word[0])]
    for a, b in zip(word, word[1:]):
        ranges.append(A.paths(a, b))
    ranges.append(A.paths(word[-1], None))
    return ranges


def slot_basis(A: AmAlgebra, word: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*_slot_ranges(A, word)))


def _one_hot(position: dict, g) -> int:
    k = position.get(g)
    return 0 if k is None else 1 << k


def tl_bimodule(A: AmAlgebra, word: Sequence[int]) -> Bimodule:
    """The slot bimodule of a TL word (``A_m`` for the empty word)."""
    word = tuple(word)
    for a in word:
        if not 1 <= a <= A.m:
            raise ValueError(f"TL index {a} out of range 1..{A.m}")
    basis = tuple(slot_basis(A, word))
    position = {g: k for k, g in enumerate(basis)}
    qdeg = tuple(sum(A.qdeg[s] for s in g) for g in basis)
    left_idem = tuple(A.source[g[0]] for g in basis)
    right_idem = tuple(A.target[g[-1]] for g in basis)
    left = []
    right = []
    for a in range(len(A)):
        lrow = []
        rrow = []
        for g in basis:
            p = A.mul(a, g[0])
            lrow.append(0 if p < 0 else _one_hot(position, (p,) + g[1:]))
            q = A.mul(g[-1], a)
            rrow.append(0 if q < 0 else _one_hot(position, g[:-1] + (q,)))
        left.append(tuple(lrow))
        right.append(tuple(rrow))
    return Bimodule(A, basis, qdeg, left_idem, right_idem, tuple(left), tuple(right), word)


def regular_bimodule(A: AmAlgebra) -> Bimodule:
    return tl_bimodule(A, ())


def projective_bimodule(A: AmAlgebra, i: int) -> Bimodule:
    """``P_i (x) _iP`` with its outer actions."""
    if not 0 <= i <= A.m:
        raise ValueError(f"vertex {i} out of range 0..{A.m}")
    if i == 0:
        # P_0 (x) _0P is not a TL object; build it directly from the slot rule
        return _outer_product(A, A.paths(None, 0), A.paths(0, None))
    return tl_bimodule(A, (i,))


def _outer_product(A: AmAlgebra, lefts: Sequence[int], rights: Sequence[int]) -> Bimodule:
    basis = tuple(itertools.product(lefts, rights))
    position = {g: k for k, g in enumerate(basis)}
    left = tuple(
        tuple(0 if A.mul(a, p) < 0 else _one_hot(position, (A.mul(a, p), q)) for p, q in basis) for a in range(len(A))
    )
    right = tuple(
        tuple(0 if A.mul(q, a) < 0 else _one_hot(position, (p, A.mul(q, a))) for p, q in basis) for a in range(len(A))
    )
    return Bimodule(
        A,
        basis,
        tuple(A.qdeg[p] + A.qdeg[q] for p, q in basis),
        tuple(A.source[p] for p, _ in basis),
        tuple(A.target[q] for _, q in basis),
        left,
        right,
    )


def left_projective(A: AmAlgebra, i: int) -> Bimodule:
    """``P_i``: paths ending at ``i``, a left module (ground field on the right)."""
    basis = tuple((p,) for p in A.paths(None, i))
    position = {g: k for k, g in enumerate(basis)}
    left = tuple(
        tuple(0 if A.mul(a, g[0]) < 0 else _one_hot(position, (A.mul(a, g[0]),)) for g in basis) for a in range(len(A))
    )
    return Bimodule(
        A, basis, tuple(A.qdeg[g[0]] for g in basis), tuple(A.source[g[0]] for g in basis), (None,) * len(basis), left, None
    )


def right_projective(A: AmAlgebra, i: int) -> Bimodule:
    """``_iP``: paths starting at ``i``, a right module (ground field on the left)."""
    basis = tuple((p,) for p in A.paths(i, None))
    position = {g: k for k, g in enumerate(basis)}
    right = tuple(
        tuple(0 if A.mul(g[0], a) < 0 else _one_hot(position, (A.mul(g[0], a),)) for g in basis) for a in range(len(A))
    )
    return Bimodule(
        A, basis, tuple(A.qdeg[g[0]] for g in basis), (None,) * len(basis), tuple(A.target[g[0]] for g in basis), None, right
    )


# --------------------------------------------------------------------------
# tensor products over A_m


@dataclass
class TensorProduct:
    """``M (x)_A N`` with maps to and from pure tensors of basis elements."""

    module: Bimodule
    embed: Callable[[int, int], Combination]  # (m, n) basis indices -> class of m (x) n
    lift: Callable[[int], tuple[int, int]]  # generator -> a pure tensor representing it


def _join(A: AmAlgebra, g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...] | None:
    p = A.mul(g[-1], h[0])
    if p < 0:
        return None
    return g[:-1] + (p,) + h[1:]


def _slot_tensor(M: Bimodule, N: Bimodule) -> TensorProduct:
    A = M.algebra
    T = tl_bimodule(A, M.word + N.word)
    pos = T.position
    split = len(M.word)  # index of the joint slot in T's tuples
    first_n = N.word[0] if N.word else None

    def embed(i: int, j: int) -> Combination:
        t = _join(A, M.basis[i], N.basis[j])
        return 0 if t is None else _one_hot(pos, t)

    def lift(k: int) -> tuple[int, int]:
        t = T.basis[k]
        joint = t[split]
        m_part = t[:split] + (joint,)
        right_end = first_n if first_n is not None else A.target[joint]
        n_part = (A.idem(right_end),) + t[split + 1 :]
        return M.position[m_part], N.position[n_part]

    return TensorProduct(T, embed, lift)


def generic_tensor(M: Bimodule, N: Bimodule) -> TensorProduct:
    """``M (x)_A N`` as the quotient of ``M (x)_F N`` by ``ma (x) n - m (x) an``.

    Works for any action tables; used as an oracle for the slot construction.
    """
    A = M.algebra
    if M.right is None or N.left is None:
        raise ValueError("tensor over A needs a right action on M and a left action on N")
    pairs = [(i, j) for i in range(len(M)) for j in range(len(N)) if M.right_idem[i] == N.left_idem[j]]
    pidx = {p: k for k, p in enumerate(pairs)}

    def pure(i: int, j: int) -> int:
        k = pidx.get((i, j))
        return 0 if k is None else 1 << k

    def tensor(u: int, v: int) -> int:
        out = 0
        for i in bits(u):
            for j in bits(v):
                out ^= pure(i, j)
        return out

    rel = Reducer()
    for a in range(len(A)):
        for i in range(len(M)):
            ma = M.right[a][i]
            for j in range(len(N)):
                an = N.left[a][j]
                vec = tensor(ma, 1 << j) ^ tensor(1 << i, an)
                if vec:
                    rel.add(vec)
    pivots = rel.pivot_positions()
    free = [k for k in range(len(pairs)) if k not in pivots]
    fpos = {k: r for r, k in enumerate(free)}

    def project(vec: int) -> int:
        out = 0
        for k in bits(rel.reduce(vec)):
            out |= 1 << fpos[k]
        return out

    basis = tuple(pairs[k] for k in free)
    qdeg = tuple(M.qdeg[i] + N.qdeg[j] for i, j in basis)
    left = None
    if M.left is not None:
        left = tuple(tuple(project(tensor(M.left[a][i], 1 << j)) for i, j in basis) for a in range(len(A)))
    right = None
    if N.right is not None:
        right = tuple(tuple(project(tensor(1 << i, N.right[a][j])) for i, j in basis) for a in range(len(A)))
    module = Bimodule(
        A,
        basis,
        qdeg,
        tuple(M.left_idem[i] for i, _ in basis),
        tuple(N.right_idem[j] for _, j in basis),
        left,
        right,
    )
    return TensorProduct(module, lambda i, j: project(pure(i, j)), lambda k: basis[k])


def tensor_product(M: Bimodule, N: Bimodule) -> TensorProduct:
    if M.word is not None and N.word is not None:
        return _slot_tensor(M, N)
    return generic_tensor(M, N)


def tensor_over_am(M: Bimodule, N: Bimodule) -> Bimodule:
    """``M (x)_A N``; slot bimodules concatenate their TL words."""
    return tensor_product(M, N).module


def is_bimodule(M: Bimodule) -> bool:
    """Check idempotent compatibility, associativity of both actions, and that they commute."""
    A = M.algebra
    n = len(A)
    for a in range(n):
        for b in range(n):
            ab = A.mul(a, b)
            for g in range(M.dim):
                v = 1 << g
                if M.left is not None:
                    lhs = M.act_left(a, M.act_left(b, v))
                    rhs = 0 if ab < 0 else M.act_left(ab, v)
                    if lhs != rhs:
                        return False
                if M.right is not None:
                    lhs = M.act_right(M.act_right(v, a), b)
                    rhs = 0 if ab < 0 else M.act_right(v, ab)
                    if lhs != rhs:
                        return False
                if M.left is not None and M.right is not None:
                    if M.act_right(M.act_left(a, v), b) != M.act_left(a, M.act_right(v, b)):
                        return False
    for g in range(M.dim):
        v = 1 << g
        for i in range(A.m + 1):
            e = A.idem(i)
            if M.left is not None and M.act_left(e, v) != (v if M.left_idem[g] == i else 0):
                return False
            if M.right is not None and M.act_right(v, e) != (v if M.right_idem[g] == i else 0):
                return False
        for a in range(n):
            for side in ("left", "right"):
                table = getattr(M, side)
                if table is None:
                    continue
                for h in bits(table[a][g]):
                    if M.qdeg[h] != M.qdeg[g] + A.qdeg[a]:
                        return False
    return True
