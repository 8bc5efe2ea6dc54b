"""Hochschild homology of ``A_m`` with coefficients in Khovanov-Seidel cubes.

The main route takes coinvariants ``M / <am - ma>`` vertex by vertex and
computes the homology of the induced complex.  A truncated bar complex gives
an independent check: its horizontal homology should vanish in positive bar
degree, and its degree-0 row, with the induced cube differential, should
reproduce the coinvariant answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from math import comb

from .algebra import AmAlgebra, Bimodule, tensor_product
from .braids import TLDiagram
from .f2 import F2Matrix, GradedComplex, GradedDims, Reducer, bits, homology_dims, rank_of_rows
from .ks import CubeComplex, Vertex


class QuotientError(ValueError):
    """An edge map does not preserve the relation subspace."""


class FeasibilityError(ValueError):
    pass


@dataclass
class CoinvariantQuotient:
    """``M`` modulo a subspace, with the surviving standard basis vectors as quotient basis."""

    module: Bimodule
    relations: Reducer
    basis: tuple[int, ...]  # generator indices of M spanning the quotient
    _pos: dict[int, int] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        self._pos = {g: k for k, g in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, v: int) -> int:
        out = 0
        for g in bits(self.relations.reduce(v)):
            out |= 1 << self._pos[g]
        return out

    def qprofile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.basis:
            q = self.module.qdeg[g]
            out[q] = out.get(q, 0) + 1
        return out

    def projection_matrix(self) -> F2Matrix:
        return F2Matrix(self.module.dim, self.dim, tuple(self.project(1 << g) for g in range(self.module.dim)))


def _quotient(M: Bimodule, rel: Reducer) -> CoinvariantQuotient:
    pivots = rel.pivot_positions()
    return CoinvariantQuotient(M, rel, tuple(g for g in range(M.dim) if g not in pivots))


def commutator_span(M: Bimodule) -> Reducer:
    """Span of ``a*g - g*a`` over basis elements ``a`` of A and ``g`` of M."""
    rel = Reducer()
    for a in range(len(M.algebra)):
        left, right = M.left[a], M.right[a]
        for g in range(M.dim):
            v = left[g] ^ right[g]
            if v:
                rel.add(v)
    return rel


def coinvariant_quotient(M: Bimodule) -> CoinvariantQuotient:
    if M.left is None or M.right is None:
        raise ValueError("coinvariants need actions on both sides")
    return _quotient(M, commutator_span(M))


def _induced_complex(C: CubeComplex, quotients: dict[Vertex, CoinvariantQuotient]) -> GradedComplex:
    G = GradedComplex(arity=2)
    where: dict[tuple[Vertex, int], tuple[tuple[int, int], int]] = {}
    for v, Q in quotients.items():
        vm = C.vertices[v]
        for k, g in enumerate(Q.basis):
            deg = (vm.hshift, vm.module.qdeg[g] + vm.qshift)
            lst = G.basis.setdefault(deg, [])
            where[(v, k)] = (deg, len(lst))
            lst.append((v, vm.module.basis[g]))
            G.shifts[deg] = (vm.hshift, vm.qshift)
    rows: dict[tuple[tuple[int, int], tuple[int, int]], dict[int, int]] = {}
    for (v, u), M in C.edges.items():
        Qv, Qu = quotients[v], quotients[u]
        for r in Qv.relations.pivots.values():
            if Qu.project(M.apply(r)):
                raise QuotientError(f"edge {v} -> {u} does not descend to the quotient")
        for k, g in enumerate(Qv.basis):
            img = Qu.project(M.data[g])
            if not img:
                continue
            sdeg, si = where[(v, k)]
            for t in bits(img):
                tdeg, ti = where[(u, t)]
                slot = rows.setdefault((sdeg, tdeg), {})
                slot[si] = slot.get(si, 0) ^ (1 << ti)
    for (s, t), data in rows.items():
        ns, nt = len(G.basis[s]), len(G.basis[t])
        G.add_map(s, t, F2Matrix(ns, nt, tuple(data.get(i, 0) for i in range(ns))))
    return G


def coinvariant_complex(C: CubeComplex) -> GradedComplex:
    """``Q(M_sigma)`` as an (h, q)-graded complex."""
    return _induced_complex(C, {v: coinvariant_quotient(vm.module) for v, vm in C.vertices.items()})


def hh_via_coinvariants(C: CubeComplex) -> GradedDims:
    """Bigraded dimensions of ``HH(A_m, M_sigma) = H(Q(M_sigma))``."""
    return homology_dims(coinvariant_complex(C))


def closed_form_qprofile(m: int, word: tuple[int, ...]) -> dict[int, int]:
    """Predicted q-profile of ``Q`` of the slot bimodule of a TL word, from diagrams alone.

    Zero if two adjacent letters differ by more than one or the outer letters
    do; otherwise ``<k>`` centred at ``-len(word)``, where ``<k>`` is the
    binomial profile of ``(q^-1 + q)^k`` and ``k`` is the number of closed
    circles of the composed diagram, plus one when the outer letters agree.
    The empty word gives ``m + 1`` classes in degree 0.
    """
    if not word:
        return {0: m + 1}
    n = len(word)
    if any(abs(a - b) > 1 for a, b in zip(word, word[1:])) or abs(word[0] - word[-1]) > 1:
        return {}
    k = TLDiagram.from_word(m + 1, word).circles + (word[0] == word[-1])
    return {-n - k + 2 * j: comb(k, j) for j in range(k + 1)}


# --------------------------------------------------------------------------
# truncated bar complex


def _bar_rows(A: AmAlgebra, M: Bimodule, b: int) -> list[int]:
    """Rows of ``d_b : A^{(x)b} (x) M -> A^{(x)(b-1)} (x) M`` in mixed-radix indexing.

    ``d(a_1 .. a_b, g) = (a_2 .. a_b, g a_1) + sum_i (.. a_i a_{i+1} ..) + (a_1 .. a_{b-1}, a_b g)``
    """
    n, d = len(A), M.dim
    rows = []
    for idx in range(n**b * d):
        g = idx % d
        rest = idx // d
        a = []
        for _ in range(b):
            a.append(rest % n)
            rest //= n
        a.reverse()  # a[0] is the outermost factor a_1

        def encode(seq: list[int], h: int) -> int:
            x = 0
            for s in seq:
                x = x * n + s
            return x * d + h

        r = 0
        for h in bits(M.right[a[0]][g]):
            r ^= 1 << encode(a[1:], h)
        for i in range(b - 1):
            p = A.mul(a[i], a[i + 1])
            if p >= 0:
                r ^= 1 << encode(a[:i] + [p] + a[i + 2 :], g)
        for h in bits(M.left[a[-1]][g]):
            r ^= 1 << encode(a[:-1], h)
        rows.append(r)
    return rows


def _bar_qdeg(A: AmAlgebra, M: Bimodule, b: int) -> list[int]:
    n, d = len(A), M.dim
    out = []
    for idx in range(n**b * d):
        q = M.qdeg[idx % d]
        rest = idx // d
        for _ in range(b):
            q += A.qdeg[rest % n]
            rest //= n
        out.append(q)
    return out


def bar_homology(M: Bimodule, depth: int, limit: int = 500_000) -> dict[int, dict[int, int]]:
    """``HH_b(A_m, M)`` per internal degree for bar degrees ``0..depth-2``.

    Bar degree ``depth-1`` is built only to compute the outgoing rank of
    degree ``depth-2`` and is not reported.
    """
    A = M.algebra
    if depth < 2:
        raise ValueError("depth must be at least 2")
    size = len(A) ** (depth - 1) * M.dim
    if size > limit:
        raise FeasibilityError(f"bar column of dimension {size} exceeds the limit {limit}")
    qdegs = [_bar_qdeg(A, M, b) for b in range(depth)]
    ranks: dict[int, dict[int, int]] = {}
    for b in range(1, depth):
        rows = _bar_rows(A, M, b)
        by_q: dict[int, list[int]] = {}
        for r, q in zip(rows, qdegs[b]):
            if r:
                by_q.setdefault(q, []).append(r)
        ranks[b] = {q: rank_of_rows(rs) for q, rs in by_q.items()}
    out: dict[int, dict[int, int]] = {}
    for b in range(depth - 1):
        sizes: dict[int, int] = {}
        for q in qdegs[b]:
            sizes[q] = sizes.get(q, 0) + 1
        dims = {}
        for q, s in sizes.items():
            h = s - ranks.get(b, {}).get(q, 0) - ranks[b + 1].get(q, 0)
            if h:
                dims[q] = h
        out[b] = dims
    return out


def bar_cokernel(M: Bimodule) -> CoinvariantQuotient:
    """``HH_0`` as the cokernel of the first bar differential ``A (x) M -> M``."""
    return _quotient(M, Reducer(_bar_rows(M.algebra, M, 1)))


@dataclass
class BarTruncation:
    depth: int
    horizontal: dict[int, GradedDims]  # bar degree -> (h, q) dims, vertex by vertex
    row0: GradedDims  # homology of the bar-degree-0 row under the induced cube differential

    @property
    def trusted_degrees(self) -> range:
        return range(self.depth - 1)

    @property
    def collapsed(self) -> bool:
        """True when every trusted positive bar degree vanishes."""
        return all(self.horizontal[b].total() == 0 for b in self.trusted_degrees if b > 0)


def bar_hh_truncated(C: CubeComplex, depth: int, limit: int = 500_000) -> BarTruncation:
    """Bar-complex check of the Hochschild computation for a cube.

    For every vertex the horizontal homology ``HH_b(A_m, N_v)`` is computed for
    ``b < depth - 1``.  The bar-degree-0 row is the cokernel of the first bar
    differential; its homology under the induced cube differential is returned
    as ``row0`` and equals ``HH(A_m, M_sigma)`` whenever ``collapsed`` holds.
    """
    A = C.algebra
    if depth < 2:
        raise ValueError("depth must be at least 2")
    worst = max((len(A) ** (depth - 1) * vm.module.dim for vm in C.vertices.values()), default=0)
    if worst > limit:
        raise FeasibilityError(f"bar column of dimension {worst} exceeds the limit {limit}")
    horizontal: dict[int, dict[tuple[int, int], int]] = {b: {} for b in range(depth - 1)}
    for vm in C.vertices.values():
        for b, dims in bar_homology(vm.module, depth, limit).items():
            for q, d in dims.items():
                key = (vm.hshift, q + vm.qshift)
                horizontal[b][key] = horizontal[b].get(key, 0) + d
    quotients = {v: bar_cokernel(vm.module) for v, vm in C.vertices.items()}
    row0 = homology_dims(_induced_complex(C, quotients))
    return BarTruncation(depth, {b: GradedDims(d) for b, d in horizontal.items()}, row0)


# --------------------------------------------------------------------------
# cyclic symmetry


@dataclass
class SwapReport:
    dims_left: dict[int, int]
    dims_right: dict[int, int]
    swap_rank: int

    @property
    def ok(self) -> bool:
        n = sum(self.dims_left.values())
        return self.dims_left == self.dims_right and self.swap_rank == n


def cyclic_swap(M: Bimodule, N: Bimodule) -> SwapReport:
    """Compare ``Q(M (x)_A N)`` with ``Q(N (x)_A M)`` through ``[m (x) n] -> [n (x) m]``."""
    MN, NM = tensor_product(M, N), tensor_product(N, M)
    Q1, Q2 = coinvariant_quotient(MN.module), coinvariant_quotient(NM.module)
    rows = []
    for g in Q1.basis:
        i, j = MN.lift(g)
        if MN.embed(i, j) != 1 << g:
            raise AssertionError("tensor lift does not represent its generator")
        image = Q2.project(NM.embed(j, i))
        # the swap preserves internal degree
        for k in bits(image):
            if NM.module.qdeg[Q2.basis[k]] != MN.module.qdeg[g]:
                raise AssertionError("swap is not homogeneous")
        rows.append(image)
    return SwapReport(Q1.qprofile(), Q2.qprofile(), rank_of_rows(rows))


def cyclic_swap_check(M: Bimodule, N: Bimodule) -> bool:
    return cyclic_swap(M, N).ok
