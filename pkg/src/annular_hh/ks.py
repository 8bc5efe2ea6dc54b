"""Khovanov-Seidel bimodule complexes of braid words as cubes of resolutions.

Vertex ``v`` of the cube of a word ``sigma_{i_1}^{e_1} ... sigma_{i_k}^{e_k}``
carries the slot bimodule of the TL word made of the ``i_j`` with
``v_j * e_j == -1`` (copies of ``A_m`` are absorbed), placed in homological
degree ``#{v_j = +1}`` with internal shift ``#{v_j = +1} + #{v_j * e_j = -1}``.

Edges flip one coordinate from -1 to +1.  For a positive letter this removes
a ``P_i (x) _iP`` factor by multiplication (``beta_i``); for a negative letter
it inserts one through ``gamma_i(1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import AmAlgebra, Bimodule, build_am, tl_bimodule
from .braids import BraidWord, Convention, resolve
from .f2 import F2Matrix, GradedComplex, IllFormedComplex, bits, verify_complex

Vertex = tuple[int, ...]


@dataclass(frozen=True)
class VertexModule:
    vertex: Vertex
    word: tuple[int, ...]
    module: Bimodule
    hshift: int
    qshift: int


@dataclass
class CubeComplex:
    word: BraidWord
    algebra: AmAlgebra
    vertices: dict[Vertex, VertexModule] = field(default_factory=dict)
    edges: dict[tuple[Vertex, Vertex], F2Matrix] = field(default_factory=dict)
    # which letter position each edge flips
    edge_position: dict[tuple[Vertex, Vertex], int] = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.algebra.m


def gamma_terms(A: AmAlgebra, i: int) -> list[tuple[int, int]]:
    """Pure tensors ``(x, y)`` whose sum is ``gamma_i(1)`` in ``P_i (x) _iP``."""
    terms = [(A.edge(i - 1, i), A.edge(i, i - 1))]
    if i + 1 <= A.m:
        terms.append((A.edge(i + 1, i), A.edge(i, i + 1)))
    terms.append((A.idem(i), A.loop(i)))
    terms.append((A.loop(i), A.idem(i)))
    return terms


def vertex_shifts(w: BraidWord, v: Vertex) -> tuple[int, int]:
    """Homological and internal shift of a cube vertex."""
    h = sum(1 for x in v if x == 1)
    tl = sum(1 for x, eps in zip(v, w.signs) if x * eps == -1)
    return h, h + tl


def _beta_image(A: AmAlgebra, g: tuple[int, ...], t: int) -> tuple[int, ...] | None:
    p = A.mul(g[t], g[t + 1])
    if p < 0:
        return None
    return g[:t] + (p,) + g[t + 2 :]


def _gamma_images(A: AmAlgebra, g: tuple[int, ...], t: int, new_word: tuple[int, ...]) -> list[tuple[int, ...]]:
    a = new_word[t]
    right_end = new_word[t + 1] if t + 1 < len(new_word) else None
    out = []
    s = g[t]
    for x, y in gamma_terms(A, a):
        left = A.mul(s, x)
        if left < 0:
            continue
        if right_end is not None and A.target[y] != right_end:
            continue
        out.append(g[:t] + (left, y) + g[t + 1 :])
    return out


def ks_complex(A: AmAlgebra, w: BraidWord, prune: bool = True) -> CubeComplex:
    """The cube of resolutions of the Khovanov-Seidel complex of ``w``."""
    if w.m != A.m:
        raise ValueError(f"word lives on {w.strands} strands but the algebra is A_{A.m}")
    C = CubeComplex(w, A)
    k = len(w)
    signs = w.signs
    for v in itertools.product((-1, 1), repeat=k):
        letters = resolve(w, v, Convention.KS)
        word = tuple(x for x in letters if x)
        module = tl_bimodule(A, word)
        if prune and module.dim == 0:
            continue
        h, q = vertex_shifts(w, v)
        C.vertices[v] = VertexModule(v, word, module, h, q)
    for v, src in C.vertices.items():
        for j in range(k):
            if v[j] != -1:
                continue
            u = v[:j] + (1,) + v[j + 1 :]
            tgt = C.vertices.get(u)
            if tgt is None:
                continue
            # position among the TL factors of whichever end carries P_{i_j}
            carrier = src if signs[j] > 0 else tgt
            t = sum(1 for jj in range(j) if carrier.vertex[jj] * signs[jj] == -1)
            C.edges[(v, u)] = edge_matrix(A, src, tgt, t, signs[j])
            C.edge_position[(v, u)] = j
    return C


def edge_matrix(A: AmAlgebra, src: VertexModule, tgt: VertexModule, t: int, sign: int) -> F2Matrix:
    """``Id (x) .. (x) beta/gamma (x) .. (x) Id`` acting on TL factor ``t`` (0-based)."""
    pos = tgt.module.position
    rows = []
    for g in src.module.basis:
        if sign > 0:
            img = _beta_image(A, g, t)
            images = [] if img is None else [img]
        else:
            images = _gamma_images(A, g, t, tgt.word)
        r = 0
        for im in images:
            r ^= 1 << pos[im]
        rows.append(r)
    return F2Matrix(src.module.dim, tgt.module.dim, tuple(rows))


def elementary_cone(A: AmAlgebra, i: int, sign: int) -> CubeComplex:
    """The two-term complex of a single generator ``sigma_i^{sign}``."""
    if not 1 <= i <= A.m:
        raise ValueError(f"index {i} out of range 1..{A.m}")
    return ks_complex(A, BraidWord(A.m + 1, ((i, sign),)))


def ks_complex_for(w: BraidWord) -> CubeComplex:
    return ks_complex(build_am(w.m), w)


def flatten(C: CubeComplex) -> GradedComplex:
    """Totalize the cube into an (h, q)-graded complex; raises if d∘d != 0."""
    G = GradedComplex(arity=2)
    where: dict[tuple[Vertex, int], tuple[tuple[int, int], int]] = {}
    for v, vm in C.vertices.items():
        for g, q in enumerate(vm.module.qdeg):
            deg = (vm.hshift, q + vm.qshift)
            lst = G.basis.setdefault(deg, [])
            where[(v, g)] = (deg, len(lst))
            lst.append((v, vm.module.basis[g]))
            G.shifts[deg] = (vm.hshift, vm.qshift)
    rows: dict[tuple[tuple[int, int], tuple[int, int]], dict[int, int]] = {}
    for (v, u), M in C.edges.items():
        for g, r in enumerate(M.data):
            if not r:
                continue
            sdeg, si = where[(v, g)]
            for h in bits(r):
                tdeg, ti = where[(u, h)]
                slot = rows.setdefault((sdeg, tdeg), {})
                slot[si] = slot.get(si, 0) ^ (1 << ti)
    for (s, t), data in rows.items():
        ns, nt = len(G.basis[s]), len(G.basis[t])
        G.add_map(s, t, F2Matrix(ns, nt, tuple(data.get(i, 0) for i in range(ns))))
    if not verify_complex(G):
        raise IllFormedComplex("Khovanov-Seidel cube does not square to zero")
    return G


def faces_commute(C: CubeComplex) -> bool:
    """Every square face of the cube commutes over F_2."""
    k = len(C.word)
    for v in C.vertices:
        zeros = [j for j in range(k) if v[j] == -1]
        for a, b in itertools.combinations(zeros, 2):
            va = v[:a] + (1,) + v[a + 1 :]
            vb = v[:b] + (1,) + v[b + 1 :]
            vab = va[:b] + (1,) + va[b + 1 :]
            if vab not in C.vertices:
                continue
            n_src, n_tgt = C.vertices[v].module.dim, C.vertices[vab].module.dim
            total = F2Matrix.zeros(n_src, n_tgt)
            for mid in (va, vb):
                if mid in C.vertices:
                    total = total + C.edges[(v, mid)] @ C.edges[(mid, vab)]
            if not total.is_zero():
                return False
    return True


def edges_homogeneous(C: CubeComplex) -> bool:
    """Edge maps have internal degree 0 after the vertex shifts."""
    for (v, u), M in C.edges.items():
        src, tgt = C.vertices[v], C.vertices[u]
        for g, r in enumerate(M.data):
            for h in bits(r):
                if src.module.qdeg[g] + src.qshift != tgt.module.qdeg[h] + tgt.qshift:
                    return False
    return True
