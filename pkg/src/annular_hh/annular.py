"""Sutured annular Khovanov complexes of braid closures over F_2.

Generators are enhanced states: a cube vertex together with a label
``+1`` (Plus, ``1`` in ``F[x]/x^2``) or ``-1`` (Minus, ``x``) on every
component of the resolved annular closure.  With ``n+``/``n-`` the numbers of
positive/negative letters of the resolved word and ``r`` the number of
``+1`` coordinates of the vertex,

    h = r - n-
    q = r + n+ - 2 n- + #Plus - #Minus
    f = orientation * (#Plus - #Minus over nontrivial components)

where ``orientation = +1`` reads Plus as counter-clockwise.  Only ``f``
depends on the orientation convention.  The differential
is the usual merge/split; its annular associated graded keeps the terms that
preserve ``f`` (and ``q``).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field

from .braids import BraidWord, ClosureCensus, Convention, letter_nodes, resolve, stacked_closure
from .f2 import F2Matrix, GradedComplex, GradedDims, bits, homology_dims

PLUS, MINUS = 1, -1


class SurgeryError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnhancedState:
    vertex: tuple[int, ...]
    census: ClosureCensus
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != self.census.components:
            raise ValueError("one label per closure component")


def state_gradings(w: BraidWord, s: EnhancedState, orientation: int = 1) -> tuple[int, int, int]:
    if len(s.vertex) != len(w):
        raise ValueError("state does not belong to this word")
    r = sum(1 for x in s.vertex if x == 1)
    h = r - w.n_minus
    deg = sum(s.labels)
    f = sum(lab for lab, nt in zip(s.labels, s.census.is_nontrivial) if nt)
    q = r + w.n_plus - 2 * w.n_minus + deg
    return h, q, orientation * f


@dataclass
class FilteredComplex:
    """Enhanced states with (h, q, f) gradings and the full Khovanov differential."""

    word: BraidWord
    orientation: int
    states: list[EnhancedState] = field(default_factory=list)
    gradings: list[tuple[int, int, int]] = field(default_factory=list)
    differential: list[int] = field(default_factory=list)  # row i: image of state i

    def __len__(self) -> int:
        return len(self.states)

    def matrix(self) -> F2Matrix:
        n = len(self.states)
        return F2Matrix(n, n, tuple(self.differential))

    def graded_part(self) -> list[int]:
        """Rows restricted to terms preserving both q and f."""
        out = []
        for i, r in enumerate(self.differential):
            _, q, f = self.gradings[i]
            keep = 0
            for j in bits(r):
                if self.gradings[j][1] == q and self.gradings[j][2] == f:
                    keep |= 1 << j
            out.append(keep)
        return out

    def squares_to_zero(self, graded: bool = False) -> bool:
        rows = self.graded_part() if graded else self.differential
        for r in rows:
            acc = 0
            for j in bits(r):
                acc ^= rows[j]
            if acc:
                return False
        return True

    def max_f_increase(self) -> int:
        """Largest ``f(target) - f(source)`` over differential terms (``-inf`` if none)."""
        best = float("-inf")
        for i, r in enumerate(self.differential):
            for j in bits(r):
                best = max(best, self.gradings[j][2] - self.gradings[i][2])
        return best  # type: ignore[return-value]

    def raises_h_by_one(self) -> bool:
        return all(
            self.gradings[j][0] == self.gradings[i][0] + 1 for i, r in enumerate(self.differential) for j in bits(r)
        )

    def preserves_q(self) -> bool:
        return all(
            self.gradings[j][1] == self.gradings[i][1] for i, r in enumerate(self.differential) for j in bits(r)
        )

    def chain_dims(self) -> GradedDims:
        out: dict[tuple[int, int, int], int] = {}
        for g in self.gradings:
            out[g] = out.get(g, 0) + 1
        return GradedDims(out)

    def associated_graded(self) -> GradedComplex:
        G = GradedComplex(arity=3)
        where = []
        for i, deg in enumerate(self.gradings):
            lst = G.basis.setdefault(deg, [])
            where.append(len(lst))
            lst.append(i)
        rows: dict[tuple, dict[int, int]] = {}
        for i, r in enumerate(self.graded_part()):
            s = self.gradings[i]
            for j in bits(r):
                t = self.gradings[j]
                slot = rows.setdefault((s, t), {})
                slot[where[i]] = slot.get(where[i], 0) ^ (1 << where[j])
        for (s, t), data in rows.items():
            ns, nt = len(G.basis[s]), len(G.basis[t])
            G.add_map(s, t, F2Matrix(ns, nt, tuple(data.get(k, 0) for k in range(ns))))
        return G


def _labelings(census: ClosureCensus, orientation: int, f_level: int | None) -> Iterable[tuple[int, ...]]:
    for labels in itertools.product((PLUS, MINUS), repeat=census.components):
        if f_level is not None:
            f = orientation * sum(lab for lab, nt in zip(labels, census.is_nontrivial) if nt)
            if f != f_level:
                continue
        yield labels


def _component_nodes(census: ClosureCensus) -> list[int]:
    """Smallest node of every node-carrying component."""
    first: dict[int, int] = {}
    for node, c in enumerate(census.component_of):
        first.setdefault(c, node)
    return [first[c] for c in range(len(first))]


def _edge_images(
    labels: tuple[int, ...],
    census_v: ClosureCensus,
    census_u: ClosureCensus,
    touched: tuple[int, int, int, int],
) -> list[tuple[int, ...]]:
    tv = sorted({census_v.component_of[x] for x in touched})
    tu = sorted({census_u.component_of[x] for x in touched})
    reps = _component_nodes(census_v)
    base = [0] * census_u.components
    for c, node in enumerate(reps):
        if c in tv:
            continue
        base[census_u.component_of[node]] = labels[c]
    if len(tv) == 2 and len(tu) == 1:
        a, b = labels[tv[0]], labels[tv[1]]
        if a == MINUS and b == MINUS:
            return []
        base[tu[0]] = MINUS if MINUS in (a, b) else PLUS
        return [tuple(base)]
    if len(tv) == 1 and len(tu) == 2:
        if labels[tv[0]] == PLUS:
            out = []
            for x, y in ((PLUS, MINUS), (MINUS, PLUS)):
                img = list(base)
                img[tu[0]], img[tu[1]] = x, y
                out.append(tuple(img))
            return out
        img = list(base)
        img[tu[0]] = img[tu[1]] = MINUS
        return [tuple(img)]
    raise SurgeryError(f"surgery takes {len(tv)} component(s) to {len(tu)}")


def annular_complex(w: BraidWord, orientation: int = 1, f_level: int | None = None) -> FilteredComplex:
    """The annular Khovanov complex of the closure of ``w`` (resolved as drawn).

    With ``f_level`` set, only states in that filtration level are generated;
    the differential between them is then exactly the associated graded piece.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    n = w.strands
    k = len(w)
    FC = FilteredComplex(w, orientation)
    censuses: dict[tuple[int, ...], ClosureCensus] = {}
    index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    for v in itertools.product((-1, 1), repeat=k):
        census = stacked_closure(n, resolve(w, v, Convention.KH))
        censuses[v] = census
        for labels in _labelings(census, orientation, f_level):
            s = EnhancedState(v, census, labels)
            index[(v, labels)] = len(FC.states)
            FC.states.append(s)
            FC.gradings.append(state_gradings(w, s, orientation))
    FC.differential = [0] * len(FC.states)
    for idx, s in enumerate(FC.states):
        v = s.vertex
        row = 0
        for j in range(k):
            if v[j] != -1:
                continue
            u = v[:j] + (1,) + v[j + 1 :]
            touched = letter_nodes(n, j, w.indices[j])
            for img in _edge_images(s.labels, censuses[v], censuses[u], touched):
                t = index.get((u, img))
                if t is not None:
                    row ^= 1 << t
        FC.differential[idx] = row
    return FC


def skh(w: BraidWord, f_level: int, orientation: int = 1) -> GradedDims:
    """``SKh`` of the closure of ``w`` at one filtration level, as (h, q) dimensions."""
    FC = annular_complex(w, orientation, f_level)
    return homology_dims(FC.associated_graded()).project(0, 1)


def skh_all(w: BraidWord, orientation: int = 1) -> GradedDims:
    """All filtration levels at once, as (h, q, f) dimensions."""
    return homology_dims(annular_complex(w, orientation).associated_graded())
