"""Exact linear algebra over F_2 and graded chain complexes.

Vectors are Python ints used as bitsets (bit ``j`` set means coordinate ``j``
is 1).  A linear map ``V -> W`` is stored as an :class:`F2Matrix` with one row
per basis vector of ``V`` holding its image in ``W``, i.e. maps act on row
vectors and ``(f then g)`` is ``f @ g``.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

Degree = tuple[int, ...]


def bits(v: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def mask(positions: Iterable[int]) -> int:
    out = 0
    for p in positions:
        out ^= 1 << p
    return out


class Reducer:
    """Incremental row reduction keyed on the lowest set bit.

    Rows are inserted one at a time; each stored row has a distinct lowest bit
    (its pivot) and no stored row has another row's pivot set, so ``reduce``
    returns a canonical representative of ``v`` modulo the span.
    """

    __slots__ = ("pivots",)

    def __init__(self, rows: Iterable[int] = ()) -> None:
        self.pivots: dict[int, int] = {}
        for r in rows:
            self.add(r)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        w = v
        out = 0
        while w:
            low = w & -w
            p = pivots.get(low)
            if p is None:
                out |= low
                w ^= low
            else:
                w ^= p
        return out

    def add(self, v: int) -> bool:
        """Insert ``v``; return False when it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        low = v & -v
        # keep stored rows fully reduced against the new pivot
        for key, row in self.pivots.items():
            if row & low:
                self.pivots[key] = row ^ v
        self.pivots[low] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def pivot_positions(self) -> set[int]:
        return {low.bit_length() - 1 for low in self.pivots}

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank over F_2 of a collection of bitset rows."""
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


@dataclass(frozen=True)
class F2Matrix:
    """A ``rows x cols`` matrix over F_2 with bit-packed rows."""

    nrows: int
    ncols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.data)}")
        limit = 1 << self.ncols
        for r in self.data:
            if r < 0 or r >= limit:
                raise ValueError("row has entries outside the column range")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int]]) -> F2Matrix:
        data = [0] * nrows
        for r, c in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ValueError(f"entry {(r, c)} out of range")
            data[r] ^= 1 << c
        return cls(nrows, ncols, tuple(data))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> F2Matrix:
        ncols = len(rows[0]) if rows else 0
        return cls.from_entries(
            len(rows), ncols, ((i, j) for i, row in enumerate(rows) for j, x in enumerate(row) if x % 2)
        )

    @property
    def entries(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, r in enumerate(self.data) for j in bits(r))

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.data]

    def is_zero(self) -> bool:
        return not any(self.data)

    def transpose(self) -> F2Matrix:
        out = [0] * self.ncols
        for i, r in enumerate(self.data):
            for j in bits(r):
                out[j] |= 1 << i
        return F2Matrix(self.ncols, self.nrows, tuple(out))

    def apply(self, v: int) -> int:
        """Image of the row vector ``v``."""
        out = 0
        for i in bits(v):
            out ^= self.data[i]
        return out

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return F2Matrix(self.nrows, other.ncols, tuple(other.apply(r) for r in self.data))

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return F2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def rank(self) -> int:
        return rank_of_rows(self.data)


def rank(M: F2Matrix) -> int:
    """Rank of ``M`` over F_2."""
    return M.rank()


class GradedDims(Mapping):
    """Finitely supported map from multidegrees to positive dimensions.

    Lookups of absent degrees return 0; zero entries are never stored.
    """

    __slots__ = ("_d",)

    def __init__(self, data: Mapping[Degree, int] | Iterable[tuple[Degree, int]] = ()) -> None:
        items = data.items() if isinstance(data, Mapping) else data
        d: dict[Degree, int] = {}
        for k, v in items:
            if v < 0:
                raise ValueError(f"negative dimension at {k}")
            if v:
                d[tuple(k)] = d.get(tuple(k), 0) + v
        self._d = d

    def __getitem__(self, key: Degree) -> int:
        return self._d.get(tuple(key), 0)

    def __iter__(self) -> Iterator[Degree]:
        return iter(sorted(self._d))

    def __len__(self) -> int:
        return len(self._d)

    def __contains__(self, key: object) -> bool:
        return key in self._d

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GradedDims):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == {tuple(k): v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._d.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {self._d[k]}" for k in sorted(self._d))
        return f"GradedDims({{{body}}})"

    def __add__(self, other: GradedDims) -> GradedDims:
        return GradedDims(list(self._d.items()) + list(other._d.items()))

    def total(self) -> int:
        return sum(self._d.values())

    def shift(self, *offsets: int) -> GradedDims:
        """Translate every degree by ``offsets`` (componentwise)."""
        return GradedDims({tuple(a + b for a, b in zip(k, offsets)): v for k, v in self._d.items()})

    def project(self, *axes: int) -> GradedDims:
        """Sum out every axis not listed."""
        out: dict[Degree, int] = {}
        for k, v in self._d.items():
            key = tuple(k[a] for a in axes)
            out[key] = out.get(key, 0) + v
        return GradedDims(out)

    def diff(self, other: GradedDims) -> list[tuple[Degree, int, int]]:
        keys = sorted(set(self._d) | set(other._d))
        return [(k, self[k], other[k]) for k in keys if self[k] != other[k]]


@dataclass
class GradedComplex:
    """A finite complex of F_2 vector spaces graded by (h, q) or (h, q, f).

    ``differentials[(src, tgt)]`` maps ``basis[src]`` to ``basis[tgt]``
    (rows indexed by the source basis).  ``shifts`` records optional
    ``[k1]{k2}`` bookkeeping per degree and plays no role in homology.
    """

    arity: int
    basis: dict[Degree, list[Hashable]] = field(default_factory=dict)
    differentials: dict[tuple[Degree, Degree], F2Matrix] = field(default_factory=dict)
    shifts: dict[Degree, tuple[int, int]] = field(default_factory=dict)

    def dims(self) -> GradedDims:
        return GradedDims({k: len(v) for k, v in self.basis.items()})

    def add_map(self, src: Degree, tgt: Degree, M: F2Matrix) -> None:
        key = (src, tgt)
        if key in self.differentials:
            self.differentials[key] = self.differentials[key] + M
        else:
            self.differentials[key] = M

    def out_maps(self, deg: Degree) -> list[tuple[Degree, F2Matrix]]:
        return [(t, M) for (s, t), M in self.differentials.items() if s == deg]

    def in_maps(self, deg: Degree) -> list[tuple[Degree, F2Matrix]]:
        return [(s, M) for (s, t), M in self.differentials.items() if t == deg]

    def euler(self) -> dict[Degree, int]:
        """Alternating sum of basis sizes over h, keyed by the remaining degrees."""
        return _euler(self.dims())


def _euler(d: GradedDims) -> dict[Degree, int]:
    out: dict[Degree, int] = {}
    for k, v in d.items():
        rest = k[1:]
        out[rest] = out.get(rest, 0) + (v if k[0] % 2 == 0 else -v)
    return {k: v for k, v in out.items() if v}


def euler_characteristic(d: GradedDims) -> dict[Degree, int]:
    """Alternating sum over h, keyed by the remaining degrees."""
    return _euler(d)


class IllFormedComplex(ValueError):
    pass


def _expected_target(src: Degree) -> Degree:
    return (src[0] + 1,) + tuple(src[1:])


def verify_complex(C: GradedComplex) -> bool:
    """True iff all differentials raise h by one, preserve the other degrees, and d∘d = 0."""
    for (s, t), M in C.differentials.items():
        if M.shape != (len(C.basis.get(s, ())), len(C.basis.get(t, ()))):
            return False
        if len(s) != C.arity or len(t) != C.arity:
            return False
        if t != _expected_target(s) and not M.is_zero():
            return False
    for (s, t), M in C.differentials.items():
        for (s2, t2), N in C.differentials.items():
            if s2 == t and not (M @ N).is_zero():
                return False
    return True


def homology_dims(C: GradedComplex, check: bool = True) -> GradedDims:
    """Dimension of homology in every multidegree.

    Each non-h slice is independent, so ranks are computed per differential
    and combined as ``dim - rank(out) - rank(in)``.
    """
    if check and not verify_complex(C):
        raise IllFormedComplex("differential fails the grading or d^2 = 0 check")
    out_rank: dict[Degree, int] = {}
    in_rank: dict[Degree, int] = {}
    for (s, t), M in C.differentials.items():
        if t != _expected_target(s):
            continue
        r = M.rank()
        out_rank[s] = out_rank.get(s, 0) + r
        in_rank[t] = in_rank.get(t, 0) + r
    return GradedDims(
        {deg: len(b) - out_rank.get(deg, 0) - in_rank.get(deg, 0) for deg, b in C.basis.items()}
    )
