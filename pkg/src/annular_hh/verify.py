"""Comparison of Hochschild homology with next-to-top sutured annular Khovanov homology.

For a braid word ``w`` on ``m+1`` strands the claim under test is

    SKh(closure of mirror(w); m-1)  ==  HH(A_m, M_w)[n-]{(m-1) + n+ - 2 n-}

as bigraded dimension functions, where ``[k]`` lowers ``h`` by ``k`` and
``{k}`` raises ``q`` by ``k``.  Two bookkeeping choices are left open and are
fixed by :func:`calibrate`: whether ``n+``/``n-`` are counted on ``w`` or on
its mirror, and which label reads as counter-clockwise.
"""

from __future__ import annotations

import itertools
import json
import random
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .annular import skh
from .braids import BraidWord, mirror
from .f2 import GradedDims
from .hochschild import hh_via_coinvariants
from .ks import ks_complex_for

DEFAULT_MAX_K = 12
DEFAULT_MAX_M = 4


class ResourceLimitError(ValueError):
    pass


class CalibrationError(ValueError):
    pass


@dataclass(frozen=True)
class Convention:
    n_side: str = "mirror"  # "sigma" or "mirror": whose crossing counts feed the shift
    orientation: int = 1  # +1: Plus is counter-clockwise

    def __post_init__(self) -> None:
        if self.n_side not in ("sigma", "mirror"):
            raise ValueError(f"n_side must be 'sigma' or 'mirror', got {self.n_side!r}")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @classmethod
    def all(cls) -> list[Convention]:
        return [cls(side, o) for side in ("sigma", "mirror") for o in (1, -1)]

    @classmethod
    def parse(cls, text: str) -> Convention:
        """Parse ``"mirror,ccw_plus"`` style strings."""
        parts = [p.strip() for p in text.replace(":", ",").split(",") if p.strip()]
        if len(parts) != 2 or parts[1] not in ("ccw_plus", "ccw_minus"):
            raise ValueError(f"bad convention {text!r}; expected e.g. 'mirror,ccw_plus'")
        return cls(parts[0], 1 if parts[1] == "ccw_plus" else -1)

    def __str__(self) -> str:
        return f"{self.n_side},{'ccw_plus' if self.orientation == 1 else 'ccw_minus'}"

    def counts(self, w: BraidWord) -> tuple[int, int]:
        if self.n_side == "sigma":
            return w.n_plus, w.n_minus
        return w.n_minus, w.n_plus


def theorem_shift(w: BraidWord, conv: Convention) -> tuple[int, int]:
    n_plus, n_minus = conv.counts(w)
    return -n_minus, (w.m - 1) + n_plus - 2 * n_minus


def check_resources(w: BraidWord, max_k: int = DEFAULT_MAX_K, max_m: int = DEFAULT_MAX_M) -> None:
    if len(w) > max_k:
        raise ResourceLimitError(f"word length {len(w)} exceeds the limit {max_k}")
    if w.m > max_m:
        raise ResourceLimitError(f"m = {w.m} exceeds the limit {max_m}")


def hh_side(w: BraidWord) -> GradedDims:
    return hh_via_coinvariants(ks_complex_for(w))


def skh_side(w: BraidWord, orientation: int = 1) -> GradedDims:
    return skh(mirror(w), w.m - 1, orientation)


@dataclass
class TheoremReport:
    braid: BraidWord
    convention: Convention
    hh_dims: GradedDims
    skh_dims: GradedDims
    applied_shift: tuple[int, int]
    mismatch_cells: list[tuple[int, int, int, int]] = field(default_factory=list)  # (h, q, hh, skh)

    @property
    def m(self) -> int:
        return self.braid.m

    @property
    def n_plus(self) -> int:
        return self.braid.n_plus

    @property
    def n_minus(self) -> int:
        return self.braid.n_minus

    @property
    def match(self) -> bool:
        return not self.mismatch_cells

    @property
    def shifted_hh(self) -> GradedDims:
        return self.hh_dims.shift(*self.applied_shift)

    @property
    def totals_agree(self) -> bool:
        return self.hh_dims.total() == self.skh_dims.total()

    def to_dict(self) -> dict:
        f = self.m - 1
        return {
            "braid": str(self.braid),
            "strands": self.braid.strands,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "hh": [{"h": h, "q": q, "dim": d} for (h, q), d in sorted(self.hh_dims.items()) if d],
            "skh": [{"h": h, "q": q, "f": f, "dim": d} for (h, q), d in sorted(self.skh_dims.items()) if d],
            "shift": {"h": self.applied_shift[0], "q": self.applied_shift[1]},
            "match": self.match,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_tsv(self) -> str:
        f = self.m - 1
        lines = ["side\th\tq\tf\tdim"]
        for (h, q), d in sorted(self.hh_dims.items()):
            if d:
                lines.append(f"hh\t{h}\t{q}\t\t{d}")
        for (h, q), d in sorted(self.skh_dims.items()):
            if d:
                lines.append(f"skh\t{h}\t{q}\t{f}\t{d}")
        return "\n".join(lines)


def _compare(w: BraidWord, conv: Convention, hh: GradedDims, sk: GradedDims) -> TheoremReport:
    shift = theorem_shift(w, conv)
    moved = hh.shift(*shift)
    cells = sorted(set(moved) | set(sk))
    bad = [(h, q, moved[(h, q)], sk[(h, q)]) for h, q in cells if moved[(h, q)] != sk[(h, q)]]
    return TheoremReport(w, conv, hh, sk, shift, bad)


def theorem_check(
    w: BraidWord,
    conv: Convention = Convention(),
    max_k: int = DEFAULT_MAX_K,
    max_m: int = DEFAULT_MAX_M,
) -> TheoremReport:
    check_resources(w, max_k, max_m)
    return _compare(w, conv, hh_side(w), skh_side(w, conv.orientation))


def calibrate(corpus: Sequence[BraidWord], max_k: int = DEFAULT_MAX_K, max_m: int = DEFAULT_MAX_M) -> Convention:
    """The unique convention under which every corpus word matches."""
    corpus = list(corpus)
    if not corpus:
        raise CalibrationError("empty calibration corpus")
    if all(w.n_plus == w.n_minus for w in corpus):
        raise CalibrationError("underdetermined: every corpus word has n+ == n-, so the shift side is invisible")
    for w in corpus:
        check_resources(w, max_k, max_m)
    alive = Convention.all()
    for w in corpus:
        hh = hh_side(w)
        sk = {o: skh_side(w, o) for o in {c.orientation for c in alive}}
        alive = [c for c in alive if _compare(w, c, hh, sk[c.orientation]).match]
        if not alive:
            break
    if len(alive) != 1:
        names = ", ".join(map(str, alive)) or "none"
        raise CalibrationError(f"{len(alive)} conventions survive calibration ({names})")
    return alive[0]


# --------------------------------------------------------------------------
# corpora


def all_words(strands: int, max_length: int, min_length: int = 0) -> list[BraidWord]:
    alphabet = [x for i in range(1, strands) for x in (i, -i)]
    out = []
    for n in range(min_length, max_length + 1):
        out.extend(BraidWord.from_ints(t, strands) for t in itertools.product(alphabet, repeat=n))
    return out


def random_words(strands: int, length: int, count: int, seed: int = 0) -> list[BraidWord]:
    rng = random.Random(seed)
    alphabet = [x for i in range(1, strands) for x in (i, -i)]
    return [BraidWord.from_ints([rng.choice(alphabet) for _ in range(length)], strands) for _ in range(count)]


def default_calibration_corpus() -> list[BraidWord]:
    """``B_2`` words up to length 4 plus ``B_3`` words up to length 2.

    On two strands the compared level is ``f = 0``, which reversing the
    orientation maps to itself, so three strands are needed to pin it down.
    """
    return all_words(2, 4, 1) + all_words(3, 2, 1)


def _check_one(args: tuple[BraidWord, Convention, int, int]) -> TheoremReport:
    return theorem_check(*args)


def run_corpus(
    words: Iterable[BraidWord],
    conv: Convention = Convention(),
    workers: int | None = None,
    max_k: int = DEFAULT_MAX_K,
    max_m: int = DEFAULT_MAX_M,
) -> list[TheoremReport]:
    """Reports in input order; ``workers > 1`` spreads words over processes."""
    jobs = [(w, conv, max_k, max_m) for w in words]
    if not workers or workers <= 1:
        return [_check_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_check_one, jobs, chunksize=8))
