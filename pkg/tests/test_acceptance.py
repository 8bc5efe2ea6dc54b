"""Acceptance criteria, one test each, each printing a single PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for just the summary lines,
or through pytest, where the lines are repeated in the terminal summary.
"""

import random
import sys
import time

import pytest

from annular_hh.algebra import build_am, path_enumeration_dimension, projective_bimodule, regular_bimodule, tl_bimodule
from annular_hh.annular import annular_complex, skh, skh_all
from annular_hh.braids import BraidWord, mirror
from annular_hh.f2 import verify_complex
from annular_hh.hochschild import (
    bar_homology,
    closed_form_qprofile,
    coinvariant_complex,
    coinvariant_quotient,
    hh_via_coinvariants,
)
from annular_hh.ks import flatten, ks_complex_for
from annular_hh.verify import (
    CalibrationError,
    Convention,
    all_words,
    calibrate,
    default_calibration_corpus,
    random_words,
    run_corpus,
    theorem_shift,
)

RESULTS: list[str] = []


def report(n: int, ok: bool, what: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}"
    RESULTS.append(line)
    print(line)
    return ok


def theorem_corpus() -> list[BraidWord]:
    return all_words(2, 4) + all_words(3, 3) + random_words(3, 5, 20, seed=2024)


def calibrated() -> Convention:
    return calibrate(default_calibration_corpus())


# ---------------------------------------------------------------------------


def criterion_1() -> bool:
    t0 = time.perf_counter()
    bad = [m for m in range(1, 7) if not len(build_am(m)) == 4 * m + 1 == path_enumeration_dimension(m)]
    dt = time.perf_counter() - t0
    return report(1, not bad and dt < 5, f"dim A_m = 4m+1 = oracle for m=1..6 ({dt:.2f}s, failures {bad})")


def criterion_2() -> bool:
    t0 = time.perf_counter()
    hh_ok = all(hh_via_coinvariants(ks_complex_for(BraidWord(m + 1, ()))) == {(0, 0): m + 1} for m in range(1, 6))
    bar_ok = all(bar_homology(regular_bimodule(build_am(m)), 3) == {0: {0: m + 1}, 1: {}} for m in (1, 2))
    dt = time.perf_counter() - t0
    return report(
        2, hh_ok and bar_ok and dt < 30, f"HH(A_m)=m+1 at (0,0) m=1..5: {hh_ok}; bar HH_1=0 m=1,2: {bar_ok} ({dt:.2f}s)"
    )


def _random_realizable_word(rng: random.Random) -> tuple[int, tuple[int, ...]]:
    m = rng.randint(1, 3)
    word = [rng.randint(1, m)]
    for _ in range(rng.randint(0, 4)):
        word.append(min(m, max(1, word[-1] + rng.choice((-1, 0, 1)))))
    return m, tuple(word)


def criterion_3() -> bool:
    algebra_ok = all(coinvariant_quotient(regular_bimodule(build_am(m))).dim == m + 1 for m in range(1, 6))
    projective_ok = all(
        coinvariant_quotient(projective_bimodule(build_am(m), i)).dim == 2 for m in range(1, 5) for i in range(1, m + 1)
    )
    A4 = build_am(4)
    distant_ok = all(coinvariant_quotient(tl_bimodule(A4, w)).dim == 0 for w in [(1, 2, 3), (2, 3, 4), (1, 2, 3, 4), (4, 3, 2)])
    rng = random.Random(50)
    cases = [_random_realizable_word(rng) for _ in range(50)]
    bad = [
        (m, w) for m, w in cases if coinvariant_quotient(tl_bimodule(build_am(m), w)).qprofile() != closed_form_qprofile(m, w)
    ]
    kinds = {"equal ends": 0, "adjacent ends": 0, "distant ends": 0}
    for _, w in cases:
        gap = abs(w[0] - w[-1])
        kinds["equal ends" if gap == 0 else "adjacent ends" if gap == 1 else "distant ends"] += 1
    ok = algebra_ok and projective_ok and distant_ok and not bad
    what = f"Q(A_m)=m+1: {algebra_ok}; Q(P_i(x)iP)=2: {projective_ok}; distant ends give 0: {distant_ok}"
    return report(3, ok, f"{what}; 50 random words {kinds}, mismatches {bad}")


def criterion_4() -> bool:
    t0 = time.perf_counter()
    conv = calibrated()
    reports = run_corpus(theorem_corpus(), conv)
    bad = [str(r.braid) for r in reports if not r.match]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 300
    return report(4, ok, f"theorem on {len(reports)} words under {conv}: {len(bad)} mismatches ({dt:.1f}s)")


def criterion_5() -> bool:
    conv = calibrated()
    failures = []
    for w in theorem_corpus():
        C = ks_complex_for(w)
        try:
            flatten(C)
        except ValueError:
            failures.append((str(w), "cube"))
        if not verify_complex(coinvariant_complex(C)):
            failures.append((str(w), "coinvariants"))
        FC = annular_complex(w, conv.orientation)
        if not (FC.squares_to_zero() and FC.squares_to_zero(graded=True)):
            failures.append((str(w), "annular d^2"))
        if FC.max_f_increase() > 0:
            failures.append((str(w), "f increases"))
        if any((f - w.strands) % 2 for _, _, f in FC.gradings) or any((f - w.strands) % 2 for _, _, f in skh_all(w)):
            failures.append((str(w), "parity"))
    return report(5, not failures, f"d^2=0, f non-increasing, f-parity on the theorem corpus; failures {failures[:5]}")


def criterion_6() -> bool:
    conv = calibrated()
    rot_bad = []
    for w in all_words(2, 3, 1) + all_words(3, 3, 1):
        hh = hh_via_coinvariants(ks_complex_for(w))
        sk = skh(mirror(w), w.m - 1)
        for k in range(1, len(w)):
            u = w.rotate(k)
            if hh_via_coinvariants(ks_complex_for(u)) != hh or skh(mirror(u), u.m - 1) != sk:
                rot_bad.append(str(w))
    rng = random.Random(6)
    r2_bad = []
    for _ in range(10):
        n = rng.choice((2, 3))
        w = random_words(n, rng.randint(0, 3), 1, seed=rng.randrange(10**6))[0]
        i = rng.randint(1, n - 1)
        u = w + BraidWord(n, ((i, 1), (i, -1)))
        a = hh_via_coinvariants(ks_complex_for(w)).shift(*theorem_shift(w, conv))
        b = hh_via_coinvariants(ks_complex_for(u)).shift(*theorem_shift(u, conv))
        if a != b:
            r2_bad.append((str(w), i))
    ok = not rot_bad and not r2_bad
    return report(6, ok, f"rotation invariance (HH and SKh) failures {rot_bad}; R-II on 10 cases failures {r2_bad}")


def criterion_7() -> bool:
    b2 = all_words(2, 4, 1)
    try:
        conv = calibrate(b2)
    except CalibrationError as exc:
        survivors = [c for c in Convention.all() if all(r.match for r in run_corpus(b2, c))]
        b3_pass = [str(c) for c in survivors if all(r.match for r in run_corpus(all_words(3, 3), c))]
        return report(
            7,
            False,
            f"B2 calibration not unique ({exc}); survivors passing all of B3: {b3_pass}",
        )
    b3 = all(r.match for r in run_corpus(all_words(3, 3), conv))
    return report(7, b3, f"B2 calibration gives {conv}; passes B3 corpus: {b3}")


# ---------------------------------------------------------------------------


def test_criterion_1_algebra_sizes():
    assert criterion_1()


def test_criterion_2_hh_of_algebra():
    assert criterion_2()


def test_criterion_3_coinvariant_dimensions():
    assert criterion_3()


def test_criterion_4_main_theorem():
    assert criterion_4()


def test_criterion_5_structure():
    assert criterion_5()


def test_criterion_6_invariance():
    assert criterion_6()


@pytest.mark.xfail(
    strict=True,
    reason="with two strands only f = 0 is compared, which cannot see the orientation; two conventions survive",
)
def test_criterion_7_calibration_uniqueness():
    assert criterion_7()


if __name__ == "__main__":
    outcomes = [f() for f in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7)]
    sys.exit(0 if all(outcomes) else 1)
