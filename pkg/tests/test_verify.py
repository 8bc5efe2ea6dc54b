import json

import pytest

from annular_hh.braids import BraidWord, mirror
from annular_hh.verify import (
    CalibrationError,
    Convention,
    ResourceLimitError,
    all_words,
    calibrate,
    default_calibration_corpus,
    random_words,
    run_corpus,
    theorem_check,
    theorem_shift,
)

CALIBRATED = Convention("mirror", 1)


def test_convention_parsing():
    assert Convention.parse("mirror,ccw_plus") == CALIBRATED
    assert Convention.parse("sigma:ccw_minus") == Convention("sigma", -1)
    assert str(CALIBRATED) == "mirror,ccw_plus"
    assert len(Convention.all()) == 4
    with pytest.raises(ValueError):
        Convention.parse("mirror")
    with pytest.raises(ValueError):
        Convention("both", 1)


def test_shift_sides():
    w = BraidWord.from_ints([1, 1, -1], 2)
    assert theorem_shift(w, Convention("sigma", 1)) == (-1, 0 + 2 - 2)
    assert theorem_shift(w, CALIBRATED) == (-2, 0 + 1 - 4)


def test_empty_word():
    r = theorem_check(BraidWord(2, ()), CALIBRATED)
    assert r.match and r.hh_dims == {(0, 0): 2} and r.skh_dims == {(0, 0): 2}
    assert r.applied_shift == (0, 0)


def test_generator_m1():
    r = theorem_check(BraidWord.from_ints([1], 2), CALIBRATED)
    assert r.match and r.totals_agree


def test_all_short_b3_words():
    for r in run_corpus(all_words(3, 3), CALIBRATED):
        assert r.match, (str(r.braid), r.mismatch_cells)


def test_mirror_duality():
    for w in all_words(3, 2):
        assert theorem_check(w, CALIBRATED).match
        assert theorem_check(mirror(w), CALIBRATED).match


def test_wrong_side_is_detected():
    r = theorem_check(BraidWord.from_ints([1], 2), Convention("sigma", 1))
    assert not r.match and r.mismatch_cells
    assert r.totals_agree  # only the placement is off


def test_report_schema():
    r = theorem_check(BraidWord.from_ints([1, -2], 3), CALIBRATED)
    d = json.loads(r.to_json())
    assert set(d) == {"braid", "strands", "n_plus", "n_minus", "hh", "skh", "shift", "match"}
    assert d["braid"] == "1 -2" and d["strands"] == 3
    assert all(set(c) == {"h", "q", "dim"} for c in d["hh"])
    assert all(set(c) == {"h", "q", "f", "dim"} and c["f"] == 1 for c in d["skh"])
    assert d["shift"] == {"h": -1, "q": 1 + 1 - 2}
    tsv = r.to_tsv().splitlines()
    assert tsv[0] == "side\th\tq\tf\tdim"
    assert len(tsv) == 1 + len(d["hh"]) + len(d["skh"])


def test_resource_guard():
    with pytest.raises(ResourceLimitError):
        theorem_check(BraidWord.from_ints([1] * 13, 2))
    with pytest.raises(ResourceLimitError):
        theorem_check(BraidWord(6, ()))
    assert theorem_check(BraidWord.from_ints([1] * 3, 2), max_k=3).match


def test_calibration_errors():
    with pytest.raises(CalibrationError, match="empty"):
        calibrate([])
    with pytest.raises(CalibrationError, match="underdetermined"):
        calibrate([BraidWord.from_ints([1, -1], 2), BraidWord(2, ())])


def test_two_strand_corpus_cannot_fix_orientation():
    corpus = [BraidWord.from_ints(x, 2) for x in ([1], [-1], [1, 1])]
    with pytest.raises(CalibrationError, match="2 conventions"):
        calibrate(corpus)


def test_default_calibration():
    assert calibrate(default_calibration_corpus()) == CALIBRATED


def test_parallel_runner_keeps_order():
    words = random_words(3, 4, 8, seed=1)
    serial = run_corpus(words, CALIBRATED)
    parallel = run_corpus(words, CALIBRATED, workers=2)
    assert [r.braid for r in parallel] == words
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]


def test_random_words_are_reproducible():
    assert random_words(3, 5, 4, seed=9) == random_words(3, 5, 4, seed=9)
    assert len(all_words(2, 2)) == 1 + 2 + 4
