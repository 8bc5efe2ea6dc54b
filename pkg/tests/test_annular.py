import pytest

from annular_hh.annular import (
    EnhancedState,
    annular_complex,
    skh,
    skh_all,
    state_gradings,
)
from annular_hh.braids import BraidWord, Convention, mirror, resolve, stacked_closure
from annular_hh.f2 import euler_characteristic, homology_dims, verify_complex
from annular_hh.verify import all_words


def _identity_state(strands, labels):
    census = stacked_closure(strands, ())
    return EnhancedState((), census, labels)


def test_gradings_examples():
    for n in range(2, 5):
        w = BraidWord(n, ())
        assert state_gradings(w, _identity_state(n, (1,) * n))[2] == n
    assert state_gradings(BraidWord(2, ()), _identity_state(2, (1, -1))) == (0, 0, 0)
    w = BraidWord.from_ints([1, 2], 3)
    v = (-1, -1)
    census = stacked_closure(3, resolve(w, v, Convention.KH))
    h, _, _ = state_gradings(w, EnhancedState(v, census, (1,) * census.components))
    assert h == 0


def test_orientation_only_flips_f():
    w = BraidWord.from_ints([1, -2], 3)
    a, b = annular_complex(w, 1), annular_complex(w, -1)
    for (h1, q1, f1), (h2, q2, f2) in zip(a.gradings, b.gradings):
        assert (h1, q1, f1) == (h2, q2, -f2)


def test_state_label_count_checked():
    with pytest.raises(ValueError):
        _identity_state(2, (1,))


def test_mirror_of_generator_resolutions():
    w = mirror(BraidWord.from_ints([1], 2))
    tl = stacked_closure(2, resolve(w, (-1,), Convention.KH))
    plain = stacked_closure(2, resolve(w, (1,), Convention.KH))
    assert (tl.trivial, tl.nontrivial) == (1, 0)
    assert (plain.trivial, plain.nontrivial) == (0, 2)


@pytest.mark.parametrize("m", range(1, 5))
def test_identity_braid(m):
    w = BraidWord(m + 1, ())
    assert skh(w, m - 1) == {(0, m - 1): m + 1}
    assert skh(w, m + 1).total() == 1
    assert skh(w, m).total() == 0


def test_mirror_generator_next_to_top():
    d = skh(mirror(BraidWord.from_ints([1], 2)), 0)
    assert d.total() == 2
    assert d == {(-1, -3): 1, (0, -1): 1}


def _corpus():
    return all_words(2, 4) + all_words(3, 3)


def test_structure_on_corpus():
    for w in _corpus():
        for orientation in (1, -1):
            FC = annular_complex(w, orientation)
            assert FC.squares_to_zero(), str(w)
            assert FC.squares_to_zero(graded=True), str(w)
            assert FC.preserves_q() and FC.raises_h_by_one()
        # with Plus read as counter-clockwise f is a decreasing filtration
        assert annular_complex(w, 1).max_f_increase() <= 0


def test_f_parity():
    for w in _corpus():
        FC = annular_complex(w)
        assert all((f - w.strands) % 2 == 0 for _, _, f in FC.gradings)
        assert all((f - w.strands) % 2 == 0 for (_, _, f) in skh_all(w))


def test_top_level_all_plus_is_cycle():
    for n in range(2, 5):
        FC = annular_complex(BraidWord(n, ()))
        top = [i for i, (_, _, f) in enumerate(FC.gradings) if f == n]
        assert len(top) == 1
        assert FC.graded_part()[top[0]] == 0


def test_euler_characteristic_per_level():
    for w in all_words(3, 3):
        FC = annular_complex(w)
        G = FC.associated_graded()
        assert verify_complex(G)
        assert euler_characteristic(FC.chain_dims()) == euler_characteristic(homology_dims(G))


def test_f_slice_matches_full_complex():
    for w in all_words(3, 2):
        full = skh_all(w)
        for f in range(-3, 4):
            sliced = skh(w, f)
            assert sliced == {(h, q): d for (h, q, ff), d in full.items() if ff == f}


@pytest.mark.parametrize("strands", [2, 3])
def test_rotation_invariance(strands):
    for w in all_words(strands, 3, 1):
        base = skh(w, w.m - 1)
        for k in range(1, len(w)):
            assert skh(w.rotate(k), w.m - 1) == base, str(w)
