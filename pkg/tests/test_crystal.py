from itertools import product

import pytest

from conftest import GRID_TYPES
from rcbij.cartan import AffineType, dominant_weights
from rcbij.crystal import (
    EMPTY,
    apply_e,
    apply_f,
    arrows,
    classical_weight_steps_ok,
    dot_export,
    enumerate_highest,
    enumerate_highest_bruteforce,
    eps_word,
    is_classically_highest,
    letter_from_str,
    letter_str,
    letters,
    phi_word,
    tensor_e,
    tensor_f,
    wt_letter,
    wt_path,
    zero_step_vector,
)


def test_letter_inventories():
    assert letters(AffineType("A1", 2)) == (1, 2, 3)
    assert letters(AffineType("C1", 2)) == (1, 2, -2, -1)
    assert letters(AffineType("B1", 3)) == (1, 2, 3, 0, -3, -2, -1)
    assert letters(AffineType("A2", 1)) == (1, -1, EMPTY)
    assert letters(AffineType("A2dag", 1)) == (1, 0, -1)
    assert letters(AffineType("D2", 2)) == (1, 2, 0, -2, -1, EMPTY)
    assert letters(AffineType("D1", 4)) == (1, 2, 3, 4, -4, -3, -2, -1)


def test_letter_serialization():
    for at in GRID_TYPES:
        for b in letters(at):
            assert letter_from_str(letter_str(b)) == b
    assert letter_str(EMPTY) == "E" and letter_str(-3) == "-3"


def test_apply_f_examples():
    at = AffineType("C1", 2)
    assert apply_f(at, 1, 1) == 2
    assert apply_f(at, 0, -1) == 1
    for at in GRID_TYPES:
        assert apply_f(at, 1, -1) is None
    with pytest.raises(ValueError):
        apply_f(AffineType("C1", 2), 3, 1)


def test_apply_e_examples():
    at = AffineType("C1", 2)
    assert apply_e(at, 1, 2) == 1
    at = AffineType("A1", 2)
    assert apply_e(at, 0, 1) == 3


def test_arrows_inverse_pair():
    for at in GRID_TYPES:
        f, e = arrows(at)
        for i in range(at.n + 1):
            for b, v in f[i].items():
                assert e[i][v] == b
                assert apply_e(at, i, apply_f(at, i, b)) == b


def test_classical_weight_steps():
    for at in GRID_TYPES:
        assert classical_weight_steps_ok(at)


def test_zero_arrow_step():
    want = {
        "A1": None,  # eps_1 - eps_{n+1}
        "B1": (1, 1, 0),
        "C1": (2, 0),
        "D1": (1, 1, 0, 0),
        "A2": (1,),
        "A2dag": (2,),
        "A2odd": (1, 1),
        "D2": (1, 0),
    }
    for fam, n in [("B1", 3), ("C1", 2), ("D1", 4), ("A2", 1),
                   ("A2dag", 1), ("A2odd", 2), ("D2", 2)]:
        assert zero_step_vector(AffineType(fam, n)) == want[fam]
    v = zero_step_vector(AffineType("A1", 3))
    assert v == (1, 0, 0, -1)


def test_weights():
    at = AffineType("B1", 3)
    assert wt_letter(at, 2) == (0, 1, 0)
    assert wt_letter(at, -1) == (-1, 0, 0)
    assert wt_letter(at, 0) == (0, 0, 0)
    assert wt_letter(AffineType("A2", 2), EMPTY) == (0, 0)


def test_letter_weights_sum_to_zero():
    # letters pair off (zero/empty self-paired); for type A the sum is the
    # diagonal vector, which is zero in the sl weight lattice
    for at in GRID_TYPES:
        total = [0] * at.weight_len
        for b in letters(at):
            for i, x in enumerate(wt_letter(at, b)):
                total[i] += x
        if at.family == "A1":
            assert len(set(total)) == 1
        else:
            assert all(x == 0 for x in total)


def test_weight_additivity():
    at = AffineType("C1", 2)
    word = (-1, 2, 1, -2)
    acc = [0, 0]
    for b in word:
        acc = [x + y for x, y in zip(acc, wt_letter(at, b))]
    assert wt_path(at, word) == tuple(acc)


def test_tensor_rule_examples():
    at = AffineType("C1", 2)
    # single letters reduce to the plain arrows
    assert tensor_e(at, 1, (2,)) == (1,)
    assert tensor_f(at, 1, (1,)) == (2,)
    # 2 (x) 1 is killed by e_1; 2 (x) 2 moves in the left factor
    assert tensor_e(at, 1, (2, 1)) is None
    assert tensor_e(at, 1, (2, 2)) == (1, 2)


def test_eps_phi_word_against_repeated_application():
    for at in GRID_TYPES[:8]:
        B = letters(at)
        for word in product(B, repeat=2):
            for i in range(at.n + 1):
                k, w = 0, word
                while True:
                    w = tensor_e(at, i, w)
                    if w is None:
                        break
                    k += 1
                assert eps_word(at, i, word) == k, (at, i, word)
                k, w = 0, word
                while True:
                    w = tensor_f(at, i, w)
                    if w is None:
                        break
                    k += 1
                assert phi_word(at, i, word) == k, (at, i, word)


def test_tensor_e_f_inverse_on_words():
    at = AffineType("D2", 2)
    for word in product(letters(at), repeat=2):
        for i in range(at.n + 1):
            w = tensor_f(at, i, word)
            if w is not None:
                assert tensor_e(at, i, w) == word


def test_highest_trivial_weight():
    for at in GRID_TYPES:
        L = 3
        lam = [0] * at.weight_len
        lam[0] = L
        paths = enumerate_highest(at, tuple(lam), L)
        assert paths == ((1, 1, 1),)


def test_highest_A2_phi_path():
    at = AffineType("A2", 1)
    assert enumerate_highest(at, (0,), 1) == ((EMPTY,),)


def test_highest_empty_path():
    at = AffineType("C1", 2)
    assert enumerate_highest(at, (0, 0), 0) == (tuple(),)
    assert enumerate_highest(at, (1, 0), 0) == tuple()


def test_highest_C2_L3_frozen():
    at = AffineType("C1", 2)
    got = set(enumerate_highest(at, (1, 0), 3))
    assert got == {(-2, 2, 1), (-1, 1, 1), (1, -1, 1)}


def test_highest_zero_letter_condition():
    # a path may start with the zero letter only when lambda_n > 0
    at = AffineType("A2dag", 1)
    assert (0, 1) in enumerate_highest(at, (1,), 2)
    for word in enumerate_highest(at, (0,), 2):
        assert word[0] != 0


def test_highest_matches_bruteforce():
    for at in GRID_TYPES:
        for L in range(0, 4):
            if len(letters(at)) ** L > 3000:
                continue
            for lam in dominant_weights(at, L):
                assert (
                    tuple(sorted(enumerate_highest(at, lam, L)))
                    == enumerate_highest_bruteforce(at, lam, L)
                ), (at, lam, L)


def test_highest_really_highest():
    at = AffineType("B1", 3)
    for lam in dominant_weights(at, 3):
        for word in enumerate_highest(at, lam, 3):
            assert is_classically_highest(at, word)
            assert wt_path(at, word) == lam


def test_dot_export_has_fork():
    dot = dot_export(AffineType("D1", 4))
    assert '"3" -> "4" [label="3"];' in dot
    assert '"3" -> "-4" [label="4"];' in dot
    assert '"4" -> "-3" [label="4"];' in dot
    assert '"-4" -> "-3" [label="3"];' in dot
    assert dot.startswith("digraph")
