import random
from fractions import Fraction

import pytest

from coxlen.errors import (DomainError, InputError, NotCertifiedError,
                           ResourceCapError)
from coxlen.quasimorphism import (FreeCoxeterWord, build_certificate,
                                  certify_lower_bound, counting_qm,
                                  defect_stress_sample, defect_window,
                                  homogenize, random_reduced_word,
                                  reduce_word)


def _H(pattern, word):
    return counting_qm(reduce_word(pattern, 3), reduce_word(word, 3))


# -- word reduction ---------------------------------------------------------


def test_reduce_examples():
    assert reduce_word("aa", 3).letters == ""
    assert reduce_word("abbac", 3).letters == "c"
    assert reduce_word("abc", 3).letters == "abc"


def test_reduce_rejects_out_of_range_letters():
    with pytest.raises(InputError):
        reduce_word("abd", 3)
    with pytest.raises(InputError):
        reduce_word((1, 4), 3)


def test_reduce_accepts_integer_tuples():
    assert reduce_word((1, 2, 2, 1, 3), 3).letters == "c"


# -- counting ----------------------------------------------------------------


def test_counting_examples():
    assert _H("ab", "ab") == 1
    assert _H("ab", "ba") == -1
    assert _H("abc", "abc" * 3) == 3


def test_counting_rejects_empty_pattern():
    with pytest.raises(DomainError):
        counting_qm(reduce_word("", 3), reduce_word("ab", 3))


def test_antisymmetry_on_random_words():
    rng = random.Random(1)
    w = reduce_word("abc", 3)
    for _ in range(300):
        g = random_reduced_word(3, rng.randrange(25), rng)
        assert counting_qm(w, g[::-1]) == -counting_qm(w, g)


# -- defect ------------------------------------------------------------------


def _brute_force_defect(pattern, B):
    """Literal enumeration over all pairs of reduced words of length <= B."""
    w = reduce_word(pattern, 3)
    words = [""]
    frontier = [""]
    for _ in range(B):
        frontier = [x + c for x in frontier for c in "abc" if not x or x[-1] != c]
        words.extend(frontier)
    best = 0
    for g in words:
        for h in words:
            d = abs(counting_qm(w, reduce_word(g + h, 3)) -
                    counting_qm(w, reduce_word(g, 3)) -
                    counting_qm(w, reduce_word(h, 3)))
            best = max(best, d)
    return best


@pytest.mark.parametrize("pattern,B", [("ab", 4), ("ab", 5), ("abc", 4), ("abc", 5)])
def test_defect_matches_brute_force(pattern, B):
    w = reduce_word(pattern, 3)
    assert defect_window(w, B).value == _brute_force_defect(pattern, B)


def test_defect_frozen_values():
    # exhaustive enumeration gives 1 for both patterns (see the brute force)
    assert defect_window(reduce_word("ab", 3), 6).value == 1
    d = defect_window(reduce_word("abc", 3), 9)
    assert d.value == 1 and d.stabilized
    g, h = d.pair
    w = reduce_word("abc", 3)
    attained = abs(counting_qm(w, reduce_word(g + h, 3)) -
                   counting_qm(w, reduce_word(g, 3)) -
                   counting_qm(w, reduce_word(h, 3)))
    assert attained == d.value


def test_single_letter_pattern_has_zero_defect():
    d = defect_window(reduce_word("a", 3), 3)
    assert d.value == 0
    # H_a is identically zero: the pattern equals its own inverse
    rng = random.Random(2)
    w = reduce_word("a", 3)
    for _ in range(100):
        assert counting_qm(w, random_reduced_word(3, rng.randrange(30), rng)) == 0


def test_defect_not_stabilized_below_three_pattern_lengths():
    assert not defect_window(reduce_word("abc", 3), 5).stabilized
    assert defect_window(reduce_word("abc", 3), 9).stabilized


def test_defect_cap_and_sampling_mode():
    w = reduce_word("abcabcabcabc", 3)
    with pytest.raises(ResourceCapError):
        defect_window(w, 36, cap=10_000)
    d = defect_window(w, 14, sample=True, sample_pairs=500, seed=3)
    assert not d.certified


def test_window_soundness_random_sample():
    w = reduce_word("abc", 3)
    claimed = defect_window(w, 9).value
    violations, worst = defect_stress_sample(w, claimed, 20_000, 36, seed=9)
    assert violations == 0 and worst <= claimed


# -- homogenization ------------------------------------------------------------


def test_homogenize_examples():
    w = reduce_word("abc", 3)
    assert homogenize(w, reduce_word("", 3)) == 0
    assert homogenize(w, w) == 1
    assert homogenize(w, reduce_word("a", 3)) == 0


def test_homogeneity_on_powers():
    rng = random.Random(4)
    w = reduce_word("abc", 3)
    for _ in range(40):
        g = random_reduced_word(3, rng.randrange(1, 9), rng)
        base = homogenize(w, reduce_word(g, 3))
        for n in range(1, 11):
            assert homogenize(w, reduce_word(g * n, 3)) == n * base


def test_conjugation_invariance():
    rng = random.Random(6)
    w = reduce_word("abc", 3)
    for _ in range(60):
        g = random_reduced_word(3, rng.randrange(12), rng)
        k = random_reduced_word(3, rng.randrange(8), rng)
        conj = reduce_word(k + g + k[::-1], 3)
        assert homogenize(w, conj) == homogenize(w, reduce_word(g, 3))


# -- certificates ---------------------------------------------------------------


def test_certificate_values():
    cert = build_certificate(3, "abc")
    assert cert.raw_defect == 1
    assert cert.homogeneous_defect == 2
    assert cert.generator_max == 0
    assert cert.constant == Fraction(1, 2)
    constant, bounds = certify_lower_bound(cert, "abc", 8)
    assert constant == Fraction(1, 2)
    assert bounds == [1, 1, 2, 2, 3, 3, 4, 4]


def test_certificate_zero_slope_bounds_are_vacuous():
    cert = build_certificate(3, "abc")
    _, bounds = certify_lower_bound(cert, "a", 4)
    assert bounds == [0, 0, 0, 0]
    assert cert.bound_for(reduce_word("ab", 3)) == 0  # finite-order element


def test_certificate_preconditions():
    with pytest.raises(DomainError):
        build_certificate(2, "ab")            # W_2 is Euclidean
    with pytest.raises(DomainError):
        build_certificate(3, "aba")           # not cyclically reduced
    with pytest.raises(DomainError):
        build_certificate(3, "")
    with pytest.raises(NotCertifiedError):
        build_certificate(3, "a")             # zero defect, zero slope


def test_certificate_refuses_unstabilized_window():
    with pytest.raises(NotCertifiedError):
        build_certificate(3, "abc", window=4)


def test_certificate_bounds_respect_exact_values():
    from coxlen.coxeter import parse_coxeter_matrix
    from coxlen.reflen import exact_reflection_length, get_group

    cert = build_certificate(3, "abc")
    W3 = parse_coxeter_matrix("rank 3; m12=inf m13=inf m23=inf")
    group = get_group(W3)
    for k in range(1, 5):
        value, _ = exact_reflection_length(group, group.element((0, 1, 2) * k))
        assert value >= cert.bound_for(reduce_word("abc", 3), power=k)


def test_certificate_adapter_scope():
    from coxlen.coxeter import parse_coxeter_matrix

    cert = build_certificate(3, "abc")
    free = parse_coxeter_matrix("rank 3; m12=inf m13=inf m23=inf")
    assert cert.lower_bound_for_word(free, (0, 1, 2)) == 1
    not_free = parse_coxeter_matrix("rank 3; m12=3 m13=inf m23=inf")
    assert cert.lower_bound_for_word(not_free, (0, 1, 2)) is None
    wrong_rank = parse_coxeter_matrix("rank 2; m12=inf")
    assert cert.lower_bound_for_word(wrong_rank, (0, 1)) is None
