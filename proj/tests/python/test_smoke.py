from fractions import Fraction

import pytest

import mclass

HALF = ["1/2", "1/2"]


def xor():
    return mclass.FiniteFunction(HALF, HALF, [["0", "1"], ["1", "0"]])


def f_star():
    return mclass.FiniteFunction(["2/3", "1/3"], ["3/4", "1/4"], [["0", "1"], ["1", "0"]])


def test_weights_round_trip_as_fractions():
    f = mclass.FiniteFunction([Fraction(1, 3), "2/3"], ["1"], [["a"], ["b"]], x_atoms=["p", "q"])
    assert f.x_weights == [Fraction(1, 3), Fraction(2, 3)]
    assert f.x_atoms == ["p", "q"]
    assert f.shape == (2, 1)
    assert f.values == [["a"], ["b"]]


def test_invalid_measure_raises():
    with pytest.raises(mclass.MclassError):
        mclass.FiniteFunction(["1/2", "1/3"], ["1"], [["0"], ["0"]])


def test_purify_merges_duplicate_columns():
    stripes = mclass.FiniteFunction(HALF, HALF, [["0", "0"], ["1", "1"]])
    pure, rows, cols = mclass.purify(stripes)
    assert not mclass.is_pure(stripes)
    assert pure.shape == (2, 1)
    assert cols == [0, 0]
    assert mclass.canonical_form(mclass.purify(pure)[0]) == mclass.canonical_form(pure)


def test_isomorphism_under_relabeling():
    g = mclass.FiniteFunction(HALF, HALF, [["1", "0"], ["0", "1"]])
    assert mclass.isomorphic(xor(), g) is not None
    assert mclass.isomorphic(xor(), f_star()) is None
    assert hash(mclass.canonical_form(xor())) == hash(mclass.canonical_form(g))


def test_corner_distribution_is_exact():
    d = mclass.corner_distribution(xor(), 1)
    assert d == {(("0",),): Fraction(1, 2), (("1",),): Fraction(1, 2)}
    assert sum(mclass.corner_distribution(f_star(), 2).values()) == 1
    const = mclass.FiniteFunction(HALF, HALF, [["0", "0"], ["0", "0"]])
    assert mclass.corner_total_variation(xor(), const, 1) == Fraction(1, 2)
    with pytest.raises(mclass.BudgetExceeded):
        mclass.corner_distribution(xor(), 9, budget=100)


def test_philox_known_answer():
    # Random123 known-answer vector for the all-zero counter and key.
    assert mclass.philox4x32_10([0, 0, 0, 0], [0, 0]) == [0x6627E8D5, 0xE169C58D, 0xBC57AC4C, 0x9B00DBD8]


def test_sampling_is_deterministic():
    assert mclass.sample_matrix(f_star(), 8, 5) == mclass.sample_matrix(f_star(), 8, 5)


def test_reconstruction_of_f_star():
    r = mclass.reconstruction_check(f_star(), 2000, 8, 1)
    assert r["isomorphic_to_source"]
    assert r["weight_tv"] <= Fraction(1, 20)
    rebuilt = mclass.reconstruct(mclass.sample_matrix(f_star(), 200, 1), 8)
    assert rebuilt.shape == (2, 2)
    assert sum(rebuilt.x_weights) == 1
    with pytest.raises(mclass.AmbiguousCell):
        identity = mclass.FiniteFunction(["1/3"] * 3, ["1/3"] * 3, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
        mclass.reconstruct(mclass.sample_matrix(identity, 60, 0), 1)


def test_symmetry():
    assert len(mclass.congruence_group(xor())) == 2
    assert not mclass.simplicity_decision(xor())
    assert mclass.is_completely_pure(f_star())
    w = mclass.collision_witness(xor(), 6, 0, 3)
    assert w is not None and mclass.verify_collision(xor(), w)
    length = mclass.collision_search_length(f_star(), 1000)
    assert length >= 16
    assert mclass.collision_witness(f_star(), length, 1000, 3) is None
