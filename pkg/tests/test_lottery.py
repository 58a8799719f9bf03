import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condlab.core import PreferenceRelation
from condlab.lottery import (
    Lottery,
    NegativeProbabilityError,
    SDRelation,
    affine_combine,
    mix,
    sd_compare,
)

F = Fraction


@st.composite
def lotteries3(draw):
    """Random rational lotteries over 3 alternatives with denominator 12."""
    a = draw(st.integers(0, 12))
    b = draw(st.integers(0, 12 - a))
    return Lottery([F(a, 12), F(b, 12), F(12 - a - b, 12)])


preferences3 = st.permutations(range(3)).map(PreferenceRelation)


def test_lottery_validation():
    with pytest.raises(NegativeProbabilityError):
        Lottery([F(-1, 2), F(1), F(1, 2)])
    with pytest.raises(ValueError):
        Lottery([F(1, 2), F(1, 4), F(1, 8)])


def test_lottery_constructors():
    assert Lottery.point(1, 3).probs == (0, 1, 0)
    assert Lottery.uniform(3).probs == (F(1, 3),) * 3
    assert Lottery.uniform_over((0, 2), 3).probs == (F(1, 2), 0, F(1, 2))
    assert Lottery.from_map({2: F(1)}, 3) == Lottery.point(2, 3)


def test_support_and_point_detection():
    lot = Lottery([F(1, 2), F(0), F(1, 2)])
    assert lot.support() == (0, 2)
    assert lot.is_point() is None
    assert Lottery.point(2, 3).is_point() == 2
    assert lot.mass((0, 1)) == F(1, 2)


def test_json_round_trip_drops_zeros():
    lot = Lottery([F(3, 4), F(0), F(1, 4)])
    data = lot.to_json_dict()
    assert data == {"a": "3/4", "c": "1/4"}
    assert Lottery.from_json_dict(data, 3) == lot


def test_incomparable_pair_with_both_cuts():
    # mass half on top and half on bottom against a point on the middle
    p = Lottery([F(1, 2), F(0), F(1, 2)])
    q = Lottery.point(1, 3)
    verdict = sd_compare(PreferenceRelation((0, 1, 2)), p, q)
    assert verdict.relation is SDRelation.INCOMPARABLE
    assert verdict.against_p == 1  # {a,b} carries 1/2 < 1
    assert verdict.against_q == 0  # {a} carries 1/2 > 0


def test_dominance_hand_case():
    p = Lottery([F(2, 3), F(1, 3), F(0)])
    q = Lottery([F(1, 3), F(1, 3), F(1, 3)])
    verdict = sd_compare(PreferenceRelation((0, 1, 2)), p, q)
    assert verdict.relation is SDRelation.DOMINATES
    assert verdict.weakly_prefers
    flipped = sd_compare(PreferenceRelation((2, 1, 0)), p, q)
    assert flipped.relation is SDRelation.DOMINATED


@given(preferences3, lotteries3())
def test_sd_compare_is_reflexive(pref, lot):
    assert sd_compare(pref, lot, lot).relation is SDRelation.EQUIVALENT


@given(preferences3, lotteries3(), lotteries3())
def test_sd_compare_antisymmetric(pref, p, q):
    forward = sd_compare(pref, p, q).relation
    backward = sd_compare(pref, q, p).relation
    mirror = {
        SDRelation.DOMINATES: SDRelation.DOMINATED,
        SDRelation.DOMINATED: SDRelation.DOMINATES,
        SDRelation.EQUIVALENT: SDRelation.EQUIVALENT,
        SDRelation.INCOMPARABLE: SDRelation.INCOMPARABLE,
    }
    assert backward is mirror[forward]


def test_sd_dominance_matches_expected_utility():
    # dominance must hold exactly for all order-consistent utility vectors
    rng = random.Random(11)
    orders = [PreferenceRelation(p) for p in ((0, 1, 2), (2, 0, 1), (1, 2, 0))]
    for _ in range(200):
        p = Lottery([F(x, 12) for x in _random_composition(rng)])
        q = Lottery([F(x, 12) for x in _random_composition(rng)])
        for pref in orders:
            verdict = sd_compare(pref, p, q)
            dominates_by_eu = all(
                _eu(p, u) >= _eu(q, u) for u in _utility_vectors(pref, rng)
            )
            if verdict.weakly_prefers:
                assert dominates_by_eu
            if verdict.relation is SDRelation.EQUIVALENT:
                assert p == q or all(
                    _eu(p, u) == _eu(q, u) for u in _utility_vectors(pref, rng)
                )


def _random_composition(rng):
    a = rng.randint(0, 12)
    b = rng.randint(0, 12 - a)
    return (a, b, 12 - a - b)


def _utility_vectors(pref, rng):
    vectors = []
    for _ in range(8):
        values = sorted((rng.randint(0, 100) for _ in range(3)), reverse=True)
        u = [0] * 3
        for slot, x in enumerate(pref.order):
            u[x] = values[slot]
        vectors.append(u)
    return vectors


def _eu(lot, utility):
    return sum(p * u for p, u in zip(lot.probs, utility))


# -- combinations -------------------------------------------------------------


def test_mix_basic():
    got = mix([(F(1, 2), Lottery.point(0, 3)), (F(1, 2), Lottery.point(2, 3))])
    assert got == Lottery([F(1, 2), F(0), F(1, 2)])
    with pytest.raises(ValueError):
        mix([(F(1, 2), Lottery.point(0, 3))])
    with pytest.raises(ValueError):
        mix([(F(3, 2), Lottery.point(0, 3)), (F(-1, 2), Lottery.point(1, 3))])


def test_affine_combine_cancellation():
    got = affine_combine(
        [(F(2), Lottery.point(0, 3)), (F(-1), Lottery.point(0, 3))]
    )
    assert got == Lottery.point(0, 3)


def test_affine_combine_detects_negative_mass():
    with pytest.raises(NegativeProbabilityError):
        affine_combine(
            [(F(2), Lottery.point(1, 3)), (F(-1), Lottery.point(0, 3))]
        )
    with pytest.raises(ValueError):
        affine_combine([(F(1, 2), Lottery.point(0, 3))])


@given(lotteries3(), lotteries3(), st.integers(0, 4))
def test_mix_interpolates(p, q, k):
    w = F(k, 4)
    got = mix([(w, p), (1 - w, q)])
    for x in range(3):
        assert got[x] == w * p[x] + (1 - w) * q[x]
