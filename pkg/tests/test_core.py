import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condlab.core import (
    InvalidSwapError,
    PreferenceRelation,
    Profile,
    ProfileParseError,
    all_profiles,
    all_relations,
    alternative_index,
    alternative_name,
    augment,
    condorcet_winner,
    full_profile_count,
    majority_margin,
    pareto_dominates,
    parse_profiles,
    profile_key,
    swap,
    tiebroken_winner,
)

permutation3 = st.permutations(range(3))
permutation4 = st.permutations(range(4))


def rel(text):
    return PreferenceRelation.from_text(text)


def prof(text):
    return Profile.from_text(text)


# -- names --------------------------------------------------------------------


def test_alternative_names_round_trip():
    for x in range(8):
        assert alternative_index(alternative_name(x)) == x
    assert alternative_name(0) == "a"
    with pytest.raises(ValueError):
        alternative_index("not-a-name")


# -- relations ----------------------------------------------------------------


def test_relation_basics():
    r = rel("b>a>c")
    assert r.top() == 1
    assert r.rank(1) == 1 and r.rank(0) == 2 and r.rank(2) == 3
    assert r.prefers(1, 0) and r.prefers(0, 2) and not r.prefers(2, 1)
    assert r.upper_contour(0) == frozenset({0, 1})
    assert r.upper_contour(1) == frozenset({1})
    assert r.to_text() == "b>a>c"


def test_relation_rejects_non_permutations():
    with pytest.raises(ValueError):
        PreferenceRelation((0, 0, 1))
    with pytest.raises(ValueError):
        PreferenceRelation((0, 2))


@given(permutation4)
def test_rank_counts_upper_contour(order):
    r = PreferenceRelation(order)
    for x in range(4):
        assert len(r.upper_contour(x)) == r.rank(x)
        assert x in r.upper_contour(x)


@given(permutation4, st.integers(0, 3), st.integers(0, 3))
def test_prefers_is_a_strict_order(order, x, y):
    r = PreferenceRelation(order)
    if x == y:
        assert not r.prefers(x, y)
    else:
        assert r.prefers(x, y) != r.prefers(y, x)


@given(permutation4)
def test_relation_text_round_trip(order):
    r = PreferenceRelation(order)
    assert PreferenceRelation.from_text(r.to_text()) == r


def test_swapped_adjacent_pair_only():
    r = rel("a>b>c")
    assert r.swapped(0, 1) == rel("b>a>c")
    assert r.swapped(0, 1).swapped(1, 0) == r
    with pytest.raises(InvalidSwapError):
        r.swapped(0, 2)  # not adjacent
    with pytest.raises(InvalidSwapError):
        r.swapped(1, 0)  # wrong orientation


def test_all_relations_enumeration():
    rels = all_relations(3)
    assert len(rels) == 6
    assert rels[0] == rel("a>b>c")
    assert rels[-1] == rel("c>b>a")
    assert len(set(rels)) == 6


# -- profiles -----------------------------------------------------------------


def test_profile_construction_and_indexing():
    p = prof("a>b>c\nb>a>c\nc>b>a")
    assert p.n == 3 and p.m == 3
    assert p[1] == rel("b>a>c")
    assert list(p) == [rel("a>b>c"), rel("b>a>c"), rel("c>b>a")]
    with pytest.raises(ValueError):
        Profile([rel("a>b>c"), PreferenceRelation((0, 1))])


def test_profile_replace_is_persistent():
    p = prof("a>b>c\nb>a>c")
    q = p.replace(0, rel("c>b>a"))
    assert q[0] == rel("c>b>a") and p[0] == rel("a>b>c")
    r = p.replace_many((0, 1), (rel("b>c>a"), rel("a>c>b")))
    assert r == prof("b>c>a\na>c>b")


@given(st.lists(permutation3, min_size=1, max_size=4))
def test_profile_text_round_trip(orders):
    p = Profile([PreferenceRelation(o) for o in orders])
    assert Profile.from_text(p.to_text()) == p


def test_parse_profiles_blocks_and_comments():
    text = """
    # leading comment
    a>b>c
    b>a>c

    c>b>a   # trailing comment
    a>c>b
    """
    blocks = parse_profiles(text)
    assert blocks == [prof("a>b>c\nb>a>c"), prof("c>b>a\na>c>b")]
    with pytest.raises(ProfileParseError):
        parse_profiles("   \n# nothing here\n")


def test_all_profiles_count_and_canonical_order():
    profiles = list(all_profiles(2, 3))
    assert len(profiles) == full_profile_count(2, 3) == 36
    keys = [profile_key(p) for p in profiles]
    assert keys == sorted(keys)
    assert len(set(profiles)) == 36


def test_full_profile_count_frozen_values():
    assert full_profile_count(3, 3) == 216
    assert full_profile_count(4, 3) == 1296
    assert full_profile_count(3, 4) == 13824


# -- majority relation --------------------------------------------------------


def test_majority_margin_hand_values():
    p = prof("a>b>c\nb>a>c\nc>b>a")
    assert majority_margin(p, 0, 1) == -1
    assert majority_margin(p, 1, 0) == 1
    assert majority_margin(p, 1, 2) == 1
    with pytest.raises(ValueError):
        majority_margin(p, 0, 0)


def test_margin_antisymmetry_and_parity_seeded():
    rng = random.Random(7)
    rels = all_relations(3)
    for _ in range(50):
        n = rng.choice((2, 3, 4, 5))
        p = Profile([rels[rng.randrange(6)] for _ in range(n)])
        for x in range(3):
            for y in range(x + 1, 3):
                mxy = majority_margin(p, x, y)
                assert mxy == -majority_margin(p, y, x)
                assert abs(mxy) <= n
                assert (mxy - n) % 2 == 0


def test_condorcet_winner_basic_cases():
    assert condorcet_winner(prof("a>b>c\na>c>b\nb>a>c")) == 0
    assert condorcet_winner(prof("a>b>c\nb>c>a\nc>a>b")) is None
    # even electorate with a majority tie has no winner
    assert condorcet_winner(prof("a>b>c\nb>a>c")) is None


def test_condorcet_winner_beats_everyone():
    rng = random.Random(21)
    rels = all_relations(3)
    for _ in range(100):
        p = Profile([rels[rng.randrange(6)] for _ in range(5)])
        w = condorcet_winner(p)
        if w is not None:
            assert all(
                majority_margin(p, w, y) > 0 for y in range(3) if y != w
            )


# -- tie-breaking -------------------------------------------------------------


def test_augment_appends_tiebreaker_as_voter():
    p = prof("a>b>c\nb>a>c")
    q = augment(p, rel("c>b>a"))
    assert q.n == 3 and q[2] == rel("c>b>a")
    with pytest.raises(ValueError):
        augment(p, PreferenceRelation((0, 1)))


def test_tiebroken_winner_resolves_ties():
    tied = prof("a>b>c\nb>a>c")
    assert tiebroken_winner(tied, rel("a>b>c")) == 0
    assert tiebroken_winner(tied, rel("b>c>a")) == 1


def test_tiebroken_winner_agrees_with_outright_winner():
    # when a strict majority winner exists, tie-breaking cannot change it
    rng = random.Random(3)
    rels = all_relations(3)
    for _ in range(100):
        p = Profile([rels[rng.randrange(6)] for _ in range(4)])
        w = condorcet_winner(p)
        if w is not None:
            for tb in rels:
                assert tiebroken_winner(p, tb) == w


# -- swaps and Pareto ---------------------------------------------------------


def test_swap_profile_single_voter():
    p = prof("a>b>c\nb>a>c")
    q = swap(p, 0, 0, 1)
    assert q == prof("b>a>c\nb>a>c")
    assert p == prof("a>b>c\nb>a>c")
    with pytest.raises(InvalidSwapError):
        swap(p, 1, 0, 1)


def test_pareto_dominates():
    p = prof("a>b>c\na>c>b")
    assert pareto_dominates(p, 0, 1)
    assert not pareto_dominates(p, 1, 2)
    with pytest.raises(ValueError):
        pareto_dominates(p, 2, 2)
