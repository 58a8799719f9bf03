from fractions import Fraction

import pytest

from condlab.analysis import (
    InfeasibleModelError,
    MixtureCoefficients,
    extension_feasibility,
    max_dictatorial_weight,
    probe_coefficients,
    probe_profile,
    verify_extension_witness,
    verify_mixture,
)
from condlab.core import PreferenceRelation, Profile, condorcet_winner
from condlab.domains import CondorcetDomain, TieBreakingCondorcetDomain, majority_cycle_profile
from condlab.lottery import Lottery
from condlab.sds import (
    CondorcetRule,
    Dictatorship,
    Mixture,
    RandomDictatorship,
    TableSDS,
    TieBreakingCondorcetRule,
    signed_mixture_counterexample,
)
from condlab.theorems import perturbed_condorcet_table

F = Fraction


def rel(text):
    return PreferenceRelation.from_text(text)


def prof(text):
    return Profile.from_text(text)


# -- coefficients ------------------------------------------------------------------


def test_coefficients_must_sum_to_one():
    with pytest.raises(ValueError):
        MixtureCoefficients(F(1, 2), (F(1, 2), F(1, 2), F(1, 2)))
    coeffs = MixtureCoefficients(F(1, 2), (F(1, 4), F(1, 4), F(0)))
    assert coeffs.nonnegative
    assert not MixtureCoefficients(F(-1, 3), (F(1, 3),) * 4).nonnegative


def test_coefficients_json_round_trip():
    coeffs = MixtureCoefficients(F(1, 4), (F(1, 2), F(1, 4), F(0)))
    data = coeffs.to_json_dict()
    assert data == {"gamma_C": "1/4", "gamma": ["1/2", "1/4", "0"]}
    assert MixtureCoefficients.from_json_dict(data) == coeffs


# -- probing -----------------------------------------------------------------------


def test_probe_profile_shape():
    p = probe_profile(3, 3, anchor=0, voter=1)
    assert p[1] == rel("c>a>b")
    assert p[0] == p[2] == rel("a>b>c")
    assert condorcet_winner(p) == 0


def test_probe_profile_larger_slate_appends_tail():
    p = probe_profile(3, 4, anchor=1, voter=0)
    # non-anchor alternatives in ascending order: a, c, d
    assert p[0] == rel("c>b>a>d")
    assert p[1] == p[2] == rel("b>a>c>d")


def test_probe_profile_validation():
    with pytest.raises(ValueError):
        probe_profile(3, 2, anchor=0, voter=0)
    with pytest.raises(ValueError):
        probe_profile(3, 3, anchor=3, voter=0)
    with pytest.raises(ValueError):
        probe_profile(3, 3, anchor=0, voter=5)


def test_probe_coefficients_pure_schemes():
    cond = probe_coefficients(CondorcetRule(3, 3), anchor=0)
    assert cond.condorcet_weight == 1
    assert cond.voter_weights == (F(0), F(0), F(0))
    rd = RandomDictatorship([F(1, 2), F(1, 4), F(1, 4)], 3)
    got = probe_coefficients(rd, anchor=2)
    assert got.condorcet_weight == 0
    assert got.voter_weights == (F(1, 2), F(1, 4), F(1, 4))


def test_probe_coefficients_blend_and_anchor_independence():
    lam = F(1, 4)
    blend = Mixture(
        [
            (lam, RandomDictatorship([F(1, 3)] * 3, 3)),
            (1 - lam, CondorcetRule(3, 3)),
        ]
    )
    expected = MixtureCoefficients(1 - lam, (lam / 3,) * 3)
    for anchor in range(3):
        assert probe_coefficients(blend, anchor) == expected


def test_probe_coefficients_signed_counterexample():
    sds = signed_mixture_counterexample(4, 3)
    for anchor in range(3):
        got = probe_coefficients(sds, anchor)
        assert got.condorcet_weight == F(-1, 3)
        assert got.voter_weights == (F(1, 3),) * 4


# -- representation checking ---------------------------------------------------------


def test_verify_mixture_accepts_true_representation():
    dom = CondorcetDomain(3, 3)
    blend = Mixture(
        [(F(1, 2), CondorcetRule(3, 3)), (F(1, 2), Dictatorship(0, 3, 3))]
    )
    coeffs = MixtureCoefficients(F(1, 2), (F(1, 2), F(0), F(0)))
    verdict = verify_mixture(blend, dom, coeffs, CondorcetRule(3, 3))
    assert verdict.holds
    assert verdict.profiles_checked == 204


def test_verify_mixture_rejects_wrong_coefficients():
    dom = CondorcetDomain(3, 3)
    blend = Mixture(
        [(F(1, 2), CondorcetRule(3, 3)), (F(1, 2), Dictatorship(0, 3, 3))]
    )
    wrong = MixtureCoefficients(F(1, 2), (F(0), F(1, 2), F(0)))
    verdict = verify_mixture(blend, dom, wrong, CondorcetRule(3, 3))
    assert not verdict.holds
    w = verdict.witness
    # the reported mismatch must recompute to the same numbers
    actual = blend.evaluate(w.profile)[w.alternative]
    assert actual == w.actual and w.actual != w.expected


def test_verify_mixture_tiebreaking_reference():
    tb = rel("a>b>c")
    dom = TieBreakingCondorcetDomain(tb, 4, 3)
    rule = TieBreakingCondorcetRule(tb, 4)
    coeffs = MixtureCoefficients(F(1), (F(0),) * 4)
    assert verify_mixture(rule, dom, coeffs, rule).holds


# -- dictatorial weight ----------------------------------------------------------------


def test_max_dictatorial_weight_pure_cases():
    dom = CondorcetDomain(3, 3)
    assert max_dictatorial_weight(CondorcetRule(3, 3), dom) == 0
    assert max_dictatorial_weight(Dictatorship(0, 3, 3), dom) == 1
    rd = RandomDictatorship([F(1, 2), F(1, 4), F(1, 4)], 3)
    assert max_dictatorial_weight(rd, dom) == 1


def test_max_dictatorial_weight_blends():
    dom = CondorcetDomain(3, 3)
    for lam in (F(1, 4), F(1, 2), F(3, 4)):
        blend = Mixture(
            [
                (lam, RandomDictatorship([F(1, 3)] * 3, 3)),
                (1 - lam, CondorcetRule(3, 3)),
            ]
        )
        assert max_dictatorial_weight(blend, dom) == lam


def test_max_dictatorial_weight_rejects_manipulable_scheme():
    with pytest.raises(InfeasibleModelError):
        max_dictatorial_weight(perturbed_condorcet_table(3, 3), CondorcetDomain(3, 3))


# -- extension feasibility ----------------------------------------------------------------


def test_condorcet_rule_has_no_extension_to_cycle():
    base = CondorcetDomain(3, 3)
    cycle = majority_cycle_profile(3, 3)
    result = extension_feasibility(CondorcetRule(3, 3), base, [cycle])
    assert not result.feasible
    assert result.witness is None
    assert result.conflict


def test_random_dictatorship_extends_uniformly():
    base = CondorcetDomain(3, 3)
    cycle = majority_cycle_profile(3, 3)
    rd = RandomDictatorship([F(1, 3)] * 3, 3)
    result = extension_feasibility(rd, base, [cycle])
    assert result.feasible
    assert result.witness[cycle] == Lottery.uniform(3)
    assert verify_extension_witness(rd, base, [cycle], result.witness)


def test_extension_witness_checker_rejects_bad_assignment():
    base = CondorcetDomain(3, 3)
    cycle = majority_cycle_profile(3, 3)
    rd = RandomDictatorship([F(1, 3)] * 3, 3)
    assert not verify_extension_witness(
        rd, base, [cycle], {cycle: Lottery.point(0, 3)}
    )


def test_extension_requires_extras_outside_base():
    base = CondorcetDomain(3, 3)
    inside = prof("a>b>c\na>b>c\na>b>c")
    with pytest.raises(ValueError):
        extension_feasibility(CondorcetRule(3, 3), base, [inside])


def test_non_imposition_flag_is_monotone():
    base = CondorcetDomain(3, 3)
    cycle = majority_cycle_profile(3, 3)
    rd = RandomDictatorship([F(1, 3)] * 3, 3)
    plain = extension_feasibility(rd, base, [cycle])
    with_flag = extension_feasibility(rd, base, [cycle], require_non_imposition=True)
    # the flagged problem is more constrained
    assert plain.feasible or not with_flag.feasible
    assert plain.feasible and with_flag.feasible  # both hold for this scheme


def test_imposing_scheme_needs_the_flag_to_fail():
    base = CondorcetDomain(3, 3)
    cycle = majority_cycle_profile(3, 3)
    mapping = {p: Lottery.point(0, 3) for p in base.members()}
    constant = TableSDS(mapping, valid_domain=base, name="const-a")
    assert extension_feasibility(constant, base, [cycle]).feasible
    flagged = extension_feasibility(
        constant, base, [cycle], require_non_imposition=True
    )
    assert not flagged.feasible


def test_feasibility_json_shape():
    base = CondorcetDomain(3, 3)
    cycle = majority_cycle_profile(3, 3)
    rd = RandomDictatorship([F(1, 3)] * 3, 3)
    data = extension_feasibility(rd, base, [cycle]).to_json_dict()
    assert sorted(data) == ["conflict", "feasible", "witness"]
    assert data["feasible"] is True
    assert cycle.to_text() in data["witness"]
