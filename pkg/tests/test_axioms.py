from fractions import Fraction

import pytest

from condlab.axioms import (
    Verdict,
    check_ex_post_efficient,
    check_group_strategyproof,
    check_localized,
    check_non_imposition,
    check_non_perverse,
    check_strategyproof,
    checker_for,
    implication_suite,
    replay_witness,
)
from condlab.core import PreferenceRelation, Profile
from condlab.domains import (
    CondorcetDomain,
    ExplicitDomain,
    ExtendedDomain,
    FullDomain,
    majority_cycle_profile,
)
from condlab.lottery import Lottery, sd_compare
from condlab.sds import (
    Borda,
    CondorcetRule,
    Dictatorship,
    Mixture,
    Plurality,
    RandomDictatorship,
    TableSDS,
    signed_mixture_counterexample,
)
from condlab.theorems import catalog, perturbed_condorcet_table

F = Fraction


def prof(text):
    return Profile.from_text(text)


# -- strategyproofness ----------------------------------------------------------


def test_condorcet_rule_strategyproof_on_condorcet_domain():
    verdict = check_strategyproof(CondorcetRule(3, 3), CondorcetDomain(3, 3))
    assert verdict.holds and verdict.witness is None
    assert verdict.profiles_checked == 204


def test_dictatorship_strategyproof_on_full_domain():
    verdict = check_strategyproof(Dictatorship(1, 3, 3), FullDomain(3, 3))
    assert verdict.holds


def test_random_dictatorship_strategyproof():
    rd = RandomDictatorship([F(1, 2), F(1, 4), F(1, 4)], 3)
    assert check_strategyproof(rd, FullDomain(3, 3)).holds


def test_perturbed_table_is_manipulable():
    table = perturbed_condorcet_table(3, 3)
    verdict = check_strategyproof(table, CondorcetDomain(3, 3))
    assert not verdict.holds
    w = verdict.witness
    # the reported comparison must reproduce stand-alone
    replayed = sd_compare(
        w.profile[w.voter],
        table.evaluate(w.profile),
        table.evaluate(w.deviation),
    )
    assert not replayed.weakly_prefers
    assert replay_witness(table, CondorcetDomain(3, 3), verdict.to_json_dict())


def test_positional_rules_are_manipulable_on_full_domain():
    assert not check_strategyproof(Plurality(3, 3), FullDomain(3, 3)).holds
    assert not check_strategyproof(Borda(3, 3), FullDomain(3, 3)).holds


def test_worker_count_does_not_change_verdict():
    table = perturbed_condorcet_table(3, 3)
    dom = CondorcetDomain(3, 3)
    sequential = check_strategyproof(table, dom, workers=1)
    parallel = check_strategyproof(table, dom, workers=2)
    assert sequential.holds == parallel.holds
    assert sequential.witness.profile == parallel.witness.profile
    assert sequential.witness.voter == parallel.witness.voter
    assert sequential.witness.deviation == parallel.witness.deviation


# -- group strategyproofness -------------------------------------------------------


def test_condorcet_rule_group_strategyproof():
    verdict = check_group_strategyproof(
        CondorcetRule(3, 3), CondorcetDomain(3, 3), max_coalition=3
    )
    assert verdict.holds


def test_dictatorship_group_strategyproof_beyond_condorcet_domain():
    dom = ExtendedDomain(CondorcetDomain(3, 3), [majority_cycle_profile(3, 3)])
    verdict = check_group_strategyproof(Dictatorship(0, 3, 3), dom, max_coalition=3)
    assert verdict.holds


def test_proper_mixture_is_group_manipulable():
    blend = Mixture(
        [(F(1, 2), CondorcetRule(3, 3)), (F(1, 2), Dictatorship(0, 3, 3))]
    )
    dom = CondorcetDomain(3, 3)
    verdict = check_group_strategyproof(blend, dom, max_coalition=3)
    assert not verdict.holds
    w = verdict.witness
    assert len(w.coalition) >= 2
    # nobody in the coalition weakly prefers the honest outcome
    honest = blend.evaluate(w.profile)
    shifted = blend.evaluate(w.deviation)
    for voter in w.coalition:
        assert not sd_compare(w.profile[voter], honest, shifted).weakly_prefers
    assert replay_witness(blend, dom, verdict.to_json_dict())


def test_group_check_with_singleton_bound_matches_strategyproofness():
    dom = CondorcetDomain(3, 3)
    for name, sds in catalog(3, 3):
        sp = check_strategyproof(sds, dom)
        gsp = check_group_strategyproof(sds, dom, max_coalition=1)
        assert sp.holds == gsp.holds, name
        if not sp.holds:
            assert gsp.witness.profile == sp.witness.profile
            assert gsp.witness.coalition == (sp.witness.voter,)


def test_group_witness_stable_when_bound_grows():
    blend = Mixture(
        [(F(1, 2), CondorcetRule(3, 3)), (F(1, 2), Dictatorship(0, 3, 3))]
    )
    dom = CondorcetDomain(3, 3)
    at_two = check_group_strategyproof(blend, dom, max_coalition=2)
    at_three = check_group_strategyproof(blend, dom, max_coalition=3)
    assert not at_two.holds and not at_three.holds
    assert at_two.witness.to_json_dict() == at_three.witness.to_json_dict()


# -- non-imposition ------------------------------------------------------------------


def test_condorcet_rule_non_imposing():
    assert check_non_imposition(CondorcetRule(3, 3), CondorcetDomain(3, 3)).holds


def test_counterexample_non_imposing():
    sds = signed_mixture_counterexample(4, 3)
    assert check_non_imposition(sds, CondorcetDomain(4, 3)).holds


def test_constant_scheme_fails_non_imposition():
    profiles = [prof("a>b>c\nb>a>c\na>c>b"), prof("b>a>c\nb>a>c\na>c>b")]
    table = TableSDS({p: Lottery.uniform(3) for p in profiles})
    verdict = check_non_imposition(table, ExplicitDomain(profiles))
    assert not verdict.holds
    assert verdict.witness.alternative == 0


# -- ex post efficiency ----------------------------------------------------------------


def test_expost_holds_for_standard_schemes():
    dom = CondorcetDomain(3, 3)
    assert check_ex_post_efficient(CondorcetRule(3, 3), dom).holds
    assert check_ex_post_efficient(
        RandomDictatorship([F(1, 3)] * 3, 3), dom
    ).holds


def test_expost_detects_mass_on_dominated_alternative():
    unanimous = prof("a>b>c\na>b>c\na>b>c")
    table = TableSDS({unanimous: Lottery([F(1, 2), F(0), F(1, 2)])})
    verdict = check_ex_post_efficient(table, ExplicitDomain([unanimous]))
    assert not verdict.holds
    assert verdict.witness.dominated == 2
    assert verdict.witness.probability == F(1, 2)


def test_lemma_style_implication_on_condorcet_domain():
    # schemes passing strategyproofness and non-imposition here must also
    # pass ex post efficiency
    dom = CondorcetDomain(3, 3)
    for name, sds in catalog(3, 3):
        sp = check_strategyproof(sds, dom)
        ni = check_non_imposition(sds, dom)
        if sp.holds and ni.holds:
            assert check_ex_post_efficient(sds, dom).holds, name


# -- swap axioms -------------------------------------------------------------------------


def test_dictatorship_localized_and_non_perverse():
    dom = FullDomain(3, 3)
    assert check_localized(Dictatorship(0, 3, 3), dom).holds
    assert check_non_perverse(Dictatorship(0, 3, 3), dom).holds


def test_perturbed_table_fails_localizedness():
    table = perturbed_condorcet_table(3, 3)
    verdict = check_localized(table, CondorcetDomain(3, 3))
    assert not verdict.holds
    w = verdict.witness
    assert w.watched not in (w.raised, w.lowered)
    assert w.before != w.after


def test_implication_suite_consistent_for_catalog():
    dom = FullDomain(3, 3)
    for name, sds in catalog(3, 3):
        if not isinstance(sds.valid_domain, FullDomain):
            continue
        report = implication_suite(sds, dom)
        assert report.consistent, name
        assert report.full_domain
        # frozen expectation of the equivalence on the full domain
        assert report.strategyproof.holds == (
            report.localized.holds and report.non_perverse.holds
        ), name


# -- plumbing ----------------------------------------------------------------------------


def test_verdict_json_schema():
    verdict = check_strategyproof(CondorcetRule(3, 3), CondorcetDomain(3, 3))
    data = verdict.to_json_dict()
    assert sorted(data) == [
        "axiom",
        "comparisons",
        "holds",
        "profiles_checked",
        "witness",
    ]
    assert data["witness"] is None


def test_checker_for_names():
    assert checker_for("strategyproof") is check_strategyproof
    assert checker_for("group-strategyproof") is check_group_strategyproof
    with pytest.raises(ValueError):
        checker_for("sp")


def test_replay_requires_witness():
    verdict = check_strategyproof(CondorcetRule(3, 3), CondorcetDomain(3, 3))
    with pytest.raises(ValueError):
        replay_witness(
            CondorcetRule(3, 3), CondorcetDomain(3, 3), verdict.to_json_dict()
        )


def test_replay_rejects_witness_for_other_scheme():
    table = perturbed_condorcet_table(3, 3)
    verdict = check_strategyproof(table, CondorcetDomain(3, 3))
    assert not replay_witness(
        CondorcetRule(3, 3), CondorcetDomain(3, 3), verdict.to_json_dict()
    )
