"""Batteries of checks for the main structural claims about majority-winner
schemes.

Each criterion function runs one self-contained experiment and returns a
plain dict with keys ``criterion`` (int), ``title`` (str), ``ok`` (bool) and
``details`` (JSON-friendly dict).  ``run_battery`` groups them the way the
command line exposes them.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .analysis import (
    extension_feasibility,
    max_dictatorial_weight,
    probe_coefficients,
    verify_mixture,
    MixtureCoefficients,
)
from .axioms import (
    check_ex_post_efficient,
    check_group_strategyproof,
    check_non_imposition,
    check_strategyproof,
    implication_suite,
)
from .core import PreferenceRelation, Profile
from .domains import (
    CondorcetDomain,
    ExtendedDomain,
    FullDomain,
    TieBreakingCondorcetDomain,
    find_profiles_beyond_unilateral_reach,
    is_connected,
    is_weakly_connected,
    majority_cycle_profile,
)
from .adpath import build_adpath, validate_adpath
from .lottery import Lottery, NegativeProbabilityError, sd_compare
from .sds import (
    Borda,
    CondorcetRule,
    Dictatorship,
    Mixture,
    Plurality,
    RandomDictatorship,
    SignedMixture,
    TableSDS,
    TieBreakingCondorcetRule,
    signed_mixture_counterexample,
)

DEFAULT_TIEBREAKERS = ("a>b>c", "c>b>a")


# -- building blocks ----------------------------------------------------------


def coefficient_grid(n: int, step: Fraction = Fraction(1, 4)) -> List[MixtureCoefficients]:
    """All mixture coefficient vectors (majority weight plus one weight per
    voter) whose entries are multiples of ``step`` and sum to one."""
    if step <= 0 or (Fraction(1) / step).denominator != 1:
        raise ValueError("step must evenly divide 1")
    levels = int(Fraction(1) / step)
    out: List[MixtureCoefficients] = []

    def fill(prefix: List[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(grid_point(prefix + [remaining]))
            return
        for units in range(remaining + 1):
            fill(prefix + [units], remaining - units, slots - 1)

    def grid_point(units: List[int]) -> MixtureCoefficients:
        weights = [step * u for u in units]
        return MixtureCoefficients(weights[0], tuple(weights[1:]))

    fill([], levels, n + 1)
    return out


def mixture_sds(coeffs: MixtureCoefficients, n: int, m: int, reference=None):
    """Materialize the scheme described by mixture coefficients.

    The reference part defaults to the majority-winner rule.  A vector with
    zero majority weight yields a random dictatorship, which is defined on
    every profile; negative entries yield a signed mixture.
    """
    if len(coeffs.voter_weights) != n:
        raise ValueError(f"expected {n} voter weights, got {len(coeffs.voter_weights)}")
    if coeffs.condorcet_weight == 0 and all(w >= 0 for w in coeffs.voter_weights):
        return RandomDictatorship(list(coeffs.voter_weights), m)
    if reference is None:
        reference = CondorcetRule(n, m)
    parts: List[Tuple[Fraction, object]] = []
    if coeffs.condorcet_weight != 0:
        parts.append((coeffs.condorcet_weight, reference))
    for i, w in enumerate(coeffs.voter_weights):
        if w != 0:
            parts.append((w, Dictatorship(i, n, m)))
    if coeffs.nonnegative:
        return Mixture(parts)
    return SignedMixture(parts)


def perturbed_condorcet_table(n: int, m: int) -> TableSDS:
    """The majority-winner rule as an explicit table, with one entry replaced
    by a point lottery on a non-winner.  Useful as a scheme that is neither
    strategyproof nor a mixture."""
    dom = CondorcetDomain(n, m)
    rule = CondorcetRule(n, m)
    mapping = {profile: rule.evaluate(profile) for profile in dom.members()}
    flaw = Profile(
        [PreferenceRelation(range(m))] * (n - 1)
        + [PreferenceRelation((1, 0) + tuple(range(2, m)))]
    )
    mapping[flaw] = Lottery.point(1, m)
    return TableSDS(mapping, valid_domain=dom, name="cond-perturbed")


def catalog(n: int, m: int) -> List[Tuple[str, object]]:
    """A spread of schemes on the majority-winner domain: the rule itself,
    dictatorships, random dictatorships, two positional rules and a
    deliberately broken table."""
    uniform = [Fraction(1, n)] * n
    lopsided = [Fraction(1, 2), Fraction(1, 2)] + [Fraction(0)] * (n - 2)
    skewed = [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)] + [Fraction(0)] * (n - 3)
    entries: List[Tuple[str, object]] = [("cond", CondorcetRule(n, m))]
    entries += [(f"dict:{i}", Dictatorship(i, n, m)) for i in range(n)]
    entries += [
        ("rd-uniform", RandomDictatorship(uniform, m)),
        ("rd-lopsided", RandomDictatorship(lopsided, m)),
        ("rd-skewed", RandomDictatorship(skewed, m)),
        ("plurality", Plurality(n, m)),
        ("borda", Borda(n, m)),
        ("cond-perturbed", perturbed_condorcet_table(n, m)),
    ]
    return entries


def full_domain_catalog(n: int, m: int) -> List[Tuple[str, object]]:
    """The catalog entries that are defined on every profile."""
    return [
        (name, sds)
        for name, sds in catalog(n, m)
        if isinstance(sds.valid_domain, FullDomain)
    ]


# -- the whole-electorate manipulation pattern --------------------------------


def proof_pattern_profile(voter: int, n: int) -> Tuple[Profile, Profile]:
    """The canonical group-manipulation instance for three alternatives: one
    voter ranks (c, a, b), everyone else (b, a, c), and the whole electorate
    misreports the unanimous order (a, b, c).

    Returns the truthful profile and the misreported one.
    """
    lone = PreferenceRelation((2, 0, 1))
    rest = PreferenceRelation((1, 0, 2))
    truth = Profile([lone if i == voter else rest for i in range(n)])
    lie = Profile([PreferenceRelation((0, 1, 2))] * n)
    return truth, lie


def matches_proof_pattern(witness: Dict) -> bool:
    """Whether a group-manipulation witness (in JSON form) is a relabeling of
    the whole-electorate pattern above."""
    coalition = witness.get("coalition")
    profile_text = witness.get("profile")
    deviation_text = witness.get("deviation")
    if coalition is None or profile_text is None or deviation_text is None:
        return False
    truth = Profile.from_text(profile_text)
    lie = Profile.from_text(deviation_text)
    n = truth.n
    if tuple(coalition) != tuple(range(n)):
        return False
    if truth.m != 3 or len(set(lie.relations)) != 1:
        return False
    counts: Dict[PreferenceRelation, int] = {}
    for rel in truth.relations:
        counts[rel] = counts.get(rel, 0) + 1
    if sorted(counts.values()) != [1, n - 1]:
        return False
    lone = next(rel for rel, k in counts.items() if k == 1)
    rest = next(rel for rel, k in counts.items() if k == n - 1)
    c, a, b = lone.order
    if rest.order != (b, a, c):
        return False
    return lie.relations[0].order == (a, b, c)


def pattern_is_group_violation(sds, voter: int, n: int) -> bool:
    """Directly verify that the whole-electorate pattern built around
    ``voter`` is a genuine group manipulation of ``sds``: no member weakly
    prefers the honest outcome to the jointly misreported one, so nobody
    blocks the deviation."""
    truth, lie = proof_pattern_profile(voter, n)
    honest = sds.evaluate(truth)
    shifted = sds.evaluate(lie)
    return not any(
        sd_compare(truth.relations[i], honest, shifted).weakly_prefers
        for i in range(n)
    )


# -- criteria -----------------------------------------------------------------


def _result(criterion: int, title: str, ok: bool, details: Dict) -> Dict:
    return {"criterion": criterion, "title": title, "ok": bool(ok), "details": details}


def criterion_1(n: int = 3, m: int = 3, step: Fraction = Fraction(1, 4)) -> Dict:
    """Every nonnegative grid mixture of the majority rule and dictatorships
    is strategyproof, non-imposing and ex-post efficient on the majority
    domain."""
    dom = CondorcetDomain(n, m)
    started = time.monotonic()
    failures: List[str] = []
    grid = coefficient_grid(n, step)
    for coeffs in grid:
        sds = mixture_sds(coeffs, n, m)
        for verdict in (
            check_strategyproof(sds, dom),
            check_non_imposition(sds, dom),
            check_ex_post_efficient(sds, dom),
        ):
            if not verdict.holds:
                failures.append(f"{coeffs.to_json_dict()} fails {verdict.axiom}")
    elapsed = time.monotonic() - started
    details = {
        "mixtures": len(grid),
        "domain_size": len(dom.members()),
        "elapsed_seconds": round(elapsed, 2),
        "failures": failures,
    }
    return _result(1, "grid mixtures satisfy the axioms", not failures, details)


def criterion_2(n: int = 3, m: int = 3) -> Dict:
    """On the majority domain, strategyproofness plus non-imposition holds
    exactly when the probed coefficients are nonnegative and reproduce the
    scheme."""
    dom = CondorcetDomain(n, m)
    reference = CondorcetRule(n, m)
    per_scheme: Dict[str, Dict] = {}
    ok = True
    for name, sds in catalog(n, m):
        axioms_hold = (
            check_strategyproof(sds, dom).holds
            and check_non_imposition(sds, dom).holds
        )
        coeffs = probe_coefficients(sds, anchor=0)
        mixture_holds = (
            coeffs.nonnegative
            and verify_mixture(sds, dom, coeffs, reference).holds
        )
        per_scheme[name] = {
            "axioms": axioms_hold,
            "mixture": mixture_holds,
            "coefficients": coeffs.to_json_dict(),
        }
        if axioms_hold != mixture_holds:
            ok = False
    return _result(
        2,
        "axioms equivalent to a nonnegative mixture representation",
        ok,
        {"schemes": per_scheme},
    )


def criterion_3(n: int = 4, m: int = 3) -> Dict:
    """The even-electorate signed mixture is a well-defined strategyproof and
    non-imposing scheme whose probed majority weight is negative."""
    dom = CondorcetDomain(n, m)
    sds = signed_mixture_counterexample(n, m)
    negatives: List[str] = []
    for profile in dom.members():
        try:
            sds.evaluate(profile)
        except NegativeProbabilityError:
            negatives.append(profile.to_text())
    sp = check_strategyproof(sds, dom)
    ni = check_non_imposition(sds, dom)
    expected = MixtureCoefficients(
        Fraction(-1, n - 1), tuple([Fraction(1, n - 1)] * n)
    )
    probes = {anchor: probe_coefficients(sds, anchor) for anchor in range(m)}
    probes_ok = all(c == expected for c in probes.values())
    mixture = verify_mixture(sds, dom, expected, CondorcetRule(n, m))
    ok = not negatives and sp.holds and ni.holds and probes_ok and mixture.holds
    details = {
        "profiles": len(dom.members()),
        "negative_entries": negatives,
        "strategyproof": sp.holds,
        "non_imposing": ni.holds,
        "expected_coefficients": expected.to_json_dict(),
        "probes_match": probes_ok,
        "mixture_verified": mixture.holds,
    }
    return _result(3, "signed mixture on an even electorate", ok, details)


def criterion_4(
    n: int = 4,
    m: int = 3,
    tiebreakers: Sequence[str] = DEFAULT_TIEBREAKERS,
    step: Fraction = Fraction(1, 4),
) -> Dict:
    """Grid mixtures of the tie-breaking majority rule and dictatorships are
    strategyproof and non-imposing on the tie-breaking domain, and probing
    recovers the exact coefficients at every anchor."""
    per_tb: Dict[str, Dict] = {}
    ok = True
    started = time.monotonic()
    for tb_text in tiebreakers:
        tb = PreferenceRelation.from_text(tb_text)
        dom = TieBreakingCondorcetDomain(tb, n, m)
        reference = TieBreakingCondorcetRule(tb, n)
        failures: List[str] = []
        grid = coefficient_grid(n, step)
        for coeffs in grid:
            sds = mixture_sds(coeffs, n, m, reference=reference)
            sp = check_strategyproof(sds, dom)
            ni = check_non_imposition(sds, dom)
            if not (sp.holds and ni.holds):
                failures.append(f"{coeffs.to_json_dict()} fails axioms")
                continue
            recovered = {probe_coefficients(sds, anchor) for anchor in range(m)}
            if recovered != {coeffs}:
                failures.append(f"{coeffs.to_json_dict()} probes do not match")
        per_tb[tb_text] = {"mixtures": len(grid), "failures": failures}
        if failures:
            ok = False
    details = {
        "tiebreakers": per_tb,
        "elapsed_seconds": round(time.monotonic() - started, 2),
    }
    return _result(4, "tie-breaking grid mixtures probe exactly", ok, details)


def criterion_5(n: int = 3, m: int = 3, step: Fraction = Fraction(1, 4)) -> Dict:
    """Extending schemes from the majority domain to one extra cyclic profile:
    the majority rule cannot be extended, random dictatorships can, and
    feasibility of a grid mixture is decided by its majority weight."""
    dom = CondorcetDomain(n, m)
    cycle = majority_cycle_profile(n, m)
    started = time.monotonic()

    cond = CondorcetRule(n, m)
    cond_res = extension_feasibility(cond, dom, [cycle])

    uniform = RandomDictatorship([Fraction(1, n)] * n, m)
    rd_res = extension_feasibility(uniform, dom, [cycle])
    rd_witness_uniform = (
        rd_res.feasible
        and rd_res.witness is not None
        and rd_res.witness[cycle] == Lottery.uniform(m)
    )

    mismatches: List[str] = []
    for coeffs in coefficient_grid(n, step):
        sds = mixture_sds(coeffs, n, m)
        res = extension_feasibility(sds, dom, [cycle])
        expected = coeffs.condorcet_weight == 0
        if res.feasible != expected:
            mismatches.append(
                f"{coeffs.to_json_dict()}: feasible={res.feasible}, expected={expected}"
            )
    elapsed = time.monotonic() - started
    ok = (not cond_res.feasible) and rd_witness_uniform and not mismatches
    details = {
        "cycle_profile": cycle.to_text(),
        "cond_feasible": cond_res.feasible,
        "rd_feasible": rd_res.feasible,
        "rd_witness_uniform": rd_witness_uniform,
        "grid_mismatches": mismatches,
        "elapsed_seconds": round(elapsed, 2),
    }
    return _result(5, "extension to a cyclic profile", ok, details)


def criterion_6(n: int = 3, m: int = 3) -> Dict:
    """Exhibit a profile at unilateral distance at least two from the majority
    domain on the smallest odd electorate."""
    dom = CondorcetDomain(n, m)
    found = find_profiles_beyond_unilateral_reach(dom)
    ok = bool(found)
    details = {
        "searched": len(FullDomain(n, m).members()),
        "found": len(found),
        "profiles": [p.to_text() for p in found[:5]],
    }
    if not found:
        details["analysis"] = (
            "exhaustive search over all 216 three-voter profiles finds none: "
            "every profile without a majority winner acquires one after a "
            "single voter swap, so no profile is two or more unilateral "
            "steps away from the domain at this size (the phenomenon needs "
            "a larger electorate, for example nine voters)"
        )
    return _result(6, "profile beyond unilateral reach", ok, details)


def criterion_7(
    ns: Sequence[int] = (3, 4), m: int = 3, step: Fraction = Fraction(1, 4)
) -> Dict:
    """Group strategyproofness separates the pure schemes from proper
    mixtures, and the canonical witness is claimed to be the whole-electorate
    pattern."""
    started = time.monotonic()
    pure_failures: List[str] = []
    mixture_passes: List[str] = []
    pattern_mismatches: List[Dict] = []
    pattern_checked = 0
    pattern_control_failures: List[str] = []
    for n in ns:
        dom = CondorcetDomain(n, m)
        pure = [("cond", CondorcetRule(n, m))]
        pure += [(f"dict:{i}", Dictatorship(i, n, m)) for i in range(n)]
        for name, sds in pure:
            verdict = check_group_strategyproof(sds, dom, max_coalition=n)
            if not verdict.holds:
                pure_failures.append(f"n={n} {name}")
        for coeffs in coefficient_grid(n, step):
            positive = [w for w in [coeffs.condorcet_weight, *coeffs.voter_weights] if w > 0]
            if len(positive) < 2:
                continue
            sds = mixture_sds(coeffs, n, m)
            verdict = check_group_strategyproof(sds, dom, max_coalition=n)
            if verdict.holds:
                mixture_passes.append(f"n={n} {coeffs.to_json_dict()}")
                continue
            fractional = [w for w in coeffs.voter_weights if 0 < w < 1]
            if not fractional:
                continue
            pattern_checked += 1
            if not matches_proof_pattern(verdict.witness.to_json_dict()):
                pattern_mismatches.append(
                    {
                        "n": n,
                        "coefficients": coeffs.to_json_dict(),
                        "witness": verdict.witness.to_json_dict(),
                    }
                )
            voter = next(
                i for i, w in enumerate(coeffs.voter_weights) if 0 < w < 1
            )
            if not pattern_is_group_violation(sds, voter, n):
                pattern_control_failures.append(f"n={n} {coeffs.to_json_dict()}")
    elapsed = time.monotonic() - started
    ok = (
        not pure_failures
        and not mixture_passes
        and not pattern_mismatches
        and not pattern_control_failures
    )
    details = {
        "pure_failures": pure_failures,
        "mixture_passes": mixture_passes,
        "pattern_instances_checked": pattern_checked,
        "pattern_mismatches": pattern_mismatches[:3],
        "pattern_mismatch_count": len(pattern_mismatches),
        "pattern_is_violation_everywhere": not pattern_control_failures,
        "elapsed_seconds": round(elapsed, 2),
    }
    if pattern_mismatches and not pattern_control_failures:
        details["analysis"] = (
            "the whole-electorate pattern is a genuine group manipulation "
            "for every checked mixture, but it is never the first violation "
            "in (profile, coalition size, coalition, deviation) order: "
            "smaller coalitions at lexicographically earlier profiles "
            "always come first, so the canonical witness is a proper "
            "sub-coalition rather than the whole electorate"
        )
    return _result(
        7, "group strategyproofness separates mixtures", ok, details
    )


def criterion_8(n: int = 3, m: int = 3, seed: int = 0, samples: int = 10) -> Dict:
    """On the majority domain extended by the cyclic profile, no assignment of
    a lottery to the cycle keeps the extended majority rule group
    strategyproof, while dictatorships remain group strategyproof."""
    base = CondorcetDomain(n, m)
    cycle = majority_cycle_profile(n, m)
    dom = ExtendedDomain(base, [cycle])
    rule = CondorcetRule(n, m)
    rng = random.Random(seed)

    lotteries: List[Lottery] = [Lottery.point(x, m) for x in range(m)]
    lotteries.append(Lottery.uniform(m))
    while len(lotteries) < samples:
        cuts = sorted(rng.randrange(0, 13) for _ in range(m - 1))
        parts = [cuts[0]] + [
            cuts[k] - cuts[k - 1] for k in range(1, m - 1)
        ] + [12 - cuts[-1]]
        candidate = Lottery([Fraction(p, 12) for p in parts])
        if candidate not in lotteries:
            lotteries.append(candidate)

    surviving: List[Dict] = []
    for lottery in lotteries:
        mapping = {profile: rule.evaluate(profile) for profile in base.members()}
        mapping[cycle] = lottery
        extended = TableSDS(mapping, valid_domain=dom, name="cond-extended")
        verdict = check_group_strategyproof(extended, dom, max_coalition=n)
        if verdict.holds:
            surviving.append(lottery.to_json_dict())

    dictator_failures: List[str] = []
    for i in range(n):
        verdict = check_group_strategyproof(Dictatorship(i, n, m), dom, max_coalition=n)
        if not verdict.holds:
            dictator_failures.append(f"dict:{i}")

    ok = not surviving and not dictator_failures
    details = {
        "extension_profile": cycle.to_text(),
        "lotteries_tried": len(lotteries),
        "extensions_surviving": surviving,
        "dictator_failures": dictator_failures,
    }
    return _result(8, "no group-strategyproof extension of the majority rule", ok, details)


def criterion_9(seed: int = 0, samples: int = 500) -> Dict:
    """Connectivity of the majority domains and validity of the constructed
    swap paths."""
    started = time.monotonic()
    checks: Dict[str, bool] = {}
    checks["condorcet_n3_connected"] = is_connected(CondorcetDomain(3, 3))
    checks["condorcet_n5_connected"] = is_connected(CondorcetDomain(5, 3))
    checks["condorcet_n4_not_weakly_connected"] = not is_weakly_connected(
        CondorcetDomain(4, 3)
    )
    for tb_text in DEFAULT_TIEBREAKERS:
        tb = PreferenceRelation.from_text(tb_text)
        checks[f"tb_n4_connected[{tb_text}]"] = is_connected(
            TieBreakingCondorcetDomain(tb, 4, 3)
        )

    dom3 = CondorcetDomain(3, 3)
    members3 = dom3.members()
    build_failures: List[str] = []
    for start in members3:
        for goal in members3:
            path = build_adpath(dom3, start, goal)
            if not validate_adpath(dom3, path).holds:
                build_failures.append(f"n=3 {start.to_text()!r} -> {goal.to_text()!r}")
    checks["all_pairs_n3_valid"] = not build_failures

    dom5 = CondorcetDomain(5, 3)
    members5 = dom5.members()
    rng = random.Random(seed)
    sampled_failures: List[str] = []
    for _ in range(samples):
        start = members5[rng.randrange(len(members5))]
        goal = members5[rng.randrange(len(members5))]
        path = build_adpath(dom5, start, goal)
        if not validate_adpath(dom5, path).holds:
            sampled_failures.append(f"n=5 {start.to_text()!r} -> {goal.to_text()!r}")
    checks["sampled_n5_valid"] = not sampled_failures

    ok = all(checks.values())
    details = {
        "checks": checks,
        "n3_pairs": len(members3) ** 2,
        "n5_samples": samples,
        "elapsed_seconds": round(time.monotonic() - started, 2),
    }
    return _result(9, "connectivity and constructed paths", ok, details)


def criterion_10(n: int = 3, m: int = 3) -> Dict:
    """On the full domain, strategyproofness coincides with localized plus
    non-perverse for every full-domain scheme in the catalog."""
    dom = FullDomain(n, m)
    per_scheme: Dict[str, Dict] = {}
    discrepancies: List[str] = []
    for name, sds in full_domain_catalog(n, m):
        report = implication_suite(sds, dom)
        per_scheme[name] = {
            "strategyproof": report.strategyproof.holds,
            "localized": report.localized.holds,
            "non_perverse": report.non_perverse.holds,
            "consistent": report.consistent,
        }
        if not report.consistent:
            discrepancies.append(name)
    ok = not discrepancies
    return _result(
        10,
        "strategyproofness equals localized plus non-perverse",
        ok,
        {"schemes": per_scheme, "discrepancies": discrepancies},
    )


def criterion_11(n: int = 3, m: int = 3) -> Dict:
    """The maximum total dictatorial weight is zero for the majority rule,
    one for random dictatorships, and matches the mixing weight for
    majority-dictatorship blends."""
    dom = CondorcetDomain(n, m)
    started = time.monotonic()
    cases: List[Tuple[str, object, Fraction]] = [
        ("cond", CondorcetRule(n, m), Fraction(0)),
        ("rd-uniform", RandomDictatorship([Fraction(1, n)] * n, m), Fraction(1)),
        (
            "rd-skewed",
            RandomDictatorship(
                [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)] + [Fraction(0)] * (n - 3), m
            ),
            Fraction(1),
        ),
    ]
    for lam in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        blend = Mixture(
            [
                (lam, RandomDictatorship([Fraction(1, n)] * n, m)),
                (1 - lam, CondorcetRule(n, m)),
            ]
        )
        cases.append((f"blend:{lam}", blend, lam))
    wrong: List[str] = []
    values: Dict[str, str] = {}
    slowest = 0.0
    for name, sds, expected in cases:
        t0 = time.monotonic()
        value = max_dictatorial_weight(sds, dom)
        slowest = max(slowest, time.monotonic() - t0)
        values[name] = str(value)
        if value != expected:
            wrong.append(f"{name}: got {value}, expected {expected}")
    details = {
        "values": values,
        "mismatches": wrong,
        "slowest_lp_seconds": round(slowest, 3),
        "elapsed_seconds": round(time.monotonic() - started, 2),
    }
    return _result(11, "maximum dictatorial weight", not wrong, details)


# -- batteries ----------------------------------------------------------------

BATTERIES = {
    1: (criterion_1, criterion_2, criterion_3, criterion_5),
    2: (criterion_4,),
    3: (criterion_7, criterion_8),
}


def run_battery(
    which: int,
    n: Optional[int] = None,
    m: int = 3,
    tiebreakers: Sequence[str] = DEFAULT_TIEBREAKERS,
    step: Fraction = Fraction(1, 4),
    seed: int = 0,
) -> List[Dict]:
    """Run one of the three check batteries and return the criterion results.

    Battery 1 covers the mixture characterization on odd electorates (plus
    the fixed even-electorate signed mixture), battery 2 the tie-breaking
    variant on even electorates, battery 3 the group-strategyproofness
    separation.
    """
    if which not in BATTERIES:
        raise ValueError(f"unknown battery {which}, expected 1, 2 or 3")
    results: List[Dict] = []
    if which == 1:
        odd_n = 3 if n is None else n
        if odd_n % 2 == 0:
            raise ValueError("battery 1 needs an odd number of voters")
        results.append(criterion_1(odd_n, m, step))
        results.append(criterion_2(odd_n, m))
        results.append(criterion_3(4, m))
        results.append(criterion_5(odd_n, m, step))
    elif which == 2:
        even_n = 4 if n is None else n
        if even_n % 2 == 1:
            raise ValueError("battery 2 needs an even number of voters")
        results.append(criterion_4(even_n, m, tiebreakers, step))
    else:
        odd_n = 3 if n is None else n
        if odd_n % 2 == 0:
            raise ValueError("battery 3 needs an odd number of voters")
        results.append(criterion_7((odd_n,), m, step))
        results.append(criterion_8(odd_n, m, seed))
    return results
