"""Axiom checkers for social decision schemes on finite domains.

Every checker scans its domain exhaustively in canonical order (profiles by
canonical key, voters ascending, deviations in lexicographic order) and
reports the first violation it meets, so witnesses are deterministic and
minimal in that order. Verdicts serialize to a stable JSON shape and every
reported witness can be replayed independently of the scan that found it.

The checkers implement, for a scheme f on domain D:

* strategyproofness: truth-telling stochastically dominates every
  in-domain unilateral deviation, voter by voter;
* group strategyproofness: no coalition can jointly misreport (staying in
  the domain) so that every member fails to weakly prefer the truthful
  outcome;
* non-imposition: every alternative receives probability exactly 1
  somewhere;
* ex post efficiency: Pareto-dominated alternatives get probability 0;
* localizedness: an adjacent swap of x and y leaves every other
  alternative's probability unchanged;
* non-perversity: pushing y up one adjacent position never lowers y's
  probability.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Tuple

from .core import Profile, alternative_index, alternative_name, pareto_dominates, swap
from .domains import Domain, FullDomain
from .lottery import Lottery, SDRelation, sd_compare


@dataclass(frozen=True)
class ManipulationWitness:
    profile: Profile
    voter: int
    deviation: Profile
    cut: int
    truthful: Lottery
    manipulated: Lottery

    def to_json_dict(self) -> dict:
        return {
            "profile": self.profile.to_text(),
            "voter": self.voter,
            "deviation": self.deviation.to_text(),
            "cut": alternative_name(self.cut),
            "truthful": self.truthful.to_json_dict(),
            "manipulated": self.manipulated.to_json_dict(),
        }


@dataclass(frozen=True)
class GroupManipulationWitness:
    profile: Profile
    coalition: Tuple[int, ...]
    deviation: Profile
    cuts: Tuple[Tuple[int, int], ...]  # (voter, failing cut) per coalition member

    def to_json_dict(self) -> dict:
        return {
            "profile": self.profile.to_text(),
            "coalition": list(self.coalition),
            "deviation": self.deviation.to_text(),
            "cuts": {str(v): alternative_name(c) for v, c in self.cuts},
        }


@dataclass(frozen=True)
class ImpositionWitness:
    alternative: int

    def to_json_dict(self) -> dict:
        return {"alternative": alternative_name(self.alternative)}


@dataclass(frozen=True)
class ExPostWitness:
    profile: Profile
    dominator: int
    dominated: int
    probability: Fraction

    def to_json_dict(self) -> dict:
        return {
            "profile": self.profile.to_text(),
            "dominator": alternative_name(self.dominator),
            "dominated": alternative_name(self.dominated),
            "probability": str(self.probability),
        }


@dataclass(frozen=True)
class SwapEffectWitness:
    """A single adjacent swap whose effect breaks localizedness or non-perversity."""

    profile: Profile
    voter: int
    lowered: int
    raised: int
    watched: int
    before: Fraction
    after: Fraction

    def to_json_dict(self) -> dict:
        return {
            "profile": self.profile.to_text(),
            "voter": self.voter,
            "lowered": alternative_name(self.lowered),
            "raised": alternative_name(self.raised),
            "watched": alternative_name(self.watched),
            "before": str(self.before),
            "after": str(self.after),
        }


@dataclass(frozen=True)
class Verdict:
    axiom: str
    holds: bool
    witness: Optional[object]
    profiles_checked: int
    comparisons: int

    def to_json_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_json_dict(),
            "profiles_checked": self.profiles_checked,
            "comparisons": self.comparisons,
        }


def _evaluator(sds) -> Callable[[Profile], Lottery]:
    cache: dict = {}

    def f(profile: Profile) -> Lottery:
        lot = cache.get(profile)
        if lot is None:
            lot = sds.evaluate(profile)
            cache[profile] = lot
        return lot

    return f


def _scan_strategyproof(sds, dom: Domain, members: Sequence[Profile]):
    f = _evaluator(sds)
    comparisons = 0
    for index, profile in enumerate(members):
        truthful = f(profile)
        for voter in range(dom.n):
            for deviation in dom.unilateral_deviations(profile, voter):
                verdict = sd_compare(profile[voter], truthful, f(deviation))
                comparisons += 1
                if not verdict.weakly_prefers:
                    witness = ManipulationWitness(
                        profile, voter, deviation, verdict.against_p,
                        truthful, f(deviation),
                    )
                    return index + 1, comparisons, witness
    return len(members), comparisons, None


def check_strategyproof(sds, dom: Domain, workers: int = 1) -> Verdict:
    """Exhaustive stochastic-dominance strategyproofness check."""
    members = dom.members()
    if workers <= 1 or len(members) < 2 * workers:
        checked, comparisons, witness = _scan_strategyproof(sds, dom, members)
    else:
        # Contiguous chunks preserve canonical order: the first chunk (in
        # member order) that reports a violation supplies the witness.
        size = (len(members) + workers - 1) // workers
        chunks = [members[i : i + size] for i in range(0, len(members), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _scan_strategyproof(sds, dom, c), chunks))
        # Tally only the chunks a sequential scan would have reached, so the
        # counters do not depend on the worker count.
        checked = comparisons = 0
        witness = None
        for chunk_checked, chunk_comparisons, chunk_witness in results:
            checked += chunk_checked
            comparisons += chunk_comparisons
            if chunk_witness is not None:
                witness = chunk_witness
                break
    return Verdict("strategyproof", witness is None, witness, checked, comparisons)


def check_group_strategyproof(
    sds, dom: Domain, max_coalition: Optional[int] = None
) -> Verdict:
    """Group strategyproofness against coalitions up to ``max_coalition`` voters.

    Coalitions are enumerated in size-then-lexicographic order and only joint
    misreports where every member actually changes are generated; a coalition
    with passive members succeeds exactly when its active core does, so this
    loses no violations and keeps the witness canonical.
    """
    members = dom.members()
    in_dom = dom.member_set()
    n = dom.n
    bound = n if max_coalition is None else min(max_coalition, n)
    f = _evaluator(sds)
    from .core import all_relations

    rels = all_relations(dom.m)
    comparisons = 0
    for index, profile in enumerate(members):
        truthful = f(profile)
        for size in range(1, bound + 1):
            for coalition in itertools.combinations(range(n), size):
                pools = [
                    [rel for rel in rels if rel != profile[i]] for i in coalition
                ]
                for claim in itertools.product(*pools):
                    deviation = profile.replace_many(coalition, claim)
                    if deviation not in in_dom:
                        continue
                    outcome = f(deviation)
                    cuts = []
                    content = False
                    for voter in coalition:
                        verdict = sd_compare(profile[voter], truthful, outcome)
                        comparisons += 1
                        if verdict.weakly_prefers:
                            content = True
                            break
                        cuts.append((voter, verdict.against_p))
                    if not content:
                        witness = GroupManipulationWitness(
                            profile, coalition, deviation, tuple(cuts)
                        )
                        return Verdict(
                            "group-strategyproof", False, witness, index + 1, comparisons
                        )
    return Verdict("group-strategyproof", True, None, len(members), comparisons)


def check_non_imposition(sds, dom: Domain) -> Verdict:
    """Every alternative must receive probability exactly 1 at some profile."""
    members = dom.members()
    f = _evaluator(sds)
    hit = [False] * dom.m
    comparisons = 0
    for profile in members:
        lot = f(profile)
        comparisons += 1
        winner = lot.is_point()
        if winner is not None:
            hit[winner] = True
    for x in range(dom.m):
        if not hit[x]:
            return Verdict(
                "non-imposition", False, ImpositionWitness(x), len(members), comparisons
            )
    return Verdict("non-imposition", True, None, len(members), comparisons)


def check_ex_post_efficient(sds, dom: Domain) -> Verdict:
    """Pareto-dominated alternatives must receive probability 0."""
    members = dom.members()
    f = _evaluator(sds)
    comparisons = 0
    for index, profile in enumerate(members):
        lot = f(profile)
        for x in range(dom.m):
            for y in range(dom.m):
                if x == y:
                    continue
                comparisons += 1
                if pareto_dominates(profile, x, y) and lot[y] > 0:
                    witness = ExPostWitness(profile, x, y, lot[y])
                    return Verdict(
                        "ex-post-efficient", False, witness, index + 1, comparisons
                    )
    return Verdict("ex-post-efficient", True, None, len(members), comparisons)


def _in_domain_swaps(dom: Domain, profile: Profile):
    """All in-domain ordered adjacent swaps from ``profile``: (voter, x, y, result)."""
    for voter in range(dom.n):
        order = profile[voter].order
        for slot in range(dom.m - 1):
            x, y = order[slot], order[slot + 1]
            candidate = swap(profile, voter, x, y)
            if dom.contains(candidate):
                yield voter, x, y, candidate


def check_localized(sds, dom: Domain) -> Verdict:
    """Adjacent swaps of x and y must leave all other probabilities unchanged."""
    members = dom.members()
    f = _evaluator(sds)
    comparisons = 0
    for index, profile in enumerate(members):
        before = f(profile)
        for voter, x, y, neighbor in _in_domain_swaps(dom, profile):
            after = f(neighbor)
            for z in range(dom.m):
                if z == x or z == y:
                    continue
                comparisons += 1
                if before[z] != after[z]:
                    witness = SwapEffectWitness(
                        profile, voter, x, y, z, before[z], after[z]
                    )
                    return Verdict("localized", False, witness, index + 1, comparisons)
    return Verdict("localized", True, None, len(members), comparisons)


def check_non_perverse(sds, dom: Domain) -> Verdict:
    """Reinforcing y by one adjacent position never lowers y's probability."""
    members = dom.members()
    f = _evaluator(sds)
    comparisons = 0
    for index, profile in enumerate(members):
        before = f(profile)
        for voter, x, y, neighbor in _in_domain_swaps(dom, profile):
            comparisons += 1
            after = f(neighbor)
            if after[y] < before[y]:
                witness = SwapEffectWitness(profile, voter, x, y, y, before[y], after[y])
                return Verdict("non-perverse", False, witness, index + 1, comparisons)
    return Verdict("non-perverse", True, None, len(members), comparisons)


_CHECKERS = {
    "strategyproof": check_strategyproof,
    "group-strategyproof": check_group_strategyproof,
    "non-imposition": check_non_imposition,
    "ex-post-efficient": check_ex_post_efficient,
    "localized": check_localized,
    "non-perverse": check_non_perverse,
}


def checker_for(axiom: str):
    try:
        return _CHECKERS[axiom]
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}") from None


@dataclass(frozen=True)
class ImplicationReport:
    strategyproof: Verdict
    localized: Verdict
    non_perverse: Verdict
    full_domain: bool
    discrepancies: Tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.discrepancies

    def to_json_dict(self) -> dict:
        return {
            "strategyproof": self.strategyproof.to_json_dict(),
            "localized": self.localized.to_json_dict(),
            "non_perverse": self.non_perverse.to_json_dict(),
            "full_domain": self.full_domain,
            "discrepancies": list(self.discrepancies),
        }


def implication_suite(sds, dom: Domain) -> ImplicationReport:
    """Check the classical decomposition of strategyproofness.

    On any domain strategyproofness implies localizedness and non-perversity;
    on the full domain the two together are equivalent to strategyproofness.
    Any observed deviation from these implications is reported as a
    discrepancy (and would mean a bug in one of the checkers).
    """
    sp = check_strategyproof(sds, dom)
    loc = check_localized(sds, dom)
    np_ = check_non_perverse(sds, dom)
    full = isinstance(dom, FullDomain)
    discrepancies = []
    if sp.holds and not (loc.holds and np_.holds):
        discrepancies.append(
            "strategyproof scheme fails localizedness or non-perversity"
        )
    if full and loc.holds and np_.holds and not sp.holds:
        discrepancies.append(
            "localized and non-perverse scheme is manipulable on the full domain"
        )
    return ImplicationReport(sp, loc, np_, full, tuple(discrepancies))


# -- witness replay -----------------------------------------------------------


def replay_witness(sds, dom: Domain, verdict_json: Mapping) -> bool:
    """Re-execute a reported witness and confirm it still violates the axiom.

    Takes the JSON form of a failing verdict; returns True when the violation
    reproduces against the given scheme and domain.
    """
    axiom = verdict_json.get("axiom")
    witness = verdict_json.get("witness")
    if witness is None:
        raise ValueError("verdict carries no witness to replay")
    if axiom == "strategyproof":
        profile = Profile.from_text(witness["profile"])
        deviation = Profile.from_text(witness["deviation"])
        voter = int(witness["voter"])
        if not (dom.contains(profile) and dom.contains(deviation)):
            return False
        verdict = sd_compare(profile[voter], sds.evaluate(profile), sds.evaluate(deviation))
        return not verdict.weakly_prefers
    if axiom == "group-strategyproof":
        profile = Profile.from_text(witness["profile"])
        deviation = Profile.from_text(witness["deviation"])
        coalition = [int(v) for v in witness["coalition"]]
        if not (dom.contains(profile) and dom.contains(deviation)):
            return False
        truthful = sds.evaluate(profile)
        outcome = sds.evaluate(deviation)
        for voter in range(dom.n):
            if voter not in coalition and profile[voter] != deviation[voter]:
                return False
        return all(
            not sd_compare(profile[voter], truthful, outcome).weakly_prefers
            for voter in coalition
        )
    if axiom == "non-imposition":
        missing = alternative_index(witness["alternative"])
        point = Lottery.point(missing, dom.m)
        return all(sds.evaluate(profile) != point for profile in dom.members())
    if axiom == "ex-post-efficient":
        profile = Profile.from_text(witness["profile"])
        dominator = alternative_index(witness["dominator"])
        dominated = alternative_index(witness["dominated"])
        if not dom.contains(profile):
            return False
        return (
            pareto_dominates(profile, dominator, dominated)
            and sds.evaluate(profile)[dominated] > 0
        )
    if axiom in ("localized", "non-perverse"):
        profile = Profile.from_text(witness["profile"])
        voter = int(witness["voter"])
        lowered = alternative_index(witness["lowered"])
        raised = alternative_index(witness["raised"])
        watched = alternative_index(witness["watched"])
        if not dom.contains(profile):
            return False
        neighbor = swap(profile, voter, lowered, raised)
        if not dom.contains(neighbor):
            return False
        before = sds.evaluate(profile)
        after = sds.evaluate(neighbor)
        if axiom == "localized":
            return watched not in (lowered, raised) and before[watched] != after[watched]
        return watched == raised and after[watched] < before[watched]
    raise ValueError(f"unknown axiom {axiom!r}")
