"""Decomposition and extension analysis for decision schemes.

This module extracts candidate mixture coefficients from probe profiles,
verifies candidate representations exactly against a domain, computes the
largest weight a scheme puts on random dictatorship via an exact linear
program, and decides whether a scheme on a base domain can be extended to
extra profiles without breaking strategyproofness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import PreferenceRelation, Profile, all_relations, alternative_name, profile_key
from .axioms import Verdict
from .domains import Domain, ExtendedDomain, OutOfDomainError, enumeration_cap
from .lottery import Lottery
from .ratlp import fm_feasible, simplex_maximize
from .sds import TableMissError


class InfeasibleModelError(ValueError):
    """The decomposition model has no solution: the scheme is not strategyproof."""


@dataclass(frozen=True)
class MixtureCoefficients:
    """Weights of a (possibly signed) mixture of the majority rule and dictatorships."""

    condorcet_weight: Fraction
    voter_weights: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.condorcet_weight + sum(self.voter_weights) != 1:
            raise ValueError("mixture coefficients must sum to 1")

    @property
    def nonnegative(self) -> bool:
        return self.condorcet_weight >= 0 and all(w >= 0 for w in self.voter_weights)

    def to_json_dict(self) -> dict:
        return {
            "gamma_C": str(self.condorcet_weight),
            "gamma": [str(w) for w in self.voter_weights],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "MixtureCoefficients":
        return cls(
            Fraction(data["gamma_C"]),
            tuple(Fraction(w) for w in data["gamma"]),
        )


@dataclass(frozen=True)
class MixtureMismatchWitness:
    profile: Profile
    alternative: int
    actual: Fraction
    expected: Fraction

    def to_json_dict(self) -> dict:
        return {
            "profile": self.profile.to_text(),
            "alternative": alternative_name(self.alternative),
            "actual": str(self.actual),
            "expected": str(self.expected),
        }


def probe_profile(n: int, m: int, anchor: int, voter: int) -> Profile:
    """The probe isolating one voter's dictatorial weight.

    Everyone ranks the anchor first except the probed voter, who slips a
    rival just above it; the anchor stays the strict majority winner, so the
    probability of the probed voter's favorite reveals that voter's weight.
    """
    if m < 3:
        raise ValueError("probes need at least three alternatives")
    if not 0 <= anchor < m:
        raise ValueError("anchor out of range")
    if not 0 <= voter < n:
        raise ValueError("voter out of range")
    others = [x for x in range(m) if x != anchor]
    runner_up, rival = others[0], others[1]
    tail = tuple(others[2:])
    probing = PreferenceRelation((rival, anchor, runner_up) + tail)
    background = PreferenceRelation((anchor, runner_up, rival) + tail)
    return Profile([probing if j == voter else background for j in range(n)])


def probe_coefficients(sds, anchor: int) -> MixtureCoefficients:
    """Read mixture coefficients off the probe profiles, one per voter."""
    n, m = sds.n, sds.m
    others = [x for x in range(m) if x != anchor]
    rival = others[1]
    weights = []
    for voter in range(n):
        lot = sds.evaluate(probe_profile(n, m, anchor, voter))
        weights.append(lot[rival])
    return MixtureCoefficients(1 - sum(weights, Fraction(0)), tuple(weights))


def verify_mixture(
    sds, dom: Domain, coeffs: MixtureCoefficients, reference
) -> Verdict:
    """Check exactly that ``sds`` equals the weighted combination of the
    reference rule and the dictatorships, profile by profile over ``dom``."""
    members = dom.members()
    comparisons = 0
    for index, profile in enumerate(members):
        actual = sds.evaluate(profile)
        ref = reference.evaluate(profile)
        for x in range(dom.m):
            expected = coeffs.condorcet_weight * ref[x]
            for voter, w in enumerate(coeffs.voter_weights):
                if profile[voter].top() == x:
                    expected += w
            comparisons += 1
            if expected != actual[x]:
                witness = MixtureMismatchWitness(profile, x, actual[x], expected)
                return Verdict("mixture-representation", False, witness, index + 1, comparisons)
    return Verdict("mixture-representation", True, None, len(members), comparisons)


def max_dictatorial_weight(sds, dom: Domain) -> Fraction:
    """Largest total weight splittable off onto dictatorships.

    Maximizes the sum of per-voter weights ``w_i`` such that the scheme minus
    the weighted dictatorships is pointwise nonnegative and still satisfies
    every stochastic-dominance inequality between domain members one
    unilateral deviation apart. Substituting the residual away leaves a tiny
    program in the ``w_i`` alone; a negative right-hand side before pivoting
    means the scheme itself was manipulable, which is reported as an
    infeasible model.
    """
    members = dom.members()
    n, m = dom.n, dom.m
    cache: Dict[Profile, Lottery] = {}

    def f(profile: Profile) -> Lottery:
        lot = cache.get(profile)
        if lot is None:
            lot = sds.evaluate(profile)
            cache[profile] = lot
        return lot

    rows: Dict[Tuple[int, ...], Fraction] = {}

    def add_row(coeffs: Tuple[int, ...], rhs: Fraction, context: str):
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                raise InfeasibleModelError(context)
            return
        if all(c <= 0 for c in coeffs) and rhs >= 0:
            return  # implied by w >= 0
        if rhs < 0:
            raise InfeasibleModelError(context)
        kept = rows.get(coeffs)
        if kept is None or rhs < kept:
            rows[coeffs] = rhs

    for profile in members:
        lot = f(profile)
        tops = tuple(profile[voter].top() for voter in range(n))
        for x in range(m):
            coeffs = tuple(1 if tops[voter] == x else 0 for voter in range(n))
            add_row(coeffs, lot[x], f"residual negative at {profile!r} on {alternative_name(x)}")
        for voter in range(n):
            truth_rel = profile[voter]
            for deviation in dom.unilateral_deviations(profile, voter):
                dev_lot = f(deviation)
                dev_top = deviation[voter].top()
                cum = Fraction(0)
                dev_cum = Fraction(0)
                seen_truth_top = False
                seen_dev_top = False
                for x in truth_rel.order[:-1]:
                    cum += lot[x]
                    dev_cum += dev_lot[x]
                    seen_truth_top = seen_truth_top or x == tops[voter]
                    seen_dev_top = seen_dev_top or x == dev_top
                    coeff = (1 if seen_dev_top else 0) - (1 if seen_truth_top else 0)
                    coeffs = tuple(
                        coeff if j == voter else 0 for j in range(n)
                    )
                    add_row(
                        coeffs,
                        cum - dev_cum,
                        f"scheme is manipulable at {profile!r} by voter {voter}",
                    )

    if not rows:
        # No binding constraints can only happen on degenerate domains.
        return Fraction(1)
    value, _ = simplex_maximize(
        [Fraction(1)] * n, [(coeffs, rhs) for coeffs, rhs in rows.items()]
    )
    return value


# -- extension feasibility -----------------------------------------------------


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[Dict[Profile, Lottery]]
    conflict: Optional[Tuple[str, ...]]

    def to_json_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "witness": None
            if self.witness is None
            else {
                profile.to_text(): lot.to_json_dict()
                for profile, lot in sorted(
                    self.witness.items(), key=lambda kv: profile_key(kv[0])
                )
            },
            "conflict": None if self.conflict is None else list(self.conflict),
        }


def _extension_rows(base_sds, base: Domain, extras: Sequence[Profile]):
    """Inequality rows over the reduced extension variables.

    Variables are the first ``m - 1`` probabilities of each extra profile's
    lottery; the last probability is substituted as one minus their sum.
    Rows are ``coeffs . v <= rhs`` tagged with a readable description.
    """
    n, m = base.n, base.m
    reduced = m - 1
    index = {extra: e for e, extra in enumerate(extras)}
    extra_set = frozenset(extras)
    num_vars = reduced * len(extras)
    rows: List[Tuple[Tuple[Fraction, ...], Fraction, frozenset]] = []

    def blank():
        return [Fraction(0)] * num_vars, Fraction(0)

    def add_mass(coeffs, rhs, extra_idx, cut, sign):
        # adds sign * p_extra(cut) to the left side, in reduced variables
        for x in cut:
            if x < reduced:
                coeffs[extra_idx * reduced + x] += sign
            else:
                for j in range(reduced):
                    coeffs[extra_idx * reduced + j] -= sign
                rhs -= sign
        return rhs

    def add(coeffs, rhs, tag):
        rows.append((tuple(coeffs), rhs, frozenset([tag])))

    for extra in extras:
        e = index[extra]
        for x in range(m):
            coeffs, rhs = blank()
            rhs = add_mass(coeffs, rhs, e, [x], -1)
            add(coeffs, rhs, f"lottery at {extra.to_text()!r} nonnegative on {alternative_name(x)}")
        for voter in range(n):
            truth_rel = extra[voter]
            for rel in all_relations(m):
                if rel == truth_rel:
                    continue
                neighbor = extra.replace(voter, rel)
                if base.contains(neighbor):
                    neighbor_lot = base_sds.evaluate(neighbor)
                    neighbor_var = None
                elif neighbor in extra_set:
                    neighbor_lot = None
                    neighbor_var = index[neighbor]
                else:
                    continue
                # truth at the extra profile: its lottery must dominate the deviation
                cut: list = []
                for x in truth_rel.order[:-1]:
                    cut.append(x)
                    coeffs, rhs = blank()
                    rhs = add_mass(coeffs, rhs, e, cut, -1)
                    if neighbor_var is None:
                        rhs -= neighbor_lot.mass(cut)
                    else:
                        rhs = add_mass(coeffs, rhs, neighbor_var, cut, 1)
                    add(
                        coeffs,
                        rhs,
                        f"voter {voter} gains by leaving {extra.to_text()!r} "
                        f"(cut at {alternative_name(x)})",
                    )
                # truth at the neighbor: deviating into the extra must not pay
                cut = []
                for x in rel.order[:-1]:
                    cut.append(x)
                    coeffs, rhs = blank()
                    rhs = add_mass(coeffs, rhs, e, cut, 1)
                    if neighbor_var is None:
                        rhs += neighbor_lot.mass(cut)
                    else:
                        rhs = add_mass(coeffs, rhs, neighbor_var, cut, -1)
                    add(
                        coeffs,
                        rhs,
                        f"voter {voter} gains by deviating into {extra.to_text()!r} "
                        f"(cut at {alternative_name(x)})",
                    )
    return rows, num_vars


def _assignment_to_reduced(
    assignment: Mapping[Profile, Lottery], extras: Sequence[Profile]
) -> List[Fraction]:
    reduced = extras[0].m - 1
    values = []
    for extra in extras:
        lot = assignment[extra]
        values.extend(lot.probs[:reduced])
    return values


def _point_from_reduced(point: Sequence[Fraction], extras: Sequence[Profile]):
    m = extras[0].m
    reduced = m - 1
    assignment = {}
    for e, extra in enumerate(extras):
        head = list(point[e * reduced : (e + 1) * reduced])
        head.append(1 - sum(head, Fraction(0)))
        assignment[extra] = Lottery(head)
    return assignment


def verify_extension_witness(
    base_sds, base: Domain, extras: Sequence[Profile], assignment: Mapping[Profile, Lottery]
) -> bool:
    """Check a candidate lottery assignment against every extension constraint."""
    extras = sorted(set(extras), key=profile_key)
    rows, _ = _extension_rows(base_sds, base, extras)
    values = _assignment_to_reduced(assignment, extras)
    for coeffs, rhs, _ in rows:
        if sum(c * v for c, v in zip(coeffs, values)) > rhs:
            return False
    return True


def _solve_extension(base_sds, base, extras, forced: Mapping[Profile, Lottery]):
    rows, num_vars = _extension_rows(base_sds, base, extras)
    if forced:
        reduced = extras[0].m - 1
        for extra, lot in forced.items():
            e = extras.index(extra)
            for x in range(reduced):
                unit = [Fraction(0)] * num_vars
                unit[e * reduced + x] = Fraction(1)
                tag = f"pinned lottery at {extra.to_text()!r}"
                rows.append((tuple(unit), lot.probs[x], frozenset([tag])))
                rows.append(
                    (tuple(-u for u in unit), -lot.probs[x], frozenset([tag]))
                )
    ok, point, conflict = fm_feasible(rows, num_vars)
    if not ok:
        return None, conflict
    return _point_from_reduced(point, extras), None


def extension_feasibility(
    base_sds,
    base: Domain,
    extras: Sequence[Profile],
    require_non_imposition: bool = False,
) -> FeasibilityResult:
    """Can lotteries be chosen at the extra profiles so that the base scheme,
    so extended, is strategyproof on the extended domain?

    The constraints are all stochastic-dominance inequalities between each
    extra profile and its unilateral neighbors inside the extended domain,
    in both deviation directions, plus the same inequalities among extras.
    When the base scheme happens to be defined at the extras, its own
    lotteries are tried first, so an unconstrained restriction shows up with
    its natural witness.
    """
    extras = sorted(set(extras), key=profile_key)
    if not extras:
        raise ValueError("no extra profiles to extend to")
    ExtendedDomain(base, extras)  # validates shapes and disjointness

    uncovered: List[int] = []
    if require_non_imposition:
        covered = set()
        for profile in base.members():
            winner = base_sds.evaluate(profile).is_point()
            if winner is not None:
                covered.add(winner)
        uncovered = [x for x in range(base.m) if x not in covered]
        if len(uncovered) > len(extras):
            return FeasibilityResult(
                False,
                None,
                tuple(
                    f"alternative {alternative_name(x)} can never reach probability 1"
                    for x in uncovered
                ),
            )

    candidates: List[Mapping[Profile, Lottery]] = []
    try:
        candidates.append({extra: base_sds.evaluate(extra) for extra in extras})
    except (OutOfDomainError, TableMissError):
        pass
    for candidate in candidates:
        if verify_extension_witness(base_sds, base, extras, candidate):
            if not uncovered or all(
                any(candidate[e].is_point() == x for e in extras) for x in uncovered
            ):
                return FeasibilityResult(True, dict(candidate), None)

    if not uncovered:
        assignment, conflict = _solve_extension(base_sds, base, extras, {})
        if assignment is None:
            return FeasibilityResult(False, None, tuple(sorted(conflict)))
        return FeasibilityResult(True, assignment, None)

    last_conflict: Optional[frozenset] = None
    for chosen in itertools.permutations(extras, len(uncovered)):
        forced = {
            extra: Lottery.point(x, base.m) for x, extra in zip(uncovered, chosen)
        }
        assignment, conflict = _solve_extension(base_sds, base, extras, forced)
        if assignment is not None:
            return FeasibilityResult(True, assignment, None)
        last_conflict = conflict
    return FeasibilityResult(
        False, None, tuple(sorted(last_conflict)) if last_conflict else None
    )
