"""Preference domains: membership, canonical enumeration, neighborhood structure.

A domain is a set of profiles for fixed ``n`` and ``m``. The kinds defined
here are the full domain, the domain of profiles with a majority winner
(optionally pinned to one alternative), its tie-breaking relaxation for even
electorates, explicit finite sets, and a base domain extended by extra
profiles. Enumeration is always in canonical order: profiles sorted by the
tuple of per-voter lexicographic ranks.

Two graph views matter for the theory. Weak connectedness links profiles
that differ in a single adjacent swap. Full connectedness additionally asks
that any two profiles agreeing on every voter's upper contour set of some
alternative ``x`` are linked by swaps that never touch ``x``.
"""

from __future__ import annotations

import heapq
import os
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    PreferenceRelation,
    Profile,
    TieBreaker,
    all_profiles,
    all_relations,
    condorcet_winner,
    full_profile_count,
    parse_profiles,
    profile_key,
    swap,
    tiebroken_winner,
)

DEFAULT_ENUM_CAP = 10**6
DEFAULT_GRAPH_CAP = 10**5


class CapExceededError(RuntimeError):
    """An enumeration or graph computation would exceed its configured cap."""


class OutOfDomainError(ValueError):
    """A profile outside the relevant domain was passed where a member is required."""


def enumeration_cap() -> int:
    """Active enumeration cap; the CONDLAB_MAX_PROFILES env var overrides the default."""
    raw = os.environ.get("CONDLAB_MAX_PROFILES")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_ENUM_CAP


class Domain:
    kind = "abstract"

    def __init__(self, n: int, m: int):
        if n < 1 or m < 1:
            raise ValueError("need at least one voter and one alternative")
        self.n = n
        self.m = m
        self._members: Optional[tuple] = None
        self._member_set: Optional[frozenset] = None

    # -- identity ---------------------------------------------------------

    def _key(self) -> tuple:
        return (self.kind, self.n, self.m)

    def __eq__(self, other) -> bool:
        return isinstance(other, Domain) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def describe(self) -> str:
        return self.kind

    def __repr__(self) -> str:
        return f"<Domain {self.describe()} n={self.n} m={self.m}>"

    # -- membership and enumeration ---------------------------------------

    def _contains(self, profile: Profile) -> bool:
        raise NotImplementedError

    def contains(self, profile: Profile) -> bool:
        if profile.n != self.n or profile.m != self.m:
            raise ValueError(
                f"profile shape ({profile.n}, {profile.m}) does not match "
                f"domain shape ({self.n}, {self.m})"
            )
        return self._contains(profile)

    def size_bound(self) -> int:
        """Upper bound on the work needed to enumerate this domain."""
        return full_profile_count(self.n, self.m)

    def _iter_members(self) -> Iterator[Profile]:
        for profile in all_profiles(self.n, self.m):
            if self._contains(profile):
                yield profile

    def enumerate(self, cap: Optional[int] = None) -> Iterator[Profile]:
        """Stream every member exactly once, in canonical order."""
        cap = enumeration_cap() if cap is None else cap
        if self.size_bound() > cap:
            raise CapExceededError(
                f"enumerating {self.describe()} needs {self.size_bound()} profiles, "
                f"cap is {cap}"
            )
        return self._iter_members()

    def members(self, cap: Optional[int] = None) -> tuple:
        if self._members is None:
            self._members = tuple(self.enumerate(cap))
        return self._members

    def member_set(self, cap: Optional[int] = None) -> frozenset:
        if self._member_set is None:
            self._member_set = frozenset(self.members(cap))
        return self._member_set

    # -- neighborhood structure -------------------------------------------

    def unilateral_deviations(self, profile: Profile, voter: int) -> Iterator[Profile]:
        """In-domain profiles obtained by replacing one voter's relation."""
        if not self.contains(profile):
            raise OutOfDomainError("deviations are only defined for domain members")
        truth = profile[voter]
        for rel in all_relations(self.m):
            if rel == truth:
                continue
            candidate = profile.replace(voter, rel)
            if self._contains(candidate):
                yield candidate

    def adjacent_neighbors(
        self, profile: Profile, fixed: Optional[int] = None
    ) -> Iterator[Profile]:
        """In-domain profiles one adjacent swap away, optionally avoiding ``fixed``."""
        if not self.contains(profile):
            raise OutOfDomainError("neighbors are only defined for domain members")
        for voter in range(self.n):
            order = profile[voter].order
            for slot in range(self.m - 1):
                x, y = order[slot], order[slot + 1]
                if fixed is not None and fixed in (x, y):
                    continue
                candidate = swap(profile, voter, x, y)
                if self._contains(candidate):
                    yield candidate


class FullDomain(Domain):
    kind = "full"

    def _contains(self, profile: Profile) -> bool:
        return True

    def _iter_members(self) -> Iterator[Profile]:
        return all_profiles(self.n, self.m)


class CondorcetDomain(Domain):
    """Profiles that have a majority winner."""

    kind = "condorcet"

    def _contains(self, profile: Profile) -> bool:
        return condorcet_winner(profile) is not None


class CondorcetForDomain(Domain):
    """Profiles whose majority winner is one pinned alternative."""

    kind = "condorcet-for"

    def __init__(self, winner: int, n: int, m: int):
        super().__init__(n, m)
        if not 0 <= winner < m:
            raise ValueError("pinned winner out of range")
        self.winner = winner

    def _key(self) -> tuple:
        return (self.kind, self.winner, self.n, self.m)

    def describe(self) -> str:
        from .core import alternative_name

        return f"condorcet-for:{alternative_name(self.winner)}"

    def _contains(self, profile: Profile) -> bool:
        return condorcet_winner(profile) == self.winner


class TieBreakingCondorcetDomain(Domain):
    """Profiles with a majority winner once the tie-breaking order votes too."""

    kind = "tb-condorcet"

    def __init__(self, tiebreaker: TieBreaker, n: int, m: Optional[int] = None):
        super().__init__(n, tiebreaker.m if m is None else m)
        if tiebreaker.m != self.m:
            raise ValueError("tie-breaker ranks a different slate")
        self.tiebreaker = tiebreaker

    def _key(self) -> tuple:
        return (self.kind, self.tiebreaker, self.n, self.m)

    def describe(self) -> str:
        return f"tb-condorcet:{self.tiebreaker.to_text()}"

    def _contains(self, profile: Profile) -> bool:
        return tiebroken_winner(profile, self.tiebreaker) is not None


class ExplicitDomain(Domain):
    kind = "explicit"

    def __init__(self, profiles: Iterable[Profile]):
        profiles = sorted(set(profiles), key=profile_key)
        if not profiles:
            raise ValueError("explicit domain needs at least one profile")
        super().__init__(profiles[0].n, profiles[0].m)
        for p in profiles:
            if p.n != self.n or p.m != self.m:
                raise ValueError("explicit domain mixes profile shapes")
        self.profiles = tuple(profiles)
        self._explicit_set = frozenset(profiles)

    def _key(self) -> tuple:
        return (self.kind, self.profiles)

    def describe(self) -> str:
        return f"explicit({len(self.profiles)})"

    def size_bound(self) -> int:
        return len(self.profiles)

    def _contains(self, profile: Profile) -> bool:
        return profile in self._explicit_set

    def _iter_members(self) -> Iterator[Profile]:
        return iter(self.profiles)


class ExtendedDomain(Domain):
    """A base domain plus finitely many extra profiles outside it."""

    kind = "extended"

    def __init__(self, base: Domain, extras: Iterable[Profile]):
        extras = sorted(set(extras), key=profile_key)
        super().__init__(base.n, base.m)
        for extra in extras:
            if base.contains(extra):
                raise ValueError(
                    f"extra profile already belongs to the base domain:\n{extra.to_text()}"
                )
        self.base = base
        self.extras = tuple(extras)
        self._extra_set = frozenset(extras)

    def _key(self) -> tuple:
        return (self.kind, self.base._key(), self.extras)

    def describe(self) -> str:
        return f"{self.base.describe()}+extras({len(self.extras)})"

    def size_bound(self) -> int:
        return self.base.size_bound() + len(self.extras)

    def _contains(self, profile: Profile) -> bool:
        return profile in self._extra_set or self.base._contains(profile)

    def _iter_members(self) -> Iterator[Profile]:
        return heapq.merge(self.base._iter_members(), iter(self.extras), key=profile_key)


# -- connectivity -----------------------------------------------------------


def _bfs_cover(
    dom: Domain, start: Profile, fixed: Optional[int] = None
) -> set:
    seen = {start}
    frontier = deque([start])
    while frontier:
        current = frontier.popleft()
        for neighbor in dom.adjacent_neighbors(current, fixed=fixed):
            if neighbor not in seen:
                seen.add(neighbor)
                frontier.append(neighbor)
    return seen


def is_weakly_connected(dom: Domain, cap: Optional[int] = None) -> bool:
    """True when the adjacent-swap graph on the domain has one component."""
    cap = DEFAULT_GRAPH_CAP if cap is None else cap
    members = dom.members(cap)
    if len(members) > cap:
        raise CapExceededError(f"{len(members)} profiles exceed graph cap {cap}")
    if len(members) <= 1:
        return True
    return len(_bfs_cover(dom, members[0])) == len(members)


def _contour_signature(profile: Profile, x: int) -> tuple:
    return tuple(rel.upper_contour(x) for rel in profile.relations)


def is_connected(dom: Domain, cap: Optional[int] = None) -> bool:
    """Weak connectedness plus x-avoiding reachability within contour classes.

    For every alternative ``x``, profiles sharing all voters' upper contour
    sets of ``x`` must be mutually reachable through swaps that never move
    ``x``. Swaps avoiding ``x`` preserve the contour signature, so it is
    enough to examine each signature class separately.
    """
    cap = DEFAULT_GRAPH_CAP if cap is None else cap
    if not is_weakly_connected(dom, cap):
        return False
    members = dom.members(cap)
    for x in range(dom.m):
        classes: dict = {}
        for profile in members:
            classes.setdefault(_contour_signature(profile, x), []).append(profile)
        for group in classes.values():
            if len(group) == 1:
                continue
            if len(_bfs_cover(dom, group[0], fixed=x)) < len(group):
                return False
    return True


# -- named profiles and searches --------------------------------------------


def majority_cycle_profile(n: int, m: int = 3) -> Profile:
    """The canonical majority-cycle profile for an odd electorate.

    Three voters report the rotations of ``a > b > c``; each remaining pair
    of voters adds one ``a > b > c`` and one ``c > b > a``, which cancels,
    so every alternative stays majority-beaten. Alternatives beyond the
    first three are appended in fixed order at the bottom.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("the cycle profile needs an odd electorate of at least 3")
    if m < 3:
        raise ValueError("the cycle profile needs at least three alternatives")
    tail = tuple(range(3, m))
    rels = [
        PreferenceRelation((0, 1, 2) + tail),
        PreferenceRelation((1, 2, 0) + tail),
        PreferenceRelation((2, 0, 1) + tail),
    ]
    for voter in range(4, n + 1):
        if voter % 2 == 0:
            rels.append(PreferenceRelation((0, 1, 2) + tail))
        else:
            rels.append(PreferenceRelation((2, 1, 0) + tail))
    return Profile(rels)


def beyond_unilateral_reach(profile: Profile, base: Domain) -> bool:
    """True when neither ``profile`` nor any single-voter change of it is in ``base``."""
    if base.contains(profile):
        return False
    for voter in range(profile.n):
        for rel in all_relations(profile.m):
            if rel == profile[voter]:
                continue
            if base.contains(profile.replace(voter, rel)):
                return False
    return True


def find_profiles_beyond_unilateral_reach(
    base: Domain, cap: Optional[int] = None
) -> list:
    """Exhaustively search for profiles at unilateral distance >= 2 from ``base``."""
    cap = enumeration_cap() if cap is None else cap
    if full_profile_count(base.n, base.m) > cap:
        raise CapExceededError("search space exceeds enumeration cap")
    return [
        profile
        for profile in all_profiles(base.n, base.m)
        if beyond_unilateral_reach(profile, base)
    ]


# -- textual domain specifications ------------------------------------------


def parse_domain(text: str, n: int, m: int) -> Domain:
    """Parse a domain specification string.

    Grammar: ``full | condorcet | condorcet-for:<alt> | tb-condorcet:<order>``,
    optionally followed by ``+file:<path>`` naming a file of extra profiles.
    """
    from .core import alternative_index

    text = text.strip()
    base_text, extras_path = text, None
    if "+file:" in text:
        base_text, extras_path = text.split("+file:", 1)
    base_text = base_text.strip()
    if base_text == "full":
        dom: Domain = FullDomain(n, m)
    elif base_text == "condorcet":
        dom = CondorcetDomain(n, m)
    elif base_text.startswith("condorcet-for:"):
        dom = CondorcetForDomain(alternative_index(base_text.split(":", 1)[1]), n, m)
    elif base_text.startswith("tb-condorcet:"):
        tb = PreferenceRelation.from_text(base_text.split(":", 1)[1])
        dom = TieBreakingCondorcetDomain(tb, n, m)
    else:
        raise ValueError(f"unknown domain specification {text!r}")
    if extras_path is not None:
        with open(extras_path.strip(), "r", encoding="utf-8") as handle:
            extras = parse_profiles(handle.read())
        dom = ExtendedDomain(dom, extras)
    return dom
