"""Exact primitives for ordinal elections.

Alternatives are dense integer indices ``0..m-1`` shown to users as letters
(0 = ``a``, 1 = ``b``, ...). Preference relations are strict total orders,
profiles are fixed-length voter tuples of relations. Everything here is
immutable and hashable so values can be cached, interned and used as
dictionary keys; all arithmetic on top of these types stays in exact
rationals elsewhere in the package.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial
from typing import Iterator, Optional, Sequence

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class InvalidSwapError(ValueError):
    """Requested swap is not an adjacent, correctly oriented pair."""


class ProfileParseError(ValueError):
    """Malformed preference or profile text."""


def alternative_name(x: int) -> str:
    """Presentation letter for alternative index ``x``."""
    if 0 <= x < len(_LETTERS):
        return _LETTERS[x]
    return f"x{x}"


def alternative_index(name: str) -> int:
    """Inverse of :func:`alternative_name`."""
    token = name.strip().lower()
    if len(token) == 1 and token in _LETTERS:
        return _LETTERS.index(token)
    if token.startswith("x") and token[1:].isdigit():
        return int(token[1:])
    raise ProfileParseError(f"unknown alternative {name!r}")


class PreferenceRelation:
    """A strict total order over ``{0, ..., m-1}``, most preferred first."""

    __slots__ = ("order", "_pos", "_hash")

    def __init__(self, order: Sequence[int]):
        order = tuple(order)
        m = len(order)
        if sorted(order) != list(range(m)):
            raise ValueError(f"not a permutation of 0..{m - 1}: {order!r}")
        pos = [0] * m
        for slot, x in enumerate(order):
            pos[x] = slot
        self.order = order
        self._pos = tuple(pos)
        self._hash = hash(order)

    @property
    def m(self) -> int:
        return len(self.order)

    def top(self) -> int:
        return self.order[0]

    def rank(self, x: int) -> int:
        """1-based rank of ``x`` (1 = most preferred)."""
        return self._pos[x] + 1

    def prefers(self, x: int, y: int) -> bool:
        return self._pos[x] < self._pos[y]

    def upper_contour(self, x: int) -> frozenset:
        """Alternatives weakly preferred to ``x`` (always contains ``x``)."""
        return frozenset(self.order[: self._pos[x] + 1])

    def swapped(self, x: int, y: int) -> "PreferenceRelation":
        """Relation with adjacent pair ``x`` directly above ``y`` exchanged."""
        px, py = self._pos[x], self._pos[y]
        if py != px + 1:
            raise InvalidSwapError(
                f"{alternative_name(x)},{alternative_name(y)} is not an adjacent "
                f"x-above-y pair in {self.to_text()}"
            )
        new = list(self.order)
        new[px], new[py] = new[py], new[px]
        return PreferenceRelation(new)

    def to_text(self) -> str:
        return ">".join(alternative_name(x) for x in self.order)

    @classmethod
    def from_text(cls, text: str) -> "PreferenceRelation":
        parts = [p for p in text.strip().split(">") if p.strip()]
        if len(parts) < 1:
            raise ProfileParseError(f"empty preference line: {text!r}")
        return cls(tuple(alternative_index(p) for p in parts))

    def __eq__(self, other) -> bool:
        return isinstance(other, PreferenceRelation) and self.order == other.order

    def __lt__(self, other) -> bool:
        return self.order < other.order

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PreferenceRelation({self.to_text()})"


# A tie-breaking order is just one more strict total order over the slate.
TieBreaker = PreferenceRelation


@lru_cache(maxsize=None)
def all_relations(m: int) -> tuple:
    """Every preference relation on ``m`` alternatives, lexicographically ordered."""
    return tuple(PreferenceRelation(p) for p in itertools.permutations(range(m)))


@lru_cache(maxsize=None)
def _relation_ranks(m: int) -> dict:
    return {rel: i for i, rel in enumerate(all_relations(m))}


def relation_lex_index(rel: PreferenceRelation) -> int:
    """Position of ``rel`` in the lexicographic listing of all orders on m items."""
    return _relation_ranks(rel.m)[rel]


class Profile:
    """An ordered tuple of voter preference relations over one slate."""

    __slots__ = ("relations", "_hash")

    def __init__(self, relations: Sequence[PreferenceRelation]):
        relations = tuple(relations)
        if not relations:
            raise ValueError("a profile needs at least one voter")
        m = relations[0].m
        for rel in relations:
            if rel.m != m:
                raise ValueError("voters rank different numbers of alternatives")
        self.relations = relations
        self._hash = hash(relations)

    @property
    def n(self) -> int:
        return len(self.relations)

    @property
    def m(self) -> int:
        return self.relations[0].m

    def __getitem__(self, voter: int) -> PreferenceRelation:
        return self.relations[voter]

    def __iter__(self):
        return iter(self.relations)

    def replace(self, voter: int, rel: PreferenceRelation) -> "Profile":
        if rel.m != self.m:
            raise ValueError("replacement ranks a different slate")
        rels = list(self.relations)
        rels[voter] = rel
        return Profile(rels)

    def replace_many(self, voters: Sequence[int], rels: Sequence[PreferenceRelation]) -> "Profile":
        new = list(self.relations)
        for voter, rel in zip(voters, rels):
            new[voter] = rel
        return Profile(new)

    def key(self) -> tuple:
        """Canonical sort key: the tuple of per-voter lexicographic ranks."""
        return tuple(relation_lex_index(rel) for rel in self.relations)

    def to_text(self) -> str:
        return "\n".join(rel.to_text() for rel in self.relations)

    @classmethod
    def from_text(cls, text: str) -> "Profile":
        rels = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            rels.append(PreferenceRelation.from_text(line))
        if not rels:
            raise ProfileParseError("no preference lines found")
        return cls(rels)

    def __eq__(self, other) -> bool:
        return isinstance(other, Profile) and self.relations == other.relations

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "Profile(" + "; ".join(rel.to_text() for rel in self.relations) + ")"


def profile_key(profile: Profile) -> tuple:
    return profile.key()


def parse_profiles(text: str) -> list:
    """Parse a file of profiles: blocks of preference lines separated by blank lines."""
    blocks: list = []
    current: list = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            if current:
                blocks.append(Profile(current))
                current = []
            continue
        current.append(PreferenceRelation.from_text(stripped))
    if current:
        blocks.append(Profile(current))
    if not blocks:
        raise ProfileParseError("no profiles found")
    return blocks


def all_profiles(n: int, m: int) -> Iterator[Profile]:
    """All profiles for ``n`` voters over ``m`` alternatives, canonically ordered."""
    for combo in itertools.product(all_relations(m), repeat=n):
        yield Profile(combo)


def full_profile_count(n: int, m: int) -> int:
    return factorial(m) ** n


def majority_margin(profile: Profile, x: int, y: int) -> int:
    """Voters preferring x to y minus voters preferring y to x."""
    if x == y:
        raise ValueError("margin needs two distinct alternatives")
    if not (0 <= x < profile.m and 0 <= y < profile.m):
        raise ValueError("alternative out of range")
    margin = 0
    for rel in profile.relations:
        margin += 1 if rel.prefers(x, y) else -1
    return margin


def _margin_row(profile: Profile, x: int) -> list:
    row = [0] * profile.m
    for rel in profile.relations:
        px = rel._pos[x]
        for y, py in enumerate(rel._pos):
            if y == x:
                continue
            row[y] += 1 if px < py else -1
    return row


@lru_cache(maxsize=None)
def condorcet_winner(profile: Profile) -> Optional[int]:
    """The alternative beating every other by strict majority, if one exists."""
    for x in range(profile.m):
        row = _margin_row(profile, x)
        if all(row[y] > 0 for y in range(profile.m) if y != x):
            return x
    return None


def augment(profile: Profile, tiebreaker: TieBreaker) -> Profile:
    """Profile extended by the tie-breaking order as one extra voter."""
    if tiebreaker.m != profile.m:
        raise ValueError("tie-breaker ranks a different slate")
    return Profile(profile.relations + (tiebreaker,))


@lru_cache(maxsize=None)
def tiebroken_winner(profile: Profile, tiebreaker: TieBreaker) -> Optional[int]:
    """Majority winner after appending the tie-breaking order as a voter."""
    return condorcet_winner(augment(profile, tiebreaker))


def swap(profile: Profile, voter: int, x: int, y: int) -> Profile:
    """Exchange the adjacent pair ``x`` directly above ``y`` in one voter's order."""
    return profile.replace(voter, profile[voter].swapped(x, y))


def pareto_dominates(profile: Profile, x: int, y: int) -> bool:
    """True when every voter strictly prefers x to y."""
    if x == y:
        raise ValueError("Pareto comparison needs two distinct alternatives")
    return all(rel.prefers(x, y) for rel in profile.relations)
