"""Pairwise separation predicates on color subsets.

All predicates compare the two set differences a-b and b-a.  Listing the
members of both differences in ascending color order yields a word over
{first, second}; a forbidden pattern of k+2 alternations exists iff that
word has at least k+2 maximal blocks.  This gives every predicate in one
O(n) scan instead of enumerating element tuples:

* strong separation forbids 3 alternating elements  (blocks <= 2),
* chord separation forbids 4                        (blocks <= 3),
* k-separation forbids k+2                          (blocks <= k+1).

Weak separation is chord separation plus the surround/size clause.  Two
equal sets are separated under every relation (both differences empty).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .colorsets import ColorSet, _surrounds_masks

__all__ = [
    "SeparationRelation",
    "is_strongly_separated",
    "is_chord_separated",
    "is_weakly_separated",
    "is_k_separated",
    "pairwise_separated",
]


def _alternation_blocks(a: int, b: int) -> int:
    """Number of maximal same-side blocks in the merged difference word."""
    d1 = a & ~b
    d2 = b & ~a
    merged = d1 | d2
    blocks = 0
    last = 0
    while merged:
        low = merged & -merged
        side = 1 if d1 & low else 2
        if side != last:
            blocks += 1
            last = side
        merged ^= low
    return blocks


def _strong_masks(a: int, b: int) -> bool:
    return _alternation_blocks(a, b) <= 2


def _chord_masks(a: int, b: int) -> bool:
    return _alternation_blocks(a, b) <= 3


def _weak_masks(a: int, b: int) -> bool:
    if _alternation_blocks(a, b) > 3:
        return False
    d_ab = a & ~b
    d_ba = b & ~a
    if _surrounds_masks(d_ab, d_ba) and a.bit_count() > b.bit_count():
        return False
    if _surrounds_masks(d_ba, d_ab) and b.bit_count() > a.bit_count():
        return False
    return True


def _k_separated_masks(a: int, b: int, k: int) -> bool:
    return _alternation_blocks(a, b) <= k + 1


@dataclass(frozen=True)
class SeparationRelation:
    """One of the pairwise compatibility relations on subsets of [n]."""

    kind: str  # 'strong' | 'weak' | 'chord' | 'k'
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("strong", "weak", "chord", "k"):
            raise ValueError(f"unknown relation kind {self.kind!r}")
        if self.kind == "k":
            if self.k is None or self.k < 1:
                raise ValueError("k-separation needs k >= 1")
        elif self.k is not None:
            raise ValueError("k is only meaningful for kind='k'")

    @classmethod
    def strong(cls) -> "SeparationRelation":
        return cls("strong")

    @classmethod
    def weak(cls) -> "SeparationRelation":
        return cls("weak")

    @classmethod
    def chord(cls) -> "SeparationRelation":
        return cls("chord")

    @classmethod
    def k_separated(cls, k: int) -> "SeparationRelation":
        return cls("k", k)

    @property
    def name(self) -> str:
        return f"k{self.k}" if self.kind == "k" else self.kind

    def decide_masks(self, a: int, b: int) -> bool:
        if self.kind == "strong":
            return _strong_masks(a, b)
        if self.kind == "chord":
            return _chord_masks(a, b)
        if self.kind == "weak":
            return _weak_masks(a, b)
        return _k_separated_masks(a, b, self.k)

    def decide(self, a: ColorSet, b: ColorSet) -> bool:
        a._check_ground(b)
        return self.decide_masks(a.mask, b.mask)


def is_strongly_separated(a: ColorSet, b: ColorSet) -> bool:
    """No i<j<k with i,k in one difference and j in the other."""
    a._check_ground(b)
    return _strong_masks(a.mask, b.mask)


def is_chord_separated(a: ColorSet, b: ColorSet) -> bool:
    """No i<j<k<l alternating between the two differences."""
    a._check_ground(b)
    return _chord_masks(a.mask, b.mask)


def is_weakly_separated(a: ColorSet, b: ColorSet) -> bool:
    """Chord separated, and a surrounding set is never the larger one."""
    a._check_ground(b)
    return _weak_masks(a.mask, b.mask)


def is_k_separated(a: ColorSet, b: ColorSet, k: int) -> bool:
    """No k+2 elements alternating between the two differences."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a._check_ground(b)
    return _k_separated_masks(a.mask, b.mask, k)


def pairwise_separated(
    collection: Iterable[ColorSet],
    relation: SeparationRelation,
) -> Optional[tuple[ColorSet, ColorSet]]:
    """Check all unordered pairs of a collection under a relation.

    Returns None when every pair passes, otherwise the first failing pair
    in canonical order (so diagnostics are deterministic).
    """
    members: Sequence[ColorSet] = sorted(collection, key=lambda s: s.sort_key)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not relation.decide(a, b):
                return (a, b)
    return None
