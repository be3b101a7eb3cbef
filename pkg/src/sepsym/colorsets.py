"""Ground sets, color subsets, and the basic involutions acting on them.

Colors are the integers ``1..n``.  A :class:`ColorSet` is an immutable
subset of a :class:`GroundSet`, stored as a bit mask in which bit ``i-1``
encodes membership of color ``i``.  The canonical external spelling of a
set is always the ascending list of standard labels; symmetrized labels
(``-m..m`` with the sign flip as the color mirror) exist purely as a
presentation-layer bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import GroundSetMismatchError

__all__ = [
    "GroundSet",
    "ColorSet",
    "PairProfile",
    "OrderRelations",
    "mirror_color",
    "mirror_complement",
    "classify_pairs",
    "set_shape",
    "order_predicates",
]


# ---------------------------------------------------------------------------
# mask-level helpers (shared by the hot loops in separation / collections)

def _full_mask(n: int) -> int:
    return (1 << n) - 1


def _reverse_mask(mask: int, n: int) -> int:
    """Reverse the bit order of an n-bit mask (color i <-> color n+1-i)."""
    out = 0
    for i in range(n):
        if mask >> i & 1:
            out |= 1 << (n - 1 - i)
    return out


def _mirror_complement_mask(mask: int, n: int) -> int:
    """Mask of {n+1-i : i not in A}."""
    return _reverse_mask(~mask & _full_mask(n), n)


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _mask_of(colors: Iterable[int], n: int) -> int:
    mask = 0
    for c in colors:
        if not 1 <= c <= n:
            raise ValueError(f"color {c} outside [1..{n}]")
        mask |= 1 << (c - 1)
    return mask


def _min_color(mask: int) -> int:
    return (mask & -mask).bit_length()


def _max_color(mask: int) -> int:
    return mask.bit_length()


def _is_interval_mask(mask: int) -> bool:
    """True for contiguous masks; the empty mask counts as an interval."""
    if mask == 0:
        return True
    shifted = mask >> (_min_color(mask) - 1)
    return (shifted & (shifted + 1)) == 0


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroundSet:
    """The set of colors [1..n] together with its label conventions."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("ground set needs at least one color")

    @property
    def m(self) -> int:
        """floor(n/2), the number of proper symmetric color pairs."""
        return self.n // 2

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    def mirror(self, i: int) -> int:
        return mirror_color(i, self.n)

    def middle_color(self) -> int | None:
        """The self-mirrored color (odd n only)."""
        return (self.n + 1) // 2 if self.odd else None

    def symmetric_pairs(self) -> tuple[tuple[int, int], ...]:
        """All proper pairs (i, n+1-i) with i < n+1-i."""
        return tuple((i, self.n + 1 - i) for i in range(1, self.m + 1))

    def to_symmetrized(self, i: int) -> int:
        """Standard label -> symmetrized label (-m..m, skipping 0 for even n)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"color {i} outside [1..{self.n}]")
        if self.odd:
            return i - self.m - 1
        return i - self.m - 1 if i <= self.m else i - self.m

    def from_symmetrized(self, label: int) -> int:
        if self.odd:
            i = label + self.m + 1
        else:
            if label == 0:
                raise ValueError("label 0 does not exist for even n")
            i = label + self.m + 1 if label < 0 else label + self.m
        if not 1 <= i <= self.n:
            raise ValueError(f"symmetrized label {label} outside the ground set")
        return i

    def subsets(self) -> Iterator["ColorSet"]:
        for mask in range(1 << self.n):
            yield ColorSet(self.n, mask)


@dataclass(frozen=True)
class ColorSet:
    """An immutable subset of [1..n], stored as a fixed-width bit mask."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("ground set needs at least one color")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError("mask out of range for the ground set width")

    # -- constructors ------------------------------------------------------

    @classmethod
    def of(cls, n: int, *colors: int) -> "ColorSet":
        return cls(n, _mask_of(colors, n))

    @classmethod
    def from_members(cls, n: int, colors: Iterable[int]) -> "ColorSet":
        return cls(n, _mask_of(colors, n))

    @classmethod
    def empty(cls, n: int) -> "ColorSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "ColorSet":
        return cls(n, _full_mask(n))

    # -- basic queries -----------------------------------------------------

    def members(self) -> tuple[int, ...]:
        """Canonical serialization: ascending standard labels."""
        return _members(self.mask)

    def symmetrized_members(self) -> tuple[int, ...]:
        g = GroundSet(self.n)
        return tuple(sorted(g.to_symmetrized(i) for i in self.members()))

    def __contains__(self, color: int) -> bool:
        return 1 <= color <= self.n and bool(self.mask >> (color - 1) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __bool__(self) -> bool:
        return self.mask != 0

    @property
    def sort_key(self) -> tuple[int, ...]:
        """Canonical ColorSet order: lexicographic on the member list."""
        return self.members()

    def __lt__(self, other: "ColorSet") -> bool:
        self._check_ground(other)
        return self.sort_key < other.sort_key

    def _check_ground(self, other: "ColorSet") -> None:
        if self.n != other.n:
            raise GroundSetMismatchError(
                f"ground sets differ: [1..{self.n}] vs [1..{other.n}]")

    # -- set algebra (exact, ground-checked) --------------------------------

    def union(self, other: "ColorSet") -> "ColorSet":
        self._check_ground(other)
        return ColorSet(self.n, self.mask | other.mask)

    def intersection(self, other: "ColorSet") -> "ColorSet":
        self._check_ground(other)
        return ColorSet(self.n, self.mask & other.mask)

    def difference(self, other: "ColorSet") -> "ColorSet":
        self._check_ground(other)
        return ColorSet(self.n, self.mask & ~other.mask)

    def symmetric_difference(self, other: "ColorSet") -> "ColorSet":
        self._check_ground(other)
        return ColorSet(self.n, self.mask ^ other.mask)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __xor__ = symmetric_difference

    def complement(self) -> "ColorSet":
        return ColorSet(self.n, ~self.mask & _full_mask(self.n))

    def with_color(self, c: int) -> "ColorSet":
        return ColorSet(self.n, self.mask | _mask_of((c,), self.n))

    def without_color(self, c: int) -> "ColorSet":
        return ColorSet(self.n, self.mask & ~_mask_of((c,), self.n))

    # -- involutions ---------------------------------------------------------

    def mirror_complement(self) -> "ColorSet":
        """The involution A -> {n+1-i : i not in A}."""
        return ColorSet(self.n, _mirror_complement_mask(self.mask, self.n))

    def is_self_mirror(self) -> bool:
        return self.mask == _mirror_complement_mask(self.mask, self.n)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list[int]:
        return list(self.members())

    @classmethod
    def from_json(cls, n: int, data: Iterable[int]) -> "ColorSet":
        return cls.from_members(n, data)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.members())) + "}" + f"@{self.n}"


@dataclass(frozen=True)
class PairProfile:
    """Classification of the symmetric color pairs of a set.

    Proper pairs {i, n+1-i} with i != n+1-i are sorted into poor (no member
    of the pair present), ordinary (exactly one), and full (both).  For odd
    n the self-mirrored middle color is kept apart as a tri-state instead of
    being folded into either class.
    """

    poor: frozenset[tuple[int, int]]
    ordinary: frozenset[tuple[int, int]]
    full: frozenset[tuple[int, int]]
    middle_state: str  # 'absent' | 'poor' | 'full'

    def __post_init__(self) -> None:
        if self.middle_state not in ("absent", "poor", "full"):
            raise ValueError(f"bad middle_state {self.middle_state!r}")


@dataclass(frozen=True)
class OrderRelations:
    less: bool
    a_surrounds_b: bool
    b_surrounds_a: bool


def mirror_color(i: int, n: int) -> int:
    """The complementary color n+1-i."""
    if not 1 <= i <= n:
        raise ValueError(f"color {i} outside [1..{n}]")
    return n + 1 - i


def mirror_complement(a: ColorSet) -> ColorSet:
    return a.mirror_complement()


def classify_pairs(a: ColorSet) -> PairProfile:
    """Sort the symmetric pairs of the ground set by how many members hit a."""
    n = a.n
    poor, ordinary, full = [], [], []
    for i in range(1, n // 2 + 1):
        pair = (i, n + 1 - i)
        count = (i in a) + (pair[1] in a)
        (poor, ordinary, full)[count].append(pair)
    if n % 2 == 1:
        middle_state = "full" if ((n + 1) // 2) in a else "poor"
    else:
        middle_state = "absent"
    return PairProfile(frozenset(poor), frozenset(ordinary), frozenset(full),
                       middle_state)


def set_shape(a: ColorSet) -> str:
    """Classify a as 'interval', 'cointerval', 'both', or 'neither'.

    The empty set and the full set count as both, matching the convention
    that a co-interval is the complement of an interval.
    """
    inter = _is_interval_mask(a.mask)
    cointer = _is_interval_mask(~a.mask & _full_mask(a.n))
    if inter and cointer:
        return "both"
    if inter:
        return "interval"
    if cointer:
        return "cointerval"
    return "neither"


def _surrounds_masks(d_ab: int, d_ba: int) -> bool:
    """d_ab surrounds d_ba on min/max; false when either difference is empty."""
    if not d_ab or not d_ba:
        return False
    return (_min_color(d_ab) < _min_color(d_ba)
            and _max_color(d_ab) > _max_color(d_ba))


def order_predicates(a: ColorSet, b: ColorSet) -> OrderRelations:
    """The order facts used by the separation predicates.

    ``less`` means max(a) < min(b) with max(empty) = -inf and
    min(empty) = +inf, so any comparison against an empty side holds.
    ``a_surrounds_b`` needs both differences nonempty and a-b to strictly
    bracket b-a.
    """
    a._check_ground(b)
    if a.mask == 0 or b.mask == 0:
        less = True
    else:
        less = _max_color(a.mask) < _min_color(b.mask)
    d_ab = a.mask & ~b.mask
    d_ba = b.mask & ~a.mask
    return OrderRelations(
        less=less,
        a_surrounds_b=_surrounds_masks(d_ab, d_ba),
        b_surrounds_a=_surrounds_masks(d_ba, d_ab),
    )
