"""Exact rational plane geometry used by the tiling validators.

Everything here works on pairs of :class:`fractions.Fraction`, so every
predicate is decided exactly; no epsilon appears anywhere.  The module
also provides the generic certificate used to check that a family of
convex cells partitions a zonogon: combinatorial edge matching (cells
carry subset labels on their vertices), exact area accounting, boundary
coverage, and pairwise interior disjointness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vec2 = tuple[Fraction, Fraction]

__all__ = [
    "cross",
    "orient",
    "polygon_signed_area",
    "zonogon_area",
    "boundary_chains",
    "PartitionCell",
    "validate_partition",
]


def cross(o: Vec2, a: Vec2, b: Vec2) -> Fraction:
    """Cross product of (a-o) and (b-o); sign gives the turn direction."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orient(o: Vec2, a: Vec2, b: Vec2) -> int:
    c = cross(o, a, b)
    return (c > 0) - (c < 0)


def polygon_signed_area(points: Sequence[Vec2]) -> Fraction:
    """Shoelace signed area; positive for counterclockwise cycles."""
    total = Fraction(0)
    for i, p in enumerate(points):
        q = points[(i + 1) % len(points)]
        total += p[0] * q[1] - q[0] * p[1]
    return total / 2


def _on_segment_open(p: Vec2, q: Vec2, r: Vec2) -> bool:
    """q strictly between p and r, assuming the three points are collinear."""
    if p == r:
        return False
    return (min(p[0], r[0]) <= q[0] <= max(p[0], r[0])
            and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])
            and q != p and q != r)


def segments_cross_properly(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool:
    """True iff the open segments intersect in exactly one interior point."""
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def point_in_convex_strict(p: Vec2, poly: Sequence[Vec2]) -> bool:
    """Strict interior test for a counterclockwise convex polygon."""
    for i, a in enumerate(poly):
        b = poly[(i + 1) % len(poly)]
        if cross(a, b, p) <= 0:
            return False
    return True


def _centroid(poly: Sequence[Vec2]) -> Vec2:
    k = len(poly)
    return (sum(p[0] for p in poly) / k, sum(p[1] for p in poly) / k)


def convex_interiors_overlap(p1: Sequence[Vec2], p2: Sequence[Vec2]) -> bool:
    """Do two counterclockwise convex polygons share interior area?

    Detected via proper edge crossings, strict vertex containment, or
    strict centroid containment; the last case covers nested polygons
    whose boundaries only touch.
    """
    for i in range(len(p1)):
        a1, a2 = p1[i], p1[(i + 1) % len(p1)]
        for j in range(len(p2)):
            b1, b2 = p2[j], p2[(j + 1) % len(p2)]
            if segments_cross_properly(a1, a2, b1, b2):
                return True
    if any(point_in_convex_strict(v, p2) for v in p1):
        return True
    if any(point_in_convex_strict(v, p1) for v in p2):
        return True
    if point_in_convex_strict(_centroid(p1), p2):
        return True
    if point_in_convex_strict(_centroid(p2), p1):
        return True
    return False


# ---------------------------------------------------------------------------
# zonogon combinatorics


def zonogon_area(generators: Sequence[Vec2]) -> Fraction:
    total = Fraction(0)
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            gi, gj = generators[i], generators[j]
            total += abs(gi[0] * gj[1] - gj[0] * gi[1])
    return total


def _normalize_upper(generators: Sequence[Vec2]) -> tuple[list[Vec2], int]:
    """Flip generators into the upper half plane.

    Returns the normalized vectors and the mask of flipped indices; the
    zonogon is unchanged, but vertex labels of the flipped presentation
    differ from the original by toggling the flipped indices.
    """
    out: list[Vec2] = []
    flipped = 0
    for idx, (x, y) in enumerate(generators):
        if y < 0 or (y == 0 and x < 0):
            out.append((-x, -y))
            flipped |= 1 << idx
        elif x == 0 and y == 0:
            raise ValueError("zero generator")
        else:
            out.append((x, y))
    return out, flipped


def boundary_chains(generators: Sequence[Vec2]) -> tuple[list[int], list[int]]:
    """The two boundary vertex chains of the zonogon, as subset masks.

    Each chain runs between the two extreme vertices; together their
    consecutive pairs are exactly the boundary edges.  Generator
    directions must be pairwise distinct.
    """
    norm, flipped = _normalize_upper(generators)
    order = list(range(len(norm)))

    def angle_less(i: int, j: int) -> bool:
        c = norm[i][0] * norm[j][1] - norm[j][0] * norm[i][1]
        if c == 0:
            raise ValueError("parallel generators; boundary chains undefined")
        return c > 0

    # insertion sort with the exact comparator (n is tiny)
    for i in range(1, len(order)):
        j = i
        while j > 0 and angle_less(order[j], order[j - 1]):
            order[j], order[j - 1] = order[j - 1], order[j]
            j -= 1

    def chain(seq: list[int]) -> list[int]:
        masks = [flipped]
        cur = flipped
        for u in seq:
            cur ^= 1 << u
            masks.append(cur)
        return masks

    return chain(order), chain(order[::-1])


@dataclass(frozen=True)
class PartitionCell:
    """A convex cell of a candidate partition.

    ``vertex_masks`` and ``points`` list the boundary cycle in
    counterclockwise order; masks give the combinatorial identity of each
    vertex (two cells share an edge iff they share the mask pair).
    """

    vertex_masks: tuple[int, ...]
    points: tuple[Vec2, ...]
    label: str

    def edges(self) -> list[frozenset[int]]:
        k = len(self.vertex_masks)
        return [frozenset((self.vertex_masks[i], self.vertex_masks[(i + 1) % k]))
                for i in range(k)]


def validate_partition(
    generators: Sequence[Vec2],
    cells: Sequence[PartitionCell],
    *,
    check_overlap: bool = True,
) -> str | None:
    """Certify that cells partition the zonogon of the given generators.

    Checks, in order: per-cell nondegeneracy and counterclockwise
    orientation, exact area accounting, boundary edges covered exactly
    once, internal edges shared by exactly two cells, and (when the
    vertex embedding is injective on the cells' vertices) pairwise
    interior disjointness.  Returns None when every check passes, else a
    diagnostic string naming the first violated clause.
    """
    if len(generators) < 2:
        return None if not cells else "DegenerateZonogon: segment admits no cells"

    areas = []
    for cell in cells:
        a = polygon_signed_area(cell.points)
        if a == 0:
            return f"DegenerateCell: zero area in {cell.label}"
        if a < 0:
            return f"BadOrientation: clockwise cycle in {cell.label}"
        areas.append(a)

    total = zonogon_area(generators)
    if sum(areas, Fraction(0)) != total:
        return (f"AreaMismatch: cells cover {sum(areas, Fraction(0))} "
                f"of {total}")

    chain_a, chain_b = boundary_chains(generators)
    boundary_edges: set[frozenset[int]] = set()
    for chain in (chain_a, chain_b):
        for u, v in zip(chain, chain[1:]):
            boundary_edges.add(frozenset((u, v)))

    counts: dict[frozenset[int], int] = {}
    owner: dict[frozenset[int], str] = {}
    for cell in cells:
        for edge in cell.edges():
            counts[edge] = counts.get(edge, 0) + 1
            owner[edge] = cell.label
    for edge in boundary_edges:
        got = counts.pop(edge, 0)
        if got != 1:
            return (f"BoundaryEdge: edge {sorted(map(_fmt_mask, edge))} "
                    f"covered {got} times, expected 1")
    for edge, got in sorted(counts.items(), key=lambda kv: sorted(kv[0])):
        if got != 2:
            return (f"InternalEdge: edge {sorted(map(_fmt_mask, edge))} in "
                    f"{owner[edge]} covered {got} times, expected 2")

    if check_overlap and _embedding_injective(cells):
        ordered = sorted(cells, key=lambda c: (c.label, c.vertex_masks))
        for i, c1 in enumerate(ordered):
            for c2 in ordered[i + 1:]:
                if convex_interiors_overlap(c1.points, c2.points):
                    return f"Overlap: {c1.label} and {c2.label}"
    return None


def _embedding_injective(cells: Sequence[PartitionCell]) -> bool:
    seen: dict[int, Vec2] = {}
    for cell in cells:
        for mask, point in zip(cell.vertex_masks, cell.points):
            if seen.setdefault(mask, point) != point:
                return False
    points_to_mask: dict[Vec2, int] = {}
    for mask, point in seen.items():
        if points_to_mask.setdefault(point, mask) != mask:
            return False
    return True


def _fmt_mask(mask: int) -> str:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(str(i))
        mask >>= 1
        i += 1
    return "{" + ",".join(out) + "}"
