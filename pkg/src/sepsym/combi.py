"""Zonogon tilings with exact rational geometry.

The zonogon of n planar generators hosts tilings made of three kinds of
triangles: delta tiles (apex on top), nabla tiles (apex on bottom), and
triangular semi-lenses (all-flat edges, bulging up or down).  A fully
triangulated tiling of this kind carries a maximal weakly separated
collection as its vertex set, and conversely every such collection is
realized by exactly one underlying tiling; this module reconstructs the
tiling from the collection by an exact-cover search, symmetrizes it by
reflection in the middle line, and performs the middle-color expansion
that certifies the odd-ground maxima.

All coordinates are ``fractions.Fraction``; validation never relies on
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .colorsets import ColorSet, _members, _mirror_complement_mask
from .errors import (
    NoTilingError,
    NotMaximalError,
    NotMCoveredError,
    NotSymmetricError,
    ParityError,
)
from .geometry import (
    PartitionCell,
    Vec2,
    boundary_chains,
    cross,
    validate_partition,
    zonogon_area,
)
from .separation import SeparationRelation, _weak_masks

__all__ = [
    "ZonogonConfig",
    "Tile",
    "FtqCombi",
    "FineQuasiCombi",
    "make_zonogon_config",
    "embed",
    "embed_mask",
    "embed_mask_y",
    "validate_ftq_combi",
    "validate_fine_quasi_combi",
    "reconstruct_ftq_combi",
    "reflect_symmetrize",
    "expand_combi_odd",
    "merge_semilenses",
    "fan_triangulate",
    "export_svg",
    "combi_to_json",
    "combi_from_json",
]


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ZonogonConfig:
    """Generators of the zonogon: almost-vertical vectors (x_i, 1 - d_i).

    Checked invariants: strictly increasing x, deficits d_i within
    (0, 1/4] except that the self-mirrored middle generator of an odd
    symmetric ground sits exactly at height 1, strict concavity of the
    generator tips, pairwise distinctness of all generators and of all
    their differences, and the mirror symmetry x_i = -x_{n+1-i},
    y_i = y_{n+1-i} when flagged symmetric.
    """

    n: int
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]
    symmetric: bool

    def __post_init__(self) -> None:
        n = self.n
        if n < 1:
            raise ValueError("need n >= 1")
        if len(self.xs) != n or len(self.ys) != n:
            raise ValueError("generator count differs from n")
        for i in range(n - 1):
            if not self.xs[i] < self.xs[i + 1]:
                raise ValueError("x coordinates must increase strictly")
        for x, y in zip(self.xs, self.ys):
            delta = 1 - y
            if delta < 0 or delta > Fraction(1, 4):
                raise ValueError(f"height deficit {delta} outside [0, 1/4]")
            if delta == 0 and x != 0:
                raise ValueError("only the middle generator may reach height 1")
        vecs = list(self.generators)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if not self._concave_triple(vecs[i], vecs[j], vecs[k]):
                        raise ValueError(
                            f"generators {i+1},{j+1},{k+1} are not strictly "
                            "concave")
        diffs = [(vecs[j][0] - vecs[i][0], vecs[j][1] - vecs[i][1])
                 for i in range(n) for j in range(i + 1, n)]
        seen = set(vecs)
        if len(seen) != n:
            raise ValueError("generators are not pairwise distinct")
        for d in diffs:
            if d in seen:
                raise ValueError("a generator difference collides with a "
                                 "generator")
            seen.add(d)
        if len(seen) != n + len(diffs):
            raise ValueError("generator differences are not pairwise distinct")
        if self.symmetric:
            for i in range(n):
                io = n - 1 - i
                if self.xs[i] != -self.xs[io] or self.ys[i] != self.ys[io]:
                    raise ValueError("generators are not mirror symmetric")

    @staticmethod
    def _concave_triple(a: Vec2, b: Vec2, c: Vec2) -> bool:
        det = a[0] * c[1] - c[0] * a[1]
        if det == 0:
            return False
        lam = (b[0] * c[1] - c[0] * b[1]) / det
        lam2 = (a[0] * b[1] - b[0] * a[1]) / det
        return lam > 0 and lam2 > 0 and lam + lam2 > 1

    @property
    def generators(self) -> tuple[Vec2, ...]:
        return tuple((x, y) for x, y in zip(self.xs, self.ys))

    def generator(self, i: int) -> Vec2:
        return (self.xs[i - 1], self.ys[i - 1])

    @property
    def middle_height(self) -> Fraction:
        """Height of the middle line (even symmetric ground only)."""
        if self.n % 2 == 1:
            raise ParityError("the middle line needs an even ground set")
        if not self.symmetric:
            raise NotSymmetricError("the middle line needs symmetric "
                                    "generators")
        return sum(self.ys[: self.n // 2], Fraction(0))

    def area(self) -> Fraction:
        return zonogon_area(self.generators)


def make_zonogon_config(n: int, symmetric: bool = True) -> ZonogonConfig:
    """The standard generators: integer x on a shallow concave parabola.

    x_i = 2i - n - 1 and y_i = 1 - x_i^2 / (4 (n+1)^2).  The tips lie on
    a strictly concave curve, deficits stay within 1/4, and differences
    of generators never collide, so every config invariant holds.
    """
    xs = tuple(Fraction(2 * i - n - 1) for i in range(1, n + 1))
    ys = tuple(1 - x * x / Fraction(4 * (n + 1) ** 2) for x in xs)
    return ZonogonConfig(n, xs, ys, symmetric)


def embed_mask(mask: int, cfg: ZonogonConfig) -> Vec2:
    x = Fraction(0)
    y = Fraction(0)
    m = mask
    i = 0
    while m:
        if m & 1:
            x += cfg.xs[i]
            y += cfg.ys[i]
        m >>= 1
        i += 1
    return (x, y)


def embed_mask_y(mask: int, cfg: ZonogonConfig) -> Fraction:
    y = Fraction(0)
    m = mask
    i = 0
    while m:
        if m & 1:
            y += cfg.ys[i]
        m >>= 1
        i += 1
    return y


def embed(a: ColorSet, cfg: ZonogonConfig) -> Vec2:
    """The point of a subset: the sum of its generators."""
    if a.n != cfg.n:
        raise ValueError("ColorSet and config widths differ")
    return embed_mask(a.mask, cfg)


# ---------------------------------------------------------------------------
# tiles


_KIND_RANK = {"delta": 0, "nabla": 1, "upper": 2, "lower": 3}


@dataclass(frozen=True)
class Tile:
    """One cell of a tiling.

    * ``delta``: apex A on top, colors (i, j); vertices A-j, A-i, A.
    * ``nabla``: apex A on bottom, colors (i, j); vertices A, A+j, A+i.
    * ``upper``: semi-lens bulging up, root X, vertices X+c per color.
    * ``lower``: semi-lens bulging down, root Y, vertices Y-c per color.

    Semi-lenses carry exactly three colors inside a fully triangulated
    tiling and three or more inside a fine quasi tiling.
    """

    kind: str
    anchor: ColorSet
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown tile kind {self.kind!r}")
        cs = self.colors
        if any(cs[i] >= cs[i + 1] for i in range(len(cs) - 1)):
            raise ValueError("tile colors must be strictly increasing")
        if any(not 1 <= c <= self.anchor.n for c in cs):
            raise ValueError("tile color outside the ground set")
        if self.kind in ("delta", "nabla"):
            if len(cs) != 2:
                raise ValueError(f"{self.kind} tile needs exactly two colors")
            inside = all(c in self.anchor for c in cs)
            if self.kind == "delta" and not inside:
                raise ValueError("delta apex must contain both colors")
            if self.kind == "nabla" and any(c in self.anchor for c in cs):
                raise ValueError("nabla apex must avoid both colors")
        else:
            if len(cs) < 3:
                raise ValueError("semi-lens needs at least three colors")
            if self.kind == "upper" and any(c in self.anchor for c in cs):
                raise ValueError("upper semi-lens root must avoid its colors")
            if self.kind == "lower" and not all(c in self.anchor for c in cs):
                raise ValueError("lower semi-lens root must contain its colors")

    @property
    def n(self) -> int:
        return self.anchor.n

    def vertices(self) -> tuple[ColorSet, ...]:
        """Boundary cycle in counterclockwise order."""
        a = self.anchor
        cs = self.colors
        if self.kind == "delta":
            i, j = cs
            return (a.without_color(j), a.without_color(i), a)
        if self.kind == "nabla":
            i, j = cs
            return (a, a.with_color(j), a.with_color(i))
        if self.kind == "upper":
            pts = [a.with_color(c) for c in cs]
            return (pts[0], pts[-1], *reversed(pts[1:-1]))
        pts = [a.without_color(c) for c in cs]
        return tuple(reversed(pts))

    def vertex_masks(self) -> tuple[int, ...]:
        return tuple(v.mask for v in self.vertices())

    @property
    def sort_key(self):
        return (_KIND_RANK[self.kind], self.anchor.sort_key, self.colors)

    @property
    def is_lens(self) -> bool:
        return self.kind in ("upper", "lower")

    def mirror(self) -> "Tile":
        """The reflection of the tile in the middle line (set level)."""
        n = self.n
        image = self.anchor.mirror_complement()
        colors = tuple(sorted(n + 1 - c for c in self.colors))
        flip = {"delta": "nabla", "nabla": "delta",
                "upper": "lower", "lower": "upper"}
        return Tile(flip[self.kind], image, colors)

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "apex_or_root": list(self.anchor.members()),
                "colors": list(self.colors)}


def _tile_cell(tile: Tile, cfg: ZonogonConfig) -> PartitionCell:
    verts = tile.vertices()
    return PartitionCell(
        vertex_masks=tuple(v.mask for v in verts),
        points=tuple(embed_mask(v.mask, cfg) for v in verts),
        label=f"{tile.kind}({tile.anchor!r};{','.join(map(str, tile.colors))})",
    )


@dataclass(frozen=True)
class FtqCombi:
    """A fully triangulated tiling of the zonogon."""

    config: ZonogonConfig
    tiles: frozenset[Tile]

    def vertex_set(self) -> frozenset[ColorSet]:
        out: set[ColorSet] = set()
        for t in self.tiles:
            out.update(t.vertices())
        if self.config.n == 1 and not self.tiles:
            out = {ColorSet.empty(1), ColorSet.full(1)}
        return frozenset(out)

    def vertex_masks(self) -> tuple[int, ...]:
        return tuple(sorted((v.mask for v in self.vertex_set()), key=_members))

    def sorted_tiles(self) -> tuple[Tile, ...]:
        return tuple(sorted(self.tiles, key=lambda t: t.sort_key))

    def to_json(self) -> dict:
        return combi_to_json(self)


@dataclass(frozen=True)
class FineQuasiCombi:
    """A tiling whose semi-lenses have been merged maximally."""

    config: ZonogonConfig
    tiles: frozenset[Tile]

    def vertex_set(self) -> frozenset[ColorSet]:
        out: set[ColorSet] = set()
        for t in self.tiles:
            out.update(t.vertices())
        return frozenset(out)

    def sorted_tiles(self) -> tuple[Tile, ...]:
        return tuple(sorted(self.tiles, key=lambda t: t.sort_key))


# ---------------------------------------------------------------------------
# validation


def _weak_target(n: int) -> int:
    return n * (n - 1) // 2 + n + 1


def _validate_tiling(cfg: ZonogonConfig, tiles: Iterable[Tile],
                     require_triangles: bool) -> str | None:
    tiles = list(tiles)
    if cfg.n == 1:
        return None if not tiles else "DegenerateZonogon: n=1 admits no tiles"
    for t in tiles:
        if t.n != cfg.n:
            return f"GroundMismatch: tile over [1..{t.n}] in [1..{cfg.n}]"
        if require_triangles and t.is_lens and len(t.colors) != 3:
            return (f"LensNotTriangular: {len(t.colors)} colors in "
                    f"{t.kind}({t.anchor!r})")
    cells = [_tile_cell(t, cfg) for t in
             sorted(tiles, key=lambda t: t.sort_key)]
    verdict = validate_partition(cfg.generators, cells)
    if verdict is not None:
        return verdict
    masks = set()
    for t in tiles:
        masks.update(t.vertex_masks())
    if len(masks) != _weak_target(cfg.n):
        return (f"VertexSetNotMaximal: {len(masks)} vertices, expected "
                f"{_weak_target(cfg.n)}")
    ordered = sorted(masks, key=_members)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if not _weak_masks(a, b):
                return (f"VertexSetNotMaximal: {ColorSet(cfg.n, a)} and "
                        f"{ColorSet(cfg.n, b)} are not weakly separated")
    return None


def validate_ftq_combi(combi: FtqCombi) -> str | None:
    """Full certificate for a triangulated tiling.

    Checks tile shapes, exact area accounting, boundary coverage, edge
    matching, interior disjointness, and that the vertex set is a
    maximal weakly separated collection.  Returns None when valid and a
    diagnostic naming the first violated clause otherwise.
    """
    return _validate_tiling(combi.config, combi.tiles, require_triangles=True)


def validate_fine_quasi_combi(fq: FineQuasiCombi) -> str | None:
    verdict = _validate_tiling(fq.config, fq.tiles, require_triangles=False)
    if verdict is not None:
        return verdict
    seen: dict[tuple[str, frozenset[int]], Tile] = {}
    for t in sorted(fq.tiles, key=lambda t: t.sort_key):
        if not t.is_lens:
            continue
        cell_edges = [frozenset((a, b)) for a, b in
                      zip(t.vertex_masks(), t.vertex_masks()[1:] +
                          t.vertex_masks()[:1])]
        for e in cell_edges:
            key = (t.kind, e)
            if key in seen:
                return (f"NotFine: {t.kind} semi-lenses share an edge "
                        f"({t.anchor!r} and {seen[key].anchor!r})")
            seen[key] = t
    return None


# ---------------------------------------------------------------------------
# reconstruction from a maximal weakly separated collection


def _collection_masks(collection, n: int) -> list[int]:
    masks = []
    for a in collection:
        if isinstance(a, ColorSet):
            if a.n != n:
                raise ValueError("collection over the wrong ground set")
            masks.append(a.mask)
        else:
            masks.append(int(a))
    return sorted(set(masks), key=_members)


def _candidate_tiles(masks: Sequence[int], n: int) -> list[Tile]:
    present = set(masks)
    tiles: list[Tile] = []
    upper_roots: dict[int, list[int]] = {}
    lower_roots: dict[int, list[int]] = {}
    for mask in masks:
        members = _members(mask)
        absent = [c for c in range(1, n + 1) if c not in members]
        for ai, i in enumerate(members):
            upper_roots.setdefault(mask & ~(1 << (i - 1)), []).append(i)
            for j in members[ai + 1:]:
                if (mask ^ (1 << (i - 1))) in present and \
                   (mask ^ (1 << (j - 1))) in present:
                    tiles.append(Tile("delta", ColorSet(n, mask), (i, j)))
        for bi, i in enumerate(absent):
            lower_roots.setdefault(mask | (1 << (i - 1)), []).append(i)
            for j in absent[bi + 1:]:
                if (mask | (1 << (i - 1))) in present and \
                   (mask | (1 << (j - 1))) in present:
                    tiles.append(Tile("nabla", ColorSet(n, mask), (i, j)))
    for root, cs in upper_roots.items():
        cs = sorted(set(cs))
        for a in range(len(cs)):
            for b in range(a + 1, len(cs)):
                for c in range(b + 1, len(cs)):
                    tiles.append(Tile("upper", ColorSet(n, root),
                                      (cs[a], cs[b], cs[c])))
    for root, cs in lower_roots.items():
        cs = sorted(set(cs))
        for a in range(len(cs)):
            for b in range(a + 1, len(cs)):
                for c in range(b + 1, len(cs)):
                    tiles.append(Tile("lower", ColorSet(n, root),
                                      (cs[a], cs[b], cs[c])))
    return tiles


def _tile_slots(tile: Tile, cfg: ZonogonConfig):
    """The three (edge, side) slots a triangle covers.

    An edge is the frozenset of its two vertex masks; the side is the
    exact orientation sign of the remaining vertex against the edge
    directed canonically (subset to superset, or i-carrier to j-carrier).
    """
    verts = tile.vertices()
    masks = [v.mask for v in verts]
    pts = {v.mask: embed_mask(v.mask, cfg) for v in verts}
    slots = []
    k = len(masks)
    for idx in range(k):
        p, q = masks[idx], masks[(idx + 1) % k]
        r = masks[(idx + 2) % k]
        tail, head = _orient_edge(p, q)
        side = cross(pts[tail], pts[head], pts[r])
        if side == 0:
            raise NoTilingError("degenerate candidate triangle")
        slots.append((frozenset((p, q)), 1 if side > 0 else -1))
    return slots


def _orient_edge(p: int, q: int) -> tuple[int, int]:
    if p & q == p:  # p subset of q: color edge upward
        return p, q
    if p & q == q:
        return q, p
    diff = p ^ q
    i = (diff & -diff).bit_length()  # smallest differing color
    return (p, q) if p >> (i - 1) & 1 else (q, p)


def _edge_sort_key(edge: frozenset[int]):
    a, b = sorted(edge, key=_members)
    return (_members(a), _members(b))


def reconstruct_ftq_combi(collection, cfg: ZonogonConfig) -> FtqCombi:
    """Rebuild the unique tiling whose vertex set is the given collection.

    The collection must be a maximal weakly separated collection of the
    right size.  Candidate tiles are enumerated purely combinatorially
    from the collection; a backtracking exact-cover search over edge
    slots finds a tiling, which is then canonicalized by merging
    semi-lenses and re-triangulating each by the fan from its leftmost
    vertex, so the result does not depend on the search path.
    """
    n = cfg.n
    masks = _collection_masks(collection, n)
    if len(masks) != _weak_target(n):
        raise NotMaximalError(
            f"collection has {len(masks)} members, a maximal weakly "
            f"separated collection on [1..{n}] has {_weak_target(n)}")
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if not _weak_masks(a, b):
                raise NotMaximalError(
                    f"members {ColorSet(n, a)} and {ColorSet(n, b)} are not "
                    "weakly separated")
    if n == 1:
        return FtqCombi(cfg, frozenset())

    candidates = sorted(
        _candidate_tiles(masks, n),
        key=lambda t: (min(embed_mask(v, cfg)[0] for v in t.vertex_masks()),
                       _KIND_RANK[t.kind], t.anchor.sort_key, t.colors))
    slot_lists = [_tile_slots(t, cfg) for t in candidates]
    by_slot: dict[tuple[frozenset[int], int], list[int]] = {}
    for idx, slots in enumerate(slot_lists):
        for slot in slots:
            by_slot.setdefault(slot, []).append(idx)

    chain_a, chain_b = boundary_chains(cfg.generators)
    center = (sum(cfg.xs, Fraction(0)) / 2, sum(cfg.ys, Fraction(0)) / 2)
    boundary_side: dict[frozenset[int], int] = {}
    for chain in (chain_a, chain_b):
        for u, v in zip(chain, chain[1:]):
            tail, head = _orient_edge(u, v)
            s = cross(embed_mask(tail, cfg), embed_mask(head, cfg), center)
            boundary_side[frozenset((u, v))] = 1 if s > 0 else -1

    total_area = cfg.area()
    areas = []
    for t in candidates:
        pts = [embed_mask(v, cfg) for v in t.vertex_masks()]
        areas.append(abs(cross(pts[0], pts[1], pts[2])) / 2)

    covered: set[tuple[frozenset[int], int]] = set()
    open_slots: set[tuple[frozenset[int], int]] = {
        (e, s) for e, s in boundary_side.items()}
    placed: list[int] = []
    area_left = [total_area]

    def slot_rank(slot):
        return (_edge_sort_key(slot[0]), slot[1])

    def place(idx: int) -> list:
        undo = []
        for slot in slot_lists[idx]:
            covered.add(slot)
            if slot in open_slots:
                open_slots.remove(slot)
                undo.append(("reopen", slot))
            else:
                opposite = (slot[0], -slot[1])
                open_slots.add(opposite)
                undo.append(("close", opposite))
        placed.append(idx)
        area_left[0] -= areas[idx]
        return undo

    def unplace(idx: int, undo: list) -> None:
        for action, slot in reversed(undo):
            if action == "reopen":
                open_slots.add(slot)
            else:
                open_slots.remove(slot)
        for slot in slot_lists[idx]:
            covered.remove(slot)
        placed.pop()
        area_left[0] += areas[idx]

    def feasible(idx: int) -> bool:
        if areas[idx] > area_left[0]:
            return False
        for slot in slot_lists[idx]:
            if slot in covered:
                return False
            edge, side = slot
            if edge in boundary_side and boundary_side[edge] != side:
                return False
        return True

    def search() -> bool:
        if not open_slots:
            return area_left[0] == 0
        slot = min(open_slots, key=slot_rank)
        for idx in by_slot.get(slot, ()):
            if not feasible(idx):
                continue
            undo = place(idx)
            if search():
                return True
            unplace(idx, undo)
        return False

    if not search():
        raise NoTilingError(
            "exact-cover search found no tiling; the input is not the "
            "vertex set of any triangulated tiling")

    raw = FtqCombi(cfg, frozenset(candidates[i] for i in placed))
    canonical = fan_triangulate(merge_semilenses(raw))
    verdict = validate_ftq_combi(canonical)
    if verdict is not None:
        raise NoTilingError(f"reconstructed tiling failed validation: "
                            f"{verdict}")
    return canonical


# ---------------------------------------------------------------------------
# semi-lens merging and canonical re-triangulation


def merge_semilenses(combi: FtqCombi | FineQuasiCombi) -> FineQuasiCombi:
    """Union same-kind semi-lenses sharing an edge until none remain.

    Two mergeable semi-lenses always share their root, so each connected
    component collapses to one semi-lens on the union of the colors; the
    result is independent of any merge order and keeps the vertex set.
    """
    plain = [t for t in combi.tiles if not t.is_lens]
    lenses = sorted((t for t in combi.tiles if t.is_lens),
                    key=lambda t: t.sort_key)
    merged: list[Tile] = []
    for kind in ("upper", "lower"):
        groups: dict[int, list[Tile]] = {}
        for t in lenses:
            if t.kind == kind:
                groups.setdefault(t.anchor.mask, []).append(t)
        for root_mask, ts in sorted(groups.items()):
            merged.extend(_merge_root_group(ts))
    return FineQuasiCombi(combi.config, frozenset(plain + merged))


def _merge_root_group(ts: list[Tile]) -> list[Tile]:
    parent = list(range(len(ts)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edge_owner: dict[frozenset[int], int] = {}
    for idx, t in enumerate(ts):
        masks = t.vertex_masks()
        for a, b in zip(masks, masks[1:] + masks[:1]):
            e = frozenset((a, b))
            if e in edge_owner:
                ra, rb = find(edge_owner[e]), find(idx)
                parent[ra] = rb
            else:
                edge_owner[e] = idx
    components: dict[int, set[int]] = {}
    for idx, t in enumerate(ts):
        components.setdefault(find(idx), set()).update(t.colors)
    out = []
    for root_idx, colors in sorted(components.items()):
        t0 = ts[root_idx]
        out.append(Tile(t0.kind, t0.anchor, tuple(sorted(colors))))
    return out


def fan_triangulate(fq: FineQuasiCombi) -> FtqCombi:
    """Triangulate every large semi-lens by the fan from its leftmost vertex."""
    tiles: list[Tile] = []
    for t in sorted(fq.tiles, key=lambda t: t.sort_key):
        if not t.is_lens or len(t.colors) == 3:
            tiles.append(t)
            continue
        cs = t.colors
        if t.kind == "upper":
            # leftmost vertex is root + smallest color
            for s in range(1, len(cs) - 1):
                tiles.append(Tile("upper", t.anchor, (cs[0], cs[s], cs[s + 1])))
        else:
            # leftmost vertex is root - largest color
            for s in range(len(cs) - 2):
                tiles.append(Tile("lower", t.anchor, (cs[s], cs[s + 1], cs[-1])))
    return FtqCombi(fq.config, frozenset(tiles))


# ---------------------------------------------------------------------------
# mirror symmetrization (even ground)


def reflect_symmetrize(combi: FtqCombi) -> FtqCombi:
    """Replace the upper half of the tiling by the mirror of the lower half.

    Requires an even symmetric ground whose middle line is covered by
    edges of the tiling; a tile straddling the line makes the reflection
    impossible and raises NotMCoveredError.
    """
    cfg = combi.config
    if cfg.n % 2 == 1:
        raise ParityError("mirror symmetrization needs an even ground set")
    y_mid = cfg.middle_height
    lower: list[Tile] = []
    for t in combi.tiles:
        heights = [embed_mask(v, cfg)[1] for v in t.vertex_masks()]
        below, above = min(heights) < y_mid, max(heights) > y_mid
        if below and above:
            raise NotMCoveredError(
                f"tile {t.kind}({t.anchor!r}) crosses the middle line; the "
                "line is not covered by edges")
        if not above:
            lower.append(t)
    tiles = set(lower)
    tiles.update(t.mirror() for t in lower)
    out = FtqCombi(cfg, frozenset(tiles))
    verdict = validate_ftq_combi(out)
    if verdict is not None:
        raise NotMCoveredError(f"reflected tiling failed validation: {verdict}")
    return out


def is_mirror_symmetric(combi: FtqCombi) -> bool:
    return {t.mirror() for t in combi.tiles} == set(combi.tiles)


def middle_path(combi: FtqCombi) -> tuple[ColorSet, ...]:
    """Vertices of the tiling on the middle line, ordered left to right."""
    cfg = combi.config
    y_mid = cfg.middle_height
    on_line = [v for v in combi.vertex_set()
               if embed_mask(v.mask, cfg)[1] == y_mid]
    return tuple(sorted(on_line, key=lambda v: embed_mask(v.mask, cfg)[0]))


# ---------------------------------------------------------------------------
# middle-color expansion (even ground -> odd ground)


def expand_combi_odd(combi: FtqCombi):
    """Split a symmetric tiling along its middle line and insert a color.

    The lower half is kept, the upper half is lifted by the new vertical
    middle generator, and each rectangle of the opened seam is subdivided
    into two nablas, one delta, and one lower semi-lens around a fresh
    interior vertex.  Returns the tiling on 2m+1 colors together with its
    vertex set minus the m fresh vertices, which is a maximal symmetric
    weakly separated collection on the odd ground.
    """
    from .collections import SymCollection

    cfg = combi.config
    n = cfg.n
    if n % 2 == 1:
        raise ParityError("middle-color expansion needs an even ground set")
    if not is_mirror_symmetric(combi):
        raise NotSymmetricError("tiling is not mirror symmetric")
    m = n // 2
    path = middle_path(combi)
    if len(path) != m + 1:
        raise NotMCoveredError(
            f"expected {m + 1} vertices on the middle line, found {len(path)}")

    mid = m + 1  # the new color, in the labels of the larger ground

    def relabel(c: int) -> int:
        return c if c <= m else c + 1

    def lift_mask(mask: int, add_mid: bool) -> int:
        low = mask & ((1 << m) - 1)
        high = mask >> m
        out = low | (high << (m + 1))
        if add_mid:
            out |= 1 << m
        return out

    new_n = n + 1
    new_cfg = make_zonogon_config(new_n, symmetric=True)
    y_mid = cfg.middle_height
    tiles: list[Tile] = []
    for t in combi.tiles:
        heights = [embed_mask(v, cfg)[1] for v in t.vertex_masks()]
        if min(heights) < y_mid and max(heights) > y_mid:
            raise NotMCoveredError(
                f"tile {t.kind}({t.anchor!r}) crosses the middle line")
        above = min(heights) >= y_mid
        anchor = ColorSet(new_n, lift_mask(t.anchor.mask, add_mid=above))
        tiles.append(Tile(t.kind, anchor, tuple(relabel(c) for c in t.colors)))

    # tiles whose top edge lies on the line stay below the seam, those
    # with their bottom edge on it are lifted; the opened rectangles are
    # filled below
    for p in range(1, m + 1):
        r_prev = path[p - 1].mask
        r_cur = path[p].mask
        diff = r_prev ^ r_cur
        i = (diff & -diff).bit_length()
        io = diff.bit_length()
        if io != n + 1 - i:
            raise NotMCoveredError(
                "middle-line edge is not a mirror color pair")
        rp_new = lift_mask(r_prev, False)
        rc_new = lift_mask(r_cur, False)
        i_new, io_new = relabel(i), relabel(io)
        fresh = rp_new | (1 << (io_new - 1))  # = rc_new | bit(i_new)
        tiles.append(Tile("nabla", ColorSet(new_n, rp_new), (mid, io_new)))
        tiles.append(Tile("nabla", ColorSet(new_n, rc_new), (i_new, mid)))
        tiles.append(Tile("delta", ColorSet(new_n, fresh), (i_new, io_new)))
        tiles.append(Tile("lower", ColorSet(new_n, fresh | (1 << (mid - 1))),
                          (i_new, mid, io_new)))

    expanded = FtqCombi(new_cfg, frozenset(tiles))
    verdict = validate_ftq_combi(expanded)
    if verdict is not None:
        raise NotMCoveredError(f"expanded tiling failed validation: {verdict}")

    fresh_masks = set()
    for p in range(1, m + 1):
        fresh_masks.add(lift_mask(path[p - 1].mask | path[p].mask, False))
    kept = [v for v in expanded.vertex_masks() if v not in fresh_masks]
    result = SymCollection.from_masks(new_n, kept, SeparationRelation.weak())
    return expanded, result


# ---------------------------------------------------------------------------
# serialization and SVG export


def combi_to_json(combi: FtqCombi | FineQuasiCombi) -> dict:
    return {
        "n": combi.config.n,
        "symmetric": combi.config.symmetric,
        "tiles": [t.to_json() for t in combi.sorted_tiles()],
    }


def combi_from_json(data: dict) -> FtqCombi:
    n = int(data["n"])
    cfg = make_zonogon_config(n, symmetric=bool(data.get("symmetric", True)))
    tiles = []
    for td in data["tiles"]:
        tiles.append(Tile(td["kind"],
                          ColorSet.from_members(n, td["apex_or_root"]),
                          tuple(td["colors"])))
    return FtqCombi(cfg, frozenset(tiles))


_SVG_STYLE = (
    "polygon{stroke:#333;stroke-width:0.8;fill-opacity:0.75}"
    ".delta{fill:#9ecae1}.nabla{fill:#fdd0a2}"
    ".upper{fill:#a1d99b}.lower{fill:#bcbddc}"
    ".midline{stroke:#d62728;stroke-width:1.2;stroke-dasharray:6 4}"
    "circle{fill:#222}text{font:10px sans-serif;fill:#111}"
)


def _fmt(value: Fraction | float) -> str:
    return f"{float(value):.4f}"


def export_svg(combi: FtqCombi | FineQuasiCombi, *, scale: int = 60,
               labels: bool = True, show_middle_line: bool | None = None) -> str:
    """Deterministic SVG rendering: one polygon per tile, class per kind.

    The output depends only on the tiling, so identical inputs give
    byte-identical documents.
    """
    cfg = combi.config
    pts_cache: dict[int, Vec2] = {}

    def point(mask: int) -> Vec2:
        if mask not in pts_cache:
            pts_cache[mask] = embed_mask(mask, cfg)
        return pts_cache[mask]

    all_masks: set[int] = set()
    for t in combi.tiles:
        all_masks.update(t.vertex_masks())
    if not all_masks:
        all_masks = {0, (1 << cfg.n) - 1}
    xs = [point(m)[0] for m in all_masks]
    ys = [point(m)[1] for m in all_masks]
    # always include the zonogon corners so the frame is stable
    x_min, x_max = min(xs + [Fraction(0)]), max(xs + [Fraction(0)])
    y_min, y_max = min(ys + [Fraction(0)]), max(ys + [Fraction(0)])
    pad = Fraction(3, 2)
    width = (x_max - x_min + 2 * pad) * scale
    height = (y_max - y_min + 2 * pad) * scale

    def to_svg(p: Vec2) -> tuple[str, str]:
        sx = (p[0] - x_min + pad) * scale
        sy = (y_max - p[1] + pad) * scale
        return _fmt(sx), _fmt(sy)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f"<style>{_SVG_STYLE}</style>",
    ]
    for t in sorted(combi.tiles, key=lambda t: t.sort_key):
        coords = " ".join(",".join(to_svg(point(v))) for v in t.vertex_masks())
        lines.append(f'<polygon class="{t.kind}" points="{coords}"/>')
    show_mid = show_middle_line
    if show_mid is None:
        show_mid = cfg.symmetric and cfg.n % 2 == 0
    if show_mid and cfg.n % 2 == 0 and cfg.symmetric:
        y = cfg.middle_height
        x0, y0 = to_svg((x_min - Fraction(1, 2), y))
        x1, y1 = to_svg((x_max + Fraction(1, 2), y))
        lines.append(f'<line class="midline" x1="{x0}" y1="{y0}" '
                     f'x2="{x1}" y2="{y1}"/>')
    for mask in sorted(all_masks, key=_members):
        cx, cy = to_svg(point(mask))
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="2"/>')
        if labels:
            text = "".join(map(str, _members(mask))) if cfg.n <= 9 else \
                ",".join(map(str, _members(mask)))
            lines.append(f'<text x="{cx}" y="{cy}" dx="3" dy="-3">'
                         f'{text or "&#8709;"}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
