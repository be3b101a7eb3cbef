"""Cubillages of the three-dimensional cyclic zonotope, exactly.

A cubillage tiles the zonotope of n generators (t_i, 1, t_i^2) into
C(n,3) combinatorial cubes; its vertex set (the spectrum) is a maximal
chord separated collection, and that correspondence is a bijection.
This module validates cubillages, slices them into fragments, projects
membranes down to zonogon tilings, expands and contracts colors through
strong membranes, and builds mirror-symmetric cubillages for every n,
the geometric certificates behind the chord-separation purity results.

Coordinates are exact rationals throughout.  The second coordinate of a
point is its height, the third its depth; the front side of a body is
the part seen from shallow depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .colorsets import ColorSet, _members, _mirror_complement_mask
from .collections import (
    Domain,
    SymCollection,
    chord_target,
    greedy_symmetric_completion,
)
from .combi import FtqCombi, Tile, ZonogonConfig, embed_mask
from .errors import (
    BadMembraneError,
    NoCubillageError,
    NotMaximalError,
    NotSymmetricError,
    ParityError,
    ScaleLimitError,
)
from .geometry import (
    PartitionCell,
    Vec2,
    cross,
    polygon_signed_area,
    validate_partition,
)
from .separation import SeparationRelation, _chord_masks

__all__ = [
    "ZonotopeConfig",
    "Cube",
    "Facet",
    "Cubillage",
    "Fragment",
    "Fragmentation",
    "HalfFacet",
    "Section",
    "Membrane",
    "make_zonotope_config",
    "embed3",
    "validate_cubillage",
    "spectrum",
    "boundary_sides",
    "center_symmetry",
    "mirror_x",
    "axis_rotation",
    "axis_endpoints",
    "mirror_cube",
    "mirror_facet",
    "mirror_item",
    "is_symmetric_cubillage",
    "fragmentation",
    "project_point",
    "project_config",
    "membrane_to_combi",
    "check_membrane",
    "plate_membrane",
    "expand_cubillage",
    "extract_pie",
    "contract_cubillage",
    "vertical_boundary_membranes",
    "symmetric_membrane_between",
    "build_symmetric_cubillage",
    "reconstruct_from_spectrum",
    "lift_membrane",
    "cubillage_to_json",
    "cubillage_from_json",
    "membrane_to_json",
    "membrane_from_json",
    "DEFAULT_BUILD_LIMIT",
]

Vec3 = tuple[Fraction, Fraction, Fraction]

#: Cubillage builders above this n are rejected without an explicit override.
DEFAULT_BUILD_LIMIT = 7


def _cross3(u: Vec3, v: Vec3) -> Vec3:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _dot3(u: Vec3, v: Vec3) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ZonotopeConfig:
    """Generators (t_i, 1, t_i**2) with strictly increasing t.

    The depth profile t -> t^2 is strictly convex, which makes the
    configuration cyclic; ``rho`` is the slope of the flattening
    projection (a, b, c) -> (a, b - rho*c), chosen small enough that the
    projected generators satisfy every zonogon axiom (this is checked by
    actually constructing the projected configuration).
    """

    n: int
    ts: tuple[Fraction, ...]
    symmetric: bool
    rho: Fraction

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need n >= 1")
        if len(self.ts) != self.n:
            raise ValueError("generator count differs from n")
        for i in range(self.n - 1):
            if not self.ts[i] < self.ts[i + 1]:
                raise ValueError("t coordinates must increase strictly")
        if self.rho <= 0:
            raise ValueError("rho must be positive")
        if self.symmetric:
            for i in range(self.n):
                if self.ts[i] != -self.ts[self.n - 1 - i]:
                    raise ValueError("generators are not mirror symmetric")
        project_config(self)  # raises when the projection is not a zonogon

    def theta(self, i: int) -> Vec3:
        t = self.ts[i - 1]
        return (t, Fraction(1), t * t)

    @property
    def generators(self) -> tuple[Vec3, ...]:
        return tuple(self.theta(i) for i in range(1, self.n + 1))

    @property
    def center(self) -> Vec3:
        return (sum(self.ts, Fraction(0)) / 2,
                Fraction(self.n, 2),
                sum((t * t for t in self.ts), Fraction(0)) / 2)


def make_zonotope_config(n: int, symmetric: bool = True) -> ZonotopeConfig:
    """Standard generators t_i = 2i - n - 1 with rho = 1/(1 + 4*sum(t^2))."""
    ts = tuple(Fraction(2 * i - n - 1) for i in range(1, n + 1))
    rho = Fraction(1, 1 + 4 * sum(t * t for t in ts))
    return ZonotopeConfig(n, ts, symmetric, rho)


def embed3_mask(mask: int, cfg: ZonotopeConfig) -> Vec3:
    a = Fraction(0)
    b = Fraction(0)
    c = Fraction(0)
    i = 1
    m = mask
    while m:
        if m & 1:
            t = cfg.ts[i - 1]
            a += t
            b += 1
            c += t * t
        m >>= 1
        i += 1
    return (a, b, c)


def embed3(s: ColorSet, cfg: ZonotopeConfig) -> Vec3:
    if s.n != cfg.n:
        raise ValueError("ColorSet and config widths differ")
    return embed3_mask(s.mask, cfg)


def project_point(p: Vec3, cfg: ZonotopeConfig) -> Vec2:
    """The flattening map (a, b, c) -> (a, b - rho*c)."""
    return (p[0], p[1] - cfg.rho * p[2])


def project_config(cfg: ZonotopeConfig) -> ZonogonConfig:
    """The zonogon configuration of the flattened generators."""
    xs = cfg.ts
    ys = tuple(1 - cfg.rho * t * t for t in cfg.ts)
    return ZonogonConfig(cfg.n, xs, ys, cfg.symmetric)


# ---------------------------------------------------------------------------
# cubes, facets, cubillages


@dataclass(frozen=True)
class Cube:
    """A combinatorial cube: lowest vertex plus a triple of edge colors."""

    base: ColorSet
    triple: tuple[int, int, int]

    def __post_init__(self) -> None:
        i, j, k = self.triple
        if not i < j < k:
            raise ValueError("cube colors must be strictly increasing")
        if any(not 1 <= c <= self.base.n for c in self.triple):
            raise ValueError("cube color outside the ground set")
        if any(c in self.base for c in self.triple):
            raise ValueError("cube base must avoid its edge colors")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def top(self) -> ColorSet:
        out = self.base
        for c in self.triple:
            out = out.with_color(c)
        return out

    def vertex_masks(self) -> tuple[int, ...]:
        bits = [1 << (c - 1) for c in self.triple]
        out = []
        for sel in range(8):
            mask = self.base.mask
            for pos in range(3):
                if sel >> pos & 1:
                    mask |= bits[pos]
            out.append(mask)
        return tuple(sorted(set(out), key=_members))

    def vertices(self) -> tuple[ColorSet, ...]:
        return tuple(ColorSet(self.n, m) for m in self.vertex_masks())

    def facets(self) -> tuple["Facet", ...]:
        i, j, k = self.triple
        out = []
        for a, b, c in ((j, k, i), (i, k, j), (i, j, k)):
            out.append(Facet(self.base, (a, b)))
            out.append(Facet(self.base.with_color(c), (a, b)))
        return tuple(out)

    def centroid(self, cfg: ZonotopeConfig) -> Vec3:
        base = embed3_mask(self.base.mask, cfg)
        i, j, k = self.triple
        ti, tj, tk = cfg.theta(i), cfg.theta(j), cfg.theta(k)
        return tuple(base[d] + (ti[d] + tj[d] + tk[d]) / 2 for d in range(3))

    @property
    def sort_key(self):
        return (self.base.sort_key, self.triple)

    def to_json(self) -> dict:
        return {"base": list(self.base.members()), "type": list(self.triple)}


@dataclass(frozen=True)
class Facet:
    """A parallelogram face: base vertex plus two edge colors."""

    base: ColorSet
    colors: tuple[int, int]

    def __post_init__(self) -> None:
        a, b = self.colors
        if not a < b:
            raise ValueError("facet colors must be increasing")
        if any(not 1 <= c <= self.base.n for c in self.colors):
            raise ValueError("facet color outside the ground set")
        if any(c in self.base for c in self.colors):
            raise ValueError("facet base must avoid its colors")

    @property
    def n(self) -> int:
        return self.base.n

    def vertex_masks(self) -> tuple[int, int, int, int]:
        a, b = self.colors
        y = self.base.mask
        ba, bb = 1 << (a - 1), 1 << (b - 1)
        return (y, y | ba, y | bb, y | ba | bb)

    def lower_half_masks(self) -> tuple[int, int, int]:
        y, ya, yb, _ = self.vertex_masks()
        return (y, ya, yb)

    def upper_half_masks(self) -> tuple[int, int, int]:
        _, ya, yb, yab = self.vertex_masks()
        return (ya, yb, yab)

    def normal(self, cfg: ZonotopeConfig) -> Vec3:
        a, b = self.colors
        return _cross3(cfg.theta(a), cfg.theta(b))

    @property
    def sort_key(self):
        return (self.base.sort_key, self.colors)

    def to_json(self) -> dict:
        return {"base": list(self.base.members()), "colors": list(self.colors)}


@dataclass(frozen=True)
class Cubillage:
    config: ZonotopeConfig
    cubes: frozenset[Cube]

    @property
    def n(self) -> int:
        return self.config.n

    def sorted_cubes(self) -> tuple[Cube, ...]:
        return tuple(sorted(self.cubes, key=lambda c: c.sort_key))

    def spectrum_masks(self) -> tuple[int, ...]:
        if self.n <= 2:
            return tuple(range(1 << self.n))
        out: set[int] = set()
        for cube in self.cubes:
            out.update(cube.vertex_masks())
        return tuple(sorted(out, key=_members))

    def facet_multiset(self) -> dict[Facet, int]:
        counts: dict[Facet, int] = {}
        for cube in self.cubes:
            for f in cube.facets():
                counts[f] = counts.get(f, 0) + 1
        return counts

    def to_json(self) -> dict:
        return cubillage_to_json(self)


def spectrum(q: Cubillage) -> tuple[ColorSet, ...]:
    """All vertices of the cubillage, as subsets in canonical order."""
    return tuple(ColorSet(q.n, m) for m in q.spectrum_masks())


# ---------------------------------------------------------------------------
# boundary sides and validation


def boundary_sides(cfg: ZonotopeConfig) -> tuple[tuple[Facet, ...],
                                                 tuple[Facet, ...]]:
    """The facets of the shallow (front) and deep (rear) boundary.

    For a color pair (a, b), the two boundary facets have bases made of
    the generators on either side of the plane of theta_a and theta_b;
    the outward normal with negative depth marks the front.  On a cyclic
    configuration the front bases come out as the open intervals
    (a..b) and the rear bases as their co-interval counterparts.
    """
    n = cfg.n
    front, rear = [], []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            nu = _cross3(cfg.theta(a), cfg.theta(b))
            if nu[2] >= 0:
                nu = tuple(-x for x in nu)
            pos, neg = 0, 0
            for u in range(1, n + 1):
                if u in (a, b):
                    continue
                s = _dot3(nu, cfg.theta(u))
                if s == 0:
                    raise ValueError("degenerate generator triple")
                if s > 0:
                    pos |= 1 << (u - 1)
                else:
                    neg |= 1 << (u - 1)
            front.append(Facet(ColorSet(n, pos), (a, b)))
            rear.append(Facet(ColorSet(n, neg), (a, b)))
    front.sort(key=lambda f: f.sort_key)
    rear.sort(key=lambda f: f.sort_key)
    return tuple(front), tuple(rear)


def validate_cubillage(q: Cubillage) -> str | None:
    """Certify a cubillage: triples, facet matching, boundary, spectrum.

    Every color triple must appear exactly once, every interior facet in
    exactly two cubes, every boundary facet in exactly one, and the
    spectrum must be a maximal chord separated collection of the right
    size.  Returns None when valid, else the first diagnostic.
    """
    n = q.n
    if n <= 2:
        if q.cubes:
            return "DegenerateZonotope: n<=2 admits no cubes"
        return None
    triples: dict[tuple[int, int, int], int] = {}
    for cube in q.cubes:
        triples[cube.triple] = triples.get(cube.triple, 0) + 1
    for t, count in sorted(triples.items()):
        if count > 1:
            return f"TripleRepeated: {t} used {count} times"
    expected = [(i, j, k) for i in range(1, n + 1)
                for j in range(i + 1, n + 1) for k in range(j + 1, n + 1)]
    missing = [t for t in expected if t not in triples]
    if missing:
        return f"TripleMissing: {missing[0]}"

    front, rear = boundary_sides(q.config)
    boundary = set(front) | set(rear)
    counts = q.facet_multiset()
    for f in sorted(boundary, key=lambda f: f.sort_key):
        got = counts.pop(f, 0)
        if got != 1:
            return (f"BoundaryFacet: {f.base!r}|{f.colors} seen {got} times, "
                    "expected 1")
    for f, got in sorted(counts.items(), key=lambda kv: kv[0].sort_key):
        if got != 2:
            return (f"FacetMatching: {f.base!r}|{f.colors} seen {got} times, "
                    "expected 2")

    masks = q.spectrum_masks()
    if len(masks) != chord_target(n):
        return (f"SpectrumSize: {len(masks)} vertices, expected "
                f"{chord_target(n)}")
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if not _chord_masks(a, b):
                return (f"SpectrumNotChordSeparated: {ColorSet(n, a)} vs "
                        f"{ColorSet(n, b)}")
    return None


# ---------------------------------------------------------------------------
# mirror involutions, geometric and combinatorial


def center_symmetry(p: Vec3, cfg: ZonotopeConfig) -> Vec3:
    """Point reflection through the zonotope center."""
    c = cfg.center
    return (2 * c[0] - p[0], 2 * c[1] - p[1], 2 * c[2] - p[2])


def mirror_x(p: Vec3) -> Vec3:
    """Reflection in the vertical plane a = 0 (symmetric configs)."""
    return (-p[0], p[1], p[2])


def axis_rotation(p: Vec3, cfg: ZonotopeConfig) -> Vec3:
    """Half-turn about the horizontal symmetry axis of the zonotope.

    The composition of the central and lateral reflections; it realizes
    the mirror-complement involution on embedded subsets.
    """
    if not cfg.symmetric:
        raise NotSymmetricError("axis rotation needs symmetric generators")
    total_sq = sum((t * t for t in cfg.ts), Fraction(0))
    return (p[0], cfg.n - p[1], total_sq - p[2])


def axis_endpoints(cfg: ZonotopeConfig) -> tuple[ColorSet, ColorSet]:
    """The two vertices the symmetry axis connects (even ground only)."""
    if cfg.n % 2 == 1:
        raise ParityError("the symmetry axis needs an even ground set")
    m = cfg.n // 2
    return (ColorSet.from_members(cfg.n, range(1, m + 1)),
            ColorSet.from_members(cfg.n, range(m + 1, cfg.n + 1)))


def mirror_cube(cube: Cube) -> Cube:
    n = cube.n
    base = _mirror_complement_mask(cube.top.mask, n)
    triple = tuple(sorted(n + 1 - c for c in cube.triple))
    return Cube(ColorSet(n, base), triple)


def mirror_facet(f: Facet) -> Facet:
    n = f.n
    a, b = f.colors
    top = f.base.mask | (1 << (a - 1)) | (1 << (b - 1))
    base = _mirror_complement_mask(top, n)
    return Facet(ColorSet(n, base), (n + 1 - b, n + 1 - a))


def is_symmetric_cubillage(q: Cubillage) -> bool:
    if not q.config.symmetric:
        return False
    return {mirror_cube(c) for c in q.cubes} == set(q.cubes)


# ---------------------------------------------------------------------------
# fragmentation


@dataclass(frozen=True)
class Fragment:
    """One slice of a cube between consecutive integer heights.

    Level 1 is the simplex at the bottom vertex, level 2 the octahedron,
    level 3 the simplex at the top vertex.
    """

    cube: Cube
    level: int

    def __post_init__(self) -> None:
        if self.level not in (1, 2, 3):
            raise ValueError("fragment level must be 1, 2, or 3")

    def vertex_masks(self) -> tuple[int, ...]:
        h = len(self.cube.base)
        masks = [m for m in self.cube.vertex_masks()
                 if h + self.level - 1 <= m.bit_count() <= h + self.level]
        return tuple(sorted(masks, key=_members))


def section_masks(cube: Cube, level: int) -> frozenset[int]:
    """Vertices of the horizontal triangle cut at the given level."""
    if level not in (1, 2):
        raise ValueError("horizontal sections exist at levels 1 and 2")
    i, j, k = (1 << (c - 1) for c in cube.triple)
    x = cube.base.mask
    if level == 1:
        return frozenset((x | i, x | j, x | k))
    return frozenset((x | i | j, x | i | k, x | j | k))


@dataclass
class Fragmentation:
    fragments: tuple[Fragment, ...]
    horizontal_index: dict[frozenset[int], tuple[Cube, int]]


def fragmentation(q: Cubillage) -> Fragmentation:
    """Slice every cube into its three fragments and index the sections.

    Each horizontal triangle determines the cube it cuts, so the index
    from vertex triples to (cube, level) never collides.
    """
    fragments = []
    index: dict[frozenset[int], tuple[Cube, int]] = {}
    for cube in sorted(q.cubes, key=lambda c: c.sort_key):
        for level in (1, 2, 3):
            fragments.append(Fragment(cube, level))
        for level in (1, 2):
            key = section_masks(cube, level)
            if key in index:
                raise NoCubillageError(
                    f"horizontal section {sorted(map(_members, key))} is "
                    "shared by two cubes; not a cubillage")
            index[key] = (cube, level)
    return Fragmentation(tuple(fragments), index)


# ---------------------------------------------------------------------------
# membranes


@dataclass(frozen=True)
class HalfFacet:
    """The triangular half of a facet below or above its middle height."""

    facet: Facet
    half: str  # 'lower' | 'upper'

    def __post_init__(self) -> None:
        if self.half not in ("lower", "upper"):
            raise ValueError("half must be 'lower' or 'upper'")

    def vertex_masks(self) -> tuple[int, int, int]:
        if self.half == "lower":
            return self.facet.lower_half_masks()
        return self.facet.upper_half_masks()

    @property
    def sort_key(self):
        return (0, self.facet.sort_key, self.half)


@dataclass(frozen=True)
class Section:
    """A horizontal triangle of the fragmentation."""

    cube: Cube
    level: int

    def __post_init__(self) -> None:
        if self.level not in (1, 2):
            raise ValueError("sections exist at levels 1 and 2")

    def vertex_masks(self) -> tuple[int, ...]:
        return tuple(sorted(section_masks(self.cube, self.level),
                            key=_members))

    @property
    def sort_key(self):
        return (1, self.cube.sort_key, self.level)


@dataclass(frozen=True)
class Membrane:
    """A two-dimensional surface inside a (fragmented) cubillage.

    Weak membranes may mix half-facets and horizontal sections and are
    always read under the flattening projection.  Strong membranes use
    half-facets only and carry a direction: a color, 0 for the vertical
    axis, 'depth' for the depth axis, or None for the flattening
    projection.
    """

    kind: str  # 'strong' | 'weak'
    items: frozenset
    direction: int | str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("strong", "weak"):
            raise ValueError("membrane kind must be 'strong' or 'weak'")
        if self.kind == "strong":
            if any(isinstance(it, Section) for it in self.items):
                raise BadMembraneError(
                    "strong membranes contain no horizontal sections")
        elif self.direction is not None:
            raise ValueError("weak membranes use the flattening projection")

    @classmethod
    def from_facets(cls, facets: Iterable[Facet],
                    direction: int | str | None) -> "Membrane":
        items: set = set()
        for f in facets:
            items.add(HalfFacet(f, "lower"))
            items.add(HalfFacet(f, "upper"))
        return cls("strong", frozenset(items), direction)

    def sorted_items(self) -> tuple:
        return tuple(sorted(self.items, key=lambda it: it.sort_key))

    def facets(self) -> tuple[Facet, ...]:
        """The full facets of a strong membrane (both halves present)."""
        lower = {it.facet for it in self.items if isinstance(it, HalfFacet)
                 and it.half == "lower"}
        upper = {it.facet for it in self.items if isinstance(it, HalfFacet)
                 and it.half == "upper"}
        if lower != upper:
            raise BadMembraneError("membrane facets are not whole: "
                                   "a half is missing")
        return tuple(sorted(lower, key=lambda f: f.sort_key))

    def vertex_masks(self) -> tuple[int, ...]:
        out: set[int] = set()
        for it in self.items:
            out.update(it.vertex_masks())
        return tuple(sorted(out, key=_members))

    def mirror(self) -> "Membrane":
        return Membrane(self.kind, frozenset(mirror_item(it)
                                             for it in self.items),
                        self.direction)


def mirror_item(item):
    """The image of a membrane item under the axis half-turn."""
    if isinstance(item, HalfFacet):
        flip = {"lower": "upper", "upper": "lower"}
        return HalfFacet(mirror_facet(item.facet), flip[item.half])
    return Section(mirror_cube(item.cube), 3 - item.level)


def _item_to_tile(item, n: int) -> Tile:
    if isinstance(item, HalfFacet):
        a, b = item.facet.colors
        if item.half == "lower":
            return Tile("nabla", item.facet.base, (a, b))
        apex = item.facet.base.with_color(a).with_color(b)
        return Tile("delta", apex, (a, b))
    if item.level == 1:
        return Tile("upper", item.cube.base, item.cube.triple)
    return Tile("lower", item.cube.top, item.cube.triple)


def membrane_to_combi(membrane: Membrane, cfg: ZonotopeConfig) -> FtqCombi:
    """Flatten a weak membrane into the tiling it projects onto."""
    tiles = frozenset(_item_to_tile(it, cfg.n) for it in membrane.items)
    return FtqCombi(project_config(cfg), tiles)


def _direction_vector(direction, cfg: ZonotopeConfig) -> Vec3:
    if direction == 0:
        return (Fraction(0), Fraction(1), Fraction(0))
    if direction == "depth":
        return (Fraction(0), Fraction(0), Fraction(1))
    if isinstance(direction, int) and 1 <= direction <= cfg.n:
        return cfg.theta(direction)
    raise ValueError(f"bad membrane direction {direction!r}")


def _directional_plane(p: Vec3, w: Vec3) -> Vec2:
    if w == (0, 0, 1):
        return (p[0], p[1])
    # w has unit height: project along w onto the height-zero plane
    return (p[0] - w[0] * p[1], p[2] - w[2] * p[1])


def _drop_bit(mask: int, pos: int) -> int:
    low = mask & ((1 << pos) - 1)
    return low | ((mask >> (pos + 1)) << pos)


def check_membrane(membrane: Membrane, cfg: ZonotopeConfig) -> str | None:
    """Does the membrane project bijectively onto its target zonogon?

    Weak membranes (and strong ones without a direction) are flattened
    by the rho-projection; directed strong membranes are projected along
    their direction vector.  The certificate is the exact partition
    check: per-cell areas, boundary coverage, edge matching, and
    interior disjointness.
    """
    n = cfg.n
    items = sorted(membrane.items, key=lambda it: it.sort_key)
    if membrane.kind == "weak" or membrane.direction is None:
        zcfg = project_config(cfg)
        cells = []
        for it in items:
            tile = _item_to_tile(it, n)
            verts = tile.vertex_masks()
            cells.append(PartitionCell(
                vertex_masks=verts,
                points=tuple(embed_mask(v, zcfg) for v in verts),
                label=f"{tile.kind}({tile.anchor!r})"))
        return validate_partition(zcfg.generators, cells)

    w = _direction_vector(membrane.direction, cfg)
    skip = membrane.direction if isinstance(membrane.direction, int) and \
        membrane.direction >= 1 else None
    gens = []
    for u in range(1, n + 1):
        if u == skip:
            continue
        gens.append(_directional_plane(cfg.theta(u), w))
    cells = []
    for it in items:
        masks = it.vertex_masks()
        if skip is not None:
            if any(m >> (skip - 1) & 1 for m in masks):
                return (f"DirectionColorUsed: item touches color {skip}")
            masks = tuple(_drop_bit(m, skip - 1) for m in masks)
        pts = [
            _directional_plane(embed3_mask(m, cfg), w)
            for m in it.vertex_masks()]
        if polygon_signed_area(pts) < 0:
            masks = tuple(reversed(masks))
            pts.reverse()
        cells.append(PartitionCell(tuple(masks), tuple(pts),
                                   label=str(it.sort_key)))
    return validate_partition(gens, cells)


# ---------------------------------------------------------------------------
# the plate membrane (even symmetric ground)


def plate_membrane(q: Cubillage) -> Membrane:
    """The weak membrane through the mid-height plate of a symmetric cubillage.

    Takes the front boundary halves above mid height, the horizontal
    sections at mid height, and the rear boundary halves below it.  Its
    flattened image is a mirror-symmetric tiling whose vertex set is a
    maximal symmetric weakly separated collection.
    """
    n = q.n
    if n % 2 == 1:
        raise ParityError("the plate membrane needs an even ground set")
    if not is_symmetric_cubillage(q):
        raise NotSymmetricError("plate membrane needs a symmetric cubillage")
    m = n // 2
    items: set = set()
    front, rear = boundary_sides(q.config)
    for f in front:
        h = len(f.base)
        if h >= m:
            items.add(HalfFacet(f, "lower"))
        if h >= m - 1:
            items.add(HalfFacet(f, "upper"))
    for f in rear:
        h = len(f.base)
        if h <= m - 1:
            items.add(HalfFacet(f, "lower"))
        if h <= m - 2:
            items.add(HalfFacet(f, "upper"))
    for cube in q.cubes:
        h = len(cube.base)
        if h == m - 1:
            items.add(Section(cube, 1))
        elif h == m - 2:
            items.add(Section(cube, 2))
    membrane = Membrane("weak", frozenset(items))
    verdict = check_membrane(membrane, q.config)
    if verdict is not None:
        raise BadMembraneError(f"plate membrane failed validation: {verdict}")
    return membrane


# ---------------------------------------------------------------------------
# position relative to a strong membrane (exact ray casting)


def _crossing_parameter(point: Vec3, facets: Sequence[Facet],
                        cfg: ZonotopeConfig, w: Vec3) -> Fraction:
    """Signed distance along w from the point to the membrane surface."""
    shadow = _directional_plane(point, w)
    for f in facets:
        corners = [_directional_plane(embed3_mask(mk, cfg), w)
                   for mk in f.vertex_masks()]
        # order the parallelogram cyclically: base, +a, +ab, +b
        cyc = [corners[0], corners[1], corners[3], corners[2]]
        if polygon_signed_area(cyc) < 0:
            cyc.reverse()
        inside = all(cross(cyc[i], cyc[(i + 1) % 4], shadow) >= 0
                     for i in range(4))
        if not inside:
            continue
        nu = f.normal(cfg)
        denom = _dot3(nu, w)
        if denom == 0:
            raise BadMembraneError("membrane facet parallel to the direction")
        base_pt = embed3_mask(f.base.mask, cfg)
        diff = tuple(base_pt[d] - point[d] for d in range(3))
        return _dot3(nu, diff) / denom
    raise BadMembraneError("point does not project into the membrane")


def _cube_below_membrane(cube: Cube, facets: Sequence[Facet],
                         cfg: ZonotopeConfig, w: Vec3) -> bool:
    s = _crossing_parameter(cube.centroid(cfg), facets, cfg, w)
    if s == 0:
        raise BadMembraneError("cube centroid lies on the membrane")
    return s > 0


# ---------------------------------------------------------------------------
# expansion and contraction along a color


def _lift_mask(mask: int, pos: int) -> int:
    low = mask & ((1 << pos) - 1)
    return low | ((mask >> pos) << (pos + 1))


def expand_cubillage(q: Cubillage, position: int,
                     membrane: Membrane | Iterable[Facet]) -> Cubillage:
    """Insert a new color at the given position along a strong membrane.

    Cubes below the membrane keep their place, cubes above gain the new
    color, and each membrane facet sweeps out one new cube; the result
    has C(n+1,3) cubes and is validated before being returned.
    """
    n = q.n
    if not 1 <= position <= n + 1:
        raise ValueError(f"insert position {position} outside [1..{n + 1}]")
    if isinstance(membrane, Membrane):
        facets = membrane.facets()
    else:
        facets = tuple(sorted(membrane, key=lambda f: f.sort_key))
    if len(facets) != n * (n - 1) // 2:
        raise BadMembraneError(
            f"strong membrane needs {n * (n - 1) // 2} facets, got "
            f"{len(facets)}")
    if n > 2:
        known = q.facet_multiset()
        for f in facets:
            if f not in known:
                raise BadMembraneError(
                    f"membrane facet {f.base!r}|{f.colors} is not a facet "
                    "of the cubillage")

    new_n = n + 1
    new_cfg = make_zonotope_config(new_n, symmetric=q.config.symmetric)
    pos = position - 1

    def relabel_mask(mask: int) -> int:
        return _lift_mask(mask, pos)

    def relabel_color(c: int) -> int:
        return c if c < position else c + 1

    lifted_facets = [
        Facet(ColorSet(new_n, relabel_mask(f.base.mask)),
              (relabel_color(f.colors[0]), relabel_color(f.colors[1])))
        for f in facets]
    lifted = Membrane.from_facets(lifted_facets, direction=position)
    verdict = check_membrane(lifted, new_cfg)
    if verdict is not None:
        raise BadMembraneError(f"membrane is not strong for the new color: "
                               f"{verdict}")

    w = new_cfg.theta(position)
    new_cubes: set[Cube] = set()
    for f in lifted_facets:
        a, b = f.colors
        triple = tuple(sorted((a, b, position)))
        new_cubes.add(Cube(f.base, triple))
    for cube in q.cubes:
        base = relabel_mask(cube.base.mask)
        triple = tuple(relabel_color(c) for c in cube.triple)
        lifted_cube = Cube(ColorSet(new_n, base), triple)
        if not _cube_below_membrane(lifted_cube, lifted_facets, new_cfg, w):
            lifted_cube = Cube(ColorSet(new_n, base | (1 << pos)), triple)
        new_cubes.add(lifted_cube)

    out = Cubillage(new_cfg, frozenset(new_cubes))
    verdict = validate_cubillage(out)
    if verdict is not None:
        raise BadMembraneError(f"expansion produced an invalid cubillage: "
                               f"{verdict}")
    return out


def extract_pie(q: Cubillage, color: int) -> tuple[tuple[Cube, ...], Membrane]:
    """The cubes using a color, with the strong membrane they sweep.

    The pie is the Minkowski sum of its bottom facets with the color's
    generator segment; those bottom facets form a strong membrane for
    that color's direction.
    """
    if not 1 <= color <= q.n:
        raise ValueError(f"color {color} outside [1..{q.n}]")
    pie = tuple(sorted((c for c in q.cubes if color in c.triple),
                       key=lambda c: c.sort_key))
    facets = []
    for cube in pie:
        a, b = (c for c in cube.triple if c != color)
        facets.append(Facet(cube.base, (a, b)))
    membrane = Membrane.from_facets(facets, direction=color)
    verdict = check_membrane(membrane, q.config)
    if verdict is not None:
        raise BadMembraneError(f"pie membrane failed validation: {verdict}")
    return pie, membrane


def contract_cubillage(q: Cubillage, color: int) -> Cubillage:
    """Remove one color: delete its pie and pull the upper part back."""
    n = q.n
    if not 1 <= color <= n:
        raise ValueError(f"color {color} outside [1..{n}]")
    pos = color - 1
    new_cfg = make_zonotope_config(n - 1, symmetric=q.config.symmetric)
    new_cubes = []
    for cube in q.cubes:
        if color in cube.triple:
            continue
        base = cube.base.mask & ~(1 << pos)
        new_cubes.append(Cube(ColorSet(n - 1, _drop_bit(base, pos)),
                              tuple(c if c < color else c - 1
                                    for c in cube.triple)))
    out = Cubillage(new_cfg, frozenset(new_cubes))
    verdict = validate_cubillage(out)
    if verdict is not None:
        raise NoCubillageError(f"contraction produced an invalid cubillage: "
                               f"{verdict}")
    return out


# ---------------------------------------------------------------------------
# symmetric membranes between two mirror surfaces


def vertical_boundary_membranes(cfg: ZonotopeConfig) -> tuple[Membrane,
                                                              Membrane]:
    """The boundary surfaces seen from below and above the height axis.

    These are strong membranes for the vertical direction, mirror images
    of each other, and they bracket every cube of every cubillage, which
    makes them the canonical starting pair for the gap-shrinking walk.
    """
    n = cfg.n
    if any(t == 0 for t in cfg.ts):
        raise ValueError("vertical membranes need a ground without a "
                         "vertical generator")
    low, high = [], []
    vertical = (Fraction(0), Fraction(1), Fraction(0))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            nu = _cross3(cfg.theta(a), cfg.theta(b))
            if _dot3(nu, vertical) == 0:
                raise ValueError("generator pair spans a vertical plane")
            if _dot3(nu, vertical) > 0:
                nu = tuple(-x for x in nu)
            pos, neg = 0, 0
            for u in range(1, n + 1):
                if u in (a, b):
                    continue
                s = _dot3(nu, cfg.theta(u))
                if s > 0:
                    pos |= 1 << (u - 1)
                else:
                    neg |= 1 << (u - 1)
            low.append(Facet(ColorSet(n, pos), (a, b)))
            high.append(Facet(ColorSet(n, neg), (a, b)))
    return (Membrane.from_facets(low, direction=0),
            Membrane.from_facets(high, direction=0))


def _vertical_sides(cube: Cube, cfg: ZonotopeConfig) -> tuple[set[Facet],
                                                              set[Facet]]:
    """Facets of the cube seen from below / above along the vertical."""
    vertical = (Fraction(0), Fraction(1), Fraction(0))
    below: set[Facet] = set()
    above: set[Facet] = set()
    i, j, k = cube.triple
    for a, b, c in ((j, k, i), (i, k, j), (i, j, k)):
        nu = _cross3(cfg.theta(a), cfg.theta(b))
        s_c = _dot3(nu, cfg.theta(c))
        s_0 = _dot3(nu, vertical)
        if s_c == 0 or s_0 == 0:
            raise ValueError("degenerate cube geometry")
        near = Facet(cube.base, (a, b))
        far = Facet(cube.base.with_color(c), (a, b))
        if (s_c > 0) == (s_0 > 0):
            below.add(near)
            above.add(far)
        else:
            below.add(far)
            above.add(near)
    return below, above


def symmetric_membrane_between(q: Cubillage, low: Membrane,
                               high: Membrane) -> Membrane:
    """Shrink the gap between two mirror membranes to a symmetric one.

    Both inputs must be vertical strong membranes of the cubillage that
    are mirror images with ``low`` weakly below ``high``.  Each round
    picks the canonical maximal cube of the gap, slides ``high`` across
    it, and slides ``low`` across the mirror cube (never the same cube,
    as no color triple is its own mirror on an even ground); the gap
    loses two cubes per round until both membranes agree.
    """
    cfg = q.config
    if q.n % 2 == 1:
        raise ParityError("the symmetric membrane walk needs an even ground")
    if not is_symmetric_cubillage(q):
        raise NotSymmetricError("cubillage is not mirror symmetric")
    lo = set(low.facets())
    hi = set(high.facets())
    if {mirror_facet(f) for f in lo} != hi:
        raise BadMembraneError("membranes are not mirror images")
    vertical = (Fraction(0), Fraction(1), Fraction(0))

    def gap_cubes() -> list[Cube]:
        out = []
        for cube in q.cubes:
            c = cube.centroid(cfg)
            if (_crossing_parameter(c, sorted(lo, key=lambda f: f.sort_key),
                                    cfg, vertical) < 0
                    and _crossing_parameter(c, sorted(hi,
                                                      key=lambda f: f.sort_key),
                                            cfg, vertical) > 0):
                out.append(cube)
        return sorted(out, key=lambda c: c.sort_key)

    rounds = 0
    limit = len(q.cubes) // 2  # each round retires a mirror pair of cubes
    while True:
        gap = gap_cubes()
        if not gap:
            break
        rounds += 1
        if rounds > limit:
            raise BadMembraneError("gap walk failed to terminate")
        sides = {cube: _vertical_sides(cube, cfg) for cube in gap}
        maximal = []
        for cube in gap:
            _, above = sides[cube]
            if not any(sides[other][0] & above
                       for other in gap if other is not cube):
                maximal.append(cube)
        cube = maximal[0]
        partner = mirror_cube(cube)
        if partner == cube or partner not in set(gap):
            raise BadMembraneError("gap is not mirror symmetric")
        below_c, above_c = sides[cube]
        if not above_c <= hi:
            raise BadMembraneError("maximal cube does not touch the upper "
                                   "membrane")
        hi = (hi - above_c) | below_c
        below_p, above_p = sides[partner]
        if not below_p <= lo:
            raise BadMembraneError("mirror cube does not touch the lower "
                                   "membrane")
        lo = (lo - below_p) | above_p

    if lo != hi:
        raise BadMembraneError("membranes did not meet")
    out = Membrane.from_facets(lo, direction=0)
    if out.mirror() != out:
        raise NotSymmetricError("resulting membrane is not mirror fixed")
    verdict = check_membrane(out, cfg)
    if verdict is not None:
        raise BadMembraneError(f"resulting membrane failed validation: "
                               f"{verdict}")
    return out


# ---------------------------------------------------------------------------
# builders


def build_symmetric_cubillage(n: int,
                              scale_limit: int | None = None) -> Cubillage:
    """A mirror-symmetric cubillage on n colors.

    Even ground: greedily complete the empty symmetric chord collection
    and rebuild the unique cubillage over it (unique, so automatically
    symmetric).  Odd ground: build the even cubillage one color down,
    walk the boundary membranes to a symmetric vertical membrane, and
    expand along it with the new middle color.
    """
    limit = DEFAULT_BUILD_LIMIT if scale_limit is None else scale_limit
    if n > limit:
        raise ScaleLimitError(f"n={n} exceeds the build limit {limit}")
    cfg = make_zonotope_config(n)
    if n <= 2:
        return Cubillage(cfg, frozenset())
    if n % 2 == 0:
        seed = SymCollection.empty(n, SeparationRelation.chord())
        collection = greedy_symmetric_completion(seed, Domain.full(),
                                                 scale_limit=max(n, 6))
        q = reconstruct_from_spectrum(collection.sorted_members(), cfg)
    else:
        m = n // 2
        even = build_symmetric_cubillage(n - 1, scale_limit=limit)
        low, high = vertical_boundary_membranes(even.config)
        middle = symmetric_membrane_between(even, low, high)
        q = expand_cubillage(even, m + 1, middle)
    if not is_symmetric_cubillage(q):
        raise NotSymmetricError("builder produced an asymmetric cubillage")
    return q


def reconstruct_from_spectrum(collection, cfg: ZonotopeConfig) -> Cubillage:
    """Rebuild the unique cubillage whose spectrum is the collection.

    Candidate cubes are the color triples whose eight vertices all lie
    in the collection; a backtracking search over facet slots assembles
    the exact cover, which the bijection with maximal chord separated
    collections guarantees to be unique.
    """
    n = cfg.n
    masks = sorted({s.mask if isinstance(s, ColorSet) else int(s)
                    for s in collection}, key=_members)
    if len(masks) != chord_target(n):
        raise NotMaximalError(
            f"collection has {len(masks)} members, a maximal chord "
            f"separated collection on [1..{n}] has {chord_target(n)}")
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if not _chord_masks(a, b):
                raise NotMaximalError(
                    f"members {ColorSet(n, a)} and {ColorSet(n, b)} are not "
                    "chord separated")
    if n <= 2:
        return Cubillage(cfg, frozenset())

    present = set(masks)
    candidates: list[Cube] = []
    for mask in masks:
        grow = [c for c in range(1, n + 1)
                if not mask >> (c - 1) & 1 and (mask | 1 << (c - 1)) in present]
        for ai, a in enumerate(grow):
            for bi, b in enumerate(grow[ai + 1:], ai + 1):
                if (mask | 1 << (a - 1) | 1 << (b - 1)) not in present:
                    continue
                for c in grow[bi + 1:]:
                    bits = (1 << (a - 1)) | (1 << (b - 1)) | (1 << (c - 1))
                    need = (mask | 1 << (a - 1) | 1 << (c - 1),
                            mask | 1 << (b - 1) | 1 << (c - 1),
                            mask | bits)
                    if all(v in present for v in need):
                        candidates.append(Cube(ColorSet(n, mask), (a, b, c)))
    candidates.sort(key=lambda c: c.sort_key)

    def facet_side(cube: Cube, f: Facet) -> int:
        third = next(c for c in cube.triple if c not in f.colors)
        nu = _cross3(cfg.theta(f.colors[0]), cfg.theta(f.colors[1]))
        s = _dot3(nu, cfg.theta(third))
        sign = 1 if s > 0 else -1
        return sign if third not in f.base else -sign

    slot_lists = []
    for cube in candidates:
        slots = []
        for f in cube.facets():
            slots.append((f, facet_side(cube, f)))
        slot_lists.append(slots)
    by_slot: dict[tuple[Facet, int], list[int]] = {}
    for idx, slots in enumerate(slot_lists):
        for slot in slots:
            by_slot.setdefault(slot, []).append(idx)

    # the inward slot of a boundary facet: its cubes extend against the
    # outward normal, whose sign is read off from the facet base
    boundary_inward: dict[Facet, int] = {}
    for side_facets in boundary_sides(cfg):
        for f in side_facets:
            nu = _cross3(cfg.theta(f.colors[0]), cfg.theta(f.colors[1]))
            others = [u for u in range(1, n + 1) if u not in f.colors]
            positive = {u for u in others if _dot3(nu, cfg.theta(u)) > 0}
            outward_is_raw = positive == set(f.base.members())
            boundary_inward[f] = -1 if outward_is_raw else 1

    covered: set[tuple[Facet, int]] = set()
    open_slots = {(f, s) for f, s in boundary_inward.items()}
    used_triples: set[tuple[int, int, int]] = set()
    placed: list[int] = []

    def slot_rank(slot):
        return (slot[0].sort_key, slot[1])

    def place(idx: int):
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
        used_triples.add(candidates[idx].triple)
        placed.append(idx)
        return undo

    def unplace(idx: int, undo) -> None:
        for action, slot in reversed(undo):
            if action == "reopen":
                open_slots.add(slot)
            else:
                open_slots.remove(slot)
        for slot in slot_lists[idx]:
            covered.remove(slot)
        used_triples.remove(candidates[idx].triple)
        placed.pop()

    def feasible(idx: int) -> bool:
        if candidates[idx].triple in used_triples:
            return False
        for slot in slot_lists[idx]:
            if slot in covered:
                return False
            f, s = slot
            if f in boundary_inward and boundary_inward[f] != s:
                return False
        return True

    target = n * (n - 1) * (n - 2) // 6

    def search() -> bool:
        if not open_slots:
            return len(placed) == target
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
        raise NoCubillageError(
            "exact-cover search found no cubillage over this collection")
    out = Cubillage(cfg, frozenset(candidates[i] for i in placed))
    verdict = validate_cubillage(out)
    if verdict is not None:
        raise NoCubillageError(f"reconstructed cubillage failed validation: "
                               f"{verdict}")
    return out


# ---------------------------------------------------------------------------
# membrane lifting (checked query)


def lift_membrane(q: Cubillage, combi: FtqCombi) -> Membrane:
    """Find the weak membrane of the cubillage that flattens to the tiling.

    Every tile must correspond to an existing item: nablas and deltas to
    halves of facets present in the cubillage, semi-lenses to sections
    of cubes that belong to it.  Raises BadMembraneError naming the first
    missing item; compatibility of an arbitrary cubillage with an
    arbitrary tiling over the same spectrum is not guaranteed.
    """
    if combi.config.n != q.n:
        raise ValueError("tiling and cubillage widths differ")
    known = q.facet_multiset()
    items: set = set()
    for t in sorted(combi.tiles, key=lambda t: t.sort_key):
        if t.kind == "nabla":
            f = Facet(t.anchor, t.colors)
            if f not in known:
                raise BadMembraneError(f"no facet {f.base!r}|{f.colors} in "
                                       "the cubillage")
            items.add(HalfFacet(f, "lower"))
        elif t.kind == "delta":
            base = t.anchor.without_color(t.colors[0]).without_color(
                t.colors[1])
            f = Facet(base, t.colors)
            if f not in known:
                raise BadMembraneError(f"no facet {f.base!r}|{f.colors} in "
                                       "the cubillage")
            items.add(HalfFacet(f, "upper"))
        elif t.kind == "upper":
            cube = Cube(t.anchor, t.colors)
            if cube not in q.cubes:
                raise BadMembraneError(f"no cube {cube.base!r}|{cube.triple} "
                                       "in the cubillage")
            items.add(Section(cube, 1))
        else:
            base = t.anchor
            for c in t.colors:
                base = base.without_color(c)
            cube = Cube(base, t.colors)
            if cube not in q.cubes:
                raise BadMembraneError(f"no cube {cube.base!r}|{cube.triple} "
                                       "in the cubillage")
            items.add(Section(cube, 2))
    membrane = Membrane("weak", frozenset(items))
    verdict = check_membrane(membrane, q.config)
    if verdict is not None:
        raise BadMembraneError(f"lifted items are not a membrane: {verdict}")
    return membrane


# ---------------------------------------------------------------------------
# serialization


def cubillage_to_json(q: Cubillage) -> dict:
    return {
        "n": q.n,
        "symmetric": q.config.symmetric,
        "cubes": [c.to_json() for c in q.sorted_cubes()],
    }


def cubillage_from_json(data: dict) -> Cubillage:
    n = int(data["n"])
    cfg = make_zonotope_config(n, symmetric=bool(data.get("symmetric", True)))
    cubes = [Cube(ColorSet.from_members(n, cd["base"]), tuple(cd["type"]))
             for cd in data["cubes"]]
    return Cubillage(cfg, frozenset(cubes))


def membrane_to_json(membrane: Membrane) -> dict:
    items = []
    for it in membrane.sorted_items():
        if isinstance(it, HalfFacet):
            items.append({"facet": it.facet.to_json(), "half": it.half})
        else:
            items.append({"cube": it.cube.to_json(), "level": it.level})
    return {"kind": membrane.kind,
            "direction": membrane.direction,
            "items": items}


def membrane_from_json(data: dict, n: int) -> Membrane:
    items: set = set()
    for item in data["items"]:
        if "facet" in item:
            fd = item["facet"]
            facet = Facet(ColorSet.from_members(n, fd["base"]),
                          tuple(fd["colors"]))
            items.add(HalfFacet(facet, item["half"]))
        else:
            cd = item["cube"]
            cube = Cube(ColorSet.from_members(n, cd["base"]),
                        tuple(cd["type"]))
            items.add(Section(cube, int(item["level"])))
    return Membrane(data["kind"], frozenset(items), data.get("direction"))
