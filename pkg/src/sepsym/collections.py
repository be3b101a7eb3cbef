"""Symmetric collections: targets, completion, exhaustive purity checks.

A symmetric collection is closed under the mirror-complement involution,
so it is a union of orbits {A, A'} (A' the mirror complement of A).  The
admissible orbits of a domain form a graph whose edges join mutually
separated orbits; inclusion-maximal symmetric collections are exactly
the maximal cliques of that graph.  Enumerating them with a pivoting
clique search and comparing all sizes against the closed-form targets is
the purity experiment this package exists to run.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .colorsets import (
    ColorSet,
    GroundSet,
    _full_mask,
    _members,
    _mirror_complement_mask,
)
from .errors import (
    DomainError,
    InvalidSeedError,
    ParityError,
    ScaleLimitError,
    UnsupportedError,
)
from .separation import SeparationRelation

__all__ = [
    "Domain",
    "SymCollection",
    "OrbitGraph",
    "PurityReport",
    "target_size",
    "strong_weak_target",
    "chord_target",
    "build_orbit_graph",
    "greedy_symmetric_completion",
    "greedy_completion",
    "enumerate_maximal_symmetric",
    "verify_purity",
    "level_profile",
    "contract_odd",
    "expand_odd",
    "band_closure",
    "DEFAULT_SCALE_LIMITS",
    "SCALE_LIMIT_ENV",
]

SCALE_LIMIT_ENV = "SEPSYM_SCALE_LIMIT"

#: Full-domain enumeration caps; beyond these the orbit graph is no longer
#: desk scale and callers must override explicitly.
DEFAULT_SCALE_LIMITS = {"strong": 7, "weak": 7, "chord": 6, "k": 6}


def _resolve_scale_limit(relation: SeparationRelation,
                         override: int | None) -> int:
    if override is not None:
        return override
    env = os.environ.get(SCALE_LIMIT_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_SCALE_LIMITS[relation.kind]


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class Domain:
    """The universe of admissible sets for an experiment.

    kinds:
      * ``full``    all of 2^[n]
      * ``middle``  the middle level, |A| = n/2 (even n)
      * ``band``    levels within distance k of the middle (even n)
      * ``levels``  an explicit symmetric level set J in [0..n]
    """

    kind: str
    k: int | None = None
    levels_set: frozenset[int] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("full", "middle", "band", "levels"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "band" and (self.k is None or self.k < 0):
            raise ValueError("band domain needs k >= 0")
        if self.kind == "levels" and not self.levels_set:
            raise ValueError("levels domain needs a nonempty level set")

    @classmethod
    def full(cls) -> "Domain":
        return cls("full")

    @classmethod
    def middle_level(cls) -> "Domain":
        return cls("middle")

    @classmethod
    def band(cls, k: int) -> "Domain":
        return cls("band", k=k)

    @classmethod
    def levels(cls, js: Iterable[int]) -> "Domain":
        return cls("levels", levels_set=frozenset(js))

    @property
    def name(self) -> str:
        if self.kind == "band":
            return f"lambda:{self.k}"
        if self.kind == "levels":
            return "levels:" + ",".join(map(str, sorted(self.levels_set)))
        return {"full": "full", "middle": "middle"}[self.kind]

    def validate_for(self, n: int) -> None:
        if self.kind in ("middle", "band") and n % 2 == 1:
            raise ParityError(f"{self.kind} domain needs even n, got {n}")
        if self.kind == "band" and not 0 <= self.k < n // 2:
            raise ValueError(f"band width k={self.k} outside [0, n/2)")
        if self.kind == "levels":
            bad = [j for j in self.levels_set if not 0 <= j <= n]
            if bad:
                raise ValueError(f"levels {bad} outside [0..{n}]")
            asym = [j for j in self.levels_set if n - j not in self.levels_set]
            if asym:
                raise ValueError(f"level set not symmetric: missing {n - asym[0]}")

    def admitted_sizes(self, n: int) -> frozenset[int]:
        if self.kind == "full":
            return frozenset(range(n + 1))
        if self.kind == "middle":
            return frozenset((n // 2,))
        if self.kind == "band":
            return frozenset(range(n // 2 - self.k, n // 2 + self.k + 1))
        return self.levels_set

    def admits_mask(self, mask: int, n: int) -> bool:
        if self.kind == "full":
            return True
        return mask.bit_count() in self.admitted_sizes(n)

    def member_masks(self, n: int) -> list[int]:
        """Domain members in canonical order (member-list lexicographic)."""
        self.validate_for(n)
        masks = [m for m in range(1 << n) if self.admits_mask(m, n)]
        masks.sort(key=_members)
        return masks


# ---------------------------------------------------------------------------
# symmetric collections


@dataclass(frozen=True)
class SymCollection:
    """A collection closed under the mirror-complement involution.

    Construction validates the closure and the pairwise separation, so a
    live instance is always a genuine symmetric separated collection.
    """

    ground: GroundSet
    members: frozenset[ColorSet]
    relation: SeparationRelation

    def __post_init__(self) -> None:
        n = self.ground.n
        masks = set()
        for a in self.members:
            if a.n != n:
                raise InvalidSeedError(f"member {a} not over [1..{n}]")
            masks.add(a.mask)
        for mask in masks:
            if _mirror_complement_mask(mask, n) not in masks:
                raise InvalidSeedError(
                    "collection not closed under the mirror complement: "
                    f"{ColorSet(n, mask)} present without its image")
        ordered = sorted(masks, key=_members)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                if not self.relation.decide_masks(a, b):
                    raise InvalidSeedError(
                        f"members {ColorSet(n, a)} and {ColorSet(n, b)} are "
                        f"not {self.relation.name}-separated")

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int],
                   relation: SeparationRelation) -> "SymCollection":
        return cls(GroundSet(n),
                   frozenset(ColorSet(n, m) for m in masks), relation)

    @classmethod
    def empty(cls, n: int, relation: SeparationRelation) -> "SymCollection":
        return cls(GroundSet(n), frozenset(), relation)

    def masks(self) -> tuple[int, ...]:
        return tuple(sorted((a.mask for a in self.members), key=_members))

    def sorted_members(self) -> tuple[ColorSet, ...]:
        return tuple(sorted(self.members, key=lambda s: s.sort_key))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: ColorSet) -> bool:
        return a in self.members

    def level_profile(self) -> dict[int, int]:
        return level_profile(self.members)

    def to_json(self) -> list[list[int]]:
        return [list(a.members()) for a in self.sorted_members()]


def level_profile(collection: Iterable[ColorSet]) -> dict[int, int]:
    """Count the members of each cardinality level."""
    out: dict[int, int] = {}
    for a in collection:
        out[len(a)] = out.get(len(a), 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# closed-form targets


def strong_weak_target(n: int) -> int:
    """Largest symmetric strongly/weakly separated collection in 2^[n]."""
    s_n = n * (n - 1) // 2 + n + 1
    return s_n if n % 2 == 0 else s_n - (n - 1) // 2


def chord_target(n: int) -> int:
    """Largest (symmetric) chord separated collection in 2^[n]."""
    return (n * (n - 1) * (n - 2) // 6 + n * (n - 1) // 2 + n + 1)


def _interval_masks(n: int, min_size: int) -> list[int]:
    out = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            if b - a + 1 >= min_size:
                out.append((_full_mask(b)) ^ _full_mask(a - 1))
    return out


def _cointerval_masks(n: int, max_size: int) -> list[int]:
    full = _full_mask(n)
    out = {full ^ m for m in _interval_masks(n, n - max_size)}
    if max_size >= 0:
        out.add(0)
    return sorted(out)


def _band_closure_masks(n: int, k: int) -> set[int]:
    """Interval/co-interval padding that closes a band collection."""
    half = n // 2
    return set(_interval_masks(n, half + k)) | set(_cointerval_masks(n, half - k))


def target_size(n: int, relation: SeparationRelation, domain: Domain) -> int:
    """The theorem-given size of every maximal symmetric collection.

    Raises UnsupportedError for combinations without a closed form
    (k-separation with k >= 3 in particular has none: maximal collections
    there genuinely vary in size).
    """
    domain.validate_for(n)
    if relation.kind == "k":
        if relation.k == 1:
            return target_size(n, SeparationRelation.strong(), domain)
        if relation.k == 2:
            return target_size(n, SeparationRelation.chord(), domain)
        raise UnsupportedError(f"no size theorem for {relation.name}-separation")

    if domain.kind == "full":
        if relation.kind in ("strong", "weak"):
            return strong_weak_target(n)
        return chord_target(n)

    if domain.kind == "middle":
        if relation.kind in ("weak", "chord"):
            return n * n // 4 + 1
        raise UnsupportedError("no middle-level theorem for strong separation")

    if domain.kind == "band":
        if relation.kind == "weak":
            pad = _band_closure_masks(n, domain.k)
            in_band = sum(1 for m in pad if domain.admits_mask(m, n))
            return strong_weak_target(n) - len(pad) + in_band
        if relation.kind == "chord":
            return sum(h * (n - h) + 1
                       for h in sorted(domain.admitted_sizes(n)))
        raise UnsupportedError("no band theorem for strong separation")

    if relation.kind == "chord":
        return sum(h * (n - h) + 1 for h in sorted(domain.admitted_sizes(n)))
    raise UnsupportedError(
        f"no size theorem for {relation.name} on domain {domain.name}")


# ---------------------------------------------------------------------------
# orbit graph and clique enumeration


@dataclass(frozen=True)
class OrbitGraph:
    """Admissible mirror orbits of a domain with their compatibilities.

    ``orbits[i]`` is (rep, other) with rep the canonically smaller member;
    self-mirror sets appear as (rep, rep).  ``adjacency[i]`` is the bit
    mask of orbits whose four cross pairs are all separated from orbit i.
    """

    n: int
    relation: SeparationRelation
    domain: Domain
    orbits: tuple[tuple[int, int], ...]
    adjacency: tuple[int, ...]

    def orbit_sets(self) -> list[tuple[ColorSet, ColorSet]]:
        return [(ColorSet(self.n, a), ColorSet(self.n, b))
                for a, b in self.orbits]

    def orbit_size(self, i: int) -> int:
        a, b = self.orbits[i]
        return 1 if a == b else 2

    def clique_size(self, clique_mask: int) -> int:
        total = 0
        i = 0
        m = clique_mask
        while m:
            if m & 1:
                total += self.orbit_size(i)
            m >>= 1
            i += 1
        return total

    def clique_member_masks(self, clique_mask: int) -> tuple[int, ...]:
        masks: set[int] = set()
        i = 0
        m = clique_mask
        while m:
            if m & 1:
                a, b = self.orbits[i]
                masks.add(a)
                masks.add(b)
            m >>= 1
            i += 1
        return tuple(sorted(masks, key=_members))


def build_orbit_graph(
    n: int,
    relation: SeparationRelation,
    domain: Domain = Domain.full(),
    scale_limit: int | None = None,
) -> OrbitGraph:
    """Collect the admissible orbits of a domain and their adjacencies."""
    limit = _resolve_scale_limit(relation, scale_limit)
    if n > limit:
        raise ScaleLimitError(
            f"n={n} exceeds the scale limit {limit} for "
            f"{relation.name}-separation (override to proceed)")
    domain.validate_for(n)

    orbits: list[tuple[int, int]] = []
    seen: set[int] = set()
    for mask in domain.member_masks(n):
        if mask in seen:
            continue
        other = _mirror_complement_mask(mask, n)
        seen.add(mask)
        seen.add(other)
        if not domain.admits_mask(other, n):
            continue
        if not relation.decide_masks(mask, other):
            continue
        rep, mate = sorted((mask, other), key=_members)
        orbits.append((rep, mate))
    orbits.sort(key=lambda o: (o[0].bit_count(), _members(o[0])))

    adjacency = [0] * len(orbits)
    for i, (a1, b1) in enumerate(orbits):
        for j in range(i + 1, len(orbits)):
            a2, b2 = orbits[j]
            if (relation.decide_masks(a1, a2) and relation.decide_masks(a1, b2)
                    and relation.decide_masks(b1, a2)
                    and relation.decide_masks(b1, b2)):
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return OrbitGraph(n, relation, domain, tuple(orbits), tuple(adjacency))


def _max_cliques(adjacency: Sequence[int]) -> Iterator[int]:
    """All maximal cliques of a bit-mask adjacency graph, as node masks.

    Pivoting depth-first search; the pivot is the node of P|X with the
    most candidates, ties to the lowest index, which makes the emission
    order deterministic.
    """
    count = len(adjacency)
    if count == 0:
        yield 0
        return

    def walk(r: int, p: int, x: int) -> Iterator[int]:
        if not p and not x:
            yield r
            return
        pux = p | x
        best, best_count = -1, -1
        m = pux
        while m:
            low = m & -m
            u = low.bit_length() - 1
            c = (p & adjacency[u]).bit_count()
            if c > best_count:
                best_count, best = c, u
            m ^= low
        cand = p & ~adjacency[best]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            yield from walk(r | low, p & adjacency[v], x & adjacency[v])
            p &= ~low
            x |= low
            cand ^= low

    yield from walk(0, (1 << count) - 1, 0)


def enumerate_maximal_symmetric(
    n: int,
    relation: SeparationRelation,
    domain: Domain = Domain.full(),
    scale_limit: int | None = None,
) -> Iterator[SymCollection]:
    """Every inclusion-maximal symmetric collection of the domain, once."""
    graph = build_orbit_graph(n, relation, domain, scale_limit)
    for clique in _max_cliques(graph.adjacency):
        yield SymCollection.from_masks(n, graph.clique_member_masks(clique),
                                       relation)


@dataclass(frozen=True)
class PurityReport:
    """Aggregate of one exhaustive enumeration run."""

    n: int
    relation: str
    domain: str
    count: int
    sizes: dict[int, int]
    pure: bool
    target: Optional[int]

    @property
    def matches_target(self) -> bool:
        if self.target is None:
            return True
        return self.pure and set(self.sizes) == {self.target}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "relation": self.relation,
            "domain": self.domain,
            "count": self.count,
            "sizes": {str(k): v for k, v in sorted(self.sizes.items())},
            "pure": self.pure,
            "target": self.target,
        }


def verify_purity(
    n: int,
    relation: SeparationRelation,
    domain: Domain = Domain.full(),
    scale_limit: int | None = None,
) -> PurityReport:
    """Enumerate all maximal symmetric collections and tally their sizes."""
    graph = build_orbit_graph(n, relation, domain, scale_limit)
    sizes: dict[int, int] = {}
    count = 0
    for clique in _max_cliques(graph.adjacency):
        size = graph.clique_size(clique)
        sizes[size] = sizes.get(size, 0) + 1
        count += 1
    try:
        target = target_size(n, relation, domain)
    except UnsupportedError:
        target = None
    return PurityReport(
        n=n,
        relation=relation.name,
        domain=domain.name,
        count=count,
        sizes=dict(sorted(sizes.items())),
        pure=len(sizes) <= 1,
        target=target,
    )


# ---------------------------------------------------------------------------
# greedy completion


def greedy_symmetric_completion(
    seed: SymCollection,
    domain: Domain = Domain.full(),
    rng: random.Random | None = None,
    scale_limit: int | None = None,
) -> SymCollection:
    """Extend a symmetric collection to an inclusion-maximal one.

    Orbits are tried in canonical order, or in an order shuffled by
    ``rng`` for randomized experiments; one pass is enough because a
    rejected orbit stays incompatible as the collection only grows.
    """
    n = seed.ground.n
    relation = seed.relation
    domain.validate_for(n)
    current = set(seed.masks())
    for mask in current:
        if not domain.admits_mask(mask, n):
            raise DomainError(
                f"seed member {ColorSet(n, mask)} outside domain {domain.name}")

    graph = build_orbit_graph(n, relation, domain, scale_limit)
    order = list(graph.orbits)
    if rng is not None:
        rng.shuffle(order)
    for a, b in order:
        if a in current and b in current:
            continue
        if all(relation.decide_masks(a, c) and relation.decide_masks(b, c)
               for c in current):
            current.add(a)
            current.add(b)
    return SymCollection.from_masks(n, current, relation)


def greedy_completion(
    n: int,
    relation: SeparationRelation,
    seed: Iterable[ColorSet] = (),
    domain: Domain = Domain.full(),
    rng: random.Random | None = None,
) -> tuple[ColorSet, ...]:
    """Plain (not symmetric) greedy extension to a maximal collection.

    This is the classical completion: for strong/weak/chord relations on
    the full domain the result always has the non-symmetric maximum size.
    """
    domain.validate_for(n)
    current: list[int] = []
    for a in sorted(seed, key=lambda s: s.sort_key):
        if a.n != n:
            raise InvalidSeedError(f"seed member {a} not over [1..{n}]")
        for c in current:
            if not relation.decide_masks(a.mask, c):
                raise InvalidSeedError("seed is not pairwise separated")
        if a.mask not in current:
            current.append(a.mask)
    order = domain.member_masks(n)
    if rng is not None:
        rng.shuffle(order)
    chosen = list(current)
    for mask in order:
        if mask in chosen:
            continue
        if all(relation.decide_masks(mask, c) for c in chosen):
            chosen.append(mask)
    return tuple(ColorSet(n, m) for m in sorted(chosen, key=_members))


# ---------------------------------------------------------------------------
# odd/even bridge: dropping and reinstating the middle color


def _drop_middle_bit(mask: int, n: int) -> int:
    mid_index = (n + 1) // 2 - 1
    low = mask & ((1 << mid_index) - 1)
    high = mask >> (mid_index + 1)
    return low | (high << mid_index)


def _insert_middle_gap(mask: int, m: int) -> int:
    low = mask & ((1 << m) - 1)
    high = mask >> m
    return low | (high << (m + 1))


def contract_odd(collection: SymCollection) -> SymCollection:
    """Remove the middle color of an odd ground set.

    Members not containing the middle color are kept; the others drop it.
    The remaining colors are renumbered onto [1..n-1].  The result is
    again symmetric and separated under the same relation.
    """
    n = collection.ground.n
    if n % 2 == 0:
        raise ParityError(f"contract_odd needs odd n, got {n}")
    if collection.relation.kind not in ("strong", "weak"):
        raise UnsupportedError(
            "the middle-color contraction is defined for strong/weak "
            "separation only")
    new_masks = {_drop_middle_bit(mask, n) for mask in collection.masks()}
    return SymCollection.from_masks(n - 1, new_masks, collection.relation)


def expand_odd(collection: SymCollection) -> SymCollection:
    """Reinstate a middle color on an even ground set of 2m colors.

    Members are placed by their exact height in the symmetric zonogon:
    those weakly below the middle line keep their colors, those weakly
    above also gain the new middle color.  Sets on the line (exactly the
    self-mirror ones) contribute both copies, forming the squeezed pairs.
    """
    from .combi import make_zonogon_config, embed_mask_y

    n = collection.ground.n
    if n % 2 == 1:
        raise ParityError(f"expand_odd needs even n, got {n}")
    if collection.relation.kind not in ("strong", "weak"):
        raise UnsupportedError(
            "the middle-color expansion is defined for strong/weak "
            "separation only")
    m = n // 2
    cfg = make_zonogon_config(n, symmetric=True)
    y_mid = cfg.middle_height
    new_masks: set[int] = set()
    for mask in collection.masks():
        y = embed_mask_y(mask, cfg)
        if y <= y_mid:
            new_masks.add(_insert_middle_gap(mask, m))
        if y >= y_mid:
            new_masks.add(_insert_middle_gap(mask, m) | (1 << m))
    return SymCollection.from_masks(n + 1, new_masks, collection.relation)


# ---------------------------------------------------------------------------
# band closure


def band_closure(collection: SymCollection, k: int) -> SymCollection:
    """Extend a band-domain collection to the full domain.

    Adds every interval of size >= n/2+k and every co-interval of size
    <= n/2-k (including the empty set); the input is maximal within the
    band iff the result is maximal in 2^[n].
    """
    n = collection.ground.n
    if n % 2 == 1:
        raise ParityError(f"band domains need even n, got {n}")
    domain = Domain.band(k)
    domain.validate_for(n)
    for mask in collection.masks():
        if not domain.admits_mask(mask, n):
            raise DomainError(
                f"member {ColorSet(n, mask)} outside domain {domain.name}")
    new_masks = set(collection.masks()) | _band_closure_masks(n, k)
    return SymCollection.from_masks(n, new_masks, collection.relation)
