"""Zonogon configurations, tilings, reconstruction, and symmetrization."""

import random
from fractions import Fraction

import pytest

from sepsym.collections import (
    SymCollection,
    enumerate_maximal_symmetric,
    greedy_completion,
    greedy_symmetric_completion,
)
from sepsym.colorsets import ColorSet, classify_pairs
from sepsym.combi import (
    FtqCombi,
    Tile,
    combi_from_json,
    combi_to_json,
    embed,
    expand_combi_odd,
    export_svg,
    fan_triangulate,
    is_mirror_symmetric,
    make_zonogon_config,
    merge_semilenses,
    middle_path,
    reconstruct_ftq_combi,
    reflect_symmetrize,
    validate_ftq_combi,
    validate_fine_quasi_combi,
)
from sepsym.errors import (
    NoTilingError,
    NotMaximalError,
    NotMCoveredError,
    ParityError,
)
from sepsym.separation import SeparationRelation

WEAK = SeparationRelation.weak()


def full_collection(n):
    return [ColorSet(n, m) for m in range(1 << n)]


def symmetric_maximal_tiling(n):
    """The even pipeline: symmetric seed, plain completion, reflect."""
    sym = greedy_symmetric_completion(SymCollection.empty(n, WEAK))
    w = greedy_completion(n, WEAK, seed=sym.sorted_members())
    cfg = make_zonogon_config(n)
    return reflect_symmetrize(reconstruct_ftq_combi(w, cfg))


class TestConfig:
    def test_two_color_values(self):
        cfg = make_zonogon_config(2)
        assert cfg.xs == (Fraction(-1), Fraction(1))
        assert cfg.ys == (Fraction(35, 36), Fraction(35, 36))
        assert cfg.middle_height == Fraction(35, 36)

    def test_odd_middle_generator_is_vertical(self):
        cfg = make_zonogon_config(5)
        assert cfg.xs[2] == 0
        assert cfg.ys[2] == 1

    def test_all_invariants_up_to_twelve(self):
        # constructor checks concavity, deficits, pairwise distinctness
        for n in range(1, 13):
            make_zonogon_config(n)

    def test_middle_height_needs_even(self):
        with pytest.raises(ParityError):
            make_zonogon_config(3).middle_height


class TestEmbed:
    def test_empty_set_is_origin(self):
        cfg = make_zonogon_config(4)
        assert embed(ColorSet.empty(4), cfg) == (0, 0)

    def test_x_coordinate_example(self):
        cfg = make_zonogon_config(4)
        assert embed(ColorSet.of(4, 1, 2), cfg)[0] == -4

    def test_self_mirror_sets_sit_on_the_middle_line(self):
        for n in (2, 4, 6):
            cfg = make_zonogon_config(n)
            y_mid = cfg.middle_height
            for mask in range(1 << n):
                a = ColorSet(n, mask)
                p = classify_pairs(a)
                on_line = embed(a, cfg)[1] == y_mid
                assert on_line == (not p.poor and not p.full)


class TestValidate:
    def test_two_tile_parallelogram(self):
        cfg = make_zonogon_config(2)
        k = FtqCombi(cfg, frozenset([
            Tile("nabla", ColorSet.empty(2), (1, 2)),
            Tile("delta", ColorSet.full(2), (1, 2)),
        ]))
        assert validate_ftq_combi(k) is None

    def test_missing_tile_is_area_mismatch(self):
        cfg = make_zonogon_config(2)
        k = FtqCombi(cfg, frozenset([
            Tile("nabla", ColorSet.empty(2), (1, 2)),
        ]))
        assert validate_ftq_combi(k).startswith("AreaMismatch")

    def test_degenerate_single_color(self):
        cfg = make_zonogon_config(1)
        assert validate_ftq_combi(FtqCombi(cfg, frozenset())) is None

    def test_tile_constructor_guards(self):
        with pytest.raises(ValueError):
            Tile("delta", ColorSet.of(3, 1), (1, 2))  # apex misses color 2
        with pytest.raises(ValueError):
            Tile("nabla", ColorSet.of(3, 1), (1, 2))  # apex contains color 1
        with pytest.raises(ValueError):
            Tile("upper", ColorSet.empty(3), (1, 2))  # needs three colors


class TestReconstruct:
    def test_two_colors_unique_cover(self):
        cfg = make_zonogon_config(2)
        k = reconstruct_ftq_combi(full_collection(2), cfg)
        kinds = sorted(t.kind for t in k.tiles)
        assert kinds == ["delta", "nabla"]

    def test_single_color_no_tiles(self):
        cfg = make_zonogon_config(1)
        k = reconstruct_ftq_combi(full_collection(1), cfg)
        assert len(k.tiles) == 0

    def test_wrong_size_rejected(self):
        with pytest.raises(NotMaximalError):
            reconstruct_ftq_combi(full_collection(4), make_zonogon_config(4))

    def test_not_weakly_separated_rejected(self):
        members = [ColorSet(4, m) for m in range(11)]
        with pytest.raises(NotMaximalError):
            reconstruct_ftq_combi(members, make_zonogon_config(4))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_round_trip_on_completions(self, n):
        cfg = make_zonogon_config(n)
        for seed in range(6):
            w = greedy_completion(n, WEAK, rng=random.Random(seed))
            k = reconstruct_ftq_combi(w, cfg)
            assert validate_ftq_combi(k) is None
            assert set(k.vertex_set()) == set(w)

    def test_deterministic_for_shuffled_input(self):
        cfg = make_zonogon_config(4)
        w = list(greedy_completion(4, WEAK, rng=random.Random(7)))
        k1 = reconstruct_ftq_combi(w, cfg)
        shuffled = list(w)
        random.Random(1).shuffle(shuffled)
        k2 = reconstruct_ftq_combi(shuffled, cfg)
        assert k1.tiles == k2.tiles


class TestReflectSymmetrize:
    def test_two_colors_already_symmetric(self):
        cfg = make_zonogon_config(2)
        k = reconstruct_ftq_combi(full_collection(2), cfg)
        assert reflect_symmetrize(k).tiles == k.tiles

    def test_four_color_pipeline(self):
        k = symmetric_maximal_tiling(4)
        assert validate_ftq_combi(k) is None
        assert is_mirror_symmetric(k)
        v = k.vertex_set()
        assert len(v) == 11
        assert all(a.mirror_complement() in v for a in v)
        assert len(middle_path(k)) == 3  # n/2 + 1 vertices, n/2 edges

    def test_interval_collection_not_covered(self):
        intervals = sorted(
            {ColorSet.from_members(4, range(a, b))
             for a in range(1, 6) for b in range(a, 6)},
            key=lambda s: s.sort_key)
        assert len(intervals) == 11
        k = reconstruct_ftq_combi(intervals, make_zonogon_config(4))
        with pytest.raises(NotMCoveredError):
            reflect_symmetrize(k)

    def test_odd_ground_rejected(self):
        cfg = make_zonogon_config(3)
        w = greedy_completion(3, WEAK)
        k = reconstruct_ftq_combi(w, cfg)
        with pytest.raises(ParityError):
            reflect_symmetrize(k)

    def test_middle_path_edges_are_mirror_pairs(self):
        for n in (2, 4, 6):
            k = symmetric_maximal_tiling(n)
            path = middle_path(k)
            assert len(path) == n // 2 + 1
            for a, b in zip(path, path[1:]):
                diff = sorted((a ^ b).members())
                assert len(diff) == 2
                assert diff[0] + diff[1] == n + 1


class TestExpandOdd:
    def test_one_pair_worked_example(self):
        cfg = make_zonogon_config(2)
        k = reconstruct_ftq_combi(full_collection(2), cfg)
        expanded, collection = expand_combi_odd(k)
        assert validate_ftq_combi(expanded) is None
        assert {m.members() for m in collection.members} == {
            (), (1,), (3,), (1, 2), (2, 3), (1, 2, 3)}
        fresh = set(expanded.vertex_set()) - set(collection.members)
        assert {v.members() for v in fresh} == {(1, 3)}

    @pytest.mark.parametrize("n,expected_vertices", [(2, 7), (4, 16)])
    def test_vertex_counts(self, n, expected_vertices):
        k = symmetric_maximal_tiling(n)
        expanded, collection = expand_combi_odd(k)
        assert len(expanded.vertex_set()) == expected_vertices
        assert len(collection) == expected_vertices - n // 2

    def test_expanded_tiling_not_symmetric_but_collection_is(self):
        k = symmetric_maximal_tiling(4)
        expanded, collection = expand_combi_odd(k)
        # the fresh seam vertices break tile-level symmetry
        mirrored = {t.mirror() for t in expanded.tiles}
        assert mirrored != set(expanded.tiles)
        members = set(collection.members)
        assert all(m.mirror_complement() in members for m in members)

    def test_parity_guard(self):
        w = greedy_completion(3, WEAK)
        k = reconstruct_ftq_combi(w, make_zonogon_config(3))
        with pytest.raises(ParityError):
            expand_combi_odd(k)


class TestMergeAndFan:
    def test_no_adjacent_lenses_unchanged(self):
        cfg = make_zonogon_config(2)
        k = reconstruct_ftq_combi(full_collection(2), cfg)
        assert merge_semilenses(k).tiles == k.tiles

    def test_merge_two_lenses_sharing_an_edge(self):
        t1 = Tile("upper", ColorSet.empty(4), (1, 2, 3))
        t2 = Tile("upper", ColorSet.empty(4), (1, 3, 4))
        cfg = make_zonogon_config(4)
        fq = merge_semilenses(FtqCombi(cfg, frozenset([t1, t2])))
        lens = [t for t in fq.tiles if t.is_lens]
        assert lens == [Tile("upper", ColorSet.empty(4), (1, 2, 3, 4))]

    def test_same_root_disconnected_lenses_stay_apart(self):
        t1 = Tile("upper", ColorSet.empty(5), (1, 2, 3))
        t2 = Tile("upper", ColorSet.empty(5), (3, 4, 5))  # shares one vertex
        cfg = make_zonogon_config(5)
        fq = merge_semilenses(FtqCombi(cfg, frozenset([t1, t2])))
        assert fq.tiles == frozenset([t1, t2])

    def test_all_triangulations_merge_to_the_same_quasi_tiling(self):
        # a 4-vertex lens has two fan triangulations; both collapse back
        cfg = make_zonogon_config(4)
        left = [Tile("upper", ColorSet.empty(4), (1, 2, 3)),
                Tile("upper", ColorSet.empty(4), (1, 3, 4))]
        right = [Tile("upper", ColorSet.empty(4), (1, 2, 4)),
                 Tile("upper", ColorSet.empty(4), (2, 3, 4))]
        merged = {merge_semilenses(FtqCombi(cfg, frozenset(ts))).tiles
                  for ts in (left, right)}
        assert len(merged) == 1

    def test_fan_triangulation_round_trip(self):
        for n in (4, 6):
            k = symmetric_maximal_tiling(n)
            fq = merge_semilenses(k)
            assert validate_fine_quasi_combi(fq) is None
            again = fan_triangulate(fq)
            assert validate_ftq_combi(again) is None
            assert again.vertex_set() == k.vertex_set()
            assert merge_semilenses(again).tiles == fq.tiles

    def test_fan_keeps_reflection_compatible(self):
        # mirror of a fan triangulation is the fan of the mirror
        big = Tile("upper", ColorSet.empty(4), (1, 2, 3, 4))
        fanned = fan_triangulate(
            merge_semilenses(FtqCombi(make_zonogon_config(4),
                                      frozenset([big]))))
        mirrored = {t.mirror() for t in fanned.tiles}
        fanned_mirror = fan_triangulate(
            merge_semilenses(FtqCombi(make_zonogon_config(4),
                                      frozenset([big.mirror()]))))
        assert mirrored == set(fanned_mirror.tiles)


class TestSerialization:
    def test_json_round_trip(self):
        k = symmetric_maximal_tiling(4)
        data = combi_to_json(k)
        back = combi_from_json(data)
        assert back.tiles == k.tiles
        assert validate_ftq_combi(back) is None

    def test_svg_deterministic(self):
        k = symmetric_maximal_tiling(4)
        assert export_svg(k) == export_svg(k)

    def test_svg_features(self):
        cfg = make_zonogon_config(2)
        k = reconstruct_ftq_combi(full_collection(2), cfg)
        svg = export_svg(k)
        assert svg.count("<polygon") == 2
        assert svg.count("<circle") == 4
        assert '<line class="midline"' in svg

    def test_svg_without_middle_line_for_odd(self):
        w = greedy_completion(3, WEAK)
        k = reconstruct_ftq_combi(w, make_zonogon_config(3))
        assert '<line class="midline"' not in export_svg(k)


class TestVertexSetsAreMaximal:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_every_enumerated_symmetric_collection_reconstructs(self, n):
        # only even grounds give symmetric collections of full size
        if n % 2 == 1:
            return
        cfg = make_zonogon_config(n)
        for c in enumerate_maximal_symmetric(n, WEAK):
            k = reconstruct_ftq_combi(c.sorted_members(), cfg)
            assert set(k.vertex_set()) == set(c.members)
