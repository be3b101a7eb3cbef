"""Acceptance suite: one test per criterion, exact values, timed budgets.

Run with ``pytest tests/test_acceptance.py -v`` to get one pass/fail
line per criterion; each test also prints a short summary.
"""

import random
import time

import pytest

from sepsym.collections import (
    Domain,
    SymCollection,
    build_orbit_graph,
    contract_odd,
    enumerate_maximal_symmetric,
    expand_odd,
    greedy_completion,
    greedy_symmetric_completion,
    verify_purity,
)
from sepsym.colorsets import ColorSet
from sepsym.combi import (
    is_mirror_symmetric,
    make_zonogon_config,
    reconstruct_ftq_combi,
    validate_ftq_combi,
)
from sepsym.cubillage import (
    boundary_sides,
    build_symmetric_cubillage,
    contract_cubillage,
    expand_cubillage,
    is_symmetric_cubillage,
    membrane_to_combi,
    plate_membrane,
    spectrum,
    validate_cubillage,
)
from sepsym.separation import SeparationRelation

WEAK = SeparationRelation.weak()
STRONG = SeparationRelation.strong()
CHORD = SeparationRelation.chord()

WEAK_STRONG_TARGETS = {1: 2, 2: 4, 3: 6, 4: 11, 5: 14, 6: 22}
CHORD_TARGETS = {1: 2, 2: 4, 3: 8, 4: 15, 5: 26, 6: 42}


def _purity_run(relation, targets, small_budget, large_n=None,
                large_budget=None):
    elapsed_small = 0.0
    for n, target in targets.items():
        if large_n is not None and n >= large_n:
            continue
        t0 = time.monotonic()
        report = verify_purity(n, relation)
        elapsed_small += time.monotonic() - t0
        assert report.pure, (n, report.sizes)
        assert set(report.sizes) == {target}, (n, report.sizes)
    assert elapsed_small < small_budget
    if large_n is not None:
        t0 = time.monotonic()
        report = verify_purity(large_n, relation)
        large_elapsed = time.monotonic() - t0
        assert report.pure and set(report.sizes) == {targets[large_n]}
        assert large_elapsed < large_budget
        return elapsed_small, large_elapsed
    return elapsed_small, None


def test_criterion_01_weak_purity():
    small, large = _purity_run(WEAK, WEAK_STRONG_TARGETS, 10.0,
                               large_n=6, large_budget=600.0)
    print(f"\n[criterion 1] PASS weak purity n=1..6 sizes "
          f"{list(WEAK_STRONG_TARGETS.values())} "
          f"({small:.2f}s small, {large:.2f}s n=6)")


def test_criterion_02_strong_purity():
    small, large = _purity_run(STRONG, WEAK_STRONG_TARGETS, 10.0,
                               large_n=6, large_budget=600.0)
    print(f"\n[criterion 2] PASS strong purity n=1..6 sizes "
          f"{list(WEAK_STRONG_TARGETS.values())} "
          f"({small:.2f}s small, {large:.2f}s n=6)")


def test_criterion_03_chord_purity():
    t0 = time.monotonic()
    for n in range(1, 6):
        report = verify_purity(n, CHORD)
        assert report.pure and set(report.sizes) == {CHORD_TARGETS[n]}
    sizes = set()
    for seed in range(200):
        c = greedy_symmetric_completion(SymCollection.empty(6, CHORD),
                                        rng=random.Random(seed))
        sizes.add(len(c))
    elapsed = time.monotonic() - t0
    assert sizes == {42}
    assert elapsed < 900.0
    print(f"\n[criterion 3] PASS chord purity n=1..5 exhaustive, 200 seeded "
          f"completions at n=6 all reach 42 ({elapsed:.2f}s)")


def test_criterion_04_middle_level_purity():
    expected = {2: 2, 4: 5, 6: 10}
    for n, target in expected.items():
        report = verify_purity(n, WEAK, Domain.middle_level())
        assert report.pure and set(report.sizes) == {target}, (n, report.sizes)
    print(f"\n[criterion 4] PASS middle-level purity n=2,4,6 sizes "
          f"{list(expected.values())}")


def test_criterion_05_level_counts():
    for n in range(1, 6):
        for collection in enumerate_maximal_symmetric(n, CHORD):
            profile = collection.level_profile()
            for h in range(n + 1):
                assert profile.get(h, 0) == h * (n - h) + 1, (n, h, profile)
    for seed in range(50):
        collection = greedy_symmetric_completion(
            SymCollection.empty(6, CHORD), rng=random.Random(seed))
        profile = collection.level_profile()
        for h in range(7):
            assert profile.get(h, 0) == h * (6 - h) + 1
    print("\n[criterion 5] PASS level counts h(n-h)+1 exhaustive n<=5, "
          "50 samples at n=6")


def test_criterion_06_odd_round_trip():
    checked = 0
    for n in (3, 5):
        for collection in enumerate_maximal_symmetric(n, WEAK):
            back = expand_odd(contract_odd(collection))
            assert set(back.members) == set(collection.members)
            checked += 1
    print(f"\n[criterion 6] PASS middle-color round trip on {checked} "
          "maximal symmetric collections, n in {3, 5}")


def test_criterion_07_geometry_certificates():
    t0 = time.monotonic()
    for n in range(1, 6):
        cfg = make_zonogon_config(n)
        for seed in range(20):
            w = greedy_completion(n, WEAK, rng=random.Random(seed))
            tiling = reconstruct_ftq_combi(w, cfg)
            assert validate_ftq_combi(tiling) is None
            assert set(tiling.vertex_set()) == set(w)
    reconstruct_elapsed = time.monotonic() - t0
    assert reconstruct_elapsed < 60.0

    even_elapsed = {}
    for n in (2, 4, 6):
        t0 = time.monotonic()
        q = build_symmetric_cubillage(n)
        assert validate_cubillage(q) is None
        assert is_symmetric_cubillage(q)
        assert len(spectrum(q)) == CHORD_TARGETS[n]
        even_elapsed[n] = time.monotonic() - t0
        assert even_elapsed[n] < 60.0

    t0 = time.monotonic()
    q5 = build_symmetric_cubillage(5)
    odd_elapsed = time.monotonic() - t0
    assert validate_cubillage(q5) is None
    assert is_symmetric_cubillage(q5)
    assert len(q5.cubes) == 10
    assert len(spectrum(q5)) == 26
    assert odd_elapsed < 60.0
    print(f"\n[criterion 7] PASS geometry certificates: 100 tiling "
          f"round-trips n<=5 ({reconstruct_elapsed:.2f}s), symmetric "
          f"cubillages n=2,4,6, odd builder n=5 ({odd_elapsed:.2f}s)")


def test_criterion_08_membrane_bridge():
    for n, target in ((4, 11), (6, 22)):
        q = build_symmetric_cubillage(n)
        membrane = plate_membrane(q)
        tiling = membrane_to_combi(membrane, q.config)
        assert validate_ftq_combi(tiling) is None
        assert is_mirror_symmetric(tiling)
        assert len(tiling.vertex_set()) == target
    print("\n[criterion 8] PASS plate membranes n=4,6 flatten to symmetric "
          "tilings with 11 and 22 vertices")


def test_criterion_09_oracle_equivalences():
    relations = (STRONG, WEAK, CHORD, SeparationRelation.k_separated(3))
    for n in range(1, 6):
        for a_mask in range(1 << n):
            a = ColorSet(n, a_mask)
            am = a.mirror_complement()
            for b_mask in range(1 << n):
                b = ColorSet(n, b_mask)
                bm = b.mirror_complement()
                strong = STRONG.decide(a, b)
                chord = CHORD.decide(a, b)
                assert SeparationRelation.k_separated(1).decide(a, b) == strong
                assert SeparationRelation.k_separated(2).decide(a, b) == chord
                for rel in relations:
                    assert rel.decide(a, b) == rel.decide(am, bm)
    print("\n[criterion 9] PASS k-specializations and involution "
          "equivariance over all pairs, n<=5")


def test_criterion_10_expansion_contraction():
    fixtures = {n: build_symmetric_cubillage(n) for n in range(1, 6)}

    # expansion followed by contraction of the new color is the identity
    for n in (2, 3, 4):
        q = fixtures[n]
        front, rear = boundary_sides(q.config)
        for position, membrane in ((n + 1, rear), (1, front)):
            grown = expand_cubillage(q, position, membrane)
            assert validate_cubillage(grown) is None
            assert len(grown.cubes) == len(q.cubes) + n * (n - 1) // 2
            back = contract_cubillage(grown, position)
            assert back.cubes == q.cubes

    # two contractions commute on every fixture large enough to lose
    # two colors (a ground set needs at least one color)
    for n in range(3, 6):
        q = fixtures[n]
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                one = contract_cubillage(contract_cubillage(q, b), a)
                other = contract_cubillage(contract_cubillage(q, a), b - 1)
                assert one.cubes == other.cubes
    print("\n[criterion 10] PASS expansion/contraction inverses and "
          "commuting contractions on all fixtures n<=5")
