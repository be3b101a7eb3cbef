"""The separation predicates against a literal pattern-enumeration oracle.

The implementation counts alternation blocks in one scan; the oracle
below instead enumerates candidate element tuples exactly as the
definitions state them, so the two are independent.
"""

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from sepsym.colorsets import ColorSet
from sepsym.separation import (
    SeparationRelation,
    is_chord_separated,
    is_k_separated,
    is_strongly_separated,
    is_weakly_separated,
    pairwise_separated,
)


# ---------------------------------------------------------------------------
# oracle: literal transcription of the definitions


def oracle_k_separated(a: set, b: set, k: int) -> bool:
    d1, d2 = a - b, b - a
    elements = sorted(d1 | d2)
    for chain in combinations(elements, k + 2):
        sides = [1 if e in d1 else 2 for e in chain]
        if all(sides[i] != sides[i + 1] for i in range(len(sides) - 1)):
            return False
    return True


def oracle_strong(a: set, b: set) -> bool:
    d1, d2 = a - b, b - a
    for i, j, kk in combinations(sorted(d1 | d2), 3):
        for one, other in ((d1, d2), (d2, d1)):
            if i in one and kk in one and j in other:
                return False
    return True


def oracle_chord(a: set, b: set) -> bool:
    d1, d2 = a - b, b - a
    for i, j, kk, ll in combinations(sorted(d1 | d2), 4):
        for one, other in ((d1, d2), (d2, d1)):
            if i in one and kk in one and j in other and ll in other:
                return False
    return True


def oracle_surrounds(a: set, b: set) -> bool:
    if not (b - a) or not (a - b):
        return False
    return min(a - b) < min(b - a) and max(a - b) > max(b - a)


def oracle_weak(a: set, b: set) -> bool:
    if not oracle_chord(a, b):
        return False
    if oracle_surrounds(a, b) and len(a) > len(b):
        return False
    if oracle_surrounds(b, a) and len(b) > len(a):
        return False
    return True


def pairs(n):
    for am in range(1 << n):
        for bm in range(1 << n):
            yield (ColorSet(n, am), ColorSet(n, bm),
                   set(ColorSet(n, am).members()),
                   set(ColorSet(n, bm).members()))


# ---------------------------------------------------------------------------


class TestExamples:
    def test_strong(self):
        assert is_strongly_separated(ColorSet.of(3, 1, 2), ColorSet.of(3, 2, 3))
        assert not is_strongly_separated(ColorSet.of(3, 1, 3), ColorSet.of(3, 2))
        assert is_strongly_separated(ColorSet.of(3, 2), ColorSet.full(3))

    def test_chord(self):
        assert not is_chord_separated(ColorSet.of(4, 1, 3), ColorSet.of(4, 2, 4))
        assert is_chord_separated(ColorSet.of(4, 1, 3), ColorSet.of(4, 2))
        assert is_chord_separated(ColorSet.of(4, 1, 4), ColorSet.of(4, 2, 3))

    def test_weak(self):
        assert not is_weakly_separated(ColorSet.of(4, 1, 3), ColorSet.of(4, 2))
        assert is_weakly_separated(ColorSet.of(4, 1, 4), ColorSet.of(4, 2, 3))
        assert not is_weakly_separated(ColorSet.of(4, 1, 3), ColorSet.of(4, 2, 4))

    def test_k(self):
        assert not is_k_separated(ColorSet.of(5, 1, 3, 5), ColorSet.of(5, 2, 4), 3)
        assert is_k_separated(ColorSet.of(5, 1, 3), ColorSet.of(5, 2, 4), 3)
        assert is_k_separated(ColorSet.of(5, 1, 3, 5), ColorSet.of(5, 2, 4), 4)
        with pytest.raises(ValueError):
            is_k_separated(ColorSet.of(5, 1), ColorSet.of(5, 2), 0)

    def test_equal_sets_pass_everything(self):
        a = ColorSet.of(5, 1, 3)
        assert is_strongly_separated(a, a)
        assert is_weakly_separated(a, a)
        assert is_chord_separated(a, a)
        assert is_k_separated(a, a, 1)


class TestAgainstOracle:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_strong(self, n):
        for a, b, sa, sb in pairs(n):
            assert is_strongly_separated(a, b) == oracle_strong(sa, sb)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_chord(self, n):
        for a, b, sa, sb in pairs(n):
            assert is_chord_separated(a, b) == oracle_chord(sa, sb)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_weak(self, n):
        for a, b, sa, sb in pairs(n):
            assert is_weakly_separated(a, b) == oracle_weak(sa, sb)

    @pytest.mark.parametrize("n,k", [(5, 1), (5, 2), (5, 3), (5, 4), (4, 3)])
    def test_k_separated(self, n, k):
        for a, b, sa, sb in pairs(n):
            assert is_k_separated(a, b, k) == oracle_k_separated(sa, sb, k)

    @given(st.integers(6, 9), st.data())
    def test_randomized_larger_ground(self, n, data):
        am = data.draw(st.integers(0, (1 << n) - 1))
        bm = data.draw(st.integers(0, (1 << n) - 1))
        a, b = ColorSet(n, am), ColorSet(n, bm)
        sa, sb = set(a.members()), set(b.members())
        assert is_strongly_separated(a, b) == oracle_strong(sa, sb)
        assert is_chord_separated(a, b) == oracle_chord(sa, sb)
        assert is_weakly_separated(a, b) == oracle_weak(sa, sb)
        assert is_k_separated(a, b, 3) == oracle_k_separated(sa, sb, 3)


class TestStructuralProperties:
    def test_implication_chain(self):
        # strong implies weak implies chord
        for n in range(1, 6):
            for a, b, _, _ in pairs(n):
                if is_strongly_separated(a, b):
                    assert is_weakly_separated(a, b)
                if is_weakly_separated(a, b):
                    assert is_chord_separated(a, b)

    def test_k_specializations(self):
        # 1-separation is strong separation, 2-separation is chord
        for n in range(1, 6):
            for a, b, _, _ in pairs(n):
                assert is_k_separated(a, b, 1) == is_strongly_separated(a, b)
                assert is_k_separated(a, b, 2) == is_chord_separated(a, b)

    def test_involution_equivariance(self):
        relations = [SeparationRelation.strong(), SeparationRelation.weak(),
                     SeparationRelation.chord(),
                     SeparationRelation.k_separated(3)]
        for n in range(1, 6):
            for a, b, _, _ in pairs(n):
                am, bm = a.mirror_complement(), b.mirror_complement()
                for rel in relations:
                    assert rel.decide(a, b) == rel.decide(am, bm)

    def test_equal_size_weak_equals_chord(self):
        for n in range(1, 7):
            for am in range(1 << n):
                for bm in range(1 << n):
                    a, b = ColorSet(n, am), ColorSet(n, bm)
                    if len(a) == len(b):
                        assert is_weakly_separated(a, b) == \
                            is_chord_separated(a, b)

    def test_nearly_balanced_sets_weakly_separated_from_image(self):
        # at most one poor and one full proper pair forces weak separation
        # from the mirror complement (even grounds)
        from sepsym.colorsets import classify_pairs
        for n in (2, 4, 6, 8):
            for mask in range(1 << n):
                a = ColorSet(n, mask)
                p = classify_pairs(a)
                if len(p.poor) <= 1 and len(p.full) <= 1:
                    assert is_weakly_separated(a, a.mirror_complement())

    @given(st.integers(1, 8), st.data())
    def test_symmetry(self, n, data):
        a = ColorSet(n, data.draw(st.integers(0, (1 << n) - 1)))
        b = ColorSet(n, data.draw(st.integers(0, (1 << n) - 1)))
        assert is_strongly_separated(a, b) == is_strongly_separated(b, a)
        assert is_weakly_separated(a, b) == is_weakly_separated(b, a)
        assert is_chord_separated(a, b) == is_chord_separated(b, a)


class TestPairwise:
    def test_chain_is_weakly_separated(self):
        chain = [ColorSet.empty(4), ColorSet.of(4, 1), ColorSet.of(4, 1, 2)]
        assert pairwise_separated(chain, SeparationRelation.weak()) is None

    def test_full_power_set_chord_witness(self):
        everything = [ColorSet(4, m) for m in range(16)]
        witness = pairwise_separated(everything, SeparationRelation.chord())
        assert witness == (ColorSet.of(4, 1, 3), ColorSet.of(4, 2, 4))

    def test_empty_collection_vacuous(self):
        assert pairwise_separated([], SeparationRelation.strong()) is None
