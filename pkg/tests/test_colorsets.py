import pytest
from hypothesis import given, strategies as st

from sepsym.colorsets import (
    ColorSet,
    GroundSet,
    classify_pairs,
    mirror_color,
    mirror_complement,
    order_predicates,
    set_shape,
)
from sepsym.errors import GroundSetMismatchError


def all_sets(n):
    return [ColorSet(n, m) for m in range(1 << n)]


class TestMirrorColor:
    def test_examples(self):
        assert mirror_color(1, 4) == 4
        assert mirror_color(2, 3) == 2  # self-mirrored middle color

    def test_involution_exhaustive(self):
        for n in range(1, 13):
            for i in range(1, n + 1):
                assert mirror_color(mirror_color(i, n), n) == i

    def test_range_check(self):
        with pytest.raises(ValueError):
            mirror_color(0, 4)
        with pytest.raises(ValueError):
            mirror_color(5, 4)


class TestMirrorComplement:
    def test_examples(self):
        assert mirror_complement(ColorSet.of(4, 1)) == ColorSet.of(4, 1, 2, 3)
        assert mirror_complement(ColorSet.of(4, 1, 2)) == ColorSet.of(4, 1, 2)
        assert mirror_complement(ColorSet.empty(3)) == ColorSet.full(3)

    def test_involution_exhaustive_small(self):
        for n in range(1, 7):
            for a in all_sets(n):
                assert a.mirror_complement().mirror_complement() == a

    @given(st.integers(7, 12), st.data())
    def test_involution_randomized(self, n, data):
        mask = data.draw(st.integers(0, (1 << n) - 1))
        a = ColorSet(n, mask)
        assert a.mirror_complement().mirror_complement() == a

    def test_size_complementarity(self):
        for n in range(1, 9):
            for a in all_sets(n):
                assert len(a.mirror_complement()) == n - len(a)


class TestClassifyPairs:
    def test_examples(self):
        p = classify_pairs(ColorSet.of(4, 1))
        assert p.poor == frozenset({(2, 3)})
        assert p.ordinary == frozenset({(1, 4)})
        assert p.full == frozenset()
        assert p.middle_state == "absent"

        p = classify_pairs(ColorSet.of(4, 1, 2))
        assert p.ordinary == frozenset({(1, 4), (2, 3)})
        assert p.poor == p.full == frozenset()

        p = classify_pairs(ColorSet.of(3, 2))
        assert p.poor == frozenset({(1, 3)})
        assert p.middle_state == "full"

    def test_partition_and_size_identity(self):
        # |ordinary| + 2|full| + [middle full] = |A|, pairs partitioned
        for n in range(1, 11):
            pairs = set(GroundSet(n).symmetric_pairs())
            for a in all_sets(n):
                p = classify_pairs(a)
                assert p.poor | p.ordinary | p.full == pairs
                assert not (p.poor & p.ordinary or p.poor & p.full
                            or p.ordinary & p.full)
                size = len(p.ordinary) + 2 * len(p.full) + \
                    (p.middle_state == "full")
                assert size == len(a)

    def test_mirror_complement_swaps_poor_and_full(self):
        for n in range(1, 9):
            for a in all_sets(n):
                p = classify_pairs(a)
                q = classify_pairs(a.mirror_complement())
                assert p.poor == q.full
                assert p.full == q.poor
                assert p.ordinary == q.ordinary

    def test_ordinary_pairs_are_stable(self):
        # i in A without its mirror stays that way in the image
        for n in range(1, 9):
            for a in all_sets(n):
                b = a.mirror_complement()
                for i in range(1, n + 1):
                    io = n + 1 - i
                    if i != io and i in a and io not in a:
                        assert i in b and io not in b


class TestSetShape:
    @pytest.mark.parametrize("members,expected", [
        ((2, 3), "interval"),
        ((1, 4), "cointerval"),
        ((1, 3), "neither"),
        ((1, 2), "both"),
        ((), "both"),
        ((1, 2, 3, 4), "both"),
    ])
    def test_examples(self, members, expected):
        assert set_shape(ColorSet.from_members(4, members)) == expected

    def test_against_definition(self):
        for n in range(1, 8):
            for a in all_sets(n):
                ms = a.members()
                contiguous = not ms or ms[-1] - ms[0] + 1 == len(ms)
                cs = a.complement().members()
                co = not cs or cs[-1] - cs[0] + 1 == len(cs)
                expected = {(True, True): "both", (True, False): "interval",
                            (False, True): "cointerval",
                            (False, False): "neither"}[(contiguous, co)]
                assert set_shape(a) == expected


class TestOrderPredicates:
    def test_examples(self):
        r = order_predicates(ColorSet.of(4, 1, 2), ColorSet.of(4, 3, 4))
        assert r.less
        r = order_predicates(ColorSet.of(4, 1, 4), ColorSet.of(4, 2, 3))
        assert r.a_surrounds_b and not r.b_surrounds_a
        r = order_predicates(ColorSet.empty(4), ColorSet.of(4, 1))
        assert r.less and not r.a_surrounds_b and not r.b_surrounds_a

    def test_empty_conventions(self):
        # max(empty) = -inf and min(empty) = +inf make every comparison pass
        e = ColorSet.empty(3)
        assert order_predicates(e, e).less
        assert order_predicates(ColorSet.of(3, 3), e).less

    def test_surround_needs_nonempty_differences(self):
        a = ColorSet.of(4, 1, 2)
        b = ColorSet.of(4, 1)
        r = order_predicates(a, b)
        assert not r.a_surrounds_b and not r.b_surrounds_a


class TestGroundSet:
    def test_symmetrized_labels_odd(self):
        g = GroundSet(5)
        assert [g.to_symmetrized(i) for i in range(1, 6)] == [-2, -1, 0, 1, 2]
        for i in range(1, 6):
            assert g.from_symmetrized(g.to_symmetrized(i)) == i
            # the label map turns the color mirror into negation
            assert g.to_symmetrized(g.mirror(i)) == -g.to_symmetrized(i)

    def test_symmetrized_labels_even(self):
        g = GroundSet(4)
        assert [g.to_symmetrized(i) for i in range(1, 5)] == [-2, -1, 1, 2]
        with pytest.raises(ValueError):
            g.from_symmetrized(0)
        for i in range(1, 5):
            assert g.to_symmetrized(g.mirror(i)) == -g.to_symmetrized(i)

    def test_middle_color(self):
        assert GroundSet(5).middle_color() == 3
        assert GroundSet(4).middle_color() is None


class TestColorSet:
    def test_canonical_serialization(self):
        a = ColorSet.from_members(5, [3, 1])
        assert a.members() == (1, 3)
        assert a.to_json() == [1, 3]
        assert ColorSet.from_json(5, [1, 3]) == a

    def test_ground_mismatch_is_checked(self):
        with pytest.raises(GroundSetMismatchError):
            ColorSet.of(4, 1).union(ColorSet.of(5, 1))
        with pytest.raises(GroundSetMismatchError):
            ColorSet.of(4, 1) < ColorSet.of(5, 1)

    def test_set_algebra(self):
        a = ColorSet.of(4, 1, 2)
        b = ColorSet.of(4, 2, 3)
        assert (a | b).members() == (1, 2, 3)
        assert (a & b).members() == (2,)
        assert (a - b).members() == (1,)
        assert (a ^ b).members() == (1, 3)

    @given(st.integers(1, 10), st.data())
    def test_members_roundtrip(self, n, data):
        mask = data.draw(st.integers(0, (1 << n) - 1))
        a = ColorSet(n, mask)
        assert ColorSet.from_members(n, a.members()) == a
        assert len(a) == len(a.members())
