"""A tour of the separation predicates.

Two subsets of [n] are compared through their differences A-B and B-A:
listing both in color order gives a word over {A, B}, and each predicate
forbids a number of alternations in that word.
"""

from sepsym import (
    ColorSet,
    SeparationRelation,
    is_chord_separated,
    is_k_separated,
    is_strongly_separated,
    is_weakly_separated,
    pairwise_separated,
)

n = 6
pairs = [
    ((1, 2), (2, 3)),       # differences {1} < {3}: strongly separated
    ((1, 3), (2,)),         # pattern 1 < 2 < 3 alternates: not strong
    ((1, 4), (2, 3)),       # {1,4} brackets {2,3}: weak needs equal size
    ((1, 3), (2, 4)),       # 1 < 2 < 3 < 4 alternates: not even chord
    ((1, 3, 5), (2, 4, 6)),  # six alternations: fails k-separation to k=4
]

print(f"ground set [1..{n}]")
print(f"{'A':>12} {'B':>12}  strong  weak  chord  k=3  k=4")
for a_members, b_members in pairs:
    a = ColorSet.from_members(n, a_members)
    b = ColorSet.from_members(n, b_members)
    row = [
        is_strongly_separated(a, b),
        is_weakly_separated(a, b),
        is_chord_separated(a, b),
        is_k_separated(a, b, 3),
        is_k_separated(a, b, 4),
    ]
    cells = "  ".join(f"{str(v):>5}" for v in row)
    print(f"{str(set(a_members) or '{}'):>12} "
          f"{str(set(b_members) or '{}'):>12}  {cells}")

# The full power set of [4] is almost chord separated: exactly one pair
# of subsets alternates four times.
everything = [ColorSet(4, mask) for mask in range(16)]
witness = pairwise_separated(everything, SeparationRelation.chord())
print(f"\nthe single chord conflict in 2^[4]: {witness[0]!r} vs {witness[1]!r}")

# Mirror complements preserve every separation relation.
a = ColorSet.of(6, 1, 2, 5)
b = ColorSet.of(6, 2, 4)
print(f"\nmirror equivariance: weak({a!r},{b!r}) = {is_weakly_separated(a, b)}"
      f" = weak of the mirror images = "
      f"{is_weakly_separated(a.mirror_complement(), b.mirror_complement())}")
