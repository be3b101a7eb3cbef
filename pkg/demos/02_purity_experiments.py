"""Exhaustive purity experiments at desk scale.

A collection is symmetric when it contains the mirror complement of each
member.  For strong, weak, and chord separation, every inclusion-maximal
symmetric collection turns out to have the same size; this script
enumerates all of them (as maximal cliques of the orbit graph) and
tallies the sizes, including the sharper domains: the middle level,
bands around it, and arbitrary symmetric level sets.
"""

from sepsym import Domain, SeparationRelation, verify_purity

print("full domain 2^[n]")
print(f"{'n':>3} {'relation':>9} {'#maximal':>9} {'sizes':>12} {'target':>7}")
for relation in (SeparationRelation.strong(), SeparationRelation.weak(),
                 SeparationRelation.chord()):
    top = 6 if relation.kind != "chord" else 5
    for n in range(1, top + 1):
        report = verify_purity(n, relation)
        print(f"{n:>3} {report.relation:>9} {report.count:>9} "
              f"{str(dict(report.sizes)):>12} {report.target:>7}")

print("\nmiddle level (even n): all maximal symmetric collections have "
      "n^2/4 + 1 members")
for n in (2, 4, 6):
    report = verify_purity(n, SeparationRelation.weak(),
                           Domain.middle_level())
    print(f"  n={n}: {report.count} collections, sizes {dict(report.sizes)}")

print("\nbands around the middle level, weak separation, n = 6")
for k in (0, 1, 2):
    report = verify_purity(6, SeparationRelation.weak(), Domain.band(k))
    print(f"  width {k}: sizes {dict(report.sizes)}, target {report.target}")

print("\nsymmetric level sets, chord separation, n = 5")
for levels in ((0, 5), (1, 4), (0, 2, 3, 5)):
    report = verify_purity(5, SeparationRelation.chord(),
                           Domain.levels(levels))
    print(f"  levels {levels}: sizes {dict(report.sizes)}, "
          f"target {report.target}")

# Purity genuinely fails for higher separation orders, so no target
# exists; the report just records what the enumeration found.
print("\nexploration: 3-separation has no size theorem")
for n in (5, 6):
    report = verify_purity(n, SeparationRelation.k_separated(3))
    print(f"  n={n}: {report.count} maximal symmetric collections, "
          f"sizes {dict(report.sizes)}")
