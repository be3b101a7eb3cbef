"""From collections to zonogon tilings and back.

Every maximal weakly separated collection is the vertex set of exactly
one triangulated tiling of the zonogon.  This script rebuilds tilings
by exact-cover search, reflects one across the middle line to make it
mirror symmetric, and writes the pictures as SVG files.
"""

import random
from pathlib import Path

from sepsym import (
    SeparationRelation,
    SymCollection,
    export_svg,
    greedy_completion,
    greedy_symmetric_completion,
    make_zonogon_config,
    merge_semilenses,
    reconstruct_ftq_combi,
    reflect_symmetrize,
    validate_ftq_combi,
)

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)
weak = SeparationRelation.weak()

# 1. a random maximal weakly separated collection on six colors
n = 6
w = greedy_completion(n, weak, rng=random.Random(2024))
print(f"random maximal collection on [1..{n}]: {len(w)} members")

cfg = make_zonogon_config(n)
tiling = reconstruct_ftq_combi(w, cfg)
print(f"reconstructed tiling: {len(tiling.tiles)} triangles, "
      f"validation -> {validate_ftq_combi(tiling)}")
(out_dir / "tiling6.svg").write_text(export_svg(tiling))

# merging mergeable semi-lenses gives the canonical coarser picture
quasi = merge_semilenses(tiling)
lens_sizes = sorted(len(t.colors) for t in quasi.tiles if t.is_lens)
print(f"after merging semi-lenses: {len(quasi.tiles)} cells, "
      f"lens color counts {lens_sizes}")

# 2. the mirror-symmetric pipeline: a maximal symmetric collection,
#    completed to a plain maximal one, reconstructed, then reflected
symmetric = greedy_symmetric_completion(SymCollection.empty(n, weak))
completed = greedy_completion(n, weak, seed=symmetric.sorted_members())
reflected = reflect_symmetrize(reconstruct_ftq_combi(completed, cfg))
vertices = reflected.vertex_set()
print(f"\nsymmetric tiling: {len(vertices)} vertices, all mirror pairs: "
      f"{all(v.mirror_complement() in vertices for v in vertices)}")
(out_dir / "tiling6-symmetric.svg").write_text(export_svg(reflected))

# 3. opening the seam: insert a middle color into the symmetric tiling;
#    the expanded tiling certifies the maximal symmetric collection on
#    an odd ground, which is m members short of the plain maximum
from sepsym import expand_combi_odd

expanded, collection = expand_combi_odd(reflected)
print(f"\nexpansion to [1..{n + 1}]: {len(expanded.vertex_set())} vertices, "
      f"symmetric collection of {len(collection)} members")
(out_dir / "tiling7-expanded.svg").write_text(export_svg(expanded))

print(f"\nSVG files written to {out_dir}/")
