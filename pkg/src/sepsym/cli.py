"""Command-line front end.

Subcommands: purity, complete, enumerate, tile, cubillage, export.
Exit codes: 0 success, 1 theorem or input violation, 2 resource limit.
Identical invocations (including --seed) produce byte-identical outputs;
the SEPSYM_SCALE_LIMIT environment variable overrides the default
enumeration bounds.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import combi as combi_mod
from . import cubillage as cub_mod
from .collections import (
    Domain,
    SCALE_LIMIT_ENV,
    SymCollection,
    greedy_symmetric_completion,
    verify_purity,
)
from .colorsets import ColorSet
from .errors import ScaleLimitError, SepsymError
from .separation import SeparationRelation

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_RESOURCE = 2


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation; the seed fully determines randomized choices."""

    command: str
    n: int | None
    relation: SeparationRelation | None
    domain: Domain | None
    seed: int
    scale_limit: int | None
    threads: int
    out: Path | None
    fmt: str


def _parse_relation(args) -> SeparationRelation:
    name = args.relation
    if name == "k":
        if args.k is None:
            raise ValueError("--relation k needs --k")
        return SeparationRelation.k_separated(args.k)
    return SeparationRelation(name)


def _parse_domain(text: str) -> Domain:
    if text == "full":
        return Domain.full()
    if text == "middle":
        return Domain.middle_level()
    if text.startswith("lambda:"):
        return Domain.band(int(text.split(":", 1)[1]))
    if text.startswith("levels:"):
        return Domain.levels(int(j) for j in text.split(":", 1)[1].split(","))
    raise ValueError(f"bad domain {text!r}; use full, middle, lambda:k, "
                     "or levels:j1,j2,...")


def _write_output(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _dump_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _load_collection(path: Path) -> tuple[int, list[ColorSet], str]:
    data = json.loads(path.read_text())
    n = int(data["n"])
    members = [ColorSet.from_members(n, row) for row in data["members"]]
    return n, members, data.get("relation", "weak")


def _collection_json(n: int, relation: str, members) -> dict:
    rows = sorted([list(m.members()) for m in members])
    return {"n": n, "relation": relation, "size": len(rows), "members": rows}


# ---------------------------------------------------------------------------
# subcommands


def cmd_purity(args) -> int:
    relation = _parse_relation(args)
    domain = _parse_domain(args.domain)
    report = verify_purity(args.n, relation, domain,
                           scale_limit=args.scale_limit)
    _write_output(_dump_json(report.to_json()), args.out)
    summary = (f"n={report.n} relation={report.relation} "
               f"domain={report.domain}: {report.count} maximal symmetric "
               f"collections, sizes {report.sizes}, "
               f"target {report.target}")
    print(summary, file=sys.stderr)
    if report.target is None:
        return EXIT_OK
    return EXIT_OK if report.matches_target else EXIT_VIOLATION


def cmd_complete(args) -> int:
    relation = _parse_relation(args)
    domain = _parse_domain(args.domain)
    if args.seed_collection is not None:
        n, members, _ = _load_collection(Path(args.seed_collection))
        if n != args.n:
            print(f"seed file is over [1..{n}], not [1..{args.n}]",
                  file=sys.stderr)
            return EXIT_VIOLATION
        seed = SymCollection.from_masks(n, (m.mask for m in members),
                                        relation)
    else:
        seed = SymCollection.empty(args.n, relation)
    rng = random.Random(args.seed) if args.seed is not None else None
    result = greedy_symmetric_completion(seed, domain, rng=rng,
                                         scale_limit=args.scale_limit)
    _write_output(_dump_json(_collection_json(args.n, relation.name,
                                              result.sorted_members())),
                  args.out)
    print(f"completed to {len(result)} members", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .collections import enumerate_maximal_symmetric

    relation = _parse_relation(args)
    domain = _parse_domain(args.domain)
    collections = [c.to_json() for c in enumerate_maximal_symmetric(
        args.n, relation, domain, scale_limit=args.scale_limit)]
    report = verify_purity(args.n, relation, domain,
                           scale_limit=args.scale_limit)
    _write_output(_dump_json({"report": report.to_json(),
                              "collections": collections}), args.out)
    print(f"{len(collections)} maximal symmetric collections",
          file=sys.stderr)
    if report.target is None:
        return EXIT_OK
    return EXIT_OK if report.matches_target else EXIT_VIOLATION


def cmd_tile(args) -> int:
    n, members, _ = _load_collection(Path(args.collection))
    cfg = combi_mod.make_zonogon_config(n, symmetric=True)
    tiling = combi_mod.reconstruct_ftq_combi(members, cfg)
    payload: dict = {}
    if args.symmetrize:
        tiling = combi_mod.reflect_symmetrize(tiling)
    if args.expand_odd:
        tiling, collection = combi_mod.expand_combi_odd(tiling)
        payload["collection"] = _collection_json(
            collection.ground.n, "weak", collection.sorted_members())
    verdict = combi_mod.validate_ftq_combi(tiling)
    if verdict is not None:
        print(f"tiling failed validation: {verdict}", file=sys.stderr)
        return EXIT_VIOLATION
    if args.format == "svg":
        _write_output(combi_mod.export_svg(tiling), args.out)
    else:
        payload = {**combi_mod.combi_to_json(tiling), **payload}
        _write_output(_dump_json(payload), args.out)
    print(f"{len(tiling.tiles)} tiles, {len(tiling.vertex_set())} vertices",
          file=sys.stderr)
    return EXIT_OK


def cmd_cubillage(args) -> int:
    if args.validate is not None:
        q = cub_mod.cubillage_from_json(json.loads(
            Path(args.validate).read_text()))
        verdict = cub_mod.validate_cubillage(q)
        if verdict is not None:
            print(f"invalid cubillage: {verdict}", file=sys.stderr)
            return EXIT_VIOLATION
        print(f"valid cubillage: {len(q.cubes)} cubes, spectrum "
              f"{len(q.spectrum_masks())}", file=sys.stderr)
        return EXIT_OK

    q = cub_mod.build_symmetric_cubillage(args.n,
                                          scale_limit=args.scale_limit)
    verdict = cub_mod.validate_cubillage(q)
    if verdict is not None:
        print(f"builder produced an invalid cubillage: {verdict}",
              file=sys.stderr)
        return EXIT_VIOLATION
    spec = q.spectrum_masks()
    print(f"{len(q.cubes)} cubes, spectrum {len(spec)}", file=sys.stderr)
    if args.ndiam:
        membrane = cub_mod.plate_membrane(q)
        tiling = cub_mod.membrane_to_combi(membrane, q.config)
        verdict = combi_mod.validate_ftq_combi(tiling)
        if verdict is not None:
            print(f"plate tiling failed validation: {verdict}",
                  file=sys.stderr)
            return EXIT_VIOLATION
        base = args.out if args.out is not None else Path(
            f"cubillage-{args.n}.json")
        membrane_path = base.with_suffix(".membrane.json")
        _write_output(_dump_json(cub_mod.membrane_to_json(membrane)),
                      membrane_path)
        if args.format == "svg":
            _write_output(combi_mod.export_svg(tiling),
                          base.with_suffix(".svg"))
        print(f"plate membrane: {len(membrane.items)} items, "
              f"{len(tiling.vertex_set())} vertices", file=sys.stderr)
    _write_output(_dump_json(cub_mod.cubillage_to_json(q)), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    data = json.loads(Path(args.input).read_text())
    if "tiles" in data:
        tiling = combi_mod.combi_from_json(data)
        verdict = combi_mod.validate_ftq_combi(tiling)
        if verdict is not None:
            print(f"invalid tiling: {verdict}", file=sys.stderr)
            return EXIT_VIOLATION
    elif "cubes" in data:
        q = cub_mod.cubillage_from_json(data)
        verdict = cub_mod.validate_cubillage(q)
        if verdict is not None:
            print(f"invalid cubillage: {verdict}", file=sys.stderr)
            return EXIT_VIOLATION
        front, _ = cub_mod.boundary_sides(q.config)
        membrane = cub_mod.Membrane.from_facets(front, direction=None)
        tiling = cub_mod.membrane_to_combi(membrane, q.config)
    else:
        print("input is neither a tiling nor a cubillage", file=sys.stderr)
        return EXIT_VIOLATION
    _write_output(combi_mod.export_svg(tiling), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepsym",
        description="Symmetric separated set-systems: purity experiments "
                    "and geometric certificates.",
        epilog=f"The {SCALE_LIMIT_ENV} environment variable overrides the "
               "default enumeration bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=int, required=True,
                           help="number of colors")
        p.add_argument("--seed", type=int, default=None,
                       help="PRNG seed for randomized orderings")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads (output is order-normalized "
                            "and identical for any value)")
        p.add_argument("--scale-limit", type=int, default=None,
                       help="override the enumeration size cap")
        p.add_argument("--out", type=Path, default=None,
                       help="output file (stdout when omitted)")
        p.add_argument("--format", choices=("json", "svg"), default="json")

    def relation_args(p):
        p.add_argument("--relation", required=True,
                       choices=("strong", "weak", "chord", "k"))
        p.add_argument("--k", type=int, default=None,
                       help="separation order for --relation k")
        p.add_argument("--domain", default="full",
                       help="full | middle | lambda:k | levels:j1,j2,...")

    p = sub.add_parser("purity", help="enumerate maximal symmetric "
                                      "collections and check the size "
                                      "theorem")
    common(p)
    relation_args(p)
    p.set_defaults(func=cmd_purity)

    p = sub.add_parser("complete", help="greedily extend a symmetric "
                                        "collection to a maximal one")
    common(p)
    relation_args(p)
    p.add_argument("--seed-collection", default=None,
                   help="JSON file with the starting collection")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("enumerate", help="write every maximal symmetric "
                                         "collection")
    common(p)
    relation_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("tile", help="rebuild the zonogon tiling of a "
                                    "maximal weakly separated collection")
    common(p, need_n=False)
    p.add_argument("--collection", required=True,
                   help="JSON collection file")
    p.add_argument("--symmetrize", action="store_true",
                   help="reflect the lower half across the middle line")
    p.add_argument("--expand-odd", action="store_true",
                   help="insert a middle color through the seam")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("cubillage", help="build or validate cubillages")
    common(p, need_n=False)
    p.add_argument("--n", type=int, default=None, help="number of colors")
    p.add_argument("--symmetric", action="store_true", default=True,
                   help="build the mirror-symmetric cubillage (default)")
    p.add_argument("--ndiam", action="store_true",
                   help="also extract the mid-plate membrane and its "
                        "flattened tiling")
    p.add_argument("--validate", default=None,
                   help="validate a cubillage JSON file instead of building")
    p.set_defaults(func=cmd_cubillage)

    p = sub.add_parser("export", help="render a tiling or cubillage JSON "
                                      "file as SVG")
    common(p, need_n=False)
    p.add_argument("--input", required=True, help="JSON input file")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    if args.command == "cubillage" and args.validate is None and args.n is None:
        parser.error("cubillage needs --n or --validate")
    try:
        return args.func(args)
    except ScaleLimitError as exc:
        print(f"scale limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SepsymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
