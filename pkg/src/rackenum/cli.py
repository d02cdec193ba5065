"""Command line front end.

Exit codes: 0 success, 2 bad configuration, 3 memory cap exceeded,
4 library format or integrity error, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from dataclasses import dataclass

from .action import (
    Counts,
    MemoryCapExceeded,
    NotNormalizing,
    enumerate_order,
    expand_class,
    image_positions,
    precompute_action,
)
from .burnside import (
    BurnsideInconsistency,
    build_fix_digraph,
    folder_orbit_count,
    format_induced,
    induced_perm,
    short_cycle_counts,
)
from .envelope import FolderSpace, InconsistentClassification, check_kind, classify, lmlt
from .oracle import oracle_classes
from .perm import PermGroup, PermParseError, normalizer_in_sym, parse_cycles
from .store import (
    LibraryFormatError,
    export_counts,
    export_tables,
    library_from_result,
    read_library,
    write_library,
)
from .subgroups import (
    CatalogParseError,
    export_catalog,
    filter_nonabelian,
    ingest_generators,
    subgroups_up_to_conjugacy,
)

log = logging.getLogger("rackenum")

EXIT_OK, EXIT_CONFIG, EXIT_MEMORY, EXIT_FORMAT, EXIT_INTERNAL = 0, 2, 3, 4, 5


class IntegrityError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    kind: str | None = None
    nonabelian_only: bool = False
    memory_cap: int | None = None
    catalog: str = "builtin"
    out: str | None = None
    verbosity: int = 0
    workers: int = 1

    def validate(self) -> None:
        if self.n is not None and self.n < 1:
            raise ValueError("n must be at least 1")
        if self.memory_cap is not None and self.memory_cap < 1:
            raise ValueError("memory cap must be at least 1")
        if self.kind is not None:
            check_kind(self.kind)


def load_catalog(cfg: RunConfig):
    if cfg.catalog == "builtin":
        catalog = subgroups_up_to_conjugacy(cfg.n)
    else:
        with open(cfg.catalog) as fh:
            catalog = ingest_generators(fh)
        if catalog and catalog[0].group.degree != cfg.n:
            raise ValueError(f"catalog degree {catalog[0].group.degree} differs from --n {cfg.n}")
    if cfg.nonabelian_only:
        catalog = filter_nonabelian(catalog)
    return catalog


def cmd_subgroups(args, cfg: RunConfig) -> int:
    catalog = subgroups_up_to_conjugacy(cfg.n)
    text = export_catalog(catalog, cfg.n)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"a={len(catalog)} b={len(filter_nonabelian(catalog))}")
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    catalog = load_catalog(cfg)
    result = enumerate_order(cfg.n, cfg.kind, catalog, memory_cap=cfg.memory_cap, workers=cfg.workers)
    lib = library_from_result(result, cfg.nonabelian_only)
    if cfg.out:
        with open(cfg.out, "wb") as fh:
            write_library(lib, fh)
    print(result.counts().row())
    return EXIT_OK


def cmd_count(args, cfg: RunConfig) -> int:
    total = 0
    for sc in load_catalog(cfg):
        space = FolderSpace(sc.group, cfg.kind)
        N = normalizer_in_sym(sc.group)
        orbits = folder_orbit_count(space, N)
        total += orbits
        print(f"{sc.class_id} order={sc.order} size={space.size} orbits={orbits}")
    print(f"total={total}")
    return EXIT_OK


def _parse_gens(text: str, n: int):
    return [parse_cycles(tok, n) for tok in text.split(";") if tok.strip()]


def cmd_burnside(args, cfg: RunConfig) -> int:
    n = cfg.n or max(int(t) for t in re.findall(r"\d+", args.group + " " + args.f))
    G = PermGroup(n, _parse_gens(args.group, n))
    f = parse_cycles(args.f, n)
    space = FolderSpace(G, cfg.kind)
    d = build_fix_digraph(space, f)
    gammas = short_cycle_counts(d)
    print(f"induced={format_induced(induced_perm(G, f))}")
    fix = 1
    for slot, gamma in gammas.items():
        print(f"gamma[{space.reps[slot] + 1}]={gamma}")
        fix *= gamma
    print(f"fix={fix}")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(d.to_dot())
    return EXIT_OK


def cmd_oracle(args, cfg: RunConfig) -> int:
    print(len(oracle_classes(cfg.n, cfg.kind)))
    return EXIT_OK


def verify_library(lib) -> None:
    """Re-derive every stored envelope, its minimality and the stored totals."""
    counts = Counts()
    for rec in lib.classes:
        if not rec.survivor_count:
            continue
        space = lib.space(rec)
        G = space.group
        survivors = rec.survivor_indices()
        if len(survivors) != rec.survivor_count:
            raise IntegrityError(f"class {rec.class_id}: survivor count mismatch")
        images = []
        if space.size > 1:
            N = normalizer_in_sym(G)
            images = [image_positions(space, precompute_action(space, g)) for g in N.elements]
        for i0 in survivors:
            digits = space.digits(i0)
            if not space.is_envelope_digits(digits):
                raise IntegrityError(f"class {rec.class_id}: folder {i0 + 1} is not an envelope")
            if any(img[i0] < i0 for img in images):
                raise IntegrityError(f"class {rec.class_id}: folder {i0 + 1} is not orbit-minimal")
        for t in expand_class(space, survivors):
            c = classify(t, with_groups=False)
            if not c.rack or (lib.kind == "quandle" and not c.quandle):
                raise IntegrityError(f"class {rec.class_id}: table is not a {lib.kind}")
            if lmlt(t) != G:
                raise IntegrityError(f"class {rec.class_id}: Lmlt differs from stored group")
            counts.total += 1
            counts.medial += c.medial
            counts.two_reductive += c.two_reductive
            counts.non_two_reductive += not c.two_reductive
    if counts.as_tuple() != lib.totals.as_tuple():
        raise IntegrityError(f"totals {counts.as_tuple()} differ from stored {lib.totals.as_tuple()}")


def cmd_verify(args, cfg: RunConfig) -> int:
    with open(args.lib, "rb") as fh:
        lib = read_library(fh)
    verify_library(lib)
    print(f"ok n={lib.n} kind={lib.kind}: {lib.totals.row()}")
    return EXIT_OK


def cmd_export(args, cfg: RunConfig) -> int:
    with open(args.lib, "rb") as fh:
        lib = read_library(fh)
    if args.tables:
        with open(args.tables, "w", newline="\n") as fh:
            export_tables(lib, fh)
    if args.counts:
        with open(args.counts, "w", newline="\n") as fh:
            export_counts(lib, fh)
    if not args.tables and not args.counts:
        export_counts(lib, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rackenum", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kind=True, n=True):
        if n:
            sp.add_argument("--n", type=int, required=True)
        if kind:
            sp.add_argument("--kind", choices=["rack", "quandle"], required=True)

    sp = sub.add_parser("subgroups", help="subgroups of S_n up to conjugacy")
    common(sp, kind=False)
    sp.add_argument("--out")

    for name, helptext in (("enumerate", "classify racks or quandles of order n"),
                           ("count", "Burnside folder-orbit counts per subgroup class")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--nonabelian-only", action="store_true")
        sp.add_argument("--catalog", default="builtin", help="'builtin' or a generator file")
        sp.add_argument("--memory-cap", type=int, help="max folder-space size in bits")
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        if name == "enumerate":
            sp.add_argument("--out", help="write a binary library here")

    sp = sub.add_parser("burnside", help="fixed-point digraph of one normalizer element")
    sp.add_argument("--group", required=True, help="generators, ';'-separated cycle notation")
    sp.add_argument("--f", required=True, help="normalizer element in cycle notation")
    sp.add_argument("--kind", choices=["rack", "quandle"], required=True)
    sp.add_argument("--n", type=int, help="degree (default: largest point mentioned)")
    sp.add_argument("--dot", help="write the digraph in DOT format")

    sp = sub.add_parser("oracle", help="brute-force isomorphism class count")
    common(sp)

    sp = sub.add_parser("verify", help="re-validate a library file")
    sp.add_argument("--lib", required=True)

    sp = sub.add_parser("export", help="write tables and counts from a library")
    sp.add_argument("--lib", required=True)
    sp.add_argument("--tables")
    sp.add_argument("--counts")
    return p


COMMANDS = {
    "subgroups": cmd_subgroups,
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "burnside": cmd_burnside,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "export": cmd_export,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    cfg = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        kind=getattr(args, "kind", None),
        nonabelian_only=getattr(args, "nonabelian_only", False),
        memory_cap=getattr(args, "memory_cap", None),
        catalog=getattr(args, "catalog", "builtin"),
        out=getattr(args, "out", None),
        verbosity=args.verbose,
        workers=getattr(args, "workers", 1),
    )
    try:
        cfg.validate()
        return COMMANDS[args.command](args, cfg)
    except MemoryCapExceeded as exc:
        log.error("%s", exc)
        return EXIT_MEMORY
    except (LibraryFormatError, IntegrityError) as exc:
        log.error("%s", exc)
        return EXIT_FORMAT
    except (BurnsideInconsistency, InconsistentClassification) as exc:
        log.error("internal consistency failure: %s", exc)
        return EXIT_INTERNAL
    except (ValueError, CatalogParseError, PermParseError, NotNormalizing, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
