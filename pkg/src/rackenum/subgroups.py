"""Subgroups of ``S_n`` up to conjugacy in ``S_n``.

The built-in generator works by joins.  Every subgroup is generated by
cyclic subgroups of prime-power order, so starting from the trivial group
and repeatedly forming ``<V, C>`` for each known class representative ``V``
and each ``N(V)``-orbit of prime-power cyclic subgroups ``C`` reaches every
conjugacy class.  New groups are deduplicated by cheap invariants first and
an explicit conjugating-element search second.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, TextIO

from .perm import (
    Perm,
    PermGroup,
    PermParseError,
    closure,
    conjugate,
    format_cycles,
    identity,
    normalizer_in_sym,
    parse_cycles,
    perm_order,
)

log = logging.getLogger(__name__)

BUILTIN_CAP = 7


class CatalogParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass
class SubgroupClass:
    group: PermGroup
    class_id: int

    @property
    def is_abelian(self) -> bool:
        return self.group.is_abelian

    @property
    def order(self) -> int:
        return self.group.order


def conjugacy_test(G: PermGroup, H: PermGroup) -> Perm | None:
    """Return some ``f`` in ``S_n`` with ``G^f = H``, or ``None``."""
    if G.degree != H.degree:
        raise ValueError("groups of different degree")
    if G.order != H.order or G.invariant_key != H.invariant_key:
        return None
    n = G.degree
    if G.order == 1:
        return identity(n)
    members = H.element_set
    gens = G.generators
    # orbits of G must go to orbits of H of the same size
    gsize = [len(o) for o in _orbit_of_point(G)]
    hsize = [len(o) for o in _orbit_of_point(H)]
    for f in permutations(range(n)):
        if any(hsize[f[x]] != gsize[x] for x in range(n)):
            continue
        if all(conjugate(g, f) in members for g in gens):
            return f
    return None


def _orbit_of_point(G: PermGroup) -> list[tuple[int, ...]]:
    od = G.orbit_data
    return [od.orbits[od.reps.index(r)] for r in od.rep_of]


def _prime_power_cyclics(n: int) -> list[PermGroup]:
    """All cyclic subgroups of S_n of prime-power order > 1, one per subgroup."""
    seen: set[frozenset] = set()
    out = []
    for p in permutations(range(n)):
        k = perm_order(p)
        if k == 1 or len(_prime_factors(k)) != 1:
            continue
        elems = frozenset(closure([p], n))
        if elems in seen:
            continue
        seen.add(elems)
        gen = min(g for g in elems if perm_order(g) == k)
        out.append(PermGroup(n, [gen], _elements=tuple(sorted(elems))))
    return out


def _prime_factors(k: int) -> set[int]:
    out, d = set(), 2
    while d * d <= k:
        while k % d == 0:
            out.add(d)
            k //= d
        d += 1
    if k > 1:
        out.add(k)
    return out


def _orbit_reps_under(N: PermGroup, cyclics: list[PermGroup], skip) -> list[PermGroup]:
    """One representative per N-orbit (by conjugation) of the cyclic subgroups."""
    index = {c.element_set: i for i, c in enumerate(cyclics)}
    done = [False] * len(cyclics)
    reps = []
    gens = N.generators
    for i, c in enumerate(cyclics):
        if done[i]:
            continue
        done[i] = True
        stack = [c]
        while stack:
            d = stack.pop()
            for f in gens:
                e = frozenset(conjugate(g, f) for g in d.elements)
                j = index[e]
                if not done[j]:
                    done[j] = True
                    stack.append(cyclics[j])
        if not skip(c):
            reps.append(c)
    return reps


class _Registry:
    """Known classes, bucketed by invariant key; dedup by conjugacy."""

    def __init__(self):
        self.by_key: dict[tuple, list[PermGroup]] = {}
        self.seen: dict[frozenset, PermGroup] = {}
        self.reps: list[PermGroup] = []

    def add(self, H: PermGroup) -> bool:
        if H.element_set in self.seen:
            return False
        bucket = self.by_key.setdefault(H.invariant_key, [])
        for R in bucket:
            if conjugacy_test(H, R) is not None:
                self.seen[H.element_set] = R
                return False
        bucket.append(H)
        self.seen[H.element_set] = H
        self.reps.append(H)
        return True


def _canonical(G: PermGroup) -> PermGroup:
    # deterministic generators: greedy over the sorted element list
    return PermGroup.from_elements(G.degree, G.elements)


def _sort_key(G: PermGroup):
    return (G.order, tuple(sorted(G.generators)))


def subgroups_up_to_conjugacy(n: int, cap: int = BUILTIN_CAP) -> list[SubgroupClass]:
    """Complete, duplicate-free list of subgroup classes of ``S_n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise ValueError(f"built-in catalog limited to n <= {cap}; ingest generators instead")
    cyclics = _prime_power_cyclics(n)
    reg = _Registry()
    trivial = PermGroup(n, [])
    reg.add(trivial)
    queue = [trivial]
    while queue:
        V = queue.pop(0)
        N = normalizer_in_sym(V).with_generators()
        for C in _orbit_reps_under(N, cyclics, skip=lambda c: c.generators[0] in V):
            H = V.join(C.generators[0])
            if reg.add(H):
                queue.append(H)
        log.debug("n=%d: processed order %d, %d classes so far", n, V.order, len(reg.reps))
    groups = sorted((_canonical(G) for G in reg.reps), key=_sort_key)
    return [SubgroupClass(G, i + 1) for i, G in enumerate(groups)]


def filter_nonabelian(catalog: Iterable[SubgroupClass]) -> list[SubgroupClass]:
    return [c for c in catalog if not c.is_abelian]


def ingest_generators(source: TextIO | str) -> list[SubgroupClass]:
    """Read a catalog: ``n=<deg>`` header, then one group per line.

    Each line lists generators in cycle notation separated by ``;``.
    Blank lines and ``#`` comments are ignored; ``()`` is the trivial group.
    Conjugate duplicates are dropped, keeping the first occurrence.
    """
    text = source if isinstance(source, str) else source.read()
    n = None
    groups: list[PermGroup] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.replace(" ", "").startswith("n="):
                raise CatalogParseError(lineno, "expected degree header 'n=<degree>'")
            try:
                n = int(line.split("=", 1)[1])
            except ValueError:
                raise CatalogParseError(lineno, "bad degree header") from None
            if n < 1:
                raise CatalogParseError(lineno, "degree must be positive")
            continue
        gens = []
        for tok in line.split(";"):
            try:
                gens.append(parse_cycles(tok, n))
            except PermParseError as exc:
                raise CatalogParseError(lineno, str(exc)) from None
        groups.append(PermGroup(n, gens))
    reg = _Registry()
    for G in groups:
        reg.add(G)
    return [SubgroupClass(G, i + 1) for i, G in enumerate(reg.reps)]


def export_catalog(catalog: list[SubgroupClass], n: int) -> str:
    lines = [f"n={n}"]
    for c in catalog:
        gens = ";".join(format_cycles(g) for g in c.group.generators) or "()"
        lines.append(f"{gens}  # class {c.class_id} order {c.order}")
    return "\n".join(lines) + "\n"
