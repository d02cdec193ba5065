"""The normalizer action on folders and the orbit sweep.

``f`` in ``N_{S_n}(G)`` sends a folder ``(lambda_x)`` to ``(kappa_x)`` with
``kappa_x = ((lambda_z)^{g_y})^f`` where ``y = x f^-1`` and ``z`` is the
representative of ``y``'s orbit.  Each output entry depends on one input
entry only, which is what the precomputed :class:`ActionTable` exploits.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .envelope import (
    Folder,
    FolderSpace,
    Kind,
    MulTable,
    check_kind,
    classify,
    might_be_admissible,
    translations,
)
from .perm import Perm, PermGroup, conjugate, inverse, normalizer_in_sym
from .subgroups import SubgroupClass

log = logging.getLogger(__name__)

DEFAULT_MEMORY_CAP_BITS = 2**31
MEMORY_CAP_ENV = "RACKENUM_MEMORY_CAP_BITS"


class MemoryCapExceeded(RuntimeError):
    pass


class NotNormalizing(ValueError):
    pass


def default_memory_cap() -> int:
    return int(os.environ.get(MEMORY_CAP_ENV, DEFAULT_MEMORY_CAP_BITS))


def check_normalizes(G: PermGroup, f: Perm) -> None:
    if any(conjugate(g, f) not in G for g in G.generators):
        raise NotNormalizing("permutation does not normalize G")


def apply_normalizer(space: FolderSpace, f: Perm, folder: Folder, check: bool = False) -> Folder:
    """Image of ``folder`` under ``f``; a right action of ``N_{S_n}(G)``."""
    if check:
        check_normalizes(space.group, f)
    od = space.orbit_data
    finv = inverse(f)
    out = []
    for x in space.reps:
        y = finv[x]
        z = od.rep_of[y]
        lam = tuple(folder[space.rep_slot[z]])
        out.append(conjugate(conjugate(lam, od.transversal[y]), f))
    return tuple(out)


@dataclass(frozen=True)
class ActionTable:
    """Per representative slot: the source slot and a candidate-index lookup."""

    f: Perm
    src: tuple[int, ...]
    lookup: tuple[tuple[int, ...], ...]

    def image_digits(self, digits: Sequence[int]) -> list[int]:
        return [lut[digits[s]] for s, lut in zip(self.src, self.lookup)]

    def is_identity(self) -> bool:
        return all(s == j for j, s in enumerate(self.src)) and all(
            all(i == v for i, v in enumerate(lut)) for lut in self.lookup
        )


def precompute_action(space: FolderSpace, f: Perm, check: bool = True) -> ActionTable:
    od = space.orbit_data
    finv = inverse(f)
    src, lookup = [], []
    for j, x in enumerate(space.reps):
        y = finv[x]
        z = od.rep_of[y]
        zs = space.rep_slot[z]
        g = od.transversal[y]
        idx = space.cand_index[j]
        try:
            lut = tuple(idx[conjugate(conjugate(lam, g), f)] for lam in space.candidates[zs])
        except KeyError:
            raise NotNormalizing("image of a candidate left the candidate list") from None
        src.append(zs)
        lookup.append(lut)
    table = ActionTable(tuple(f), tuple(src), tuple(lookup))
    if check:
        _spot_check(space, table)
    return table


def _spot_check(space: FolderSpace, table: ActionTable) -> None:
    for i0 in {0, space.size // 2, space.size - 1}:
        digits = space.digits(i0)
        want = apply_normalizer(space, table.f, space.folder_from_digits(digits))
        if space.folder_from_digits(table.image_digits(digits)) != want:
            raise AssertionError("action table disagrees with direct evaluation")


def action_arrays(space: FolderSpace, tables: Sequence[ActionTable]) -> tuple[np.ndarray, np.ndarray]:
    """Pack tables for the sweep kernel: source slots and weighted lookups."""
    k = len(space.reps)
    maxr = max(space.radices)
    src = np.zeros((len(tables), k), dtype=np.int64)
    wlut = np.zeros((len(tables), k, maxr), dtype=np.int64)
    for a, t in enumerate(tables):
        src[a] = t.src
        for j, lut in enumerate(t.lookup):
            wlut[a, j, : len(lut)] = np.asarray(lut, dtype=np.int64) * space.weights[j]
    return src, wlut


def image_positions(space: FolderSpace, table: ActionTable) -> np.ndarray:
    """0-based image index of every folder, vectorised (for checks and tests)."""
    idx = np.arange(space.size, dtype=np.int64)
    digits = [(idx // w) % r for w, r in zip(space.weights, space.radices)]
    out = np.zeros(space.size, dtype=np.int64)
    for j, (s, lut) in enumerate(zip(table.src, table.lookup)):
        out += np.asarray(lut, dtype=np.int64)[digits[s]] * space.weights[j]
    return out


@dataclass
class SweepResult:
    survivors: bytearray  # 1 at every orbit-minimal envelope index (0-based)
    reps: list[Folder]
    indices: list[int]  # 1-based positions of the survivors
    orbit_count_all: int

    @property
    def count(self) -> int:
        return len(self.indices)


def orbit_sweep(
    space: FolderSpace,
    N: PermGroup | None,
    memory_cap: int | None = None,
    backend: str | None = None,
) -> SweepResult:
    """Orbit-minimal envelopes of ``N`` acting on ``space``.

    A folder survives when it is an envelope and no element of ``N`` maps it
    to a smaller index.  ``orbit_count_all`` counts every folder orbit,
    envelope or not.
    """
    cap = default_memory_cap() if memory_cap is None else memory_cap
    if space.size > cap:
        raise MemoryCapExceeded(f"folder space of size {space.size} exceeds cap {cap}")
    if space.size == 1:
        minima = bytearray(b"\x01")
    else:
        if N is None:
            raise ValueError("normalizer required for spaces with more than one folder")
        tables = [precompute_action(space, f) for f in N.elements if f != tuple(range(N.degree))]
        src, wlut = action_arrays(space, tables)
        sweep = kernels.BACKENDS[backend] if backend else kernels.orbit_minima
        minima = sweep(space.radices, src, wlut, space.size)
    survivors = bytearray(space.size)
    reps, indices = [], []
    count_all = 0
    for i0, flag in enumerate(minima):
        if not flag:
            continue
        count_all += 1
        digits = space.digits(i0)
        if space.is_envelope_digits(digits):
            survivors[i0] = 1
            reps.append(space.folder_from_digits(digits))
            indices.append(i0 + 1)
    return SweepResult(survivors, reps, indices, count_all)


@dataclass
class ClassResult:
    class_id: int
    group: PermGroup
    kind: Kind
    radices: tuple[int, ...]
    survivors: bytearray
    admissible: bool
    orbit_count_all: int | None = None
    tables: list[MulTable] = field(default_factory=list)
    flags: list[tuple[bool, bool]] = field(default_factory=list)  # (medial, 2-reductive)
    seconds: float = 0.0

    @property
    def count(self) -> int:
        return sum(self.survivors)


@dataclass
class Counts:
    total: int = 0
    medial: int = 0
    two_reductive: int = 0
    non_two_reductive: int = 0

    def row(self) -> str:
        return f"{self.total} {self.medial} {self.two_reductive} {self.non_two_reductive}"

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.total, self.medial, self.two_reductive, self.non_two_reductive)


@dataclass
class EnumerationResult:
    n: int
    kind: Kind
    classes: list[ClassResult]

    def counts(self) -> Counts:
        c = Counts()
        for cr in self.classes:
            for medial, two_red in cr.flags:
                c.total += 1
                c.medial += medial
                c.two_reductive += two_red
                c.non_two_reductive += not two_red
        return c

    def tables(self) -> list[MulTable]:
        return [t for cr in self.classes for t in cr.tables]


def expand_class(space: FolderSpace, survivors: Iterable[int]) -> list[MulTable]:
    """Multiplication tables for the set 0-based survivor indices."""
    out = []
    for i0 in survivors:
        folder = space.folder_from_digits(space.digits(i0))
        out.append(MulTable.from_rows(translations(space.group, folder)))
    return out


def _flags(tables: list[MulTable]) -> list[tuple[bool, bool]]:
    out = []
    for t in tables:
        c = classify(t, with_groups=False)
        out.append((c.medial, c.two_reductive))
    return out


def enumerate_class(
    sc: SubgroupClass, kind: Kind, memory_cap: int | None = None, backend: str | None = None
) -> ClassResult:
    t0 = time.perf_counter()
    G = sc.group
    space = FolderSpace(G, kind)
    if not might_be_admissible(G, kind):
        return ClassResult(sc.class_id, G, kind, space.radices, bytearray(space.size), False,
                           seconds=time.perf_counter() - t0)
    N = normalizer_in_sym(G) if space.size > 1 else None
    res = orbit_sweep(space, N, memory_cap=memory_cap, backend=backend)
    tables = expand_class(space, (i - 1 for i in res.indices))
    return ClassResult(
        sc.class_id, G, kind, space.radices, res.survivors, True, res.orbit_count_all,
        tables, _flags(tables), time.perf_counter() - t0,
    )


def _enumerate_class_star(args):
    return enumerate_class(*args)


def enumerate_order(
    n: int,
    kind: Kind,
    catalog: Sequence[SubgroupClass],
    memory_cap: int | None = None,
    workers: int = 1,
    backend: str | None = None,
) -> EnumerationResult:
    """Isomorphism classes of racks or quandles on ``n`` points.

    One sweep per subgroup class; classes are independent so they may be
    farmed out to worker processes.  Output order follows ``class_id``.
    """
    kind = check_kind(kind)
    jobs = [(sc, kind, memory_cap, backend) for sc in catalog]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_enumerate_class_star, jobs))
    else:
        results = [enumerate_class(*job) for job in jobs]
    for r in results:
        log.info("n=%d %s class %d (order %d): %d found, %.3fs",
                 n, kind, r.class_id, r.group.order, r.count, r.seconds)
    results.sort(key=lambda r: r.class_id)
    return EnumerationResult(n, kind, results)
