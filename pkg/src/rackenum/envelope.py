"""Folders, envelopes and the racks they encode.

For ``G <= S_n`` with orbit representatives ``X/G`` a *folder* picks one
permutation ``lambda_x`` per representative, from ``C_G(G_x)`` (racks) or
``Z(G_x)`` (quandles).  Spreading each ``lambda_x`` over its orbit by
conjugation with the transversal gives the left translations of a rack.
The folder is an *envelope* when the conjugates of its entries generate
``G``, i.e. when the rack's left multiplication group is exactly ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Literal, Sequence

import numpy as np

from .perm import (
    Perm,
    PermGroup,
    center,
    centralizer_in,
    closure,
    compose,
    conjugate,
    format_cycles,
    identity,
    inverse,
    is_perm,
    parse_cycles,
)

Kind = Literal["rack", "quandle"]
KINDS = ("rack", "quandle")

Folder = tuple  # one Perm per orbit representative, in representative order


class FolderError(ValueError):
    pass


class NotARack(ValueError):
    pass


def check_kind(kind: str) -> Kind:
    if kind not in KINDS:
        raise ValueError(f"kind must be 'rack' or 'quandle', not {kind!r}")
    return kind  # type: ignore[return-value]


def candidate_group(G: PermGroup, x: int, kind: Kind) -> PermGroup:
    """``C_G(G_x)`` for racks, ``Z(G_x)`` for quandles."""
    stab = G.orbit_data.stabilizer(x)
    if kind == "rack":
        return centralizer_in(G, stab)
    return center(stab)


class FolderSpace:
    """The product of candidate lists over the orbit representatives.

    Indices run over ``1..size``; the first representative is the most
    significant mixed-radix digit and each candidate list is sorted, so
    index 1 is the all-identity folder.
    """

    def __init__(self, group: PermGroup, kind: Kind):
        self.group = group
        self.kind = check_kind(kind)
        self.orbit_data = group.orbit_data
        self.reps: list[int] = list(self.orbit_data.reps)
        self.candidates: list[tuple[Perm, ...]] = [
            candidate_group(group, x, kind).elements for x in self.reps
        ]
        self.cand_index: list[dict[Perm, int]] = [
            {c: i for i, c in enumerate(cs)} for cs in self.candidates
        ]
        self.radices: tuple[int, ...] = tuple(len(cs) for cs in self.candidates)
        self.size: int = prod(self.radices)
        w, weights = 1, []
        for r in reversed(self.radices):
            weights.append(w)
            w *= r
        self.weights: tuple[int, ...] = tuple(reversed(weights))
        self.rep_slot = {x: j for j, x in enumerate(self.reps)}

    @property
    def degree(self) -> int:
        return self.group.degree

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"FolderSpace({self.kind}, order={self.group.order}, radices={self.radices})"

    # -- indexing -------------------------------------------------------

    def digits(self, i0: int) -> list[int]:
        """0-based digit vector of the 0-based index ``i0``."""
        return [(i0 // w) % r for w, r in zip(self.weights, self.radices)]

    def index_of_digits(self, digits: Sequence[int]) -> int:
        return sum(d * w for d, w in zip(digits, self.weights))

    def folder_from_digits(self, digits: Sequence[int]) -> Folder:
        return tuple(cs[d] for cs, d in zip(self.candidates, digits))

    def digits_of(self, folder: Folder) -> list[int]:
        if len(folder) != len(self.reps):
            raise FolderError(f"folder has {len(folder)} entries, space has {len(self.reps)}")
        try:
            return [idx[tuple(lam)] for idx, lam in zip(self.cand_index, folder)]
        except KeyError as exc:
            raise FolderError(f"entry {exc.args[0]} is not a candidate") from None

    # -- envelope machinery ----------------------------------------------

    @cached_property
    def conjugacy_classes(self) -> list[list[frozenset]]:
        G = self.group
        return [[G.conjugacy_class(c) for c in cs] for cs in self.candidates]

    def generated_order(self, digits: Sequence[int]) -> int:
        """Order of the group generated by all conjugates of the entries."""
        key = frozenset(self.conjugacy_classes[j][d] for j, d in enumerate(digits))
        cache = self._closure_cache
        if key not in cache:
            gens = set().union(*key) if key else set()
            cache[key] = len(closure(gens, self.degree, limit=self.group.order))
        return cache[key]

    @cached_property
    def _closure_cache(self) -> dict:
        return {}

    def is_envelope_digits(self, digits: Sequence[int]) -> bool:
        return self.generated_order(digits) == self.group.order


def folder_space(G: PermGroup, kind: Kind) -> FolderSpace:
    return FolderSpace(G, kind)


def element_at(space: FolderSpace, i: int) -> Folder:
    """The ``i``-th folder, ``1 <= i <= space.size``."""
    if not 1 <= i <= space.size:
        raise IndexError(f"index {i} outside 1..{space.size}")
    return space.folder_from_digits(space.digits(i - 1))


def position_of(space: FolderSpace, folder: Folder) -> int:
    """Inverse of :func:`element_at`."""
    return space.index_of_digits(space.digits_of(folder)) + 1


def might_be_admissible(G: PermGroup, kind: Kind) -> bool:
    """Necessary condition for some envelope over ``G`` to exist.

    True iff the conjugates of all candidates generate ``G``.
    """
    space = FolderSpace(G, kind)
    gens = set()
    for classes in space.conjugacy_classes:
        for cls in classes:
            gens |= cls
    return len(closure(gens, G.degree, limit=G.order)) == G.order


def is_envelope(space: FolderSpace, folder: Folder) -> bool:
    return space.is_envelope_digits(space.digits_of(folder))


def check_folder(G: PermGroup, folder: Folder, kind: Kind = "rack") -> None:
    od = G.orbit_data
    if len(folder) != len(od.reps):
        raise FolderError(f"expected {len(od.reps)} entries, got {len(folder)}")
    for x, lam in zip(od.reps, folder):
        lam = tuple(lam)
        if lam not in G:
            raise FolderError(f"entry for {x + 1} is not in G")
        stab = od.stabilizer(x)
        if any(compose(lam, h) != compose(h, lam) for h in stab.generators):
            raise FolderError(f"entry {format_cycles(lam)} does not centralize G_{x + 1}")
        if kind == "quandle" and lam[x] != x:
            raise FolderError(f"entry {format_cycles(lam)} does not fix {x + 1}")


def translations(G: PermGroup, folder: Folder) -> list[Perm]:
    """Left translations ``L_y = lambda_x^{g_y}`` for every point ``y``."""
    od = G.orbit_data
    slot = {x: j for j, x in enumerate(od.reps)}
    return [conjugate(tuple(folder[slot[od.rep_of[y]]]), od.transversal[y]) for y in range(G.degree)]


@dataclass(frozen=True)
class MulTable:
    """``table[x][y] = x * y`` on ``{0..n-1}``; row ``x`` is the image array of ``L_x``."""

    table: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "MulTable":
        return cls(tuple(tuple(int(v) for v in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.table)

    def row(self, x: int) -> Perm:
        return self.table[x]

    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.n, self.n)

    def restrict(self, k: int) -> "MulTable":
        return MulTable.from_rows(r[:k] for r in self.table[:k])


def rack_from_envelope(G: PermGroup, folder: Folder, kind: Kind = "rack") -> MulTable:
    """The rack (quandle) whose translations at the representatives are ``folder``."""
    check_folder(G, folder, kind)
    return MulTable.from_rows(translations(G, folder))


def lmlt(t: MulTable) -> PermGroup:
    return PermGroup(t.n, [t.row(x) for x in range(t.n)])


def dis_generators(t: MulTable) -> list[Perm]:
    rows = [t.row(x) for x in range(t.n)]
    invs = [inverse(r) for r in rows]
    return list(dict.fromkeys(compose(invs[x], rows[y]) for x in range(t.n) for y in range(t.n)))


def dis(t: MulTable) -> PermGroup:
    return PermGroup(t.n, dis_generators(t))


def is_left_quasigroup(t: MulTable) -> bool:
    return all(is_perm(r) for r in t.table)


def is_rack(t: MulTable) -> bool:
    if not is_left_quasigroup(t):
        return False
    T = t.array()
    # x*(y*z) == (x*y)*(x*z)
    lhs = T[np.arange(t.n)[:, None, None], T[None, :, :]]
    rhs = T[T[:, :, None], T[:, None, :]]
    return bool(np.array_equal(lhs, rhs))


def envelope_of_rack(t: MulTable) -> tuple[PermGroup, Folder]:
    if not is_rack(t):
        raise NotARack("table is not a rack")
    G = lmlt(t)
    return G, tuple(t.row(x) for x in G.orbit_data.reps)


def extend(G: PermGroup, folder: Folder) -> tuple[PermGroup, Folder]:
    """Add a fixed point ``n`` to an envelope over ``n`` points."""
    space = FolderSpace(G, "rack")
    if not is_envelope(space, folder):
        raise FolderError("not an envelope")
    n = G.degree
    H = PermGroup(n + 1, [tuple(g) + (n,) for g in G.generators])
    return H, tuple(tuple(lam) + (n,) for lam in folder) + (identity(n + 1),)


@dataclass(frozen=True)
class Classification:
    left_quasigroup: bool
    rack: bool
    quandle: bool
    two_reductive: bool
    medial: bool
    lmlt: PermGroup | None
    dis: PermGroup | None


class InconsistentClassification(AssertionError):
    pass


def _commute(gens: Sequence[Perm]) -> bool:
    return all(compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def classify(t: MulTable, with_groups: bool = True) -> Classification:
    """Evaluate the rack/quandle/2-reductive/medial predicates.

    For racks 2-reductivity and mediality are decided twice, by commutativity
    of Lmlt and Dis and by the defining identities, and the two answers must
    agree.
    """
    if not is_left_quasigroup(t):
        return Classification(False, False, False, False, False, None, None)
    n = t.n
    T = t.array()
    rack = is_rack(t)
    quandle = rack and all(T[x, x] == x for x in range(n))
    # (x*u)*v independent of x
    TT = T[T]
    two_red_id = bool((TT == TT[0:1]).all())
    # (x*u)*(v*y) == (x*v)*(u*y)
    M = T[T[:, :, None, None], T[None, None, :, :]]
    medial_id = bool(np.array_equal(M, M.transpose(0, 2, 1, 3)))
    L = D = None
    if rack:
        rows = [t.row(x) for x in range(n)]
        two_red_grp = _commute(list(dict.fromkeys(rows)))
        medial_grp = _commute(dis_generators(t))
        if two_red_grp != two_red_id or medial_grp != medial_id:
            raise InconsistentClassification(
                f"group test (2red={two_red_grp}, medial={medial_grp}) disagrees with "
                f"identity test (2red={two_red_id}, medial={medial_id})"
            )
        if with_groups:
            L, D = lmlt(t), dis(t)
    return Classification(True, rack, quandle, two_red_id, medial_id, L, D)


# -- text formats -------------------------------------------------------------


def format_table(t: MulTable) -> str:
    lines = [str(t.n)] + [" ".join(str(v + 1) for v in row) for row in t.table]
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> MulTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty table")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [int(v) - 1 for v in ln.split()]
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise ValueError(f"bad row: {ln!r}")
        rows.append(row)
    return MulTable.from_rows(rows)


def parse_tables(text: str) -> list[MulTable]:
    """Read consecutive tables as written by :func:`format_table`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    out, k = [], 0
    while k < len(lines):
        n = int(lines[k])
        out.append(parse_table("\n".join(lines[k:k + n + 1])))
        k += n + 1
    return out


def format_envelope(G: PermGroup, folder: Folder) -> str:
    gens = ";".join(format_cycles(g) for g in G.generators) or "()"
    return "\n".join([f"n={G.degree} {gens}"] + [format_cycles(lam) for lam in folder]) + "\n"


def parse_envelope(text: str) -> tuple[PermGroup, Folder]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    head, _, gens = lines[0].partition(" ")
    if not head.startswith("n="):
        raise ValueError("envelope header must start with 'n=<degree>'")
    n = int(head[2:])
    G = PermGroup(n, [parse_cycles(g, n) for g in gens.split(";")] if gens else [])
    folder = tuple(parse_cycles(ln, n) for ln in lines[1:])
    return G, folder
