"""Counting folder orbits with Burnside's lemma.

For ``f`` in the normalizer the action on folders is encoded by a digraph
with one part per orbit representative (the candidate list) and one edge out
of every vertex: ``lambda_z -> kappa_x`` when ``f`` carries the entry at
``z`` to ``kappa_x`` at ``x``.  A folder is fixed by ``f`` exactly when it is
a union of short cycles, one per cycle of the induced permutation of the
representatives, so ``|Fix(f)|`` is a product of short-cycle counts and no
folder space ever has to be materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .action import ActionTable, precompute_action
from .envelope import FolderSpace
from .perm import Perm, PermGroup, format_cycles


class BurnsideInconsistency(ArithmeticError):
    """The fixed-point sum is not divisible by the group order."""


def induced_perm(G: PermGroup, f: Perm) -> dict[int, int]:
    """Permutation of the orbit representatives induced by ``f`` (0-based points)."""
    od = G.orbit_data
    images = {x: od.rep_of[f[x]] for x in od.reps}
    if sorted(images.values()) != sorted(od.reps):
        raise ValueError("permutation does not normalize G")
    return images


def format_induced(images: dict[int, int]) -> str:
    seen, out = set(), []
    for x in sorted(images):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = images[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = images[y]
        out.append("(" + ",".join(str(p + 1) for p in cyc) + ")")
    return "".join(out)


@dataclass
class FixDigraph:
    space: FolderSpace
    f: Perm
    table: ActionTable
    # edges[slot][vertex] = (target slot, target vertex)
    edges: list[list[tuple[int, int]]]
    slot_perm: list[int]  # slot z -> slot x with edges from part z into part x

    @property
    def parts(self) -> list[tuple[Perm, ...]]:
        return self.space.candidates

    def cycles(self) -> list[list[int]]:
        """Cycles of the induced permutation, as slot lists starting at their minimum."""
        seen, out = set(), []
        for j in range(len(self.slot_perm)):
            if j in seen:
                continue
            cyc = [j]
            seen.add(j)
            k = self.slot_perm[j]
            while k != j:
                cyc.append(k)
                seen.add(k)
                k = self.slot_perm[k]
            out.append(cyc)
        return out

    @property
    def cycle_reps(self) -> list[int]:
        return [c[0] for c in self.cycles()]

    def indegrees(self) -> list[list[int]]:
        deg = [[0] * r for r in self.space.radices]
        for part in self.edges:
            for tj, tv in part:
                deg[tj][tv] += 1
        return deg

    def edge_list(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        return [((j, v), e) for j, part in enumerate(self.edges) for v, e in enumerate(part)]

    def to_dot(self) -> str:
        sp = self.space
        lines = ["digraph fix {", "  rankdir=LR;"]
        for j, x in enumerate(sp.reps):
            lines.append(f"  subgraph cluster_{j} {{")
            lines.append(f'    label="C_G(G_{x + 1})";' if sp.kind == "rack" else f'    label="Z(G_{x + 1})";')
            for v, lam in enumerate(sp.candidates[j]):
                lines.append(f'    v{j}_{v} [label="{format_cycles(lam)}"];')
            lines.append("  }")
        for (j, v), (tj, tv) in self.edge_list():
            lines.append(f"  v{j}_{v} -> v{tj}_{tv};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_fix_digraph(space: FolderSpace, f: Perm, table: ActionTable | None = None) -> FixDigraph:
    table = table or precompute_action(space, tuple(f))
    k = len(space.reps)
    edges: list[list] = [[None] * r for r in space.radices]
    slot_perm = [0] * k
    for x_slot, (z_slot, lut) in enumerate(zip(table.src, table.lookup)):
        slot_perm[z_slot] = x_slot
        for v, w in enumerate(lut):
            edges[z_slot][v] = (x_slot, w)
    return FixDigraph(space, tuple(f), table, edges, slot_perm)


def short_cycle_counts(d: FixDigraph) -> dict[int, int]:
    """gamma per cycle of the induced permutation, keyed by its first slot.

    Tracing from the cycle's first part counts each short cycle once: a walk
    of ``len(cycle)`` steps visits every part of the cycle once and is short
    exactly when it closes up.
    """
    out = {}
    for cyc in d.cycles():
        start, length = cyc[0], len(cyc)
        count = 0
        for v in range(d.space.radices[start]):
            j, w = start, v
            for _ in range(length):
                j, w = d.edges[j][w]
            if w == v:
                count += 1
        out[start] = count
    return out


def short_cycle_counts_matrix(d: FixDigraph) -> dict[int, int]:
    """Same as :func:`short_cycle_counts`, via powers of the adjacency matrix."""
    offsets = np.cumsum((0,) + d.space.radices)
    A = np.zeros((offsets[-1], offsets[-1]), dtype=np.int64)
    for (j, v), (tj, tv) in d.edge_list():
        A[offsets[j] + v, offsets[tj] + tv] = 1
    out = {}
    for cyc in d.cycles():
        start = cyc[0]
        P = np.linalg.matrix_power(A, len(cyc))
        lo, hi = offsets[start], offsets[start + 1]
        out[start] = int(np.trace(P[lo:hi, lo:hi]))
    return out


def fixed_point_count(space: FolderSpace, f: Perm, table: ActionTable | None = None) -> int:
    return prod(short_cycle_counts(build_fix_digraph(space, f, table)).values())


def fixed_point_sum(space: FolderSpace, N: PermGroup) -> int:
    if space.size == 1:
        return N.order
    return sum(fixed_point_count(space, f) for f in N.elements)


def folder_orbit_count(space: FolderSpace, N: PermGroup) -> int:
    """Number of ``N``-orbits on all folders (envelopes or not)."""
    total = fixed_point_sum(space, N)
    q, r = divmod(total, N.order)
    if r:
        raise BurnsideInconsistency(f"fixed-point sum {total} not divisible by |N| = {N.order}")
    return q
