"""Brute-force ground truth for small orders.

Racks and quandles on ``{0..n-1}`` are built one row of the multiplication
table at a time.  Self-distributivity ``x*(y*z) = (x*y)*(x*z)`` says that
once rows ``x`` and ``y`` are placed, row ``x*y`` is forced, so every
placement is propagated and contradictions prune the search.  Isomorphism
classes are then separated by a canonical form: the smallest relabelled
table over all ``n!`` relabellings.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Iterator

import numpy as np

from .envelope import Kind, MulTable, check_kind, is_rack

RACK_CAP = 5
QUANDLE_CAP = 6


def _forced_row(rows, x: int, y: int) -> tuple[int, ...]:
    # (x*y)*(x*z) = x*(y*z), and z -> x*z is onto
    rx, ry = rows[x], rows[y]
    out = [0] * len(rx)
    for z in range(len(rx)):
        out[rx[z]] = rx[ry[z]]
    return tuple(out)


def _propagate(rows: list, quandle: bool) -> bool:
    """Fill forced rows; False on contradiction."""
    changed = True
    while changed:
        changed = False
        placed = [x for x, r in enumerate(rows) if r is not None]
        for x in placed:
            for y in placed:
                t = rows[x][y]
                req = _forced_row(rows, x, y)
                if rows[t] is None:
                    if quandle and req[t] != t:
                        return False
                    rows[t] = req
                    changed = True
                elif rows[t] != req:
                    return False
            if changed:
                break
    return True


def enumerate_raw(n: int, kind: Kind, cap: int | None = None) -> Iterator[MulTable]:
    """Every rack (quandle) on ``n`` points exactly once."""
    kind = check_kind(kind)
    quandle = kind == "quandle"
    limit = cap if cap is not None else (QUANDLE_CAP if quandle else RACK_CAP)
    if n > limit:
        raise ValueError(f"brute force limited to n <= {limit} for {kind}s")
    choices = list(permutations(range(n)))

    def search(rows):
        try:
            x = rows.index(None)
        except ValueError:
            t = MulTable.from_rows(rows)
            if is_rack(t):
                yield t
            return
        for r in choices:
            if quandle and r[x] != x:
                continue
            nxt = list(rows)
            nxt[x] = r
            if _propagate(nxt, quandle):
                yield from search(nxt)

    yield from search([None] * n)


def _relabellings(n: int) -> tuple[np.ndarray, np.ndarray]:
    P = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    Pinv = np.argsort(P, axis=1)
    return P, Pinv


_PERM_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def canonical_form(t: MulTable) -> bytes:
    """Lexicographically least flattened table over all relabellings.

    Relabelling by ``f`` gives ``f(x) o f(y) = f(x * y)``.
    """
    n = t.n
    if n not in _PERM_CACHE:
        _PERM_CACHE[n] = _relabellings(n)
    P, Pinv = _PERM_CACHE[n]
    T = t.array()
    k = np.arange(len(P))[:, None, None]
    # R[k, a, b] = f_k(T[f_k^-1(a), f_k^-1(b)])
    R = P[k, T[Pinv[:, :, None], Pinv[:, None, :]]].reshape(len(P), n * n)
    order = np.lexsort(R.T[::-1])
    return R[order[0]].astype(np.uint8).tobytes()


def table_from_form(form: bytes) -> MulTable:
    n = int(round(len(form) ** 0.5))
    return MulTable.from_rows(np.frombuffer(form, dtype=np.uint8).reshape(n, n))


def reduce_up_to_iso(tables: Iterable[MulTable]) -> list[MulTable]:
    """One representative per isomorphism class, sorted by canonical form."""
    forms = {canonical_form(t) for t in tables}
    return [table_from_form(f) for f in sorted(forms)]


def oracle_classes(n: int, kind: Kind) -> list[MulTable]:
    return reduce_up_to_iso(enumerate_raw(n, kind))
