import itertools

import pytest

from rackenum.envelope import MulTable, classify, rack_from_envelope
from rackenum.oracle import canonical_form, enumerate_raw, oracle_classes, table_from_form
from rackenum.perm import PermGroup, parse_cycles


def relabel(t, f):
    n = t.n
    rows = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            rows[f[x]][f[y]] = f[t.table[x][y]]
    return MulTable.from_rows(rows)


def naive_racks(n, quandle=False):
    """Every rack by scanning all n!^n row choices (n <= 3)."""
    out = []
    for rows in itertools.product(itertools.permutations(range(n)), repeat=n):
        if quandle and any(rows[x][x] != x for x in range(n)):
            continue
        if all(rows[x][rows[y][z]] == rows[rows[x][y]][rows[x][z]]
               for x in range(n) for y in range(n) for z in range(n)):
            out.append(MulTable.from_rows(rows))
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("kind", ["rack", "quandle"])
def test_backtracking_matches_naive_scan(n, kind):
    assert set(enumerate_raw(n, kind)) == set(naive_racks(n, kind == "quandle"))


def test_small_class_counts():
    assert len(oracle_classes(1, "rack")) == 1
    assert len(oracle_classes(2, "rack")) == 2
    assert len(oracle_classes(3, "quandle")) == 3


def test_n4():
    assert len(oracle_classes(4, "rack")) == 19
    qs = oracle_classes(4, "quandle")
    flags = [classify(t) for t in qs]
    assert (len(qs), sum(c.medial for c in flags), sum(c.two_reductive for c in flags)) == (7, 6, 5)


def test_n5_quandles():
    assert len(oracle_classes(5, "quandle")) == 22


def test_canonical_form():
    proj = MulTable.from_rows([[0, 1, 2]] * 3)
    assert table_from_form(canonical_form(proj)) == proj
    d = rack_from_envelope(PermGroup.symmetric(3), (parse_cycles("(2,3)", 3),), "quandle")
    forms = {canonical_form(relabel(d, f)) for f in itertools.permutations(range(3))}
    assert len(forms) == 1
    assert forms != {canonical_form(proj)}


def test_canonical_form_is_minimal_relabelling():
    d = rack_from_envelope(PermGroup.symmetric(3), (parse_cycles("(2,3)", 3),), "quandle")
    flat = min(bytes(v for row in relabel(d, f).table for v in row) for f in itertools.permutations(range(3)))
    assert canonical_form(d) == flat


def test_caps():
    with pytest.raises(ValueError):
        next(enumerate_raw(6, "rack"))
    with pytest.raises(ValueError):
        next(enumerate_raw(7, "quandle"))
