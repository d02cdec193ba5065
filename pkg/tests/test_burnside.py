import pytest

from rackenum.burnside import (
    BurnsideInconsistency,
    build_fix_digraph,
    fixed_point_count,
    folder_orbit_count,
    format_induced,
    induced_perm,
    short_cycle_counts,
    short_cycle_counts_matrix,
)
from rackenum.envelope import FolderSpace
from rackenum.perm import PermGroup, identity, normalizer_in_sym, parse_cycles

from conftest import c6, group, s3xs3
from properties import C6_EDGES, S3S3_EDGES, direct_fix, labelled_edges


def P(text, n):
    return parse_cycles(text, n)


def test_induced():
    assert format_induced(induced_perm(c6(), P("(1,2)(4,5)", 5))) == "(1)(3)"
    assert format_induced(induced_perm(s3xs3(), P("(1,5)(2,4)(3,6)", 7))) == "(1,4)(7)"
    assert format_induced(induced_perm(c6(), identity(5))) == "(1)(3)"


def test_c6_digraph():
    sp = FolderSpace(c6(), "rack")
    d = build_fix_digraph(sp, P("(1,2)(4,5)", 5))
    assert labelled_edges(d) == C6_EDGES
    assert short_cycle_counts(d) == {0: 2, 1: 2}
    assert fixed_point_count(sp, d.f) == 4 == direct_fix(sp, d.f)


def test_s3xs3_digraph():
    sp = FolderSpace(s3xs3(), "rack")
    d = build_fix_digraph(sp, P("(1,5)(2,4)(3,6)", 7))
    assert labelled_edges(d) == S3S3_EDGES
    assert short_cycle_counts(d) == {0: 2, 2: 1}
    assert fixed_point_count(sp, d.f) == 2 == direct_fix(sp, d.f)


def test_identity_gives_loops():
    sp = FolderSpace(s3xs3(), "rack")
    d = build_fix_digraph(sp, identity(7))
    assert all(e == (j, v) for (j, v), e in d.edge_list())
    assert short_cycle_counts(d) == {j: r for j, r in enumerate(sp.radices)}
    assert fixed_point_count(sp, identity(7)) == sp.size


def test_matrix_method_agrees():
    for G in (c6(), s3xs3(), group(6, "(1,2)", "(3,4)", "(5,6)")):
        sp = FolderSpace(G, "rack")
        for f in normalizer_in_sym(G).elements:
            d = build_fix_digraph(sp, f)
            assert short_cycle_counts(d) == short_cycle_counts_matrix(d)


def test_orbit_counts():
    assert folder_orbit_count(FolderSpace(PermGroup(3, []), "rack"), PermGroup.symmetric(3)) == 1
    G = group(3, "(1,2,3)")
    assert folder_orbit_count(FolderSpace(G, "rack"), normalizer_in_sym(G)) == 2


def test_non_divisible_sum_raises():
    # a set of permutations that is not the full normalizer breaks divisibility
    G = group(3, "(1,2,3)")
    fake = PermGroup.from_elements(3, [identity(3), P("(1,2)", 3), P("(1,2,3)", 3)])
    with pytest.raises(BurnsideInconsistency):
        folder_orbit_count(FolderSpace(G, "rack"), fake)


def test_dot_export():
    d = build_fix_digraph(FolderSpace(c6(), "rack"), P("(1,2)(4,5)", 5))
    dot = d.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 12
