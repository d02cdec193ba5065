import itertools

import pytest
from hypothesis import given, strategies as st

from rackenum.perm import (
    PermGroup,
    PermParseError,
    center,
    centralizer_in,
    compose,
    conjugate,
    cycle_type,
    format_cycles,
    identity,
    inverse,
    normalizer_in_sym,
    parse_cycles,
    parse_perm,
    perm_order,
)

from conftest import c6, group, s3xs3


def P(text, n):
    return parse_cycles(text, n)


def perms(n):
    return st.permutations(list(range(n))).map(tuple)


def test_compose_examples():
    g = P("(1,2,3)", 3)
    assert compose(identity(3), g) == g
    assert compose(P("(1,2)", 3), P("(1,2)", 3)) == identity(3)
    # 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
    assert compose(P("(1,2)", 3), P("(2,3)", 3)) == P("(1,3,2)", 3)


def test_conjugate_examples():
    g = P("(3,4,5)", 5)
    assert conjugate(g, identity(5)) == g
    assert conjugate(g, P("(4,5)", 5)) == P("(3,5,4)", 5)
    assert conjugate(conjugate(g, P("(1,2)", 5)), P("(1,2)(4,5)", 5)) == P("(3,5,4)", 5)


@given(perms(6), perms(6))
def test_conjugate_is_inverse_sandwich(g, f):
    assert conjugate(g, f) == compose(compose(inverse(f), g), f)
    assert cycle_type(conjugate(g, f)) == cycle_type(g)


@given(perms(7))
def test_text_roundtrip(p):
    assert parse_cycles(format_cycles(p), 7) == p
    assert parse_perm(" ".join(str(i + 1) for i in p)) == p
    assert perm_order(p) == min(k for k in range(1, 13) if all(
        x == y for x, y in zip(_power(p, k), range(7))))


def _power(p, k):
    out = identity(len(p))
    for _ in range(k):
        out = compose(out, p)
    return out


def test_parse_errors():
    with pytest.raises(PermParseError):
        parse_cycles("(1,1)", 3)
    with pytest.raises(PermParseError):
        parse_cycles("(1,4)", 3)
    with pytest.raises(PermParseError):
        parse_perm("1 1 2")


def test_cycles_apply_left_to_right():
    assert parse_cycles("(1,2)(2,3)", 3) == compose(P("(1,2)", 3), P("(2,3)", 3))


def test_orbits_c6():
    od = c6().orbit_data
    assert [sorted(o) for o in od.orbits] == [[0, 1], [2, 3, 4]]
    assert list(od.reps) == [0, 2]


def test_orbits_s3xs3():
    od = s3xs3().orbit_data
    assert [sorted(o) for o in od.orbits] == [[0, 1, 2], [3, 4, 5], [6]]


def test_orbits_trivial():
    od = PermGroup(4, []).orbit_data
    assert list(od.reps) == [0, 1, 2, 3]
    assert all(t == identity(4) for t in od.transversal)


@pytest.mark.parametrize("G", [c6(), s3xs3(), group(4, "(1,2,3,4)", "(1,3)"), PermGroup.symmetric(4)])
def test_transversal_and_orbit_stabilizer(G):
    od = G.orbit_data
    for y in range(G.degree):
        assert od.transversal[y][od.rep_of[y]] == y
    for orbit in od.orbits:
        x = min(orbit)
        assert len(orbit) * od.stabilizer(x).order == G.order


def test_centralizers():
    G = c6()
    assert centralizer_in(G, G.orbit_data.stabilizer(0)) == G
    H = s3xs3()
    assert centralizer_in(H, H.orbit_data.stabilizer(0)) == group(7, "(2,3)")
    assert centralizer_in(H, PermGroup(7, [])) == H


def test_centers():
    assert center(c6()) == c6()
    assert center(PermGroup.symmetric(3)).order == 1
    G1 = group(3, "(2,3)")
    assert center(G1) == G1


def test_normalizers():
    assert normalizer_in_sym(c6()) == c6().join(P("(4,5)", 5))
    G = s3xs3()
    assert normalizer_in_sym(G) == G.join(P("(1,4)(2,5)(3,6)", 7))
    assert normalizer_in_sym(PermGroup(4, [])) == PermGroup.symmetric(4)


def test_normalizer_brute_force():
    for gens in [("(1,2)",), ("(1,2)(3,4)",), ("(1,2,3)",), ("(1,2)", "(3,4)")]:
        G = group(5, *gens)
        want = {f for f in itertools.permutations(range(5))
                if all(conjugate(g, f) in G for g in G.generators)}
        assert normalizer_in_sym(G).element_set == want


def test_normalizer_cap():
    with pytest.raises(ValueError):
        normalizer_in_sym(group(9, "(1,2)"), cap=8)
