"""Exhaustive structural checks over one folder space and its normalizer.

Each check raises AssertionError with a short reason on the first failure.
"""

import numpy as np

from rackenum.action import apply_normalizer, image_positions, precompute_action
from rackenum.burnside import build_fix_digraph, induced_perm, short_cycle_counts, short_cycle_counts_matrix
from rackenum.envelope import FolderSpace, classify, element_at, is_envelope, position_of, rack_from_envelope
from rackenum.perm import compose, format_cycles, identity, normalizer_in_sym

from conftest import catalog

SIZE_LIMIT = 10**4


def small_spaces(max_n=5):
    """Every (space, N) in the catalogs for n <= max_n with size <= SIZE_LIMIT."""
    for n in range(1, max_n + 1):
        for sc in catalog(n):
            N = normalizer_in_sym(sc.group)
            for kind in ("rack", "quandle"):
                sp = FolderSpace(sc.group, kind)
                if sp.size <= SIZE_LIMIT:
                    yield sp, N


def images(space, N):
    return {f: image_positions(space, precompute_action(space, f)) for f in N.elements}


def check_index_roundtrip(space, N=None):
    for i in range(1, space.size + 1):
        assert position_of(space, element_at(space, i)) == i, "index roundtrip"


def check_action_axioms(space, N):
    img = images(space, N)
    n = space.degree
    assert np.array_equal(img[identity(n)], np.arange(space.size)), "identity acts trivially"
    for f, pf in img.items():
        assert len(set(pf.tolist())) == space.size, "action is a bijection"
        for i0 in range(space.size):
            want = position_of(space, apply_normalizer(space, f, element_at(space, i0 + 1)))
            assert pf[i0] + 1 == want, "table agrees with the action formula"
    for f, pf in img.items():
        for g, pg in img.items():
            # right action: folder.(fg) = (folder.f).g
            assert np.array_equal(img[compose(f, g)], pg[pf]), "compatibility"


def check_envelope_invariance(space, N):
    env = np.array([is_envelope(space, element_at(space, i)) for i in range(1, space.size + 1)])
    for pf in images(space, N).values():
        assert np.array_equal(env[pf], env), "envelopes map to envelopes"


def check_digraph(space, N):
    one = identity(space.degree)
    id_slot = [cs.index(one) for cs in space.candidates]
    for f, pf in images(space, N).items():
        d = build_fix_digraph(space, f)
        indeg = d.indegrees()
        assert all(v == 1 for part in indeg for v in part), "indegree 1"
        assert all(len(part) == r for part, r in zip(d.edges, space.radices)), "outdegree 1"
        bar = induced_perm(space.group, f)
        for j, x in enumerate(space.reps):
            # edges leave part z only towards the part of z.f
            assert all(tj == space.rep_slot[bar[x]] for tj, _ in d.edges[j]), "edges follow f-bar"
            tj, tv = d.edges[j][id_slot[j]]
            assert tv == id_slot[tj], "identity goes to identity"
        gamma = short_cycle_counts(d)
        assert gamma == short_cycle_counts_matrix(d), "trace and matrix counts agree"
        fixed = int((pf == np.arange(space.size)).sum())
        assert int(np.prod(list(gamma.values()))) == fixed, "product of gammas is |Fix|"


def check_tables(space, N=None):
    """Idempotence for quandle folders, 2-reductive implies medial for all folders."""
    G = space.group
    n = space.degree
    for i in range(1, space.size + 1):
        t = rack_from_envelope(G, element_at(space, i), space.kind)
        c = classify(t, with_groups=False)
        assert c.rack, "folder table is a rack"
        if space.kind == "quandle":
            assert c.quandle, "quandle folder table is idempotent"
            T = t.table
            ident = all(T[T[x][y]][y] == y for x in range(n) for y in range(n))
            assert c.two_reductive == ident, "2-reductive iff (x*y)*y = y"
        assert c.medial or not c.two_reductive, "2-reductive implies medial"


def labelled_edges(d):
    """Edges as (rep, candidate) -> (rep, candidate), 1-based reps, cycle notation."""
    sp = d.space
    out = set()
    for (j, v), (tj, tv) in d.edge_list():
        out.add(((sp.reps[j] + 1, format_cycles(sp.candidates[j][v])),
                 (sp.reps[tj] + 1, format_cycles(sp.candidates[tj][tv]))))
    return out


def direct_fix(space, f):
    return sum(
        1 for i in range(1, space.size + 1)
        if apply_normalizer(space, f, element_at(space, i)) == element_at(space, i)
    )


# the two worked fixed-point digraphs, as (rep, candidate) -> (rep, candidate)
_C6_PAIRS = [("()", "()"), ("(1,2)", "(1,2)"),
             ("(3,4,5)", "(3,5,4)"), ("(3,5,4)", "(3,4,5)"),
             ("(1,2)(3,4,5)", "(1,2)(3,5,4)"), ("(1,2)(3,5,4)", "(1,2)(3,4,5)")]
C6_EDGES = {((part, a), (part, b)) for part in (1, 3) for a, b in _C6_PAIRS}

S3S3_EDGES = {
    ((1, "()"), (4, "()")), ((4, "()"), (1, "()")),
    ((1, "(2,3)"), (4, "(5,6)")), ((4, "(5,6)"), (1, "(2,3)")),
    ((7, "()"), (7, "()")),
}


CHECKS = {
    "action axioms": check_action_axioms,
    "envelope invariance": check_envelope_invariance,
    "digraph invariants": check_digraph,
    "index roundtrip": check_index_roundtrip,
    "quandle idempotence and 2-reductive => medial": check_tables,
}
