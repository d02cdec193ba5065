"""Permutations and small permutation groups.

A permutation of degree ``n`` is a tuple ``p`` of length ``n`` holding the
0-based images: point ``i`` is sent to ``p[i]``.  Groups act on the right,
so :func:`compose` applies its left operand first and ``conjugate(g, f)`` is
``f^-1 g f``.  Text I/O is 1-based (image arrays ``"3 1 2"`` or cycle
notation ``"(1,2)(3,4,5)"``).

Everything here is meant for degrees up to about 8, where full element
lists are cheap to materialise.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from math import lcm
from typing import Iterable, Sequence

Perm = tuple

DEFAULT_NORMALIZER_CAP = 8


class DegreeMismatch(ValueError):
    pass


class PermParseError(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def is_perm(images: Sequence[int]) -> bool:
    return sorted(images) == list(range(len(images)))


def compose(a: Perm, b: Perm) -> Perm:
    """Return the permutation ``i -> b(a(i))`` (``a`` first, then ``b``)."""
    if len(a) != len(b):
        raise DegreeMismatch(f"degrees {len(a)} and {len(b)} differ")
    return tuple([b[x] for x in a])


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(g: Perm, f: Perm) -> Perm:
    """Return ``g^f = f^-1 g f``; relabels the cycles of ``g`` through ``f``."""
    if len(g) != len(f):
        raise DegreeMismatch(f"degrees {len(g)} and {len(f)} differ")
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[f[i]] = f[x]
    return tuple(out)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles of ``p`` (0-based), each starting at its minimum."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def perm_order(p: Perm) -> int:
    return lcm(*(len(c) for c in cycles(p))) if not is_identity(p) else 1


def format_cycles(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


def format_images(p: Perm) -> str:
    return " ".join(str(x + 1) for x in p)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation such as ``"(1,2)(3,4,5)"`` into a degree-``n`` perm."""
    s = text.strip().replace(" ", "")
    if not s:
        raise PermParseError("empty permutation")
    if _CYCLE_RE.sub("", s):
        raise PermParseError(f"malformed cycle notation: {text!r}")
    img = list(range(n))
    for body in _CYCLE_RE.findall(s):
        if not body:
            continue
        try:
            pts = [int(t) - 1 for t in body.split(",")]
        except ValueError:
            raise PermParseError(f"bad point in {text!r}") from None
        if len(set(pts)) != len(pts):
            raise PermParseError(f"repeated point in cycle ({body})")
        for x in pts:
            if not 0 <= x < n:
                raise PermParseError(f"point {x + 1} outside 1..{n}")
        # apply cycle after what has been read so far (left to right)
        step = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a] = b
        img = [step[x] for x in img]
    return tuple(img)


def parse_images(text: str) -> Perm:
    try:
        images = tuple(int(t) - 1 for t in text.split())
    except ValueError:
        raise PermParseError(f"bad image array: {text!r}") from None
    if not images or not is_perm(images):
        raise PermParseError(f"not a permutation: {text!r}")
    return images


def parse_perm(text: str, n: int | None = None) -> Perm:
    """Accept either cycle notation or a 1-based image array."""
    s = text.strip()
    if s.startswith("("):
        if n is None:
            pts = [int(t) for t in re.findall(r"\d+", s)]
            n = max(pts, default=1)
        return parse_cycles(s, n)
    p = parse_images(s)
    if n is not None and len(p) != n:
        raise DegreeMismatch(f"expected degree {n}, got {len(p)}")
    return p


def closure(gens: Iterable[Perm], n: int, limit: int | None = None) -> set[Perm]:
    """Elements of the group generated by ``gens``.

    Stops early once more than ``limit`` elements are found, which is
    enough to decide "does this generate the whole group" questions.
    """
    gens = [g for g in dict.fromkeys(gens) if not is_identity(g)]
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple([g[x] for x in a])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if limit is not None and len(seen) > limit:
            break
        frontier = nxt
    return seen


def extend_closure(H: Iterable[Perm], gens: Sequence[Perm], new: Perm) -> set[Perm]:
    """Elements of ``<H, new>`` given the elements and generators of a group ``H``.

    Builds the result as a union of cosets ``H e``, so only coset
    representatives get multiplied by generators.
    """
    H = list(H)
    elements = set(H)
    if new in elements:
        return elements
    gens = list(gens) + [new]
    reps = [identity(len(new))]
    k = 0
    while k < len(reps):
        g = reps[k]
        k += 1
        for s in gens:
            e = tuple([s[x] for x in g])
            if e not in elements:
                elements.update(tuple([e[x] for x in h]) for h in H)
                reps.append(e)
    return elements


def small_generating_set(elements: Sequence[Perm], n: int) -> list[Perm]:
    """Greedy generating set: walk ``elements`` in order, keep what is new."""
    gens: list[Perm] = []
    span = {identity(n)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = closure(gens, n)
            if len(span) == len(elements):
                break
    return gens


class PermGroup:
    """A permutation group given by generators; elements are computed lazily.

    Two groups compare equal when they have the same degree and element set.
    """

    def __init__(self, n: int, generators: Iterable[Perm] = (), *, _elements=None):
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != n:
                raise DegreeMismatch(f"generator of degree {len(g)} in degree-{n} group")
            if not is_perm(g):
                raise ValueError(f"not a permutation: {g}")
            gens.append(g)
        self.degree = n
        self.generators: tuple[Perm, ...] = tuple(dict.fromkeys(gens))
        if _elements is not None:
            self.__dict__["element_set"] = frozenset(_elements)

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[Perm]) -> "PermGroup":
        """Wrap a set already known to be a group; picks a small generating set."""
        elems = tuple(sorted(elements))
        G = cls(n, small_generating_set(elems, n), _elements=elems)
        G.__dict__["elements"] = elems
        return G

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        return cls(n, [], _elements=tuple(permutations(range(n)))).with_generators()

    def join(self, g: Perm) -> "PermGroup":
        """``<self, g>``, with elements built by coset extension."""
        elems = extend_closure(self.element_set, self.generators, tuple(g))
        return PermGroup(self.degree, self.generators + (tuple(g),), _elements=elems)

    def with_generators(self) -> "PermGroup":
        if not self.generators and self.order > 1:
            self.generators = tuple(small_generating_set(self.elements, self.degree))
        return self

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        """All elements, sorted by image tuple."""
        return tuple(sorted(self.element_set))

    @cached_property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(closure(self.generators, self.degree))

    @property
    def order(self) -> int:
        return len(self.element_set)

    @cached_property
    def index_of(self) -> dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.element_set

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.element_set == other.element_set

    def __hash__(self) -> int:
        return hash((self.degree, self.element_set))

    def __repr__(self) -> str:
        gens = ", ".join(format_cycles(g) for g in self.generators) or "()"
        return f"PermGroup({self.degree}, <{gens}>, order={self.order})"

    @cached_property
    def is_abelian(self) -> bool:
        gs = self.generators
        return all(compose(a, b) == compose(b, a) for i, a in enumerate(gs) for b in gs[i + 1:])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def conjugate_by(self, f: Perm) -> "PermGroup":
        return PermGroup(
            self.degree,
            [conjugate(g, f) for g in self.generators],
            _elements=[conjugate(g, f) for g in self.elements],
        )

    def conjugacy_class(self, p: Perm) -> frozenset[Perm]:
        """``p^G`` for ``p`` in the ambient symmetric group."""
        return frozenset(conjugate(p, g) for g in self.elements)

    @cached_property
    def orbit_data(self) -> "OrbitData":
        return orbit_data(self)

    @cached_property
    def invariant_key(self) -> tuple:
        """Cheap conjugacy invariant: order, orbit sizes, element cycle-type histogram."""
        od = self.orbit_data
        sizes = tuple(sorted(len(o) for o in od.orbits))
        hist = tuple(sorted(Counter(cycle_type(g) for g in self.elements).items()))
        return (self.order, sizes, hist)


@dataclass
class OrbitData:
    orbits: list[tuple[int, ...]]
    reps: list[int]
    rep_of: list[int]
    transversal: list[Perm]
    group: PermGroup = field(repr=False)
    _stabilizers: dict = field(default_factory=dict, repr=False)

    def stabilizer(self, x: int) -> PermGroup:
        if x not in self._stabilizers:
            G = self.group
            self._stabilizers[x] = PermGroup.from_elements(
                G.degree, (g for g in G.elements if g[x] == x)
            )
        return self._stabilizers[x]

    @property
    def stabilizers(self) -> dict[int, PermGroup]:
        return {x: self.stabilizer(x) for x in self.reps}


def orbit_data(G: PermGroup) -> OrbitData:
    """Orbits with minimal representatives and a BFS transversal.

    ``transversal[y]`` maps the representative of ``y``'s orbit to ``y``;
    generators are tried in list order and the first discovery wins.
    """
    n = G.degree
    e = identity(n)
    rep_of = [-1] * n
    transversal: list = [None] * n
    orbits, reps = [], []
    for x in range(n):
        if rep_of[x] >= 0:
            continue
        rep_of[x] = x
        transversal[x] = e
        orbit = [x]
        queue = deque([x])
        while queue:
            p = queue.popleft()
            for g in G.generators:
                q = g[p]
                if rep_of[q] < 0:
                    rep_of[q] = x
                    transversal[q] = compose(transversal[p], g)
                    orbit.append(q)
                    queue.append(q)
        orbits.append(tuple(sorted(orbit)))
        reps.append(x)
    return OrbitData(orbits, reps, rep_of, transversal, G)


def centralizer_in(G: PermGroup, H: PermGroup | Iterable[Perm]) -> PermGroup:
    """Elements of ``G`` commuting with every generator of ``H``."""
    hs = H.generators if isinstance(H, PermGroup) else tuple(H)
    for h in hs:
        if len(h) != G.degree:
            raise DegreeMismatch("centralizer of a set of different degree")
    elems = [g for g in G.elements if all(compose(g, h) == compose(h, g) for h in hs)]
    return PermGroup.from_elements(G.degree, elems)


def center(G: PermGroup) -> PermGroup:
    return centralizer_in(G, G)


def normalizer_in_sym(
    G: PermGroup,
    cap: int = DEFAULT_NORMALIZER_CAP,
    generators: Iterable[Perm] | None = None,
) -> PermGroup:
    """``N_{S_n}(G)`` by a pruned scan of ``S_n``.

    Beyond ``cap`` points the scan is refused and ``generators`` (computed
    elsewhere) must be passed in.
    """
    n = G.degree
    if generators is not None:
        N = PermGroup(n, generators)
        if not G.is_subgroup_of(N):
            N = PermGroup(n, list(N.generators) + list(G.generators))
        return N
    if n > cap:
        raise ValueError(f"degree {n} exceeds normalizer scan cap {cap}; supply generators")
    if G.order == 1:
        return PermGroup.symmetric(n)
    gens = G.generators
    members = G.element_set
    od = G.orbit_data
    size_of = [len(od.orbits[od.reps.index(r)]) for r in od.rep_of]
    elems = []
    for f in permutations(range(n)):
        # a normalizing f maps each orbit onto an orbit of the same size
        if any(size_of[f[x]] != size_of[x] for x in range(n)):
            continue
        if all(conjugate(g, f) in members for g in gens):
            elems.append(f)
    return PermGroup.from_elements(n, elems)
