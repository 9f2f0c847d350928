"""Finite simplicial complexes with simplicial actions of finite groups.

Simplices are strictly increasing vertex tuples; the orientation of a simplex
is its sorted order. Vertex labels are ``0..num_vertices-1``; a label need not
occur in the complex (subcomplexes keep their parent's labels).

Barycentric subdivision numbers the new vertices by (dimension, lex order) of
the simplices they come from, so every simplex of ``sd X`` lists its vertices
along the inclusion flag. Group actions preserve that order, which makes
orientation signs of the induced action trivial after one subdivision.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .algebra import IntChainComplex, simplicial_chain_complex
from .groups import FiniteGroup, Perm, Subgroup, compose, trivial_group, weyl_group

Simplex = tuple[int, ...]

DEFAULT_MAX_SIMPLICES = 2_000_000


class ComplexError(ValueError):
    pass


class SimplexCapExceeded(ComplexError):
    pass


def faces(s: Simplex) -> Iterable[Simplex]:
    """All nonempty faces of ``s`` (including ``s``)."""
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


def closure(facets: Iterable[Sequence[int]]) -> set[Simplex]:
    out: set[Simplex] = set()
    for f in facets:
        f = tuple(sorted(set(f)))
        if f and f not in out:
            out.update(faces(f))
    return out


def _by_dim(simplices: Iterable[Simplex]) -> tuple[tuple[Simplex, ...], ...]:
    layers: dict[int, list[Simplex]] = {}
    for s in simplices:
        layers.setdefault(len(s) - 1, []).append(s)
    if not layers:
        return ()
    top = max(layers)
    return tuple(tuple(sorted(layers.get(d, []))) for d in range(top + 1))


def perm_sign_of_sort(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (distinct entries)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def act_on_simplex(perm: Perm, s: Simplex) -> tuple[int, Simplex]:
    """Image of an oriented simplex: ``g·[v0..vn] = sign * [sorted image]``."""
    img = [perm[v] for v in s]
    return perm_sign_of_sort(img), tuple(sorted(img))


@dataclass(frozen=True, eq=False)
class GComplex:
    """A finite abstract simplicial complex with a simplicial group action.

    ``action[g]`` is the vertex permutation of group element ``g`` (indices of
    ``group.elements``). ``vertex_origin`` is set by :func:`sd` and records the
    simplex of the parent complex each vertex is the barycenter of.
    """

    num_vertices: int
    simplices: tuple[tuple[Simplex, ...], ...]
    group: FiniteGroup
    action: tuple[Perm, ...]
    vertex_origin: tuple[Simplex, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.action) != self.group.order:
            raise ComplexError("one vertex permutation per group element is required")
        for p in self.action:
            if len(p) != self.num_vertices:
                raise ComplexError("action permutations must have length num_vertices")
        simplex_set = self.simplex_set
        for layer in self.simplices[1:]:
            for s in layer:
                for k in range(len(s)):
                    if s[:k] + s[k + 1:] not in simplex_set:
                        raise ComplexError(f"not face-closed: {s} is missing a facet")
        for p in self.action:
            for layer in self.simplices:
                for s in layer:
                    if tuple(sorted(p[v] for v in s)) not in simplex_set:
                        raise ComplexError(f"action is not simplicial: image of {s} is not a simplex")
        G = self.group
        for a in range(G.order):
            pa = self.action[a]
            for b in range(G.order):
                if self.action[G.mult[a][b]] != compose(pa, self.action[b]):
                    raise ComplexError("vertex action is not a homomorphism")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_generators(cls, num_vertices: int, simplices: Iterable[Sequence[int]], group: FiniteGroup,
                        generator_actions: Sequence[Sequence[int]] | None = None, *,
                        close: bool = True, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> "GComplex":
        """Build from (maximal) simplices and one vertex permutation per group generator."""
        simp = closure(simplices) if close else {tuple(sorted(s)) for s in simplices}
        if len(simp) > max_simplices:
            raise SimplexCapExceeded(f"{len(simp)} simplices exceed cap {max_simplices}")
        ident = tuple(range(num_vertices))
        if generator_actions is None:
            generator_actions = [ident] * len(group.generators)
        if len(generator_actions) != len(group.generators):
            raise ComplexError("need one vertex permutation per group generator")
        gens = [tuple(int(x) for x in p) for p in generator_actions]
        for p in gens:
            if sorted(p) != list(range(num_vertices)):
                raise ComplexError(f"generator action {list(p)} is not a permutation of the vertices")
        act: dict[int, Perm] = {group.identity: ident}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for gi, g in enumerate(group.generators):
                    y = group.mult[x][g]
                    if y not in act:
                        act[y] = compose(act[x], gens[gi])
                        nxt.append(y)
            frontier = nxt
        return cls(num_vertices, _by_dim(simp), group, tuple(act[i] for i in range(group.order)))

    @classmethod
    def trivial_action(cls, num_vertices: int, simplices: Iterable[Sequence[int]],
                       group: FiniteGroup | None = None) -> "GComplex":
        group = group or trivial_group()
        return cls.from_generators(num_vertices, simplices, group)

    @classmethod
    def empty(cls, group: FiniteGroup | None = None) -> "GComplex":
        group = group or trivial_group()
        return cls(0, (), group, tuple(() for _ in range(group.order)))

    # -- basic queries -----------------------------------------------------

    @cached_property
    def simplex_set(self) -> frozenset[Simplex]:
        return frozenset(s for layer in self.simplices for s in layer)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def is_empty(self) -> bool:
        return not self.simplices

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.simplices)

    @property
    def num_simplices(self) -> int:
        return sum(self.f_vector)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices[0]) if self.simplices else ()

    def act(self, g: int, s: Simplex) -> tuple[int, Simplex]:
        return act_on_simplex(self.action[g], s)

    def image(self, g: int, s: Simplex) -> Simplex:
        p = self.action[g]
        return tuple(sorted(p[v] for v in s))

    def simplex_stabilizer(self, s: Simplex) -> tuple[int, ...]:
        """Pointwise stabilizer (elements fixing every vertex of ``s``)."""
        return tuple(g for g, p in enumerate(self.action) if all(p[v] == v for v in s))

    def setwise_stabilizer(self, s: Simplex) -> tuple[int, ...]:
        return tuple(g for g in range(self.group.order) if self.image(g, s) == s)

    @cached_property
    def chain_complex(self) -> IntChainComplex:
        return simplicial_chain_complex(self.simplices)

    def is_invariant(self, simplices: Iterable[Simplex], elements: Iterable[int] | None = None) -> bool:
        simplices = set(simplices)
        els = range(self.group.order) if elements is None else elements
        return all(self.image(g, s) in simplices for g in els for s in simplices)

    @cached_property
    def regularity(self) -> "RegularityReport":
        return validate(self)

    def whole(self) -> "Subcomplex":
        return Subcomplex(self, self.simplex_set)

    def empty_sub(self) -> "Subcomplex":
        return Subcomplex(self, frozenset())

    def subcomplex(self, simplices: Iterable[Sequence[int]]) -> "Subcomplex":
        """Face closure of the given simplices, as a subcomplex."""
        sc = frozenset(closure(simplices))
        if not sc <= self.simplex_set:
            raise ComplexError("not a subcomplex: some simplices are missing from the parent")
        return Subcomplex(self, sc)

    def with_group(self, group: FiniteGroup, action: Sequence[Perm]) -> "GComplex":
        return GComplex(self.num_vertices, self.simplices, group, tuple(action), self.vertex_origin)

    def compact(self) -> tuple["GComplex", dict[int, int]]:
        """Relabel the used vertices to ``0..k-1``; returns the new complex and the relabeling."""
        used = self.vertices
        new = {v: i for i, v in enumerate(used)}
        act = tuple(tuple(new[p[v]] for v in used) for p in self.action)
        simp = [tuple(new[v] for v in s) for layer in self.simplices for s in layer]
        return GComplex(len(used), _by_dim(simp), self.group, act), new

    def to_json(self) -> dict:
        gens = self.group.generators
        return {"vertices": self.num_vertices,
                "simplices": [list(s) for s in self.facets()],
                "action": [list(self.action[g]) for g in gens]}

    def facets(self) -> list[Simplex]:
        out = []
        for d, layer in enumerate(self.simplices):
            above = set()
            if d + 1 < len(self.simplices):
                for t in self.simplices[d + 1]:
                    for k in range(len(t)):
                        above.add(t[:k] + t[k + 1:])
            out.extend(s for s in layer if s not in above)
        return sorted(out, key=lambda s: (len(s), s))

    def __repr__(self) -> str:
        return f"GComplex(dim={self.dim}, f={self.f_vector}, |G|={self.group.order})"


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """A face-closed set of simplices of ``parent``."""

    parent: GComplex
    simplex_set: frozenset[Simplex]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subcomplex) and self.simplex_set == other.simplex_set

    def __hash__(self):
        return hash(self.simplex_set)

    def __contains__(self, s: Simplex) -> bool:
        return s in self.simplex_set

    def __len__(self) -> int:
        return len(self.simplex_set)

    def __le__(self, other: "Subcomplex") -> bool:
        return self.simplex_set <= other.simplex_set

    def __and__(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.simplex_set & other.simplex_set)

    def __or__(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.simplex_set | other.simplex_set)

    def is_empty(self) -> bool:
        return not self.simplex_set

    @cached_property
    def simplices(self) -> tuple[tuple[Simplex, ...], ...]:
        return _by_dim(self.simplex_set)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def is_face_closed(self) -> bool:
        s = self.simplex_set
        return all(t[:k] + t[k + 1:] in s for t in s if len(t) > 1 for k in range(len(t)))

    def is_invariant(self, elements: Iterable[int] | None = None) -> bool:
        return self.parent.is_invariant(self.simplex_set, elements)

    def as_complex(self, group: FiniteGroup | None = None, action: Sequence[Perm] | None = None) -> GComplex:
        """The subcomplex as a :class:`GComplex` (same vertex labels, parent's action)."""
        if group is None:
            if not self.is_invariant():
                raise ComplexError("subcomplex is not invariant under the group")
            group, action = self.parent.group, self.parent.action
        return GComplex(self.parent.num_vertices, self.simplices, group, tuple(action),
                        self.parent.vertex_origin)

    @cached_property
    def chain_complex(self) -> IntChainComplex:
        return simplicial_chain_complex(self.simplices)


@dataclass(frozen=True)
class RegularityReport:
    fixed_sets_full: bool
    pointwise_fixing: bool
    quotient_safe: bool

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return self.fixed_sets_full, self.pointwise_fixing, self.quotient_safe


def validate(X: GComplex) -> RegularityReport:
    """Exhaustive regularity scan.

    ``fixed_sets_full``: for every subgroup ``H``, each simplex that ``H``
    stabilizes setwise is fixed pointwise, so the geometric ``X^H`` is the full
    subcomplex on the ``H``-fixed vertices. It suffices to check cyclic
    subgroups, i.e. single elements, which makes it coincide with
    ``pointwise_fixing``; both scans are kept separate anyway.
    ``quotient_safe``: the vertices of every simplex lie in distinct orbits and
    a simplex orbit is determined by its set of vertex orbits.
    """
    from .groups import all_subgroups

    G = X.group
    pointwise = True
    for g in range(G.order):
        p = X.action[g]
        for layer in X.simplices[1:]:
            for s in layer:
                img = tuple(sorted(p[v] for v in s))
                if img == s and any(p[v] != v for v in s):
                    pointwise = False
                    break
            if not pointwise:
                break
        if not pointwise:
            break

    fixed_full = True
    if G.order <= 120:
        subgroups = all_subgroups(G)
    else:
        subgroups = [G.subgroup_generated([g]) for g in range(G.order)]
    for H in subgroups:
        for layer in X.simplices[1:]:
            for s in layer:
                if all(X.image(h, s) == s for h in H.members) and \
                        any(X.action[h][v] != v for h in H.members for v in s):
                    fixed_full = False
                    break
            if not fixed_full:
                break
        if not fixed_full:
            break

    orbit_of = vertex_orbits(X)
    safe = True
    seen: dict[tuple[int, ...], Simplex] = {}
    rep_cache: dict[Simplex, Simplex] = {}
    for layer in X.simplices:
        for s in layer:
            key = tuple(sorted(orbit_of[v] for v in s))
            if len(set(key)) != len(key):
                safe = False
                break
            rep = min(X.image(g, s) for g in range(G.order))
            rep_cache[s] = rep
            other = seen.setdefault(key, rep)
            if other != rep:
                safe = False
                break
        if not safe:
            break
    report = RegularityReport(fixed_full, pointwise, safe)
    if safe and not pointwise:
        raise ComplexError("internal: quotient_safe without pointwise_fixing")
    return report


def vertex_orbits(X: GComplex) -> dict[int, int]:
    """Map each used vertex to the smallest vertex of its orbit."""
    return {v: min(p[v] for p in X.action) for v in X.vertices}


# ---------------------------------------------------------------------------
# subdivision


def _flag_counts(max_dim: int) -> list[int]:
    """Number of inclusion chains ending at a fixed d-simplex, for each d."""
    cnt = []
    for d in range(max_dim + 1):
        cnt.append(1 + sum(comb(d + 1, k + 1) * cnt[k] for k in range(d)))
    return cnt


def sd_size(X: GComplex) -> int:
    cnt = _flag_counts(max(X.dim, 0))
    return sum(len(layer) * cnt[d] for d, layer in enumerate(X.simplices))


def sd(X: GComplex, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> GComplex:
    """Barycentric subdivision with the induced action."""
    total = sd_size(X)
    if total > max_simplices:
        raise SimplexCapExceeded(f"sd would create {total} simplices (cap {max_simplices})")
    order = [s for layer in X.simplices for s in layer]
    index = {s: i for i, s in enumerate(order)}
    chains_ending: dict[Simplex, list[tuple[int, ...]]] = {}
    new_simplices: list[tuple[int, ...]] = []
    for s in order:
        i = index[s]
        ch = [(i,)]
        if len(s) > 1:
            for k in range(1, len(s)):
                for t in itertools.combinations(s, k):
                    ch.extend(c + (i,) for c in chains_ending[t])
        chains_ending[s] = ch
        new_simplices.extend(ch)
    action = tuple(tuple(index[X.image(g, s)] for s in order) for g in range(X.group.order))
    Y = GComplex(len(order), _by_dim(new_simplices), X.group, action, tuple(order))
    return Y


def sd_subcomplex(Xsd: GComplex, A: Subcomplex | Iterable[Simplex]) -> Subcomplex:
    """Image of a subcomplex of ``X`` in ``sd X``: the full subcomplex on its barycenters."""
    if Xsd.vertex_origin is None:
        raise ComplexError("complex carries no subdivision data")
    aset = A.simplex_set if isinstance(A, Subcomplex) else set(A)
    keep = {v for v, o in enumerate(Xsd.vertex_origin) if o in aset}
    return Subcomplex(Xsd, frozenset(s for s in Xsd.simplex_set if all(v in keep for v in s)))


# ---------------------------------------------------------------------------
# joins


def join(X: GComplex, Y: GComplex, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> GComplex:
    """Simplicial join with the diagonal action; ``Y``'s vertices are shifted past ``X``'s."""
    if X.group != Y.group:
        raise ComplexError("join requires both complexes to carry the same group")
    nx, ny = X.num_simplices, Y.num_simplices
    total = nx + ny + nx * ny
    if total > max_simplices:
        raise SimplexCapExceeded(f"join would create {total} simplices (cap {max_simplices})")
    off = X.num_vertices
    xs = [s for layer in X.simplices for s in layer]
    ys = [tuple(v + off for v in t) for layer in Y.simplices for t in layer]
    simp = xs + ys + [s + t for s in xs for t in ys]
    action = tuple(px + tuple(v + off for v in py) for px, py in zip(X.action, Y.action))
    return GComplex(X.num_vertices + Y.num_vertices, _by_dim(simp), X.group, action)


def n_fold_join(X: GComplex, n: int, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> GComplex:
    if n < 1:
        raise ComplexError("n must be at least 1")
    out = X
    for _ in range(n - 1):
        out = join(out, X, max_simplices)
    return out


# ---------------------------------------------------------------------------
# fixed and singular sets


def _require_fixed_sets(X: GComplex) -> None:
    if not X.regularity.fixed_sets_full:
        raise ComplexError("fixed sets are not subcomplexes; subdivide first (sd)")


def fixed_subcomplex(X: GComplex, H: Subgroup) -> Subcomplex:
    """``X^H``: simplices all of whose vertices are fixed by every element of ``H``."""
    _require_fixed_sets(X)
    fixed = {v for v in X.vertices if all(X.action[h][v] == v for h in H.members)}
    return Subcomplex(X, frozenset(s for s in X.simplex_set if all(v in fixed for v in s)))


def singular_subcomplex(X: GComplex, K: Subgroup) -> Subcomplex:
    """``X^{>K}``: points whose isotropy strictly contains ``K``.

    With pointwise-fixing actions the isotropy of an open simplex is its
    pointwise stabilizer, so a simplex lies in ``X^{>K}`` iff that stabilizer
    properly contains ``K``.
    """
    from .groups import normalizer

    _require_fixed_sets(X)
    kset = K.memberset
    out = set()
    for s in X.simplex_set:
        st = set(X.simplex_stabilizer(s))
        if kset < st:
            out.add(s)
    sub = Subcomplex(X, frozenset(out))
    N = normalizer(X.group, K)
    if not sub.is_invariant(N.members):
        raise ComplexError("internal: singular set is not invariant under N_G(K)")
    return sub


def weyl_fixed_complex(X: GComplex, K: Subgroup) -> tuple[GComplex, Subcomplex, FiniteGroup]:
    """``Y = X^K`` with its ``W = N_G(K)/K`` action, and ``A = X^{>K}`` inside it."""
    W, proj = weyl_group(X.group, K)
    Yk = fixed_subcomplex(X, K)
    A = singular_subcomplex(X, K)
    act: dict[int, Perm] = {}
    for n, w in proj.items():
        p = X.action[n]
        if w in act:
            continue
        act[w] = p
    Y = Yk.as_complex(W, tuple(act[w] for w in range(W.order)))
    return Y, Subcomplex(Y, A.simplex_set), W


# ---------------------------------------------------------------------------
# regular neighbourhoods


@dataclass(frozen=True)
class StarNeighborhood:
    """Output of :func:`star_neighborhood`; unpacks as ``(ysd2, ubar, b, d)``."""

    ysd2: GComplex
    ubar: Subcomplex
    b: Subcomplex
    d: Subcomplex
    a: Subcomplex
    u: frozenset[Simplex]

    def __iter__(self):
        return iter((self.ysd2, self.ubar, self.b, self.d))


def star_neighborhood(Y: GComplex, A: Subcomplex, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> StarNeighborhood:
    """Open star of ``A`` in ``sd²(Y)`` with its closure, complement and frontier.

    ``U`` is the set of simplices of ``sd²Y`` meeting the image of ``A``;
    ``Ubar`` its closure; ``B`` the simplices disjoint from ``U``; ``D = B ∩ Ubar``.
    """
    if not A.is_invariant():
        raise ComplexError("A is not invariant under the group")
    Y1 = sd(Y, max_simplices)
    A1 = sd_subcomplex(Y1, A)
    singular = singular_subcomplex(Y1, Y.group.trivial_subgroup())
    if not singular <= A1:
        raise ComplexError("A does not contain the singular set Y^{>e}")
    Y2 = sd(Y1, max_simplices)
    A2 = sd_subcomplex(Y2, A1)
    avert = {s[0] for s in A2.simplex_set if len(s) == 1}
    U = frozenset(s for s in Y2.simplex_set if any(v in avert for v in s))
    ubar = frozenset(closure(U)) if U else frozenset()
    B = frozenset(s for s in Y2.simplex_set if s not in U)
    D = B & ubar
    out = StarNeighborhood(Y2, Subcomplex(Y2, ubar), Subcomplex(Y2, B), Subcomplex(Y2, D), A2, U)
    for part in (out.ubar, out.b, out.d):
        if not part.is_face_closed() or not part.is_invariant():
            raise ComplexError("internal: neighbourhood pieces must be invariant subcomplexes")
    if (out.b.simplex_set | out.ubar.simplex_set) != Y2.simplex_set:
        raise ComplexError("internal: B ∪ Ubar != sd²Y")
    return out


# ---------------------------------------------------------------------------
# quotients


def quotient_complex(X: GComplex) -> tuple[GComplex, dict[int, int]]:
    """Orbit complex ``X/G`` for quotient-safe actions, with the vertex projection."""
    if not X.regularity.quotient_safe:
        raise ComplexError("action is not quotient-safe; subdivide first (sd)")
    orb = vertex_orbits(X)
    reps = sorted(set(orb.values()))
    new = {r: i for i, r in enumerate(reps)}
    proj = {v: new[orb[v]] for v in X.vertices}
    simp = {tuple(sorted(proj[v] for v in s)) for s in X.simplex_set}
    Q = GComplex.trivial_action(len(reps), simp)
    return Q, proj


# ---------------------------------------------------------------------------
# builders


def polygon(n: int, shift: int = 0, group: FiniteGroup | None = None, generator_shifts: Sequence[int] | None = None) -> GComplex:
    """An ``n``-gon circle; each group generator rotates by the given shift."""
    if n < 3:
        raise ComplexError("a simplicial circle needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    if group is None:
        if shift % n == 0:
            return GComplex.trivial_action(n, edges)
        from .groups import group_from_generators
        rot = tuple((i + shift) % n for i in range(n))
        group = group_from_generators(n, [rot])
        return GComplex.from_generators(n, edges, group, [rot])
    shifts = list(generator_shifts) if generator_shifts is not None else [shift] * len(group.generators)
    gens = [tuple((i + k) % n for i in range(n)) for k in shifts]
    return GComplex.from_generators(n, edges, group, gens)


def two_points(group: FiniteGroup | None = None, swap: bool = False) -> GComplex:
    """``S^0``; with ``swap`` every generator exchanges the points."""
    group = group or trivial_group()
    gens = [(1, 0) if swap else (0, 1)] * len(group.generators)
    return GComplex.from_generators(2, [(0,), (1,)], group, gens)


def point(group: FiniteGroup | None = None) -> GComplex:
    group = group or trivial_group()
    return GComplex.from_generators(1, [(0,)], group)


def simplex_boundary(d: int, group: FiniteGroup | None = None) -> GComplex:
    """Boundary of the ``d``-simplex, an ``S^{d-1}`` on ``d+1`` vertices."""
    verts = range(d + 1)
    facets = list(itertools.combinations(verts, d))
    return GComplex.trivial_action(d + 1, facets, group) if group is None else \
        GComplex.from_generators(d + 1, facets, group)


def full_simplex(d: int, group: FiniteGroup | None = None) -> GComplex:
    return GComplex.from_generators(d + 1, [tuple(range(d + 1))], group or trivial_group())


def octahedron() -> GComplex:
    """Boundary of the octahedron: ``S^0 * S^0 * S^0``."""
    s0 = two_points()
    return join(join(s0, s0), s0)


RP2_FACETS = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5)]



def rp2() -> GComplex:
    """The 6-vertex real projective plane."""
    return GComplex.trivial_action(6, RP2_FACETS)


def torus() -> GComplex:
    """A triangulated torus on 7 vertices (Möbius–Császár)."""
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return GComplex.trivial_action(7, facets)
