"""Finite permutation groups with full multiplication tables.

Elements are stored as tuples of images; ``(a * b)(x) = a(b(x))``.
Every group carries its complete Cayley table, so products, inverses and
conjugation are table lookups downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Perm = tuple[int, ...]

DEFAULT_ORDER_CAP = 5040


class GroupError(ValueError):
    pass


def compose(a: Perm, b: Perm) -> Perm:
    """Return ``a ∘ b`` (apply ``b`` first)."""
    return tuple(a[i] for i in b)


def invert(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def check_perm(images: Sequence[int], degree: int | None = None) -> Perm:
    p = tuple(int(i) for i in images)
    if degree is not None and len(p) != degree:
        raise GroupError(f"permutation {list(p)} has length {len(p)}, expected {degree}")
    if sorted(p) != list(range(len(p))):
        raise GroupError(f"{list(p)} is not a bijection on 0..{len(p) - 1}")
    return p


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation from cycle notation, e.g. ``[(0, 1, 2)]``."""
    images = list(range(degree))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            images[x] = cyc[(i + 1) % len(cyc)]
    return check_perm(images, degree)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    degree: int
    elements: tuple[Perm, ...]
    mult: tuple[tuple[int, ...], ...]
    identity: int
    generators: tuple[int, ...]
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({p: i for i, p in enumerate(self.elements)})

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.elements == other.elements and self.generators == other.generators

    def __hash__(self):
        return hash((self.elements, self.generators))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, p: Perm) -> int:
        return self._index[tuple(p)]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.order
        e = self.identity
        for a in range(self.order):
            row = self.mult[a]
            for b in range(self.order):
                if row[b] == e:
                    inv[a] = b
                    break
        return tuple(inv)

    def conj(self, g: int, h: int) -> int:
        """``g h g^{-1}``."""
        return self.mult[self.mult[g][h]][self.inverse[g]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mult[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    def check_axioms(self) -> None:
        """Full scan of associativity, identity and inverses on the table."""
        m, n, e = self.mult, self.order, self.identity
        for a in range(n):
            if m[e][a] != a or m[a][e] != a:
                raise GroupError("identity law fails")
            if m[a][self.inverse[a]] != e:
                raise GroupError("missing inverse")
            for b in range(n):
                ab = m[a][b]
                for c in range(n):
                    if m[ab][c] != m[a][m[b][c]]:
                        raise GroupError("associativity fails")

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def subgroup_generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, _closure(self, gens))

    def subgroup_from_perms(self, perms: Iterable[Sequence[int]]) -> "Subgroup":
        idx = []
        for p in perms:
            p = check_perm(p, self.degree)
            if p not in self._index:
                raise GroupError(f"{list(p)} is not an element of the group")
            idx.append(self._index[p])
        return self.subgroup_generated(idx)

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "generators": [list(self.elements[g]) for g in self.generators]}


def _closure(G: FiniteGroup, gens: Iterable[int]) -> tuple[int, ...]:
    members = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mult[x][g]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(members))


def group_from_generators(degree: int, gens: Sequence[Sequence[int]], *,
                          order_cap: int = DEFAULT_ORDER_CAP, name: str = "") -> FiniteGroup:
    """Close ``gens`` under composition and tabulate the result."""
    gens = [check_perm(g, degree) for g in gens]
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in index:
                    if len(elements) >= order_cap:
                        raise GroupError(f"group order exceeds cap {order_cap}")
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    order = sorted(elements[1:])
    elements = [ident] + order
    index = {p: i for i, p in enumerate(elements)}
    mult = tuple(tuple(index[compose(a, b)] for b in elements) for a in elements)
    gen_idx = tuple(dict.fromkeys(index[g] for g in gens))
    return FiniteGroup(degree, tuple(elements), mult, 0, gen_idx, name)


def cyclic_group(m: int) -> FiniteGroup:
    if m < 1:
        raise GroupError("cyclic group order must be positive")
    if m == 1:
        return group_from_generators(1, [], name="C1")
    rot = tuple((i + 1) % m for i in range(m))
    return group_from_generators(m, [rot], name=f"C{m}")


def symmetric_group(d: int) -> FiniteGroup:
    if d < 2:
        return group_from_generators(max(d, 1), [], name=f"S{d}")
    gens = [perm_from_cycles(d, [(0, 1)]), perm_from_cycles(d, [tuple(range(d))])]
    return group_from_generators(d, gens, name=f"S{d}")


def trivial_group() -> FiniteGroup:
    return group_from_generators(1, [], name="e")


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.memberset

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def memberset(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_closed(self) -> bool:
        m = self.parent.mult
        s = self.memberset
        return self.parent.identity in s and all(m[a][b] in s for a in s for b in s)

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.parent, tuple(self.parent.conj(g, h) for h in self.members))

    def issubset(self, other: "Subgroup") -> bool:
        return self.memberset <= other.memberset

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def label(self) -> str:
        return f"<order {self.order}: {list(self.members)}>"


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by closure of cyclic subgroups under pairwise joins."""
    found: dict[frozenset, tuple[int, ...]] = {}
    for g in range(G.order):
        c = _closure(G, [g])
        found.setdefault(frozenset(c), c)
    frontier = list(found)
    cyclic = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic:
                if c <= s:
                    continue
                j = _closure(G, list(s | c))
                key = frozenset(j)
                if key not in found:
                    found[key] = j
                    nxt.append(key)
        frontier = nxt
    subs = [Subgroup(G, m) for m in found.values()]
    for H in subs:
        if G.order % H.order:
            raise GroupError(f"Lagrange violated by subgroup of order {H.order}")
    subs.sort(key=lambda H: (-H.order, H.members))
    return subs


@dataclass(frozen=True)
class SubgroupClass:
    representative: Subgroup
    conjugates: tuple[Subgroup, ...]


def conjugacy_classes_of_subgroups(G: FiniteGroup) -> list[SubgroupClass]:
    """Conjugacy classes ordered by non-increasing order; the trivial class is last."""
    seen: set[tuple[int, ...]] = set()
    classes = []
    for H in all_subgroups(G):
        if H.members in seen:
            continue
        conj = {}
        for g in range(G.order):
            C = H.conjugate(g)
            conj.setdefault(C.members, C)
        seen.update(conj)
        classes.append(SubgroupClass(H, tuple(sorted(conj.values(), key=lambda S: S.members))))
    classes.sort(key=lambda c: (-c.representative.order, c.representative.members))
    return classes


def normalizer(G: FiniteGroup, K: Subgroup) -> Subgroup:
    if K.parent != G or not K.is_closed():
        raise GroupError("K is not a subgroup of G")
    return Subgroup(G, tuple(g for g in range(G.order) if K.conjugate(g).memberset == K.memberset))


def weyl_group(G: FiniteGroup, K: Subgroup) -> tuple[FiniteGroup, dict[int, int]]:
    """``N_G(K)/K`` acting faithfully on the cosets of ``K`` in ``N_G(K)``.

    Returns the quotient and the projection from indices of ``N_G(K)`` in ``G``
    to indices in the quotient.
    """
    N = normalizer(G, K)
    cosets: list[frozenset] = []
    coset_of: dict[int, int] = {}
    for n in N.members:
        if n in coset_of:
            continue
        c = frozenset(G.mult[n][k] for k in K.members)
        for x in c:
            coset_of[x] = len(cosets)
        cosets.append(c)
    reps = [min(c) for c in cosets]
    d = len(cosets)

    def action(n: int) -> Perm:
        return tuple(coset_of[G.mult[n][r]] for r in reps)

    gens = [action(n) for n in N.members]
    W = group_from_generators(max(d, 1), gens, name=f"W({G.name})" if G.name else "")
    proj = {n: W.index(action(n)) for n in N.members}
    if W.order * K.order != N.order:
        raise GroupError("|W| * |K| != |N_G(K)|")
    return W, proj


def check_homomorphism(G: FiniteGroup, H: FiniteGroup, phi: dict[int, int]) -> bool:
    """Full table scan that ``phi`` respects multiplication."""
    keys = list(phi)
    return all(phi[G.mult[a][b]] == H.mult[phi[a]][phi[b]]
               for a in keys for b in keys if G.mult[a][b] in phi)
