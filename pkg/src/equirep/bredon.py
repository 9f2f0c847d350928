"""Bredon chains and cochains with trivial coefficient modules.

For a pointwise-fixing action, ``C_n(X)`` is a permutation module with one
summand ``Z[G/G_σ]`` per orbit of n-simplices, and for a trivial module ``M``
both ``M ⊗_{ZG} Z[G/H]`` and ``Hom_{ZG}(Z[G/H], M)`` are ``M``. The Bredon
chain and cochain complexes are therefore the orbit complex tensored with
(resp. mapped into) ``M``; their integer matrices are exact transposes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import (
    Coefficient,
    Dense,
    FgAbGroup,
    IntChainComplex,
    IntMatrix,
    Lattice,
    SubQuotient,
    as_group,
    boundary_faces,
    cohomology,
    homology,
    induced_matrix,
    is_isomorphism,
    preimage,
)
from .complex import GComplex, Simplex, Subcomplex
from .groups import FiniteGroup, Perm, Subgroup, compose, conjugacy_classes_of_subgroups


class BredonError(ValueError):
    pass


# ---------------------------------------------------------------------------
# chain-level group action


def zg_chain_action(X: GComplex) -> dict[int, list[IntMatrix]]:
    """Signed permutation matrices ``g_#`` on the simplex basis, per element and degree."""
    out = {}
    for g in range(X.group.order):
        mats = []
        for layer in X.simplices:
            idx = {s: i for i, s in enumerate(layer)}
            entries = []
            for j, s in enumerate(layer):
                sign, img = X.act(g, s)
                entries.append((idx[img], j, sign))
            mats.append(IntMatrix.from_entries(len(layer), len(layer), entries))
        out[g] = mats
    return out


# ---------------------------------------------------------------------------
# orbit complexes


@dataclass
class OrbitChainComplex:
    """One generator per orbit of simplices outside ``A``.

    ``chains`` carries the homological orbit complex ``Z ⊗_{ZG} C_*(X, A)``;
    ``coboundary(n)`` is the matrix of the Bredon coboundary
    ``C^n_G -> C^{n+1}_G``, the transpose of ``∂_{n+1}``.
    ``transport[σ] = (orbit index, sign)`` with ``σ = sign · g·rep``.
    """

    complex: GComplex
    excluded: frozenset[Simplex]
    reps: list[list[Simplex]]
    stabilizers: list[list[tuple[int, ...]]]
    transport: dict[Simplex, tuple[int, int]]
    chains: IntChainComplex

    def coboundary(self, n: int) -> IntMatrix:
        return self.chains.d(n + 1).transpose()

    @property
    def dims(self) -> list[int]:
        return self.chains.dims

    def to_json(self) -> dict:
        classes = conjugacy_classes_of_subgroups(self.complex.group)
        names = {}
        for ci, cls in enumerate(classes):
            for H in cls.conjugates:
                names[H.members] = f"({ci}) order {cls.representative.order}"
        return {
            "orbits": [[{"rep": list(r), "stabilizer": names.get(st, "?")}
                        for r, st in zip(reps, stabs)]
                       for reps, stabs in zip(self.reps, self.stabilizers)],
            "complex": self.chains.to_json(),
        }


def _require_pointwise(X: GComplex) -> None:
    if not X.regularity.pointwise_fixing:
        raise BredonError("action does not fix setwise-stabilized simplices pointwise; "
                          "pass to the barycentric subdivision (sd) first")


def bredon_complex(X: GComplex, A: Subcomplex | None = None) -> OrbitChainComplex:
    """Orbit chain complex of the pair ``(X, A)`` (``A`` invariant, may be ``None``)."""
    _require_pointwise(X)
    excl = frozenset() if A is None else A.simplex_set
    if A is not None and not X.is_invariant(excl):
        raise BredonError("A is not invariant under the group")
    G = X.group
    reps: list[list[Simplex]] = []
    stabs: list[list[tuple[int, ...]]] = []
    transport: dict[Simplex, tuple[int, int]] = {}
    for layer in X.simplices:
        lr, ls = [], []
        for s in layer:
            if s in excl or s in transport:
                continue
            k = len(lr)
            lr.append(s)
            ls.append(X.simplex_stabilizer(s))
            for g in range(G.order):
                sign, img = X.act(g, s)
                prev = transport.get(img)
                if prev is not None and prev != (k, sign):
                    raise BredonError("internal: inconsistent orbit transport")
                transport[img] = (k, sign)
        reps.append(lr)
        stabs.append(ls)
    while reps and not reps[-1]:
        reps.pop()
        stabs.pop()
    if not reps:
        reps, stabs = [[]], [[]]
    bd = {}
    for n in range(1, len(reps)):
        entries = []
        for j, s in enumerate(reps[n]):
            for sign, f in boundary_faces(s):
                if f in excl:
                    continue
                i, t = transport[f]
                entries.append((i, j, sign * t))
        bd[n] = IntMatrix.from_entries(len(reps[n - 1]), len(reps[n]), entries)
    chains = IntChainComplex([len(r) for r in reps], bd, reps)
    return OrbitChainComplex(X, excl, reps, stabs, transport, chains)


def _pair(X: GComplex | Subcomplex, A: Subcomplex | None) -> tuple[GComplex, Subcomplex | None]:
    if isinstance(X, Subcomplex):
        X = X.as_complex()
    if A is not None and A.parent is not X:
        A = Subcomplex(X, A.simplex_set)
    return X, A


def bredon_homology(X: GComplex | Subcomplex, A: Subcomplex | None = None,
                    M: Coefficient = None) -> list[FgAbGroup]:
    """``H^G_*(X, A; M)`` for a trivial module ``M``."""
    X, A = _pair(X, A)
    if X.is_empty():
        return [FgAbGroup()]
    return homology(bredon_complex(X, A).chains, M)


def bredon_cohomology(X: GComplex | Subcomplex, A: Subcomplex | None = None,
                      M: Coefficient = None) -> list[FgAbGroup]:
    """``H_G^*(X, A; M)`` for a trivial module ``M``."""
    X, A = _pair(X, A)
    if X.is_empty():
        return [FgAbGroup()]
    return cohomology(bredon_complex(X, A).chains, M)


def pad(groups: Sequence[FgAbGroup], length: int) -> list[FgAbGroup]:
    out = list(groups[:length])
    return out + [FgAbGroup()] * (length - len(out))


# ---------------------------------------------------------------------------
# G-sets and the natural isomorphisms Ψ, Θ


@dataclass(frozen=True)
class GSet:
    group: FiniteGroup
    size: int
    action: tuple[Perm, ...]

    def __post_init__(self):
        G = self.group
        if len(self.action) != G.order:
            raise BredonError("need one permutation per group element")
        for a in range(G.order):
            for b in range(G.order):
                if self.action[G.mult[a][b]] != compose(self.action[a], self.action[b]):
                    raise BredonError("G-set action is not a homomorphism")

    @classmethod
    def coset_space(cls, G: FiniteGroup, H: Subgroup) -> "GSet":
        cosets: list[frozenset[int]] = []
        where: dict[int, int] = {}
        for g in range(G.order):
            if g in where:
                continue
            c = frozenset(G.mult[g][h] for h in H.members)
            for x in c:
                where[x] = len(cosets)
            cosets.append(c)
        reps = [min(c) for c in cosets]
        act = tuple(tuple(where[G.mult[x][r]] for r in reps) for x in range(G.order))
        return cls(G, len(cosets), act)

    @classmethod
    def disjoint_union(cls, parts: Sequence["GSet"]) -> "GSet":
        G = parts[0].group
        act = []
        for g in range(G.order):
            p, off = [], 0
            for part in parts:
                p.extend(off + x for x in part.action[g])
                off += part.size
            act.append(tuple(p))
        return cls(G, sum(p.size for p in parts), tuple(act))

    @cached_property
    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for w in range(self.size):
            if w in seen:
                continue
            orb = tuple(sorted({p[w] for p in self.action}))
            seen.update(orb)
            out.append(orb)
        return out

    def orbit_of(self, w: int) -> tuple[int, ...]:
        for o in self.orbits:
            if w in o:
                return o
        raise KeyError(w)

    def stabilizer(self, w: int) -> frozenset[int]:
        return frozenset(g for g, p in enumerate(self.action) if p[w] == w)

    def as_complex(self) -> GComplex:
        """The discrete G-space on this G-set."""
        gens = [self.action[g] for g in self.group.generators]
        return GComplex.from_generators(self.size, [(w,) for w in range(self.size)], self.group, gens)


@dataclass(frozen=True)
class GMap:
    source: GSet
    target: GSet
    images: tuple[int, ...]

    def __post_init__(self):
        for g in range(self.source.group.order):
            for w in range(self.source.size):
                if self.images[self.source.action[g][w]] != self.target.action[g][self.images[w]]:
                    raise BredonError("map is not G-equivariant")

    @property
    def is_isovariant(self) -> bool:
        """Every point has the same stabilizer as its image."""
        return all(self.source.stabilizer(w) == self.target.stabilizer(y)
                   for w, y in enumerate(self.images))


def gmap_from_orbit_images(source: GSet, target: GSet, images: Sequence[int]) -> GMap:
    """Extend ``min(orbit_i) -> images[i]`` equivariantly."""
    out = [None] * source.size
    for orb, y in zip(source.orbits, images):
        w = orb[0]
        for g in range(source.group.order):
            out[source.action[g][w]] = target.action[g][y]
    return GMap(source, target, tuple(out))


def fold_map(X: GSet) -> GMap:
    """``X ⊔ X -> X``."""
    two = GSet.disjoint_union([X, X])
    return GMap(two, X, tuple(list(range(X.size)) * 2))


def random_gset(G: FiniteGroup, rng: random.Random, subgroups: Sequence[Subgroup], max_orbits: int = 3) -> GSet:
    parts = [GSet.coset_space(G, rng.choice(subgroups)) for _ in range(rng.randint(1, max_orbits))]
    return GSet.disjoint_union(parts)


def random_gmap(source: GSet, rng: random.Random, subgroups: Sequence[Subgroup], max_orbits: int = 3) -> GMap:
    """A random G-set receiving a G-map from ``source``.

    Target orbits are ``G/H`` with ``H`` containing a source stabilizer, so every
    source orbit has somewhere to go.
    """
    G = source.group
    parts = []
    for _ in range(rng.randint(1, max_orbits)):
        parts.append(GSet.coset_space(G, rng.choice(subgroups)))
    # a fixed point can receive every source orbit
    parts.append(GSet.coset_space(G, G.whole()))
    target = GSet.disjoint_union(parts)
    images = []
    for orb in source.orbits:
        st = source.stabilizer(orb[0])
        options = [y for y in range(target.size) if st <= target.stabilizer(y)]
        images.append(rng.choice(options))
    return gmap_from_orbit_images(source, target, images)


class _Ambient:
    """``M^Ω`` with coordinates ``(ω, i)`` for the canonical generators ``i`` of ``M``."""

    def __init__(self, omega: GSet, M: FgAbGroup):
        self.omega, self.M = omega, M
        self.g = M.ngens
        self.n = omega.size * self.g
        self.torsion = Lattice(self.n, [self.unit(w, i, d)
                                        for w in range(omega.size) for i, d in enumerate(M.orders) if d])

    def idx(self, w: int, i: int) -> int:
        return w * self.g + i

    def unit(self, w: int, i: int, scale: int = 1) -> list[int]:
        v = [0] * self.n
        v[self.idx(w, i)] = scale
        return v

    @cached_property
    def coinvariants(self) -> SubQuotient:
        rels = list(self.torsion.basis)
        G = self.omega.group
        for g in G.generators:
            p = self.omega.action[g]
            for w in range(self.omega.size):
                for i in range(self.g):
                    v = [0] * self.n
                    v[self.idx(w, i)] += 1
                    v[self.idx(p[w], i)] -= 1
                    if any(v):
                        rels.append(v)
        full = Lattice(self.n, [self.unit(w, i) for w in range(self.omega.size) for i in range(self.g)])
        return SubQuotient(full, Lattice(self.n, rels))

    @cached_property
    def invariants(self) -> SubQuotient:
        G = self.omega.group
        rows: Dense = []
        for g in G.generators:
            p = self.omega.action[g]
            for w in range(self.omega.size):
                for i in range(self.g):
                    r = [0] * self.n
                    r[self.idx(p[w], i)] += 1
                    r[self.idx(w, i)] -= 1
                    rows.append(r)
        k = len(G.generators)
        tb = []
        for rep in range(k):
            for b in self.torsion.basis:
                v = [0] * (self.n * k)
                v[rep * self.n:(rep + 1) * self.n] = b
                tb.append(v)
        target = Lattice(self.n * k, tb)
        if rows:
            L = preimage(rows, self.n, Lattice(self.n * k, tb))
        else:
            L = Lattice(self.n, [self.unit(w, i) for w in range(self.omega.size) for i in range(self.g)])
        return SubQuotient(L, self.torsion)


@dataclass
class NaturalIso:
    """A map in canonical coordinates together with its source and target groups."""

    matrix: Dense
    source: FgAbGroup
    target: FgAbGroup

    @property
    def is_isomorphism(self) -> bool:
        return is_isomorphism(self.matrix, self.source, self.target)


def _psi_ambient(omega: GSet, g: int) -> Dense:
    n = omega.size * g
    A = [[0] * n for _ in range(n)]
    for orb in omega.orbits:
        for w2 in orb:
            for w in orb:
                for i in range(g):
                    A[w2 * g + i][w * g + i] = 1
    return A


def _theta_ambient(omega: GSet, g: int, reps: Sequence[int]) -> Dense:
    n = omega.size * g
    A = [[0] * n for _ in range(n)]
    for w in reps:
        for i in range(g):
            A[w * g + i][w * g + i] = 1
    return A


def psi(omega: GSet, M: Coefficient) -> NaturalIso:
    """``Ψ: Hom(Z[Ω], Z) ⊗_{ZG} M -> Hom_{ZG}(Z[Ω], M)``, ``χ_ω ⊗ m ↦ Σ_{ω' ∈ Gω} χ^M_{ω'}(m)``."""
    M = as_group(M)
    amb = _Ambient(omega, M)
    src, dst = amb.coinvariants, amb.invariants
    H = induced_matrix(_psi_ambient(omega, M.ngens), src, dst)
    return NaturalIso(H, src.group, dst.group)


def theta(omega: GSet, M: Coefficient, reps: Sequence[int] | None = None) -> NaturalIso:
    """``Θ: Hom_{ZG}(Hom(Z[Ω], Z), M) -> M ⊗_{ZG} Z[Ω]``, ``φ ↦ Σ_i φ(χ_{ω_i}) ⊗ ω_i``."""
    M = as_group(M)
    amb = _Ambient(omega, M)
    if reps is None:
        reps = [o[0] for o in omega.orbits]
    src, dst = amb.invariants, amb.coinvariants
    H = induced_matrix(_theta_ambient(omega, M.ngens, reps), src, dst)
    return NaturalIso(H, src.group, dst.group)


def _pullback_ambient(f: GMap, g: int) -> Dense:
    """``(ω, i) <- (f(ω), i)``: pullback of functions / dual basis along ``f``."""
    n_src, n_dst = f.source.size * g, f.target.size * g
    A = [[0] * n_dst for _ in range(n_src)]
    for w, y in enumerate(f.images):
        for i in range(g):
            A[w * g + i][y * g + i] = 1
    return A


def _pushforward_ambient(f: GMap, g: int) -> Dense:
    P = _pullback_ambient(f, g)
    return [list(col) for col in zip(*P)] if P else []


def _matmul(A: Dense, B: Dense) -> Dense:
    if not A or not B:
        cols = len(B[0]) if B else 0
        return [[0] * cols for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def same_map(H1: Dense, H2: Dense, target: FgAbGroup) -> bool:
    """Equality of two maps into ``target`` in canonical coordinates."""
    for i, d in enumerate(target.orders):
        r1 = H1[i] if H1 else []
        r2 = H2[i] if H2 else []
        for a, b in zip(r1, r2):
            if (a - b) % d if d else a != b:
                return False
    return True


@dataclass
class NaturalityCheck:
    psi_iso: bool
    theta_iso: bool
    theta_rep_independent: bool
    psi_natural: bool
    theta_natural: bool

    @property
    def ok(self) -> bool:
        return all((self.psi_iso, self.theta_iso, self.theta_rep_independent, self.psi_natural, self.theta_natural))


def check_natural_isos(f: GMap, M: Coefficient) -> NaturalityCheck:
    """Bijectivity, representative independence and both naturality squares for ``f: Ω -> Γ``."""
    M = as_group(M)
    g = M.ngens
    Om, Ga = f.source, f.target
    aO, aG = _Ambient(Om, M), _Ambient(Ga, M)

    psi_O, psi_G = psi(Om, M), psi(Ga, M)
    th_O, th_G = theta(Om, M), theta(Ga, M)
    alt = theta(Om, M, [o[-1] for o in Om.orbits])
    rep_indep = same_map(th_O.matrix, alt.matrix, th_O.target)

    pull = _pullback_ambient(f, g)
    pull_P = induced_matrix(pull, aG.coinvariants, aO.coinvariants)
    pull_Q = induced_matrix(pull, aG.invariants, aO.invariants)
    psi_nat = same_map(_matmul(psi_O.matrix, pull_P), _matmul(pull_Q, psi_G.matrix), psi_O.target)

    push = _pushforward_ambient(f, g)
    push_R = induced_matrix(push, aO.invariants, aG.invariants)
    push_S = induced_matrix(push, aO.coinvariants, aG.coinvariants)
    th_nat = same_map(_matmul(th_G.matrix, push_R), _matmul(push_S, th_O.matrix), th_G.target)

    return NaturalityCheck(psi_O.is_isomorphism and psi_G.is_isomorphism,
                      th_O.is_isomorphism and th_G.is_isomorphism,
                      rep_indep, psi_nat, th_nat)
