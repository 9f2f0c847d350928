"""Finite categories, abelian-group-valued functors and Tor over a category.

``Tor^C(F, G)`` for ``F: C^op -> Ab`` and ``G: C -> Ab`` is computed from the
two-sided bar ("cobar") complex

    K_n = ⊕_{C0 -f1-> C1 -> ... -fn-> Cn} G(C0) ⊗ F(Cn)

with faces ``d_0`` (push ``G`` along ``f1``), ``d_i`` (compose ``f_{i+1} f_i``)
and ``d_n`` (pull ``F`` back along ``fn``). By default chains containing an
identity are dropped (the normalized complex).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
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
    homology,
    homology_presentation,
    induced_matrix,
    presented_homology,
)
from .complex import GComplex, fixed_subcomplex
from .groups import FiniteGroup, Subgroup, conjugacy_classes_of_subgroups

DEFAULT_GENERATOR_CAP = 200_000


class CategoryError(ValueError):
    pass


class GeneratorCapExceeded(CategoryError):
    pass


@dataclass(frozen=True)
class Morphism:
    source: int
    target: int
    label: str
    data: object = None


@dataclass
class FiniteCategory:
    """Objects ``0..n-1``; morphisms by index; ``compose(f, g) = f ∘ g`` (``g`` first)."""

    objects: list[str]
    morphisms: list[Morphism]
    table: dict[tuple[int, int], int]
    identities: list[int]

    @cached_property
    def _hom(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for i, m in enumerate(self.morphisms):
            out.setdefault((m.source, m.target), []).append(i)
        return out

    def hom(self, a: int, b: int) -> list[int]:
        return self._hom.get((a, b), [])

    def compose(self, f: int, g: int) -> int:
        try:
            return self.table[(f, g)]
        except KeyError:
            raise CategoryError(f"morphisms {f} and {g} are not composable") from None

    def is_identity(self, f: int) -> bool:
        return self.identities[self.morphisms[f].source] == f

    def validate(self) -> None:
        """Full scan of the identity and associativity laws."""
        ms = self.morphisms
        for f, m in enumerate(ms):
            if self.compose(self.identities[m.target], f) != f or self.compose(f, self.identities[m.source]) != f:
                raise CategoryError(f"identity law fails at morphism {f}")
        for (f, g), fg in self.table.items():
            if ms[g].target != ms[f].source or ms[fg].source != ms[g].source or ms[fg].target != ms[f].target:
                raise CategoryError("composition table has mismatched endpoints")
        for f in range(len(ms)):
            for g in self.hom_into(ms[f].source):
                fg = self.compose(f, g)
                for h in self.hom_into(ms[g].source):
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                        raise CategoryError("associativity fails")

    def hom_into(self, b: int) -> list[int]:
        return [i for i, m in enumerate(self.morphisms) if m.target == b]

    @cached_property
    def _out(self) -> list[list[int]]:
        out = [[] for _ in self.objects]
        for i, m in enumerate(self.morphisms):
            out[m.source].append(i)
        return out

    def chains(self, n: int, normalized: bool = True) -> list[tuple[int, ...]]:
        """Sequences ``(f1, ..., fn)`` with ``target(f_i) = source(f_{i+1})``; ``n = 0`` gives objects."""
        if n == 0:
            return [(o,) for o in range(len(self.objects))]
        seqs = [(f,) for f in range(len(self.morphisms)) if not (normalized and self.is_identity(f))]
        for _ in range(n - 1):
            seqs = [s + (g,) for s in seqs for g in self._out[self.morphisms[s[-1]].target]
                    if not (normalized and self.is_identity(g))]
        return seqs

    def count_chains(self, n: int) -> int:
        """Number of sequences of ``n`` composable morphisms, identities included."""
        if n == 0:
            return len(self.objects)
        cnt = [1] * len(self.objects)
        for _ in range(n):
            nxt = [0] * len(self.objects)
            for m in self.morphisms:
                nxt[m.target] += cnt[m.source]
            cnt = nxt
        return sum(cnt)

    def to_json(self) -> dict:
        return {"objects": self.objects,
                "morphisms": [{"source": m.source, "target": m.target, "label": m.label} for m in self.morphisms],
                "identities": self.identities,
                "composition": sorted([f, g, fg] for (f, g), fg in self.table.items())}


def one_object_category(G: FiniteGroup) -> FiniteCategory:
    """The group as a category with one object; morphisms are group elements."""
    ms = [Morphism(0, 0, str(list(G.elements[g])), g) for g in range(G.order)]
    table = {(f, g): G.mult[f][g] for f in range(G.order) for g in range(G.order)}
    return FiniteCategory(["*"], ms, table, [G.identity])


def discrete_category(n: int = 1) -> FiniteCategory:
    ms = [Morphism(i, i, f"id{i}") for i in range(n)]
    return FiniteCategory([f"c{i}" for i in range(n)], ms, {(i, i): i for i in range(n)}, list(range(n)))


@dataclass(frozen=True)
class OrbitMorphism:
    """The G-map ``G/H -> G/K``, ``gH ↦ g a K``, for the coset ``aK``."""

    coset: frozenset[int]
    rep: int


def orbit_category(W: FiniteGroup) -> FiniteCategory:
    """Orbit category on one ``W/H`` per conjugacy class of subgroups."""
    classes = conjugacy_classes_of_subgroups(W)
    subs = [c.representative for c in classes]
    ms: list[Morphism] = []
    index: dict[tuple[int, int, frozenset[int]], int] = {}
    for i, H in enumerate(subs):
        for j, K in enumerate(subs):
            seen = set()
            for a in range(W.order):
                coset = frozenset(W.mult[a][k] for k in K.members)
                if coset in seen:
                    continue
                seen.add(coset)
                ainv = W.inverse[a]
                if all(W.mult[W.mult[ainv][h]][a] in K.memberset for h in H.members):
                    rep = min(coset)
                    index[(i, j, coset)] = len(ms)
                    ms.append(Morphism(i, j, f"W/{i}->W/{j}:{rep}", OrbitMorphism(coset, rep)))
    table = {}
    for f, mf in enumerate(ms):
        for g, mg in enumerate(ms):
            if mg.target != mf.source:
                continue
            # g: W/H -> W/K by aK, f: W/K -> W/L by bL; f∘g is abL
            a, b = mg.data.rep, mf.data.rep
            L = subs[mf.target]
            coset = frozenset(W.mult[W.mult[a][b]][l] for l in L.members)
            table[(f, g)] = index[(mg.source, mf.target, coset)]
    idents = [index[(i, i, frozenset(H.members))] for i, H in enumerate(subs)]
    C = FiniteCategory([f"W/H{i} (|H|={H.order})" for i, H in enumerate(subs)], ms, table, idents)
    C.subgroups = subs  # type: ignore[attr-defined]
    return C


# ---------------------------------------------------------------------------
# functors


def _mat_eq(A: Dense, B: Dense, target: FgAbGroup) -> bool:
    for i, t in enumerate(target.orders):
        for a, b in zip(A[i], B[i]):
            if (a - b) % t if t else a != b:
                return False
    return True


def _matmul(A: Dense, B: Dense, inner: int, cols: int) -> Dense:
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


@dataclass
class AbFunctor:
    """A functor to finitely generated abelian groups.

    ``maps[f]`` is the matrix of ``F(f)`` in canonical generators: from
    ``values[source]`` to ``values[target]`` when covariant, reversed when
    contravariant.
    """

    category: FiniteCategory
    variance: str
    values: list[FgAbGroup]
    maps: list[Dense]
    name: str = ""

    def __post_init__(self):
        if self.variance not in ("co", "contra"):
            raise CategoryError("variance must be 'co' or 'contra'")

    def ends(self, f: int) -> tuple[int, int]:
        m = self.category.morphisms[f]
        return (m.source, m.target) if self.variance == "co" else (m.target, m.source)

    def validate(self) -> None:
        """Well-definedness, identities and the full composition table."""
        C = self.category
        for f in range(len(C.morphisms)):
            s, t = self.ends(f)
            A, src, dst = self.maps[f], self.values[s], self.values[t]
            if len(A) != dst.ngens or any(len(r) != src.ngens for r in A):
                raise CategoryError(f"matrix of morphism {f} has the wrong shape")
            for j, d in enumerate(src.orders):
                if d and not _mat_eq([[r[j] * d] for r in A], [[0] for _ in A], dst):
                    raise CategoryError(f"morphism {f} does not respect torsion")
        for o, f in enumerate(C.identities):
            n = self.values[o].ngens
            ident = [[int(i == j) for j in range(n)] for i in range(n)]
            if not _mat_eq(self.maps[f], ident, self.values[o]):
                raise CategoryError(f"identity of object {o} is not sent to the identity")
        for (f, g), fg in C.table.items():
            if self.variance == "co":
                s, _ = self.ends(g)
                prod = _matmul(self.maps[f], self.maps[g], self.values[self.ends(g)[1]].ngens, self.values[s].ngens)
            else:
                s, _ = self.ends(f)
                prod = _matmul(self.maps[g], self.maps[f], self.values[self.ends(f)[1]].ngens, self.values[s].ngens)
            if not _mat_eq(prod, self.maps[fg], self.values[self.ends(fg)[1]]):
                raise CategoryError(f"functoriality fails on the composite of {f} and {g}")

    def to_json(self) -> dict:
        return {"name": self.name, "variance": self.variance,
                "values": [str(v) for v in self.values], "maps": self.maps}


def constant_functor(C: FiniteCategory, value: Coefficient, variance: str) -> AbFunctor:
    A = as_group(value)
    n = A.ngens
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    return AbFunctor(C, variance, [A] * len(C.objects), [ident] * len(C.morphisms), f"const {A}")


def fixed_point_functor(X: GComplex, q: int, C: FiniteCategory | None = None) -> AbFunctor:
    """``W/H ↦ H_q(X^H)``; the morphism ``aK: W/H -> W/K`` acts by ``x ↦ a x`` from ``X^K`` to ``X^H``."""
    G = X.group
    if C is None:
        C = orbit_category(G)
    subs: list[Subgroup] = C.subgroups  # type: ignore[attr-defined]
    fixed = [fixed_subcomplex(X, H) for H in subs]
    chains = [F.chain_complex for F in fixed]
    pres = [homology_presentation(cc, q) if q <= cc.top else None for cc in chains]
    values = [p.group if p is not None else FgAbGroup() for p in pres]
    maps = []
    for m in C.morphisms:
        a = m.data.rep
        src, dst = m.target, m.source
        if pres[src] is None or pres[dst] is None or values[src].ngens == 0 or values[dst].ngens == 0:
            maps.append([[0] * values[src].ngens for _ in range(values[dst].ngens)])
            continue
        sb, db = chains[src].labels[q], chains[dst].labels[q]
        didx = {s: i for i, s in enumerate(db)}
        A = [[0] * len(sb) for _ in db]
        for j, s in enumerate(sb):
            sign, t = X.act(a, s)
            A[didx[t]][j] += sign
        maps.append(induced_matrix(A, pres[src], pres[dst]))
    F = AbFunctor(C, "contra", values, maps, f"H_{q}(X^-)")
    F.validate()
    return F


# ---------------------------------------------------------------------------
# Tor


@dataclass
class CobarComplex:
    chains: list[list[tuple[int, ...]]]
    generators: list[list[tuple[int, int, int]]]  # (chain index, G-gen, F-gen)
    orders: list[list[int]]
    differentials: dict[int, IntMatrix]

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orders]


def _endpoints(C: FiniteCategory, chain: tuple[int, ...], n: int) -> tuple[int, int]:
    if n == 0:
        return chain[0], chain[0]
    return C.morphisms[chain[0]].source, C.morphisms[chain[-1]].target


def cobar_complex(C: FiniteCategory, F: AbFunctor, G: AbFunctor, top: int, normalized: bool = True,
                  max_generators: int = DEFAULT_GENERATOR_CAP) -> CobarComplex:
    if F.variance != "contra" or G.variance != "co":
        raise CategoryError("need F contravariant and G covariant")
    all_chains, gens, orders, index = [], [], [], []
    total = 0
    for n in range(top + 1):
        ch = C.chains(n, normalized)
        gl, ol, idx = [], [], {}
        for ci, c in enumerate(ch):
            c0, cn = _endpoints(C, c, n)
            for i, a in enumerate(G.values[c0].orders):
                for j, b in enumerate(F.values[cn].orders):
                    t = math.gcd(a, b)
                    if t == 1:
                        continue
                    idx[(ci, i, j)] = len(gl)
                    gl.append((ci, i, j))
                    ol.append(t)
        total += len(gl)
        if total > max_generators:
            raise GeneratorCapExceeded(f"cobar complex exceeds {max_generators} generators")
        all_chains.append(ch)
        gens.append(gl)
        orders.append(ol)
        index.append(idx)
    chain_index = [{c: i for i, c in enumerate(ch)} for ch in all_chains]
    diffs = {}
    for n in range(1, top + 1):
        entries = []
        tgt_idx = index[n - 1]
        cidx = chain_index[n - 1]
        for col, (ci, i, j) in enumerate(gens[n]):
            c = all_chains[n][ci]
            # d_0: push the G-generator along f1
            rest = c[1:] if n > 1 else (C.morphisms[c[0]].target,)
            r = cidx.get(rest)
            if r is not None:
                Gm = G.maps[c[0]]
                for i2 in range(len(Gm)):
                    v = Gm[i2][i]
                    k = tgt_idx.get((r, i2, j)) if v else None
                    if k is not None:
                        entries.append((k, col, v))
            # inner faces
            for k in range(1, n):
                fk = C.compose(c[k], c[k - 1])
                if normalized and C.is_identity(fk):
                    continue
                face = c[:k - 1] + (fk,) + c[k + 1:]
                r = cidx[face]
                t = tgt_idx.get((r, i, j))
                if t is not None:
                    entries.append((t, col, (-1) ** k))
            # d_n: pull the F-generator back along fn
            rest = c[:-1] if n > 1 else (C.morphisms[c[0]].source,)
            r = cidx.get(rest)
            if r is not None:
                Fm = F.maps[c[-1]]
                for j2 in range(len(Fm)):
                    v = Fm[j2][j]
                    t = tgt_idx.get((r, i, j2)) if v else None
                    if t is not None:
                        entries.append((t, col, (-1) ** n * v))
        diffs[n] = IntMatrix.from_entries(len(gens[n - 1]), len(gens[n]), entries)
    return CobarComplex(all_chains, gens, orders, diffs)


def tor_over_category(C: FiniteCategory, F: AbFunctor, G: AbFunctor, k_max: int, normalized: bool = True,
                      max_generators: int = DEFAULT_GENERATOR_CAP) -> list[FgAbGroup]:
    """``Tor_k^C(F, G)`` for ``k = 0..k_max``."""
    F.validate()
    G.validate()
    K = cobar_complex(C, F, G, k_max + 1, normalized, max_generators)
    # order-1 generators were dropped, so reduce the differentials modulo torsion where needed
    return presented_homology(K.orders, K.differentials)[:k_max + 1]


def tensor_over_category(C: FiniteCategory, F: AbFunctor, G: AbFunctor) -> FgAbGroup:
    """``⊕_c G(c) ⊗ F(c)`` modulo ``G(f)x ⊗ y - x ⊗ F(f)y``, presented directly."""
    offs, orders, pos = [], [], {}
    for o in range(len(C.objects)):
        for i, a in enumerate(G.values[o].orders):
            for j, b in enumerate(F.values[o].orders):
                pos[(o, i, j)] = len(orders)
                orders.append(math.gcd(a, b))
    n = len(orders)
    rels = [[t if k == p else 0 for k in range(n)] for p, t in enumerate(orders) if t]
    for f, m in enumerate(C.morphisms):
        a, b = m.source, m.target
        for i in range(G.values[a].ngens):
            for j in range(F.values[b].ngens):
                v = [0] * n
                for i2, row in enumerate(G.maps[f]):
                    v[pos[(b, i2, j)]] += row[i]
                for j2, row in enumerate(F.maps[f]):
                    v[pos[(a, i, j2)]] -= row[j]
                if any(v):
                    rels.append(v)
    full = Lattice(n, [[int(i == j) for j in range(n)] for i in range(n)])
    return SubQuotient(full, Lattice(n, rels)).group


# ---------------------------------------------------------------------------
# group homology oracle


def bar_complex(G: FiniteGroup, top: int, max_generators: int = DEFAULT_GENERATOR_CAP) -> IntChainComplex:
    """Unnormalized bar complex ``Z ⊗_{ZG} B_*`` with basis ``G^n``."""
    total = sum(G.order ** n for n in range(top + 1))
    if total > max_generators:
        raise GeneratorCapExceeded(f"bar complex would have {total} generators (cap {max_generators})")
    bases = [list(product(range(G.order), repeat=n)) for n in range(top + 1)]
    idx = [{b: i for i, b in enumerate(bs)} for bs in bases]
    bd = {}
    for n in range(1, top + 1):
        e = []
        for col, g in enumerate(bases[n]):
            e.append((idx[n - 1][g[1:]], col, 1))
            for k in range(1, n):
                face = g[:k - 1] + (G.mult[g[k - 1]][g[k]],) + g[k + 1:]
                e.append((idx[n - 1][face], col, (-1) ** k))
            e.append((idx[n - 1][g[:-1]], col, (-1) ** n))
        bd[n] = IntMatrix.from_entries(len(bases[n - 1]), len(bases[n]), e)
    return IntChainComplex([len(b) for b in bases], bd)


def group_homology(G: FiniteGroup, M: Coefficient, k_max: int,
                   max_generators: int = DEFAULT_GENERATOR_CAP) -> list[FgAbGroup]:
    """``H_k(G; M)`` for trivial ``M`` from the bar resolution and universal coefficients."""
    return homology(bar_complex(G, k_max + 1, max_generators), M)[:k_max + 1]


# ---------------------------------------------------------------------------
# bounds


@dataclass
class BoundCheck:
    k: int
    value: FgAbGroup
    order_bound: int | None
    rank_bound: int | None
    ok: bool

    def to_json(self) -> dict:
        return {"k": self.k, "value": str(self.value), "order_bound": self.order_bound,
                "rank_bound": self.rank_bound, "ok": self.ok}


def _order_ok(value: FgAbGroup, bound: int | None) -> bool:
    return bound is None or (value.is_finite() and value.order <= bound)


def group_homology_bound(G: FiniteGroup, M: Coefficient, k: int, value: FgAbGroup) -> BoundCheck:
    """Order and rank bounds for ``H_k(G; M)``.

    ``rank ≤ r |G|^k`` with ``r = rank M``; ``|H_k(G; Z)| ≤ |G|^(|G|^k)`` for ``k ≥ 1``;
    ``|H_k(G; M)| ≤ |M|^(|G|^k)`` for finite ``M``.
    """
    M = as_group(M)
    g = G.order
    rank_bound = M.rank * g ** k
    order_bound = None
    if M.is_finite():
        order_bound = M.order ** (g ** k)
    elif M == FgAbGroup(1) and k >= 1:
        order_bound = g ** (g ** k)
    ok = value.rank <= rank_bound and _order_ok(value, order_bound)
    return BoundCheck(k, value, order_bound, rank_bound, ok)


def check_bounds(result: Sequence[FgAbGroup], G: FiniteGroup, M: Coefficient, k: int | None = None) -> bool:
    ks = range(len(result)) if k is None else [k]
    return all(group_homology_bound(G, M, i, result[i]).ok for i in ks)


def cobar_bound(C: FiniteCategory, F: AbFunctor, G: AbFunctor, k: int, value: FgAbGroup) -> BoundCheck:
    """``|Tor_k| ≤ M^(r α)`` when every ``G(c)`` is finite of order ``≤ M``, and ``rank ≤ α m r``.

    ``α`` counts sequences of ``k`` composable morphisms (identities included);
    ``r`` bounds the number of generators of ``F(c)``, ``m`` the rank of ``G(c)``.
    """
    alpha = C.count_chains(k)
    r = max((v.ngens for v in F.values), default=0)
    m = max((v.rank for v in G.values), default=0)
    order_bound = None
    if all(v.is_finite() for v in G.values):
        Mx = max((v.order for v in G.values), default=1)
        order_bound = Mx ** (r * alpha)
    rank_bound = alpha * m * r
    ok = value.rank <= rank_bound and _order_ok(value, order_bound)
    return BoundCheck(k, value, order_bound, rank_bound, ok)
