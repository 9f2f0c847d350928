"""Equivariant Lefschetz duality by explicit cap products.

Pipeline for a G-complex ``Y`` that is an orientable homology N-manifold and an
invariant ``A`` containing the singular set:

1. ``star_neighborhood`` gives ``sd²Y = B ∪ Ubar`` with ``D = B ∩ Ubar``.
2. ``orientation_cycle`` finds the G-invariant generator ``Γ`` of ``Z_N(Y)``.
3. ``relative_class`` restricts it to ``Γ_U ∈ Z_N(B, D)``.
4. ``duality_map`` builds ``Φ_q(c) = (-1)^q (c ∩ Γ_U)`` from
   ``R_q = C^{N-q}(B, D)`` to ``C_q(B)``. With the cap convention of
   :mod:`equirep.algebra` this is a chain map once ``R`` carries the
   differential ``(-1)^(q-1) δ``.
5. ``verify_lefschetz`` checks Φ and compares the Bredon groups on both sides.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    Coefficient,
    FgAbGroup,
    IntChainComplex,
    IntMatrix,
    as_group,
    boundary_faces,
    coeff_label,
    cohomology,
    homology,
    integer_kernel,
    is_chain_map,
    mapping_cone,
    simplicial_chain_complex,
)
from .bredon import bredon_cohomology, bredon_complex, bredon_homology, pad
from .complex import (
    DEFAULT_MAX_SIMPLICES,
    GComplex,
    Simplex,
    StarNeighborhood,
    Subcomplex,
    star_neighborhood,
)

Chain = dict[Simplex, int]


class DualityError(ValueError):
    """A hypothesis of the duality pipeline does not hold for the input."""


@dataclass
class OrientationData:
    dimension: int
    cycle: Chain
    relative: Chain | None = None

    def to_json(self) -> dict:
        def enc(c):
            return None if c is None else [[list(s), v] for s, v in sorted(c.items())]
        return {"dimension": self.dimension, "cycle": enc(self.cycle), "relative": enc(self.relative)}


def _top_cycles(top: Sequence[Simplex], excluded: frozenset[Simplex] = frozenset()) -> list[Chain]:
    """Basis of ``Z_N`` of the relative complex spanned by ``top`` modulo ``excluded``.

    Pseudomanifold-like inputs (each ridge in at most two top simplices) are
    handled by propagating orientations; anything else uses a dense kernel.
    """
    top = [s for s in top if s not in excluded]
    cof: dict[Simplex, list[tuple[int, int]]] = {}
    for j, s in enumerate(top):
        for sign, f in boundary_faces(s):
            if f not in excluded:
                cof.setdefault(f, []).append((j, sign))
    if not top:
        return []
    if len(top[0]) == 1:
        return [{s: 1} for s in top]
    if any(len(v) > 2 for v in cof.values()):
        ridges = sorted(cof)
        ridx = {r: i for i, r in enumerate(ridges)}
        A = [[0] * len(top) for _ in ridges]
        for r, lst in cof.items():
            for j, sign in lst:
                A[ridx[r]][j] += sign
        return [{top[j]: x for j, x in enumerate(v) if x} for v in integer_kernel(A, len(top))]
    adj: list[list[tuple[int, int]]] = [[] for _ in top]
    dead = [False] * len(top)
    for lst in cof.values():
        if len(lst) == 1:
            dead[lst[0][0]] = True
        else:
            (j1, a1), (j2, a2) = lst
            # x1 a1 + x2 a2 = 0
            rel = -a1 * a2
            adj[j1].append((j2, rel))
            adj[j2].append((j1, rel))
    coef = [0] * len(top)
    out = []
    for start in range(len(top)):
        if coef[start]:
            continue
        coef[start] = 1
        comp, stack, ok = [start], [start], True
        while stack:
            j = stack.pop()
            ok = ok and not dead[j]
            for k, rel in adj[j]:
                want = coef[j] * rel
                if coef[k] == 0:
                    coef[k] = want
                    comp.append(k)
                    stack.append(k)
                elif coef[k] != want:
                    ok = False
        if ok:
            out.append({top[j]: coef[j] for j in sorted(comp)})
    return out


def _normalize_sign(c: Chain) -> Chain:
    first = min(c)
    return c if c[first] > 0 else {s: -v for s, v in c.items()}


def _push(Y: GComplex, g: int, c: Chain) -> Chain:
    out: Chain = {}
    for s, v in c.items():
        sign, t = Y.act(g, s)
        out[t] = out.get(t, 0) + sign * v
    return out


def orientation_cycle(Y: GComplex) -> OrientationData:
    """The generator of ``H_N(Y) = Z_N(Y)``, checked to be G-invariant."""
    N = Y.dim
    if N < 0:
        raise DualityError("empty complex has no orientation cycle")
    cycles = _top_cycles(Y.simplices[N])
    if len(cycles) != 1:
        raise DualityError(f"H_{N}(Y) has rank {len(cycles)}, expected Z (hypothesis (I))")
    gamma = _normalize_sign(cycles[0])
    for g in Y.group.generators:
        img = _push(Y, g, gamma)
        if img != gamma:
            if img == {s: -v for s, v in gamma.items()}:
                raise DualityError(f"group element {g} acts by -1 on H_{N}(Y) (orientation reversing; "
                                   "hypothesis (I) fails)")
            raise DualityError(f"group element {g} does not preserve the orientation cycle")
    return OrientationData(N, gamma)


def relative_class(Y: GComplex, ubar: Subcomplex, b: Subcomplex, d: Subcomplex,
                   data: OrientationData) -> OrientationData:
    """Fill in ``Γ_U``, the image of ``Γ`` in ``C_N(B, D)``.

    Requires ``H_N(Y) -> H_N(Y, Ubar)`` to be an isomorphism, which in the top
    degree means ``Γ`` restricted off ``Ubar`` spans ``Z_N(Y, Ubar)``.
    """
    N = data.dimension
    rel_cycles = _top_cycles(Y.simplices[N], ubar.simplex_set)
    gamma_u = {s: v for s, v in data.cycle.items() if s not in ubar}
    if len(rel_cycles) != 1 or not gamma_u or not _spans(gamma_u, rel_cycles[0]):
        raise DualityError(f"H_{N}(Y) -> H_{N}(Y, Ubar) is not an isomorphism")
    top_b = [s for s in b.simplices[N]] if b.dim >= N else []
    bd_cycles = _top_cycles(top_b, d.simplex_set)
    if len(bd_cycles) != 1 or not _spans(gamma_u, bd_cycles[0]):
        raise DualityError("internal: Γ_U does not generate Z_N(B, D)")
    for g in Y.group.generators:
        if _push(Y, g, gamma_u) != gamma_u:
            raise DualityError("internal: Γ_U is not G-invariant")
    return OrientationData(N, data.cycle, gamma_u)


def _spans(c: Chain, gen: Chain) -> bool:
    """``c = ±gen``."""
    return c == gen or c == {s: -v for s, v in gen.items()}


@dataclass
class DualityMap:
    """``Φ: R -> C_*(B)`` with ``R_q = C^{N-q}(B, D)``; bases are the complexes' labels."""

    dimension: int
    source: IntChainComplex
    target: IntChainComplex
    maps: dict[int, IntMatrix]


def duality_map(b: Subcomplex, d: Subcomplex, data: OrientationData) -> DualityMap:
    if data.relative is None:
        raise DualityError("orientation data has no relative class")
    N = data.dimension
    rel = simplicial_chain_complex(b.simplices, exclude=d.simplex_set)
    C = simplicial_chain_complex(b.simplices)
    dims = [rel.dim(N - q) for q in range(N + 1)]
    bd = {q: rel.d(N - q + 1).transpose().scale((-1) ** (q - 1)) for q in range(1, N + 1)}
    labels = [rel.labels[N - q] if N - q <= rel.top else [] for q in range(N + 1)]
    R = IntChainComplex(dims, bd, labels)
    maps = {}
    for q in range(N + 1):
        ridx = {s: i for i, s in enumerate(labels[q])}
        cidx = {s: i for i, s in enumerate(C.labels[q])} if q <= C.top else {}
        sign = (-1) ** q
        entries = []
        for s, x in data.relative.items():
            j = ridx.get(s[q:])
            if j is not None:
                entries.append((cidx[s[:q + 1]], j, sign * x))
        maps[q] = IntMatrix.from_entries(C.dim(q), R.dim(q), entries)
    return DualityMap(N, R, C, maps)


def _perm_matrix(Y: GComplex, g: int, basis: Sequence[Simplex]) -> IntMatrix:
    idx = {s: i for i, s in enumerate(basis)}
    entries = []
    for j, s in enumerate(basis):
        sign, t = Y.act(g, s)
        entries.append((idx[t], j, sign))
    return IntMatrix.from_entries(len(basis), len(basis), entries)


def check_equivariance(Y: GComplex, phi: DualityMap) -> tuple[int, int] | None:
    """First ``(degree, element)`` where ``g_# Φ (g^#) != Φ``, or ``None``."""
    for q, F in phi.maps.items():
        for g in range(Y.group.order):
            Pc = _perm_matrix(Y, g, phi.target.labels[q])
            Pr = _perm_matrix(Y, g, phi.source.labels[q])
            if Pc @ F @ Pr.transpose() != F:
                return q, g
    return None


def _coinvariant_map(F: IntMatrix, src_labels, dst_labels, src_orbits, dst_orbits) -> IntMatrix:
    """``Z ⊗_{ZG} F`` on orbit bases."""
    reps, transport = src_orbits
    dst_reps, dst_transport = dst_orbits
    col_of = {s: j for j, s in enumerate(src_labels)}
    rep_cols = {col_of[r]: k for k, r in enumerate(reps)}
    entries = []
    for r, c, v in F.entries():
        k = rep_cols.get(c)
        if k is None:
            continue
        i, t = dst_transport[dst_labels[r]]
        entries.append((i, k, v * t))
    return IntMatrix.from_entries(len(dst_reps), len(reps), entries)


@dataclass
class CoefficientRow:
    coeff: str
    p: int
    cohom_B: FgAbGroup
    hom_BD: FgAbGroup
    hom_YU: FgAbGroup
    hom_B: FgAbGroup
    cohom_BD: FgAbGroup
    cohom_YU: FgAbGroup
    tensor_phi_iso: bool
    hom_phi_iso: bool

    @property
    def first_chain(self) -> bool:
        return self.cohom_B == self.hom_BD == self.hom_YU

    @property
    def second_chain(self) -> bool:
        return self.hom_B == self.cohom_BD == self.cohom_YU

    def to_json(self) -> dict:
        return {"coeff": self.coeff, "p": self.p,
                "H^p_G(B)": str(self.cohom_B), "H^G_{N-p}(B,D)": str(self.hom_BD),
                "H^G_{N-p}(Y,Ubar)": str(self.hom_YU),
                "H^G_p(B)": str(self.hom_B), "H_G^{N-p}(B,D)": str(self.cohom_BD),
                "H_G^{N-p}(Y,Ubar)": str(self.cohom_YU),
                "first_chain": self.first_chain, "second_chain": self.second_chain,
                "M⊗Φ_iso": self.tensor_phi_iso, "Hom(Φ,M)_iso": self.hom_phi_iso}


@dataclass
class DualityReport:
    dimension: int
    sizes: dict[str, int]
    chain_map: bool
    chain_map_failure: int | None
    equivariant: bool
    equivariance_failure: tuple[int, int] | None
    quasi_iso: bool
    rows: list[CoefficientRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.chain_map and self.equivariant and self.quasi_iso
                and all(r.first_chain and r.second_chain and r.tensor_phi_iso and r.hom_phi_iso
                        for r in self.rows))

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "sizes": self.sizes,
                "chain_map": self.chain_map, "chain_map_failure": self.chain_map_failure,
                "equivariant": self.equivariant,
                "equivariance_failure": list(self.equivariance_failure) if self.equivariance_failure else None,
                "quasi_iso": self.quasi_iso, "ok": self.ok,
                "rows": [r.to_json() for r in self.rows]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)


def _acyclic(groups: Sequence[FgAbGroup]) -> bool:
    return all(g.is_trivial() for g in groups)


def lefschetz_pieces(Y: GComplex, A: Subcomplex | None, subdivide: bool = True,
                     max_simplices: int = DEFAULT_MAX_SIMPLICES) -> StarNeighborhood:
    """The decomposition used by :func:`verify_lefschetz`.

    With ``subdivide=False`` and empty ``A`` the complex is used as is (``B = Y``).
    """
    if A is None:
        A = Y.empty_sub()
    if subdivide:
        return star_neighborhood(Y, A, max_simplices)
    if not A.is_empty():
        raise DualityError("a nonempty A needs the subdivided neighbourhood")
    empty = Y.empty_sub()
    return StarNeighborhood(Y, empty, Y.whole(), empty, empty, frozenset())


def verify_lefschetz(Y: GComplex, A: Subcomplex | None, coeffs: Sequence[Coefficient] = (None,),
                     subdivide: bool = True, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> DualityReport:
    """Run the whole duality pipeline and compare all six Bredon groups per ``M`` and ``p``."""
    nb = lefschetz_pieces(Y, A, subdivide, max_simplices)
    Y2, ubar, b, d = nb
    data = relative_class(Y2, ubar, b, d, orientation_cycle(Y2))
    N = data.dimension
    phi = duality_map(b, d, data)

    fail = is_chain_map(phi.maps, phi.source, phi.target)
    eq_fail = check_equivariance(Y2, phi)
    cone = mapping_cone(phi.maps, phi.source, phi.target)
    quasi = _acyclic(cone.integral_homology())

    Bc = b.as_complex()
    bsub = Subcomplex(Bc, d.simplex_set)
    orb_B = bredon_complex(Bc)
    orb_BD = bredon_complex(Bc, bsub)

    rows: list[CoefficientRow] = []
    if fail is None and eq_fail is None:
        # orbit-level Z ⊗_{ZG} Φ; Hom_{ZG}(Φ, M) is its dual for trivial M
        def orbits(orb, deg):
            if deg > orb.chains.top:
                return [], {}
            return orb.reps[deg], orb.transport
        zR = {}
        for q in range(1, N + 1):
            zR[q] = _coinvariant_map(phi.source.d(q), phi.source.labels[q], phi.source.labels[q - 1],
                                     orbits(orb_BD, N - q), orbits(orb_BD, N - q + 1))
        Rbar = IntChainComplex([len(orbits(orb_BD, N - q)[0]) for q in range(N + 1)], zR)
        Cbar = orb_B.chains
        Fbar = {q: _coinvariant_map(phi.maps[q], phi.source.labels[q], phi.target.labels[q],
                                    orbits(orb_BD, N - q), orbits(orb_B, q))
                for q in range(N + 1)}
        orbit_cone = mapping_cone(Fbar, Rbar, Cbar) if is_chain_map(Fbar, Rbar, Cbar) is None else None
    else:
        orbit_cone = None

    for M in coeffs:
        grp = as_group(M)
        hB = pad(bredon_homology(Bc, None, grp), N + 1)
        cB = pad(bredon_cohomology(Bc, None, grp), N + 1)
        hBD = pad(bredon_homology(Bc, bsub, grp), N + 1)
        cBD = pad(bredon_cohomology(Bc, bsub, grp), N + 1)
        hYU = pad(bredon_homology(Y2, ubar, grp), N + 1)
        cYU = pad(bredon_cohomology(Y2, ubar, grp), N + 1)
        t_iso = orbit_cone is not None and _acyclic(homology(orbit_cone, grp))
        h_iso = orbit_cone is not None and _acyclic(cohomology(orbit_cone, grp))
        for p in range(N + 1):
            rows.append(CoefficientRow(coeff_label(M), p, cB[p], hBD[N - p], hYU[N - p],
                                       hB[p], cBD[N - p], cYU[N - p], t_iso, h_iso))
    sizes = {"sd2": Y2.num_simplices, "B": len(b), "D": len(d), "Ubar": len(ubar)}
    return DualityReport(N, sizes, fail is None, fail, eq_fail is None, eq_fail, quasi, rows)
