"""Exact integer linear algebra and (co)homology of free chain complexes.

Everything here uses Python integers, so there is no overflow. Boundary
matrices are stored sparsely (:class:`IntMatrix`); the transforms of the
Smith normal form and the lattice routines work on dense ``list[list[int]]``
and are meant for the small presentation matrices that describe individual
homology groups and induced maps.

Cap product convention: for a p-cochain ``c`` and an oriented simplex
``[v0, ..., vn]`` (vertices in increasing order)::

    c ∩ [v0, ..., vn] = c([v_{n-p}, ..., v_n]) * [v0, ..., v_{n-p}]

i.e. the cochain is evaluated on the back face and the front face remains.
With this convention, for an n-chain ``z``,
``∂(c ∩ z) = (c ∩ ∂z) + (-1)^(n-p) (δc ∩ z)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Mapping, Sequence, Union

Simplex = tuple[int, ...]
Dense = list[list[int]]


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse matrices


class IntMatrix:
    """Sparse integer matrix; ``data[row][col]`` holds the nonzero entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Mapping[int, Mapping[int, int]] | None = None):
        self.rows = rows
        self.cols = cols
        self.data: dict[int, dict[int, int]] = {}
        if data:
            for r, row in data.items():
                clean = {c: int(v) for c, v in row.items() if v}
                if clean:
                    self.data[r] = clean

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]) -> "IntMatrix":
        data: dict[int, dict[int, int]] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise AlgebraError(f"entry ({r}, {c}) outside {rows}x{cols}")
            row = data.setdefault(r, {})
            row[c] = row.get(c, 0) + v
        return cls(rows, cols, data)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        return cls(rows, cols, {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(dense)})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entries(self) -> Iterable[tuple[int, int, int]]:
        for r in sorted(self.data):
            row = self.data[r]
            for c in sorted(row):
                yield r, c, row[c]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.data.get(r, {}).get(c, 0)

    def to_dense(self) -> Dense:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self.data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def transpose(self) -> "IntMatrix":
        data: dict[int, dict[int, int]] = {}
        for r, row in self.data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return IntMatrix(self.cols, self.rows, data)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise AlgebraError(f"shape mismatch {self.shape} @ {other.shape}")
        data: dict[int, dict[int, int]] = {}
        for r, row in self.data.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                orow = other.data.get(k)
                if orow:
                    for c, w in orow.items():
                        acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                data[r] = acc
        return IntMatrix(self.rows, other.cols, data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise AlgebraError("shape mismatch in addition")
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            d = data.setdefault(r, {})
            for c, v in row.items():
                d[c] = d.get(c, 0) + v
        return IntMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {r: {c: k * v for c, v in row.items()} for r, row in self.data.items()})

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Sparse matrix-vector product on a ``{index: value}`` vector."""
        out: dict[int, int] = {}
        cols = self.transpose_cache
        for c, x in vec.items():
            for r, v in cols.get(c, {}).items():
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    @property
    def transpose_cache(self) -> dict[int, dict[int, int]]:
        # recomputed per call; callers apply once per matrix
        return self.transpose().data

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(e) for e in self.entries()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "IntMatrix":
        return cls.from_entries(obj["rows"], obj["cols"], (tuple(e) for e in obj["entries"]))


def hstack(*mats: IntMatrix) -> IntMatrix:
    rows = mats[0].rows
    out: dict[int, dict[int, int]] = {}
    off = 0
    for m in mats:
        if m.rows != rows:
            raise AlgebraError("row mismatch in hstack")
        for r, row in m.data.items():
            d = out.setdefault(r, {})
            for c, v in row.items():
                d[c + off] = v
        off += m.cols
    return IntMatrix(rows, off, out)


def vstack(*mats: IntMatrix) -> IntMatrix:
    return hstack(*(m.transpose() for m in mats)).transpose()


# ---------------------------------------------------------------------------
# dense Smith normal form with transforms


def _identity(n: int) -> Dense:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass
class SnfResult:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: Dense = field(repr=False, default_factory=list)
    V_inv: Dense = field(repr=False, default_factory=list)

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.shape))]


def _smith_dense(A: Dense, rows: int, cols: int, transforms: bool = True):
    A = [list(r) for r in A]
    U = _identity(rows) if transforms else None
    Ui = _identity(rows) if transforms else None
    V = _identity(cols) if transforms else None
    Vi = _identity(cols) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if not q:
            return
        rs, rd = A[src], A[dst]
        for k in range(cols):
            if rs[k]:
                rd[k] += q * rs[k]
        if transforms:
            us, ud = U[src], U[dst]
            for k in range(rows):
                if us[k]:
                    ud[k] += q * us[k]
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if not q:
            return
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if transforms:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vs, vd = Vi[src], Vi[dst]
            for k in range(cols):
                if vd[k]:
                    vs[k] -= q * vd[k]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if transforms:
            U[i] = [-x for x in U[i]]
            for row in Ui:
                row[i] = -row[i]

    t = 0
    n = min(rows, cols)
    while t < n:
        best = None
        for i in range(t, rows):
            row = A[i]
            for j in range(t, cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, rows):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, "r")
                for j in range(t, cols):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return A, U, V, Ui, Vi


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms, verified by multiplication."""
    rows, cols = A.shape
    S, U, V, Ui, Vi = _smith_dense(A.to_dense(), rows, cols)
    res = SnfResult(IntMatrix.from_dense(S, cols), IntMatrix.from_dense(U, rows),
                    IntMatrix.from_dense(V, cols), Ui, Vi)
    if res.U @ A @ res.V != res.S:
        raise AlgebraError("SNF verification failed")
    d = [x for x in res.diagonal if x]
    if any(b % a for a, b in zip(d, d[1:])):
        raise AlgebraError("SNF divisibility chain violated")
    return res


def _diag_chain(values: Iterable[int]) -> list[int]:
    """Invariant factors of a diagonal matrix (gcd/lcm sweeps; no factoring)."""
    values = [abs(v) for v in values if v]
    ones = sum(1 for v in values if v == 1)
    d = sorted(v for v in values if v != 1)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = d[i], d[j]
            g = math.gcd(a, b)
            if g != a:
                d[i], d[j] = g, a * b // g
    return [1] * ones + sorted(d)


def invariant_factors(A: IntMatrix) -> tuple[int, list[int]]:
    """Rank and the invariant factors ``> 1`` of ``A``.

    Sparse elimination (Markowitz-style: shortest row within the shortest
    columns) on pivots that divide their whole row and column, so every step
    splits off a diagonal entry; unit pivots are taken first. A dense SNF
    handles whatever residue remains, and the collected diagonal is brought
    into divisibility-chain form at the end.
    """
    rows = {r: dict(row) for r, row in A.data.items()}
    colmap: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            colmap.setdefault(c, set()).add(r)
    diag: list[int] = []

    def divides_all(v: int, r: int, c: int) -> bool:
        return all(x % v == 0 for x in rows[r].values()) and all(rows[r2][c] % v == 0 for r2 in colmap[c])

    def pick(c: int, units_only: bool):
        best = None
        for r in colmap[c]:
            v = abs(rows[r][c])
            if units_only and v != 1:
                continue
            key = (v, len(rows[r]))
            if best is None or key < best[0]:
                best = (key, r)
        if best is None:
            return None
        r = best[1]
        if best[0][0] != 1 and not divides_all(best[0][0], r, c):
            return None
        return r

    for units_only in (True, False):
        progress = True
        while progress:
            progress = False
            for c in sorted(colmap, key=lambda c: len(colmap[c])):
                rs = colmap.get(c)
                if rs is None:
                    continue
                if not rs:
                    del colmap[c]
                    continue
                r = pick(c, units_only)
                if r is None:
                    continue
                prow = rows.pop(r)
                for c2 in prow:
                    colmap[c2].discard(r)
                pv = prow[c]
                for r2 in list(colmap[c]):
                    row2 = rows[r2]
                    f = row2[c] // pv
                    for c2, x in prow.items():
                        nv = row2.get(c2, 0) - f * x
                        if nv:
                            if c2 not in row2:
                                colmap[c2].add(r2)
                            row2[c2] = nv
                        elif c2 in row2:
                            del row2[c2]
                            colmap[c2].discard(r2)
                    if not row2:
                        del rows[r2]
                del colmap[c]
                diag.append(abs(pv))
                progress = True
    rows = {r: row for r, row in rows.items() if row}
    if rows:
        rlist = sorted(rows)
        clist = sorted({c for row in rows.values() for c in row})
        cidx = {c: i for i, c in enumerate(clist)}
        dense = [[0] * len(clist) for _ in rlist]
        for i, r in enumerate(rlist):
            for c, v in rows[r].items():
                dense[i][cidx[c]] = v
        S, *_ = _smith_dense(dense, len(rlist), len(clist), transforms=False)
        diag.extend(S[i][i] for i in range(min(len(rlist), len(clist))) if S[i][i])
    chain = _diag_chain(diag)
    return len(chain), [d for d in chain if d > 1]


def matrix_rank(A: IntMatrix) -> int:
    return invariant_factors(A)[0]


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True, order=True)
class FgAbGroup:
    """``Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`` with ``d1 | d2 | ... | dk`` and ``di >= 2``.

    Canonical generators are ordered torsion first, then free.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise AlgebraError(f"torsion {t} is not a divisor chain of integers >= 2")
        if self.rank < 0:
            raise AlgebraError("negative rank")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> "FgAbGroup":
        """Direct sum of cyclic groups; order 0 means ``Z``, order 1 is dropped."""
        orders = list(orders)
        rank = sum(1 for o in orders if o == 0)
        chain = _diag_chain(o for o in orders if o)
        return cls(rank, tuple(d for d in chain if d > 1))

    @classmethod
    def parse(cls, text: str) -> "FgAbGroup":
        text = text.strip()
        if text in ("0", ""):
            return cls()
        orders = []
        for term in re.split(r"\s*(?:\+|⊕)\s*", text):
            m = re.fullmatch(r"(?:(\d+)\s*\*\s*)?Z(?:\s*/\s*(\d+))?(?:\^(\d+))?", term)
            if not m:
                raise AlgebraError(f"cannot parse abelian group term {term!r}")
            mult = int(m.group(1) or 1) * int(m.group(3) or 1)
            orders += [int(m.group(2) or 0)] * mult
        return cls.from_cyclic(orders)

    @classmethod
    def Z(cls, rank: int = 1) -> "FgAbGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, m: int) -> "FgAbGroup":
        return cls.from_cyclic([m])

    @property
    def orders(self) -> list[int]:
        """Orders of the canonical generators (0 for infinite)."""
        return list(self.torsion) + [0] * self.rank

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.rank

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | float:
        if self.rank:
            return math.inf
        return reduce(lambda a, b: a * b, self.torsion, 1)

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_cyclic(self.orders + other.orders)

    def tensor(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_cyclic(math.gcd(a, b) for a in self.orders for b in other.orders)

    def tor(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_cyclic(math.gcd(a, b) for a in self.orders for b in other.orders if a and b)

    def hom(self, other: "FgAbGroup") -> "FgAbGroup":
        out = []
        for a in self.orders:
            for b in other.orders:
                if a == 0:
                    out.append(b)
                elif b != 0:
                    out.append(math.gcd(a, b))
        return FgAbGroup.from_cyclic(out)

    def ext(self, other: "FgAbGroup") -> "FgAbGroup":
        out = []
        for a in self.orders:
            if a == 0:
                continue
            for b in other.orders:
                out.append(a if b == 0 else math.gcd(a, b))
        return FgAbGroup.from_cyclic(out)

    def __str__(self) -> str:
        if self.is_trivial():
            return "0"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FgAbGroup({self})"


Coefficient = Union[int, FgAbGroup, str, None]


def as_group(coeff: Coefficient) -> FgAbGroup:
    """Normalize a coefficient: ``None``/``0`` is ``Z``, ``m`` is ``Z/m``."""
    if coeff is None:
        return FgAbGroup(1)
    if isinstance(coeff, FgAbGroup):
        return coeff
    if isinstance(coeff, str):
        return FgAbGroup.parse(coeff)
    if coeff == 0:
        return FgAbGroup(1)
    return FgAbGroup.cyclic(int(coeff))


def coeff_label(coeff: Coefficient) -> str:
    return str(as_group(coeff))


# ---------------------------------------------------------------------------
# lattices and subquotients (dense; small presentation-sized inputs)


def hermite_rows(gens: Sequence[Sequence[int]], width: int, track: int = 0) -> tuple[Dense, list[int]]:
    """Row echelon (Hermite) form of the row lattice spanned by ``gens``.

    With ``track > 0`` the last ``track`` columns ride along without being
    pivoted (used for kernels). Returns the nonzero echelon rows and pivots.
    """
    rows = [list(g) for g in gens if any(g)]
    piv_width = width - track
    basis: Dense = []
    pivots: list[int] = []
    col = 0
    while rows and col < piv_width:
        active = [r for r in rows if r[col]]
        if not active:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                for k in range(col, width):
                    if p[k]:
                        r[k] -= q * p[k]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        p = active[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        pivots.append(col)
        rows = rest
        col += 1
    # reduce entries above pivots for a canonical basis
    for i in range(len(basis) - 1, -1, -1):
        pc = pivots[i]
        for j in range(i):
            q = basis[j][pc] // basis[i][pc]
            if q:
                bj, bi = basis[j], basis[i]
                for k in range(pc, width):
                    if bi[k]:
                        bj[k] -= q * bi[k]
    if track:
        # rows whose pivot part vanished carry kernel information
        leftovers = [r for r in rows if any(r)]
        return basis + leftovers, pivots
    return basis, pivots


def integer_kernel(A: Dense, ncols: int) -> Dense:
    """Saturated basis (as rows) of ``{x in Z^ncols : A x = 0}``."""
    m = len(A)
    aug = [[A[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    rows, pivots = hermite_rows(aug, m + ncols, track=ncols)
    kernel = [r[m:] for r in rows[len(pivots):] if not any(r[:m])]
    return kernel


def kernel_of(A: IntMatrix) -> Dense:
    return integer_kernel(A.to_dense(), A.cols)


class Lattice:
    """Sublattice of ``Z^n`` with an echelon basis (rows)."""

    def __init__(self, n: int, gens: Iterable[Sequence[int]] = ()):
        self.n = n
        self.basis, self.pivots = hermite_rows([list(g) for g in gens], n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, v: Sequence[int]) -> list[int] | None:
        """Coordinates of ``v`` in the echelon basis, or ``None`` if ``v`` is not in the lattice."""
        v = list(v)
        out = []
        for b, p in zip(self.basis, self.pivots):
            if v[p] % b[p]:
                return None
            q = v[p] // b[p]
            out.append(q)
            if q:
                for k in range(p, self.n):
                    if b[k]:
                        v[k] -= q * b[k]
        if any(v):
            return None
        return out

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.n == other.n and self.basis == other.basis

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.n, self.basis + other.basis)


def matvec(A: Dense, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x) if a and b) for row in A]


def preimage(A: Dense, ncols: int, target: Lattice, within: Lattice | None = None) -> Lattice:
    """``{x in within : A x in target}`` (``within`` defaults to ``Z^ncols``)."""
    m = len(A)
    if within is None:
        wb = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    else:
        wb = within.basis
    k = len(wb)
    AW = [[sum(A[r][c] * w[c] for c in range(ncols) if w[c]) for w in wb] for r in range(m)]
    tb = target.basis
    # solve AW y - T^t z = 0
    big = [AW[r] + [-t[r] for t in tb] for r in range(m)]
    ker = integer_kernel(big, k + len(tb))
    gens = []
    for v in ker:
        y = v[:k]
        gens.append([sum(y[i] * wb[i][c] for i in range(k)) for c in range(ncols)])
    if m == 0:
        gens = [list(w) for w in wb]
    return Lattice(ncols, gens)


class SubQuotient:
    """The abelian group ``L / R`` for lattices ``R ⊆ L ⊆ Z^n``.

    ``group`` is its canonical form; ``coords`` maps a vector of ``L`` to
    canonical coordinates (torsion components reduced modulo their order) and
    ``lifts`` holds representatives in ``Z^n`` of the canonical generators.
    """

    def __init__(self, L: Lattice, R: Lattice):
        if not L.contains_lattice(R):
            raise AlgebraError("relations are not contained in the lattice")
        self.L, self.R = L, R
        k = L.rank
        Rc = [L.coords(r) for r in R.basis]
        if k == 0:
            self._V = []
            self._keep = []
            self._orders = []
            self.lifts: Dense = []
            self.group = FgAbGroup()
            return
        S, _, V, _, Vi = _smith_dense(Rc, len(Rc), k) if Rc else ([], None, _identity(k), None, _identity(k))
        diag = [S[i][i] if i < len(S) else 0 for i in range(k)]
        keep = [i for i in range(k) if diag[i] != 1]
        tors = [i for i in keep if diag[i] > 1]
        free = [i for i in keep if diag[i] == 0]
        self._keep = tors + free
        self._orders = [diag[i] for i in self._keep]
        self._V = V
        B = L.basis
        self.lifts = [[sum(Vi[i][j] * B[j][c] for j in range(k) if Vi[i][j]) for c in range(L.n)]
                      for i in self._keep]
        self.group = FgAbGroup(len(free), tuple(diag[i] for i in tors))

    @property
    def n(self) -> int:
        return self.L.n

    def coords(self, v: Sequence[int]) -> list[int]:
        c = self.L.coords(v)
        if c is None:
            raise AlgebraError("vector not in the lattice of the subquotient")
        k = len(c)
        out = []
        for i, d in zip(self._keep, self._orders):
            x = sum(c[j] * self._V[j][i] for j in range(k) if c[j])
            out.append(x % d if d else x)
        return out

    def __contains__(self, v: Sequence[int]) -> bool:
        return v in self.L


def induced_matrix(A: Dense, src: SubQuotient, dst: SubQuotient) -> Dense:
    """Matrix (columns = images of canonical generators) of the map induced by ``A``.

    Raises if ``A`` does not map ``src.L`` into ``dst.L`` and ``src.R`` into ``dst.R``.
    """
    for r in src.R.basis:
        if matvec(A, r) not in dst.R:
            raise AlgebraError("map does not preserve relations")
    cols = []
    for lift in src.lifts:
        cols.append(dst.coords(matvec(A, lift)))
    ng = dst.group.ngens
    return [[cols[j][i] for j in range(len(cols))] for i in range(ng)]


def _diag_lattice(G: FgAbGroup) -> Lattice:
    n = G.ngens
    return Lattice(n, [[d if i == j else 0 for j in range(n)] for i, d in enumerate(G.orders) if d])


def _full_lattice(n: int) -> Lattice:
    return Lattice(n, [[int(i == j) for j in range(n)] for i in range(n)])


def hom_kernel(H: Dense, src: FgAbGroup, dst: FgAbGroup) -> SubQuotient:
    """Kernel of ``H: src -> dst`` in canonical coordinates."""
    k = src.ngens
    Hm = H if H else [[0] * k for _ in range(dst.ngens)]
    L = preimage(Hm, k, _diag_lattice(dst)) if dst.ngens else _full_lattice(k)
    return SubQuotient(L, _diag_lattice(src))


def hom_cokernel(H: Dense, src: FgAbGroup, dst: FgAbGroup) -> SubQuotient:
    m = dst.ngens
    image_cols = [[H[i][j] for i in range(m)] for j in range(src.ngens)] if m else []
    return SubQuotient(_full_lattice(m), Lattice(m, image_cols) + _diag_lattice(dst))


def hom_image(H: Dense, src: FgAbGroup, dst: FgAbGroup) -> SubQuotient:
    m = dst.ngens
    image_cols = [[H[i][j] for i in range(m)] for j in range(src.ngens)] if m else []
    D = _diag_lattice(dst)
    return SubQuotient(Lattice(m, image_cols) + D, D)


def is_isomorphism(H: Dense, src: FgAbGroup, dst: FgAbGroup) -> bool:
    return hom_kernel(H, src, dst).group.is_trivial() and hom_cokernel(H, src, dst).group.is_trivial()


# ---------------------------------------------------------------------------
# chain complexes


class IntChainComplex:
    """Bounded chain complex of free abelian groups in degrees ``0..top``.

    ``boundary[n]`` is the matrix of ``∂_n : C_n -> C_{n-1}`` (rows index
    ``C_{n-1}``); ``∂_0 = 0``. ``∂∂ = 0`` is verified on construction.
    """

    def __init__(self, dims: Sequence[int], boundary: Mapping[int, IntMatrix],
                 labels: Sequence[Sequence] | None = None, check: bool = True):
        self.dims = list(dims)
        self.boundary: dict[int, IntMatrix] = {}
        for n in range(1, len(self.dims)):
            d = boundary.get(n)
            if d is None:
                d = IntMatrix.zeros(self.dims[n - 1], self.dims[n])
            if d.shape != (self.dims[n - 1], self.dims[n]):
                raise AlgebraError(f"∂_{n} has shape {d.shape}, expected {(self.dims[n - 1], self.dims[n])}")
            self.boundary[n] = d
        self.labels = [list(l) for l in labels] if labels is not None else None
        self._factors: dict[int, tuple[int, list[int]]] = {}
        self._cofactors: dict[int, tuple[int, list[int]]] = {}
        if check:
            for n in range(2, len(self.dims)):
                if not (self.boundary[n - 1] @ self.boundary[n]).is_zero():
                    raise AlgebraError(f"∂_{n - 1} ∘ ∂_{n} != 0")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, n: int) -> IntMatrix:
        if 1 <= n <= self.top:
            return self.boundary[n]
        rows = self.dims[n - 1] if 0 <= n - 1 <= self.top else 0
        cols = self.dims[n] if 0 <= n <= self.top else 0
        return IntMatrix.zeros(rows, cols)

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.top else 0

    def _inv(self, n: int) -> tuple[int, list[int]]:
        if n not in self._factors:
            self._factors[n] = invariant_factors(self.d(n)) if 1 <= n <= self.top else (0, [])
        return self._factors[n]

    def _coinv(self, n: int) -> tuple[int, list[int]]:
        # invariant factors of δ^{n-1} = ∂_n^T, computed on the transpose
        if n not in self._cofactors:
            self._cofactors[n] = invariant_factors(self.d(n).transpose()) if 1 <= n <= self.top else (0, [])
        return self._cofactors[n]

    def integral_homology(self) -> list[FgAbGroup]:
        out = []
        for n in range(self.top + 1):
            rk_n = self._inv(n)[0]
            rk_n1, tors = self._inv(n + 1)
            out.append(FgAbGroup(self.dims[n] - rk_n - rk_n1, tuple(tors)))
        return out

    def integral_cohomology(self) -> list[FgAbGroup]:
        """``H^n`` from ``δ^n = ∂_{n+1}^T`` and ``δ^{n-1} = ∂_n^T``."""
        out = []
        for n in range(self.top + 1):
            rk_next = self._coinv(n + 1)[0]
            rk_prev, tors = self._coinv(n)
            out.append(FgAbGroup(self.dims[n] - rk_next - rk_prev, tuple(tors)))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * d for n, d in enumerate(self.dims))

    def shift_transpose(self) -> "IntChainComplex":
        """The cochain complex ``Hom(C, Z)`` reindexed as a chain complex ``R_q = C^{top-q}``."""
        N = self.top
        dims = [self.dims[N - q] for q in range(N + 1)]
        bd = {q: self.d(N - q + 1).transpose() for q in range(1, N + 1)}
        labels = [self.labels[N - q] for q in range(N + 1)] if self.labels else None
        return IntChainComplex(dims, bd, labels, check=False)

    def to_json(self) -> dict:
        out = {"dims": self.dims,
               "boundary": {str(n): self.boundary[n].to_json() for n in sorted(self.boundary)}}
        if self.labels is not None:
            out["labels"] = [[list(x) if isinstance(x, tuple) else x for x in l] for l in self.labels]
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "IntChainComplex":
        bd = {int(n): IntMatrix.from_json(m) for n, m in obj["boundary"].items()}
        labels = obj.get("labels")
        if labels is not None:
            labels = [[tuple(x) if isinstance(x, list) else x for x in l] for l in labels]
        return cls(obj["dims"], bd, labels)


def homology(C: IntChainComplex, coeff: Coefficient = None) -> list[FgAbGroup]:
    """``H_n(C; M)`` for every degree, by universal coefficients for ``M != Z``."""
    M = as_group(coeff)
    H = C.integral_homology()
    if M == FgAbGroup(1):
        return H
    out = []
    for n, h in enumerate(H):
        g = h.tensor(M)
        if n > 0:
            g = g + H[n - 1].tor(M)
        out.append(g)
    return out


def cohomology(C: IntChainComplex, coeff: Coefficient = None) -> list[FgAbGroup]:
    """``H^n(C; M) = H_n(Hom(C, M))``; degree ``n`` pairs with ``C_n``."""
    M = as_group(coeff)
    Hc = C.integral_cohomology()
    if M == FgAbGroup(1):
        return Hc
    # Hom(C, M) = Hom(C, Z) ⊗ M for free finite C; the cochain complex is free too
    out = []
    top = C.top
    for n in range(top + 1):
        g = Hc[n].tensor(M)
        if n < top:
            g = g + Hc[n + 1].tor(M)
        out.append(g)
    return out


def uct_cohomology_from_homology(H: Sequence[FgAbGroup], coeff: Coefficient = None) -> list[FgAbGroup]:
    M = as_group(coeff)
    return [H[n].hom(M) + (H[n - 1].ext(M) if n else FgAbGroup()) for n in range(len(H))]


def homology_presentation(C: IntChainComplex, n: int) -> SubQuotient:
    """``ker ∂_n / im ∂_{n+1}`` as a subquotient of ``Z^{C_n}``."""
    dn = C.dim(n)
    Z = Lattice(dn, kernel_of(C.d(n))) if n > 0 else _full_lattice(dn)
    nxt = C.d(n + 1)
    B = Lattice(dn, nxt.transpose().to_dense()) if nxt.cols else Lattice(dn)
    return SubQuotient(Z, B)


def cohomology_presentation(C: IntChainComplex, n: int) -> SubQuotient:
    """``ker δ^n / im δ^{n-1}`` as a subquotient of ``Z^{C_n}`` (cochain coordinates)."""
    dn = C.dim(n)
    nxt = C.d(n + 1)
    Z = Lattice(dn, kernel_of(nxt.transpose())) if nxt.rows and nxt.cols else _full_lattice(dn)
    prev = C.d(n)
    B = Lattice(dn, prev.to_dense()) if prev.rows and n > 0 else Lattice(dn)
    return SubQuotient(Z, B)


def presented_homology(orders: Sequence[Sequence[int]], diffs: Mapping[int, IntMatrix]) -> list[FgAbGroup]:
    """Homology of a complex of f.g. abelian groups ``K_n = ⊕ Z/orders[n][i]`` (0 means ``Z``).

    ``diffs[n]`` lifts ``K_n -> K_{n-1}`` to integer matrices on the generators.
    Each ``K_n`` is resolved by ``0 -> F1_n --T--> F0_n -> K_n``; the total
    complex ``Tot_n = F0_n ⊕ F1_{n-1}`` with
    ``D(x, y) = (d x + T y, h x - d' y)``, ``d' = T^{-1} d T``,
    ``h = -T^{-1} d²`` is free and quasi-isomorphic to ``K``.
    """
    top = len(orders) - 1
    tors = [[i for i, t in enumerate(o) if t] for o in orders]
    tpos = [{i: k for k, i in enumerate(ts)} for ts in tors]

    def d(n: int) -> IntMatrix:
        if 1 <= n <= top and n in diffs:
            return diffs[n]
        return IntMatrix.zeros(len(orders[n - 1]) if n >= 1 else 0, len(orders[n]) if n <= top else 0)

    def divide_into_torsion(M: IntMatrix, n_rows: int, scale_cols=None) -> IntMatrix:
        """``T^{-1} M`` for ``M`` landing in the relation lattice of degree ``n_rows``."""
        entries = []
        for r, c, v in M.entries():
            if scale_cols is not None:
                v *= scale_cols[c]
            t = orders[n_rows][r]
            if t == 0 or v % t:
                raise AlgebraError("differential does not respect the torsion presentation")
            entries.append((tpos[n_rows][r], c, v // t))
        return IntMatrix.from_entries(len(tors[n_rows]), M.cols, entries)

    dims = [(len(orders[n]) if n <= top else 0) + (len(tors[n - 1]) if n >= 1 else 0) for n in range(top + 2)]
    bd = {}
    for n in range(1, top + 2):
        e = []
        a0 = len(orders[n - 1])
        if n <= top:
            dn = d(n)
            e.extend(dn.entries())
            if n >= 2:
                h = divide_into_torsion(d(n - 1) @ dn, n - 2)
                e.extend((a0 + r, c, -v) for r, c, v in h.entries())
        # y in F1_{n-1}
        c0 = len(orders[n]) if n <= top else 0
        for k, i in enumerate(tors[n - 1]):
            e.append((i, c0 + k, orders[n - 1][i]))
        if n >= 2:
            dn1 = d(n - 1)
            sub = IntMatrix.from_entries(dn1.rows, len(tors[n - 1]),
                                         [(r, tpos[n - 1][c], v) for r, c, v in dn1.entries() if c in tpos[n - 1]])
            scale = [orders[n - 1][i] for i in tors[n - 1]]
            dp = divide_into_torsion(sub, n - 2, scale)
            e.extend((a0 + r, c0 + c, -v) for r, c, v in dp.entries())
        bd[n] = IntMatrix.from_entries(dims[n - 1], dims[n], e)
    tot = IntChainComplex(dims, bd)
    return tot.integral_homology()[:top + 1]


class _Sparse:
    """Mutable sparse matrix with row and column access."""

    def __init__(self, M: IntMatrix | None = None, rows: int = 0, cols: int = 0):
        self.cols: dict[int, dict[int, int]] = {}
        self.rows: dict[int, dict[int, int]] = {}
        if M is not None:
            for r, c, v in M.entries():
                self.set(r, c, v)

    def get(self, r: int, c: int) -> int:
        return self.rows.get(r, {}).get(c, 0)

    def set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, {})[r] = v
        else:
            if c in self.rows.get(r, {}):
                del self.rows[r][c]
                del self.cols[c][r]

    def drop_row(self, r: int) -> None:
        for c in self.rows.pop(r, {}):
            del self.cols[c][r]

    def drop_col(self, c: int) -> None:
        for r in self.cols.pop(c, {}):
            del self.rows[r][c]

    def add_col(self, dst: int, src: int, q: int) -> None:
        """``col_dst -= q * col_src``."""
        for r, v in list(self.cols.get(src, {}).items()):
            self.set(r, dst, self.get(r, dst) - q * v)

    def add_row(self, dst: int, src: int, q: int) -> None:
        """``row_dst -= q * row_src``."""
        for c, v in list(self.rows.get(src, {}).items()):
            self.set(dst, c, self.get(dst, c) - q * v)

    def to_matrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        ri = {r: i for i, r in enumerate(rows)}
        ci = {c: j for j, c in enumerate(cols)}
        entries = [(ri[r], ci[c], v) for c in cols for r, v in self.cols.get(c, {}).items()]
        return IntMatrix.from_entries(len(rows), len(cols), entries)


def _reduce(bd: dict[int, _Sparse], bases: list[list[int]], f: dict[int, _Sparse], side: str) -> None:
    """Cancel unit entries of the boundary in place, updating the map ``f``.

    ``side='source'`` composes ``f`` with the inclusion of the reduced complex;
    ``side='target'`` composes the projection onto it after ``f``.
    """
    alive = [set(b) for b in bases]
    for n in sorted(bd, reverse=True):
        D = bd[n]
        changed = True
        while changed:
            changed = False
            for a in sorted(D.cols, key=lambda c: len(D.cols[c])):
                col = D.cols.get(a)
                if not col or a not in alive[n]:
                    continue
                best = None
                for b, u in col.items():
                    if u in (1, -1):
                        cost = len(D.rows[b])
                        if best is None or cost < best[0]:
                            best = (cost, b, u)
                if best is None:
                    continue
                _, b, u = best
                acol = dict(D.cols[a])
                for x, v in list(D.rows[b].items()):
                    if x == a:
                        continue
                    q = v * u  # v / u for a unit u
                    D.add_col(x, a, q)
                    if side == "source" and n in f:
                        f[n].add_col(x, a, q)
                if side == "target" and (n - 1) in f:
                    for r, v in acol.items():
                        if r != b:
                            f[n - 1].add_row(r, b, v * u)
                D.drop_col(a)
                D.drop_row(b)
                if n + 1 in bd:
                    bd[n + 1].drop_row(a)
                if n - 1 in bd:
                    bd[n - 1].drop_col(b)
                if side == "source":
                    if n in f:
                        f[n].drop_col(a)
                    if n - 1 in f:
                        f[n - 1].drop_col(b)
                else:
                    if n in f:
                        f[n].drop_row(a)
                    if n - 1 in f:
                        f[n - 1].drop_row(b)
                alive[n].discard(a)
                alive[n - 1].discard(b)
                changed = True
    for n, b in enumerate(bases):
        b[:] = sorted(alive[n])


@dataclass
class ReducedMap:
    """A chain map between chain-homotopy-equivalent smaller complexes.

    ``source_basis[n]`` / ``target_basis[n]`` list the surviving original
    basis indices; the reduced map induces the same map on homology.
    """

    source: IntChainComplex
    target: IntChainComplex
    maps: dict[int, IntMatrix]
    source_basis: list[list[int]]
    target_basis: list[list[int]]


def reduce_chain_map(f: Mapping[int, IntMatrix], C: IntChainComplex, D: IntChainComplex) -> ReducedMap:
    """Shrink ``f: C -> D`` by cancelling unit pivots in both complexes."""
    top = max(C.top, D.top)
    cb = [list(range(C.dim(n))) for n in range(top + 1)]
    db = [list(range(D.dim(n))) for n in range(top + 1)]
    cbd = {n: _Sparse(C.d(n)) for n in range(1, top + 1)}
    dbd = {n: _Sparse(D.d(n)) for n in range(1, top + 1)}
    fs = {n: _Sparse(f[n]) if n in f else _Sparse() for n in range(top + 1)}
    _reduce(cbd, cb, fs, "source")
    _reduce(dbd, db, fs, "target")

    def rebuild(bd, bases):
        dims = [len(b) for b in bases]
        return IntChainComplex(dims, {n: bd[n].to_matrix(bases[n - 1], bases[n]) for n in range(1, top + 1)})

    Cr, Dr = rebuild(cbd, cb), rebuild(dbd, db)
    maps = {n: fs[n].to_matrix(db[n], cb[n]) for n in range(top + 1)}
    return ReducedMap(Cr, Dr, maps, cb, db)


def induced_on_homology(f: Mapping[int, IntMatrix], C: IntChainComplex, D: IntChainComplex,
                        n: int) -> tuple[Dense, FgAbGroup, FgAbGroup]:
    """Matrix of ``H_n(f)`` in canonical generators, with ``H_n(C)`` and ``H_n(D)``."""
    R = reduce_chain_map(f, C, D)
    src, dst = homology_presentation(R.source, n), homology_presentation(R.target, n)
    A = R.maps[n].to_dense() if n in R.maps else []
    if not A:
        A = [[0] * R.source.dim(n) for _ in range(R.target.dim(n))]
    return induced_matrix(A, src, dst), src.group, dst.group


def mapping_cone(f: Mapping[int, IntMatrix], C: IntChainComplex, D: IntChainComplex) -> IntChainComplex:
    """Cone of a chain map ``f_n : C_n -> D_n``; acyclic iff ``f`` is a quasi-isomorphism.

    ``Cone_n = C_{n-1} ⊕ D_n`` with ``∂(c, d) = (-∂c, f c + ∂d)``.
    """
    top = max(C.top + 1, D.top)
    dims = [C.dim(n - 1) + D.dim(n) for n in range(top + 1)]
    bd = {}
    for n in range(1, top + 1):
        rows_c, rows_d = C.dim(n - 2), D.dim(n - 1)
        cols_c, cols_d = C.dim(n - 1), D.dim(n)
        entries = []
        for r, c, v in C.d(n - 1).entries():
            entries.append((r, c, -v))
        fm = f.get(n - 1)
        if fm is not None:
            for r, c, v in fm.entries():
                entries.append((rows_c + r, c, v))
        for r, c, v in D.d(n).entries():
            entries.append((rows_c + r, cols_c + c, v))
        bd[n] = IntMatrix.from_entries(rows_c + rows_d, cols_c + cols_d, entries)
    return IntChainComplex(dims, bd)


def is_chain_map(f: Mapping[int, IntMatrix], C: IntChainComplex, D: IntChainComplex) -> int | None:
    """Return the first degree where ``∂ f != f ∂`` fails, or ``None``."""
    for n in range(1, max(C.top, D.top) + 1):
        fn, fn1 = f.get(n), f.get(n - 1)
        lhs = D.d(n) @ fn if fn is not None else IntMatrix.zeros(D.dim(n - 1), C.dim(n))
        rhs = fn1 @ C.d(n) if fn1 is not None else IntMatrix.zeros(D.dim(n - 1), C.dim(n))
        if lhs != rhs:
            return n
    return None


# ---------------------------------------------------------------------------
# simplicial chains


def boundary_faces(s: Simplex) -> list[tuple[int, Simplex]]:
    return [((-1) ** i, s[:i] + s[i + 1:]) for i in range(len(s))] if len(s) > 1 else []


def simplicial_chain_complex(simplices: Sequence[Sequence[Simplex]],
                             exclude: Iterable[Simplex] = ()) -> IntChainComplex:
    """Oriented chains of a complex given per dimension; ``exclude`` gives the relative complex.

    Basis of ``C_n`` is the sorted list of n-simplices not in ``exclude``.
    """
    excl = set(exclude)
    bases = [[s for s in layer if s not in excl] for layer in simplices]
    while bases and not bases[-1]:
        bases.pop()
    if not bases:
        return IntChainComplex([0], {}, [[]])
    index = [{s: i for i, s in enumerate(b)} for b in bases]
    bd = {}
    for n in range(1, len(bases)):
        entries = []
        below = index[n - 1]
        for j, s in enumerate(bases[n]):
            for sign, f in boundary_faces(s):
                i = below.get(f)
                if i is not None:
                    entries.append((i, j, sign))
        bd[n] = IntMatrix.from_entries(len(bases[n - 1]), len(bases[n]), entries)
    return IntChainComplex([len(b) for b in bases], bd, bases)


def cap_product(cochain: Mapping[Simplex, int], p: int, chain: Mapping[Simplex, int]) -> dict[Simplex, int]:
    """Cap a p-cochain against a chain (see module docstring for the convention)."""
    out: dict[Simplex, int] = {}
    for s, x in chain.items():
        n = len(s) - 1
        if n < p:
            raise AlgebraError(f"cannot cap a {p}-cochain with a {n}-chain")
        v = cochain.get(s[n - p:], 0)
        if v:
            front = s[:n - p + 1]
            out[front] = out.get(front, 0) + v * x
    return {k: v for k, v in out.items() if v}


def chain_boundary(chain: Mapping[Simplex, int]) -> dict[Simplex, int]:
    out: dict[Simplex, int] = {}
    for s, x in chain.items():
        for sign, f in boundary_faces(s):
            out[f] = out.get(f, 0) + sign * x
    return {k: v for k, v in out.items() if v}


def cochain_coboundary(cochain: Mapping[Simplex, int], simplices_above: Iterable[Simplex]) -> dict[Simplex, int]:
    """``δc(σ) = c(∂σ)`` evaluated on the given (p+1)-simplices."""
    out = {}
    for s in simplices_above:
        v = sum(sign * cochain.get(f, 0) for sign, f in boundary_faces(s))
        if v:
            out[s] = v
    return out
