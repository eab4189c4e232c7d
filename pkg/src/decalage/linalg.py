"""Exact integer linear algebra.

Everything here works on Python ints, so there is no overflow.  Subgroups of
a free module Z^n are kept as a basis in row-style Hermite normal form, which
makes equality of subgroups a plain tuple comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class AmbientMismatch(ValueError):
    pass


class NotContained(ValueError):
    pass


# ---------------------------------------------------------------------------
# IntMatrix


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} does not match {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        cols = [tuple(int(x) for x in c) for c in cols]
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column of wrong length")
        return cls(nrows, len(cols), tuple(cols[j][i] for i in range(nrows) for j in range(len(cols))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows(self.columns(), self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = other.columns()
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(_dot(self.row(i), c) for i in range(self.rows) for c in ocols),
        )

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match matrix")
        return tuple(_dot(self.row(i), v) for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def determinant(M: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``D = U @ M @ V`` in Smith form.

    Pivots are chosen by smallest absolute value (first in row-major order on
    ties), so the output is a deterministic function of ``M``.  Diagonal
    entries are nonnegative and each divides the next.
    """
    U, D, V, _ = _snf(M)
    return U, D, V


def _snf(M: IntMatrix):
    m, n = M.rows, M.cols
    a = M.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        if i != k:
            a[i], a[k] = a[k], a[i]
            U[i], U[k] = U[k], U[i]
            for r in Uinv:
                r[i], r[k] = r[k], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        ad, as_ = a[dst], a[src]
        for j in range(n):
            if as_[j]:
                ad[j] += q * as_[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ud[j] += q * us[j]
        for r in Uinv:
            if r[dst]:
                r[src] -= q * r[dst]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def swap_cols(j, k):
        if j != k:
            for r in a:
                r[j], r[k] = r[k], r[j]
            for r in V:
                r[j], r[k] = r[k], r[j]

    def add_col(dst, src, q):
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    if a[t][j]:
                        clean = False
            if not clean:
                best = (abs(piv), t, t)
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return (
        IntMatrix.from_rows(U, m),
        IntMatrix.from_rows(a, n),
        IntMatrix.from_rows(V, n),
        IntMatrix.from_rows(Uinv, m),
    )


def invariant_factors(M: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form of ``M``."""
    _, D, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.rows, D.cols)) if D[i, i]]


def rank(M: IntMatrix) -> int:
    return len(_echelon([M.row(i) for i in range(M.rows)]))


# ---------------------------------------------------------------------------
# Abelian groups


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank + sum Z/d_i with d_1 | d_2 | ...."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"torsion coefficients must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_diagonal(cls, diag: Iterable[int], free_extra: int = 0) -> AbelianGroup:
        """Normalize Z/a_1 + Z/a_2 + ... (a_i = 0 meaning Z) to invariant-factor form."""
        diag = [abs(int(d)) for d in diag]
        free = free_extra + sum(1 for d in diag if d == 0)
        finite = [d for d in diag if d > 1]
        if len(finite) > 1:
            k = len(finite)
            D = IntMatrix(k, k, tuple(finite[i] if i == j else 0 for i in range(k) for j in range(k)))
            finite = invariant_factors(D)
        return cls(free, tuple(d for d in finite if d > 1))

    def __add__(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup.from_diagonal(
            self.torsion + other.torsion, self.free_rank + other.free_rank
        )

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def tensor(self, coefficients: str = "int") -> AbelianGroup:
        if coefficients == "rat":
            return AbelianGroup(self.free_rank)
        return self

    def to_json(self) -> dict:
        return {"freeRank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, doc: dict) -> AbelianGroup:
        return cls.from_diagonal([int(t) for t in doc.get("torsion", [])], int(doc.get("freeRank", 0)))

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def direct_sum(groups: Iterable[AbelianGroup]) -> AbelianGroup:
    out = AbelianGroup()
    for g in groups:
        out = out + g
    return out


def cokernel(M: IntMatrix) -> AbelianGroup:
    """Isomorphism class of Z^rows / im(M)."""
    factors = invariant_factors(M)
    return AbelianGroup.from_diagonal(factors, M.rows - len(factors))


# ---------------------------------------------------------------------------
# Echelon forms on lists of row vectors


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0, a


def _echelon(rows: Iterable[Sequence[int]], track: bool = False):
    """Hermite normal form of the row lattice spanned by ``rows``.

    Returns the basis (leading entries positive, entries above each pivot
    reduced into [0, pivot)).  With ``track``, also returns transform rows T
    and the kernel rows K: ``T @ rows`` is the basis and ``K @ rows == 0``,
    with the rows of K a basis of the (saturated) left kernel.
    """
    work = [list(r) for r in rows]
    n = len(work[0]) if work else 0
    k = len(work)
    trans = [[int(i == j) for j in range(k)] for i in range(k)] if track else None

    basis: list[list[int]] = []
    tbasis: list[list[int]] = []
    pivots: list[int] = []
    active = list(range(k))
    for col in range(n):
        nz = [i for i in active if work[i][col]]
        if not nz:
            continue
        # Combine all rows with nonzero entry in ``col`` into one pivot row.
        p = min(nz, key=lambda i: (abs(work[i][col]), i))
        for i in nz:
            if i == p:
                continue
            a, b = work[p][col], work[i][col]
            if b % a == 0:
                q = b // a
                wi, wp = work[i], work[p]
                for j in range(col, n):
                    wi[j] -= q * wp[j]
                if track:
                    ti, tp = trans[i], trans[p]
                    for j in range(k):
                        ti[j] -= q * tp[j]
            else:
                x, y, g = _xgcd(a, b)
                ag, bg = a // g, b // g
                wp, wi = work[p], work[i]
                newp = [x * wp[j] + y * wi[j] for j in range(n)]
                newi = [ag * wi[j] - bg * wp[j] for j in range(n)]
                work[p], work[i] = newp, newi
                if track:
                    tp, ti = trans[p], trans[i]
                    trans[p] = [x * tp[j] + y * ti[j] for j in range(k)]
                    trans[i] = [ag * ti[j] - bg * tp[j] for j in range(k)]
        if work[p][col] < 0:
            work[p] = [-x for x in work[p]]
            if track:
                trans[p] = [-x for x in trans[p]]
        active.remove(p)
        basis.append(work[p])
        if track:
            tbasis.append(trans[p])
        pivots.append(col)
    # Reduce above pivots.
    for bi in range(len(basis)):
        col, piv = pivots[bi], basis[bi][pivots[bi]]
        for bj in range(bi):
            q = basis[bj][col] // piv
            if q:
                rj, ri = basis[bj], basis[bi]
                for j in range(col, n):
                    rj[j] -= q * ri[j]
                if track:
                    tj, ti = tbasis[bj], tbasis[bi]
                    for j in range(k):
                        tj[j] -= q * ti[j]
    if not track:
        return [tuple(r) for r in basis]
    kernel = [trans[i] for i in active]
    return [tuple(r) for r in basis], tbasis, kernel


# ---------------------------------------------------------------------------
# Subgroups of Z^n


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of Z^ambient_rank, stored as a canonical (HNF) basis."""

    ambient_rank: int
    basis: tuple[Vector, ...] = ()
    _pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def span(cls, ambient_rank: int, vectors: Iterable[Sequence[int]]) -> Subgroup:
        vecs = [tuple(int(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_rank:
                raise AmbientMismatch(f"vector of length {len(v)} in Z^{ambient_rank}")
        basis = tuple(_echelon(vecs)) if vecs else ()
        return cls._from_hnf(ambient_rank, basis)

    @classmethod
    def _from_hnf(cls, ambient_rank: int, basis) -> Subgroup:
        basis = tuple(tuple(b) for b in basis)
        pivots = tuple(next(j for j, x in enumerate(b) if x) for b in basis)
        return cls(ambient_rank, basis, pivots)

    @classmethod
    def from_matrix(cls, M: IntMatrix) -> Subgroup:
        """Column span of ``M``."""
        return cls.span(M.rows, M.columns())

    @classmethod
    def zero(cls, ambient_rank: int) -> Subgroup:
        return cls(ambient_rank)

    @classmethod
    def full(cls, ambient_rank: int) -> Subgroup:
        return cls._from_hnf(
            ambient_rank, [tuple(int(i == j) for j in range(ambient_rank)) for i in range(ambient_rank)]
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def generators(self) -> IntMatrix:
        return IntMatrix.from_columns(self.basis, self.ambient_rank)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.rank == self.ambient_rank and all(b[p] == 1 for b, p in zip(self.basis, self._pivots))

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of ``x`` in the stored basis, or None if x is not in the subgroup."""
        x = list(x)
        if len(x) != self.ambient_rank:
            raise AmbientMismatch(f"vector of length {len(x)} in Z^{self.ambient_rank}")
        coords = []
        bi = 0
        for col in range(self.ambient_rank):
            if not x[col]:
                if bi < len(self._pivots) and self._pivots[bi] == col:
                    coords.append(0)
                    bi += 1
                continue
            if bi >= len(self._pivots) or self._pivots[bi] != col:
                return None
            b = self.basis[bi]
            q, r = divmod(x[col], b[col])
            if r:
                return None
            for j in range(col, self.ambient_rank):
                x[j] -= q * b[j]
            coords.append(q)
            bi += 1
        coords.extend([0] * (len(self.basis) - len(coords)))
        return tuple(coords)

    def __contains__(self, x: Sequence[int]) -> bool:
        return self.coordinates(x) is not None

    def combine(self, coords: Sequence[int]) -> Vector:
        out = [0] * self.ambient_rank
        for c, b in zip(coords, self.basis):
            if c:
                for j in range(self.ambient_rank):
                    out[j] += c * b[j]
        return tuple(out)

    def saturation(self) -> Subgroup:
        """Smallest saturated subgroup containing this one (its Q-span intersected with Z^n)."""
        if not self.basis:
            return self
        # Saturation = kernel of the kernel: annihilator of the annihilator.
        ann = kernel_basis(IntMatrix.from_rows(self.basis, self.ambient_rank))
        return kernel_basis(IntMatrix.from_columns(ann.basis, self.ambient_rank).T)

    def __repr__(self):
        return f"Subgroup(Z^{self.ambient_rank}, {[list(b) for b in self.basis]})"


def _check_ambient(A: Subgroup, B: Subgroup):
    if A.ambient_rank != B.ambient_rank:
        raise AmbientMismatch(f"ambient ranks differ: {A.ambient_rank} vs {B.ambient_rank}")


def kernel_basis(M: IntMatrix) -> Subgroup:
    """Saturated subgroup {x : M x = 0} of Z^cols."""
    if M.cols == 0:
        return Subgroup.zero(0)
    if M.rows == 0 or M.is_zero():
        return Subgroup.full(M.cols)
    _, _, kernel = _echelon(M.columns(), track=True)
    return Subgroup.span(M.cols, kernel)


def image(M: IntMatrix, A: Subgroup | None = None) -> Subgroup:
    """M(A) as a subgroup of Z^rows (A defaults to the whole domain)."""
    if A is None:
        return Subgroup.from_matrix(M)
    if A.ambient_rank != M.cols:
        raise AmbientMismatch("subgroup does not live in the domain of the matrix")
    return Subgroup.span(M.rows, (M.apply(b) for b in A.basis))


def preimage(M: IntMatrix, S: Subgroup) -> Subgroup:
    """{x in Z^cols : M x in S}."""
    if S.ambient_rank != M.rows:
        raise AmbientMismatch("subgroup does not live in the codomain of the matrix")
    n = M.cols
    if n == 0:
        return Subgroup.zero(0)
    if S.is_full() or M.is_zero():
        return Subgroup.full(n)
    # Solve M x - S y = 0; the x-parts of solutions span the preimage.
    cols = M.columns() + [tuple(-v for v in b) for b in S.basis]
    _, _, kernel = _echelon(cols, track=True)
    return Subgroup.span(n, (k[:n] for k in kernel))


def subgroup_sum(A: Subgroup, B: Subgroup) -> Subgroup:
    _check_ambient(A, B)
    if not B.basis:
        return A
    if not A.basis:
        return B
    return Subgroup.span(A.ambient_rank, A.basis + B.basis)


def subgroup_intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    _check_ambient(A, B)
    if not A.basis or not B.basis:
        return Subgroup.zero(A.ambient_rank)
    if A.is_full():
        return B
    if B.is_full():
        return A
    # Solve sum a_i x_i = sum b_j y_j.
    rows = [a for a in A.basis] + [tuple(-x for x in b) for b in B.basis]
    _, _, kernel = _echelon(rows, track=True)
    k = len(A.basis)
    return Subgroup.span(A.ambient_rank, (A.combine(v[:k]) for v in kernel))


def contains(A: Subgroup, B: Subgroup) -> bool:
    """Whether B is a subgroup of A."""
    _check_ambient(A, B)
    return all(b in A for b in B.basis)


def membership(A: Subgroup, x: Sequence[int]) -> bool:
    return x in A


def _relations_matrix(A: Subgroup, B: Subgroup) -> IntMatrix:
    """Coordinates of B's basis in A's basis, as columns (rank A x rank B)."""
    cols = []
    for b in B.basis:
        c = A.coordinates(b)
        if c is None:
            raise NotContained("subquotient requires B inside A")
        cols.append(c)
    return IntMatrix.from_columns(cols, A.rank)


def subquotient(A: Subgroup, B: Subgroup) -> AbelianGroup:
    """Isomorphism class of A/B for B contained in A."""
    _check_ambient(A, B)
    if A == B:
        return AbelianGroup()
    return cokernel(_relations_matrix(A, B))


class QuotientPresentation:
    """A/B with explicit generators and a coordinate map.

    Generators are lifted to elements of A.  ``coordinates(x)`` returns one
    integer per generator: torsion coordinates reduced into [0, d), free
    coordinates unrestricted.
    """

    def __init__(self, A: Subgroup, B: Subgroup):
        _check_ambient(A, B)
        self.top = A
        self.bottom = B
        R = _relations_matrix(A, B)
        U, D, _, Uinv = _snf(R)
        k = A.rank
        diag = [D[i, i] if i < min(D.rows, D.cols) else 0 for i in range(k)]
        self._U = U
        self._keep = [i for i in range(k) if diag[i] != 1]
        self.orders = tuple(diag[i] for i in self._keep)  # 0 means infinite cyclic
        self.generators = tuple(A.combine(Uinv.column(i)) for i in self._keep)
        self.group = AbelianGroup.from_diagonal(self.orders)

    def __len__(self):
        return len(self._keep)

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        c = self.top.coordinates(x)
        if c is None:
            raise NotContained("element is not in the numerator subgroup")
        y = self._U.apply(c) if c else ()
        return tuple(
            (y[i] % d) if d else y[i] for i, d in zip(self._keep, self.orders)
        )

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple((c % d) if d else c for c, d in zip(coords, self.orders))

    def is_zero_element(self, x: Sequence[int]) -> bool:
        return not any(self.coordinates(x))
