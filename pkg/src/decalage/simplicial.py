"""Simplicial front end: cellular sheaves, flags of closed subcomplexes, and
the flag (F) and support (G) filtrations they induce on sheaf cochains.

Cochain basis convention: degree l is the direct sum of the stalks over the
l-simplices, simplices in :attr:`SimplicialComplex.simplices` order, stalk
coordinates consecutive.  A simplex is a tuple of vertex labels sorted by
:func:`vertex_key`; its i-th face omits the i-th vertex and carries the
incidence sign (-1)^i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .complexes import CochainComplex
from .filtrations import FilteredComplex, InducedFiltration, make_filtration
from .linalg import (
    AbelianGroup,
    IntMatrix,
    QuotientPresentation,
    Subgroup,
    preimage,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)
from .reports import CheckReport

Simplex = tuple


class FlagError(ValueError):
    pass


class SheafError(ValueError):
    pass


class MapError(ValueError):
    pass


def vertex_key(v):
    """Total order on vertex labels: integers (or integer strings) first, then
    strings, then tuples (vertices of a subdivision, ordered by dimension)."""
    if isinstance(v, tuple):
        return (2, len(v), tuple(vertex_key(x) for x in v))
    if isinstance(v, int):
        return (0, v, "")
    s = str(v)
    try:
        return (0, int(s), s)
    except ValueError:
        return (1, 0, s)


def _simplex(vertices: Iterable[Hashable]) -> Simplex:
    return tuple(sorted(set(vertices), key=vertex_key))


def _simplex_key(s: Simplex):
    return (len(s), tuple(vertex_key(v) for v in s))


def faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces, the i-th omitting vertex i."""
    if len(s) <= 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        simp = tuple(sorted({_simplex(s) for s in self.simplices if len(s)}, key=_simplex_key))
        sset = set(simp)
        for s in simp:
            for f in faces(s):
                if f not in sset:
                    raise ValueError(f"simplex {s} is missing its face {f}")
        object.__setattr__(self, "simplices", simp)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> SimplicialComplex:
        closed = set()
        for f in facets:
            f = _simplex(f)
            for k in range(1, len(f) + 1):
                closed.update(combinations(f, k))
        return cls(tuple(closed))

    @cached_property
    def simplex_set(self) -> frozenset:
        return frozenset(self.simplices)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(s[0] for s in self.simplices if len(s) == 1)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, k: int) -> list[Simplex]:
        return [s for s in self.simplices if len(s) == k + 1]

    def __contains__(self, s) -> bool:
        return _simplex(s) in self.simplex_set

    def __len__(self):
        return len(self.simplices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplex_set == other.simplex_set

    __hash__ = None

    def is_closed_subset(self, subset: Iterable[Simplex]) -> bool:
        sub = {_simplex(s) for s in subset}
        return sub <= self.simplex_set and all(f in sub for s in sub for f in faces(s))

    def subcomplex(self, subset: Iterable[Simplex]) -> SimplicialComplex:
        sub = [_simplex(s) for s in subset]
        if not self.is_closed_subset(sub):
            raise FlagError("subset is not a closed subcomplex")
        return SimplicialComplex(tuple(sub))

    def skeleton(self, k: int) -> SimplicialComplex:
        return SimplicialComplex(tuple(s for s in self.simplices if len(s) <= k + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** ((len(s) - 1) % 2) for s in self.simplices)


# ---------------------------------------------------------------------------
# Cellular sheaves


@dataclass(frozen=True, eq=False)
class CellularSheaf:
    """Stalk ranks per simplex and restriction maps stalk(face) -> stalk(coface).

    Unlisted stalks have rank 1; an unlisted restriction between equal ranks
    is the identity.  ``None`` for ``stalks`` means the constant sheaf Z.
    """

    stalks: Mapping[Simplex, int] | None = None
    restrictions: Mapping[tuple[Simplex, Simplex], IntMatrix] = field(default_factory=dict)

    def stalk(self, s: Simplex) -> int:
        if self.stalks is None:
            return 1
        return self.stalks.get(s, 1)

    def restriction(self, face: Simplex, coface: Simplex) -> IntMatrix:
        """Restriction along any face relation (composed through codim-one steps)."""
        if face == coface:
            return IntMatrix.identity(self.stalk(face))
        if len(coface) == len(face) + 1:
            m = self.restrictions.get((face, coface))
            if m is not None:
                return m
            a, b = self.stalk(face), self.stalk(coface)
            if a != b:
                raise SheafError(f"no restriction map given for {face} -> {coface}")
            return IntMatrix.identity(a)
        missing = [v for v in coface if v not in face]
        mid = tuple(v for v in coface if v != missing[-1])
        return self.restriction(mid, coface) @ self.restriction(face, mid)


CONSTANT = CellularSheaf()


def sheaf_violations(X: SimplicialComplex, S: CellularSheaf) -> list[str]:
    """Shape errors and failures of commutation on two-step face relations."""
    out = []
    for (f, c), m in S.restrictions.items():
        if f not in X or c not in X or len(c) != len(f) + 1 or not set(f) <= set(c):
            out.append(f"restriction {f} -> {c} is not a face relation of the complex")
        elif (m.rows, m.cols) != (S.stalk(c), S.stalk(f)):
            out.append(f"restriction {f} -> {c} has shape {m.rows}x{m.cols}")
    for c in X.simplices:
        for f in faces(c):
            if (f, c) not in S.restrictions and S.stalk(f) != S.stalk(c):
                out.append(f"no restriction map given for {f} -> {c}")
    if out:
        return out
    for top in X.simplices:
        if len(top) < 3:
            continue
        for i, j in combinations(range(len(top)), 2):
            low = tuple(v for k, v in enumerate(top) if k not in (i, j))
            mid1 = top[:i] + top[i + 1:]
            mid2 = top[:j] + top[j + 1:]
            try:
                a = S.restriction(mid1, top) @ S.restriction(low, mid1)
                b = S.restriction(mid2, top) @ S.restriction(low, mid2)
            except SheafError as e:
                out.append(str(e))
                continue
            if a != b:
                out.append(f"restrictions do not commute on {low} < {top}")
    return out


def restrict_sheaf(S: CellularSheaf, A: SimplicialComplex) -> CellularSheaf:
    if S.stalks is None:
        return S
    return CellularSheaf(
        {s: S.stalk(s) for s in A.simplices},
        {k: m for k, m in S.restrictions.items() if k[0] in A.simplex_set and k[1] in A.simplex_set},
    )


# ---------------------------------------------------------------------------
# Cochains


class CochainModel:
    """Sheaf cochain complex of X together with its basis bookkeeping."""

    def __init__(self, X: SimplicialComplex, S: CellularSheaf | None = CONSTANT):
        S = S or CONSTANT
        problems = sheaf_violations(X, S)
        if problems:
            raise SheafError("; ".join(problems))
        self.X, self.S = X, S
        self.dim = X.dimension
        self.offsets: dict[Simplex, int] = {}
        ranks = {}
        for k in range(self.dim + 1):
            off = 0
            for s in X.of_dim(k):
                self.offsets[s] = off
                off += S.stalk(s)
            ranks[k] = off
        diffs = {}
        for k in range(self.dim):
            rows = [[0] * ranks[k] for _ in range(ranks[k + 1])]
            for t in X.of_dim(k + 1):
                to = self.offsets[t]
                for i, f in enumerate(faces(t)):
                    sign = -1 if i % 2 else 1
                    fo = self.offsets[f]
                    R = S.restriction(f, t)
                    for a in range(R.rows):
                        for b in range(R.cols):
                            if R[a, b]:
                                rows[to + a][fo + b] += sign * R[a, b]
            diffs[k] = IntMatrix.from_rows(rows, ranks[k])
        if self.dim < 0:
            self.complex = CochainComplex.zero()
        else:
            self.complex = CochainComplex(0, self.dim, ranks, diffs)

    def coords(self, s: Simplex) -> range:
        o = self.offsets[s]
        return range(o, o + self.S.stalk(s))

    def vanishing_on(self, A: Iterable[Simplex], l: int) -> Subgroup:
        """Cochains of degree l vanishing on every simplex of A (a coordinate subgroup)."""
        A = set(A)
        n = self.complex.rank(l)
        vecs = []
        for s in self.X.of_dim(l):
            if s in A:
                continue
            for c in self.coords(s):
                vecs.append(tuple(int(i == c) for i in range(n)))
        return Subgroup.span(n, vecs)

    def projection(self, A: SimplicialComplex, l: int, target: CochainModel) -> IntMatrix:
        """Restriction of degree-l cochains from X to the subcomplex A (in target's basis)."""
        n = self.complex.rank(l)
        m = target.complex.rank(l)
        rows = []
        for s in target.X.of_dim(l):
            for c in self.coords(s):
                rows.append(tuple(int(i == c) for i in range(n)))
        return IntMatrix.from_rows(rows, n) if rows else IntMatrix.zeros(m, n)

    def extension(self, A: SimplicialComplex, l: int, source: CochainModel) -> IntMatrix:
        """Extension by zero of degree-l cochains from the subcomplex A to X."""
        return self.projection(A, l, source).T


def sheaf_cochains(X: SimplicialComplex, S: CellularSheaf = CONSTANT) -> CochainComplex:
    return CochainModel(X, S).complex


def _model(X, S) -> CochainModel:
    return CochainModel(X, S or CONSTANT)


# ---------------------------------------------------------------------------
# Relative cohomology


def relative_complex(X: SimplicialComplex, A: Iterable[Simplex], S: CellularSheaf = CONSTANT) -> CochainComplex:
    """Cochains on X vanishing on the closed subcomplex A, in the basis of X \\ A."""
    A = {_simplex(s) for s in A}
    if not X.is_closed_subset(A):
        raise FlagError("relative cohomology needs a closed subcomplex")
    model = _model(X, S)
    C = model.complex
    keep = {l: [c for s in X.of_dim(l) if s not in A for c in model.coords(s)] for l in C.degrees}
    ranks = {l: len(keep[l]) for l in C.degrees}
    diffs = {}
    for l in range(C.lo, C.hi):
        d = C.d(l)
        diffs[l] = IntMatrix.from_rows([[d[i, j] for j in keep[l]] for i in keep[l + 1]], ranks[l])
    if not C.degrees:
        return CochainComplex.zero()
    return CochainComplex(C.lo, C.hi, ranks, diffs)


def relative_cohomology(
    X: SimplicialComplex, A: Iterable[Simplex], S: CellularSheaf = CONSTANT
) -> dict[int, AbelianGroup]:
    from .complexes import cohomology

    R = relative_complex(X, A, S)
    return {l: cohomology(R, l) for l in range(0, max(X.dimension, 0) + 1)}


# ---------------------------------------------------------------------------
# Flags


@dataclass(frozen=True, eq=False)
class ClosedSubcomplexFlag:
    """Y = Y_0 ⊇ Y_{-1} ⊇ ... ⊇ Y_{-n}; ``levels[k]`` is Y_{-(k+1)}."""

    ambient: SimplicialComplex
    levels: tuple[frozenset, ...]
    asserted_general: bool = False

    def __post_init__(self):
        levels = tuple(frozenset(_simplex(s) for s in lv) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        prev = self.ambient.simplex_set
        for k, lv in enumerate(levels):
            if not self.ambient.is_closed_subset(lv):
                raise FlagError(f"Y_{-(k + 1)} is not a closed subcomplex")
            if not lv <= prev:
                raise FlagError(f"Y_{-(k + 1)} is not contained in Y_{-k}")
            prev = lv

    @property
    def n(self) -> int:
        return len(self.levels)

    def Y(self, p: int) -> frozenset:
        if p >= 0:
            return self.ambient.simplex_set
        if p < -self.n:
            return frozenset()
        return self.levels[-p - 1]

    def complex_at(self, p: int) -> SimplicialComplex:
        return SimplicialComplex(tuple(self.Y(p)))


def skeletal_flag(X: SimplicialComplex, n: int | None = None) -> ClosedSubcomplexFlag:
    """Y_{-p} = (n - p)-skeleton, n = dim X."""
    n = X.dimension if n is None else n
    return ClosedSubcomplexFlag(X, tuple(X.skeleton(n - p).simplex_set for p in range(1, n + 1)))


def flag_filtration_F(
    X: SimplicialComplex, S: CellularSheaf | None, flag: ClosedSubcomplexFlag, model: CochainModel | None = None
) -> FilteredComplex:
    """F^p = cochains vanishing on Y_{p-1}."""
    if flag.ambient != X:
        raise FlagError("flag lives on a different complex")
    model = model or _model(X, S)
    C = model.complex
    steps = {p: {l: model.vanishing_on(flag.Y(p - 1), l) for l in C.degrees} for p in range(-flag.n + 1, 1)}
    if not steps:
        steps = {0: {l: C.full(l) for l in C.degrees}}
    tag = {"kind": "flag-F", "model": model, "flag": flag, "n": flag.n}
    if not any(C.rank(l) for l in C.degrees):
        return FilteredComplex(C, 0, -1, {}, tag)
    return make_filtration(C, steps, check=False, tag=tag)


# ---------------------------------------------------------------------------
# Barycentric subdivision and the support filtration


def barycentric_subdivision(X: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the simplices of X; simplices are chains under inclusion."""
    by_vertex_set = {s: frozenset(s) for s in X.simplices}
    chains: list[tuple] = []

    def extend(chain):
        chains.append(tuple(chain))
        top = by_vertex_set[chain[-1]]
        for s in X.simplices:
            if len(s) > len(chain[-1]) and top < by_vertex_set[s]:
                extend(chain + [s])

    for s in X.simplices:
        extend([s])
    return SimplicialComplex(tuple(chains))


def subdivide_sheaf(S: CellularSheaf, Xs: SimplicialComplex) -> CellularSheaf:
    """Pullback to the subdivision: a chain sits in the open cell of its largest element."""
    if S.stalks is None:
        return S
    stalks = {c: S.stalk(c[-1]) for c in Xs.simplices}
    restr = {}
    for c in Xs.simplices:
        for f in faces(c):
            restr[(f, c)] = S.restriction(f[-1], c[-1])
    return CellularSheaf(stalks, restr)


def subdivide_subcomplex(A: Iterable[Simplex], Xs: SimplicialComplex) -> frozenset:
    A = set(A)
    return frozenset(c for c in Xs.simplices if all(v in A for v in c))


def subdivide_flag(flag: ClosedSubcomplexFlag, Xs: SimplicialComplex) -> ClosedSubcomplexFlag:
    return ClosedSubcomplexFlag(
        Xs, tuple(subdivide_subcomplex(lv, Xs) for lv in flag.levels), flag.asserted_general
    )


@dataclass
class SubdividedModel:
    X: SimplicialComplex
    sd: SimplicialComplex
    sheaf: CellularSheaf
    model: CochainModel


def subdivided_model(X: SimplicialComplex, S: CellularSheaf | None = None) -> SubdividedModel:
    S = S or CONSTANT
    Xs = barycentric_subdivision(X)
    Ss = subdivide_sheaf(S, Xs)
    return SubdividedModel(X, Xs, Ss, CochainModel(Xs, Ss))


def support_filtration_G(
    X: SimplicialComplex,
    S: CellularSheaf | None,
    Z: ClosedSubcomplexFlag,
    sub: SubdividedModel | None = None,
) -> FilteredComplex:
    """G^p = cochains on sd(X) supported on the open star of sd(Z_{-p}).

    Equivalently, cochains vanishing on the closed subcomplex of chains with
    no element in Z_{-p}.
    """
    if Z.ambient != X:
        raise FlagError("flag lives on a different complex")
    sub = sub or subdivided_model(X, S)
    C = sub.model.complex
    steps = {}
    for p in range(1, Z.n + 1):
        Zp = Z.Y(-p)
        far = [c for c in sub.sd.simplices if not any(v in Zp for v in c)]
        steps[p] = {l: sub.model.vanishing_on(far, l) for l in C.degrees}
    tag = {"kind": "flag-G", "model": sub.model, "flag": Z, "n": Z.n}
    if not steps or not any(C.rank(l) for l in C.degrees):
        if not any(C.rank(l) for l in C.degrees):
            return FilteredComplex(C, 0, -1, {}, tag)
        steps = {0: {l: C.full(l) for l in C.degrees}}
    return make_filtration(C, steps, check=False, tag=tag)


def flag_filtration_F_subdivided(
    X: SimplicialComplex, S: CellularSheaf | None, Y: ClosedSubcomplexFlag, sub: SubdividedModel | None = None
) -> FilteredComplex:
    """The flag filtration of Y_* transported to the subdivision (same base as G)."""
    sub = sub or subdivided_model(X, S)
    return flag_filtration_F(sub.sd, sub.sheaf, subdivide_flag(Y, sub.sd), model=sub.model)


# ---------------------------------------------------------------------------
# Kernel-of-restriction filtration and simplicial maps


def kernel_filtration(model: CochainModel, flag: ClosedSubcomplexFlag, l: int) -> dict[int, Subgroup]:
    """Lifted steps of Ker(H^l(X) -> H^l(Y_{p-1})), computed in each subcomplex's own complex."""
    C = model.complex
    Z, B = C.cocycles(l), C.coboundaries(l)
    out = {}
    for p in range(-flag.n, 2):
        A = flag.complex_at(p - 1)
        sub = CochainModel(A, restrict_sheaf(model.S, A))
        if not sub.complex.rank(l):
            out[p] = Z
            continue
        R = model.projection(A, l, sub)
        out[p] = subgroup_sum(subgroup_intersection(Z, preimage(R, sub.complex.coboundaries(l))), B)
    return out


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping

    def __post_init__(self):
        for v in self.source.vertices:
            if v not in self.vertex_map:
                raise MapError(f"vertex {v!r} has no image")
        for s in self.source.simplices:
            if self.image(s) not in self.target.simplex_set:
                raise MapError(f"image of {s} is not a simplex of the target")

    def image(self, s: Simplex) -> Simplex:
        return _simplex(self.vertex_map[v] for v in s)


def preimage_flag(f: SimplicialMap, flag: ClosedSubcomplexFlag) -> ClosedSubcomplexFlag:
    """X_p = f^{-1}(Y_p): simplices whose image lies in Y_p."""
    if flag.ambient != f.target:
        raise FlagError("flag is not on the target of the map")
    levels = tuple(frozenset(s for s in f.source.simplices if f.image(s) in lv) for lv in flag.levels)
    return ClosedSubcomplexFlag(f.source, levels, flag.asserted_general)


def pushforward_flag_comparison(
    f: SimplicialMap, S: CellularSheaf | None, flag: ClosedSubcomplexFlag
) -> CheckReport:
    """Abutment of the preimage flag filtration against Ker(H(X) -> H(f^{-1} Y_{p-1}))."""
    rep = CheckReport("pushforward-flag")
    Xf = preimage_flag(f, flag)
    model = _model(f.source, S)
    F = flag_filtration_F(f.source, S, Xf, model=model)
    graded = {}
    for l in model.complex.degrees:
        ind = InducedFiltration(F, l)
        ker = kernel_filtration(model, Xf, l)
        for p, K in ker.items():
            if ind.step(p) != K:
                rep.fail(degree=l, p=p)
        graded[str(l)] = {
            str(p): ind.graded(p).to_json() for p in range(-Xf.n - 1, 1) if not ind.graded(p).is_trivial()
        }
    rep.detail["graded"] = graded
    rep.detail["preimage_flag_sizes"] = [len(lv) for lv in Xf.levels]
    return rep


# ---------------------------------------------------------------------------
# E_1 of a flag filtration, computed independently from the pairs (Y_p, Y_{p-1})


class PairCohomology:
    """H^k(Y_p, Y_{p-1}) computed in the cochain complex of Y_p itself."""

    def __init__(self, model: CochainModel, flag: ClosedSubcomplexFlag, p: int):
        self.p = p
        self.Yp = flag.complex_at(p)
        self.Yprev = flag.Y(p - 1)
        self.sub = CochainModel(self.Yp, restrict_sheaf(model.S, self.Yp))
        self.rel = relative_complex(self.Yp, self.Yprev, self.sub.S) if self.Yp.simplices else CochainComplex.zero()
        # relative basis: (simplex, stalk coordinate) pairs of Y_p \ Y_{p-1}
        self.basis = {
            l: [(s, c) for s in self.Yp.of_dim(l) if s not in self.Yprev for c in range(model.S.stalk(s))]
            for l in range(0, max(model.dim, 0) + 1)
        }

    def presentation(self, k: int) -> QuotientPresentation:
        R = self.rel
        if not R.rank(k):
            return QuotientPresentation(Subgroup.zero(R.rank(k)), Subgroup.zero(R.rank(k)))
        return QuotientPresentation(R.cocycles(k), R.coboundaries(k))


def _to_ambient(model: CochainModel, basis, vec, l) -> tuple:
    out = [0] * model.complex.rank(l)
    for (s, c), x in zip(basis, vec):
        out[model.offsets[s] + c] = x
    return tuple(out)


def check_e1_triples(F: FilteredComplex) -> CheckReport:
    """E_1 cells of a flag filtration against H(Y_p, Y_{p-1}), and d_1 against the
    connecting map of the triple (Y_{p+1}, Y_p, Y_{p-1})."""
    from .spectral import SpectralSequence

    rep = CheckReport("e1-triples")
    tag = F.tag or {}
    if tag.get("kind") != "flag-F":
        raise FlagError("E_1 triple check needs a flag filtration built by flag_filtration_F")
    model: CochainModel = tag["model"]
    flag: ClosedSubcomplexFlag = tag["flag"]
    ss = SpectralSequence(F)
    pairs = {p: PairCohomology(model, flag, p) for p in range(-flag.n, 1)}
    degrees = list(model.complex.degrees)
    checked = {"cells": 0, "maps": 0}
    for p, pc in pairs.items():
        for k in degrees:
            q = k - p
            mine = pc.presentation(k)
            if mine.group != ss.group(1, p, q):
                rep.fail(kind="E1", p=p, q=q, pair=mine.group.to_json(), E1=ss.group(1, p, q).to_json())
                continue
            checked["cells"] += 1
            e1 = ss.presentation(1, p, q)
            lifts = [_to_ambient(model, pc.basis[k], g, k) for g in mine.generators]
            # The identification must be onto (hence an isomorphism).
            if subgroup_sum(Subgroup.span(len(lifts[0]) if lifts else model.complex.rank(k), lifts), e1.bottom) != e1.top:
                rep.fail(kind="E1-identification", p=p, q=q)
                continue
            if p + 1 not in pairs or not len(mine):
                continue
            nxt = pairs[p + 1]
            tgt_e1 = ss.presentation(1, p + 1, q)
            # Connecting map: extend by zero into Y_{p+1}, apply its coboundary.
            sub = nxt.sub
            ext = []
            for g in mine.generators:
                v = [0] * sub.complex.rank(k)
                for (s, c), x in zip(pc.basis[k], g):
                    v[sub.offsets[s] + c] = x
                dv = sub.complex.d(k).apply(v)
                rel = tuple(dv[sub.offsets[s] + c] for s, c in nxt.basis.get(k + 1, []))
                ext.append(rel)
            delta_then_phi = []
            for rel in ext:
                lifted = _to_ambient(model, nxt.basis.get(k + 1, []), rel, k + 1)
                delta_then_phi.append(tgt_e1.coordinates(lifted))
            phi_then_d1 = [tgt_e1.coordinates(model.complex.d(k).apply(v)) for v in lifts]
            checked["maps"] += 1
            if [tgt_e1.reduce(a) for a in delta_then_phi] != [tgt_e1.reduce(b) for b in phi_then_d1]:
                rep.fail(kind="d1", p=p, q=q)
    rep.detail.update(checked)
    return rep


# ---------------------------------------------------------------------------
# Standard models


def circle(n: int = 3) -> SimplicialComplex:
    return SimplicialComplex.from_facets([(i, (i + 1) % n) for i in range(n)])


def disk() -> SimplicialComplex:
    return SimplicialComplex.from_facets([(0, 1, 2)])


def octahedron() -> SimplicialComplex:
    """Boundary of the octahedron: S^2 with 6 vertices."""
    return SimplicialComplex.from_facets(
        [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    )


def torus(n: int = 3, m: int = 3) -> SimplicialComplex:
    """n x m grid torus; vertex (i, j) is labelled i * m + j."""
    def v(i, j):
        return (i % n) * m + (j % m)

    facets = []
    for i in range(n):
        for j in range(m):
            facets.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            facets.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return SimplicialComplex.from_facets(facets)


def torus_projection(n: int = 3, m: int = 3) -> SimplicialMap:
    """T^2 -> S^1, (i, j) -> i."""
    T = torus(n, m)
    return SimplicialMap(T, circle(n), {i * m + j: i for i in range(n) for j in range(m)})


def rp2() -> SimplicialComplex:
    """Six-vertex real projective plane."""
    return SimplicialComplex.from_facets(
        [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
         (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    )
