"""Spectral sequence of a filtered cochain complex.

Pages are built from the approximate cocycles

    Z_r^{p}(n) = { x in F^p C^n : dx in F^{p+r} C^{n+1} },
    E_r^{p,q}  = Z_r^p(n) / ( Z_{r-1}^{p+1}(n) + d Z_{r-1}^{p-r+1}(n-1) ),   n = p + q,

so every cell is an explicit subquotient of C^n.  E_0 is Gr_F with the
induced differential and E_1 is its cohomology.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .filtrations import (
    FilteredComplex,
    InducedFiltration,
    decale,
    filtration_type,
)
from .linalg import (
    AbelianGroup,
    IntMatrix,
    QuotientPresentation,
    Subgroup,
    image,
    preimage,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)
from .reports import CheckReport


class SpectralSequence:
    """Lazily evaluated spectral sequence of ``F``; results are cached per cell."""

    def __init__(self, F: FilteredComplex):
        self.F = F
        self.C = F.base
        t = filtration_type(F)
        self.type = t
        self._pre: dict = {}
        self._Z: dict = {}
        self._den: dict = {}
        self._grp: dict = {}
        self._pres: dict = {}
        self._stab: int | None = None

    # -- cells ---------------------------------------------------------------

    def columns(self) -> range:
        if self.type is None:
            return range(0)
        return range(self.type[0], self.type[1] + 1)

    def cells(self) -> Iterable[tuple[int, int]]:
        """(p, q) cells that can be nonzero on any page."""
        for p in self.columns():
            for n in self.C.degrees:
                if self.C.rank(n):
                    yield p, n - p

    def _in_range(self, p: int, n: int) -> bool:
        return self.type is not None and self.type[0] <= p <= self.type[1] and self.C.rank(n) > 0

    def _preimage(self, k: int, n: int) -> Subgroup:
        key = (k, n)
        S = self._pre.get(key)
        if S is None:
            S = preimage(self.C.d(n), self.F(k, n + 1))
            self._pre[key] = S
        return S

    def Z(self, r: int, p: int, n: int) -> Subgroup:
        """Approximate cocycles Z_r^p in degree n."""
        if r <= 0:
            return self.F(p, n)
        key = (r, p, n)
        S = self._Z.get(key)
        if S is None:
            if p + r > self.F.hi:
                S = subgroup_intersection(self.F(p, n), self.C.cocycles(n))
            else:
                S = subgroup_intersection(self.F(p, n), self._preimage(p + r, n))
            self._Z[key] = S
        return S

    def numerator(self, r: int, p: int, q: int) -> Subgroup:
        return self.Z(r, p, p + q)

    def denominator(self, r: int, p: int, q: int) -> Subgroup:
        n = p + q
        key = (r, p, n)
        S = self._den.get(key)
        if S is None:
            S = subgroup_sum(
                self.Z(r - 1, p + 1, n),
                image(self.C.d(n - 1), self.Z(r - 1, p - r + 1, n - 1)),
            )
            self._den[key] = S
        return S

    def group(self, r: int, p: int, q: int) -> AbelianGroup:
        """Isomorphism class of E_r^{p,q}."""
        n = p + q
        if not self._in_range(p, n):
            return AbelianGroup()
        key = (r, p, n)
        g = self._grp.get(key)
        if g is None:
            g = subquotient(self.numerator(r, p, q), self.denominator(r, p, q))
            self._grp[key] = g
        return g

    def presentation(self, r: int, p: int, q: int) -> QuotientPresentation:
        key = (r, p, p + q)
        P = self._pres.get(key)
        if P is None:
            n = p + q
            if self._in_range(p, n):
                P = QuotientPresentation(self.numerator(r, p, q), self.denominator(r, p, q))
            else:
                P = QuotientPresentation(self.C.zero_subgroup(n), self.C.zero_subgroup(n))
            self._pres[key] = P
        return P

    def differential(self, r: int, p: int, q: int) -> IntMatrix:
        """d_r : E_r^{p,q} -> E_r^{p+r, q-r+1} in the SNF generators of both cells."""
        src = self.presentation(r, p, q)
        tgt = self.presentation(r, p + r, q - r + 1)
        d = self.C.d(p + q)
        cols = [tgt.coordinates(d.apply(g)) for g in src.generators]
        return IntMatrix.from_columns(cols, len(tgt))

    # -- E_infinity and stabilization ---------------------------------------

    def infinity_numerator(self, p: int, n: int) -> Subgroup:
        return subgroup_intersection(self.F(p, n), self.C.cocycles(n))

    def infinity_denominator(self, p: int, n: int) -> Subgroup:
        return subgroup_sum(
            self.infinity_numerator(p + 1, n),
            subgroup_intersection(self.C.coboundaries(n), self.F(p, n)),
        )

    def infinity_group(self, p: int, q: int) -> AbelianGroup:
        n = p + q
        if not self._in_range(p, n):
            return AbelianGroup()
        return subquotient(self.infinity_numerator(p, n), self.infinity_denominator(p, n))

    def page_bound(self) -> int:
        """A page index from which E_r = E_infinity is guaranteed."""
        if self.type is None:
            return 0
        return self.type[1] - self.type[0] + 1

    def stabilization_page(self) -> int:
        """Smallest r with E_r = E_infinity literally (same subquotient of C^n) in every cell."""
        if self._stab is None:
            r = 0
            while not self._page_is_final(r):
                r += 1
            self._stab = r
        return self._stab

    def _page_is_final(self, r: int) -> bool:
        for p, q in self.cells():
            n = p + q
            if self.numerator(r, p, q) != self.infinity_numerator(p, n):
                return False
            if self.denominator(r, p, q) != self.infinity_denominator(p, n):
                return False
        return True

    # -- convenience -----------------------------------------------------------

    def page(self, r: int) -> Page:
        groups = {(p, q): self.group(r, p, q) for p, q in self.cells()}
        diffs = {}
        for (p, q), g in groups.items():
            if g.is_trivial():
                continue
            if self.group(r, p + r, q - r + 1).is_trivial():
                continue
            diffs[(p, q)] = self.differential(r, p, q)
        return Page(r, groups, diffs)


@dataclass
class Page:
    r: int
    groups: dict[tuple[int, int], AbelianGroup]
    differentials: dict[tuple[int, int], IntMatrix]

    def nonzero(self) -> dict[tuple[int, int], AbelianGroup]:
        return {k: g for k, g in self.groups.items() if not g.is_trivial()}

    def to_json(self, coefficients: str = "int") -> dict:
        return {
            f"{p},{q}": g.tensor(coefficients).to_json()
            for (p, q), g in sorted(self.groups.items())
            if not g.tensor(coefficients).is_trivial()
        }

    def to_tsv(self, coefficients: str = "int") -> str:
        """Page as a table: one row per q (top to bottom descending), one column per p."""
        if not self.groups:
            return f"# E_{self.r}\n"
        ps = sorted({p for p, _ in self.groups})
        qs = sorted({q for _, q in self.groups}, reverse=True)
        lines = [f"# E_{self.r}", "\t".join(["q\\p"] + [str(p) for p in ps])]
        for q in qs:
            row = [str(q)]
            for p in ps:
                g = self.groups.get((p, q), AbelianGroup()).tensor(coefficients)
                row.append(str(g))
            lines.append("\t".join(row))
        return "\n".join(lines) + "\n"


def page(F: FilteredComplex, r: int) -> Page:
    if r < 0:
        raise ValueError("page index must be >= 0")
    return SpectralSequence(F).page(r)


def page_relation_failures(ss: SpectralSequence, r: int) -> list[dict]:
    """Cells where d_r d_r != 0 or E_{r+1} differs from ker d_r / im d_r."""
    C = ss.C
    out = []
    for p, q in ss.cells():
        n = p + q
        # d_r d_r through the SNF coordinates, reduced modulo the target orders.
        d1 = ss.differential(r, p, q)
        d2 = ss.differential(r, p + r, q - r + 1)
        tgt = ss.presentation(r, p + 2 * r, q - 2 * r + 2)
        if d1.cols and d2.rows:
            comp = d2 @ d1
            for j in range(comp.cols):
                if any(tgt.reduce(comp.column(j))):
                    out.append({"r": r, "p": p, "q": q, "problem": "d_r d_r != 0"})
                    break
        # Homology of (E_r, d_r) at (p, q), computed on lifts.
        if not ss._in_range(p, n):
            continue
        num = ss.numerator(r, p, q)
        ker = subgroup_intersection(num, preimage(C.d(n), ss.denominator(r, p + r, q - r + 1)))
        im = subgroup_sum(
            ss.denominator(r, p, q),
            image(C.d(n - 1), ss.numerator(r, p - r, q + r - 1)),
        )
        if subquotient(ker, im) != ss.group(r + 1, p, q):
            out.append({"r": r, "p": p, "q": q, "problem": "E_{r+1} != H(E_r, d_r)"})
    return out


@dataclass
class Abutment:
    filtrations: dict[int, InducedFiltration]
    comparisons: list[dict]

    @property
    def ok(self) -> bool:
        return all(c["match"] for c in self.comparisons)

    def graded(self, l: int) -> dict[int, AbelianGroup]:
        f = self.filtrations[l]
        return {p: f.graded(p) for p in range(f.lo - 1, f.hi + 1)}

    def to_json(self, coefficients: str = "int") -> dict:
        out = {}
        for l, f in sorted(self.filtrations.items()):
            out[str(l)] = {
                "H": f.cohomology().tensor(coefficients).to_json(),
                "steps": {
                    str(p): f.group(p).tensor(coefficients).to_json() for p in range(f.lo - 1, f.hi + 2)
                },
                "graded": {
                    str(p): g.tensor(coefficients).to_json()
                    for p, g in self.graded(l).items()
                    if not g.tensor(coefficients).is_trivial()
                },
            }
        return out


def abutment(F: FilteredComplex, ss: SpectralSequence | None = None) -> Abutment:
    """Filtration induced on every H^l, compared cellwise with E_infinity."""
    ss = ss or SpectralSequence(F)
    filts, comps = {}, []
    for l in F.base.degrees:
        f = InducedFiltration(F, l)
        filts[l] = f
        for p in range(F.lo - 1, F.hi + 1):
            gr = f.graded(p)
            einf = ss.infinity_group(p, l - p)
            comps.append(
                {"degree": l, "p": p, "graded": gr.to_json(), "E_inf": einf.to_json(), "match": gr == einf}
            )
    return Abutment(filts, comps)


def check_dec_reindex(F: FilteredComplex, pages: Iterable[int] | None = None) -> CheckReport:
    """E_r^{p,q}(Dec F) = E_{r+1}^{2p+q,-p}(F) for r >= 1, and Dec(F)^p H^l = F^{p+l} H^l."""
    rep = CheckReport("dec-reindex")
    D = decale(F)
    ssF, ssD = SpectralSequence(F), SpectralSequence(D)
    C = F.base
    if pages is None:
        top = max(ssD.stabilization_page(), ssF.stabilization_page() - 1, 1) + 1
        pages = range(1, top + 1)
    pages = list(pages)
    rep.detail["pages"] = pages
    rep.detail["stabilization"] = {"F": ssF.stabilization_page(), "Dec": ssD.stabilization_page()}

    ps = set(ssD.columns())
    for n in C.degrees:
        ps.update(p - n for p in ssF.columns())
    checked = 0
    for r in pages:
        for p in sorted(ps):
            for n in C.degrees:
                q = n - p
                a = ssD.group(r, p, q)
                b = ssF.group(r + 1, 2 * p + q, -p)
                checked += 1
                if a != b:
                    rep.fail(kind="page", r=r, p=p, q=q, dec=a.to_json(), shifted=b.to_json())
    rep.detail["cells_checked"] = checked

    for l in C.degrees:
        fD, fF = InducedFiltration(D, l), InducedFiltration(F, l)
        lo = min(fD.lo - 1, fF.lo - l - 1)
        hi = max(fD.hi + 1, fF.hi - l + 1)
        for p in range(lo, hi + 1):
            if fD.step(p) != fF.step(p + l):
                rep.fail(kind="abutment", degree=l, p=p)
    return rep
