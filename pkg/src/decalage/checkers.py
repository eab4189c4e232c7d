"""Mechanical checks on bifiltered and flag-filtered complexes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .filtrations import (
    BifilteredComplex,
    FilteredComplex,
    InducedFiltration,
    bigraded_piece,
    decale,
    graded_piece,
)
from .linalg import AbelianGroup, image, preimage, subgroup_intersection, subgroup_sum, subquotient
from .reports import CheckReport
from .spectral import SpectralSequence


@dataclass
class VanishingReport:
    """Cohomology that should vanish but does not; one entry per (r, a, b)."""

    condition: str
    violations: list[dict] = field(default_factory=list)
    cells: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, r: int, a: int, b: int | None, group: AbelianGroup) -> None:
        v = {"r": r, "a": a, "group": group.to_json(), "groupText": str(group)}
        if b is not None:
            v["b"] = b
        self.violations.append(v)

    def to_json(self) -> dict:
        return {"check": self.condition, "pass": self.passed, "violations": self.violations, "cells": self.cells}


def check_sta(B: BifilteredComplex) -> VanishingReport:
    """H^r(Gr^a_F Gr^b_P) = 0 for every r != a - b."""
    rep = VanishingReport("sta")
    F, P = B.F, B.P
    C = B.base
    for a in range(F.lo - 1, F.hi + 1):
        for b in range(P.lo - 1, P.hi + 1):
            piece = bigraded_piece(F, P, a, b)
            if piece.is_zero():
                continue
            rep.cells += 1
            for r in C.degrees:
                if r == a - b:
                    continue
                h = piece.cohomology(r)
                if not h.is_trivial():
                    rep.add(r, a, b, h)
    return rep


def check_decale_pair(F: FilteredComplex) -> VanishingReport:
    """The condition above for the bifiltration (Dec F, F)."""
    rep = check_sta(BifilteredComplex.of(decale(F), F))
    rep.condition = "decale-pair"
    return rep


def _d1_classes(ss: SpectralSequence, p: int, q: int) -> tuple[AbelianGroup, AbelianGroup]:
    """Classes of ker d_1 at (p, q) and of im d_1 landing in (p, q)."""
    C = ss.C
    n = p + q
    num, den = ss.numerator(1, p, q), ss.denominator(1, p, q)
    ker = subgroup_intersection(num, preimage(C.d(n), ss.denominator(1, p + 1, q)))
    im = subgroup_sum(den, image(C.d(n - 1), ss.numerator(1, p - 1, q)))
    return subquotient(ker, den), subquotient(im, den)


def check_p_equals_decf(B: BifilteredComplex, max_page: int | None = None) -> CheckReport:
    """Compare P with Dec(F): induced filtrations on cohomology (as subgroups),
    page classes from E_1 to stabilization, and kernel and image classes of d_1.

    Refuses unless the vanishing condition of :func:`check_sta` holds.
    """
    rep = CheckReport("pdec")
    sta = check_sta(B)
    rep.detail["sta"] = sta.to_json()
    if not sta.passed:
        rep.passed = False
        rep.refused = f"precondition fails: {len(sta.violations)} violation(s), see detail.sta"
        return rep
    P, D = B.P, decale(B.F)
    C = B.base
    for l in C.degrees:
        fP, fD = InducedFiltration(P, l), InducedFiltration(D, l)
        for p in range(min(fP.lo, fD.lo) - 1, max(fP.hi, fD.hi) + 2):
            if fP.step(p) != fD.step(p):
                rep.fail(kind="abutment", degree=l, p=p, P=fP.group(p).to_json(), DecF=fD.group(p).to_json())
    ssP, ssD = SpectralSequence(P), SpectralSequence(D)
    top = max(ssP.stabilization_page(), ssD.stabilization_page(), 1)
    if max_page is not None:
        top = min(top, max_page)
    ps = sorted(set(ssP.columns()) | set(ssD.columns()))
    for r in range(1, top + 1):
        for p in ps:
            for n in C.degrees:
                a, b = ssP.group(r, p, n - p), ssD.group(r, p, n - p)
                if a != b:
                    rep.fail(kind="page", r=r, p=p, q=n - p, P=a.to_json(), DecF=b.to_json())
    for p in ps:
        for n in C.degrees:
            if not C.rank(n):
                continue
            if _d1_classes(ssP, p, n - p) != _d1_classes(ssD, p, n - p):
                rep.fail(kind="d1", p=p, q=n - p)
    rep.detail["pages"] = [1, top]
    return rep


def default_shift(F: FilteredComplex, mode: str) -> int:
    tag = F.tag or {}
    if mode == "left" and tag.get("kind") == "flag-F":
        return tag["n"]
    return 0


def check_cellular_vanishing(F: FilteredComplex, mode: str = "left", shift: int | None = None) -> VanishingReport:
    """H^r(Gr^p) = 0 for r != p + shift.

    The shift defaults to the flag length n for filtrations built from a flag
    (cochains of Y_p minus Y_{p-1} sit in degree n + p for a skeletal flag) and
    to 0 otherwise.  ``mode`` only labels the report: "left" for flag (F-type)
    filtrations, "right" for support (G-type) ones.
    """
    if mode not in ("left", "right"):
        raise ValueError("mode must be 'left' or 'right'")
    if shift is None:
        shift = default_shift(F, mode)
    rep = VanishingReport(f"cellular-{mode}")
    for p in range(F.lo - 1, F.hi + 1):
        gr = graded_piece(F, p)
        if gr.is_zero():
            continue
        rep.cells += 1
        for r in F.base.degrees:
            if r != p + shift:
                h = gr.cohomology(r)
                if not h.is_trivial():
                    rep.add(r, p, None, h)
    return rep


def check_e1_differential_is_triple_map(F: FilteredComplex) -> CheckReport:
    from .simplicial import check_e1_triples

    return check_e1_triples(F)
