"""Finite decreasing filtrations of cochain complexes by subcomplexes.

A filtration is stored on the window ``[lo, hi]``: ``F^p`` is the whole
complex for ``p < lo`` and zero for ``p > hi``.  Construction trims full
leading steps and zero trailing steps, so two filtrations are equal exactly
when their stored data are equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .complexes import CochainComplex, require_valid
from .linalg import (
    AbelianGroup,
    IntMatrix,
    QuotientPresentation,
    Subgroup,
    contains,
    direct_sum,
    image,
    preimage,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)


class InvalidFiltration(ValueError):
    pass


class BaseMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FilteredComplex:
    base: CochainComplex
    lo: int
    hi: int
    steps: Mapping[int, Mapping[int, Subgroup]]
    tag: Mapping | None = field(default=None)

    def step(self, p: int, l: int) -> Subgroup:
        if p < self.lo:
            return self.base.full(l)
        if p > self.hi or not self.base.lo <= l <= self.base.hi:
            return self.base.zero_subgroup(l)
        return self.steps[p][l]

    def __call__(self, p: int, l: int) -> Subgroup:
        return self.step(p, l)

    def __eq__(self, other):
        if not isinstance(other, FilteredComplex):
            return NotImplemented
        return (
            self.base == other.base
            and (self.lo, self.hi) == (other.lo, other.hi)
            and all(self.step(p, l) == other.step(p, l) for p in range(self.lo, self.hi + 1) for l in self.base.degrees)
        )

    __hash__ = None

    @property
    def window(self) -> range:
        return range(self.lo, self.hi + 1)

    def with_tag(self, **tag) -> FilteredComplex:
        return FilteredComplex(self.base, self.lo, self.hi, self.steps, dict(tag))

    def __repr__(self):
        return f"FilteredComplex(lo={self.lo}, hi={self.hi}, degrees=[{self.base.lo},{self.base.hi}])"


def make_filtration(
    base: CochainComplex,
    steps: Mapping[int, Mapping[int, Subgroup]],
    *,
    check: bool = True,
    tag: Mapping | None = None,
) -> FilteredComplex:
    """Build (and by default validate) a filtration from explicit steps.

    ``steps[p][l]`` is F^p in degree l; missing degrees in a listed step are
    zero.  Indices below the listed ones are the whole complex, indices above
    are zero.
    """
    degrees = list(base.degrees)
    if not any(base.rank(l) for l in degrees):
        return FilteredComplex(base, 0, -1, {}, tag)
    if not steps:
        raise InvalidFiltration("a filtration of a nonzero complex needs at least one step")
    lo, hi = min(steps), max(steps)
    full = {p: {} for p in range(lo, hi + 1)}
    for p in range(lo, hi + 1):
        given = steps.get(p)
        if given is None:
            # Unlisted interior index: equal to the next listed step above.
            continue
        for l in degrees:
            S = given.get(l)
            full[p][l] = S if S is not None else base.zero_subgroup(l)
            if full[p][l].ambient_rank != base.rank(l):
                raise InvalidFiltration(
                    f"step {p} degree {l}: subgroup of Z^{full[p][l].ambient_rank}, expected Z^{base.rank(l)}"
                )
    for p in range(hi, lo - 1, -1):
        if p not in steps:
            full[p] = dict(full[p + 1])
    F = _trimmed(base, lo, hi, full, tag)
    if check:
        problems = filtration_violations(F)
        if problems:
            raise InvalidFiltration("; ".join(problems))
    return F


def _trimmed(base, lo, hi, steps, tag=None) -> FilteredComplex:
    degrees = list(base.degrees)
    if not any(base.rank(l) for l in degrees):
        return FilteredComplex(base, lo, lo - 1, {}, tag)
    while lo <= hi and all(steps[lo][l].is_full() for l in degrees):
        lo += 1
    while hi >= lo and all(steps[hi][l].is_zero() for l in degrees):
        hi -= 1
    return FilteredComplex(base, lo, hi, {p: steps[p] for p in range(lo, hi + 1)}, tag)


def filtration_violations(F: FilteredComplex) -> list[str]:
    """Nesting and d-stability failures, one message per failure."""
    out = []
    C = F.base
    for p in range(F.lo - 1, F.hi + 1):
        for l in C.degrees:
            if not contains(F(p, l), F(p + 1, l)):
                out.append(f"not nested: F^{p + 1} is not inside F^{p} in degree {l}")
    for p in F.window:
        for l in range(C.lo, C.hi):
            if not contains(F(p, l + 1), image(C.d(l), F(p, l))):
                out.append(f"not a subcomplex: d(F^{p} C^{l}) is not inside F^{p} C^{l + 1}")
    return out


def validate_filtration(F: FilteredComplex) -> None:
    require_valid(F.base)
    problems = filtration_violations(F)
    if problems:
        raise InvalidFiltration("; ".join(problems))


def trivial_filtration(base: CochainComplex, jump: int = 0) -> FilteredComplex:
    """F^p = everything for p <= jump, zero above."""
    return FilteredComplex(base, jump + 1, jump, {})


def bete_filtration(base: CochainComplex, shift: int = 0) -> FilteredComplex:
    """Stupid filtration: F^p C^l = C^l for l >= p + shift, zero otherwise."""
    steps = {
        p: {l: base.full(l) if l >= p + shift else base.zero_subgroup(l) for l in base.degrees}
        for p in range(base.lo - shift, base.hi - shift + 1)
    }
    return make_filtration(base, steps, check=False)


def filtration_from_function(
    base: CochainComplex, lo: int, hi: int, fn: Callable[[int, int], Subgroup], check: bool = False
) -> FilteredComplex:
    steps = {p: {l: fn(p, l) for l in base.degrees} for p in range(lo, hi + 1)}
    if not steps:
        return FilteredComplex(base, lo, hi, {})
    return make_filtration(base, steps, check=check)


def filtration_type(F: FilteredComplex) -> tuple[int, int] | None:
    """Smallest [a, b] outside of which every Gr^p vanishes (None if all do)."""
    jumps = [
        p
        for p in range(F.lo - 1, F.hi + 1)
        if any(F(p, l) != F(p + 1, l) for l in F.base.degrees)
    ]
    if not jumps:
        return None
    return jumps[0], jumps[-1]


# ---------------------------------------------------------------------------
# Subquotient complexes


@dataclass(frozen=True, eq=False)
class SubquotientComplex:
    """Degreewise top^l / bottom^l of a base complex, with the induced differential.

    ``top`` and ``bottom`` must be subcomplexes with bottom inside top.
    """

    base: CochainComplex
    top: Mapping[int, Subgroup]
    bottom: Mapping[int, Subgroup]

    def _top(self, l):
        S = self.top.get(l)
        return self.base.zero_subgroup(l) if S is None else S

    def _bottom(self, l):
        S = self.bottom.get(l)
        return self.base.zero_subgroup(l) if S is None else S

    def group(self, l: int) -> AbelianGroup:
        """Isomorphism class of the degree-l term."""
        return subquotient(self._top(l), self._bottom(l))

    def presentation(self, l: int) -> QuotientPresentation:
        return QuotientPresentation(self._top(l), self._bottom(l))

    def differential_matrix(self, l: int) -> IntMatrix:
        """Induced d^l in the SNF generators of degrees l and l+1."""
        src, tgt = self.presentation(l), self.presentation(l + 1)
        d = self.base.d(l)
        cols = [tgt.coordinates(d.apply(g)) for g in src.generators]
        return IntMatrix.from_columns(cols, len(tgt))

    def cocycles(self, l: int) -> Subgroup:
        return subgroup_intersection(self._top(l), preimage(self.base.d(l), self._bottom(l + 1)))

    def coboundaries(self, l: int) -> Subgroup:
        return subgroup_sum(self._bottom(l), image(self.base.d(l - 1), self._top(l - 1)))

    def cohomology(self, l: int) -> AbelianGroup:
        if not self.base.rank(l):
            return AbelianGroup()
        return subquotient(self.cocycles(l), self.coboundaries(l))

    def cohomology_presentation(self, l: int) -> QuotientPresentation:
        return QuotientPresentation(self.cocycles(l), self.coboundaries(l))

    def is_zero(self) -> bool:
        return all(self._top(l) == self._bottom(l) for l in self.base.degrees)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (l % 2) * (self._top(l).rank - self._bottom(l).rank) for l in self.base.degrees)

    def literal_key(self):
        return tuple((l, self._top(l), self._bottom(l)) for l in self.base.degrees)


def graded_piece(F: FilteredComplex, p: int) -> SubquotientComplex:
    """Gr^p_F = F^p / F^{p+1}."""
    degs = F.base.degrees
    return SubquotientComplex(F.base, {l: F(p, l) for l in degs}, {l: F(p + 1, l) for l in degs})


def decale(F: FilteredComplex) -> FilteredComplex:
    """Shifted filtration.

    Dec(F)^p C^l = { x in F^{p+l} C^l : dx in F^{p+l+1} C^{l+1} }.
    """
    C = F.base
    if not any(C.rank(l) for l in C.degrees):
        return FilteredComplex(C, 0, -1, {})
    lo = F.lo - 1 - C.hi
    hi = F.hi - C.lo
    steps = {}
    for p in range(lo, hi + 1):
        steps[p] = {
            l: subgroup_intersection(F(p + l, l), preimage(C.d(l), F(p + l + 1, l + 1)))
            for l in C.degrees
        }
    return _trimmed(C, lo, hi, steps)


def _require_same_base(F: FilteredComplex, G: FilteredComplex):
    if F.base is not G.base and F.base != G.base:
        raise BaseMismatch("filtrations live on different complexes")


def diagonal(F: FilteredComplex, G: FilteredComplex) -> FilteredComplex:
    """delta^p = sum over i + j = p of F^i ∩ G^j."""
    _require_same_base(F, G)
    C = F.base
    if not any(C.rank(l) for l in C.degrees):
        return FilteredComplex(C, 0, -1, {})
    lo = F.lo + G.lo - 2
    hi = F.hi + G.hi
    steps = {}
    for p in range(lo, hi + 1):
        steps[p] = {}
        for l in C.degrees:
            S = C.zero_subgroup(l)
            # F^i for i < F.lo - 1 adds nothing beyond i = F.lo - 1.
            for i in range(F.lo - 1, F.hi + 1):
                S = subgroup_sum(S, subgroup_intersection(F(i, l), G(p - i, l)))
            steps[p][l] = S
    return _trimmed(C, lo, hi, steps)


@dataclass(frozen=True, eq=False)
class BifilteredComplex:
    """A complex with two filtrations; ``first`` plays the role of P, ``second`` of F."""

    base: CochainComplex
    first: FilteredComplex
    second: FilteredComplex

    def __post_init__(self):
        _require_same_base(self.first, self.second)
        if self.first.base != self.base:
            raise BaseMismatch("filtrations do not live on the given base")

    @classmethod
    def of(cls, P: FilteredComplex, F: FilteredComplex) -> BifilteredComplex:
        return cls(P.base, P, F)

    @property
    def P(self) -> FilteredComplex:
        return self.first

    @property
    def F(self) -> FilteredComplex:
        return self.second


def bigraded_piece(F: FilteredComplex, G: FilteredComplex, i: int, j: int) -> SubquotientComplex:
    """Gr^i_F Gr^j_G = (F^i ∩ G^j) / ((F^{i+1} ∩ G^j) + (F^i ∩ G^{j+1}))."""
    _require_same_base(F, G)
    C = F.base
    top, bottom = {}, {}
    for l in C.degrees:
        top[l] = subgroup_intersection(F(i, l), G(j, l))
        bottom[l] = subgroup_sum(
            subgroup_intersection(F(i + 1, l), G(j, l)),
            subgroup_intersection(F(i, l), G(j + 1, l)),
        )
    return SubquotientComplex(C, top, bottom)


# ---------------------------------------------------------------------------
# Filtrations induced on cohomology


class InducedFiltration:
    """Filtration induced on H^l by a filtration of the complex.

    Step p is stored as its preimage in the cocycles, i.e. the subgroup
    (F^p ∩ Z^l) + B^l of C^l; two induced filtrations are equal exactly when
    these lifts agree.
    """

    def __init__(self, F: FilteredComplex, l: int):
        C = F.base
        self.degree = l
        self.cocycles = C.cocycles(l)
        self.coboundaries = C.coboundaries(l)
        self.lo, self.hi = F.lo, F.hi
        self._steps = {
            p: subgroup_sum(subgroup_intersection(F(p, l), self.cocycles), self.coboundaries)
            for p in F.window
        }

    def step(self, p: int) -> Subgroup:
        if p < self.lo:
            return self.cocycles
        if p > self.hi:
            return self.coboundaries
        return self._steps[p]

    __call__ = step

    def group(self, p: int) -> AbelianGroup:
        """Isomorphism class of F^p H^l."""
        return subquotient(self.step(p), self.coboundaries)

    def graded(self, p: int) -> AbelianGroup:
        return subquotient(self.step(p), self.step(p + 1))

    def cohomology(self) -> AbelianGroup:
        return subquotient(self.cocycles, self.coboundaries)

    def presentation(self) -> QuotientPresentation:
        return QuotientPresentation(self.cocycles, self.coboundaries)

    def generators(self, p: int) -> list[tuple[int, ...]]:
        """Generators of F^p H^l in the coordinates of :meth:`presentation`."""
        pres = self.presentation()
        return [c for c in (pres.coordinates(v) for v in self.step(p).basis) if any(c)]


def induced_filtration_on_cohomology(F: FilteredComplex, l: int) -> InducedFiltration:
    return InducedFiltration(F, l)


def euler_of_graded(F: FilteredComplex) -> int:
    t = filtration_type(F)
    if t is None:
        return 0
    return sum(graded_piece(F, p).euler_characteristic() for p in range(t[0], t[1] + 1))


def graded_classes(F: FilteredComplex, l: int) -> dict[int, AbelianGroup]:
    """Classes of Gr^p_F in degree l over the type window."""
    t = filtration_type(F)
    if t is None:
        return {}
    return {p: subquotient(F(p, l), F(p + 1, l)) for p in range(t[0], t[1] + 1)}


def diagonal_decomposition_mismatches(F: FilteredComplex, G: FilteredComplex) -> list[tuple[int, int]]:
    """(p, l) cells where Gr^p_delta is not the direct sum of Gr^i_F Gr^j_G."""
    D = diagonal(F, G)
    C = F.base
    bad = []
    for p in range(F.lo + G.lo - 2, F.hi + G.hi + 1):
        for l in C.degrees:
            lhs = subquotient(D(p, l), D(p + 1, l))
            rhs = direct_sum(
                bigraded_piece(F, G, i, p - i).group(l) for i in range(F.lo - 1, F.hi + 1)
            )
            if lhs != rhs:
                bad.append((p, l))
    return bad


def iter_cells(F: FilteredComplex) -> Iterable[tuple[int, int]]:
    for p in range(F.lo - 1, F.hi + 1):
        for l in F.base.degrees:
            yield p, l
