"""Bounded cochain complexes of free Z-modules and their cohomology."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .linalg import (
    AbelianGroup,
    IntMatrix,
    QuotientPresentation,
    Subgroup,
    image,
    kernel_basis,
    subquotient,
)


class InvalidComplex(ValueError):
    """Raised when a complex violates shape consistency or d∘d = 0."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    degrees: tuple[int, ...] = ()  # degrees l at which a violation was located

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"pass": self.ok, "violations": list(self.violations), "degrees": list(self.degrees)}


@dataclass(frozen=True, eq=False)
class CochainComplex:
    """C^lo -> C^{lo+1} -> ... -> C^hi with d^l : Z^rank(l) -> Z^rank(l+1).

    ``differentials[l]`` is a ``rank(l+1) x rank(l)`` matrix; missing entries
    are zero maps.
    """

    lo: int
    hi: int
    ranks: Mapping[int, int]
    differentials: Mapping[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.hi < self.lo - 1:
            raise ValueError("degree range [lo, hi] is reversed")
        ranks = {l: int(self.ranks.get(l, 0)) for l in range(self.lo, self.hi + 1)}
        extra = [l for l, r in self.ranks.items() if r and not self.lo <= l <= self.hi]
        if extra:
            raise ValueError(f"nonzero ranks outside the degree range at {sorted(extra)}")
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "differentials", dict(self.differentials))

    def __eq__(self, other):
        if not isinstance(other, CochainComplex):
            return NotImplemented
        if self is other:
            return True
        degs = set(self.degrees) | set(other.degrees)
        return all(self.rank(l) == other.rank(l) for l in degs) and all(
            self.d(l) == other.d(l) for l in degs
        )

    __hash__ = None

    @classmethod
    def zero(cls) -> CochainComplex:
        return cls(0, -1, {})

    def rank(self, l: int) -> int:
        return self.ranks.get(l, 0)

    def d(self, l: int) -> IntMatrix:
        m = self.differentials.get(l)
        if m is None:
            return IntMatrix.zeros(self.rank(l + 1), self.rank(l))
        return m

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (l % 2) * self.rank(l) for l in self.degrees)

    def full(self, l: int) -> Subgroup:
        return Subgroup.full(self.rank(l))

    def zero_subgroup(self, l: int) -> Subgroup:
        return Subgroup.zero(self.rank(l))

    @cached_property
    def _cycles(self) -> dict[int, Subgroup]:
        return {}

    @cached_property
    def _boundaries(self) -> dict[int, Subgroup]:
        return {}

    def cocycles(self, l: int) -> Subgroup:
        z = self._cycles.get(l)
        if z is None:
            z = kernel_basis(self.d(l)) if self.rank(l) else self.zero_subgroup(l)
            self._cycles[l] = z
        return z

    def coboundaries(self, l: int) -> Subgroup:
        b = self._boundaries.get(l)
        if b is None:
            b = image(self.d(l - 1)) if self.rank(l) and self.rank(l - 1) else self.zero_subgroup(l)
            self._boundaries[l] = b
        return b

    def to_json(self) -> dict:
        from .io import int_to_json

        return {
            "degrees": [self.lo, self.hi],
            "ranks": {str(l): self.rank(l) for l in self.degrees},
            "differentials": {
                str(l): [[int_to_json(x) for x in row] for row in self.d(l).to_rows()]
                for l in range(self.lo, self.hi)
                if not self.d(l).is_zero()
            },
        }


def validate(C: CochainComplex) -> ValidationReport:
    """Check matrix shapes and d^{l+1} d^l = 0; collect every violation."""
    problems, where = [], []
    for l, m in sorted(C.differentials.items()):
        if not C.lo <= l < C.hi and not m.is_zero():
            problems.append(f"degree {l}: differential outside the degree range")
            where.append(l)
        elif (m.rows, m.cols) != (C.rank(l + 1), C.rank(l)):
            problems.append(
                f"degree {l}: d^{l} has shape {m.rows}x{m.cols}, expected {C.rank(l + 1)}x{C.rank(l)}"
            )
            where.append(l)
    if not problems:
        for l in range(C.lo, C.hi - 1):
            dd = C.d(l + 1) @ C.d(l)
            if not dd.is_zero():
                problems.append(f"degree {l}: d^{l + 1} d^{l} = {dd.to_rows()} is nonzero")
                where.append(l)
    return ValidationReport(tuple(problems), tuple(where))


def require_valid(C: CochainComplex) -> None:
    report = validate(C)
    if not report.ok:
        raise InvalidComplex(report.violations)


def cohomology(C: CochainComplex, l: int) -> AbelianGroup:
    """H^l(C) = ker d^l / im d^{l-1}."""
    if not C.rank(l):
        return AbelianGroup()
    return subquotient(C.cocycles(l), C.coboundaries(l))


class CohomologyGroup(QuotientPresentation):
    """H^l(C) with explicit generators and class coordinates."""

    def __init__(self, C: CochainComplex, l: int):
        super().__init__(C.cocycles(l), C.coboundaries(l))
        self.complex = C
        self.degree = l


def cohomology_presentation(C: CochainComplex, l: int) -> CohomologyGroup:
    return CohomologyGroup(C, l)


def cohomology_class_map(C: CochainComplex, l: int, cocycle: Sequence[int]) -> tuple[int, ...]:
    """Coordinates of the class of ``cocycle`` in the SNF presentation of H^l(C)."""
    cocycle = tuple(int(x) for x in cocycle)
    if len(cocycle) != C.rank(l):
        raise ValueError(f"cochain has length {len(cocycle)}, expected {C.rank(l)}")
    if any(C.d(l).apply(cocycle)):
        raise ValueError("not a cocycle")
    return cohomology_presentation(C, l).coordinates(cocycle)
