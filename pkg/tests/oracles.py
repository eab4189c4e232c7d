"""Independent reference computations (sympy SNF, hand-rolled incidence matrices).

Nothing here imports the package under test.
"""
from __future__ import annotations

from itertools import combinations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def nonzero_invariants(rows: list[list[int]], ncols: int) -> list[int]:
    if not rows or not ncols:
        return []
    return sorted(abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ) if x != 0)


def matrix_rank(rows, ncols) -> int:
    return len(nonzero_invariants(rows, ncols))


def cohomology(ranks: dict[int, int], diffs: dict[int, list[list[int]]]) -> dict[int, tuple[int, tuple[int, ...]]]:
    """(free rank, torsion invariants) of H^l from SNF of the incoming and outgoing maps."""
    out = {}
    for l, n in ranks.items():
        d_in = diffs.get(l - 1) or []
        d_out = diffs.get(l) or []
        inv_in = nonzero_invariants(d_in, ranks.get(l - 1, 0))
        r_out = matrix_rank(d_out, n)
        out[l] = (n - r_out - len(inv_in), tuple(f for f in inv_in if f > 1))
    return out


def simplicial_cochains(facets) -> tuple[dict[int, int], dict[int, list[list[int]]]]:
    """Ranks and coboundary matrices of the simplicial cochain complex, Z coefficients."""
    simplices = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            simplices.update(combinations(f, k))
    by_dim: dict[int, list] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for k in by_dim:
        by_dim[k].sort()
    top = max(by_dim)
    ranks = {k: len(by_dim.get(k, [])) for k in range(top + 1)}
    diffs = {}
    for k in range(top):
        index = {s: i for i, s in enumerate(by_dim[k])}
        rows = []
        for t in by_dim[k + 1]:
            row = [0] * ranks[k]
            for i in range(len(t)):
                row[index[t[:i] + t[i + 1:]]] += (-1) ** i
            rows.append(row)
        diffs[k] = rows
    return ranks, diffs


def simplicial_cohomology(facets):
    return cohomology(*simplicial_cochains(facets))
