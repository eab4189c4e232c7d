"""Seeded random filtered complexes for the property suites.

Generation, per corpus element (each element has its own RNG seeded by
``f"{seed}:{index}"``, so elements do not depend on each other):

1. Degrees: a window [lo, hi] inside [-3, 3] with at least two degrees.
2. Ranks: in [1, max_rank] per degree, or in [0, max_rank] with probability 0.2.
3. Differentials: d^lo has random entries in [-4, 4]; each later d^l takes
   its rows from small integer combinations of a basis of the left kernel of
   d^{l-1}, so d d = 0 holds by construction.  Rows leaving [-4, 4] are
   resampled, then zeroed.
4. Filtration: from the top step down, F^p = F^{p+1} + (d-closure of a few
   random vectors), which gives nested subcomplexes.  With probability 0.3
   every step is then intersected with one random d-closed subcomplex.
"""
from __future__ import annotations

import random

from .complexes import CochainComplex
from .filtrations import FilteredComplex, make_filtration
from .linalg import IntMatrix, Subgroup, image, kernel_basis, subgroup_intersection, subgroup_sum

ENTRY_BOUND = 4


def random_complex(rng: random.Random, max_rank: int = 6, max_span: int = 7) -> CochainComplex:
    lo = rng.randint(-3, 2)
    hi = rng.randint(lo + 1, min(3, lo + max_span - 1))
    ranks = {l: rng.randint(0, max_rank) if rng.random() < 0.2 else rng.randint(1, max_rank) for l in range(lo, hi + 1)}
    diffs = {}
    prev = None
    for l in range(lo, hi):
        m, n = ranks[l + 1], ranks[l]
        if prev is None:
            rows = [
                [rng.randint(-ENTRY_BOUND, ENTRY_BOUND) if rng.random() < 0.5 else 0 for _ in range(n)]
                for _ in range(m)
            ]
        else:
            # Left kernel of prev: vectors y with y @ prev = 0.
            ker = kernel_basis(prev.T).basis if n else ()
            rows = [_kernel_row(rng, ker, n) for _ in range(m)]
        d = IntMatrix.from_rows(rows, n)
        diffs[l] = d
        prev = d
    return CochainComplex(lo, hi, ranks, diffs)


def _kernel_row(rng: random.Random, ker, n: int) -> list[int]:
    if not ker or rng.random() < 0.15:
        return [0] * n
    for _ in range(10):
        row = [0] * n
        for _ in range(rng.randint(1, 2)):
            v = rng.choice(ker)
            c = rng.choice((-2, -1, 1, 2))
            row = [a + c * b for a, b in zip(row, v)]
        if max(map(abs, row)) <= ENTRY_BOUND:
            return row
    return [0] * n


def _random_closure(rng: random.Random, C: CochainComplex, max_vectors: int = 2) -> dict[int, Subgroup]:
    gens = {l: [] for l in C.degrees}
    for l in C.degrees:
        n = C.rank(l)
        if not n:
            continue
        for _ in range(rng.randint(0, max_vectors)):
            gens[l].append([rng.randint(-2, 2) for _ in range(n)])
    out = {}
    for l in C.degrees:
        S = Subgroup.span(C.rank(l), gens[l])
        if l - 1 in gens and C.rank(l - 1):
            S = subgroup_sum(S, image(C.d(l - 1), Subgroup.span(C.rank(l - 1), gens[l - 1])))
        out[l] = S
    return out


def random_filtration(rng: random.Random, C: CochainComplex, max_steps: int = 4) -> FilteredComplex:
    nsteps = rng.randint(1, max_steps)
    hi = rng.randint(-2, 2)
    lo = hi - nsteps + 1
    steps = {}
    current = {l: C.zero_subgroup(l) for l in C.degrees}
    for p in range(hi, lo - 1, -1):
        add = _random_closure(rng, C)
        current = {l: subgroup_sum(current[l], add[l]) for l in C.degrees}
        steps[p] = current
    if rng.random() < 0.3:
        cut = _random_closure(rng, C, max_vectors=3)
        steps = {p: {l: subgroup_intersection(s[l], cut[l]) for l in C.degrees} for p, s in steps.items()}
    if not any(C.rank(l) for l in C.degrees):
        return make_filtration(C, {})
    return make_filtration(C, steps)


def random_filtered_complex(seed, index: int, max_rank: int = 6, max_steps: int = 4) -> FilteredComplex:
    rng = random.Random(f"{seed}:{index}")
    C = random_complex(rng, max_rank=max_rank)
    return random_filtration(rng, C, max_steps=max_steps)


def corpus(seed, count: int, **kwargs) -> list[FilteredComplex]:
    return [random_filtered_complex(seed, i, **kwargs) for i in range(count)]


def random_second_filtration(seed, index: int, F: FilteredComplex) -> FilteredComplex:
    """An independent random filtration on the same base as ``F``."""
    rng = random.Random(f"{seed}:{index}:second")
    return random_filtration(rng, F.base)


def random_simplicial_complex(rng: random.Random, max_vertices: int = 7):
    """A random complex of dimension 2: some triangles and extra edges on 4..max_vertices vertices."""
    from itertools import combinations

    from .simplicial import SimplicialComplex

    nv = rng.randint(4, max_vertices)
    tris = list(combinations(range(nv), 3))
    facets = rng.sample(tris, rng.randint(1, min(6, len(tris))))
    edges = list(combinations(range(nv), 2))
    facets += rng.sample(edges, rng.randint(0, 3))
    facets += [(v,) for v in range(nv)]
    return SimplicialComplex.from_facets(facets)


def _random_closed_subset(rng: random.Random, simplices) -> frozenset:
    from itertools import combinations

    chosen = [s for s in simplices if rng.random() < 0.35]
    closed = set()
    for s in chosen:
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    return frozenset(closed)


def random_simplicial_flag(seed, index: int, max_levels: int = 2):
    """(X, flag) with X a random 2-dimensional complex and a random nested flag of
    closed subcomplexes Y_{-1} ⊇ ... ⊇ Y_{-k}, k in [1, max_levels]."""
    from .simplicial import ClosedSubcomplexFlag

    rng = random.Random(f"{seed}:{index}:flag")
    X = random_simplicial_complex(rng)
    levels = []
    current = X.simplices
    for _ in range(rng.randint(1, max_levels)):
        Y = _random_closed_subset(rng, current)
        levels.append(Y)
        current = sorted(Y, key=lambda s: X.simplices.index(s))
    return X, ClosedSubcomplexFlag(X, tuple(levels))
