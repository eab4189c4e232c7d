"""Reading and writing complexes, filtrations, simplicial data and reports.

Integers are written as JSON numbers when they fit in 53 bits and as decimal
strings otherwise; readers accept both.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Mapping

from .complexes import CochainComplex
from .filtrations import FilteredComplex, make_filtration
from .linalg import IntMatrix, Subgroup

SAFE_INT = 2**53


class MalformedInput(ValueError):
    pass


def int_to_json(x: int):
    return x if -SAFE_INT < x < SAFE_INT else str(x)


def int_from_json(v) -> int:
    if isinstance(v, bool):
        raise MalformedInput(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise MalformedInput(f"expected an integer, got {v!r}")


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def content_hash(data: bytes | str | Any) -> str:
    if isinstance(data, str):
        data = data.encode()
    elif not isinstance(data, bytes):
        data = json.dumps(data, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(data).hexdigest()


# ---------------------------------------------------------------------------
# Complexes and filtrations


def _matrix(rows, nrows: int, ncols: int, where: str) -> IntMatrix:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise MalformedInput(f"{where}: expected {nrows} rows")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != ncols:
            raise MalformedInput(f"{where}: expected rows of length {ncols}")
        out.append([int_from_json(x) for x in r])
    return IntMatrix.from_rows(out, ncols)


def complex_from_json(doc: Mapping) -> CochainComplex:
    """Parse {"degrees": [m, M], "ranks": {...}, "differentials": {"l": [[...]]}}.

    Shapes are checked here; d∘d = 0 is left to :func:`complexes.validate`.
    """
    if not isinstance(doc, Mapping) or "degrees" not in doc:
        raise MalformedInput("complex document needs a 'degrees' entry")
    try:
        lo, hi = (int_from_json(x) for x in doc["degrees"])
    except (TypeError, ValueError) as e:
        raise MalformedInput("'degrees' must be a pair [lo, hi]") from e
    if hi < lo - 1:
        raise MalformedInput("'degrees' range is reversed")
    ranks = {}
    for k, v in (doc.get("ranks") or {}).items():
        l = int_from_json(k)
        r = int_from_json(v)
        if r < 0:
            raise MalformedInput(f"negative rank in degree {l}")
        if r and not lo <= l <= hi:
            raise MalformedInput(f"rank given outside the degree range in degree {l}")
        ranks[l] = r
    diffs = {}
    for k, rows in (doc.get("differentials") or {}).items():
        l = int_from_json(k)
        if not lo <= l < hi:
            raise MalformedInput(f"differential d^{l} outside the degree range")
        diffs[l] = _matrix(rows, ranks.get(l + 1, 0), ranks.get(l, 0), f"d^{l}")
    return CochainComplex(lo, hi, ranks, diffs)


def complex_to_json(C: CochainComplex) -> dict:
    return C.to_json()


def _subgroup(given, n: int, where: str) -> Subgroup:
    if given == "all":
        return Subgroup.full(n)
    if not isinstance(given, list):
        raise MalformedInput(f"{where}: expected a list of generator vectors or \"all\"")
    gens = []
    for g in given:
        if not isinstance(g, list) or len(g) != n:
            raise MalformedInput(f"{where}: generators must have length {n}")
        gens.append([int_from_json(x) for x in g])
    return Subgroup.span(n, gens)


def filtration_from_json(C: CochainComplex, doc: Mapping, *, check: bool = True) -> FilteredComplex:
    """Parse {"steps": {"p": {"l": [[generator vectors]] | "all"}}}.

    A step may also be the string "all"; missing degrees in a step are zero.
    """
    if not isinstance(doc, Mapping) or "steps" not in doc:
        raise MalformedInput("filtration document needs a 'steps' entry")
    steps = {}
    for pk, step in doc["steps"].items():
        p = int_from_json(pk)
        if step == "all":
            steps[p] = {l: C.full(l) for l in C.degrees}
            continue
        if not isinstance(step, Mapping):
            raise MalformedInput(f"step {p}: expected a mapping from degree to generators")
        steps[p] = {}
        for lk, given in step.items():
            l = int_from_json(lk)
            if not C.lo <= l <= C.hi:
                raise MalformedInput(f"step {p}: degree {l} outside the complex")
            steps[p][l] = _subgroup(given, C.rank(l), f"step {p} degree {l}")
    return make_filtration(C, steps, check=check)


def filtration_to_json(F: FilteredComplex) -> dict:
    """Steps lo-1 (written as "all", which pins the window) through hi."""
    steps = {str(F.lo - 1): "all"}
    for p in F.window:
        steps[str(p)] = {
            str(l): [[int_to_json(x) for x in v] for v in F(p, l).basis]
            for l in F.base.degrees
            if not F(p, l).is_zero()
        }
    return {"steps": steps}


def filtered_to_json(F: FilteredComplex) -> dict:
    return {"complex": F.base.to_json(), "filtration": filtration_to_json(F)}


def _complex_part(doc: Mapping) -> Mapping:
    if "complex" in doc:
        return doc["complex"]
    if "degrees" in doc:
        return doc
    raise MalformedInput("document has no complex (expected 'complex' or 'degrees')")


def read_complex(doc: Mapping) -> CochainComplex:
    return complex_from_json(_complex_part(doc))


def read_filtered(doc: Mapping, key: str = "F", C: CochainComplex | None = None) -> FilteredComplex:
    """Filtered complex from a document with the filtration under ``key``,
    'filtration', or top-level 'steps'."""
    C = C if C is not None else read_complex(doc)
    for k in (key, "filtration"):
        if k in doc:
            return filtration_from_json(C, doc[k])
    if "steps" in doc:
        return filtration_from_json(C, doc)
    raise MalformedInput(f"document has no filtration (expected '{key}', 'filtration' or 'steps')")


def read_bifiltered(doc: Mapping):
    from .filtrations import BifilteredComplex

    C = read_complex(doc)
    if "P" not in doc or "F" not in doc:
        raise MalformedInput("bifiltered document needs 'P' and 'F' filtrations")
    return BifilteredComplex.of(filtration_from_json(C, doc["P"]), filtration_from_json(C, doc["F"]))


def load_json(path) -> tuple[Any, str]:
    """Parsed document and the content hash of its bytes."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return json.loads(raw), content_hash(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise MalformedInput(f"{path}: not valid JSON ({e})") from e


# ---------------------------------------------------------------------------
# Simplicial data


def _label(s: str):
    try:
        return int(s)
    except ValueError:
        return s


def _simplex_of(given) -> tuple:
    from .simplicial import _simplex

    if isinstance(given, str):
        parts = given.split()
    elif isinstance(given, list):
        parts = [str(x) for x in given]
    else:
        raise MalformedInput(f"cannot read a simplex from {given!r}")
    if not parts:
        raise MalformedInput("empty simplex")
    return _simplex(_label(x) for x in parts)


def parse_simplicial(text: str):
    """One simplex per line as whitespace-separated vertex labels; '#' starts a
    comment.  Listed simplices are closed under faces."""
    from .simplicial import SimplicialComplex

    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            facets.append(_simplex_of(line))
    return SimplicialComplex.from_facets(facets)


def simplicial_to_text(X) -> str:
    return "".join(" ".join(str(v) for v in s) + "\n" for s in X.simplices)


def flag_from_json(X, doc) -> Any:
    """{"-1": [simplices of Y_-1], "-2": [...], ...}, or a list ordered from Y_-1 down.

    Levels are membership lists and are not closed automatically.
    """
    from .simplicial import ClosedSubcomplexFlag, FlagError

    general = False
    if isinstance(doc, Mapping) and "levels" in doc:
        general = bool(doc.get("asserted_general", False))
        doc = doc["levels"]
    if isinstance(doc, Mapping):
        keys = sorted((int_from_json(k) for k in doc), reverse=True)
        if keys != list(range(-1, -len(keys) - 1, -1)):
            raise MalformedInput("flag levels must be named -1, -2, ..., -n")
        levels = [doc[str(k)] if str(k) in doc else doc[k] for k in keys]
    elif isinstance(doc, list):
        levels = doc
    else:
        raise MalformedInput("flag must be a mapping or a list of levels")
    sets = []
    for lv in levels:
        sset = frozenset(_simplex_of(s) for s in lv)
        missing = [s for s in sset if s not in X.simplex_set]
        if missing:
            raise MalformedInput(f"flag level lists {missing[0]} which is not a simplex of the complex")
        sets.append(sset)
    try:
        return ClosedSubcomplexFlag(X, tuple(sets), general)
    except FlagError as e:
        raise MalformedInput(str(e)) from e


def flag_to_json(flag) -> dict:
    return {
        str(-(k + 1)): [" ".join(str(v) for v in s) for s in sorted(lv, key=lambda s: flag.ambient.simplices.index(s))]
        for k, lv in enumerate(flag.levels)
    }


def sheaf_from_json(X, doc: Mapping | None):
    """{"stalks": {"a b": rank}, "restrictions": {"a|a b": [[...]]}}; absent means constant Z."""
    from .simplicial import CONSTANT, CellularSheaf, sheaf_violations

    if not doc:
        return CONSTANT
    stalks = {}
    for k, v in (doc.get("stalks") or {}).items():
        s = _simplex_of(k)
        if s not in X.simplex_set:
            raise MalformedInput(f"stalk given for {k!r}, which is not a simplex")
        r = int_from_json(v)
        if r < 0:
            raise MalformedInput(f"negative stalk rank on {k!r}")
        stalks[s] = r
    full = {s: stalks.get(s, 1) for s in X.simplices}
    restr = {}
    for k, rows in (doc.get("restrictions") or {}).items():
        if "|" not in k:
            raise MalformedInput(f"restriction key {k!r} must read 'face|coface'")
        a, b = (_simplex_of(x) for x in k.split("|", 1))
        if a not in X.simplex_set or b not in X.simplex_set:
            raise MalformedInput(f"restriction {k!r} names a non-simplex")
        restr[(a, b)] = _matrix(rows, full[b], full[a], f"restriction {k}")
    S = CellularSheaf(full, restr)
    problems = sheaf_violations(X, S)
    if problems:
        raise MalformedInput("; ".join(problems))
    return S
