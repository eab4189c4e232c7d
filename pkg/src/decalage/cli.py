"""Command-line driver.

Exit codes: 0 success, 1 a check failed, 2 malformed input or usage error.
Reports are deterministic JSON (sorted keys) and carry the content hash of
their inputs; page tables can be written as TSV.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Any

from .checkers import (
    check_cellular_vanishing,
    check_e1_differential_is_triple_map,
    check_decale_pair,
    check_p_equals_decf,
    check_sta,
)
from .complexes import InvalidComplex, cohomology, validate
from .corpus import corpus
from .filtrations import (
    BaseMismatch,
    BifilteredComplex,
    FilteredComplex,
    InducedFiltration,
    InvalidFiltration,
    decale,
    diagonal,
    diagonal_decomposition_mismatches,
    filtration_violations,
)
from .io import (
    MalformedInput,
    complex_from_json,
    content_hash,
    dumps,
    filtered_to_json,
    filtration_from_json,
    flag_from_json,
    load_json,
    parse_simplicial,
    read_bifiltered,
    read_complex,
    read_filtered,
    sheaf_from_json,
)
from .linalg import AbelianGroup
from .simplicial import (
    ClosedSubcomplexFlag,
    CochainModel,
    FlagError,
    MapError,
    SheafError,
    SimplicialMap,
    circle,
    flag_filtration_F,
    preimage_flag,
    pushforward_flag_comparison,
    subdivided_model,
    support_filtration_G,
    skeletal_flag,
    torus_projection,
)
from .spectral import SpectralSequence, abutment, check_dec_reindex

OUT_ENV = "DECALAGE_OUT"
INPUT_ERRORS = (
    MalformedInput,
    InvalidComplex,
    InvalidFiltration,
    BaseMismatch,
    FlagError,
    SheafError,
    MapError,
    OSError,
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Output


def _group(g: AbelianGroup, coefficients: str) -> dict:
    return g.tensor(coefficients).to_json()


def emit(args, name: str, payload: dict, text: str | None = None, suffix: str = "json") -> None:
    body = text if text is not None else dumps(payload)
    out = args.out or os.environ.get(OUT_ENV)
    if out:
        Path(out).mkdir(parents=True, exist_ok=True)
        (Path(out) / f"{name}.{suffix}").write_text(body)
    else:
        sys.stdout.write(body)


# ---------------------------------------------------------------------------
# Input helpers


def _read_text(path) -> tuple[str, str]:
    raw = Path(path).read_bytes()
    return raw.decode(), content_hash(raw)


def load_filtered(path) -> tuple[FilteredComplex, str]:
    doc, h = load_json(path)
    F = read_filtered(doc)
    _require_valid(F.base)
    return F, h


def _require_valid(C) -> None:
    rep = validate(C)
    if not rep.ok:
        raise InvalidComplex(rep.violations)


def load_simplicial(path, sheaf_path=None):
    text, h = _read_text(path)
    X = parse_simplicial(text)
    S = None
    hashes = [h]
    if sheaf_path:
        doc, hs = load_json(sheaf_path)
        S = sheaf_from_json(X, doc)
        hashes.append(hs)
    return X, S, hashes


def load_complex_input(path, sheaf_path=None):
    """A complex from a JSON document or from a simplicial text file."""
    if str(path).endswith(".json"):
        doc, h = load_json(path)
        C = read_complex(doc)
        return C, [h]
    X, S, hashes = load_simplicial(path, sheaf_path)
    return CochainModel(X, S).complex, hashes


def _filtered_items(args) -> list[tuple[str, FilteredComplex]]:
    if args.file:
        F, h = load_filtered(args.file)
        args._hashes.append(h)
        return [(args.file, F)]
    if args.seed is None:
        raise UsageError("give an input file or --seed for the random corpus")
    args._hashes.append(f"corpus:{args.seed}:{args.count}")
    return [(f"corpus[{i}]", F) for i, F in enumerate(corpus(args.seed, args.count))]


# ---------------------------------------------------------------------------
# Subcommands


def cmd_validate(args) -> int:
    doc, h = load_json(args.file)
    C = read_complex(doc)
    rep = validate(C)
    out: dict[str, Any] = {"input": h, "complex": rep.to_json(), "filtrations": {}}
    ok = rep.ok
    if ok:
        for key in ("filtration", "F", "P", "G"):
            if key in doc:
                F = filtration_from_json(C, doc[key], check=False)
                problems = filtration_violations(F)
                out["filtrations"][key] = {"ok": not problems, "violations": problems}
                ok = ok and not problems
    emit(args, "validate", out)
    if not rep.ok:
        for v in rep.violations:
            print(v, file=sys.stderr)
    return 0 if ok else 2


def cmd_cohomology(args) -> int:
    C, hashes = load_complex_input(args.file, args.sheaf)
    _require_valid(C)
    out = {
        "input": hashes,
        "coefficients": args.coefficients,
        "cohomology": {str(l): _group(cohomology(C, l), args.coefficients) for l in C.degrees},
    }
    emit(args, "cohomology", out)
    return 0


def _pages_payload(F: FilteredComplex, args, pages) -> tuple[dict, str]:
    ss = SpectralSequence(F)
    payload = {
        "pages": {str(r): ss.page(r).to_json(args.coefficients) for r in pages},
        "abutment": abutment(F, ss).to_json(args.coefficients),
        "stabilization": ss.stabilization_page(),
        "coefficients": args.coefficients,
    }
    tsv = "".join(ss.page(r).to_tsv(args.coefficients) for r in pages)
    return payload, tsv


def cmd_ss(args) -> int:
    F, h = load_filtered(args.file)
    ss = SpectralSequence(F)
    if args.page is not None:
        if args.page < 0:
            raise UsageError("--page must be >= 0")
        pages = [args.page]
    else:
        top = ss.stabilization_page()
        if args.max_page is not None:
            top = min(top, args.max_page)
        pages = list(range(0, top + 1))
    payload, tsv = _pages_payload(F, args, pages)
    payload["input"] = h
    if args.format == "tsv":
        emit(args, "ss", payload, text=tsv, suffix="tsv")
    else:
        emit(args, "ss", payload)
    return 0


def cmd_decale(args) -> int:
    F, h = load_filtered(args.file)
    out = filtered_to_json(decale(F))
    out["input"] = h
    emit(args, "decale", out)
    return 0


def cmd_diagonal(args) -> int:
    doc, h = load_json(args.file)
    C = read_complex(doc)
    _require_valid(C)
    if "F" not in doc or "G" not in doc:
        raise MalformedInput("diagonal needs filtrations 'F' and 'G'")
    F = filtration_from_json(C, doc["F"])
    G = filtration_from_json(C, doc["G"])
    out = filtered_to_json(diagonal(F, G))
    out["input"] = h
    out["decompositionMismatches"] = [list(x) for x in diagonal_decomposition_mismatches(F, G)]
    emit(args, "diagonal", out)
    return 0 if not out["decompositionMismatches"] else 1


def _rational_filter(rep_json: dict, coefficients: str) -> dict:
    """In rational mode a vanishing condition only sees free parts."""
    if coefficients != "rat" or "violations" not in rep_json:
        return rep_json
    kept = [v for v in rep_json["violations"] if v["group"]["freeRank"]]
    return dict(rep_json, violations=kept, **{"pass": not kept})


def cmd_check(args) -> int:
    args._hashes = []
    name = args.name
    results = []
    if name in ("sta", "pdec"):
        if not args.file:
            raise UsageError(f"check {name} needs a bifiltered document")
        doc, h = load_json(args.file)
        args._hashes.append(h)
        B = read_bifiltered(doc)
        _require_valid(B.base)
        rep = check_sta(B) if name == "sta" else check_p_equals_decf(B, args.max_page)
        results.append((args.file, rep.to_json()))
    elif name in ("lmlu", "dec-reindex", "cellular"):
        for label, F in _filtered_items(args):
            if name == "lmlu":
                rep = check_decale_pair(F)
            elif name == "dec-reindex":
                rep = check_dec_reindex(F)
            else:
                rep = check_cellular_vanishing(F, args.mode, args.shift)
            results.append((label, rep.to_json()))
    elif name == "e1-triples":
        if not args.file or not args.flag:
            raise UsageError("check e1-triples needs a simplicial file and --flag")
        X, S, hashes = load_simplicial(args.file, args.sheaf)
        fdoc, fh = load_json(args.flag)
        args._hashes += hashes + [fh]
        F = flag_filtration_F(X, S, flag_from_json(X, fdoc))
        results.append((args.file, check_e1_differential_is_triple_map(F).to_json()))
    results = [(label, _rational_filter(r, args.coefficients)) for label, r in results]
    passed = all(r["pass"] for _, r in results)
    out = {
        "check": name,
        "input": args._hashes,
        "pass": passed,
        "count": len(results),
        "failures": [{"item": label, "report": r} for label, r in results if not r["pass"]],
    }
    if len(results) == 1:
        out["report"] = results[0][1]
    emit(args, f"check-{name}", out)
    return 0 if passed else 1


def _flag_inputs(args):
    X, S, hashes = load_simplicial(args.file, args.sheaf)
    fdoc, fh = load_json(args.flag)
    return X, S, flag_from_json(X, fdoc), hashes + [fh]


def cmd_flag_f(args) -> int:
    X, S, flag, hashes = _flag_inputs(args)
    F = flag_filtration_F(X, S, flag)
    out = filtered_to_json(F)
    out["input"] = hashes
    out["abutment"] = abutment(F).to_json(args.coefficients)
    out["asserted_general"] = flag.asserted_general
    emit(args, "flag-f", out)
    return 0


def cmd_flag_g(args) -> int:
    X, S, flag, hashes = _flag_inputs(args)
    G = support_filtration_G(X, S, flag)
    out = filtered_to_json(G)
    out["input"] = hashes
    out["abutment"] = abutment(G).to_json(args.coefficients)
    out["asserted_general"] = flag.asserted_general
    emit(args, "flag-g", out)
    return 0


def _leray_from_doc(doc: dict, base: Path):
    src = _simplicial_field(doc.get("simplicial") or doc.get("source"), base)
    tgt_doc = doc.get("map") or {}
    tgt = _simplicial_field(tgt_doc.get("target"), base)
    vmap = {_vertex(k): _vertex(v) for k, v in (tgt_doc.get("vertexMap") or {}).items()}
    f = SimplicialMap(src, tgt, vmap)
    flag = flag_from_json(tgt, tgt_doc.get("flag") or {})
    S = sheaf_from_json(src, doc.get("sheaf"))
    return f, S, flag


def leray_report(f: SimplicialMap, S, flag, coefficients: str = "int") -> dict:
    rep = pushforward_flag_comparison(f, S, flag)
    Xf = preimage_flag(f, flag)
    F = flag_filtration_F(f.source, S, Xf)
    D = decale(F)
    shifted = {}
    for l in F.base.degrees:
        ind = InducedFiltration(D, l)
        shifted[str(l)] = {
            str(p): _group(ind.graded(p), coefficients)
            for p in range(ind.lo - 1, ind.hi + 1)
            if not ind.graded(p).tensor(coefficients).is_trivial()
        }
    out = rep.to_json()
    out["shiftedGraded"] = shifted
    return out


def cmd_leray(args) -> int:
    if args.file:
        doc, h = load_json(args.file)
        f, S, flag = _leray_from_doc(doc, Path(args.file).parent)
    else:
        h = "builtin:torus-projection"
        f = torus_projection()
        flag = ClosedSubcomplexFlag(circle(), (frozenset({(0,)}),))
        S = None
    out = leray_report(f, S, flag, args.coefficients)
    out["input"] = h
    emit(args, "leray", out)
    return 0 if out["pass"] else 1


def cmd_random_corpus(args) -> int:
    seed = 42 if args.seed is None else args.seed
    out = {
        "seed": seed,
        "count": args.count,
        "input": f"corpus:{seed}:{args.count}",
        "elements": [filtered_to_json(F) for F in corpus(seed, args.count)],
    }
    emit(args, "random-corpus", out)
    return 0


# ---------------------------------------------------------------------------
# Scenarios


SCENARIO_CHECKS = ("sta", "pdec", "lmlu", "dec-reindex", "cellular", "cellular-right", "e1-triples", "pushforward")


def _vertex(v):
    if isinstance(v, int):
        return v
    try:
        return int(v)
    except (TypeError, ValueError):
        return v


def _simplicial_field(value, base: Path):
    from .simplicial import SimplicialComplex

    if value is None:
        raise MalformedInput("missing simplicial complex")
    if isinstance(value, str):
        return parse_simplicial((base / value).read_text())
    if isinstance(value, list):
        return SimplicialComplex.from_facets([[_vertex(v) for v in f] for f in value])
    raise MalformedInput("simplicial complex must be a file name or a list of facets")


def _doc_field(value, base: Path):
    if isinstance(value, str) and value.endswith(".json"):
        doc, _ = load_json(base / value)
        return doc
    return value


def builtin_scenarios() -> dict[str, Path]:
    root = resources.files("decalage") / "scenarios"
    return {p.name: Path(str(p)) for p in root.iterdir() if p.is_dir()}


def _resolve_scenario(ref: str) -> Path:
    p = Path(ref)
    if p.is_dir():
        p = p / "scenario.json"
    if p.exists():
        return p
    builtin = builtin_scenarios()
    if ref in builtin:
        return builtin[ref] / "scenario.json"
    raise MalformedInput(f"no scenario at {ref!r} (builtin: {', '.join(sorted(builtin))})")


def _compare_groups(expected: dict, actual_fn, coefficients: str, path: str, mismatches: list):
    for l, row in expected.items():
        for p, g in row.items():
            want = AbelianGroup.from_json(g).tensor(coefficients)
            got = actual_fn(int(l), int(p)).tensor(coefficients)
            if want != got:
                mismatches.append({"at": f"{path}.{l}.{p}", "expected": want.to_json(), "actual": got.to_json()})


def run_scenario(ref: str, coefficients: str = "int", max_page: int | None = None) -> tuple[int, dict]:
    """Execute one scenario; returns (exit code, report)."""
    try:
        path = _resolve_scenario(ref)
        doc, h = load_json(path)
        if not isinstance(doc, dict):
            raise MalformedInput("scenario must be a JSON object")
        return _run_scenario_doc(doc, path.parent, h, coefficients, max_page)
    except INPUT_ERRORS as e:
        return 2, {"scenario": ref, "error": str(e), "input": None}


def _run_scenario_doc(doc: dict, base: Path, h: str, coefficients: str, max_page) -> tuple[int, dict]:
    report: dict[str, Any] = {"name": doc.get("name"), "input": h, "checks": [], "coefficients": coefficients}
    checks = doc.get("checks", [])
    unknown = [c for c in checks if c not in SCENARIO_CHECKS]
    if unknown:
        raise MalformedInput(f"unknown check(s): {', '.join(unknown)}")
    if "asserted_general" in doc:
        report["asserted_general"] = bool(doc["asserted_general"])

    X = S = model = flag = zflag = fmap = None
    if "simplicial" in doc:
        X = _simplicial_field(doc["simplicial"], base)
        S = sheaf_from_json(X, _doc_field(doc.get("sheaf"), base))
        model = CochainModel(X, S)
        if doc.get("flag") == "skeletal":
            flag = skeletal_flag(X)
        elif "flag" in doc:
            flag = flag_from_json(X, _doc_field(doc["flag"], base))
        if "supportFlag" in doc:
            zflag = flag_from_json(X, _doc_field(doc["supportFlag"], base))
        if "map" in doc:
            fmap, _, tflag = _leray_from_doc(doc, base)
            if flag is None:
                flag = preimage_flag(fmap, tflag)
    C = None
    if "complex" in doc:
        C = complex_from_json(_doc_field(doc["complex"], base))
        _require_valid(C)
    elif model is not None:
        C = model.complex
    filt: dict[str, FilteredComplex] = {}
    if C is not None:
        if "F" in doc:
            filt["F"] = filtration_from_json(C, _doc_field(doc["F"], base))
        elif flag is not None and model is not None:
            filt["F"] = flag_filtration_F(X, S, flag, model=model)
        if "P" in doc:
            filt["P"] = filtration_from_json(C, _doc_field(doc["P"], base))
    if "F" in filt:
        filt["DecF"] = decale(filt["F"])
    if not checks and not doc.get("expected"):
        return 0, report

    def need(key):
        if key not in filt:
            raise MalformedInput(f"scenario needs filtration {key!r} for the requested checks")
        return filt[key]

    for name in checks:
        if name == "sta":
            r = _rational_filter(check_sta(BifilteredComplex.of(need("P"), need("F"))).to_json(), coefficients)
        elif name == "pdec":
            r = check_p_equals_decf(BifilteredComplex.of(need("P"), need("F")), max_page).to_json()
        elif name == "lmlu":
            r = _rational_filter(check_decale_pair(need("F")).to_json(), coefficients)
        elif name == "dec-reindex":
            r = check_dec_reindex(need("F")).to_json()
        elif name == "cellular":
            r = _rational_filter(check_cellular_vanishing(need("F"), "left").to_json(), coefficients)
        elif name == "cellular-right":
            if zflag is None:
                raise MalformedInput("cellular-right needs a 'supportFlag'")
            G = support_filtration_G(X, S, zflag, subdivided_model(X, S))
            r = _rational_filter(check_cellular_vanishing(G, "right").to_json(), coefficients)
        elif name == "e1-triples":
            r = check_e1_differential_is_triple_map(need("F")).to_json()
        else:  # pushforward
            if fmap is None:
                raise MalformedInput("pushforward needs a 'map'")
            _, _, tflag = _leray_from_doc(doc, base)
            r = leray_report(fmap, S, tflag, coefficients)
        report["checks"].append(r)

    expected = _doc_field(doc.get("expected"), base) or {}
    mismatches: list = []
    if expected:
        for kind in ("abutment", "graded"):
            for key, table in (expected.get(kind) or {}).items():
                F = need(key)
                cache: dict[int, InducedFiltration] = {}

                def actual(l, p, F=F, cache=cache, kind=kind):
                    ind = cache.setdefault(l, InducedFiltration(F, l))
                    return ind.group(p) if kind == "abutment" else ind.graded(p)

                _compare_groups(table, actual, coefficients, f"{kind}.{key}", mismatches)
        if "cohomology" in expected:
            table = {l: {"0": g} for l, g in expected["cohomology"].items()}
            _compare_groups(table, lambda l, p: cohomology(C, l), coefficients, "cohomology", mismatches)
        for key, pages in (expected.get("pages") or {}).items():
            ss = SpectralSequence(need(key))
            for r_, cells in pages.items():
                table: dict = {}
                for pq, g in cells.items():
                    p, q = pq.split(",")
                    table.setdefault(str(int(p) + int(q)), {})[p] = g
                _compare_groups(
                    table, lambda n, p, r_=r_, ss=ss: ss.group(int(r_), p, n - p), coefficients,
                    f"pages.{key}.{r_}", mismatches,
                )
        report["expected"] = {"pass": not mismatches, "mismatches": mismatches}
    passed = all(c["pass"] for c in report["checks"]) and not mismatches
    report["pass"] = passed
    return (0 if passed else 1), report


def _run_one(task):
    return run_scenario(*task)


def cmd_run(args) -> int:
    tasks = [(s, args.coefficients, args.max_page) for s in args.scenarios]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    for (code, rep), (ref, *_) in zip(results, tasks):
        if code == 2:
            print(f"{ref}: {rep.get('error')}", file=sys.stderr)
    if len(results) == 1:
        emit(args, "run", results[0][1])
    else:
        emit(args, "run", {"scenarios": [rep for _, rep in results]})
    return max(code for code, _ in results)


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coefficients", choices=("int", "rat"), default="int")
    common.add_argument("--max-page", type=int, default=None)
    common.add_argument("--out", default=None, help=f"output directory (default: ${OUT_ENV} or stdout)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="decalage", description="Spectral sequences of filtered complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "validate a complex and its filtrations").add_argument("file")
    p = add("cohomology", cmd_cohomology, "cohomology of a complex or simplicial file")
    p.add_argument("file")
    p.add_argument("--sheaf")
    p = add("ss", cmd_ss, "spectral sequence pages and abutment")
    p.add_argument("file")
    p.add_argument("--page", type=int)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    add("decale", cmd_decale, "shifted filtration").add_argument("file")
    add("diagonal", cmd_diagonal, "diagonal filtration of F and G").add_argument("file")
    p = add("check", cmd_check, "run a check")
    p.add_argument("name", choices=("sta", "pdec", "lmlu", "cellular", "dec-reindex", "e1-triples"))
    p.add_argument("file", nargs="?")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--mode", choices=("left", "right"), default="left")
    p.add_argument("--shift", type=int, default=None)
    p.add_argument("--flag")
    p.add_argument("--sheaf")
    for name, fn, help_ in (
        ("flag-f", cmd_flag_f, "filtration by vanishing on the levels of a flag"),
        ("flag-g", cmd_flag_g, "support filtration of a flag on the barycentric subdivision"),
    ):
        p = add(name, fn, help_)
        p.add_argument("file")
        p.add_argument("--flag", required=True)
        p.add_argument("--sheaf")
    add("leray", cmd_leray, "flag filtration pulled back along a simplicial map").add_argument("file", nargs="?")
    p = add("random-corpus", cmd_random_corpus, "seeded random filtered complexes")
    p.add_argument("--count", type=int, default=200)
    p = add("run", cmd_run, "run scenario files or builtin scenarios")
    p.add_argument("scenarios", nargs="+")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
