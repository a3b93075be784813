"""Command-line front end.

Subcommands: group, signature, epi, classify, dessin, verify, search, batch.
Exit codes: 0 success/confirmed, 1 usage error, 2 refuted, 3 inconclusive.
Identical inputs produce byte-identical output (no timestamps anywhere).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from .classify import NoMoveSetError, classify, default_moves
from .dessins import dessin_data, generator_pair_classes, regular_monodromy
from .epimorphisms import KernelConstraint, enumerate_vectors
from .genus import (
    BoundTooSmallError,
    GenusRecord,
    pseudo_real_min,
    pure_symmetric_genus,
    real_genus,
    strong_symmetric_genus,
    symmetric_crosscap,
    symmetric_hyperbolic_genus,
)
from .groups import (
    UnsupportedFamilyError,
    automorphism_group,
    euler_phi,
    index_two_by_tag,
    quasi_dihedral,
)
from .signatures import (
    SignatureError,
    parse_signature,
    presentation,
    rh_genus,
)
from .theorems import REGISTRY, VerifyReport, run_theorem

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2
EXIT_INCONCLUSIVE = 3

MODES = {
    "riemann": KernelConstraint.RIEMANN_SURFACE,
    "bordered": KernelConstraint.BORDERED_KLEIN,
    "unbordered": KernelConstraint.UNBORDERED_KLEIN,
}

SEARCHES = {
    "sigma0": lambda n, bound, workers: strong_symmetric_genus(n, bound, workers),
    "sigma_p": lambda n, bound, workers: pure_symmetric_genus(n, bound, workers),
    "hyp-D": lambda n, bound, workers: symmetric_hyperbolic_genus(n, "D", bound, workers),
    "hyp-DC": lambda n, bound, workers: symmetric_hyperbolic_genus(n, "DC", bound, workers),
    "hyp-C": lambda n, bound, workers: symmetric_hyperbolic_genus(n, "C", bound, workers),
    "rho": lambda n, bound, workers: real_genus(n, bound, workers),
    "crosscap": lambda n, bound, workers: symmetric_crosscap(n, bound, workers),
    "pseudo-real-D": lambda n, bound, workers: pseudo_real_min(n, "conformal_antic", bound, workers),
    "pseudo-real-hat": lambda n, bound, workers: pseudo_real_min(n, "conformal_only_odd", bound, workers),
}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _parse_n_range(text: str) -> List[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"bad n range {text!r}") from None
        if lo_i > hi_i:
            raise UsageError(f"empty n range {text!r}")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad n value {text!r}") from None


def _parse_bound(text: Optional[str]) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad area bound {text!r}") from None


def _parse_signature_arg(text: str):
    try:
        return parse_signature(text)
    except SignatureError as exc:
        raise UsageError(str(exc)) from None


def _ns_from_args(args) -> List[int]:
    if args.n_range:
        return _parse_n_range(args.n_range)
    if args.n is None:
        raise UsageError("--n or --n-range is required")
    return _parse_n_range(str(args.n))  # --n accepts "3" or "2..5"


def _print_table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> None:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(str(c))) for w, c in zip(widths, row)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    print(fmt.format(*header))
    print(fmt.format(*("-" * w for w in widths)))
    for row in rows:
        print(fmt.format(*(str(c) for c in row)))


# -- subcommands ------------------------------------------------------------------


def cmd_group(args) -> int:
    group = quasi_dihedral(args.n)
    payload = {"schema_version": 1, "name": group.name, "order": group.order}
    report = args.report
    if report in ("classes", "all"):
        payload["conjugacy_classes"] = [
            {"representative": group.render(rep), "size": len(cls)}
            for rep, cls in group.conjugacy_classes()
        ]
    if report in ("involutions", "all"):
        payload["involutions"] = [group.render(g) for g in group.involutions()]
    if report in ("subgroups", "all"):
        payload["index_two_subgroups"] = [
            {
                "generators": [group.render(g) for g in sub.generators],
                "order": sub.order,
                "type": sub.iso_tag(),
            }
            for sub in group.index_two_subgroups()
        ]
    if report in ("automorphisms", "all"):
        try:
            auts = automorphism_group(group)
            payload["automorphism_count"] = len(auts)
            payload["automorphism_count_formula"] = euler_phi(4 * args.n) * 2 * args.n
        except UnsupportedFamilyError as exc:
            payload["automorphisms_error"] = str(exc)
    if args.format == "json":
        print(_dump(payload))
    else:
        print(f"{group.name}: order {group.order}")
        if "conjugacy_classes" in payload:
            _print_table(
                [(c["representative"], c["size"]) for c in payload["conjugacy_classes"]],
                ("class representative", "size"),
            )
        if "involutions" in payload:
            print("involutions:", ", ".join(payload["involutions"]))
        if "index_two_subgroups" in payload:
            _print_table(
                [
                    (", ".join(s["generators"]), s["order"], s["type"])
                    for s in payload["index_two_subgroups"]
                ],
                ("index-two subgroup generators", "order", "type"),
            )
        if "automorphism_count" in payload:
            print("automorphisms:", payload["automorphism_count"])
    return EXIT_OK


def cmd_signature(args) -> int:
    sig = _parse_signature_arg(args.signature)
    payload = {
        "schema_version": 1,
        "signature": sig.format(),
        "canonical": sig.canonical().format(),
        "reduced_area": str(sig.reduced_area()),
        "hyperbolic": sig.is_hyperbolic(),
        "fuchsian": sig.is_fuchsian(),
    }
    if args.order:
        kind = MODES[args.mode].kernel_kind
        try:
            payload["kernel_genus"] = rh_genus(sig, args.order, kind)
        except Exception as exc:
            payload["kernel_genus_error"] = str(exc)
    skel = presentation(sig)
    payload["generators"] = [slot.label() for slot in skel.slots]
    payload["relations"] = [
        {"tag": rel.tag, "order": rel.order,
         "word": [[list(key), exp] for key, exp in rel.word]}
        for rel in skel.relations
    ]
    if args.format == "json":
        print(_dump(payload))
    else:
        print(f"signature   {payload['signature']}")
        print(f"canonical   {payload['canonical']}")
        print(f"area        {payload['reduced_area']}")
        if "kernel_genus" in payload:
            print(f"kernel genus at order {args.order}: {payload['kernel_genus']}")
        print("generators ", ", ".join(payload["generators"]))
    return EXIT_OK


def _target_for(args, group):
    if args.target_subgroup:
        return index_two_by_tag(group, args.target_subgroup)
    return None


def cmd_epi(args) -> int:
    group = quasi_dihedral(args.n)
    sig = _parse_signature_arg(args.signature)
    target = _target_for(args, group)
    vectors = enumerate_vectors(sig, group, MODES[args.mode], target)
    payload = {
        "schema_version": 1,
        "signature": sig.format(),
        "group": group.name,
        "mode": args.mode,
        "count": len(vectors),
        "vectors": [v.as_json_obj() for v in vectors] if not args.count_only else None,
    }
    if args.format == "json":
        print(_dump(payload))
    else:
        print(f"{len(vectors)} generating vector(s) on {sig.format()} -> {group.name}")
        if not args.count_only:
            for i, vec in enumerate(vectors):
                print(f"-- vector {i}")
                print(vec.as_text())
    return EXIT_OK


def cmd_classify(args) -> int:
    group = quasi_dihedral(args.n)
    sig = _parse_signature_arg(args.signature)
    target = _target_for(args, group)
    vectors = enumerate_vectors(sig, group, MODES[args.mode], target)
    try:
        moves = default_moves(sig)
        coarse = False
    except NoMoveSetError:
        moves = None
        coarse = True
    orbits = classify(vectors, moves, automorphism_group(group))
    payload = {
        "schema_version": 1,
        "signature": sig.format(),
        "group": group.name,
        "vectors": len(vectors),
        "coarse_aut_only": coarse,
        "orbits": [o.as_json_obj() for o in orbits],
    }
    if args.format == "json":
        print(_dump(payload))
    else:
        print(f"{len(vectors)} vectors -> {len(orbits)} orbit(s)"
              + (" (aut-only, coarse)" if coarse else ""))
        for i, orbit in enumerate(orbits):
            print(f"-- orbit {i}: size {orbit.size}")
            print(orbit.representative.as_text())
    return EXIT_OK


def cmd_dessin(args) -> int:
    group = quasi_dihedral(args.n)
    a = group.element(0, 1)
    b = group.element(1, 4 * args.n - 1)
    pair = regular_monodromy(group, a, b)
    graph = dessin_data(pair)
    payload = {"schema_version": 1, "group": group.name, **graph.as_json_obj()}
    if args.pairs:
        payload["generating_pair_classes"] = len(generator_pair_classes(group))
    if args.dot:
        Path(args.dot).write_text(graph.to_dot())
    if args.format == "json":
        print(_dump(payload))
    else:
        print(f"dessin for {group.name}: genus {graph.genus}, "
              f"{len(graph.white)} white / {len(graph.black)} black vertices, "
              f"{graph.face_count} faces")
        _print_table(
            [(w, b, m) for w, b, m in graph.edges],
            ("white", "black", "multiplicity"),
        )
    return EXIT_OK


def _emit_verify(reports: List[VerifyReport], args) -> int:
    payload = {
        "schema_version": 1,
        "reports": [rep.as_json_obj() for rep in reports],
    }
    if args.format == "json":
        print(_dump(payload))
    else:
        rows = []
        for rep in reports:
            for res in rep.results:
                rows.append((rep.theorem, res.n, res.status,
                             res.evidence.get("value", ""),
                             res.evidence.get("expected", "")))
        _print_table(rows, ("theorem", "n", "status", "value", "expected"))
    if args.report_dir:
        from .report import write_report_files

        for path in write_report_files(reports, Path(args.report_dir)):
            print(f"wrote {path}", file=sys.stderr)
    codes = [rep.exit_code() for rep in reports]
    return max(codes) if codes else EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem not in REGISTRY:
        raise UsageError(
            f"unknown theorem id {args.theorem!r}; valid ids: {', '.join(REGISTRY)}"
        )
    ns = _ns_from_args(args)
    report = run_theorem(args.theorem, ns, workers=args.workers)
    return _emit_verify([report], args)


def cmd_search(args) -> int:
    if args.invariant not in SEARCHES:
        raise UsageError(
            f"unknown invariant {args.invariant!r}; valid: {', '.join(SEARCHES)}"
        )
    bound = _parse_bound(args.area_bound)
    try:
        record: GenusRecord = SEARCHES[args.invariant](args.n, bound, args.workers)
    except BoundTooSmallError as exc:
        print(_dump({"schema_version": 1, "error": "bound-too-small",
                     "bound": str(exc.bound)}))
        return EXIT_INCONCLUSIVE
    payload = {"schema_version": 1, **record.as_json_obj()}
    if args.format == "json":
        print(_dump(payload))
    else:
        print(f"{record.invariant}(n={record.n}) = {record.value}")
        print(f"witness signature: {record.witness.signature.format()}")
        print(record.witness.as_text())
        print(f"certificates for smaller areas: {len(record.certificates)}")
    return EXIT_OK


def _parse_config(path: Path) -> dict:
    config: dict = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        config[key.strip()] = value.strip()
    return config


def cmd_batch(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise UsageError(f"config file not found: {path}")
    config = _parse_config(path)
    theorems = [t for t in config.get("theorems", "").split(",") if t]
    ns = _parse_n_range(config["n"]) if "n" in config else []
    workers = int(config.get("workers", "1"))
    for theorem in theorems:
        if theorem not in REGISTRY:
            raise UsageError(
                f"unknown theorem id {theorem!r}; valid ids: {', '.join(REGISTRY)}"
            )
    reports = [run_theorem(t, ns, workers=workers) for t in theorems]
    payload = {
        "schema_version": 1,
        "reports": [rep.as_json_obj() for rep in reports],
    }
    out = config.get("report")
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(_dump(payload) + "\n")
    if args.report_dir or config.get("report_dir"):
        from .report import write_report_files

        write_report_files(reports, Path(args.report_dir or config["report_dir"]))
    print(_dump(payload))
    codes = [rep.exit_code() for rep in reports]
    return max(codes) if codes else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdsurf",
        description="Actions of generalized quasi-dihedral groups on Riemann and Klein surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_n=True):
        if need_n:
            p.add_argument("--n", help="a single n or a range a..b")
            p.add_argument("--n-range", dest="n_range")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("group", help="structure report for the order-8n group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--report", default="all",
                   choices=("classes", "involutions", "subgroups", "automorphisms", "all"))
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("signature", help="area, genus and presentation of a signature")
    p.add_argument("--signature", required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--mode", choices=tuple(MODES), default="riemann")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("epi", help="enumerate surface-kernel generating vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--signature", required=True)
    p.add_argument("--mode", choices=tuple(MODES), default="riemann")
    p.add_argument("--target-subgroup", choices=("C", "D", "DC"))
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_epi)

    p = sub.add_parser("classify", help="orbits of vectors under moves and automorphisms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--signature", required=True)
    p.add_argument("--mode", choices=tuple(MODES), default="riemann")
    p.add_argument("--target-subgroup", choices=("C", "D", "DC"))
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dessin", help="regular dessin data for the standard pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pairs", action="store_true",
                   help="also count generating-pair classes")
    p.add_argument("--dot", help="write a DOT rendering of the bipartite graph")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_dessin)

    p = sub.add_parser("verify", help="verify one recorded claim over a range of n")
    p.add_argument("--theorem", required=True)
    add_common(p)
    p.add_argument("--report-dir", help="write CSV + figure report files here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="minimal-genus search for one invariant")
    p.add_argument("--invariant", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--area-bound", help="exact rational, e.g. 3/4")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("batch", help="run verifications listed in a key=value config")
    p.add_argument("config")
    p.add_argument("--report-dir")
    p.add_argument("--format", choices=("table", "json"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
