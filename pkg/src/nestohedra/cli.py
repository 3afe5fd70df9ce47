"""Command-line front end for nestohedron invariants and series checks.

Four subcommands: ``invariants`` prints face data for one graph's
nestohedron, ``verify`` compares the facet recursion against the
closed-form generating functions, ``identities`` runs the eight
differential identities, and ``gal-scan`` sweeps gamma-nonnegativity over
a polytope family or over all small connected graphs.  Output is JSON
(sorted keys) or CSV; both are byte-deterministic for fixed inputs.

Exit codes: 0 when every check passes, 1 when a verification or scan
finds a failure, 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from .algebra import format_rational
from .buildingset import (
    Graph,
    GraphSpecError,
    building_set_from_graph,
    connected_graphs_upto_iso,
    graph_spec,
    parse_graph_spec,
)
from .invariants import (
    SeriesScanReport,
    fvector,
    gal_check_poly,
    gal_check_series,
    gamma,
    hpoly,
)
from .ringcalc import FPolyCache, fpoly
from .series import (
    DEFAULT_ORDER,
    FAMILIES,
    NotInFamilyError,
    coeff_normalized,
    family_f,
    family_h,
    identity_suite,
)

__all__ = ["main", "entrypoint"]

MAX_IDENTITY_ORDER = 10
MAX_BIPARTITE_BOUND = 9

_CONFIG_KEYS = ("order", "jobs", "iso_memo")


# ---------------------------------------------------------------------------
# configuration


def _parse_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def load_config(path: str) -> dict[str, object]:
    """Read ``key = value`` settings; see _CONFIG_KEYS for what is allowed."""
    settings: dict[str, object] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not sep or not key or not value:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
            try:
                if key == "iso_memo":
                    settings[key] = _parse_bool(value)
                else:
                    parsed = int(value)
                    if parsed < 1:
                        raise ValueError("must be positive")
                    settings[key] = parsed
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return settings


class _Settings:
    """Effective run settings: config file values, overridden by flags."""

    def __init__(self, args: argparse.Namespace) -> None:
        config = load_config(args.config) if args.config else {}
        self.order: int = int(config.get("order", DEFAULT_ORDER))
        jobs = args.jobs if args.jobs is not None else config.get("jobs", 1)
        self.jobs: int = int(jobs)
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        self.iso_memo: bool = bool(args.iso_memo or config.get("iso_memo", False))

    def cache(self) -> FPolyCache:
        return FPolyCache(iso=self.iso_memo)


# ---------------------------------------------------------------------------
# output


def _emit_json(obj: object) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _gamma_cell(gammas: Sequence[object]) -> str:
    return ";".join(format_rational(g) for g in gammas)  # type: ignore[arg-type]


def _run_ordered(jobs: int, tasks: Sequence, worker) -> list:
    """Apply ``worker`` to every task, preserving task order in the output."""
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


# ---------------------------------------------------------------------------
# invariants


def cmd_invariants(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    graph = parse_graph_spec(args.graph)
    building = building_set_from_graph(graph)
    cache = settings.cache()
    fvec = fvector(building, cache)
    h = hpoly(building, cache)
    gv = gamma(building, cache)
    dim = len(fvec) - 1
    facets = fvec[-2] if dim >= 1 else 0
    if args.format == "json":
        _emit_json(
            {
                "graph": args.graph.strip(),
                "dimension": dim,
                "facets": facets,
                "f_vector": fvec,
                "h_polynomial": h.to_records(),
                "gamma": [format_rational(g) for g in gv.gammas],
            }
        )
    else:
        _emit_csv(
            ("quantity", "value"),
            (
                ("graph", args.graph.strip()),
                ("dimension", dim),
                ("facets", facets),
                ("f_vector", ";".join(str(c) for c in fvec)),
                ("h_polynomial", str(h)),
                ("gamma", _gamma_cell(gv.gammas)),
            ),
        )
    return 0


# ---------------------------------------------------------------------------
# verify


def _verify_family(
    fam_id: str, max_order: int, truncation: int, jobs: int, cache: FPolyCache
) -> dict[str, object]:
    spec = FAMILIES[fam_id]
    series = family_f(fam_id, truncation)
    indices = spec.indices(max_order)

    def check(index: tuple[int, int]) -> Optional[dict[str, object]]:
        k, l = index
        expected = coeff_normalized(fam_id, k, l, series=series)
        actual = fpoly(building_set_from_graph(spec.graph_at(k, l)), cache)
        if expected == actual:
            return None
        return {
            "k": k,
            "l": l,
            "series": expected.to_records(),
            "recursion": actual.to_records(),
        }

    mismatches = [m for m in _run_ordered(jobs, indices, check) if m is not None]
    return {
        "family": fam_id,
        "checked": len(indices),
        "indices": indices,
        "mismatches": mismatches,
    }


def cmd_verify(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    truncation = settings.order
    max_order = args.max_order if args.max_order is not None else truncation
    if max_order < 0:
        raise ValueError("max order must be nonnegative")
    if max_order > truncation:
        raise ValueError(
            f"max order {max_order} exceeds the truncation order {truncation}; "
            "raise 'order' in the config file to go further"
        )
    fam_ids = list(FAMILIES) if args.family == "all" else [args.family]
    cache = settings.cache()
    reports = [
        _verify_family(fam_id, max_order, truncation, settings.jobs, cache)
        for fam_id in fam_ids
    ]
    failed = any(report["mismatches"] for report in reports)
    if args.format == "json":
        _emit_json(
            {
                "max_order": max_order,
                "passed": not failed,
                "reports": [
                    {key: report[key] for key in ("family", "checked", "mismatches")}
                    for report in reports
                ],
            }
        )
    else:
        rows = []
        for report in reports:
            bad = {(m["k"], m["l"]) for m in report["mismatches"]}
            for k, l in report["indices"]:
                status = "mismatch" if (k, l) in bad else "ok"
                rows.append((report["family"], k, l, status))
        _emit_csv(("family", "k", "l", "status"), rows)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# identities


def cmd_identities(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    order = args.order if args.order is not None else settings.order
    if not 2 <= order <= MAX_IDENTITY_ORDER:
        raise ValueError(
            f"identity checks need a truncation order in 2..{MAX_IDENTITY_ORDER}"
        )
    report = identity_suite(order, corrupt=args.corrupt)
    if args.format == "json":
        _emit_json(report.to_json_obj())
    else:
        rows = []
        for result in report.results:
            k, l = ("", "") if result.mismatch is None else result.mismatch[:2]
            rows.append((result.name, str(result.passed).lower(), k, l))
        _emit_csv(("identity", "passed", "mismatch_k", "mismatch_l"), rows)
    return 0 if report.all_passed else 1


# ---------------------------------------------------------------------------
# gal-scan


def _scan_families(args: argparse.Namespace, settings: _Settings) -> int:
    truncation = settings.order
    bound = args.bound if args.bound is not None else truncation
    if bound > truncation:
        raise ValueError(
            f"bound {bound} exceeds the truncation order {truncation}; "
            "raise 'order' in the config file to go further"
        )
    fam_ids = list(FAMILIES) if args.family == "all" else [args.family]
    if "because-because" in fam_ids and bound > MAX_BIPARTITE_BOUND:
        raise ValueError(
            f"the complete-bipartite scan is capped at bound {MAX_BIPARTITE_BOUND}"
        )
    reports: list[SeriesScanReport] = [
        gal_check_series(family_h(fam_id, bound), fam_id) for fam_id in fam_ids
    ]
    failed = any(report.violations for report in reports)
    if args.format == "json":
        payload = []
        for report in reports:
            spec = FAMILIES[report.family]
            obj = report.to_json_obj()
            obj["gammas"] = [
                {
                    "k": k,
                    "l": l,
                    "dimension": spec.dim(k, l),
                    "gamma": [format_rational(g) for g in gv.gammas],
                }
                for (k, l), gv in sorted(report.gammas.items(), key=lambda it: (sum(it[0]), it[0]))
            ]
            payload.append(obj)
        _emit_json({"bound": bound, "passed": not failed, "reports": payload})
    else:
        rows = []
        for report in reports:
            spec = FAMILIES[report.family]
            bad = {v.index for v in report.violations}
            for k, l in spec.indices(bound):
                gv = report.gammas.get((k, l))
                rows.append(
                    (
                        report.family,
                        k,
                        l,
                        spec.dim(k, l),
                        "" if gv is None else _gamma_cell(gv.gammas),
                        "violation" if (k, l) in bad else "ok",
                    )
                )
        _emit_csv(("family", "k", "l", "dimension", "gamma", "status"), rows)
    return 1 if failed else 0


def _scan_graph_classes(args: argparse.Namespace, settings: _Settings) -> int:
    if args.graph_class != "connected":
        raise ValueError(f"unknown graph class {args.graph_class!r}")
    if args.nodes is None:
        raise ValueError("--graph-class needs --nodes N")
    if not 1 <= args.nodes <= 7:
        raise ValueError("graph-class scans cover 1..7 nodes")
    classes = [g for g in connected_graphs_upto_iso(args.nodes) if g.n == args.nodes]
    cache = settings.cache()

    def check(graph: Graph) -> tuple[str, int, object]:
        building = building_set_from_graph(graph)
        dim = len(building.ground) - 1
        result = gal_check_poly(hpoly(building, cache), dim)
        return graph_spec(graph), dim, result

    results = _run_ordered(settings.jobs, classes, check)
    violations = [
        {
            "graph": spec,
            "condition": "gamma-nonnegativity",
            "witness": f"gamma_{result.first_negative[0]} = "
            f"{format_rational(result.first_negative[1])}",
        }
        for spec, _, result in results
        if not result.passed
    ]
    if args.format == "json":
        _emit_json(
            {
                "graph_class": args.graph_class,
                "nodes": args.nodes,
                "checked": len(results),
                "passed": not violations,
                "violations": violations,
                "gammas": [
                    {
                        "graph": spec,
                        "dimension": dim,
                        "gamma": [format_rational(g) for g in result.gammas.gammas],
                    }
                    for spec, dim, result in results
                ],
            }
        )
    else:
        rows = [
            (
                spec,
                dim,
                _gamma_cell(result.gammas.gammas),
                "ok" if result.passed else "violation",
            )
            for spec, dim, result in results
        ]
        _emit_csv(("graph", "dimension", "gamma", "status"), rows)
    return 1 if violations else 0


def cmd_gal_scan(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    if args.bound is not None and args.bound < 1:
        raise ValueError("bound must be at least 1")
    if (args.family is None) == (args.graph_class is None):
        raise ValueError("choose exactly one of --family or --graph-class")
    if args.family is not None:
        if args.nodes is not None:
            raise ValueError("--nodes applies to --graph-class scans only")
        return _scan_families(args, settings)
    if args.bound is not None:
        raise ValueError("--bound applies to --family scans; use --nodes")
    return _scan_graph_classes(args, settings)


# ---------------------------------------------------------------------------
# parser and dispatch


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="output format (default json)",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        metavar="N",
        help="parallelism cap for scans; output is identical at any value",
    )
    parser.add_argument(
        "--config",
        metavar="PATH",
        help="key = value settings file (order, jobs, iso_memo); flags win",
    )
    parser.add_argument(
        "--iso-memo",
        action="store_true",
        help="memoize the facet recursion up to graph isomorphism",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestohedra",
        description="face counts, h- and gamma-polynomials, and series checks "
        "for nestohedra of graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    family_choices = ("all", *FAMILIES)

    p_inv = sub.add_parser(
        "invariants", help="f-vector, h-polynomial, and gamma-vector of one graph"
    )
    p_inv.add_argument(
        "--graph",
        required=True,
        help="graph spec: complete:N, empty:N, star:N, path:N, bipartite:M,N, "
        "join(SPEC,SPEC), or edges:N:0-1,1-2,...",
    )
    _add_common_flags(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_ver = sub.add_parser(
        "verify",
        help="check that the facet recursion matches the closed-form series",
    )
    p_ver.add_argument("--family", choices=family_choices, default="all")
    p_ver.add_argument(
        "--max-order",
        type=int,
        metavar="M",
        help="largest total index k+l to check (default: the truncation order)",
    )
    _add_common_flags(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_ident = sub.add_parser(
        "identities", help="run the eight differential identities"
    )
    p_ident.add_argument(
        "--order",
        type=int,
        metavar="N",
        help=f"truncation order, 2..{MAX_IDENTITY_ORDER} (default: config order)",
    )
    p_ident.add_argument(
        "--corrupt",
        choices=("pe", "st", "nabla-because", "because-because"),
        metavar="FAMILY",
        help="drop one series term first; the suite must then fail "
        "(negative control)",
    )
    _add_common_flags(p_ident)
    p_ident.set_defaults(func=cmd_identities)

    p_gal = sub.add_parser(
        "gal-scan",
        help="check gamma-nonnegativity over a family or over graph classes",
    )
    p_gal.add_argument("--family", choices=family_choices)
    p_gal.add_argument(
        "--bound",
        type=int,
        metavar="B",
        help="largest total index k+l to scan (family mode)",
    )
    p_gal.add_argument(
        "--graph-class",
        choices=("connected",),
        help="scan every isomorphism class of this kind instead of a family",
    )
    p_gal.add_argument(
        "--nodes", type=int, metavar="N", help="node count for --graph-class (1..7)"
    )
    _add_common_flags(p_gal)
    p_gal.set_defaults(func=cmd_gal_scan)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GraphSpecError, NotInFamilyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
