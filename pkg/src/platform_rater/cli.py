"""Batch interface: inspect the catalog, score projects, rank platforms, serve the API.

Machine-readable output goes to stdout, diagnostics to stderr. Exit statuses:
0 success, 1 validation/domain error, 2 usage error, 3 I/O error. Identical
input files produce byte-identical JSON and CSV output.
"""
from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from . import ahp, assessment
from .catalog import (
    LAYER_ORDER,
    Dimension,
    Layer,
    catalog_to_dict,
    criterion_to_dict,
    default_catalog,
    filter_criteria,
)
from .errors import PlatformRaterError, ValidationError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="platform-rater",
        description="Criteria catalog, single-platform Likert scoring, and AHP platform ranking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser("catalog", help="inspect the criteria catalog")
    catalog_sub = p_catalog.add_subparsers(dest="catalog_command", required=True)
    p_list = catalog_sub.add_parser("list", help="list criteria, optionally filtered")
    p_list.add_argument("--dimension", choices=[d.value for d in Dimension])
    p_list.add_argument("--layer", choices=list(LAYER_ORDER))
    p_list.add_argument("--format", choices=["table", "json"], default="table")
    p_list.set_defaults(func=cmd_catalog_list)

    p_assess = sub.add_parser("assess", help="score a saved assessment project")
    assess_sub = p_assess.add_subparsers(dest="assess_command", required=True)
    p_report = assess_sub.add_parser("report", help="satisfaction report for a project file")
    p_report.add_argument("--project", required=True, help="project document (JSON)")
    p_report.add_argument("--out", help="write criterion CSV here (plus <out>.layers.csv)")
    p_report.add_argument("--format", choices=["csv", "json"], default="csv")
    p_report.add_argument(
        "--consensus", choices=list(assessment.CONSENSUS_METHODS), default="median"
    )
    p_report.set_defaults(func=cmd_assess_report)

    p_rank = sub.add_parser("rank", help="rank platforms from a judgments file")
    p_rank.add_argument("--input", required=True, help="ranking input document (JSON)")
    p_rank.add_argument("--out", help="write result JSON here")
    p_rank.add_argument("--csv", help="write platform,composite_weight,rank CSV here")
    p_rank.add_argument("--kiviat", help="write radar-chart series JSON here")
    p_rank.set_defaults(func=cmd_rank)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument(
        "--port",
        type=int,
        default=None,
        help="listen port (default $PLATFORM_RATER_PORT or 8080; 0 for ephemeral)",
    )
    p_serve.add_argument("--data", help="store root (default $PLATFORM_RATER_DATA or ./data)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PlatformRaterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for detail in getattr(exc, "details", []) or []:
            print(f"  - {detail.get('field', '')}: {detail.get('message', '')}", file=sys.stderr)
        return EXIT_DOMAIN


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _read_json_file(path: str):
    # Unreadable and unparseable files are both I/O-level failures (exit 3);
    # schema problems inside valid JSON are domain errors (exit 1).
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise OSError(f"{path} is not valid JSON: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_catalog_list(args) -> int:
    catalog = default_catalog()
    dimension = Dimension(args.dimension) if args.dimension else None
    layer = Layer(args.layer) if args.layer else None
    criteria = filter_criteria(catalog, dimension, layer)
    if args.format == "json":
        _print_json([criterion_to_dict(c) for c in criteria])
        return EXIT_OK
    rows = [
        (
            c.id,
            c.name,
            c.dimension.value,
            str(len(c.questions)),
            ",".join(tag for tag in LAYER_ORDER if Layer(tag) in c.layers()),
        )
        for c in criteria
    ]
    _print_table(("ID", "NAME", "DIMENSION", "QUESTIONS", "LAYERS"), rows)
    return EXIT_OK


def _print_table(header, rows) -> None:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    print(fmt.format(*header))
    for row in rows:
        print(fmt.format(*row))


def cmd_assess_report(args) -> int:
    doc = _read_json_file(args.project)
    catalog = default_catalog()
    project = assessment.project_from_dict(doc, catalog)
    report = assessment.satisfaction_report(project, catalog, args.consensus)
    if args.format == "json":
        _print_json(assessment.report_to_dict(report))
    else:
        sys.stdout.write(assessment.report_csv(report))
    if args.out:
        _write_text(args.out, assessment.report_csv(report))
        layers_path = str(Path(args.out).with_suffix("")) + ".layers.csv"
        _write_text(layers_path, assessment.report_layers_csv(report))
        print(f"wrote {args.out} and {layers_path}", file=sys.stderr)
    return EXIT_OK


def cmd_rank(args) -> int:
    doc = _read_json_file(args.input)
    ranking_id, criteria_matrix, platform_matrices = ahp.parse_ranking_input(doc)
    result = ahp.rank_platforms(criteria_matrix, platform_matrices)
    result_doc = ahp.ranking_result_to_dict(result, ranking_id)
    for warning in ahp.consistency_warnings(result_doc):
        print(f"warning: {warning}", file=sys.stderr)
    _print_json(result_doc)
    if args.out:
        _write_text(args.out, json.dumps(result_doc, indent=2, ensure_ascii=False) + "\n")
    if args.csv:
        _write_text(args.csv, ahp.ranking_result_csv(result_doc))
    if args.kiviat:
        series = ahp.kiviat_from_result_dict(result_doc)
        _write_text(args.kiviat, json.dumps(series, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .store import DocumentStore

    port = args.port
    if port is None:
        try:
            port = int(os.environ.get("PLATFORM_RATER_PORT", "8080"))
        except ValueError as exc:
            raise ValidationError(f"PLATFORM_RATER_PORT is not an integer: {exc}") from exc

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, port))
    except OSError as exc:
        sock.close()
        print(f"error: cannot bind {args.host}:{port}: {exc}", file=sys.stderr)
        return EXIT_IO
    bound_port = sock.getsockname()[1]
    print(f"listening on http://{args.host}:{bound_port}", flush=True)

    store = DocumentStore(args.data) if args.data else DocumentStore()
    app = create_app(store=store)
    config = uvicorn.Config(app, log_level="warning")
    server = uvicorn.Server(config)
    server.run(sockets=[sock])
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
