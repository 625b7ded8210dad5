"""Command-line front door: one-shot audits, the metric interview, serving.

Exit codes are the contract for CI gating: 0 the audit passed, 1 any
selected-metric disparity failed, 2 usage or data error. Errors print a
single line starting with ``error:`` to stderr. The report itself is the
only thing written to stdout, so output stays byte-stable across runs.
"""

from __future__ import annotations

import argparse
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from .audit import AuditConfig, run_audit
from .disparity import ParityConfig, ReferenceStrategy, Verdict
from .errors import AuditError, InvalidConfig
from .ingest import DatasetSchema, parse_csv
from .metrics import Metric, ThresholdPolicy, TieMode
from .report import render_csv, render_json, render_markdown
from .tree import default_tree

_ANSI = {"green": "\x1b[32m", "red": "\x1b[31m", "yellow": "\x1b[33m", "bold": "\x1b[1m"}


def _style(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not stream.isatty():
        return text
    return f"{_ANSI[code]}{text}\x1b[0m"


class _Parser(argparse.ArgumentParser):
    # Single-line greppable errors instead of argparse's usage dump.
    def error(self, message: str):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _parse_reference(text: str) -> ReferenceStrategy:
    if text == "majority":
        return ReferenceStrategy.majority()
    if text == "min-metric":
        return ReferenceStrategy.min_metric()
    if text.startswith("fixed:"):
        groups: dict[str, str] = {}
        for pair in text[len("fixed:"):].split(","):
            attr, sep, value = pair.partition("=")
            if not sep or not attr.strip() or not value.strip():
                raise InvalidConfig(f"malformed fixed reference pair {pair!r}")
            groups[attr.strip()] = value.strip()
        if not groups:
            raise InvalidConfig("fixed reference needs at least one attr=group pair")
        return ReferenceStrategy.fixed(groups)
    raise InvalidConfig(
        f"unknown reference strategy {text!r}; expected majority, min-metric, "
        "or fixed:attr=group,..."
    )


def _default_tau() -> float:
    raw = os.environ.get("PARITYD_TAU")
    if raw is None:
        return 0.8
    try:
        return float(raw)
    except ValueError:
        raise InvalidConfig(f"PARITYD_TAU is not a number: {raw!r}")


def _split_csv_flag(raw: str) -> list[str]:
    return [part.strip() for part in raw.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parityd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    audit = sub.add_parser("audit", help="audit one CSV and print a report")
    audit.add_argument("--input", required=True, help="population CSV to audit")
    source = audit.add_mutually_exclusive_group(required=True)
    source.add_argument("--score-col", help="numeric score column, thresholded by policy")
    source.add_argument("--decision-col", help="pre-binarized 0/1 decision column")
    audit.add_argument("--label-col", required=True, help="0/1 outcome label column")
    audit.add_argument("--attrs", required=True, help="comma-separated protected attributes")
    audit.add_argument("--id-col", help="entity id column (row ordinal when absent)")
    audit.add_argument("--top-k", type=int, help="decide positive for the k highest scores")
    audit.add_argument("--top-percent", type=float,
                       help="decide positive for the top fraction (0, 1] of scores")
    audit.add_argument("--cutoff", type=float, help="decide positive for score >= cutoff")
    audit.add_argument("--ties", choices=("exact", "all"), default="exact",
                       help="top-k tie handling: exactly k, or include all tied scores")
    audit.add_argument("--ref", default="majority",
                       help="majority | min-metric | fixed:attr=group,...")
    audit.add_argument("--tau", type=float, default=None,
                       help="parity band half-width in (0, 1]; default 0.8 or PARITYD_TAU")
    metric_source = audit.add_mutually_exclusive_group()
    metric_source.add_argument("--metrics", help="comma-separated metric subset to audit")
    metric_source.add_argument("--tree-path",
                               help="comma-separated interview answers selecting the metrics")
    audit.add_argument("--format", choices=("json", "markdown", "csv"), default="markdown")
    audit.add_argument("--out", help="write the report here instead of stdout")
    audit.add_argument("--no-timestamp", action="store_true",
                       help="omit generated_at from JSON output")
    audit.set_defaults(func=_cmd_audit)

    tree = sub.add_parser("tree", help="run the metric-selection interview")
    tree.add_argument("--answers", help="comma-separated answer ids (non-interactive)")
    tree.add_argument("--emit-flags", action="store_true",
                      help="print only a ready-to-paste --metrics value")
    tree.set_defaults(func=_cmd_tree)

    serve = sub.add_parser("serve", help="run the HTTP audit service")
    serve.add_argument("--addr", default=None,
                       help="host:port to bind; default 127.0.0.1:8000 or PARITYD_ADDR")
    serve.add_argument("--ttl-hours", type=float, default=None,
                       help="dataset session lifetime; default 24 or PARITYD_TTL_HOURS")
    serve.add_argument("--max-upload-mib", type=int, default=64,
                       help="upload size cap in MiB")
    serve.add_argument("--persist-dir", default=None,
                       help="also write each report JSON into this directory")
    serve.set_defaults(func=_cmd_serve)
    return parser


def _threshold_from_flags(args) -> ThresholdPolicy:
    tie_mode = TieMode.EXACT_K if args.ties == "exact" else TieMode.INCLUDE_ALL_TIES
    score_policies = [
        ("--top-k", args.top_k),
        ("--top-percent", args.top_percent),
        ("--cutoff", args.cutoff),
    ]
    given = [(flag, value) for flag, value in score_policies if value is not None]
    if args.decision_col is not None:
        if given:
            raise InvalidConfig(
                f"{given[0][0]} conflicts with --decision-col; "
                "a pre-binarized column is already the decision source"
            )
        return ThresholdPolicy.pre_binarized()
    if len(given) != 1:
        raise InvalidConfig(
            "scores need exactly one threshold policy: --top-k, --top-percent, or --cutoff"
        )
    flag, value = given[0]
    if flag == "--top-k":
        return ThresholdPolicy.top_k(value, tie_mode)
    if flag == "--top-percent":
        return ThresholdPolicy.top_percent(value, tie_mode)
    return ThresholdPolicy.score_cutoff(value)


def _cmd_audit(args) -> int:
    schema = DatasetSchema(
        label_column=args.label_col,
        attribute_columns=tuple(_split_csv_flag(args.attrs)),
        score_column=args.score_col,
        decision_column=args.decision_col,
        entity_id_column=args.id_col,
    )
    threshold = _threshold_from_flags(args)
    reference = _parse_reference(args.ref)
    tau = args.tau if args.tau is not None else _default_tau()

    tree_path = None
    tree_rationale = None
    if args.tree_path:
        state = default_tree().replay(_split_csv_flag(args.tree_path))
        metrics = default_tree().recommended_metrics(state)
        tree_path = tuple(_split_csv_flag(args.tree_path))
        tree_rationale = state.current.rationale
    elif args.metrics:
        metrics = tuple(Metric.parse(name) for name in _split_csv_flag(args.metrics))
    else:
        metrics = ParityConfig().metrics

    config = AuditConfig(
        threshold=threshold,
        reference=reference,
        parity=ParityConfig(tau=tau, metrics=metrics),
        tree_path=tree_path,
        tree_rationale=tree_rationale,
    )

    raw = Path(args.input).read_bytes()
    report = run_audit(parse_csv(raw, schema), config)

    if args.format == "json":
        timestamp = None if args.no_timestamp else _utc_now()
        payload = render_json(report, timestamp=timestamp)
    elif args.format == "csv":
        payload = render_csv(report).encode("utf-8")
    else:
        payload = render_markdown(report).encode("utf-8")

    if args.out:
        Path(args.out).write_bytes(payload)
        verdict = report.overall_verdict
        color = {"pass": "green", "fail": "red"}.get(verdict.value, "yellow")
        styled = _style(verdict.value.upper(), color, sys.stderr)
        print(f"report written to {args.out} ({styled})", file=sys.stderr)
    else:
        sys.stdout.write(payload.decode("utf-8"))

    return 1 if report.overall_verdict is Verdict.FAIL else 0


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _interview_answers() -> list[str]:
    """Prompt on stdin until the interview reaches a recommendation."""
    tree = default_tree()
    state = tree.start()
    answers: list[str] = []
    while not state.is_terminal:
        question = state.current
        print(_style(question.text, "bold", sys.stdout))
        for index, answer in enumerate(question.answers, start=1):
            print(f"  {index}. {answer.text} [{answer.id}]")
        try:
            raw = input("> ").strip()
        except EOFError:
            raise InvalidConfig("interview aborted before a recommendation")
        if raw.isdigit() and 1 <= int(raw) <= len(question.answers):
            chosen = question.answers[int(raw) - 1].id
        else:
            chosen = raw
        state = tree.answer(state, chosen)
        answers.append(chosen)
    return answers


def _cmd_tree(args) -> int:
    tree = default_tree()
    if args.answers:
        answers = _split_csv_flag(args.answers)
    else:
        answers = _interview_answers()
    state = tree.replay(answers)
    metrics = tree.recommended_metrics(state)
    flag_value = ",".join(m.value for m in metrics)
    if args.emit_flags:
        print(f"--metrics {flag_value}")
        return 0
    print(f"path: {','.join(answers)}")
    print(f"metrics: {flag_value}")
    print(f"rationale: {state.current.rationale}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    addr = args.addr or os.environ.get("PARITYD_ADDR") or "127.0.0.1:8000"
    host, sep, port_text = addr.rpartition(":")
    if not sep or not port_text.isdigit():
        raise InvalidConfig(f"bad --addr {addr!r}; expected host:port")
    if args.ttl_hours is not None:
        ttl_hours = args.ttl_hours
    else:
        raw_ttl = os.environ.get("PARITYD_TTL_HOURS")
        try:
            ttl_hours = float(raw_ttl) if raw_ttl is not None else 24.0
        except ValueError:
            raise InvalidConfig(f"PARITYD_TTL_HOURS is not a number: {raw_ttl!r}")

    app = create_app(
        ttl_hours=ttl_hours,
        max_upload_bytes=args.max_upload_mib * 1024 * 1024,
        persist_dir=args.persist_dir,
    )
    uvicorn.run(app, host=host, port=int(port_text))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except AuditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
