"""HTTP audit service: upload a population, run audits, fetch reports.

Reports are rendered by the same serializer the CLI uses and returned as
exact canonical bytes, so the two surfaces cannot drift. Sessions are
held in memory with TTL eviction; uploaded rows are never echoed back,
responses only ever carry aggregate counts.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, File, Form, Request, Response, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware

from .audit import AuditConfig, run_audit
from .disparity import (
    ALL_METRICS,
    IndeterminatePolicy,
    ParityConfig,
    ReferenceKind,
    ReferenceStrategy,
)
from .errors import AuditError, InvalidConfig
from .ingest import Dataset, DatasetSchema, Diagnostic, parse_csv, validate
from .metrics import Metric, PolicyKind, ThresholdPolicy, TieMode
from .report import canonical_json_bytes, render_json
from .tree import default_tree

DEFAULT_TTL_HOURS = 24.0
DEFAULT_MAX_UPLOAD_BYTES = 64 * 1024 * 1024


@dataclass
class _Session:
    dataset_id: str
    dataset: Dataset
    diagnostics: tuple[Diagnostic, ...]
    expires_at: float
    reports: list[bytes] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class _Store:
    """In-memory sessions; datasets immutable, report history append-only."""

    def __init__(self, ttl_seconds: float):
        self._ttl = ttl_seconds
        self._sessions: dict[str, _Session] = {}
        self._lock = threading.Lock()

    def put(self, dataset: Dataset, diagnostics: tuple[Diagnostic, ...]) -> _Session:
        session = _Session(
            dataset_id="ds_" + uuid.uuid4().hex,
            dataset=dataset,
            diagnostics=diagnostics,
            expires_at=time.time() + self._ttl,
        )
        with self._lock:
            self._evict_expired()
            self._sessions[session.dataset_id] = session
        return session

    def get(self, dataset_id: str) -> _Session | None:
        with self._lock:
            self._evict_expired()
            return self._sessions.get(dataset_id)

    def _evict_expired(self) -> None:
        now = time.time()
        for key in [k for k, s in self._sessions.items() if s.expires_at <= now]:
            del self._sessions[key]


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json_bytes(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, code: str, message: str, detail: str | None = None) -> Response:
    return _json_response(
        {"code": code, "message": message, "detail": detail}, status_code=status_code
    )


def _schema_from_payload(payload: dict) -> DatasetSchema:
    if not isinstance(payload, dict):
        raise InvalidConfig("schema must be a JSON object")
    label = payload.get("label_column")
    attrs = payload.get("attribute_columns")
    if not isinstance(label, str) or not label:
        raise InvalidConfig("schema needs a label_column string")
    if not isinstance(attrs, list) or not all(isinstance(a, str) for a in attrs):
        raise InvalidConfig("schema needs attribute_columns as a list of strings")

    def optional(key: str) -> str | None:
        value = payload.get(key)
        if value is not None and not isinstance(value, str):
            raise InvalidConfig(f"schema {key} must be a string")
        return value

    return DatasetSchema(
        label_column=label,
        attribute_columns=tuple(attrs),
        score_column=optional("score_column"),
        decision_column=optional("decision_column"),
        entity_id_column=optional("entity_id_column"),
    )


def _enum_member(enum_cls, raw, what: str):
    try:
        return enum_cls(raw)
    except ValueError:
        choices = ", ".join(member.value for member in enum_cls)
        raise InvalidConfig(f"unknown {what} {raw!r}; expected one of {choices}")


def _threshold_from_payload(payload, dataset: Dataset) -> ThresholdPolicy:
    if payload is None:
        if dataset.schema.decision_column is None:
            raise InvalidConfig(
                "dataset has no decision column; the audit config needs a threshold policy"
            )
        return ThresholdPolicy.pre_binarized()
    if not isinstance(payload, dict):
        raise InvalidConfig("threshold must be a JSON object")
    kind = _enum_member(PolicyKind, payload.get("kind"), "threshold kind")
    tie_mode = _enum_member(TieMode, payload.get("tie_mode", "exact_k"), "tie mode")
    if kind is PolicyKind.PRE_BINARIZED:
        return ThresholdPolicy.pre_binarized()
    if kind is PolicyKind.TOP_K:
        k = payload.get("k")
        if not isinstance(k, int) or isinstance(k, bool):
            raise InvalidConfig("top-k threshold needs an integer k")
        return ThresholdPolicy.top_k(k, tie_mode)
    if kind is PolicyKind.TOP_PERCENT:
        p = payload.get("p")
        if not isinstance(p, (int, float)) or isinstance(p, bool):
            raise InvalidConfig("top-percent threshold needs a numeric p")
        return ThresholdPolicy.top_percent(float(p), tie_mode)
    cutoff = payload.get("cutoff")
    if not isinstance(cutoff, (int, float)) or isinstance(cutoff, bool):
        raise InvalidConfig("score-cutoff threshold needs a numeric cutoff")
    return ThresholdPolicy.score_cutoff(float(cutoff))


def _reference_from_payload(payload) -> ReferenceStrategy:
    if payload is None:
        return ReferenceStrategy.majority()
    if not isinstance(payload, dict):
        raise InvalidConfig("reference must be a JSON object")
    kind = _enum_member(ReferenceKind, payload.get("kind"), "reference kind")
    if kind is ReferenceKind.FIXED:
        groups = payload.get("fixed_groups")
        if (
            not isinstance(groups, dict)
            or not groups
            or not all(isinstance(k, str) and isinstance(v, str) for k, v in groups.items())
        ):
            raise InvalidConfig("fixed reference needs fixed_groups as {attribute: group}")
        return ReferenceStrategy.fixed(groups)
    return ReferenceStrategy(kind=kind)


def _audit_config_from_payload(payload: dict, dataset: Dataset) -> AuditConfig:
    if not isinstance(payload, dict):
        raise InvalidConfig("audit config must be a JSON object")
    threshold = _threshold_from_payload(payload.get("threshold"), dataset)
    reference = _reference_from_payload(payload.get("reference"))

    tau = payload.get("tau", 0.8)
    if not isinstance(tau, (int, float)) or isinstance(tau, bool):
        raise InvalidConfig("tau must be a number")
    policy = _enum_member(
        IndeterminatePolicy,
        payload.get("indeterminate_policy", "report_only"),
        "indeterminate policy",
    )

    metrics_payload = payload.get("metrics")
    tree_payload = payload.get("tree_path")
    if metrics_payload is not None and tree_payload is not None:
        raise InvalidConfig("metrics and tree_path are mutually exclusive")
    tree_path = None
    tree_rationale = None
    if tree_payload is not None:
        if not isinstance(tree_payload, list) or not all(
            isinstance(a, str) for a in tree_payload
        ):
            raise InvalidConfig("tree_path must be a list of answer ids")
        tree = default_tree()
        state = tree.replay(tree_payload)
        metrics = tree.recommended_metrics(state)
        tree_path = tuple(tree_payload)
        tree_rationale = state.current.rationale
    elif metrics_payload is not None:
        if not isinstance(metrics_payload, list) or not all(
            isinstance(m, str) for m in metrics_payload
        ):
            raise InvalidConfig("metrics must be a list of metric names")
        metrics = tuple(Metric.parse(name) for name in metrics_payload)
    else:
        metrics = ALL_METRICS

    return AuditConfig(
        threshold=threshold,
        reference=reference,
        parity=ParityConfig(tau=float(tau), metrics=metrics, indeterminate_policy=policy),
        tree_path=tree_path,
        tree_rationale=tree_rationale,
    )


def create_app(
    ttl_hours: float = DEFAULT_TTL_HOURS,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES,
    persist_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="parityd", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = _Store(ttl_seconds=ttl_hours * 3600.0)
    app.state.store = store
    persist_path = Path(persist_dir) if persist_dir else None
    if persist_path is not None:
        persist_path.mkdir(parents=True, exist_ok=True)

    @app.exception_handler(RequestValidationError)
    def malformed_request(request: Request, exc: RequestValidationError) -> Response:
        # Only the upload endpoint uses framework-parsed parameters.
        return _error(400, "BadRequest", "malformed upload request", str(exc.errors()))

    @app.post("/v1/datasets")
    def upload_dataset(
        request: Request,
        file: UploadFile = File(...),
        schema_field: str = Form(..., alias="schema"),
    ) -> Response:
        declared = request.headers.get("content-length")
        if declared is not None and declared.isdigit() and int(declared) > max_upload_bytes:
            return _error(413, "PayloadTooLarge",
                          f"upload exceeds the {max_upload_bytes} byte cap")
        raw = file.file.read(max_upload_bytes + 1)
        if len(raw) > max_upload_bytes:
            return _error(413, "PayloadTooLarge",
                          f"upload exceeds the {max_upload_bytes} byte cap")
        try:
            schema_payload = json.loads(schema_field)
        except json.JSONDecodeError as exc:
            return _error(400, "BadSchemaJson", "schema is not valid JSON", str(exc))
        try:
            dataset = parse_csv(raw, _schema_from_payload(schema_payload))
        except AuditError as exc:
            return _error(400, exc.code, str(exc))

        session = store.put(dataset, tuple(validate(dataset)))
        return _json_response(
            {
                "dataset_id": session.dataset_id,
                "row_count": dataset.row_count,
                "content_hash": dataset.content_hash(),
                "diagnostics": [_diagnostic_dict(d) for d in session.diagnostics],
            },
            status_code=201,
        )

    @app.post("/v1/datasets/{dataset_id}/audits")
    async def create_audit(dataset_id: str, request: Request) -> Response:
        session = store.get(dataset_id)
        if session is None:
            return _error(404, "UnknownDataset", f"no dataset {dataset_id!r}")
        body_bytes = await request.body()
        try:
            payload = json.loads(body_bytes) if body_bytes else {}
        except json.JSONDecodeError as exc:
            return _error(422, "BadConfigJson", "audit config is not valid JSON", str(exc))
        try:
            config = _audit_config_from_payload(payload, session.dataset)
            report = run_audit(session.dataset, config)
        except AuditError as exc:
            return _error(422, exc.code, str(exc))

        body = render_json(report, timestamp=None)
        with session.lock:
            session.reports.append(body)
            ordinal = len(session.reports)
        if persist_path is not None:
            (persist_path / f"{session.dataset_id}-{ordinal:04d}.json").write_bytes(body)
        return Response(content=body, status_code=200, media_type="application/json")

    @app.get("/v1/datasets/{dataset_id}/audits")
    def audit_history(dataset_id: str) -> Response:
        session = store.get(dataset_id)
        if session is None:
            return _error(404, "UnknownDataset", f"no dataset {dataset_id!r}")
        with session.lock:
            reports = list(session.reports)
        return _json_response(
            {
                "dataset_id": dataset_id,
                "reports": [json.loads(body) for body in reports],
            }
        )

    @app.get("/v1/fairness-tree")
    def fairness_tree(request: Request) -> Response:
        tree = default_tree()
        etag = f'"fairness-tree-v{tree.version}"'
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        body = canonical_json_bytes(tree.definition)
        return Response(
            content=body,
            media_type="application/json",
            headers={"ETag": etag, "Cache-Control": "max-age=3600"},
        )

    return app


def _diagnostic_dict(diagnostic: Diagnostic) -> dict:
    return {
        "severity": diagnostic.severity,
        "code": diagnostic.code,
        "message": diagnostic.message,
        "attribute": diagnostic.attribute,
        "group": diagnostic.group,
        "metric": diagnostic.metric,
    }
