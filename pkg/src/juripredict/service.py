"""HTTP prediction service hosting the decision and unanimity models.

Model state is loaded once at startup and never mutated by requests, so
concurrent predictions are plain reads. The service and the CLI predict
command share one code path (modelio.predict_case), keeping their outputs
identical for identical inputs and models.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .modelio import ModelBundle, load_bundle, predict_case

MAX_BODY_BYTES = 64 * 1024


@dataclass
class ServiceState:
    decision: ModelBundle | None = None
    unanimity: ModelBundle | None = None
    loaded_at: float | None = None

    @property
    def ready(self) -> bool:
        return self.decision is not None and self.unanimity is not None


def _error(status_code: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": message})


def create_app(
    decision_model: str | Path | None = None,
    unanimity_model: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service; omitted model paths leave predictions at 503."""
    state = ServiceState()
    if decision_model is not None:
        state.decision = load_bundle(decision_model)
    if unanimity_model is not None:
        state.unanimity = load_bundle(unanimity_model)
    if state.ready:
        state.loaded_at = time.time()

    app = FastAPI(title="juripredict", version="0.1.0")
    app.state.service = state

    @app.get("/api/health")
    def health() -> dict:
        return {
            "status": "ok" if state.ready else "unavailable",
            "decision_model_sha256": state.decision.file_sha256 if state.decision else None,
            "unanimity_model_sha256": state.unanimity.file_sha256 if state.unanimity else None,
            "loaded_at": state.loaded_at,
        }

    @app.get("/api/model-info")
    def model_info():
        if not state.ready:
            return _error(503, "models are not loaded")
        def describe(bundle: ModelBundle) -> dict:
            return {
                "task": bundle.task,
                "classes": list(bundle.classifier.classes),
                "vocabulary_size": len(bundle.tfidf.vocabulary),
                "min_df": bundle.tfidf.min_df,
                "train_config": bundle.train_config,
                "labeler_rules_sha256": bundle.labeler_rules_hash,
                "file_sha256": bundle.file_sha256,
            }
        return {"decision": describe(state.decision), "unanimity": describe(state.unanimity)}

    @app.post("/api/predict")
    async def predict_endpoint(request: Request):
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            return _error(413, f"request body exceeds {MAX_BODY_BYTES} bytes")
        if not state.ready:
            return _error(503, "models are not loaded")
        try:
            payload = json.loads(body)
        except (UnicodeDecodeError, json.JSONDecodeError):
            return _error(400, "request body must be a JSON object")
        if not isinstance(payload, dict):
            return _error(400, "request body must be a JSON object")
        description = payload.get("description")
        if not isinstance(description, str) or not description.strip():
            return _error(400, "missing description")
        return JSONResponse(predict_case(state.decision, state.unanimity, description))

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="webui")

    return app
