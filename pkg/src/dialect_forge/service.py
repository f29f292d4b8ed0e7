"""HTTP service exposing the dialectalizer, evaluator and corpus stats.

Read-only by design: corpus building stays a batch CLI job, the service
exists for interactive steering and inspection. The lexicon and optional
corpus are loaded once at startup and shared immutably across requests.
"""
from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse

from .augment import corpus_stats, dialectalize
from .errors import EmptyEvalSet, UnknownLabel
from .lexicon import Lexicon
from .metrics import EvalPair, authenticity_score, per_region_report
from .schema import (
    CONTEXT_ALIASES,
    REGION_ALIASES,
    Context,
    ControlVector,
    Region,
    Register,
    SentenceRecord,
    format_control_prefix,
)

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8077


def create_app(lexicon: Lexicon, corpus: list[SentenceRecord] | None = None) -> FastAPI:
    app = FastAPI(title="dialect-forge steering service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.get("/regions")
    def regions() -> dict:
        return {
            "regions": [r.value for r in Region],
            "contexts": [c.value for c in Context],
            "registers": [r.value for r in Register],
            "region_aliases": {alias: r.value for alias, r in REGION_ALIASES.items()},
            "context_aliases": {alias: c.value for alias, c in CONTEXT_ALIASES.items()},
        }

    @app.post("/steer")
    async def steer(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception as exc:
            raise HTTPException(status_code=400, detail="body must be JSON") from exc
        if not isinstance(body, dict):
            raise HTTPException(status_code=400, detail="body must be an object")
        text = body.get("text", "")
        if not isinstance(text, str) or not text.strip():
            raise HTTPException(status_code=422, detail="text must be non-empty")
        try:
            cv = ControlVector(
                region=Region.from_label(str(body.get("region", ""))),
                context=Context.from_label(str(body.get("context", "General"))),
                register=Register.from_label(str(body.get("register", "Informal"))),
            )
        except UnknownLabel as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        output, substitutions = dialectalize(text, cv, lexicon)
        return {
            "output": output,
            "substitutions": [asdict(s) for s in substitutions],
            "authenticity": authenticity_score(output, cv.region, lexicon),
            "tagged_form": format_control_prefix(cv, text),
        }

    @app.post("/evaluate")
    async def evaluate(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception as exc:
            raise HTTPException(status_code=400, detail="body must be JSON") from exc
        if not isinstance(body, list):
            raise HTTPException(status_code=400, detail="body must be a list of pairs")
        pairs = []
        for i, item in enumerate(body):
            if not isinstance(item, dict):
                raise HTTPException(status_code=400, detail=f"pairs[{i}] must be an object")
            try:
                pairs.append(EvalPair(
                    hypothesis=str(item["hypothesis"]),
                    reference=str(item["reference"]),
                    region=Region.from_label(str(item.get("region", "MSA-General"))),
                ))
            except (KeyError, ValueError, UnknownLabel) as exc:
                raise HTTPException(status_code=400, detail=f"pairs[{i}]: {exc}") from exc
        try:
            report = per_region_report(pairs, lexicon)
        except EmptyEvalSet as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return report.to_json_obj()

    @app.get("/stats")
    def stats() -> dict:
        if corpus is None:
            raise HTTPException(status_code=404, detail="no corpus loaded at startup")
        return corpus_stats(corpus)

    return app
