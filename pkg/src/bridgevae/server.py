"""HTTP inference service: decode, encode, centroids, morph over a checkpoint.

The checkpoint (and optional centroid table) is loaded once at startup and
treated as immutable; every request decodes or encodes independently, so the
service is stateless between requests and restarts never change responses.
Image payloads travel as PNG; everything else is JSON.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .dataset import LABEL_DICTIONARY
from .imageio import load_png, montage, png_bytes
from .latent import morph
from .model import load_checkpoint

DEFAULT_MAX_BODY = 8 * 1024 * 1024


@dataclass
class ServiceConfig:
    checkpoint_path: str
    host: str = "127.0.0.1"
    port: int = 8000
    centroids_path: str | None = None
    max_body_bytes: int = DEFAULT_MAX_BODY
    ui_dir: str | None = None


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def _parse_vector(doc: dict, field: str, latent_dim: int):
    value = doc.get(field)
    if not isinstance(value, list) or len(value) != latent_dim:
        got = len(value) if isinstance(value, list) else type(value).__name__
        raise ValueError(f"field {field!r} must be a list of {latent_dim} reals (got {got})")
    try:
        vec = np.array([float(v) for v in value], np.float32)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field {field!r} contains a non-numeric entry: {exc}") from exc
    if not np.isfinite(vec).all():
        raise ValueError(f"field {field!r} contains a non-finite value")
    return vec


def create_app(config: ServiceConfig) -> FastAPI:
    ckpt = load_checkpoint(config.checkpoint_path)
    vae = ckpt.build()
    latent_dim = vae.profile.latent_dim

    centroid_labels: dict[str, list[float]] | None = None
    if config.centroids_path is not None:
        doc = json.loads(Path(config.centroids_path).read_text())
        centroid_labels = doc["labels"]

    app = FastAPI(title="bridgevae", docs_url=None, redoc_url=None)

    @app.middleware("http")
    async def limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and int(length) > config.max_body_bytes:
            return _error(413, f"request body exceeds {config.max_body_bytes} bytes")
        return await call_next(request)

    @app.get("/meta")
    async def meta():
        return {
            "latent_dim": latent_dim,
            "image_width": vae.profile.image_width,
            "image_height": vae.profile.image_height,
            "label_dictionary": LABEL_DICTIONARY,
            "checkpoint_id": ckpt.checkpoint_id,
        }

    @app.post("/decode")
    async def decode(request: Request):
        try:
            doc = json.loads(await request.body())
            z = _parse_vector(doc, "z", latent_dim)
        except (json.JSONDecodeError, ValueError) as exc:
            return _error(400, str(exc))
        img = vae.decode(z[None, :])[0, :, :, 0]
        return Response(content=png_bytes(img), media_type="image/png")

    @app.post("/encode")
    async def encode(request: Request):
        body = await request.body()
        if len(body) > config.max_body_bytes:
            return _error(413, f"request body exceeds {config.max_body_bytes} bytes")
        try:
            img = load_png(io.BytesIO(body))
        except Exception as exc:  # noqa: BLE001 - any undecodable payload is a 400
            return _error(400, f"body is not a decodable PNG: {exc}")
        p = vae.profile
        if img.shape != (p.image_height, p.image_width):
            return _error(400, f"image is {img.shape[1]}x{img.shape[0]}, "
                               f"expected {p.image_width}x{p.image_height}")
        z_mean, z_log_var = vae.encode(img[None, :, :, None])
        return {"z_mean": z_mean[0].tolist(), "z_log_var": z_log_var[0].tolist()}

    @app.get("/centroids")
    async def centroids():
        if centroid_labels is None:
            return _error(404, "no centroid table configured")
        return centroid_labels

    @app.post("/morph")
    async def morph_endpoint(request: Request):
        try:
            doc = json.loads(await request.body())
            a = _parse_vector(doc, "a", latent_dim)
            b = _parse_vector(doc, "b", latent_dim)
            steps = doc.get("steps", 11)
            if not isinstance(steps, int) or isinstance(steps, bool) or steps < 2:
                raise ValueError(f"field 'steps' must be an integer >= 2 (got {steps!r})")
            if steps > 64:
                raise ValueError(f"field 'steps' must be <= 64 (got {steps})")
        except (json.JSONDecodeError, ValueError) as exc:
            return _error(400, str(exc))
        track = morph(vae, a, b, steps=steps)
        sheet = montage(list(track.frames), rows=1, cols=steps)
        return Response(content=png_bytes(sheet), media_type="image/png")

    if config.ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port,
                log_level="info")
