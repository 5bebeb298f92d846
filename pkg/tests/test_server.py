"""HTTP service endpoints against a tiny checkpoint."""

import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from bridgevae.dataset import LABEL_DICTIONARY
from bridgevae.imageio import png_bytes
from bridgevae.model import ModelCheckpoint
from bridgevae.server import ServiceConfig, create_app


@pytest.fixture(scope="module")
def service(tmp_path_factory, tiny_trained):
    root = tmp_path_factory.mktemp("srv")
    vae = tiny_trained[0]
    ckpt_path = root / "tiny.ckpt"
    ckpt = ModelCheckpoint.from_vae(vae)
    ckpt.save(ckpt_path)

    centroids_path = root / "centroids.json"
    labels = {name: [0.1 * (i + 1)] * vae.profile.latent_dim
              for i, name in enumerate(LABEL_DICTIONARY)}
    centroids_path.write_text(json.dumps(
        {"checkpoint_id": ckpt.checkpoint_id, "labels": labels}))

    config = ServiceConfig(checkpoint_path=str(ckpt_path),
                           centroids_path=str(centroids_path),
                           max_body_bytes=300_000)
    app = create_app(config)
    return TestClient(app), vae, ckpt


def test_meta(service):
    client, vae, ckpt = service
    r = client.get("/meta")
    assert r.status_code == 200
    doc = r.json()
    assert doc["latent_dim"] == vae.profile.latent_dim
    assert doc["image_width"] == vae.profile.image_width
    assert doc["image_height"] == vae.profile.image_height
    assert doc["label_dictionary"] == LABEL_DICTIONARY
    assert doc["checkpoint_id"] == ckpt.checkpoint_id


def test_decode_deterministic_bytes(service):
    client, vae, _ = service
    z = [0.2] * vae.profile.latent_dim
    r1 = client.post("/decode", json={"z": z})
    r2 = client.post("/decode", json={"z": z})
    assert r1.status_code == 200
    assert r1.headers["content-type"] == "image/png"
    assert r1.content == r2.content


def test_decode_matches_library(service):
    client, vae, _ = service
    z = np.linspace(-1, 1, vae.profile.latent_dim).astype(np.float32)
    r = client.post("/decode", json={"z": z.tolist()})
    direct = png_bytes(vae.decode(z[None, :])[0, :, :, 0])
    assert r.content == direct


def test_decode_wrong_length_400(service):
    client, vae, _ = service
    r = client.post("/decode", json={"z": [0.0] * (vae.profile.latent_dim + 1)})
    assert r.status_code == 400
    assert "'z'" in r.json()["error"]


def test_decode_non_finite_400(service):
    client, vae, _ = service
    z = [0.0] * vae.profile.latent_dim
    z[0] = float("nan")
    body = json.dumps({"z": z}).replace("NaN", "NaN")
    r = client.post("/decode", content=body,
                    headers={"content-type": "application/json"})
    assert r.status_code == 400
    assert "non-finite" in r.json()["error"] or "non-numeric" in r.json()["error"]


def test_decode_malformed_json_400(service):
    client, _, _ = service
    r = client.post("/decode", content=b"{nope",
                    headers={"content-type": "application/json"})
    assert r.status_code == 400


def test_encode_round_trip(service):
    client, vae, _ = service
    rng = np.random.default_rng(0)
    img = (rng.random((vae.profile.image_height, vae.profile.image_width)) > 0.8)
    body = png_bytes(img.astype(np.float32))
    r = client.post("/encode", content=body,
                    headers={"content-type": "image/png"})
    assert r.status_code == 200
    doc = r.json()
    assert len(doc["z_mean"]) == vae.profile.latent_dim
    assert len(doc["z_log_var"]) == vae.profile.latent_dim
    assert all(np.isfinite(doc["z_mean"]))


def test_encode_wrong_dims_400(service):
    client, _, _ = service
    body = png_bytes(np.zeros((8, 8), np.float32))
    r = client.post("/encode", content=body,
                    headers={"content-type": "image/png"})
    assert r.status_code == 400


def test_encode_garbage_400(service):
    client, _, _ = service
    r = client.post("/encode", content=b"not a png",
                    headers={"content-type": "image/png"})
    assert r.status_code == 400


def test_oversized_body_413(service):
    client, _, _ = service
    r = client.post("/encode", content=b"\x00" * 400_000,
                    headers={"content-type": "image/png"})
    assert r.status_code == 413


def test_centroids_served(service):
    client, vae, _ = service
    r = client.get("/centroids")
    assert r.status_code == 200
    doc = r.json()
    assert set(doc) == set(LABEL_DICTIONARY)
    assert len(doc["Beam Three_span"]) == vae.profile.latent_dim


def test_centroids_404_when_missing(tmp_path, tiny_trained):
    ckpt_path = tmp_path / "t.ckpt"
    ModelCheckpoint.from_vae(tiny_trained[0]).save(ckpt_path)
    app = create_app(ServiceConfig(checkpoint_path=str(ckpt_path)))
    client = TestClient(app)
    assert client.get("/centroids").status_code == 404


def test_morph_strip(service):
    client, vae, _ = service
    d = vae.profile.latent_dim
    r = client.post("/morph", json={"a": [0.0] * d, "b": [1.0] * d, "steps": 4})
    assert r.status_code == 200
    assert r.headers["content-type"] == "image/png"
    from bridgevae.imageio import load_png
    import io

    sheet = load_png(io.BytesIO(r.content))
    assert sheet.shape == (vae.profile.image_height + 1,
                           4 * (vae.profile.image_width + 1))


def test_morph_bad_steps_400(service):
    client, vae, _ = service
    d = vae.profile.latent_dim
    r = client.post("/morph", json={"a": [0.0] * d, "b": [1.0] * d, "steps": 1})
    assert r.status_code == 400
    assert "steps" in r.json()["error"]
