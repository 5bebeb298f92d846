"""Command-line entry points for the full pipeline.

Subcommands map one-to-one onto library operations: dataset synthesis,
training, embedding, centroid/morph/boundary exploration, distribution
exports, single-vector decode, and the HTTP service. ``BRIDGEVAE_THREADS``
caps BLAS worker parallelism when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path


def _apply_thread_cap() -> None:
    cap = os.environ.get("BRIDGEVAE_THREADS")
    if not cap:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(var, cap)


def _parse_z(text: str):
    import numpy as np

    try:
        vec = np.array([float(v) for v in text.replace(" ", "").split(",") if v != ""],
                       np.float32)
    except ValueError as exc:
        raise ValueError(f"cannot parse latent vector {text!r}: {exc}") from exc
    if vec.size == 0:
        raise ValueError("latent vector is empty")
    return vec


def _endpoint_vector(text: str, centroid_path, latent_dim: int):
    """A morph endpoint: either a subtype name or comma-separated reals."""
    import numpy as np

    from .dataset import LABEL_DICTIONARY

    if text in LABEL_DICTIONARY:
        if centroid_path is None:
            raise ValueError(f"endpoint {text!r} is a subtype name; pass --centroids")
        doc = json.loads(Path(centroid_path).read_text())
        try:
            vec = doc["labels"][text]
        except KeyError as exc:
            raise ValueError(f"centroid table has no entry for {text!r}") from exc
        return np.array(vec, np.float32)
    vec = _parse_z(text)
    if vec.size != latent_dim:
        raise ValueError(f"endpoint {text!r} has {vec.size} values, expected {latent_dim}")
    return vec


def _load_vae(ckpt_path):
    from .model import load_checkpoint

    ckpt = load_checkpoint(ckpt_path)
    return ckpt, ckpt.build()


# Command handlers -----------------------------------------------------------

def cmd_gen_data(args) -> int:
    from .dataset import build_dataset

    manifest = build_dataset(args.out, seed=args.seed, subtypes=args.subtypes)
    print(f"wrote {len(manifest.entries)} images under {args.out}")
    return 0


def cmd_train(args) -> int:
    import logging

    from .dataset import load_dataset
    from .model import (
        ArchitectureProfile,
        ModelCheckpoint,
        TrainConfig,
        history_metadata,
        train,
        write_history_csv,
    )

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    profile = ArchitectureProfile.full() if args.profile == "full" else ArchitectureProfile.desk()
    resize = None
    if (profile.image_height, profile.image_width) != (128, 512):
        resize = (profile.image_height, profile.image_width)
    images, _ = load_dataset(args.data, resize_hw=resize, labels=args.labels,
                             per_label=args.per_label)
    config = TrainConfig(epochs=args.epochs, batch_size=args.batch_size, lr=args.lr,
                         kl_coefficient=args.kl_coef, seed=args.seed)
    vae, history = train(images, profile, config)
    ckpt = ModelCheckpoint.from_vae(vae, metadata=history_metadata(history, config))
    ckpt.save(args.out)
    if args.history:
        write_history_csv(history, args.history)
    print(f"checkpoint {ckpt.checkpoint_id} -> {args.out}")
    return 0


def cmd_embed(args) -> int:
    from .dataset import DatasetManifest, load_images, subset_entries
    from .latent import EmbeddingTable, write_embedding_csv

    ckpt, vae = _load_vae(args.ckpt)
    manifest_path = Path(args.data)
    manifest = DatasetManifest.load(manifest_path)
    entries = subset_entries(manifest, labels=args.labels, per_label=args.per_label)
    p = vae.profile
    images = load_images(manifest_path.parent, entries,
                         resize_hw=(p.image_height, p.image_width))
    import numpy as np

    z_mean, _ = vae.encode(images)
    table = EmbeddingTable(
        sample_ids=[e.path for e in entries],
        labels=np.array([e.label for e in entries], np.int64),
        z_mean=z_mean,
        checkpoint_id=ckpt.checkpoint_id,
    )
    write_embedding_csv(table, args.out)
    print(f"embedded {len(table)} samples -> {args.out}")
    return 0


def cmd_centroids(args) -> int:
    from .dataset import ID_TO_NAME
    from .latent import centroids, read_embedding_csv

    table = read_embedding_csv(args.embeddings)
    by_label = centroids(table)
    doc = {
        "checkpoint_id": table.checkpoint_id,
        "labels": {ID_TO_NAME[label]: [float(v) for v in vec]
                   for label, vec in sorted(by_label.items())},
    }
    Path(args.out).write_text(json.dumps(doc, indent=1, sort_keys=True))
    print(f"{len(by_label)} centroids -> {args.out}")
    return 0


def cmd_morph(args) -> int:
    from .imageio import save_png, montage
    from .latent import morph, save_morph_frames

    _, vae = _load_vae(args.ckpt)
    a = _endpoint_vector(getattr(args, "from"), args.centroids, vae.profile.latent_dim)
    b = _endpoint_vector(args.to, args.centroids, vae.profile.latent_dim)
    track = morph(vae, a, b, steps=args.steps)
    out = Path(args.out)
    name_a, name_b = getattr(args, "from"), args.to
    safe = lambda s: s.replace(" ", "-").replace(",", "_")
    paths = save_morph_frames(track, out, safe(name_a), safe(name_b))
    strip = montage(list(track.frames), rows=1, cols=track.steps)
    strip_path = out / f"morph_{safe(name_a)}_{safe(name_b)}_strip.png"
    save_png(strip, strip_path)
    print(f"{len(paths)} frames + strip -> {out}")
    return 0


def cmd_sample_boundary(args) -> int:
    import math

    from .imageio import save_png, montage
    from .latent import boundary_grid

    _, vae = _load_vae(args.ckpt)
    grid = boundary_grid(args.magnitude, latent_dim=vae.profile.latent_dim)
    frames = vae.decode(grid)[:, :, :, 0]
    side = int(math.sqrt(len(frames)))
    rows = side if side * side == len(frames) else len(frames) // side + 1
    sheet = montage(list(frames), rows=rows, cols=side)
    save_png(sheet, args.out)
    print(f"{len(frames)} boundary decodes at magnitude {args.magnitude} -> {args.out}")
    return 0


def cmd_hist(args) -> int:
    from .latent import histogram_dim, read_embedding_csv, write_histogram_csv

    table = read_embedding_csv(args.embeddings)
    edges, counts, ref = histogram_dim(table, args.dim, bins=args.bins)
    write_histogram_csv(edges, counts, ref, args.out)
    if args.png:
        from .plots import histogram_png

        histogram_png(edges, counts, ref, args.png, dim=args.dim)
    print(f"histogram of dim {args.dim} -> {args.out}")
    return 0


def cmd_scatter(args) -> int:
    from .latent import read_embedding_csv, scatter_dims, write_scatter_csv

    table = read_embedding_csv(args.embeddings)
    dim_i, dim_j = args.dims
    rows = scatter_dims(table, dim_i, dim_j)
    write_scatter_csv(rows, dim_i, dim_j, args.out)
    if args.png:
        from .plots import scatter_png

        scatter_png(rows, dim_i, dim_j, args.png)
    print(f"scatter of dims ({dim_i}, {dim_j}) -> {args.out}")
    return 0


def cmd_export_montage(args) -> int:
    from .imageio import load_png, montage, save_png

    paths = sorted(Path(args.images).glob(args.glob))
    if not paths:
        raise ValueError(f"no PNG files match {args.glob!r} under {args.images}")
    images = [load_png(p) for p in paths]
    sheet = montage(images, rows=args.rows, cols=args.cols, cell_border_px=args.border)
    save_png(sheet, args.out)
    print(f"{len(images)} cells -> {args.out}")
    return 0


def cmd_export_artifacts(args) -> int:
    from .app_artifacts import export_embedding_artifacts

    written = export_embedding_artifacts(
        args.ckpt, args.data, args.out,
        scatter_pair=tuple(args.scatter_dims), per_label=args.per_label)
    print(f"{len(written)} artifact files -> {args.out}")
    return 0


def cmd_decode(args) -> int:
    from .imageio import png_bytes

    _, vae = _load_vae(args.ckpt)
    z = _parse_z(args.z)
    if z.size != vae.profile.latent_dim:
        raise ValueError(f"z has {z.size} values, checkpoint wants {vae.profile.latent_dim}")
    img = vae.decode(z[None, :])[0, :, :, 0]
    Path(args.out).write_bytes(png_bytes(img))
    print(f"decoded z -> {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .server import ServiceConfig, serve

    config = ServiceConfig(
        checkpoint_path=args.ckpt, host=args.host, port=args.port,
        centroids_path=args.centroids, max_body_bytes=args.max_body,
        ui_dir=args.ui)
    serve(config)
    return 0


# Parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bridgevae",
        description="Bridge facade dataset, VAE training, latent exploration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="render and augment the labeled dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subtypes", nargs="*", default=None)
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("train", help="train a VAE from a dataset manifest")
    p.add_argument("--data", required=True, help="path to manifest.json")
    p.add_argument("--out", required=True, help="checkpoint output path")
    p.add_argument("--profile", choices=["full", "desk"], default="full")
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--lr", type=float, default=0.001)
    p.add_argument("--kl-coef", type=float, default=0.001)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", type=int, nargs="*", default=None)
    p.add_argument("--per-label", type=int, default=None)
    p.add_argument("--history", default=None, help="write per-epoch loss CSV here")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("embed", help="embed dataset images as latent rows")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--labels", type=int, nargs="*", default=None)
    p.add_argument("--per-label", type=int, default=None)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("centroids", help="per-subtype centroid table from embeddings")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_centroids)

    p = sub.add_parser("morph", help="decode the latent segment between two endpoints")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--from", required=True, help="subtype name or comma-separated z")
    p.add_argument("--to", required=True)
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--centroids", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_morph)

    p = sub.add_parser("sample-boundary", help="decode all sign corners at a magnitude")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--magnitude", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample_boundary)

    p = sub.add_parser("hist", help="histogram of one latent dimension")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--out", required=True)
    p.add_argument("--png", default=None)
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("scatter", help="two-dimension latent projection")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--dims", type=int, nargs=2, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--png", default=None)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("export-montage", help="tile PNGs into a grid sheet")
    p.add_argument("--images", required=True, help="directory of input PNGs")
    p.add_argument("--glob", default="*.png")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--border", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_montage)

    p = sub.add_parser("export-artifacts",
                       help="histogram CSV/PNG per dimension plus scatter export")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scatter-dims", type=int, nargs=2, default=[1, 7])
    p.add_argument("--per-label", type=int, default=None)
    p.set_defaults(func=cmd_export_artifacts)

    p = sub.add_parser("decode", help="decode one latent vector to a PNG")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--z", required=True, help="comma-separated reals")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("serve", help="HTTP inference service")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--centroids", default=None)
    p.add_argument("--ui", default=None, help="static explorer assets directory")
    p.add_argument("--max-body", type=int, default=8 * 1024 * 1024)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    _apply_thread_cap()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - single CLI diagnostic funnel
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
