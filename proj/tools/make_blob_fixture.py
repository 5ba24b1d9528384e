#!/usr/bin/env python3
"""Generate the synthetic blob fixture: a bright cone with small noise on a
dark uniform-noise background, plus the ground-truth disk mask."""
import argparse
import pathlib

import numpy as np


def make(seed, size, radius, bg_hi, peak, edge, noise):
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size]
    c = size / 2 - 0.5
    r = np.hypot(x - c, y - c)
    truth = r <= radius
    img = rng.integers(0, bg_hi + 1, (size, size)).astype(float)
    cone = edge + (peak - edge) * (1 - r / radius)
    blob = cone + rng.integers(-noise, noise + 1, (size, size))
    img[truth] = blob[truth]
    return np.clip(np.round(img), 0, 255).astype(np.uint8), truth


def write_pgm(path, a):
    h, w = a.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode())
        f.write(a.astype(np.uint8).tobytes())


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out-dir", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--size", type=int, default=96)
    p.add_argument("--radius", type=float, default=28)
    p.add_argument("--bg-hi", type=int, default=40)
    p.add_argument("--peak", type=int, default=230)
    p.add_argument("--edge", type=int, default=200)
    p.add_argument("--noise", type=int, default=3)
    a = p.parse_args()
    img, truth = make(a.seed, a.size, a.radius, a.bg_hi, a.peak, a.edge, a.noise)
    out = pathlib.Path(a.out_dir)
    write_pgm(out / "blob.pgm", img)
    write_pgm(out / "blob_truth.pgm", truth.astype(np.uint8) * 255)


if __name__ == "__main__":
    main()
