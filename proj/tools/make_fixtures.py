#!/usr/bin/env python3
"""Regenerate the 256x256 grayscale PGM fixtures in tests/data from scikit-image's bundled images."""
import pathlib

import numpy as np
from skimage import color, data, transform

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

SOURCES = {
    "cameraman": data.camera,
    "astronaut": data.astronaut,
    "coffee": data.coffee,
    "chelsea": data.chelsea,
    "moon": data.moon,
    "coins": data.coins,
}


def to_gray256(img):
    if img.ndim == 3:
        img = color.rgb2gray(img[..., :3])
    img = transform.resize(img, (256, 256), anti_aliasing=True, preserve_range=False)
    return np.clip(np.rint(img * 255.0 if img.max() <= 1.0 else img), 0, 255).astype(np.uint8)


def write_pgm(path, pixels):
    h, w = pixels.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(pixels.tobytes())


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, fn in SOURCES.items():
        write_pgm(OUT / f"{name}.pgm", to_gray256(fn()))


if __name__ == "__main__":
    main()
