"""Regenerate the bundled 256x256 PPM test corpus from scikit-image sample photos.

Run from the repository root:  python3 tools/make_corpus.py
"""
import pathlib

import numpy as np
from skimage import data, transform

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus"
SIZE = 256


def square_crop(img):
    h, w = img.shape[:2]
    s = min(h, w)
    y0, x0 = (h - s) // 2, (w - s) // 2
    return img[y0:y0 + s, x0:x0 + s]


def to_u8(img):
    img = transform.resize(square_crop(img), (SIZE, SIZE), anti_aliasing=True)
    return np.clip(np.rint(img * 255.0), 0, 255).astype(np.uint8)


def write_p6(path, img):
    h, w = img.shape[:2]
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h))
        f.write(np.ascontiguousarray(img).tobytes())


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    images = {
        "astronaut": data.astronaut(),
        "coffee": data.coffee(),
        "chelsea": data.chelsea(),
    }
    for name, img in images.items():
        write_p6(OUT / f"{name}.ppm", to_u8(img))

    # Under-exposed capture: linear intensity cut to ~30% then gamma-darkened.
    rocket = to_u8(data.rocket()).astype(np.float64) / 255.0
    dark = np.power(rocket * 0.3, 1.4)
    write_p6(OUT / "rocket_dark.ppm", np.clip(np.rint(dark * 255.0), 0, 255).astype(np.uint8))


if __name__ == "__main__":
    main()
