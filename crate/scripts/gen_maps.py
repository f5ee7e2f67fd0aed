"""Regenerates the fixture occupancy maps in scenarios/maps/.

Each map is a binary PGM (0 = obstacle, 255 = free) with a TOML sidecar.
"""
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "scenarios" / "maps"
RES = 0.1


def blank(w, h):
    img = np.full((h, w), 255, dtype=np.uint8)
    img[:2, :] = img[-2:, :] = 0
    img[:, :2] = img[:, -2:] = 0
    return img


def rect(img, x0, y0, x1, y1):
    """Fills a rectangle given in meters, origin bottom-left."""
    h = img.shape[0]
    c0, c1 = int(round(x0 / RES)), int(round(x1 / RES))
    r0, r1 = h - int(round(y1 / RES)), h - int(round(y0 / RES))
    img[r0:r1, c0:c1] = 0


def disk(img, cx, cy, r):
    h, w = img.shape
    ys, xs = np.mgrid[0:h, 0:w]
    px = (xs + 0.5) * RES
    py = (h - ys - 0.5) * RES
    img[(px - cx) ** 2 + (py - cy) ** 2 <= r * r] = 0


def save(name, img):
    h, w = img.shape
    with open(OUT / f"{name}.pgm", "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode())
        f.write(img.tobytes())
    (OUT / f"{name}.toml").write_text(
        f"resolution = {RES}\norigin = [0.0, 0.0]\nthreshold = 128\noutside_free = false\n"
    )


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    room = blank(160, 120)
    rect(room, 3.0, 3.0, 5.0, 4.5)
    rect(room, 10.0, 7.0, 13.0, 8.0)
    rect(room, 7.0, 0.0, 7.5, 4.0)
    disk(room, 4.0, 8.5, 1.0)
    save("room", room)

    corridors = blank(160, 120)
    rect(corridors, 0.0, 4.0, 11.0, 5.0)
    rect(corridors, 5.0, 8.0, 16.0, 9.0)
    rect(corridors, 12.5, 0.0, 13.5, 3.0)
    save("corridors", corridors)

    rng = np.random.default_rng(7)
    clutter = blank(160, 120)
    for _ in range(9):
        cx, cy = rng.uniform(2.0, 14.0), rng.uniform(2.0, 10.0)
        if rng.random() < 0.5:
            disk(clutter, cx, cy, rng.uniform(0.4, 1.0))
        else:
            rect(clutter, cx - 0.6, cy - 0.4, cx + 0.6, cy + 0.4)
    save("clutter", clutter)


if __name__ == "__main__":
    main()
