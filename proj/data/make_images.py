#!/usr/bin/env python3
"""Regenerates the two bundled synthetic test scenes (public domain).

harbor.png   -- sailboat silhouette with diagonal rigging over a water
                gradient; exercises diagonal edges and smooth regions.
portrait.png -- figure with a camera on a tripod against a soft backdrop;
                exercises fine legs, round shapes and background gradients.
"""
import numpy as np
from PIL import Image

S = 256
yy, xx = np.mgrid[0:S, 0:S].astype(np.float64)


def save(img, name):
    Image.fromarray(np.clip(img, 0, 255).astype(np.uint8), mode="L").save(name)


def harbor():
    img = np.zeros((S, S))
    horizon = 150
    # sky gradient + sun disk
    img += np.where(yy < horizon, 210 - 0.35 * yy, 0)
    sun = ((xx - 200) ** 2 + (yy - 48) ** 2) < 18 ** 2
    img[sun] = 245
    # water: darker gradient with gentle horizontal banding
    water = yy >= horizon
    img[water] = 95 - 0.15 * (yy[water] - horizon) + 12 * np.sin(yy[water] / 6.0)
    # hull: trapezoid sitting on the horizon
    hull = (yy > horizon - 18) & (yy < horizon + 6) & \
           (xx > 60 + 1.2 * (yy - horizon + 18)) & (xx < 196 - 1.0 * (yy - horizon + 18))
    img[hull] = 30
    # mast
    mast = (np.abs(xx - 128) < 2.2) & (yy > 38) & (yy < horizon - 10)
    img[mast] = 25
    # two diagonal stays (the long thin diagonals)
    for x0, y0, x1, y1 in [(128, 40, 66, horizon - 14), (128, 40, 190, horizon - 14)]:
        t = (xx - x0) * (y1 - y0) - (yy - y0) * (x1 - x0)
        seg = (np.abs(t) < 260) & (yy >= min(y0, y1)) & (yy <= max(y0, y1)) & \
              (xx >= min(x0, x1) - 3) & (xx <= max(x0, x1) + 3)
        img[seg] = 40
    # triangular sail between mast and right stay
    sail = (xx > 131) & (xx < 131 + (yy - 44) * 0.62) & (yy > 44) & (yy < horizon - 18)
    img[sail] = 185
    save(img, "harbor.png")


def portrait():
    img = 150 + 0.25 * yy - 0.15 * xx  # soft diagonal backdrop
    # ground
    img[yy > 208] = 70 + 0.1 * xx[yy > 208]
    # head
    head = ((xx - 110) ** 2 + (yy - 78) ** 2) < 24 ** 2
    img[head] = 45
    # torso: shoulders sloping to the waist
    torso = (yy > 98) & (yy < 190) & (np.abs(xx - 110) < 34 - 0.12 * (yy - 98))
    img[torso] = 35
    # arm toward the camera
    arm = (yy > 112) & (yy < 132) & (xx > 130) & (xx < 176)
    img[arm] = 38
    # camera box + lens
    cam = (yy > 104) & (yy < 134) & (xx > 172) & (xx < 204)
    img[cam] = 22
    lens = ((xx - 204) ** 2 + (yy - 119) ** 2) < 7 ** 2
    img[lens] = 15
    # tripod: three thin legs, two diagonal
    for x0, y0, x1, y1 in [(188, 134, 160, 212), (188, 134, 214, 212), (188, 134, 188, 212)]:
        t = (xx - x0) * (y1 - y0) - (yy - y0) * (x1 - x0)
        seg = (np.abs(t) < 190) & (yy >= y0) & (yy <= y1) & \
              (xx >= min(x0, x1) - 3) & (xx <= max(x0, x1) + 3)
        img[seg] = 28
    save(img, "portrait.png")


if __name__ == "__main__":
    harbor()
    portrait()
