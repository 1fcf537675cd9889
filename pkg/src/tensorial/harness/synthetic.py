"""Synthetic stand-ins for the image, face and hyperspectral datasets.

Every generator is driven by :func:`make_rng`, a Philox counter-based
generator, so a seed pins the output across platforms and numpy versions.
"""

from dataclasses import dataclass

import numpy as np


def make_rng(seed):
    return np.random.Generator(np.random.Philox(int(seed)))


def _to_8bit(img):
    return np.clip(np.rint(img), 0, 255)


def sample_image(size=64, seed=0):
    """A 64 x 64 (by default) 8-bit grayscale scene.

    Smooth shading, a few hard-edged shapes, a striped patch and mild noise,
    so that low-rank approximations have both smooth and sharp content.
    """
    rng = make_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size] / size
    img = 90 + 60 * xx + 40 * np.sin(3 * np.pi * yy)
    disk = (xx - 0.35) ** 2 + (yy - 0.4) ** 2 < 0.04
    img[disk] = 210 - 50 * yy[disk]
    img[(np.abs(xx - 0.72) < 0.12) & (np.abs(yy - 0.7) < 0.18)] = 40
    stripes = (xx > 0.55) & (yy < 0.35)
    img[stripes] += 35 * np.sign(np.sin(2 * np.pi * 9 * xx[stripes]))
    img += rng.normal(0, 4, img.shape)
    return _to_8bit(img)


def face_images(count, shape=(28, 23), subjects=None, seed=0):
    """Synthetic 8-bit face-like images.

    Each subject has its own head outline and feature layout; every image of
    a subject adds small shifts, lighting changes and noise.
    """
    rng = make_rng(seed)
    rows, cols = shape
    subjects = subjects or max(1, count // 4)
    yy, xx = np.mgrid[0:rows, 0:cols]
    cy, cx = (rows - 1) / 2, (cols - 1) / 2
    protos = []
    for _ in range(subjects):
        protos.append(
            dict(
                head=rng.uniform(0.85, 1.0, 2) * (rows / 2.2, cols / 2.3),
                skin=rng.uniform(140, 200),
                eye_y=rng.uniform(0.36, 0.44) * rows,
                eye_dx=rng.uniform(0.17, 0.24) * cols,
                mouth_y=rng.uniform(0.70, 0.78) * rows,
                mouth_w=rng.uniform(0.15, 0.25) * cols,
                hair=rng.uniform(20, 70),
            )
        )

    def blob(y0, x0, sy, sx):
        return np.exp(-((yy - y0) ** 2) / (2 * sy**2) - ((xx - x0) ** 2) / (2 * sx**2))

    images = []
    for n in range(count):
        p = protos[n % subjects]
        dy, dx = rng.normal(0, 0.6, 2)
        light = rng.uniform(-25, 25)
        hy, hx = p["head"]
        head = ((yy - cy - dy) / hy) ** 2 + ((xx - cx - dx) / hx) ** 2 < 1
        img = np.full(shape, 30.0)
        img[head] = p["skin"] + light * (xx[head] - cx) / cols
        img[(yy < cy - 0.6 * hy + dy) & head] = p["hair"]
        for side in (-1, 1):
            img -= 90 * blob(p["eye_y"] + dy, cx + side * p["eye_dx"] + dx, 1.2, 1.6)
        img -= 40 * blob(cy + 0.1 * rows + dy, cx + dx, 2.0, 0.9)
        img -= 70 * blob(p["mouth_y"] + dy, cx + dx, 0.9, p["mouth_w"])
        img += rng.normal(0, 3, shape)
        images.append(_to_8bit(img))
    return images


@dataclass
class LabeledCube:
    cube: np.ndarray
    labels: np.ndarray

    @property
    def num_classes(self):
        return int(self.labels.max())


def class_signatures(bands, num_classes):
    """Nonnegative spectral signatures, one row per class.

    A flat baseline plus a peak at a class-specific band, so the signatures
    are linearly independent.
    """
    t = np.linspace(0, 1, bands)
    centres = (np.arange(num_classes) + 0.5) / num_classes
    return 0.2 + np.exp(-((t[None, :] - centres[:, None]) ** 2) / (2 * 0.12**2))


def block_labels(shape, num_classes, block):
    """Label map with one ``block x block`` square per class on background 0.

    Squares sit in the cells of a ``g x g`` grid (``g = ceil(sqrt(n))``),
    centred in their cells, so different classes never touch.
    """
    rows, cols = shape
    g = int(np.ceil(np.sqrt(num_classes)))
    ch, cw = rows // g, cols // g
    if block > min(ch, cw):
        raise ValueError(f"{num_classes} blocks of size {block} do not fit in {shape}")
    labels = np.zeros(shape, dtype=np.int64)
    for c in range(num_classes):
        i, j = divmod(c, g)
        r0 = i * ch + (ch - block) // 2
        c0 = j * cw + (cw - block) // 2
        labels[r0:r0 + block, c0:c0 + block] = c + 1
    return labels


def labeled_cube(shape=(30, 30), bands=8, num_classes=3, block=10, gain_sd=0.2, noise_sd=0.05, seed=0):
    """A hyperspectral cube with ground-truth labels.

    Each class occupies a square region (see :func:`block_labels`).  A pixel
    of class ``c`` is ``a * s_c + noise`` where ``s_c`` is the class signature
    and ``a`` a per-pixel gain, so the classes differ in spectral direction.
    Background pixels hold noise only.
    """
    rng = make_rng(seed)
    sigs = class_signatures(bands, num_classes)
    labels = block_labels(shape, num_classes, block)
    gain = 1.0 + gain_sd * rng.normal(size=shape)
    cube = noise_sd * rng.normal(size=tuple(shape) + (bands,))
    fg = labels > 0
    cube[fg] += gain[fg][:, None] * sigs[labels[fg] - 1]
    return LabeledCube(cube=cube, labels=labels)
