"""Pixel classification on a small synthetic hyperspectral cube.

Ten percent of the labelled pixels are observed; the rest are classified by
their nearest observed neighbour in each method's feature space.

Run with ``python3 demos/hyperspectral_classification.py``.
"""

from tensorial.harness.experiments import cmd_classify
from tensorial.harness.synthetic import labeled_cube

lc = labeled_cube(shape=(30, 30), bands=8, num_classes=3, seed=0)
print(f"cube {lc.cube.shape}, {lc.num_classes} classes, {int((lc.labels > 0).sum())} labelled pixels")

for method in ("pca", "tpca", "gca", "tgca1", "tgca2"):
    report = cmd_classify(lc.cube, lc.labels, method, split=0.10, seed=0, nbhd=1)
    best = max(report.select(method, "oa"), key=lambda r: r.value)
    kappa = report.value(method, best.param, "kappa")
    print(f"{method:>6}  OA {best.value:.3f}  kappa {kappa:.3f}  ({best.param})")
