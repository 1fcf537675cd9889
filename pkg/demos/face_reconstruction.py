"""Reconstructing unseen faces with PCA, TPCA, 2DPCA and T2DPCA.

Twenty synthetic faces train each model and twenty others are projected onto
the leading d basis vectors and reconstructed. The mean PSNR is printed for
a few values of d.

Run with ``python3 demos/face_reconstruction.py``.
"""

from tensorial.harness.experiments import cmd_reconstruct
from tensorial.harness.synthetic import face_images

faces = face_images(40, seed=3)
train, queries = faces[0::2], faces[1::2]

for method, grid in [("pca", [5, 10, 19]), ("tpca", [5, 10, 19]), ("2dpca", [5, 10, 20]), ("t2dpca", [5, 10, 20])]:
    report = cmd_reconstruct(train, queries, method, grid)
    row = "  ".join(f"d={d}: {report.value(method, f'd={d}', 'A'):6.2f}" for d in grid)
    print(f"{method:>7}  {row}")
