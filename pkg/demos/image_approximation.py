"""Low-rank approximation of an image: SVD against TSVD.

Each pixel becomes a 3 x 3 t-scalar holding its neighbourhood, so the image
becomes a 64 x 64 t-matrix. Its rank-r TSVD approximation is a stack of nine
images; the central one approximates the original.

Run with ``python3 demos/image_approximation.py``.
"""

from tensorial.harness.experiments import cmd_approx
from tensorial.harness.synthetic import sample_image

image = sample_image(64)
ranks = [4, 8, 16, 32, 48]
report = cmd_approx(image, ranks, compare="vertical")

print(f"{'rank':>4}  {'SVD dB':>8}  {'TSVD dB':>8}  {'gap':>6}")
for r in ranks:
    s = report.value("svd", f"r={r}", "psnr")
    t = report.value("tsvd", f"r={r}", "psnr")
    print(f"{r:>4}  {s:8.2f}  {t:8.2f}  {t - s:6.2f}")
