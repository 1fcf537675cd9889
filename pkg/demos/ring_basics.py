"""A tour of t-scalar arithmetic.

Run with ``python3 demos/ring_basics.py``.
"""

import numpy as np

from tensorial import TScalar, abs_t, conj, inverse, is_nonnegative, rank_t, sqrt_nonneg

# Two t-scalars of shape (2,). Their product is a circular convolution:
# [1, 2] o [3, 4] = [1*3 + 2*4, 1*4 + 2*3].
x, y = TScalar([1.0, 2.0]), TScalar([3.0, 4.0])
print("x o y          =", (x * y).data.real)

# The transform turns the product into an entrywise one.
print("F(x) * F(y)    =", (x.spectrum * y.spectrum).real)
print("F(x o y)       =", (x * y).spectrum.real)

# [3, 1] has spectrum [4, 2], so its inverse has spectrum [1/4, 1/2].
z = TScalar([3.0, 1.0])
print("inverse([3,1]) =", inverse(z).data.real)

# [1, 1] has a vanishing Fourier entry: not invertible, rank one half.
print("rank([1,1])    =", rank_t(TScalar([1.0, 1.0])).data.real)

# conj(x) o x is nonnegative and has an arithmetic square root, abs_t(x).
rng = np.random.default_rng(0)
w = TScalar(rng.normal(size=(3, 3)))
n = conj(w) * w
print("conj(w) o w nonnegative:", is_nonnegative(n))
print("sqrt matches abs_t:", np.allclose(sqrt_nonneg(n).data, abs_t(w).data))
