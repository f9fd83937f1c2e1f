"""Series-kernel transforms in four dimensions: eigenvalues on Clifford-Hermite
functions, the sphere-integral identity and the translate of a Gaussian."""

import math

import numpy as np

from cliffconv import approach_a as aa
from cliffconv.special import RadialProfile

for spec in (aa.classical(), aa.clifford_minus(), aa.fractional_cft(math.pi / 2, math.pi / 4)):
    f = RadialProfile.sample(aa.hermite_radial(4, "even", 1, 1))
    h = aa.radial_transform(spec, f, 1, "even")
    ev = aa.eigenvalue_A(spec, "even", 1, 1)
    gap = np.max(np.abs(h.values - ev * f.values))
    print(f"{spec.name:32s} eigenvalue on (2, 1): {ev.real:+.4f}{ev.imag:+.4f}i, gap {gap:.1e}")

spec = aa.fractional_cft(math.pi / 3, math.pi / 4)
c = aa.sphere_integral_check(spec, 1.5, [0.4, -0.2, 0.9, 0.1], [0.3, 0.5, -0.6, 0.2])
print(f"sphere integral at alpha = pi/3: gap {c.gap:.1e}, bivector part {c.wedge:.1e}")

gauss = RadialProfile.sample(lambda r: np.exp(-r**2 / 2))
y = np.array([1.0, 0.5, 0.0, -0.5])
x = np.array([[0.0, 0.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0]])
print("translate of a Gaussian:", np.round(aa.translate_radial(aa.classical(), gauss, y, x).real, 12),
      "shifted Gaussian:", np.round(np.exp(-np.sum((x - y) ** 2, 1) / 2), 12))
