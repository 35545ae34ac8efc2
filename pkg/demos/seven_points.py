"""Which seven points in the plane are eigenconfigurations of a ternary cubic?

Exactly those with no six on a conic. The recognizer rebuilds a tensor from
the syzygies of the point ideal, and a symmetric cubic when one exists.
"""
from fractions import Fraction as F

import numpy as np

from eigenconfig.eigensys import random_form
from eigenconfig.planar import is_eigenconfiguration, is_symmetric_eigenconfiguration, no_six_on_conic
from eigenconfig.solver import solve_ternary

rng = np.random.default_rng(3)
general = [[F(int(v)) for v in rng.integers(-9, 10, 3)] for _ in range(7)]
conic = [[F(t * t), F(t), F(1)] for t in range(-3, 3)] + [[F(5), F(-7), F(2)]]
for name, pts in (("random", general), ("six on a conic", conic)):
    res = is_eigenconfiguration(pts, 3)
    print(f"{name}: noSixOnConic={no_six_on_conic(pts)} verdict={res.verdict} verified={res.verified}")

phi = random_form(3, 3, rng)
res = is_symmetric_eigenconfiguration(solve_ternary(phi).projective_points)
print("eigenpoints of a random cubic are symmetric:", res.symmetric)
mons = sorted(phi.terms)
a = np.array([float(phi.coefficient(e)) for e in mons])
b = np.array([complex(res.phi.coefficient(e)) for e in mons])
b = b * a[0] / b[0]
print("recovered cubic matches the original up to scale, max error", float(np.max(np.abs(a - b))))
