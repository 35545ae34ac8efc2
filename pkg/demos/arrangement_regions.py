"""A product of d generic real lines has only real eigenpoints.

The vertices of the arrangement are eigenpoints, and each region of the real
projective plane carries one more, the maximizer of |phi| on the sphere.
"""
from fractions import Fraction as F

import numpy as np

from eigenconfig.counts import eigen_count, region_count
from eigenconfig.dynamics import LineArrangement, arrangement_eigenconfiguration

rng = np.random.default_rng(1)
for d in range(3, 7):
    while True:
        arr = LineArrangement([[F(int(v)) for v in rng.integers(-9, 10, 3)] for _ in range(d)])
        if arr.generic:
            break
    conf = arrangement_eigenconfiguration(arr)
    print(f"d={d}: {d * (d - 1) // 2} vertices + {region_count(3, d)} regions = {conf.count()} "
          f"(expected {eigen_count(3, d)}), real {len(conf.real_points())}, "
          f"solver agreement {conf.info['crossCheckHausdorff']:.1e}")
