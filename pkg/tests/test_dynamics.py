from fractions import Fraction as F

import numpy as np
import pytest

from eigenconfig.counts import eigen_count, region_count
from eigenconfig.dynamics import (LineArrangement, arrangement_eigenconfiguration, arrangement_vertices,
                                  cremona_perturbation, frame_cubic, perturbation_csv, perturbation_experiment,
                                  power_method_run, projective_spectral_radius, region_eigenpoint,
                                  region_representatives, robust_eigenpoints, second_iterate_check,
                                  tangent_gradient)
from eigenconfig.eigensys import fermat_form, random_form
from eigenconfig.polycore import HomogeneousForm, ProjectivePoint, hausdorff

X, Y, Z = (HomogeneousForm.variable(3, i) for i in range(3))
FRAME = [[2, 2, -1], [2, -1, 2], [-1, 2, 2]]


def random_arrangement(rng, d):
    while True:
        arr = LineArrangement([[F(int(v)) for v in rng.integers(-9, 10, 3)] for _ in range(d)])
        if arr.generic:
            return arr


def test_vertices_coordinate_triangle():
    arr = LineArrangement(np.eye(3, dtype=int).tolist())
    want = [ProjectivePoint(r) for r in np.eye(3)]
    assert hausdorff(arrangement_vertices(arr), want) == 0


def test_vertices_frame():
    got = arrangement_vertices(LineArrangement(FRAME))
    want = [ProjectivePoint(r) for r in ([2, 2, -1], [2, -1, 2], [-1, 2, 2])]
    assert hausdorff(got, want) < 1e-15


def test_vertices_count_and_genericity():
    rng = np.random.default_rng(0)
    assert len(arrangement_vertices(random_arrangement(rng, 4))) == 6
    bad = LineArrangement([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert bad.genericity_violation() == (0, 1, 2)
    with pytest.raises(ValueError):
        arrangement_vertices(bad)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_region_count(d):
    arr = random_arrangement(np.random.default_rng(d), d)
    assert len(region_representatives(arr)) == region_count(3, d)


def test_reflection_arrangement_regions():
    arr = LineArrangement([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]])
    assert not arr.generic
    assert len(region_representatives(arr, check_generic=False)) == 12


def test_cremona_region_maximizer():
    arr = LineArrangement(np.eye(3, dtype=int).tolist())
    reg = [r for r in region_representatives(arr) if r[0] == (1, 1, 1)][0]
    assert region_eigenpoint(arr, reg).distance(ProjectivePoint([1, 1, 1])) < 1e-12


def test_frame_region_maximizers():
    arr = LineArrangement(FRAME)
    got = [region_eigenpoint(arr, r) for r in region_representatives(arr)]
    want = [ProjectivePoint(r) for r in ([1, 1, -5], [1, -5, 1], [-5, 1, 1], [3, 3, 3])]
    assert hausdorff(got, want) < 1e-12


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_arrangement_all_real_one_per_region(d):
    arr = random_arrangement(np.random.default_rng(10 + d), d)
    conf = arrangement_eigenconfiguration(arr)
    assert conf.count() == d * d - d + 1 == eigen_count(3, d)
    assert len(conf.real_points()) == conf.count()
    assert conf.info["crossCheckHausdorff"] < 1e-6 and conf.info["solverCount"] == conf.count()
    M = arr.matrix()
    nv = d * (d - 1) // 2
    regions = region_representatives(arr)
    for ep, (signs, _) in zip(conf.points[nv:], regions):
        x = ep.point.coords.real
        assert np.linalg.norm(tangent_gradient(arr, x)) < 1e-9
        s = np.sign(M @ x)
        assert np.all(s == signs) or np.all(s == -np.array(signs))
        assert ep.residual < 1e-8


def test_non_generic_arrangement_refused():
    with pytest.raises(ValueError):
        arrangement_eigenconfiguration(LineArrangement([[1, 0, 0], [0, 1, 0], [1, 1, 0]]))


def test_power_method_fermat():
    phi = fermat_form(3, 3)
    out = power_method_run(phi, [0.2, -0.9, 0.4])
    assert out.kind == "converged" and np.allclose(out.point, [0, 1, 0])


def test_power_method_frame_cycle():
    out = power_method_run(frame_cubic(), [0.3, 0.5, 0.1])
    assert out.kind == "cycle" and len(out.cycle) == 2


def test_power_method_matrix():
    A = np.array([[3.0, 1.0], [1.0, 1.0]])
    phi = HomogeneousForm(2, 2, {(2, 0): 1.5, (1, 1): 1.0, (0, 2): 0.5})  # gradient = A x
    out = power_method_run(phi, [0.3, 0.5])
    w, V = np.linalg.eigh(A)
    v = V[:, -1] * np.sign(V[0, -1])
    assert out.kind == "converged" and np.allclose(out.point, v, atol=1e-10)


def test_power_method_base_locus():
    assert power_method_run(X * Y * Z, [0.0, 0.6, 0.8]).kind == "baseLocus"


def test_power_method_budget():
    out = power_method_run(X * Y * Z, [0.3, 0.5, 0.1], max_iter=1, cycle_window=1)
    assert out.kind == "budgetExceeded"


def test_power_method_sign_conjugation():
    rng = np.random.default_rng(3)
    phi = random_form(3, 3, rng)
    v0 = rng.standard_normal(3)
    a = power_method_run(phi, v0, max_iter=50)
    b = power_method_run(phi, -v0, max_iter=50)
    assert a.kind == b.kind and a.iterations == b.iterations
    if a.point is not None:
        assert np.allclose(a.point, b.point)


def test_root_variant_runs():
    out = power_method_run(fermat_form(3, 3), [0.2, -0.9, 0.4], ell=2, root=True)
    assert out.kind == "converged"


def test_robust_fermat():
    res = robust_eigenpoints(fermat_form(3, 3), samples=300, seed=1)
    got = [p for p, _, _ in res]
    assert hausdorff(got, [ProjectivePoint(r) for r in np.eye(3)]) < 1e-12
    assert sum(b for _, b, _ in res) > 0.99
    assert all(rho < 1 for _, _, rho in res)


def test_robust_frame_and_cremona():
    assert robust_eigenpoints(frame_cubic(), samples=100) == []
    assert robust_eigenpoints(X * Y * Z, samples=100) == []


def test_spectral_radius_repelling():
    # (1:1:0)/sqrt2 is a fixed point of the Fermat cubic map but repels
    assert projective_spectral_radius(fermat_form(3, 3), [1, 1, 0]) > 1


def test_second_iterate():
    ok, c = second_iterate_check(frame_cubic())
    assert ok and c == 729
    assert second_iterate_check(X * Y * Z) == (True, 1)
    rng = np.random.default_rng(4)
    assert not second_iterate_check(random_form(3, 3, rng))[0]


def test_perturbation_lines():
    rows = perturbation_experiment(X * Y * Z, random_form(3, 3, np.random.default_rng(5)), [F(1, 1000)])
    assert rows == [(F(1, 1000), 7, 7)]
    text = perturbation_csv(rows)
    assert text.splitlines() == ["epsilon,total,real", "1/1000,7,7"]


def test_perturbation_frame_reports():
    rows = perturbation_experiment(frame_cubic(), random_form(3, 3, np.random.default_rng(6)), [F(1, 100), F(1)])
    assert all(total == 7 for _, total, _ in rows)


def test_cremona_perturbation_direction():
    g = cremona_perturbation()
    assert g.degree == 4 and len(g.terms) == 33
