from fractions import Fraction as F

import numpy as np
import pytest

from eigenconfig.binaryec import (build_ed, build_ell_map, conjectured_ec_dimension, ec_dimension_estimate,
                                  ec_membership, ed_membership, ell_forms, form_from_points, kernel_knd,
                                  matrix_compatibility, rational_rotation, recover_tensor, symmetric_representable)
from eigenconfig.eigensys import Tensor, random_tensor, tensor_from_form
from eigenconfig.polycore import HomogeneousForm, binary_form_roots, hausdorff
from eigenconfig.solver import solve_binary


def proportional(f, g):
    a = [F(f.coefficient(e)) for e in sorted(set(f.terms) | set(g.terms))]
    b = [F(g.coefficient(e)) for e in sorted(set(f.terms) | set(g.terms))]
    return all(x * b[0] == y * a[0] for x, y in zip(a, b)) and (any(a) == any(b))


def test_ell_map_cubic_pattern():
    rng = np.random.default_rng(0)
    A = random_tensor(2, 3, rng)
    a = lambda i, j, k: A[(i - 1, j - 1, k - 1)]
    want = HomogeneousForm.from_coefficients(2, 3, [a(2, 1, 1), -(a(1, 1, 1) - a(2, 1, 2) - a(2, 2, 1)),
                                                   a(2, 2, 2) - a(1, 1, 2) - a(1, 2, 1), -a(1, 2, 2)])
    got = ell_forms(A)[0]
    assert proportional(got, want)
    # our wedge orientation gives the scalar -1
    assert got == want * -1


def test_ell_map_matrix_pattern():
    a, b, c = 5, 2, -3
    f = ell_forms(Tensor(2, 2, [a, b, b, c]))[0]
    assert f == HomogeneousForm.from_coefficients(2, 2, [-b, a - c, b])


def test_ell_map_symmetric_same_for_all_k():
    phi = HomogeneousForm.from_coefficients(2, 4, [F(v) for v in (1, -2, 3, 5, -7)])
    forms = ell_forms(tensor_from_form(phi))
    assert all(f == forms[0] for f in forms)


def test_ell_map_shape_general_n():
    M = build_ell_map(3, 3, 2)
    assert M.shape == (3 * 10, 27)


@pytest.mark.parametrize("d,dim", [(2, 1), (3, 0), (4, 3), (5, 10)])
def test_kernel_binary(d, dim):
    assert kernel_knd(2, d)[0] == dim


def test_kernel_matrix_case_is_identity():
    for n in (2, 3, 4):
        dim, K = kernel_knd(n, 2)
        assert dim == 1
        v = np.array([float(c) for c in K[:, 0]]).reshape(n, n)
        assert np.allclose(v / v[0, 0], np.eye(n))


def test_kernel_ternary_cubic_recorded_value():
    assert kernel_knd(3, 3)[0] == 1


@pytest.mark.parametrize("d,shape", [(2, (2, 3)), (3, (3, 4)), (4, (4, 7)), (5, (5, 8)), (6, (6, 11))])
def test_ed_shapes(d, shape):
    E = build_ed(d)
    assert E.shape == shape
    assert E.e == kernel_knd(2, d)[0] + d * (d + 1) - 2 ** d


def test_ed_rows_use_own_block_only():
    E = build_ed(3)
    assert E.coeffs.shape == (3, 4, 4)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_membership_forward_and_recovery(d):
    rng = np.random.default_rng(d)
    for _ in range(10):
        A = random_tensor(2, d, rng)
        forms = ell_forms(A)
        ok, B = ec_membership(d, forms, seed=1)
        assert ok and ed_membership(build_ed(d), forms)
        for f, g in zip(forms, ell_forms(B)):
            assert proportional(f, g)
        for k in range(1, d + 1):
            P = solve_binary(A, k=k).projective_points
            Q = solve_binary(B, k=k).projective_points
            assert hausdorff(P, Q) < 1e-8


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_membership_rejects_perturbation(d):
    rng = np.random.default_rng(100 + d)
    rejected = 0
    for _ in range(20):
        forms = ell_forms(random_tensor(2, d, rng))
        m = max(abs(c) for c in forms[0].terms.values())
        noise = [F(int(v), 10 ** 8) * m for v in rng.integers(-10 ** 6, 10 ** 6, d + 1)]
        forms[0] = forms[0] + HomogeneousForm.from_coefficients(2, d, noise)
        ok, _ = ec_membership(d, forms, seed=2)
        rejected += not ok
    assert rejected >= 19


def test_matrix_case_requires_reversed_alternating_match():
    # for d = 2 the two forms are -+ reversals of each other
    f = HomogeneousForm.from_coefficients(2, 2, [F(1), F(2), F(3)])
    g_bad = HomogeneousForm.from_coefficients(2, 2, [F(1), F(5), F(7)])
    assert not ec_membership(2, [f, g_bad])[0]
    A = random_tensor(2, 2, np.random.default_rng(7))
    assert ec_membership(2, ell_forms(A))[0]


def test_recover_tensor_none_on_reject():
    f = HomogeneousForm.from_coefficients(2, 2, [F(1), F(2), F(3)])
    g = HomogeneousForm.from_coefficients(2, 2, [F(1), F(5), F(7)])
    assert recover_tensor(2, [f, g]) is None


def test_matrix_compatibility():
    I = np.eye(3).tolist()
    assert matrix_compatibility(I, I)[0]
    rng = np.random.default_rng(8)
    M = rng.standard_normal((4, 4))
    V = M.T.tolist()
    W = np.linalg.inv(M).tolist()
    ok, match = matrix_compatibility(V, W)
    assert ok and sorted(match) == [0, 1, 2, 3]
    W2 = rng.standard_normal((4, 4)).tolist()
    assert not matrix_compatibility(V, W2)[0]
    with pytest.raises(ValueError):
        matrix_compatibility([[1, 0], [2, 0]], I[:2])


def test_matrix_compatibility_from_eigenvectors():
    rng = np.random.default_rng(9)
    A = rng.standard_normal((3, 3))
    _, R = np.linalg.eig(A)
    _, L = np.linalg.eig(A.T)
    assert matrix_compatibility(R.T.tolist(), L.T.tolist())[0]


def test_symmetric_representable_examples():
    cols = [[1, 0], [0, 1], [1, 1], [1, -1]]
    assert symmetric_representable(cols)
    sheared = [[u + v, v] for u, v in cols]
    assert not symmetric_representable(sheared)
    assert symmetric_representable([[F(3), F(1)], [F(-1), F(3)]])
    assert symmetric_representable([[1, 2], [3, 4], [5, 7]])


@pytest.mark.parametrize("d", [4, 6])
def test_symmetric_roundtrip_exact_and_float(d):
    rng = np.random.default_rng(d)
    for _ in range(10):
        phi = HomogeneousForm.from_coefficients(2, d, [F(int(v)) for v in rng.integers(-9, 10, d + 1)])
        conf = solve_binary(tensor_from_form(phi))
        assert symmetric_representable(conf.projective_points)
        u, v = (HomogeneousForm.variable(2, i) for i in range(2))
        g = phi.gradient()
        assert symmetric_representable(u * g[1] - v * g[0])


def test_symmetric_rotation_invariance():
    pts = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)], [F(1), F(-1)]]
    sheared = [[u + v, v] for u, v in pts]
    for p, q in ((2, 1), (3, 2), (4, 1)):
        R = rational_rotation(p, q)
        rot = lambda P: [[R[0][0] * u + R[0][1] * v, R[1][0] * u + R[1][1] * v] for u, v in P]
        assert symmetric_representable(rot(pts))
        assert not symmetric_representable(rot(sheared))


def test_form_from_points_zeros():
    f = form_from_points([[F(1), F(2)], [F(0), F(1)], [F(3), F(-1)]])
    roots = [p for p, _ in binary_form_roots(f)]
    assert hausdorff(roots, [np.array([1, 2]), np.array([0, 1]), np.array([3, -1])]) < 1e-12


@pytest.mark.parametrize("d,dim", [(2, 2), (3, 7), (4, 12), (5, 21)])
def test_dimension_estimate(d, dim):
    assert ec_dimension_estimate(d, seed=0) == dim
    assert conjectured_ec_dimension(d) == dim
