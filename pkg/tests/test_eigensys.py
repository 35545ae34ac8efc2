from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eigenconfig.counts import eigen_count
from eigenconfig.eigensys import (Tensor, eigen_system, eigen_system_from_form, eigenvalue_of, fermat_eigenpoints,
                                  fermat_form, form_from_tensor, psi_map, random_form, random_tensor,
                                  tensor_from_form)
from eigenconfig.polycore import HomogeneousForm, ProjectivePoint, hausdorff

X, Y, Z = (HomogeneousForm.variable(3, i) for i in range(3))


def test_matrix_psi_maps():
    A = Tensor(2, 2, [1, 2, 3, 4])
    u, v = HomogeneousForm.variable(2, 0), HomogeneousForm.variable(2, 1)
    assert psi_map(A, 1) == [u + v * 2, u * 3 + v * 4]
    assert psi_map(A, 2) == [u + v * 3, u * 2 + v * 4]


def test_psi_direct_summation():
    entries = [0] * 8
    entries[4] = 1  # a_{211}
    A = Tensor(2, 3, entries)
    u = HomogeneousForm.variable(2, 0)
    zero = HomogeneousForm(2, 2)
    assert psi_map(A, 1) == [zero, u * u]
    v = HomogeneousForm.variable(2, 1)
    assert psi_map(A, 2) == [u * v, zero]
    assert psi_map(A, 3) == [u * v, zero]


def test_symmetric_psi_independent_of_k():
    A = tensor_from_form(random_form(3, 4, np.random.default_rng(1)))
    base = psi_map(A, 1)
    for k in range(2, 5):
        assert psi_map(A, k) == base
        assert eigen_system(A, 1, k).forms == eigen_system(A, 1, 1).forms


def test_psi_linear():
    rng = np.random.default_rng(2)
    A, B = random_tensor(3, 3, rng), random_tensor(3, 3, rng)
    for k in (1, 2, 3):
        assert psi_map(A + B, k) == [a + b for a, b in zip(psi_map(A, k), psi_map(B, k))]


def test_binary_minor_shape():
    rng = np.random.default_rng(3)
    A = random_tensor(2, 4, rng)
    sysm = eigen_system(A)
    psi = psi_map(A, 1)
    x, y = HomogeneousForm.variable(2, 0), HomogeneousForm.variable(2, 1)
    assert len(sysm.forms) == 1
    assert sysm.forms[0] == x * psi[1] - y * psi[0]


def test_ell_minor_degree():
    A = random_tensor(3, 4, np.random.default_rng(4))
    s = eigen_system(A, ell=2)
    assert all(f.degree == 5 for f in s.forms if not f.is_zero())


def test_identity_matrix_trivial():
    assert eigen_system(Tensor(3, 2, np.eye(3).astype(int).reshape(-1).tolist())).is_trivial()


def test_symmetric_form_system_matches_gradient():
    phi = X * Y * Z + X ** 3
    s = eigen_system_from_form(phi)
    g = phi.gradient()
    assert s.forms[0] == X * g[1] - Y * g[0]


def test_cremona_tensor_entries():
    A = tensor_from_form(X * Y * Z)
    nz = [a for a in A.entries if a != 0]
    assert len(nz) == 6 and all(a == F(1, 6) for a in nz)


def test_cube_tensor():
    A = tensor_from_form(X ** 3)
    assert A[(0, 0, 0)] == 1 and sum(1 for a in A.entries if a != 0) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.integers(0, 10 ** 6))
def test_form_tensor_roundtrip(n, d, seed):
    phi = random_form(n, d, np.random.default_rng(seed))
    A = tensor_from_form(phi)
    assert A.is_symmetric()
    assert form_from_tensor(A) == phi


def test_non_symmetric_rejected():
    with pytest.raises(ValueError):
        form_from_tensor(Tensor(2, 2, [1, 2, 3, 4]))


def test_tensor_json_roundtrip():
    A = random_tensor(3, 3, np.random.default_rng(5))
    assert Tensor.from_json(A.to_json()) == A
    B = A.to_float()
    assert Tensor.from_json(B.to_json()) == B


def test_fermat_binary_quartic():
    want = [ProjectivePoint(c) for c in ([1, 0], [0, 1], [1, 1], [1, -1])]
    assert hausdorff(fermat_eigenpoints(2, 4), want) == 0


def test_fermat_ternary_cubic():
    pts = fermat_eigenpoints(3, 3)
    want = [ProjectivePoint(c) for c in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1],
                                         [1, 1, 1])]
    assert hausdorff(pts, want) == 0


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("d", range(3, 7))
def test_fermat_count_and_residual(n, d):
    pts = fermat_eigenpoints(n, d)
    assert len(pts) == eigen_count(n, d)
    if n >= 2:
        s = eigen_system_from_form(fermat_form(n, d))
        assert max(s.residual(p) for p in pts) < 1e-14


def test_fermat_exact_residual_zero_small_cases():
    for n, d in ((2, 4), (3, 3), (3, 4), (2, 6)):
        s = eigen_system_from_form(fermat_form(n, d))
        assert max(s.residual(p) for p in fermat_eigenpoints(n, d)) == 0


def test_fermat_unsupported():
    with pytest.raises(NotImplementedError):
        fermat_eigenpoints(3, 4, ell=2)
    with pytest.raises(ValueError):
        fermat_eigenpoints(3, 2)


def test_eigenvalues():
    s = eigen_system_from_form(fermat_form(3, 5))
    assert abs(eigenvalue_of(s, [1, 0, 0]) - 5) < 1e-14
    assert eigenvalue_of(eigen_system_from_form(X * Y * Z), [1, 0, 0]) == 0
    with pytest.raises(ValueError):
        eigenvalue_of(s, [1, 2, 0.3])


def test_eigenpair_scaling():
    rng = np.random.default_rng(6)
    A = random_tensor(2, 4, rng)
    from eigenconfig.solver import solve_binary
    conf = solve_binary(A, ell=1)
    s = eigen_system(A)
    p = np.array(conf.points[0].point.coords)
    lam = complex(s.psi[0].evaluate(list(p))) / p[0]
    nu = 1.7 - 0.4j
    q = nu * p
    lam_q = complex(s.psi[0].evaluate(list(q))) / q[0]
    assert abs(lam_q - nu ** (A.d - 2) * lam) < 1e-10 * abs(lam_q)
