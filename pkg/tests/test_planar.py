from fractions import Fraction as F

import numpy as np
import pytest

from eigenconfig.eigensys import fermat_eigenpoints, random_form, random_tensor, tensor_from_form
from eigenconfig.planar import (DEPENDENT_LINEAR_COLUMN, EIGENCONFIGURATION, NOT_ENOUGH_GENERATORS,
                                eig_dimension_check, five_equations, hesse_eigenpoints, hesse_form,
                                hesse_real_root_count, is_eigenconfiguration, is_symmetric_eigenconfiguration,
                                no_six_on_conic, vanishing_forms)
from eigenconfig.polycore import HomogeneousForm, ProjectivePoint, hausdorff, monomials, numeric_rank
from eigenconfig.solver import solve_ternary

X, Y, Z = (HomogeneousForm.variable(3, i) for i in range(3))
CREMONA = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [-1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]


def rational_points(rng, k):
    out = []
    while len(out) < k:
        p = [F(int(v)) for v in rng.integers(-9, 10, 3)]
        if any(p) and all(ProjectivePoint(p).distance(ProjectivePoint(q)) > 0 for q in out):
            out.append(p)
    return out


def conic_six(rng):
    ts = list(range(-3, 3))
    return [[F(t * t), F(t), F(1)] for t in ts] + [[F(5), F(-7), F(2)]]


def coeff_scale_error(phi, psi):
    """Distance between two forms after matching scale."""
    mons = monomials(3, phi.degree)
    a = np.array([complex(phi.coefficient(e)) for e in mons])
    b = np.array([complex(psi.coefficient(e)) for e in mons])
    a, b = a / a[np.argmax(np.abs(a))], b / b[np.argmax(np.abs(a))]
    return float(np.max(np.abs(a - b)))


def test_no_six_on_conic_examples():
    rng = np.random.default_rng(0)
    assert not no_six_on_conic(conic_six(rng))
    assert no_six_on_conic(rational_points(rng, 7))
    assert no_six_on_conic([[F(c) for c in p] for p in CREMONA])


def test_repeated_points_rejected():
    with pytest.raises(ValueError):
        no_six_on_conic([[1, 0, 0]] * 2 + CREMONA[:5])
    with pytest.raises(ValueError):
        is_eigenconfiguration([[1, 2, 3], [2, 4, 6]] + CREMONA[:5], 3)


def test_vanishing_forms_examples():
    rng = np.random.default_rng(1)
    assert len(vanishing_forms(rational_points(rng, 7), 3)) == 3
    line = [[F(1), F(2), F(3)], [F(2), F(1), F(0)], [F(3), F(3), F(3)]]
    (f,) = vanishing_forms(line, 1)
    assert all(f.evaluate(p) == 0 for p in line)
    Zc = conic_six(rng)[:6] + [[F(2), F(3), F(5)]]
    basis = vanishing_forms(Zc, 3)
    C = Y * Y - X * Z
    mons = monomials(3, 3)
    M = [[float(b.coefficient(e)) for e in mons] for b in basis]
    for L in (X * 3 - Y * 5 + Z * 2, Y * 5 - Z * 3):
        # C times the lines through the extra point lies in the span
        if L.evaluate([2, 3, 5]) == 0:
            v = [float((C * L).coefficient(e)) for e in mons]
            assert numeric_rank(np.array(M + [v])) == len(M)


def test_cremona_configuration_recognized():
    res = is_eigenconfiguration([[F(c) for c in p] for p in CREMONA], 3)
    assert res.verdict == EIGENCONFIGURATION and res.verified


@pytest.mark.parametrize("d", [3, 4])
def test_forward_generated(d):
    rng = np.random.default_rng(d)
    for _ in range(3):
        A = random_tensor(3, d, rng)
        Zs = solve_ternary(A).projective_points
        res = is_eigenconfiguration(Zs, d)
        assert res.verdict == EIGENCONFIGURATION and res.verified
        back = solve_ternary(res.tensor).projective_points
        assert hausdorff(back, Zs) < 1e-8


def test_six_on_conic_rejected():
    res = is_eigenconfiguration(conic_six(np.random.default_rng(2)), 3)
    assert res.verdict in (DEPENDENT_LINEAR_COLUMN, NOT_ENOUGH_GENERATORS)


def test_dependent_linear_column_detected():
    rng = np.random.default_rng(3)
    res = is_eigenconfiguration(conic_six(rng), 3)
    assert res.verdict == DEPENDENT_LINEAR_COLUMN


def test_four_collinear_rejected():
    Zs = [[F(1), F(0), F(1)], [F(2), F(0), F(1)], [F(3), F(0), F(1)], [F(4), F(0), F(1)],
          [F(0), F(1), F(1)], [F(1), F(5), F(1)], [F(7), F(2), F(3)]]
    assert not no_six_on_conic(Zs)
    assert not is_eigenconfiguration(Zs, 3).accepted


def test_equivalence_mixed():
    rng = np.random.default_rng(4)
    for i in range(6):
        if i % 2:
            Zs = solve_ternary(random_tensor(3, 3, rng)).projective_points
        else:
            Zs = rational_points(rng, 7)
        assert is_eigenconfiguration(Zs, 3).accepted == no_six_on_conic(Zs)


def test_five_equations_vanish_on_gradients():
    rng = np.random.default_rng(5)
    for _ in range(10):
        phi = random_form(3, 3, rng)
        assert all(e == 0 for e in five_equations(phi.gradient()))


def test_symmetric_roundtrip():
    rng = np.random.default_rng(6)
    for _ in range(3):
        phi = random_form(3, 3, rng)
        res = is_symmetric_eigenconfiguration(solve_ternary(phi).projective_points)
        assert res.symmetric
        assert coeff_scale_error(phi, res.phi) < 1e-8


def test_symmetric_rejects_general():
    rng = np.random.default_rng(7)
    for _ in range(3):
        Zs = solve_ternary(random_tensor(3, 3, rng)).projective_points
        assert not is_symmetric_eigenconfiguration(Zs).symmetric


def test_hesse_configuration_is_symmetric():
    pts = hesse_eigenpoints(F(1), F(2), F(-3), F(1, 2))
    res = is_symmetric_eigenconfiguration(pts)
    assert res.symmetric
    assert coeff_scale_error(hesse_form(1, 2, -3, F(1, 2)), res.phi) < 1e-8


def test_hesse_fermat_specialization():
    assert hausdorff(hesse_eigenpoints(1, 1, 1, 0), fermat_eigenpoints(3, 3)) == 0


def test_hesse_weighted_fermat():
    pts = hesse_eigenpoints(F(1), F(2), F(4), F(0))
    assert hausdorff(pts, solve_ternary(hesse_form(F(1), F(2), F(4), F(0))).projective_points) < 1e-10


def test_hesse_matches_solver():
    rng = np.random.default_rng(8)
    for _ in range(4):
        a, b, c, h = (F(int(v), 7) for v in rng.integers(-20, 21, 4))
        if h == 0 or a * b * c == 0 or a * a == h * h or c * c == h * h:
            continue
        ours = hesse_eigenpoints(a, b, c, h)
        conf = solve_ternary(hesse_form(a, b, c, h))
        assert hausdorff(ours, conf.projective_points) < 1e-6


def test_hesse_real_points():
    rng = np.random.default_rng(9)
    for _ in range(100):
        a, b, c, h = rng.standard_normal(4)
        assert hesse_real_root_count(a, b, c, h) >= 2
        assert sum(p.is_real() for p in hesse_eigenpoints(a, b, c, h)) >= 5


def test_hesse_degree_drop_appends_limit_point():
    pts = hesse_eigenpoints(F(1), F(2), F(3), F(1))
    assert len(pts) == 7
    e1 = ProjectivePoint([1, 0, 0])
    assert sum(p.distance(e1) < 1e-12 for p in pts) == 2


def test_hesse_degenerate_rejected():
    with pytest.raises(ValueError):
        hesse_eigenpoints(0, 1, 1, 0)


@pytest.mark.parametrize("d,sym,want", [(3, False, 14), (3, True, 9), (4, False, 23)])
def test_dimension_check(d, sym, want):
    assert eig_dimension_check(d, sym, seed=0) == want


@pytest.mark.parametrize("a,b,c,h", [(2, 3, 2, 1), (2, 3, -2, 1), (F(3, 7), F(-1, 7), F(3, 7), F(5, 7))])
def test_hesse_equal_outer_coefficients(a, b, c, h):
    # a = +-c makes chi = +-1 a double root of the quartic
    a, b, c, h = (F(v) for v in (a, b, c, h))
    pts = hesse_eigenpoints(a, b, c, h)
    assert len(pts) == 7
    assert hausdorff(pts, solve_ternary(hesse_form(a, b, c, h)).projective_points) < 1e-10
