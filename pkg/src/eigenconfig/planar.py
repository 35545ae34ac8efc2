"""Recognizing eigenconfigurations of d^2-d+1 points in the projective plane."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .eigensys import EigenSystem, Tensor, fermat_eigenpoints, psi_map
from .polycore import (HomogeneousForm, ProjectivePoint, exact_rank, hausdorff, is_exact, monomial_index,
                       monomials, nullspace, numeric_rank, poly_trim, sturm_real_root_count, to_exact,
                       binary_form_roots, poly_divmod, univariate_roots)
from .solver import solve_homotopy, solve_ternary, CompiledSystem

EIGENCONFIGURATION = "eigenconfiguration"
NOT_ENOUGH_GENERATORS = "notEnoughGenerators"
DEPENDENT_LINEAR_COLUMN = "dependentLinearColumn"


def _coords(p):
    return list(p.coords) if isinstance(p, ProjectivePoint) else list(p)


def _exact_points(points):
    return all(is_exact(c) for p in points for c in _coords(p))


def _as_rows(points):
    pts = [_coords(p) for p in points]
    if _exact_points(points):
        return [[to_exact(c) for c in p] for p in pts], True
    return [[complex(c) for c in p] for p in pts], False


def _normalize_rows(rows):
    out = []
    for r in rows:
        a = np.array(r, dtype=complex)
        out.append(a / np.max(np.abs(a)))
    return out


def _check_distinct(rows, exact):
    for p in rows:
        if all(c == 0 for c in p):
            raise ValueError("the zero vector is not a projective point")
    for p, q in itertools.combinations(rows, 2):
        if exact:
            same = all(p[i] * q[j] == p[j] * q[i] for i in range(3) for j in range(3))
        else:
            same = ProjectivePoint(p).distance(ProjectivePoint(q)) < 1e-8
        if same:
            raise ValueError("repeated points")


def evaluation_matrix(points, degree):
    rows, exact = _as_rows(points)
    mons = monomials(3, degree)
    if not exact:
        rows = _normalize_rows(rows)
    M = []
    for p in rows:
        row = []
        for e in mons:
            v = Fraction(1) if exact else 1 + 0j
            for c, a in zip(p, e):
                v *= c ** a
            row.append(v)
        M.append(row)
    return M, exact


def no_six_on_conic(points, rtol: float = 1e-9) -> bool:
    """True iff every six of the seven points impose independent conditions on conics."""
    pts = list(points)
    if len(pts) != 7:
        raise ValueError("need exactly 7 points")
    rows, exact = _as_rows(pts)
    _check_distinct(rows, exact)
    M, exact = evaluation_matrix(pts, 2)
    for six in itertools.combinations(range(7), 6):
        sub = [M[i] for i in six]
        if exact:
            if exact_rank(sub) < 6:
                return False
        else:
            A = np.array(sub, dtype=complex)
            A = A / np.linalg.norm(A, axis=1, keepdims=True)
            if numeric_rank(A, rtol) < 6:
                return False
    return True


def vanishing_forms(points, degree, rtol: float = 1e-10) -> list[HomogeneousForm]:
    """Basis of the degree-`degree` forms vanishing at all the points."""
    M, exact = evaluation_matrix(points, degree)
    K = nullspace(M, exact=exact, rtol=rtol) if M else np.eye(len(monomials(3, degree)))
    out = []
    for j in range(K.shape[1]):
        col = [K[i, j] for i in range(K.shape[0])]
        if not exact:
            col = [complex(c) for c in col]
            m = max(col, key=abs)
            col = [c / m for c in col]
            col = [0 if abs(c) < 1e-14 else c for c in col]
        out.append(HomogeneousForm.from_coefficients(3, degree, col))
    return out


@dataclass
class HilbertBurchResult:
    verdict: str
    generators: list = field(default_factory=list)
    syzygy_linear: list | None = None
    psi: list | None = None
    tensor: Tensor | None = None
    reason: str = ""
    verified: bool | None = None

    @property
    def accepted(self) -> bool:
        return self.verdict == EIGENCONFIGURATION

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason, "verified": self.verified}
        if self.psi is not None:
            out["psi"] = [f.to_json() for f in self.psi]
        if self.tensor is not None:
            out["tensor"] = self.tensor.to_json()
        return out


def _form_matrix(forms, degree):
    """Columns are coefficient vectors of the given forms (all of one degree)."""
    idx = monomial_index(3, degree)
    exact = all(f.exact for f in forms)
    zero = Fraction(0) if exact else 0j
    M = [[zero] * len(forms) for _ in idx]
    for j, f in enumerate(forms):
        for e, c in f.terms.items():
            M[idx[e]][j] = c
    return M, exact


def _solve_linear(M, rhs, exact):
    """A solution of M v = rhs (None if inconsistent)."""
    if exact:
        aug = [list(row) + [-r] for row, r in zip(M, rhs)]
        K = nullspace(aug, exact=True)
        last = len(aug[0]) - 1
        for j in range(K.shape[1]):
            if K[last, j] != 0:
                return [K[i, j] / K[last, j] for i in range(last)]
        return None
    A = np.array(M, dtype=complex)
    b = np.array(rhs, dtype=complex)
    v, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.linalg.norm(A @ v - b) > 1e-8 * max(1.0, np.linalg.norm(b)):
        return None
    return list(v)


def tensor_from_psi(psi: list[HomogeneousForm]) -> Tensor:
    """A tensor with psi^[1] = psi, symmetric in its last d-1 indices."""
    n = len(psi)
    d = psi[0].degree + 1
    exact = all(f.exact for f in psi)
    entries = []
    from math import factorial
    for idx in itertools.product(range(n), repeat=d):
        e = [0] * n
        for i in idx[1:]:
            e[i] += 1
        m = factorial(d - 1)
        for a in e:
            m //= factorial(a)
        c = psi[idx[0]].coefficient(e)
        entries.append(Fraction(c) / m if exact else complex(c) / m)
    return Tensor(n, d, entries, "rational" if exact else "float")


def is_eigenconfiguration(points, d: int, verify: bool = True, seed: int = 0) -> HilbertBurchResult:
    """Hilbert-Burch test: three degree-d generators with an independent linear syzygy."""
    pts = list(points)
    if len(pts) != d * d - d + 1:
        raise ValueError(f"need {d * d - d + 1} points for d = {d}")
    rows, exact = _as_rows(pts)
    _check_distinct(rows, exact)
    F = vanishing_forms(pts, d)
    if len(F) != 3:
        return HilbertBurchResult(NOT_ENOUGH_GENERATORS, F, reason=f"{len(F)} forms of degree {d} vanish")
    # linear syzygy sum_i L_i F_i = 0 with L_i = sum_j N_ij x_j
    xs = [HomogeneousForm.variable(3, j) for j in range(3)]
    prods = [xs[j] * F[i] for i in range(3) for j in range(3)]
    M, ex = _form_matrix(prods, d + 1)
    K = nullspace(M, exact=ex)
    if K.shape[1] != 1:
        return HilbertBurchResult(NOT_ENOUGH_GENERATORS, F,
                                  reason=f"{K.shape[1]} independent linear syzygies (need 1)")
    Nv = [K[k, 0] for k in range(9)]
    N = [[Nv[3 * i + j] for j in range(3)] for i in range(3)]
    L = [sum((xs[j] * N[i][j] for j in range(3)), HomogeneousForm(3, 1)) for i in range(3)]
    rank = exact_rank(N) if ex else numeric_rank(np.array(N, dtype=complex), 1e-8)
    if rank < 3:
        return HilbertBurchResult(DEPENDENT_LINEAR_COLUMN, F, L, reason="linear syzygy entries are dependent")
    # G = N^T F satisfies x G1 + y G2 + z G3 = 0; write G = (x, y, z) x psi
    G = [sum((F[i] * N[i][j] for i in range(3)), HomogeneousForm(3, d)) for j in range(3)]
    mons = monomials(3, d - 1)
    m = len(mons)
    # unknown psi_k coefficients; columns for (k, monomial)
    cols = []
    for k in range(3):
        for e in mons:
            mono = HomogeneousForm.monomial(e, 1)
            # contribution of psi_k to (y psi3 - z psi2, z psi1 - x psi3, x psi2 - y psi1)
            comp = [HomogeneousForm(3, d)] * 3
            if k == 0:
                comp = [HomogeneousForm(3, d), xs[2] * mono, -(xs[1] * mono)]
            elif k == 1:
                comp = [-(xs[2] * mono), HomogeneousForm(3, d), xs[0] * mono]
            else:
                comp = [xs[1] * mono, -(xs[0] * mono), HomogeneousForm(3, d)]
            cols.append(comp)
    idx = monomial_index(3, d)
    nd = len(idx)
    zero = Fraction(0) if ex else 0j
    A = [[zero] * (3 * m) for _ in range(3 * nd)]
    for c, comp in enumerate(cols):
        for r, f in enumerate(comp):
            for e, v in f.terms.items():
                A[r * nd + idx[e]][c] = v
    rhs = [zero] * (3 * nd)
    for r in range(3):
        for e, v in G[r].terms.items():
            rhs[r * nd + idx[e]] = v
    sol = _solve_linear(A, rhs, ex)
    if sol is None:
        return HilbertBurchResult(NOT_ENOUGH_GENERATORS, F, L, reason="generators are not minors of a 2x3 matrix")
    psi = [HomogeneousForm.from_coefficients(3, d - 1, sol[k * m:(k + 1) * m]) for k in range(3)]
    if not ex:
        psi = [_clean(f) for f in psi]
    A_t = tensor_from_psi(psi)
    res = HilbertBurchResult(EIGENCONFIGURATION, F, L, psi, A_t)
    if verify:
        res.verified = _verify(A_t, pts, seed)
        if not res.verified:
            res.verdict = NOT_ENOUGH_GENERATORS
            res.reason = "recovered tensor has a different eigenconfiguration"
    return res


def _clean(f: HomogeneousForm) -> HomogeneousForm:
    m = max((abs(c) for c in f.terms.values()), default=0)
    return HomogeneousForm(f.nvars, f.degree, {e: c for e, c in f.terms.items() if abs(c) > 1e-13 * m})


def _verify(A: Tensor, pts, seed, tol: float = 1e-6) -> bool:
    conf = solve_ternary(A, seed=seed)
    Z = [p if isinstance(p, ProjectivePoint) else ProjectivePoint(_coords(p)) for p in pts]
    return (not conf.positive_dimensional and conf.count() == len(Z)
            and hausdorff(conf.projective_points, Z) < tol)


# ---------------------------------------------------------------------------
# symmetric case


def five_equations(psi: list[HomogeneousForm]) -> list:
    """The five linear conditions on quadrics psi for a ternary cubic to exist."""
    a = psi[0].coefficients()
    b = psi[1].coefficients()
    c = psi[2].coefficients()
    # coefficient order x^2, xy, xz, y^2, yz, z^2 -> indices 0..5 (a_1..a_6)
    a1, a2, a3, a4, a5, a6 = a
    b1, b2, b3, b4, b5, b6 = b
    c1, c2, c3, c4, c5, c6 = c
    return [a5 - b3, b3 - c2, 2 * a4 - 2 * a6 - b2 + c3, 2 * b6 - 2 * b1 - c5 + a2, 2 * c1 - 2 * c4 - a3 + b5]


def form_from_psi(psi: list[HomogeneousForm]):
    """Solve grad(phi) = a psi + f (x, y, z) for phi with a != 0; None if impossible."""
    d = psi[0].degree + 1
    exact = all(f.exact for f in psi)
    xs = [HomogeneousForm.variable(3, j) for j in range(3)]
    mons_phi = monomials(3, d)
    mons_f = monomials(3, d - 2)
    idx = monomial_index(3, d - 1)
    nd = len(idx)
    ncol = len(mons_phi) + len(mons_f) + 1
    zero = Fraction(0) if exact else 0j
    M = [[zero] * ncol for _ in range(3 * nd)]
    for c, e in enumerate(mons_phi):
        g = HomogeneousForm.monomial(e, 1).gradient()
        for k in range(3):
            for ee, v in g[k].terms.items():
                M[k * nd + idx[ee]][c] += v
    for c, e in enumerate(mons_f):
        mono = HomogeneousForm.monomial(e, 1)
        for k in range(3):
            for ee, v in (mono * xs[k]).terms.items():
                M[k * nd + idx[ee]][len(mons_phi) + c] -= v
    for k in range(3):
        for ee, v in psi[k].terms.items():
            M[k * nd + idx[ee]][ncol - 1] -= v
    K = nullspace(M, exact=exact, rtol=1e-9)
    for j in range(K.shape[1]):
        a = K[ncol - 1, j]
        if (a != 0) if exact else abs(a) > 1e-8 * np.max(np.abs(K[:, j].astype(complex))):
            coeffs = [K[i, j] / a for i in range(len(mons_phi))]
            return HomogeneousForm.from_coefficients(3, d, coeffs)
    return None


@dataclass
class SymmetricResult:
    symmetric: bool
    phi: HomogeneousForm | None
    residuals: list
    base: HilbertBurchResult


def is_symmetric_eigenconfiguration(points, tol: float = 1e-8, seed: int = 0) -> SymmetricResult:
    """For seven points: do they come from a ternary cubic? Returns the cubic if so."""
    base = is_eigenconfiguration(points, 3, seed=seed)
    if not base.accepted:
        return SymmetricResult(False, None, [], base)
    eqs = five_equations(base.psi)
    exact = all(f.exact for f in base.psi)
    if exact:
        ok = all(e == 0 for e in eqs)
    else:
        scale = max(abs(c) for f in base.psi for c in f.terms.values())
        ok = max(abs(e) for e in eqs) <= tol * scale
    phi = form_from_psi(base.psi) if ok else None
    if phi is not None and not exact:
        m = max(phi.terms.values(), key=abs)
        phi = HomogeneousForm(3, 3, {e: c / m for e, c in phi.terms.items()})
        phi = _clean(phi)
    return SymmetricResult(ok and phi is not None, phi, eqs, base)


# ---------------------------------------------------------------------------
# Hesse family


def hesse_form(a, b, c, h) -> HomogeneousForm:
    return HomogeneousForm(3, 3, {(3, 0, 0): a, (0, 3, 0): b, (0, 0, 3): c, (1, 1, 1): 3 * h})


def hesse_quartic(a, b, c, h) -> list:
    """Ascending coefficients of the quartic whose roots give the four other eigenpoints."""
    return [h * (c * c - h * h), -c * (b * c + a * h), 2 * (a * b * c + h ** 3), -a * (a * b + c * h),
            h * (a * a - h * h)]


def hesse_real_root_count(a, b, c, h) -> int:
    q = poly_trim([to_exact(v) for v in hesse_quartic(a, b, c, h)])
    return sturm_real_root_count(q)


def hesse_eigenpoints(a, b, c, h) -> list[ProjectivePoint]:
    """The seven eigenpoints of a x^3 + b y^3 + c z^3 + 3 h xyz."""
    params = [a, b, c, h]
    exact = all(is_exact(v) for v in params)
    if not exact and all(abs(complex(v).imag) == 0 for v in params):
        params = [to_exact(complex(v).real) for v in params]
        exact = True
    a, b, c, h = params
    if h == 0:
        if a == 0 or b == 0 or c == 0:
            raise ValueError("degenerate Hesse parameters: a coordinate cubic term vanishes")
        if a == b == c:
            return fermat_eigenpoints(3, 3)
        w = [1 / a, 1 / b, 1 / c] if exact else [1 / complex(a), 1 / complex(b), 1 / complex(c)]
        pts = []
        for size in (1, 2, 3):
            for S in itertools.combinations(range(3), size):
                v = [w[i] if i in S else 0 for i in range(3)]
                pts.append(ProjectivePoint([complex(x) for x in v]))
        return pts
    pts = [ProjectivePoint([1, 0, 0]), ProjectivePoint([0, 1, 0]), ProjectivePoint([0, 0, 1])]
    q = poly_trim(hesse_quartic(a, b, c, h))
    for sgn in (1, -1):
        # when a = +-c the chart x = chi z collapses at chi = +-1, a double root of
        # the quartic; on the line x = sgn z the eigenpoints solve a binary quadratic
        close = a == sgn * c if exact else abs(complex(a) - sgn * complex(c)) <= 1e-12 * abs(complex(a))
        if not close or len(q) < 3:
            continue
        q, rem = poly_divmod(q, [1, -2 * sgn, 1])
        if exact and any(rem):
            raise ValueError("degenerate Hesse parameters: quartic lost its double root")
        yy = HomogeneousForm.from_coefficients(2, 2, [b - sgn * h, -c, sgn * h])
        if yy.is_zero():
            raise ValueError("degenerate Hesse parameters: a line of eigenpoints")
        for pt, mult in binary_form_roots(yy):
            y, w = pt.coords
            pts += [ProjectivePoint([sgn * w, y, w])] * mult
        q = poly_trim(q)
    nreal = sturm_real_root_count(q) if exact and len(q) > 1 else None
    roots = []
    if len(q) > 1:
        for r, mult in univariate_roots(q, exact=exact):
            roots += [r] * mult
    if nreal is not None:
        # snap the roots Sturm certifies as real
        order = sorted(range(len(roots)), key=lambda i: abs(roots[i].imag))
        distinct_real = set()
        for i in order:
            key = round(roots[i].real, 8)
            if len(distinct_real) < nreal or key in distinct_real:
                if abs(roots[i].imag) < 1e-6 * max(1.0, abs(roots[i])):
                    distinct_real.add(key)
                    roots[i] = complex(roots[i].real, 0.0)
    hf, af, cf = complex(h), complex(a), complex(c)
    for chi in roots:
        v = np.array([hf * chi * (chi * chi - 1), chi * (af * chi - cf), hf * (chi * chi - 1)])
        if np.max(np.abs(v)) < 1e-12 * max(1.0, abs(chi)) ** 3:
            raise ValueError("degenerate Hesse parameters: eigenpoint formula collapses")
        pts.append(ProjectivePoint(v))
    for _ in range(7 - len(pts)):
        # a root at infinity: the formula tends to (h : 0 : 0)
        pts.append(ProjectivePoint([1, 0, 0]))
    return pts


# ---------------------------------------------------------------------------
# dimension check


def eig_dimension_check(d: int, symmetric: bool = False, seed: int = 0, rtol: float = 1e-8) -> int:
    """Rank of the differential of (tensor or form) -> eigenpoints at a random instance."""
    if d not in (3, 4, 5):
        raise ValueError("d must be 3, 4 or 5")
    rng = np.random.default_rng(seed)
    xs = [HomogeneousForm.variable(3, j) for j in range(3)]
    if symmetric:
        basis = []
        for e in monomials(3, d):
            basis.append(HomogeneousForm.monomial(e, 1.0).gradient())
    else:
        basis = []
        for k in range(3):
            for e in monomials(3, d - 1):
                psi = [HomogeneousForm(3, d - 1) for _ in range(3)]
                psi[k] = HomogeneousForm.monomial(e, 1.0)
                basis.append(psi)
    theta = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    psi = [sum((b[k] * complex(t) for b, t in zip(basis, theta)), HomogeneousForm(3, d - 1)) for k in range(3)]
    system = EigenSystem(psi)
    conf = solve_homotopy(system, seed=seed)
    csys = CompiledSystem(system.forms)
    dsys = [CompiledSystem(EigenSystem(b).forms) for b in basis]
    rows = []
    for ep in conf.points:
        x = np.array(ep.point.coords)
        k = int(np.argmax(np.abs(x)))
        _, J = csys.eval_jac(x[None, :])
        Jp = np.delete(J[0], k, axis=1)
        Jt = np.stack([ds.eval(x[None, :])[0] for ds in dsys], axis=1)
        dp = -np.linalg.lstsq(Jp, Jt, rcond=None)[0]
        rows.append(dp)
    D = np.vstack(rows)
    return numeric_rank(D, rtol)
