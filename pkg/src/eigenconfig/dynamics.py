"""Real eigenpoints: line arrangements, the tensor power method and robustness."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .eigensys import EigenSystem, Tensor, eigen_system, psi_map
from .polycore import HomogeneousForm, ProjectivePoint, hausdorff, is_exact, to_exact
from .solver import EigenConfiguration, EigenPoint, NumericalFailure, solve_homotopy, solve_ternary


class LineArrangement:
    """d real linear forms in three variables."""

    def __init__(self, forms):
        rows = []
        for f in forms:
            if isinstance(f, HomogeneousForm):
                if f.degree != 1 or f.nvars != 3:
                    raise ValueError("lines must be linear forms in x, y, z")
                rows.append([f.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
            else:
                rows.append(list(f))
        if any(len(r) != 3 for r in rows):
            raise ValueError("each line needs 3 coefficients")
        self.exact = all(is_exact(c) for r in rows for c in r)
        if self.exact:
            self.rows = [[to_exact(c) for c in r] for r in rows]
        else:
            self.rows = [[float(c) for c in r] for r in rows]
        if any(all(c == 0 for c in r) for r in self.rows):
            raise ValueError("zero linear form")
        self.d = len(self.rows)

    @property
    def forms(self) -> list[HomogeneousForm]:
        return [HomogeneousForm(3, 1, {e: c for e, c in zip(((1, 0, 0), (0, 1, 0), (0, 0, 1)), r)})
                for r in self.rows]

    def product(self) -> HomogeneousForm:
        out = HomogeneousForm(3, 0, {(0, 0, 0): Fraction(1) if self.exact else 1.0})
        for f in self.forms:
            out = out * f
        return out

    def matrix(self) -> np.ndarray:
        return np.array([[float(c) for c in r] for r in self.rows])

    def _det(self, a, b, c):
        if self.exact:
            return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0]))
        M = np.array([a, b, c], dtype=float)
        return np.linalg.det(M / np.linalg.norm(M, axis=1, keepdims=True))

    def genericity_violation(self):
        """None if generic, else the first offending pair or triple of indices."""
        for i, j in itertools.combinations(range(self.d), 2):
            if _cross_is_zero(self.rows[i], self.rows[j], self.exact):
                return (i, j)
        for t in itertools.combinations(range(self.d), 3):
            v = self._det(*(self.rows[i] for i in t))
            if (v == 0) if self.exact else abs(v) < 1e-12:
                return t
        return None

    @property
    def generic(self) -> bool:
        return self.genericity_violation() is None

    def to_json(self):
        return {"lines": [[str(c) if self.exact else c for c in r] for r in self.rows]}


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _cross_is_zero(a, b, exact):
    v = _cross(a, b)
    if exact:
        return all(c == 0 for c in v)
    return np.linalg.norm(v) < 1e-12 * np.linalg.norm(a) * np.linalg.norm(b)


def _require_generic(arr: LineArrangement):
    bad = arr.genericity_violation()
    if bad is not None:
        raise ValueError(f"arrangement is not generic: lines {bad}")


def arrangement_vertices(arr: LineArrangement) -> list[ProjectivePoint]:
    _require_generic(arr)
    out = []
    for i, j in itertools.combinations(range(arr.d), 2):
        v = _cross(arr.rows[i], arr.rows[j])
        out.append(ProjectivePoint([complex(float(c)) for c in v]))
    return out


def region_representatives(arr: LineArrangement, check_generic: bool = True):
    """(sign vector, unit interior point) for every region, up to the global sign flip."""
    if check_generic:
        _require_generic(arr)
    M = arr.matrix()
    Mn = M / np.linalg.norm(M, axis=1, keepdims=True)
    out = []
    for signs in itertools.product((1, -1), repeat=arr.d - 1):
        s = np.array((1,) + signs, dtype=float)
        # maximize t subject to s_i <L_i, x> >= t, |x_j| <= 1
        c = np.zeros(4)
        c[3] = -1.0
        A_ub = np.hstack([-(s[:, None] * Mn), np.ones((arr.d, 1))])
        res = linprog(c, A_ub=A_ub, b_ub=np.zeros(arr.d), bounds=[(-1, 1)] * 3 + [(None, 1)], method="highs")
        if res.status == 0 and -res.fun > 1e-9:
            x = res.x[:3]
            out.append((tuple(int(v) for v in s), x / np.linalg.norm(x)))
    return out


def _log_objective(Mn, x):
    return float(np.sum(np.log(np.abs(Mn @ x))) - len(Mn) * np.log(np.linalg.norm(x)))


def tangent_gradient(arr_or_matrix, x) -> np.ndarray:
    """Gradient of sum log|L_i| - d log|x| at x; tangent to the sphere at unit x."""
    M = arr_or_matrix.matrix() if isinstance(arr_or_matrix, LineArrangement) else arr_or_matrix
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    v = M @ x
    return (M / v[:, None]).sum(axis=0) - len(M) * x


def region_eigenpoint(arr: LineArrangement, region, max_iter: int = 200, gtol: float = 1e-12):
    """Maximizer of sum log|L_i| over the region on the unit sphere."""
    signs, x = region
    s = np.array(signs, dtype=float)
    M = arr.matrix()
    Mn = M / np.linalg.norm(M, axis=1, keepdims=True)
    d = len(M)
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    clips = 0
    for _ in range(max_iter):
        v = Mn @ x
        g = (Mn / v[:, None]).sum(axis=0) - d * x
        if np.linalg.norm(g) < gtol:
            break
        H = -(Mn.T / v ** 2) @ Mn - d * (np.eye(3) - 2 * np.outer(x, x))
        q, _ = np.linalg.qr(np.column_stack([x, np.eye(3)]))
        T = q[:, 1:3]
        gt, Ht = T.T @ g, T.T @ H @ T
        if np.all(np.linalg.eigvalsh(Ht) < 0):
            step = T @ np.linalg.solve(Ht, -gt)
        else:
            step = T @ gt
        f0 = _log_objective(Mn, x)
        t = 1.0
        while True:
            y = x + t * step
            y = y / np.linalg.norm(y)
            if np.all(s * (Mn @ y) > 0) and _log_objective(Mn, y) >= f0 - 1e-14:
                break
            t *= 0.5
            if t < 1e-12:
                clips += 1
                if clips > 10:
                    raise NumericalFailure("ascent keeps leaving the region")
                y = x
                break
        x = y
    xs = x * np.sign(x[np.argmax(np.abs(x))])
    return ProjectivePoint(xs.astype(complex))


def arrangement_eigenconfiguration(arr: LineArrangement, cross_check: bool = True, seed: int = 0):
    _require_generic(arr)
    phi = arr.product()
    system = EigenSystem(phi.gradient())
    pts = []
    for p in arrangement_vertices(arr):
        pts.append(EigenPoint(p, 0j, 1, True, system.residual(p)))
    for region in region_representatives(arr):
        p = region_eigenpoint(arr, region)
        lam = complex(system.psi_at(p.coords)[int(np.argmax(np.abs(p.coords)))] /
                      p.coords[int(np.argmax(np.abs(p.coords)))])
        pts.append(EigenPoint(p, lam, 1, True, system.residual(p)))
    conf = EigenConfiguration(pts, False, "arrangement")
    if cross_check:
        other = solve_ternary(phi, seed=seed)
        conf.info["crossCheckHausdorff"] = hausdorff(conf.projective_points, other.projective_points)
        conf.info["solverCount"] = other.count()
    return conf


# ---------------------------------------------------------------------------
# power method


@dataclass
class DynOutcome:
    kind: str
    point: np.ndarray | None = None
    cycle: list = field(default_factory=list)
    iterations: int = 0

    def to_json(self):
        out = {"kind": self.kind, "iterations": self.iterations}
        if self.point is not None:
            out["point"] = [float(v) for v in self.point]
        if self.cycle:
            out["cycle"] = [[float(v) for v in c] for c in self.cycle]
        return out


class RealMap:
    """Fast evaluation of a real polynomial map psi."""

    def __init__(self, psi: list[HomogeneousForm]):
        self.n = len(psi)
        mons = sorted({e for f in psi for e in f.terms})
        self.E = np.array(mons, dtype=int).reshape(len(mons), self.n)
        self.C = np.zeros((self.n, len(mons)))
        for i, f in enumerate(psi):
            for j, e in enumerate(mons):
                c = complex(f.terms.get(e, 0))
                if c.imag != 0:
                    raise ValueError("the power method needs a real tensor")
                self.C[i, j] = c.real

    def __call__(self, v):
        return self.C @ np.prod(np.asarray(v, dtype=float)[None, :] ** self.E, axis=1)


def _as_psi(obj, k: int = 1):
    if isinstance(obj, RealMap):
        return obj
    if isinstance(obj, Tensor):
        return RealMap(psi_map(obj, k))
    if isinstance(obj, HomogeneousForm):
        return RealMap(obj.gradient())
    if isinstance(obj, EigenSystem):
        return RealMap(obj.psi)
    return RealMap(list(obj))


def _sign_normalize(v, tol=1e-9):
    i = int(np.argmax(np.abs(v) > tol * np.max(np.abs(v))))
    return v if v[i] >= 0 else -v


def power_method_run(obj, v0, ell: int = 1, max_iter: int = 10000, tol: float = 1e-12,
                     cycle_window: int = 8, cycle_tol: float = 1e-10, base_tol: float = 1e-14,
                     root: bool = False) -> DynOutcome:
    """Iterate v -> psi(v)/|psi(v)| (optionally with coordinatewise l-th roots)."""
    F = _as_psi(obj)
    v = np.asarray(v0, dtype=float)
    v = _sign_normalize(v / np.linalg.norm(v))
    hist = [v]
    for it in range(1, max_iter + 1):
        w = F(v)
        if root and ell > 1:
            w = np.sign(w) * np.abs(w) ** (1.0 / ell)
        nw = np.linalg.norm(w)
        if nw < base_tol:
            return DynOutcome("baseLocus", v, [], it)
        w = _sign_normalize(w / nw)
        if np.linalg.norm(w - v) < tol:
            return DynOutcome("converged", w, [], it)
        # a genuine cycle returns to a point while still moving between steps
        moving = np.linalg.norm(w - v) > 1e-6
        for p in range(2, cycle_window + 1):
            if moving and len(hist) >= p and np.linalg.norm(w - hist[-p]) < cycle_tol:
                return DynOutcome("cycle", None, [np.array(c) for c in hist[-p:]], it)
        hist.append(w)
        if len(hist) > cycle_window + 1:
            hist.pop(0)
        v = w
    return DynOutcome("budgetExceeded", v, [], max_iter)


def projective_spectral_radius(obj, u, h: float = 1e-6) -> float:
    """Spectral radius of the differential of the projectivized map at a fixed point u."""
    F = _as_psi(obj)
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    q, _ = np.linalg.qr(np.column_stack([u, np.eye(len(u))]))
    T = q[:, 1:len(u)]

    def N(v):
        w = F(v)
        return w / (u @ w)

    J = np.column_stack([(N(u + h * T[:, k]) - N(u - h * T[:, k])) / (2 * h) for k in range(T.shape[1])])
    D = T.T @ J
    return float(np.max(np.abs(np.linalg.eigvals(D))))


def robust_eigenpoints(obj, ell: int = 1, samples: int = 1000, seed: int = 0, max_iter: int = 2000,
                       cluster_tol: float = 1e-6):
    """Attracting fixed points of the power map with the fraction of sampled starts they attract."""
    F = _as_psi(obj)
    system = EigenSystem([_real_form(F, i) for i in range(F.n)], ell)
    rng = np.random.default_rng(seed)
    clusters: list[list] = []
    for _ in range(samples):
        v0 = rng.standard_normal(F.n)
        out = power_method_run(F, v0, ell, max_iter=max_iter)
        if out.kind != "converged":
            continue
        for c in clusters:
            if np.linalg.norm(c[0] - out.point) < cluster_tol:
                c[1] += 1
                break
        else:
            clusters.append([out.point, 1])
    result = []
    for p, hits in clusters:
        if system.residual(p.astype(complex)) > 1e-8:
            continue
        rho = projective_spectral_radius(F, p)
        if rho < 1 - 1e-6:
            result.append((ProjectivePoint(p.astype(complex)), hits / samples, rho))
    result.sort(key=lambda r: r[0].sort_key())
    return result


def _real_form(F: RealMap, i: int) -> HomogeneousForm:
    return HomogeneousForm(F.n, int(F.E[0].sum()) if len(F.E) else 0,
                           {tuple(int(a) for a in e): c for e, c in zip(F.E, F.C[i]) if c != 0})


def frame_cubic() -> HomogeneousForm:
    x, y, z = (HomogeneousForm.variable(3, i) for i in range(3))
    return (x * 2 + y * 2 - z) * (x * 2 - y + z * 2) * (-x + y * 2 + z * 2)


def second_iterate_check(phi: HomogeneousForm):
    """Test grad(phi) o grad(phi) = c phi (x, y, z); returns (True, c) or (False, deviation)."""
    if not phi.exact:
        raise ValueError("second iterate check needs exact coefficients")
    g = phi.gradient()
    H = [f.compose(g) for f in g]
    xs = [HomogeneousForm.variable(phi.nvars, i) for i in range(phi.nvars)]
    target = [phi * x for x in xs]
    c = None
    for h, t in zip(H, target):
        for e, v in t.terms.items():
            if v != 0:
                c = Fraction(h.terms.get(e, 0)) / v
                break
        if c is not None:
            break
    if c is None:
        return False, None
    dev = max((abs(cf) for h, t in zip(H, target) for cf in (h - t * c).terms.values()), default=0)
    if dev == 0:
        return True, c
    return False, float(dev)


# ---------------------------------------------------------------------------
# perturbation experiments


def perturbation_experiment(phi0: HomogeneousForm, phi1: HomogeneousForm, epsilons, seed: int = 0,
                            real_tol: float = 1e-7):
    """Rows (epsilon, total, real) for the eigenconfigurations of phi0 + epsilon phi1."""
    rows = []
    for eps in epsilons:
        phi = phi0 + phi1 * eps
        try:
            if phi.nvars == 3:
                conf = solve_ternary(phi, seed=seed)
            else:
                conf = solve_homotopy(EigenSystem(phi.gradient()), seed=seed)
            pts = [p for p in conf.points if p.isolated]
            rows.append((eps, len(pts), sum(1 for p in pts if p.point.is_real(real_tol))))
        except NumericalFailure:
            rows.append((eps, None, None))
    return rows


def perturbation_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["epsilon", "total", "real"])
    for eps, total, real in rows:
        w.writerow([str(eps), "" if total is None else total, "" if real is None else real])
    return buf.getvalue()


def cremona_perturbation(n: int = 4) -> HomogeneousForm:
    """The quartic perturbation direction of xyzw used in the n = 4 experiment."""
    if n != 4:
        raise ValueError("only n = 4 is tabulated")
    terms = {
        (4, 0, 0, 0): 5, (3, 1, 0, 0): 4, (2, 2, 0, 0): -2, (1, 3, 0, 0): -8, (0, 4, 0, 0): 7,
        (3, 0, 1, 0): 4, (2, 1, 1, 0): 2, (1, 2, 1, 0): 2, (0, 3, 1, 0): 2, (2, 0, 2, 0): -6,
        (1, 1, 2, 0): 6, (0, 2, 2, 0): 7, (1, 0, 3, 0): -8, (0, 1, 3, 0): 3, (0, 0, 4, 0): 8,
        (3, 0, 0, 1): -8, (2, 1, 0, 1): 2, (1, 2, 0, 1): -3, (0, 3, 0, 1): 5, (2, 0, 1, 1): 8,
        (0, 2, 1, 1): -3, (1, 0, 2, 1): -5, (0, 1, 2, 1): -10, (0, 0, 3, 1): 8, (2, 0, 0, 2): -5,
        (1, 1, 0, 2): -6, (0, 2, 0, 2): -3, (1, 0, 1, 2): -6, (0, 1, 1, 2): 3, (1, 0, 0, 3): 3,
        (0, 1, 0, 3): 3, (0, 0, 1, 3): -4, (0, 0, 0, 4): 3,
    }
    return HomogeneousForm(4, 4, {e: Fraction(v) for e, v in terms.items()})
