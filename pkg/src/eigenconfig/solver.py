"""Solving eigen systems: binary forms, ternary resultants and homotopy continuation."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .counts import eigen_count_ell
from .eigensys import EigenSystem, Tensor, eigen_system, psi_map
from .polycore import (CLUSTER_TOL, DEDUP_TOL, RESIDUAL_TOL, HomogeneousForm, ProjectivePoint,
                       binary_form_roots, binary_gcd, dedup_points, fraction_to_float, nullspace,
                       poly_deriv, poly_eval, poly_mul, poly_trim, squarefree_decomposition, sylvester_resultant,
                       to_exact, univariate_roots, hausdorff)

ISOLATION_RTOL = 1e-6
MAX_PATH_FAILURE = 0.05


class NumericalFailure(RuntimeError):
    """Raised when path tracking keeps failing after all retries."""


@dataclass
class EigenPoint:
    point: ProjectivePoint
    eigenvalue: complex | None
    multiplicity: int = 1
    isolated: bool = True
    residual: float = 0.0

    def to_json(self) -> dict:
        lam = None if self.eigenvalue is None else [self.eigenvalue.real, self.eigenvalue.imag]
        return {"coords": [[c.real, c.imag] for c in self.point.coords], "eigenvalue": lam,
                "multiplicity": self.multiplicity, "isolated": self.isolated,
                "residual": self.residual, "real": self.point.is_real()}


@dataclass
class EigenConfiguration:
    points: list
    positive_dimensional: bool = False
    method: str = "exact-univariate"
    component_points: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def projective_points(self) -> list[ProjectivePoint]:
        return [p.point for p in self.points]

    def count(self) -> int:
        return len(self.points)

    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def real_points(self) -> list[ProjectivePoint]:
        return [p.point for p in self.points if p.point.is_real()]

    def to_json(self) -> dict:
        return {"method": self.method, "positiveDimensional": self.positive_dimensional,
                "count": len(self.points),
                "points": [p.to_json() for p in self.points],
                "componentSamples": [{"coords": [[c.real, c.imag] for c in q.coords]}
                                     for q in self.component_points]}


def as_system(obj, ell: int = 1, k: int = 1) -> EigenSystem:
    """Accept a Tensor, a symmetric form phi, an EigenSystem or a list of psi forms."""
    if isinstance(obj, EigenSystem):
        return obj
    if isinstance(obj, Tensor):
        return eigen_system(obj, ell, k)
    if isinstance(obj, HomogeneousForm):
        return EigenSystem(obj.gradient(), ell, 1)
    if isinstance(obj, (list, tuple)) and all(isinstance(f, HomogeneousForm) for f in obj):
        return EigenSystem(list(obj), ell, k)
    raise TypeError(f"cannot build an eigen system from {type(obj).__name__}")


def _sorted_points(points):
    return sorted(points, key=lambda p: p.point.sort_key())


def _eigenvalue(system: EigenSystem, p: ProjectivePoint) -> complex:
    i = int(np.argmax(np.abs(p.coords)))
    return complex(system.psi[i].evaluate(list(p.coords))) / p.coords[i] ** system.ell


# ---------------------------------------------------------------------------
# compiled evaluation


class CompiledSystem:
    """Forms sharing variables, evaluated (with Jacobians) at batches of points."""

    def __init__(self, forms):
        self.nvars = forms[0].nvars
        mons = sorted({e for f in forms for e in f.terms})
        if not mons:
            mons = [(0,) * self.nvars]
        self.E = np.array(mons, dtype=np.int64).reshape(len(mons), self.nvars)
        col = {e: i for i, e in enumerate(mons)}
        self.C = np.zeros((len(forms), len(mons)), dtype=complex)
        for r, f in enumerate(forms):
            for e, c in f.terms.items():
                self.C[r, col[e]] = complex(c)
        self.maxdeg = int(self.E.max()) if self.E.size else 0
        self.dC = [self.C * self.E[:, v][None, :] for v in range(self.nvars)]
        self.dE = []
        for v in range(self.nvars):
            Ev = self.E.copy()
            Ev[:, v] = np.maximum(Ev[:, v] - 1, 0)
            self.dE.append(Ev)

    def _powers(self, X):
        return X[:, :, None] ** np.arange(self.maxdeg + 1)[None, None, :]

    def _mono(self, pw, E):
        V = np.ones((pw.shape[0], E.shape[0]), dtype=complex)
        for v in range(self.nvars):
            V *= pw[:, v, E[:, v]]
        return V

    def eval(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        return self._mono(self._powers(X), self.E) @ self.C.T

    def eval_jac(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        pw = self._powers(X)
        vals = self._mono(pw, self.E) @ self.C.T
        J = np.empty((X.shape[0], self.C.shape[0], self.nvars), dtype=complex)
        for v in range(self.nvars):
            J[:, :, v] = self._mono(pw, self.dE[v]) @ self.dC[v].T
        return vals, J


def _safe_solve(A, b):
    try:
        return np.linalg.solve(A, b[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.empty_like(b)
        for i in range(A.shape[0]):
            out[i] = np.linalg.lstsq(A[i], b[i], rcond=None)[0]
        return out


def polish(csys: CompiledSystem, x, iters: int = 30, scale: float = 1.0):
    """Gauss-Newton on all minors in the pivot chart of x. Returns (point, residual)."""
    x = np.asarray(x, dtype=complex)
    x = x / x[np.argmax(np.abs(x))]
    best, best_res = x.copy(), np.inf
    for _ in range(iters):
        k = int(np.argmax(np.abs(x)))
        x = x / x[k]
        vals, J = csys.eval_jac(x[None, :])
        res = float(np.max(np.abs(vals[0]))) / scale
        if res < best_res:
            best, best_res = x.copy(), res
        if res == 0:
            break
        Jc = np.delete(J[0], k, axis=1)
        step = np.linalg.lstsq(Jc, -vals[0], rcond=None)[0]
        dx = np.insert(step, k, 0)
        x = x + dx
        if np.max(np.abs(dx)) < 1e-16 * np.max(np.abs(x)):
            break
    k = int(np.argmax(np.abs(x)))
    x = x / x[k]
    res = float(np.max(np.abs(csys.eval(x[None, :])[0]))) / scale
    if res < best_res:
        best, best_res = x, res
    return best, best_res


# ---------------------------------------------------------------------------
# n = 2


def solve_binary(obj, ell: int = 1, k: int = 1) -> EigenConfiguration:
    """Eigenpoints in P^1: roots of the single minor with multiplicities."""
    system = as_system(obj, ell, k)
    if system.n != 2:
        raise ValueError("solve_binary needs n = 2")
    f = system.forms[0]
    if f.is_zero():
        return EigenConfiguration([], True, "exact-univariate")
    pts = []
    csys = CompiledSystem(system.forms)
    scale = system.scale()
    for p, mult in binary_form_roots(f):
        x = p.coords
        if mult == 1:
            x, _ = polish(csys, x, iters=4, scale=scale)
        q = ProjectivePoint(x)
        res = system.residual(q)
        pts.append(EigenPoint(q, _eigenvalue(system, q), mult, True, res))
    return EigenConfiguration(_sorted_points(pts), False, "exact-univariate")


# ---------------------------------------------------------------------------
# n = 3 by resultants


def _exactify(system: EigenSystem) -> EigenSystem | None:
    if system.exact:
        return system
    try:
        psi = [f.to_exact() for f in system.psi]
    except TypeError:
        return None
    return EigenSystem(psi, system.ell, system.k)


def _restrict(f: HomogeneousForm, var: int, value) -> list:
    """Univariate ascending coefficients of f(x=value, y, z=1) in y (var = index of x)."""
    other = 1 if var == 0 else 0
    out = {}
    for e, c in f.terms.items():
        out[e[other]] = out.get(e[other], 0) + complex(c) * value ** e[var]
    deg = max(out) if out else -1
    return [out.get(i, 0) for i in range(deg + 1)]


def _line_at_infinity(system: EigenSystem, exact: bool):
    """Candidates on z = 0: common zeros of psi_3 and the (x, y) minor there."""
    def restrict(f):
        return HomogeneousForm(2, f.degree, {e[:2]: c for e, c in f.terms.items() if e[2] == 0})

    p3 = restrict(system.psi[2])
    m12 = restrict(system.forms[0])
    if p3.is_zero() and m12.is_zero():
        return None
    if exact:
        if p3.is_zero():
            g = m12
        elif m12.is_zero():
            g = p3
        else:
            g = binary_gcd(p3, m12)
        if g.degree == 0:
            return []
        return [np.array([p.coords[0], p.coords[1], 0]) for p, _ in binary_form_roots(g)]
    cands = []
    for h in (p3, m12):
        if not h.is_zero() and h.degree > 0:
            cands += [np.array([p.coords[0], p.coords[1], 0]) for p, _ in binary_form_roots(h)]
    return cands


def _resultant_candidates(system: EigenSystem, exact: bool):
    """Affine (z = 1) candidates from Res_y of a minor pair, then y from the minors."""
    forms = system.forms
    scale = system.scale()
    pairs = [(0, 1), (0, 2), (1, 2)]
    for a, b in pairs:
        f, g = forms[a], forms[b]
        if f.is_zero() or g.is_zero():
            continue
        try:
            res = sylvester_resultant(f, g, elim=1, chart=2)
        except ValueError:
            continue
        if not res:
            continue
        res = poly_trim(res)
        if len(res) <= 1:
            xs = []
        elif exact:
            xs = [r for fac, _ in squarefree_decomposition(res)
                  for r, _ in univariate_roots(fac, exact=True)]
        else:
            xs = [r for r, _ in univariate_roots(res, exact=False)]
        cands = []
        for x0 in xs:
            unis = [poly_trim(_restrict(h, 0, x0)) for h in forms]
            if not any(abs(c) > 1e-10 * scale * max(1.0, abs(x0)) ** h.degree for u, h in zip(unis, forms) for c in u):
                # every minor vanishes along the line x = x0
                return None, None
            for uni in unis:
                if len(uni) <= 1:
                    continue
                arr = np.array(uni, dtype=complex)
                arr = arr / np.max(np.abs(arr))
                for y0 in np.roots(arr[::-1]):
                    cands.append(np.array([x0, y0, 1], dtype=complex))
        return cands, (a, b)
    return None, None


def solve_ternary(obj, ell: int = 1, k: int = 1, method: str = "auto", seed: int = 0,
                  tol_residual: float = 1e-9, tol_dedup: float = DEDUP_TOL) -> EigenConfiguration:
    """Eigenpoints in P^2 by resultant elimination, with homotopy fallback."""
    system = as_system(obj, ell, k)
    if system.n != 3:
        raise ValueError("solve_ternary needs n = 3")
    if method == "homotopy":
        return solve_homotopy(system, seed=seed, tol_residual=tol_residual, tol_dedup=tol_dedup)
    if system.is_trivial():
        return EigenConfiguration([], True, "resultant")
    exact_sys = _exactify(system)
    exact = exact_sys is not None
    work = exact_sys if exact else system
    cands, pair = _resultant_candidates(work, exact)
    infinity = _line_at_infinity(work, exact)
    if cands is None or infinity is None:
        if method == "resultant":
            raise NumericalFailure("resultant elimination degenerate")
        out = solve_homotopy(system, seed=seed, tol_residual=tol_residual, tol_dedup=tol_dedup)
        out.info["fallback"] = "resultant identically zero"
        return out
    csys = CompiledSystem(system.forms)
    scale = system.scale()
    found = []
    for x in cands + infinity:
        if not np.all(np.isfinite(x)):
            continue
        y, res = polish(csys, x, scale=scale)
        if res < tol_residual:
            found.append(ProjectivePoint(y, residual=res))
    pts = [p for p, _ in dedup_points(found, tol_dedup)]
    out = [EigenPoint(p, _eigenvalue(system, p), 1, True, system.residual(p)) for p in pts]
    conf = EigenConfiguration(_sorted_points(out), False, "resultant", info={"pair": pair})
    if method == "auto" and not system.exact:
        hom = solve_homotopy(system, seed=seed, tol_residual=tol_residual, tol_dedup=tol_dedup)
        conf = _merge(system, conf, hom, tol_dedup)
    _check_isolation(system, conf)
    return conf


def _merge(system, a: EigenConfiguration, b: EigenConfiguration, tol):
    pts = list(a.points)
    for q in b.points:
        if all(q.point.distance(p.point) >= tol for p in pts):
            pts.append(q)
    info = dict(a.info)
    info["crossCheckHausdorff"] = hausdorff(a.projective_points, b.projective_points)
    return EigenConfiguration(_sorted_points(pts), a.positive_dimensional or b.positive_dimensional,
                              a.method, a.component_points + b.component_points, info)


def _check_isolation(system: EigenSystem, conf: EigenConfiguration):
    """Mark singular points and probe whether they sit on a curve of eigenpoints."""
    csys = CompiledSystem(system.forms)
    keep = []
    for ep in conf.points:
        x = np.array(ep.point.coords)
        kp = int(np.argmax(np.abs(x)))
        _, J = csys.eval_jac(x[None, :])
        s = np.linalg.svd(np.delete(J[0], kp, axis=1), compute_uv=False)
        if s[0] == 0 or s[-1] < ISOLATION_RTOL * s[0]:
            if _on_positive_dimensional(csys, x, system.scale()):
                conf.positive_dimensional = True
                conf.component_points.append(ep.point)
                continue
            ep.isolated = True
        keep.append(ep)
    conf.points = keep


def _on_positive_dimensional(csys: CompiledSystem, x, scale: float, delta: float = 1e-3,
                             trials: int = 3, seed: int = 7) -> bool:
    """Local dimension test: is there a solution on a random affine slice at distance ~delta?

    An isolated point (even a multiple one) has no solutions on such a slice
    close by, while a curve through x meets it.
    """
    rng = np.random.default_rng(seed)
    x = np.asarray(x, dtype=complex)
    kp = int(np.argmax(np.abs(x)))
    x = x / x[kp]
    n = len(x)
    for _ in range(trials):
        a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        a[kp] = 0
        a /= np.linalg.norm(a)
        y = x + delta * a.conj()
        for _ in range(60):
            vals, J = csys.eval_jac(y[None, :])
            F = np.concatenate([vals[0] / scale, [(a @ (y - x) - delta) / delta]])
            Jc = np.concatenate([J[0] / scale, a[None, :] / delta], axis=0)
            Jc = np.delete(Jc, kp, axis=1)
            step = np.linalg.lstsq(Jc, -F, rcond=None)[0]
            y = y + np.insert(step, kp, 0)
            if np.max(np.abs(step)) < 1e-15:
                break
        res = float(np.max(np.abs(csys.eval(y[None, :])[0]))) / scale
        dist = float(np.max(np.abs(y - x)))
        if res < 1e-11 and abs(a @ (y - x) - delta) < 1e-9 * delta and dist < 50 * delta:
            return True
    return False


# ---------------------------------------------------------------------------
# homotopy continuation


def _start_points(n, D, c):
    roots = np.exp(2j * np.pi * np.arange(D) / D)
    starts = []
    for combo in itertools.product(roots, repeat=n - 1):
        v = np.array(list(combo) + [1.0], dtype=complex)
        starts.append(v / (c @ v))
    return np.array(starts)


def _track_paths(csys, R, c, D, gamma, starts, max_steps=20000):
    """Track H = (1-t) gamma G + t F from t = 0 to 1; returns (endpoints, t reached, failed mask)."""
    n = starts.shape[1]
    P = starts.shape[0]

    def parts(X, t):
        vals, J = csys.eval_jac(X)
        F = vals @ R.T
        JF = np.einsum("km,pmn->pkn", R, J)
        G = X[:, : n - 1] ** D - X[:, n - 1:] ** D
        JG = np.zeros((X.shape[0], n - 1, n), dtype=complex)
        idx = np.arange(n - 1)
        JG[:, idx, idx] = D * X[:, : n - 1] ** (D - 1)
        JG[:, :, n - 1] = -D * X[:, n - 1:] ** (D - 1)
        tt = t[:, None]
        H = (1 - tt) * gamma * G + tt * F
        Hx = (1 - tt)[:, :, None] * gamma * JG + tt[:, :, None] * JF
        Hl = X @ c - 1
        Hfull = np.concatenate([H, Hl[:, None]], axis=1)
        Jfull = np.concatenate([Hx, np.broadcast_to(c, (X.shape[0], 1, n))], axis=1)
        Ht = np.concatenate([F - gamma * G, np.zeros((X.shape[0], 1))], axis=1)
        return Hfull, Jfull, Ht

    def velocity(X, t):
        _, Jf, Ht = parts(X, t)
        return -_safe_solve(Jf, Ht)

    X = starts.copy()
    t = np.zeros(P)
    h = np.full(P, 0.05)
    streak = np.zeros(P, dtype=int)
    done = np.zeros(P, dtype=bool)
    failed = np.zeros(P, dtype=bool)
    steps = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        while steps < max_steps:
            act = np.flatnonzero(~done & ~failed)
            if not act.size:
                break
            steps += 1
            x, tt = X[act], t[act]
            hh = np.minimum(h[act], 1 - tt)
            k1 = velocity(x, tt)
            k2 = velocity(x + 0.5 * hh[:, None] * k1, tt + 0.5 * hh)
            k3 = velocity(x + 0.5 * hh[:, None] * k2, tt + 0.5 * hh)
            k4 = velocity(x + hh[:, None] * k3, tt + hh)
            xp = x + hh[:, None] / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            tn = tt + hh
            xpred = xp.copy()
            ok = np.ones(len(act), dtype=bool)
            for _ in range(3):
                Hf, Jf, _ = parts(xp, tn)
                dx = -_safe_solve(Jf, Hf)
                xp = xp + dx
            nx = np.linalg.norm(xp, axis=1)
            ok &= np.linalg.norm(dx, axis=1) < 1e-9 * (1 + nx)
            ok &= np.linalg.norm(xp - xpred, axis=1) < 0.05 * (1 + nx)
            ok &= np.all(np.isfinite(xp), axis=1)
            acc = act[ok]
            X[acc] = xp[ok]
            t[acc] = tn[ok]
            streak[acc] += 1
            grow = acc[streak[acc] >= 3]
            h[grow] = np.minimum(h[grow] * 2, 0.1)
            streak[grow] = 0
            rej = act[~ok]
            h[rej] *= 0.5
            streak[rej] = 0
            done[acc[t[acc] >= 1.0]] = True
            small = rej[h[rej] < 1e-13]
            failed[small] = True
            big = act[np.linalg.norm(X[act], axis=1) > 1e10]
            failed[big] = True
    failed |= ~done & ~failed  # budget exhausted
    return X, t, failed


def _isolated_nonsingular(csys_sq_jac, x) -> bool:
    s = np.linalg.svd(csys_sq_jac, compute_uv=False)
    return s[0] > 0 and s[-1] > ISOLATION_RTOL * s[0]


def _homotopy_run(system: EigenSystem, rng, tol_residual, tol_dedup):
    n = system.n
    D = system.forms[0].degree
    m = len(system.forms)
    csys = CompiledSystem(system.forms)
    scale = system.scale()
    R = (rng.standard_normal((n - 1, m)) + 1j * rng.standard_normal((n - 1, m))) / math.sqrt(2)
    R /= scale
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    gamma = np.exp(2j * np.pi * rng.random())
    starts = _start_points(n, D, c)
    X, t, failed = _track_paths(csys, R, c, D, gamma, starts)
    # failures that got very close to t = 1 are singular endpoints, not lost paths
    near = failed & (t > 1 - 1e-6)
    lost = failed & ~near
    ends = []
    for i in np.flatnonzero(~lost):
        y, res = polish(csys, X[i], iters=60, scale=scale)
        if not np.all(np.isfinite(y)) or res >= tol_residual:
            continue
        vals, J = csys.eval_jac(y[None, :])
        N = np.concatenate([R @ J[0], c[None, :]], axis=0)
        ends.append((y, res, _isolated_nonsingular(N, y)))
    return ends, int(lost.sum()), len(starts), csys, scale


def solve_homotopy(obj, ell: int = 1, k: int = 1, seed: int = 0, tol_residual: float = 1e-9,
                   tol_dedup: float = DEDUP_TOL, attempts: int = 3, expected: int | None = None):
    """Total-degree homotopy on a random square subsystem of the minors (n = 3, 4)."""
    system = as_system(obj, ell, k)
    n = system.n
    if n < 2 or n > 4:
        raise ValueError("homotopy backend supports 2 <= n <= 4")
    if system.is_trivial():
        return EigenConfiguration([], True, "homotopy")
    if expected is None:
        expected = eigen_count_ell(n, system.d, system.ell)
    rng = np.random.default_rng(seed)
    iso: list = []       # [point, multiplicity]
    comp: list = []
    positive = False
    last_lost = None
    runs = 0
    for attempt in range(attempts):
        ends, lost, npaths, csys, scale = _homotopy_run(system, rng, tol_residual, tol_dedup)
        runs += 1
        last_lost = (lost, npaths)
        if lost > MAX_PATH_FAILURE * npaths and attempt < attempts - 1:
            continue
        run_pts = []
        for y, res, nonsing in ends:
            p = ProjectivePoint(y, residual=res)
            if nonsing:
                run_pts.append((p, True))
                continue
            elif _on_positive_dimensional(csys, y, scale):
                positive = True
                comp.append(p)
            else:
                run_pts.append((p, False))
        clusters: list = []
        # a nonsingular endpoint of the square system is a simple eigenpoint,
        # so only singular endpoints are clustered into multiplicities
        for p, nonsing in run_pts:
            if nonsing:
                if all(cl[0].distance(p) >= tol_dedup for cl in clusters):
                    clusters.append([p, 1, tol_dedup])
                continue
            tol = tol_dedup if nonsing else CLUSTER_TOL
            for cl in clusters:
                if cl[0].distance(p) < max(tol, cl[2]):
                    cl[1] += 1
                    break
            else:
                clusters.append([p, 1, tol])
        for p, mult, _ in clusters:
            for entry in iso:
                if entry[0].distance(p) < max(tol_dedup, CLUSTER_TOL if mult > 1 else 0):
                    entry[1] = max(entry[1], mult)
                    break
            else:
                iso.append([p, mult])
        if lost > MAX_PATH_FAILURE * npaths:
            raise NumericalFailure(f"{lost} of {npaths} paths failed after {attempts} attempts")
        if positive or sum(mu for _, mu in iso) >= expected:
            break
    pts = [EigenPoint(p, _eigenvalue(system, p), mult, True, system.residual(p)) for p, mult in iso]
    comp_reps = [p for p, _ in dedup_points(comp, 1e-4)]
    return EigenConfiguration(_sorted_points(pts), positive, "homotopy", comp_reps,
                              {"runs": runs, "lostPaths": last_lost[0], "paths": last_lost[1]})


solve_general = solve_homotopy


def solve(obj, ell: int = 1, k: int = 1, method: str = "auto", seed: int = 0,
          tol_residual: float = 1e-9, tol_dedup: float = DEDUP_TOL) -> EigenConfiguration:
    system = as_system(obj, ell, k)
    if system.n == 2:
        return solve_binary(system)
    if system.n == 3:
        return solve_ternary(system, method=method, seed=seed, tol_residual=tol_residual,
                             tol_dedup=tol_dedup)
    if system.n == 4:
        return solve_homotopy(system, seed=seed, tol_residual=tol_residual, tol_dedup=tol_dedup)
    raise ValueError("solving is supported for n <= 4")


def eigenvalue_of(obj, p, ell: int = 1, k: int = 1, tol: float = 1e-8) -> complex:
    """lambda with psi(p) = lambda p^l, read off at the pivot coordinate."""
    system = as_system(obj, ell, k)
    q = p if isinstance(p, ProjectivePoint) else ProjectivePoint(p)
    res = system.residual(q)
    if res > tol:
        raise ValueError(f"not an eigenpoint (residual {res:.3e})")
    return _eigenvalue(system, q)


# ---------------------------------------------------------------------------
# pencil discriminant degrees


def _exact_det(M):
    A = [[Fraction(c) for c in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return det


def _binary_resultant(f: list, g: list):
    """Resultant of binary forms given by coefficient lists (x^deg first)."""
    p, q = len(f) - 1, len(g) - 1
    size = p + q
    if size == 0:
        return Fraction(1)
    S = [[Fraction(0)] * size for _ in range(size)]
    for i in range(q):
        for j, c in enumerate(f):
            S[i][i + j] = c
    for i in range(p):
        for j, c in enumerate(g):
            S[q + i][i + j] = c
    return _exact_det(S)


def _binary_discriminant_value(coeffs):
    """Res(f_x, f_y) for a binary form with coefficients of x^d, x^(d-1) y, ..., y^d."""
    d = len(coeffs) - 1
    fx = [coeffs[i] * (d - i) for i in range(d)]
    fy = [coeffs[i + 1] * (i + 1) for i in range(d)]
    return _binary_resultant(fx, fy)


def _charpoly(M):
    """Characteristic polynomial det(lambda I - M), ascending coefficients (Faddeev-LeVerrier)."""
    n = len(M)
    A = [[Fraction(c) for c in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = A (M_{k-1} + c_{n-k+1} I)
        prev = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(A[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs


def _matrix_discriminant_value(M):
    p = _charpoly(M)
    dp = poly_deriv(p)
    desc_p = list(reversed(p))
    desc_dp = list(reversed(dp))
    return _binary_resultant(desc_p, desc_dp)


def _interpolate(xs, ys):
    """Exact Lagrange interpolation, ascending coefficients."""
    out = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = [Fraction(0)] + basis
                for m in range(len(basis) - 1):
                    basis[m] -= xj * basis[m + 1]
                den *= xi - xj
        for m, b in enumerate(basis):
            out[m] += yi * b / den
    return poly_trim(out)


def pencil_discriminant_degree(A: Tensor, B: Tensor, return_details: bool = False):
    """Number of distinct points (a:b) where aA + bB has a degenerate eigenconfiguration.

    Points where the whole eigen system of aA + bB vanishes are excluded, so that
    A = B gives 0. This is the degree of the restriction of the eigendiscriminant
    to the pencil line when the pencil is generic.
    """
    if (A.n, A.d) != (B.n, B.d):
        raise ValueError("pencil tensors must share their format")
    A = Tensor(A.n, A.d, [to_exact(c) for c in A.entries], "rational")
    B = Tensor(B.n, B.d, [to_exact(c) for c in B.entries], "rational")
    n, d = A.n, A.d
    if n == 2:
        N = 2 * d - 2
        fa = eigen_system(A).forms[0]
        fb = eigen_system(B).forms[0]
        mons = [(d - i, i) for i in range(d + 1)]
        ca = [fa.coefficient(e) for e in mons]
        cb = [fb.coefficient(e) for e in mons]

        def value(a):
            return _binary_discriminant_value([a * u + v for u, v in zip(ca, cb)])

        def minors(a, b):
            return [a * u + b * v for u, v in zip(ca, cb)]
    elif d == 2:
        N = n * (n - 1)
        Ma = [[A[(i, j)] for j in range(n)] for i in range(n)]
        Mb = [[B[(i, j)] for j in range(n)] for i in range(n)]

        def value(a):
            return _matrix_discriminant_value([[a * Ma[i][j] + Mb[i][j] for j in range(n)] for i in range(n)])

        ca = [c for f in eigen_system(A).forms for c in f.coefficients()]
        cb = [c for f in eigen_system(B).forms for c in f.coefficients()]
    else:
        raise ValueError("exact pencil degrees need n = 2 or d = 2")
    # exclude pencil members whose eigen system vanishes identically
    ker = nullspace([[u, v] for u, v in zip(ca, cb)], exact=True)
    trivial = [tuple(ker[:, j]) for j in range(ker.shape[1])]
    if len(trivial) >= 2:
        return (0, {}) if return_details else 0
    xs = [Fraction(i) for i in range(N + 1)]
    P = _interpolate(xs, [value(x) for x in xs])
    if not P:
        deg, roots_inf, sq = None, False, []
    else:
        sq = [Fraction(1)]
        for fac, _ in squarefree_decomposition(P):
            sq = poly_mul(sq, fac)
        roots_inf = len(P) - 1 < N
        deg = (len(sq) - 1) + (1 if roots_inf else 0)
        if trivial:
            a0, b0 = trivial[0]
            if b0 == 0:
                deg -= 1 if roots_inf else 0
            elif poly_eval(sq, a0 / b0) == 0:
                deg -= 1
    details = {"formalDegree": N, "restrictedPolynomial": [str(c) for c in P],
               "degenerateMembers": [[str(a), str(b)] for a, b in trivial]}
    # deg stays None when every member of the pencil is degenerate
    return (deg, details) if return_details else deg
