"""Eigencompatibility of the index-k eigenconfigurations, mostly for binary tensors.

The maps l^[k] send a tensor to the coefficient vectors of the minors
psi_i x_j - psi_j x_i of its index-k system. Stacking them for k = 1..d and
eliminating the tensor gives a matrix E_d, linear in the unknown forms,
whose kernel decides whether d binary forms come from one tensor.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .eigensys import Tensor
from .polycore import (HomogeneousForm, ProjectivePoint, exact_rank, is_exact, monomial_index,
                       monomials, nullspace, numeric_rank, to_exact)


def build_ell_map(n: int, d: int, k: int) -> np.ndarray:
    """Integer matrix of l^[k]: rows (pair i<j, degree-d monomial), columns tensor entries."""
    if not 1 <= k <= d:
        raise ValueError("k must satisfy 1 <= k <= d")
    mons = monomial_index(n, d)
    pairs = list(itertools.combinations(range(n), 2))
    M = np.zeros((len(pairs) * len(mons), n ** d), dtype=np.int64)
    for col, idx in enumerate(itertools.product(range(n), repeat=d)):
        base = [0] * n
        for slot, i in enumerate(idx):
            if slot != k - 1:
                base[i] += 1
        top = idx[k - 1]
        for p, (i, j) in enumerate(pairs):
            # psi_i x_j - psi_j x_i
            if top == i:
                e = list(base)
                e[j] += 1
                M[p * len(mons) + mons[tuple(e)], col] += 1
            if top == j:
                e = list(base)
                e[i] += 1
                M[p * len(mons) + mons[tuple(e)], col] -= 1
    return M


def ell_map_apply(A: Tensor, k: int) -> list:
    """Coefficient vector(s) of l^[k](A), concatenated over the pairs i<j."""
    M = build_ell_map(A.n, A.d, k)
    vals = list(A.entries)
    return [sum((int(M[r, c]) * vals[c] for c in np.flatnonzero(M[r])), Fraction(0) if A.exact else 0j)
            for r in range(M.shape[0])]


def ell_forms(A: Tensor) -> list[HomogeneousForm]:
    """The d binary forms l^[1](A), ..., l^[d](A) of a binary tensor."""
    if A.n != 2:
        raise ValueError("binary tensors only")
    return [HomogeneousForm.from_coefficients(2, A.d, ell_map_apply(A, k)) for k in range(1, A.d + 1)]


def stacked_ell_maps(n: int, d: int) -> np.ndarray:
    return np.vstack([build_ell_map(n, d, k) for k in range(1, d + 1)])


def kernel_knd(n: int, d: int):
    """Dimension and basis (columns, exact) of the common kernel of all l^[k]."""
    if n ** d > 10 ** 4:
        raise ValueError("tensor space too large")
    L = stacked_ell_maps(n, d)
    K = nullspace([[Fraction(int(v)) for v in row] for row in L], exact=True)
    return K.shape[1], K


# ---------------------------------------------------------------------------
# the matrix E_d


class EdMatrix:
    """d x e matrix whose row k is Z-linear in the coefficient block u^[k].

    ``coeffs[k, j, :]`` holds the integer coefficients of entry (k, j) with
    respect to u^[k]_0..u^[k]_d.
    """

    def __init__(self, d: int, coeffs: np.ndarray):
        self.d = d
        self.coeffs = coeffs

    @property
    def e(self) -> int:
        return self.coeffs.shape[1]

    @property
    def shape(self):
        return (self.d, self.e)

    def evaluate(self, forms) -> list[list]:
        """Substitute the coefficient vectors of d binary forms."""
        us = [_coeff_vector(f, self.d) for f in forms]
        return [[sum((int(self.coeffs[k, j, m]) * us[k][m] for m in range(self.d + 1)), 0 * us[k][0])
                 for j in range(self.e)] for k in range(self.d)]

    def entry_string(self, k: int, j: int, name: str = "u") -> str:
        parts = []
        for m, c in enumerate(self.coeffs[k, j]):
            if c:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}{name}{m}")
        s = "".join(parts)
        return s.lstrip("+") if s else "0"


def build_ed(d: int) -> EdMatrix:
    """Eliminate the tensor from the stacked system [l^[k] | u^[k]] by a left kernel.

    Each left-kernel vector y of the stacked l-matrix gives one column of E_d:
    its k-th entry is y restricted to block k, dotted with u^[k].
    """
    if not 2 <= d <= 6:
        raise ValueError("need 2 <= d <= 6")
    L = stacked_ell_maps(2, d)
    Y = nullspace([[Fraction(int(v)) for v in row] for row in L.T], exact=True)
    e = Y.shape[1]
    coeffs = np.zeros((d, e, d + 1), dtype=object)
    for j in range(e):
        col = [Y[i, j] for i in range(Y.shape[0])]
        den = 1
        for c in col:
            den = den * c.denominator // np.gcd(den, c.denominator)
        col = [int(c * den) for c in col]
        g = 0
        for c in col:
            g = int(np.gcd(g, abs(c)))
        col = [c // g for c in col] if g else col
        for k in range(d):
            for m in range(d + 1):
                coeffs[k, j, m] = col[k * (d + 1) + m]
    return EdMatrix(d, coeffs)


def _coeff_vector(f, d):
    if isinstance(f, HomogeneousForm):
        if f.nvars != 2 or (f.degree != d and not f.is_zero()):
            raise ValueError(f"expected a binary form of degree {d}")
        return [f.coefficient((d - i, i)) for i in range(d + 1)]
    v = list(f)
    if len(v) != d + 1:
        raise ValueError(f"expected {d + 1} coefficients")
    return v


def _all_exact(vecs):
    return all(is_exact(c) for v in vecs for c in v)


def ec_membership(d: int, forms, seed: int = 0, tries: int = 5, tol: float = 1e-8):
    """Do d binary forms of degree d come from a single tensor?

    Returns (accepted, recovered tensor or None). The kernel of
    [l^[1] u^[1] 0 ...; ...; l^[d] 0 ... u^[d]] must contain a vector whose
    last d coordinates are all nonzero; its first 2^d coordinates are a tensor
    A with l^[k](A) proportional to the k-th form.
    """
    us = [_coeff_vector(f, d) for f in forms]
    if len(us) != d:
        raise ValueError(f"need exactly {d} forms")
    if any(all(c == 0 for c in u) for u in us):
        raise ValueError("forms must be nonzero")
    exact = _all_exact(us)
    L = stacked_ell_maps(2, d)
    N = 2 ** d
    rows = []
    for r in range(L.shape[0]):
        k, m = divmod(r, d + 1)
        tail = [0] * d
        tail[k] = us[k][m]
        rows.append([int(v) for v in L[r]] + tail)
    if exact:
        rows = [[Fraction(c) for c in row] for row in rows]
    else:
        rows = [[complex(c) for c in row] for row in rows]
        scale = [max(abs(c) for c in u) for u in us]
        for r in range(len(rows)):
            k = r // (d + 1)
            rows[r][N + k] /= scale[k]
    K = nullspace(rows, exact=exact)
    if K.shape[1] == 0:
        return False, None
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        w = rng.integers(-50, 51, size=K.shape[1])
        if exact:
            vec = [sum((int(w[j]) * K[i, j] for j in range(K.shape[1])), Fraction(0)) for i in range(K.shape[0])]
            tailv = vec[N:]
            ok = all(c != 0 for c in tailv)
        else:
            vec = K @ w.astype(complex)
            tailv = vec[N:]
            ok = np.all(np.abs(tailv) > tol * np.max(np.abs(vec)))
        if ok:
            A = Tensor(2, d, list(vec[:N]), "rational" if exact else "float")
            if not exact and np.max(np.abs(vec[:N])) == 0:
                continue
            return True, A
    return False, None


def recover_tensor(d: int, forms, seed: int = 0):
    return ec_membership(d, forms, seed)[1]


def ed_membership(E: EdMatrix, forms, seed: int = 0, tries: int = 5, tol: float = 1e-8) -> bool:
    """Same decision through E_d: some v with all entries nonzero has v E_d = 0."""
    M = E.evaluate(forms)
    exact = _all_exact(M)
    # v . E = 0  <=>  E^T v = 0
    MT = [[M[k][j] for k in range(E.d)] for j in range(E.e)]
    if not MT:
        return True
    K = nullspace(MT, exact=exact)
    if K.shape[1] == 0:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        w = rng.integers(-50, 51, size=K.shape[1])
        if exact:
            v = [sum((int(w[j]) * K[i, j] for j in range(K.shape[1])), Fraction(0)) for i in range(K.shape[0])]
            if all(c != 0 for c in v):
                return True
        else:
            v = K @ w.astype(complex)
            if np.all(np.abs(v) > tol * np.max(np.abs(v))):
                return True
    return False


# ---------------------------------------------------------------------------
# matrices and symmetric binary tensors


def matrix_compatibility(V, W, tol: float = 1e-9):
    """Are V and W (n points each) the right and left eigenvectors of one matrix?

    Returns (verdict, matching) where matching[i] = j pairs w_i with v_j; the
    pairing must make every other dot product vanish.
    """
    V = [list(v) for v in V]
    W = [list(w) for w in W]
    n = len(V)
    if len(W) != n or any(len(v) != n for v in V + W):
        raise ValueError("need n points in P^(n-1) on each side")
    exact = _all_exact(V) and _all_exact(W)
    rk = exact_rank if exact else numeric_rank
    if rk(V) < n or rk(W) < n:
        raise ValueError("point sets must span")
    if exact:
        G = [[sum((Fraction(a) * Fraction(b) for a, b in zip(w, v)), Fraction(0)) for v in V] for w in W]
        nz = [[g != 0 for g in row] for row in G]
    else:
        Vn = [np.array(v, complex) / np.linalg.norm(np.array(v, complex)) for v in V]
        Wn = [np.array(w, complex) / np.linalg.norm(np.array(w, complex)) for w in W]
        nz = [[abs(w @ v) > tol for v in Vn] for w in Wn]
    matching = []
    for i in range(n):
        cols = [j for j in range(n) if nz[i][j]]
        if len(cols) != 1:
            return False, None
        matching.append(cols[0])
    if len(set(matching)) != n:
        return False, None
    return True, matching


def form_from_points(points, exact: bool | None = None) -> HomogeneousForm:
    """prod (v_i x - u_i y) for points (u_i : v_i)."""
    pts = [list(p.coords) if isinstance(p, ProjectivePoint) else list(p) for p in points]
    if exact is None:
        exact = _all_exact(pts)
    f = HomogeneousForm(2, 0, {(0, 0): 1 if exact else 1.0})
    for u, v in pts:
        if exact:
            u, v = to_exact(u), to_exact(v)
        f = f * HomogeneousForm(2, 1, {(1, 0): v, (0, 1): -u})
    return f


def laplace_power(f: HomogeneousForm, times: int) -> HomogeneousForm:
    for _ in range(times):
        f = f.partial(0).partial(0) + f.partial(1).partial(1)
    return f


def _laplace_functional(d: int) -> list:
    """Constants c_j = Laplace^(d/2)(x^(d-j) y^j)."""
    out = []
    for j in range(d + 1):
        g = laplace_power(HomogeneousForm.monomial((d - j, j), Fraction(1)), d // 2)
        out.append(g.coefficient((0, 0)))
    return out


def symmetric_representable(data, tol: float = 1e-9) -> bool:
    """Can d points of P^1 (or the binary form vanishing on them) arise from a symmetric tensor?

    Odd d: always. Even d: the d/2-th power of the Laplacian must kill the
    binary form. Exact inputs are decided exactly; float points are checked
    relative to the size of the terms in the sum.
    """
    if isinstance(data, HomogeneousForm):
        f = data
    else:
        f = form_from_points(data)
    d = f.degree
    if d % 2 == 1:
        return True
    cs = _laplace_functional(d)
    coeffs = [f.coefficient((d - j, j)) for j in range(d + 1)]
    if f.exact:
        return sum((c * a for c, a in zip(cs, coeffs)), Fraction(0)) == 0
    terms = [complex(a) * int(c) for c, a in zip(cs, coeffs)]
    size = sum(abs(t) for t in terms)
    return size == 0 or abs(sum(terms)) <= tol * size


def rational_rotation(p: int, q: int):
    """Rotation matrix with rational entries from the Pythagorean triple of (p, q)."""
    a, b, c = p * p - q * q, 2 * p * q, p * p + q * q
    return [[Fraction(a, c), Fraction(-b, c)], [Fraction(b, c), Fraction(a, c)]]


# ---------------------------------------------------------------------------
# dimension experiment


def ec_dimension_estimate(d: int, seed: int = 0, rtol: float = 1e-9) -> int:
    """Numeric dimension of EC_{2,d} in (P^d)^d at a random tensor.

    The affine cone is the image of (A, c_1..c_d) -> (c_k l^[k](A))_k; its
    dimension is the Jacobian rank and each projective factor removes one.
    """
    if not 2 <= d <= 6:
        raise ValueError("need 2 <= d <= 6")
    rng = np.random.default_rng(seed)
    Ls = [build_ell_map(2, d, k).astype(float) for k in range(1, d + 1)]
    A = rng.standard_normal(2 ** d)
    c = rng.standard_normal(d) + 2.0
    blocks = []
    for k, L in enumerate(Ls):
        row = np.zeros((d + 1, 2 ** d + d))
        row[:, : 2 ** d] = c[k] * L
        row[:, 2 ** d + k] = L @ A
        blocks.append(row)
    J = np.vstack(blocks)
    return numeric_rank(J, rtol) - d


def conjectured_ec_dimension(d: int) -> int:
    e = build_ed(d).e
    return d * d - (e - d + 1)
