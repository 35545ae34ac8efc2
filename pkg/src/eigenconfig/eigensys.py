"""Tensors, symmetric forms and the determinantal eigenpoint systems."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .counts import eigen_count
from .polycore import (HomogeneousForm, ProjectivePoint, is_exact, monomials, parse_scalar,
                       encode_scalar, to_exact, RESIDUAL_TOL)


class Tensor:
    """Dense n x ... x n tensor of order d, entries flattened in row-major order."""

    __slots__ = ("n", "d", "entries", "mode")

    def __init__(self, n: int, d: int, entries, mode: str | None = None):
        self.n, self.d = int(n), int(d)
        entries = list(np.asarray(entries, dtype=object).reshape(-1))
        if len(entries) != self.n ** self.d:
            raise ValueError(f"expected {self.n ** self.d} entries, got {len(entries)}")
        if mode is None:
            mode = "rational" if all(is_exact(c) or isinstance(c, np.integer) for c in entries) else "float"
        if mode == "rational":
            vals = [to_exact(c) for c in entries]
        elif mode == "float":
            vals = [complex(c) for c in entries]
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.entries = np.array(vals + [None], dtype=object)[:-1]

    @property
    def exact(self) -> bool:
        return self.mode == "rational"

    def indices(self):
        return itertools.product(range(self.n), repeat=self.d)

    def __getitem__(self, idx):
        return self.entries[self.offset(idx)]

    def offset(self, idx) -> int:
        off = 0
        for i in idx:
            off = off * self.n + i
        return off

    def as_array(self) -> np.ndarray:
        dtype = object if self.exact else complex
        return np.array(list(self.entries), dtype=dtype).reshape((self.n,) * self.d)

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        mode = "rational" if self.exact and other.exact else "float"
        return Tensor(self.n, self.d, [a + b for a, b in zip(self.entries, other.entries)], mode)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, c):
        mode = self.mode if (is_exact(c) or not self.exact) else "float"
        return Tensor(self.n, self.d, [c * a for a in self.entries], mode)

    __rmul__ = __mul__

    def _check(self, other):
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("tensor formats differ")

    def to_float(self) -> "Tensor":
        return Tensor(self.n, self.d, [complex(a) for a in self.entries], "float")

    def is_symmetric(self) -> bool:
        for idx in self.indices():
            s = tuple(sorted(idx))
            if s != idx and self[idx] != self[s]:
                return False
        return True

    def is_real(self) -> bool:
        return self.exact or all(abs(complex(a).imag) == 0 for a in self.entries)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "mode": self.mode,
                "entries": [encode_scalar(a, self.mode) for a in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "Tensor":
        mode = obj.get("mode")
        raw = obj["entries"]
        if mode is None:
            flat = [x for v in raw for x in (v if isinstance(v, list) else [v])]
            mode = "rational" if all(isinstance(x, (int, str)) for x in flat) else "float"
        return cls(obj["n"], obj["d"], [parse_scalar(v, mode) for v in raw], mode)

    def __eq__(self, other):
        return isinstance(other, Tensor) and (self.n, self.d) == (other.n, other.d) and \
            all(a == b for a, b in zip(self.entries, other.entries))

    def __repr__(self):
        return f"Tensor(n={self.n}, d={self.d}, mode={self.mode})"


def random_tensor(n, d, rng, low=-9, high=9, symmetric=False) -> Tensor:
    """Random integer tensor (exact mode); symmetric ones come from random forms."""
    if symmetric:
        phi = random_form(n, d, rng, low, high)
        return tensor_from_form(phi)
    vals = rng.integers(low, high + 1, size=n ** d)
    return Tensor(n, d, [Fraction(int(v)) for v in vals], "rational")


def random_form(n, d, rng, low=-9, high=9) -> HomogeneousForm:
    mons = monomials(n, d)
    vals = rng.integers(low, high + 1, size=len(mons))
    return HomogeneousForm(n, d, {e: Fraction(int(v)) for e, v in zip(mons, vals)})


def random_complex_tensor(n, d, rng) -> Tensor:
    vals = rng.standard_normal(n ** d) + 1j * rng.standard_normal(n ** d)
    return Tensor(n, d, vals, "float")


# ---------------------------------------------------------------------------
# symmetric tensors and forms


def _multinomial(counts) -> int:
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def tensor_from_form(phi: HomogeneousForm) -> Tensor:
    """The symmetric tensor whose associated form is phi."""
    n, d = phi.nvars, phi.degree
    exact = phi.exact
    entries = []
    for idx in itertools.product(range(n), repeat=d):
        e = [0] * n
        for i in idx:
            e[i] += 1
        c = phi.coefficient(e)
        m = _multinomial(e)
        entries.append(Fraction(c) / m if exact else complex(c) / m)
    return Tensor(n, d, entries, "rational" if exact else "float")


def form_from_tensor(A: Tensor, check_symmetric: bool = True) -> HomogeneousForm:
    """phi(x) = sum a_{i1..id} x_{i1} ... x_{id}."""
    if check_symmetric and not A.is_symmetric():
        raise ValueError("tensor is not symmetric")
    terms = {}
    for idx in A.indices():
        a = A[idx]
        if a == 0:
            continue
        e = [0] * A.n
        for i in idx:
            e[i] += 1
        e = tuple(e)
        terms[e] = terms.get(e, 0) + a
    return HomogeneousForm(A.n, A.d, terms)


form_from_symmetric_tensor = form_from_tensor


# ---------------------------------------------------------------------------
# eigen systems


def psi_map(A: Tensor, k: int = 1) -> list[HomogeneousForm]:
    """psi^[k]: coordinate i sums entries whose k-th index is i times the other variables."""
    if not 1 <= k <= A.d:
        raise ValueError("k must satisfy 1 <= k <= d")
    n, d = A.n, A.d
    terms = [dict() for _ in range(n)]
    for idx in A.indices():
        a = A[idx]
        if a == 0:
            continue
        e = [0] * n
        for slot, i in enumerate(idx):
            if slot != k - 1:
                e[i] += 1
        e = tuple(e)
        t = terms[idx[k - 1]]
        t[e] = t.get(e, 0) + a
    return [HomogeneousForm(n, d - 1, t) for t in terms]


def psi_from_form(phi: HomogeneousForm) -> list[HomogeneousForm]:
    return phi.gradient()


@dataclass
class EigenSystem:
    """The 2x2 minors x_i^l psi_j - x_j^l psi_i, i < j."""

    psi: list
    ell: int = 1
    k: int = 1
    forms: list = field(default_factory=list)
    pairs: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.psi)
        if not self.forms:
            xs = [HomogeneousForm.variable(n, i) ** self.ell for i in range(n)]
            for i, j in itertools.combinations(range(n), 2):
                self.pairs.append((i, j))
                self.forms.append(xs[i] * self.psi[j] - xs[j] * self.psi[i])

    @property
    def n(self) -> int:
        return len(self.psi)

    @property
    def d(self) -> int:
        return self.psi[0].degree + 1

    @property
    def exact(self) -> bool:
        return all(p.exact for p in self.psi)

    def is_trivial(self) -> bool:
        return all(f.is_zero() for f in self.forms)

    def scale(self) -> float:
        m = max((abs(complex(c)) for f in self.forms for c in f.terms.values()), default=0.0)
        return m if m > 0 else 1.0

    def residual(self, point) -> float:
        """Max minor value at the normalized point, relative to the largest coefficient."""
        p = point.coords if isinstance(point, ProjectivePoint) else ProjectivePoint(point).coords
        return max(abs(f.evaluate(list(p))) for f in self.forms) / self.scale()

    def residuals_many(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=complex)
        X = X / np.max(np.abs(X), axis=1, keepdims=True)
        vals = np.array([f.evaluate_many(X) for f in self.forms])
        return np.max(np.abs(vals), axis=0) / self.scale()

    def psi_at(self, point):
        return np.array([complex(f.evaluate(list(point))) for f in self.psi])


def eigen_system(A: Tensor, ell: int = 1, k: int = 1) -> EigenSystem:
    if ell < 1:
        raise ValueError("ell must be positive")
    return EigenSystem(psi_map(A, k), ell, k)


def eigen_system_from_form(phi: HomogeneousForm, ell: int = 1) -> EigenSystem:
    return EigenSystem(phi.gradient(), ell, 1)


def eigenvalue_of(system_or_tensor, point, ell: int = 1, tol: float = 1e-8):
    """lambda = psi_i(p) / p_i^l at the pivot (max-modulus) coordinate."""
    system = system_or_tensor
    if isinstance(system_or_tensor, Tensor):
        system = eigen_system(system_or_tensor, ell)
    p = point if isinstance(point, ProjectivePoint) else ProjectivePoint(point)
    res = system.residual(p)
    if res > tol:
        raise ValueError(f"not an eigenpoint (residual {res:.3e})")
    i = int(np.argmax(np.abs(p.coords)))
    return complex(system.psi[i].evaluate(list(p.coords))) / p.coords[i] ** system.ell


# ---------------------------------------------------------------------------
# Fermat


def fermat_form(n: int, d: int) -> HomogeneousForm:
    return HomogeneousForm(n, d, {tuple(d * (i == j) for j in range(n)): 1 for i in range(n)})


def _snap(z: complex) -> complex:
    # keep +-1 and +-i exact so residuals on the Fermat system are exactly zero
    re, im = z.real, z.imag
    re = round(re) if abs(re - round(re)) < 1e-14 else re
    im = round(im) if abs(im - round(im)) < 1e-14 else im
    return complex(re, im)


def fermat_eigenpoints(n: int, d: int, ell: int = 1) -> list[ProjectivePoint]:
    """Eigenpoints of x_1^d + ... + x_n^d, enumerated by support and roots of unity."""
    if ell != 1:
        raise NotImplementedError("no Fermat enumeration is known for ell >= 2")
    if d < 3:
        raise ValueError("d = 2 gives the identity matrix: every point is an eigenpoint")
    roots = [np.exp(2j * np.pi * r / (d - 2)) for r in range(d - 2)]
    out = []
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            for choice in itertools.product(roots, repeat=size - 1):
                v = np.zeros(n, dtype=complex)
                v[support[0]] = 1
                for i, z in zip(support[1:], choice):
                    v[i] = _snap(z)
                out.append(ProjectivePoint(v))
    assert len(out) == eigen_count(n, d)
    return out
