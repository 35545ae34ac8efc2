"""Sparse homogeneous polynomials, univariate roots, resultants and kernels.

Two scalar modes are supported and a computation stays in one of them:

* exact: coefficients are :class:`fractions.Fraction` (ints are promoted),
  nothing is ever rounded;
* float: coefficients are Python/numpy complex numbers.

Univariate polynomials are plain sequences of coefficients in *ascending*
order (``p[i]`` is the coefficient of ``t**i``).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from numbers import Number, Rational

import numpy as np

DEDUP_TOL = 1e-8
RESIDUAL_TOL = 1e-9
RANK_RTOL = 1e-10
CLUSTER_TOL = 1e-6
# pivot choice in point normalization treats near-ties as ties
_PIVOT_SLACK = 1e-6


def is_exact(c) -> bool:
    return isinstance(c, Rational) and not isinstance(c, bool)


def to_exact(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, (float, np.floating)):
        return Fraction(float(c))
    if isinstance(c, (complex, np.complexfloating)) and c.imag == 0:
        return Fraction(float(c.real))
    raise TypeError(f"cannot convert {c!r} to an exact rational")


def _scalar(c):
    """Promote a coefficient to the canonical type of its mode."""
    if is_exact(c):
        return Fraction(c)
    if isinstance(c, (np.integer,)):
        return Fraction(int(c))
    return complex(c)


def fraction_to_float(c: Fraction, shift: int = 0) -> float:
    """float(c * 2**-shift) without overflowing on huge rationals."""
    if shift == 0:
        try:
            return float(c)
        except OverflowError:
            pass
    num, den = c.numerator, c.denominator
    if shift >= 0:
        den <<= shift
    else:
        num <<= -shift
    return num / den if abs(num) < (1 << 1000) else float(Fraction(num, den))


# ----------------------------------------------------------------------------
# monomials


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given degree in graded-lex order (x1^d first)."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return out


def monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomials(nvars, degree))}


# ----------------------------------------------------------------------------
# homogeneous forms


class HomogeneousForm:
    """Sparse homogeneous polynomial: ``terms`` maps exponent tuples to scalars.

    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "degree", "terms", "_compiled")

    def __init__(self, nvars: int, degree: int, terms=None):
        self.nvars = int(nvars)
        self.degree = int(degree)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != self.nvars or sum(e) != self.degree or min(e) < 0:
                raise ValueError(f"exponent {e} does not fit a degree-{degree} form in {nvars} variables")
            c = _scalar(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}
        self._compiled = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, nvars, degree):
        return cls(nvars, degree)

    @classmethod
    def monomial(cls, exponent, coeff=1):
        exponent = tuple(exponent)
        return cls(len(exponent), sum(exponent), {exponent: coeff})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def from_coefficients(cls, nvars, degree, coeffs):
        """Build from a coefficient vector in :func:`monomials` order."""
        mons = monomials(nvars, degree)
        if len(coeffs) != len(mons):
            raise ValueError("coefficient vector has the wrong length")
        return cls(nvars, degree, dict(zip(mons, coeffs)))

    # properties -----------------------------------------------------------
    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), 0)

    def coefficients(self):
        """Dense coefficient vector in :func:`monomials` order."""
        zero = Fraction(0) if self.exact else 0j
        return [self.terms.get(e, zero) for e in monomials(self.nvars, self.degree)]

    def norm1(self) -> float:
        return float(sum(abs(complex(c)) for c in self.terms.values()))

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if other.nvars != self.nvars or (other.degree != self.degree and other.terms and self.terms):
            raise ValueError("forms must share variables and degree")

    def __add__(self, other):
        if isinstance(other, Number) and other == 0:
            return self
        self._check(other)
        deg = self.degree if self.terms else other.degree
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomogeneousForm(self.nvars, deg, terms)

    __radd__ = __add__

    def __neg__(self):
        return HomogeneousForm(self.nvars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomogeneousForm):
            c = _scalar(other)
            return HomogeneousForm(self.nvars, self.degree, {e: c * v for e, v in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("forms must share variables")
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return HomogeneousForm(self.nvars, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = HomogeneousForm(self.nvars, 0, {(0,) * self.nvars: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"HomogeneousForm({self.nvars}, {self.degree}, 0)"
        names = "xyzw" if self.nvars <= 4 else None
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                (names[i] if names else f"x{i + 1}") + (f"^{a}" if a > 1 else "")
                for i, a in enumerate(e) if a
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # calculus and evaluation ----------------------------------------------
    def partial(self, i: int) -> "HomogeneousForm":
        if not 0 <= i < self.nvars:
            raise IndexError("variable index out of range")
        if self.degree == 0:
            return HomogeneousForm(self.nvars, 0)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return HomogeneousForm(self.nvars, self.degree - 1, terms)

    def gradient(self) -> list["HomogeneousForm"]:
        return [self.partial(i) for i in range(self.nvars)]

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point has the wrong length")
        exact_in = self.exact and all(is_exact(p) for p in point)
        if exact_in:
            point = [Fraction(p) for p in point]
            total = Fraction(0)
            for e, c in self.terms.items():
                term = c
                for p, a in zip(point, e):
                    if a:
                        term *= p ** a
                total += term
            return total
        total = 0j
        for e, c in self.terms.items():
            term = complex(c)
            for p, a in zip(point, e):
                if a:
                    term *= complex(p) ** a
            total += term
        return total

    def compiled(self):
        """(exponent matrix, complex coefficient vector) for fast evaluation."""
        if self._compiled is None:
            if self.terms:
                E = np.array(list(self.terms.keys()), dtype=np.int64)
                c = np.array([complex(v) for v in self.terms.values()], dtype=complex)
            else:
                E = np.zeros((0, self.nvars), dtype=np.int64)
                c = np.zeros(0, dtype=complex)
            self._compiled = (E, c)
        return self._compiled

    def evaluate_many(self, X):
        """Evaluate at the rows of ``X`` (shape (m, nvars)) in float mode."""
        E, c = self.compiled()
        X = np.asarray(X, dtype=complex)
        if not len(c):
            return np.zeros(X.shape[0], dtype=complex)
        V = np.prod(X[:, None, :] ** E[None, :, :], axis=2)
        return V @ c

    def compose(self, subs: list["HomogeneousForm"]) -> "HomogeneousForm":
        """Substitute forms (all of one degree) for the variables."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitute per variable")
        nv = subs[0].nvars
        deg = self.degree * subs[0].degree
        out = HomogeneousForm(nv, deg)
        powers = [[HomogeneousForm(nv, 0, {(0,) * nv: 1})] for _ in subs]
        for e, c in self.terms.items():
            term = HomogeneousForm(nv, 0, {(0,) * nv: c})
            for i, a in enumerate(e):
                while len(powers[i]) <= a:
                    powers[i].append(powers[i][-1] * subs[i])
                if a:
                    term = term * powers[i][a]
            out = out + term if out.terms else term
        return HomogeneousForm(nv, deg, out.terms)

    def to_float(self) -> "HomogeneousForm":
        return HomogeneousForm(self.nvars, self.degree, {e: complex(c) for e, c in self.terms.items()})

    def to_exact(self) -> "HomogeneousForm":
        return HomogeneousForm(self.nvars, self.degree, {e: to_exact(c) for e, c in self.terms.items()})

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        exact = self.exact
        terms = {}
        for e, c in sorted(self.terms.items(), reverse=True):
            key = ",".join(str(a) for a in e)
            terms[key] = [c.numerator, c.denominator] if exact else [c.real, c.imag]
        return {"vars": self.nvars, "deg": self.degree,
                "mode": "rational" if exact else "float", "terms": terms}

    @classmethod
    def from_json(cls, obj: dict) -> "HomogeneousForm":
        terms_in = obj.get("terms", {})
        mode = obj.get("mode")
        if mode is None:
            ints = all(isinstance(a, int) for v in terms_in.values() for a in _as_pair(v))
            mode = "rational" if ints else "float"
        terms = {}
        for key, v in terms_in.items():
            e = tuple(int(a) for a in key.split(","))
            terms[e] = parse_scalar(v, mode)
        return cls(obj["vars"], obj["deg"], terms)


def _as_pair(v):
    return v if isinstance(v, (list, tuple)) else [v]


def parse_scalar(v, mode: str):
    """Decode a JSON scalar: ``[num, den]``/``[re, im]`` pairs, numbers or 'p/q' strings."""
    if mode == "rational":
        if isinstance(v, (list, tuple)):
            return Fraction(int(v[0]), int(v[1]))
        return to_exact(v)
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(float(Fraction(v)))
    return complex(v)


def encode_scalar(c, mode: str):
    if mode == "rational":
        c = to_exact(c)
        return [c.numerator, c.denominator]
    c = complex(c)
    return [c.real, c.imag]


def linear_form(coeffs) -> HomogeneousForm:
    n = len(coeffs)
    return HomogeneousForm(n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})


# ----------------------------------------------------------------------------
# projective points


class ProjectivePoint:
    """Normalized point of complex projective space.

    The first coordinate of (numerically) maximal modulus is scaled to 1.
    ``meta`` holds solver annotations such as the residual.
    """

    __slots__ = ("coords", "meta")

    def __init__(self, coords, normalize: bool = True, **meta):
        v = np.asarray([complex(c) for c in coords], dtype=complex)
        if normalize:
            v = normalize_coords(v)
        self.coords = v
        self.coords.setflags(write=False)
        self.meta = meta

    @property
    def n(self) -> int:
        return len(self.coords)

    def pivot(self) -> int:
        return int(np.flatnonzero(np.abs(self.coords - 1) == 0)[0]) if np.any(self.coords == 1) else int(np.argmax(np.abs(self.coords)))

    def distance(self, other) -> float:
        """Max-norm distance of normalized coordinates (pivot of either point)."""
        q = other.coords if isinstance(other, ProjectivePoint) else normalize_coords(np.asarray(other, complex))
        best = math.inf
        for p, r in ((self.coords, q), (q, self.coords)):
            k = _pivot(p)
            if r[k] != 0:
                best = min(best, float(np.max(np.abs(p - r / r[k]))))
        return best

    def is_real(self, tol: float = 1e-7) -> bool:
        return bool(np.max(np.abs(self.coords.imag)) < tol)

    def sort_key(self):
        return tuple(x for c in self.coords for x in (round(c.real, 8) + 0.0, round(c.imag, 8) + 0.0))

    def to_json(self) -> dict:
        out = {"coords": [[c.real, c.imag] for c in self.coords]}
        for k, v in self.meta.items():
            out[k] = v
        return out

    @classmethod
    def from_json(cls, obj) -> "ProjectivePoint":
        coords = obj["coords"] if isinstance(obj, dict) else obj
        return cls([parse_scalar(c, "float") for c in coords])

    def __repr__(self):
        body = ":".join(_fmt(c) for c in self.coords)
        return f"({body})"

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def _fmt(c: complex) -> str:
    if abs(c.imag) < 1e-12:
        return f"{c.real:.6g}"
    return f"{c.real:.6g}{c.imag:+.6g}j"


def _pivot(v) -> int:
    m = np.abs(v)
    mx = m.max()
    return int(np.flatnonzero(m >= mx * (1 - _PIVOT_SLACK))[0])


def normalize_coords(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if not np.any(v):
        raise ValueError("the zero vector is not a projective point")
    return v / v[_pivot(v)]


def dedup_points(points, tol: float = DEDUP_TOL):
    """Greedy clustering; returns list of (representative, count)."""
    reps: list[list] = []
    for p in points:
        for rep in reps:
            if rep[0].distance(p) < tol:
                rep[1] += 1
                break
        else:
            reps.append([p, 1])
    return [(p, c) for p, c in reps]


def hausdorff(P, Q) -> float:
    P = [p if isinstance(p, ProjectivePoint) else ProjectivePoint(p) for p in P]
    Q = [q if isinstance(q, ProjectivePoint) else ProjectivePoint(q) for q in Q]
    if not P and not Q:
        return 0.0
    if not P or not Q:
        return math.inf
    d1 = max(min(p.distance(q) for q in Q) for p in P)
    d2 = max(min(q.distance(p) for p in P) for q in Q)
    return max(d1, d2)


# ----------------------------------------------------------------------------
# univariate polynomials (ascending coefficient lists)


def poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_sub(p, q):
    return poly_add(p, [-c for c in q])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_deriv(p):
    return poly_trim([i * p[i] for i in range(1, len(p))])


def poly_divmod(p, q):
    """Exact division with remainder over the rationals."""
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [Fraction(c) for c in poly_trim(p)]
    lead = Fraction(q[-1])
    if len(r) < len(q):
        return [], r
    quo = [Fraction(0)] * (len(r) - len(q) + 1)
    for k in range(len(r) - len(q), -1, -1):
        c = r[k + len(q) - 1] / lead
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return poly_trim(quo), poly_trim(r[: len(q) - 1])


def poly_monic(p):
    p = poly_trim(p)
    if not p:
        return p
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def poly_gcd(p, q):
    """Monic gcd over the rationals."""
    a, b = poly_trim(p), poly_trim(q)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, poly_monic(r)
    return poly_monic(a)


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p):
    """Yun's algorithm: list of (squarefree factor, multiplicity), exact."""
    f = poly_monic([Fraction(c) for c in p])
    if len(f) <= 1:
        return []
    out = []
    fp = poly_deriv(f)
    a = poly_gcd(f, fp)
    b = poly_divmod(f, a)[0]
    c = poly_divmod(fp, a)[0]
    dd = poly_sub(c, poly_deriv(b))
    i = 1
    while len(b) > 1:
        a = poly_gcd(b, dd)
        b_next = poly_divmod(b, a)[0]
        c = poly_divmod(dd, a)[0]
        if len(a) > 1:
            out.append((a, i))
        b = b_next
        dd = poly_sub(c, poly_deriv(b))
        i += 1
    return out


def sturm_real_root_count(p) -> int:
    """Number of distinct real roots of an exact polynomial."""
    p = poly_trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return 0
    seq = [p, poly_deriv(p)]
    while True:
        _, r = poly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs):
        s = [x for x in signs if x != 0]
        return sum(1 for u, v in zip(s, s[1:]) if (u > 0) != (v > 0))

    at_pinf = [q[-1] for q in seq]
    at_minf = [q[-1] * (-1) ** (len(q) - 1) for q in seq]
    return changes(at_minf) - changes(at_pinf)


def _to_float_coeffs(p):
    """Complex numpy coefficients (ascending), rescaled so the largest is ~1."""
    if all(isinstance(c, Fraction) for c in p):
        nz = [c for c in p if c]
        shift = max(c.numerator.bit_length() - c.denominator.bit_length() for c in nz)
        return np.array([fraction_to_float(c, shift) for c in p], dtype=complex)
    arr = np.array([complex(c) for c in p], dtype=complex)
    return arr / np.max(np.abs(arr))


def _polish(coeffs, roots, iters: int = 8):
    """Newton steps on a (nearly) simple-rooted polynomial, kept only if they help."""
    desc = coeffs[::-1]
    ddesc = np.polyder(desc) if len(desc) > 1 else np.zeros(1)
    out = []
    for r in roots:
        z = complex(r)
        fz = np.polyval(desc, z)
        for _ in range(iters):
            d = np.polyval(ddesc, z)
            if d == 0:
                break
            z_new = z - fz / d
            f_new = np.polyval(desc, z_new)
            if abs(f_new) >= abs(fz):
                break
            z, fz = z_new, f_new
        out.append(z)
    return out


def _simple_roots(coeffs):
    desc = coeffs[::-1]
    if len(desc) <= 1:
        return []
    roots = np.roots(desc)
    return _polish(coeffs, roots)


def cluster_roots(roots, radius: float = CLUSTER_TOL):
    clusters: list[list[complex]] = []
    for r in roots:
        for cl in clusters:
            c = cl[0]
            if abs(r - c) < radius * max(1.0, abs(c)):
                cl.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]


def univariate_roots(p, exact: bool | None = None):
    """Complex roots with multiplicities of a nonzero univariate polynomial.

    ``p`` lists coefficients in ascending order. Exact input gets an exact
    squarefree decomposition, so multiplicities are exact; float input is
    clustered at radius :data:`CLUSTER_TOL` (relative to the root modulus).
    """
    p = poly_trim(p)
    if not p:
        raise ValueError("the zero polynomial has no finite root set")
    if exact is None:
        exact = all(is_exact(c) for c in p)
    if exact:
        out = []
        for factor, mult in squarefree_decomposition([Fraction(c) for c in p]):
            for r in _simple_roots(_to_float_coeffs(factor)):
                out.append((r, mult))
        return out
    coeffs = _to_float_coeffs(p)
    return cluster_roots(_simple_roots(coeffs))


def binary_form_roots(f: HomogeneousForm):
    """Zeros of a binary form in P^1 as (ProjectivePoint, multiplicity) pairs.

    Multiplicities sum to the degree; a vanishing leading coefficient gives
    the point (0:1).
    """
    if f.nvars != 2:
        raise ValueError("binary forms have two variables")
    if f.is_zero():
        raise ValueError("the zero form vanishes everywhere")
    d = f.degree
    m = min(e[0] for e in f.terms)
    out = []
    if m:
        out.append((ProjectivePoint([0, 1]), m))
    g = [f.terms.get((a, d - a), 0) for a in range(d, m - 1, -1)]  # ascending in t = y/x
    if len(g) > 1:
        for t, mult in univariate_roots(g, exact=f.exact):
            out.append((ProjectivePoint([1, t]), mult))
    return out


def binary_gcd(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    """Exact gcd of two binary forms (monic in the y/x chart)."""
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    mf = min(e[0] for e in f.terms)
    mg = min(e[0] for e in g.terms)
    m = min(mf, mg)

    def chart(h, mh):
        return [h.terms.get((a, h.degree - a), Fraction(0)) for a in range(h.degree, mh - 1, -1)]

    u = poly_gcd(chart(f, mf), chart(g, mg))
    k = len(u) - 1
    terms = {(m + k - j, j): c for j, c in enumerate(u) if c}
    # (m+k-j, j): x^m times x^(k-j) y^j
    return HomogeneousForm(2, m + k, terms)


# ----------------------------------------------------------------------------
# resultants


def sylvester_matrix(f, g):
    """Sylvester matrix of two univariate polynomials given ascending.

    Entries may be any ring elements supporting + and * (e.g. coefficient
    lists handled by the caller); here they are kept opaque.
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = 0
    S = [[zero] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(reversed(f)):
            S[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(reversed(g)):
            S[n + i][i + j] = c
    return S


def _as_bivariate(f: HomogeneousForm, elim: int, chart: int | None):
    """Coefficients of f in the eliminated variable as polynomials in the other one."""
    keep = [i for i in range(f.nvars) if i != elim and i != chart]
    if len(keep) != 1:
        raise ValueError("exactly one variable must remain after elimination")
    (u,) = keep
    coeffs: dict[int, dict[int, object]] = {}
    for e, c in f.terms.items():
        coeffs.setdefault(e[elim], {})
        coeffs[e[elim]][e[u]] = coeffs[e[elim]].get(e[u], 0) + c
    top = max(coeffs) if coeffs else -1
    out = []
    for k in range(top + 1):
        row = coeffs.get(k, {})
        deg = max(row) if row else -1
        out.append(poly_trim([row.get(i, 0) for i in range(deg + 1)]))
    return out


def _int_poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _int_poly_exact_div(p, q):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    while q and q[-1] == 0:
        q = q[:-1]
    if not p:
        return []
    quo = [0] * (len(p) - len(q) + 1)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        c, rem = divmod(p[k + len(q) - 1], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                p[k + j] -= c * b
    if any(p):
        raise ArithmeticError("inexact polynomial division")
    return quo


def _bareiss_det_poly(M):
    """Determinant of a square matrix of integer polynomials (fraction-free)."""
    n = len(M)
    if n == 0:
        return [1]
    A = [[list(e) for e in row] for row in M]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not any(A[k][k]):
            for r in range(k + 1, n):
                if any(A[r][k]):
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(_int_poly_mul(A[i][j], A[k][k]), _int_poly_mul(A[i][k], A[k][j]))
                A[i][j] = _int_poly_exact_div(num, prev) if num else []
            A[i][k] = []
        prev = A[k][k]
    det = poly_trim(A[n - 1][n - 1])
    return [sign * c for c in det]


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def sylvester_resultant(f: HomogeneousForm, g: HomogeneousForm, elim: int, chart: int | None = None):
    """Res_elim(f, g) as an ascending coefficient list in the remaining variable.

    If ``chart`` is given that variable is set to 1 first. An identically
    zero result (``[]``) signals a common factor.
    """
    F = _as_bivariate(f, elim, chart)
    G = _as_bivariate(g, elim, chart)
    if len(F) <= 1 and len(G) <= 1:
        raise ValueError("both polynomials are constant in the eliminated variable")
    if not F or not G:
        return []
    if len(F) == 1:
        return poly_pow(F[0], len(G) - 1)
    if len(G) == 1:
        return poly_pow(G[0], len(F) - 1)
    if f.exact and g.exact:
        den = 1
        for row in F + G:
            for c in row:
                den = _lcm(den, Fraction(c).denominator)
        Fi = [[int(Fraction(c) * den) for c in row] for row in F]
        Gi = [[int(Fraction(c) * den) for c in row] for row in G]
        S = sylvester_matrix(Fi, Gi)
        S = [[e if isinstance(e, list) else [] for e in row] for row in S]
        det = _bareiss_det_poly(S)
        scale = Fraction(1, den ** (len(F) - 1 + len(G) - 1))
        return poly_trim([Fraction(c) * scale for c in det])
    return _resultant_float(F, G)


def poly_pow(p, k):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def _resultant_float(F, G):
    """Float resultant by evaluating Sylvester determinants on a circle."""
    m, n = len(F) - 1, len(G) - 1
    dmax_f = max(len(c) for c in F) - 1
    dmax_g = max(len(c) for c in G) - 1
    bound = max(n * max(dmax_f, 0) + m * max(dmax_g, 0), 0)
    N = bound + 1
    scale = 1.0
    vals = []
    for k in range(N):
        t = scale * np.exp(2j * np.pi * k / N)
        fv = [complex(poly_eval([complex(c) for c in row], t)) if row else 0j for row in F]
        gv = [complex(poly_eval([complex(c) for c in row], t)) if row else 0j for row in G]
        S = np.array(sylvester_matrix(fv, gv), dtype=complex)
        vals.append(np.linalg.det(S))
    coeffs = np.fft.fft(np.array(vals)) / N
    # fft of samples gives coefficients in reversed-rotation order
    coeffs = np.array([coeffs[(-k) % N] for k in range(N)]) / scale ** np.arange(N)
    tol = 1e-12 * max(np.max(np.abs(coeffs)), 1e-300)
    out = [complex(c) for c in coeffs]
    while out and abs(out[-1]) < tol:
        out.pop()
    return out


# ----------------------------------------------------------------------------
# kernels and ranks


def _as_exact_matrix(M):
    return [[to_exact(c) for c in row] for row in M]


def bareiss_echelon(M):
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon rows, pivot columns). Rows are scaled integer vectors.
    """
    A = [list(row) for row in M]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a_ic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - a_ic * row_r[j]) // prev
            row_i[c] = 0
        # rows above the current one are untouched; remaining ones stay integral
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _integer_rows(M):
    rows = []
    for row in _as_exact_matrix(M):
        den = 1
        for c in row:
            den = _lcm(den, c.denominator)
        rows.append([int(c * den) for c in row])
    return rows


def exact_rank(M) -> int:
    if not len(M):
        return 0
    return len(bareiss_echelon(_integer_rows(M))[1])


def _exact_nullspace(M, ncols):
    if not len(M):
        basis = [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
        return basis
    E, pivots = bareiss_echelon(_integer_rows(M))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((E[r][j] * v[j] for j in range(pc + 1, ncols) if v[j]), Fraction(0))
            v[pc] = -s / E[r][pc]
        basis.append(v)
    return basis


def nullspace(M, exact: bool | None = None, rtol: float = RANK_RTOL):
    """Kernel basis as the columns of an array of shape (ncols, k).

    Exact mode uses fraction-free elimination and returns an object array of
    Fractions; float mode uses the SVD and treats singular values below
    ``rtol`` times the largest as zero.
    """
    M = list(M) if not isinstance(M, np.ndarray) else M
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    if exact is None:
        exact = all(is_exact(c) for r in rows for c in r)
    if exact:
        basis = _exact_nullspace(rows, ncols)
        out = np.empty((ncols, len(basis)), dtype=object)
        for j, v in enumerate(basis):
            for i, c in enumerate(v):
                out[i, j] = c
        return out
    A = np.array(rows, dtype=complex).reshape(len(rows), ncols)
    if A.size == 0:
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(A)
    rank = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return vh[rank:].conj().T


def numeric_rank(M, rtol: float = RANK_RTOL) -> int:
    A = np.asarray(M, dtype=complex)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0


def rank(M, exact: bool | None = None, rtol: float = RANK_RTOL) -> int:
    rows = [list(r) for r in M]
    if exact is None:
        exact = all(is_exact(c) for r in rows for c in r)
    return exact_rank(rows) if exact else numeric_rank(rows, rtol)


def all_subsets(items, k):
    return itertools.combinations(items, k)
