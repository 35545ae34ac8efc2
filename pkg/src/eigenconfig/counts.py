"""Closed-form counts and degrees attached to tensor eigenconfigurations.

Every quantity is an exact integer. The separate formulas for the genus of
the discriminant curve are kept independent on purpose so that their
agreement can serve as a check.
"""

from math import comb, factorial


def gbinom(m: int, k: int) -> int:
    """Binomial coefficient m(m-1)...(m-k+1)/k! valid for negative m."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= m - i
    return num // factorial(k)


def eigen_count(n: int, d: int) -> int:
    """Number of eigenpoints of a generic n^d tensor."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    if d == 2:
        return n
    return ((d - 1) ** n - 1) // (d - 2)


def eigen_count_ell(n: int, d: int, ell: int = 1) -> int:
    """Number of l-th eigenpoints of a generic tensor."""
    if n < 1 or d < 2 or ell < 1:
        raise ValueError("need n >= 1, d >= 2, ell >= 1")
    if ell == d - 1:
        return sum((d - 1) ** i * ell ** (n - 1 - i) for i in range(n))
    return ((d - 1) ** n - ell ** n) // (d - 1 - ell)


def genus_gamma(n: int, d: int, ell: int = 1) -> int:
    """Genus of the curve of eigenpoints along a generic pencil (double-sum form)."""
    if n < 2:
        raise ValueError("need n >= 2")
    total = 0
    for j in range(2, n):
        inner = 0
        for k in range(j + 1):
            inner += (-1) ** k * comb(n, j - k) * gbinom(j * (d - 1) - k * ell - 1, n - 1)
        total += (-1) ** (n - 1 + j) * (j - 1) * inner
    return total


def genus_gamma_en(n: int, d: int, ell: int = 1) -> int:
    """The same genus, read off from the Eagon-Northcott resolution."""
    if n < 2:
        raise ValueError("need n >= 2")
    total = 0
    for j in range(3, n + 1):
        for k in range(j - 2):
            total += (-1) ** (j - 1) * (j - k - 2) * comb(n, j) * gbinom(
                (n - 1) + (j - k - 1) * (1 - d) - (k + 1) * ell, n - 1)
    return total


def hilbert_polynomial_c(n: int, d: int, ell: int, t: int) -> int:
    """Hilbert polynomial of the eigenpoint curve of a generic pencil, at t."""
    if n < 3:
        raise ValueError("need n >= 3")
    total = gbinom(t + n - 1, n - 1)
    for j in range(3, n + 1):
        for k in range(j - 2):
            total += (-1) ** j * (j - k - 2) * comb(n, j) * gbinom(
                t + (n - 1) + (j - k - 1) * (1 - d) - (k + 1) * ell, n - 1)
    return total


def curve_degree(n: int, d: int, ell: int = 1) -> int:
    """Degree of the eigenpoint curve: complete homogeneous h_{n-2}(d-1, d-1, ell)."""
    a = d - 1
    # sum over exponents p + q + r = n - 2 of a^p a^q ell^r
    return sum((m + 1) * a ** m * ell ** (n - 2 - m) for m in range(n - 1))


def eigen_discriminant_degree(n: int, d: int, ell: int = 1) -> int:
    """Degree of the l-th eigendiscriminant hypersurface."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    return 2 * genus_gamma(n, d, ell) + 2 * eigen_count_ell(n, d, ell) - 2


def region_count(n: int, d: int) -> int:
    """Regions cut out of real projective (n-1)-space by d generic hyperplanes."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    return sum(comb(d - 1, i) for i in range(n))


def all_counts(n: int, d: int, ell: int = 1) -> dict:
    out = {
        "eigenCount": eigen_count(n, d),
        "eigenCountEll": eigen_count_ell(n, d, ell),
        "genusGamma": genus_gamma(n, d, ell),
        "genusGammaEN": genus_gamma_en(n, d, ell),
        "discDegree": eigen_discriminant_degree(n, d, ell),
        "regionCount": region_count(n, d),
    }
    return out
