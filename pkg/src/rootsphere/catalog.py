"""Named constructions: classical root systems, their affine ladders, oracles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb, factorial

from .affine_root import GeneratedAffineSupport
from .exact import AffineVector, Q, Vector, inner, rational, vector, vscale
from .finite_root import RootSystem, weyl_vector
from .group_ring import (
    GroupRingElement,
    SignedSupportMap,
    SupportMap,
    exact_divide,
    expand_product,
)
from .quadric import SphereFit, fit_sphere

_LETTERS = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    ambient_dim: int
    roots: RootSystem
    positive: tuple[Vector, ...]
    expected_weyl_order: int
    expected_positive_count: int


def _pm_pairs(n: int, idx) -> list[Vector]:
    out = []
    for i, j in combinations(idx, 2):
        for si, sj in product((1, -1), repeat=2):
            v = [Q(0)] * n
            v[i], v[j] = Q(si), Q(sj)
            out.append(tuple(v))
    return out


def _axis(n: int, i: int, s: int) -> Vector:
    v = [Q(0)] * n
    v[i] = Q(s)
    return tuple(v)


def _e8_roots() -> list[Vector]:
    roots = _pm_pairs(8, range(8))
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(Q(s, 2) for s in signs))
    return roots


def _e7_roots() -> list[Vector]:
    roots = _pm_pairs(8, range(6))
    for s in (1, -1):
        v = [Q(0)] * 8
        v[6], v[7] = Q(s), Q(-s)
        roots.append(tuple(v))
    for signs in product((1, -1), repeat=6):
        if signs.count(-1) % 2 == 1:
            for s in (1, -1):
                roots.append(tuple(Q(x, 2) for x in signs) + (Q(s, 2), Q(-s, 2)))
    return roots


def _e6_roots() -> list[Vector]:
    roots = _pm_pairs(8, range(5))
    for signs in product((1, -1), repeat=5):
        if signs.count(-1) % 2 == 0:
            head = tuple(Q(x, 2) for x in signs)
            v = head + (Q(-1, 2), Q(-1, 2), Q(1, 2))
            roots.append(v)
            roots.append(tuple(-c for c in v))
    return roots


def _f4_roots() -> list[Vector]:
    roots = _pm_pairs(4, range(4))
    for i in range(4):
        for s in (1, -1):
            roots.append(_axis(4, i, s))
    for signs in product((1, -1), repeat=4):
        roots.append(tuple(Q(s, 2) for s in signs))
    return roots


def _g2_roots() -> list[Vector]:
    half = [(1, -1, 0), (0, 1, -1), (1, 0, -1), (2, -1, -1), (-1, 2, -1), (-1, -1, 2)]
    roots = []
    for v in half:
        roots.append(vector(v))
        roots.append(vector([-c for c in v]))
    return roots


def _parse_name(name: str) -> tuple[str, int]:
    name = name.strip()
    if len(name) < 2 or name[0] not in _LETTERS or not name[1:].isdigit():
        raise ValueError(f"unknown catalog name: {name}")
    return name[0], int(name[1:])


def _build_roots(letter: str, n: int) -> tuple[int, list[Vector], int]:
    """Ambient dimension, root list, and group order for a validated name."""
    if letter == "A" and n >= 1:
        roots = []
        for i, j in combinations(range(n + 1), 2):
            v = [Q(0)] * (n + 1)
            v[i], v[j] = Q(1), Q(-1)
            roots.append(tuple(v))
            roots.append(tuple(-c for c in v))
        return n + 1, roots, factorial(n + 1)
    if letter == "B" and n >= 2:
        roots = _pm_pairs(n, range(n))
        roots += [_axis(n, i, s) for i in range(n) for s in (1, -1)]
        return n, roots, 2**n * factorial(n)
    if letter == "C" and n >= 3:
        roots = _pm_pairs(n, range(n))
        roots += [_axis(n, i, 2 * s) for i in range(n) for s in (1, -1)]
        return n, roots, 2**n * factorial(n)
    if letter == "D" and n >= 4:
        return n, _pm_pairs(n, range(n)), 2 ** (n - 1) * factorial(n)
    if letter == "E" and n in (6, 7, 8):
        build = {6: _e6_roots, 7: _e7_roots, 8: _e8_roots}[n]
        order = {6: 51840, 7: 2903040, 8: 696729600}[n]
        return 8, build(), order
    if letter == "F" and n == 4:
        return 4, _f4_roots(), 1152
    if letter == "G" and n == 2:
        return 3, _g2_roots(), 12
    raise ValueError(f"unknown catalog name: {letter}{n}")


def standard_finite(name: str) -> CatalogEntry:
    """An exact rational realization of the named system, with canonical positives.

    Positivity is taken against the functional (1, 2, 4, ...), which is
    nonvanishing on every root of every catalog realization.
    """
    letter, n = _parse_name(name)
    dim, roots, order = _build_roots(letter, n)
    sep = tuple(Q(2**i) for i in range(dim))
    positive = tuple(sorted(a for a in roots if inner(sep, a) > 0))
    if 2 * len(positive) != len(roots):
        raise ArithmeticError("canonical functional failed to split the roots")
    return CatalogEntry(
        name=f"{letter}{n}",
        ambient_dim=dim,
        roots=RootSystem(dim, tuple(roots)),
        positive=positive,
        expected_weyl_order=order,
        expected_positive_count=len(roots) // 2,
    )


def default_grading(entry: CatalogEntry) -> AffineVector:
    """Level-positive grading whose level-0 positives match the canonical ones.

    Uses (1; t*rho) with t small enough that no ladder point of nonzero level
    can reach grade 0.
    """
    rho = weyl_vector(entry.positive)
    m = max(abs(inner(a, rho)) for a in entry.roots.roots)
    return AffineVector(Q(1), vscale(Q(1, 2 * m), rho))


def untwisted_affine(name: str, cutoff, grading: AffineVector | None = None) -> GeneratedAffineSupport:
    """Level ladders of period 1 over the named finite system."""
    entry = standard_finite(name)
    if grading is None:
        grading = default_grading(entry)
    return GeneratedAffineSupport(
        dim=entry.ambient_dim,
        roots=entry.roots.roots,
        grading=grading,
        cutoff=rational(cutoff),
        period=Q(1),
        name=entry.name,
    )


# -- exponent sequence with product expansion 1 - 2X ---------------------------------


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs a positive integer")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


def remark29_exponents(kmax: int) -> list[int]:
    """e_1..e_kmax with prod_k (1 - X^k)^{e_k} = 1 - 2X, via Moebius inversion.

    Asserts each value is a positive integer; a failure here would mean the
    closed formula and the product identity disagree.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    out = []
    for k in range(1, kmax + 1):
        total = sum(mobius(k // d) * 2**d for d in divisors(k))
        if total % k != 0:
            raise ArithmeticError("exponent is not an integer")
        e = total // k
        if e < 1:
            raise ArithmeticError("exponent is not positive")
        out.append(e)
    return out


def series_inversion_oracle(kmax: int) -> list[int]:
    """The same exponents recovered degree by degree from the series 1 - 2X.

    Keeps the residual series after stripping the factors found so far; its
    lowest nonconstant coefficient determines the next exponent.  Integer
    arithmetic throughout.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    n = kmax
    residual = [0] * (n + 1)
    residual[0] = 1
    residual[1] = -2
    out = []
    for k in range(1, n + 1):
        e = -residual[k]
        out.append(e)
        if e == 0:
            continue
        # multiply by (1 - X^k)^{-e} = sum_j C(e+j-1, j) X^{jk}
        updated = [0] * (n + 1)
        for j in range(0, n // k + 1):
            coeff = comb(e + j - 1, j) if e >= 0 else (-1) ** j * comb(-e, j)
            if coeff == 0:
                continue
            for i in range(0, n + 1 - j * k):
                updated[i + j * k] += coeff * residual[i]
        residual = updated
    return out


# -- signed support whose expansion still lands on a sphere --------------------------


def remark210_counterexample() -> tuple[SignedSupportMap, GroupRingElement, SphereFit]:
    """A signed support in dimension 4 whose expansion has spherical support.

    Realizes two directions with Gram matrix ((4,-2),(-2,4)) as rational
    vectors.  The expansion is a quotient, computed by exact division.  The
    absolute support doubled by negation is not a root system, so the sphere
    here genuinely needs the signed multiplicities.
    """
    alpha = vector([2, 0, 0, 0])
    beta = vector([-1, 1, 1, 1])
    gamma = tuple(a + b for a, b in zip(alpha, beta))
    m = SignedSupportMap(
        4,
        {
            vscale(Q(2), alpha): 1,
            vscale(Q(2), beta): 1,
            gamma: 1,
            alpha: -1,
            beta: -1,
        },
    )
    numerator = expand_product(SupportMap(4, {k: v for k, v in m.entries.items() if v > 0}))
    quotient = numerator
    for k, v in sorted(m.entries.items()):
        if v < 0:
            for _ in range(-v):
                quotient = exact_divide(quotient, expand_product(SupportMap(4, {k: 1})))
    fit = fit_sphere(quotient.support())
    if fit is None:
        raise ArithmeticError("expected spherical support")
    return m, quotient, fit
