"""Integer group ring of a rational vector lattice, with exact product expansion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Iterator

from .exact import Q, Vector, generic_separator, inner, rational, vadd, vector, vneg, vsub, zero_vector


class NotDivisibleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GroupRingElement:
    """Finite integer combination of formal exponentials e^v, keyed by lattice vector."""

    dim: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for v, c in self.terms.items():
            c = int(c)
            if c == 0:
                continue
            v = vector(v)
            if len(v) != self.dim:
                raise ValueError("dimension mismatch")
            clean[v] = c
        object.__setattr__(self, "terms", clean)

    def support(self) -> list[Vector]:
        return sorted(self.terms)

    def coefficient(self, v) -> int:
        return self.terms.get(vector(v), 0)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for v, c in other.terms.items():
            out[v] = out.get(v, 0) + c
        return GroupRingElement(self.dim, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.dim, {v: -c for v, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        return mul(self, other)


def one(dim: int) -> GroupRingElement:
    return GroupRingElement(dim, {zero_vector(dim): 1})


def monomial(dim: int, v, c: int = 1) -> GroupRingElement:
    return GroupRingElement(dim, {vector(v): c})


def mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    out: dict[Vector, int] = {}
    for va, ca in a.terms.items():
        for vb, cb in b.terms.items():
            k = vadd(va, vb)
            out[k] = out.get(k, 0) + ca * cb
    return GroupRingElement(a.dim, out)


def support(x: GroupRingElement) -> list[Vector]:
    return x.support()


@dataclass(frozen=True)
class SupportMap:
    """Finite multiplicity function m with m(0) = 0 and positive values."""

    dim: int
    entries: dict = field(default_factory=dict)

    _signed = False

    def __post_init__(self):
        clean = {}
        for v, m in self.entries.items():
            v = vector(v)
            if len(v) != self.dim:
                raise ValueError("dimension mismatch")
            m = int(m)
            if all(c == 0 for c in v):
                raise ValueError("m(0) must be 0")
            if m == 0:
                continue
            if m < 0 and not self._signed:
                raise ValueError("multiplicities must be positive")
            clean[v] = m
        object.__setattr__(self, "entries", clean)

    def items(self) -> Iterator[tuple[Vector, int]]:
        return iter(sorted(self.entries.items()))


@dataclass(frozen=True)
class SignedSupportMap(SupportMap):
    """Support map allowing negative multiplicities (still none at 0)."""

    _signed = True


def shift_equivalent(m: SupportMap, b) -> SupportMap:
    """Move one unit of multiplicity from b to -b (the sign-flip move)."""
    b = vector(b)
    entries = dict(m.entries)
    cur = entries.get(b, 0)
    if cur <= 0:
        raise ValueError("b must be a key of m with positive multiplicity")
    if cur == 1:
        del entries[b]
    else:
        entries[b] = cur - 1
    nb = vneg(b)
    nc = entries.get(nb, 0) + 1
    if nc == 0:
        del entries[nb]
    else:
        entries[nb] = nc
    return type(m)(m.dim, entries)


# -- internal integer-key kernels ------------------------------------------------
#
# Products run on integer tuples (all coordinates scaled by a common
# denominator): exact, and much faster than Fraction tuples in the hot loop.


def _common_denominator(vectors: Iterable[Vector]) -> int:
    d = 1
    for v in vectors:
        for c in v:
            d = lcm(d, c.denominator)
    return d


def _int_key(v: Vector, scale: int) -> tuple[int, ...]:
    return tuple(int(c * scale) for c in v)


def _frac_key(k: tuple[int, ...], scale: int) -> Vector:
    return tuple(Fraction(x, scale) for x in k)


def _mul_raw(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    bi = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bi:
            k = tuple(map(int.__add__, ka, kb))
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _binomial_factor(key: tuple[int, ...], mult: int) -> dict:
    """Expansion of (1 - e^s)^mult over integer keys."""
    zero = (0,) * len(key)
    out = {zero: 1}
    for j in range(1, mult + 1):
        out[tuple(x * j for x in key)] = (-1) ** j * comb(mult, j)
    return out


def expand_product(m: SupportMap) -> GroupRingElement:
    """Exact expansion of prod_s (1 - e^s)^m(s), multiplied as a balanced tree.

    Factors are sorted lexicographically by support vector first, so the
    result and all intermediates are deterministic.
    """
    entries = sorted(m.entries.items())
    if not entries:
        return one(m.dim)
    scale = _common_denominator(v for v, _ in entries)
    layer = [_binomial_factor(_int_key(v, scale), mult) for v, mult in entries]
    while len(layer) > 1:
        nxt = [_mul_raw(layer[i], layer[i + 1]) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return GroupRingElement(m.dim, {_frac_key(k, scale): c for k, c in layer[0].items()})


def truncated_product(factors: Iterable[tuple], grading, cutoff) -> GroupRingElement:
    """Product of (1 - e^s)^mult keeping only terms of grade <= cutoff.

    Every factor must have strictly positive grade, so discarding a term of
    grade above the cutoff after each multiplication loses nothing below it.
    """
    nhat = vector(grading)
    cutoff = rational(cutoff)
    fac = [(vector(v), int(mult)) for v, mult in factors]
    dim = len(nhat)
    for v, mult in fac:
        if len(v) != dim:
            raise ValueError("dimension mismatch")
        if mult <= 0:
            raise ValueError("multiplicities must be positive")

    scale = _common_denominator([v for v, _ in fac] + [nhat])
    gint = _int_key(nhat, scale)
    # grade(v) <= cutoff  <=>  <v_int, g_int> <= cutoff * scale^2
    threshold = cutoff * scale * scale

    acc = {(0,) * dim: 1}
    grades = {(0,) * dim: 0}
    for v, mult in fac:
        kv = _int_key(v, scale)
        gv = sum(x * y for x, y in zip(kv, gint))
        if gv <= 0:
            raise ValueError("a factor with nonpositive grade")
        leaf = [((0,) * dim, 1, 0)]
        for j in range(1, mult + 1):
            leaf.append((tuple(x * j for x in kv), (-1) ** j * comb(mult, j), j * gv))
        out: dict = {}
        og: dict = {}
        for ka, ca in acc.items():
            ga = grades[ka]
            for kd, cd, gd in leaf:
                g = ga + gd
                if g > threshold:
                    continue
                k = tuple(map(int.__add__, ka, kd))
                if k in out:
                    out[k] += ca * cd
                else:
                    out[k] = ca * cd
                    og[k] = g
        acc = {k: c for k, c in out.items() if c}
        grades = {k: og[k] for k in acc}
    return GroupRingElement(dim, {_frac_key(k, scale): c for k, c in acc.items()})


def exact_divide(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Exact quotient a / b in the group ring; raises NotDivisibleError otherwise.

    Long division ordered by (generic-separator grade, lexicographic key):
    a translation-invariant total order, so leading terms multiply.  For a
    true quotient q the loop removes one term of q per step; non-divisibility
    is caught by coefficient mismatch or by a quotient-grade window check.
    """
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if not b.terms:
        raise ZeroDivisionError("division by the zero element")
    if not a.terms:
        return GroupRingElement(a.dim, {})

    sep = generic_separator(sorted(set(a.terms) | set(b.terms)), zero_vector(a.dim))

    def grade(v: Vector) -> Fraction:
        return inner(v, sep)

    def order(v: Vector):
        return (grade(v), v)

    lt_b = max(b.terms, key=order)
    lc_b = b.terms[lt_b]
    lo = min(grade(v) for v in a.terms) - min(grade(v) for v in b.terms)
    hi = max(grade(v) for v in a.terms) - grade(lt_b)

    rem = dict(a.terms)
    quot: dict[Vector, int] = {}
    steps = 0
    while rem:
        steps += 1
        if steps > 200000:
            raise NotDivisibleError("not divisible")
        lt_r = max(rem, key=order)
        lc_r = rem[lt_r]
        if lc_r % lc_b != 0:
            raise NotDivisibleError("not divisible")
        t = vsub(lt_r, lt_b)
        if not (lo <= grade(t) <= hi):
            raise NotDivisibleError("not divisible")
        c = lc_r // lc_b
        quot[t] = quot.get(t, 0) + c
        for vb, cb in b.terms.items():
            k = vadd(t, vb)
            nc = rem.get(k, 0) - c * cb
            if nc:
                rem[k] = nc
            else:
                rem.pop(k, None)
    return GroupRingElement(a.dim, quot)


# -- serialization ----------------------------------------------------------------


def element_to_json(x: GroupRingElement) -> dict:
    return {
        "dim": x.dim,
        "terms": [{"v": [str(c) for c in v], "c": str(x.terms[v])} for v in x.support()],
    }


def element_from_json(d: dict) -> GroupRingElement:
    dim = int(d["dim"])
    terms = {vector(t["v"]): int(t["c"]) for t in d["terms"]}
    return GroupRingElement(dim, terms)


def support_map_to_json(m: SupportMap) -> dict:
    return {
        "dim": m.dim,
        "support": [{"v": [str(c) for c in v], "mult": mult} for v, mult in m.items()],
    }


def support_map_from_json(d: dict, signed: bool = False) -> SupportMap:
    dim = int(d["dim"])
    entries: dict[Vector, int] = {}
    for item in d["support"]:
        v = vector(item["v"])
        entries[v] = entries.get(v, 0) + int(item["mult"])
    return (SignedSupportMap if signed else SupportMap)(dim, entries)
