"""Finite root systems: axioms, Weyl groups, denominator sums, characterization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .exact import Q, Vector, generic_separator, inner, norm_sq, span_rank, vadd, vector, vneg, vscale, vsub, zero_vector
from .group_ring import GroupRingElement, SupportMap, expand_product
from .quadric import SphereFit, fit_sphere, sphere_fit_to_json


class GroupTooLargeError(RuntimeError):
    pass


class VerdictMismatchError(RuntimeError):
    """The geometric and axiomatic routes disagreed; this is a fatal internal error."""


@dataclass(frozen=True)
class RootSystem:
    dim: int
    roots: tuple[Vector, ...]

    def __post_init__(self):
        rs = sorted({vector(r) for r in self.roots})
        for r in rs:
            if len(r) != self.dim:
                raise ValueError("dimension mismatch")
            if all(c == 0 for c in r):
                raise ValueError("0 is not a root")
        object.__setattr__(self, "roots", tuple(rs))

    @property
    def rank(self) -> int:
        return span_rank(self.roots)[0]


@dataclass(frozen=True)
class AxiomReport:
    fr1: bool
    fr2: bool
    fr3: bool
    fr4: bool
    fr5: bool
    rank: int

    def all_pass(self) -> bool:
        return self.fr1 and self.fr2 and self.fr3 and self.fr4 and self.fr5


def reflect(a: Vector, v: Vector) -> Vector:
    """Reflection of v in the hyperplane orthogonal to a."""
    a = vector(a)
    v = vector(v)
    nn = norm_sq(a)
    if nn == 0:
        raise ValueError("cannot reflect in the zero vector")
    return vsub(v, vscale(2 * inner(a, v) / nn, a))


Matrix = tuple[Vector, ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(inner(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = list(zip(*b))
    return tuple(tuple(inner(row, col) for col in bt) for row in a)


def mat_det(m: Matrix) -> Fraction:
    n = len(m)
    rows = [list(r) for r in m]
    det = Q(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return Q(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        det *= rows[c][c]
        inv = rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def reflection_matrix(a: Vector, dim: int) -> Matrix:
    a = vector(a)
    nn = norm_sq(a)
    if nn == 0:
        raise ValueError("cannot reflect in the zero vector")
    return tuple(
        tuple((Q(1) if i == j else Q(0)) - 2 * a[i] * a[j] / nn for j in range(dim)) for i in range(dim)
    )


def check_axioms(rs: RootSystem) -> AxiomReport:
    """Axiom report for a candidate root set, span-relative.

    FR1 (spanning) is relative to the span of the set itself, hence always
    true and reported with the rank; FR4 (finiteness) is true for any finite
    input.  FR2 is closure under all reflections, FR3 integrality of the
    Cartan pairings, FR5 that the only parallel root pairs are a, -a.
    """
    roots = rs.roots
    rset = set(roots)
    rank = span_rank(roots)[0]

    fr2 = all(reflect(a, b) in rset for a in roots for b in roots)
    fr3 = all((2 * inner(a, b) / norm_sq(a)).denominator == 1 for a in roots for b in roots)

    fr5 = True
    for a in roots:
        j = next(i for i, c in enumerate(a) if c != 0)
        for b in roots:
            t = b[j] / a[j]
            if b == vscale(t, a) and t not in (1, -1):
                fr5 = False
                break
        if not fr5:
            break
    return AxiomReport(fr1=True, fr2=fr2, fr3=fr3, fr4=True, fr5=fr5, rank=rank)


class PositiveSystem(NamedTuple):
    rplus: list[Vector]
    separator: Vector


def positive_roots(rs: RootSystem) -> PositiveSystem:
    """Deterministic positive half: the roots strictly positive on a generic separator."""
    sep = generic_separator(rs.roots, zero_vector(rs.dim))
    return PositiveSystem(sorted(a for a in rs.roots if inner(a, sep) > 0), sep)


def base(rplus) -> list[Vector]:
    """Elements of the positive half that are not sums of two of its elements."""
    pos = [vector(a) for a in rplus]
    sums = {vadd(a, b) for a in pos for b in pos}
    return sorted(a for a in pos if a not in sums)


def weyl_vector(rplus) -> Vector:
    pos = [vector(a) for a in rplus]
    if not pos:
        raise ValueError("empty positive system")
    acc = zero_vector(len(pos[0]))
    for a in pos:
        acc = vadd(acc, a)
    return vscale(Q(1, 2), acc)


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    det: int
    word: tuple[int, ...]


DEFAULT_WEYL_BOUND = 10**6

_SERIES_ORDER = {
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
    "F4": 1152,
    "G2": 12,
}


def _component_order(letter: str, rank: int) -> int:
    if letter == "A":
        return factorial(rank + 1)
    if letter in ("B", "C"):
        return 2**rank * factorial(rank)
    if letter == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return _SERIES_ORDER[f"{letter}{rank}"]


def weyl_order(rs: RootSystem) -> int:
    """Group order from the classification, without enumerating."""
    return _prod(_component_order(letter, rank) for letter, rank in _classify_components(rs))


def _prod(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out


def enumerate_weyl(rs: RootSystem, bound: int = DEFAULT_WEYL_BOUND) -> list[WeylElement]:
    """BFS over products of simple reflections, deduplicated by exact matrix.

    Elements come out sorted by word length then lexicographic word.  The
    classification-based order check makes oversized groups fail before any
    enumeration starts; the bound is enforced during BFS as well.
    """
    try:
        order = weyl_order(rs)
    except (ValueError, KeyError):
        order = None
    if order is not None and order > bound:
        raise GroupTooLargeError("group too large")

    simples = base(positive_roots(rs).rplus)
    gens = [reflection_matrix(a, rs.dim) for a in simples]
    ident = identity_matrix(rs.dim)
    elements = [WeylElement(ident, 1, ())]
    seen = {ident}
    layer = elements
    while layer:
        nxt = []
        for el in layer:
            for i, g in enumerate(gens):
                m = mat_mul(el.matrix, g)
                if m in seen:
                    continue
                if len(seen) >= bound:
                    raise GroupTooLargeError("group too large")
                det = -el.det
                if mat_det(m) != det:
                    raise ArithmeticError("determinant bookkeeping failed")
                seen.add(m)
                nxt.append(WeylElement(m, det, el.word + (i,)))
        elements.extend(nxt)
        layer = nxt
    return elements


def denominator_rhs(rplus, bound: int = DEFAULT_WEYL_BOUND) -> GroupRingElement:
    """Alternating sum over the reflection group: sum_w det(w) e^{rho - w(rho)}."""
    pos = [vector(a) for a in rplus]
    if not pos:
        raise ValueError("empty positive system")
    dim = len(pos[0])
    rs = RootSystem(dim, tuple(pos) + tuple(vneg(a) for a in pos))
    group = enumerate_weyl(rs, bound)
    rho = weyl_vector(pos)
    terms: dict[Vector, int] = {}
    for w in group:
        key = vsub(rho, mat_vec(w.matrix, rho))
        terms[key] = terms.get(key, 0) + w.det
    if len(terms) != len(group):
        raise ArithmeticError("orbit collision: w -> rho - w(rho) was not injective")
    return GroupRingElement(dim, terms)


# -- classification ----------------------------------------------------------------


def _cartan_matrix(simples: list[Vector]) -> list[list[int]]:
    c = []
    for a in simples:
        row = []
        for b in simples:
            x = 2 * inner(a, b) / norm_sq(b)
            if x.denominator != 1:
                raise ValueError("unrecognized")
            row.append(int(x))
        c.append(row)
    return c


def _candidate_cartan(letter: str, rank: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if letter == "A":
        for i in range(rank - 1):
            edge(i, i + 1)
    elif letter == "B":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 2, rank - 1, -2, -1)
    elif letter == "C":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 2, rank - 1, -1, -2)
    elif letter == "D":
        for i in range(rank - 3):
            edge(i, i + 1)
        edge(rank - 3, rank - 2)
        edge(rank - 3, rank - 1)
    elif letter == "E":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(2, rank - 1)
    elif letter == "F":
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
    elif letter == "G":
        edge(0, 1, -1, -3)
    return c


def _candidates(rank: int) -> list[tuple[str, int]]:
    out = [("A", rank)]
    if rank >= 2:
        out.append(("B", rank))
    if rank >= 3:
        out.append(("C", rank))
    if rank >= 4:
        out.append(("D", rank))
    if rank in (6, 7, 8):
        out.append(("E", rank))
    if rank == 4:
        out.append(("F", rank))
    if rank == 2:
        out.append(("G", rank))
    return out


def _iso(c1, c2) -> bool:
    """Simultaneous-permutation equality of two Cartan matrices."""
    n = len(c1)
    if n != len(c2):
        return False
    if sorted(sorted(r) for r in c1) != sorted(sorted(r) for r in c2):
        return False
    assign = [-1] * n
    used = [False] * n

    def ok(i, j):
        # candidate: node i of c2 maps to node j of c1
        for i2 in range(i):
            j2 = assign[i2]
            if c1[j][j2] != c2[i][i2] or c1[j2][j] != c2[i2][i]:
                return False
        return True

    def go(i):
        if i == n:
            return True
        for j in range(n):
            if not used[j] and ok(i, j):
                assign[i] = j
                used[j] = True
                if go(i + 1):
                    return True
                used[j] = False
                assign[i] = -1
        return False

    return go(0)


def _classify_components(rs: RootSystem) -> list[tuple[str, int]]:
    simples = base(positive_roots(rs).rplus)
    n = len(simples)
    if n == 0:
        raise ValueError("unrecognized")
    # connected components of the non-orthogonality graph on simple roots
    comp = list(range(n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if inner(simples[i], simples[j]) != 0:
                comp[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    names = []
    for idx in groups.values():
        sub = [simples[i] for i in idx]
        cartan = _cartan_matrix(sub)
        hit = next(
            ((letter, rank) for letter, rank in _candidates(len(sub)) if _iso(_candidate_cartan(letter, rank), cartan)),
            None,
        )
        if hit is None:
            raise ValueError("unrecognized")
        names.append(hit)
    names.sort(key=lambda t: (-t[1], t[0]))
    return names


def classify(rs: RootSystem) -> str:
    """Type name such as "A2" or "B2×A1", via Dynkin-graph isomorphism."""
    return "×".join(f"{letter}{rank}" for letter, rank in _classify_components(rs))


# -- characterization ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteVerdict:
    on_sphere: bool
    fit: SphereFit | None
    axioms: AxiomReport
    multiplicities_ok: bool
    support_disjoint: bool
    recovered: RootSystem | None
    type_name: str | None


def characterize_finite(m: SupportMap) -> FiniteVerdict:
    """Decide sphere support geometrically and axiomatically; the routes must agree.

    Geometric route: expand prod (1-e^s)^m(s) and fit a sphere through the
    support of the expansion.  Axiomatic route: S and -S disjoint, all
    multiplicities 1, and S union -S passes the root-system axioms relative
    to its span.  Disagreement raises VerdictMismatchError.
    """
    expansion = expand_product(m)
    fit = fit_sphere(expansion.support())
    on_sphere = fit is not None

    s = set(m.entries)
    disjoint = not any(vneg(v) in s for v in s)
    mults_ok = all(c == 1 for c in m.entries.values())
    rs = RootSystem(m.dim, tuple(s) + tuple(vneg(v) for v in s))
    axioms = check_axioms(rs)
    axiomatic = disjoint and mults_ok and axioms.all_pass()

    if axiomatic != on_sphere:
        raise VerdictMismatchError(
            f"sphere verdict {on_sphere} disagrees with axiomatic verdict {axiomatic}"
        )

    type_name = None
    recovered = None
    if axiomatic:
        recovered = rs
        try:
            type_name = classify(rs)
        except ValueError:
            type_name = None
    return FiniteVerdict(
        on_sphere=on_sphere,
        fit=fit,
        axioms=axioms,
        multiplicities_ok=mults_ok,
        support_disjoint=disjoint,
        recovered=recovered,
        type_name=type_name,
    )


# -- serialization ----------------------------------------------------------------


def root_system_to_json(rs: RootSystem) -> dict:
    return {"dim": rs.dim, "roots": [[str(c) for c in r] for r in rs.roots]}


def root_system_from_json(d: dict) -> RootSystem:
    return RootSystem(int(d["dim"]), tuple(vector(r) for r in d["roots"]))


def axiom_report_to_json(rep: AxiomReport) -> dict:
    return {
        "fr1": rep.fr1,
        "fr2": rep.fr2,
        "fr3": rep.fr3,
        "fr4": rep.fr4,
        "fr5": rep.fr5,
        "rank": rep.rank,
    }


def finite_verdict_to_json(v: FiniteVerdict) -> dict:
    return {
        "on_sphere": v.on_sphere,
        "fit": sphere_fit_to_json(v.fit),
        "axioms": axiom_report_to_json(v.axioms),
        "multiplicities_ok": v.multiplicities_ok,
        "support_disjoint": v.support_disjoint,
        "recovered": root_system_to_json(v.recovered) if v.recovered else None,
        "type": v.type_name,
    }
