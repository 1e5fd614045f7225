"""Affine root supports: reflections, truncated enumeration, Weyl sums, verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .exact import (
    AffineVector,
    Q,
    Vector,
    affine,
    inner,
    is_zero,
    norm_sq,
    rational,
    span_rank,
    unflatten,
    vadd,
    vector,
    vneg,
    vscale,
    vsub,
    zero_vector,
)
from .finite_root import (
    GroupTooLargeError,
    Matrix,
    RootSystem,
    VerdictMismatchError,
    base,
    identity_matrix,
    mat_det,
    mat_mul,
    mat_vec,
    positive_roots,
)
from .group_ring import GroupRingElement, truncated_product
from .quadric import ParaboloidFit, fit_paraboloid, paraboloid_fit_to_json

DEFAULT_AFFINE_BOUND = 10**6


def affine_inner(a: AffineVector, b: AffineVector) -> Fraction:
    """The degenerate pairing: parts only, levels ignored."""
    return inner(a.part, b.part)


def affine_norm_sq(a: AffineVector) -> Fraction:
    return norm_sq(a.part)


def full_inner(a: AffineVector, b: AffineVector) -> Fraction:
    return a.level * b.level + inner(a.part, b.part)


def grade(v: AffineVector, grading: AffineVector) -> Fraction:
    return full_inner(v, grading)


def linear_form(a: AffineVector, x: Vector) -> Fraction:
    """The affine-linear form of a root: <part(a), x> + level(a)."""
    return inner(a.part, x) + a.level


def affine_reflect_point(a: AffineVector, x: Vector) -> Vector:
    """Reflection of a point of V in the zero set of the root's affine form."""
    nn = affine_norm_sq(a)
    if nn == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    return vsub(x, vscale(2 * linear_form(a, x) / nn, a.part))


def affine_reflect_vec(a: AffineVector, v: AffineVector) -> AffineVector:
    """Reflection of an extended vector; isotropic vectors are fixed."""
    nn = affine_norm_sq(a)
    if nn == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    t = 2 * affine_inner(a, v) / nn
    return AffineVector(v.level - t * a.level, vsub(v.part, vscale(t, a.part)))


def affine_reflection_matrix(a: AffineVector) -> Matrix:
    """Matrix of the extended reflection on flattened (level, part) coordinates."""
    nn = affine_norm_sq(a)
    if nn == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    n = a.dim
    p = a.part
    top = (Q(1),) + tuple(-2 * p[j] * a.level / nn for j in range(n))
    rows = [top]
    for i in range(n):
        rows.append(
            (Q(0),) + tuple((Q(1) if i == j else Q(0)) - 2 * p[i] * p[j] / nn for j in range(n))
        )
    return tuple(rows)


# -- support specifications ---------------------------------------------------------


@dataclass(frozen=True)
class ExplicitAffineSupport:
    """A finite list of graded support items with their multiplicities."""

    dim: int
    items: tuple  # of (AffineVector, int)
    grading: AffineVector
    cutoff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cutoff", rational(self.cutoff))
        if self.grading.level <= 0:
            raise ValueError("grading level must be positive")
        if self.grading.dim != self.dim:
            raise ValueError("dimension mismatch")
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        merged: dict[AffineVector, int] = {}
        for av, mult in self.items:
            if av.dim != self.dim:
                raise ValueError("dimension mismatch")
            if av.level == 0 and is_zero(av.part):
                raise ValueError("m(0) must be 0")
            mult = int(mult)
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            g = grade(av, self.grading)
            if g <= 0 or g > self.cutoff:
                raise ValueError("explicit item with grade > C or <= 0")
            merged[av] = merged.get(av, 0) + mult
        items = tuple(sorted(merged.items(), key=lambda t: (grade(t[0], self.grading), t[0].level, t[0].part)))
        if not items:
            raise ValueError("empty support")
        object.__setattr__(self, "items", items)


@dataclass(frozen=True)
class GeneratedAffineSupport:
    """Level ladders over a finite root set, plus isotropic items of fixed multiplicity.

    Real items are (k*period; a) for every root a, graded positive and within
    the cutoff; isotropic items sit at the positive multiples of the period
    with multiplicity equal to the rank.
    """

    dim: int
    roots: tuple[Vector, ...]
    grading: AffineVector
    cutoff: Fraction
    period: Fraction = Q(1)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "cutoff", rational(self.cutoff))
        object.__setattr__(self, "period", rational(self.period))
        object.__setattr__(self, "roots", tuple(sorted({vector(r) for r in self.roots})))
        if self.grading.level <= 0:
            raise ValueError("grading level must be positive")
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        if self.period <= 0:
            raise ValueError("period must be positive")
        for r in self.roots:
            if len(r) != self.dim:
                raise ValueError("dimension mismatch")
            if is_zero(r):
                raise ValueError("0 is not a root")

    @property
    def rank(self) -> int:
        return span_rank(self.roots)[0]


AffineSupportSpec = ExplicitAffineSupport | GeneratedAffineSupport


def enumerate_support(spec: AffineSupportSpec) -> list[tuple[AffineVector, int]]:
    """All support items of grade in (0, cutoff], sorted by grade then level then part."""
    if isinstance(spec, ExplicitAffineSupport):
        return list(spec.items)

    p1 = spec.grading.level
    p2 = spec.grading.part
    c = spec.cutoff
    items: list[tuple[AffineVector, int]] = []
    for a in spec.roots:
        g0 = inner(a, p2)
        step = spec.period * p1
        # integer k with 0 < k*step + g0 <= c
        lo = -g0 / step
        hi = (c - g0) / step
        if lo.denominator == 1:
            raise ValueError("grading not generic: a ladder hits grade 0")
        k = floor(lo) + 1
        while k <= hi:
            items.append((AffineVector(k * spec.period, a), 1))
            k += 1
    mult = spec.rank
    k = 1
    while k * spec.period * p1 <= c:
        items.append((AffineVector(k * spec.period, zero_vector(spec.dim)), mult))
        k += 1
    if not items:
        raise ValueError("empty support")
    items.sort(key=lambda t: (grade(t[0], spec.grading), t[0].level, t[0].part))
    return items


# -- structure of the real part -----------------------------------------------------


@dataclass(frozen=True)
class AffineView:
    r1: tuple[Vector, ...]
    rinf: tuple[Vector, ...]
    q: dict
    u: dict


def decompose(roots) -> AffineView:
    """Split truncated real items by direction into one-level and ladder directions.

    Ladder directions must show equally spaced levels ("non-arithmetic
    levels" otherwise); u is the spacing, q the lowest-level representative.
    """
    by_dir: dict[Vector, set] = {}
    for av in roots:
        if is_zero(av.part):
            raise ValueError("isotropic item in the real part")
        by_dir.setdefault(av.part, set()).add(av.level)
    r1 = []
    rinf = []
    q: dict[Vector, AffineVector] = {}
    u: dict[Vector, Fraction] = {}
    for part, levels in by_dir.items():
        ordered = sorted(levels)
        q[part] = AffineVector(ordered[0], part)
        if len(ordered) == 1:
            r1.append(part)
            continue
        gaps = {b - a for a, b in zip(ordered, ordered[1:])}
        if len(gaps) != 1:
            raise ValueError("non-arithmetic levels")
        rinf.append(part)
        u[part] = gaps.pop()
    return AffineView(tuple(sorted(r1)), tuple(sorted(rinf)), q, u)


def imaginary_roots(view: AffineView, base_dirs, cutoff, grading: AffineVector) -> list[tuple[AffineVector, int]]:
    """Isotropic items k*(u_a; 0) over ladder base directions, with counting multiplicity."""
    cutoff = rational(cutoff)
    p1 = grading.level
    counts: dict[Fraction, int] = {}
    dim = grading.dim
    for b in base_dirs:
        b = vector(b)
        if b not in view.u:
            continue
        ua = view.u[b]
        k = 1
        while k * ua * p1 <= cutoff:
            counts[k * ua] = counts.get(k * ua, 0) + 1
            k += 1
    return [(AffineVector(level, zero_vector(dim)), counts[level]) for level in sorted(counts)]


# -- axioms at a truncation level ----------------------------------------------------


@dataclass(frozen=True)
class AffineAxiomReport:
    ar1: bool
    ar2: bool
    ar3: bool
    ar4: bool
    ar5: bool
    irreducible: bool
    rank: int
    cutoff: Fraction
    real_count: int

    def all_pass(self) -> bool:
        return self.ar1 and self.ar2 and self.ar3 and self.ar4 and self.ar5


def _real_pm(items) -> list[AffineVector]:
    out = []
    for av, _ in items:
        if not is_zero(av.part):
            out.append(av)
            out.append(AffineVector(-av.level, vneg(av.part)))
    return out


def check_affine_axioms(spec: AffineSupportSpec) -> AffineAxiomReport:
    """AR1-AR5 plus irreducibility, all relative to the truncation cutoff.

    AR1 asks the truncated real roots to span the level axis together with
    the span of their parts; AR2 closure is demanded only for reflection
    images whose grade stays within the cutoff in absolute value; AR4 is
    finiteness, witnessed by the enumeration itself.
    """
    items = enumerate_support(spec)
    nhat = spec.grading
    c = spec.cutoff
    pm = _real_pm(items)
    flat = {av.flatten() for av in pm}

    part_rank = span_rank(sorted({av.part for av in pm}))[0]
    rank = span_rank(sorted(flat))[0]
    ar1 = rank == 1 + part_rank

    ar2 = True
    for a in pm:
        for b in pm:
            img = affine_reflect_vec(a, b)
            if abs(grade(img, nhat)) <= c and img.flatten() not in flat:
                ar2 = False
                break
        if not ar2:
            break

    ar3 = all(
        (2 * affine_inner(a, b) / affine_norm_sq(a)).denominator == 1 for a in pm for b in pm
    )

    ar5 = True
    flat_list = sorted(flat)
    for a in flat_list:
        j = next(i for i, x in enumerate(a) if x != 0)
        for b in flat_list:
            t = b[j] / a[j]
            if b == vscale(t, a) and t not in (1, -1):
                ar5 = False
                break
        if not ar5:
            break

    parts = sorted({av.part for av in pm})
    adj = {p: [q for q in parts if q != p and inner(p, q) != 0] for p in parts}
    seen: set[Vector] = set()
    if parts:
        stack = [parts[0]]
        while stack:
            p = stack.pop()
            if p in seen:
                continue
            seen.add(p)
            stack.extend(adj[p])
    irreducible = len(seen) == len(parts) and bool(parts)

    return AffineAxiomReport(
        ar1=ar1,
        ar2=ar2,
        ar3=ar3,
        ar4=True,
        ar5=ar5,
        irreducible=irreducible,
        rank=rank,
        cutoff=c,
        real_count=len(pm) // 2,
    )


# -- alternating Weyl sum ------------------------------------------------------------


def _affine_base(items, grading: AffineVector) -> list[AffineVector]:
    """Positive real items that are not sums of two positive items (isotropic included)."""
    flat = {av.flatten() for av, _ in items}
    out = []
    for av, _ in items:
        if is_zero(av.part):
            continue
        f = av.flatten()
        if not any(vsub(f, x) in flat for x in flat if x != f):
            out.append(av)
    out.sort(key=lambda a: (grade(a, grading), a.level, a.part))
    return out


def affine_weyl_rhs(spec: AffineSupportSpec, bound: int = DEFAULT_AFFINE_BOUND) -> GroupRingElement:
    """Sum of det(w) e^{s(w)} over group elements with grade(s(w)) <= cutoff.

    s(w) is the sum of the positive real roots sent negative by w, computed
    incrementally along reduced words: s(w s_i) = a_i + s_i(s(w)).  Since
    every positive real root has grade >= g_min > 0 and |s(w)| grows with
    the word length, lengths above cutoff/g_min cannot contribute.
    """
    if not isinstance(spec, GeneratedAffineSupport):
        raise ValueError("affine Weyl sum needs a generated spec")
    items = enumerate_support(spec)
    nhat = spec.grading
    c = spec.cutoff
    dim = 1 + spec.dim

    simples = _affine_base(items, nhat)
    if not simples:
        raise ValueError("empty affine base")
    gens = [affine_reflection_matrix(a) for a in simples]
    gen_vecs = [a.flatten() for a in simples]

    real_grades = [grade(av, nhat) for av, _ in items if not is_zero(av.part)]
    if not real_grades:
        return GroupRingElement(dim, {zero_vector(dim): 1})
    g_min = min(real_grades)
    max_len = floor(c / g_min)

    ident = identity_matrix(dim)
    terms: dict[Vector, int] = {zero_vector(dim): 1}
    seen = {ident}
    layer = [(ident, zero_vector(dim), 1)]
    length = 0
    while layer and length < max_len:
        length += 1
        nxt = []
        for mat, svec, det in layer:
            for g, gv in zip(gens, gen_vecs):
                m2 = mat_mul(mat, g)
                if m2 in seen:
                    continue
                if len(seen) >= bound:
                    raise GroupTooLargeError("group too large")
                seen.add(m2)
                s2 = vadd(gv, mat_vec(g, svec))
                d2 = -det
                nxt.append((m2, s2, d2))
                if inner(s2, nhat.flatten()) <= c:
                    terms[s2] = terms.get(s2, 0) + d2
        layer = nxt
    return GroupRingElement(dim, terms)


# -- characterization ----------------------------------------------------------------


@dataclass(frozen=True)
class AffineVerdict:
    on_paraboloid: bool
    fit: ParaboloidFit | None
    cutoff: Fraction
    grading: AffineVector
    axioms: AffineAxiomReport
    real_multiplicities_ok: bool
    imaginary_multiplicities_ok: bool
    levels_arithmetic: bool
    irreducible: bool
    imaginary_base: tuple[Vector, ...]

    def axiomatic_verdict(self) -> bool:
        return (
            self.real_multiplicities_ok
            and self.imaginary_multiplicities_ok
            and self.levels_arithmetic
            and self.axioms.all_pass()
            and self.irreducible
        )


def characterize_affine(spec: AffineSupportSpec) -> AffineVerdict:
    """Truncated paraboloid test against the axiomatic conditions.

    The truncated expansion is exactly the low-grade part of the full one, so
    when the axiomatic route accepts, the truncated support must admit an
    exact paraboloid fit; that direction is asserted (given irreducibility).
    A fit may still exist for defective supports when the cutoff is too
    shallow to expose the defect geometrically, so the converse is reported,
    not asserted.
    """
    items = enumerate_support(spec)
    real = [(av, m) for av, m in items if not is_zero(av.part)]
    iso = [(av, m) for av, m in items if is_zero(av.part)]

    factors = [(av.flatten(), m) for av, m in items]
    expansion = truncated_product(factors, spec.grading.flatten(), spec.cutoff)
    lam = [unflatten(v) for v in expansion.support()]
    fit = fit_paraboloid(lam)
    on_paraboloid = fit is not None

    axioms = check_affine_axioms(spec)
    real_ok = all(m == 1 for _, m in real)

    levels_arithmetic = True
    imag_ok = False
    base_dirs: tuple[Vector, ...] = ()
    try:
        view = decompose([av for av, _ in real])
    except ValueError:
        view = None
        levels_arithmetic = False
    if view is not None:
        parts = sorted({av.part for av, _ in real})
        proj = RootSystem(spec.dim, tuple(parts) + tuple(vneg(p) for p in parts))
        base_dirs = tuple(base(positive_roots(proj).rplus))
        expected = imaginary_roots(view, base_dirs, spec.cutoff, spec.grading)
        imag_ok = expected == sorted(iso, key=lambda t: t[0].level)

    axiomatic = real_ok and levels_arithmetic and imag_ok and axioms.all_pass() and axioms.irreducible
    if axioms.irreducible and axiomatic and not on_paraboloid:
        raise VerdictMismatchError(
            "axiomatic verdict True disagrees with paraboloid verdict False"
        )

    return AffineVerdict(
        on_paraboloid=on_paraboloid,
        fit=fit,
        cutoff=spec.cutoff,
        grading=spec.grading,
        axioms=axioms,
        real_multiplicities_ok=real_ok,
        imaginary_multiplicities_ok=imag_ok,
        levels_arithmetic=levels_arithmetic,
        irreducible=axioms.irreducible,
        imaginary_base=base_dirs,
    )


# -- serialization ----------------------------------------------------------------


def affine_vector_to_json(a: AffineVector) -> dict:
    return {"level": str(a.level), "v": [str(c) for c in a.part]}


def affine_vector_from_json(d: dict) -> AffineVector:
    return affine(d["level"], d["v"])


def explicit_spec_to_json(spec: ExplicitAffineSupport) -> dict:
    return {
        "kind": "explicit",
        "dim": spec.dim,
        "items": [dict(affine_vector_to_json(av), mult=m) for av, m in spec.items],
        "grading": affine_vector_to_json(spec.grading),
        "cutoff": str(spec.cutoff),
    }


def explicit_spec_from_json(d: dict) -> ExplicitAffineSupport:
    return ExplicitAffineSupport(
        dim=int(d["dim"]),
        items=tuple((affine_vector_from_json(i), int(i["mult"])) for i in d["items"]),
        grading=affine_vector_from_json(d["grading"]),
        cutoff=rational(d["cutoff"]),
    )


def affine_axiom_report_to_json(rep: AffineAxiomReport) -> dict:
    return {
        "ar1": rep.ar1,
        "ar2": rep.ar2,
        "ar3": rep.ar3,
        "ar4": rep.ar4,
        "ar5": rep.ar5,
        "irreducible": rep.irreducible,
        "rank": rep.rank,
        "cutoff": str(rep.cutoff),
        "real_count": rep.real_count,
    }


def affine_verdict_to_json(v: AffineVerdict) -> dict:
    return {
        "on_paraboloid": v.on_paraboloid,
        "fit": paraboloid_fit_to_json(v.fit),
        "cutoff": str(v.cutoff),
        "grading": affine_vector_to_json(v.grading),
        "axioms_at_level": affine_axiom_report_to_json(v.axioms),
        "real_multiplicities_ok": v.real_multiplicities_ok,
        "multiplicities_ok": v.imaginary_multiplicities_ok,
        "levels_arithmetic": v.levels_arithmetic,
        "irreducible": v.irreducible,
        "imaginary_base": [[str(c) for c in b] for b in v.imaginary_base],
    }
