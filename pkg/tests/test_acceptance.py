"""Acceptance suite.

Each test prints exactly one line:  ACCEPTANCE <n>: PASS/FAIL - <detail>
All equality checks are exact rational arithmetic; the only tolerances are
the stated wall-clock budgets.
"""

import random
import time

import pytest

from rootsphere.affine_root import (
    ExplicitAffineSupport,
    affine_weyl_rhs,
    characterize_affine,
    enumerate_support,
)
from rootsphere.catalog import (
    remark29_exponents,
    remark210_counterexample,
    series_inversion_oracle,
    standard_finite,
    untwisted_affine,
)
from rootsphere.exact import AffineVector, Q, inner, norm_sq, vadd, vector, vsub
from rootsphere.finite_root import (
    RootSystem,
    base,
    characterize_finite,
    check_axioms,
    denominator_rhs,
    weyl_vector,
)
from rootsphere.group_ring import SupportMap, expand_product, truncated_product
from rootsphere.quadric import ParaboloidFit

SYSTEMS = [
    ("A1", 2),
    ("A2", 6),
    ("A3", 24),
    ("A4", 120),
    ("B2", 8),
    ("B3", 48),
    ("C3", 48),
    ("D4", 192),
    ("G2", 12),
    ("F4", 1152),
]

RADII = {
    "A1": Q(1, 2),
    "A2": Q(2),
    "A3": Q(5),
    "A4": Q(10),
    "B2": Q(5, 2),
    "B3": Q(35, 4),
    "C3": Q(14),
    "D4": Q(14),
    "G2": Q(14),
    "F4": Q(39),
}


def _line(n, ok, detail):
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def denominator_data():
    out = {}
    for name, order in SYSTEMS:
        entry = standard_finite(name)
        t0 = time.monotonic()
        rhs = denominator_rhs(entry.positive)
        lhs = expand_product(SupportMap(entry.ambient_dim, {a: 1 for a in entry.positive}))
        dt = time.monotonic() - t0
        out[name] = (entry, lhs, rhs, dt)
    return out


def test_criterion_1_denominator_identity(denominator_data):
    failures = []
    times = []
    for name, order in SYSTEMS:
        entry, lhs, rhs, dt = denominator_data[name]
        budget = 60.0 if name == "F4" else 10.0
        times.append(f"{name}={dt:.2f}s")
        if lhs != rhs:
            failures.append(f"{name}: sides differ")
        if len(rhs.terms) != order or len(lhs.terms) != order:
            failures.append(
                f"{name}: term count {len(lhs.terms)}/{len(rhs.terms)} != {order}"
            )
        if dt >= budget:
            failures.append(f"{name}: {dt:.2f}s over budget {budget}s")
    _line(
        1,
        not failures,
        failures or f"product equals alternating sum for all 10 systems ({', '.join(times)})",
    )


def test_criterion_2_sphere_forward(denominator_data):
    failures = []
    for name, _ in SYSTEMS:
        entry = denominator_data[name][0]
        rho = weyl_vector(entry.positive)
        verdict = characterize_finite(
            SupportMap(entry.ambient_dim, {a: 1 for a in entry.positive})
        )
        if not verdict.on_sphere:
            failures.append(f"{name}: not on a sphere")
            continue
        if verdict.fit.center != rho:
            failures.append(f"{name}: center is not the half-sum")
        if verdict.fit.radius_sq != norm_sq(rho) or verdict.fit.radius_sq != RADII[name]:
            failures.append(f"{name}: radius_sq {verdict.fit.radius_sq} != {RADII[name]}")
    _line(2, not failures, failures or "center = half-sum, radius^2 as expected, all 10 systems")


def test_criterion_3_finite_negatives():
    entry = standard_finite("A2")
    simples = base(entry.positive)
    alpha, beta = simples
    high = vadd(alpha, beta)
    failures = []

    v = characterize_finite(SupportMap(3, {alpha: 2, beta: 1, high: 1}))
    if v.on_sphere or v.multiplicities_ok or not v.axioms.all_pass():
        failures.append("doubled multiplicity not pinpointed")

    v = characterize_finite(SupportMap(3, {alpha: 1, beta: 1}))
    if v.on_sphere or v.axioms.fr2:
        failures.append("missing root not pinpointed as closure failure")

    m = {a: 1 for a in entry.positive}
    m[vadd(high, high)] = 1
    v = characterize_finite(SupportMap(3, m))
    if v.on_sphere or v.axioms.fr5:
        failures.append("doubled root not pinpointed as reducedness failure")

    _line(3, not failures, failures or "mult/fr2/fr5 failures each pinpointed")


def test_criterion_4_theorem_as_property():
    rng = random.Random(20260822)
    t0 = time.monotonic()
    checked = 0
    failures = []
    while checked < 500:
        dim = rng.randint(1, 3)
        size = rng.randint(1, 4)
        entries = {}
        for _ in range(size):
            v = tuple(Q(rng.randint(-2, 2)) for _ in range(dim))
            mult = rng.randint(1, 2)
            if all(c == 0 for c in v):
                continue
            entries[v] = mult
        if not entries:
            continue
        verdict = characterize_finite(SupportMap(dim, entries))
        axiomatic = (
            verdict.support_disjoint
            and verdict.multiplicities_ok
            and verdict.axioms.all_pass()
        )
        if axiomatic != verdict.on_sphere:
            failures.append(f"disagreement on {sorted(entries.items())}")
        checked += 1
    dt = time.monotonic() - t0
    if dt >= 60:
        failures.append(f"{dt:.1f}s over 60s budget")
    _line(4, not failures, failures or f"500 random supports, routes agree ({dt:.1f}s)")


def test_criterion_5_exponent_sequence():
    failures = []
    exps = remark29_exponents(30)
    if exps != series_inversion_oracle(30):
        failures.append("formula disagrees with series-inversion oracle")
    if exps[:6] != [2, 1, 2, 3, 6, 9]:
        failures.append(f"first six exponents {exps[:6]}")
    if any(k * a < 2 for k, a in enumerate(exps, start=1)):
        failures.append("positivity bound k*a_k >= 2 violated")
    _line(5, not failures, failures or "exponents match oracle for k <= 30, bound holds")


def test_criterion_6_signed_counterexample():
    m, expansion, fit = remark210_counterexample()
    failures = []
    if len(expansion.terms) != 6 or sorted(expansion.terms.values()) != [-1, -1, -1, 1, 1, 1]:
        failures.append("expansion is not the 6-term +/- pattern")
    if fit.radius_sq != 4:
        failures.append(f"radius_sq {fit.radius_sq} != 4")
    doubled = sorted({v for v in m.entries} | {tuple(-c for c in v) for v in m.entries})
    rep = check_axioms(RootSystem(m.dim, tuple(doubled)))
    if rep.all_pass():
        failures.append("doubled absolute support unexpectedly passes the axioms")
    _line(6, not failures, failures or "sphere with r^2=4 from a signed support that fails the axioms")


def _fit_holds(fit, av):
    return av.level == fit.r * norm_sq(vsub(av.part, fit.c.part)) + fit.c.level


def test_criterion_7_truncated_identity():
    t0 = time.monotonic()
    failures = []
    for name, cutoff in (("A1", Q(10)), ("A2", Q(6))):
        spec = untwisted_affine(name, cutoff)
        items = enumerate_support(spec)
        lhs = truncated_product(
            [(av.flatten(), mult) for av, mult in items], spec.grading.flatten(), cutoff
        )
        rhs = affine_weyl_rhs(spec)
        if lhs != rhs:
            failures.append(f"{name}: truncated product != alternating sum")
        verdict = characterize_affine(spec)
        if not verdict.on_paraboloid:
            failures.append(f"{name}: no paraboloid fit")
        elif not all(_fit_holds(verdict.fit, av) for av, _ in items):
            failures.append(f"{name}: fit not exact on the support")
    dt = time.monotonic() - t0
    if dt >= 30:
        failures.append(f"{dt:.1f}s over 30s budget")
    _line(7, not failures, failures or f"A1@C=10 and A2@C=6 identities exact, fits exact ({dt:.1f}s)")


def test_criterion_8_affine_negatives():
    spec = untwisted_affine("A1", 4)
    items = enumerate_support(spec)
    failures = []

    bumped = tuple(
        (av, m + 1) if all(x == 0 for x in av.part) else (av, m) for av, m in items
    )
    v = characterize_affine(
        ExplicitAffineSupport(dim=spec.dim, items=bumped, grading=spec.grading, cutoff=spec.cutoff)
    )
    if v.on_paraboloid or v.imaginary_multiplicities_ok:
        failures.append("imaginary bump not detected")

    dup = []
    done = False
    for av, m in items:
        if not done and av.level == 0 and any(x != 0 for x in av.part):
            dup.append((av, m + 1))
            done = True
        else:
            dup.append((av, m))
    v = characterize_affine(
        ExplicitAffineSupport(dim=spec.dim, items=tuple(dup), grading=spec.grading, cutoff=spec.cutoff)
    )
    if v.on_paraboloid or v.real_multiplicities_ok:
        failures.append("real duplicate not detected")

    _line(8, not failures, failures or "both perturbations push the support off the paraboloid")


ROT = (vector(["3/5", "4/5"]), vector(["-4/5", "3/5"]))


def _rot(v):
    return (inner(ROT[0], v), inner(ROT[1], v))


def test_criterion_9_gram_invariance():
    failures = []

    # permutation on the 3-dimensional A2 support
    entry = standard_finite("A2")
    m = {a: 1 for a in entry.positive}
    v1 = characterize_finite(SupportMap(3, m))
    perm = (2, 0, 1)
    mp = {tuple(a[i] for i in perm): 1 for a in entry.positive}
    v2 = characterize_finite(SupportMap(3, mp))
    if not (
        v2.on_sphere == v1.on_sphere == True
        and v2.fit.radius_sq == v1.fit.radius_sq
        and v2.fit.center == tuple(v1.fit.center[i] for i in perm)
        and v2.type_name == v1.type_name
    ):
        failures.append("A2 verdict changed under coordinate permutation")

    # rotation on the 2-dimensional B2 support
    b2 = standard_finite("B2")
    vb = characterize_finite(SupportMap(2, {a: 1 for a in b2.positive}))
    vr = characterize_finite(SupportMap(2, {_rot(a): 1 for a in b2.positive}))
    if not (
        vr.on_sphere
        and vr.fit.radius_sq == vb.fit.radius_sq == RADII["B2"]
        and vr.fit.center == _rot(vb.fit.center)
        and vr.type_name == vb.type_name == "B2"
    ):
        failures.append("B2 verdict changed under rotation")

    # a failing support keeps failing the same way
    alpha, beta = base(b2.positive)
    bad = characterize_finite(SupportMap(2, {alpha: 1, beta: 1}))
    bad_rot = characterize_finite(SupportMap(2, {_rot(alpha): 1, _rot(beta): 1}))
    if bad.on_sphere or bad_rot.on_sphere or bad.axioms.fr2 != bad_rot.axioms.fr2:
        failures.append("negative verdict changed under rotation")

    # affine: rotate parts and grading together
    spec = untwisted_affine("A1", 4)
    va = characterize_affine(spec)
    rot_items = tuple(
        (AffineVector(av.level, _rot(av.part)), mult)
        for av, mult in enumerate_support(spec)
    )
    rot_spec = ExplicitAffineSupport(
        dim=2,
        items=rot_items,
        grading=AffineVector(spec.grading.level, _rot(spec.grading.part)),
        cutoff=spec.cutoff,
    )
    va2 = characterize_affine(rot_spec)
    witness = ParaboloidFit(
        AffineVector(va.fit.c.level, _rot(va.fit.c.part)), va.fit.r
    )
    if not (
        va.on_paraboloid
        and va2.on_paraboloid
        and va2.axiomatic_verdict() == va.axiomatic_verdict()
        and all(_fit_holds(witness, av) for av, _ in rot_items)
    ):
        failures.append("affine verdict changed under rotation")

    # affine: swap the two coordinates
    swap_items = tuple(
        (AffineVector(av.level, (av.part[1], av.part[0])), mult)
        for av, mult in enumerate_support(spec)
    )
    swap_spec = ExplicitAffineSupport(
        dim=2,
        items=swap_items,
        grading=AffineVector(spec.grading.level, (spec.grading.part[1], spec.grading.part[0])),
        cutoff=spec.cutoff,
    )
    va3 = characterize_affine(swap_spec)
    if not (va3.on_paraboloid and va3.axiomatic_verdict() == va.axiomatic_verdict()):
        failures.append("affine verdict changed under permutation")

    _line(9, not failures, failures or "verdicts invariant under permutation and the 3-4-5 rotation")
