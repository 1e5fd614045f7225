"""Group-ring elements, product expansion, truncation, exact division."""

import random

import pytest

from rootsphere.exact import Q, vector, zero_vector
from rootsphere.group_ring import (
    GroupRingElement,
    NotDivisibleError,
    SignedSupportMap,
    SupportMap,
    element_from_json,
    element_to_json,
    exact_divide,
    expand_product,
    monomial,
    mul,
    one,
    shift_equivalent,
    support,
    support_map_from_json,
    support_map_to_json,
    truncated_product,
)

A = vector([1, -1, 0])
B = vector([0, 1, -1])


def rand_element(rng, dim, nterms=3, coord=2, cmax=3):
    x = GroupRingElement(dim, {})
    for _ in range(nterms):
        v = tuple(Q(rng.randint(-coord, coord)) for _ in range(dim))
        c = rng.randint(-cmax, cmax)
        x = x + monomial(dim, v, c)
    return x


def test_element_canonicalization():
    x = GroupRingElement(1, {(Q(1),): Q(2), (Q(0),): Q(0)})
    assert x.support() == [(Q(1),)]
    assert x.coefficient((Q(0),)) == 0
    with pytest.raises(ValueError):
        GroupRingElement(2, {(Q(1),): Q(1)})


def test_mul_difference_of_squares():
    a = (Q(1),)
    lhs = mul(one(1) - monomial(1, a), one(1) + monomial(1, a))
    assert lhs == one(1) - monomial(1, (Q(2),))


def test_mul_identity_and_zero():
    x = monomial(2, (Q(1), Q(0))) + monomial(2, (Q(0), Q(1)), -2)
    assert mul(x, one(2)) == x
    assert mul(x, GroupRingElement(2, {})) == GroupRingElement(2, {})


def test_mul_a2_triple():
    f = lambda v: one(3) - monomial(3, v)
    prod = mul(mul(f(A), f(B)), f(tuple(x + y for x, y in zip(A, B))))
    ab = tuple(x + y for x, y in zip(A, B))
    a2b = tuple(2 * x + y for x, y in zip(A, B))
    ab2 = tuple(x + 2 * y for x, y in zip(A, B))
    dbl = tuple(2 * c for c in ab)
    expected = (
        one(3)
        - monomial(3, A)
        - monomial(3, B)
        + monomial(3, a2b)
        + monomial(3, ab2)
        - monomial(3, dbl)
    )
    assert prod == expected


def test_mul_associative_commutative():
    rng = random.Random(11)
    for _ in range(25):
        dim = rng.randint(1, 3)
        x, y, z = (rand_element(rng, dim) for _ in range(3))
        assert mul(x, y) == mul(y, x)
        assert mul(mul(x, y), z) == mul(x, mul(y, z))


def test_support_sorted_and_zero():
    x = monomial(1, (Q(2),)) + monomial(1, (Q(-1),))
    assert support(x) == [(Q(-1),), (Q(2),)]
    assert support(GroupRingElement(1, {})) == []


def test_support_map_validation():
    with pytest.raises(ValueError):
        SupportMap(2, {(Q(0), Q(0)): 1})
    with pytest.raises(ValueError):
        SupportMap(1, {(Q(1),): -1})
    sm = SignedSupportMap(1, {(Q(1),): -1, (Q(2),): 0})
    assert sm.items() == [((Q(1),), -1)]


def test_expand_single_and_double():
    m = SupportMap(3, {A: 1})
    assert expand_product(m) == one(3) - monomial(3, A)
    m2 = SupportMap(3, {A: 2})
    twoA = tuple(2 * c for c in A)
    assert expand_product(m2) == one(3) - monomial(3, A, 2) + monomial(3, twoA)


def test_expand_a2_matches_triple_product():
    ab = tuple(x + y for x, y in zip(A, B))
    m = SupportMap(3, {A: 1, B: 1, ab: 1})
    f = lambda v: one(3) - monomial(3, v)
    assert expand_product(m) == mul(mul(f(A), f(B)), f(ab))


def test_expand_signed_negative_mult_divides():
    # m(a) = -2 contributes the reciprocal square, so multiplying back
    # by (1-e^a)^2 must recover the positive part of the product.
    a = (Q(1),)
    m = SignedSupportMap(1, {(Q(2),): 1, a: -2})
    x = expand_product(m)
    back = mul(x, mul(one(1) - monomial(1, a), one(1) - monomial(1, a)))
    assert back == one(1) - monomial(1, (Q(2),))


def test_expand_invariants_random():
    rng = random.Random(2024)
    sep = None
    for _ in range(30):
        dim = rng.randint(1, 3)
        entries = {}
        for _ in range(rng.randint(1, 3)):
            v = tuple(Q(rng.randint(-2, 2)) for _ in range(dim))
            if all(c == 0 for c in v):
                continue
            entries[v] = rng.randint(1, 2)
        if not entries:
            continue
        m = SupportMap(dim, entries)
        x = expand_product(m)
        # the factors 1-e^s each kill the total coefficient sum
        assert sum(x.terms.values()) == 0
        assert len(x.terms) >= 2
        from rootsphere.exact import generic_separator, inner

        sep = generic_separator(list(entries), zero_vector(dim))
        top = zero_vector(dim)
        for s, k in entries.items():
            if inner(s, sep) > 0:
                top = tuple(t + k * c for t, c in zip(top, s))
        assert x.coefficient(top) in (Q(1), Q(-1))


def test_expand_all_positive_keys_constant_and_top():
    m = SupportMap(3, {A: 1, B: 2})
    x = expand_product(m)
    assert x.coefficient(zero_vector(3)) == 1
    total = tuple(a + 2 * b for a, b in zip(A, B))
    assert x.coefficient(total) == 1


def test_expand_constant_term_can_vanish():
    m = SignedSupportMap(1, {(Q(2),): 1, (Q(-1),): 2})
    x = expand_product(m)
    assert x.coefficient((Q(0),)) == 0


def test_truncated_single_factor():
    x = truncated_product([((Q(1),), 1)], (Q(1),), Q(5))
    assert x == one(1) - monomial(1, (Q(1),))


def test_truncated_euler_small():
    factors = [((Q(k),), 1) for k in (1, 2, 3)]
    x = truncated_product(factors, (Q(1),), Q(3))
    expected = {
        (Q(0),): Q(1),
        (Q(1),): Q(-1),
        (Q(2),): Q(-1),
    }
    assert x.terms == expected


def test_truncated_empty_is_one():
    assert truncated_product([], (Q(1),), Q(2)) == one(1)


def test_truncated_rejects_bad_grades():
    with pytest.raises(ValueError):
        truncated_product([((Q(-1),), 1)], (Q(1),), Q(2))
    with pytest.raises(ValueError):
        truncated_product([((Q(1),), 0)], (Q(1),), Q(2))


def test_truncated_restriction_consistency():
    factors = [
        ((Q(1), Q(0)), 1),
        ((Q(0), Q(1)), 2),
        ((Q(1), Q(1)), 1),
        ((Q(2), Q(-1)), 1),
    ]
    g = (Q(1), Q(1))
    big = truncated_product(factors, g, Q(4))
    small = truncated_product(factors, g, Q(2))
    for v, c in small.terms.items():
        assert big.coefficient(v) == c
    for v, c in big.terms.items():
        gr = sum(a * b for a, b in zip(v, g))
        if gr <= 2:
            assert small.coefficient(v) == c


def test_exact_divide_parallel():
    num = one(1) - monomial(1, (Q(2),))
    den = one(1) - monomial(1, (Q(1),))
    assert exact_divide(num, den) == one(1) + monomial(1, (Q(1),))


def test_exact_divide_not_divisible():
    num = one(2) - monomial(2, (Q(1), Q(0)))
    den = one(2) - monomial(2, (Q(0), Q(1)))
    with pytest.raises(NotDivisibleError):
        exact_divide(num, den)


def test_exact_divide_zero_cases():
    den = one(1) - monomial(1, (Q(1),))
    assert exact_divide(GroupRingElement(1, {}), den) == GroupRingElement(1, {})
    with pytest.raises(ZeroDivisionError):
        exact_divide(den, GroupRingElement(1, {}))


def test_exact_divide_round_trip():
    rng = random.Random(314)
    done = 0
    while done < 25:
        dim = rng.randint(1, 2)
        q = rand_element(rng, dim)
        b = rand_element(rng, dim, nterms=2)
        if not b.terms or not q.terms:
            continue
        prod = mul(q, b)
        assert exact_divide(prod, b) == q
        done += 1


def test_shift_equivalent_example():
    m = SupportMap(1, {(Q(1),): 1, (Q(2),): 1})
    m2 = shift_equivalent(m, (Q(1),))
    assert m2.entries == {(Q(-1),): 1, (Q(2),): 1}
    assert type(m2) is SupportMap


def test_shift_equivalent_involution_and_errors():
    m = SupportMap(2, {(Q(1), Q(0)): 1, (Q(0), Q(1)): 2})
    b = (Q(1), Q(0))
    assert shift_equivalent(shift_equivalent(m, b), (Q(-1), Q(0))).entries == m.entries
    with pytest.raises(ValueError):
        shift_equivalent(m, (Q(5), Q(5)))
    sm = SignedSupportMap(1, {(Q(1),): -1})
    with pytest.raises(ValueError):
        shift_equivalent(sm, (Q(1),))


def test_shift_identity_on_expansion():
    # flipping one factor's sign of the support key negates and twists
    # the whole expansion by exactly that monomial
    rng = random.Random(161803)
    done = 0
    while done < 20:
        dim = rng.randint(1, 2)
        entries = {}
        for _ in range(rng.randint(1, 3)):
            v = tuple(Q(rng.randint(-2, 2)) for _ in range(dim))
            if all(c == 0 for c in v):
                continue
            entries[v] = rng.randint(1, 2)
        if not entries:
            continue
        m = SupportMap(dim, entries)
        b = rng.choice(list(entries))
        shifted = shift_equivalent(m, b)
        lhs = expand_product(shifted)
        rhs = -mul(monomial(dim, tuple(-c for c in b)), expand_product(m))
        assert lhs == rhs
        done += 1


def test_element_json_round_trip():
    x = monomial(2, (Q(1, 2), Q(-1)), Q(3)) + monomial(2, (Q(0), Q(2)), -1)
    d = element_to_json(x)
    assert d["dim"] == 2
    assert [t["v"] for t in d["terms"]] == [["0", "2"], ["1/2", "-1"]]
    assert element_from_json(d) == x


def test_support_map_json_round_trip():
    m = SupportMap(2, {(Q(1), Q(0)): 2, (Q(0), Q(1)): 1})
    d = support_map_to_json(m)
    assert support_map_from_json(d).entries == m.entries
    sm = SignedSupportMap(1, {(Q(1),): -2})
    d2 = support_map_to_json(sm)
    back = support_map_from_json(d2, signed=True)
    assert back.entries == sm.entries and type(back) is SignedSupportMap
    with pytest.raises(ValueError):
        support_map_from_json(d2)
