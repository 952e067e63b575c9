import pytest
from hypothesis import given, settings, strategies as st

from lrcforge.errors import (
    CoefficientNotInBaseField,
    DivisionByZeroPolynomial,
    FieldMismatch,
    NonMonicGenerator,
)
from lrcforge.field import build_field, in_base_field, primitive_nth_root
from lrcforge.lrc import ConstructionKind, LrcParams, derive
from lrcforge.poly import (
    NEG_INF,
    Polynomial,
    descend_coefficients,
    divides_xn_minus_1,
    embed_polynomial,
    sparse_binomial,
)

from oracles import poly_divmod_mod_p

GF11 = build_field(11, 1)


def P(field, coeffs):
    return Polynomial(field, coeffs)


def test_product_of_linear_factors():
    assert P(GF11, [-1, 1]) * P(GF11, [1, 1]) == P(GF11, [-1, 0, 1])


def test_geometric_sum_division():
    q, r = divmod(Polynomial.x_n_minus_1(GF11, 5), P(GF11, [-1, 1]))
    assert q == P(GF11, [1, 1, 1, 1, 1])
    assert r.is_zero and r.degree == NEG_INF


def test_division_by_zero():
    with pytest.raises(DivisionByZeroPolynomial):
        divmod(P(GF11, [1, 1]), P(GF11, []))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        P(GF11, [1]) + P(build_field(13, 1), [1])


def test_t1_generator_vanishes_on_its_roots():
    der = derive(LrcParams(11, 5, 3, 3), ConstructionKind.parse("t1"))
    g = der.ext_generator
    assert g.degree == 3  # (x-1)(x-alpha)(x-alpha^2) with rho = 1
    for e in range(5):
        val = g(der.xi**e)
        assert val.is_zero == (e in {0, 1, 2})


def test_sparse_binomial():
    assert sparse_binomial(1, GF11.one) == P(GF11, [-1, 1])
    assert sparse_binomial(3, GF11.zero) == P(GF11, [0, 0, 0, 1])
    der = derive(LrcParams(7, 30, 4, 3), ConstructionKind.parse("t3"))
    f = sparse_binomial(5, der.alpha)
    assert f.degree == 5
    assert [i for i, c in enumerate(f.coeffs) if not c.is_zero] == [0, 5]
    assert f.coeffs[0] == -der.alpha


def test_divides_xn_minus_1():
    for n in (1, 5, 12, 30):
        assert divides_xn_minus_1(P(GF11, [-1, 1]), n)
    assert not divides_xn_minus_1(P(GF11, [1, 0, 1]), 5)
    with pytest.raises(NonMonicGenerator):
        divides_xn_minus_1(P(GF11, [1, 2]), 5)


def test_t1_generator_divides_against_long_division():
    der = derive(LrcParams(11, 10, 3, 3), ConstructionKind.parse("t1"))
    g = descend_coefficients(der.ext_generator, 11)
    assert divides_xn_minus_1(g, 10)
    _, rem = poly_divmod_mod_p([-1] + [0] * 9 + [1], [int(c) for c in g.coeffs], 11)
    assert not any(rem)
    _, rem = poly_divmod_mod_p([-1, 0, 0, 0, 0, 1], [1, 0, 1], 11)
    assert any(rem)


def test_descend_identity_on_binary_coefficients():
    E = build_field(11, 2)
    g = P(E, [1, 0, 1, 1, 0, 1])
    d = descend_coefficients(g, 11)
    assert [int(c) for c in d.coeffs] == [1, 0, 1, 1, 0, 1]
    assert embed_polynomial(d, E) == g


def test_t4_generator_descends_to_degree_9():
    der = derive(LrcParams(13, 21, 5, 3), ConstructionKind.parse("t4"))
    assert der.s == 2
    # independent expansion: multiply the five factors directly in GF(13^2)
    E, xi, rho = der.xi.field, der.xi, 3
    alpha = xi**rho
    gamma = alpha**der.bezout_a
    one = E.one
    g = P(E, [-one, one])
    for c in (alpha, alpha.inverse()):
        g = g * sparse_binomial(rho, c)
    for c in (gamma**2, gamma**-2):
        g = g * P(E, [-c, one])
    assert g == der.ext_generator
    assert all(in_base_field(c, 13)[0] for c in g.coeffs)
    d = descend_coefficients(g, 13)
    assert d.field.order == 13 and d.degree == 9
    assert embed_polynomial(d, E) == g


def test_descend_rejects_extension_coefficient():
    E = build_field(11, 2)
    xi = primitive_nth_root(E, 3)
    with pytest.raises(CoefficientNotInBaseField):
        descend_coefficients(P(E, [-xi, E.one]), 11)


def test_json_round_trip():
    E = build_field(7, 4)
    g = P(E, [E.x, 3, E.one])
    assert Polynomial.from_json(E, g.to_json()) == g
    assert P(GF11, [3, 0, 1]).to_json() == [3, 0, 1]


def _poly(field, max_deg=8):
    return st.lists(st.integers(0, field.order - 1), max_size=max_deg + 1).map(
        lambda cs: Polynomial(field, [field.from_index(c) for c in cs]))


FIELDS = [build_field(11, 1), build_field(3, 2), build_field(2, 4)]


@settings(max_examples=150)
@given(st.sampled_from(FIELDS).flatmap(lambda F: st.tuples(_poly(F), _poly(F), st.integers(0, F.order - 1),
                                                         st.just(F))))
def test_divmod_round_trip_and_eval_homomorphism(data):
    a, b, t, F = data
    t = F.from_index(t)
    assert (a * b)(t) == a(t) * b(t)
    assert (a + b)(t) == a(t) + b(t)
    if b.is_zero:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=60)
@given(st.lists(st.integers(0, 8), max_size=6))
def test_embed_then_descend_is_identity(cs):
    B = build_field(3, 2)
    E = build_field(3, 6)
    g = Polynomial(B, [B.from_index(c) for c in cs])
    assert descend_coefficients(embed_polynomial(g, E), 9) == g


@pytest.mark.parametrize("q,n", [(11, 10), (7, 30), (4, 15), (9, 20)])
def test_divisors_have_distinct_nth_root_zeros(q, n):
    from lrcforge.cyclic import from_generator
    from lrcforge.field import field_of_order

    B = field_of_order(q)
    x_n = Polynomial.x_n_minus_1(B, n)
    # every monic divisor obtained as gcd with products of low-degree polys
    for c in range(1, min(q, 5)):
        f = P(B, [B.from_index(c), 0, 1]) * P(B, [-1, 1])
        g = x_n.gcd(f)
        code = from_generator(B, n, g)
        ge = embed_polynomial(g, code.ext)
        hits = [e for e in range(n) if ge(code.xi**e).is_zero]
        assert len(hits) == g.degree == len(code.zeros)
        assert set(hits) == code.zeros
