"""Graded algebra: wedge, differential, interior product, evaluations."""

import random
from fractions import Fraction

import pytest

from lawcheck.algebra import (
    Form,
    K_CURV,
    K_CURVM,
    K_DPHI,
    K_OMEGA,
    K_THETA,
    K_U,
    differential,
    evaluate_at_zero,
    interior_dphi,
    wedge,
)
from lawcheck.trig import TrigScalar


def rand_form(rng, n, boundary=False, max_terms=4, max_gens=3):
    """Seeded random element of the algebra, valid for the given mode."""
    f = Form.zero(n, boundary)
    for _ in range(rng.randint(1, max_terms)):
        term = Form.scalar(n, Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)),
                           boundary)
        if rng.random() < 0.5:
            coeff = TrigScalar.monomial(pi=rng.randint(0, 1),
                                        phi=rng.randint(0, 1),
                                        sin=rng.randint(0, 2),
                                        cos=rng.randint(0, 1))
            term = term.scale(coeff)
        for _ in range(rng.randint(0, max_gens)):
            kind = rng.choice(_mode_kinds(n, boundary))
            term = term * _rand_gen_form(rng, n, boundary, kind)
            if term.is_zero:
                break
        f = f + term
    return f


def _mode_kinds(n, boundary):
    if boundary:
        kinds = [K_DPHI, K_OMEGA, K_CURV]
        if n >= 3:
            kinds.append(K_CURVM)
    else:
        kinds = [K_OMEGA, K_CURV, K_U, K_THETA, K_DPHI]
    return kinds


def _rand_gen_form(rng, n, boundary, kind):
    if kind == K_DPHI:
        return Form.dphi(n, 1, boundary)
    if kind == K_OMEGA:
        a, b = rng.sample(range(1, n + 1), 2)
        return Form.omega(n, a, b, boundary)
    if kind == K_CURV:
        if boundary:
            return Form.curvature(n, 1, rng.randint(2, n), boundary=True)
        a, b = rng.sample(range(1, n + 1), 2)
        return Form.curvature(n, a, b)
    if kind == K_CURVM:
        s, t = rng.sample(range(2, n + 1), 2)
        return Form.boundary_curvature(n, s, t)
    if kind == K_U:
        return Form.coordinate(n, rng.randint(1, n))
    return Form.theta(n, rng.randint(1, n))


# -- wedge ------------------------------------------------------------------

def test_odd_square_vanishes():
    n = 4
    for g in (Form.omega(n, 1, 2), Form.theta(n, 3), Form.dphi(n)):
        assert (g * g).is_zero


def test_one_forms_anticommute():
    n = 4
    a, b = Form.omega(n, 1, 2), Form.omega(n, 1, 3)
    assert a * b == -(b * a)


def test_even_coefficient_factor_commutes():
    n = 4
    lhs = Form.omega(n, 1, 2).scale(TrigScalar.cos()) * \
        Form.curvature(n, 3, 4).scale(TrigScalar.sin())
    rhs = Form.curvature(n, 3, 4).scale(TrigScalar.sin()) * \
        Form.omega(n, 1, 2).scale(TrigScalar.cos())
    assert lhs == rhs
    coeff = next(iter(lhs.terms.values()))
    assert coeff == TrigScalar.cos() * TrigScalar.sin()


def test_antisymmetric_storage():
    n = 3
    assert Form.omega(n, 2, 1) == -Form.omega(n, 1, 2)
    assert Form.curvature(n, 3, 1) == -Form.curvature(n, 1, 3)
    assert Form.omega(n, 2, 2).is_zero


def test_wedge_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        wedge(Form.omega(3, 1, 2), Form.omega(4, 1, 2))


def test_wedge_associative_random():
    rng = random.Random(11)
    for n in (2, 3, 4):
        for _ in range(25):
            a, b, c = (rand_form(rng, n) for _ in range(3))
            assert (a * b) * c == a * (b * c)


def test_wedge_graded_commutative_random():
    rng = random.Random(12)
    for n in (3, 4):
        for _ in range(40):
            a = rand_form(rng, n, max_terms=1)
            b = rand_form(rng, n, max_terms=1)
            degs_a, degs_b = a.degrees(), b.degrees()
            if len(degs_a) != 1 or len(degs_b) != 1:
                continue
            sign = -1 if (degs_a[0] % 2 and degs_b[0] % 2) else 1
            rhs = (b * a).scale(sign)
            assert a * b == rhs


# -- differential -----------------------------------------------------------

def test_d_of_coefficient_is_calculus():
    n = 2
    f = Form.scalar(n, 1).scale(TrigScalar.cos())
    expected = Form.dphi(n).scale(-TrigScalar.sin())
    assert f.d() == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_d_squared_zero_on_generators(n):
    gens = []
    for a in range(1, n + 1):
        gens.append(Form.coordinate(n, a))
        gens.append(Form.theta(n, a))
        for b in range(a + 1, n + 1):
            gens.append(Form.omega(n, a, b))
            gens.append(Form.curvature(n, a, b))
    for g in gens:
        assert g.d().d().is_zero


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_d_squared_zero_on_boundary_generators(n):
    gens = [Form.dphi(n, 1, True)]
    for s in range(2, n + 1):
        gens.append(Form.omega(n, 1, s, True))
        gens.append(Form.curvature(n, 1, s, True))
        for t in range(s + 1, n + 1):
            gens.append(Form.omega(n, s, t, True))
            gens.append(Form.boundary_curvature(n, s, t))
    for g in gens:
        assert g.d().d().is_zero


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_d_squared_zero_random_forms(n):
    rng = random.Random(1000 + n)
    for _ in range(200):
        f = rand_form(rng, n)
        assert f.d().d().is_zero
    for _ in range(200):
        f = rand_form(rng, n, boundary=True)
        assert f.d().d().is_zero


def test_d_graded_leibniz_random():
    rng = random.Random(42)
    n = 3
    for _ in range(40):
        a = rand_form(rng, n, max_terms=1)
        b = rand_form(rng, n, max_terms=1)
        if len(a.degrees()) != 1:
            continue
        sign = -1 if a.degrees()[0] % 2 else 1
        assert (a * b).d() == a.d() * b + (a * b.d()).scale(sign)


def test_d_mode_violations():
    with pytest.raises(ValueError):
        Form.coordinate(3, 1).substitute({}, boundary=True).d()
    with pytest.raises(ValueError):
        Form.boundary_curvature(3, 2, 3).substitute({}, boundary=False).d()


# -- interior product and evaluation ----------------------------------------

def test_interior_product_basics():
    n = 3
    assert Form.dphi(n).interior_dphi() == Form.scalar(n, 1)
    assert Form.omega(n, 1, n).interior_dphi().is_zero
    got = (Form.dphi(n) * Form.omega(n, 1, 2)).interior_dphi()
    assert got == Form.omega(n, 1, 2)


def test_interior_product_is_odd_derivation():
    n = 3
    w = Form.omega(n, 1, 2)
    f = w * Form.dphi(n)
    # iota(w ^ dphi) = -w since dphi sits behind an odd factor
    assert f.interior_dphi() == -w


def test_interior_squared_zero_random():
    rng = random.Random(5)
    for _ in range(100):
        f = rand_form(rng, 4, boundary=True)
        assert f.interior_dphi().interior_dphi().is_zero
    assert interior_dphi(Form.dphi(4, 1, True)) == Form.scalar(4, 1, True)


def test_evaluate_at_zero_examples():
    n = 3
    f = Form.omega(n, 2, n, True).scale(TrigScalar.sin())
    assert f.evaluate_at_zero().is_zero
    g = Form.omega(n, 1, 2, True).scale(TrigScalar.cos()) + \
        Form.dphi(n, 1, True) * Form.omega(n, 1, 3, True)
    assert g.evaluate_at_zero() == Form.omega(n, 1, 2, True)
    assert evaluate_at_zero(g) == Form.omega(n, 1, 2, True)


def test_base_degree_filter():
    n = 3
    semibasic = Form.omega(n, 1, 2, True) * Form.omega(n, 1, 3, True) * \
        Form.boundary_curvature(n, 2, 3)
    assert not semibasic.is_zero
    assert semibasic.base_degree_filter().is_zero  # degree 4 > n-1 = 2
    mixed = Form.dphi(n, 1, True) * Form.omega(n, 2, 3, True)
    assert mixed.base_degree_filter() == mixed


# -- substitution and rendering ----------------------------------------------

def test_substitute_replaces_generators():
    n = 2
    f = Form.coordinate(n, 1) * Form.theta(n, 2)
    mapping = {
        (K_U, 1, 0): Form.scalar(n, 1).scale(TrigScalar.cos()),
        (K_THETA, 2, 0): Form.dphi(n).scale(TrigScalar.cos()),
    }
    got = f.substitute(mapping)
    assert got == Form.dphi(n).scale(TrigScalar.cos() * TrigScalar.cos())


def test_substitute_respects_order_signs():
    n = 3
    f = Form.theta(n, 1) * Form.theta(n, 2)
    swap = {(K_THETA, 1, 0): Form.theta(n, 2), (K_THETA, 2, 0): Form.theta(n, 1)}
    assert f.substitute(swap) == -(f)


def test_render_golden():
    n = 2
    f = Form.coordinate(n, 1) * Form.theta(n, 2) - Form.coordinate(n, 2) * Form.theta(n, 1)
    assert f.render() == "(1)*u1*th2 + (-1)*u2*th1"
    assert Form.zero(n).render() == "0"


def test_differential_module_function():
    n = 2
    assert differential(Form.dphi(n)).is_zero
