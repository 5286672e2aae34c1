import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from fueterkit.algebra import (AlgebraError, builtin_algebra, norm, quaternions,
                               random_element, sym_product)
from fueterkit.fueter import (FueterPoint, FueterSeries, backward_shift, cauchy_product,
                              evaluate, mi_unit, multi_indices, random_polynomial)
from fueterkit.rkmodules import (adjoint_from_pairings, adjoint_matrix, adjoint_multiplier,
                                 blaschke_at_xi, blaschke_factor, blaschke_gram_check,
                                 component_form, component_signatures, da_adjoint_check,
                                 da_contraction_gap, derivative_op, drury_arveson,
                                 evaluate_zeta, evaluation_identity_check, fock,
                                 fock_adjoint_check, halmos_check, hermitian_form, kernel_eval,
                                 module_norm, mult_by, mult_op, multiplier_kernel_pairing,
                                 nondegeneracy_witness, reproducing_check)
from fueterkit.scalars import Q

H = quaternions()
one, i, j, k = (H.basis_element(n) for n in range(4))
DA, FOCK = drury_arveson(), fock()


def mono(alpha, c=None, order=4):
    return FueterSeries.monomial(H, alpha, c if c is not None else one, order)


def test_weights():
    assert DA((2, 1, 0)) == Q(2, 6)
    assert FOCK((2, 1, 3)) == 12
    assert DA((0, 0, 0)) == 1 == FOCK((0, 0, 0))


def test_form_on_monomials():
    idx = multi_indices(3, 2)
    for a in idx:
        for b in idx:
            expect = one * DA(a) if a == b else H.zero()
            assert hermitian_form(mono(a), mono(b), DA) == expect
    c, d = i + 2 * j, one - k
    assert hermitian_form(mono((1, 1, 0), c), mono((1, 1, 0), d), DA) == d.dagger() * c * Q(1, 2)
    assert not hermitian_form(mono((1, 0, 0), c), FueterSeries.zero(H), DA)


def test_component_forms_recombine():
    rng = random.Random(1)
    f, g = random_polynomial(H, 2, rng), random_polynomial(H, 2, rng)
    full = hermitian_form(f, g, FOCK)
    assert [component_form(f, g, ell, FOCK) for ell in range(4)] == list(full.coeffs)
    sig = component_signatures(H, DA, 2)
    # the real part is the positive definite one
    assert sig[0]["negative"] == 0 and sig[0]["zero"] == 0


def test_module_norm():
    f = mono((1, 0, 0), 3 * one) + mono((0, 0, 0), 4 * one)
    assert module_norm(f, DA) == pytest.approx(5.0)


def test_kernel_examples():
    assert kernel_eval(FueterPoint.origin(H), 4, DA) == FueterSeries.constant(H, 1, 4)
    xi = FueterPoint(H, [Q(1, 3), Q(1, 2), 0, Q(-1, 4)])
    c = H.element([1, 0, 2, -1])
    f = FueterSeries.constant(H, c, 3)
    lhs, rhs = reproducing_check(f, xi, one, DA, 3)
    assert lhs == rhs == c
    u = i - k
    alpha = (1, 0, 1)
    f = mono(alpha, u, 3)
    expect = sym_product([xi.zeta[0], xi.zeta[2]]) * u
    for c in (DA, FOCK):
        lhs, rhs = reproducing_check(f, xi, one, c, 3)
        assert lhs == rhs == expect
    with pytest.raises(ValueError):
        reproducing_check(f, xi, one, DA, 1)


def test_operators():
    assert mult_op(2, FueterSeries.constant(H, 1, 0)) == FueterSeries.variable(H, 2)
    s = FueterSeries.monomial(H, (1, 0, 0), j, 2)
    assert mult_by(s, FueterSeries.constant(H, 1, 2)) == s
    assert derivative_op(1, FueterSeries.variable(H, 1)) == FueterSeries.constant(H, 1, 0)


def test_da_adjoint_on_monomial_pairs():
    for a in multi_indices(3, 3):
        for b in multi_indices(3, 3):
            for kk in (1, 2, 3):
                l, r = da_adjoint_check(mono(a), mono(b), kk)
                bk = tuple(x + (n == kk - 1) for n, x in enumerate(b))
                val = one * DA(bk) if a == bk else H.zero()
                assert l == r == val


def test_fock_adjoint_on_monomial_pairs():
    for a in multi_indices(3, 3):
        for b in multi_indices(3, 3):
            for kk in (1, 2, 3):
                l, r = fock_adjoint_check(mono(a), mono(b), kk)
                bk = tuple(x + (n == kk - 1) for n, x in enumerate(b))
                val = one * math.prod(math.factorial(x) for x in a) if a == bk else H.zero()
                assert l == r == val


def test_wrong_weights_rejected():
    with pytest.raises(ValueError):
        da_adjoint_check(mono((1, 0, 0)), mono((0, 0, 0)), 1, FOCK)


def test_contraction_examples():
    c = i + j
    gap = da_contraction_gap(FueterSeries.constant(H, c), 1)
    assert not gap.gap and gap.ok
    gap = da_contraction_gap(FueterSeries.variable(H, 2, 1, None, c), 1)
    assert gap.gap == c.dagger() * c * Q(1, 2) and gap.ok


def test_evaluation_identity_examples():
    c = H.element([1, 2, 0, -1])
    rep = evaluation_identity_check(FueterSeries.constant(H, c, 3))
    assert rep.ok and rep.lhs == c.dagger() * c
    rep = evaluation_identity_check(mono((1, 2, 0)))
    assert rep.ok and not rep.rhs
    f = random_polynomial(H, 3, random.Random(2))
    assert evaluation_identity_check(f).ok


def test_adjoint_matrix_is_backward_shift():
    for kk in (1, 2, 3):
        star = adjoint_matrix(lambda f: mult_op(kk, f).with_order(3), H, DA, 3)
        for a in multi_indices(3, 3):
            shifted = backward_shift(mono(a, order=3), kk)
            assert star[a] == shifted.coeffs
        pairs = adjoint_from_pairings(
            lambda b, a: hermitian_form(mult_op(kk, mono(b, order=3)).with_order(3),
                                        mono(a, order=3), DA), H, DA, 3)
        assert pairs == star


def test_nondegeneracy():
    g = mono((0, 1, 1), i, 2) + mono((0, 0, 0), k, 2)
    wit = nondegeneracy_witness(g, DA, 2)
    assert wit[(0, 1, 1)] == -i * Q(1, 2) and wit[(0, 0, 0)] == -k
    assert not any(nondegeneracy_witness(FueterSeries.zero(H, 2), DA, 2).values())


def test_adjoint_multiplier_matches_form():
    rng = random.Random(7)
    s = random_polynomial(H, 1, rng)
    f, g = random_polynomial(H, 2, rng), random_polynomial(H, 3, rng)
    lhs = hermitian_form(cauchy_product(s.with_order(3), f.with_order(3)), g, DA)
    rhs = hermitian_form(f, adjoint_multiplier(s, g, DA).with_order(2), DA)
    assert lhs == rhs


def test_multiplier_kernel_pairing():
    rng = random.Random(3)
    xi = FueterPoint(H, [Q(1, 5), Q(1, 3), 0, Q(-1, 4)])
    ze = FueterPoint(H, [0, Q(-1, 2), Q(1, 6), 0])
    b1, b2 = random_element(H, rng), random_element(H, rng)
    r1, r2 = multiplier_kernel_pairing(FueterSeries.variable(H, 1), xi, ze, b1, b2, DA, DA, 3)
    assert r1 == r2
    unit = FueterSeries.constant(H, 1, 0)
    r1, r2 = multiplier_kernel_pairing(unit, xi, ze, b1, b2, DA, DA, 3)
    Kz = kernel_eval(ze, 3, DA)
    assert r1 == r2 == b2.dagger() * evaluate_zeta(Kz, xi.zeta).dagger() * b1
    r1, r2 = multiplier_kernel_pairing(FueterSeries.variable(H, 1), xi, ze, H.zero(), b2, DA, DA, 3)
    assert not r1 and not r2


def test_blaschke_at_origin():
    bf = blaschke_factor((H.zero(),) * 3, 4)
    for n in range(1, 4):
        assert bf.series.coeff(mi_unit(3, n)).entries[0] == tuple(
            one if c == n else H.zero() for c in range(1, 4))
    assert bf.series.coeff((0, 0, 0)).entries == ((H.zero(),) * 3,)
    assert blaschke_at_xi(bf) == 0


def test_blaschke_vanishes_and_gram():
    xi = (i / 2, H.zero(), H.zero())
    bf = blaschke_factor(xi, 16, 1e-8)
    assert blaschke_at_xi(bf) <= 1e-7
    assert blaschke_gram_check(bf, 3).max_error <= 1e-6
    assert halmos_check(xi, 1e-12) < 1e-10
    with pytest.raises(ValueError):
        blaschke_factor((one, H.zero(), H.zero()), 3)


def test_blaschke_noncommuting_point():
    # the row does not vanish at xi unless the components commute with each other
    # and with their conjugates; the Gram identity holds regardless
    xi = (i / 3, j / 3, H.zero())
    bf = blaschke_factor(xi, 16, 1e-12)
    assert blaschke_at_xi(bf) > 1e-2
    assert blaschke_gram_check(bf, 3).max_error <= 1e-6


def test_module_elements_centered_at_origin():
    f = FueterSeries.constant(H, 1, 2, FueterPoint(H, [1, 0, 0, 0]))
    with pytest.raises(AlgebraError):
        hermitian_form(f, f, DA)


seeds = st.integers(0, 10 ** 6)
ALGS = [builtin_algebra(n) for n in ("quaternions", "split_quaternions", "clifford:0,3",
                                     "grassmann:3", "ternary:1")]


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from(ALGS), st.integers(1, 3))
def test_da_structure_random(seed, A, kk):
    rng = random.Random(seed)
    kk = min(kk, A.m)
    f, g = random_polynomial(A, 3, rng, density=0.4), random_polynomial(A, 3, rng, density=0.4)
    l, r = da_adjoint_check(f, g, kk)
    assert l == r
    assert da_contraction_gap(f, kk).ok
    assert evaluation_identity_check(f).ok


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from(ALGS))
def test_fock_and_reproducing_random(seed, A):
    rng = random.Random(seed)
    f, g = random_polynomial(A, 3, rng, density=0.4), random_polynomial(A, 3, rng, density=0.4)
    l, r = fock_adjoint_check(f, g, 1)
    assert l == r
    xi = FueterPoint(A, [Q(rng.randint(-2, 2), 3) for _ in range(A.dim)])
    b = random_element(A, rng)
    for c in (DA, FOCK):
        lhs, rhs = reproducing_check(f, xi, b, c, 3)
        assert lhs == rhs
        assert rhs == b.dagger() * evaluate(f, xi.v)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_form_hermitian_symmetry(seed):
    rng = random.Random(seed)
    f, g = random_polynomial(H, 3, rng), random_polynomial(H, 3, rng)
    assert hermitian_form(f, g, DA).dagger() == hermitian_form(g, f, DA)
    assert norm(hermitian_form(f, f, DA) - hermitian_form(f, f, DA).dagger()) == 0
