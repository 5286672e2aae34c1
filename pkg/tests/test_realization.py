import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from fueterkit.algebra import (AlgebraError, MatrixOverA, builtin_algebra, mat_invert,
                               quaternions)
from fueterkit.fueter import (FueterPoint, FueterSeries, backward_shift, cauchy_inverse,
                              cauchy_product, multi_indices, random_center, random_polynomial)
from fueterkit.realization import (Realization, as_matrix_series, concat_col, concat_row,
                                   constant_realization, from_polynomial, gleason_via_realization,
                                   gleason_realization_residual, inverse, product,
                                   random_realization, realization_from_json,
                                   realization_to_json, resolvent_span, sum_, to_series,
                                   variable_realization, zero_realization)
from fueterkit.scalars import Q

H = quaternions()
one, i, j, k = (H.basis_element(n) for n in range(4))


def mat(*rows):
    return MatrixOverA(H, [list(r) for r in rows])


def invertible_D(spec, rng, N=2):
    R = random_realization(spec, rng, N)
    return Realization(spec, R.A, R.B, R.C, MatrixOverA(spec, [[2]]), R.center)


def test_atoms():
    M = mat([i, j])
    assert to_series(constant_realization(M), 3) == FueterSeries.constant(H, M, 3)
    got = to_series(variable_realization(2, M), 3)
    assert got == FueterSeries.monomial(H, (0, 1, 0), M, 3)
    assert to_series(zero_realization(H, 1, 1), 2).is_zero()


@pytest.mark.parametrize("seed", range(4))
def test_taylor_matches_neumann(seed):
    R = random_realization(H, random.Random(seed), N=2)
    assert to_series(R, 3) == to_series(R, 3, method="neumann")


def test_taylor_coefficients_unsymmetrized_differ():
    # the symmetrized powers matter once the A_k do not commute
    R = Realization(H, [mat([i, 0], [0, 0]), mat([j, 0], [0, 0]), mat([0, 0], [0, 0])],
                    [mat([1], [0])] * 3, mat([1, 0]), mat([0]))
    assert to_series(R, 3) == to_series(R, 3, method="neumann")
    assert to_series(R, 3) != to_series(R, 3, symmetrized=False)


def test_inverse_examples():
    M = mat([1 + i, 0 * one], [0 * one, j])
    assert to_series(inverse(constant_realization(M)), 2) == FueterSeries.constant(H, mat_invert(M), 2)
    lin = sum_(constant_realization(mat([one])), variable_realization(1, mat([-one])))
    geo = FueterSeries(H, {(n, 0, 0): mat([one]) for n in range(6)}, 5, None, (1, 1))
    assert to_series(inverse(lin), 5) == geo
    R = invertible_D(H, random.Random(3))
    assert to_series(inverse(inverse(R)), 4) == to_series(R, 4)


def test_product_and_sum_examples():
    M1, M2 = mat([i]), mat([j + k])
    assert to_series(product(constant_realization(M1), constant_realization(M2)), 2) == \
        FueterSeries.constant(H, M1 * M2, 2)
    R = random_realization(H, random.Random(8))
    assert to_series(sum_(R, zero_realization(H, 1, 1)), 4) == to_series(R, 4)
    rng = random.Random(12)
    R1, R2 = random_realization(H, rng), random_realization(H, rng)
    assert to_series(product(R1, R2), 3) == cauchy_product(to_series(R1, 3), to_series(R2, 3))


def test_concatenation():
    rng = random.Random(21)
    R1, R2 = random_realization(H, rng), random_realization(H, rng)
    row = to_series(concat_row(R1, R2), 3)
    col = to_series(concat_col(R1, R2), 3)
    s1, s2 = to_series(R1, 3), to_series(R2, 3)
    for a in multi_indices(3, 3):
        assert row.coeff(a).entries == (s1.coeff(a).entries[0] + s2.coeff(a).entries[0],)
        assert col.coeff(a).entries == s1.coeff(a).entries + s2.coeff(a).entries


def test_center_mismatch_rejected():
    R1 = random_realization(H, random.Random(1))
    R2 = random_realization(H, random.Random(2), center=FueterPoint(H, [1, 0, 0, 0]))
    with pytest.raises(AlgebraError):
        product(R1, R2)


def test_from_polynomial_examples():
    c = FueterSeries.constant(H, i - k, 3)
    assert to_series(from_polynomial(c), 3) == as_matrix_series(c)
    P = FueterSeries.monomial(H, (2, 0, 0), j, 2)
    assert to_series(from_polynomial(P), 2) == as_matrix_series(P)
    atoms = product(variable_realization(1, mat([k])), variable_realization(1, mat([i])))
    assert to_series(atoms, 2) == as_matrix_series(P)
    Z = FueterSeries.zero(H, 3)
    assert to_series(from_polynomial(Z), 3).is_zero()


def test_resolvent_commuting():
    A = [mat([Q(1, 2) * one, 0 * one], [0 * one, Q(-1, 3) * one]),
         mat([2 * one, 0 * one], [0 * one, one]),
         mat([0 * one, 0 * one], [0 * one, Q(3, 2) * one])]
    G0 = mat([i, j + one])
    G = resolvent_span(FueterPoint.origin(H), A, G0, 4)
    for alpha in multi_indices(3, 4):
        Apow = mat([one, 0 * one], [0 * one, one])
        for kk, a in enumerate(alpha):
            for _ in range(a):
                Apow = Apow * A[kk]
        w = Q(math.factorial(sum(alpha)), math.prod(math.factorial(x) for x in alpha))
        assert G.coeff(alpha) == (G0 * Apow) * w
    eta = mat([one], [i])
    Ge = G * eta
    for kk in (1, 2, 3):
        assert backward_shift(Ge, kk).equal_to_order(G * (A[kk - 1] * eta), 3)


def test_gleason_realization_zero_state():
    R = constant_realization(mat([i]))
    f, gs = gleason_via_realization(R, mat([one]), 3)
    assert all(g.is_zero() for g in gs)


def test_json_round_trip():
    R = random_realization(H, random.Random(6), N=2, q=2, r=1, center=random_center(H, random.Random(1)))
    back = realization_from_json(realization_to_json(R), H)
    assert to_series(back, 3) == to_series(R, 3)
    C = constant_realization(mat([i, j], [k, one]))
    assert to_series(realization_from_json(realization_to_json(C), H), 2) == to_series(C, 2)


seeds = st.integers(0, 10 ** 6)
ALGS = [builtin_algebra(n) for n in ("quaternions", "split_quaternions", "clifford:0,3",
                                     "grassmann:3", "ternary:1")]


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from(ALGS))
def test_two_routes_agree(seed, A):
    R = random_realization(A, random.Random(seed))
    assert to_series(R, 3) == to_series(R, 3, method="neumann")


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from(ALGS))
def test_calculus_matches_series(seed, A):
    rng = random.Random(seed)
    R1, R2 = random_realization(A, rng), random_realization(A, rng)
    s1, s2 = to_series(R1, 3), to_series(R2, 3)
    assert to_series(product(R1, R2), 3) == cauchy_product(s1, s2)
    assert to_series(sum_(R1, R2), 3) == s1 + s2
    R1 = Realization(A, R1.A, R1.B, R1.C, MatrixOverA(A, [[3]]), R1.center)
    s1 = to_series(R1, 3)
    assert to_series(inverse(R1), 3) == cauchy_inverse(s1)


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from(ALGS))
def test_from_polynomial_round_trip(seed, A):
    rng = random.Random(seed)
    P = random_polynomial(A, 3, rng, random_center(A, rng), density=0.3)
    assert to_series(from_polynomial(P), 3) == as_matrix_series(P)


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from(ALGS))
def test_gleason_via_realization(seed, A):
    rng = random.Random(seed)
    R = random_realization(A, rng, N=2)
    assert gleason_realization_residual(R, MatrixOverA.identity(A, 1), 4).is_zero()
