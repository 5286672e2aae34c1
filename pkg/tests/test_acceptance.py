"""Acceptance suite. Each test prints its measured quantity and runs at the stated tolerance."""
import json
import random
import subprocess
import sys
import time

import pytest

from fueterkit.algebra import (MatrixOverA, NotInvertible, builtin_algebra, invert,
                               random_element)
from fueterkit.checks import da_monomial_pairs
from fueterkit.fueter import (FueterPoint, FueterSeries, VPolynomial, apply_D, cauchy_inverse,
                              cauchy_product, frechet_check, gleason_residual, gleason_solve,
                              monomial_family, multi_indices, ordered_zeta_product,
                              random_center, random_polynomial, recenter)
from fueterkit.realization import (Realization, as_matrix_series, from_polynomial, inverse,
                                   product, random_realization, sum_, to_series)
from fueterkit.rkmodules import (blaschke_at_xi, blaschke_factor, blaschke_gram_check,
                                 da_contraction_gap, drury_arveson, evaluation_identity_check,
                                 fock, fock_adjoint_check, reproducing_check,
                                 unit_monomial)
from fueterkit.scalars import Q

BUILTINS = ["quaternions", "split_quaternions", "clifford:0,3", "grassmann:3", "ternary:1"]
ALGS = {n: builtin_algebra(n) for n in BUILTINS}
H = ALGS["quaternions"]


def note(request, text):
    request.node.acceptance_note = text
    print(text)


@pytest.mark.acceptance("AC-01")
def test_fueter_monomials_hyperholomorphic(request):
    t0 = time.perf_counter()
    bad, count = [], 0
    for name, A in ALGS.items():
        rng = random.Random(100)
        for _ in range(5):
            center = random_center(A, rng)
            fam = monomial_family(center)
            for alpha in multi_indices(A.m, 4):
                count += 1
                if apply_D(fam[alpha]):
                    bad.append((name, alpha))
    dt = time.perf_counter() - t0
    note(request, f"{count} expansions, {len(bad)} nonzero, {dt:.1f} s")
    assert not bad
    assert dt < 60


@pytest.mark.acceptance("AC-02")
def test_commutator_obstruction(request):
    rows = 0
    for A in ALGS.values():
        v0 = VPolynomial.variable(A, 0)
        for j in range(1, A.m + 1):
            for k in range(j + 1, A.m + 1):
                P, P2 = ordered_zeta_product(A, [j, k]), ordered_zeta_product(A, [k, j])
                comm = A.e(j) * A.e(k) - A.e(k) * A.e(j)
                assert apply_D(P) == comm * v0
                assert not apply_D(P + P2)
                rows += 1
    note(request, f"D(zeta_j zeta_k) = [e_j,e_k] v_0 exact on {rows} pairs")


@pytest.mark.acceptance("AC-02")
@pytest.mark.xfail(strict=True, reason="literal v_0^2 form refuted: D lowers degree by one")
def test_commutator_obstruction_literal_square():
    v0 = VPolynomial.variable(H, 0)
    P = ordered_zeta_product(H, [1, 2])
    assert apply_D(P) == (H.e(1) * H.e(2) - H.e(2) * H.e(1)) * v0 * v0


@pytest.mark.acceptance("AC-03")
def test_center_dependence(request):
    one, i, j, k = (H.basis_element(n) for n in range(4))
    p1 = FueterSeries.variable(H, 1, 2, None, k)
    p2 = FueterSeries.variable(H, 1, 2, None, i)
    xi = FueterPoint(H, [-1, 0, 0, 0])
    assert xi.zeta == (i, j, k)
    P = cauchy_product(p1, p2)
    Qxi = recenter(cauchy_product(recenter(p1, xi), recenter(p2, xi)), FueterPoint.origin(H))
    assert P == FueterSeries(H, {(2, 0, 0): j}, 2)
    assert Qxi == FueterSeries(H, {(2, 0, 0): j, (1, 0, 0): -2 * k}, 2)
    note(request, "P = zeta_1^2 j, Q = zeta_1^2 j - 2 zeta_1 k")


@pytest.mark.acceptance("AC-04")
def test_gleason_residual(request):
    rng = random.Random(4)
    nonzero = 0
    for _ in range(50):
        f = random_polynomial(H, rng.randint(1, 4), rng, random_center(H, rng))
        if not gleason_residual(f, gleason_solve(f)).is_zero():
            nonzero += 1
    note(request, f"50 polynomials, {nonzero} nonzero residuals")
    assert nonzero == 0


def _with_invertible_D(R, A):
    d = R.D.entries[0][0]
    try:
        invert(d)
        return R
    except NotInvertible:
        return Realization(A, R.A, R.B, R.C, MatrixOverA(A, [[2]]), R.center)


@pytest.mark.acceptance("AC-05")
def test_realization_calculus(request):
    t0 = time.perf_counter()
    order = 4
    for name, A in ALGS.items():
        rng = random.Random(5)
        Rs = [random_realization(A, rng, N=2) for _ in range(20)]
        series = []
        for R in Rs:
            s = to_series(R, order)
            assert s == to_series(R, order, method="neumann"), name
            series.append(s)
        for n in range(0, 20, 4):
            R1, R2 = Rs[n], Rs[n + 1]
            s1, s2 = series[n], series[n + 1]
            assert to_series(product(R1, R2), order) == cauchy_product(s1, s2), name
            assert to_series(sum_(R1, R2), order) == s1 + s2, name
            Ri = _with_invertible_D(R1, A)
            assert to_series(inverse(Ri), order) == cauchy_inverse(to_series(Ri, order)), name
        for _ in range(3):
            P = random_polynomial(A, 3, rng, random_center(A, rng), density=0.3)
            assert to_series(from_polynomial(P), 3) == as_matrix_series(P), name
    dt = time.perf_counter() - t0
    note(request, f"5 algebras x 20 realizations, order {order}, {dt:.1f} s")
    assert dt < 120


@pytest.mark.acceptance("AC-06")
def test_drury_arveson_structure(request):
    bad, n = da_monomial_pairs(H, 4)
    assert not bad
    rng = random.Random(6)
    for _ in range(10):
        f = random_polynomial(H, 4, rng)
        for k in (1, 2, 3):
            assert da_contraction_gap(f, k).ok
        assert evaluation_identity_check(f).ok
    note(request, f"{n} monomial pairings, 10 polynomials")


@pytest.mark.acceptance("AC-07")
def test_fock_structure(request):
    c = fock()
    idx = multi_indices(3, 4)
    for k in (1, 2, 3):
        for a in idx:
            for b in idx:
                x, y = fock_adjoint_check(unit_monomial(H, a, 4), unit_monomial(H, b, 4), k)
                assert x == y
    rng = random.Random(7)
    for _ in range(20):
        f, g = random_polynomial(H, 4, rng), random_polynomial(H, 4, rng)
        for k in (1, 2, 3):
            x, y = fock_adjoint_check(f, g, k, c)
            assert x == y
    note(request, f"{3 * len(idx) ** 2} monomial pairings, 20 random pairs")


@pytest.mark.acceptance("AC-08")
def test_reproducing_property(request):
    rng = random.Random(8)
    checked = 0
    for c in (drury_arveson(), fock()):
        for _ in range(5):
            f = random_polynomial(H, 3, rng)
            xi = random_center(H, rng)
            b = random_element(H, rng)
            lhs, rhs = reproducing_check(f, xi, b, c, 3)
            assert lhs == rhs
            checked += 1
    note(request, f"{checked} kernel pairings")


@pytest.mark.acceptance("AC-09")
def test_blaschke(request):
    t0 = time.perf_counter()
    i = H.e(1)
    zero = blaschke_factor((H.zero(),) * 3, 4)
    target = {(1, 0, 0): MatrixOverA(H, [[1, 0, 0]]), (0, 1, 0): MatrixOverA(H, [[0, 1, 0]]),
              (0, 0, 1): MatrixOverA(H, [[0, 0, 1]])}
    assert zero.series == FueterSeries(H, target, 4, None, (1, 3))
    xi = (i / 2, H.zero(), H.zero())
    at_xi = blaschke_at_xi(blaschke_factor(xi, 16, 1e-8))
    gram = blaschke_gram_check(blaschke_factor(xi, 4, 1e-8), 4).max_error
    dt = time.perf_counter() - t0
    note(request, f"|B(xi)| = {at_xi:.2e}, Gram error {gram:.2e}, {dt:.1f} s")
    assert at_xi <= 1e-7
    assert gram <= 1e-6
    assert dt < 60


@pytest.mark.acceptance("AC-10")
def test_frechet(request):
    rng = random.Random(10)
    slopes = []
    for _ in range(10):
        f = random_polynomial(H, rng.randint(2, 4), rng, random_center(H, rng))
        r = frechet_check(f, scales=(Q(1, 10), Q(1, 100), Q(1, 1000)), seed=rng.randint(0, 999))
        assert r.passed, r.slopes
        slopes.append(r.min_slope)
    w = frechet_check(ordered_zeta_product(H, [1, 2]), FueterPoint(H, [1, 1, 0, 0]))
    note(request, f"min slope {min(slopes):.3f}; witness slope {w.min_slope:.3f}")
    assert min(slopes) >= 0.9
    assert not w.passed and w.flag


@pytest.mark.acceptance("AC-11")
def test_suite_deterministic(request):
    cmd = [sys.executable, "-m", "fueterkit", "suite", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=False)
    b = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["status"] == "pass"
    note(request, f"{len(a.stdout)} bytes identical")
