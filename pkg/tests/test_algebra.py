import itertools
import json
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fueterkit.algebra import (AlgebraError, DivergentSeries, MatrixOverA, NotInvertible,
                               builtin_algebra, clifford, grassmann, invert, left_regular,
                               mat_invert, mat_sqrt_inv, norm, quaternions, resolve_algebra,
                               spec_from_json, spec_to_json, split_quaternions, sym_product,
                               ternary, validate_spec)
from fueterkit.scalars import Q

BUILTINS = ["quaternions", "split_quaternions", "clifford:0,3", "clifford:1,2",
            "clifford:2,2", "grassmann:2", "grassmann:3", "ternary:1", "ternary:-1"]

H = quaternions()
one, i, j, k = (H.basis_element(n) for n in range(4))

fractions = st.builds(Q, st.integers(-6, 6), st.integers(1, 5))


def elements(spec):
    return st.lists(fractions, min_size=spec.dim, max_size=spec.dim).map(spec.element)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_validate(name):
    rep = validate_spec(builtin_algebra(name), samples=30)
    assert rep.ok, rep.failures()


def test_quaternion_table():
    assert i * j == k
    assert j * i == -k
    assert i * i == -one
    assert one * (2 * i + j) == 2 * i + j


def test_grassmann_two():
    G = grassmann(2)
    e1, e2, e12 = G.e(1), G.e(2), G.e(3)
    assert G.dim == 4
    assert e1 * e2 == e12
    assert e2 * e1 == -e12
    assert not e1 * e1 and not e2 * e2


def test_corrupted_associativity_flagged():
    data = spec_to_json(H)
    # i*i := +1 breaks (ii)j = i(ij)
    data["chi"][0][1][1] = "1"
    rep = validate_spec(spec_from_json(data))
    assert "associativity" in rep.failures()


def test_split_quaternion_norm_symmetry():
    S = split_quaternions()
    assert S.e(1) * S.e(1) == S.one()
    rep = validate_spec(S, samples=100)
    assert rep.ok


def test_conjugation_and_products():
    assert (one + i) * (one - i) == 2 * one
    assert i.dagger() == -i
    assert one.dagger() == one


def test_left_regular_columns():
    L = left_regular(i)
    for col in range(4):
        prod = i * H.basis_element(col)
        assert [L[row][col] for row in range(4)] == list(prod.coeffs)
    assert left_regular(one) == [[int(r == c) for c in range(4)] for r in range(4)]


def test_norm_examples():
    assert norm(one) == pytest.approx(1.0)
    assert norm(one + i) == pytest.approx(math.sqrt(2))
    a = H.element([1, Q(2, 3), -1, 3])
    assert norm(2 * a) == pytest.approx(2 * norm(a))
    sv = np.linalg.svd(np.array(left_regular(a), dtype=float), compute_uv=False)
    assert norm(a) == pytest.approx(sv.max())


def test_invert():
    assert invert(one) == one
    assert invert(i) == -i
    S = split_quaternions()
    with pytest.raises(NotInvertible):
        invert(S.one() + S.e(1))


def test_sym_product():
    a = H.element([1, 2, 0, -1])
    assert sym_product([a]) == a
    assert not sym_product([i, j])
    rng = random.Random(3)
    xs = [H.element([Q(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)]) for _ in range(3)]
    perms = list(itertools.permutations(xs))
    brute = sum((p[0] * p[1] * p[2] for p in perms[1:]), perms[0][0] * perms[0][1] * perms[0][2])
    assert sym_product(xs) == brute / 6


def test_mat_invert_triangular():
    assert mat_invert(MatrixOverA.identity(H, 2)).is_identity()
    a, b, d = one + i, j - 2 * k, 3 * one + k
    M = MatrixOverA(H, [[a, b], [H.zero(), d]])
    ai, di = invert(a), invert(d)
    expected = MatrixOverA(H, [[ai, -(ai * b * di)], [H.zero(), di]])
    assert mat_invert(M) == expected
    assert mat_invert(MatrixOverA(H, [[i]])) == MatrixOverA(H, [[-i]])


def test_mat_sqrt_inv_scalar():
    I = MatrixOverA.identity(H, 1)
    assert mat_sqrt_inv(I) == I
    X = MatrixOverA(H, [[one * Q(3, 4)]])
    s = mat_sqrt_inv(X, "sqrt", 1e-14).entries[0][0]
    r = mat_sqrt_inv(X, "inv_sqrt", 1e-14).entries[0][0]
    assert float(s.coeffs[0]) == pytest.approx(math.sqrt(0.75), abs=1e-12)
    assert float(r.coeffs[0]) == pytest.approx(1 / math.sqrt(0.75), abs=1e-12)
    xi = i / 2
    Y = MatrixOverA(H, [[one - xi * xi.dagger()]])
    s = mat_sqrt_inv(Y, "sqrt", 1e-14).entries[0][0]
    assert float(s.coeffs[0]) == pytest.approx(0.8660254037844386, abs=1e-12)
    assert not any(s.coeffs[1:])
    with pytest.raises(DivergentSeries):
        mat_sqrt_inv(MatrixOverA(H, [[one * 3]]))


def test_sqrt_squares_back():
    xi = (i + j) / 3
    X = MatrixOverA(H, [[one - xi * xi.dagger(), xi], [xi.dagger() * 0, one]])
    X = MatrixOverA.identity(H, 2) - (MatrixOverA.identity(H, 2) - X) * Q(1, 2)
    s = mat_sqrt_inv(X, "sqrt", 1e-13)
    r = mat_sqrt_inv(X, "inv_sqrt", 1e-13)
    diff = s * s - X
    assert max(norm(e) for row in diff.entries for e in row) < 1e-11
    diff = s * r - MatrixOverA.identity(H, 2)
    assert max(norm(e) for row in diff.entries for e in row) < 1e-11


def test_resolve_and_json_round_trip(tmp_path, monkeypatch):
    T = ternary(-1)
    path = tmp_path / "tern.json"
    path.write_text(json.dumps(spec_to_json(T)))
    assert resolve_algebra(str(path)) == T
    monkeypatch.setenv("FUETERKIT_ALGEBRA_PATH", str(tmp_path))
    assert resolve_algebra("tern") == T
    with pytest.raises(AlgebraError):
        resolve_algebra("no_such_algebra")
    assert clifford(0, 2) == H


@settings(max_examples=60, deadline=None)
@given(elements(H), elements(H), elements(H))
def test_quaternion_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * b).dagger() == b.dagger() * a.dagger()
    assert a.dagger().dagger() == a
    assert norm(a * b) <= norm(a) * norm(b) * (1 + 1e-12) + 1e-12


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_clifford_axioms(data):
    A = clifford(1, 2)
    a, b, c = (data.draw(elements(A)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert (a * b).dagger() == b.dagger() * a.dagger()
    assert norm(a.dagger()) == pytest.approx(norm(a))


@settings(max_examples=40, deadline=None)
@given(elements(H))
def test_inverse_property(a):
    if not a:
        with pytest.raises(NotInvertible):
            invert(a)
        return
    assert a * invert(a) == one and invert(a) * a == one
