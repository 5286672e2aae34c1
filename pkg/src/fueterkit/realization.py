"""State-space realizations of hyperholomorphic rational functions.

A realization ``(A_k, B_k, C, D)`` centered at ``xi`` encodes

    R(zeta) = D + C (.) (I - sum_k (zeta_k - xi_k) A_k)^{-(.)} (.) sum_k (zeta_k - xi_k) B_k

with all products taken as Cauchy products at ``xi``.  State sizes are not
minimized anywhere; composition grows them additively.
"""
from __future__ import annotations

import math
import random
from typing import Sequence

from . import scalars
from .algebra import (AlgebraError, AlgebraSpec, MatrixOverA, SymCache,
                      mat_invert)
from .fueter import (FueterPoint, FueterSeries, cauchy_inverse, cauchy_product,
                     coeff_from_json, coeff_to_json, gleason_residual, mi_factorial,
                     mi_unit, multi_indices)
from .scalars import Q


class Realization:
    """Matrices ``A_1..A_m`` (NxN), ``B_1..B_m`` (Nxq), ``C`` (rxN), ``D`` (rxq)."""

    __slots__ = ("spec", "center", "A", "B", "C", "D")

    def __init__(self, spec: AlgebraSpec, A: Sequence[MatrixOverA], B: Sequence[MatrixOverA],
                 C: MatrixOverA, D: MatrixOverA, center: FueterPoint | None = None):
        m = spec.m
        if len(A) != m or len(B) != m:
            raise AlgebraError(f"need {m} matrices A_k and B_k")
        n = C.cols
        r, q = D.shape
        if C.rows != r:
            raise AlgebraError("C and D must have the same number of rows")
        for Ak in A:
            if Ak.shape != (n, n):
                raise AlgebraError(f"A_k must be {n}x{n}, got {Ak.shape}")
        for Bk in B:
            if Bk.shape != (n, q):
                raise AlgebraError(f"B_k must be {n}x{q}, got {Bk.shape}")
        self.spec = spec
        self.center = center if center is not None else FueterPoint.origin(spec)
        self.A = tuple(A)
        self.B = tuple(B)
        self.C = C
        self.D = D

    @property
    def state_size(self) -> int:
        return self.C.cols

    @property
    def shape(self):
        return self.D.shape

    def __repr__(self):
        return (f"Realization(N={self.state_size}, shape={self.shape}, "
                f"center={self.center!r})")


def _check_pair(R1: Realization, R2: Realization):
    if R1.center != R2.center:
        raise AlgebraError("realizations have different centers; recentering "
                           "changes the Cauchy product, so it is not done implicitly")
    if R1.spec != R2.spec:
        raise AlgebraError("realizations live over different algebras")


# ---------------------------------------------------------------------------
# atoms

def constant_realization(M: MatrixOverA, center: FueterPoint | None = None) -> Realization:
    spec = M.spec
    z = MatrixOverA.zeros
    return Realization(spec, [z(spec, 0, 0)] * spec.m, [z(spec, 0, M.cols)] * spec.m,
                       z(spec, M.rows, 0), M, center)


def variable_realization(k: int, M: MatrixOverA,
                         center: FueterPoint | None = None) -> Realization:
    """``(zeta_k - xi_k) M``: C = M, B_j = delta_jk I_q, A = D = 0."""
    spec = M.spec
    q = M.cols
    m = spec.m
    mi_unit(m, k)
    I = MatrixOverA.identity(spec, q)
    Z = MatrixOverA.zeros(spec, q, q)
    return Realization(spec, [Z] * m, [I if j == k else Z for j in range(1, m + 1)],
                       M, MatrixOverA.zeros(spec, M.rows, q), center)


def zero_realization(spec, rows, cols, center=None) -> Realization:
    return constant_realization(MatrixOverA.zeros(spec, rows, cols), center)


# ---------------------------------------------------------------------------
# expansion

def _power_cache(R: Realization, symmetrized: bool):
    n = R.state_size
    I = MatrixOverA.identity(R.spec, n)
    if symmetrized:
        return SymCache(R.A, I)

    class _Ordered(dict):
        def __missing__(self, beta):
            out = I
            for Ak, b in zip(R.A, beta):
                for _ in range(b):
                    out = out * Ak
            self[beta] = out
            return out
    return _Ordered()


def _series(R, coeffs, order):
    return FueterSeries(R.spec, coeffs, order, R.center, R.shape)


def to_series(R: Realization, order: int, method: str = "taylor_formula",
              symmetrized: bool = True) -> FueterSeries:
    """Matrix-valued Fueter series of ``R`` up to ``order``.

    ``taylor_formula`` uses ``r_0 = D`` and
    ``r_a = ((|a|-1)!/a!) C sum_k a_k A^{a - iota_k} B_k`` with symmetrized
    powers (``symmetrized=False`` switches to ordered powers, which agree only
    when the A_k commute).  ``neumann`` multiplies out the Cauchy inverse.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    m = R.spec.m
    if method == "neumann":
        return _neumann(R, order)
    if method != "taylor_formula":
        raise ValueError(f"unknown method {method!r}")
    coeffs = {(0,) * m: R.D}
    if R.state_size == 0:
        return _series(R, coeffs, order)
    powers = _power_cache(R, symmetrized)
    for alpha in multi_indices(m, order, 1):
        acc = None
        for k, ak in enumerate(alpha):
            if not ak:
                continue
            Bk = R.B[k]
            if not Bk:
                continue
            beta = alpha[:k] + (ak - 1,) + alpha[k + 1:]
            t = powers[beta] * Bk
            if ak != 1:
                t = t * Q(ak)
            acc = t if acc is None else acc + t
        if acc is None or not acc:
            continue
        w = Q(math.factorial(sum(alpha) - 1), mi_factorial(alpha))
        coeffs[alpha] = (R.C * acc) * w
    return _series(R, coeffs, order)


def resolvent(spec, A: Sequence[MatrixOverA], order: int,
              center: FueterPoint | None = None) -> FueterSeries:
    """``(I - sum_k (zeta_k - xi_k) A_k)^{-(.)}`` to ``order``."""
    m = spec.m
    n = A[0].rows if A else 0
    coeffs = {(0,) * m: MatrixOverA.identity(spec, n)}
    for k, Ak in enumerate(A, start=1):
        coeffs[mi_unit(m, k)] = -Ak
    return cauchy_inverse(FueterSeries(spec, coeffs, order, center, (n, n)))


def _neumann(R: Realization, order: int) -> FueterSeries:
    spec, m = R.spec, R.spec.m
    Dser = _series(R, {(0,) * m: R.D}, order)
    if R.state_size == 0:
        return Dser
    inv = resolvent(spec, R.A, order, R.center)
    Bser = FueterSeries(spec, {mi_unit(m, k): Bk for k, Bk in enumerate(R.B, start=1)},
                        order, R.center, (R.state_size, R.shape[1]))
    Cser = FueterSeries(spec, {(0,) * m: R.C}, order, R.center, R.C.shape)
    return Dser + cauchy_product(cauchy_product(Cser, inv), Bser)


# ---------------------------------------------------------------------------
# calculus

def inverse(R: Realization) -> Realization:
    """Realization of ``R^{-(.)}``: A_k - B_k D^{-1} C, B_k D^{-1}, -D^{-1} C, D^{-1}."""
    Dinv = mat_invert(R.D)
    DC = Dinv * R.C
    A = [Ak - Bk * DC for Ak, Bk in zip(R.A, R.B)]
    B = [Bk * Dinv for Bk in R.B]
    return Realization(R.spec, A, B, -DC, Dinv, R.center)


def product(R1: Realization, R2: Realization) -> Realization:
    """Realization of ``R1 (.) R2``."""
    _check_pair(R1, R2)
    if R1.shape[1] != R2.shape[0]:
        raise AlgebraError(f"cannot multiply {R1.shape} by {R2.shape}")
    spec = R1.spec
    n1, n2 = R1.state_size, R2.state_size
    Z21 = MatrixOverA.zeros(spec, n2, n1)
    A = [MatrixOverA.block(spec, [[A1, B1 * R2.C], [Z21, A2]])
         for A1, A2, B1 in zip(R1.A, R2.A, R1.B)]
    B = [MatrixOverA.block(spec, [[B1 * R2.D], [B2]]) for B1, B2 in zip(R1.B, R2.B)]
    C = MatrixOverA.block(spec, [[R1.C, R1.D * R2.C]])
    return Realization(spec, A, B, C, R1.D * R2.D, R1.center)


def _diag(spec, X, Y):
    return MatrixOverA.block(spec, [[X, MatrixOverA.zeros(spec, X.rows, Y.cols)],
                                    [MatrixOverA.zeros(spec, Y.rows, X.cols), Y]])


def sum_(R1: Realization, R2: Realization) -> Realization:
    """Realization of ``R1 + R2``."""
    _check_pair(R1, R2)
    if R1.shape != R2.shape:
        raise AlgebraError(f"cannot add {R1.shape} and {R2.shape}")
    spec = R1.spec
    A = [_diag(spec, A1, A2) for A1, A2 in zip(R1.A, R2.A)]
    B = [MatrixOverA.block(spec, [[B1], [B2]]) for B1, B2 in zip(R1.B, R2.B)]
    C = MatrixOverA.block(spec, [[R1.C, R2.C]])
    return Realization(spec, A, B, C, R1.D + R2.D, R1.center)


def concat_row(R1: Realization, R2: Realization) -> Realization:
    """Realization of ``[R1  R2]``."""
    _check_pair(R1, R2)
    if R1.shape[0] != R2.shape[0]:
        raise AlgebraError("row concatenation needs equal row counts")
    spec = R1.spec
    A = [_diag(spec, A1, A2) for A1, A2 in zip(R1.A, R2.A)]
    B = [_diag(spec, B1, B2) for B1, B2 in zip(R1.B, R2.B)]
    C = MatrixOverA.block(spec, [[R1.C, R2.C]])
    D = MatrixOverA.block(spec, [[R1.D, R2.D]])
    return Realization(spec, A, B, C, D, R1.center)


def concat_col(R1: Realization, R2: Realization) -> Realization:
    """Realization of ``[R1; R2]``."""
    _check_pair(R1, R2)
    if R1.shape[1] != R2.shape[1]:
        raise AlgebraError("column concatenation needs equal column counts")
    spec = R1.spec
    A = [_diag(spec, A1, A2) for A1, A2 in zip(R1.A, R2.A)]
    B = [MatrixOverA.block(spec, [[B1], [B2]]) for B1, B2 in zip(R1.B, R2.B)]
    C = _diag(spec, R1.C, R2.C)
    D = MatrixOverA.block(spec, [[R1.D], [R2.D]])
    return Realization(spec, A, B, C, D, R1.center)


def from_polynomial(P: FueterSeries) -> Realization:
    """Compose constant and variable atoms into a realization of ``P``.

    Each term ``(zeta - xi)^alpha M`` becomes the product of ``|alpha|``
    variable atoms; terms are then summed.  The state size is
    ``rows * sum_alpha |alpha|``.
    """
    spec = P.spec
    shape = P.shape or (1, 1)
    wrap = (lambda c: MatrixOverA.scalar(c)) if P.shape is None else (lambda c: c)
    r, q = shape
    total = zero_realization(spec, r, q, P.center)
    Ir = MatrixOverA.identity(spec, r)
    for alpha, c in P.items():
        M = wrap(c)
        ks = [k for k, a in enumerate(alpha, start=1) for _ in range(a)]
        if not ks:
            term = constant_realization(M, P.center)
        else:
            term = variable_realization(ks[-1], M, P.center)
            for k in reversed(ks[:-1]):
                term = product(variable_realization(k, Ir, P.center), term)
        total = sum_(total, term)
    return total


def as_matrix_series(f: FueterSeries) -> FueterSeries:
    """View an algebra-valued series as a 1x1 matrix-valued one."""
    if f.shape is not None:
        return f
    return FueterSeries(f.spec, {a: MatrixOverA.scalar(c) for a, c in f.coeffs.items()},
                        f.order, f.center, (1, 1))


# ---------------------------------------------------------------------------
# resolvent-invariant spaces

def resolvent_span(center: FueterPoint, A: Sequence[MatrixOverA], G0: MatrixOverA,
                   order: int) -> FueterSeries:
    """``G(zeta) = G0 (.) (I - sum (zeta_k - xi_k) A_k)^{-(.)}``."""
    spec = center.spec
    inv = resolvent(spec, A, order, center)
    G0s = FueterSeries(spec, {(0,) * spec.m: G0}, order, center, G0.shape)
    return cauchy_product(G0s, inv)


def gleason_via_realization(R: Realization, eta: MatrixOverA, order: int):
    """``g_k = C (.) (I - sum (zeta-xi) A)^{-(.)} B_k eta`` and the target ``f = R eta``.

    Returns ``(f, [g_1..g_m])``; the Gleason residual of ``f`` against these
    ``g_k`` vanishes to ``order``.
    """
    spec, m = R.spec, R.spec.m
    f = to_series(R, order) * eta
    if R.state_size == 0:
        return f, [FueterSeries.zero(spec, order, R.center, f.shape) for _ in range(m)]
    G = resolvent_span(R.center, R.A, R.C, order)
    gs = [G * (Bk * eta) for Bk in R.B]
    return f, gs


def gleason_realization_residual(R: Realization, eta: MatrixOverA, order: int) -> FueterSeries:
    f, gs = gleason_via_realization(R, eta, order)
    return gleason_residual(f, gs)


# ---------------------------------------------------------------------------
# random data and JSON

def random_matrix(spec, rows, cols, rng: random.Random, density=0.5, lo=-2, hi=2):
    def entry():
        c = [rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(spec.dim)]
        return spec.element(c)
    return MatrixOverA(spec, [[entry() for _ in range(cols)] for _ in range(rows)], rows, cols)


def random_realization(spec: AlgebraSpec, rng: random.Random, N: int = 2, q: int = 1,
                       r: int = 1, center: FueterPoint | None = None,
                       density: float = 0.35) -> Realization:
    m = spec.m
    A = [random_matrix(spec, N, N, rng, density) for _ in range(m)]
    B = [random_matrix(spec, N, q, rng, density) for _ in range(m)]
    C = random_matrix(spec, r, N, rng, density)
    D = random_matrix(spec, r, q, rng, density)
    return Realization(spec, A, B, C, D, center)


def realization_to_json(R: Realization, algebra: str | None = None) -> dict:
    return {
        "algebra": algebra or R.spec.name,
        "center_v": [scalars.format_scalar(x) for x in R.center.v],
        "A": [coeff_to_json(M) for M in R.A],
        "B": [coeff_to_json(M) for M in R.B],
        "C": coeff_to_json(R.C),
        "D": coeff_to_json(R.D),
        "shape": {"N": R.state_size, "q": R.shape[1], "r": R.shape[0]},
    }


def _matrix_from_json(spec, data, rows=None, cols=None):
    if not data:
        return MatrixOverA.zeros(spec, 0, cols or 0)
    if all(isinstance(row, list) and not row for row in data):
        return MatrixOverA.zeros(spec, len(data), 0)
    M = coeff_from_json(spec, data)
    if not isinstance(M, MatrixOverA):
        raise AlgebraError("realization matrices must be nested arrays")
    return M


def realization_from_json(data: dict, spec: AlgebraSpec) -> Realization:
    try:
        center = FueterPoint(spec, [scalars.parse_scalar(x, spec.field)
                                    for x in data.get("center_v", [0] * spec.dim)])
        shp = data.get("shape", {})
        D = _matrix_from_json(spec, data["D"])
        r, q = D.shape
        N = shp.get("N")
        C = _matrix_from_json(spec, data["C"], r, N or 0)
        N = C.cols if N is None else N
        A = [_matrix_from_json(spec, M, N, N) for M in data["A"]]
        B = [_matrix_from_json(spec, M, N, q) for M in data["B"]]
        return Realization(spec, A, B, C, D, center)
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed realization file: {exc}") from exc
