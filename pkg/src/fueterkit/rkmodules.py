"""Weighted modules W(c) of Fueter series centered at the origin.

Everything is computed on polynomial truncations.  Operators are right
A-linear, so they are determined by their action on unit monomials and are
stored as explicit coefficient maps when an adjoint is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import scalars
from .algebra import (AlgebraElement, AlgebraError, AlgebraSpec, MatrixOverA,
                      SymCache, coeff_norm, mat_sqrt_inv, matrix_norm, norm)
from .fueter import (FueterPoint, FueterSeries, backward_shift, cauchy_inverse,
                     cauchy_product, mi_add, mi_factorial, mi_leq, mi_sub, mi_unit,
                     multi_indices, multiply_variable, norm_Am)
from .scalars import Q


# ---------------------------------------------------------------------------
# weights

class WeightFamily:
    """Nonzero rational weights ``c_alpha``."""

    def __init__(self, name: str, fn: Callable[[tuple], object]):
        self.name = name
        self._fn = fn
        self._memo: dict = {}

    def __call__(self, alpha) -> "Q":
        alpha = tuple(alpha)
        c = self._memo.get(alpha)
        if c is None:
            c = Q(self._fn(alpha))
            if c == 0:
                raise ValueError(f"weight c_{alpha} vanishes")
            self._memo[alpha] = c
        return c

    def __eq__(self, other):
        return isinstance(other, WeightFamily) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"WeightFamily({self.name!r})"


def drury_arveson() -> WeightFamily:
    return WeightFamily("drury_arveson",
                        lambda a: Q(mi_factorial(a), math.factorial(sum(a))))


def fock() -> WeightFamily:
    return WeightFamily("fock", mi_factorial)


def custom_weights(name: str, fn) -> WeightFamily:
    return WeightFamily(name, fn)


def weights_by_name(name: str) -> WeightFamily:
    name = name.lower().replace("-", "_")
    if name in ("drury_arveson", "da"):
        return drury_arveson()
    if name == "fock":
        return fock()
    raise ValueError(f"unknown weight family {name!r}")


def _require(c: WeightFamily, name: str):
    if c.name != name:
        raise ValueError(f"this check needs {name} weights, got {c.name}")


def _at_origin(*fs):
    for f in fs:
        if not f.center.is_origin():
            raise AlgebraError("module elements are series centered at the origin")


# ---------------------------------------------------------------------------
# forms and norms

def hermitian_form(f: FueterSeries, g: FueterSeries, c: WeightFamily):
    """``[f, g] = sum_alpha c_alpha g_alpha^dagger f_alpha``."""
    _at_origin(f, g)
    if f.shape != g.shape:
        raise AlgebraError("coefficient shapes differ")
    acc = None
    for a, fa in f.coeffs.items():
        ga = g.coeffs.get(a)
        if ga is None:
            continue
        t = (ga.dagger() * fa) * c(a)
        acc = t if acc is None else acc + t
    if acc is not None:
        return acc
    if f.shape is None:
        return f.spec.zero()
    return MatrixOverA.zeros(f.spec, f.shape[1], f.shape[1])


def module_norm(f: FueterSeries, c: WeightFamily) -> float:
    """``(sum |c_alpha| N(f_alpha)^2)^{1/2}``."""
    return math.sqrt(sum(abs(float(c(a))) * coeff_norm(x) ** 2 for a, x in f.coeffs.items()))


def component_form(f: FueterSeries, g: FueterSeries, ell: int, c: WeightFamily):
    """``<f, g>_ell``, the e_ell coefficient of [f, g], computed through chi_ell.

    With ``H_ell = T^t chi_ell`` (sums over all indices 0..m) this is
    ``sum_alpha c_alpha conj(g_alpha)^t H_ell f_alpha``.
    """
    spec = f.spec
    H = _component_matrix(spec, ell)
    acc = spec.zero_scalar
    for a, fa in f.coeffs.items():
        ga = g.coeffs.get(a)
        if ga is None:
            continue
        gv = [scalars.conj(x) for x in ga.coeffs]
        s = spec.zero_scalar
        for i, gi in enumerate(gv):
            if not gi:
                continue
            row = H[i]
            for k, fk in enumerate(fa.coeffs):
                if fk and row[k]:
                    s += gi * row[k] * fk
        acc += s * c(a)
    return acc


def _component_matrix(spec: AlgebraSpec, ell: int):
    n = spec.dim
    T, chi = spec.involution, spec.chi[ell]
    return [[sum((T[j][i] * chi[j][k] for j in range(n)), spec.zero_scalar)
             for k in range(n)] for i in range(n)]


def component_signatures(spec: AlgebraSpec, c: WeightFamily, order: int) -> list:
    """(positive, negative, zero) inertia of the Hermitian part of each K_ell form.

    The Gram matrix on monomials of degree <= order is block diagonal with
    blocks ``c_alpha H_ell``; only the signs of the weights matter.
    """
    out = []
    alphas = multi_indices(spec.m, order)
    npos = sum(1 for a in alphas if c(a) > 0)
    nneg = len(alphas) - npos
    for ell in range(spec.dim):
        H = np.array([[scalars.to_number(x) for x in row]
                      for row in _component_matrix(spec, ell)],
                     dtype=complex if spec.field == scalars.COMPLEX else float)
        ev = np.linalg.eigvalsh((H + H.conj().T) / 2)
        p = int(np.sum(ev > 1e-12))
        q = int(np.sum(ev < -1e-12))
        z = len(ev) - p - q
        out.append({"ell": ell, "positive": p * npos + q * nneg,
                    "negative": q * npos + p * nneg, "zero": z * len(alphas)})
    return out


# ---------------------------------------------------------------------------
# kernels

def kernel_eval(xi, order: int, c: WeightFamily, spec: AlgebraSpec | None = None
                ) -> FueterSeries:
    """``K_c(zeta, xi) = sum_{|alpha|<=order} zeta^alpha (xi^alpha)^dagger / c_alpha``.

    ``xi`` is a FueterPoint or any tuple of m algebra elements.
    """
    xs = xi.zeta if isinstance(xi, FueterPoint) else tuple(xi)
    spec = spec or xs[0].spec
    fam = SymCache(xs, spec.one())
    coeffs = {a: fam[a].dagger() / c(a) for a in multi_indices(spec.m, order)}
    return FueterSeries(spec, coeffs, order)


def evaluate_zeta(f: FueterSeries, zeta: Sequence[AlgebraElement]):
    """Evaluate a series at arbitrary values of the variables (in A^m)."""
    zs = tuple(zeta)
    diff = zs if f.center.is_origin() else tuple(z - x for z, x in zip(zs, f.center.zeta))
    fam = SymCache(diff, f.spec.one())
    acc = f.zero_coeff()
    for a, x in f.coeffs.items():
        acc = acc + fam[a] * x
    return acc


def reproducing_check(f: FueterSeries, xi, b: AlgebraElement, c: WeightFamily,
                      kernel_order: int | None = None):
    """Return ``([f, K_c(., xi) b], b^dagger f(xi))``."""
    p = f.degree() if kernel_order is None else kernel_order
    if p < f.degree():
        raise ValueError(f"kernel truncated at {p} but f has degree {f.degree()}")
    K = kernel_eval(xi, p, c, f.spec)
    lhs = hermitian_form(f, K * b, c)
    xs = xi.zeta if isinstance(xi, FueterPoint) else tuple(xi)
    return lhs, b.dagger() * evaluate_zeta(f, xs)


# ---------------------------------------------------------------------------
# operators

def mult_op(k: int, f: FueterSeries) -> FueterSeries:
    """``M_{zeta_k} f = zeta_k (.) f`` (exact, order grows by one)."""
    _at_origin(f)
    return multiply_variable(f, k)


def mult_by(s: FueterSeries, f: FueterSeries) -> FueterSeries:
    _at_origin(s, f)
    return cauchy_product(s, f)


def derivative_op(k: int, f: FueterSeries) -> FueterSeries:
    """``d_k f = sum alpha_k zeta^{alpha - iota_k} f_alpha``."""
    u = mi_unit(f.m, k)
    out = {mi_sub(a, u): x * a[k - 1] for a, x in f.coeffs.items() if a[k - 1]}
    return f._like(out, max(f.order - 1, 0))


def da_adjoint_check(f: FueterSeries, g: FueterSeries, k: int, c: WeightFamily | None = None):
    """``([R_k f, g], [f, M_k g])`` in the Drury-Arveson module."""
    c = c or drury_arveson()
    _require(c, "drury_arveson")
    return hermitian_form(backward_shift(f, k), g, c), hermitian_form(f, mult_op(k, g), c)


def fock_adjoint_check(f: FueterSeries, g: FueterSeries, k: int, c: WeightFamily | None = None):
    """``([d_k f, g], [f, M_k g])`` in the Fock module."""
    c = c or fock()
    _require(c, "fock")
    return hermitian_form(derivative_op(k, f), g, c), hermitian_form(f, mult_op(k, g), c)


@dataclass
class ContractionGap:
    gap: AlgebraElement
    witness: list            # (alpha, d_alpha^2, f_alpha)
    witness_sum: AlgebraElement
    ok: bool


def da_contraction_gap(f: FueterSeries, k: int, c: WeightFamily | None = None) -> ContractionGap:
    """``[f,f] - [M_k f, M_k f]`` against ``sum d_alpha^2 f_alpha^dagger f_alpha``.

    ``d_alpha^2 = c_alpha (|alpha| - alpha_k)/(|alpha| + 1)``; the identity is
    checked with the squares so everything stays rational.
    """
    c = c or drury_arveson()
    _require(c, "drury_arveson")
    Mf = mult_op(k, f)
    gap = hermitian_form(f, f, c) - hermitian_form(Mf, Mf, c)
    witness = []
    acc = f.zero_coeff() if f.shape is None else None
    for a, x in sorted(f.coeffs.items()):
        n = sum(a)
        d2 = c(a) * Q(n - a[k - 1], n + 1)
        witness.append((a, d2, x))
        t = (x.dagger() * x) * d2
        acc = t if acc is None else acc + t
    if acc is None:
        acc = gap * 0
    return ContractionGap(gap, witness, acc, gap == acc)


@dataclass
class IdentityReport:
    telescoped: bool          # sum_k M_k R_k f == f - f(0)
    lhs: AlgebraElement       # [f,f] - sum_k [R_k f, R_k f]
    rhs: AlgebraElement       # f(0)^dagger f(0)
    ok: bool


def evaluation_identity_check(f: FueterSeries, c: WeightFamily | None = None) -> IdentityReport:
    """``I - sum_k M_k M_k^* = C^* C`` on a polynomial, in two exact forms."""
    c = c or drury_arveson()
    _require(c, "drury_arveson")
    _at_origin(f)
    m = f.m
    shifts = [backward_shift(f, k) for k in range(1, m + 1)]
    total = FueterSeries(f.spec, {}, f.order, f.center, f.shape)
    for k, g in enumerate(shifts, start=1):
        total = total + mult_op(k, g).with_order(f.order)
    f0 = f.coeff((0,) * m)
    proj = f - FueterSeries(f.spec, {(0,) * m: f0}, f.order, f.center, f.shape)
    telescoped = total.equal_to_order(proj)
    lhs = hermitian_form(f, f, c)
    for g in shifts:
        lhs = lhs - hermitian_form(g, g, c)
    rhs = f0.dagger() * f0
    return IdentityReport(telescoped, lhs, rhs, telescoped and lhs == rhs)


# ---------------------------------------------------------------------------
# adjoints as explicit matrices

def unit_monomial(spec, alpha, order=None):
    return FueterSeries.monomial(spec, alpha, spec.one(), order)


def operator_matrix(op: Callable[[FueterSeries], FueterSeries], spec: AlgebraSpec,
                    order: int) -> dict:
    """``{beta: {alpha: (O zeta^beta)_alpha}}`` on monomials of degree <= order."""
    out = {}
    for beta in multi_indices(spec.m, order):
        img = op(unit_monomial(spec, beta, order))
        out[beta] = {a: x for a, x in img.coeffs.items() if sum(a) <= order}
    return out


def adjoint_matrix(op, spec: AlgebraSpec, c: WeightFamily, order: int) -> dict:
    """``(O^* zeta^alpha)_beta = (c_alpha / c_beta) ((O zeta^beta)_alpha)^dagger``."""
    M = operator_matrix(op, spec, order)
    out: dict = {a: {} for a in multi_indices(spec.m, order)}
    for beta, col in M.items():
        for alpha, x in col.items():
            out[alpha][beta] = x.dagger() * (c(alpha) / c(beta))
    return out


def adjoint_from_pairings(pair: Callable[[tuple, tuple], AlgebraElement], spec: AlgebraSpec,
                          c: WeightFamily, order: int) -> dict:
    """Recover ``O^*`` from the values ``pair(beta, alpha) = [O zeta^beta, zeta^alpha]``.

    Because ``[O zeta^beta, zeta^alpha] = [zeta^beta, O^* zeta^alpha]
    = c_beta ((O^* zeta^alpha)_beta)^dagger``, the matrix is forced.
    """
    idx = multi_indices(spec.m, order)
    out: dict = {a: {} for a in idx}
    for alpha in idx:
        for beta in idx:
            x = pair(beta, alpha)
            if x:
                out[alpha][beta] = x.dagger() / c(beta)
    return out


def nondegeneracy_witness(g: FueterSeries, c: WeightFamily, order: int) -> dict:
    """``{alpha: [zeta^alpha, g]}``; all zero only when every g_alpha is zero."""
    return {a: hermitian_form(unit_monomial(g.spec, a, order), g.with_order(order), c)
            for a in multi_indices(g.m, order)}


# ---------------------------------------------------------------------------
# multipliers

def adjoint_multiplier(s: FueterSeries, f: FueterSeries, c: WeightFamily,
                       d: WeightFamily | None = None) -> FueterSeries:
    """``M_s^* f`` for ``M_s : W(c) -> W(d)``:
    ``(M_s^* f)_beta = sum_alpha (d_{alpha+beta}/c_beta) s_alpha^dagger f_{alpha+beta}``.
    """
    d = d or c
    out: dict = {}
    for gamma, fx in f.coeffs.items():
        for a, sx in s.coeffs.items():
            if not mi_leq(a, gamma):
                continue
            beta = mi_sub(gamma, a)
            t = (sx.dagger() * fx) * (d(gamma) / c(beta))
            out[beta] = out[beta] + t if beta in out else t
    shape = None
    if s.shape is not None or f.shape is not None:
        sample = next(iter(out.values()), None)
        shape = sample.shape if isinstance(sample, MatrixOverA) else None
    return FueterSeries(f.spec, out, f.order, f.center, shape)


def multiplier_kernel_pairing(s: FueterSeries, xi, zeta, b1: AlgebraElement,
                              b2: AlgebraElement, c: WeightFamily, d: WeightFamily,
                              order: int):
    """``[M_s^* K_d(., xi) b1, K_c(., zeta) b2]`` by definition and in closed form.

    Route one pairs ``K_d(., xi) b1`` with ``s (.) K_c(., zeta) b2`` in W(d)
    and takes the involution; the d-kernel is truncated at ``order + deg s``
    so that nothing is lost.  Route two evaluates
    ``b2^dagger (sum_alpha zeta^alpha [(x^alpha (.) s)(xi)]^dagger / c_alpha) b1``.
    """
    spec = s.spec
    xs = xi.zeta if isinstance(xi, FueterPoint) else tuple(xi)
    zs = zeta.zeta if isinstance(zeta, FueterPoint) else tuple(zeta)
    degs = max(s.degree(), 0)
    full = order + degs
    Kc = kernel_eval(zs, order, c, spec).with_order(full)
    Kd = kernel_eval(xs, full, d, spec)
    sK = cauchy_product(s.with_order(full), Kc * b2)
    route1 = hermitian_form(sK, Kd * b1, d).dagger()

    zfam = SymCache(zs, spec.one())
    xfam = SymCache(xs, spec.one())
    inner = spec.zero()
    for alpha in multi_indices(spec.m, order):
        val = spec.zero()
        for g, sx in s.coeffs.items():
            val = val + xfam[mi_add(alpha, g)] * sx
        inner = inner + zfam[alpha] * val.dagger() / c(alpha)
    route2 = b2.dagger() * inner * b1
    return route1, route2


# ---------------------------------------------------------------------------
# Blaschke factors

def _round_matrix(M: MatrixOverA, bits: int = 64) -> MatrixOverA:
    """Round entries to dyadic rationals; keeps later exact products cheap."""
    scale = 1 << bits

    def rnd(x):
        if isinstance(x, scalars.QQi):
            return scalars.QQi(rnd(x.re), rnd(x.im))
        return Q(round(x * scale), scale)
    return MatrixOverA(M.spec, [[M.spec.element([rnd(x) for x in e.coeffs]) for e in row]
                                for row in M.entries], M.rows, M.cols)


def _row(xs):
    spec = xs[0].spec
    return MatrixOverA(spec, [list(xs)], 1, len(xs))


@dataclass
class BlaschkeFactor:
    """``B_xi = s (.) (1 - zeta xi^*)^{-(.)} (.) (zeta - xi) T`` as a 1 x m series."""
    xi: tuple
    series: FueterSeries
    s: MatrixOverA            # (1 - xi xi^*)^{1/2}
    T: MatrixOverA            # (I - xi^* xi)^{-1/2}
    tol: float
    extra: dict = field(default_factory=dict)


def blaschke_factor(xi, order: int, tol: float = 1e-12, spec: AlgebraSpec | None = None
                    ) -> BlaschkeFactor:
    xs = xi.zeta if isinstance(xi, FueterPoint) else tuple(xi)
    spec = spec or xs[0].spec
    m = spec.m
    if len(xs) != m:
        raise AlgebraError(f"xi needs {m} components")
    nrm = norm_Am(xs)
    if nrm >= 1.0:
        raise ValueError(f"||xi||_(A^m) = {nrm:.6g} must be < 1")
    X = _row(xs)
    Xs = X.dagger()
    s = _round_matrix(mat_sqrt_inv(MatrixOverA.identity(spec, 1) - X * Xs, "sqrt", tol))
    T = _round_matrix(mat_sqrt_inv(MatrixOverA.identity(spec, m) - Xs * X, "inv_sqrt", tol))
    one = spec.one()
    lin = {(0,) * m: one}
    for k in range(1, m + 1):
        lin[mi_unit(m, k)] = -xs[k - 1].dagger()
    inv = cauchy_inverse(FueterSeries(spec, lin, order))
    rows = {(0,) * m: -X}
    for k in range(1, m + 1):
        rows[mi_unit(m, k)] = MatrixOverA(spec, [[one if j == k else spec.zero()
                                                  for j in range(1, m + 1)]], 1, m)
    zrow = FueterSeries(spec, rows, order, None, (1, m))
    s0 = s.entries[0][0]
    B = cauchy_product(inv, zrow)
    B = FueterSeries(spec, {a: (s0 * x) * T for a, x in B.coeffs.items()}, order, None, (1, m))
    return BlaschkeFactor(xs, B, s, T, tol)


def blaschke_at_xi(bf: BlaschkeFactor) -> float:
    """Norm of ``B_xi(xi)``; tends to zero with the truncation order."""
    return matrix_norm(evaluate_zeta(bf.series, bf.xi))


def _row_entry(B: FueterSeries, k: int) -> FueterSeries:
    return FueterSeries(B.spec, {a: x.entries[0][k] for a, x in B.coeffs.items()},
                        B.order, B.center)


def _resolvent_adjoint(xs, f: FueterSeries) -> FueterSeries:
    """``(I - M_xi M_zeta^*)^{-1} f = sum_n (sum_k xi_k R_k)^n f`` on polynomials."""
    acc = f
    term = f
    while term:
        nxt = None
        for k, x in enumerate(xs, start=1):
            if not x:
                continue
            t = x * backward_shift(term, k)
            nxt = t if nxt is None else nxt + t
        if nxt is None:
            break
        term = nxt.with_order(f.order)
        acc = acc + term
    return acc


@dataclass
class BlaschkeGramReport:
    order: int
    max_error: float
    worst: tuple
    entries: int


def blaschke_gram_check(bf: BlaschkeFactor, order: int, c: WeightFamily | None = None
                        ) -> BlaschkeGramReport:
    """Compare both sides of the Blaschke identity on monomials of degree <= order.

    Left: ``[f, g] - [B^* f, B^* g]``.  Right:
    ``(C Y s g)^dagger (C Y s f)`` with ``Y = (I - M_xi M_zeta^*)^{-1}``.
    """
    c = c or drury_arveson()
    _require(c, "drury_arveson")
    spec = bf.series.spec
    m = spec.m
    if bf.series.order < order:
        raise ValueError("Blaschke series truncated below the check order")
    Bk = [_row_entry(bf.series, k) for k in range(m)]
    s0 = bf.s.entries[0][0]
    idx = multi_indices(m, order)
    mons = {a: unit_monomial(spec, a, order) for a in idx}
    adj = {a: [adjoint_multiplier(b, mons[a], c) for b in Bk] for a in idx}
    ev = {}
    for a in idx:
        y = _resolvent_adjoint(bf.xi, s0 * mons[a])
        ev[a] = y.coeff((0,) * m)
    # [f,g] on monomials is diagonal; the adjoint terms only couple a, b whose
    # images share a multi-index, so bucket by that index
    lhs = {(a, a): spec.one() * c(a) for a in idx}
    for k in range(m):
        buckets: dict = {}
        for a in idx:
            for g, x in adj[a][k].coeffs.items():
                buckets.setdefault(g, []).append((a, x))
        for g, items in buckets.items():
            w = c(g)
            for a, x in items:
                for b, y in items:
                    t = (y.dagger() * x) * w
                    lhs[(a, b)] = lhs[(a, b)] - t if (a, b) in lhs else -t
    worst, where = 0.0, None
    nz = [a for a in idx if ev[a]]
    for a in idx:
        for b in idx:
            l = lhs.get((a, b))
            r = ev[b].dagger() * ev[a] if a in nz and b in nz else None
            if l is None and r is None:
                continue
            d = (l if l is not None else spec.zero()) - (r if r is not None else spec.zero())
            if not d:
                continue
            err = norm(d)
            if err > worst:
                worst, where = err, (a, b)
    return BlaschkeGramReport(order, worst, where, len(idx) ** 2)


def halmos_check(xi, tol: float = 1e-12, spec: AlgebraSpec | None = None) -> float:
    """``max ||H J H^* - J||`` for the Halmos extension of the constant row -xi."""
    xs = xi.zeta if isinstance(xi, FueterPoint) else tuple(xi)
    spec = spec or xs[0].spec
    m = len(xs)
    X = _row(xs)
    Xs = X.dagger()
    P = mat_sqrt_inv(MatrixOverA.identity(spec, 1) - X * Xs, "inv_sqrt", tol)
    Qm = mat_sqrt_inv(MatrixOverA.identity(spec, m) - Xs * X, "inv_sqrt", tol)
    H = MatrixOverA.block(spec, [[P, -(X * Qm)], [-(Xs * P), Qm]])
    J = MatrixOverA.block(spec, [[MatrixOverA.identity(spec, 1), MatrixOverA.zeros(spec, 1, m)],
                                 [MatrixOverA.zeros(spec, m, 1), -MatrixOverA.identity(spec, m)]])
    e1 = matrix_norm(H * J * H.dagger() - J)
    e2 = matrix_norm(H.dagger() * J * H - J)
    return max(e1, e2)
