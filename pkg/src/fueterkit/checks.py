"""Named checks producing JSON-ready reports.

Each check takes a :class:`Context` and returns a dict with the stable keys
``schema, check, algebra, weights, order, status, max_error`` plus optional
``witness`` and ``details``.  Randomness is drawn from a generator seeded by
the run seed and the check name, so a given configuration always produces
the same report.
"""
from __future__ import annotations

import math
import random
import zlib
from dataclasses import dataclass, field

from . import scalars
from .algebra import (AlgebraSpec, MatrixOverA, NotInvertible, format_element,
                      invert, norm, random_element, validate_spec)
from .fueter import (FueterPoint, FueterSeries, apply_D, backward_shift,
                     backward_shift_quadrature, cauchy_inverse, cauchy_product,
                     derivative_at, evaluate, frechet_check, gleason_residual,
                     gleason_solve, iterated_shift, mi_unit,
                     monomial_family, multi_indices, ordered_zeta_product,
                     random_center, recenter, series_to_json, tail_bound,
                     tail_by_degree)
from .realization import (as_matrix_series, concat_col, concat_row, from_polynomial,
                          gleason_via_realization, inverse, product, random_matrix,
                          random_realization, resolvent_span, sum_, to_series)
from .realization import Realization
from .rkmodules import (adjoint_from_pairings, adjoint_matrix, blaschke_at_xi,
                        blaschke_factor, blaschke_gram_check, component_form,
                        component_signatures, da_adjoint_check, da_contraction_gap,
                        drury_arveson, evaluation_identity_check,
                        fock, fock_adjoint_check, halmos_check, hermitian_form,
                        module_norm, mult_op, multiplier_kernel_pairing,
                        nondegeneracy_witness, reproducing_check, unit_monomial)
from .scalars import Q

SCHEMA = "fueterkit.report/1"


@dataclass
class Context:
    spec: AlgebraSpec
    algebra: str
    order: int = 4
    tol: float = 1e-9
    seed: int = 0
    options: dict = field(default_factory=dict)

    def rng(self, name: str) -> random.Random:
        return random.Random((self.seed << 32) ^ zlib.crc32(name.encode()))


def report(ctx: Context, check: str, ok: bool | None, max_error: float = 0.0,
           witness=None, weights: str | None = None, **details) -> dict:
    out = {
        "schema": SCHEMA,
        "check": check,
        "algebra": ctx.algebra,
        "weights": weights,
        "order": ctx.order,
        "status": "info" if ok is None else ("pass" if ok else "fail"),
        "max_error": float(max_error),
    }
    if witness is not None:
        out["witness"] = witness
    if details:
        out["details"] = details
    return out


def el(a) -> str:
    return format_element(a)


def sparse_polynomial(spec: AlgebraSpec, order: int, rng: random.Random, terms: int = 6,
                      center: FueterPoint | None = None, shape=None) -> FueterSeries:
    """Random polynomial with a bounded number of terms (keeps large m cheap)."""
    idx = multi_indices(spec.m, order)
    chosen = rng.sample(idx, min(terms, len(idx)))
    if (0,) * spec.m not in chosen and rng.random() < 0.7:
        chosen.append((0,) * spec.m)
    coeffs = {}
    for a in chosen:
        if shape is None:
            coeffs[a] = random_element(spec, rng)
        else:
            coeffs[a] = MatrixOverA(spec, [[random_element(spec, rng) for _ in range(shape[1])]
                                           for _ in range(shape[0])])
    return FueterSeries(spec, coeffs, order, center, shape)


def _pt(p: FueterPoint):
    return [scalars.format_scalar(x) for x in p.v]


# ---------------------------------------------------------------------------
# algebra

def check_algebra_validate(ctx: Context) -> dict:
    rep = validate_spec(ctx.spec, seed=ctx.seed)
    return report(ctx, "algebra.validate", rep.ok,
                  witness=rep.failures() or None, checks=rep.checks)


# ---------------------------------------------------------------------------
# fueter core

def check_dop(ctx: Context, alpha=None, centers: int = 2) -> dict:
    """D of symmetrized monomials vanishes exactly."""
    spec = ctx.spec
    rng = ctx.rng("dop")
    pts = [FueterPoint.origin(spec)] + [random_center(spec, rng) for _ in range(centers)]
    if ctx.options.get("center") is not None:
        pts = [ctx.options["center"]]
    alphas = [tuple(alpha)] if alpha is not None else multi_indices(spec.m, ctx.order)
    bad = []
    for p in pts:
        fam = monomial_family(p)
        for a in alphas:
            if apply_D(fam[a]):
                bad.append({"alpha": list(a), "center_v": _pt(p)})
    return report(ctx, "series.dop", not bad, witness=bad[:5] or None,
                  tested=len(alphas) * len(pts),
                  result="D((zeta-xi)^alpha) = 0" if not bad else "nonzero")


def check_commutator(ctx: Context) -> dict:
    """D(zeta_j zeta_k) = [e_j, e_k] v_0 and D(zeta_j zeta_k + zeta_k zeta_j) = 0."""
    from .fueter import VPolynomial
    spec = ctx.spec
    m = spec.m
    v0 = VPolynomial.variable(spec, 0)
    bad, rows = [], []
    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            P = ordered_zeta_product(spec, [j, k])
            Q_ = ordered_zeta_product(spec, [k, j])
            comm = spec.e(j) * spec.e(k) - spec.e(k) * spec.e(j)
            dP = apply_D(P)
            ok1 = dP == comm * v0
            ok2 = not apply_D(P + Q_)
            if not (ok1 and ok2):
                bad.append([j, k])
            if comm:
                rows.append({"j": j, "k": k, "commutator": el(comm)})
    return report(ctx, "series.commutator", not bad, witness=bad or None,
                  noncommuting_pairs=rows[:10])


def center_demo_series(spec: AlgebraSpec):
    """The pair p1 = zeta_1 e_3, p2 = zeta_1 e_1 multiplied at 0 and at xi_k = e_k."""
    if spec.m < 3:
        raise ValueError("center demo needs at least three imaginary units")
    p1 = FueterSeries.variable(spec, 1, 2, None, spec.e(3))
    p2 = FueterSeries.variable(spec, 1, 2, None, spec.e(1))
    v = [0] * spec.dim
    v[0] = -1
    xi = FueterPoint(spec, v)
    P = cauchy_product(p1, p2)
    q1, q2 = recenter(p1, xi), recenter(p2, xi)
    Qxi = cauchy_product(q1, q2)
    return P, q1, q2, Qxi, recenter(Qxi, FueterPoint.origin(spec))


def check_center_demo(ctx: Context) -> dict:
    spec = ctx.spec
    P, q1, q2, Qxi, Q0 = center_demo_series(spec)
    ok = True
    expected = None
    if ctx.spec.name == "quaternions":
        j, k = spec.e(2), spec.e(3)
        expP = FueterSeries(spec, {(2, 0, 0): j}, 2)
        expQ = FueterSeries(spec, {(2, 0, 0): j, (1, 0, 0): k * -2}, 2)
        ok = P == expP and Q0 == expQ
        expected = {"P": str(expP), "Q": str(expQ)}
    return report(ctx, "center-demo", ok and P != Q0,
                  P_at_0=str(P), p1_at_xi=str(q1), p2_at_xi=str(q2),
                  Q_at_xi=str(Qxi), Q_at_0=str(Q0), expected=expected)


def check_recenter(ctx: Context, f: FueterSeries | None = None, new_center=None) -> dict:
    spec = ctx.spec
    rng = ctx.rng("recenter")
    f = f or sparse_polynomial(spec, ctx.order, rng)
    c2 = new_center or random_center(spec, rng)
    g = recenter(f, c2)
    back = recenter(g, f.center)
    pts = [random_center(spec, rng).v for _ in range(20)]
    bad = [list(map(scalars.format_scalar, v)) for v in pts if evaluate(f, v) != evaluate(g, v)]
    ok = not bad and back == f
    return report(ctx, "series.recenter", ok, witness=bad[:3] or None,
                  new_center_v=_pt(c2), recentered=series_to_json(g, ctx.algebra),
                  round_trip=back == f)


def check_gleason(ctx: Context, f: FueterSeries | None = None, samples: int = 5) -> dict:
    spec = ctx.spec
    rng = ctx.rng("gleason")
    fs = [f] if f is not None else [
        sparse_polynomial(spec, ctx.order, rng, 8, random_center(spec, rng))
        for _ in range(samples)]
    bad = []
    for i, g in enumerate(fs):
        res = gleason_residual(g, gleason_solve(g))
        if not res.is_zero():
            bad.append(i)
    out = {}
    if f is not None:
        out["g"] = [series_to_json(g, ctx.algebra) for g in gleason_solve(f)]
    return report(ctx, "series.gleason", not bad, witness=bad or None,
                  tested=len(fs), **out)


def check_shift(ctx: Context, f: FueterSeries | None = None, k: int | None = None) -> dict:
    """Closed-form shift vs quadrature, commutation, and the iterated-shift identity."""
    spec = ctx.spec
    m = spec.m
    rng = ctx.rng("shift")
    f = f or sparse_polynomial(spec, ctx.order, rng, 8, random_center(spec, rng))
    ks = [k] if k else list(range(1, m + 1))
    quad_err = 0.0
    v = random_center(spec, rng).v
    for kk in ks:
        exact = evaluate(backward_shift(f, kk), v)
        num = backward_shift_quadrature(f, kk, v)
        ex = [scalars.to_number(x) for x in exact.coeffs]
        quad_err = max(quad_err, max(abs(a - b) for a, b in zip(ex, num)))
    commute = all(backward_shift(backward_shift(f, a), b) == backward_shift(backward_shift(f, b), a)
                  for a in range(1, m + 1) for b in range(a + 1, m + 1))
    # (R^alpha f)(xi) = (1/|alpha|!) d^alpha f(xi) = (alpha!/|alpha|!) f_alpha
    it_bad = []
    for a in multi_indices(m, min(ctx.order, 3), 1):
        val = iterated_shift(f, a).coeff((0,) * m)
        if val != derivative_at(f, a) / math.factorial(sum(a)):
            it_bad.append(list(a))
    ok = quad_err <= 1e-10 and commute and not it_bad
    out = {}
    if k:
        out["shifted"] = series_to_json(backward_shift(f, k), ctx.algebra)
    return report(ctx, "series.shift", ok, quad_err, witness=it_bad or None,
                  shifts_commute=commute, quadrature_error=quad_err, **out)


def check_product(ctx: Context) -> dict:
    spec = ctx.spec
    rng = ctx.rng("product")
    c = random_center(spec, rng)
    f, g, h = (sparse_polynomial(spec, ctx.order, rng, 5, c) for _ in range(3))
    one = FueterSeries.constant(spec, 1, ctx.order, c)
    assoc = cauchy_product(cauchy_product(f, g), h) == cauchy_product(f, cauchy_product(g, h))
    unit = cauchy_product(f, one) == f and cauchy_product(one, f) == f
    return report(ctx, "series.product", assoc and unit, associative=assoc, unit=unit)


def check_inverse(ctx: Context, f: FueterSeries | None = None) -> dict:
    spec = ctx.spec
    rng = ctx.rng("inverse")
    if f is None:
        while True:
            f = sparse_polynomial(spec, ctx.order, rng, 5)
            f0 = f.coeff((0,) * spec.m)
            try:
                invert(f0)
                break
            except NotInvertible:
                continue
    g = cauchy_inverse(f)
    one = FueterSeries.constant(spec, 1, f.order, f.center)
    ok = cauchy_product(f, g) == one and cauchy_product(g, f) == one
    return report(ctx, "series.inverse", ok, inverse=series_to_json(g, ctx.algebra))


SUITE_FRECHET_SCALES = (Q(1, 100), Q(1, 1000), Q(1, 10000))


def check_frechet(ctx: Context, samples: int = 3) -> dict:
    spec = ctx.spec
    rng = ctx.rng("frechet")
    slopes = []
    ok = True
    for _ in range(samples):
        f = sparse_polynomial(spec, min(ctx.order, 3), rng, 5, random_center(spec, rng))
        # deeper scales keep the fit out of the pre-asymptotic regime
        r = frechet_check(f, scales=SUITE_FRECHET_SCALES, seed=rng.randint(0, 10 ** 6),
                          directions=2)
        slopes.append(r.min_slope if math.isfinite(r.min_slope) else "exact")
        ok &= r.passed
    flagged = None
    if spec.m >= 2:
        c = spec.e(1) * spec.e(2) - spec.e(2) * spec.e(1)
        if c:
            v = [0] * spec.dim
            v[0], v[1] = 1, 1
            w = frechet_check(ordered_zeta_product(spec, [1, 2]), FueterPoint(spec, v),
                              seed=ctx.seed)
            flagged = not w.passed
            ok &= flagged
    return report(ctx, "series.frechet", ok, slopes=slopes,
                  non_hyperholomorphic_flagged=flagged)


def check_tail(ctx: Context, f: FueterSeries | None = None, sigma=None, from_order: int = 1) -> dict:
    spec = ctx.spec
    if f is None:
        one = FueterSeries.constant(spec, 1, ctx.order)
        f = cauchy_inverse(one - FueterSeries.variable(spec, 1, ctx.order))
    sigma = sigma or [0.5] * spec.m
    tb = tail_bound(f, sigma, from_order)
    return report(ctx, "series.tail", None, tail=tb, by_degree=tail_by_degree(f, sigma),
                  from_order=from_order)


# ---------------------------------------------------------------------------
# realizations

def _realizations(ctx, name, count, N=2, q=1, r=1):
    rng = ctx.rng(name)
    return [random_realization(ctx.spec, rng, N, q, r) for _ in range(count)], rng


def check_realize_expand(ctx: Context, R: Realization | None = None, count: int = 5) -> dict:
    Rs = [R] if R is not None else _realizations(ctx, "realize.expand", count)[0]
    bad = [i for i, x in enumerate(Rs)
           if to_series(x, ctx.order) != to_series(x, ctx.order, "neumann")]
    out = {}
    if R is not None:
        out["series"] = series_to_json(to_series(R, ctx.order), ctx.algebra)
    return report(ctx, "realize.expand", not bad, witness=bad or None, tested=len(Rs), **out)


def _invertible_D(spec, rng):
    while True:
        D = random_matrix(spec, 1, 1, rng, 0.6)
        try:
            invert(D.entries[0][0])
            return D
        except NotInvertible:
            continue


def check_realize_invert(ctx: Context, R: Realization | None = None) -> dict:
    spec = ctx.spec
    rng = ctx.rng("realize.invert")
    if R is None:
        R0 = random_realization(spec, rng)
        R = Realization(spec, R0.A, R0.B, R0.C, _invertible_D(spec, rng), R0.center)
    Ri = inverse(R)
    p = ctx.order
    s, si = to_series(R, p), to_series(Ri, p)
    I = FueterSeries.constant(spec, MatrixOverA.identity(spec, R.shape[0]), p, R.center)
    left = cauchy_product(s, si) == I
    right = cauchy_product(si, s) == I
    double = to_series(inverse(Ri), p) == s
    return report(ctx, "realize.invert", left and right and double,
                  right_inverse=left, left_inverse=right, double_flip=double,
                  state_size=Ri.state_size)


def check_realize_compose(ctx: Context) -> dict:
    spec = ctx.spec
    rng = ctx.rng("realize.compose")
    p = ctx.order
    R1, R2 = random_realization(spec, rng), random_realization(spec, rng)
    s1, s2 = to_series(R1, p), to_series(R2, p)
    prod_ok = to_series(product(R1, R2), p) == cauchy_product(s1, s2)
    sum_ok = to_series(sum_(R1, R2), p) == s1 + s2
    row = to_series(concat_row(R1, R2), p)
    col = to_series(concat_col(R1, R2), p)
    row_ok = all(row.coeff(a) == MatrixOverA.block(spec, [[s1.coeff(a), s2.coeff(a)]])
                 for a in multi_indices(spec.m, p))
    col_ok = all(col.coeff(a) == MatrixOverA.block(spec, [[s1.coeff(a)], [s2.coeff(a)]])
                 for a in multi_indices(spec.m, p))
    return report(ctx, "realize.compose", prod_ok and sum_ok and row_ok and col_ok,
                  product=prod_ok, sum=sum_ok, concat_row=row_ok, concat_col=col_ok)


def check_from_poly(ctx: Context, P: FueterSeries | None = None, samples: int = 3) -> dict:
    spec = ctx.spec
    rng = ctx.rng("realize.from-poly")
    Ps = [P] if P is not None else [sparse_polynomial(spec, min(ctx.order, 3), rng, 4)
                                    for _ in range(samples)]
    bad, sizes = [], []
    for i, x in enumerate(Ps):
        R = from_polynomial(x)
        sizes.append(R.state_size)
        if to_series(R, x.order) != as_matrix_series(x):
            bad.append(i)
    return report(ctx, "realize.from-poly", not bad, witness=bad or None, state_sizes=sizes)


def check_realize_gleason(ctx: Context, R: Realization | None = None) -> dict:
    """Gleason through a realization, and shift invariance of resolvent spans."""
    spec = ctx.spec
    rng = ctx.rng("realize.gleason")
    p = ctx.order
    R = R or random_realization(spec, rng)
    eta = MatrixOverA.scalar(random_element(spec, rng))
    f, gs = gleason_via_realization(R, eta, p)
    residual_ok = gleason_residual(f, gs).is_zero()
    # commuting A_k (all equal): R_k G = G A_k
    A = random_matrix(spec, 2, 2, rng)
    G0 = random_matrix(spec, 1, 2, rng, 0.8)
    o = FueterPoint.origin(spec)
    G = resolvent_span(o, [A] * spec.m, G0, p)
    inv_ok = all(backward_shift(G, k).equal_to_order(G * A, p - 1)
                 for k in range(1, spec.m + 1))
    # non-commuting pair: the shift leaves the span
    strict = None
    if spec.m >= 2:
        Ak = [random_matrix(spec, 2, 2, rng, 0.8) for _ in range(spec.m)]
        G2 = resolvent_span(o, Ak, G0, p)
        strict = any(not backward_shift(G2, k).equal_to_order(G2 * Ak[k - 1], p - 1)
                     for k in range(1, spec.m + 1))
    return report(ctx, "realize.gleason", residual_ok and inv_ok and strict is not False,
                  residual_zero=residual_ok, commuting_shift_invariant=inv_ok,
                  noncommuting_witness=strict)


# ---------------------------------------------------------------------------
# modules

def _weights(ctx):
    name = ctx.options.get("weights", "drury_arveson")
    return drury_arveson() if name in ("drury_arveson", "da") else fock()


def check_module_gram(ctx: Context) -> dict:
    spec = ctx.spec
    c = _weights(ctx)
    rng = ctx.rng("module.gram")
    p = min(ctx.order, 3)
    worst_cs = 0.0
    herm = comp = True
    for _ in range(5):
        f, g = sparse_polynomial(spec, p, rng), sparse_polynomial(spec, p, rng)
        fg = hermitian_form(f, g, c)
        herm &= fg == hermitian_form(g, f, c).dagger()
        comp &= all(component_form(f, g, l, c) == fg.coeffs[l] for l in range(spec.dim))
        gap = norm(fg) - module_norm(f, c) * module_norm(g, c)
        worst_cs = max(worst_cs, gap / max(1.0, module_norm(f, c) * module_norm(g, c)))
    cs_ok = worst_cs <= 1e-9
    g = sparse_polynomial(spec, p, rng)
    wit = nondegeneracy_witness(g, c, p)
    nondeg = all((not wit[a]) == (not g.coeff(a)) for a in wit)
    zero_ok = not any(nondegeneracy_witness(FueterSeries.zero(spec, p), c, p).values())
    # adjoint uniqueness: recover M_k^* from its pairings
    op = lambda h: mult_op(1, h).with_order(p)
    A1 = adjoint_matrix(op, spec, c, p)
    A2 = adjoint_from_pairings(
        lambda b, a: hermitian_form(op(unit_monomial(spec, b, p)), unit_monomial(spec, a, p), c),
        spec, c, p)
    unique = A1 == A2
    return report(ctx, "module.gram", herm and comp and cs_ok and nondeg and zero_ok and unique,
                  worst_cs, weights=c.name, hermitian=herm, components=comp,
                  cauchy_schwarz_gap=worst_cs, nondegenerate=nondeg and zero_ok,
                  adjoint_unique=unique, signatures=component_signatures(spec, c, p))


def check_module_kernel(ctx: Context) -> dict:
    spec = ctx.spec
    rng = ctx.rng("module.kernel")
    p = min(ctx.order, 3)
    ok = True
    for c in (drury_arveson(), fock()):
        for _ in range(3):
            f = sparse_polynomial(spec, p, rng)
            xi = random_center(spec, rng)
            b = random_element(spec, rng)
            lhs, rhs = reproducing_check(f, xi, b, c, p)
            ok &= lhs == rhs
    s = sparse_polynomial(spec, 2, rng, 3)
    r1, r2 = multiplier_kernel_pairing(s, random_center(spec, rng), random_center(spec, rng),
                                       random_element(spec, rng), random_element(spec, rng),
                                       drury_arveson(), fock(), 2)
    mult_ok = r1 == r2
    return report(ctx, "module.kernel", ok and mult_ok, weights="drury_arveson,fock",
                  reproducing=ok, multiplier_pairing=mult_ok)


def da_monomial_pairs(spec: AlgebraSpec, order: int):
    """Return the failing (k, alpha, beta) of the DA adjoint pairing on monomials."""
    c = drury_arveson()
    idx = multi_indices(spec.m, order)
    mons = {a: unit_monomial(spec, a, order) for a in idx}
    bad = []
    for k in range(1, spec.m + 1):
        shifted = {a: backward_shift(mons[a], k) for a in idx}
        raised = {b: mult_op(k, mons[b]) for b in idx}
        for a in idx:
            for b in idx:
                if hermitian_form(shifted[a], mons[b], c) != hermitian_form(mons[a], raised[b], c):
                    bad.append((k, a, b))
    return bad, len(idx) ** 2 * spec.m


def check_module_adjoint(ctx: Context) -> dict:
    spec = ctx.spec
    rng = ctx.rng("module.adjoint")
    bad, n = da_monomial_pairs(spec, ctx.order)
    poly_ok = True
    for _ in range(3):
        f, g = sparse_polynomial(spec, ctx.order, rng), sparse_polynomial(spec, ctx.order, rng)
        for k in range(1, spec.m + 1):
            a, b = da_adjoint_check(f, g, k)
            poly_ok &= a == b
    return report(ctx, "module.adjoint-check", not bad and poly_ok,
                  witness=[[k, list(a), list(b)] for k, a, b in bad[:5]] or None,
                  weights="drury_arveson", monomial_pairs=n, random_polynomials=poly_ok)


def check_module_contraction(ctx: Context) -> dict:
    spec = ctx.spec
    rng = ctx.rng("module.contraction")
    ok = True
    example = None
    for _ in range(3):
        f = sparse_polynomial(spec, ctx.order, rng)
        for k in range(1, spec.m + 1):
            r = da_contraction_gap(f, k)
            ok &= r.ok
            if example is None:
                example = {"k": k, "gap": el(r.gap),
                           "d_squared": [[list(a), scalars.format_rational(d)]
                                         for a, d, _ in r.witness[:6]]}
    return report(ctx, "module.contraction", ok, weights="drury_arveson", example=example)


def check_module_identity(ctx: Context) -> dict:
    spec = ctx.spec
    rng = ctx.rng("module.identity")
    ok = True
    for _ in range(5):
        r = evaluation_identity_check(sparse_polynomial(spec, ctx.order, rng))
        ok &= r.ok
    return report(ctx, "module.identity", ok, weights="drury_arveson")


def check_module_fock(ctx: Context) -> dict:
    spec = ctx.spec
    rng = ctx.rng("module.fock")
    c = fock()
    p = ctx.order
    idx = multi_indices(spec.m, min(p, 3))
    mons = {a: unit_monomial(spec, a, p) for a in idx}
    bad = []
    for k in range(1, spec.m + 1):
        for a in idx:
            for b in idx:
                x, y = fock_adjoint_check(mons[a], mons[b], k)
                if x != y:
                    bad.append([k, list(a), list(b)])
    for _ in range(5):
        f, g = sparse_polynomial(spec, p, rng), sparse_polynomial(spec, p, rng)
        for k in range(1, spec.m + 1):
            x, y = fock_adjoint_check(f, g, k, c)
            if x != y:
                bad.append([k, "random"])
    return report(ctx, "module.fock-check", not bad, witness=bad[:5] or None, weights="fock")


def default_blaschke_point(spec: AlgebraSpec):
    xs = [spec.zero()] * spec.m
    xs[0] = spec.e(1) * Q(1, 2)
    return tuple(xs)


def check_module_blaschke(ctx: Context, xi=None) -> dict:
    spec = ctx.spec
    xs = tuple(xi) if xi is not None else default_blaschke_point(spec)
    tol = min(ctx.tol, 1e-8)
    zero = blaschke_factor((spec.zero(),) * spec.m, ctx.order)
    target = {mi_unit(spec.m, k): MatrixOverA(spec, [[spec.one() if j == k else spec.zero()
                                                      for j in range(1, spec.m + 1)]])
              for k in range(1, spec.m + 1)}
    b0_ok = zero.series == FueterSeries(spec, target, ctx.order, None, (1, spec.m))
    eval_order = max(ctx.order, 16)
    at_xi = blaschke_at_xi(blaschke_factor(xs, eval_order, tol))
    bf = blaschke_factor(xs, ctx.order, tol)
    gram = blaschke_gram_check(bf, ctx.order)
    halmos = halmos_check(xs, tol)
    ok = b0_ok and at_xi <= 1e-7 and gram.max_error <= 1e-6 and halmos <= 1e-6
    return report(ctx, "module.blaschke", ok, gram.max_error, weights="drury_arveson",
                  witness=[list(gram.worst[0]), list(gram.worst[1])] if gram.worst else None,
                  xi=[el(x) for x in xs], B0_is_zeta=b0_ok, norm_B_at_xi=at_xi,
                  evaluation_order=eval_order, gram_max_error=gram.max_error,
                  halmos_error=halmos)


# ---------------------------------------------------------------------------

SUITE = [
    ("algebra validate", check_algebra_validate),
    ("series dop", check_dop),
    ("series commutator", check_commutator),
    ("series recenter", check_recenter),
    ("series gleason", check_gleason),
    ("series shift", check_shift),
    ("series product", check_product),
    ("series inverse", check_inverse),
    ("series frechet", check_frechet),
    ("series tail", check_tail),
    ("realize expand", check_realize_expand),
    ("realize invert", check_realize_invert),
    ("realize compose", check_realize_compose),
    ("realize from-poly", check_from_poly),
    ("realize gleason", check_realize_gleason),
    ("module gram", check_module_gram),
    ("module kernel", check_module_kernel),
    ("module adjoint-check", check_module_adjoint),
    ("module contraction", check_module_contraction),
    ("module identity", check_module_identity),
    ("module fock-check", check_module_fock),
    ("module blaschke", check_module_blaschke),
]


def run_suite(ctx: Context) -> dict:
    reports = []
    for label, fn in SUITE:
        if label == "module blaschke" and ctx.spec.m == 0:
            continue
        reports.append(fn(ctx))
    failed = [r["check"] for r in reports if r["status"] == "fail"]
    return {
        "schema": SCHEMA,
        "check": "suite",
        "algebra": ctx.algebra,
        "weights": None,
        "order": ctx.order,
        "status": "fail" if failed else "pass",
        "max_error": max(r["max_error"] for r in reports),
        "witness": failed or None,
        "details": {"seed": ctx.seed, "reports": reports},
    }
