"""Fueter variables, V-polynomials, the Cauchy-Fueter operator and Fueter series.

Variables are indexed from 1 (``zeta_1 .. zeta_m``) in the public API; a
multi-index is a plain tuple of length ``m``.  A :class:`FueterSeries` is the
truncation ``sum_{|alpha| <= p} (zeta - xi)^alpha f_alpha`` with symmetrized
monomials and coefficients written on the right.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

import numpy as np

from . import scalars
from .algebra import (AlgebraElement, AlgebraError, AlgebraSpec, MatrixOverA,
                      NotInvertible, SymCache, coeff_norm, invert, mat_invert,
                      norm, random_element)
from .scalars import Q

DEFAULT_DEGREE_CAP = 12


# ---------------------------------------------------------------------------
# multi-indices

def mi_abs(alpha) -> int:
    return sum(alpha)


def mi_factorial(alpha) -> int:
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def mi_unit(m: int, k: int) -> tuple:
    """``iota_k`` for ``1 <= k <= m``."""
    if not 1 <= k <= m:
        raise IndexError(f"variable index {k} outside 1..{m}")
    return tuple(1 if j == k - 1 else 0 for j in range(m))


def mi_add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mi_sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def mi_leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mi_binom(a, b) -> int:
    out = 1
    for x, y in zip(a, b):
        out *= math.comb(x, y)
    return out


def multi_indices(m: int, max_deg: int, min_deg: int = 0) -> list:
    """All alpha in N_0^m with ``min_deg <= |alpha| <= max_deg``, graded."""
    out = []
    for d in range(min_deg, max_deg + 1):
        out.extend(_exact_degree(m, d))
    return out


def _exact_degree(m, d):
    if m == 0:
        return [()] if d == 0 else []
    if m == 1:
        return [(d,)]
    res = []
    for first in range(d, -1, -1):
        for rest in _exact_degree(m - 1, d - first):
            res.append((first,) + rest)
    return res


def parse_multi_index(text: str) -> tuple:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")


# ---------------------------------------------------------------------------
# points

class FueterPoint:
    """A point ``v`` of K^{m+1} with its Fueter variables ``zeta_k = v_k - e_k v_0``."""

    __slots__ = ("spec", "v", "zeta")

    def __init__(self, spec: AlgebraSpec, v: Sequence):
        if len(v) != spec.dim:
            raise AlgebraError(f"point needs {spec.dim} coordinates, got {len(v)}")
        self.spec = spec
        self.v = tuple(scalars.coerce(x, spec.field) for x in v)
        v0 = self.v[0]
        self.zeta = tuple(spec.scalar(self.v[k]) - spec.basis_element(k) * v0
                          for k in range(1, spec.dim))

    @classmethod
    def origin(cls, spec):
        return cls(spec, [0] * spec.dim)

    @property
    def m(self):
        return self.spec.m

    def __eq__(self, other):
        if not isinstance(other, FueterPoint):
            return NotImplemented
        return self.v == other.v and (self.spec is other.spec or self.spec == other.spec)

    def __hash__(self):
        return hash(self.v)

    def __sub__(self, other):
        return FueterPoint(self.spec, [a - b for a, b in zip(self.v, other.v)])

    def __add__(self, other):
        return FueterPoint(self.spec, [a + b for a, b in zip(self.v, other.v)])

    def scale(self, t):
        return FueterPoint(self.spec, [x * t for x in self.v])

    def is_origin(self):
        return not any(self.v)

    def __repr__(self):
        return f"FueterPoint({[scalars.format_scalar(x) for x in self.v]})"


def fueter_vars(spec: AlgebraSpec, v: Sequence) -> FueterPoint:
    return FueterPoint(spec, v)


def h_vector(spec: AlgebraSpec, k: int) -> tuple:
    """The vectors ``h_k`` of H^m: ``h_0 = -(e_1..e_m)``, ``h_k`` the k-th unit."""
    v = [0] * spec.dim
    v[k] = 1
    return FueterPoint(spec, v).zeta


def _as_tuple(z):
    return z.zeta if isinstance(z, FueterPoint) else tuple(z)


def hermitian_form_Am(zeta, xi) -> AlgebraElement:
    """``[zeta, xi]_A = sum_k xi_k^dagger zeta_k``."""
    z, x = _as_tuple(zeta), _as_tuple(xi)
    if len(z) != len(x):
        raise AlgebraError("length mismatch")
    acc = z[0].spec.zero()
    for a, b in zip(z, x):
        acc = acc + b.dagger() * a
    return acc


def norm_Am(zeta) -> float:
    z = _as_tuple(zeta)
    return math.sqrt(sum(norm(c) ** 2 for c in z))


# ---------------------------------------------------------------------------
# V-polynomials

class VPolynomial:
    """Polynomial in commuting scalars v_0..v_m with algebra coefficients on the right."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None):
        self.spec = spec
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, spec, a):
        if not isinstance(a, AlgebraElement):
            a = spec.scalar(a)
        return cls(spec, {(0,) * spec.dim: a})

    @classmethod
    def variable(cls, spec, i: int):
        """The coordinate ``v_i`` (0 <= i <= m)."""
        e = [0] * spec.dim
        e[i] = 1
        return cls(spec, {tuple(e): spec.one()})

    @classmethod
    def zeta(cls, spec, k: int, center: FueterPoint | None = None):
        """``zeta_k - xi_k`` as a polynomial in v."""
        d = spec.dim
        ek, e0 = [0] * d, [0] * d
        ek[k], e0[0] = 1, 1
        terms = {tuple(ek): spec.one(), tuple(e0): -spec.basis_element(k)}
        if center is not None:
            terms[(0,) * d] = -center.zeta[k - 1]
        return cls(spec, terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, VPolynomial):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other, sign):
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c if sign > 0 else -c
            else:
                out[e] = prev + c if sign > 0 else prev - c
        return VPolynomial(self.spec, out)

    def __add__(self, other):
        if isinstance(other, VPolynomial):
            return self._combine(other, 1)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, VPolynomial):
            return self._combine(other, -1)
        return NotImplemented

    def __neg__(self):
        return VPolynomial(self.spec, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, VPolynomial):
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    p = c1 * c2
                    prev = out.get(e)
                    out[e] = p if prev is None else prev + p
            return VPolynomial(self.spec, out)
        if isinstance(other, AlgebraElement) or _scalar_like(other):
            return VPolynomial(self.spec, {e: c * other for e, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement) or _scalar_like(other):
            return VPolynomial(self.spec, {e: other * c for e, c in self.terms.items()})
        return NotImplemented

    def diff(self, i: int) -> "VPolynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return VPolynomial(self.spec, out)

    def evaluate(self, v: Sequence) -> AlgebraElement:
        v = [scalars.coerce(x, self.spec.field) for x in v]
        acc = self.spec.zero()
        for e, c in self.terms.items():
            s = self.spec.one_scalar
            for x, k in zip(v, e):
                if k:
                    s = s * x ** k
            acc = acc + c * s
        return acc

    def __repr__(self):
        return f"VPolynomial({format_vpoly(self)})"

    __str__ = lambda self: format_vpoly(self)


def _scalar_like(x):
    return isinstance(x, (int, scalars.QQi)) or type(x) is type(scalars.ZERO)


def format_vpoly(P: VPolynomial) -> str:
    if not P.terms:
        return "0"
    parts = []
    for e in sorted(P.terms, key=lambda t: (-sum(t), [-x for x in t])):
        mono = "*".join(f"v{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        parts.append(f"({P.terms[e]})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts)


def apply_D(P: VPolynomial) -> VPolynomial:
    """Cauchy-Fueter operator ``D_0 P + sum_k e_k D_k P``."""
    spec = P.spec
    out = P.diff(0)
    for k in range(1, spec.dim):
        dk = P.diff(k)
        if dk:
            out = out + spec.basis_element(k) * dk
    return out


def monomial_family(center: FueterPoint) -> SymCache:
    """Memoized symmetrized monomials ``(zeta - xi)^alpha`` as V-polynomials."""
    spec = center.spec
    factors = [VPolynomial.zeta(spec, k, center) for k in range(1, spec.dim)]
    return SymCache(factors, VPolynomial.constant(spec, spec.one()))


def monomial_expand(alpha, center: FueterPoint, cap: int = DEFAULT_DEGREE_CAP,
                    family: SymCache | None = None) -> VPolynomial:
    alpha = tuple(alpha)
    if len(alpha) != center.m:
        raise AlgebraError(f"multi-index needs length {center.m}")
    if sum(alpha) > cap:
        raise ValueError(f"|alpha| = {sum(alpha)} exceeds the degree cap {cap}")
    fam = family if family is not None else monomial_family(center)
    return fam[alpha]


def ordered_zeta_product(spec: AlgebraSpec, ks: Sequence[int],
                         center: FueterPoint | None = None) -> VPolynomial:
    """Pointwise (unsymmetrized) product ``(zeta_{k1}-xi)(zeta_{k2}-xi)...``."""
    out = VPolynomial.constant(spec, spec.one())
    for k in ks:
        out = out * VPolynomial.zeta(spec, k, center)
    return out


# ---------------------------------------------------------------------------
# Fueter series

def _zero_like(spec, shape):
    if shape is None:
        return spec.zero()
    return MatrixOverA.zeros(spec, *shape)


def _shape_of(c):
    return c.shape if isinstance(c, MatrixOverA) else None


class FueterSeries:
    """Truncated Fueter series ``sum_{|alpha|<=p} (zeta-xi)^alpha f_alpha``.

    Coefficients are algebra elements (``shape is None``) or matrices over the
    algebra.  ``side="right"`` marks a right series ``sum f_alpha (zeta-xi)^alpha``.
    """

    __slots__ = ("spec", "center", "order", "coeffs", "shape", "side")

    def __init__(self, spec: AlgebraSpec, coeffs=None, order: int = 4,
                 center: FueterPoint | None = None, shape=None, side: str = "left"):
        if order < 0:
            raise ValueError("order must be >= 0")
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.spec = spec
        self.center = center if center is not None else FueterPoint.origin(spec)
        self.order = order
        self.side = side
        m = spec.m
        clean = {}
        for a, c in (coeffs or {}).items():
            a = tuple(a)
            if len(a) != m:
                raise AlgebraError(f"multi-index {a} needs length {m}")
            if any(x < 0 for x in a):
                raise AlgebraError(f"negative multi-index {a}")
            if sum(a) > order or not c:
                continue
            if shape is None and isinstance(c, MatrixOverA):
                shape = c.shape
            clean[a] = c
        for c in clean.values():
            if _shape_of(c) != shape:
                raise AlgebraError("inconsistent coefficient shapes")
        self.coeffs = clean
        self.shape = shape

    # constructors
    @classmethod
    def constant(cls, spec, c, order=4, center=None):
        if not isinstance(c, (AlgebraElement, MatrixOverA)):
            c = spec.scalar(c)
        return cls(spec, {(0,) * spec.m: c}, order, center, _shape_of(c))

    @classmethod
    def monomial(cls, spec, alpha, c=None, order=None, center=None):
        if c is None:
            c = spec.one()
        elif not isinstance(c, (AlgebraElement, MatrixOverA)):
            c = spec.scalar(c)
        alpha = tuple(alpha)
        return cls(spec, {alpha: c}, sum(alpha) if order is None else order, center,
                   _shape_of(c))

    @classmethod
    def variable(cls, spec, k, order=1, center=None, c=None):
        """``(zeta_k - xi_k) c``."""
        return cls.monomial(spec, mi_unit(spec.m, k), c, order, center)

    @classmethod
    def zero(cls, spec, order=4, center=None, shape=None):
        return cls(spec, {}, order, center, shape)

    # basic protocol
    @property
    def m(self):
        return self.spec.m

    def coeff(self, alpha):
        c = self.coeffs.get(tuple(alpha))
        return c if c is not None else _zero_like(self.spec, self.shape)

    def zero_coeff(self):
        return _zero_like(self.spec, self.shape)

    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _like(self, coeffs, order=None, shape="same"):
        return FueterSeries(self.spec, coeffs, self.order if order is None else order,
                            self.center, self.shape if shape == "same" else shape,
                            self.side)

    def truncate(self, p: int) -> "FueterSeries":
        return self._like(self.coeffs, min(p, self.order))

    def with_order(self, p: int) -> "FueterSeries":
        return self._like(self.coeffs, p)

    def _compatible(self, other):
        if not isinstance(other, FueterSeries):
            raise TypeError("expected a FueterSeries")
        if other.center != self.center:
            raise AlgebraError("series have different centers")
        if other.side != self.side:
            raise AlgebraError("cannot mix left and right series")

    def __eq__(self, other):
        if not isinstance(other, FueterSeries):
            return NotImplemented
        return (self.center == other.center and self.order == other.order
                and self.coeffs == other.coeffs and self.side == other.side)

    def equal_to_order(self, other, p=None) -> bool:
        p = min(self.order, other.order) if p is None else p
        keys = {a for a in self.coeffs if sum(a) <= p} | {a for a in other.coeffs if sum(a) <= p}
        return all(self.coeff(a) == other.coeff(a) for a in keys)

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out[a] + c if a in out else c
        shape = self.shape if self.shape is not None else other.shape
        return self._like(out, min(self.order, other.order), shape)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({a: -c for a, c in self.coeffs.items()})

    def __mul__(self, other):
        """Right action by a constant (element, matrix or scalar) on coefficients."""
        if isinstance(other, FueterSeries):
            return cauchy_product(self, other)
        out = {a: c * other for a, c in self.coeffs.items()}
        return self._like(out, shape=_shape_of(self.zero_coeff() * other))

    def __rmul__(self, other):
        out = {a: other * c for a, c in self.coeffs.items()}
        return self._like(out, shape=_shape_of(other * self.zero_coeff()))

    def __call__(self, v):
        return evaluate(self, v)

    def __repr__(self):
        return f"FueterSeries(order={self.order}, {format_series(self)})"

    def __str__(self):
        return format_series(self)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), [-x for x in t[0]]))


def format_series(f: FueterSeries) -> str:
    if not f.coeffs:
        return "0"
    parts = []
    for a, c in f.items():
        mono = "*".join(f"z{k + 1}" + (f"^{x}" if x > 1 else "") for k, x in enumerate(a) if x)
        coeff = f"[{c}]"
        if not mono:
            parts.append(coeff)
        elif f.side == "left":
            parts.append(f"{mono}*{coeff}")
        else:
            parts.append(f"{coeff}*{mono}")
    return " + ".join(parts)


def evaluate(f: FueterSeries, v) -> AlgebraElement | MatrixOverA:
    """Truncated sum at ``v`` (a point of K^{m+1} or a FueterPoint)."""
    spec = f.spec
    point = v if isinstance(v, FueterPoint) else FueterPoint(spec, v)
    diff = [z - x for z, x in zip(point.zeta, f.center.zeta)]
    fam = SymCache(diff, spec.one())
    acc = f.zero_coeff()
    for a, c in f.coeffs.items():
        mono = fam[a]
        acc = acc + (mono * c if f.side == "left" else c * mono)
    return acc


eval_series = evaluate


def series_to_vpoly(f: FueterSeries, family: SymCache | None = None) -> VPolynomial:
    """Exact expansion of an algebra-valued left series into v-monomials."""
    if f.shape is not None:
        raise AlgebraError("only algebra-valued series expand to V-polynomials")
    fam = family if family is not None else monomial_family(f.center)
    acc = VPolynomial(f.spec)
    for a, c in f.coeffs.items():
        acc = acc + fam[a] * c
    return acc


# ---------------------------------------------------------------------------
# products, inverse, recentering

def _convolve(f, g, order):
    out: dict = {}
    for a, x in f.coeffs.items():
        da = sum(a)
        for b, y in g.coeffs.items():
            if da + sum(b) > order:
                continue
            s = tuple(i + j for i, j in zip(a, b))
            p = x * y
            prev = out.get(s)
            out[s] = p if prev is None else prev + p
    return out


def _product_shape(f, g):
    if f.shape is None and g.shape is None:
        return None
    if f.shape is None:
        return g.shape
    if g.shape is None:
        return f.shape
    if f.shape[1] != g.shape[0]:
        raise AlgebraError(f"cannot multiply {f.shape} by {g.shape} series")
    return (f.shape[0], g.shape[1])


def cauchy_product(f: FueterSeries, g: FueterSeries) -> FueterSeries:
    """``f (.)_xi g`` with ``h_alpha = sum f_{alpha-gamma} g_gamma``; order min(p_f, p_g)."""
    f._compatible(g)
    if f.side != "left":
        raise AlgebraError("use cauchy_product_right for right series")
    order = min(f.order, g.order)
    return FueterSeries(f.spec, _convolve(f, g, order), order, f.center,
                        _product_shape(f, g), "left")


def cauchy_product_right(f: FueterSeries, g: FueterSeries) -> FueterSeries:
    """Right-series product: same convolution, coefficients left of monomials."""
    f._compatible(g)
    if f.side != "right":
        raise AlgebraError("cauchy_product_right expects right series")
    order = min(f.order, g.order)
    return FueterSeries(f.spec, _convolve(f, g, order), order, f.center,
                        _product_shape(f, g), "right")


def as_right(f: FueterSeries) -> FueterSeries:
    """Reinterpret coefficients as sitting left of the monomials."""
    return FueterSeries(f.spec, f.coeffs, f.order, f.center, f.shape, "right")


def multiply_variable(g: FueterSeries, k: int) -> FueterSeries:
    """``(zeta_k - xi_k) (.)_xi g``; exact, so the order grows by one."""
    u = mi_unit(g.m, k)
    return g._like({mi_add(a, u): c for a, c in g.coeffs.items()}, g.order + 1)


def _invert_coeff(c):
    if isinstance(c, MatrixOverA):
        return mat_invert(c)
    return invert(c)


def cauchy_inverse(f: FueterSeries) -> FueterSeries:
    """``f^{-(.)}`` by ``g_0 = f_0^{-1}``, ``g_a = -f_0^{-1} sum_{0<c<=a} f_c g_{a-c}``."""
    m, p = f.m, f.order
    if f.shape is not None and f.shape[0] != f.shape[1]:
        raise NotInvertible("non-square matrix-valued series")
    f0 = f.coeff((0,) * m)
    f0inv = _invert_coeff(f0)
    g = {(0,) * m: f0inv}
    terms = [(a, c) for a, c in f.coeffs.items() if sum(a)]
    for alpha in multi_indices(m, p, 1):
        acc = None
        for gamma, fc in terms:
            if not mi_leq(gamma, alpha):
                continue
            rest = g.get(mi_sub(alpha, gamma))
            if rest is None:
                continue
            t = fc * rest
            acc = t if acc is None else acc + t
        if acc is not None and acc:
            g[alpha] = -(f0inv * acc)
    return f._like(g)


def recenter(f: FueterSeries, new_center: FueterPoint) -> FueterSeries:
    """Exact re-expansion of a polynomial at another center.

    Uses ``f'_beta = sum_{alpha>=beta} binom(alpha,beta) (xi' - xi)^{alpha-beta} f_alpha``
    where ``(xi' - xi)^gamma`` is the symmetrized power of the constant shift.
    """
    if f.side != "left":
        raise AlgebraError("recenter handles left series")
    spec = f.spec
    shift = [a - b for a, b in zip(new_center.zeta, f.center.zeta)]
    fam = SymCache(shift, spec.one())
    out: dict = {}
    for alpha, c in f.coeffs.items():
        for beta in iproduct(*(range(x + 1) for x in alpha)):
            w = fam[mi_sub(alpha, beta)] * Q(mi_binom(alpha, beta))
            t = w * c
            prev = out.get(beta)
            out[beta] = t if prev is None else prev + t
    return FueterSeries(spec, out, f.order, new_center, f.shape, "left")


# ---------------------------------------------------------------------------
# backward shifts and Gleason's problem

def backward_shift(f: FueterSeries, k: int) -> FueterSeries:
    """``(R_k f)_beta = (beta_k + 1)/(|beta| + 1) f_{beta + iota_k}``; order drops by one."""
    u = mi_unit(f.m, k)
    out = {}
    for a, c in f.coeffs.items():
        if a[k - 1]:
            out[mi_sub(a, u)] = c * Q(a[k - 1], sum(a))
    return f._like(out, max(f.order - 1, 0))


def iterated_shift(f: FueterSeries, alpha) -> FueterSeries:
    """``R^alpha f = R_1^{a_1} ... R_m^{a_m} f``."""
    g = f
    for k, a in enumerate(alpha, start=1):
        for _ in range(a):
            g = backward_shift(g, k)
    return g


def derivative_at(f: FueterSeries, alpha) -> AlgebraElement | MatrixOverA:
    """``d^{|alpha|} f / dv^alpha`` at the center, via the exact V-expansion."""
    P = series_to_vpoly(f)
    for k, a in enumerate(alpha, start=1):
        for _ in range(a):
            P = P.diff(k)
    return P.evaluate(f.center.v)


def gleason_solve(f: FueterSeries) -> list:
    return [backward_shift(f, k) for k in range(1, f.m + 1)]


def gleason_residual(f: FueterSeries, gs: Sequence[FueterSeries]) -> FueterSeries:
    """``f - f(xi) - sum_k (zeta_k - xi_k) (.) g_k``, kept to the order of f."""
    if len(gs) != f.m:
        raise AlgebraError(f"need {f.m} functions g_k")
    const = FueterSeries(f.spec, {(0,) * f.m: f.coeff((0,) * f.m)}, f.order,
                         f.center, f.shape)
    res = f - const
    for k, g in enumerate(gs, start=1):
        res = res - multiply_variable(g, k).with_order(f.order)
    return res.with_order(f.order)


def backward_shift_quadrature(f: FueterSeries, k: int, v, nodes: int | None = None):
    """Numeric ``int_0^1 d f/dv_k (t v + (1-t) w) dt`` by Gauss-Legendre.

    Returns the coefficient vector as a numpy array.  Exact for polynomials
    once ``nodes >= (deg f)/2``.
    """
    spec = f.spec
    P = series_to_vpoly(f).diff(k)
    w = [scalars.to_number(x) for x in f.center.v]
    v = [scalars.to_number(scalars.coerce(x, spec.field)) for x in v]
    n = nodes or max(1, f.degree() + 1)
    x, wts = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (x + 1.0)
    wts = 0.5 * wts
    dtype = complex if spec.field == scalars.COMPLEX else float
    total = np.zeros(spec.dim, dtype=dtype)
    terms = [(e, np.array([scalars.to_number(z) for z in c.coeffs], dtype=dtype))
             for e, c in P.terms.items()]
    for ti, wi in zip(t, wts):
        pt = [ti * a + (1 - ti) * b for a, b in zip(v, w)]
        for e, cv in terms:
            mono = 1.0
            for xj, ej in zip(pt, e):
                if ej:
                    mono *= xj ** ej
            total += wi * mono * cv
    return total


# ---------------------------------------------------------------------------
# numeric diagnostics

@dataclass
class FrechetReport:
    scales: list
    ratios: list          # per direction, one ratio per scale
    slopes: list          # per direction; inf when the residual vanishes exactly
    min_slope: float
    exact_zero: bool
    passed: bool
    flag: str = ""
    extra: dict = field(default_factory=dict)


def _random_point(spec, rng, lo=-2, hi=2, den=3):
    def draw():
        x = Q(rng.randint(lo, hi), rng.randint(1, den))
        if spec.field == scalars.COMPLEX:
            return scalars.QQi(x, Q(rng.randint(lo, hi), rng.randint(1, den)))
        return x
    return [draw() for _ in range(spec.dim)]


def frechet_check(f, center: FueterPoint | None = None, scales=(Q(1, 10), Q(1, 100), Q(1, 1000)),
                  directions: int = 3, seed: int = 0, slope_threshold: float = 0.9
                  ) -> FrechetReport:
    """Estimate the decay of the left-linear Frechet remainder.

    ``f`` is a FueterSeries or a VPolynomial.  With ``A_k = df/dv_k(center)``
    the ratio ``N(f(xi + s dz) - f(xi) - sum_k s dz_k A_k) / ||s dz||`` is
    computed exactly up to the final norm, and its log-log slope in ``s`` is
    fitted.  Hyperholomorphic inputs give slope >= 1 (or an exact zero).
    """
    if isinstance(f, FueterSeries):
        P = series_to_vpoly(f)
        center = f.center if center is None else center
    else:
        P = f
    spec = P.spec
    if center is None:
        center = FueterPoint.origin(spec)
    w = list(center.v)
    A = [P.diff(k).evaluate(w) for k in range(1, spec.dim)]
    fw = P.evaluate(w)
    rng = random.Random(seed)
    scales = [scalars.coerce(s, scalars.REAL) if not isinstance(s, scalars.QQi) else s
              for s in scales]
    ratios, slopes = [], []
    for _ in range(directions):
        dv = _random_point(spec, rng)
        while not any(dv):
            dv = _random_point(spec, rng)
        # a nonzero real-part direction in v_0 exposes non-hyperholomorphic parts
        if not dv[0]:
            dv[0] = scalars.coerce(1, spec.field)
        dz = FueterPoint(spec, dv).zeta
        row = []
        for s in scales:
            pt = [a + s * b for a, b in zip(w, dv)]
            lin = spec.zero()
            for z, a in zip(dz, A):
                lin = lin + z * a
            res = P.evaluate(pt) - fw - lin * s
            step = norm_Am([z * s for z in dz])
            row.append(norm(res) / step)
        ratios.append(row)
        if all(r == 0.0 for r in row):
            slopes.append(math.inf)
            continue
        pts = [(math.log(float(s)), math.log(r)) for s, r in zip(scales, row) if r > 0]
        if len(pts) < 2:
            slopes.append(math.inf)
            continue
        xs, ys = zip(*pts)
        slopes.append(float(np.polyfit(xs, ys, 1)[0]))
    exact_zero = all(r == 0.0 for row in ratios for r in row)
    min_slope = min(slopes) if slopes else math.inf
    passed = exact_zero or min_slope >= slope_threshold
    flag = "" if passed else (
        f"remainder ratio does not vanish (slope {min_slope:.3f}); "
        "no left-linear map fits")
    return FrechetReport([float(s) for s in scales], ratios, slopes, min_slope,
                         exact_zero, passed, flag)


def tail_bound(f: FueterSeries, sigma: Sequence[float], from_order: int) -> float:
    """``sum_{from_order <= |alpha| <= p} sigma^alpha N(f_alpha)``."""
    if from_order > f.order:
        raise ValueError("from_order exceeds the truncation order")
    sig = [float(s) for s in sigma]
    if len(sig) != f.m:
        raise ValueError(f"sigma needs {f.m} entries")
    total = 0.0
    for a, c in f.coeffs.items():
        if sum(a) < from_order:
            continue
        w = 1.0
        for s, k in zip(sig, a):
            if k:
                w *= s ** k
        if w:
            total += w * coeff_norm(c)
    return total


def tail_by_degree(f: FueterSeries, sigma: Sequence[float]) -> list:
    """Per-degree contributions ``sum_{|alpha| = d} sigma^alpha N(f_alpha)``."""
    out = [0.0] * (f.order + 1)
    for d in range(f.order + 1):
        sub = FueterSeries(f.spec, {a: c for a, c in f.coeffs.items() if sum(a) == d},
                           f.order, f.center, f.shape, f.side)
        out[d] = tail_bound(sub, sigma, 0)
    return out


def random_polynomial(spec: AlgebraSpec, order: int, rng: random.Random,
                      center: FueterPoint | None = None, density: float = 0.6,
                      shape=None) -> FueterSeries:
    """Random left polynomial with small rational coefficients."""
    coeffs = {}
    for a in multi_indices(spec.m, order):
        if rng.random() < density:
            if shape is None:
                coeffs[a] = random_element(spec, rng)
            else:
                coeffs[a] = MatrixOverA(spec, [[random_element(spec, rng)
                                                for _ in range(shape[1])]
                                               for _ in range(shape[0])])
    return FueterSeries(spec, coeffs, order, center, shape)


def random_center(spec: AlgebraSpec, rng: random.Random) -> FueterPoint:
    return FueterPoint(spec, _random_point(spec, rng))


# ---------------------------------------------------------------------------
# JSON

def _coeff_to_json(c):
    if isinstance(c, MatrixOverA):
        return [[[scalars.format_scalar(x) for x in e.coeffs] for e in row]
                for row in c.entries]
    return [scalars.format_scalar(x) for x in c.coeffs]


def _coeff_from_json(spec, data):
    parse = lambda x: scalars.parse_scalar(x, spec.field)
    if data and isinstance(data[0], list) and data[0] and isinstance(data[0][0], list):
        return MatrixOverA(spec, [[spec.element([parse(x) for x in e]) for e in row]
                                  for row in data])
    return spec.element([parse(x) for x in data])


def series_to_json(f: FueterSeries, algebra: str | None = None) -> dict:
    return {
        "algebra": algebra or f.spec.name,
        "center_v": [scalars.format_scalar(x) for x in f.center.v],
        "order": f.order,
        "terms": [{"alpha": list(a), "coeff": _coeff_to_json(c)} for a, c in f.items()],
    }


def series_from_json(data: dict, spec: AlgebraSpec) -> FueterSeries:
    try:
        center = FueterPoint(spec, [scalars.parse_scalar(x, spec.field)
                                    for x in data.get("center_v", [0] * spec.dim)])
        order = int(data["order"])
        coeffs = {}
        for t in data.get("terms", []):
            a = tuple(int(x) for x in t["alpha"])
            c = _coeff_from_json(spec, t["coeff"])
            coeffs[a] = coeffs[a] + c if a in coeffs else c
        return FueterSeries(spec, coeffs, order, center)
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed series file: {exc}") from exc


def coeff_to_json(c):
    return _coeff_to_json(c)


def coeff_from_json(spec, data):
    return _coeff_from_json(spec, data)
