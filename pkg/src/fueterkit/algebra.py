"""Finite-dimensional algebras given by structure constants.

An algebra of dimension ``m+1`` over R or C is fixed by its characteristic
operators ``chi[l]`` (``e_j e_k = sum_l chi[l][j][k] e_l``), an involution
matrix ``T`` (``coeffs(a^dagger) = T conj(coeffs(a))``) and a norm policy.
All arithmetic is exact; floats only appear in norms.
"""
from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import scalars
from .scalars import COMPLEX, REAL, Q, QQi

NORM_POLICIES = ("regular_rep", "coeff_l2", "coeff_sup")
MAX_CLIFFORD_GENERATORS = 4


class AlgebraError(ValueError):
    """Malformed algebra data or mismatched operands."""


class NotInvertible(ArithmeticError):
    """Raised for zero divisors, non-units and singular matrices over A."""


class DivergentSeries(ArithmeticError):
    """Raised when a binomial series is asked to converge outside its disc."""


class AlgebraSpec:
    """Structure constants, involution and norm policy of an algebra.

    Instances are treated as immutable; the sparse multiplication table is
    derived once at construction.
    """

    def __init__(self, chi, involution, field: str = REAL, basis=None,
                 norm_policy: str = "regular_rep", name: str = "custom"):
        if field not in (REAL, COMPLEX):
            raise AlgebraError(f"unknown field {field!r}")
        if norm_policy not in NORM_POLICIES:
            raise AlgebraError(f"unknown norm policy {norm_policy!r}")
        n = len(chi)
        if n < 1:
            raise AlgebraError("algebra must have dimension >= 1")
        self.field = field
        self.dim = n
        self.name = name
        self.norm_policy = norm_policy
        self.basis = tuple(basis) if basis is not None else tuple(
            ["1"] + [f"e{k}" for k in range(1, n)])
        if len(self.basis) != n:
            raise AlgebraError("basis labels do not match dimension")
        conv = lambda x: scalars.coerce(x, field)
        try:
            self.chi = tuple(tuple(tuple(conv(x) for x in row) for row in mat)
                             for mat in chi)
            self.involution = tuple(tuple(conv(x) for x in row)
                                    for row in involution)
        except TypeError as exc:
            raise AlgebraError(f"bad structure data: {exc}") from exc
        for mat in self.chi:
            if len(mat) != n or any(len(row) != n for row in mat):
                raise AlgebraError("each chi_l must be (m+1)x(m+1)")
        if len(self.involution) != n or any(len(r) != n for r in self.involution):
            raise AlgebraError("involution matrix must be (m+1)x(m+1)")
        self.zero_scalar = scalars.field_zero(field)
        self.one_scalar = scalars.field_one(field)
        # table[j][k] -> ((l, c), ...) with c != 0
        self._table = tuple(
            tuple(tuple((l, self.chi[l][j][k]) for l in range(n) if self.chi[l][j][k])
                  for k in range(n))
            for j in range(n))
        self._inv_rows = tuple(tuple((k, t) for k, t in enumerate(row) if t)
                               for row in self.involution)

    @property
    def m(self) -> int:
        """Number of non-identity basis directions."""
        return self.dim - 1

    def __repr__(self):
        return f"AlgebraSpec({self.name!r}, dim={self.dim}, field={self.field})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (self.field == other.field and self.chi == other.chi
                and self.involution == other.involution
                and self.norm_policy == other.norm_policy)

    def __hash__(self):
        return hash((self.field, self.dim, self.chi))

    # element constructors
    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, coeffs)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [self.zero_scalar] * self.dim)

    def one(self) -> "AlgebraElement":
        return self.basis_element(0)

    def basis_element(self, k: int) -> "AlgebraElement":
        c = [self.zero_scalar] * self.dim
        c[k] = self.one_scalar
        return AlgebraElement(self, c)

    def scalar(self, k) -> "AlgebraElement":
        """Embed a field scalar as ``k * e_0``."""
        c = [self.zero_scalar] * self.dim
        c[0] = scalars.coerce(k, self.field)
        return AlgebraElement(self, c)

    def e(self, k: int) -> "AlgebraElement":
        return self.basis_element(k)

    # raw coefficient kernels (tuples in, lists out)
    def _mul(self, a, b):
        n = self.dim
        out = [self.zero_scalar] * n
        nzb = [(k, y) for k, y in enumerate(b) if y]
        if not nzb:
            return out
        table = self._table
        for j, x in enumerate(a):
            if not x:
                continue
            row = table[j]
            for k, y in nzb:
                xy = x * y
                for l, c in row[k]:
                    if c == 1:
                        out[l] += xy
                    elif c == -1:
                        out[l] -= xy
                    else:
                        out[l] += xy * c
        return out

    def _dagger(self, a):
        a = [scalars.conj(x) for x in a] if self.field == COMPLEX else a
        out = []
        for row in self._inv_rows:
            s = self.zero_scalar
            for k, t in row:
                if a[k]:
                    s += t * a[k]
            out.append(s)
        return out


class AlgebraElement:
    """Element ``sum_k a_k e_k`` of an algebra; immutable."""

    __slots__ = ("spec", "coeffs", "_hash")

    def __init__(self, spec: AlgebraSpec, coeffs):
        coeffs = tuple(scalars.coerce(x, spec.field) for x in coeffs)
        if len(coeffs) != spec.dim:
            raise AlgebraError(
                f"expected {spec.dim} coefficients, got {len(coeffs)}")
        self.spec = spec
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, spec, coeffs):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    def _check(self, other):
        if other.spec is not self.spec and other.spec != self.spec:
            raise AlgebraError("operands live in different algebras")

    def __add__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement._raw(
                self.spec, [x + y for x, y in zip(self.coeffs, other.coeffs)])
        if _is_scalar(other):
            return self + self.spec.scalar(other)
        return NotImplemented

    def __radd__(self, other):
        if _is_scalar(other):
            return self.spec.scalar(other) + self
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement._raw(
                self.spec, [x - y for x, y in zip(self.coeffs, other.coeffs)])
        if _is_scalar(other):
            return self - self.spec.scalar(other)
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return self.spec.scalar(other) - self
        return NotImplemented

    def __neg__(self):
        return AlgebraElement._raw(self.spec, [-x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement._raw(self.spec,
                                       self.spec._mul(self.coeffs, other.coeffs))
        if _is_scalar(other):
            k = scalars.coerce(other, self.spec.field)
            return AlgebraElement._raw(self.spec, [x * k for x in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            # field scalars are central
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            k = scalars.coerce(other, self.spec.field)
            return AlgebraElement._raw(self.spec, [x / k for x in self.coeffs])
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coeffs == other.coeffs and (
                self.spec is other.spec or self.spec == other.spec)
        if _is_scalar(other):
            return self == self.spec.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"AlgebraElement({format_element(self)})"

    def __str__(self):
        return format_element(self)

    def __getitem__(self, k):
        return self.coeffs[k]

    def dagger(self) -> "AlgebraElement":
        return involute(self)

    def norm(self) -> float:
        return norm(self)

    def inverse(self) -> "AlgebraElement":
        return invert(self)

    def commutator(self, other) -> "AlgebraElement":
        return self * other - other * self


def _is_scalar(x) -> bool:
    return isinstance(x, (int, QQi)) or type(x) is type(scalars.ZERO) or \
        x.__class__.__name__ == "Fraction"


def format_element(a: AlgebraElement) -> str:
    terms = []
    for label, c in zip(a.spec.basis, a.coeffs):
        if not c:
            continue
        cs = str(c) if not isinstance(c, QQi) else f"({c.re}+{c.im}i)"
        terms.append(cs if label == "1" else f"{cs}*{label}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# builtin algebras

def _blade_order(n: int):
    masks = list(range(1 << n))
    masks.sort(key=lambda b: (bin(b).count("1"),
                              [i for i in range(n) if b >> i & 1]))
    return masks


def _blade_label(mask: int, n: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(n) if mask >> i & 1)


def _blade_product(a: int, b: int, squares: Sequence[int]):
    """Product of basis blades; returns (sign, blade) with sign 0 for nilpotents."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    sign = -1 if swaps % 2 else 1
    common = a & b
    i = 0
    while common:
        if common & 1:
            sign *= squares[i]
        common >>= 1
        i += 1
    return sign, a ^ b


def _from_blades(squares, name, basis=None, conjugation=True):
    n = len(squares)
    masks = _blade_order(n)
    index = {mk: i for i, mk in enumerate(masks)}
    dim = len(masks)
    chi = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for j, a in enumerate(masks):
        for k, b in enumerate(masks):
            s, c = _blade_product(a, b, squares)
            if s:
                chi[index[c]][j][k] = s
    inv = [[0] * dim for _ in range(dim)]
    for j, a in enumerate(masks):
        r = bin(a).count("1")
        # Clifford conjugation (grade involution after reversion) or reversion
        inv[j][j] = (-1) ** (r * (r + 1) // 2) if conjugation else (-1) ** (r * (r - 1) // 2)
    labels = basis or [_blade_label(mk, n) for mk in masks]
    return AlgebraSpec(chi, inv, REAL, labels, "regular_rep", name)


def quaternions() -> AlgebraSpec:
    return _from_blades([-1, -1], "quaternions", ["1", "i", "j", "k"])


def split_quaternions() -> AlgebraSpec:
    # Cl(2,0): e1^2 = e2^2 = +1, (e1 e2)^2 = -1
    return _from_blades([1, 1], "split_quaternions")


def clifford(p: int, q: int) -> AlgebraSpec:
    if p < 0 or q < 0:
        raise AlgebraError("signature must be non-negative")
    if p + q > MAX_CLIFFORD_GENERATORS:
        raise AlgebraError(f"clifford({p},{q}) exceeds the dimension bound")
    return _from_blades([1] * p + [-1] * q, f"clifford:{p},{q}")


def grassmann(n: int) -> AlgebraSpec:
    if n < 0 or n > MAX_CLIFFORD_GENERATORS:
        raise AlgebraError(f"grassmann({n}) exceeds the dimension bound")
    return _from_blades([0] * n, f"grassmann:{n}")


def ternary(sign: int = 1) -> AlgebraSpec:
    """``K[e]/(e^3 = sign)`` with basis 1, e, e^2."""
    if sign not in (1, -1):
        raise AlgebraError("ternary relation sign must be +1 or -1")
    chi = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for j in range(3):
        for k in range(3):
            s = j + k
            coef = sign if s >= 3 else 1
            chi[s % 3][j][k] = coef
    # e -> sign*e^2, e^2 -> sign*e; an automorphism of order two
    inv = [[1, 0, 0], [0, 0, sign], [0, sign, 0]]
    name = "ternary" if sign == 1 else "ternary:-1"
    return AlgebraSpec(chi, inv, REAL, ["1", "e", "e2"], "regular_rep", name)


BUILTIN_NAMES = ("quaternions", "split_quaternions", "clifford", "grassmann", "ternary")


def builtin_algebra(name: str, *params) -> AlgebraSpec:
    """Build a named algebra.

    ``name`` may carry its parameters after a colon, e.g. ``"clifford:0,3"``,
    ``"grassmann:3"`` or ``"ternary:-1"``.
    """
    if ":" in name:
        name, rest = name.split(":", 1)
        params = tuple(int(p) for p in rest.split(",") if p.strip())
    name = name.strip().lower().replace("-", "_")
    if name in ("quaternions", "h"):
        return quaternions()
    if name in ("split_quaternions", "split"):
        return split_quaternions()
    if name == "clifford":
        if len(params) != 2:
            raise AlgebraError("clifford needs (p, q)")
        return clifford(*params)
    if name == "grassmann":
        if len(params) != 1:
            raise AlgebraError("grassmann needs n")
        return grassmann(*params)
    if name == "ternary":
        return ternary(*(params or (1,)))
    raise AlgebraError(f"unknown algebra {name!r}")


# ---------------------------------------------------------------------------
# JSON specs

def spec_to_json(spec: AlgebraSpec) -> dict:
    f = scalars.format_scalar
    return {
        "field": spec.field,
        "dim": spec.dim,
        "basis": list(spec.basis),
        "chi": [[[f(x) for x in row] for row in mat] for mat in spec.chi],
        "involution": [[f(x) for x in row] for row in spec.involution],
        "norm_policy": spec.norm_policy,
    }


def spec_from_json(data: dict, name: str = "custom") -> AlgebraSpec:
    try:
        field = data.get("field", REAL)
        parse = lambda x: scalars.parse_scalar(x, field)
        chi = [[[parse(x) for x in row] for row in mat] for mat in data["chi"]]
        inv = [[parse(x) for x in row] for row in data["involution"]]
        dim = data.get("dim", len(chi))
        if dim != len(chi):
            raise AlgebraError("dim does not match chi")
        return AlgebraSpec(chi, inv, field, data.get("basis"),
                           data.get("norm_policy", "regular_rep"), name)
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra spec: {exc}") from exc


def resolve_algebra(ref: str) -> AlgebraSpec:
    """Builtin name, or a JSON file (searched in ``FUETERKIT_ALGEBRA_PATH``)."""
    candidates = [ref]
    if not os.path.isabs(ref):
        for d in os.environ.get("FUETERKIT_ALGEBRA_PATH", "").split(os.pathsep):
            if d:
                candidates.append(os.path.join(d, ref))
                candidates.append(os.path.join(d, ref + ".json"))
    for path in candidates:
        if os.path.isfile(path):
            with open(path) as fh:
                return spec_from_json(json.load(fh), name=ref)
    return builtin_algebra(ref)


# ---------------------------------------------------------------------------
# element operations

def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def involute(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._raw(a.spec, a.spec._dagger(a.coeffs))


def left_regular(a: AlgebraElement):
    """Matrix of ``b -> a b`` in the basis; column j holds coeffs(a e_j)."""
    spec = a.spec
    n = spec.dim
    cols = [spec._mul(a.coeffs, spec.basis_element(j).coeffs) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def right_regular(a: AlgebraElement):
    spec = a.spec
    n = spec.dim
    cols = [spec._mul(spec.basis_element(j).coeffs, a.coeffs) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _to_numeric(rows, field):
    dtype = complex if field == COMPLEX else float
    return np.array([[scalars.to_number(x) for x in row] for row in rows],
                    dtype=dtype).reshape(len(rows), len(rows[0]) if rows else 0)


def norm(a: AlgebraElement) -> float:
    """Norm N(a) under the algebra's norm policy (N(e_0) = 1)."""
    policy = a.spec.norm_policy
    if policy == "coeff_l2":
        return math.sqrt(sum(float(scalars.abs2(x)) for x in a.coeffs))
    if policy == "coeff_sup":
        return max(math.sqrt(float(scalars.abs2(x))) for x in a.coeffs)
    if not a:
        return 0.0
    # L(e_0) is the identity, so the normalisation constant is 1
    return float(np.linalg.norm(_to_numeric(left_regular(a), a.spec.field), 2))


# ---------------------------------------------------------------------------
# exact linear algebra

def solve_exact(M, B, zero=scalars.ZERO):
    """Solve ``M X = B`` exactly by Gauss-Jordan; M square, B a list of rows.

    Raises :class:`NotInvertible` when M is singular.
    """
    n = len(M)
    k = len(B[0]) if B else 0
    aug = [list(M[i]) + list(B[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise NotInvertible("singular matrix")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        prow = aug[col]
        if p != 1:
            prow = [x / p for x in prow]
            aug[col] = prow
        nz = [(c, x) for c, x in enumerate(prow) if x and c >= col]
        for r in range(n):
            if r == col:
                continue
            f = aug[r][col]
            if f:
                row = aug[r]
                for c, x in nz:
                    row[c] -= f * x
    return [row[n:n + k] for row in aug]


def invert(a: AlgebraElement) -> AlgebraElement:
    """Two-sided inverse; raises :class:`NotInvertible` for non-units."""
    spec = a.spec
    L = left_regular(a)
    rhs = [[x] for x in spec.one().coeffs]
    try:
        sol = solve_exact(L, rhs)
    except NotInvertible:
        raise NotInvertible(f"{a} is not invertible (zero divisor or non-unit)") from None
    x = AlgebraElement._raw(spec, [r[0] for r in sol])
    if x * a != spec.one() or a * x != spec.one():
        raise NotInvertible(f"{a} has no two-sided inverse")
    return x


# ---------------------------------------------------------------------------
# symmetrized products

class SymCache:
    """Symmetrized powers of fixed factors, memoized over multiplicities.

    ``cache[alpha]`` is ``x_1^{a_1} x ... x x_m^{a_m}`` (the S_N average of
    all orderings), computed from
    ``sym(alpha) = (1/|alpha|) sum_k alpha_k sym(alpha - iota_k) x_k``.
    """

    def __init__(self, factors: Sequence, one):
        self.factors = tuple(factors)
        self.one = one
        self._memo = {(0,) * len(self.factors): one}

    def __getitem__(self, alpha):
        alpha = tuple(alpha)
        memo = self._memo
        hit = memo.get(alpha)
        if hit is not None:
            return hit
        # iterative fill in degree order to avoid deep recursion
        todo = [alpha]
        stack = []
        while todo:
            a = todo.pop()
            if a in memo:
                continue
            stack.append(a)
            for k, ak in enumerate(a):
                if ak:
                    b = a[:k] + (ak - 1,) + a[k + 1:]
                    if b not in memo:
                        todo.append(b)
        stack.sort(key=sum)
        for a in stack:
            if a in memo:
                continue
            n = sum(a)
            acc = None
            for k, ak in enumerate(a):
                if not ak:
                    continue
                b = a[:k] + (ak - 1,) + a[k + 1:]
                term = memo[b] * self.factors[k]
                if ak != 1:
                    term = term * Q(ak)
                acc = term if acc is None else acc + term
            memo[a] = acc * Q(1, n)
        return memo[alpha]


def sym_power(factors: Sequence, alpha: Sequence[int], one):
    return SymCache(factors, one)[alpha]


def sym_product(items: Sequence):
    """Symmetrized product of elements (or square matrices) of one algebra."""
    items = list(items)
    if not items:
        raise ValueError("symmetrized product of an empty list")
    distinct: list = []
    counts: list = []
    for it in items:
        for i, d in enumerate(distinct):
            if d == it:
                counts[i] += 1
                break
        else:
            distinct.append(it)
            counts.append(1)
    first = items[0]
    if isinstance(first, MatrixOverA):
        if first.rows != first.cols or any(
                not isinstance(d, MatrixOverA) or d.shape != first.shape for d in distinct):
            raise AlgebraError("symmetrized product needs square matrices of one size")
        one = MatrixOverA.identity(first.spec, first.rows)
    else:
        for d in distinct:
            first._check(d)
        one = first.spec.one()
    return sym_power(distinct, counts, one)


# ---------------------------------------------------------------------------
# matrices over A

class MatrixOverA:
    """Dense ``rows x cols`` matrix with entries in an algebra."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: AlgebraSpec, entries, rows: int | None = None,
                 cols: int | None = None):
        entries = tuple(tuple(e if isinstance(e, AlgebraElement) else
                              spec.scalar(e) if _is_scalar(e) else spec.element(e)
                              for e in row) for row in entries)
        self.spec = spec
        self.rows = len(entries) if rows is None else rows
        if cols is None:
            cols = len(entries[0]) if entries else 0
        self.cols = cols
        if len(entries) != self.rows or any(len(r) != cols for r in entries):
            raise AlgebraError("ragged matrix")
        self.entries = entries

    @classmethod
    def zeros(cls, spec, rows, cols):
        z = spec.zero()
        return cls(spec, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, spec, n):
        z, o = spec.zero(), spec.one()
        return cls(spec, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def scalar(cls, a: AlgebraElement):
        return cls(a.spec, [[a]], 1, 1)

    @classmethod
    def block(cls, spec, blocks):
        """Assemble from a grid of blocks; every block row shares a height."""
        rows = []
        ncols = None
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise AlgebraError("block heights differ within a block row")
            w = sum(b.cols for b in brow)
            if ncols is None:
                ncols = w
            elif ncols != w:
                raise AlgebraError("block rows have different widths")
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.entries[i])
                rows.append(row)
        return cls(spec, rows, len(rows), ncols or 0)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _same_shape(self, other):
        if not isinstance(other, MatrixOverA) or other.shape != self.shape:
            raise AlgebraError(f"shape mismatch {self.shape} vs {getattr(other, 'shape', None)}")

    def __add__(self, other):
        if not isinstance(other, MatrixOverA):
            return NotImplemented
        self._same_shape(other)
        return MatrixOverA(self.spec, [[a + b for a, b in zip(r, s)]
                                       for r, s in zip(self.entries, other.entries)],
                           self.rows, self.cols)

    def __sub__(self, other):
        if not isinstance(other, MatrixOverA):
            return NotImplemented
        self._same_shape(other)
        return MatrixOverA(self.spec, [[a - b for a, b in zip(r, s)]
                                       for r, s in zip(self.entries, other.entries)],
                           self.rows, self.cols)

    def __neg__(self):
        return MatrixOverA(self.spec, [[-a for a in r] for r in self.entries],
                           self.rows, self.cols)

    def __mul__(self, other):
        if isinstance(other, MatrixOverA):
            return mat_mul(self, other)
        if isinstance(other, AlgebraElement):
            return MatrixOverA(self.spec, [[a * other for a in r] for r in self.entries],
                               self.rows, self.cols)
        if _is_scalar(other):
            return MatrixOverA(self.spec, [[a * other for a in r] for r in self.entries],
                               self.rows, self.cols)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement) or _is_scalar(other):
            return MatrixOverA(self.spec, [[other * a for a in r] for r in self.entries],
                               self.rows, self.cols)
        return NotImplemented

    __matmul__ = mat_mul_op = __mul__

    def __eq__(self, other):
        if not isinstance(other, MatrixOverA):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __bool__(self):
        return any(a for r in self.entries for a in r)

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.entries)
        return f"MatrixOverA[{self.rows}x{self.cols}]({body})"

    def dagger(self) -> "MatrixOverA":
        """Conjugate transpose: entrywise involution, transposed."""
        return MatrixOverA(self.spec, [[self.entries[i][j].dagger() for i in range(self.rows)]
                                       for j in range(self.cols)], self.cols, self.rows)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        one = self.spec.one()
        return all((a == one) if i == j else (not a)
                   for i, r in enumerate(self.entries) for j, a in enumerate(r))

    def submatrix(self, r0, r1, c0, c1):
        return MatrixOverA(self.spec, [r[c0:c1] for r in self.entries[r0:r1]],
                           r1 - r0, c1 - c0)

    def column(self, j):
        return self.submatrix(0, self.rows, j, j + 1)


def mat_mul(A: MatrixOverA, B: MatrixOverA) -> MatrixOverA:
    if A.cols != B.rows:
        raise AlgebraError(f"cannot multiply {A.shape} by {B.shape}")
    spec = A.spec
    n = spec.dim
    zero = spec.zero_scalar
    mul = spec._mul
    Bcols = [[B.entries[k][j].coeffs for k in range(B.rows)] for j in range(B.cols)]
    out = []
    for row in A.entries:
        arow = [(k, a.coeffs) for k, a in enumerate(row) if a]
        new = []
        for j in range(B.cols):
            col = Bcols[j]
            acc = [zero] * n
            for k, ac in arow:
                bc = col[k]
                if any(bc):
                    for l, x in enumerate(mul(ac, bc)):
                        if x:
                            acc[l] += x
            new.append(AlgebraElement._raw(spec, acc))
        out.append(new)
    return MatrixOverA(spec, out, A.rows, B.cols)


def block_regular(M: MatrixOverA):
    """Field matrix replacing each entry by its left-regular block."""
    n = M.spec.dim
    big = [[M.spec.zero_scalar] * (M.cols * n) for _ in range(M.rows * n)]
    for i, row in enumerate(M.entries):
        for j, a in enumerate(row):
            if not a:
                continue
            L = left_regular(a)
            for p in range(n):
                for q in range(n):
                    big[i * n + p][j * n + q] = L[p][q]
    return big


def matrix_norm(M: MatrixOverA) -> float:
    """Operator 2-norm of the block regular representation."""
    if M.rows == 0 or M.cols == 0 or not M:
        return 0.0
    return float(np.linalg.norm(_to_numeric(block_regular(M), M.spec.field), 2))


def coeff_norm(c) -> float:
    """Norm of a series coefficient (element or matrix)."""
    if isinstance(c, MatrixOverA):
        if c.shape == (1, 1):
            return norm(c.entries[0][0])
        return matrix_norm(c)
    return norm(c)


def mat_invert(A: MatrixOverA) -> MatrixOverA:
    """Exact inverse through the block regular representation."""
    if A.rows != A.cols:
        raise NotInvertible("non-square matrix")
    spec = A.spec
    n, d = A.rows, spec.dim
    if n == 0:
        return A
    if A.is_identity():
        return A
    big = block_regular(A)
    I = MatrixOverA.identity(spec, n)
    rhs = block_column_stack(I)
    try:
        sol = solve_exact(big, rhs, spec.zero_scalar)
    except NotInvertible:
        raise NotInvertible("matrix is not invertible over the algebra") from None
    X = MatrixOverA(spec, [[AlgebraElement._raw(spec, [sol[i * d + p][j] for p in range(d)])
                            for j in range(n)] for i in range(n)], n, n)
    if not (A * X).is_identity() or not (X * A).is_identity():
        raise NotInvertible("matrix has no two-sided inverse")
    return X


def block_column_stack(M: MatrixOverA):
    """Stack coefficient vectors column-wise: (rows*dim) x cols field matrix."""
    d = M.spec.dim
    return [[M.entries[i][j].coeffs[p] for j in range(M.cols)]
            for i in range(M.rows) for p in range(d)]


def _binom(a, n):
    out = Q(1)
    for i in range(n):
        out = out * (a - i) / (i + 1)
    return out


def mat_sqrt_inv(X: MatrixOverA, kind: str = "sqrt", tol: float = 1e-12) -> MatrixOverA:
    """Binomial-series ``X^{1/2}`` or ``X^{-1/2}`` for ``X = I - Y``, ``||Y|| < 1``.

    Terms are exact rationals; the float norm only decides truncation.  The
    series is cut once the geometric bound on the remaining tail is below
    ``tol``.
    """
    if kind not in ("sqrt", "inv_sqrt"):
        raise ValueError("kind must be 'sqrt' or 'inv_sqrt'")
    if X.rows != X.cols:
        raise AlgebraError("square matrix required")
    spec = X.spec
    n = X.rows
    I = MatrixOverA.identity(spec, n)
    Y = I - X
    r = matrix_norm(Y)
    if r >= 1.0:
        raise DivergentSeries(f"||I - X|| = {r:.6g} >= 1")
    if r == 0.0:
        return I
    a = Q(1, 2) if kind == "sqrt" else Q(-1, 2)
    negY = -Y
    term = I
    acc = I
    k = 0
    while True:
        k += 1
        term = term * negY
        b = _binom(a, k)
        acc = acc + term * b
        # |b_j| is non-increasing for a = +-1/2
        tail = abs(float(b)) * r ** (k + 1) / (1.0 - r)
        if tail < tol or not term:
            break
        if k > 100000:
            raise DivergentSeries("binomial series did not settle")
    return acc


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    algebra: str
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append({"check": name, "status": "pass" if ok else "fail",
                            "detail": detail})

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def failures(self):
        return [c["check"] for c in self.checks if c["status"] != "pass"]


def random_element(spec: AlgebraSpec, rng: random.Random, lo=-3, hi=3, den=3,
                   density=1.0) -> AlgebraElement:
    """Random element with small rational coefficients."""
    def draw():
        if rng.random() > density:
            return 0
        x = Q(rng.randint(lo, hi), rng.randint(1, den))
        if spec.field == COMPLEX:
            return QQi(x, Q(rng.randint(lo, hi), rng.randint(1, den)))
        return x
    return spec.element([draw() for _ in range(spec.dim)])


def validate_spec(spec: AlgebraSpec, samples: int = 100, seed: int = 0,
                  rel_tol: float = 1e-9) -> ValidationReport:
    """Check the algebra axioms exactly, plus a sampled N(a^dagger) = N(a)."""
    rep = ValidationReport(spec.name)
    n = spec.dim
    E = [spec.basis_element(k) for k in range(n)]
    e0 = E[0]
    bad = [k for k in range(n) if e0 * E[k] != E[k] or E[k] * e0 != E[k]]
    rep.add("identity", not bad, f"e_0 fails on {bad}" if bad else "")

    prods = [[E[i] * E[j] for j in range(n)] for i in range(n)]
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if prods[i][j] * E[k] != E[i] * prods[j][k]:
                    bad.append((i, j, k))
    rep.add("associativity", not bad,
            f"{len(bad)} failing triples, first {bad[0]}" if bad else "")

    D = [e.dagger() for e in E]
    bad = [(i, j) for i in range(n) for j in range(n)
           if prods[i][j].dagger() != D[j] * D[i]]
    rep.add("involution_anti_automorphism", not bad,
            f"{len(bad)} failing pairs, first {bad[0]}" if bad else "")
    bad = [k for k in range(n) if D[k].dagger() != E[k]]
    if spec.field == COMPLEX:
        ie = spec.scalar(QQi(0, 1))
        if ie.dagger().dagger() != ie:
            bad.append("i*e_0")
    rep.add("involution_order_two", not bad, f"fails on {bad}" if bad else "")

    ks = [spec.one_scalar, Q(-3, 2)]
    if spec.field == COMPLEX:
        ks.append(QQi(Q(1, 2), Q(-2)))
    bad = []
    for k in ks:
        a = spec.scalar(k)
        target = spec.scalar(scalars.abs2(k))
        if a * a.dagger() != target or a.dagger() * a != target:
            bad.append(str(k))
    rep.add("field_modulus", not bad, f"k k^dagger != |k|^2 for {bad}" if bad else "")

    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        a = random_element(spec, rng)
        na, nd = norm(a), norm(a.dagger())
        worst = max(worst, abs(na - nd) / max(1.0, na))
    rep.add("norm_dagger_invariance", worst <= rel_tol,
            f"max relative gap {worst:.3e} over {samples} samples")
    return rep
