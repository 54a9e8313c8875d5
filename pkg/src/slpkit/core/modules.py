"""Finite graded modules given by per-degree multiplication maps.

A :class:`GradedModule` stores, for each variable ``x_i`` and degree ``d``,
the matrix of ``x_i : M_d -> M_{d+1}`` (shape ``dims[d+1] x dims[d]``).
Modules are kept shift-normalized: ``dims[0] > 0`` always, and the degree of
the first nonzero component of the original module lives in ``shift``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from ..errors import (DegreeOutOfRange, FieldMismatch, InputError, InvalidM,
                      NonCommutingMaps, ShapeMismatch, ZeroModule)
from .fields import FieldSpec
from .ideals import Monomial, MonomialIdeal, quotient_basis
from .linalg import as_matrix, identity, matmul, zeros

QQ = FieldSpec(0)


@dataclass(frozen=True)
class HilbertSeries:
    coeffs: tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if not c or c[0] <= 0 or c[-1] <= 0 or min(c) < 0:
            raise ZeroModule(f"not a normalized Hilbert series: {c}")
        object.__setattr__(self, "coeffs", c)

    @property
    def socle_degree(self) -> int:
        return len(self.coeffs) - 1

    p = socle_degree

    def __getitem__(self, i: int) -> int:
        """h_i, with h_i = 0 outside 0..p."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def graded_coeffs(self) -> tuple[int, ...]:
        return (0,) * self.shift + self.coeffs

    def total(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple

    def __len__(self):
        return len(self.coefficients)

    def __str__(self):
        return ",".join(str(c) for c in self.coefficients)


def as_form(form, module: GradedModule) -> LinearForm:
    """Validate ``form`` against ``module`` and coerce its coefficients."""
    coeffs = form.coefficients if isinstance(form, LinearForm) else tuple(form)
    if len(coeffs) != module.num_vars:
        raise InputError(f"linear form has {len(coeffs)} coefficients, module has {module.num_vars} variables")
    coeffs = tuple(module.field.element(c) for c in coeffs)
    if not any(coeffs):
        raise InputError("the zero form is not a linear form")
    return LinearForm(coeffs)


@dataclass(frozen=True, eq=False)
class GradedModule:
    field: FieldSpec
    num_vars: int
    dims: tuple[int, ...]
    var_maps: tuple[tuple[np.ndarray, ...], ...] = dc_field(repr=False)
    labels: tuple[tuple[Monomial, ...], ...] | None = dc_field(default=None, repr=False)
    shift: int = 0

    @property
    def socle_degree(self) -> int:
        return len(self.dims) - 1

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def graded_dims(self) -> tuple[int, ...]:
        return (0,) * self.shift + self.dims

    def dim(self, d: int) -> int:
        return self.dims[d] if 0 <= d < len(self.dims) else 0


def _commute_check(field: FieldSpec, dims, maps) -> None:
    n = len(maps)
    for d in range(len(dims) - 2):
        for i in range(n):
            for j in range(i + 1, n):
                left = matmul(maps[i][d + 1], maps[j][d], field)
                right = matmul(maps[j][d + 1], maps[i][d], field)
                if not np.array_equal(left, right):
                    raise NonCommutingMaps(f"x{i + 1} and x{j + 1} do not commute from degree {d}")


def _small_int_maps(maps) -> bool:
    for per_var in maps:
        for m in per_var:
            for x in m.flat:
                if type(x) is not int or abs(x) > 1 << 20:
                    return False
    return True


def check_commuting(field: FieldSpec, dims, maps) -> None:
    """Raise NonCommutingMaps unless x_i x_j = x_j x_i on every degree."""
    if field.is_rational and _small_int_maps(maps):
        fast = [[m.astype(np.int64) for m in per_var] for per_var in maps]
        for d in range(len(dims) - 2):
            for i in range(len(fast)):
                for j in range(i + 1, len(fast)):
                    if not np.array_equal(fast[i][d + 1] @ fast[j][d], fast[j][d + 1] @ fast[i][d]):
                        raise NonCommutingMaps(f"x{i + 1} and x{j + 1} do not commute from degree {d}")
        return
    _commute_check(field, dims, maps)


def module_from_maps(field: FieldSpec, dims: Sequence[int], var_maps, labels=None,
                     shift: int = 0, check: bool = True) -> GradedModule:
    """Build a validated module from dimensions and per-variable maps.

    ``var_maps[i][d]`` is the matrix of ``x_i`` from degree ``d`` to ``d+1``
    (``dims[d+1]`` rows, ``dims[d]`` columns).  Leading and trailing zero
    degrees are stripped; leading ones are recorded in ``shift``.
    """
    dims = [int(x) for x in dims]
    if any(x < 0 for x in dims):
        raise ShapeMismatch("dimensions must be nonnegative")
    if not any(dims):
        raise ZeroModule("the zero module has no socle degree")
    var_maps = [list(per_var) for per_var in var_maps]
    num_vars = len(var_maps)
    if num_vars == 0:
        raise ShapeMismatch("at least one variable map sequence is required")
    lo = next(i for i, x in enumerate(dims) if x)
    hi = max(i for i, x in enumerate(dims) if x)
    maps = []
    for i, per_var in enumerate(var_maps):
        if len(per_var) < hi - lo and len(per_var) != len(dims) - 1:
            raise ShapeMismatch(f"variable {i + 1} has {len(per_var)} maps, need {len(dims) - 1}")
        fixed = []
        for d in range(len(dims) - 1):
            rows, cols = dims[d + 1], dims[d]
            raw = per_var[d] if d < len(per_var) else None
            if raw is None:
                if rows and cols:
                    raise ShapeMismatch(f"variable {i + 1} missing map at degree {d}")
                m = zeros(rows, cols)
            else:
                m = as_matrix(raw, rows, cols)
                if m.shape != (rows, cols):
                    raise ShapeMismatch(f"variable {i + 1}, degree {d}: shape {m.shape} != {(rows, cols)}")
                m = np.vectorize(field.element, otypes=[object])(m) if m.size else zeros(rows, cols)
            fixed.append(m)
        maps.append(fixed[lo:hi])
    dims = dims[lo:hi + 1]
    if check:
        check_commuting(field, dims, maps)
    if labels is not None:
        labels = tuple(tuple(level) for level in labels[lo:hi + 1])
    return GradedModule(field, num_vars, tuple(dims), tuple(tuple(m) for m in maps), labels, shift + lo)


def module_from_ideal(ideal: MonomialIdeal, field: FieldSpec = QQ) -> GradedModule:
    """The quotient R/I with its standard-monomial basis."""
    basis = quotient_basis(ideal)
    index = [{m: k for k, m in enumerate(level)} for level in basis]
    n = ideal.num_vars
    maps = []
    for i in range(n):
        per_degree = []
        for d in range(len(basis) - 1):
            m = zeros(len(basis[d + 1]), len(basis[d]))
            for col, mono in enumerate(basis[d]):
                target = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                row = index[d + 1].get(target)
                if row is not None:
                    m[row, col] = 1
            per_degree.append(m)
        maps.append(per_degree)
    dims = [len(level) for level in basis]
    check_commuting(field, dims, maps)
    return GradedModule(field, n, tuple(dims), tuple(tuple(m) for m in maps),
                        tuple(tuple(level) for level in basis), 0)


def hilbert_series(module: GradedModule) -> HilbertSeries:
    return HilbertSeries(module.dims, module.shift)


def mult_matrix(module: GradedModule, form, d: int) -> np.ndarray:
    """Matrix of multiplication by ``form`` from degree ``d`` to ``d+1``."""
    p = module.socle_degree
    if not 0 <= d <= p:
        raise DegreeOutOfRange(f"degree {d} outside 0..{p}")
    form = as_form(form, module)
    if d == p:
        return zeros(0, module.dims[p])
    out = zeros(module.dims[d + 1], module.dims[d])
    for c, per_var in zip(form.coefficients, module.var_maps):
        if c:
            out = out + c * per_var[d]
    if not module.field.is_rational:
        out = out % module.field.characteristic
    return out


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    if out.size:
        out[:, :] = np.kron(a, b)
    return out


def tensor_module(M: GradedModule, N: GradedModule) -> GradedModule:
    """M (x)_k N over the polynomial ring in the disjoint union of variables.

    Degree ``d`` has the basis of pairs ``(u, v)``, ordered by ``deg u``
    ascending, then ``u``, then ``v``.
    """
    if M.field != N.field:
        raise FieldMismatch(f"{M.field} vs {N.field}")
    P, Q = M.socle_degree, N.socle_degree
    top = P + Q
    # offsets[d][e]: start of the block M_e (x) N_{d-e} inside degree d
    offsets, dims = [], []
    for d in range(top + 1):
        off, pos = {}, 0
        for e in range(max(0, d - Q), min(d, P) + 1):
            off[e] = pos
            pos += M.dims[e] * N.dims[d - e]
        offsets.append(off)
        dims.append(pos)
    maps = []
    for i in range(M.num_vars):
        per_degree = []
        for d in range(top):
            m = zeros(dims[d + 1], dims[d])
            for e, c0 in offsets[d].items():
                if e + 1 > P or (e + 1) not in offsets[d + 1]:
                    continue
                r0 = offsets[d + 1][e + 1]
                block = _kron(M.var_maps[i][e], identity(N.dims[d - e]))
                m[r0:r0 + block.shape[0], c0:c0 + block.shape[1]] = block
            per_degree.append(m)
        maps.append(per_degree)
    for j in range(N.num_vars):
        per_degree = []
        for d in range(top):
            m = zeros(dims[d + 1], dims[d])
            for e, c0 in offsets[d].items():
                if d - e + 1 > Q:
                    continue
                r0 = offsets[d + 1][e]
                block = _kron(identity(M.dims[e]), N.var_maps[j][d - e])
                m[r0:r0 + block.shape[0], c0:c0 + block.shape[1]] = block
            per_degree.append(m)
        maps.append(per_degree)
    labels = None
    if M.labels is not None and N.labels is not None:
        labels = tuple(
            tuple(u + v for e in offsets[d] for u in M.labels[e] for v in N.labels[d - e])
            for d in range(top + 1))
    return GradedModule(M.field, M.num_vars + N.num_vars, tuple(dims),
                        tuple(tuple(m) for m in maps), labels, M.shift + N.shift)


def truncated_polynomial_module(m: int, field: FieldSpec = QQ) -> GradedModule:
    """k[y]/(y^m) as a graded module in one variable."""
    if m < 1:
        raise InvalidM(f"m must be a positive integer, got {m}")
    maps = []
    for _ in range(m - 1):
        one = zeros(1, 1)
        one[0, 0] = 1
        maps.append(one)
    labels = tuple(((k,),) for k in range(m))
    return GradedModule(field, 1, (1,) * m, (tuple(maps),), labels, 0)


def extend_module(M: GradedModule, m: int) -> GradedModule:
    """M (x)_k k[y]/(y^m); the new variable y is the last one."""
    if not isinstance(m, int) or m < 1:
        raise InvalidM(f"m must be a positive integer, got {m}")
    return tensor_module(M, truncated_polynomial_module(m, M.field))


def shift_module(M: GradedModule, j: int) -> GradedModule:
    if j < 0:
        raise InputError("shift must be nonnegative")
    return GradedModule(M.field, M.num_vars, M.dims, M.var_maps, M.labels, M.shift + j)


def chain_module(summands, field: FieldSpec = QQ) -> GradedModule:
    """Direct sum of truncated chains S(-i)/(t^d) in one variable t.

    Basis of each degree lists the chains covering it in the order given.
    """
    summands = [(int(i), int(d)) for i, d in summands]
    if not summands:
        raise ZeroModule("empty direct sum")
    top = max(i + d - 1 for i, d in summands)
    members = [[k for k, (i, d) in enumerate(summands) if i <= e <= i + d - 1] for e in range(top + 1)]
    maps = []
    for e in range(top):
        m = zeros(len(members[e + 1]), len(members[e]))
        for col, k in enumerate(members[e]):
            if k in members[e + 1]:
                m[members[e + 1].index(k), col] = 1
        maps.append(m)
    return module_from_maps(field, [len(x) for x in members], [maps], check=False)
