"""Decomposition-level tensor formulas, complete intersections, char p."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core.fields import FieldSpec
from .core.ideals import MonomialIdeal, is_artinian
from .core.modules import (QQ, HilbertSeries, LinearForm, as_form, hilbert_series,
                           module_from_ideal, tensor_module)
from .errors import InputError, InternalInconsistency, InvalidExponent, NotArtinian, NotSymmetric
from .lefschetz import (CyclicDecomposition, CyclicSummand, SLPVerdict, find_slp_element,
                        slp_check)
from .structure import is_symmetric


def cyclic_tensor(a, b) -> list[CyclicSummand]:
    """Clebsch-Gordan rule for two chains under the sum of their operators.

    S(-i)/(l^d) (x) S(-j)/(y^e) over k[l + y] splits as the chains
    (i + j + h, d + e - 1 - 2h) for 0 <= h < min(d, e).
    """
    (i, d), (j, e) = a, b
    if d < 1 or e < 1:
        raise InputError("chain lengths must be positive")
    out = [CyclicSummand(i + j + h, d + e - 1 - 2 * h) for h in range(min(d, e))]
    if sum(s.length for s in out) != d * e:
        raise InternalInconsistency(f"({i},{d}) x ({j},{e}) lost dimension")
    return out


def extension_decomposition(decomp: CyclicDecomposition, m: int) -> CyclicDecomposition:
    """Decomposition of M (x) k[y]/(y^m) over k[l + y] from that of M."""
    if m < 1:
        raise InputError("m must be positive")
    out = []
    for s in decomp:
        out.extend(cyclic_tensor(s, (0, m)))
    result = CyclicDecomposition(out)
    if result.total_dim() != m * decomp.total_dim():
        raise InternalInconsistency("extension changed total dimension")
    return result


@dataclass(frozen=True)
class TensorPlan:
    left: CyclicDecomposition
    right: CyclicDecomposition
    result: CyclicDecomposition
    expansions: tuple  # ((left summand, right summand), chains) per pair


def decomposition_tensor(A: CyclicDecomposition, B: CyclicDecomposition) -> TensorPlan:
    expansions = []
    out = []
    for a in A:
        for b in B:
            chains = tuple(cyclic_tensor(a, b))
            expansions.append(((a, b), chains))
            out.extend(chains)
    result = CyclicDecomposition(out)
    if result.total_dim() != A.total_dim() * B.total_dim():
        raise InternalInconsistency("tensor changed total dimension")
    return TensorPlan(A, B, result, tuple(expansions))


def monomial_ci(exponents: Sequence[int]) -> MonomialIdeal:
    """The ideal (x_1^a_1, ..., x_n^a_n)."""
    exps = [int(a) for a in exponents]
    if not exps or any(a < 1 for a in exps):
        raise InvalidExponent(f"exponents must be positive integers, got {list(exponents)}")
    n = len(exps)
    return MonomialIdeal(n, [tuple(a if k == i else 0 for k in range(n)) for i, a in enumerate(exps)])


@dataclass(frozen=True)
class SymmetricTensorVerdict:
    holds: bool
    symmetric: bool
    witness: LinearForm | None
    hilbert: HilbertSeries
    factor_witnesses: tuple
    sum_witness: bool = False  # the sum of the factor witnesses passed


def iterated_symmetric_tensor(ideals: Sequence[MonomialIdeal], field: FieldSpec = QQ,
                              seed=0, trials: int = 20) -> SymmetricTensorVerdict:
    """Tensor together quotients of k[x,y] with symmetric Hilbert functions.

    The candidate witness is the sum of witnesses of the factors; a seeded
    random search is the fallback.
    """
    if not ideals:
        raise InputError("at least one ideal is required")
    modules, witnesses = [], []
    for ideal in ideals:
        if ideal.num_vars != 2:
            raise InputError(f"{ideal} is not an ideal of k[x,y]")
        if not is_artinian(ideal):
            raise NotArtinian(str(ideal))
        mod = module_from_ideal(ideal, field)
        if not is_symmetric(hilbert_series(mod)):
            raise NotSymmetric(f"R/{ideal} has Hilbert function {mod.dims}")
        search = find_slp_element(mod, trials=trials, seed=seed)
        modules.append(mod)
        witnesses.append(search.witness)
    product = modules[0]
    for mod in modules[1:]:
        product = tensor_module(product, mod)
    h = hilbert_series(product)
    witness = None
    if all(w is not None for w in witnesses):
        candidate = as_form(sum((w.coefficients for w in witnesses), ()), product)
        if slp_check(product, candidate).holds:
            witness = candidate
    summed = witness is not None
    if witness is None:
        witness = find_slp_element(product, trials=trials, seed=seed).witness
    return SymmetricTensorVerdict(witness is not None, is_symmetric(h), witness, h,
                                  tuple(witnesses), summed)


def char_p_slp(ideal: MonomialIdeal, p: int, form, exhaustive: bool = False) -> SLPVerdict:
    """SLP check of R/I over F_p with the given form."""
    field = FieldSpec.prime(p)
    module = module_from_ideal(ideal, field)
    return slp_check(module, as_form(form, module), exhaustive=exhaustive)
