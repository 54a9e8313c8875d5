"""Hilbert-series predicates and the almost-centered condition.

Also houses executable checks relating these to extensions by truncated
polynomial rings M (x) k[y]/(y^m).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core.modules import GradedModule, HilbertSeries, as_form, extend_module, hilbert_series
from .errors import InternalInconsistency, NotSLP, NotTotallyOrdered
from .lefschetz import (CyclicDecomposition, CyclicSummand, PairCheck, PowerRanks,
                        decomposition_from_table, is_totally_ordered, rank_table, slp_check)


class Chain(enum.Enum):
    FIRST = "first"     # h_{i-1} <= h_{p-i} <= h_i for every i
    SECOND = "second"   # h_{p-i+1} <= h_i <= h_{p-i} for every i
    BOTH = "both"
    NEITHER = "neither"


@dataclass(frozen=True)
class ClassHVerdict:
    member: bool
    chain: Chain
    first_violation: int | None = None   # first i breaking the first chain
    second_violation: int | None = None  # first i breaking the second chain

    def __bool__(self):
        return self.member


def class_h_membership(h: HilbertSeries, from_zero: bool = True) -> ClassHVerdict:
    """Does ``h`` satisfy one of the two interleaving chains for all i?

    Indices run over 0 <= i <= floor(p/2) with h_{-1} = h_{p+1} = 0, so the
    i = 0 terms compare h_0 with h_p.  ``from_zero=False`` starts at i = 1;
    that range admits SLP modules such as k[x,y]/(x^4, x^2y, xy^6, y^7),
    h = (1,2,3,3,2,2,2), which satisfy the first chain yet are not almost
    centered.  An empty range counts as membership with ``Chain.BOTH``.
    """
    p = h.socle_degree
    first = second = None
    for i in range(0 if from_zero else 1, p // 2 + 1):
        if first is None and not (h[i - 1] <= h[p - i] <= h[i]):
            first = i
        if second is None and not (h[p - i + 1] <= h[i] <= h[p - i]):
            second = i
    if first is None and second is None:
        chain = Chain.BOTH
    elif first is None:
        chain = Chain.FIRST
    elif second is None:
        chain = Chain.SECOND
    else:
        chain = Chain.NEITHER
    return ClassHVerdict(chain is not Chain.NEITHER, chain, first, second)


def is_symmetric(h: HilbertSeries) -> bool:
    c = h.coeffs
    return c == c[::-1]


def _require_total(decomp: CyclicDecomposition) -> None:
    check = is_totally_ordered(decomp)
    if not check:
        a, b = check.witness
        raise NotTotallyOrdered(f"{tuple(a)} and {tuple(b)} are incomparable")


def is_almost_centered(decomp: CyclicDecomposition) -> PairCheck:
    """|L - R| <= 1 for every nested pair, on a totally ordered decomposition.

    For nested chains L - R equals the difference of their centers
    ``length + 2*shift``, so this is a bound on the spread of centers.  The
    witness is a pair realizing the lowest and highest center.
    """
    _require_total(decomp)
    s = decomp.summands
    lo = min(s, key=lambda x: x.center)
    hi = max(s, key=lambda x: x.center)
    if hi.center - lo.center <= 1:
        return PairCheck(True)
    return PairCheck(False, (lo, hi))


@dataclass(frozen=True)
class CenterProfile:
    centers: tuple[int, ...]
    p: int | None = None

    @property
    def min(self) -> int:
        return self.centers[0]

    @property
    def max(self) -> int:
        return self.centers[-1]

    @property
    def in_window(self) -> bool | None:
        """All centers within [p, p+2]; None when p is unknown."""
        if self.p is None:
            return None
        return self.p <= self.min and self.max <= self.p + 2


def center_profile(decomp: CyclicDecomposition, p: int | None = None) -> CenterProfile:
    if p is None and len(decomp):
        p = decomp.top_degree()
    return CenterProfile(tuple(sorted(s.center for s in decomp)), p)


def _slp_decomposition(module: GradedModule, form):
    pr = PowerRanks(module, form)
    verdict = slp_check(module, pr)
    if not verdict.holds:
        raise NotSLP(f"form ({pr.form}) fails at (a, d) = {verdict.failure}")
    return pr, decomposition_from_table(rank_table(module, pr))


def pickalpha_witness(module: GradedModule, form, i: int, j: int) -> CyclicSummand | None:
    """A chain explaining h_i < h_j, or None when h_i >= h_j.

    The witness covers degree j but not degree i: for i < j it starts after
    i, for j < i it stops before i, and in both cases its support contains
    j.  The bare start/end conditions without "covers j" admit spurious
    chains, e.g. (1,1) for (i,j) = (3,2) on k[x,y]/(x^2,xy,y^4).  A mismatch
    between the inequality and the existence of a chain raises
    InternalInconsistency.
    """
    _, decomp = _slp_decomposition(module, form)
    h = hilbert_series(module)
    hits = [s for s in decomp if i != j and s.covers(j) and not s.covers(i)]
    smaller = h[i] < h[j]
    if smaller != bool(hits):
        raise InternalInconsistency(f"h_{i}={h[i]}, h_{j}={h[j]} but chains {hits}")
    return hits[0] if hits else None


def extension_form(module: GradedModule, form) -> tuple:
    """Coefficients of l + y on M (x) k[y]/(y^m)."""
    return as_form(form, module).coefficients + (1,)


def extension_failure(module: GradedModule, form, m_max: int | None = None):
    """First (m, a, d) with l + y failing on M (x) k[y]/(y^m), or None."""
    _slp_decomposition(module, form)
    m_max = module.socle_degree + 2 if m_max is None else m_max
    ext_form = extension_form(module, form)
    for m in range(1, m_max + 1):
        verdict = slp_check(extend_module(module, m), ext_form)
        if not verdict.holds:
            return (m,) + verdict.failure
    return None


def minimal_failing_m(module: GradedModule, form, m_max: int | None = None) -> int | None:
    found = extension_failure(module, form, m_max)
    return None if found is None else found[0]


@dataclass(frozen=True)
class EquivalenceReport:
    in_h: bool
    almost_centered: bool
    extensions_all_pass: bool
    consistent: bool
    class_h: ClassHVerdict
    decomposition: CyclicDecomposition
    center_witness: tuple | None
    extension_failure: tuple[int, int, int] | None
    m_max: int


def theorem_310_report(module: GradedModule, form, m_max: int | None = None) -> EquivalenceReport:
    """Evaluate class-H membership, almost-centeredness and extension SLP.

    The extension verdict means "l + y passed for every m in 1..m_max".
    """
    _, decomp = _slp_decomposition(module, form)
    m_max = module.socle_degree + 2 if m_max is None else m_max
    h_verdict = class_h_membership(hilbert_series(module))
    ac = is_almost_centered(decomp)
    failure = extension_failure(module, form, m_max)
    triple = (h_verdict.member, ac.holds, failure is None)
    return EquivalenceReport(triple[0], triple[1], triple[2], len(set(triple)) == 1,
                            h_verdict, decomp, ac.witness, failure, m_max)
