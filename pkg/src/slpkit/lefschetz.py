"""Rank tables, Lefschetz checks and graded cyclic decompositions.

For a linear form ``l`` acting on a graded module ``M`` the numbers

    r[d][a] = rank(l^a : M_d -> M_{d+a})

determine everything here.  The module splits over ``k[l]`` into truncated
chains ``S(-i)/(l^d)``, and the multiplicity of the chain starting in degree
``i`` with length ``d`` is a second difference of the rank table.
"""
from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple

import numpy as np

from .core.fields import FieldSpec
from .core.linalg import (MOD_PRIME, _INT64_SAFE, _rank_mod_python, bareiss_rank, identity,
                          integer_rows, matmul, matmul_mod, rank_mod, to_residues)
from .core.modules import GradedModule, LinearForm, as_form, chain_module, mult_matrix
from .errors import InternalInconsistency, NotTotallyOrdered


class CyclicSummand(NamedTuple):
    """The chain S(-shift)/(l^length), supported on degrees start..end."""

    shift: int
    length: int

    @property
    def start(self) -> int:
        return self.shift

    @property
    def end(self) -> int:
        return self.shift + self.length - 1

    @property
    def center(self) -> int:
        # twice the midpoint of the support interval, plus one
        return self.length + 2 * self.shift

    def covers(self, degree: int) -> bool:
        return self.start <= degree <= self.end

    def label(self, var: str = "l") -> str:
        head = "S" if self.shift == 0 else f"S(-{self.shift})"
        power = var if self.length == 1 else f"{var}^{self.length}"
        return f"{head}/({power})"


def _canonical(summands: Iterable) -> tuple[CyclicSummand, ...]:
    return tuple(sorted((CyclicSummand(int(i), int(d)) for i, d in summands),
                        key=lambda s: (s.shift, -s.length)))


@dataclass(frozen=True)
class CyclicDecomposition:
    """Multiset of cyclic summands in canonical order (shift up, length down)."""

    summands: tuple[CyclicSummand, ...]

    def __init__(self, summands: Iterable = ()):
        object.__setattr__(self, "summands", _canonical(summands))

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    def total_dim(self) -> int:
        return sum(s.length for s in self.summands)

    def top_degree(self) -> int:
        return max(s.end for s in self.summands)

    def cover_counts(self, top: int | None = None) -> tuple[int, ...]:
        top = self.top_degree() if top is None else top
        return tuple(sum(s.covers(e) for s in self.summands) for e in range(top + 1))

    def multiset(self) -> Counter:
        return Counter(self.summands)

    def pairs(self) -> list[tuple[int, int]]:
        return [tuple(s) for s in self.summands]

    def __str__(self):
        return "{" + ", ".join(f"({s.shift},{s.length})" for s in self.summands) + "}"


@dataclass(frozen=True)
class RankTable:
    p: int
    dims: tuple[int, ...]
    r: tuple[tuple[int, ...], ...]

    def __call__(self, d: int, a: int) -> int:
        """r[d][a], extended by 0 outside the stored range."""
        if d < 0 or d > self.p or a < 0:
            return 0
        if a >= len(self.r[d]):
            return 0
        return self.r[d][a]

    def full(self, d: int, a: int) -> int:
        return min(self.dims[d], self.dims[d + a] if d + a <= self.p else 0)


class PowerRanks:
    """Lazily computed ranks of l^a : M_d -> M_{d+a} with memoized powers.

    Over QQ each step map is scaled to an integer matrix (rank is invariant
    under nonzero scalars) and powers are first formed modulo ``MOD_PRIME``;
    a full modular rank is returned directly, anything less is recomputed
    with Bareiss on the exact integer power.
    """

    def __init__(self, module: GradedModule, form):
        self.module = module
        self.form = as_form(form, module)
        self.field = module.field
        self.p = module.socle_degree
        self.dims = module.dims
        steps = [mult_matrix(module, self.form, d) for d in range(self.p)]
        if self.field.is_rational:
            self.steps = [self._integerize(m) for m in steps]
            self.prime = MOD_PRIME
        else:
            self.steps = steps
            c = self.field.characteristic
            self.prime = c if c < _INT64_SAFE else None
        self.steps_mod = ([to_residues(m, self.prime) for m in self.steps]
                          if self.prime is not None else None)
        self._mod: dict[int, list[np.ndarray]] = {}
        self._exact: dict[int, list[np.ndarray]] = {}
        self._cache: dict[tuple[int, int], int] = {}

    @staticmethod
    def _integerize(m: np.ndarray) -> np.ndarray:
        den = 1
        for x in m.flat:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        return m * den if den != 1 else m

    def _power_mod(self, d: int, a: int) -> np.ndarray:
        chain = self._mod.setdefault(d, [np.eye(self.dims[d], dtype=np.int64)])
        while len(chain) <= a:
            k = len(chain)
            chain.append(matmul_mod(self.steps_mod[d + k - 1], chain[-1], self.prime))
        return chain[a]

    def _power_exact(self, d: int, a: int) -> np.ndarray:
        chain = self._exact.setdefault(d, [identity(self.dims[d])])
        while len(chain) <= a:
            k = len(chain)
            chain.append(matmul(self.steps[d + k - 1], chain[-1], self.field))
        return chain[a]

    def rank(self, d: int, a: int) -> int:
        if a == 0:
            return self.module.dim(d)
        if d < 0 or d > self.p or d + a > self.p:
            return 0
        key = (d, a)
        if key in self._cache:
            return self._cache[key]
        full = min(self.dims[d], self.dims[d + a])
        if self.prime is not None:
            r = rank_mod(self._power_mod(d, a), self.prime)
            if r != full and self.field.is_rational:
                r = bareiss_rank(self._power_exact(d, a).tolist())
        else:
            r = _rank_mod_python(integer_rows(self._power_exact(d, a)), self.field.characteristic)
        self._cache[key] = r
        return r

    def full(self, d: int, a: int) -> int:
        return min(self.module.dim(d), self.module.dim(d + a))


def rank_table(module: GradedModule, form) -> RankTable:
    """All ranks r[d][a] for 0 <= d <= p and 0 <= a <= p+1."""
    pr = form if isinstance(form, PowerRanks) else PowerRanks(module, form)
    p = pr.p
    r = tuple(tuple(pr.rank(d, a) for a in range(p + 2)) for d in range(p + 1))
    return RankTable(p, module.dims, r)


@dataclass(frozen=True)
class SLPVerdict:
    holds: bool
    failure: tuple[int, int] | None = None  # (a, d) of the first failing power map
    failures: tuple[tuple[int, int], ...] = ()
    rank: int | None = None  # rank at the first failure
    expected: int | None = None

    def __bool__(self):
        return self.holds


def slp_check(module: GradedModule, form, exhaustive: bool = False) -> SLPVerdict:
    """Is every l^a : M_d -> M_{d+a} of full rank?

    Cells are scanned in lexicographic (a, d) order and the first failure is
    reported; with ``exhaustive`` every failing cell is collected.  Powers
    with d + a > p land in the zero space and are never checked.
    """
    pr = form if isinstance(form, PowerRanks) else PowerRanks(module, form)
    p = pr.p
    failures = []
    first = None
    for a in range(1, p + 1):
        for d in range(0, p - a + 1):
            r = pr.rank(d, a)
            want = pr.full(d, a)
            if r != want:
                failures.append((a, d))
                if first is None:
                    first = (a, d, r, want)
                if not exhaustive:
                    return SLPVerdict(False, (a, d), ((a, d),), r, want)
    if first is None:
        return SLPVerdict(True)
    return SLPVerdict(False, first[:2], tuple(failures), first[2], first[3])


def wlp_check(module: GradedModule, form) -> bool:
    pr = PowerRanks(module, form)
    return all(pr.rank(d, 1) == pr.full(d, 1) for d in range(pr.p))


@dataclass(frozen=True)
class SLPSearch:
    """Outcome of a witness search.

    ``witness`` is None when no sampled form passed; that is evidence only,
    never a proof that the module lacks the property.
    """

    witness: LinearForm | None
    trials: int
    best_form: LinearForm | None = None
    best_failure: tuple[int, int] | None = None

    @property
    def found(self) -> bool:
        return self.witness is not None


def _candidate_forms(module: GradedModule, trials: int, seed, bound: int):
    n = module.num_vars
    yield (1,) * n
    rng = random.Random(seed)
    made = 1
    while made < trials:
        coeffs = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(module.field.element(c) for c in coeffs):
            made += 1
            yield coeffs


def find_slp_element(module: GradedModule, trials: int = 20, seed=0,
                     coefficient_bound: int = 10) -> SLPSearch:
    """Try the all-ones form, then seeded random integer forms in [-B, B]."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    best, best_fail = None, None
    used = 0
    for coeffs in _candidate_forms(module, trials, seed, coefficient_bound):
        used += 1
        if not any(module.field.element(c) for c in coeffs):
            continue
        form = as_form(coeffs, module)
        verdict = slp_check(module, form)
        if verdict.holds:
            return SLPSearch(form, used, form, None)
        if best_fail is None or verdict.failure > best_fail:
            best, best_fail = form, verdict.failure
    return SLPSearch(None, used, best, best_fail)


def multiplicities(table: RankTable) -> dict[tuple[int, int], int]:
    """n[i][d] = (r[i][d-1] - r[i][d]) - (r[i-1][d] - r[i-1][d+1])."""
    r = table
    out = {}
    for i in range(table.p + 1):
        for d in range(1, table.p - i + 2):
            n = (r(i, d - 1) - r(i, d)) - (r(i - 1, d) - r(i - 1, d + 1))
            if n < 0:
                raise InternalInconsistency(f"negative multiplicity {n} for chain ({i},{d})")
            if n:
                out[(i, d)] = n
    return out


def decomposition_from_table(table: RankTable) -> CyclicDecomposition:
    summands = []
    for (i, d), n in sorted(multiplicities(table).items()):
        summands.extend([(i, d)] * n)
    decomp = CyclicDecomposition(summands)
    if decomp.cover_counts(table.p) != tuple(table.dims):
        raise InternalInconsistency(
            f"decomposition {decomp} covers {decomp.cover_counts(table.p)}, dims are {table.dims}")
    return decomp


def cyclic_decomposition(module: GradedModule, form) -> CyclicDecomposition:
    """Decompose ``module`` over k[form]; the form need not be Lefschetz."""
    return decomposition_from_table(rank_table(module, form))


class Relation(enum.Enum):
    PRECEDES = "precedes"      # A is nested inside B
    SUCCEEDS = "succeeds"      # B is nested inside A
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class OrderVerdict:
    relation: Relation
    left_gap: int | None = None   # L: start of inner minus start of outer
    right_gap: int | None = None  # R: end of outer minus end of inner

    @property
    def comparable(self) -> bool:
        return self.relation is not Relation.INCOMPARABLE


def _nested(inner: CyclicSummand, outer: CyclicSummand) -> bool:
    return outer.start <= inner.start and inner.end <= outer.end


def compare_summands(A, B) -> OrderVerdict:
    """Compare two chains under interval containment of their supports."""
    A, B = CyclicSummand(*A), CyclicSummand(*B)
    if A == B:
        return OrderVerdict(Relation.EQUAL, 0, 0)
    if _nested(A, B):
        return OrderVerdict(Relation.PRECEDES, A.start - B.start, B.end - A.end)
    if _nested(B, A):
        return OrderVerdict(Relation.SUCCEEDS, B.start - A.start, A.end - B.end)
    return OrderVerdict(Relation.INCOMPARABLE)


@dataclass(frozen=True)
class PairCheck:
    holds: bool
    witness: tuple[CyclicSummand, CyclicSummand] | None = None

    def __bool__(self):
        return self.holds


def is_totally_ordered(decomp: CyclicDecomposition) -> PairCheck:
    s = decomp.summands
    for x in range(len(s)):
        for y in range(x + 1, len(s)):
            if not (_nested(s[x], s[y]) or _nested(s[y], s[x])):
                return PairCheck(False, (s[x], s[y]))
    return PairCheck(True)


def largest_summand(decomp: CyclicDecomposition) -> CyclicSummand:
    if not len(decomp):
        raise NotTotallyOrdered("empty decomposition has no largest summand")
    check = is_totally_ordered(decomp)
    if not check:
        raise NotTotallyOrdered(f"{check.witness[0]} and {check.witness[1]} are incomparable")
    # canonical order puts the earliest, then longest, chain first
    return decomp.summands[0]


def summand_module(summands, field: FieldSpec) -> GradedModule:
    """The abstract direct sum of chains, acted on by its single variable."""
    return chain_module(summands, field)
