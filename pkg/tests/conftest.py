"""Shared helpers and independent oracles for the test suite."""
from fractions import Fraction

import pytest

from slpkit.core.fields import FieldSpec
from slpkit.core.ideals import MonomialIdeal
from slpkit.core.modules import module_from_ideal, mult_matrix

QQ = FieldSpec(0)


def ideal(*gens):
    return MonomialIdeal(len(gens[0]), gens)


def module(*gens, field=QQ):
    return module_from_ideal(ideal(*gens), field)


def fraction_rank(rows, p=0):
    """Plain Gauss-Jordan over Fractions (or residues mod p)."""
    if p:
        m = [[int(x) % p for x in r] for r in rows]
    else:
        m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(int(m[rank][c]), -1, p) if p else 1 / m[rank][c]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [(a - f * b) % p if p else a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def global_operator(M, form):
    """Multiplication by ``form`` on all of M as one square Fraction matrix."""
    offsets = [0]
    for n in M.dims:
        offsets.append(offsets[-1] + n)
    N = offsets[-1]
    L = [[Fraction(0)] * N for _ in range(N)]
    for d in range(M.socle_degree):
        block = mult_matrix(M, form, d)
        for i in range(block.shape[0]):
            for j in range(block.shape[1]):
                L[offsets[d + 1] + i][offsets[d] + j] = Fraction(block[i, j])
    return L, offsets


def _mul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def jordan_oracle(M, form):
    """Graded Jordan type from powers of the global operator.

    Chains starting in degree i with length d are counted from ranks of the
    (i -> i+k) blocks of L^k; the ungraded block sizes from rank(L^k) are
    returned alongside so callers can cross-check both.
    """
    L, off = global_operator(M, form)
    N = len(L)
    p = M.socle_degree
    powers = [[[Fraction(int(i == j)) for j in range(N)] for i in range(N)]]
    for _ in range(p + 2):
        powers.append(_mul(powers[-1], L))

    def r(d, a):
        if d < 0 or d > p or d + a > p:
            return 0
        P = powers[a]
        block = [row[off[d]:off[d + 1]] for row in P[off[d + a]:off[d + a + 1]]]
        return fraction_rank(block) if block and block[0] else 0

    chains = []
    for i in range(p + 1):
        for d in range(1, p - i + 2):
            n = (r(i, d - 1) - r(i, d)) - (r(i - 1, d) - r(i - 1, d + 1))
            assert n >= 0
            chains += [(i, d)] * n
    global_ranks = [fraction_rank(P) for P in powers]
    sizes = []
    for k in range(1, p + 2):
        at_least_k = global_ranks[k - 1] - global_ranks[k]
        at_least_k1 = global_ranks[k] - global_ranks[k + 1]
        sizes += [k] * (at_least_k - at_least_k1)
    return sorted(chains), sorted(sizes)


@pytest.fixture
def ex41():
    return module((2, 0), (1, 1), (0, 5))


def small_ideals(max_vars=3, max_power=5):
    """Hypothesis strategy: Artinian monomial ideals with a few extra generators."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_vars))
        gens = []
        for i in range(n):
            e = [0] * n
            e[i] = draw(st.integers(1, max_power))
            gens.append(tuple(e))
        extra = draw(st.lists(st.lists(st.integers(0, max_power - 1), min_size=n, max_size=n),
                              max_size=3))
        gens += [tuple(g) for g in extra if any(g)]
        return MonomialIdeal(n, gens)

    return build()


# one PASS/FAIL line per acceptance criterion, printed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
