"""Monomial ideals in k[x_1..x_n] and their standard-monomial bases."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import InputError, NotArtinian

Monomial = tuple  # exponent vector of nonnegative ints


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_str(m: Monomial, names: str = "xyzw") -> str:
    if len(m) > len(names):
        names = [f"x{i + 1}" for i in range(len(m))]
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def minimalize(gens) -> tuple[Monomial, ...]:
    """Drop duplicates and every generator divisible by another one."""
    uniq = sorted(set(tuple(int(e) for e in g) for g in gens), key=lambda g: (sum(g), g))
    kept: list[Monomial] = []
    for g in uniq:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    num_vars: int
    generators: tuple[Monomial, ...]

    def __init__(self, num_vars: int, generators):
        if num_vars < 1:
            raise InputError("a monomial ideal needs at least one variable")
        gens = list(generators)
        for g in gens:
            if len(g) != num_vars:
                raise InputError(f"generator {tuple(g)} does not have {num_vars} exponents")
            if any(int(e) != e or e < 0 for e in g):
                raise InputError(f"generator {tuple(g)} has a negative or non-integer exponent")
        object.__setattr__(self, "num_vars", int(num_vars))
        object.__setattr__(self, "generators", minimalize(gens))

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def pure_powers(self) -> dict[int, int]:
        """Map variable index to the exponent of its pure-power generator."""
        out = {}
        for g in self.generators:
            support = [i for i, e in enumerate(g) if e]
            if len(support) == 1:
                out[support[0]] = g[support[0]]
        return out

    def __str__(self):
        return "(" + ", ".join(monomial_str(g) for g in self.generators) + ")"


def is_artinian(ideal: MonomialIdeal) -> bool:
    return len(ideal.pure_powers()) == ideal.num_vars


def quotient_basis(ideal: MonomialIdeal) -> list[list[Monomial]]:
    """Standard monomials grouped by degree, lexicographic within a degree.

    Lexicographic means x_1 > x_2 > ..., so ``x`` precedes ``y``; the list for
    degree ``d`` is at index ``d`` and the last list is nonempty.
    """
    if not is_artinian(ideal):
        missing = [i for i in range(ideal.num_vars) if i not in ideal.pure_powers()]
        raise NotArtinian(f"{ideal} is not Artinian: no pure power of variable(s) {missing}")
    bounds = ideal.pure_powers()
    ranges = [range(bounds[i]) for i in range(ideal.num_vars)]
    by_degree: dict[int, list[Monomial]] = {}
    for m in itertools.product(*ranges):
        if not ideal.contains(m):
            by_degree.setdefault(sum(m), []).append(m)
    top = max(by_degree)
    return [sorted(by_degree.get(d, []), reverse=True) for d in range(top + 1)]
