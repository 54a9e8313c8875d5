"""Ideal/module input files and the text diagram of a cyclic decomposition.

Ideal files are line oriented::

    # comments and blank lines are ignored
    vars: 2
    gens:
    2 0
    1 1
    0 5

A JSON object ``{"vars": 2, "gens": [[2, 0], [1, 1], [0, 5]]}`` is accepted
too, so ideals echoed in ``--json`` reports can be fed back in.  A JSON
object with ``dims`` and ``maps`` (``maps[i][d]`` is the matrix of ``x_i``
from degree d to d+1, entries ints or "a/b" strings) describes a module
directly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core.fields import FieldSpec
from .core.ideals import MonomialIdeal
from .core.modules import GradedModule, HilbertSeries, module_from_maps
from .errors import InconsistentDecomposition, ParseError
from .lefschetz import CyclicDecomposition


def _int_token(tok: str, line: int, col: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"expected a nonnegative integer, got {tok!r}", line, col) from None
    if value < 0:
        raise ParseError(f"exponent {value} is negative", line, col)
    return value


def _ideal_from_json(obj: dict) -> MonomialIdeal:
    try:
        n = int(obj["vars"])
        gens = [tuple(int(e) for e in g) for g in obj["gens"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad ideal object: {exc}") from None
    if n < 1:
        raise ParseError("vars must be positive")
    for g in gens:
        if len(g) != n:
            raise ParseError(f"generator {list(g)} should have {n} exponents")
        if min(g, default=0) < 0:
            raise ParseError(f"generator {list(g)} has a negative exponent")
    return MonomialIdeal(n, gens)


def parse_ideal_text(text: str) -> MonomialIdeal:
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return _ideal_from_json(obj)
    num_vars = None
    gens = []
    in_gens = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        key, sep, rest = body.partition(":")
        if sep and key.strip() == "vars":
            if num_vars is not None:
                raise ParseError("duplicate 'vars' field", lineno, col0)
            tok = rest.strip()
            num_vars = _int_token(tok, lineno, raw.index(tok) + 1 if tok else col0)
            if num_vars < 1:
                raise ParseError("vars must be positive", lineno, col0)
            continue
        if sep and key.strip() == "gens":
            if num_vars is None:
                raise ParseError("'gens:' must follow 'vars:'", lineno, col0)
            in_gens = True
            if rest.strip():
                raise ParseError("generators go on the lines after 'gens:'", lineno, col0)
            continue
        if not in_gens:
            raise ParseError(f"unexpected line {body!r}", lineno, col0)
        exps, pos = [], 0
        for tok in body.split():
            pos = raw.index(tok, pos)
            exps.append(_int_token(tok, lineno, pos + 1))
            pos += len(tok)
        if len(exps) != num_vars:
            raise ParseError(f"expected {num_vars} exponents, got {len(exps)}", lineno, col0)
        gens.append(tuple(exps))
    if num_vars is None:
        raise ParseError("missing 'vars:' field")
    if not in_gens:
        raise ParseError("missing 'gens:' section")
    return MonomialIdeal(num_vars, gens)


def parse_ideal_file(path) -> MonomialIdeal:
    return parse_ideal_text(Path(path).read_text())


def format_ideal(ideal: MonomialIdeal) -> str:
    lines = [f"vars: {ideal.num_vars}", "gens:"]
    lines += [" ".join(str(e) for e in g) for g in ideal.generators]
    return "\n".join(lines) + "\n"


def parse_module_json(obj: dict, field: FieldSpec) -> GradedModule:
    try:
        dims = obj["dims"]
        maps = obj["maps"]
    except KeyError as exc:
        raise ParseError(f"module object needs {exc}") from None
    return module_from_maps(field, dims, maps)


def load_input(path, field: FieldSpec):
    """An ideal or a module JSON from ``path``."""
    text = Path(path).read_text()
    if text.strip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if "dims" in obj:
            return parse_module_json(obj, field)
        return _ideal_from_json(obj)
    return parse_ideal_text(text)


@dataclass(frozen=True)
class Diagram:
    header: tuple[int, ...]
    rows: tuple[tuple[str, tuple[int, ...]], ...]
    title: str = ""


def build_diagram(decomp: CyclicDecomposition, h: HilbertSeries, var: str = "l",
                  title: str = "") -> Diagram:
    """One 0/1 row per chain, rows in descending lexicographic order."""
    header = h.coeffs
    p = h.socle_degree
    if any(s.end > p for s in decomp) or decomp.cover_counts(p) != header:
        raise InconsistentDecomposition(f"{decomp} does not add up to {header}")
    rows = [(s.label(var), tuple(int(s.covers(e)) for e in range(p + 1))) for s in decomp]
    rows.sort(key=lambda r: r[1], reverse=True)
    return Diagram(header, tuple(rows), title)


def render_diagram(decomp: CyclicDecomposition, h: HilbertSeries, var: str = "l",
                   title: str = "") -> str:
    d = build_diagram(decomp, h, var, title)
    width = max(len(str(x)) for x in d.header)
    lw = max([len(d.title)] + [len(label) for label, _ in d.rows])
    def line(label, cells):
        return f"{label:<{lw}} | " + " | ".join(f"{c:>{width}}" for c in cells)
    out = [line(d.title, d.header)]
    out.append("-" * (lw + 1) + "+" + "+".join("-" * (width + 2) for _ in d.header))
    out += [line(label, vec) for label, vec in d.rows]
    return "\n".join(x.rstrip() for x in out) + "\n"
