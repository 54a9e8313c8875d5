from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from slpkit.core.fields import FieldSpec
from slpkit.core.ideals import MonomialIdeal
from slpkit.core.modules import HilbertSeries, extend_module, hilbert_series
from slpkit.errors import InconsistentDecomposition, ParseError
from slpkit.formats import (build_diagram, format_ideal, load_input, parse_ideal_file,
                            parse_ideal_text, render_diagram)
from slpkit.lefschetz import CyclicDecomposition, cyclic_decomposition

from conftest import small_ideals

DATA = Path(__file__).parent / "data"


class TestIdealFiles:
    def test_example_file(self):
        I = parse_ideal_file(DATA / "ex41.ideal")
        assert I == MonomialIdeal(2, [(2, 0), (1, 1), (0, 5)])

    def test_single_variable(self):
        assert parse_ideal_text("vars: 1\ngens:\n1\n") == MonomialIdeal(1, [(1,)])

    def test_negative_exponent(self):
        with pytest.raises(ParseError) as err:
            parse_ideal_file(DATA / "bad_exponent.ideal")
        assert (err.value.line, err.value.column) == (3, 3)
        assert "line 3, column 3" in str(err.value)

    @pytest.mark.parametrize("text,line", [
        ("vars: 2\ngens:\n1 x\n", 3),
        ("vars: 2\ngens:\n1 2 3\n", 3),
        ("gens:\n1 1\n", 1),
        ("vars: 2\n1 1\n", 2),
        ("vars: 0\ngens:\n", 1),
        ("vars: 2\nvars: 2\n", 2),
    ])
    def test_malformed(self, text, line):
        with pytest.raises(ParseError) as err:
            parse_ideal_text(text)
        assert err.value.line == line

    def test_missing_sections(self):
        with pytest.raises(ParseError):
            parse_ideal_text("")
        with pytest.raises(ParseError):
            parse_ideal_text("vars: 2\n")

    def test_json_and_comments(self):
        assert load_input(DATA / "ci35.json", FieldSpec(0)) == MonomialIdeal(2, [(3, 0), (0, 5)])
        text = "# header\n\nvars: 2   # two\ngens:\n  2 0\n0 2 # pure\n"
        assert parse_ideal_text(text) == MonomialIdeal(2, [(2, 0), (0, 2)])
        with pytest.raises(ParseError):
            parse_ideal_text('{"vars": 2, "gens": [[1, 1, 1]]}')

    def test_module_json(self):
        M = load_input(DATA / "module.json", FieldSpec(0))
        assert M.dims == (1, 2, 1)

    @given(small_ideals())
    def test_round_trip(self, I):
        assert parse_ideal_text(format_ideal(I)) == I


EX41_TABLE = """\
          | 1 | 2 | 1 | 1 | 1
----------+---+---+---+---+---
S/(l^5)   | 1 | 1 | 1 | 1 | 1
S(-1)/(l) | 0 | 1 | 0 | 0 | 0
"""


class TestDiagram:
    def test_example_first_table(self, ex41):
        decomp = cyclic_decomposition(ex41, (0, 1))
        d = build_diagram(decomp, hilbert_series(ex41))
        assert d.header == (1, 2, 1, 1, 1)
        assert d.rows == (("S/(l^5)", (1, 1, 1, 1, 1)), ("S(-1)/(l)", (0, 1, 0, 0, 0)))
        assert render_diagram(decomp, hilbert_series(ex41)) == EX41_TABLE

    def test_example_second_table(self, ex41):
        E = extend_module(ex41, 3)
        d = build_diagram(cyclic_decomposition(E, (0, 1, 1)), hilbert_series(E), var="z")
        assert d.header == (1, 3, 4, 4, 3, 2, 1)
        assert [label for label, _ in d.rows] == ["S/(z^7)", "S(-1)/(z^5)", "S(-1)/(z^3)", "S(-2)/(z^3)"]
        assert [row for _, row in d.rows] == [
            (1, 1, 1, 1, 1, 1, 1),
            (0, 1, 1, 1, 1, 1, 0),
            (0, 1, 1, 1, 0, 0, 0),
            (0, 0, 1, 1, 1, 0, 0),
        ]

    def test_singleton(self):
        d = build_diagram(CyclicDecomposition([(0, 1)]), HilbertSeries((1,)))
        assert d.header == (1,) and d.rows == (("S/(l)", (1,)),)

    def test_inconsistent(self):
        with pytest.raises(InconsistentDecomposition):
            build_diagram(CyclicDecomposition([(0, 2)]), HilbertSeries((1, 2)))

    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(1, 5)), min_size=1, max_size=6))
    def test_column_sums_and_order(self, pairs):
        D = CyclicDecomposition(pairs + [(0, 1)])
        h = HilbertSeries(D.cover_counts())
        d = build_diagram(D, h)
        rows = [r for _, r in d.rows]
        assert tuple(map(sum, zip(*rows))) == h.coeffs
        assert rows == sorted(rows, reverse=True)
