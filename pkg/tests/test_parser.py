import pytest
from hypothesis import given, settings

from hecke_series.core.arith import GaussianRational
from hecke_series.lang.expr import (
    Euler,
    Geom,
    Hadamard,
    HypLit,
    PolyLog,
    Scale,
    Shift,
    Sum,
    UOp,
    VOp,
    format_expr,
    to_dict,
)
from hecke_series.lang.parser import ParseError, parse

from .strategies import exprs

q = GaussianRational.of


class TestParse:
    def test_operator_on_literal(self):
        assert parse("U(3) x^1*pFq([1,1,1],[2,2])") == UOp(
            3, HypLit(q(1), 1, (1, 1, 1), (2, 2))
        )

    def test_polylog(self):
        assert parse("polylog(-2)") == PolyLog(-2)

    def test_hadamard(self):
        assert parse("hadamard(polylog(-1), polylog(-1))") == Hadamard(PolyLog(-1), PolyLog(-1))

    def test_empty_lower_list_with_spaces(self):
        assert parse("pFq([1/2],[ ])") == HypLit(q(1), 0, (q("1/2"),), ())

    def test_scale_argument(self):
        lit = parse("x^1*(V(2) pFq([1/2],[3/2],scale=-1))")
        assert lit == Shift(1, VOp(2, HypLit(q(1), 0, (q("1/2"),), (q("3/2"),), q(-1))))

    def test_subtraction(self):
        assert parse("geom - geom") == Sum(Geom(), Scale(q(-1), Geom()))

    def test_sums_are_left_associative(self):
        assert parse("geom + polylog(1) + polylog(2)") == Sum(
            Sum(Geom(), PolyLog(1)), PolyLog(2)
        )

    def test_scalar_product(self):
        assert parse("1/2+1*i * U(2) geom") == Scale(q("1/2+1*i"), UOp(2, Geom()))

    def test_shift_of_non_literal(self):
        assert parse("x^2*geom") == Shift(2, Geom())

    def test_nested_shifts_fold_into_literal(self):
        assert parse("x^2*x^3*pFq([],[])").shift == 5

    def test_euler_power(self):
        assert parse("euler^2 geom") == Euler(2, Geom())
        assert parse("euler geom") == Euler(1, Geom())

    def test_whitespace(self):
        assert parse("  U ( 2 )   geom ") == UOp(2, Geom())


class TestErrors:
    def test_unclosed_operator(self):
        with pytest.raises(ParseError) as info:
            parse("U(2")
        assert info.value.byte_offset == 3
        assert info.value.expected == "')'"
        assert info.value.found == "end of input"

    def test_trailing_input(self):
        with pytest.raises(ParseError) as info:
            parse("geom geom")
        assert info.value.byte_offset == 5

    def test_invalid_lower_parameter(self):
        with pytest.raises(ParseError) as info:
            parse("geom + pFq([1],[0])")
        assert info.value.byte_offset == 16
        assert info.value.found == "'0'"

    def test_invalid_lower_parameter_points_at_offending_value(self):
        with pytest.raises(ParseError) as info:
            parse("pFq([1],[1/2, -3, 2])")
        assert info.value.byte_offset == 14
        assert info.value.found == "'-3'"

    def test_deep_parentheses(self):
        for text in ["(" * 400 + "geom" + ")" * 400, "(" * 400 + "geom"]:
            with pytest.raises(ParseError) as info:
                parse(text)
            assert info.value.byte_offset == 100
            assert info.value.expected == "nesting depth <= 100"

    def test_deep_operator_chain(self):
        with pytest.raises(ParseError) as info:
            parse("U(2) " * 500 + "geom")
        assert info.value.byte_offset == 500

    def test_deep_shifts_and_hadamards(self):
        with pytest.raises(ParseError):
            parse("x^1*" * 300 + "geom")
        with pytest.raises(ParseError):
            parse("hadamard(" * 300 + "geom")

    def test_moderate_nesting_parses(self):
        assert parse("(" * 50 + "geom" + ")" * 50) == Geom()
        assert parse("euler " * 50 + "geom") is not None

    def test_zero_operator_index(self):
        with pytest.raises(ParseError) as info:
            parse("V(0) geom")
        assert info.value.byte_offset == 2

    def test_zero_scale(self):
        with pytest.raises(ParseError):
            parse("pFq([1],[],scale=0)")

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse("1/0*geom")

    def test_unknown_word(self):
        with pytest.raises(ParseError) as info:
            parse("sin(x)")
        assert info.value.byte_offset == 0

    def test_offsets_count_bytes(self):
        with pytest.raises(ParseError) as info:
            parse("geom + é")
        assert info.value.byte_offset == 7
        with pytest.raises(ParseError) as info:
            parse("é")
        assert info.value.byte_offset == 0

    def test_is_a_value_error(self):
        with pytest.raises(ValueError):
            parse("")


class TestFormat:
    @pytest.mark.parametrize(
        "text",
        [
            "U(3) x^1*pFq([1,1,1],[2,2])",
            "hadamard(polylog(-1), polylog(-1))",
            "geom + polylog(-2)",
            "2*(geom + geom)",
            "x^1*(V(2) pFq([1/2],[3/2],scale=-1))",
            "euler^3 U(2) geom",
            "geom + (geom + geom)",
            "-1/2*i*U(4) (geom + x^2*geom)",
        ],
    )
    def test_canonical_text_parses_back(self, text):
        e = parse(text)
        assert parse(format_expr(e)) == e

    @given(exprs())
    @settings(max_examples=50)
    def test_generated_trees_round_trip(self, e):
        # Shifts of literals fold on the first parse.
        e1 = parse(format_expr(e))
        assert parse(format_expr(e1)) == e1
        assert format_expr(parse(format_expr(e1))) == format_expr(e1)

    def test_canonical_spacing(self):
        assert format_expr(parse("U(2)polylog(-2)")) == "U(2) polylog(-2)"
        assert format_expr(parse("x^1 * pFq( [1,1,1] , [2,2] )")) == "x^1*pFq([1,1,1],[2,2])"

    def test_to_dict(self):
        assert to_dict(parse("U(2) x^1*pFq([1],[2])")) == {
            "node": "UOp",
            "n": 2,
            "arg": {
                "node": "HypLit",
                "c0": "1",
                "shift": 1,
                "upper": ["1"],
                "lower": ["2"],
                "arg_scale": "1",
            },
        }
