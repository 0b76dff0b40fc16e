import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hecke_series.core.arith import ONE, ZERO, GaussianRational, int_pow
from hecke_series.core.errors import InvalidParameter, NotClosedForm
from hecke_series.core.hyper import polylog_term, to_series
from hecke_series.core.series import (
    common_order,
    first_mismatch,
    geometric,
    polylog_series,
    scale,
    truncate,
    u_apply,
)
from hecke_series.lang.evaluator import eval_series, eval_symbolic
from hecke_series.lang.parser import parse

from .strategies import closed_exprs

q = GaussianRational.of


def series_of(text, order):
    return eval_series(parse(text), order)


class TestEvalSeries:
    def test_geometric(self):
        assert series_of("geom", 4) == geometric(4)

    def test_u_of_dilogarithm(self):
        f = series_of("U(2) polylog(-2)", 10)
        assert f.known_to == 10
        assert f == scale(q("1/4"), polylog_series(-2, 10))

    def test_hadamard(self):
        assert series_of("hadamard(polylog(-1), polylog(-1))", 6) == polylog_series(-2, 6)

    def test_known_to_exactly_order(self):
        for text in ("geom", "V(3) geom", "x^7*pFq([1],[])", "U(5) x^2*geom", "euler^2 geom"):
            assert series_of(text, 9).known_to == 9

    def test_v_operator(self):
        assert series_of("V(3) geom", 7).coefficients_to(7) == [
            ONE, ZERO, ZERO, ONE, ZERO, ZERO, ONE
        ]

    def test_shift_beyond_order(self):
        f = series_of("x^7*pFq([1],[])", 5)
        assert f.is_zero() and f.known_to == 5

    def test_error_function_fixture(self):
        # x * sum (-1)^k x^(2k) (1/2)_k / ((3/2)_k k!): the Maclaurin series of
        # (sqrt(pi)/2) erf(x).
        f = series_of("x^1*(V(2) pFq([1/2],[3/2],scale=-1))", 8)
        assert f.coefficients_to(8) == [
            q(v) for v in ("0", "1", "0", "-1/3", "0", "1/10", "0", "-1/42")
        ]

    def test_sum_and_scale(self):
        f = series_of("geom - 2*geom", 5)
        assert f.coeffs == (q(-1),) * 5

    def test_euler_of_geometric(self):
        assert series_of("euler^2 geom", 6) == polylog_series(2, 6)

    @given(st.integers(1, 5), st.integers(-3, 3))
    def test_u_widens_its_argument(self, n, i):
        f = series_of(f"U({n}) polylog({i})", 12)
        assert f == scale(int_pow(q(n), i), polylog_series(i, 12))

    def test_order_must_be_positive(self):
        with pytest.raises(ValueError):
            series_of("geom", 0)


class TestEvalSymbolic:
    def test_transformed_dilogarithm(self):
        t = eval_symbolic(parse("U(2) x^1*pFq([1,1,1],[2,2])"))
        assert t.shift == 1
        expected = scale(q("1/4"), to_series(polylog_term(-2), 30))
        assert to_series(t, 30) == expected

    def test_polylog(self):
        t = eval_symbolic(parse("polylog(3)"))
        assert t.upper == (q(2),) * 3
        assert t.lower_full == (ONE,) * 3
        assert t.shift == 1

    def test_scale_and_shift(self):
        t = eval_symbolic(parse("3*x^2*geom"))
        assert t.c0 == q(3) and t.shift == 2

    @pytest.mark.parametrize(
        "text",
        [
            "geom + polylog(-2)",
            "hadamard(geom, geom)",
            "V(2) geom",
            "euler geom",
            "U(2) (geom + geom)",
        ],
    )
    def test_not_closed_form(self, text):
        with pytest.raises(NotClosedForm):
            eval_symbolic(parse(text))

    @pytest.mark.parametrize(
        "text",
        ["U(3) x^4*pFq([1/2,2],[5/3])", "U(2) U(3) polylog(-1)", "2*x^3*pFq([1],[],scale=-1/2)"],
    )
    def test_agrees_with_series(self, text):
        e = parse(text)
        assert to_series(eval_symbolic(e), 15) == truncate(
            eval_series(e, 40), eval_symbolic(e).shift + 15
        )

    def test_closed_form_of_u_matches_oracle(self):
        e = parse("U(4) x^3*pFq([1/3],[1/2])")
        inner = eval_symbolic(parse("x^3*pFq([1/3],[1/2])"))
        oracle = u_apply(4, to_series(inner, 80))
        assert to_series(eval_symbolic(e), 10) == truncate(oracle, eval_symbolic(e).shift + 10)

    @given(closed_exprs())
    @settings(max_examples=30)
    def test_generated_closed_forms_agree_with_series(self, e):
        try:
            t = eval_symbolic(e)
        except InvalidParameter:
            assume(False)
        closed, direct = to_series(t, 40), eval_series(e, 40)
        assert first_mismatch(closed, direct, common_order(closed, direct)) is None
