import pytest

from hecke_series.lang.parser import ParseError
from hecke_series.services import commands


class TestExpand:
    def test_dilogarithm(self):
        document = commands.expand("polylog(-2)", 4)
        assert document["expr"] == "polylog(-2)"
        assert document["ast"] == {"node": "PolyLog", "i": -2}
        assert document["series"] == {
            "shift": 1,
            "known_to": 4,
            "coeffs": [["1", "0"], ["1/4", "0"], ["1/9", "0"]],
        }

    def test_geometric(self):
        assert commands.expand("geom", 3)["series"]["coeffs"] == [["1", "0"]] * 3

    def test_parse_error(self):
        with pytest.raises(ParseError):
            commands.expand("U(2", 4)

    def test_order(self):
        with pytest.raises(ValueError):
            commands.expand("geom", 0)


class TestTransform:
    def test_dilogarithm_both(self):
        document = commands.transform("x^1*pFq([1,1,1],[2,2])", 2, "both", 40)
        assert document["agree"] is True
        assert document["first_mismatch"] is None
        assert document["normalized"]["c0"] == "1/4"
        assert document["normalized"]["upper"] == ["1", "1", "1"]
        assert document["normalized"]["lower"] == ["1", "2", "2"]

    def test_divisible_shift(self):
        document = commands.transform("x^6*pFq([1],[ ])", 3, "both", 20)
        assert document["agree"] is True
        assert document["transform"]["case_divides"] is True
        assert document["transform"]["output"]["shift"] == 2

    def test_termwise_only(self):
        document = commands.transform("geom + geom", 2, "termwise", 5)
        assert "transform" not in document
        assert document["termwise_series"]["coeffs"] == [["2", "0"]] * 5

    def test_closed_form_unavailable(self):
        with pytest.raises(commands.ClosedFormUnavailable):
            commands.transform("geom + geom", 2, "closed", 10)

    @pytest.mark.parametrize("n, mode", [(0, "both"), (2, "sideways")])
    def test_invalid_arguments(self, n, mode):
        with pytest.raises(ValueError):
            commands.transform("geom", n, mode, 10)


class TestEigen:
    def test_dilogarithm(self):
        document = commands.eigen("polylog(-2)", 5, 64)
        assert document["numeric"]["is_eigen"] is True
        assert document["numeric"]["eigenvalue"] == "1/25"
        assert document["class"]["label"] == "Polylog(2)"
        assert document["structural"]["eigenvalue"] == "1/25"
        assert document["structural"]["gamma_a"] == 3

    def test_geometric_literal(self):
        document = commands.eigen("pFq([1],[])", 2, 64)
        assert document["class"]["kind"] == "Geometric"
        assert document["numeric"]["eigenvalue"] == "1"

    def test_exponential_literal(self):
        document = commands.eigen("pFq([1],[1])", 2, 64)
        assert document["class"]["kind"] == "NotEigen"
        assert document["numeric"]["is_eigen"] is False

    def test_not_eigen_with_witness(self):
        document = commands.eigen("pFq([1/2],[ ])", 2, 64)
        assert document["numeric"]["is_eigen"] is False
        assert document["numeric"]["witness"] is not None

    def test_monomial_literal(self):
        document = commands.eigen("x^1*pFq([0],[])", 2, 64)
        assert document["class"]["kind"] == "Polynomial"
        assert document["structural"]["eigenvalue"] == "0"

    def test_without_closed_form(self):
        document = commands.eigen("geom + geom", 3, 16)
        assert document["numeric"]["eigenvalue"] == "1"
        assert document["class"] is None and document["structural"] is None

    def test_needs_n_at_least_two(self):
        with pytest.raises(ValueError):
            commands.eigen("geom", 1, 16)


class TestClassifyCm:
    def test_squares(self):
        document = commands.classify_cm("2,2", "1", 30)
        assert document["is_cm"] is True and document["exponent"] == 2
        assert document["b"] == ["1"]

    def test_dilogarithm(self):
        assert commands.classify_cm("1,1,1", "2,2", 30)["exponent"] == -2

    def test_half(self):
        document = commands.classify_cm("1/2", "", 8)
        assert document["is_cm"] is False
        assert document["witness"] == [2, 2]
        assert document["witness_values"] == {"c_mk": "5/16", "c_m_times_c_k": "1/4"}

    def test_lists(self):
        assert commands.classify_cm([2, 2], [1], 30)["exponent"] == 2

    def test_invalid_lower(self):
        with pytest.raises(ValueError):
            commands.classify_cm("1", "-2", 30)


class TestInner:
    def test_geometric(self):
        document = commands.inner("geom", "geom", 5, "1/2")
        assert document["sequence"] == ["1"] * 5
        assert document["unit"] == "2*pi*i"
        assert document["value"] == "341/256"

    def test_without_radius(self):
        assert "value" not in commands.inner("polylog(-1)", "geom", 3)


class TestVerify:
    def test_spectrum(self):
        document = commands.verify("spectrum", 1, 7, workers=1)
        assert document["passed"] is True
        assert document["suite"] == "spectrum"

    @pytest.mark.parametrize("suite, seed", [("nope", 1), ("algebra", -1), ("algebra", 2**64)])
    def test_invalid_arguments(self, suite, seed):
        with pytest.raises(ValueError):
            commands.verify(suite, 1, seed)
