import math

import numpy as np
import pytest

from bajra.errors import ExpressionError, UnknownMap
from bajra.expr import compile_expression
from bajra.registry import resolve_map


class TestCompileExpression:
    @pytest.mark.parametrize("text, x, expected", [
        ("x", 3.0, 3.0),
        ("x^2", 3.0, 9.0),
        ("2^3^2", 0.0, 512.0),
        ("-x^2", 3.0, -9.0),
        ("x^-1", 4.0, 0.25),
        ("1 + 2*x - x/4", 4.0, 8.0),
        ("(1 + x)*(1 - x)", 3.0, -8.0),
        ("ln(x)", math.e, 1.0),
        ("exp(2*x)", 0.5, math.e),
        ("x^1.5*ln(x)", 4.0, 8.0 * math.log(4.0)),
        ("1e-3*x", 2.0, 2e-3),
        ("ln", 1.0, 0.0),
        ("exp", 0.0, 1.0),
        ("--x", 2.0, 2.0),
    ])
    def test_values(self, text, x, expected):
        assert compile_expression(text)(np.array(x)) == pytest.approx(expected, rel=1e-15)

    def test_vectorised(self):
        fn = compile_expression("x^2 + 1")
        np.testing.assert_array_equal(fn(np.array([0.0, 1.0, 2.0])), [1.0, 2.0, 5.0])

    def test_constant_broadcasts(self):
        fn = compile_expression("3")
        assert np.shape(fn(np.array([1.0, 2.0]))) == (2,)

    @pytest.mark.parametrize("text", ["", "x +", "(x", "x)", "sin(x)", "y", "x $ 2", "ln x"])
    def test_rejects(self, text):
        with pytest.raises(ExpressionError):
            compile_expression(text)


class TestRegistry:
    @pytest.mark.parametrize("spec", ["gini:2,-1", "power:3", "hyperboloid", "quasi:ln",
                                      "quasi:x^2,0,10", "ratio:x,x^-1,0,inf"])
    def test_resolves(self, spec):
        assert resolve_map(spec).name == spec

    def test_power_is_gini_with_zero(self):
        assert resolve_map("power:2")(np.array([3.0])).tolist() == [9.0, 1.0]

    @pytest.mark.parametrize("spec", ["", "gini:1", "gini:a,b", "circle", "ratio:x,1", "hyperboloid:1"])
    def test_unknown(self, spec):
        with pytest.raises(UnknownMap):
            resolve_map(spec)
