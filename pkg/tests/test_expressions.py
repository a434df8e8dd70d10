"""Expression grammar: parsing, precedence, evaluation on floats and jets."""

import math

import pytest

from lawcheck.expressions import (
    ExpressionError,
    compile_expression,
    compile_matrix,
    compile_vector,
)
from lawcheck.geometry import Jet


def ev(text, params=(), env=()):
    return compile_expression(text, list(params))(list(env))


def test_literals_and_constants():
    assert ev("2") == 2.0
    assert ev("2.5e-1") == 0.25
    assert ev(".5") == 0.5
    assert ev("pi") == math.pi


def test_precedence_and_parentheses():
    assert ev("2 + 3 * 4") == 14.0
    assert ev("(2 + 3) * 4") == 20.0
    assert ev("2 - 3 - 4") == -5.0
    assert ev("12 / 3 / 2") == 2.0
    assert ev("-2 ^ 2") == -4.0
    assert ev("2 * 3 ^ 2") == 18.0


def test_unary_minus_and_functions():
    assert ev("-sin(pi/2)") == pytest.approx(-1.0)
    assert ev("cos(0) - exp(0)") == 0.0
    assert ev("-x", ["x"], [3.0]) == -3.0
    assert ev("sin(x)*sin(x) + cos(x)*cos(x)", ["x"], [0.7]) == pytest.approx(1.0)


def test_negative_integer_power():
    assert ev("x ^ -2", ["x"], [2.0]) == 0.25


def test_parameters_positional():
    f = compile_expression("a*b - b/a", ["a", "b"])
    assert f([2.0, 6.0]) == 9.0


def test_jets_flow_through():
    f = compile_expression("sin(x)*y + x^2", ["x", "y"])
    jx, jy = Jet.variables([0.5, 2.0])
    out = f([jx, jy])
    assert out.v == pytest.approx(math.sin(0.5) * 2 + 0.25)
    assert out.g[0] == pytest.approx(math.cos(0.5) * 2 + 1.0)
    assert out.g[1] == pytest.approx(math.sin(0.5))


@pytest.mark.parametrize("bad", [
    "2 +", "sin(", "foo(3)", "x", "2 ** 3", "1 @ 2", "(1", "3 ^ x", "2 ^ 1.5",
])
def test_parse_errors(bad):
    with pytest.raises(ExpressionError):
        compile_expression(bad, ["y"])([1.0])


def test_vector_and_matrix_compilation():
    v = compile_vector(["x", "2*x"], ["x"])
    assert v([3.0]) == [3.0, 6.0]
    m = compile_matrix([["1", "0"], ["0", "x*x"]], ["x"])
    assert m([2.0]) == [[1.0, 0.0], [0.0, 4.0]]


def test_source_is_retained():
    f = compile_expression("x + 1", ["x"])
    assert f.source == "x + 1"
