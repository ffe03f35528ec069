import math

import numpy as np
import pytest

from app.core.errors import DomainError, ExprSyntaxError, UnknownIdentifier, VariableOutOfRange
from app.services.exprdsl import evaluate, grad, parse, to_source, value_and_grad, variables
from app.services.exprdsl.nodes import BinOp, Call, Neg, Num, Var

pytestmark = pytest.mark.unit


def test_precedence_and_associativity():
    assert parse("1+2*3", 0) == BinOp("+", Num(1.0), BinOp("*", Num(2.0), Num(3.0)))
    assert evaluate(parse("2^3^2", 0), []) == 512.0
    assert evaluate(parse("-2^2", 0), []) == -4.0
    assert evaluate(parse("8/4/2", 0), []) == 1.0
    assert evaluate(parse("2-3-4", 0), []) == -5.0


def test_variables_and_functions():
    e = parse("sin(x1)*x3 + sqrt(x2)", 3)
    assert variables(e) == {1, 2, 3}
    x = np.array([0.5, 4.0, 2.0])
    assert evaluate(e, x) == pytest.approx(math.sin(0.5) * 2.0 + 2.0)
    assert parse("pi", 0) != parse("3.14", 0)
    assert evaluate(parse("cos(pi)", 0), []) == pytest.approx(-1.0)


def _random_source(rng, depth):
    """Random well-formed source over x1..x3, unparenthesized where precedence allows."""
    if depth == 0 or rng.random() < 0.25:
        leaves = [
            f"x{int(rng.integers(1, 4))}",
            repr(int(rng.integers(0, 100)) / 10),
            "pi",
            f"{int(rng.integers(1, 10))}e-{int(rng.integers(1, 4))}",
        ]
        return leaves[int(rng.integers(len(leaves)))]
    sub = _random_source(rng, depth - 1)
    kind = int(rng.integers(5))
    if kind == 0:
        op = "+-*/"[int(rng.integers(4))]
        return f"{sub} {op} {_random_source(rng, depth - 1)}"
    if kind == 1:
        return f"({sub})"
    if kind == 2:
        return f"-{sub}"
    if kind == 3:
        fn = ("sin", "cos", "exp", "sqrt", "log")[int(rng.integers(5))]
        return f"{fn}({sub})"
    exponent = ("2", "3", "0.5", "-1", "(1/2)", "2^2")[int(rng.integers(6))]
    return f"({sub})^{exponent}"


_CORPUS_RNG = np.random.default_rng(20241018)
ROUND_TRIP_CORPUS = [
    "-(x1-3)^2/exp(x2) + log(x1*x2) - 1.5e-3",
    "2^3^2",
    "-x1^2",
    "x1 - x2 - x3",
    *(_random_source(_CORPUS_RNG, 4) for _ in range(46)),
]


@pytest.mark.parametrize("src", ROUND_TRIP_CORPUS)
def test_printer_output_reparses_to_the_same_tree(src):
    e = parse(src, 3)
    printed = to_source(e)
    assert parse(printed, 3) == e
    assert to_source(parse(printed, 3)) == printed


LINEAR_CASES = ["x1^2*x2", "sin(x1) + x3", "exp(x2/3)", "sqrt(x1*x1 + 1)", "log(x3 + 2)", "-pi*x2"]


def test_sum_evaluates_to_the_sum_of_evaluations(rng):
    exprs = [parse(src, 3) for src in LINEAR_CASES]
    for _ in range(20):
        x = rng.uniform(0.1, 2.0, 3)
        i, j = rng.integers(len(exprs), size=2)
        a, b = exprs[i], exprs[j]
        assert evaluate(BinOp("+", a, b), x) == evaluate(a, x) + evaluate(b, x)
        np.testing.assert_allclose(
            grad(BinOp("+", a, b), x), grad(a, x) + grad(b, x), rtol=1e-15, atol=0.0
        )


@pytest.mark.parametrize(
    "src, offset",
    [("1 +", 3), ("(x1", 3), ("x1 x2", 3), ("sin x1", 4), ("2 $ 3", 2), ("x1^x2", 3)],
)
def test_syntax_errors_carry_offset(src, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src, 2)
    assert info.value.offset == offset
    assert info.value.exit_code == 2


@pytest.mark.parametrize("src, offset", [("1 +\u00a02", 3), ("x1 + \u00e9", 5), ("\u0663 + 1", 0)])
def test_non_ascii_input_is_rejected_at_its_byte_offset(src, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src, 1)
    assert info.value.offset == offset
    assert len(src[:offset].encode()) == offset


def test_unknown_identifier_and_out_of_range_variable():
    with pytest.raises(UnknownIdentifier) as info:
        parse("1 + tan(x1)", 1)
    assert info.value.name == "tan" and info.value.offset == 4
    with pytest.raises(VariableOutOfRange) as oor:
        parse("x1 + x3", 2)
    assert oor.value.index == 3 and oor.value.offset == 5


@pytest.mark.parametrize(
    "src, x",
    [
        ("1/x1", [0.0]),
        ("sqrt(x1)", [-1.0]),
        ("log(x1)", [0.0]),
        ("x1^0.5", [-4.0]),
        ("x1^(-1)", [0.0]),
    ],
)
def test_domain_errors_in_evaluation(src, x):
    with pytest.raises(DomainError):
        evaluate(parse(src, 1), x)
    with pytest.raises(DomainError):
        grad(parse(src, 1), x)


def test_gradient_rejects_non_differentiable_points():
    with pytest.raises(DomainError):
        grad(parse("sqrt(x1)", 1), [0.0])
    with pytest.raises(DomainError):
        grad(parse("x1^0.5", 1), [0.0])
    assert evaluate(parse("sqrt(x1)", 1), [0.0]) == 0.0


def test_overflow_yields_infinity():
    assert math.isinf(evaluate(parse("exp(x1)", 1), [1000.0]))


def test_gradients_of_paper_objectives():
    f = parse("(x1-3)^2+(x2-4)^2+(x3-7)^2", 3)
    v, g = value_and_grad(f, [0.6, 0.8, 0.0])
    assert v == pytest.approx(2.4**2 + 3.2**2 + 49.0)
    np.testing.assert_allclose(g, [-4.8, -6.4, -14.0], atol=1e-14)


def test_constant_subexpressions_have_zero_gradient():
    np.testing.assert_array_equal(grad(parse("2^3 + pi", 2), [1.0, 2.0]), [0.0, 0.0])
    np.testing.assert_array_equal(grad(Neg(Var(2)), [1.0, 2.0]), [0.0, -1.0])


_RANDOM_EXPRESSIONS = [
    "x1*x2 + sin(x3)",
    "exp(x1/3) * cos(x2 - x3)",
    "(x1^2 + x2^2 + x3^2)^1.5",
    "log(1 + x1^2) - sqrt(2 + x2^2) * x3",
    "x1/(1 + x2^2) + x3^3",
    "-(x1 - x2)^4 / (3 + cos(x3))",
    "sin(x1*x2*x3) + exp(-x1^2)",
    "sqrt(x1^2 + 1)^3 - x2*x3/2",
    "(x1 + 2*x2 - x3)^2",
    "cos(x1)^2 + sin(x1)^2 + x2 - x3",
]


def test_gradient_matches_central_differences(rng):
    h = 1e-6
    for k in range(100):
        e = parse(_RANDOM_EXPRESSIONS[k % len(_RANDOM_EXPRESSIONS)], 3)
        x = rng.uniform(-1.5, 1.5, 3)
        fd = np.array(
            [
                (evaluate(e, x + h * np.eye(3)[i]) - evaluate(e, x - h * np.eye(3)[i])) / (2 * h)
                for i in range(3)
            ]
        )
        g = grad(e, x)
        scale = max(1.0, float(np.max(np.abs(g))))
        assert np.max(np.abs(g - fd)) / scale < 1e-6


def test_call_node_names():
    assert isinstance(parse("exp(x1)", 1), Call)
