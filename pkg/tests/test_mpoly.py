from fractions import Fraction

import pytest

from groupforge.errors import ParseError
from groupforge.mpoly import MonomialOrder, MultiPoly, matrix_variables, parse_poly


VARS = ("x", "y", "z")


def test_parse_and_serialize_round_trip():
    for text in ["x^2+y-1", "2*x*y-1/2*z+3", "x", "-x+y", "1", "x^3-3*x*y*z+z^2"]:
        p = parse_poly(text, VARS)
        again = parse_poly(p.to_string(), VARS)
        assert p == again


def test_parse_rejects_unknown_variable():
    with pytest.raises(ParseError):
        parse_poly("x+w", VARS)


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_poly("x++y", VARS)
    with pytest.raises(ParseError):
        parse_poly("", VARS)
    with pytest.raises(ParseError):
        parse_poly("x^", VARS)


def test_grammar_variable_names():
    vars = ("T0", "T1", "x_1_1", "x_1_2", "y")
    p = parse_poly("T0*x_1_1^2-3*y+T1", vars)
    assert p.degree_in("x_1_1") == 2
    assert p.degree_in("y") == 1


def test_ring_ops():
    x = MultiPoly.variable(VARS, "x")
    y = MultiPoly.variable(VARS, "y")
    assert (x + y) * (x - y) == x * x - y * y
    assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1
    assert (x - x).is_zero


def test_eval_and_derivative():
    p = parse_poly("x^2*y-2*z", VARS)
    point = {"x": Fraction(2), "y": Fraction(3), "z": Fraction(1, 2)}
    assert p.eval(point) == Fraction(11)
    assert p.derivative("x").eval(point) == Fraction(12)
    assert p.derivative("z").eval(point) == Fraction(-2)


def test_grevlex_order():
    order = MonomialOrder.grevlex(3)
    # x^2 > x*y > y^2 > x*z > y*z > z^2 for x > y > z
    ranked = sorted([(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1),
                     (0, 0, 2)], key=order.key, reverse=True)
    assert ranked == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1),
                      (0, 0, 2)]


def test_lex_order():
    order = MonomialOrder.lex(2)
    assert order.key((1, 0)) > order.key((0, 5))


def test_elimination_order_blocks():
    order = MonomialOrder.elimination(3, [0])
    # any monomial containing the eliminated variable beats any without
    assert order.key((1, 0, 0)) > order.key((0, 7, 7))


def test_compose():
    tvars = ("T0", "T1")
    h = parse_poly("T0^2+T1^2-1", tvars)
    xvars = matrix_variables(2)
    mapping = {"T0": parse_poly("x_1_1", xvars), "T1": parse_poly("x_1_2", xvars)}
    assert h.compose(mapping, xvars) == parse_poly("x_1_1^2+x_1_2^2-1", xvars)


def test_rename_into_bigger_ring():
    small = ("a", "b")
    big = ("u_a", "a", "b", "c")
    p = parse_poly("a*b-2", small)
    q = p.rename(big)
    assert q.to_string() == "a*b-2"
    r = p.rename(big, {"a": "u_a"})
    assert r == parse_poly("u_a*b-2", big)


def test_canonical_string_ordering():
    p = parse_poly("1+x+x^2", VARS)
    assert p.to_string() == "x^2+x+1"
    q = parse_poly("y-x", VARS)
    assert q.to_string() == "-x+y"
