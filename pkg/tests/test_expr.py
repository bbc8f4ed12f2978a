import pytest
from hypothesis import given, strategies as st

from skewps import laurent as lau
from skewps import series as ser
from skewps.expr import (
    Add, Inv, Mul, Neg, Num, ParseError, Pow, Sub, Sym, Z, as_series, evaluate, evaluate_text,
    parse_expr, to_text,
)
from skewps.rings import PolyRing, ring_from_id

DT = PolyRing("dt")


def test_two_terms():
    node = parse_expr("t*z + z^2", DT)
    assert node == Add(Mul(Sym("t"), Z()), Pow(Z(), 2))


def test_inverse_node():
    assert parse_expr("inv(1 + z*t)") == Inv(Add(Num("1"), Mul(Z(), Sym("t"))))


def test_negative_exponent():
    node = parse_expr("z^-1 * t")
    assert node == Mul(Pow(Z(), -1), Sym("t"))
    assert evaluate(node, DT, 5).valuation == -1
    assert parse_expr("z^(-2)") == Pow(Z(), -2)


def test_precedence():
    # ^ binds tighter than unary minus, which binds tighter than *
    assert parse_expr("-z^2") == Neg(Pow(Z(), 2))
    assert parse_expr("-t*z") == Mul(Neg(Sym("t")), Z())
    assert parse_expr("1 - t - z") == Sub(Sub(Num("1"), Sym("t")), Z())


def test_big_o_caps_precision():
    v = evaluate_text("1 + z + O(z^3)", DT, 8)
    assert v.precision == 3


def test_fractions():
    v = evaluate_text("1/2*t", DT, 3)
    assert v.coeff(0) == DT.mul(DT.scalar("1/2"), DT.t())
    assert parse_expr("2/4") == Num("1/2")


@pytest.mark.parametrize("text,line,col", [
    ("t*(z", 1, 5),
    ("1 +\n  )", 2, 3),
    ("t $ z", 1, 3),
    ("z^t", 1, 3),
    ("O(t)", 1, 3),
])
def test_error_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_unknown_literal():
    with pytest.raises(ParseError, match="unknown literal"):
        parse_expr("s*z", DT)
    parse_expr("e1*x*z", ring_from_id("k4_quotient"))


def test_inverse_matches_series_invert():
    v = evaluate_text("inv(1 + z*t)", DT, 6)
    f = ser.series(DT, {0: DT.one, 1: DT.t()}, 6)
    assert as_series(v) == ser.invert(f)


def test_as_series_rejects_laurent():
    assert as_series(evaluate_text("z^-1", DT, 4)) is None


_atoms = st.sampled_from([Num("1"), Num("3"), Num("2/3"), Sym("t"), Z()])


def _trees(children):
    return st.one_of(
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(-3, 4)),
        st.builds(Inv, children),
    )


@given(st.recursive(_atoms, _trees, max_leaves=8))
def test_print_parse_roundtrip(node):
    text = to_text(node)
    assert parse_expr(text) == node
    assert to_text(parse_expr(text)) == text


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_z_power_laws(a, b):
    v = evaluate_text(f"z^{a}*z^{b}", DT, 6)
    assert v == lau.laurent_z_power(DT, a + b, 6)
