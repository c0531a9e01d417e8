import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittkit.endo import EndoClass, apply_operation, class_of, verschiebung_matrix
from wittkit.errors import DomainError, ParseError
from wittkit.expr import (
    Binary,
    PolyAtom,
    Unary,
    evaluate,
    parse,
    parse_matrix,
    parse_operation,
    render,
    to_source,
)
from wittkit.matrix import Matrix
from wittkit.rings import ZZ, parse_ring
from wittkit.sampling import random_expression

Z = parse_ring("Z")


def ev(src, ring="Z"):
    return evaluate(parse(src, parse_ring(ring)))


def test_binary_node_with_line_atoms():
    e = parse("mul (1-2r) (1-3r)", Z)
    assert isinstance(e, Binary) and e.op == "mul"
    assert isinstance(e.left, PolyAtom) and str(e.left.num) == "1 - 2r"
    assert isinstance(e.right, PolyAtom) and str(e.right.num) == "1 - 3r"
    assert parse("(1-2r) * (1-3r)", Z) == e


def test_fraction_atom():
    e = parse("(1+2r)/(1-r)", Z)
    assert isinstance(e, PolyAtom)
    assert str(e.den) == "1 - r"


def test_constant_term_must_be_one():
    with pytest.raises(DomainError, match="constant term must be 1"):
        parse("(2+r)", Z)


def test_precedence():
    # unary binds tighter than *, which binds tighter than +
    e = parse("neg (1+r) + (1+2r) * (1+3r)", Z)
    assert isinstance(e, Binary) and e.op == "add"
    assert isinstance(e.left, Unary) and e.right.op == "mul"
    assert render(ev("(1-2r) + (1-3r) * (1-5r)")) == "1 - 17r + 30r^2"


def test_evaluation_examples():
    assert render(ev("mul (1-2r) (1-3r)")) == "1 - 6r"
    assert render(ev("ghost 4 (1-2r)")) == "2 4 8 16"
    assert render(ev("mulplus (1+2r) (1+3r)")) == "1 + 6r"
    assert render(ev("frob 2 (1-3r)")) == "1 - 9r"
    assert render(ev("ver 2 (1-3r)")) == "1 - 3r^2"
    assert render(ev("lambda 2 ((1-2r)(1-3r))")) == "1 - 6r"
    assert render(ev("invol (1+2r)")) == "1 - 2r"
    assert render(ev("truncate 3 (1)/(1-r)")) == "1 + r + r^2 + r^3 + O(r^4)"
    assert render(ev("(1-r^2)/(1-r) == (1+r)")) == "true"
    assert render(ev("(1+2r) eq (1+3r)")) == "false"
    assert render(ev("[[0,1],[0,0]]")) == "rank 2, witt 1"
    assert render(ev("ver 2 [[3]]")) == "rank 2, witt 1 + 3r^2"
    assert render(ev("(1 - t r) * (1 - 2r)", "Z[t]")) == "1 - 2tr"
    assert render(ev("(1 + 3r)", "GF(5)")) == "1 + 3r"
    assert render(ev("(1 + 8r)", "GF(5)")) == "1 + 3r"


def test_structured_rendering():
    assert render(ev("(1+2r)/(1-r)"), True) == "kind witt\nnum 1 2\nden 1 -1"
    assert render(ev("[[3]]"), True) == "kind class\nrank 1\nnum 1 3\nden 1"
    assert render(ev("ghost 3 (1-2r)"), True) == "kind ghost\nvalues 2 4 8"
    assert render(ev("truncate 2 (1-2r)"), True) == "kind truncated\ncoeffs -2 0"
    assert render(ev("(1+r) == (1+r)"), True) == "kind bool\nvalue true"
    assert render(ev("(1 - 2tr + t^2 r)", "Z[t]"), True) == "kind witt\nnum 1 -2t+t^2\nden 1"


def test_unknown_variable_names_the_fix():
    with pytest.raises(DomainError, match=r"Z\[t\]"):
        parse("(1+tr)", Z)


def test_parse_error_offsets():
    with pytest.raises(ParseError) as info:
        parse("(1 - r) +", Z)
    assert info.value.offset == 9
    assert "(" in info.value.expected
    with pytest.raises(ParseError) as info:
        parse("(1-é r)", Z)
    assert info.value.offset == 3
    with pytest.raises(ParseError) as info:
        parse("éé x", Z)
    assert info.value.offset == 0
    with pytest.raises(ParseError) as info:
        parse("(1 - r) é", Z)
    assert info.value.offset == 8
    with pytest.raises(ParseError) as info:
        parse("2r", Z)
    assert info.value.offset == 1
    with pytest.raises(ParseError):
        parse("", Z)
    with pytest.raises(ParseError):
        parse("frob (1-r)", Z)


def test_byte_offsets_count_utf8_bytes():
    # a no-break space is whitespace but two bytes wide
    src = "(1 -\u00a0r) \u00e9"
    with pytest.raises(ParseError) as info:
        parse(src, Z)
    assert src.index("\u00e9") == 8
    assert info.value.offset == 9


def test_matrix_literals():
    m = parse_matrix("[[1, -2], [3, 4]]", Z)
    assert m == Matrix.of(ZZ, [[1, -2], [3, 4]])
    R = parse_ring("Z[t]")
    mt = parse_matrix("[[t^2 + 1, 0], [2t, t]]", R)
    assert mt.nrows == 2
    with pytest.raises(ParseError):
        parse_matrix("[[1,2],[3]]", Z)
    with pytest.raises(ParseError):
        parse_matrix("[[1,2]", Z)


def test_type_errors_are_domain_errors():
    with pytest.raises(DomainError):
        ev("(1+r) + [[1]]")
    with pytest.raises(DomainError):
        ev("ghost 2 [[1]]")
    with pytest.raises(DomainError):
        ev("frob 0 (1-r)")


def test_print_is_stable_on_examples():
    for src in ["mul (1-2r) (1-3r)", "(1+2r)/(1-r)", "neg (1+r) + (1+2r) * (1+3r)",
                "truncate 3 (1)/(1-r)", "ver 2 [[3]]", "(1+r) == (1+r)"]:
        once = to_source(parse(src, Z))
        assert to_source(parse(once, Z)) == once


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["Z", "Z[t]", "GF(5)", "Z/6", "Z[t][s]"]), st.randoms(use_true_random=False))
def test_print_parse_print_round_trip(sel, rnd):
    R = parse_ring(sel)
    e = random_expression(R, rnd)
    once = to_source(e)
    assert to_source(parse(once, R)) == once
    assert parse(once, R) == e


# --- operation language ----------------------------------------------------------

def test_operation_parser():
    a = Matrix.of(ZZ, [[3]])
    assert str(apply_operation(parse_operation("ver 2"), a)) == "rank 2, witt 1 + 3r^2"
    assert apply_operation(parse_operation("id"), a) == class_of(a)
    assert apply_operation(parse_operation("[[t^2]] - frob 2"), a) == EndoClass.zero(ZZ)
    assert apply_operation(parse_operation("compose (frob 2) (ver 2)"), a) == class_of(
        Matrix.of(ZZ, [[-3, 0], [0, -3]])
    )
    assert apply_operation(parse_operation("2 - id"), a) == class_of(a)
    assert apply_operation(parse_operation("[[0, -t], [1, 0]]"), a) == class_of(verschiebung_matrix(2, a))
    with pytest.raises(ParseError):
        parse_operation("frob")
    with pytest.raises(DomainError):
        parse_operation("ver 0")
