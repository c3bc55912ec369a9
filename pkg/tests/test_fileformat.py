import pytest

from massey_tensors.dga import DegreeMismatch, NotASquareZeroDifferential
from massey_tensors.fileformat import ModelSyntaxError, parse, parse_class_expression, parse_map, serialize
from massey_tensors.models import (
    connected_sum_s2s6,
    nonformal_poincare_model,
    p3_model,
    p3_model_with_h3,
    quadratic_form_algebra,
    torus_algebra,
)


@pytest.mark.parametrize("build", [lambda: p3_model(3), lambda: p3_model_with_h3(2, 1), quadratic_form_algebra,
                                   connected_sum_s2s6, torus_algebra, nonformal_poincare_model])
def test_round_trip(build):
    m = build()
    text = serialize(m)
    m2 = parse(text)
    assert m2 == m
    assert serialize(m2) == text


def test_comments_and_blank_lines():
    m = parse("# sphere\n\ngen x 2   # the class\ngen y 3\ndiff y = x*x\ncap 6\n")
    assert m.cap == 6 and m.differential_terms("y") == [(1, ["x", "x"])]


def test_degree_mismatch_reports_the_line():
    with pytest.raises(DegreeMismatch, match="line 3"):
        parse("gen x 2\ngen y 5\ndiff y = x*x\n")


def test_square_zero_reports_the_line():
    with pytest.raises(NotASquareZeroDifferential, match="line 5"):
        parse("gen x 2\ngen y 3\ngen z 4\ndiff y = x*x\ndiff z = x*y\n")


@pytest.mark.parametrize("text,line", [("foo bar\n", 1), ("gen x\n", 1), ("gen x 2\ndiff q = x\n", 2),
                                       ("gen x 2\nbasis 2 a\n", 2), ("cap -1\n", 1), ("gen x 2\ndiff x = 1/0\n", 2)])
def test_syntax_errors(text, line):
    with pytest.raises(ModelSyntaxError) as info:
        parse(text)
    assert info.value.lineno == line


def test_orientation_expression():
    m = parse("basis 2 a\nbasis 4 t\nproduct a a = t\norient 4 3*h4_0\n")
    assert m.orientation == (4, (3,))
    m = parse("basis 2 a\nbasis 4 t\nproduct a a = t\norient 4\n")
    assert m.orientation == (4, (1,))


def test_class_expressions():
    assert parse_class_expression("2*h2_1 - h2_0", lambda k: 3) == (2, (-1, 2, 0))
    with pytest.raises(ValueError):
        parse_class_expression("h2_0 + h4_0", lambda k: 3)
    with pytest.raises(ValueError):
        parse_class_expression("h2_5", lambda k: 3)


def test_map_file():
    iso_map = parse_map("map identity\nmap h2_0 = h2_1\n", lambda k: 2, lambda k: 2)
    assert iso_map["identity"] and iso_map["columns"] == {(2, 0): (0, 1)}
    with pytest.raises(ModelSyntaxError):
        parse_map("map h2_0 = h4_0\n", lambda k: 2, lambda k: 2)


def test_cubic_differential_on_degree_three_generator():
    with pytest.raises(DegreeMismatch):
        parse("gen x1 2\ngen y 3\ndiff y = x1*x1*x1\n")


def test_empty_file_is_the_ground_field():
    from massey_tensors.dga import Cohomology

    coh = Cohomology(parse(""))
    assert coh.betti(0) == 1 and coh.top == 0


def test_exported_p3_has_b8_six():
    from massey_tensors.dga import Cohomology

    assert Cohomology(parse(serialize(p3_model(3)))).betti(8) == 6
