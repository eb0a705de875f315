from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pimanifold.catalog import build_f1_example, build_para_sasaki_example
from pimanifold.errors import ParseError, ValidationError
from pimanifold.pi_manifold import change_basis
from pimanifold.specfile import emit_para_sasaki_spec, emit_spec, format_combo, parse_spec, read_spec

from conftest import catalog_instances

HAND_WRITTEN = """\
pim 1
# the family at lambda = mu = 1, written by hand
n = 2
param lambda = 1
param mu = 1
bracket[0,1] = lambda*e2 - e3 + mu*e4
bracket[0,2] = -lambda*e1 - mu*e3 - e4
bracket[0,3] = -e1 + mu*e2 + lambda*e4
bracket[0,4] = -mu*e1 - e2 - lambda*e3
phi[1] = e3
phi[2] = e4
phi[3] = e1
phi[4] = e2
xi = e0
eta = 1 0 0 0 0
g = diag(1, 1, 1, 1, 1)
"""


def test_hand_written_file_gives_family():
    m = parse_spec(HAND_WRITTEN)
    assert m == build_para_sasaki_example(lam=1, mu=1)
    assert m.bracket(m.e(0), m.e(1)).tolist() == [0, 0, 1, -1, 1]


def test_overrides_replace_defaults():
    spec = read_spec(HAND_WRITTEN, {"lambda": Fraction(2), "mu": Fraction(-3)})
    assert spec.instance == build_para_sasaki_example(lam=2, mu=-3)
    assert spec.params == {"lambda": 2, "mu": -3}
    with pytest.raises(ParseError):
        read_spec(HAND_WRITTEN, {"nu": 1})


def test_round_trip_catalog():
    for m in catalog_instances():
        assert parse_spec(emit_spec(m)) == m, m.name


def test_round_trip_skew_frame():
    m = change_basis(build_f1_example(), [[1, 0, 0], [Fraction(1, 2), 1, 0], [0, 3, 1]])
    text = emit_spec(m)
    assert "g[0,1]" in text
    assert parse_spec(text) == m


@settings(max_examples=20, deadline=None)
@given(st.fractions(max_denominator=9), st.fractions(max_denominator=9))
def test_symbolic_emit_round_trip(lam, mu):
    text = emit_para_sasaki_spec(lam, mu)
    assert "lambda*e2 - e3 + mu*e4" in text
    assert parse_spec(text) == build_para_sasaki_example(lam=lam, mu=mu)


def test_entrywise_eta_and_metric():
    text = """pim 1
n = 1
phi[1] = e2
phi[2] = e1
xi = e0
eta[0] = 1
g[0,0] = 1
g[1,1] = 1
g[2,2] = 1
"""
    m = parse_spec(text)
    assert m.g_matrix.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_trace_failure_names_identity():
    text = """pim 1
n = 1
phi[1] = e1
phi[2] = e2
xi = e0
eta = 1 0 0
g = diag(1, 1, 1)
"""
    with pytest.raises(ValidationError) as exc:
        parse_spec(text)
    assert exc.value.failing == ["trace-phi"]


def test_singular_metric_is_a_validation_error():
    text = "pim 1\nn = 1\nphi[1] = e2\nphi[2] = e1\nxi = e0\neta = 1 0 0\ng = diag(1, 0, 1)\n"
    with pytest.raises(ValidationError) as exc:
        parse_spec(text)
    assert exc.value.failing == ["metric-invertible"]


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("pim 2\n", 1, 1),
        ("# only a comment\n", 1, 1),
        ("pim 1\nn = 1\nbracket[0,1] = 2*e5\n", 3, 16),
        ("pim 1\nn = 1\nbracket[0,1] = q*e1\n", 3, 16),
        ("pim 1\nn = 1\nxi = e0 e1\n", 3, 9),
        ("pim 1\nn = 1\nwhat = 3\n", 3, 1),
        ("pim 1\nn = 1\n  eta = 1 0\n", 3, 9),
        ("pim 1\nn = 1\nbracket[0,1] = e1\nbracket[1,0] = e2\n", 4, 1),
        ("pim 1\nn = 1\nbracket[0,3] = e1\n", 3, 1),
        ("pim 1\nn = 1\ng[0,0] = 1/0\n", 3, 10),
        ("pim 1\nn = x\n", 2, 5),
        ("pim 1\nn = 1\nparam e1 = 2\n", 3, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_format_combo():
    assert format_combo([]) == "0"
    assert format_combo([(Fraction(-1), 1), (Fraction(1, 2), 3)]) == "-e1 + 1/2*e3"
    assert format_combo([((-1, "mu"), 0)]) == "-mu*e0"
