import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hgw.catalog import FieldMatrix, build_bef_system
from hgw.cli.dsl import (DSLError, parse_matrix, parse_polynomial, parse_session, parse_tensor,
                         print_session, session_from_system)
from hgw.cli.main import EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, build_parser, resolve, run
from hgw.cli.schema import validate_report
from hgw.exact import Field, root_of_unity
from hgw.group_algebras import group_algebra_system
from hgw.ncalg.poly import NcPoly
from hgw.ncalg.presentation import free_algebra
from hgw.system import same_system, verify_system

BEF_SESSION = """
[session.main]
field = rational
degree_cap = 2

[matrix.I]
value = [1, 0; 0, 1]

[system.b]
family = bef
E = I
"""


def call(argv, environ=None):
    out = io.StringIO()
    code = run(argv, environ or {}, stdout=out)
    return code, out.getvalue()


def call_json(argv, environ=None):
    code, text = call(list(argv) + ["--report", "json"], environ)
    return code, json.loads(text)


# -- the stanza language ---------------------------------------------------------------

def test_empty_session():
    s = parse_session("")
    assert s.is_empty() and s.config.degree_cap == 3


@pytest.mark.parametrize("text,fragment", [
    ("[presentation.P]\ngenerators = a, b\nrelation = a*c\n", "unknown identifier"),
    ("[presentation.P]\ngenerators = a\n[morphism.f]\ndomain = Q\ncodomain = P\n", "unknown identifier"),
    ("[presentation.P]\ngenerators = a\n[morphism.f]\ndomain = P\ncodomain = P @ P\na -> a\n", "factor"),
    ("[presentation.P]\ngenerators = a\nrelation = a @ @ a\n", "line 3"),
    ("[session.main]\nfield = rational\n[presentation.P]\ngenerators = a\nrelation = xi*a\n", "field"),
    ("[presentation.P]\ngenerators = xi\n", "reserved"),
    ("[bogus.x]\nk = 1\n", "line 1"),
])
def test_dsl_errors_are_located(text, fragment):
    with pytest.raises(DSLError) as exc:
        parse_session(text)
    assert fragment in str(exc.value)
    assert exc.value.line >= 1 and exc.value.col >= 1


def test_bef_stanza_matches_builtin():
    s = parse_session(BEF_SESSION)
    I = FieldMatrix.identity(2)
    assert same_system(s.systems["b"], build_bef_system(I, I))
    assert s.config.degree_cap == 2


def test_print_parse_round_trip():
    text = BEF_SESSION + """
[presentation.P]
generators = a, b
relation = a*b - b*a
relation = a^2 - 1

[morphism.f]
domain = P
codomain = P @ P
a -> a @ a
b -> 1/2 b @ 1 + 1 @ b
"""
    s1 = parse_session(text)
    printed = print_session(s1)
    s2 = parse_session(printed)
    assert print_session(s2) == printed
    assert s2.presentations["P"].same_as(s1.presentations["P"])
    f1, f2 = s1.morphisms["f"], s2.morphisms["f"]
    assert {g: t.format() for g, t in f1.images.items()} == {g: t.format() for g, t in f2.images.items()}
    assert same_system(s1.systems["b"], s2.systems["b"])


def test_cyclotomic_round_trip():
    text = """
[session.main]
field = cyclotomic 5

[presentation.P]
generators = a, b
relation = a*b - xi^2*b*a
relation = a^5 - (1 + xi^-1)
"""
    s1 = parse_session(text)
    s2 = parse_session(print_session(s1))
    assert s2.config.cyclotomic_order == 5
    assert s2.presentations["P"].same_as(s1.presentations["P"])


def test_exported_system_round_trip():
    sys1 = group_algebra_system(2)
    text = session_from_system(sys1, "g")
    s = parse_session(text)
    assert s.systems["g"].A.carrier.same_as(sys1.A.carrier)
    assert verify_system(s.systems["g"], 3).verdict == verify_system(sys1, 3).verdict == "verified"


def test_parse_matrix_and_tensor():
    M = parse_matrix("[1, 1/2; xi, 0]", Field(3))
    assert M[1, 0] == root_of_unity(3, 1) and M.shape == (2, 2)
    P = free_algebra("P", ["a", "b"])
    t = parse_tensor("a @ b - b @ a", (P, P))
    assert len(t.terms) == 2


GENS = ["a", "b", "c"]


@st.composite
def polynomials(draw):
    P = free_algebra("P", GENS, Field(4))
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        word = tuple(draw(st.lists(st.integers(0, 2), max_size=3)))
        c = root_of_unity(4, draw(st.integers(0, 3))) * draw(st.integers(-3, 3))
        terms[word] = c
    return P, NcPoly(P.alphabet, terms)


@given(polynomials())
def test_polynomial_format_parse_round_trip(pp):
    P, poly = pp
    assert parse_polynomial(str(poly), P) == poly


# -- command line -----------------------------------------------------------------------

def test_check_system_low_cap_is_inconclusive():
    code, doc = call_json(["check-system", "prop24", "--degree-cap", "1"])
    assert code == EXIT_INCONCLUSIVE and doc["verdict"] == "inconclusive"


def test_rmatrix_symmetry_exit_code():
    code, doc = call_json(["rmatrix", "--m", "2", "--n", "2", "--p", "e12=1", "--check-symmetry",
                           "--check-trivial"])
    assert code == EXIT_OK and doc["verdict"] == "verified"
    assert doc["output"]


def test_check_system_grouplike():
    code, text = call(["check-system", "grouplike", "--order", "2"])
    assert code == EXIT_OK and "overall: verified" in text


def test_failed_check_gives_exit_two(tmp_path):
    f = tmp_path / "s.hgw"
    f.write_text("""
[presentation.P]
generators = a
relation = a^2 - 1

[morphism.bad]
domain = P
codomain = P
a -> 2 a
""")
    code, doc = call_json(["check-morphism", "bad", "--session", str(f)])
    assert code == EXIT_FAILED and doc["verdict"] == "failed"
    assert doc["checks"][0]["witness"]


@pytest.mark.parametrize("argv", [
    ["check-system", "nosuch"],
    ["check-system", "bef", "--E", "[1, 2; 2, 4]"],
    ["check-system", "bef", "--E", "[1, 0; 0, 1]", "--F", "[1, 0, 0; 0, 1, 0; 0, 0, 1]"],
    ["check-morphism", "f"],
    ["catalog", "XYZ"],
    ["catalog", "BEF", "E"],
    ["rmatrix", "--degree-cap", "0"],
])
def test_usage_errors_exit_one(argv):
    assert call(argv)[0] == EXIT_USAGE


def test_bad_flags_exit_one():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["check-system"])
    assert exc.value.code == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["check-system", "grouplike", "--order", "3"],
    ["rmatrix", "--check-symmetry"],
    ["cocycle"],
    ["represent"],
    ["catalog", "BEF", "E=[1, 0; 0, 1]", "--degree-cap", "2"],
    ["catalog", "Hmn", "m=2", "n=3", "alpha_cap=1", "--degree-cap", "2"],
    ["catalog", "HEF", "E=[2, 0; 0, 1/2]", "--degree-cap", "2"],
])
def test_reports_validate_against_schema(argv):
    code, doc = call_json(argv)
    validate_report(doc)
    assert code in (EXIT_OK, EXIT_INCONCLUSIVE)
    assert doc["session"]["command"] == argv[0]


def test_schema_command():
    code, text = call(["schema"])
    assert code == EXIT_OK and json.loads(text)["type"] == "object"


def test_settings_precedence(tmp_path):
    f = tmp_path / "s.hgw"
    f.write_text("[session.main]\ndegree_cap = 1\nalpha_cap = 1\n")
    args = build_parser().parse_args(["check-system", "bef", "--session", str(f)])
    assert resolve(args, {}).config.degree_cap == 1
    assert resolve(args, {"HGW_DEGREE_CAP": "2"}).config.degree_cap == 2
    args = build_parser().parse_args(["check-system", "bef", "--session", str(f), "--degree-cap", "4"])
    cfg = resolve(args, {"HGW_DEGREE_CAP": "2", "HGW_ALPHA_CAP": "5"}).config
    assert cfg.degree_cap == 4 and cfg.alpha_cap == 5


def test_bad_environment_value_exits_one():
    assert call(["rmatrix"], {"HGW_DEGREE_CAP": "many"})[0] == EXIT_USAGE


def test_json_reports_are_deterministic():
    argv = ["check-system", "bef", "--degree-cap", "2", "--report", "json"]
    a, b = call(argv), call(argv)
    assert a == b
    assert "seconds" not in a[1]


def test_print_session_command(tmp_path):
    f = tmp_path / "s.hgw"
    f.write_text(BEF_SESSION)
    code, text = call(["print-session", str(f)])
    assert code == EXIT_OK
    assert parse_session(text).systems["b"] is not None


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "hgw", "rmatrix", "--m", "2", "--n", "1",
                          "--p", "trivial", "--check-trivial"], capture_output=True, text=True)
    assert out.returncode == EXIT_OK
    assert "overall: verified" in out.stdout


def test_shipped_session_files_parse():
    from pathlib import Path
    files = sorted((Path(__file__).parent.parent / "scripts" / "sessions").glob("*.hgw"))
    assert files
    for f in files:
        s = parse_session(f.read_text())
        assert s.systems
