from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cosetcodes import Code, Subspace, enumerate_grassmannian, gf
from cosetcodes.constructions import blueprint_3km3, blueprint_8_4_4
from cosetcodes.errors import ParseError
from cosetcodes.io import (
    format_blueprint,
    format_code,
    format_packing,
    format_report,
    parse_blueprint,
    parse_code,
    parse_packing,
    parse_report,
    read_code,
    write_code,
)
from cosetcodes.packing import greedy_decompose, parallelism_g42


@given(st.sampled_from([2, 3, 4, 5]), st.integers(3, 6), st.data())
def test_code_round_trip(q, n, data):
    field = gf(q)
    k = data.draw(st.integers(0, n))
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    members = []
    for r in rows:
        s = Subspace(field, np.array([r], dtype=np.int64).reshape(1, n), n)
        if s.dim:
            members.append(s)
    code = Code(field, n, members)
    back = parse_code(format_code(code, ["note"]))
    assert back.members == code.members and back.q == q and back.n == n and back.duplicates == 0


def test_code_file_round_trip(tmp_path):
    code = Code(gf(3), 4, list(enumerate_grassmannian(4, 2, 3))[:40])
    path = tmp_path / "c.code"
    write_code(code, path, ["made by a test"])
    assert "# made by a test" in path.read_text()
    assert read_code(path).members == code.members


def test_parse_reduces_and_counts_duplicates():
    text = "subspace-code q=2 n=4\n# dup\nk=2 1 1 0 0;0 1 0 0\nk=2 1 0 0 0;0 1 0 0  # same space\n"
    code = parse_code(text)
    assert len(code) == 1 and code.duplicates == 1
    assert code[0].to_text() == "1 0 0 0;0 1 0 0"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "k=1 1 0\n",
        "subspace-code q=6 n=3\n",
        "subspace-code q=2 n=3\nk=1 1 0\n",
        "subspace-code q=2 n=3\nk=2 1 0 0\n",
        "subspace-code q=2 n=3\nk=1 1 2 0\n",
        "subspace-code q=2 n=3\nk=2 1 0 0;1 0 0\n",
        "subspace-code q=2 n=3\nk=1 a b c\n",
        "subspace-code q=2 n=3\nrow 1 0 0\n",
    ],
)
def test_code_parse_errors(text):
    with pytest.raises(ParseError):
        parse_code(text)


def test_parse_error_mentions_location():
    with pytest.raises(ParseError, match=r"f\.code:3"):
        parse_code("subspace-code q=2 n=3\n\nk=1 1 2 0\n", "f.code")


def test_packing_round_trip():
    par = parallelism_g42(2)
    back = parse_packing(format_packing(par))
    assert [list(p) for p in back.parts] == [list(p) for p in par.parts]
    assert back.d == par.d and back.residual == []
    ground = Code(gf(2), 4, enumerate_grassmannian(4, 2, 2))
    pk = greedy_decompose(ground, 4, 2)
    back = parse_packing(format_packing(pk))
    assert back.modes == pk.modes and list(back.residual) == list(pk.residual)


@pytest.mark.parametrize(
    "text",
    [
        "not-a-packing q=2 n=4 d=4\n",
        "packing q=2 n=4\n[part 0]\n",
        "packing q=2 n=4 d=x\n",
        "packing q=2 n=4 d=4\nk=1 1 0 0 0\n",
        "packing q=2 n=4 d=4\n[other]\nk=1 1 0 0 0\n",
        "   \n",
    ],
)
def test_packing_parse_errors(text):
    with pytest.raises(ParseError):
        parse_packing(text)


@pytest.mark.parametrize("bp", [blueprint_8_4_4(), blueprint_3km3(4, 2), blueprint_3km3(4, 3)], ids=["844", "964-2", "964-3"])
def test_blueprint_round_trip(bp):
    back = parse_blueprint(format_blueprint(bp))
    assert (back.q, back.n, back.k, back.nprime, back.kprime, back.d) == (bp.q, bp.n, bp.k, bp.nprime, bp.kprime, bp.d)
    assert [list(a) for a in back.A] == [list(a) for a in bp.A]
    assert [list(b) for b in back.B] == [list(b) for b in bp.B]
    assert np.array_equal(np.asarray(back.F), np.asarray(bp.F))
    assert back.lam == bp.lam and back.size == bp.size


def test_blueprint_parse_errors():
    good = format_blueprint(blueprint_8_4_4())
    with pytest.raises(ParseError):
        parse_blueprint(good.replace("[B 0]", "[B 9]"))
    with pytest.raises(ParseError):
        parse_blueprint(good.replace("[F]", "[G]"))
    with pytest.raises(ParseError):
        parse_blueprint(good.replace(" nprime=4", ""))
    lines = good.splitlines()
    f_at = lines.index("[F]")
    lines[f_at + 1] = "1 0 1;0 1"
    with pytest.raises(ParseError):
        parse_blueprint("\n".join(lines))


@given(st.dictionaries(st.from_regex(r"[a-z][a-z_.]{0,8}", fullmatch=True), st.from_regex(r"[A-Za-z0-9,;.=-]{1,10}", fullmatch=True)))
def test_report_round_trip(items):
    assert parse_report(format_report(items)) == items


def test_report_ignores_comments_and_junk():
    assert parse_report("# c\nno equals sign\n a=1 \nb=x=y\n") == {"a": "1", "b": "x=y"}
