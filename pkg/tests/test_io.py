from __future__ import annotations

import pytest

from conftest import DATA, csystem
from csysmod.congruence import EqDB
from csysmod.judgement_io import JudgementFileError, format_judgements, parse_judgements, read_judgements
from csysmod.subsystem import Bounds, close, epsilon_db

OPTION = csystem("option")


def test_parse_each_line_kind():
    text = "\n".join([
        "# a comment",
        "ctx: <empty>",
        "ctx: * ; #1",
        "typing: * ; #1 |- #2 : #1",
        "typing: |- * : *",
        "typeeq: * |- #1 = *",
        "termeq: * ; #1 |- #2 = * : #1",
        "",
    ])
    db, eq = parse_judgements(OPTION, text)
    assert len(db.contexts) == 2 and len(db.sections) == 2
    assert len(eq.type_eqs) == 1 and len(eq.term_eqs) == 1
    assert format_judgements(OPTION, db, eq).splitlines() == [
        "ctx: <empty>",
        "ctx: * ; #1",
        "typing: |- * : *",
        "typing: * ; #1 |- #2 : #1",
        "typeeq: * |- #1 = *",
        "termeq: * ; #1 |- #2 = * : #1",
    ]


@pytest.mark.parametrize(
    "line, fragment",
    [
        ("ctx: #1", "line 2"),
        ("typing: * |- #1", "':'"),
        ("wibble: *", "unknown line kind"),
        ("typeeq: * |- #1", "'='"),
        ("ctx * ; #1", "kind"),
    ],
)
def test_parse_errors_name_the_line(line, fragment):
    with pytest.raises(JudgementFileError, match=fragment) as err:
        parse_judgements(OPTION, "ctx: *\n" + line + "\n")
    assert err.value.line == 2


def test_roundtrip_of_a_closure():
    db, _ = close(OPTION, *epsilon_db("101"), Bounds(4, 6))
    text = format_judgements(OPTION, db)
    again, eq = parse_judgements(OPTION, text)
    assert again == db and eq == EqDB()
    assert format_judgements(OPTION, again) == text


def test_gat_fixture_roundtrip():
    cs = csystem("gat_uu")
    path = DATA / "uu_closed.jdg"
    db, eq = read_judgements(cs, path)
    assert format_judgements(cs, db, eq) == path.read_text()
