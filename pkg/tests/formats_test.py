"""Test for .fhs and .fht files."""
import pytest  # type: ignore
import logging
from typing import Any

from fh_toolkit.errors import ParseError
from fh_toolkit.exquisite import base_exquisite_3
from fh_toolkit.formats import (
    parse_structure,
    parse_type,
    read_structure,
    read_type,
    serialize_structure,
    serialize_type,
    write_structure,
    write_type,
)
from fh_toolkit.types import OrbitTuple

from . import TEST_BASE_TYPE_TEXT, TEST_PATH_TEXT, path, triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_parse_structure() -> None:
    """Test parse_structure()."""
    M = path()
    assert M.name == "path"
    assert M.group.is_full
    assert serialize_structure(M) == TEST_PATH_TEXT

    # Test: Comments, blank lines and repeated orbits.
    M = parse_structure(
        "# header\nstructure s\narity 2\n\ngroup sym\nelements x y\n"
        "rel y x  # edge\nrel x y\nend\n"
    )
    assert M.relations == (OrbitTuple(("x", "y")),)

    # Test: No group line means the trivial group.
    M = parse_structure("structure s\narity 2\nelements x y\nrel y x\nend\n")
    assert M.group.is_trivial
    assert M.relations == (OrbitTuple(("y", "x")),)


def test_parse_structure_generators() -> None:
    """Test parse_structure() with listed generators."""
    text = (
        "structure s\narity 3\ngroup gen 2 1 3\nelements a b c\nrel b a c\nend\n"
    )
    M = parse_structure(text)
    assert M.group.order == 2
    assert M.relations == (OrbitTuple(("a", "b", "c")),)
    assert parse_structure(serialize_structure(M)) == M


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("arity 2\nend\n", 1, "Expected 'structure'"),
        ("structure s\narity 2\nfoo\nend\n", 3, "Unknown keyword"),
        ("structure s\narity x\nend\n", 2, "Expected integer"),
        ("structure s\narity 2\ngroup gen 1\nend\n", 3, "Generator has 1 images"),
        ("structure s\narity 2\nelements a\nrel a b\nend\n", 4, "undeclared"),
        ("structure s\narity 2\nelements a b\nrel a a\nend\n", 4, "repeats"),
        ("structure s\narity 2\nend\nrel a b\n", 4, "after 'end'"),
    ],
)
def test_parse_structure_errors(text: str, line: int, message: str) -> None:
    """Test parse_structure() on malformed input."""
    with pytest.raises(ParseError) as info:
        parse_structure(text)
    assert info.value.line == line
    assert message in str(info.value)


def test_parse_structure_missing_end() -> None:
    """Test parse_structure() without an end line."""
    with pytest.raises(ParseError, match="Missing 'end'"):
        parse_structure("structure s\narity 2\n")
    with pytest.raises(ParseError, match="Empty"):
        parse_structure("# nothing\n")


def test_parse_type() -> None:
    """Test parse_type() and serialize_type()."""
    q = parse_type(TEST_BASE_TYPE_TEXT)
    assert q == base_exquisite_3()
    assert q.name == "q3"
    assert parse_type(serialize_type(q)) == q
    assert serialize_type(q).splitlines()[:4] == ["type q3", "arity 3", "tail 8", "rel 0 3 4"]

    # Test: Index out of range.
    with pytest.raises(ParseError) as info:
        parse_type("type q\narity 2\ntail 1\nrel 0 3\nend\n")
    assert info.value.line == 4


def test_files(tmp_path: Any, caplog: Any) -> None:
    """Test reading and writing files."""
    caplog.set_level(logging.INFO)
    M = triangle()
    target = str(tmp_path / "m.fhs")
    write_structure(target, M)
    assert read_structure(target) == M
    assert "Wrote triangle (3 elements)" in caplog.text

    q = base_exquisite_3()
    target = str(tmp_path / "q.fht")
    write_type(target, q)
    assert read_type(target) == q
