"""Test for result renderers."""
import pytest  # type: ignore
import argparse
import io
import json
import logging

import numpy as np

from fh_toolkit.const import RENDERER_JSON, RENDERER_TEXT
from fh_toolkit.exquisite import base_exquisite_3
from fh_toolkit.renderers import RENDERERS, JsonRenderer, Renderer, TextRenderer, to_data
from fh_toolkit.types import ClosureCertificate, OrbitTuple, TypedTuple

from . import TEST_TRIANGLE_TEXT, triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_to_data() -> None:
    """Test to_data()."""
    assert to_data(np.int64(3)) == 3
    assert to_data(np.bool_(True)) is True
    assert to_data(frozenset({"a10", "a2", "a1"})) == ["a1", "a2", "a10"]
    assert to_data(OrbitTuple(("a", "b"))) == ["a", "b"]
    assert to_data(TypedTuple(head=("a",), tail=("b", "c"))) == {
        "head": ["a"], "tail": ["b", "c"]
    }
    data = to_data(triangle())
    assert data["elements"] == ["a", "b", "c"]
    assert data["group"] == [[1, 2], [2, 1]]
    assert data["relations"] == [["a", "b"], ["a", "c"], ["b", "c"]]
    with pytest.raises(TypeError):
        to_data(object())


def test_text_renderer() -> None:
    """Test TextRenderer."""
    out = io.StringIO()
    renderer = TextRenderer(out)
    renderer.emit(triangle())
    assert out.getvalue() == TEST_TRIANGLE_TEXT

    assert renderer.render({"delta": 2, "strong": True, "set": frozenset({"b", "a"})}) == (
        "delta: 2\nstrong: true\nset: {a,b}"
    )
    certificate = ClosureCertificate(
        input=frozenset({"a"}), closure=frozenset({"a", "b"}),
        minimizers_examined=1, dimension=1,
    )
    assert renderer.render(certificate).splitlines()[1] == "closure: {a,b}"
    assert renderer.render(None) == "-"
    assert renderer.render(base_exquisite_3()).startswith("type q3\n")


def test_json_renderer() -> None:
    """Test JsonRenderer and its command line arguments."""
    out = io.StringIO()
    JsonRenderer(out).emit({"dim": np.int64(1), "closure": frozenset({"b", "a"})})
    assert out.getvalue() == '{"closure": ["a", "b"], "dim": 1}\n'

    ap = argparse.ArgumentParser()
    for renderer in RENDERERS.values():
        renderer.add_args_to_parser(ap)
    args = ap.parse_args(["--json-indent", "2"])
    indented = RENDERERS[RENDERER_JSON].construct_from_args(args).render({"a": [1]})
    assert json.loads(indented) == {"a": [1]}
    assert "\n  " in indented
    assert isinstance(RENDERERS[RENDERER_TEXT].construct_from_args(args), TextRenderer)


def test_renderer_registry() -> None:
    """Test RENDERERS holds Renderer subclasses."""
    assert set(RENDERERS) == {RENDERER_TEXT, RENDERER_JSON}
    for renderer in RENDERERS.values():
        assert issubclass(renderer, Renderer)
