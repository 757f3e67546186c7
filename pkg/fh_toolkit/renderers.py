"""Renderers of command results."""
import argparse
import json
import logging
import sys
from typing import Any, Dict, Optional, TextIO, Type

import attr
import numpy as np

from .const import RENDERER_JSON, RENDERER_TEXT
from .formats import serialize_structure, serialize_type
from .types import (
    AtomicType,
    Embedding,
    FiniteStructure,
    OrbitTuple,
    TypedTuple,
    element_sort_key,
)

_LOGGER = logging.getLogger(__name__)


def _sort_key(value: Any) -> Any:
    if isinstance(value, str):
        return (0, element_sort_key(value))
    return (1, json.dumps(value, sort_keys=True))


def to_data(value: Any) -> Any:
    """Convert a result into plain JSON-able data."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, FiniteStructure):
        return {
            "name": value.name,
            "arity": value.arity,
            "group": [list(p.images) for p in value.group.sorted_members],
            "elements": list(value.universe),
            "relations": [list(r.entries) for r in value.relations],
        }
    if isinstance(value, AtomicType):
        return {
            "name": value.name,
            "arity": value.arity,
            "tail": value.tail_len,
            "relations": [list(r) for r in value.relations],
        }
    if isinstance(value, OrbitTuple):
        return list(value.entries)
    if isinstance(value, TypedTuple):
        return {"head": list(value.head), "tail": list(value.tail)}
    if isinstance(value, Embedding):
        return value.as_dict()
    if attr.has(type(value)):
        return {f.name: to_data(getattr(value, f.name)) for f in attr.fields(type(value))}
    if isinstance(value, dict):
        return {str(k): to_data(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((to_data(v) for v in value), key=_sort_key)
    if isinstance(value, (list, tuple)):
        return [to_data(v) for v in value]
    raise TypeError(f"Cannot render {type(value).__name__}")


class Renderer:
    """Generic baseclass for result renderers."""

    def __init__(self, out: Optional[TextIO] = None) -> None:
        """Initialize a renderer."""
        self._out = sys.stdout if out is None else out

    @classmethod
    def add_args_to_parser(cls, ap: argparse.ArgumentParser) -> None:
        """Add command line arguments to argument parser."""
        pass

    @classmethod
    def construct_from_args(cls, args: argparse.Namespace) -> "Renderer":
        """Construct a renderer from command line arguments."""
        return cls()

    def render(self, value: Any) -> str:
        """Render a result as text."""
        raise NotImplementedError

    def emit(self, value: Any) -> None:
        """Render a result to the output stream."""
        text = self.render(value)
        self._out.write(text if text.endswith("\n") else text + "\n")


class TextRenderer(Renderer):
    """Human readable output: file grammar for structures, key: value lines otherwise."""

    def _inline(self, value: Any) -> str:
        data = to_data(value)
        if isinstance(data, bool):
            return "true" if data else "false"
        if data is None:
            return "-"
        if isinstance(data, (int, str)):
            return str(data)
        if isinstance(data, list) and all(isinstance(v, str) for v in data):
            return "{" + ",".join(data) + "}"
        return json.dumps(data, sort_keys=True)

    def render(self, value: Any) -> str:
        """Render a result as text."""
        if isinstance(value, FiniteStructure):
            return serialize_structure(value)
        if isinstance(value, AtomicType):
            return serialize_type(value)
        if isinstance(value, dict):
            return "\n".join(f"{k}: {self._inline(v)}" for k, v in value.items())
        if attr.has(type(value)) and not isinstance(value, (OrbitTuple, TypedTuple)):
            return "\n".join(
                f"{f.name}: {self._inline(getattr(value, f.name))}"
                for f in attr.fields(type(value))
            )
        if isinstance(value, list):
            return "\n".join(
                self.render(v).rstrip("\n")
                if isinstance(v, (FiniteStructure, AtomicType)) else self._inline(v)
                for v in value
            )
        return self._inline(value)


class JsonRenderer(Renderer):
    """Stable JSON output with sorted keys."""

    def __init__(self, out: Optional[TextIO] = None, indent: int = 0) -> None:
        """Initialize a JSON renderer."""
        super().__init__(out)
        self._indent = indent

    @classmethod
    def add_args_to_parser(cls, ap: argparse.ArgumentParser) -> None:
        """Add command line arguments to argument parser."""
        ap.add_argument(
            "--json-indent",
            type=int,
            default=0,
            help="Indentation of JSON output, 0 for one line.",
        )

    @classmethod
    def construct_from_args(cls, args: argparse.Namespace) -> "JsonRenderer":
        """Construct a renderer from command line arguments."""
        return JsonRenderer(indent=args.json_indent)

    def render(self, value: Any) -> str:
        """Render a result as JSON."""
        return json.dumps(
            to_data(value), sort_keys=True, indent=self._indent or None
        )


RENDERERS: Dict[str, Type[Renderer]] = {
    RENDERER_TEXT: TextRenderer,
    RENDERER_JSON: JsonRenderer,
}
