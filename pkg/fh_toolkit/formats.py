"""Reading and writing .fhs structure files and .fht atomic-type files."""
import logging
from typing import Dict, List, Optional, Tuple

from .const import (
    GROUP_GEN,
    GROUP_ID,
    GROUP_SYM,
    KEY_ARITY,
    KEY_COMMENT,
    KEY_ELEMENTS,
    KEY_END,
    KEY_GROUP,
    KEY_REL,
    KEY_STRUCTURE,
    KEY_TAIL,
    KEY_TYPE,
    MAX_ARITY,
)
from .core import canonicalize
from .errors import FhError, ParseError
from .types import (
    AtomicType,
    FiniteStructure,
    OrbitTuple,
    Permutation,
    SymmetryGroup,
)

_LOGGER = logging.getLogger(__name__)


def _lines(text: str) -> List[Tuple[int, List[str]]]:
    """Tokenized non-empty lines with their 1-based numbers."""
    out = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split(KEY_COMMENT, 1)[0].strip()
        if line:
            out.append((number, line.split()))
    return out


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"Expected integer {what}, got {token!r}", line)


def _single_arg(tokens: List[str], line: int) -> str:
    if len(tokens) != 2:
        raise ParseError(f"'{tokens[0]}' takes exactly one argument", line)
    return tokens[1]


def parse_structure(text: str, max_order: Optional[int] = None) -> FiniteStructure:
    """Parse .fhs text into a structure."""
    name: Optional[str] = None
    arity: Optional[int] = None
    group_kind: Optional[str] = None
    generators: List[Permutation] = []
    elements: List[str] = []
    raw_relations: List[Tuple[int, List[str]]] = []
    ended = False

    for line, tokens in _lines(text):
        keyword = tokens[0]
        if ended:
            raise ParseError(f"Unexpected '{keyword}' after '{KEY_END}'", line)
        if name is None and keyword != KEY_STRUCTURE:
            raise ParseError(f"Expected '{KEY_STRUCTURE}', got '{keyword}'", line)

        if keyword == KEY_STRUCTURE:
            if name is not None:
                raise ParseError(f"Repeated '{KEY_STRUCTURE}'", line)
            name = _single_arg(tokens, line)
        elif keyword == KEY_ARITY:
            if arity is not None:
                raise ParseError(f"Repeated '{KEY_ARITY}'", line)
            arity = _int(_single_arg(tokens, line), line, "arity")
            if not 1 <= arity <= MAX_ARITY:
                raise ParseError(f"Arity must lie in 1..{MAX_ARITY}", line)
        elif keyword == KEY_GROUP:
            if arity is None:
                raise ParseError(f"'{KEY_GROUP}' before '{KEY_ARITY}'", line)
            if len(tokens) < 2:
                raise ParseError(f"'{KEY_GROUP}' needs a kind", line)
            kind = tokens[1]
            if kind not in (GROUP_ID, GROUP_SYM, GROUP_GEN):
                raise ParseError(f"Unknown group kind {kind!r}", line)
            if group_kind is not None and not (kind == group_kind == GROUP_GEN):
                raise ParseError("Conflicting group declarations", line)
            group_kind = kind
            if kind == GROUP_GEN:
                images = [_int(t, line, "image") for t in tokens[2:]]
                if len(images) != arity:
                    raise ParseError(
                        f"Generator has {len(images)} images, expected {arity}", line
                    )
                try:
                    generators.append(Permutation(images))
                except ValueError as exc:
                    raise ParseError(str(exc), line)
            elif len(tokens) != 2:
                raise ParseError(f"'{KEY_GROUP} {kind}' takes no arguments", line)
        elif keyword == KEY_ELEMENTS:
            elements.extend(tokens[1:])
        elif keyword == KEY_REL:
            raw_relations.append((line, tokens[1:]))
        elif keyword == KEY_END:
            if len(tokens) != 1:
                raise ParseError(f"'{KEY_END}' takes no arguments", line)
            ended = True
        else:
            raise ParseError(f"Unknown keyword {keyword!r}", line)

    if name is None:
        raise ParseError("Empty structure file")
    if not ended:
        raise ParseError(f"Missing '{KEY_END}'")
    if arity is None:
        raise ParseError(f"Missing '{KEY_ARITY}'")

    if group_kind == GROUP_SYM:
        group = SymmetryGroup.symmetric(arity)
    elif group_kind == GROUP_GEN:
        group = SymmetryGroup.from_generators(arity, generators, max_order=max_order)
    else:
        group = SymmetryGroup.trivial(arity)

    known = set(elements)
    relations: Dict[Tuple[str, ...], OrbitTuple] = {}
    for line, raw in raw_relations:
        missing = [e for e in raw if e not in known]
        if missing:
            raise ParseError(f"Relation uses undeclared elements {missing}", line)
        try:
            orbit = canonicalize(group, raw)
        except FhError as exc:
            raise ParseError(str(exc), line)
        if orbit.entries in relations:
            _LOGGER.debug(f"Line {line}: orbit {orbit} listed more than once")
        relations[orbit.entries] = orbit

    _LOGGER.debug(
        f"Parsed structure {name}: {len(known)} elements, {len(relations)} orbits, "
        f"group order {group.order}"
    )
    return FiniteStructure(
        group=group, universe=elements, relations=relations.values(), name=name
    )


def serialize_group(group: SymmetryGroup) -> List[str]:
    """Group declaration lines."""
    if group.is_trivial:
        return [f"{KEY_GROUP} {GROUP_ID}"]
    if group.is_full:
        return [f"{KEY_GROUP} {GROUP_SYM}"]
    return [
        f"{KEY_GROUP} {GROUP_GEN} " + " ".join(str(i) for i in g.images)
        for g in group.generators()
    ]


def serialize_structure(M: FiniteStructure) -> str:
    """Normal-form .fhs text of a structure."""
    lines = [f"{KEY_STRUCTURE} {M.name}", f"{KEY_ARITY} {M.arity}"]
    lines.extend(serialize_group(M.group))
    if M.universe:
        lines.append(f"{KEY_ELEMENTS} " + " ".join(M.universe))
    for rel in M.relations:
        lines.append(f"{KEY_REL} " + " ".join(rel.entries))
    lines.append(KEY_END)
    return "\n".join(lines) + "\n"


def parse_type(text: str) -> AtomicType:
    """Parse .fht text into an atomic type."""
    name: Optional[str] = None
    arity: Optional[int] = None
    tail: Optional[int] = None
    relations: List[Tuple[int, List[int]]] = []
    ended = False

    for line, tokens in _lines(text):
        keyword = tokens[0]
        if ended:
            raise ParseError(f"Unexpected '{keyword}' after '{KEY_END}'", line)
        if name is None and keyword != KEY_TYPE:
            raise ParseError(f"Expected '{KEY_TYPE}', got '{keyword}'", line)
        if keyword == KEY_TYPE:
            if name is not None:
                raise ParseError(f"Repeated '{KEY_TYPE}'", line)
            name = _single_arg(tokens, line)
        elif keyword == KEY_ARITY:
            arity = _int(_single_arg(tokens, line), line, "arity")
            if not 1 <= arity <= MAX_ARITY:
                raise ParseError(f"Arity must lie in 1..{MAX_ARITY}", line)
        elif keyword == KEY_TAIL:
            tail = _int(_single_arg(tokens, line), line, "tail length")
            if tail < 0:
                raise ParseError("Tail length must be non-negative", line)
        elif keyword == KEY_REL:
            relations.append((line, [_int(t, line, "index") for t in tokens[1:]]))
        elif keyword == KEY_END:
            ended = True
        else:
            raise ParseError(f"Unknown keyword {keyword!r}", line)

    if name is None:
        raise ParseError("Empty type file")
    if not ended:
        raise ParseError(f"Missing '{KEY_END}'")
    if arity is None or tail is None:
        raise ParseError(f"Missing '{KEY_ARITY}' or '{KEY_TAIL}'")
    for line, rel in relations:
        if len(rel) != arity:
            raise ParseError(f"Relation has {len(rel)} indices, expected {arity}", line)
        if len(set(rel)) != len(rel):
            raise ParseError(f"Relation {rel} repeats an index", line)
        if min(rel) < 0 or max(rel) >= arity + tail:
            raise ParseError(f"Relation {rel} out of range 0..{arity + tail - 1}", line)
    return AtomicType(
        arity=arity, tail_len=tail, relations=[r for _, r in relations], name=name
    )


def serialize_type(q: AtomicType) -> str:
    """Normal-form .fht text of an atomic type."""
    lines = [f"{KEY_TYPE} {q.name}", f"{KEY_ARITY} {q.arity}", f"{KEY_TAIL} {q.tail_len}"]
    for rel in q.relations:
        lines.append(f"{KEY_REL} " + " ".join(str(i) for i in rel))
    lines.append(KEY_END)
    return "\n".join(lines) + "\n"


def read_structure(path: str, max_order: Optional[int] = None) -> FiniteStructure:
    """Read a .fhs file."""
    with open(path, encoding="utf-8") as handle:
        return parse_structure(handle.read(), max_order=max_order)


def write_structure(path: str, M: FiniteStructure) -> None:
    """Write a .fhs file."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_structure(M))
    _LOGGER.info(f"Wrote {M.name} ({M.size} elements) to {path}")


def read_type(path: str) -> AtomicType:
    """Read a .fht file."""
    with open(path, encoding="utf-8") as handle:
        return parse_type(handle.read())


def write_type(path: str, q: AtomicType) -> None:
    """Write a .fht file."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_type(q))
    _LOGGER.info(f"Wrote type {q.name} to {path}")
