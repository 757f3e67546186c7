#!/usr/bin/env python
"""Command line for the FH toolkit."""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

from . import get_search_bound
from .amalgam import simple_amalgam, verify_simple_amalgam
from .const import (
    ENGINE_EXHAUSTIVE,
    ENGINES,
    EXIT_OK,
    EXIT_PROPERTY_FAILURE,
    EXIT_USAGE,
    ERROR_USAGE,
    GROUP_ID,
    GROUP_SYM,
    RENDERER_JSON,
    RENDERER_TEXT,
)
from .core import induced_substructure, parse_element_list
from .errors import FhError, UsageError
from .exquisite import (
    base_exquisite_3,
    check_exquisite,
    check_intertwined,
    check_nice,
    check_without_symmetry,
    collisions,
    decollide,
    decollide_step,
    exquisite_for_arity,
    lift_exquisite,
)
from .formats import read_structure, read_type, write_structure, write_type
from .generic import audit_genericity, audit_structure, build_catalog, build_generic
from .matroid import Matroid, associated_geometry, pregeometry_isomorphic
from .predim import (
    d_closure,
    delta,
    in_class,
    minimum_over_supersets,
    self_sufficient_closure,
)
from .reducts import (
    benign_pair_exquisite,
    benign_pair_subgroup,
    exquisite_reduct,
    mixed_amalgam_exquisite,
    mixed_amalgam_subgroup,
    phi_reduct,
)
from .renderers import RENDERERS, Renderer
from .suites import SUITES, run_suite
from .transfer import (
    desymmetrize,
    isoext_step_G_to_ns,
    isoext_step_ns_to_G,
    relax,
    relaxed_symmetrize,
)
from .types import AtomicType, FiniteStructure, OrbitTuple, SymmetryGroup

_LOGGER = logging.getLogger(__name__)

DEFAULT_GENERIC_SIZE = 4
DEFAULT_GENERIC_STEPS = 50
DEFAULT_AUDIT_BASE = 2
DEFAULT_AUDIT_TEMPLATE = 3


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser raising UsageError instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        """Raise a usage error."""
        raise UsageError(message)


def _group_arg(value: str, arity: int) -> SymmetryGroup:
    """sym, id, or the group of a structure file."""
    if value == GROUP_SYM:
        return SymmetryGroup.symmetric(arity)
    if value == GROUP_ID:
        return SymmetryGroup.trivial(arity)
    return read_structure(value).group


def _ordered(M: FiniteStructure) -> FiniteStructure:
    return FiniteStructure(
        group=SymmetryGroup.trivial(M.arity),
        universe=M.universe,
        relations=[OrbitTuple(r.entries) for r in M.relations],
        name=M.name,
    )


def _over(args: argparse.Namespace, M: FiniteStructure) -> List[str]:
    """Base set from --over-file or --over."""
    if args.over_file:
        return list(read_structure(args.over_file).universe)
    return sorted(M.check_elements(parse_element_list(args.over)), key=M.index.__getitem__)


def _output(args: argparse.Namespace, renderer: Renderer, value: Any) -> None:
    """Write a structure or type to -o, or render it."""
    path = getattr(args, "output", None)
    if path and isinstance(value, FiniteStructure):
        write_structure(path, value)
    elif path and isinstance(value, AtomicType):
        write_type(path, value)
    else:
        renderer.emit(value)


def cmd_predim(args: argparse.Namespace, renderer: Renderer) -> int:
    """delta, dim, sscl, dclosure and inclass."""
    M = read_structure(args.structure)
    subset = M.check_elements(parse_element_list(args.set) if args.set else M.universe)
    if args.command == "delta":
        renderer.emit(delta(M, subset))
    elif args.command == "dim":
        value, witness = minimum_over_supersets(M, subset, engine=args.engine, bound=args.bound)
        renderer.emit({"dim": value, "minimizer": witness} if args.trace else value)
    elif args.command == "sscl":
        certificate = self_sufficient_closure(M, subset, engine=args.engine, bound=args.bound)
        renderer.emit(certificate if args.trace else certificate.closure)
    elif args.command == "dclosure":
        renderer.emit(d_closure(M, subset, engine=args.engine, bound=args.bound))
    else:
        renderer.emit(in_class(M, engine=args.engine, bound=args.bound))
    return EXIT_OK


def cmd_matroid(args: argparse.Namespace, renderer: Renderer) -> int:
    """rank, closure, geometry and iso."""
    M = read_structure(args.structure)
    subset = parse_element_list(args.set)
    if args.action == "rank":
        renderer.emit(Matroid(M, engine=args.engine, bound=args.bound).rank(subset))
    elif args.action == "closure":
        renderer.emit(Matroid(M, engine=args.engine, bound=args.bound).closure(subset))
    elif args.action == "geometry":
        geometry = associated_geometry(M, engine=args.engine, bound=args.bound)
        renderer.emit(
            {
                "loops": geometry.loops,
                "classes": [sorted(c) for c in geometry.classes],
                "rank": geometry.matroid.rank(M.universe),
            }
        )
    else:
        if not args.second:
            raise UsageError("matroid iso needs a second structure")
        renderer.emit(pregeometry_isomorphic(M, read_structure(args.second), bound=args.bound))
    return EXIT_OK


def cmd_amalgam(args: argparse.Namespace, renderer: Renderer) -> int:
    """Free join of two structures over a shared base."""
    B1 = read_structure(args.first)
    B2 = read_structure(args.second)
    base = parse_element_list(args.over)
    D = simple_amalgam(B1, B2, base)
    if args.check:
        renderer.emit(verify_simple_amalgam(D, B1, B2, base, bound=args.bound))
        return EXIT_OK
    _output(args, renderer, D)
    return EXIT_OK


def cmd_transfer(args: argparse.Namespace, renderer: Renderer) -> int:
    """desym, relax and symrelax."""
    M = read_structure(args.structure)
    base = _over(args, M)
    if args.command == "desym":
        A_ns = read_structure(args.over_file) if args.over_file else _ordered(
            induced_substructure(M, base)
        )
        result = desymmetrize(M, A_ns, verify=args.verify, bound=args.bound)
    elif args.command == "relax":
        result = relax(M, base)
    else:
        if args.over_file:
            A_G = read_structure(args.over_file)
        else:
            A_G = phi_reduct(
                induced_substructure(M, base), SymmetryGroup.symmetric(M.arity)
            )
        result = relaxed_symmetrize(M, A_G)
    _output(args, renderer, result.output)
    return EXIT_OK


def cmd_isoext(args: argparse.Namespace, renderer: Renderer) -> int:
    """One back-and-forth step of a dimension-matched pair."""
    A1 = read_structure(args.first)
    A2 = read_structure(args.second)
    C = read_structure(args.extension)
    if args.direction == "g2ns":
        pair = isoext_step_G_to_ns(A1, A2, C, bound=args.bound)
    else:
        pair = isoext_step_ns_to_G(A1, A2, C, bound=args.bound)
    renderer.emit(list(pair))
    return EXIT_OK


def cmd_generic(args: argparse.Namespace, renderer: Renderer) -> int:
    """Build an approximant or audit a saved one."""
    if args.action == "build":
        group = _group_arg(args.group, args.arity)
        state = build_generic(group, args.size, args.steps, args.seed)
        if args.audit:
            renderer.emit(audit_genericity(state, args.maxA, args.maxC))
            if args.output:
                write_structure(args.output, state.current)
            return EXIT_OK
        _output(args, renderer, state.current)
        return EXIT_OK
    if not args.structure:
        raise UsageError("generic audit needs a structure file")
    M = read_structure(args.structure)
    catalog = build_catalog(M.group, args.size)
    renderer.emit(audit_structure(M, catalog, args.maxA, args.maxC))
    return EXIT_OK


def _type_arg(args: argparse.Namespace) -> AtomicType:
    if not args.type:
        raise UsageError("--type is required")
    return read_type(args.type)


def cmd_exquisite(args: argparse.Namespace, renderer: Renderer) -> int:
    """base, lift, check and for-arity."""
    if args.action == "base":
        _output(args, renderer, base_exquisite_3())
    elif args.action == "lift":
        _output(args, renderer, lift_exquisite(_type_arg(args), bound=args.bound))
    elif args.action == "for-arity":
        if args.arity is None:
            raise UsageError("for-arity needs --arity")
        _output(args, renderer, exquisite_for_arity(args.arity, bound=args.bound))
    else:
        q = _type_arg(args)
        intertwined, witness = check_intertwined(q, bound=args.bound)
        renderer.emit(
            {
                "nice": check_nice(q),
                "without_symmetry": check_without_symmetry(q),
                "intertwined": intertwined,
                "witness": witness,
                "exquisite": check_exquisite(q, bound=args.bound),
            }
        )
    return EXIT_OK


def cmd_collisions(args: argparse.Namespace, renderer: Renderer) -> int:
    """Collision counts and witnesses."""
    renderer.emit(collisions(read_structure(args.structure), _type_arg(args)))
    return EXIT_OK


def cmd_decollide(args: argparse.Namespace, renderer: Renderer) -> int:
    """One decollision step, or all of them."""
    M = read_structure(args.structure)
    q = _type_arg(args)
    _output(args, renderer, decollide_step(M, q) if args.step else decollide(M, q))
    return EXIT_OK


def cmd_reduct(args: argparse.Namespace, renderer: Renderer) -> int:
    """φ-reduct to a supergroup, or the exquisite reduct."""
    M = read_structure(args.structure)
    if args.kind == "group":
        _output(args, renderer, phi_reduct(M, _group_arg(args.to, M.arity)))
    else:
        _output(args, renderer, exquisite_reduct(M, _type_arg(args)))
    return EXIT_OK


def cmd_mixed(args: argparse.Namespace, renderer: Renderer) -> int:
    """Mixed amalgam of a structure with an extension of its reduct."""
    A = read_structure(args.first)
    B = read_structure(args.second)
    if args.kind == "sub":
        _output(args, renderer, mixed_amalgam_subgroup(A, B))
    else:
        _output(args, renderer, mixed_amalgam_exquisite(A, B, _type_arg(args)))
    return EXIT_OK


def cmd_benign(args: argparse.Namespace, renderer: Renderer) -> int:
    """Benign pair over a base structure."""
    F = read_structure(args.structure)
    if args.kind == "sub":
        pair = benign_pair_subgroup(F, _group_arg(args.to, F.arity))
    else:
        pair = benign_pair_exquisite(F, _type_arg(args))
    renderer.emit(pair)
    return EXIT_OK if pair.certified else EXIT_PROPERTY_FAILURE


def cmd_verify(args: argparse.Namespace, renderer: Renderer) -> int:
    """Run a property suite."""
    result = run_suite(args.suite, args.seed, count=args.count, jobs=args.jobs)
    renderer.emit(result)
    return EXIT_OK if result.passed else EXIT_PROPERTY_FAILURE


COMMANDS: Dict[str, Callable[[argparse.Namespace, Renderer], int]] = {
    "delta": cmd_predim,
    "dim": cmd_predim,
    "sscl": cmd_predim,
    "dclosure": cmd_predim,
    "inclass": cmd_predim,
    "matroid": cmd_matroid,
    "amalgam": cmd_amalgam,
    "desym": cmd_transfer,
    "relax": cmd_transfer,
    "symrelax": cmd_transfer,
    "isoext": cmd_isoext,
    "generic": cmd_generic,
    "exquisite": cmd_exquisite,
    "collisions": cmd_collisions,
    "decollide": cmd_decollide,
    "reduct": cmd_reduct,
    "mixed": cmd_mixed,
    "benign": cmd_benign,
    "verify": cmd_verify,
}


def _add_output(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("-o", "--output", help="Write the resulting structure or type here.")


def _add_type(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--type", help="Atomic type file (.fht).")


def build_parser() -> ArgumentParser:
    """Argument parser for all commands."""
    ap = ArgumentParser(prog="fh")
    ap.add_argument(
        "-l",
        "--loglevel",
        default="ERROR",
        help="Logging level. Default: ERROR.",
        choices=["ERROR", "WARNING", "INFO", "DEBUG"],
    )
    ap.add_argument(
        "--bound",
        type=int,
        default=None,
        help="Exhaustive search bound in elements. Default: $FH_BOUND or 24.",
    )
    ap.add_argument(
        "--engine",
        default=ENGINE_EXHAUSTIVE,
        choices=ENGINES,
        help="Dimension engine. Default: exhaustive.",
    )
    ap.add_argument(
        "--json",
        help="Render results as JSON.",
        default=False,
        action="store_true",
    )
    ap.add_argument("--jobs", type=int, default=1, help="Parallel suite workers.")
    for renderer_key in RENDERERS:
        RENDERERS[renderer_key].add_args_to_parser(ap)

    sub = ap.add_subparsers(dest="command", parser_class=ArgumentParser)
    for name in ("delta", "dim", "sscl", "dclosure", "inclass"):
        p = sub.add_parser(name)
        p.add_argument("structure")
        p.add_argument("--set", help="Elements (comma separated). Default: all.")
        p.add_argument("--trace", action="store_true", help="Include the certificate.")

    p = sub.add_parser("matroid")
    p.add_argument("action", choices=["rank", "closure", "geometry", "iso"])
    p.add_argument("structure")
    p.add_argument("second", nargs="?")
    p.add_argument("--set", help="Elements (comma separated). Default: none.")

    p = sub.add_parser("amalgam")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--over", default="", help="Shared base (comma separated).")
    p.add_argument("--check", action="store_true", help="Audit additivity instead.")
    _add_output(p)

    for name in ("desym", "relax", "symrelax"):
        p = sub.add_parser(name)
        p.add_argument("structure")
        p.add_argument("--over", default="", help="Base (comma separated).")
        p.add_argument("--over-file", help="Base structure file.")
        p.add_argument("--verify", action="store_true", help="Recheck relative predimension.")
        _add_output(p)

    p = sub.add_parser("isoext")
    p.add_argument("direction", choices=["g2ns", "ns2g"])
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("extension")

    p = sub.add_parser("generic")
    p.add_argument("action", choices=["build", "audit"])
    p.add_argument("structure", nargs="?")
    p.add_argument("--arity", type=int, default=3)
    p.add_argument("--group", default=GROUP_SYM, help="sym, id or a structure file.")
    p.add_argument("--steps", type=int, default=DEFAULT_GENERIC_STEPS)
    p.add_argument("--size", type=int, default=DEFAULT_GENERIC_SIZE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--audit", action="store_true", help="Audit the build log.")
    p.add_argument("--maxA", type=int, default=DEFAULT_AUDIT_BASE)
    p.add_argument("--maxC", type=int, default=DEFAULT_AUDIT_TEMPLATE)
    _add_output(p)

    p = sub.add_parser("exquisite")
    p.add_argument("action", choices=["base", "lift", "check", "for-arity"])
    p.add_argument("--arity", type=int)
    _add_type(p)
    _add_output(p)

    p = sub.add_parser("collisions")
    p.add_argument("structure")
    _add_type(p)

    p = sub.add_parser("decollide")
    p.add_argument("structure")
    p.add_argument("--step", action="store_true", help="Run a single step.")
    _add_type(p)
    _add_output(p)

    p = sub.add_parser("reduct")
    p.add_argument("kind", choices=["group", "exquisite"])
    p.add_argument("structure")
    p.add_argument("--to", default=GROUP_SYM, help="sym, id or a structure file.")
    _add_type(p)
    _add_output(p)

    p = sub.add_parser("mixed")
    p.add_argument("kind", choices=["sub", "exq"])
    p.add_argument("first")
    p.add_argument("second")
    _add_type(p)
    _add_output(p)

    p = sub.add_parser("benign")
    p.add_argument("kind", choices=["sub", "exq"])
    p.add_argument("structure")
    p.add_argument("--to", default=GROUP_SYM, help="sym, id or a structure file.")
    _add_type(p)

    p = sub.add_parser("verify")
    p.add_argument("suite", choices=list(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    """FH toolkit main."""
    try:
        ap = build_parser()
        args = ap.parse_args(argv)
        logging.basicConfig(
            level=logging.getLevelName(args.loglevel),
            format="%(asctime)s %(levelname)s %(filename)s:%(lineno)d] %(message)s",
            datefmt="%F %H:%M:%S",
        )
        if not args.command:
            raise UsageError("No command given")
        if args.jobs < 1:
            raise UsageError(f"--jobs must be positive, got {args.jobs}")
        args.bound = get_search_bound(args.bound)
        renderer = RENDERERS[RENDERER_JSON if args.json else RENDERER_TEXT].construct_from_args(args)
        return COMMANDS[args.command](args, renderer)
    except FhError as e:
        print(f"ERROR {e.code}: {e}", file=sys.stderr)
        _LOGGER.debug(f"{type(e).__name__} raised", exc_info=True)
        return e.exit_code
    except (OSError, ValueError) as e:
        print(f"ERROR {ERROR_USAGE}: {e}", file=sys.stderr)
        _LOGGER.debug(f"{type(e).__name__} raised", exc_info=True)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
