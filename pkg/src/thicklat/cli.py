"""Command line front end.

Documents are JSON objects, emitted one per line with sorted keys. A lattice
document has ``name``, ``elements`` and ``covers`` (plus optional
``automorphism`` and ``sublattice``); a space report has ``points`` and
``closed_sets``. Commands read a document from ``--in`` (``-`` is stdin).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import __version__
from .adjunctions import free_frame_d, omega
from .compare import hochster_dual, mspec
from .config import size_limit
from .core import (
    FiniteLattice,
    bounded_sublattice,
    find_diamond_obstruction,
    fixed_sublattice,
    from_covers,
)
from .errors import LatticeError, SizeGuard
from .props import all_properties, join_prime_indices
from .spectra import FiniteSpace, fspcnt, is_sober, meet_primes, spcnt
from . import gallery

EXIT_OK, EXIT_PARSE, EXIT_LATTICE, EXIT_EXAMPLE, EXIT_SIZE = 0, 2, 3, 4, 5


class DocumentError(Exception):
    """Malformed JSON or a document missing required fields."""


def fmt(label: Any) -> str:
    """Deterministic string form of a label: tuples as ``(a,b)``, sets sorted as ``{a,b}``."""
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(fmt(x) for x in label) + ")"
    if isinstance(label, (frozenset, set)):
        return "{" + ",".join(sorted(fmt(x) for x in label)) + "}"
    return str(label)


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


# documents


def read_document(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc, _ = json.JSONDecoder().raw_decode(text.lstrip())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def _string_list(doc: dict, key: str) -> list[str]:
    val = doc.get(key)
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise DocumentError(f"field {key!r} must be a list of strings")
    return val


def _pair_list(doc: dict, key: str) -> list[tuple[str, str]]:
    val = doc.get(key)
    if not isinstance(val, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p) for p in val
    ):
        raise DocumentError(f"field {key!r} must be a list of [string, string] pairs")
    return [tuple(p) for p in val]


def is_lattice_document(doc: dict) -> bool:
    return "elements" in doc


def lattice_from_document(doc: dict) -> tuple[FiniteLattice, dict | None, list | None]:
    """Parse and validate; returns ``(L, automorphism or None, sublattice or None)``."""
    if not is_lattice_document(doc):
        raise DocumentError("not a lattice document (no 'elements' field)")
    elements = _string_list(doc, "elements")
    covers = _pair_list(doc, "covers") if "covers" in doc else []
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("field 'name' must be a string")
    L = from_covers(elements, covers, name=name)
    sigma = None
    if "automorphism" in doc:
        sigma = dict(_pair_list(doc, "automorphism"))
        fixed_sublattice(L, sigma)
    sub = None
    if "sublattice" in doc:
        sub = _string_list(doc, "sublattice")
        bounded_sublattice(L, sub)
    return L, sigma, sub


def lattice_document(L: FiniteLattice, *, automorphism: dict | None = None,
                     sublattice=None, name: str | None = None) -> dict:
    doc = {
        "name": L.name if name is None else name,
        "elements": [fmt(x) for x in L.labels],
        "covers": [[fmt(a), fmt(b)] for a, b in L.hasse_edges()],
    }
    if automorphism is not None:
        doc["automorphism"] = [[fmt(x), fmt(automorphism[x])] for x in L.labels]
    if sublattice is not None:
        doc["sublattice"] = [fmt(x) for x in sublattice]
    return doc


def space_from_document(doc: dict) -> FiniteSpace:
    points = _string_list(doc, "points")
    fams = doc.get("closed_sets")
    if not isinstance(fams, list) or not all(isinstance(c, list) for c in fams):
        raise DocumentError("field 'closed_sets' must be a list of lists")
    try:
        return FiniteSpace.from_closed_labels(points, fams, name=doc.get("name", ""))
    except (KeyError, TypeError):
        raise DocumentError("closed sets must list known point labels") from None


def space_report(X: FiniteSpace, *, name: str, variant: str) -> dict:
    sober = is_sober(X)
    spec = X.specialization()
    return {
        "kind": "space",
        "name": name,
        "variant": variant,
        "version": __version__,
        "points": [fmt(p) for p in X.points],
        "closed_sets": [[fmt(p) for p in X.ordered(c)] for c in X.closed_sets],
        "specialization": [[fmt(X.points[i]), fmt(X.points[j])]
                           for i in range(len(X)) for j in range(len(X)) if i != j and spec[i, j]],
        "sober": sober.as_dict(),
        "open_lattice_size": len(X.closed_sets),
    }


def map_report(name: str, f) -> dict:
    return {"kind": "map", "name": name, "version": __version__,
            "table": [[fmt(a), fmt(b)] for a, b in f.as_dict().items()]}


# DOT


def _dot(title: str, nodes: list[str], edges: list[tuple[int, int]]) -> str:
    lines = [f"digraph {json.dumps(title or 'G')} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    lines += [f"  n{i} [label={json.dumps(lab)}];" for i, lab in enumerate(nodes)]
    lines += [f"  n{a} -> n{b};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines)


def lattice_dot(L: FiniteLattice) -> str:
    edges = [(L.index(a), L.index(b)) for a, b in L.hasse_edges()]
    return _dot(L.name, [fmt(x) for x in L.labels], edges)


def space_dot(X: FiniteSpace, title: str = "") -> str:
    """Hasse diagram of specialization: an edge ``x -> y`` when ``y`` is an immediate specialization of ``x``."""
    s = X.specialization()
    n = len(X)
    strict = s & ~(s & s.T)
    edges = []
    for i in range(n):
        for j in range(n):
            if strict[i, j] and not any(strict[i, k] and strict[k, j] for k in range(n)):
                edges.append((i, j))
    return _dot(title or X.name, [fmt(p) for p in X.points], edges)


# commands


def _load_lattice(args) -> tuple[FiniteLattice, dict | None, list | None]:
    return lattice_from_document(read_document(args.input))


def _emit_lattice(args, L: FiniteLattice, **kw) -> list[str]:
    if args.format == "dot":
        return [lattice_dot(L)]
    return [dumps(lattice_document(L, **kw))]


def _emit_space(args, X: FiniteSpace, *, name: str, variant: str) -> list[str]:
    if args.format == "dot":
        return [space_dot(X, name)]
    return [dumps(space_report(X, name=name, variant=variant))]


def cmd_check(args) -> list[str]:
    L, _, _ = _load_lattice(args)
    obstruction = find_diamond_obstruction(L)
    report = {
        "kind": "properties",
        "name": L.name,
        "version": __version__,
        "size": L.n,
        "properties": [
            {**r.as_dict(), "witness": None if r.witness is None else [fmt(x) for x in r.witness]}
            for r in all_properties(L)
        ],
        "meet_primes": [fmt(x) for x in meet_primes(L)],
        "join_primes": [fmt(L.labels[j]) for j in join_prime_indices(L)],
        "diamond_obstruction": None if obstruction is None else [fmt(x) for x in obstruction],
    }
    return [dumps(report)]


SPECTRA = {"fspcnt": fspcnt, "spcnt": spcnt, "mspec": mspec}


def cmd_spectrum(args) -> list[str]:
    L, _, _ = _load_lattice(args)
    X = SPECTRA[args.variant](L)
    return _emit_space(args, X, name=L.name, variant=args.variant)


def cmd_omega(args) -> list[str]:
    L, _, _ = _load_lattice(args)
    frame, eta = omega(L)
    out = _emit_lattice(args, frame, name=f"Omega({L.name})")
    if args.format == "json":
        out.append(dumps(map_report("eta", eta)))
    return out


def cmd_free_frame(args) -> list[str]:
    L, _, _ = _load_lattice(args)
    frame, unit = free_frame_d(L)
    out = _emit_lattice(args, frame, name=f"d({L.name})")
    if args.format == "json":
        out.append(dumps(map_report("unit", unit)))
    return out


def cmd_dual(args) -> list[str]:
    doc = read_document(args.input)
    if is_lattice_document(doc):
        L, _, _ = lattice_from_document(doc)
        X, name = spcnt(L), L.name
    else:
        X, name = space_from_document(doc), doc.get("name", "")
    return _emit_space(args, hochster_dual(X), name=name, variant="dual")


def cmd_fixed(args) -> list[str]:
    L, sigma, _ = _load_lattice(args)
    if sigma is None:
        raise DocumentError("the fixed command needs an 'automorphism' field")
    return _emit_lattice(args, fixed_sublattice(L, sigma, name=f"fixed({L.name})"))


def cmd_example(args) -> list[str]:
    entry = gallery.get(args.name)
    return _emit_lattice(args, entry.lattice, automorphism=entry.serre, sublattice=entry.tensor_sub)


def cmd_dot(args) -> list[str]:
    doc = read_document(args.input)
    if not is_lattice_document(doc):
        X = space_from_document(doc)
        return [space_dot(X, doc.get("name", ""))]
    L, _, _ = lattice_from_document(doc)
    if args.space:
        return [space_dot(SPECTRA[args.variant](L), L.name)]
    return [lattice_dot(L)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", metavar="FILE", default=argparse.SUPPRESS,
                        help="input document, '-' for stdin (default)")
    common.add_argument("--max-size", type=int, metavar="N", default=argparse.SUPPRESS,
                        help="size guard for exponential oracles")
    common.add_argument("--format", choices=["json", "dot"], default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="thicklat", parents=[common],
                                     description="Spectra and frame approximations of finite lattices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common], help="property report").set_defaults(func=cmd_check)
    p = sub.add_parser("spectrum", parents=[common], help="fSpcnt, Spcnt or MSpec")
    p.add_argument("--variant", choices=sorted(SPECTRA), default="spcnt")
    p.set_defaults(func=cmd_spectrum)
    sub.add_parser("omega", parents=[common], help="opens of the point space").set_defaults(func=cmd_omega)
    sub.add_parser("free-frame", parents=[common], help="free spatial frame d(L)").set_defaults(func=cmd_free_frame)
    sub.add_parser("dual", parents=[common], help="Hochster dual of a space").set_defaults(func=cmd_dual)
    sub.add_parser("fixed", parents=[common], help="fixed sublattice of the automorphism").set_defaults(func=cmd_fixed)
    p = sub.add_parser("example", parents=[common], help="emit a gallery lattice")
    p.add_argument("name")
    p.set_defaults(func=cmd_example)
    p = sub.add_parser("dot", parents=[common], help="graphviz output")
    p.add_argument("--space", action="store_true", help="draw the specialization order of a spectrum")
    p.add_argument("--variant", choices=sorted(SPECTRA), default="spcnt")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.input = getattr(args, "input", "-")
    args.format = getattr(args, "format", "json")
    limit = getattr(args, "max_size", None)
    try:
        with size_limit(limit):
            lines = args.func(args)
    except DocumentError as exc:
        print(f"thicklat: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except KeyError as exc:
        if args.command != "example":
            raise
        print(f"thicklat: unknown example {exc.args[0]!r}; available: {', '.join(gallery.names())}",
              file=sys.stderr)
        return EXIT_EXAMPLE
    except SizeGuard as exc:
        print(f"thicklat: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except LatticeError as exc:
        print(f"thicklat: {exc}", file=sys.stderr)
        return EXIT_LATTICE
    for line in lines:
        print(line)
    return EXIT_OK
