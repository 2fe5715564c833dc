"""Session scripts: declarations of rings, ideals, modules, maps and algebras, and commands.

One statement per line, ``#`` starts a comment::

    ring A = QQ[x] / (x^2)
    module M = coker [[x]]
    rees M --method both --max-degree 4

Polynomials are stored in canonical text form, so rendering a parsed script and
parsing it again gives the same script.
"""

import argparse
import re
import shlex
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from reeskit.errors import ScriptError
from reeskit.polynomial import parse_polynomial, render_polynomial

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_RING = re.compile(
    rf"^ring\s+(?P<name>{_NAME})\s*=\s*QQ\s*(?:\[(?P<vars>[^\]]*)\])?\s*(?:/\s*\((?P<rels>.*)\))?\s*$"
)
_IDEAL = re.compile(rf"^ideal\s+(?P<name>{_NAME})\s*=\s*\((?P<gens>.*)\)\s*$")
_MODULE = re.compile(rf"^module\s+(?P<name>{_NAME})\s*=\s*(?P<kind>coker|free|ideal|sum)\s+(?P<rest>.*)$")
_MAP = re.compile(
    rf"^map\s+(?P<name>{_NAME})\s*:\s*(?P<source>{_NAME})\s*->\s*(?P<target>{_NAME})\s*=\s*(?P<matrix>.*)$"
)
_ALGEBRA = re.compile(
    rf"^algebra\s+(?P<name>{_NAME})\s*=\s*(?P<kind>rees-ideal|rees|sym|tensor)\s+(?P<rest>.*)$"
)
_ROW = re.compile(r"\[([^\[\]]*)\]")

Matrix = Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class RingDecl:
    name: str
    variables: Tuple[str, ...]
    relations: Tuple[str, ...]
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        text = f"ring {self.name} = QQ"
        if self.variables:
            text += f"[{', '.join(self.variables)}]"
        if self.relations:
            text += f" / ({', '.join(self.relations)})"
        return text


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    generators: Tuple[str, ...]
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"ideal {self.name} = ({', '.join(self.generators)})"


@dataclass(frozen=True)
class ModuleDecl:
    """``kind`` is ``coker`` (with ``matrix``), ``free`` (rank in ``args``), ``ideal`` or ``sum``."""

    name: str
    ring: str
    kind: str
    args: Tuple[str, ...] = ()
    matrix: Matrix = ()
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        if self.kind == "coker":
            return f"module {self.name} = coker {render_matrix(self.matrix)}"
        return f"module {self.name} = {self.kind} {' '.join(self.args)}"


@dataclass(frozen=True)
class MapDecl:
    name: str
    ring: str
    source: str
    target: str
    matrix: Matrix
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"map {self.name} : {self.source} -> {self.target} = {render_matrix(self.matrix)}"


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    kind: str
    args: Tuple[str, ...]
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"algebra {self.name} = {self.kind} {' '.join(self.args)}"


@dataclass(frozen=True)
class Command:
    name: str
    args: Tuple[str, ...]
    options: Tuple[Tuple[str, str], ...] = ()
    line: int = field(default=0, compare=False)

    def option(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return dict(self.options).get(key, default)

    def render(self) -> str:
        parts = [self.name] + list(self.args)
        for key, value in self.options:
            parts += [f"--{key.replace('_', '-')}", shlex.quote(value)]
        return " ".join(parts)


Statement = Union[RingDecl, IdealDecl, ModuleDecl, MapDecl, AlgebraDecl, Command]


@dataclass(frozen=True)
class SessionScript:
    statements: Tuple[Statement, ...]

    @property
    def declarations(self) -> List[Statement]:
        return [s for s in self.statements if not isinstance(s, Command)]

    @property
    def commands(self) -> List[Command]:
        return [s for s in self.statements if isinstance(s, Command)]

    def render(self) -> str:
        return "\n".join(s.render() for s in self.statements) + "\n"


def render_matrix(matrix: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in matrix) + "]"


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ScriptError(message)


# command name -> (positional argument kinds, options)
COMMANDS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    "groebner": (("ideal",), ()),
    "dual": (("module",), ()),
    "versal": (("module",), ()),
    "sym": (("module",), ()),
    "rees": (("module",), ("method", "max_degree")),
    "rees-ideal": (("ideal",), ()),
    "gamma": (("module",), ("max_degree",)),
    "hilbert": (("algebra",), ("max_degree", "plot")),
    "verify-theorem-a": (("module",), ("max_degree",)),
    "tensor": (("algebra", "algebra"), ()),
    "equal": (("algebra", "algebra"), ()),
}


# hilbert also takes a module (its Rees algebra), versal also takes a map to a free module
_ALTERNATIVES = {"hilbert": ["algebra", "module"], "versal": ["module", "map"]}


def _command_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="", add_help=False)
    subparsers = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    for name, (positionals, options) in COMMANDS.items():
        sub = subparsers.add_parser(name, add_help=False)
        for index, _ in enumerate(positionals):
            sub.add_argument(f"arg{index}")
        if "method" in options:
            sub.add_argument("--method", choices=["versal", "gamma", "both"])
        if "max_degree" in options:
            sub.add_argument("--max-degree", dest="max_degree", type=int)
        if "plot" in options:
            sub.add_argument("--plot")
    return parser


class _Parser:
    def __init__(self) -> None:
        self.symbols: Dict[str, str] = {}
        self.rings: Dict[str, Tuple[str, ...]] = {}
        self.active_ring: Optional[str] = None
        self.command_parser = _command_parser()
        # current line as written, for error columns
        self.raw = ""

    def fail(self, message: str, line: int, text: str, token: Optional[str] = None) -> ScriptError:
        raw = self.raw or text
        if token and token in raw:
            column = raw.find(token) + 1
        else:
            column = len(raw) - len(raw.lstrip()) + 1
        return ScriptError(message, line, column)

    def declare(self, name: str, kind: str, line: int, text: str) -> None:
        if name in self.symbols:
            raise self.fail(f"`{name}` is already declared", line, text, name)
        self.symbols[name] = kind

    def lookup(self, name: str, kinds: Sequence[str], line: int, text: str) -> None:
        kind = self.symbols.get(name)
        if kind is None:
            raise self.fail(f"unknown identifier `{name}`", line, text, name)
        if kind not in kinds:
            raise self.fail(
                f"`{name}` is a {kind}, expected {' or '.join(kinds)}", line, text, name
            )

    def variables(self, line: int, text: str) -> Tuple[str, ...]:
        if self.active_ring is None:
            raise self.fail("no ring declared", line, text)
        return self.rings[self.active_ring]

    def polynomial(self, source: str, names: Sequence[str], line: int, text: str) -> str:
        source = source.strip()
        if not source:
            raise self.fail("empty polynomial", line, text)
        try:
            poly = parse_polynomial(source, names)
        except ScriptError as exc:
            raise self.fail(exc.message, line, text, source) from exc
        return render_polynomial(poly, names)

    def polynomial_list(self, source: str, names: Sequence[str], line: int, text: str) -> Tuple[str, ...]:
        if not source.strip():
            return ()
        return tuple(self.polynomial(p, names, line, text) for p in source.split(","))

    def matrix(self, source: str, names: Sequence[str], line: int, text: str) -> Matrix:
        source = source.strip()
        if not (source.startswith("[") and source.endswith("]")):
            raise self.fail("expected a matrix literal [[...], ...]", line, text, source)
        inner = source[1:-1]
        rows = _ROW.findall(inner)
        if _ROW.sub("", inner).replace(",", "").strip():
            raise self.fail("malformed matrix literal", line, text, source)
        matrix = tuple(self.polynomial_list(row, names, line, text) for row in rows)
        widths = {len(row) for row in matrix}
        if len(widths) > 1:
            raise self.fail(
                f"arity mismatch: matrix rows have lengths {sorted(widths)}", line, text, source
            )
        return matrix

    def statement(self, text: str, line: int) -> Statement:
        keyword = text.split(maxsplit=1)[0]
        if keyword == "ring":
            return self.ring(text, line)
        if keyword == "ideal":
            return self.ideal(text, line)
        if keyword == "module":
            return self.module(text, line)
        if keyword == "map":
            return self.map(text, line)
        if keyword == "algebra":
            return self.algebra(text, line)
        return self.command(text, line)

    def ring(self, text: str, line: int) -> RingDecl:
        match = _RING.match(text)
        if match is None:
            raise self.fail("malformed ring declaration", line, text)
        names = tuple(
            v.strip() for v in (match["vars"] or "").split(",") if v.strip()
        )
        for name in names:
            if not re.fullmatch(_NAME, name):
                raise self.fail(f"invalid variable name `{name}`", line, text, name)
        if len(set(names)) != len(names):
            raise self.fail("duplicated variable names", line, text)
        self.declare(match["name"], "ring", line, text)
        self.rings[match["name"]] = names
        self.active_ring = match["name"]
        relations = self.polynomial_list(match["rels"] or "", names, line, text)
        return RingDecl(match["name"], names, relations, line)

    def ideal(self, text: str, line: int) -> IdealDecl:
        match = _IDEAL.match(text)
        if match is None:
            raise self.fail("malformed ideal declaration", line, text)
        names = self.variables(line, text)
        generators = self.polynomial_list(match["gens"], names, line, text)
        self.declare(match["name"], "ideal", line, text)
        return IdealDecl(match["name"], self.active_ring, generators, line)  # type: ignore[arg-type]

    def module(self, text: str, line: int) -> ModuleDecl:
        match = _MODULE.match(text)
        if match is None:
            raise self.fail("malformed module declaration", line, text)
        names = self.variables(line, text)
        kind, rest = match["kind"], match["rest"].strip()
        ring = self.active_ring
        if kind == "coker":
            declaration = ModuleDecl(
                match["name"], ring, kind, (), self.matrix(rest, names, line, text), line  # type: ignore[arg-type]
            )
        elif kind == "free":
            if not rest.isdigit():
                raise self.fail("free module needs a nonnegative rank", line, text, rest)
            declaration = ModuleDecl(match["name"], ring, kind, (str(int(rest)),), (), line)  # type: ignore[arg-type]
        else:
            args = tuple(rest.split())
            expected = 1 if kind == "ideal" else 2
            if len(args) != expected:
                raise self.fail(f"`{kind}` takes {expected} argument(s)", line, text, rest)
            for arg in args:
                self.lookup(arg, ["ideal"] if kind == "ideal" else ["module"], line, text)
            declaration = ModuleDecl(match["name"], ring, kind, args, (), line)  # type: ignore[arg-type]
        self.declare(match["name"], "module", line, text)
        return declaration

    def map(self, text: str, line: int) -> MapDecl:
        match = _MAP.match(text)
        if match is None:
            raise self.fail("malformed map declaration", line, text)
        names = self.variables(line, text)
        self.lookup(match["source"], ["module"], line, text)
        self.lookup(match["target"], ["module"], line, text)
        matrix = self.matrix(match["matrix"], names, line, text)
        self.declare(match["name"], "map", line, text)
        return MapDecl(
            match["name"], self.active_ring, match["source"], match["target"], matrix, line  # type: ignore[arg-type]
        )

    def algebra(self, text: str, line: int) -> AlgebraDecl:
        match = _ALGEBRA.match(text)
        if match is None:
            raise self.fail("malformed algebra declaration", line, text)
        kind = match["kind"]
        args = tuple(match["rest"].split())
        kinds = {
            "rees": ["module"],
            "sym": ["module"],
            "rees-ideal": ["ideal"],
            "tensor": ["algebra", "algebra"],
        }[kind]
        if len(args) != len(kinds):
            raise self.fail(f"`{kind}` takes {len(kinds)} argument(s)", line, text, match["rest"])
        for arg, expected in zip(args, kinds):
            self.lookup(arg, [expected], line, text)
        self.declare(match["name"], "algebra", line, text)
        return AlgebraDecl(match["name"], kind, args, line)

    def command(self, text: str, line: int) -> Command:
        try:
            tokens = shlex.split(text)
        except ValueError as exc:
            raise self.fail(str(exc), line, text) from exc
        if tokens[0] not in COMMANDS:
            raise self.fail(f"unknown command `{tokens[0]}`", line, text, tokens[0])
        try:
            namespace = self.command_parser.parse_args(tokens)
        except ScriptError as exc:
            raise self.fail(exc.message, line, text, tokens[0]) from exc
        positionals, options = COMMANDS[tokens[0]]
        args = tuple(getattr(namespace, f"arg{i}") for i in range(len(positionals)))
        for arg, kind in zip(args, positionals):
            accepted = _ALTERNATIVES.get(tokens[0], [kind])
            self.lookup(arg, accepted, line, text)
        values = tuple(
            (key, str(getattr(namespace, key)))
            for key in options
            if getattr(namespace, key) is not None
        )
        if any(key == "max_degree" and int(value) < 1 for key, value in values):
            raise self.fail("--max-degree must be at least 1", line, text, "--max-degree")
        return Command(tokens[0], args, values, line)


def parse_script(text: str) -> SessionScript:
    """
    Parse a session script.

    Parameters
    ----------
    text: str
        Script text.

    Returns
    -------
    SessionScript

    Raises
    ------
    ScriptError
        On a syntax error, an unknown identifier or a matrix with rows of different lengths.
    """
    parser = _Parser()
    statements = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            parser.raw = raw
            statements.append(parser.statement(stripped, number))
    return SessionScript(tuple(statements))
