"""Command line front end: run a session script and print text or JSON results."""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from reeskit._version import __version__
from reeskit.constant import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_ORDER,
    EXIT_DOMAIN,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    MAX_DEGREE_ENV,
    ORDERS,
    RESULTS_SCHEMA_VERSION,
)
from reeskit.divided_powers import gamma_dual_degree, gamma_module_degree
from reeskit.errors import DomainError, ReesKitError, ScriptError, VerificationError
from reeskit.gamma_rees import rees_via_gamma, verify_theorem_a
from reeskit.groebner import Ideal, buchberger
from reeskit.module import (
    ModuleMap,
    PresentedModule,
    PresentedRing,
    direct_sum,
    dual,
    is_versal,
    versal_map,
)
from reeskit.polynomial import MonomialOrder, Polynomial, parse_polynomial
from reeskit.rees import (
    GradedAlgebraPresentation,
    presentation_equal,
    rees_of_ideal,
    rees_via_versal,
    sym_presentation,
    tensor_presentation,
)
from reeskit.script import (
    AlgebraDecl,
    Command,
    IdealDecl,
    MapDecl,
    ModuleDecl,
    RingDecl,
    SessionScript,
    parse_script,
)


@dataclass
class CommandResult:
    command: str
    line: int
    text: str
    data: dict = field(default_factory=dict)
    ok: bool = True

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "line": self.line,
            "ok": self.ok,
            "text": self.text,
            "data": self.data,
        }


class Session:
    def __init__(
        self,
        max_degree: int = DEFAULT_MAX_DEGREE,
        order: str = DEFAULT_ORDER,
        progress: bool = False,
    ) -> None:
        """
        Named objects of a running script.

        Parameters
        ----------
        max_degree: int, optional
            Default is 4
            Degree bound of commands that do not set ``--max-degree``.
        order: str, optional
            Default is grevlex
            Monomial order of every declared ring.
        progress: bool, optional
            Default is False
            Show progress bars for degreewise computations.
        """
        self.max_degree = max_degree
        self.order = MonomialOrder.from_name(order)
        self.progress = progress
        self.rings: Dict[str, PresentedRing] = {}
        self.ideals: Dict[str, Tuple[PresentedRing, List[Polynomial]]] = {}
        self.modules: Dict[str, PresentedModule] = {}
        self.maps: Dict[str, ModuleMap] = {}
        self.algebras: Dict[str, GradedAlgebraPresentation] = {}

    def _matrix(self, ring: PresentedRing, rows) -> List[List[Polynomial]]:
        return [[ring.normal_form(parse_polynomial(e, ring.variables)) for e in row] for row in rows]

    def declare(self, statement) -> None:
        if isinstance(statement, RingDecl):
            self.rings[statement.name] = PresentedRing(
                statement.variables, statement.relations, self.order, statement.name
            )
        elif isinstance(statement, IdealDecl):
            ring = self.rings[statement.ring]
            self.ideals[statement.name] = (
                ring,
                [ring.parse(g) for g in statement.generators],
            )
        elif isinstance(statement, ModuleDecl):
            self.modules[statement.name] = self._module(statement)
        elif isinstance(statement, MapDecl):
            ring = self.rings[statement.ring]
            self.maps[statement.name] = ModuleMap(
                self.modules[statement.source],
                self.modules[statement.target],
                self._matrix(ring, statement.matrix),
            )
        elif isinstance(statement, AlgebraDecl):
            self.algebras[statement.name] = self._algebra(statement)

    def _module(self, statement: ModuleDecl) -> PresentedModule:
        ring = self.rings[statement.ring]
        if statement.kind == "coker":
            return PresentedModule.from_matrix(ring, self._matrix(ring, statement.matrix))
        if statement.kind == "free":
            return PresentedModule.free(ring, int(statement.args[0]))
        if statement.kind == "ideal":
            ideal_ring, generators = self.ideals[statement.args[0]]
            if ideal_ring != ring:
                raise DomainError(f"Ideal {statement.args[0]} belongs to another ring.")
            return PresentedModule.from_ideal(ring, generators)
        first, second = (self.modules[a] for a in statement.args)
        return direct_sum(first, second)

    def _algebra(self, statement: AlgebraDecl) -> GradedAlgebraPresentation:
        if statement.kind == "rees":
            return rees_via_versal(self.modules[statement.args[0]])
        if statement.kind == "sym":
            return sym_presentation(self.modules[statement.args[0]])
        if statement.kind == "rees-ideal":
            ring, generators = self.ideals[statement.args[0]]
            return rees_of_ideal(ring, generators)
        first, second = (self.algebras[a] for a in statement.args)
        return tensor_presentation(first, second)

    def degree(self, command: Command) -> int:
        return int(command.option("max_degree", str(self.max_degree)))  # type: ignore[arg-type]

    def execute(self, command: Command) -> CommandResult:
        handler = getattr(self, "_" + command.name.replace("-", "_"))
        text, data, ok = handler(command)
        return CommandResult(command.render(), command.line, text, data, ok)

    def _groebner(self, command: Command):
        name = command.args[0]
        ring, generators = self.ideals[name]
        basis = buchberger(Ideal(generators, ring.nvars), ring.order)
        rendered = [ring.render(g) for g in basis]
        return (
            f"GB({name}) = ({', '.join(rendered)})",
            {"basis": rendered, "order": str(ring.order)},
            True,
        )

    def _dual(self, command: Command):
        name = command.args[0]
        module = self.modules[name]
        result = dual(module)
        ring = module.ring
        generators = [[ring.render(e) for e in u] for u in result.generators]
        relations = [[ring.render(e) for e in r] for r in result.module.relations]
        text = f"{name}* = {result.module.describe()}\ngenerators: {ring.render_matrix(result.generators)}"
        return (
            text,
            {"rank": result.module.rank, "generators": generators, "relations": relations},
            True,
        )

    def _versal(self, command: Command):
        name = command.args[0]
        phi = self.maps[name] if name in self.maps else versal_map(self.modules[name])
        versal = is_versal(phi)
        ring = phi.ring
        matrix = [[ring.render(e) for e in row] for row in phi.matrix]
        if phi.source.rank == 1:
            # one generator: print the image vector
            shown = "[" + ", ".join(row[0] for row in matrix) + "]"
        else:
            shown = ring.render_matrix(phi.matrix)
        text = f"versal({name}) = {shown}\nis_versal: {str(versal).lower()}"
        return text, {"matrix": matrix, "rank": phi.target.rank, "is_versal": versal}, True

    @staticmethod
    def _presentation_data(algebra: GradedAlgebraPresentation) -> dict:
        return {
            "presentation": algebra.render(),
            "generators": list(algebra.generators),
            "relations": [algebra.render_element(g) for g in algebra.positive_relations()],
        }

    def _sym(self, command: Command):
        name = command.args[0]
        algebra = sym_presentation(self.modules[name])
        return f"Sym({name}) = {algebra.render()}", self._presentation_data(algebra), True

    def _rees(self, command: Command):
        name = command.args[0]
        module = self.modules[name]
        method = command.option("method", "versal")
        max_degree = self.degree(command)
        lines: List[str] = []
        data: dict = {"method": method}
        ok = True
        if method in ("versal", "both"):
            algebra = rees_via_versal(module)
            lines.append(f"R({name}) = {algebra.render()}")
            data.update(self._presentation_data(algebra))
        if method == "gamma":
            kernels = rees_via_gamma(module, max_degree, self.progress)
            ring = module.ring
            data["kernels"] = []
            for kernel in kernels:
                generators = [[ring.render(e) for e in g] for g in kernel.generators]
                status = "zero" if kernel.is_trivial() else ring.render_matrix(kernel.generators)
                lines.append(f"degree {kernel.degree}: kernel {status}")
                data["kernels"].append(
                    {"degree": kernel.degree, "trivial": kernel.is_trivial(), "generators": generators}
                )
        if method == "both":
            report = verify_theorem_a(module, max_degree, self.progress)
            lines.append(report.to_text())
            data["report"] = report.to_dict()
            ok = report.ok
        return "\n".join(lines), data, ok

    def _rees_ideal(self, command: Command):
        name = command.args[0]
        ring, generators = self.ideals[name]
        algebra = rees_of_ideal(ring, generators)
        return f"R({name}) = {algebra.render()}", self._presentation_data(algebra), True

    def _gamma(self, command: Command):
        name = command.args[0]
        module = self.modules[name]
        lines = []
        degrees = []
        for degree in range(1, self.degree(command) + 1):
            gamma = gamma_module_degree(module, degree).module
            gamma_dual = gamma_dual_degree(module, degree).module
            entry = {
                "degree": degree,
                "rank": gamma.rank,
                "relations": len(gamma.relations),
                "dual_rank": gamma_dual.rank,
                "dual_relations": len(gamma_dual.relations),
            }
            line = (
                f"degree {degree}: Gamma = {gamma.describe()}, dual = {gamma_dual.describe()}"
            )
            if module.ring.is_finite_dimensional():
                entry["dimension"] = gamma.dimension()
                entry["dual_dimension"] = gamma_dual.dimension()
                line += f", dim {entry['dimension']} / {entry['dual_dimension']}"
            lines.append(line)
            degrees.append(entry)
        return "\n".join(lines), {"degrees": degrees}, True

    def _hilbert(self, command: Command):
        name = command.args[0]
        if name in self.algebras:
            algebra = self.algebras[name]
        else:
            algebra = rees_via_versal(self.modules[name])
        max_degree = self.degree(command)
        values = algebra.hilbert_function(max_degree)
        data: dict = {"values": values, "max_degree": max_degree}
        plot = command.option("plot")
        if plot is not None:
            algebra.plot_hilbert(max_degree).write_html(plot)
            data["plot"] = plot
        return f"H({name}) = {values}", data, True

    def _verify_theorem_a(self, command: Command):
        report = verify_theorem_a(
            self.modules[command.args[0]], self.degree(command), self.progress
        )
        return report.to_text(), report.to_dict(), report.ok

    def _tensor(self, command: Command):
        first, second = command.args
        algebra = tensor_presentation(self.algebras[first], self.algebras[second])
        return (
            f"{first} (x) {second} = {algebra.render()}",
            self._presentation_data(algebra),
            True,
        )

    def _equal(self, command: Command):
        first, second = command.args
        equal = presentation_equal(self.algebras[first], self.algebras[second])
        return f"equal({first}, {second}): {str(equal).lower()}", {"equal": equal}, True


def run(
    script: SessionScript,
    max_degree: int = DEFAULT_MAX_DEGREE,
    order: str = DEFAULT_ORDER,
    progress: bool = False,
) -> List[CommandResult]:
    """
    Execute a parsed script statement by statement.

    Parameters
    ----------
    script: SessionScript
    max_degree: int, optional
        Default is 4
    order: str, optional
        Default is grevlex
    progress: bool, optional
        Default is False

    Returns
    -------
    list
        One CommandResult per command.

    Raises
    ------
    DomainError, VerificationError
        With the failing line prefixed to the message.
    """
    session = Session(max_degree, order, progress)
    results = []
    for statement in script.statements:
        try:
            if isinstance(statement, Command):
                logging.info(f"line {statement.line}: {statement.render()}")
                results.append(session.execute(statement))
            else:
                session.declare(statement)
        except ScriptError:
            raise
        except ReesKitError as exc:
            raise type(exc)(f"line {statement.line}: {statement.render()}: {exc}") from exc
    return results


def render_results(results: Sequence[CommandResult], output_format: str = "text") -> str:
    if output_format == "json":
        return json.dumps(
            {
                "schema_version": RESULTS_SCHEMA_VERSION,
                "ok": all(r.ok for r in results),
                "results": [r.to_dict() for r in results],
            },
            indent=2,
        )
    return "\n\n".join(r.text for r in results)


def _default_max_degree() -> int:
    value = os.environ.get(MAX_DEGREE_ENV)
    if value is None:
        return DEFAULT_MAX_DEGREE
    try:
        return int(value)
    except ValueError:
        logging.warning(f"Ignoring {MAX_DEGREE_ENV}={value!r}, not an integer")
        return DEFAULT_MAX_DEGREE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reeskit",
        description="Rees algebras of modules by the versal and divided-power routes.",
    )
    parser.add_argument("script", nargs="?", default="-", help="Script file, - for stdin.")
    parser.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help=f"Degree bound (default: ${MAX_DEGREE_ENV} or {DEFAULT_MAX_DEGREE}).",
    )
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--order", choices=list(ORDERS), default=DEFAULT_ORDER)
    parser.add_argument("--progress", action="store_true", help="Show progress bars.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("-q", "--quiet", action="store_true", help="Only log errors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    level = logging.WARNING - 10 * min(args.verbose, 2)
    if args.quiet:
        level = logging.ERROR
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", stream=sys.stderr)

    max_degree = args.max_degree if args.max_degree is not None else _default_max_degree()
    if max_degree < 1:
        print("reeskit: --max-degree must be at least 1", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.script == "-":
            text = sys.stdin.read()
        else:
            with open(args.script, encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        print(f"reeskit: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        script = parse_script(text)
        results = run(script, max_degree, args.order, args.progress)
    except ScriptError as exc:
        print(f"{args.script}:{exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"reeskit: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except DomainError as exc:
        print(f"reeskit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    print(render_results(results, args.format))
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFICATION
