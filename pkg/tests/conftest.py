"""conftest file fore shared pytest fixtures"""

import pytest

from reeskit import PresentedModule, PresentedRing, direct_sum


@pytest.fixture
def dual_numbers() -> PresentedRing:
    """QQ[x] / (x^2)"""
    return PresentedRing(["x"], ["x^2"])


@pytest.fixture
def line() -> PresentedRing:
    return PresentedRing(["x"])


@pytest.fixture
def plane() -> PresentedRing:
    return PresentedRing(["x", "y"])


@pytest.fixture
def rationals() -> PresentedRing:
    return PresentedRing([])


@pytest.fixture
def residue(dual_numbers: PresentedRing) -> PresentedModule:
    """A/x over A = QQ[x] / (x^2)"""
    return PresentedModule.from_matrix(dual_numbers, [[dual_numbers.parse("x")]])


@pytest.fixture
def residue_sum(residue: PresentedModule) -> PresentedModule:
    return direct_sum(residue, residue)


@pytest.fixture
def torsion(line: PresentedRing) -> PresentedModule:
    """A/x over A = QQ[x]"""
    return PresentedModule.from_matrix(line, [[line.parse("x")]])


@pytest.fixture
def maximal_ideal(plane: PresentedRing) -> PresentedModule:
    """(x, y) in QQ[x, y]"""
    return PresentedModule.from_ideal(plane, [plane.parse("x"), plane.parse("y")])


@pytest.fixture
def module_corpus(
    dual_numbers: PresentedRing,
    line: PresentedRing,
    plane: PresentedRing,
    residue: PresentedModule,
    residue_sum: PresentedModule,
    torsion: PresentedModule,
    maximal_ideal: PresentedModule,
) -> dict:
    return {
        "free": PresentedModule.free(dual_numbers, 2),
        "residue": residue,
        "residue_sum": residue_sum,
        "torsion": torsion,
        "maximal_ideal": maximal_ideal,
        "principal": PresentedModule.from_ideal(line, [line.parse("x")]),
    }


SCRIPT = """\
# the running example
ring A = QQ[x] / (x^2)
module M = coker [[x]]
module N = sum M M
dual M
versal M
sym M
rees M
rees N
hilbert M --max-degree 3
"""


@pytest.fixture
def script_text() -> str:
    return SCRIPT
