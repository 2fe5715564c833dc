import pytest

from reeskit.divided_powers import bullet
from reeskit.errors import DomainError
from reeskit.gamma_rees import (
    DegreeVerdict,
    TheoremAReport,
    canonical_map_degree,
    degree_one_functionals,
    rees_via_gamma,
    verify_theorem_a,
)
from reeskit.module import (
    PresentedModule,
    PresentedRing,
    double_dual_embedding,
    double_dual_map,
    versal_map,
)
from reeskit.rees import rees_via_versal


def test_degree_one_functionals(dual_numbers: PresentedRing, residue: PresentedModule) -> None:
    (xi,) = degree_one_functionals(residue)
    assert xi.degree == 1
    assert xi.coefficient((1,)) == dual_numbers.parse("x")


def test_canonical_map_degree(plane: PresentedRing, maximal_ideal: PresentedModule) -> None:
    degreewise = canonical_map_degree(maximal_ideal, 2)
    assert degreewise.monomials == ((2, 0), (1, 1), (0, 2))
    assert degreewise.target_basis == ((2,),)
    assert degreewise.matrix == tuple(
        [tuple(plane.parse(m) for m in ["x^2", "x*y", "y^2"])]
    )


def test_canonical_map_in_degree_one(module_corpus: dict) -> None:
    for module in module_corpus.values():
        first = canonical_map_degree(module, 1)
        assert first.matrix == versal_map(module).matrix
        evaluation = double_dual_embedding(module).compose(double_dual_map(module))
        assert first.matrix == evaluation.matrix


@pytest.mark.parametrize("name", ["residue_sum", "maximal_ideal", "principal"])
@pytest.mark.parametrize("split", [(1, 1), (1, 2), (2, 1)])
def test_canonical_map_is_multiplicative(module_corpus: dict, name: str, split: tuple) -> None:
    i, j = split
    module = module_corpus[name]
    first, second = canonical_map_degree(module, i), canonical_map_degree(module, j)
    total = canonical_map_degree(module, i + j)
    for a, u in zip(first.monomials, first.images):
        for b, v in zip(second.monomials, second.images):
            index = total.monomials.index(tuple(x + y for x, y in zip(a, b)))
            assert bullet(u, v) == total.images[index]


def test_rees_via_gamma(residue: PresentedModule, torsion: PresentedModule) -> None:
    kernels = rees_via_gamma(residue, 3)
    assert [k.degree for k in kernels] == [1, 2, 3]
    assert kernels[0].is_trivial()
    assert not kernels[1].is_trivial()
    assert kernels[1].quotient.is_zero()

    (only,) = rees_via_gamma(torsion, 1)
    assert only.quotient.is_zero()
    with pytest.raises(DomainError):
        rees_via_gamma(residue, 0)


def test_rees_via_gamma_matches_versal(residue_sum: PresentedModule) -> None:
    versal = rees_via_versal(residue_sum)
    for kernel in rees_via_gamma(residue_sum, 2):
        assert kernel.quotient.equals(versal.degree_module(kernel.degree))


@pytest.mark.parametrize(
    "name", ["free", "residue", "residue_sum", "torsion", "maximal_ideal", "principal"]
)
def test_verify_theorem_a(module_corpus: dict, name: str) -> None:
    report = verify_theorem_a(module_corpus[name], 4)
    assert report.ok
    assert [v.degree for v in report.verdicts] == [1, 2, 3, 4]


def test_report() -> None:
    report = TheoremAReport(2, (DegreeVerdict(1, True, 1, 1), DegreeVerdict(2, False, 3, 2)))
    assert not report.ok
    assert report.to_dict() == {
        "max_degree": 2,
        "ok": False,
        "degrees": [
            {"degree": 1, "ok": True, "versal_generators": 1, "gamma_generators": 1},
            {"degree": 2, "ok": False, "versal_generators": 3, "gamma_generators": 2},
        ],
    }
    lines = report.to_text().splitlines()
    assert lines[0] == "degree  versal  gamma  ok"
    assert lines[-1] == "checked degrees 1..2"
    assert lines[2].split() == ["2", "3", "2", "false"]
