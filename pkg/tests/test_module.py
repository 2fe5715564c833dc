import pytest

from reeskit.errors import DomainError
from reeskit.groebner import FreeModuleVector
from reeskit.module import (
    ModuleMap,
    PresentedModule,
    PresentedRing,
    direct_sum,
    direct_sum_map,
    double_dual_embedding,
    double_dual_map,
    dual,
    dual_map,
    ideal_inclusion,
    is_versal,
    versal_map,
)


def vector(ring: PresentedRing, *entries: str) -> FreeModuleVector:
    return FreeModuleVector([ring.parse(e) for e in entries], ring.nvars)


def test_ring(dual_numbers: PresentedRing, rationals: PresentedRing) -> None:
    x = dual_numbers("x")
    assert (x * x).is_zero()
    assert str(x + dual_numbers(1)) == "x + 1"
    assert dual_numbers.describe() == "QQ[x] / (x^2)"
    assert rationals.describe() == "QQ"
    assert dual_numbers.standard_monomials() == [(1,), (0,)]
    assert dual_numbers.dimension() == 2
    assert rationals.dimension() == 1
    assert not PresentedRing(["x"]).is_finite_dimensional()
    assert dual_numbers == PresentedRing(["x"], ["x^2"])
    with pytest.raises(DomainError):
        PresentedRing(["x", "x"])
    with pytest.raises(DomainError):
        PresentedRing(["x"]).standard_monomials()


def test_presented_module(residue: PresentedModule, dual_numbers: PresentedRing) -> None:
    assert residue.rank == 1
    assert residue.relations == (vector(dual_numbers, "x"),)
    assert residue.dimension() == 1
    assert not residue.is_free()
    assert not residue.is_zero()
    assert residue.contains(vector(dual_numbers, "x"))
    assert residue.describe() == "coker [[x]]"
    assert PresentedModule.free(dual_numbers, 2).dimension() == 4
    unit = PresentedModule.from_matrix(dual_numbers, [[dual_numbers.one()]])
    assert unit.is_zero()
    # x^2 is zero in the ring, so the relation disappears
    squared = PresentedModule(dual_numbers, 1, [FreeModuleVector([dual_numbers.variable("x") ** 2])])
    assert squared.relations == ()
    assert squared.is_free()


def test_from_ideal(plane: PresentedRing, maximal_ideal: PresentedModule) -> None:
    assert maximal_ideal.rank == 2
    assert maximal_ideal.relations == (vector(plane, "y", "-x"),)


def test_dual_free(dual_numbers: PresentedRing) -> None:
    free = PresentedModule.free(dual_numbers, 2)
    result = dual(free)
    assert result.module.is_free()
    assert result.module.rank == 2
    assert result.generators == (
        FreeModuleVector.basis_vector(0, 2, 1),
        FreeModuleVector.basis_vector(1, 2, 1),
    )


def test_dual_residue(residue: PresentedModule, dual_numbers: PresentedRing) -> None:
    result = dual(residue)
    assert result.generators == (vector(dual_numbers, "x"),)
    assert result.module.equals(residue)
    assert result.source is residue


def test_dual_keeps_its_source() -> None:
    # equal presentations over rings that differ only by name
    first_ring = PresentedRing(["x"], ["x^2"], name="A")
    second_ring = PresentedRing(["x"], ["x^2"], name="B")
    first = PresentedModule.from_matrix(first_ring, [[first_ring.parse("x")]])
    second = PresentedModule.from_matrix(second_ring, [[second_ring.parse("x")]])
    assert dual(first).source is first
    assert dual(second).source is second
    assert dual(second).module.ring.name == "B"


def test_dual_torsion(torsion: PresentedModule) -> None:
    result = dual(torsion)
    assert result.generators == ()
    assert result.module.rank == 0


def test_dual_maximal_ideal(plane: PresentedRing, maximal_ideal: PresentedModule) -> None:
    result = dual(maximal_ideal)
    assert result.generators == (vector(plane, "x", "y"),)
    assert result.module.is_free()


def test_double_dual_map(
    dual_numbers: PresentedRing, residue: PresentedModule, torsion: PresentedModule
) -> None:
    assert double_dual_map(PresentedModule.free(dual_numbers, 2)).is_isomorphism()
    assert double_dual_map(residue).is_isomorphism()
    to_zero = double_dual_map(torsion)
    assert to_zero.target.rank == 0
    assert not to_zero.is_injective()


def test_versal_map(
    dual_numbers: PresentedRing,
    residue: PresentedModule,
    torsion: PresentedModule,
    line: PresentedRing,
) -> None:
    phi = versal_map(residue)
    assert phi.matrix == ((dual_numbers.parse("x"),),)
    assert phi.target.is_free()
    assert is_versal(phi)

    free = PresentedModule.free(dual_numbers, 3)
    assert versal_map(free).is_isomorphism()
    assert is_versal(ModuleMap.identity(free))

    assert versal_map(torsion).target.rank == 0
    assert is_versal(versal_map(torsion))

    assert not is_versal(ideal_inclusion(line, [line.parse("x")]))
    with pytest.raises(DomainError):
        is_versal(ModuleMap.identity(residue))


def test_versal_factorization(module_corpus: dict) -> None:
    for module in module_corpus.values():
        composite = double_dual_embedding(module).compose(double_dual_map(module))
        assert composite.matrix == versal_map(module).matrix


def test_module_map(line: PresentedRing, torsion: PresentedModule) -> None:
    target = PresentedModule.free(line, 1)
    with pytest.raises(DomainError, match="Ill-defined"):
        ModuleMap(torsion, target, [[line.one()]])
    with pytest.raises(DomainError):
        ModuleMap(target, target, [[line.one(), line.one()]])
    multiply = ModuleMap(target, target, [[line.parse("x")]])
    assert multiply.is_injective()
    assert not multiply.is_surjective()
    quotient = ModuleMap(target, torsion, [[line.one()]])
    assert quotient.is_surjective()
    assert not quotient.is_injective()
    assert quotient.compose(multiply).apply(FreeModuleVector([line.one()])).is_zero()


def test_direct_sum(
    dual_numbers: PresentedRing, residue: PresentedModule, residue_sum: PresentedModule
) -> None:
    assert residue_sum.rank == 2
    assert set(residue_sum.relations) == {
        vector(dual_numbers, "x", "0"),
        vector(dual_numbers, "0", "x"),
    }
    padded = direct_sum(residue, PresentedModule.zero(dual_numbers))
    assert padded == residue

    phi = versal_map(residue)
    assert is_versal(direct_sum_map(phi, phi))
    with pytest.raises(DomainError):
        direct_sum(residue, PresentedModule.free(PresentedRing(["y"]), 1))


def test_dual_map(
    dual_numbers: PresentedRing,
    residue: PresentedModule,
    plane: PresentedRing,
    maximal_ideal: PresentedModule,
) -> None:
    free = PresentedModule.free(dual_numbers, 1)
    quotient = ModuleMap(free, residue, [[dual_numbers.one()]])
    assert quotient.is_surjective()
    transpose = dual_map(quotient)
    assert transpose.source.equals(dual(residue).module)
    assert transpose.target == dual(free).module
    assert transpose.matrix == ((dual_numbers.parse("x"),),)
    assert transpose.is_injective()

    cover = ModuleMap(
        PresentedModule.free(plane, 2),
        maximal_ideal,
        [[plane.one(), plane.zero()], [plane.zero(), plane.one()]],
    )
    assert cover.is_surjective()
    assert dual_map(cover).is_injective()

    # multiplication by x is not onto, and its transpose is not injective
    multiply = ModuleMap(free, free, [[dual_numbers.parse("x")]])
    assert not multiply.is_surjective()
    assert not dual_map(multiply).is_injective()


def test_dual_map_of_surjections_is_injective(module_corpus: dict) -> None:
    for module in module_corpus.values():
        ring = module.ring
        rows = [
            [ring.one() if i == j else ring.zero() for j in range(module.rank)]
            for i in range(module.rank)
        ]
        cover = ModuleMap(PresentedModule.free(ring, module.rank), module, rows)
        assert cover.is_surjective()
        assert dual_map(cover).is_injective()
