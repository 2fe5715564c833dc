import pytest
from plotly.graph_objects import Figure

from reeskit.errors import DomainError
from reeskit.module import (
    ModuleMap,
    PresentedModule,
    PresentedRing,
    direct_sum_map,
    double_dual_map,
    versal_map,
)
from reeskit.polynomial import parse_polynomial
from reeskit.rees import (
    GradedAlgebraMap,
    GradedAlgebraPresentation,
    algebra_map_kernel,
    generator_names,
    hilbert_function,
    presentation_equal,
    rees_map,
    rees_of_ideal,
    rees_of_map,
    rees_via_versal,
    sym_map,
    sym_presentation,
    symmetric_power,
    tensor_presentation,
)


def test_sym(dual_numbers: PresentedRing, residue: PresentedModule, residue_sum: PresentedModule) -> None:
    assert sym_presentation(PresentedModule.free(dual_numbers, 1)).render() == "A[S]"
    assert sym_presentation(residue).render() == "A[S] / (x*S)"
    assert sym_presentation(residue_sum).render() == "A[S, T] / (x*S, x*T)"
    assert sym_presentation(residue, ["W"]).generators == ("W",)
    with pytest.raises(DomainError):
        sym_presentation(residue, ["S", "T"])


def test_symmetric_power(residue_sum: PresentedModule) -> None:
    square = symmetric_power(residue_sum, 2)
    assert square.rank == 3
    assert square.dimension() == 3


def test_graded_presentation(dual_numbers: PresentedRing) -> None:
    algebra = GradedAlgebraPresentation(dual_numbers, ["U"], None, ["x*U", "U^2"])
    assert algebra.names == ("x", "U")
    assert algebra.monomials(2) == ((2,),)
    with pytest.raises(DomainError):
        GradedAlgebraPresentation(dual_numbers, ["U"], None, ["U + x"])
    with pytest.raises(DomainError):
        GradedAlgebraPresentation(dual_numbers, ["x"])
    with pytest.raises(DomainError):
        GradedAlgebraPresentation(dual_numbers, ["U"], [0])
    weighted = GradedAlgebraPresentation(dual_numbers, ["U", "V"], [1, 2], ["U^2 - V"])
    assert weighted.hilbert_function(2) == [2, 2, 2]


def test_sym_map(dual_numbers: PresentedRing, residue: PresentedModule) -> None:
    f = sym_map(versal_map(residue))
    target_names = f.target.names
    assert f.images == (parse_polynomial("x*S", target_names),)

    identity = sym_map(ModuleMap.identity(residue))
    assert identity.images == (identity.target.generator(0),)

    phi = versal_map(residue)
    pair = sym_map(direct_sum_map(phi, phi))
    assert pair.images == (
        parse_polynomial("x*S", pair.target.names),
        parse_polynomial("x*T", pair.target.names),
    )


def test_algebra_map_kernel(
    dual_numbers: PresentedRing, residue: PresentedModule, residue_sum: PresentedModule
) -> None:
    identity = sym_map(ModuleMap.identity(residue))
    kernel = algebra_map_kernel(identity)
    source = identity.source
    assert all(source.groebner_basis.contains(g) for g in kernel)

    f = sym_map(versal_map(residue))
    kernel = GradedAlgebraPresentation(dual_numbers, ["S"], None, list(algebra_map_kernel(f)))
    expected = GradedAlgebraPresentation(dual_numbers, ["S"], None, ["x*S", "S^2"])
    assert presentation_equal(kernel, expected)

    phi = versal_map(residue)
    f = sym_map(direct_sum_map(phi, phi))
    kernel = GradedAlgebraPresentation(
        dual_numbers, ["S", "T"], None, list(algebra_map_kernel(f))
    )
    expected = GradedAlgebraPresentation(
        dual_numbers, ["S", "T"], None, ["x*S", "x*T", "S^2", "S*T", "T^2"]
    )
    assert presentation_equal(kernel, expected)


def test_rees(dual_numbers: PresentedRing, residue: PresentedModule, residue_sum: PresentedModule) -> None:
    assert rees_via_versal(PresentedModule.free(dual_numbers, 2)).render() == "A[U, V]"
    assert rees_via_versal(residue).render() == "A[U] / (x*U, U^2)"
    assert rees_via_versal(residue_sum).render() == "A[U, V] / (x*U, x*V, U^2, U*V, V^2)"


def test_rees_torsion(line: PresentedRing, torsion: PresentedModule) -> None:
    algebra = rees_via_versal(torsion)
    assert algebra.groebner_basis.contains(algebra.generator(0))


def test_rees_degree_one_is_image_in_double_dual(module_corpus: dict) -> None:
    for module in module_corpus.values():
        image = PresentedModule(
            module.ring, module.rank, list(double_dual_map(module).kernel().elements)
        )
        assert rees_via_versal(module).degree_module(1).equals(image)


def test_rees_independent_of_versal_map(dual_numbers: PresentedRing, residue: PresentedModule) -> None:
    padded = ModuleMap(
        residue,
        PresentedModule.free(dual_numbers, 2),
        [[dual_numbers.parse("x")], [dual_numbers.zero()]],
    )
    assert presentation_equal(rees_of_map(padded), rees_via_versal(residue))
    with pytest.raises(DomainError):
        rees_of_map(ModuleMap.identity(residue))


def test_rees_of_ideal(line: PresentedRing, plane: PresentedRing) -> None:
    assert rees_of_ideal(line, [line.parse("x")]).render() == "A[S]"
    assert rees_of_ideal(line, [line.one()]).render() == "A[S]"
    algebra = rees_of_ideal(plane, [plane.parse("x"), plane.parse("y")])
    expected = GradedAlgebraPresentation(plane, ["S", "T"], None, ["x*T - y*S"])
    assert presentation_equal(algebra, expected)
    cubic = rees_of_ideal(plane, [plane.parse(g) for g in ["x^2", "x*y", "y^2"]])
    expected = GradedAlgebraPresentation(
        plane, ["S", "T", "U"], None, ["x*T - y*S", "x*U - y*T", "S*U - T^2"]
    )
    assert presentation_equal(cubic, expected)


def test_tensor(
    dual_numbers: PresentedRing, residue: PresentedModule, residue_sum: PresentedModule
) -> None:
    rees = rees_via_versal(residue)
    square = tensor_presentation(rees, rees)
    assert square.generators == ("U", "V")
    assert square.render() == "A[U, V] / (x*U, x*V, U^2, V^2)"
    assert not presentation_equal(rees_via_versal(residue_sum), square)

    sym = sym_presentation(residue)
    assert presentation_equal(tensor_presentation(sym, sym), sym_presentation(residue_sum))

    scalars = GradedAlgebraPresentation(dual_numbers, [])
    assert presentation_equal(tensor_presentation(rees, scalars), rees)
    with pytest.raises(DomainError):
        tensor_presentation(rees, sym_presentation(PresentedModule.free(PresentedRing(["y"]), 1)))


def test_presentation_equal(plane: PresentedRing) -> None:
    first = GradedAlgebraPresentation(plane, ["S", "T"], None, ["x*T - y*S"])
    second = GradedAlgebraPresentation(plane, ["S", "T"], None, ["y*S - x*T"])
    assert presentation_equal(first, first)
    assert presentation_equal(first, second)
    with pytest.raises(DomainError):
        presentation_equal(first, first.rename(["U", "V"]))


def test_hilbert_function(
    dual_numbers: PresentedRing,
    rationals: PresentedRing,
    line: PresentedRing,
    residue: PresentedModule,
    residue_sum: PresentedModule,
) -> None:
    assert hilbert_function(rees_via_versal(residue), 3) == [2, 1, 0, 0]
    assert sym_presentation(PresentedModule.free(rationals, 1)).hilbert_function(2) == [1, 1, 1]
    assert rees_via_versal(residue_sum).hilbert_function(2) == [2, 2, 0]
    assert sym_presentation(residue_sum).hilbert_function(2) == [2, 2, 3]
    with pytest.raises(DomainError):
        hilbert_function(sym_presentation(PresentedModule.free(line, 1)), 2)


def test_plot_hilbert(residue: PresentedModule) -> None:
    fig = rees_via_versal(residue).plot_hilbert(3)
    assert isinstance(fig, Figure)
    assert list(fig.data[0].y) == [2, 1, 0, 0]
    assert fig.layout.title.text == "A[U] / (x*U, U^2)"


def test_rees_map(dual_numbers: PresentedRing, residue: PresentedModule) -> None:
    free = PresentedModule.free(dual_numbers, 1)
    quotient = ModuleMap(free, residue, [[dual_numbers.one()]])
    induced = rees_map(quotient)
    assert induced.images == (induced.target.generator(0),)
    assert induced.is_surjective(3)

    identity = rees_map(ModuleMap.identity(residue))
    assert identity.images == (identity.target.generator(0),)

    multiply = ModuleMap(free, free, [[dual_numbers.parse("x")]])
    composite = rees_map(quotient.compose(multiply))
    assert composite.images == induced.compose(rees_map(multiply)).images
    assert not rees_map(multiply).is_surjective(1)


def test_algebra_map_validation(dual_numbers: PresentedRing) -> None:
    source = GradedAlgebraPresentation(dual_numbers, ["S"])
    target = GradedAlgebraPresentation(dual_numbers, ["U"], None, ["U^2"])
    u = target.generator(0)
    with pytest.raises(DomainError):
        GradedAlgebraMap(source, target, [u * u])
    with pytest.raises(DomainError):
        GradedAlgebraMap(target, source, [source.generator(0)])
    square = GradedAlgebraMap(source, target, [u])
    kernel = GradedAlgebraPresentation(dual_numbers, ["S"], None, list(square.kernel()))
    assert presentation_equal(kernel, GradedAlgebraPresentation(dual_numbers, ["S"], None, ["S^2"]))


def test_generator_names() -> None:
    assert generator_names(2, "UVWXYZ") == ("U", "V")
    assert generator_names(2, "UVWXYZ", ["U"]) == ("V", "W")
    assert generator_names(7, "UVWXYZ") == tuple(f"T{i}" for i in range(1, 8))
