"""Graded algebras over a presented ring: symmetric algebras and Rees algebras.

A graded algebra ``A[T_1, ..., T_g] / L`` is stored with the base variables first and
the generators after them, so a polynomial in the algebra lives in
``QQ[x_1, ..., x_k, T_1, ..., T_g]``.
"""

import logging
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from plotly import graph_objects as go
from plotly.graph_objects import Figure

from reeskit.constant import INDEXED_PREFIX, REES_LETTERS, SYM_LETTERS
from reeskit.errors import DomainError, VerificationError
from reeskit.groebner import (
    FreeModuleVector,
    GroebnerBasis,
    Ideal,
    buchberger,
    eliminate,
    module_groebner,
)
from reeskit.module import (
    ModuleMap,
    PresentedModule,
    PresentedRing,
    ideal_inclusion,
    versal_map,
)
from reeskit.polynomial import (
    GREVLEX,
    Exponents,
    MonomialOrder,
    Polynomial,
    divides,
    parse_polynomial,
    render_polynomial,
    weighted_monomials,
)


class GradedAlgebraPresentation:
    def __init__(
        self,
        base: PresentedRing,
        generators: Sequence[str],
        degrees: Optional[Sequence[int]] = None,
        relations: Sequence[Union[Polynomial, str]] = (),
    ) -> None:
        """
        Graded algebra ``A[generators] / (relations)``, the base ring in degree 0.

        Parameters
        ----------
        base: PresentedRing
            Degree-zero part ``A``.
        generators: list
            Names of the algebra generators.
        degrees: list, optional
            Default is None
            Positive degree per generator; all 1 when None.
        relations: list, optional
            Default is ()
            Relations in the base variables followed by the generators. Each must be
            homogeneous for the generator grading. The relations of ``A`` are added
            implicitly.
        """
        generators = tuple(generators)
        degrees = tuple(degrees) if degrees is not None else (1,) * len(generators)
        if len(degrees) != len(generators):
            raise DomainError("Every generator needs a degree.")
        if any(d <= 0 for d in degrees):
            raise DomainError("Generator degrees must be positive.")
        names = base.variables + generators
        if len(set(names)) != len(names):
            raise DomainError(f"Generator names {generators} clash with each other or the base.")
        self._base = base
        self._generators = generators
        self._degrees = degrees
        self._names = names
        self._order = MonomialOrder.block(base.nvars, outer=base.order, inner=GREVLEX)
        self._weights = (0,) * base.nvars + degrees
        parsed = [
            parse_polynomial(r, names) if isinstance(r, str) else r for r in relations
        ]
        for relation in parsed:
            if relation.nvars != len(names):
                raise DomainError(f"Relation `{relation}` has the wrong number of variables.")
            if not relation.is_homogeneous(self._weights):
                raise DomainError(
                    f"Relation `{render_polynomial(relation, names)}` is not homogeneous."
                )
        self._relations = tuple(r for r in parsed if r)

    @property
    def base(self) -> PresentedRing:
        return self._base

    @property
    def generators(self) -> Tuple[str, ...]:
        """generator names"""
        return self._generators

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self._degrees

    @property
    def names(self) -> Tuple[str, ...]:
        """base variables followed by the generators"""
        return self._names

    @property
    def nvars(self) -> int:
        return len(self._names)

    @property
    def order(self) -> MonomialOrder:
        return self._order

    @property
    def relations(self) -> Tuple[Polynomial, ...]:
        return self._relations

    @property
    def ideal(self) -> Ideal:
        """relation ideal including the relations of the base"""
        base_relations = [g.extend(self.nvars) for g in self._base.fixed_gb]
        return Ideal(list(self._relations) + base_relations, self.nvars)

    @cached_property
    def groebner_basis(self) -> GroebnerBasis:
        return buchberger(self.ideal, self._order)

    def normal_form(self, poly: Polynomial) -> Polynomial:
        return self.groebner_basis.normal_form(poly)

    def degree(self, exponents: Exponents) -> int:
        return sum(w * e for w, e in zip(self._weights, exponents))

    def homogeneous_degree(self, poly: Polynomial) -> int:
        """Generator degree of a nonzero homogeneous polynomial."""
        degrees = poly.weighted_degrees(self._weights)
        if len(degrees) != 1:
            raise DomainError(f"`{self.render_element(poly)}` is not homogeneous.")
        return degrees[0]

    def generator(self, index: int) -> Polynomial:
        return Polynomial.variable(self._base.nvars + index, self.nvars)

    def monomials(self, degree: int) -> Tuple[Exponents, ...]:
        """Generator exponent vectors of the given degree, lex descending."""
        return weighted_monomials(self._degrees, degree)

    def monomial(self, exponents: Exponents) -> Polynomial:
        return Polynomial.monomial((0,) * self._base.nvars + tuple(exponents))

    def coordinates(self, poly: Polynomial, degree: int) -> FreeModuleVector:
        """Coefficients over ``A`` of a degree-``degree`` polynomial on ``monomials(degree)``."""
        k = self._base.nvars
        index = {m: i for i, m in enumerate(self.monomials(degree))}
        entries: List[Dict[Exponents, object]] = [{} for _ in index]
        for exps, c in poly.items():
            gen_part = exps[k:]
            if gen_part not in index:
                raise DomainError(
                    f"`{self.render_element(poly)}` is not homogeneous of degree {degree}."
                )
            entries[index[gen_part]][exps[:k]] = c
        return FreeModuleVector(
            [self._base.normal_form(Polynomial(e, k)) for e in entries], k
        )

    def from_coordinates(self, vector: FreeModuleVector, degree: int) -> Polynomial:
        result = Polynomial.zero(self.nvars)
        for coefficient, gen_part in zip(vector, self.monomials(degree)):
            result = result + coefficient.extend(self.nvars) * self.monomial(gen_part)
        return result

    def degree_module(self, degree: int) -> PresentedModule:
        """
        Degree-``degree`` part as a presented ``A``-module on ``monomials(degree)``.

        Parameters
        ----------
        degree: int
            Nonnegative degree.

        Returns
        -------
        PresentedModule
        """
        relations = []
        for element in self.groebner_basis:
            e = self.homogeneous_degree(element)
            if e > degree:
                continue
            for exps in self.monomials(degree - e):
                relations.append(
                    self.coordinates(element * self.monomial(exps), degree)
                )
        return PresentedModule(self._base, len(self.monomials(degree)), relations)

    def rename(self, generators: Sequence[str]) -> "GradedAlgebraPresentation":
        """Same algebra with new generator names."""
        return GradedAlgebraPresentation(
            self._base, generators, self._degrees, self._relations
        )

    def render_element(self, poly: Polynomial) -> str:
        return render_polynomial(poly, self._names, self._order)

    def positive_relations(self) -> List[Polynomial]:
        """Gröbner basis elements of positive degree."""
        return [g for g in self.groebner_basis if self.homogeneous_degree(g) > 0]

    def render(self) -> str:
        """Text form, e.g. ``A[U] / (x*U, U^2)``."""
        text = f"{self._base.name}[{', '.join(self._generators)}]"
        relations = self.positive_relations()
        if relations:
            text += " / (" + ", ".join(self.render_element(g) for g in relations) + ")"
        return text

    def hilbert_function(self, max_degree: int) -> List[int]:
        return hilbert_function(self, max_degree)

    def plot_hilbert(self, max_degree: int, title: Optional[str] = None) -> Figure:
        """
        Bar chart of the Hilbert function up to ``max_degree``.

        Parameters
        ----------
        max_degree: int
            Largest degree shown.
        title: str, optional
            Default is None
            Figure title; the rendered presentation when None.

        Returns
        -------
        Figure
        """
        values = self.hilbert_function(max_degree)
        fig = go.Figure(
            go.Bar(
                x=list(range(max_degree + 1)),
                y=values,
                text=values,
                marker_color="royalblue",
            )
        )
        fig.update_layout(
            title=title if title is not None else self.render(),
            xaxis_title="degree",
            yaxis_title="dim over QQ",
            template="plotly_white",
        )
        fig.update_xaxes(dtick=1)
        return fig

    def __repr__(self) -> str:
        return f"GradedAlgebraPresentation({self.render()} over {self._base.describe()})"


class GradedAlgebraMap:
    def __init__(
        self,
        source: GradedAlgebraPresentation,
        target: GradedAlgebraPresentation,
        images: Sequence[Polynomial],
    ) -> None:
        """
        Homomorphism of graded ``A``-algebras given by the images of the generators.

        Parameters
        ----------
        source: GradedAlgebraPresentation
        target: GradedAlgebraPresentation
        images: list
            One homogeneous polynomial of the target per source generator, of the
            same degree as that generator.
        """
        if source.base != target.base:
            raise DomainError("Graded algebra map between algebras over different rings.")
        if len(images) != len(source.generators):
            raise DomainError("Every source generator needs an image.")
        for image, degree in zip(images, source.degrees):
            if image.nvars != target.nvars:
                raise DomainError("Image does not live in the target algebra.")
            if image and target.homogeneous_degree(image) != degree:
                raise DomainError(
                    f"Image `{target.render_element(image)}` does not have degree {degree}."
                )
        self._source = source
        self._target = target
        self._images = tuple(target.normal_form(i) for i in images)
        for relation in source.relations:
            if self.apply(relation):
                raise DomainError(
                    f"Ill-defined algebra map: `{source.render_element(relation)}` "
                    "is not sent to zero."
                )

    @property
    def source(self) -> GradedAlgebraPresentation:
        return self._source

    @property
    def target(self) -> GradedAlgebraPresentation:
        return self._target

    @property
    def images(self) -> Tuple[Polynomial, ...]:
        return self._images

    def _substitution(self) -> List[Polynomial]:
        k = self._source.base.nvars
        base = [Polynomial.variable(i, self._target.nvars) for i in range(k)]
        return base + list(self._images)

    def apply(self, poly: Polynomial) -> Polynomial:
        """Image of a source polynomial, in normal form."""
        return self._target.normal_form(
            poly.substitute(self._substitution(), self._target.nvars)
        )

    def compose(self, first: "GradedAlgebraMap") -> "GradedAlgebraMap":
        """The composite ``self o first``."""
        return GradedAlgebraMap(
            first.source, self._target, [self.apply(i) for i in first.images]
        )

    def is_surjective(self, max_degree: int) -> bool:
        """True iff every target piece of degree at most ``max_degree`` is hit."""
        base = self._target.base
        for degree in range(max_degree + 1):
            target_module = self._target.degree_module(degree)
            hit = [
                self._target.coordinates(
                    self.apply(self._source.monomial(m)), degree
                )
                for m in self._source.monomials(degree)
            ]
            image = module_groebner(
                hit + list(target_module.relations),
                target_module.rank,
                base.nvars,
                base.order,
                base.fixed_gb,
            )
            if not all(
                image.contains(target_module.generator(i))
                for i in range(target_module.rank)
            ):
                return False
        return True

    def kernel(self) -> Ideal:
        return algebra_map_kernel(self)

    def __repr__(self) -> str:
        images = ", ".join(
            f"{name} -> {self._target.render_element(image)}"
            for name, image in zip(self._source.generators, self._images)
        )
        return f"GradedAlgebraMap({images})"


def _next_letter(name: str, taken: Sequence[str]) -> str:
    if len(name) == 1 and name.isupper():
        for code in range(ord(name) + 1, ord("Z") + 1):
            if chr(code) not in taken:
                return chr(code)
    index = 1
    while f"{name}{index}" in taken:
        index += 1
    return f"{name}{index}"


def generator_names(count: int, letters: str, avoid: Sequence[str] = ()) -> Tuple[str, ...]:
    """
    ``count`` generator names: single letters from ``letters`` when enough are free,
    otherwise ``T1, T2, ...``.
    """
    free = [letter for letter in letters if letter not in avoid]
    if count <= len(free):
        return tuple(free[:count])
    prefix = INDEXED_PREFIX
    while any(f"{prefix}{i + 1}" in avoid for i in range(count)):
        prefix += "_"
    return tuple(f"{prefix}{i + 1}" for i in range(count))


def sym_presentation(
    module: PresentedModule, names: Optional[Sequence[str]] = None
) -> GradedAlgebraPresentation:
    """
    Symmetric algebra ``Sym(M) = A[T_1, ..., T_q] / (sum_i P_ij T_i)``.

    Parameters
    ----------
    module: PresentedModule
    names: list, optional
        Default is None
        Generator names, one per generator of ``M``; ``S, T, ...`` when None.

    Returns
    -------
    GradedAlgebraPresentation
    """
    base = module.ring
    q = module.rank
    if names is None:
        names = generator_names(q, SYM_LETTERS, base.variables)
    if len(names) != q:
        raise DomainError(f"Need {q} generator names, got {len(names)}.")
    nvars = base.nvars + q
    relations = []
    for column in module.relations:
        form = Polynomial.zero(nvars)
        for i, entry in enumerate(column):
            form = form + entry.extend(nvars) * Polynomial.variable(base.nvars + i, nvars)
        relations.append(form)
    return GradedAlgebraPresentation(base, names, None, relations)


def symmetric_power(module: PresentedModule, degree: int) -> PresentedModule:
    """``Sym^n(M)`` as a presented module on the degree-n monomials."""
    return sym_presentation(module).degree_module(degree)


def sym_map(
    phi: ModuleMap,
    source_names: Optional[Sequence[str]] = None,
    target_names: Optional[Sequence[str]] = None,
) -> GradedAlgebraMap:
    """``Sym(phi)``: generator ``j`` goes to the linear form of column ``j``."""
    source = sym_presentation(phi.source, source_names)
    target = sym_presentation(phi.target, target_names)
    return GradedAlgebraMap(source, target, _linear_images(phi, target))


def _linear_images(phi: ModuleMap, target: GradedAlgebraPresentation) -> List[Polynomial]:
    images = []
    for j in range(phi.source.rank):
        image = Polynomial.zero(target.nvars)
        for i in range(phi.target.rank):
            image = image + phi.matrix[i][j].extend(target.nvars) * target.generator(i)
        images.append(image)
    return images


def algebra_map_kernel(f: GradedAlgebraMap) -> Ideal:
    """
    Kernel of a graded algebra map, as an ideal of the source polynomial ring.

    The graph ideal ``(source relations) + (target relations) + (T_j - f(T_j))`` is
    formed in the variables ``target generators, source generators, base`` and the
    target generators are eliminated with a block order.
    """
    source, target = f.source, f.target
    k = source.base.nvars
    ns, nt = len(source.generators), len(target.generators)
    nvars = nt + ns + k
    # layout: target generators | source generators | base
    from_source = [nt + ns + i for i in range(k)] + [nt + j for j in range(ns)]
    from_target = [nt + ns + i for i in range(k)] + list(range(nt))
    generators = [r.remap(nvars, from_source) for r in source.relations]
    generators += [r.remap(nvars, from_target) for r in target.ideal]
    for j, image in enumerate(f.images):
        generators.append(
            Polynomial.variable(nt + j, nvars) - image.remap(nvars, from_target)
        )
    order = MonomialOrder.block(nt, outer=GREVLEX, inner=GREVLEX)
    eliminated = eliminate(Ideal(generators, nvars), nt, order)
    back: List[Optional[int]] = [None] * nt + [k + j for j in range(ns)] + list(range(k))
    kernel = [g.remap(source.nvars, back) for g in eliminated]
    logging.debug(f"Kernel of a map on {ns} generators has {len(kernel)} generators")
    return Ideal(kernel, source.nvars)


def rees_of_map(
    phi: ModuleMap, names: Optional[Sequence[str]] = None
) -> GradedAlgebraPresentation:
    """
    ``R(phi) = Sym(M) / ker Sym(phi)`` for a map ``phi: M -> F`` to a free module.

    Parameters
    ----------
    phi: ModuleMap
        Map with a free target.
    names: list, optional
        Default is None
        Generator names; ``U, V, ...`` when None.

    Returns
    -------
    GradedAlgebraPresentation
    """
    if not phi.target.is_free():
        raise DomainError("The Rees algebra of a map needs a free target.")
    base = phi.ring
    if names is None:
        names = generator_names(phi.source.rank, REES_LETTERS, base.variables)
    target_names = generator_names(
        phi.target.rank, SYM_LETTERS, tuple(base.variables) + tuple(names)
    )
    f = sym_map(phi, names, target_names)
    kernel = algebra_map_kernel(f)
    relations = [g for g in kernel if f.source.homogeneous_degree(g) > 0]
    return GradedAlgebraPresentation(base, names, None, relations)


def rees_via_versal(
    module: PresentedModule, names: Optional[Sequence[str]] = None
) -> GradedAlgebraPresentation:
    """Rees algebra ``R(M)`` as the image of ``Sym(M) -> Sym(F)`` for the versal map."""
    return rees_of_map(versal_map(module), names)


def rees_map(
    phi: ModuleMap,
    source_names: Optional[Sequence[str]] = None,
    target_names: Optional[Sequence[str]] = None,
) -> GradedAlgebraMap:
    """Induced map ``R(M) -> R(N)`` of a module map ``M -> N``."""
    source = rees_via_versal(phi.source, source_names)
    target = rees_via_versal(phi.target, target_names)
    return GradedAlgebraMap(source, target, _linear_images(phi, target))


def rees_of_ideal(
    ring: PresentedRing,
    generators: Sequence[Polynomial],
    names: Optional[Sequence[str]] = None,
) -> GradedAlgebraPresentation:
    """
    Classical Rees algebra ``A[I t]`` of the ideal generated by ``generators``.

    Computed as the image of ``Sym(I) -> Sym(A)`` and, independently, as the kernel of
    ``A[T_1, ..., T_m] -> A[t]``, ``T_j -> g_j t``; the two must agree.

    Raises
    ------
    VerificationError
        If the two routes disagree.
    """
    generators = [ring.normal_form(g) for g in generators]
    if names is None:
        names = generator_names(len(generators), SYM_LETTERS, ring.variables)
    via_image = rees_of_map(ideal_inclusion(ring, generators), names)

    fresh = "t"
    while fresh in ring.variables or fresh in names:
        fresh += "_"
    source = GradedAlgebraPresentation(ring, names)
    target = GradedAlgebraPresentation(ring, [fresh])
    images = [
        g.extend(target.nvars) * target.generator(0) for g in generators
    ]
    kernel = algebra_map_kernel(GradedAlgebraMap(source, target, images))
    classical = GradedAlgebraPresentation(
        ring,
        names,
        None,
        [g for g in kernel if source.homogeneous_degree(g) > 0],
    )
    if not presentation_equal(via_image, classical):
        raise VerificationError(
            f"Rees algebra routes disagree: {via_image.render()} and {classical.render()}."
        )
    return via_image


def tensor_presentation(
    first: GradedAlgebraPresentation, second: GradedAlgebraPresentation
) -> GradedAlgebraPresentation:
    """
    ``B (x)_A C``: the generators of both, the relations of both.

    Generators of ``second`` clashing with those of ``first`` are renamed to the next
    free letter, e.g. ``U`` becomes ``V``.
    """
    if first.base != second.base:
        raise DomainError("Tensor product of algebras over different rings.")
    base = first.base
    k = base.nvars
    taken = list(base.variables) + list(first.generators)
    renamed = []
    for name in second.generators:
        if name in taken:
            new = _next_letter(name, taken + list(second.generators))
            logging.info(f"Renamed generator {name} to {new} in the tensor product")
            name = new
        taken.append(name)
        renamed.append(name)
    gb, gc = len(first.generators), len(second.generators)
    nvars = k + gb + gc
    from_first = list(range(k + gb))
    from_second = list(range(k)) + [k + gb + j for j in range(gc)]
    relations = [r.remap(nvars, from_first) for r in first.relations]
    relations += [r.remap(nvars, from_second) for r in second.relations]
    return GradedAlgebraPresentation(
        base,
        list(first.generators) + renamed,
        list(first.degrees) + list(second.degrees),
        relations,
    )


def presentation_equal(
    first: GradedAlgebraPresentation, second: GradedAlgebraPresentation
) -> bool:
    """
    True iff the relation ideals have the same reduced Gröbner basis.

    Raises
    ------
    DomainError
        If the bases, generators or degrees differ.
    """
    if first.base != second.base:
        raise DomainError("Cannot compare algebras over different rings.")
    if first.generators != second.generators or first.degrees != second.degrees:
        raise DomainError(
            f"Generator mismatch: {first.generators} and {second.generators}."
        )
    return first.groebner_basis.elements == second.groebner_basis.elements


def hilbert_function(algebra: GradedAlgebraPresentation, max_degree: int) -> List[int]:
    """
    Dimension over QQ of each graded piece in degrees ``0..max_degree``.

    Parameters
    ----------
    algebra: GradedAlgebraPresentation
        Algebra over a finite-dimensional base ring.
    max_degree: int
        Largest degree.

    Returns
    -------
    list
    """
    base = algebra.base
    if not base.is_finite_dimensional():
        raise DomainError(
            f"Hilbert function needs a finite-dimensional base, got {base.describe()}."
        )
    base_monomials = base.standard_monomials()
    leads = algebra.groebner_basis.leading_monomials()
    values = []
    for degree in range(max_degree + 1):
        count = 0
        for gen_part in algebra.monomials(degree):
            for base_part in base_monomials:
                exponents = tuple(base_part) + tuple(gen_part)
                if not any(divides(lead, exponents) for lead in leads):
                    count += 1
        values.append(count)
    return values
