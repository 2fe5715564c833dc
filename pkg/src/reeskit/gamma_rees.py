"""Rees algebra as the image of ``Sym(M) -> Gamma(M*)^v``, computed degree by degree."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from tqdm import tqdm

from reeskit.divided_powers import (
    DualFunctional,
    bullet,
    dp_basis,
    gamma_module_degree,
)
from reeskit.errors import DomainError, VerificationError
from reeskit.groebner import FreeModuleVector, syzygies
from reeskit.module import PresentedModule, dual
from reeskit.polynomial import Exponents, Polynomial, monomials_of_degree
from reeskit.rees import rees_via_versal, symmetric_power


@dataclass(frozen=True)
class DegreewiseMap:
    """
    Degree-n part of ``Sym(M) -> Gamma(M*)^v``, landing in ``Gamma^n(F'*)* = Sym^n(F')``.

    Column ``j`` holds the image of the j-th monomial of ``Sym^n(M)`` in the dual
    divided-power basis ``dp_basis(s, n)`` of the free module ``F'`` on the
    generators of ``M*``.
    """

    degree: int
    source: PresentedModule
    monomials: Tuple[Exponents, ...]
    target_basis: Tuple[Exponents, ...]
    matrix: Tuple[Tuple[Polynomial, ...], ...]
    images: Tuple[DualFunctional, ...]


def degree_one_functionals(module: PresentedModule) -> List[DualFunctional]:
    """Images of the generators of ``M`` in ``M** = Gamma^1(M*)*``."""
    module_dual = dual(module)
    s = len(module_dual.generators)
    return [
        DualFunctional(
            module.ring,
            s,
            1,
            {
                tuple(1 if k == l else 0 for l in range(s)): u[i]
                for k, u in enumerate(module_dual.generators)
            },
        )
        for i in range(module.rank)
    ]


def canonical_map_degree(module: PresentedModule, degree: int) -> DegreewiseMap:
    """
    Canonical map ``Sym^n(M) -> Gamma^n(M*)*`` in degree ``n``.

    The image of a monomial ``T^a`` is the bullet product of the degree-one functionals
    of the generators. Every image is checked to kill the relations of ``Gamma^n(M*)``.

    Parameters
    ----------
    module: PresentedModule
    degree: int
        Degree, at least 1.

    Returns
    -------
    DegreewiseMap

    Raises
    ------
    VerificationError
        If an image does not kill a relation of ``Gamma^n(M*)``.
    """
    ring = module.ring
    module_dual = dual(module)
    s = len(module_dual.generators)
    xi = degree_one_functionals(module)
    gamma = gamma_module_degree(module_dual.module, degree)

    powers: Dict[Tuple[int, int], DualFunctional] = {}

    def power(index: int, exponent: int) -> DualFunctional:
        if (index, exponent) not in powers:
            if exponent == 0:
                powers[(index, exponent)] = DualFunctional.unit(ring, s)
            else:
                powers[(index, exponent)] = bullet(power(index, exponent - 1), xi[index])
        return powers[(index, exponent)]

    monomials = monomials_of_degree(module.rank, degree)
    images = []
    for exps in monomials:
        image = DualFunctional.unit(ring, s)
        for index, exponent in enumerate(exps):
            if exponent:
                image = bullet(image, power(index, exponent))
        if not image.annihilates(gamma.relations):
            raise VerificationError(
                f"Image of monomial {exps} does not vanish on the relations of Gamma^{degree}(M*)."
            )
        images.append(image)
    target_basis = tuple(dp_basis(s, degree))
    matrix = tuple(
        tuple(image.coefficient(m) for image in images) for m in target_basis
    )
    return DegreewiseMap(
        degree,
        symmetric_power(module, degree),
        tuple(monomials),
        target_basis,
        matrix,
        tuple(images),
    )


@dataclass(frozen=True)
class DegreeKernel:
    """Kernel of ``Sym^n(M) -> Gamma^n(M*)*`` as vectors on the degree-n monomials."""

    degree: int
    generators: Tuple[FreeModuleVector, ...]
    sym_module: PresentedModule

    def is_trivial(self) -> bool:
        """True iff the kernel is zero in ``Sym^n(M)``."""
        return all(self.sym_module.contains(g) for g in self.generators)

    @property
    def quotient(self) -> PresentedModule:
        """degree-n part of the Rees algebra"""
        return PresentedModule(
            self.sym_module.ring,
            self.sym_module.rank,
            list(self.sym_module.relations) + list(self.generators),
        )


def rees_via_gamma(
    module: PresentedModule, max_degree: int, progress: bool = False
) -> List[DegreeKernel]:
    """
    Degreewise kernels of ``Sym(M) -> Gamma(M*)^v`` for ``n = 1..max_degree``.

    Parameters
    ----------
    module: PresentedModule
    max_degree: int
        Degree bound, at least 1.
    progress: bool, optional
        Default is False
        Show a progress bar over the degrees.

    Returns
    -------
    list
    """
    if max_degree < 1:
        raise DomainError("The degree bound must be at least 1.")
    ring = module.ring
    kernels = []
    for degree in tqdm(
        range(1, max_degree + 1), desc="Gamma route", disable=not progress
    ):
        degreewise = canonical_map_degree(module, degree)
        kernel = syzygies(
            degreewise.matrix,
            len(degreewise.target_basis),
            len(degreewise.monomials),
            ring.nvars,
            ring.order,
            ring.fixed_gb,
        )
        kernels.append(DegreeKernel(degree, tuple(kernel.elements), degreewise.source))
        logging.debug(f"Degree {degree} kernel has {len(kernel.elements)} generators")
    return kernels


@dataclass(frozen=True)
class DegreeVerdict:
    degree: int
    ok: bool
    versal_generators: int
    gamma_generators: int


@dataclass(frozen=True)
class TheoremAReport:
    """
    Per-degree comparison of the versal and divided-power routes.

    Agreement is only established for degrees up to ``max_degree``.
    """

    max_degree: int
    verdicts: Tuple[DegreeVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "ok": self.ok,
            "degrees": [
                {
                    "degree": v.degree,
                    "ok": v.ok,
                    "versal_generators": v.versal_generators,
                    "gamma_generators": v.gamma_generators,
                }
                for v in self.verdicts
            ],
        }

    def to_text(self) -> str:
        lines = ["degree  versal  gamma  ok"]
        for v in self.verdicts:
            lines.append(
                f"{v.degree:<6}  {v.versal_generators:<6}  {v.gamma_generators:<5}  "
                f"{str(v.ok).lower()}"
            )
        lines.append(f"checked degrees 1..{self.max_degree}")
        return "\n".join(lines)


def verify_theorem_a(
    module: PresentedModule, max_degree: int, progress: bool = False
) -> TheoremAReport:
    """
    Compare ``ker(Sym^n(M) -> Sym^n(F))`` of the versal route with
    ``ker(Sym^n(M) -> Gamma^n(M*)*)`` for ``n = 1..max_degree``, by mutual containment.

    Parameters
    ----------
    module: PresentedModule
    max_degree: int
        Degree bound, at least 1.
    progress: bool, optional
        Default is False
        Show a progress bar over the degrees.

    Returns
    -------
    TheoremAReport
    """
    ring = module.ring
    versal = rees_via_versal(module)
    verdicts = []
    for kernel in rees_via_gamma(module, max_degree, progress):
        versal_part = versal.degree_module(kernel.degree)
        gamma_part = kernel.quotient
        ok = all(versal_part.contains(g) for g in gamma_part.relations) and all(
            gamma_part.contains(r) for r in versal_part.relations
        )
        if not ok:
            logging.warning(f"Routes disagree in degree {kernel.degree} over {ring.describe()}")
        verdicts.append(
            DegreeVerdict(
                kernel.degree,
                ok,
                len(versal_part.submodule_basis.elements),
                len(gamma_part.submodule_basis.elements),
            )
        )
    return TheoremAReport(max_degree, tuple(verdicts))
