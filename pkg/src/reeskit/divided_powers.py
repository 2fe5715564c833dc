"""Divided powers of presented modules and the graded dual of the divided power algebra.

For a free module ``F`` with basis ``x_1, ..., x_q`` the products
``gamma^m_1(x_1) * ... * gamma^m_q(x_q)`` with ``m_1 + ... + m_q = n`` form a basis of
``Gamma^n(F)``; such a product is stored as its exponent vector ``m``. Elements of
``Gamma^n(M)`` and functionals on it are kept in these ambient coordinates.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from scipy.special import comb

from reeskit.errors import DomainError
from reeskit.groebner import FreeModuleVector
from reeskit.module import ModuleMap, PresentedModule, PresentedRing, dual
from reeskit.polynomial import Exponents, Polynomial, monomials_of_degree


def dp_basis(rank: int, degree: int) -> List[Exponents]:
    """
    Divided-power monomials of the given degree, lex descending.

    There are ``comb(rank + degree - 1, degree)`` of them.
    """
    if rank < 0 or degree < 0:
        raise DomainError("Rank and degree must be nonnegative.")
    return list(monomials_of_degree(rank, degree))


@lru_cache(maxsize=None)
def _index(rank: int, degree: int) -> Dict[Exponents, int]:
    return {m: i for i, m in enumerate(dp_basis(rank, degree))}


def _clean(
    ring: PresentedRing, rank: int, degree: int, coefficients: Mapping[Exponents, Polynomial]
) -> Dict[Exponents, Polynomial]:
    clean = {}
    for exps, value in coefficients.items():
        exps = tuple(exps)
        if len(exps) != rank or sum(exps) != degree:
            raise DomainError(f"{exps} is not a divided-power monomial of degree {degree}.")
        value = ring.normal_form(value)
        if value:
            clean[exps] = value
    return clean


@dataclass(frozen=True)
class GammaElement:
    """Element of ``Gamma^n(A^q)`` in the divided-power monomial basis."""

    ring: PresentedRing
    rank: int
    degree: int
    coefficients: Mapping[Exponents, Polynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "coefficients",
            _clean(self.ring, self.rank, self.degree, self.coefficients),
        )

    @classmethod
    def monomial(cls, ring: PresentedRing, exponents: Exponents) -> "GammaElement":
        return cls(ring, len(exponents), sum(exponents), {tuple(exponents): ring.one()})

    def coefficient(self, exponents: Exponents) -> Polynomial:
        return self.coefficients.get(tuple(exponents), self.ring.zero())

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "GammaElement") -> "GammaElement":
        if (other.ring, other.rank, other.degree) != (self.ring, self.rank, self.degree):
            raise DomainError("Cannot add divided powers of different degrees or modules.")
        coefficients = dict(self.coefficients)
        for exps, value in other.coefficients.items():
            coefficients[exps] = coefficients.get(exps, self.ring.zero()) + value
        return GammaElement(self.ring, self.rank, self.degree, coefficients)

    def scale(self, factor: Polynomial) -> "GammaElement":
        return GammaElement(
            self.ring,
            self.rank,
            self.degree,
            {e: factor * c for e, c in self.coefficients.items()},
        )

    def vector(self) -> FreeModuleVector:
        """Coordinates in ``dp_basis(rank, degree)`` order."""
        return FreeModuleVector(
            [self.coefficient(m) for m in dp_basis(self.rank, self.degree)],
            self.ring.nvars,
        )

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(
            f"({self.ring.render(c)})*g{list(e)}" for e, c in sorted(self.coefficients.items(), reverse=True)
        )


def dp_multiply(a: GammaElement, b: GammaElement) -> GammaElement:
    """
    Product in ``Gamma(A^q)``:
    ``gamma^a * gamma^b = prod_i comb(a_i + b_i, a_i) gamma^(a + b)``.
    """
    if a.rank != b.rank or a.ring != b.ring:
        raise DomainError(f"Divided powers of ranks {a.rank} and {b.rank} cannot be multiplied.")
    ring = a.ring
    coefficients: Dict[Exponents, Polynomial] = {}
    for ea, ca in a.coefficients.items():
        for eb, cb in b.coefficients.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            factor = 1
            for x, y in zip(ea, eb):
                factor *= int(comb(x + y, x, exact=True))
            coefficients[exps] = coefficients.get(exps, ring.zero()) + (ca * cb).scale(factor)
    return GammaElement(ring, a.rank, a.degree + b.degree, coefficients)


def gamma_of_vector(ring: PresentedRing, vector: FreeModuleVector, degree: int) -> GammaElement:
    """``gamma^n(sum_i f_i x_i) = sum_{|m| = n} prod_i f_i^m_i gamma^m``."""
    coefficients = {}
    for exps in dp_basis(vector.rank, degree):
        value = ring.one()
        for f, e in zip(vector, exps):
            if e:
                value = value * f**e
        coefficients[exps] = value
    return GammaElement(ring, vector.rank, degree, coefficients)


@dataclass(frozen=True)
class GammaModuleDegree:
    """``Gamma^n(M)`` as a quotient of ``Gamma^n(A^q)``."""

    ring: PresentedRing
    rank: int
    degree: int
    basis: Tuple[Exponents, ...]
    relations: Tuple[GammaElement, ...]

    @property
    def module(self) -> PresentedModule:
        """presented module on ``basis``"""
        return PresentedModule(
            self.ring, len(self.basis), [r.vector() for r in self.relations]
        )


def gamma_module_degree(module: PresentedModule, degree: int) -> GammaModuleDegree:
    """
    Relations of ``Gamma^n(M)`` inside ``Gamma^n(A^q)``.

    They are the products of ``gamma^k(P e_i)``, ``k = 1..n``, for each presentation
    column ``P e_i``, with every divided-power monomial of degree ``n - k``.
    """
    if degree < 0:
        raise DomainError("Degree must be nonnegative.")
    ring = module.ring
    q = module.rank
    relations = []
    for column in module.relations:
        for k in range(1, degree + 1):
            power = gamma_of_vector(ring, column, k)
            if power.is_zero():
                continue
            for exps in dp_basis(q, degree - k):
                product = dp_multiply(GammaElement.monomial(ring, exps), power)
                if not product.is_zero():
                    relations.append(product)
    return GammaModuleDegree(ring, q, degree, tuple(dp_basis(q, degree)), tuple(relations))


@lru_cache(maxsize=None)
def comultiplication(degree: int, left: int, right: int, rank: int) -> np.ndarray:
    """
    Matrix of ``Delta: Gamma^n(A^q) -> Gamma^i(A^q) (x) Gamma^j(A^q)``.

    Column ``m`` has a one in row ``(a, b)`` for every ``a + b = m`` with ``|a| = i``;
    row ``(a, b)`` is ``index(a) * len(dp_basis(q, j)) + index(b)``.
    """
    if left < 0 or right < 0 or left + right != degree:
        raise DomainError(f"Cannot split degree {degree} as {left} + {right}.")
    lefts, rights = dp_basis(rank, left), _index(rank, right)
    matrix = np.zeros((len(lefts) * len(rights), len(dp_basis(rank, degree))), dtype=np.int64)
    for column, m in enumerate(dp_basis(rank, degree)):
        for a_index, a in enumerate(lefts):
            b = tuple(x - y for x, y in zip(m, a))
            if all(e >= 0 for e in b):
                matrix[a_index * len(rights) + rights[b], column] = 1
    matrix.flags.writeable = False
    return matrix


@dataclass(frozen=True)
class DualFunctional:
    """Functional on ``Gamma^n(A^q)`` in the dual basis ``(gamma^m)*``."""

    ring: PresentedRing
    rank: int
    degree: int
    coefficients: Mapping[Exponents, Polynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "coefficients",
            _clean(self.ring, self.rank, self.degree, self.coefficients),
        )

    @classmethod
    def unit(cls, ring: PresentedRing, rank: int) -> "DualFunctional":
        return cls(ring, rank, 0, {(0,) * rank: ring.one()})

    @classmethod
    def dual_basis(cls, ring: PresentedRing, exponents: Exponents) -> "DualFunctional":
        """``(gamma^m)*``"""
        return cls(ring, len(exponents), sum(exponents), {tuple(exponents): ring.one()})

    @classmethod
    def from_vector(
        cls, ring: PresentedRing, rank: int, degree: int, vector: FreeModuleVector
    ) -> "DualFunctional":
        return cls(ring, rank, degree, dict(zip(dp_basis(rank, degree), vector)))

    def coefficient(self, exponents: Exponents) -> Polynomial:
        return self.coefficients.get(tuple(exponents), self.ring.zero())

    def vector(self) -> FreeModuleVector:
        return FreeModuleVector(
            [self.coefficient(m) for m in dp_basis(self.rank, self.degree)],
            self.ring.nvars,
        )

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, element: GammaElement) -> Polynomial:
        if element.rank != self.rank or element.degree != self.degree:
            raise DomainError("Functional and divided power have different degrees or ranks.")
        value = self.ring.zero()
        for exps, c in element.coefficients.items():
            value = value + c * self.coefficient(exps)
        return self.ring.normal_form(value)

    def annihilates(self, relations: Sequence[GammaElement]) -> bool:
        return all(not self(r) for r in relations)

    def __add__(self, other: "DualFunctional") -> "DualFunctional":
        if (other.ring, other.rank, other.degree) != (self.ring, self.rank, self.degree):
            raise DomainError("Cannot add functionals of different degrees or modules.")
        coefficients = dict(self.coefficients)
        for exps, value in other.coefficients.items():
            coefficients[exps] = coefficients.get(exps, self.ring.zero()) + value
        return DualFunctional(self.ring, self.rank, self.degree, coefficients)

    def scale(self, factor: Polynomial) -> "DualFunctional":
        return DualFunctional(
            self.ring,
            self.rank,
            self.degree,
            {e: factor * c for e, c in self.coefficients.items()},
        )


def bullet(u: DualFunctional, v: DualFunctional) -> DualFunctional:
    """
    Product of the graded dual: ``(u . v)(g) = (u (x) v)(Delta(g))``.

    Parameters
    ----------
    u: DualFunctional
        Functional of degree i.
    v: DualFunctional
        Functional of degree j on the same free module.

    Returns
    -------
    DualFunctional
        Functional of degree i + j.
    """
    if u.rank != v.rank or u.ring != v.ring:
        raise DomainError(f"Functionals on ranks {u.rank} and {v.rank} cannot be multiplied.")
    ring, rank = u.ring, u.rank
    degree = u.degree + v.degree
    delta = comultiplication(degree, u.degree, v.degree, rank)
    lefts, rights = dp_basis(rank, u.degree), dp_basis(rank, v.degree)
    coefficients = {}
    for column, m in enumerate(dp_basis(rank, degree)):
        value = ring.zero()
        for row in np.flatnonzero(delta[:, column]):
            a_index, b_index = divmod(int(row), len(rights))
            value = value + u.coefficient(lefts[a_index]) * v.coefficient(rights[b_index])
        coefficients[m] = value
    return DualFunctional(ring, rank, degree, coefficients)


def bullet_power(u: DualFunctional, exponent: int) -> DualFunctional:
    result = DualFunctional.unit(u.ring, u.rank)
    for _ in range(exponent):
        result = bullet(result, u)
    return result


def sym_dual_iso(ring: PresentedRing, rank: int, degree: int) -> Dict[Exponents, DualFunctional]:
    """
    Degree-n part of ``Sym(F) = Gamma(F*)^v`` for ``F`` free of the given rank:
    the monomial ``S^m`` corresponds to ``(gamma^m)*``.
    """
    return {m: DualFunctional.dual_basis(ring, m) for m in dp_basis(rank, degree)}


@dataclass(frozen=True)
class GammaDualDegree:
    """``Gamma^n(M)* = Hom(Gamma^n(M), A)`` with its generators as functionals."""

    module: PresentedModule
    functionals: Tuple[DualFunctional, ...]
    gamma: GammaModuleDegree


def gamma_dual_degree(module: PresentedModule, degree: int) -> GammaDualDegree:
    """
    Dual of ``Gamma^n(M)``: the functionals on ``Gamma^n(A^q)`` killing its relations.

    Parameters
    ----------
    module: PresentedModule
    degree: int

    Returns
    -------
    GammaDualDegree
    """
    gamma = gamma_module_degree(module, degree)
    module_dual = dual(gamma.module)
    functionals = tuple(
        DualFunctional.from_vector(module.ring, module.rank, degree, u)
        for u in module_dual.generators
    )
    return GammaDualDegree(module_dual.module, functionals, gamma)


def gamma_map_degree(phi: ModuleMap, degree: int) -> ModuleMap:
    """``Gamma^n(phi): gamma^m -> prod_i gamma^m_i(phi(x_i))``."""
    ring = phi.ring
    source = gamma_module_degree(phi.source, degree)
    target = gamma_module_degree(phi.target, degree)
    columns = []
    for m in source.basis:
        image = GammaElement(ring, phi.target.rank, 0, {(0,) * phi.target.rank: ring.one()})
        for i, e in enumerate(m):
            if e:
                image = dp_multiply(image, gamma_of_vector(ring, phi.column(i), e))
        columns.append(image.vector())
    rows = [[c[i] for c in columns] for i in range(len(target.basis))]
    return ModuleMap(source.module, target.module, rows)
