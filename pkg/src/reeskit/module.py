"""Finitely presented rings and modules, module maps, duals and versal maps."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple, Union

from reeskit.constant import DEFAULT_RING_NAME
from reeskit.errors import DomainError, VerificationError
from reeskit.groebner import (
    FreeModuleVector,
    GroebnerBasis,
    Ideal,
    SubmoduleBasis,
    apply_matrix,
    buchberger,
    lift,
    module_groebner,
    syzygies,
)
from reeskit.polynomial import (
    GREVLEX,
    Exponents,
    MonomialOrder,
    Polynomial,
    divides,
    parse_polynomial,
    render_polynomial,
)

Matrix = Tuple[Tuple[Polynomial, ...], ...]


class PresentedRing:
    def __init__(
        self,
        variables: Sequence[str],
        relations: Sequence[Union[Polynomial, str]] = (),
        order: MonomialOrder = GREVLEX,
        name: str = DEFAULT_RING_NAME,
    ) -> None:
        """
        Quotient ring ``QQ[variables] / (relations)``.

        Parameters
        ----------
        variables: list
            Variable names.
        relations: list, optional
            Default is ()
            Defining relations, as polynomials or text.
        order: MonomialOrder, optional
            Default is grevlex
            Monomial order of every computation in this ring.
        name: str, optional
            Default is A
            Name used when rendering algebras over this ring.
        """
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise DomainError(f"Duplicated variable names in {variables}.")
        self._variables = variables
        self._order = order
        self._name = name
        self._relations = tuple(
            parse_polynomial(r, variables) if isinstance(r, str) else r
            for r in relations
        )
        if any(r.nvars != len(variables) for r in self._relations):
            raise DomainError("Ring relations do not match the number of variables.")
        self._fixed_gb = buchberger(Ideal(self._relations, len(variables)), order)
        if self._fixed_gb.is_unit_ideal():
            logging.warning(f"The ring {self.describe()} is the zero ring.")

    @property
    def variables(self) -> Tuple[str, ...]:
        """variable names"""
        return self._variables

    @property
    def nvars(self) -> int:
        return len(self._variables)

    @property
    def relations(self) -> Tuple[Polynomial, ...]:
        """defining relations as given"""
        return self._relations

    @property
    def order(self) -> MonomialOrder:
        return self._order

    @property
    def name(self) -> str:
        return self._name

    @property
    def fixed_gb(self) -> GroebnerBasis:
        """reduced Gröbner basis of the defining ideal"""
        return self._fixed_gb

    def normal_form(self, poly: Polynomial) -> Polynomial:
        return self._fixed_gb.normal_form(poly)

    def is_zero(self, poly: Polynomial) -> bool:
        return self._fixed_gb.contains(poly)

    def parse(self, text: str) -> Polynomial:
        """Parse ``text`` in the ring variables and return its normal form."""
        return self.normal_form(parse_polynomial(text, self._variables))

    def render(self, poly: Polynomial) -> str:
        return render_polynomial(poly, self._variables, self._order)

    def render_matrix(self, rows: Sequence[Sequence[Polynomial]]) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(self.render(e) for e in row) + "]" for row in rows
        ) + "]"

    def __call__(self, value: Union[Polynomial, str, int]) -> "RingElement":
        if isinstance(value, str):
            value = self.parse(value)
        elif isinstance(value, int):
            value = Polynomial.constant(value, self.nvars)
        return RingElement(self, value)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.nvars)

    def one(self) -> Polynomial:
        return Polynomial.one(self.nvars)

    def variable(self, name: str) -> Polynomial:
        return Polynomial.variable(self._variables.index(name), self.nvars)

    def is_finite_dimensional(self) -> bool:
        """True iff the ring has finite dimension over QQ."""
        if self._fixed_gb.is_unit_ideal():
            return True
        leads = self._fixed_gb.leading_monomials()
        return all(
            any(lead[i] > 0 and sum(lead) == lead[i] for lead in leads)
            for i in range(self.nvars)
        )

    def standard_monomials(self) -> List[Exponents]:
        """QQ-basis of the ring: monomials outside the leading ideal, descending."""
        if not self.is_finite_dimensional():
            raise DomainError(f"{self.describe()} is not finite-dimensional over QQ.")
        leads = self._fixed_gb.leading_monomials()
        if any(not any(lead) for lead in leads):
            return []
        bounds = [
            min(lead[i] for lead in leads if lead[i] > 0 and sum(lead) == lead[i])
            for i in range(self.nvars)
        ]
        candidates: List[Exponents] = [()]
        for bound in bounds:
            candidates = [c + (e,) for c in candidates for e in range(bound)]
        monomials = [m for m in candidates if not any(divides(l, m) for l in leads)]
        return sorted(monomials, key=self._order.key, reverse=True)

    def dimension(self) -> int:
        return len(self.standard_monomials())

    def describe(self) -> str:
        """Text form, e.g. ``QQ[x] / (x^2)``."""
        if not self._variables:
            text = "QQ"
        else:
            text = f"QQ[{', '.join(self._variables)}]"
        if self._fixed_gb.elements:
            text += " / (" + ", ".join(self.render(g) for g in self._fixed_gb) + ")"
        return text

    def _key(self) -> tuple:
        return (self._variables, self._fixed_gb.elements, self._order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PresentedRing):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"PresentedRing({self.describe()})"


@dataclass(frozen=True)
class RingElement:
    """Element of a presented ring, kept in normal form."""

    ring: PresentedRing
    value: Polynomial

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.ring.normal_form(self.value))

    def _other(self, other: "RingElement") -> Polynomial:
        if other.ring != self.ring:
            raise DomainError("Ring elements of different rings.")
        return other.value

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.ring, self.value + self._other(other))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.ring, self.value - self._other(other))

    def __mul__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.ring, self.value * self._other(other))

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, -self.value)

    def __pow__(self, exponent: int) -> "RingElement":
        return RingElement(self.ring, self.value**exponent)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __str__(self) -> str:
        return self.ring.render(self.value)


def _normal_vector(ring: PresentedRing, vector: FreeModuleVector) -> FreeModuleVector:
    return vector.map_entries(ring.normal_form)


def _normal_matrix(
    ring: PresentedRing, matrix: Sequence[Sequence[Polynomial]]
) -> Matrix:
    return tuple(tuple(ring.normal_form(e) for e in row) for row in matrix)


def _columns(matrix: Matrix, rows: int, cols: int, nvars: int) -> List[FreeModuleVector]:
    return [
        FreeModuleVector([matrix[i][j] for i in range(rows)], nvars) for j in range(cols)
    ]


def _transpose(vectors: Sequence[FreeModuleVector]) -> Matrix:
    """Matrix whose rows are the given vectors."""
    return tuple(tuple(v.entries) for v in vectors)


class PresentedModule:
    def __init__(
        self,
        ring: PresentedRing,
        rank: int,
        relations: Sequence[FreeModuleVector] = (),
    ) -> None:
        """
        Module ``coker(P: A^p -> A^q)`` given by the columns of ``P``.

        Parameters
        ----------
        ring: PresentedRing
            Base ring ``A``.
        rank: int
            Number ``q`` of generators.
        relations: list, optional
            Default is ()
            Columns of ``P``, vectors of rank ``q``. They are stored in normal form,
            zero columns are dropped.
        """
        if rank < 0:
            raise DomainError("Module rank cannot be negative.")
        for relation in relations:
            if relation.rank != rank or relation.nvars != ring.nvars:
                raise DomainError(
                    f"Relation {relation} does not live in A^{rank} over {ring.describe()}."
                )
        self._ring = ring
        self._rank = rank
        normal = (_normal_vector(ring, r) for r in relations)
        self._relations = tuple(r for r in normal if not r.is_zero())

    @classmethod
    def free(cls, ring: PresentedRing, rank: int) -> "PresentedModule":
        return cls(ring, rank)

    @classmethod
    def zero(cls, ring: PresentedRing) -> "PresentedModule":
        return cls(ring, 0)

    @classmethod
    def from_matrix(
        cls, ring: PresentedRing, matrix: Sequence[Sequence[Polynomial]]
    ) -> "PresentedModule":
        """Cokernel of a ``q x p`` matrix given by its rows."""
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        if any(len(row) != cols for row in matrix):
            raise DomainError("Presentation matrix rows have different lengths.")
        return cls(ring, rows, _columns(_normal_matrix(ring, matrix), rows, cols, ring.nvars))

    @classmethod
    def from_ideal(
        cls, ring: PresentedRing, generators: Sequence[Polynomial]
    ) -> "PresentedModule":
        """The ideal generated by ``generators``, as a module on these generators."""
        row = [tuple(ring.normal_form(g) for g in generators)]
        kernel = syzygies(
            row, 1, len(generators), ring.nvars, ring.order, ring.fixed_gb
        )
        return cls(ring, len(generators), kernel.elements)

    @property
    def ring(self) -> PresentedRing:
        return self._ring

    @property
    def rank(self) -> int:
        """number of generators q"""
        return self._rank

    @property
    def relations(self) -> Tuple[FreeModuleVector, ...]:
        """columns of the presentation matrix"""
        return self._relations

    @property
    def matrix(self) -> Matrix:
        """presentation matrix, q rows"""
        return tuple(
            tuple(r[i] for r in self._relations) for i in range(self._rank)
        )

    @cached_property
    def submodule_basis(self) -> SubmoduleBasis:
        """Gröbner basis of the relation submodule of ``A^q``"""
        return module_groebner(
            self._relations,
            self._rank,
            self._ring.nvars,
            self._ring.order,
            self._ring.fixed_gb,
        )

    def reduce(self, vector: FreeModuleVector) -> FreeModuleVector:
        return self.submodule_basis.reduce(vector)

    def contains(self, vector: FreeModuleVector) -> bool:
        """True iff ``vector`` lies in the relation submodule, i.e. is zero in the module."""
        return self.submodule_basis.contains(vector)

    def generator(self, index: int) -> FreeModuleVector:
        return FreeModuleVector.basis_vector(index, self._rank, self._ring.nvars)

    def is_free(self) -> bool:
        """True iff the presentation has no relations beyond the ring relations."""
        return not self.submodule_basis.elements

    def is_zero(self) -> bool:
        return all(self.contains(self.generator(i)) for i in range(self._rank))

    def dimension(self) -> int:
        """Dimension over QQ; the base ring must be finite-dimensional."""
        monomials = self._ring.standard_monomials()
        leads = self.submodule_basis.leading_terms()
        return sum(
            1
            for position in range(self._rank)
            for m in monomials
            if not any(p == position and divides(l, m) for p, l in leads)
        )

    def equals(self, other: "PresentedModule") -> bool:
        """Equality as quotients of the same ``A^q``, by mutual containment of relations."""
        if other.ring != self._ring or other.rank != self._rank:
            return False
        return all(self.contains(r) for r in other.relations) and all(
            other.contains(r) for r in self._relations
        )

    def describe(self) -> str:
        if not self._relations:
            return f"A^{self._rank}" if self._rank != 1 else "A"
        return f"coker {self._ring.render_matrix(self.matrix)}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PresentedModule):
            return NotImplemented
        return (
            self._ring == other._ring
            and self._rank == other._rank
            and self._relations == other._relations
        )

    def __hash__(self) -> int:
        return hash((self._ring, self._rank, self._relations))

    def __repr__(self) -> str:
        return f"PresentedModule({self.describe()} over {self._ring.describe()})"


class ModuleMap:
    def __init__(
        self,
        source: PresentedModule,
        target: PresentedModule,
        matrix: Sequence[Sequence[Polynomial]],
    ) -> None:
        """
        Homomorphism of presented modules given by a ``target.rank x source.rank`` matrix.

        Parameters
        ----------
        source: PresentedModule
        target: PresentedModule
        matrix: list
            Rows of the matrix; column ``j`` is the image of generator ``j`` of ``source``.
        """
        if source.ring != target.ring:
            raise DomainError("Source and target of a module map have different rings.")
        if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
            raise DomainError(
                f"A map {source.rank} -> {target.rank} needs a {target.rank} x {source.rank} matrix."
            )
        self._source = source
        self._target = target
        self._matrix = _normal_matrix(source.ring, matrix)
        for relation in source.relations:
            if not target.contains(self._apply(relation)):
                raise DomainError(
                    f"Ill-defined module map: relation {relation} is not sent to a relation."
                )

    @classmethod
    def identity(cls, module: PresentedModule) -> "ModuleMap":
        ring = module.ring
        return cls(
            module,
            module,
            [
                [ring.one() if i == j else ring.zero() for j in range(module.rank)]
                for i in range(module.rank)
            ],
        )

    @property
    def source(self) -> PresentedModule:
        return self._source

    @property
    def target(self) -> PresentedModule:
        return self._target

    @property
    def matrix(self) -> Matrix:
        return self._matrix

    @property
    def ring(self) -> PresentedRing:
        return self._source.ring

    def column(self, index: int) -> FreeModuleVector:
        return FreeModuleVector(
            [row[index] for row in self._matrix], self.ring.nvars
        )

    def _apply(self, vector: FreeModuleVector) -> FreeModuleVector:
        return _normal_vector(
            self.ring, apply_matrix(self._matrix, vector, self._target.rank)
        )

    def apply(self, vector: FreeModuleVector) -> FreeModuleVector:
        """Image of a source vector, reduced modulo the target relations."""
        return self._target.reduce(self._apply(vector))

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """The composite ``self o first``."""
        if first.target != self._source:
            raise DomainError("Module maps are not composable.")
        ring = self.ring
        rows = []
        for i in range(self._target.rank):
            row = []
            for j in range(first.source.rank):
                entry = ring.zero()
                for k in range(self._source.rank):
                    entry = entry + self._matrix[i][k] * first.matrix[k][j]
                row.append(entry)
            rows.append(row)
        return ModuleMap(first.source, self._target, rows)

    def kernel(self) -> SubmoduleBasis:
        """Preimage of the target relations in ``A^q``; it contains the source relations."""
        return syzygies(
            self._matrix,
            self._target.rank,
            self._source.rank,
            self.ring.nvars,
            self.ring.order,
            self.ring.fixed_gb,
            modulo=self._target.relations,
        )

    def is_injective(self) -> bool:
        return all(self._source.contains(v) for v in self.kernel())

    def is_surjective(self) -> bool:
        ring = self.ring
        image = module_groebner(
            [self.column(j) for j in range(self._source.rank)]
            + list(self._target.relations),
            self._target.rank,
            ring.nvars,
            ring.order,
            ring.fixed_gb,
        )
        return all(
            image.contains(self._target.generator(i)) for i in range(self._target.rank)
        )

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self) -> str:
        return (
            f"ModuleMap({self._source.describe()} -> {self._target.describe()}, "
            f"{self.ring.render_matrix(self._matrix)})"
        )


@dataclass(frozen=True)
class ModuleDual:
    """
    Presentation of ``M* = Hom(M, A)``.

    ``generators[k]`` is the vector of values of the k-th generating functional on
    the generators of ``source``; ``module`` presents ``M*`` on these generators.
    """

    module: PresentedModule
    generators: Tuple[FreeModuleVector, ...]
    source: PresentedModule

    @property
    def functional_matrix(self) -> Matrix:
        """one row per generating functional"""
        return _transpose(self.generators)


def dual(module: PresentedModule) -> ModuleDual:
    """
    Dual module ``M* = ker(P^T)``.

    Parameters
    ----------
    module: PresentedModule

    Returns
    -------
    ModuleDual
    """
    ring = module.ring
    q = module.rank
    relations = module.relations
    transpose = tuple(tuple(r.entries) for r in relations)
    kernel = syzygies(transpose, len(relations), q, ring.nvars, ring.order, ring.fixed_gb)
    generators = tuple(kernel.elements)
    s = len(generators)
    among = syzygies(
        _transpose_columns(generators, q),
        q,
        s,
        ring.nvars,
        ring.order,
        ring.fixed_gb,
    )
    logging.info(f"Dual of a module with {q} generators has {s} generators")
    return ModuleDual(PresentedModule(ring, s, among.elements), generators, module)


def _transpose_columns(columns: Sequence[FreeModuleVector], rows: int) -> Matrix:
    """Matrix with the given vectors as its columns."""
    return tuple(tuple(c[i] for c in columns) for i in range(rows))


def versal_map(module: PresentedModule) -> ModuleMap:
    """
    Versal map ``M -> F`` onto the free module on the generators of ``M*``.

    Row ``k`` of the matrix is the k-th generator of ``M*``.
    """
    module_dual = dual(module)
    return ModuleMap(
        module,
        PresentedModule.free(module.ring, len(module_dual.generators)),
        module_dual.functional_matrix,
    )


def double_dual_embedding(module: PresentedModule) -> ModuleMap:
    """Inclusion ``M** -> F`` where ``F`` is free on the generators of ``M*``."""
    module_dual = dual(module)
    double = dual(module_dual.module)
    s = len(module_dual.generators)
    return ModuleMap(
        double.module,
        PresentedModule.free(module.ring, s),
        _transpose_columns(double.generators, s),
    )


def double_dual_map(module: PresentedModule) -> ModuleMap:
    """
    Canonical map ``M -> M**`` sending ``m`` to evaluation at ``m``.

    Composed with ``double_dual_embedding`` it equals ``versal_map``.
    """
    ring = module.ring
    embedding = double_dual_embedding(module)
    versal = versal_map(module)
    columns = []
    for j in range(module.rank):
        solution = lift(
            embedding.matrix,
            versal.column(j),
            embedding.source.rank,
            ring.order,
            ring.fixed_gb,
        )
        if solution is None:
            raise DomainError(
                f"Evaluation at generator {j} is not in the double dual; check the presentation."
            )
        columns.append(solution)
    return ModuleMap(
        module,
        embedding.source,
        _transpose_columns(columns, embedding.source.rank),
    )


def dual_map(phi: ModuleMap) -> ModuleMap:
    """
    Transpose ``phi*: N* -> M*`` of ``phi: M -> N``, sending ``u`` to ``u o phi``.

    Parameters
    ----------
    phi: ModuleMap

    Returns
    -------
    ModuleMap
        Map between the presentations of ``dual(phi.target)`` and ``dual(phi.source)``.
    """
    ring = phi.ring
    source_dual, target_dual = dual(phi.source), dual(phi.target)
    s = len(source_dual.generators)
    embedding = _transpose_columns(source_dual.generators, phi.source.rank)
    columns = []
    for u in target_dual.generators:
        values = FreeModuleVector(
            [
                ring.normal_form(
                    sum(
                        (u[i] * phi.matrix[i][j] for i in range(phi.target.rank)),
                        ring.zero(),
                    )
                )
                for j in range(phi.source.rank)
            ],
            ring.nvars,
        )
        if phi.source.rank == 0 or s == 0:
            columns.append(FreeModuleVector.zero(s, ring.nvars))
            continue
        solution = lift(embedding, values, s, ring.order, ring.fixed_gb)
        if solution is None:
            raise VerificationError(
                "A pulled back functional is not in the source dual."
            )
        columns.append(solution)
    return ModuleMap(
        target_dual.module, source_dual.module, _transpose_columns(columns, s)
    )


def is_versal(phi: ModuleMap) -> bool:
    """
    True iff ``phi: M -> F`` is versal, i.e. ``phi*: F* -> M*`` is surjective.

    Raises a DomainError when the target is not free.
    """
    if not phi.target.is_free():
        raise DomainError("Versality is only defined for maps to free modules.")
    ring = phi.ring
    rows = [
        FreeModuleVector(list(row), ring.nvars) for row in phi.matrix
    ]
    span = module_groebner(rows, phi.source.rank, ring.nvars, ring.order, ring.fixed_gb)
    return all(span.contains(u) for u in dual(phi.source).generators)


def direct_sum(first: PresentedModule, second: PresentedModule) -> PresentedModule:
    if first.ring != second.ring:
        raise DomainError("Direct sum of modules over different rings.")
    nvars = first.ring.nvars
    q, r = first.rank, second.rank
    zeros_r = [Polynomial.zero(nvars)] * r
    zeros_q = [Polynomial.zero(nvars)] * q
    relations = [FreeModuleVector(list(v) + zeros_r, nvars) for v in first.relations]
    relations += [FreeModuleVector(zeros_q + list(v), nvars) for v in second.relations]
    return PresentedModule(first.ring, q + r, relations)


def direct_sum_map(first: ModuleMap, second: ModuleMap) -> ModuleMap:
    """Block diagonal map ``M + N -> M' + N'``."""
    ring = first.ring
    zero = ring.zero()
    rows = [list(row) + [zero] * second.source.rank for row in first.matrix]
    rows += [[zero] * first.source.rank + list(row) for row in second.matrix]
    return ModuleMap(
        direct_sum(first.source, second.source),
        direct_sum(first.target, second.target),
        rows,
    )


def ideal_inclusion(ring: PresentedRing, generators: Sequence[Polynomial]) -> ModuleMap:
    """Inclusion of the ideal generated by ``generators`` into ``A``."""
    return ModuleMap(
        PresentedModule.from_ideal(ring, generators),
        PresentedModule.free(ring, 1),
        [list(generators)],
    )

