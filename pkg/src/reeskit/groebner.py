"""Buchberger's algorithm for ideals and for submodules of free modules.

Module elements are handled as sparse term maps ``{(position, exponents): coefficient}``
under a position-over-term order in which position 0 is the largest. Ideals are
the rank one case. Computations over a quotient ring ``k[x] / J`` are done in the
ambient polynomial ring by appending ``g * e_i`` for every element ``g`` of a
Gröbner basis of ``J``.
"""

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from reeskit.errors import DomainError, VerificationError
from reeskit.polynomial import (
    GREVLEX,
    Exponents,
    MonomialOrder,
    Polynomial,
    divides,
    exponents_lcm,
)

Term = Tuple[int, Exponents]
Vector = Dict[Term, Fraction]
Matrix = Sequence[Sequence[Polynomial]]


def _term_key(order: MonomialOrder):
    def key(term: Term) -> tuple:
        return (-term[0], order.key(term[1]))

    return key


def _leading(vector: Vector, order: MonomialOrder) -> Term:
    return max(vector, key=_term_key(order))


def _monic(vector: Vector, order: MonomialOrder) -> Vector:
    factor = 1 / vector[_leading(vector, order)]
    return {term: c * factor for term, c in vector.items()}


def _subtract_multiple(
    target: Vector, source: Vector, shift: Exponents, factor: Fraction
) -> None:
    for (position, exps), c in source.items():
        term = (position, tuple(a + b for a, b in zip(exps, shift)))
        value = target.get(term, 0) - factor * c
        if value:
            target[term] = value
        else:
            target.pop(term, None)


def _find_divisor(term: Term, leads: Sequence[Term]) -> Optional[int]:
    position, exps = term
    for index, (lead_position, lead_exps) in enumerate(leads):
        if lead_position == position and divides(lead_exps, exps):
            return index
    return None


def _reduce(
    vector: Vector,
    basis: Sequence[Vector],
    leads: Sequence[Term],
    order: MonomialOrder,
) -> Vector:
    """Full reduction of ``vector`` by a list of monic vectors with the given leads."""
    key = _term_key(order)
    work = dict(vector)
    remainder: Vector = {}
    while work:
        lead = max(work, key=key)
        coefficient = work[lead]
        index = _find_divisor(lead, leads)
        if index is None:
            remainder[lead] = coefficient
            del work[lead]
            continue
        shift = tuple(a - b for a, b in zip(lead[1], leads[index][1]))
        _subtract_multiple(work, basis[index], shift, coefficient)
    return remainder


def _s_vector(f: Vector, lead_f: Term, g: Vector, lead_g: Term) -> Vector:
    lcm = exponents_lcm(lead_f[1], lead_g[1])
    result: Vector = {}
    _subtract_multiple(
        result, f, tuple(a - b for a, b in zip(lcm, lead_f[1])), Fraction(-1)
    )
    _subtract_multiple(result, g, tuple(a - b for a, b in zip(lcm, lead_g[1])), Fraction(1))
    return result


def _groebner(
    vectors: Sequence[Vector], order: MonomialOrder, rank: int
) -> List[Vector]:
    """
    Buchberger's algorithm with the normal selection strategy.

    Pairs are processed by increasing degree of their lcm, ties broken by the
    monomial order and the pair indices. The coprime criterion is only applied in
    rank one; the chain criterion is applied in every rank.
    """
    basis: List[Vector] = []
    leads: List[Term] = []
    heap: List[tuple] = []
    pending: Set[Tuple[int, int]] = set()

    def insert(vector: Vector) -> None:
        vector = _monic(vector, order)
        lead = _leading(vector, order)
        new = len(basis)
        basis.append(vector)
        leads.append(lead)
        for index in range(new):
            if leads[index][0] != lead[0]:
                continue
            lcm = exponents_lcm(leads[index][1], lead[1])
            heapq.heappush(heap, (sum(lcm), order.key(lcm), index, new))
            pending.add((index, new))

    for vector in vectors:
        remainder = _reduce(vector, basis, leads, order)
        if remainder:
            insert(remainder)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lead_i, lead_j = leads[i], leads[j]
        if rank == 1 and all(a == 0 or b == 0 for a, b in zip(lead_i[1], lead_j[1])):
            continue
        lcm = exponents_lcm(lead_i[1], lead_j[1])
        if any(
            k != i
            and k != j
            and leads[k][0] == lead_i[0]
            and divides(leads[k][1], lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        s_vector = _s_vector(basis[i], lead_i, basis[j], lead_j)
        remainder = _reduce(s_vector, basis, leads, order)
        if remainder:
            insert(remainder)
    logging.debug(f"Buchberger finished with {len(basis)} elements before interreduction")
    return basis


def _interreduce(basis: Sequence[Vector], order: MonomialOrder) -> List[Vector]:
    """Reduced basis: minimal leads, tails reduced, sorted descending by lead."""
    leads = [_leading(vector, order) for vector in basis]
    keep: List[int] = []
    for i, lead in enumerate(leads):
        redundant = False
        for j, other in enumerate(leads):
            if i == j or other[0] != lead[0] or not divides(other[1], lead[1]):
                continue
            if other != lead or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = [basis[i] for i in keep]
    minimal_leads = [leads[i] for i in keep]
    reduced = []
    for index, vector in enumerate(minimal):
        lead = minimal_leads[index]
        others = minimal[:index] + minimal[index + 1 :]
        other_leads = minimal_leads[:index] + minimal_leads[index + 1 :]
        tail = dict(vector)
        del tail[lead]
        tail = _reduce(tail, others, other_leads, order)
        tail[lead] = vector[lead]
        reduced.append(tail)
    key = _term_key(order)
    return sorted(reduced, key=lambda v: key(_leading(v, order)), reverse=True)


def _from_polynomial(poly: Polynomial, position: int = 0) -> Vector:
    return {(position, exps): c for exps, c in poly.items()}


def _to_polynomial(vector: Vector, nvars: int) -> Polynomial:
    return Polynomial({exps: c for (_, exps), c in vector.items()}, nvars)


class Ideal:
    def __init__(self, generators: Sequence[Polynomial], nvars: Optional[int] = None) -> None:
        """
        Ideal given by generators in a polynomial ring.

        Parameters
        ----------
        generators: list
            Generating polynomials, all with the same number of variables.
        nvars: int, optional
            Default is None
            Number of variables; required when ``generators`` is empty.
        """
        generators = tuple(generators)
        if nvars is None:
            if not generators:
                raise DomainError("The variable count of an empty ideal must be given.")
            nvars = generators[0].nvars
        if any(g.nvars != nvars for g in generators):
            raise DomainError("Ideal generators live in rings with different variable counts.")
        self._generators = generators
        self._nvars = nvars

    @property
    def generators(self) -> Tuple[Polynomial, ...]:
        """generating polynomials"""
        return self._generators

    @property
    def nvars(self) -> int:
        """number of ambient variables"""
        return self._nvars

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self._generators)

    def __len__(self) -> int:
        return len(self._generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.nvars != self._nvars:
            raise DomainError("Cannot add ideals of different rings.")
        return Ideal(self._generators + other.generators, self._nvars)

    def __repr__(self) -> str:
        return f"Ideal({[str(g) for g in self._generators]}, nvars={self._nvars})"


@dataclass(frozen=True)
class GroebnerBasis:
    """Gröbner basis of an ideal, reduced and sorted descending by leading monomial."""

    elements: Tuple[Polynomial, ...]
    order: MonomialOrder
    nvars: int
    reduced: bool = True

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def leading_monomials(self) -> List[Exponents]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def normal_form(self, poly: Polynomial) -> Polynomial:
        return normal_form(poly, self)

    def contains(self, poly: Polynomial) -> bool:
        return normal_form(poly, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def _vectors(self) -> Tuple[List[Vector], List[Term]]:
        vectors = [_from_polynomial(g.monic(self.order)) for g in self.elements]
        return vectors, [_leading(v, self.order) for v in vectors]


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """
    Reduced Gröbner basis of an ideal.

    Parameters
    ----------
    ideal: Ideal
        Ideal to compute a basis of. The zero ideal yields an empty basis.
    order: MonomialOrder, optional
        Default is grevlex

    Returns
    -------
    GroebnerBasis
    """
    vectors = [_from_polynomial(g) for g in ideal if g]
    basis = _interreduce(_groebner(vectors, order, 1), order)
    result = GroebnerBasis(
        tuple(_to_polynomial(v, ideal.nvars) for v in basis), order, ideal.nvars
    )
    for generator in ideal:
        if not result.contains(generator):
            raise VerificationError(
                f"Generator `{generator}` does not reduce to zero by its Gröbner basis."
            )
    logging.debug(f"Gröbner basis of {len(ideal)} generators has {len(result)} elements")
    return result


def normal_form(poly: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Remainder of ``poly`` on full division by ``basis``."""
    if poly.nvars != basis.nvars:
        raise DomainError(
            f"Polynomial has {poly.nvars} variables, basis has {basis.nvars}."
        )
    if not basis.elements or not poly:
        return poly
    vectors, leads = basis._vectors()
    return _to_polynomial(
        _reduce(_from_polynomial(poly), vectors, leads, basis.order), poly.nvars
    )


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    vf = _from_polynomial(f.monic(order))
    vg = _from_polynomial(g.monic(order))
    return _to_polynomial(
        _s_vector(vf, _leading(vf, order), vg, _leading(vg, order)), f.nvars
    )


def is_groebner_basis(polys: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    vectors = [_from_polynomial(p.monic(order)) for p in polys if p]
    leads = [_leading(v, order) for v in vectors]
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            s_vector = _s_vector(vectors[i], leads[i], vectors[j], leads[j])
            if _reduce(s_vector, vectors, leads, order):
                return False
    return True


def eliminate(
    ideal: Ideal, keep_from: int, order: Optional[MonomialOrder] = None
) -> Ideal:
    """
    Elimination ideal ``I ∩ k[x_keep_from, ..., x_n]``.

    Parameters
    ----------
    ideal: Ideal
        Ideal to eliminate from.
    keep_from: int
        Index of the first kept variable; the variables before it are eliminated.
    order: MonomialOrder, optional
        Default is None
        A block order split at ``keep_from``; grevlex in both blocks when None.

    Returns
    -------
    Ideal
        Generators in the same ring, free of the eliminated variables.
    """
    if not 0 <= keep_from <= ideal.nvars:
        raise DomainError(f"Cannot keep variables from index {keep_from}.")
    if order is None:
        order = MonomialOrder.block(keep_from) if keep_from else GREVLEX
    elif keep_from and (order.kind != "block" or order.split != keep_from):
        raise DomainError("Elimination needs a block order split at the kept variables.")
    basis = buchberger(ideal, order)
    kept = [
        g for g in basis if all(not any(exps[:keep_from]) for exps, _ in g.items())
    ]
    return Ideal(kept, ideal.nvars)


class FreeModuleVector:
    __slots__ = ("_entries", "_nvars")

    def __init__(self, entries: Sequence[Polynomial], nvars: Optional[int] = None) -> None:
        """Element of a free module ``A^q`` given by its ``q`` coordinates."""
        entries = tuple(entries)
        if nvars is None:
            if not entries:
                raise DomainError("The variable count of an empty vector must be given.")
            nvars = entries[0].nvars
        if any(e.nvars != nvars for e in entries):
            raise DomainError("Vector entries live in rings with different variable counts.")
        self._entries = entries
        self._nvars = nvars

    @classmethod
    def zero(cls, rank: int, nvars: int) -> "FreeModuleVector":
        return cls([Polynomial.zero(nvars)] * rank, nvars)

    @classmethod
    def basis_vector(cls, index: int, rank: int, nvars: int) -> "FreeModuleVector":
        return cls(
            [Polynomial.one(nvars) if i == index else Polynomial.zero(nvars) for i in range(rank)],
            nvars,
        )

    @property
    def entries(self) -> Tuple[Polynomial, ...]:
        """coordinates"""
        return self._entries

    @property
    def rank(self) -> int:
        """rank of the ambient free module"""
        return len(self._entries)

    @property
    def nvars(self) -> int:
        """number of ambient variables"""
        return self._nvars

    def __getitem__(self, index: int) -> Polynomial:
        return self._entries[index]

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self._entries)

    def _check(self, other: "FreeModuleVector") -> None:
        if other.rank != self.rank or other.nvars != self._nvars:
            raise DomainError("Vectors of different free modules.")

    def __add__(self, other: "FreeModuleVector") -> "FreeModuleVector":
        self._check(other)
        return FreeModuleVector([a + b for a, b in zip(self, other)], self._nvars)

    def __sub__(self, other: "FreeModuleVector") -> "FreeModuleVector":
        self._check(other)
        return FreeModuleVector([a - b for a, b in zip(self, other)], self._nvars)

    def __neg__(self) -> "FreeModuleVector":
        return FreeModuleVector([-a for a in self._entries], self._nvars)

    def scale(self, factor: Polynomial) -> "FreeModuleVector":
        return FreeModuleVector([factor * a for a in self._entries], self._nvars)

    def map_entries(self, function) -> "FreeModuleVector":
        return FreeModuleVector([function(a) for a in self._entries], self._nvars)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeModuleVector):
            return NotImplemented
        return self._nvars == other._nvars and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self._nvars, self._entries))

    def __repr__(self) -> str:
        return f"FreeModuleVector({[str(e) for e in self._entries]})"

    def _terms(self, offset: int = 0) -> Vector:
        vector: Vector = {}
        for position, entry in enumerate(self._entries):
            for exps, c in entry.items():
                vector[(position + offset, exps)] = c
        return vector

    @classmethod
    def _from_terms(cls, vector: Vector, rank: int, nvars: int, offset: int = 0) -> "FreeModuleVector":
        entries: List[Dict[Exponents, Fraction]] = [{} for _ in range(rank)]
        for (position, exps), c in vector.items():
            entries[position - offset][exps] = c
        return cls([Polynomial(e, nvars) for e in entries], nvars)


def apply_matrix(matrix: Matrix, vector: FreeModuleVector, rows: Optional[int] = None) -> FreeModuleVector:
    """Product of a matrix given by rows with a column vector."""
    rows = len(matrix) if rows is None else rows
    nvars = vector.nvars
    result = []
    for row in list(matrix)[:rows]:
        if len(row) != vector.rank:
            raise DomainError(
                f"Matrix row of length {len(row)} cannot act on a vector of rank {vector.rank}."
            )
        entry = Polynomial.zero(nvars)
        for a, b in zip(row, vector):
            entry = entry + a * b
        result.append(entry)
    return FreeModuleVector(result, nvars)


class SubmoduleBasis:
    def __init__(
        self,
        rank: int,
        nvars: int,
        basis: Sequence[FreeModuleVector],
        order: MonomialOrder = GREVLEX,
        ring_basis: Optional[GroebnerBasis] = None,
    ) -> None:
        """
        Gröbner basis of a submodule of ``A^rank`` under the position-over-term order.

        Parameters
        ----------
        rank: int
            Rank of the ambient free module.
        nvars: int
            Number of ambient variables.
        basis: list
            Reduced Gröbner basis, including the multiples ``g * e_i`` of the ring relations.
        order: MonomialOrder, optional
            Default is grevlex
        ring_basis: GroebnerBasis, optional
            Default is None
            Gröbner basis of the relations of the quotient ring, if any.
        """
        self._rank = rank
        self._nvars = nvars
        self._basis = tuple(basis)
        self._order = order
        self._ring_basis = ring_basis
        self._vectors = [v._terms() for v in self._basis]
        self._leads = [_leading(v, order) for v in self._vectors]

    @property
    def rank(self) -> int:
        """rank of the ambient free module"""
        return self._rank

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def order(self) -> MonomialOrder:
        return self._order

    @property
    def basis(self) -> Tuple[FreeModuleVector, ...]:
        """full reduced Gröbner basis"""
        return self._basis

    @property
    def elements(self) -> Tuple[FreeModuleVector, ...]:
        """generators of the submodule modulo the ring relations"""
        if self._ring_basis is None or not self._ring_basis.elements:
            return self._basis
        return tuple(
            v for v in self._basis if not all(self._ring_basis.contains(e) for e in v)
        )

    def leading_terms(self) -> List[Term]:
        return list(self._leads)

    def reduce(self, vector: FreeModuleVector) -> FreeModuleVector:
        if vector.rank != self._rank:
            raise DomainError(f"Vector of rank {vector.rank} in a module of rank {self._rank}.")
        remainder = _reduce(vector._terms(), self._vectors, self._leads, self._order)
        return FreeModuleVector._from_terms(remainder, self._rank, self._nvars)

    def contains(self, vector: FreeModuleVector) -> bool:
        return self.reduce(vector).is_zero()

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[FreeModuleVector]:
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"SubmoduleBasis(rank={self._rank}, elements={list(self.elements)})"


def _ring_vectors(ring_basis: Optional[GroebnerBasis], rank: int) -> List[Vector]:
    if ring_basis is None:
        return []
    return [
        _from_polynomial(g, position) for position in range(rank) for g in ring_basis
    ]


def module_groebner(
    vectors: Sequence[FreeModuleVector],
    rank: int,
    nvars: int,
    order: MonomialOrder = GREVLEX,
    ring_basis: Optional[GroebnerBasis] = None,
) -> SubmoduleBasis:
    """
    Reduced Gröbner basis of the submodule generated by ``vectors`` in ``A^rank``.

    Parameters
    ----------
    vectors: list
        Generators, each of length ``rank``.
    rank: int
        Rank of the ambient free module.
    nvars: int
        Number of ambient variables.
    order: MonomialOrder, optional
        Default is grevlex
        Term order; positions are compared first, position 0 being the largest.
    ring_basis: GroebnerBasis, optional
        Default is None
        Gröbner basis of the relations of the quotient ring.

    Returns
    -------
    SubmoduleBasis
    """
    if any(v.rank != rank for v in vectors):
        raise DomainError(f"All generators must have rank {rank}.")
    if ring_basis is not None and ring_basis.order != order:
        raise DomainError("Ring relations and module use different monomial orders.")
    terms = [v._terms() for v in vectors if not v.is_zero()]
    terms += _ring_vectors(ring_basis, rank)
    basis = _interreduce(_groebner(terms, order, rank), order)
    return SubmoduleBasis(
        rank,
        nvars,
        [FreeModuleVector._from_terms(v, rank, nvars) for v in basis],
        order,
        ring_basis,
    )


def _syzygy_module(
    matrix: Matrix,
    q_rows: int,
    p_cols: int,
    nvars: int,
    order: MonomialOrder,
    ring_basis: Optional[GroebnerBasis],
    modulo: Sequence[FreeModuleVector],
) -> SubmoduleBasis:
    if len(matrix) != q_rows or any(len(row) != p_cols for row in matrix):
        raise DomainError(f"Matrix is not of shape {q_rows} x {p_cols}.")
    rank = q_rows + p_cols
    generators: List[Vector] = []
    for j in range(p_cols):
        column: Vector = {}
        for i in range(q_rows):
            for exps, c in matrix[i][j].items():
                column[(i, exps)] = c
        column[(q_rows + j, (0,) * nvars)] = Fraction(1)
        generators.append(column)
    for vector in modulo:
        if vector.rank != q_rows:
            raise DomainError(f"Relation of rank {vector.rank} in a module of rank {q_rows}.")
        if not vector.is_zero():
            generators.append(vector._terms())
    generators += _ring_vectors(ring_basis, rank)
    basis = _groebner(generators, order, rank)
    projected = [
        FreeModuleVector._from_terms(v, p_cols, nvars, offset=q_rows)
        for v in basis
        if _leading(v, order)[0] >= q_rows
    ]
    return module_groebner(projected, p_cols, nvars, order, ring_basis)


def syzygies(
    matrix: Matrix,
    q_rows: int,
    p_cols: int,
    nvars: int,
    order: MonomialOrder = GREVLEX,
    ring_basis: Optional[GroebnerBasis] = None,
    modulo: Sequence[FreeModuleVector] = (),
) -> SubmoduleBasis:
    """
    Kernel ``{v in A^p : M v = 0}`` of a ``q x p`` matrix.

    Parameters
    ----------
    matrix: list
        ``q_rows`` rows of ``p_cols`` polynomials each.
    q_rows: int
        Number of rows.
    p_cols: int
        Number of columns.
    nvars: int
        Number of ambient variables.
    order: MonomialOrder, optional
        Default is grevlex
    ring_basis: GroebnerBasis, optional
        Default is None
        Gröbner basis of the relations of the quotient ring; the kernel is then
        computed over the quotient.
    modulo: list, optional
        Default is ()
        Vectors of ``A^q``; the kernel is then ``{v : M v in span(modulo)}``.

    Returns
    -------
    SubmoduleBasis
        A submodule of ``A^p``.
    """
    result = _syzygy_module(matrix, q_rows, p_cols, nvars, order, ring_basis, modulo)
    logging.debug(
        f"Syzygies of a {q_rows} x {p_cols} matrix: {len(result)} generators"
    )
    return result


def lift(
    matrix: Matrix,
    target: FreeModuleVector,
    p_cols: int,
    order: MonomialOrder = GREVLEX,
    ring_basis: Optional[GroebnerBasis] = None,
    modulo: Sequence[FreeModuleVector] = (),
) -> Optional[FreeModuleVector]:
    """
    Solve ``M c = b`` (modulo ``modulo`` and the ring relations).

    Parameters
    ----------
    matrix: list
        ``q`` rows of ``p_cols`` polynomials each.
    target: FreeModuleVector
        Right hand side ``b`` of rank ``q``.
    p_cols: int
        Number of columns of the matrix.

    Returns
    -------
    FreeModuleVector or None
        A solution ``c`` of rank ``p_cols``, None if ``b`` is not in the column span.
    """
    q_rows = target.rank
    nvars = target.nvars
    augmented = [[target[i]] + list(matrix[i]) for i in range(q_rows)]
    module = _syzygy_module(
        augmented, q_rows, p_cols + 1, nvars, order, ring_basis, modulo
    )
    unit = (0, (0,) * nvars)
    for vector, lead in zip(module.basis, module.leading_terms()):
        if lead == unit:
            solution = FreeModuleVector(vector.entries[1:], nvars)
            if ring_basis is not None:
                solution = solution.map_entries(ring_basis.normal_form)
            return -solution
    return None
