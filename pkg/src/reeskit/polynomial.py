"""Exact multivariate polynomials over the rationals.

A polynomial is a finite map from exponent vectors to ``fractions.Fraction``
coefficients. Values are immutable; every operation returns a new polynomial in
canonical form (no stored zero coefficients).
"""

import io
import tokenize
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import BasePolynomialError

from reeskit.errors import DomainError, ScriptError

Exponents = Tuple[int, ...]
Coefficient = Union[int, Fraction]

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)
# everything the code generated by parse_expr can reach
_GLOBALS = {
    "__builtins__": {},
    "Integer": sympy.Integer,
    "Rational": sympy.Rational,
    "Float": sympy.Float,
    "Symbol": sympy.Symbol,
}
_OPERATORS = frozenset(["+", "-", "*", "/", "**", "^", "(", ")"])
_SKIPPED = frozenset(
    [tokenize.NEWLINE, tokenize.NL, tokenize.ENDMARKER, tokenize.INDENT, tokenize.DEDENT]
)


@dataclass(frozen=True)
class MonomialOrder:
    """
    Monomial order on exponent vectors.

    Parameters
    ----------
    kind: str
        One of ``grevlex``, ``lex`` or ``block``.
    split: int, optional
        Default is 0
        Only used by ``block``: the first ``split`` variables form the outer block and
        are compared first with ``outer``, ties are broken on the remaining variables
        with ``inner``.
    inner: MonomialOrder, optional
        Order on the variables after ``split``.
    outer: MonomialOrder, optional
        Order on the first ``split`` variables.
    """

    kind: str = "grevlex"
    split: int = 0
    inner: Optional["MonomialOrder"] = None
    outer: Optional["MonomialOrder"] = None

    def __post_init__(self) -> None:
        if self.kind not in ("grevlex", "lex", "block"):
            raise DomainError(f"Unknown monomial order `{self.kind}`.")
        if self.kind == "block" and (
            self.inner is None or self.outer is None or self.split < 0
        ):
            raise DomainError("A block order needs a split index and two orders.")

    @classmethod
    def from_name(cls, name: str) -> "MonomialOrder":
        """Order by name: ``grevlex`` or ``lex``."""
        if name not in ("grevlex", "lex"):
            raise DomainError(f"Unknown monomial order `{name}`.")
        return cls(name)

    @classmethod
    def block(
        cls,
        split: int,
        outer: Optional["MonomialOrder"] = None,
        inner: Optional["MonomialOrder"] = None,
    ) -> "MonomialOrder":
        """Block order, grevlex within each block unless given otherwise."""
        return cls(
            "block",
            split=split,
            inner=inner if inner is not None else GREVLEX,
            outer=outer if outer is not None else GREVLEX,
        )

    def key(self, exponents: Exponents) -> tuple:
        """Sort key: ``m1 < m2`` in this order iff ``key(m1) < key(m2)``."""
        return _order_key(self, exponents)

    def compare(self, m1: Exponents, m2: Exponents) -> int:
        """Return -1, 0 or 1 as ``m1`` is smaller than, equal to or greater than ``m2``."""
        if len(m1) != len(m2):
            raise DomainError(
                f"Exponent vectors of different lengths: {len(m1)} and {len(m2)}."
            )
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({self.split}, {self.outer}, {self.inner})"
        return self.kind


@lru_cache(maxsize=1 << 18)
def _order_key(order: MonomialOrder, exponents: Exponents) -> tuple:
    if order.kind == "grevlex":
        return (sum(exponents), tuple(-e for e in reversed(exponents)))
    if order.kind == "lex":
        return exponents
    return (
        order.outer.key(exponents[: order.split]),  # type: ignore[union-attr]
        order.inner.key(exponents[order.split :]),  # type: ignore[union-attr]
    )


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def compare(m1: Exponents, m2: Exponents, order: MonomialOrder = GREVLEX) -> int:
    """Compare two exponent vectors in ``order``; see ``MonomialOrder.compare``."""
    return order.compare(m1, m2)


def divides(a: Exponents, b: Exponents) -> bool:
    """True iff the monomial with exponents ``a`` divides the one with exponents ``b``."""
    return all(x <= y for x, y in zip(a, b))


def exponents_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def weighted_monomials(weights: Tuple[int, ...], degree: int) -> Tuple[Exponents, ...]:
    """
    All exponent vectors ``e`` with ``sum(w_i * e_i) == degree``, lex descending.

    Parameters
    ----------
    weights: tuple
        Positive integer weight per variable.
    degree: int
        Weighted degree.

    Returns
    -------
    tuple
    """
    if degree < 0:
        return ()
    if not weights:
        return ((),) if degree == 0 else ()
    first_weight, rest = weights[0], weights[1:]
    if first_weight <= 0:
        raise DomainError("Weights must be positive.")
    result: List[Exponents] = []
    for first in range(degree // first_weight, -1, -1):
        for tail in weighted_monomials(rest, degree - first * first_weight):
            result.append((first,) + tail)
    return tuple(result)


def monomials_of_degree(nvars: int, degree: int) -> Tuple[Exponents, ...]:
    """All exponent vectors of length ``nvars`` summing to ``degree``, lex descending."""
    return weighted_monomials((1,) * nvars, degree)


def default_names(nvars: int) -> Tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(nvars))


class Polynomial:
    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(
        self,
        terms: Optional[Mapping[Exponents, Coefficient]] = None,
        nvars: int = 0,
    ) -> None:
        """
        Polynomial with exact rational coefficients.

        Parameters
        ----------
        terms: dict, optional
            Default is None
            Map from exponent vectors to coefficients. Zero coefficients are dropped.
        nvars: int, optional
            Default is 0
            Number of ambient variables; every exponent vector must have this length.
        """
        if nvars < 0:
            raise DomainError("Number of variables cannot be negative.")
        clean: Dict[Exponents, Fraction] = {}
        for exponents, coefficient in (terms or {}).items():
            key = tuple(int(e) for e in exponents)
            if len(key) != nvars:
                raise DomainError(
                    f"Exponent vector {key} does not have length {nvars}."
                )
            if any(e < 0 for e in key):
                raise DomainError(f"Negative exponent in {key}.")
            value = Fraction(coefficient) + clean.get(key, 0)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self._terms = clean
        self._nvars = nvars
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[Exponents, Fraction], nvars: int) -> "Polynomial":
        # terms must already be canonical
        poly = object.__new__(cls)
        poly._terms = terms
        poly._nvars = nvars
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, value: Coefficient, nvars: int) -> "Polynomial":
        value = Fraction(value)
        return cls._raw({(0,) * nvars: value} if value else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise DomainError(f"Variable index {index} out of range for {nvars}.")
        exponents = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw({exponents: Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exponents: Exponents, coefficient: Coefficient = 1) -> "Polynomial":
        return cls({tuple(exponents): coefficient}, len(exponents))

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "Polynomial":
        """Parse ``text`` as a polynomial in the variables ``names``."""
        return parse_polynomial(text, names)

    @property
    def nvars(self) -> int:
        """number of ambient variables"""
        return self._nvars

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        """copy of the term map"""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, exponents: Exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def _coerce(self, other: object) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise DomainError(
                    f"Mismatched variable counts: {self._nvars} and {other._nvars}."
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self._nvars)
        return None

    def __add__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self._terms)
        for exponents, coefficient in rhs._terms.items():
            value = terms.get(exponents, 0) + coefficient
            if value:
                terms[exponents] = value
            else:
                terms.pop(exponents, None)
        return Polynomial._raw(terms, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Polynomial":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                exponents = tuple(a + b for a, b in zip(e1, e2))
                value = terms.get(exponents, 0) + c1 * c2
                if value:
                    terms[exponents] = value
                else:
                    terms.pop(exponents, None)
        return Polynomial._raw(terms, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise DomainError("Negative powers are not polynomials.")
        result = Polynomial.one(self._nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: Coefficient) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self._nvars)
        return Polynomial._raw(
            {e: c * factor for e, c in self._terms.items()}, self._nvars
        )

    def mul_monomial(self, exponents: Exponents, coefficient: Coefficient = 1) -> "Polynomial":
        coefficient = Fraction(coefficient)
        if not coefficient:
            return Polynomial.zero(self._nvars)
        return Polynomial._raw(
            {
                tuple(a + b for a, b in zip(e, exponents)): c * coefficient
                for e, c in self._terms.items()
            },
            self._nvars,
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self._nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> List[Tuple[Exponents, Fraction]]:
        """Terms in descending order."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> Tuple[Exponents, Fraction]:
        if not self._terms:
            raise DomainError("The zero polynomial has no leading term.")
        exponents = max(self._terms, key=order.key)
        return exponents, self._terms[exponents]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Exponents:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def total_degree(self) -> int:
        """Maximal total degree of a term, -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> List[int]:
        """Sorted distinct weighted degrees of the terms."""
        return sorted(
            {sum(w * e for w, e in zip(weights, exps)) for exps in self._terms}
        )

    def is_homogeneous(self, weights: Sequence[int]) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def remap(self, nvars: int, positions: Sequence[Optional[int]]) -> "Polynomial":
        """
        Move variable ``i`` to position ``positions[i]`` in a ring with ``nvars``
        variables. A position of None means the variable must not occur.
        """
        if len(positions) != self._nvars:
            raise DomainError(
                f"Need {self._nvars} positions to remap, got {len(positions)}."
            )
        terms: Dict[Exponents, Fraction] = {}
        for exps, coefficient in self._terms.items():
            target = [0] * nvars
            for i, e in enumerate(exps):
                if not e:
                    continue
                if positions[i] is None:
                    raise DomainError(f"Variable {i} occurs but has no target position.")
                target[positions[i]] += e  # type: ignore[index]
            key = tuple(target)
            value = terms.get(key, 0) + coefficient
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return Polynomial._raw(terms, nvars)

    def extend(self, nvars: int) -> "Polynomial":
        """The same polynomial in a ring with ``nvars`` variables appended at the end."""
        return self.remap(nvars, list(range(self._nvars)))

    def substitute(
        self, images: Sequence["Polynomial"], nvars: Optional[int] = None
    ) -> "Polynomial":
        """
        Ring homomorphism sending variable ``i`` to ``images[i]``.

        Parameters
        ----------
        images: list
            One polynomial per variable, all in the same target ring.
        nvars: int, optional
            Number of target variables, only needed when ``images`` is empty.

        Returns
        -------
        Polynomial
        """
        if len(images) != self._nvars:
            raise DomainError(
                f"Need {self._nvars} images to substitute, got {len(images)}."
            )
        target = images[0].nvars if images else nvars
        if target is None:
            raise DomainError("Target ring of the substitution is unknown.")
        if any(image.nvars != target for image in images):
            raise DomainError("Substitution images live in different rings.")
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(index: int, exponent: int) -> Polynomial:
            key = (index, exponent)
            if key not in powers:
                if exponent == 1:
                    powers[key] = images[index]
                else:
                    powers[key] = power(index, exponent - 1) * images[index]
            return powers[key]

        result = Polynomial.zero(target)
        for exps, coefficient in self._terms.items():
            term = Polynomial.constant(coefficient, target)
            for index, exponent in enumerate(exps):
                if exponent:
                    term = term * power(index, exponent)
            result = result + term
        return result

    def to_string(
        self, names: Optional[Sequence[str]] = None, order: MonomialOrder = GREVLEX
    ) -> str:
        """Render as text, terms descending in ``order``, e.g. ``2*x^2*y - 1/3``."""
        return render_polynomial(self, names, order)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial('{self.to_string()}', nvars={self._nvars})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def negate(p: Polynomial) -> Polynomial:
    return -p


def render_polynomial(
    poly: Polynomial,
    names: Optional[Sequence[str]] = None,
    order: MonomialOrder = GREVLEX,
) -> str:
    names = tuple(names) if names is not None else default_names(poly.nvars)
    if len(names) != poly.nvars:
        raise DomainError(f"Need {poly.nvars} variable names, got {len(names)}.")
    if poly.is_zero():
        return "0"
    text = ""
    for position, (exps, coefficient) in enumerate(poly.sorted_terms(order)):
        monomial = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
        )
        size = abs(coefficient)
        if not monomial:
            body = str(size)
        elif size == 1:
            body = monomial
        else:
            body = f"{size}*{monomial}"
        if position == 0:
            text = f"-{body}" if coefficient < 0 else body
        else:
            text += f" - {body}" if coefficient < 0 else f" + {body}"
    return text


def _check_tokens(text: str, names: Sequence[str]) -> None:
    """Reject anything but numbers, variable names and arithmetic."""
    try:
        tokens = list(tokenize.generate_tokens(io.StringIO(text).readline))
    except (SyntaxError, tokenize.TokenError) as exc:
        raise ScriptError(f"cannot parse polynomial `{text}`: {exc}") from exc
    for token in tokens:
        if token.type in _SKIPPED:
            continue
        if token.type == tokenize.NAME:
            if token.string not in names:
                raise ScriptError(f"unknown identifier `{token.string}` in `{text}`")
        elif token.type == tokenize.NUMBER:
            if token.string[-1] in "jJ":
                raise ScriptError(f"`{token.string}` is not a rational number")
        elif token.string not in _OPERATORS:
            raise ScriptError(f"unexpected `{token.string}` in `{text}`")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """
    Parse a polynomial with rational coefficients.

    Accepts ``^`` or ``**`` for powers and optional ``*`` between factors, e.g.
    ``2*x^2*y - 1/3`` or ``2x^2 y - 1/3``.

    Parameters
    ----------
    text: str
        Polynomial expression.
    names: list
        Variable names of the ambient ring, in order.

    Returns
    -------
    Polynomial
    """
    names = tuple(names)
    if len(set(names)) != len(names):
        raise DomainError(f"Duplicated variable names in {names}.")
    _check_tokens(text, names)
    symbols = {name: sympy.Symbol(name) for name in names}
    try:
        expression = parse_expr(
            text,
            local_dict=dict(symbols),
            global_dict=dict(_GLOBALS),
            transformations=_TRANSFORMATIONS,
        )
    except (
        SyntaxError,
        tokenize.TokenError,
        TypeError,
        NameError,
        ZeroDivisionError,
        sympy.SympifyError,
    ) as exc:
        raise ScriptError(f"cannot parse polynomial `{text}`: {exc}") from exc

    unknown = sorted(
        str(s) for s in getattr(expression, "free_symbols", ()) if str(s) not in symbols
    )
    if unknown:
        raise ScriptError(f"unknown identifier `{unknown[0]}` in `{text}`")

    if not names:
        if not getattr(expression, "is_Rational", False):
            raise ScriptError(f"`{text}` is not a rational number")
        return Polynomial.constant(Fraction(int(expression.p), int(expression.q)), 0)

    try:
        poly = sympy.Poly(expression, *symbols.values(), domain=sympy.QQ)
    except BasePolynomialError as exc:
        raise ScriptError(f"`{text}` is not a polynomial over QQ: {exc}") from exc
    return Polynomial(
        {
            monom: Fraction(int(coefficient.p), int(coefficient.q))
            for monom, coefficient in poly.terms()
        },
        len(names),
    )
