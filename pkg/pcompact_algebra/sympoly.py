# -*- coding: utf-8 -*-
"""Sparse symmetric polynomials in a fixed number of variables, stored in the monomial-symmetric basis.

A symmetric polynomial is a map from partitions to exact coefficients: ``{(4,): 1, (1, 1, 1, 1): -12}`` in
4 variables is m_(4) - 12 m_(1,1,1,1). Products are computed orbit to orbit, i.e. a representative monomial of one
factor is multiplied against the full orbit of the other one and the result is re-collected into orbits. Full
expansion into ordinary monomials only serves as an oracle, it is far too expensive in 6 variables at grading 42.

The module also implements the substitutions needed by the rest of the package:

* linear substitution f(Mx), with fast paths for monomial matrices and for matrices of the form I + cJ,
* the p-typical log substitution x_i -> x_i + x_i^p/p + x_i^(p^2)/p^2 + ..., component by component.
"""
import logging
from collections import Counter, defaultdict
from functools import lru_cache
from itertools import chain
from math import factorial
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.utilities.iterables import multiset_permutations, partitions

from .constants import BudgetConst
from .errors import BudgetExceededError, PartitionError
from .exact import CycRational, Rational, format_rational, parse_rational, to_rational

T_PARTITION = Tuple[int, ...]  # non-increasing, positive parts
T_EXPONENTS = Tuple[int, ...]  # one exponent per variable
T_FULL_POLY = Dict[T_EXPONENTS, CycRational]  # { <exponent vector>: <coefficient> }
T_TAIL = Tuple[Tuple[int, Rational], ...]  # ( (<power q>, <coefficient of x^q>), ... )
T_MATRIX = Sequence[Sequence[CycRational]]

logger = logging.getLogger(__name__)


def normalize_partition(parts: Iterable[int]) -> T_PARTITION:
    """Sort parts non-increasingly and drop zeros."""
    return tuple(sorted((part for part in parts if part), reverse=True))


def check_partition(partition: T_PARTITION, nvars: int) -> None:
    """Raise :class:`PartitionError` unless ``partition`` is a canonical partition fitting into ``nvars`` variables."""
    if len(partition) > nvars:
        raise PartitionError(f"The partition {partition} has more than {nvars} parts.")
    if any(part <= 0 for part in partition) or list(partition) != sorted(partition, reverse=True):
        raise PartitionError(f"The partition {partition} is not a non-increasing sequence of positive integers.")


def padded(partition: T_PARTITION, nvars: int) -> T_EXPONENTS:
    return partition + (0,) * (nvars - len(partition))


@lru_cache(maxsize=None)
def stabilizer_order(partition: T_PARTITION, nvars: int) -> int:
    """The product of the factorials of the multiplicities of the padded partition (zeros included)."""
    counts = Counter(padded(partition, nvars))
    result = 1
    for multiplicity in counts.values():
        result *= factorial(multiplicity)
    return result


def orbit_size(partition: T_PARTITION, nvars: int) -> int:
    """Number of distinct monomials in m_partition."""
    return factorial(nvars) // stabilizer_order(partition, nvars)


def partitions_of(total: int, max_length: int) -> List[T_PARTITION]:
    """All partitions of ``total`` into at most ``max_length`` parts, in decreasing lexicographic order."""
    if total == 0:
        return [()]
    result = [
        tuple(sorted(chain.from_iterable([part] * mult for part, mult in parts.items()), reverse=True))
        for parts in partitions(total, m=max_length)
    ]
    return sorted(result, reverse=True)


def grading(partition: T_PARTITION) -> int:
    return sum(partition)


@lru_cache(maxsize=None)
def _orbit_product(
    a: T_PARTITION, b: T_PARTITION, nvars: int, max_length: Optional[int]
) -> Tuple[Tuple[T_PARTITION, int], ...]:
    # Iterate over the smaller orbit.
    if orbit_size(b, nvars) > orbit_size(a, nvars):
        a, b = b, a

    representative = padded(a, nvars)
    counts = Counter()
    for beta in multiset_permutations(list(padded(b, nvars))):
        product = normalize_partition(x + y for x, y in zip(representative, beta))
        if max_length is None or len(product) <= max_length:
            counts[product] += 1

    orbit_a = orbit_size(a, nvars)
    result = []
    for product, count in counts.items():
        coefficient, remainder = divmod(count * orbit_a, orbit_size(product, nvars))
        if remainder:
            raise ArithmeticError(f"Non-integral orbit coefficient for m_{a} * m_{b} -> m_{product}.")
        result.append((product, coefficient))
    return tuple(sorted(result, reverse=True))


def m_product(a: T_PARTITION, b: T_PARTITION, nvars: int, max_length: Optional[int] = None) -> "SymPoly":
    """This function multiplies two monomial symmetric polynomials.

    If beta runs over the distinct permutations of ``b`` (padded by zeros) and c = sort(a + beta), then
    m_a * m_b = sum_c count(c) * |orbit(a)| / |orbit(c)| * m_c.

    Args:
        a: The first partition.
        b: The second partition.
        nvars: The number of variables.
        max_length: When given, products with more parts than this are dropped.

    Returns:
        The product with integer coefficients.
    """
    check_partition(a, nvars)
    check_partition(b, nvars)
    if max_length is not None and max(len(a), len(b)) > max_length:
        return SymPoly(nvars)
    return SymPoly(nvars, dict(_orbit_product(a, b, nvars, max_length)))


class SymPoly:
    """A symmetric polynomial in ``nvars`` variables in the monomial-symmetric basis."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[T_PARTITION, Union[int, Rational]]] = None):
        self.nvars = nvars
        self.terms: Dict[T_PARTITION, Rational] = {}
        for partition, coefficient in (terms or {}).items():
            check_partition(partition, nvars)
            coefficient = to_rational(coefficient)
            if coefficient:
                self.terms[partition] = coefficient

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[T_PARTITION, Rational]) -> "SymPoly":
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly.terms = {key: value for key, value in terms.items() if value}
        return poly

    @classmethod
    def monomial(cls, partition: Sequence[int], nvars: int, coefficient: Union[int, Rational] = 1) -> "SymPoly":
        return cls(nvars, {normalize_partition(partition): coefficient})

    @classmethod
    def one(cls, nvars: int) -> "SymPoly":
        return cls(nvars, {(): 1})

    def _check_compatible(self, other: "SymPoly") -> None:
        if self.nvars != other.nvars:
            raise PartitionError(f"Cannot combine polynomials in {self.nvars} and {other.nvars} variables.")

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for partition, coefficient in other.terms.items():
            terms[partition] = terms.get(partition, QQ.zero) + coefficient
        return SymPoly._raw(self.nvars, terms)

    def __neg__(self) -> "SymPoly":
        return SymPoly._raw(self.nvars, {key: -value for key, value in self.terms.items()})

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def scale(self, factor: Union[int, Rational]) -> "SymPoly":
        factor = to_rational(factor)
        return SymPoly._raw(self.nvars, {key: value * factor for key, value in self.terms.items()})

    def multiply(
        self, other: "SymPoly", max_length: Optional[int] = None, max_grading: Optional[int] = None
    ) -> "SymPoly":
        """Product of two symmetric polynomials, optionally truncated by partition length and/or grading."""
        self._check_compatible(other)
        terms: Dict[T_PARTITION, Rational] = defaultdict(lambda: QQ.zero)
        for a, coefficient_a in self.terms.items():
            for b, coefficient_b in other.terms.items():
                if max_grading is not None and grading(a) + grading(b) > max_grading:
                    continue
                if max_length is not None and max(len(a), len(b)) > max_length:
                    continue
                factor = coefficient_a * coefficient_b
                for product, count in _orbit_product(a, b, self.nvars, max_length):
                    terms[product] += factor * count
        return SymPoly._raw(self.nvars, terms)

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        return self.multiply(other)

    def pow(self, exponent: int, max_length: Optional[int] = None, max_grading: Optional[int] = None) -> "SymPoly":
        result = SymPoly.one(self.nvars)
        for _ in range(exponent):
            result = result.multiply(self, max_length=max_length, max_grading=max_grading)
        return result

    def coefficient(self, partition: Sequence[int]) -> Rational:
        return self.terms.get(normalize_partition(partition), QQ.zero)

    def gradings(self) -> List[int]:
        return sorted({grading(partition) for partition in self.terms})

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        gradings = self.gradings()
        return len(gradings) <= 1 and (degree is None or not gradings or gradings[0] == degree)

    def homogeneous_component(self, degree: int) -> "SymPoly":
        return SymPoly._raw(self.nvars, {key: value for key, value in self.terms.items() if grading(key) == degree})

    def restrict(self, max_length: int) -> "SymPoly":
        """Keep only the m_e with at most ``max_length`` parts."""
        return SymPoly._raw(self.nvars, {key: value for key, value in self.terms.items() if len(key) <= max_length})

    def max_part_count(self) -> int:
        return max((len(partition) for partition in self.terms), default=0)

    def items(self) -> List[Tuple[T_PARTITION, Rational]]:
        """Terms in canonical order (decreasing partitions)."""
        return sorted(self.terms.items(), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(value)}*m{list(key)}" for key, value in self.items())

    def to_json(self) -> Dict:
        return {
            "nvars": self.nvars,
            "terms": [{"partition": list(key), "coeff": format_rational(value)} for key, value in self.items()],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "SymPoly":
        return cls(
            data["nvars"],
            {normalize_partition(term["partition"]): parse_rational(str(term["coeff"])) for term in data["terms"]},
        )


class GradedSeries:
    """A symmetric power series known only through grading ``cap``; higher gradings are absent and unknown."""

    __slots__ = ("poly", "cap")

    def __init__(self, poly: SymPoly, cap: int):
        self.cap = cap
        self.poly = SymPoly._raw(poly.nvars, {key: value for key, value in poly.terms.items() if grading(key) <= cap})

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        return GradedSeries(self.poly + other.poly, min(self.cap, other.cap))

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return GradedSeries(self.poly - other.poly, min(self.cap, other.cap))

    def scale(self, factor: Union[int, Rational]) -> "GradedSeries":
        return GradedSeries(self.poly.scale(factor), self.cap)

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        cap = min(self.cap, other.cap)
        return GradedSeries(self.poly.multiply(other.poly, max_grading=cap), cap)

    def component(self, degree: int) -> SymPoly:
        if degree > self.cap:
            raise BudgetExceededError(f"Grading {degree} is above the truncation cap {self.cap}.")
        return self.poly.homogeneous_component(degree)


def derivative_sum(f: SymPoly) -> SymPoly:
    """This function applies D = sum_i d/dx_i to a symmetric polynomial.

    D m_e = sum over the distinct nonzero values v of e of v * mult_c(v - 1) * m_c, where c is e with one part v
    lowered to v - 1 and mult_c(0) counts the zero padding of c.
    """
    terms: Dict[T_PARTITION, Rational] = defaultdict(lambda: QQ.zero)
    for partition, coefficient in f.terms.items():
        for value in set(partition):
            lowered = list(partition)
            lowered[lowered.index(value)] = value - 1
            lowered = normalize_partition(lowered)
            if value == 1:
                multiplicity = f.nvars - len(lowered)
            else:
                multiplicity = lowered.count(value - 1)
            terms[lowered] += coefficient * value * multiplicity
    return SymPoly._raw(f.nvars, terms)


def shift_by_sum(f: SymPoly, factor: Rational) -> SymPoly:
    """This function computes f(x + u*(1,...,1)) with u = factor * (x_1 + ... + x_n).

    Taylor's formula f(x + u1) = sum_k u^k/k! D^k f is evaluated Horner-style:
    R_n = D^n f, R_k = D^k f + u/(k+1) * R_(k+1).
    """
    derivatives = [f]
    while derivatives[-1]:
        derivatives.append(derivative_sum(derivatives[-1]))
    derivatives.pop()
    if not derivatives:
        return f

    u = SymPoly.monomial((1,), f.nvars, to_rational(factor))
    result = derivatives[-1]
    for k in range(len(derivatives) - 2, -1, -1):
        result = derivatives[k] + (u * result).scale(QQ(1, k + 1))
    return result


def full_expand(f: SymPoly, budget: int = BudgetConst.MAX_FULL_MONOMIALS) -> T_FULL_POLY:
    """This function expands a symmetric polynomial into ordinary monomials.

    Args:
        f: The polynomial.
        budget: Maximal number of monomials to produce.

    Returns:
        Map from exponent vectors to coefficients.

    Raises:
        BudgetExceededError: If the orbits of ``f`` hold more than ``budget`` monomials.
    """
    total = sum(orbit_size(partition, f.nvars) for partition in f.terms)
    if total > budget:
        raise BudgetExceededError(
            f"Full expansion of a polynomial of grading {f.gradings()} needs {total} monomials, "
            f"the budget is {budget}."
        )
    result: T_FULL_POLY = {}
    for partition, coefficient in f.terms.items():
        for exponents in multiset_permutations(list(padded(partition, f.nvars))):
            result[tuple(exponents)] = CycRational.coerce(coefficient)
    return result


def collect_symmetric(expanded: T_FULL_POLY, nvars: int) -> SymPoly:
    """Re-collect a fully expanded symmetric polynomial into orbits; raises if it is not symmetric."""
    orbits: Dict[T_PARTITION, CycRational] = {}
    for exponents, coefficient in expanded.items():
        if not coefficient:
            continue
        partition = normalize_partition(exponents)
        seen = orbits.setdefault(partition, coefficient)
        if seen != coefficient:
            raise ArithmeticError(f"The polynomial is not symmetric: orbit {partition} has differing coefficients.")
    counts = Counter(normalize_partition(exponents) for exponents, value in expanded.items() if value)
    for partition in orbits:
        if counts[partition] != orbit_size(partition, nvars):
            raise ArithmeticError(f"The polynomial is not symmetric: orbit {partition} is incomplete.")
    return SymPoly(nvars, {partition: to_rational(coefficient) for partition, coefficient in orbits.items()})


def _full_mul(left: T_FULL_POLY, right: T_FULL_POLY) -> T_FULL_POLY:
    result: Dict[T_EXPONENTS, CycRational] = {}
    for exponents_left, coefficient_left in left.items():
        for exponents_right, coefficient_right in right.items():
            key = tuple(x + y for x, y in zip(exponents_left, exponents_right))
            value = coefficient_left * coefficient_right
            result[key] = result[key] + value if key in result else value
    return {key: value for key, value in result.items() if value}


def _monomial_permutation(matrix: T_MATRIX) -> Optional[List[Tuple[int, CycRational]]]:
    """For a monomial matrix return [(column, entry)] per row, otherwise None."""
    result = []
    for row in matrix:
        nonzero = [(j, CycRational.coerce(entry)) for j, entry in enumerate(row) if CycRational.coerce(entry)]
        if len(nonzero) != 1:
            return None
        result.append(nonzero[0])
    if len({column for column, _ in result}) != len(result):
        return None
    return result


def _identity_plus_all_ones(matrix: T_MATRIX) -> Optional[Rational]:
    """If the matrix is I + cJ with rational c, return c."""
    size = len(matrix)
    off_diagonal = CycRational.coerce(matrix[0][1]) if size > 1 else CycRational.coerce(0)
    for i, row in enumerate(matrix):
        for j, entry in enumerate(row):
            expected = off_diagonal + 1 if i == j else off_diagonal
            if CycRational.coerce(entry) != expected:
                return None
    if not off_diagonal.is_rational():
        return None
    return off_diagonal.a


def _check_matrix(matrix: T_MATRIX, nvars: int) -> None:
    if len(matrix) != nvars or any(len(row) != nvars for row in matrix):
        shape = f"{len(matrix)}x{len(matrix[0]) if matrix else 0}"
        raise PartitionError(f"Matrix of shape {shape} acting on {nvars} variables.")


def substitute_linear(
    f: SymPoly, matrix: T_MATRIX, budget: int = BudgetConst.MAX_FULL_MONOMIALS, force_expand: bool = False
) -> T_FULL_POLY:
    """This function substitutes x -> Mx (variables as a column vector), i.e. computes f(Mx).

    Monomial matrices act directly on exponent vectors. Other matrices go through powers of the linear forms
    (M x)_i, cached per (row, exponent). That generic path is an oracle: its cost is bounded by ``budget``.

    Args:
        f: A symmetric polynomial.
        matrix: A square matrix of :class:`CycRational` (or rationals) of size ``f.nvars``.
        budget: Monomial budget, applied to the full expansion of ``f``.
        force_expand: Take the generic path even for monomial matrices.

    Returns:
        f(Mx) in the ordinary monomial basis.
    """
    _check_matrix(matrix, f.nvars)
    expanded = full_expand(f, budget)
    monomial = None if force_expand else _monomial_permutation(matrix)
    if monomial is not None:
        result: T_FULL_POLY = {}
        for exponents, coefficient in expanded.items():
            image = [0] * f.nvars
            value = coefficient
            for row, (column, entry) in enumerate(monomial):
                image[column] = exponents[row]
                value = value * entry ** exponents[row]
            result[tuple(image)] = value
        return {key: value for key, value in result.items() if value}

    powers: Dict[Tuple[int, int], T_FULL_POLY] = {}

    def linear_form_power(row: int, exponent: int) -> T_FULL_POLY:
        if (row, exponent) not in powers:
            if exponent == 0:
                powers[(row, exponent)] = {(0,) * f.nvars: CycRational.coerce(1)}
            else:
                linear = {
                    tuple(1 if k == j else 0 for k in range(f.nvars)): CycRational.coerce(entry)
                    for j, entry in enumerate(matrix[row])
                    if CycRational.coerce(entry)
                }
                powers[(row, exponent)] = _full_mul(linear_form_power(row, exponent - 1), linear)
        return powers[(row, exponent)]

    result = {}
    for exponents, coefficient in expanded.items():
        term = {(0,) * f.nvars: coefficient}
        for row, exponent in enumerate(exponents):
            if exponent:
                term = _full_mul(term, linear_form_power(row, exponent))
        for key, value in term.items():
            result[key] = result[key] + value if key in result else value
        if len(result) > budget:
            raise BudgetExceededError(f"Linear substitution of grading {f.gradings()} exceeds {budget} monomials.")
    return {key: value for key, value in result.items() if value}


INVARIANCE_METHODS = ("auto", "expand")


def invariance_method(matrix: T_MATRIX) -> str:
    """Name of the path :func:`is_invariant` takes for ``matrix`` in "auto" mode."""
    if _identity_plus_all_ones(matrix) is not None:
        return "shift"
    if _monomial_permutation(matrix) is not None:
        return "monomial"
    return "expand"


def is_invariant(
    f: SymPoly, matrix: T_MATRIX, budget: int = BudgetConst.MAX_FULL_MONOMIALS, method: str = "auto"
) -> bool:
    """This function tells whether f(Mx) = f(x).

    Matrices of the form I + cJ (J the all-ones matrix) are handled in the m-basis through
    :func:`shift_by_sum`, since Mx = x + c (x_1 + ... + x_n) (1, ..., 1). Everything else goes through
    :func:`substitute_linear`, which has its own fast path for monomial matrices.

    Args:
        f: A symmetric polynomial.
        matrix: The matrix M.
        budget: Monomial budget of the full expansion.
        method: "auto", or "expand" to force the full expansion (the oracle).
    """
    if method not in INVARIANCE_METHODS:
        raise ValueError(f"Unknown invariance method {method}, expected one of {INVARIANCE_METHODS}.")
    _check_matrix(matrix, f.nvars)
    if method == "auto":
        shift = _identity_plus_all_ones(matrix)
        if shift is not None:
            return shift_by_sum(f, shift) == f
    image = substitute_linear(f, matrix, budget, force_expand=method == "expand")
    return image == {key: value for key, value in full_expand(f, budget).items() if value}


def p_typical_tail(prime: int, max_increase: int) -> T_TAIL:
    """The tail x^p/p + x^(p^2)/p^2 + ... of the p-typical log, truncated to powers q with q - 1 <= max_increase."""
    tail = []
    power = prime
    while power - 1 <= max_increase:
        tail.append((power, QQ(1, power)))
        power *= prime
    return tuple(tail)


@lru_cache(maxsize=None)
def _part_expansion(exponent: int, tail: T_TAIL, max_increase: int) -> Tuple[Tuple[int, Rational], ...]:
    """Coefficients of (x + sum_q c_q x^q)^exponent / x^exponent as {increase of the x-degree: coefficient}."""
    base = {0: QQ.one}
    for power, coefficient in tail:
        if power - 1 <= max_increase:
            base[power - 1] = base.get(power - 1, QQ.zero) + coefficient
    result = {0: QQ.one}
    for _ in range(exponent):
        product: Dict[int, Rational] = defaultdict(lambda: QQ.zero)
        for increase_left, coefficient_left in result.items():
            for increase_right, coefficient_right in base.items():
                if increase_left + increase_right <= max_increase:
                    product[increase_left + increase_right] += coefficient_left * coefficient_right
        result = product
    return tuple(sorted((key, value) for key, value in result.items() if value))


def _distribute(
    expansions: Sequence[Tuple[Tuple[int, Rational], ...]], needed: int
) -> Iterator[Tuple[Tuple[int, ...], Rational]]:
    if not expansions:
        if needed == 0:
            yield (), QQ.one
        return
    head, rest = expansions[0], expansions[1:]
    reachable = sum(expansion[-1][0] for expansion in rest)
    for increase, coefficient in head:
        if increase > needed or needed - increase > reachable:
            continue
        for increases, rest_coefficient in _distribute(rest, needed - increase):
            yield (increase,) + increases, coefficient * rest_coefficient


def padic_log_substitute(
    partition: T_PARTITION,
    prime: int,
    target_grading: int,
    nvars: int,
    tail: Optional[T_TAIL] = None,
) -> SymPoly:
    """This function computes one graded component of m_e(x_1 + tail(x_1), ..., x_n + tail(x_n)).

    Expanding the representative monomial x^e part by part gives sum_delta C_delta x^(e + delta); summing over the
    orbit turns each term into C_delta * P(e + delta) / P(e) * m_sort(e + delta), where P is the product of the
    factorials of the multiplicities (the repetend sizes). For the tail x^7 this is
    sum_j P(e + 6j)/P(e) * prod_i binom(e_i, j_i) * m_sort(e + 6j).

    Args:
        partition: The partition e.
        prime: The prime p; the default tail is the p-typical log x^p/p + x^(p^2)/p^2 + ...
        target_grading: The grading of the component to return.
        nvars: Number of variables.
        tail: Explicit tail as ((q, c_q), ...), e.g. ((7, 1),) for x + x^7.

    Returns:
        The component, empty if the grading is not reachable.
    """
    check_partition(partition, nvars)
    needed = target_grading - grading(partition)
    if needed < 0:
        return SymPoly(nvars)
    if tail is None:
        tail = p_typical_tail(prime, needed)

    expansions = [_part_expansion(part, tail, needed) for part in partition]
    base_stabilizer = stabilizer_order(partition, nvars)
    terms: Dict[T_PARTITION, Rational] = defaultdict(lambda: QQ.zero)
    for increases, coefficient in _distribute(expansions, needed):
        image = normalize_partition(part + increase for part, increase in zip(partition, increases))
        terms[image] += coefficient * QQ(stabilizer_order(image, nvars), base_stabilizer)
    return SymPoly._raw(nvars, terms)


def substitute_series(f: SymPoly, prime: int, cap: int, tail: Optional[T_TAIL] = None) -> GradedSeries:
    """All components of f(x + tail(x)) through grading ``cap``, as a :class:`GradedSeries`."""
    terms: Dict[T_PARTITION, Rational] = defaultdict(lambda: QQ.zero)
    for partition, coefficient in f.terms.items():
        for target in range(grading(partition), cap + 1):
            for image, value in padic_log_substitute(partition, prime, target, f.nvars, tail).terms.items():
                terms[image] += coefficient * value
    return GradedSeries(SymPoly._raw(f.nvars, terms), cap)


def log_tail(max_increase: int) -> T_TAIL:
    """The tail -x^2/2 + x^3/3 - ... of log(1 + x), truncated to powers q with q - 1 <= max_increase."""
    return tuple((power, QQ((-1) ** (power + 1), power)) for power in range(2, max_increase + 2))
