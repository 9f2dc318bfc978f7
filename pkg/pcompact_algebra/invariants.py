# -*- coding: utf-8 -*-
"""The reflection groups G29, G31 and G34, their invariant polynomials, and the checks run on them.

The G29 and G31 generators ship as coefficient lists. The G34 generators f_6k are assembled from their closed formula
and cross-checked against the power sums over the 756 norm 2 vectors of the G34 lattice over Z[w].
"""
import logging
from dataclasses import dataclass, field
from functools import cache, cached_property, lru_cache
from itertools import permutations, product
from math import comb, factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from sympy import QQ

from .constants import BudgetConst, GroupConst
from .data_utils import T_CYC_MATRIX, load_data_file, parse_matrix
from .errors import BudgetExceededError, InconsistentSystemError, VerificationError
from .exact import BASE_QW, OMEGA, SQRT_MINUS_3, CycRational, Rational, format_rational, residue, valuation
from .modular import solve_mod_prime_power, solve_rational
from .reports import Report, RunConfig, records
from .sympoly import T_PARTITION, SymPoly, invariance_method, is_invariant, partitions_of

T_VECTOR = Tuple[CycRational, ...]
T_F_MONOMIAL = Tuple[Tuple[int, int], ...]  # ( (<degree>, <exponent>), ... ), increasing degrees

logger = logging.getLogger(__name__)

_ZERO_W = CycRational(BASE_QW, 0)
_ONE_W = CycRational(BASE_QW, 1)

# Index (in the data file order) of the order 2 generator I - J/3 of G34.
_G34_SHIFT_GENERATOR = 1

# The ten products of degree 36 in f_6, ..., f_30.
F36_PRODUCTS: Tuple[T_F_MONOMIAL, ...] = (
    ((6, 1), (30, 1)),
    ((12, 1), (24, 1)),
    ((18, 2),),
    ((6, 2), (24, 1)),
    ((6, 1), (12, 1), (18, 1)),
    ((12, 3),),
    ((6, 3), (18, 1)),
    ((6, 2), (12, 2)),
    ((6, 4), (12, 1)),
    ((6, 6),),
)


def resolve_group_id(value) -> str:
    """Accept "G29" as well as "29" (or 29)."""
    text = str(value).strip().upper()
    group_id = GroupConst.ALIASES.get(text, text)
    if group_id not in GroupConst.GROUP_IDS:
        raise ValueError(f"Unknown group {value}, expected one of {GroupConst.GROUP_IDS} or their numbers.")
    return group_id


def multinomial(partition: Sequence[int]) -> int:
    """(e_1 + ... + e_r)! / (e_1! ... e_r!)"""
    result = factorial(sum(partition))
    for part in partition:
        result //= factorial(part)
    return result


def format_f_monomial(monomial: T_F_MONOMIAL, symbol: str = "f") -> str:
    """Render ((4, 2), (12, 1)) as "f4^2*f12"."""
    if not monomial:
        return "1"
    return "*".join(f"{symbol}{degree}" + (f"^{exponent}" if exponent > 1 else "") for degree, exponent in monomial)


def f_monomials_of_degree(degrees: Sequence[int], total: int) -> List[T_F_MONOMIAL]:
    """This function lists all monomials prod f_d^(e_d) in the given generator degrees of total degree ``total``.

    Args:
        degrees: The generator degrees that may occur.
        total: The total degree.

    Returns:
        The monomials, with exponents of the lowest degree decreasing first.
    """
    degrees = sorted(set(degrees))
    result: List[T_F_MONOMIAL] = []

    def extend(index: int, remaining: int, current: Tuple[Tuple[int, int], ...]) -> None:
        if remaining == 0:
            result.append(current)
            return
        if index == len(degrees):
            return
        degree = degrees[index]
        for exponent in range(remaining // degree, -1, -1):
            extend(index + 1, remaining - exponent * degree, current + (((degree, exponent),) if exponent else ()))

    extend(0, total, ())
    return result


def identity_matrix(size: int) -> T_CYC_MATRIX:
    return tuple(tuple(CycRational.coerce(int(i == j)) for j in range(size)) for i in range(size))


def transposition_matrix(size: int, first: int, second: int) -> T_CYC_MATRIX:
    """The permutation matrix swapping the variables ``first`` and ``second``."""
    order = list(range(size))
    order[first], order[second] = order[second], order[first]
    return tuple(tuple(CycRational.coerce(int(order[i] == j)) for j in range(size)) for i in range(size))


def matrix_mul(left: T_CYC_MATRIX, right: T_CYC_MATRIX) -> T_CYC_MATRIX:
    size = len(right)
    return tuple(
        tuple(
            sum((row[k] * right[k][j] for k in range(size)), CycRational.coerce(0)) for j in range(len(right[0]))
        )
        for row in left
    )


def matrix_apply(matrix: T_CYC_MATRIX, vector: T_VECTOR) -> T_VECTOR:
    return tuple(sum((entry * value for entry, value in zip(row, vector)), CycRational.coerce(0)) for row in matrix)


def matrix_order(matrix: T_CYC_MATRIX, max_order: int = 12) -> Optional[int]:
    """Smallest k <= ``max_order`` with M^k = I, or ``None``."""
    identity = identity_matrix(len(matrix))
    power = matrix
    for order in range(1, max_order + 1):
        if power == identity:
            return order
        power = matrix_mul(power, matrix)
    return None


@dataclass(frozen=True)
class ReflectionGroupData:
    """Generator matrices and numerical data of one of the groups. Variables transform as a column vector."""

    group_id: str
    prime: int
    nvars: int
    degrees: Tuple[int, ...]
    generators: Tuple[T_CYC_MATRIX, ...]
    # How many of the generators are listed in the data file; the remaining ones are transpositions.
    listed_generators: int

    def generator_order(self, index: int, max_order: int = 12) -> int:
        order = matrix_order(self.generators[index], max_order)
        if order is None:
            raise VerificationError(
                f"Generator {index} of {self.group_id} has no order <= {max_order}. Please investigate."
            )
        return order


@cache
def load_group(group_id: str) -> ReflectionGroupData:
    """This function loads, caches, and returns the generator data of a group.

    G31 extends the G29 generator list by one matrix; G34 is additionally generated by the permutation matrices,
    for which the adjacent transpositions are appended.

    Args:
        group_id: "G29", "G31" or "G34" (or the bare number).

    Returns:
        The group data.
    """
    group_id = resolve_group_id(group_id)
    data = load_data_file("groups.json")["groups"][group_id]

    generators: List[T_CYC_MATRIX] = []
    if "extends" in data:
        generators.extend(load_group(data["extends"]).generators)
    generators.extend(parse_matrix(rows) for rows in data["generators"])
    listed = len(generators)
    if data.get("with_permutations"):
        generators.extend(transposition_matrix(data["nvars"], i, i + 1) for i in range(data["nvars"] - 1))

    group = ReflectionGroupData(
        group_id=group_id,
        prime=data["prime"],
        nvars=data["nvars"],
        degrees=tuple(data["degrees"]),
        generators=tuple(generators),
        listed_generators=listed,
    )
    expected = (GroupConst.PRIME[group_id], GroupConst.NVARS[group_id], GroupConst.DEGREES[group_id])
    if (group.prime, group.nvars, group.degrees) != expected:
        raise VerificationError(f"The shipped data of {group_id} disagrees with the constants {expected}.")
    return group


@dataclass(frozen=True)
class LatticeVectorSet:
    """The norm 2 vectors of the G34 lattice, with the scalar 1/sqrt(-3) folded into the 486 long ones."""

    vectors: Tuple[T_VECTOR, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    @cached_property
    def index(self) -> Dict[T_VECTOR, int]:
        return {vector: position for position, vector in enumerate(self.vectors)}

    def __contains__(self, vector: T_VECTOR) -> bool:
        return tuple(vector) in self.index


def hermitian_norm(vector: T_VECTOR) -> Rational:
    return sum((entry.norm() for entry in vector), QQ.zero)


def _omega_power(exponent: int) -> CycRational:
    return OMEGA ** (exponent % 3)


def _scaled_vector(sign: int, exponents: Sequence[int]) -> T_VECTOR:
    """sign * (1/sqrt(-3)) * (w^a_1, ..., w^a_6)"""
    scale = SQRT_MINUS_3.inverse() * sign
    return tuple(scale * _omega_power(exponent) for exponent in exponents)


@cache
def lattice_vectors() -> LatticeVectorSet:
    """This function generates the 756 vectors of norm 2: 270 of the shape w^a e_i - w^b e_j, and 486 of the shape
    +-(1/sqrt(-3)) (w^a_1, ..., w^a_6) with a_1 + ... + a_6 = 0 mod 3.

    Raises:
        VerificationError: If the count, the uniqueness or a norm is off.
    """
    vectors: List[T_VECTOR] = []
    for i, j in permutations(range(6), 2):
        for a, b in product(range(3), repeat=2):
            vector = [_ZERO_W] * 6
            vector[i] = _omega_power(a)
            vector[j] = -_omega_power(b)
            vectors.append(tuple(vector))
    for exponents in product(range(3), repeat=6):
        if sum(exponents) % 3 == 0:
            vectors.extend(_scaled_vector(sign, exponents) for sign in (1, -1))

    result = LatticeVectorSet(tuple(vectors))
    if len(result) != 756 or len(result.index) != 756:
        raise VerificationError(f"Expected 756 distinct lattice vectors, got {len(result)} ({len(result.index)}).")
    wrong_norms = [vector for vector in vectors if hermitian_norm(vector) != 2]
    if wrong_norms:
        raise VerificationError(f"{len(wrong_norms)} lattice vectors do not have norm 2, e.g. {wrong_norms[0]}.")
    return result


def shift_generator_spot_checks() -> Tuple[Tuple[T_VECTOR, T_VECTOR], ...]:
    """Pairs (v, expected image of v) under I - J/3."""
    first_source = (OMEGA, -_omega_power(2), _ZERO_W, _ZERO_W, _ZERO_W, _ZERO_W)
    return (
        (first_source, _scaled_vector(1, (2, 1, 0, 0, 0, 0))),
        (_scaled_vector(1, (0,) * 6), _scaled_vector(-1, (0,) * 6)),
        (_scaled_vector(1, (0, 0, 0, 1, 1, 1)), _scaled_vector(-1, (1, 1, 1, 0, 0, 0))),
        (_scaled_vector(1, (0, 0, 1, 1, 2, 2)), _scaled_vector(1, (0, 0, 1, 1, 2, 2))),
    )


@dataclass
class LatticeReport:
    vector_count: int
    # generator index -> image position of every vector
    permutations: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    missing: List[Tuple[int, T_VECTOR]] = field(default_factory=list)
    spot_checks: List[Tuple[T_VECTOR, T_VECTOR, T_VECTOR, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.missing
            and all(len(set(images)) == self.vector_count for images in self.permutations.values())
            and all(passed for *_, passed in self.spot_checks)
        )


def verify_lattice(
    lattice: Optional[LatticeVectorSet] = None, group: Optional[ReflectionGroupData] = None
) -> LatticeReport:
    """This function checks that every generator of G34 permutes the 756 lattice vectors.

    Args:
        lattice: The vector set, generated when not given.
        group: The group data, G34 when not given.

    Returns:
        The report: the permutation induced by each generator, the vectors whose image is missing from the set, and
        the spot checks of the order 2 generator I - J/3.
    """
    lattice = lattice or lattice_vectors()
    group = group or load_group("G34")
    if group.nvars != 6:
        raise ValueError(f"The lattice lives in 6 variables, {group.group_id} has {group.nvars}.")

    logger.info("Going to check that %s generators permute %s lattice vectors.", len(group.generators), len(lattice))
    report = LatticeReport(vector_count=len(lattice))
    for generator_index, generator in enumerate(group.generators):
        images = []
        for vector in lattice.vectors:
            image = matrix_apply(generator, vector)
            position = lattice.index.get(image)
            if position is None:
                report.missing.append((generator_index, vector))
            else:
                images.append(position)
        report.permutations[generator_index] = tuple(images)

    shift = group.generators[_G34_SHIFT_GENERATOR]
    for source, expected in shift_generator_spot_checks():
        image = matrix_apply(shift, source)
        report.spot_checks.append((source, expected, image, image == expected))

    if report.missing:
        logger.warning("%s lattice images are missing from the set.", len(report.missing))
    return report


@lru_cache(maxsize=None)
def _power(entry: CycRational, exponent: int) -> CycRational:
    return entry**exponent


def power_sum(m: int, normalize: bool = True, max_degree: int = BudgetConst.MAX_POWER_SUM_DEGREE) -> SymPoly:
    """This function computes p_m = sum_v (v_1 x_1 + ... + v_6 x_6)^m over the 756 lattice vectors.

    The coefficient of m_e is multinomial(e) * sum_v prod_i v_i^(e_i); every such character sum is evaluated in
    Q(w) and must come out rational.

    Args:
        m: The degree.
        normalize: For m = 6k, return (-27)^k p_m / 486, which is the normalization of f_6k.
        max_degree: Budget on m.

    Returns:
        p_m in 6 variables.

    Raises:
        BudgetExceededError: If m is above ``max_degree``.
        VerificationError: If a coefficient is not rational.
    """
    if m > max_degree:
        raise BudgetExceededError(f"The power sum of degree {m} is above the configured budget {max_degree}.")
    vectors = lattice_vectors().vectors

    terms: Dict[T_PARTITION, Rational] = {}
    for partition in partitions_of(m, 6):
        exponents = partition + (0,) * (6 - len(partition))
        total = _ZERO_W
        for vector in vectors:
            value = _ONE_W
            for entry, exponent in zip(vector, exponents):
                if not exponent:
                    continue
                if not entry:
                    value = _ZERO_W
                    break
                value = value * _power(entry, exponent)
            total = total + value
        if not total.is_rational():
            raise VerificationError(f"The coefficient of m_{partition} in p_{m} is not rational: {total}.")
        terms[partition] = total.a * multinomial(partition)

    poly = SymPoly(6, terms)
    if normalize and m % 6 == 0:
        k = m // 6
        poly = poly.scale(QQ((-27) ** k, 486))
    return poly


def _in_closed_family(partition: T_PARTITION) -> bool:
    """3 <= length, all parts congruent mod 3, and all parts divisible by 3 unless the length is 6."""
    residues = {part % 3 for part in partition}
    return len(partition) >= 3 and len(residues) == 1 and (len(partition) == 6 or residues == {0})


@cache
def build_f6k(k: int) -> SymPoly:
    """This function builds the G34 invariant f_6k from its closed formula

    (1 + (-1)^k 27^(k-1) 5) m_(6k) + sum_{s=1..k} binom(6k, 3s) (1 + (-1)^(k+s) 27^(k-1)) m_(6k-3s,3s)
    + sum_e multinomial(e) m_e,

    where e runs over the partitions of 6k with 3 to 6 parts, all congruent mod 3, and all divisible by 3 when there
    are fewer than 6 parts.

    Args:
        k: Any k >= 1; f_36 (k = 6) is needed although it is not a generator.

    Returns:
        f_6k in 6 variables.
    """
    if k < 1:
        raise ValueError(f"f_6k is defined for k >= 1, got {k}.")
    degree = 6 * k
    terms: Dict[T_PARTITION, int] = {(degree,): 1 + (-1) ** k * 27 ** (k - 1) * 5}
    for s in range(1, k + 1):
        partition = tuple(sorted((degree - 3 * s, 3 * s), reverse=True))
        terms[partition] = comb(degree, 3 * s) * (1 + (-1) ** (k + s) * 27 ** (k - 1))
    for partition in partitions_of(degree, 6):
        if _in_closed_family(partition):
            terms[partition] = multinomial(partition)
    logger.debug("Built f_%s with %s terms.", degree, len(terms))
    return SymPoly(6, terms)


@dataclass(frozen=True)
class InvariantFamily:
    """Generator polynomials of the invariant ring of a group, by degree."""

    group: ReflectionGroupData
    polys: Dict[int, SymPoly]
    # Products of generators, keyed by (monomial, max_length).
    _products: Dict[Tuple[T_F_MONOMIAL, Optional[int]], SymPoly] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __getitem__(self, degree: int) -> SymPoly:
        return self.polys[degree]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self.polys))

    def product(self, monomial: T_F_MONOMIAL, max_length: Optional[int] = None) -> SymPoly:
        """prod f_d^(e_d), restricted to the m_e with at most ``max_length`` parts when given."""
        key = (tuple(monomial), max_length)
        if key not in self._products:
            nvars = self.group.nvars
            result = SymPoly.one(nvars)
            for degree, exponent in monomial:
                factor = self[degree] if max_length is None else self[degree].restrict(max_length)
                result = result.multiply(factor.pow(exponent, max_length=max_length), max_length=max_length)
            self._products[key] = result
        return self._products[key]


def _shipped_polynomials(group_id: str) -> Dict[int, SymPoly]:
    data = load_data_file("polynomials.json")["polynomials"][group_id]
    polys: Dict[int, SymPoly] = {}
    for parent, degrees in data.get("shared", {}).items():
        parent_polys = _shipped_polynomials(parent)
        polys.update({degree: parent_polys[degree] for degree in degrees})
    for key, value in data.items():
        if key != "shared":
            polys[int(key)] = SymPoly.from_json(value)
    return polys


@cache
def build_invariants(group_id: str) -> InvariantFamily:
    """This function returns the generators f_d of the invariant ring of a group.

    Args:
        group_id: "G29", "G31" or "G34" (or the bare number).

    Returns:
        The family: shipped coefficient lists for G29 and G31, the closed formula for G34.

    Raises:
        VerificationError: If a generator is not homogeneous of its degree.
    """
    group = load_group(group_id)
    if group.group_id == "G34":
        polys = {degree: build_f6k(degree // 6) for degree in group.degrees}
    else:
        polys = _shipped_polynomials(group.group_id)

    if tuple(sorted(polys)) != group.degrees:
        raise VerificationError(f"The generators of {group.group_id} have degrees {sorted(polys)}.")
    for degree, poly in polys.items():
        if not poly.is_homogeneous(degree) or poly.max_part_count() > group.nvars:
            raise VerificationError(f"f_{degree} of {group.group_id} is not homogeneous of degree {degree}.")
    return InvariantFamily(group, polys)


def poly_for_degree(group_id: str, degree: int) -> SymPoly:
    """The generator of the given degree; for G34 any f_6k, generator or not."""
    family = build_invariants(group_id)
    if degree in family.polys:
        return family[degree]
    if family.group.group_id == "G34" and degree > 0 and degree % 6 == 0:
        return build_f6k(degree // 6)
    raise ValueError(f"{family.group.group_id} has no invariant of degree {degree} in this package.")


def verify_invariance(
    family: InvariantFamily,
    degrees: Optional[Sequence[int]] = None,
    budget: int = BudgetConst.MAX_FULL_MONOMIALS,
    method: str = "auto",
) -> pd.DataFrame:
    """This function checks every (generator polynomial, generator matrix) pair.

    Args:
        family: The invariants.
        degrees: Restrict to these degrees.
        budget: Monomial budget of the full expansions.
        method: "auto" or "expand", see :func:`sympoly.is_invariant`.

    Returns:
        Pandas DataFrame with columns degree, generator, method, invariant. The invariant column is ``None`` where the
        budget did not allow the check.
    """
    rows = []
    for degree in degrees or family.degrees:
        logger.info("Going to check the invariance of f_%s of %s.", degree, family.group.group_id)
        for index, generator in enumerate(family.group.generators):
            used = invariance_method(generator) if method == "auto" else method
            try:
                invariant = is_invariant(family[degree], generator, budget, method)
            except BudgetExceededError as err:
                logger.warning("Skipping generator %s on f_%s: %s", index, degree, err)
                invariant, used = None, "skipped"
            rows.append({"degree": degree, "generator": index, "method": used, "invariant": invariant})
    return pd.DataFrame(rows, columns=["degree", "generator", "method", "invariant"])


@dataclass(frozen=True)
class DecompositionVerdict:
    """Outcome of a decomposability test over F_p."""

    target: str
    prime: int
    candidates: Tuple[T_F_MONOMIAL, ...]
    decomposable: bool
    # Coefficients mod p of the candidates when decomposable.
    witness: Optional[Tuple[int, ...]]
    # The verdict was reached on the m_e with at most this many parts.
    max_length: int


def _mod_p(value: Rational, prime: int, what: str) -> int:
    try:
        return residue(value, prime)
    except ZeroDivisionError as err:
        raise VerificationError(f"The coefficient {format_rational(value)} of {what} is not {prime}-integral.") from err


def indecomposable_mod_p(
    family: InvariantFamily,
    target_degree: int,
    candidates: Optional[Sequence[T_F_MONOMIAL]] = None,
    target: Optional[SymPoly] = None,
    target_name: Optional[str] = None,
) -> DecompositionVerdict:
    """This function decides whether a polynomial is, mod p, a linear combination of products of generators.

    The m-basis coordinates of the target and of every candidate product are reduced mod p and the system is solved
    over F_p. It is first solved on the m_e with at most four parts: products only lengthen partitions, so an
    inconsistent restricted system already proves indecomposability. Otherwise the length is raised step by step.

    Args:
        family: The generators.
        target_degree: Degree of the target.
        candidates: The products to decompose with; all monomials in the generators of lower degree by default.
        target: The polynomial to test, ``family[target_degree]`` by default.
        target_name: Label of the target in the verdict.

    Returns:
        The verdict, with witness coefficients when decomposable.
    """
    prime, nvars = family.group.prime, family.group.nvars
    target = family[target_degree] if target is None else target
    target_name = target_name or f"f{target_degree}"
    if candidates is None:
        candidates = f_monomials_of_degree([d for d in family.degrees if d < target_degree], target_degree)
    candidates = tuple(tuple(candidate) for candidate in candidates)

    logger.info(
        "Going to test %s of %s against %s products mod %s.",
        target_name,
        family.group.group_id,
        len(candidates),
        prime,
    )
    if not candidates:
        return DecompositionVerdict(target_name, prime, candidates, False, None, nvars)

    solution = None
    for max_length in range(min(BudgetConst.RESTRICTED_LENGTH, nvars), nvars + 1):
        restricted_target = target.restrict(max_length)
        products = [family.product(candidate, max_length) for candidate in candidates]
        coordinates = sorted(set(restricted_target.terms).union(*(poly.terms for poly in products)), reverse=True)
        matrix = [
            [_mod_p(poly.coefficient(partition), prime, format_f_monomial(c)) for poly, c in zip(products, candidates)]
            for partition in coordinates
        ]
        rhs = [_mod_p(restricted_target.coefficient(partition), prime, target_name) for partition in coordinates]
        try:
            solution = solve_mod_prime_power(matrix, rhs, prime, 1)
        except InconsistentSystemError:
            logger.info("%s is indecomposable mod %s on partitions of length <= %s.", target_name, prime, max_length)
            return DecompositionVerdict(target_name, prime, candidates, False, None, max_length)
        logger.debug("Length <= %s is consistent, going one part further.", max_length)

    return DecompositionVerdict(target_name, prime, candidates, True, solution.values, nvars)


@cache
def divisibility_check_h42() -> SymPoly:
    """This function computes h_42 = (f_42 - f_6^7) / 7.

    Returns:
        h_42, homogeneous of degree 42 with 7-integral coefficients.

    Raises:
        VerificationError: If a coefficient of f_42 - f_6^7 is prime to 7.
    """
    family = build_invariants("G34")
    logger.info("Going to check that f_42 - f_6^7 is divisible by 7.")
    difference = family[42] - family.product(((6, 7),))
    offenders = [(partition, value) for partition, value in difference.items() if valuation(value, 7) < 1]
    if offenders:
        partition, value = offenders[0]
        raise VerificationError(
            f"f_42 - f_6^7 is not divisible by 7: {len(offenders)} coefficients are prime to 7, e.g. "
            f"{format_rational(value)} at m_{partition}. Please investigate."
        )
    return difference.scale(QQ(1, 7))


@cache
def integral_generators(group_id: str) -> InvariantFamily:
    """Generators of the invariant ring over the p-adic integers: f_42 is replaced by h_42 for G34."""
    family = build_invariants(group_id)
    if family.group.group_id != "G34":
        return family
    polys = dict(family.polys)
    polys[42] = divisibility_check_h42()
    return InvariantFamily(family.group, polys)


@dataclass(frozen=True)
class F36Decomposition:
    products: Tuple[T_F_MONOMIAL, ...]
    coefficients: Tuple[Rational, ...]
    coordinates: Tuple[T_PARTITION, ...]

    def non_units(self, prime: int = 7) -> List[int]:
        """Indices of the coefficients which are not p-adic units."""
        return [index for index, value in enumerate(self.coefficients) if valuation(value, prime) != 0]


def decompose_f36() -> F36Decomposition:
    """This function writes f_36 as a rational combination of the ten products of degree 36 in f_6, ..., f_30.

    Only the m_e with at most four parts are kept, in the factors too. These are the 34 partitions of 36 into
    multiples of 3, and the resulting 34 x 10 system has a unique solution.

    Returns:
        The coefficients q_1, ..., q_10 in the order of :data:`F36_PRODUCTS`.

    Raises:
        VerificationError: If the coordinate space is not the expected one, or a coefficient is not a 7-adic unit.
        InconsistentSystemError: If the system has no or more than one solution.
    """
    family = build_invariants("G34")
    length = BudgetConst.RESTRICTED_LENGTH
    coordinates = tuple(tuple(3 * part for part in partition) for partition in partitions_of(12, length))
    if len(coordinates) != GroupConst.F36_COORDINATES:
        raise VerificationError(f"Expected {GroupConst.F36_COORDINATES} coordinates, got {len(coordinates)}.")

    logger.info("Going to decompose f_36 on %s coordinates.", len(coordinates))
    target = build_f6k(6).restrict(length)
    products = [family.product(monomial, length) for monomial in F36_PRODUCTS]
    stray = set(target.terms).union(*(poly.terms for poly in products)) - set(coordinates)
    if stray:
        raise VerificationError(f"Short partitions with parts prime to 3 showed up: {sorted(stray)[:5]}.")

    matrix = [[poly.coefficient(partition) for poly in products] for partition in coordinates]
    rhs = [target.coefficient(partition) for partition in coordinates]
    decomposition = F36Decomposition(F36_PRODUCTS, solve_rational(matrix, rhs), coordinates)

    non_units = decomposition.non_units()
    if non_units:
        raise VerificationError(f"The coefficients {[index + 1 for index in non_units]} are not 7-adic units.")
    return decomposition


def process(config: RunConfig) -> Report:
    """This is the entry point of the ``invariants`` subcommand.

    Args:
        config: ``--group``; ``--degree`` emits that polynomial (any f_6k for G34), ``--verify`` adds the invariance
            report under the generator matrices with the ``--max-monomials`` budget.
    """
    logger.info("The processing of %s just started.", __name__)
    family = build_invariants(config.require_group())
    group = family.group
    payload: Dict[str, Any] = {"group": group.group_id, "prime": group.prime, "degrees": list(family.degrees)}

    if config.degree is not None:
        poly = poly_for_degree(group.group_id, config.degree)
        payload.update({"degree": config.degree, "term_count": len(poly), "polynomial": poly.to_json()})
        table = pd.DataFrame(
            [{"partition": str(list(key)), "coeff": format_rational(value)} for key, value in poly.items()]
        )
    else:
        payload["generators"] = [{"degree": degree, "term_count": len(family[degree])} for degree in family.degrees]
        table = pd.DataFrame(payload["generators"])

    if not config.verify:
        return Report("invariants", payload, table)
    if config.degree is not None and config.degree not in family.degrees:
        raise ValueError(f"--verify needs a generator degree of {group.group_id}: {family.degrees}.")

    degrees = [config.degree] if config.degree is not None else None
    invariance = verify_invariance(family, degrees, config.max_monomials)
    skipped = int(invariance["invariant"].isna().sum())
    if skipped:
        logger.warning("%s of %s invariance checks are over the budget and were skipped.", skipped, len(invariance))
    failed = invariance["invariant"].map(lambda value: value is not None and not bool(value))
    # A skipped check is not a pass.
    passed = not skipped and not failed.any()
    payload["invariance"] = records(invariance)
    payload["skipped"] = skipped
    payload["passed"] = passed
    return Report("invariants", payload, invariance, passed=passed)
