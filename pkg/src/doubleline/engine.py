"""Power-sum decompositions of double-line quartics and their tangency theory.

A double-line quartic is a product (line)^2 * (conic).  This module builds
and verifies weighted power-sum representations

    sum_i weight_i * l_i^4  =  line^2 * conic,

studies the coordinate families solving the moment systems that produce
them, and constructs explicit certificates for the central geometric fact:
when seven terms meet the line in seven distinct points, the line is
(possibly improperly) tangent to the conic.  Everything is exact rational
arithmetic; no check in this module is numerical.

Coordinate instances fix the line x2 = 0 and lines of the shape
x0 + slope*x1 + lift*x2, which turns the divisibility constraints into
Vandermonde moment systems on the slopes.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import sympoly
from .errors import (
    GenerationFailureError,
    InvalidInputError,
    NotDoubleLineError,
    PreconditionError,
    StructuralError,
    TheoremViolationError,
)
from .forms import (
    BinaryQuadratic,
    FormTuple,
    HomogeneousForm,
    conic_rank,
    divide_by_linear,
    line_tangent_to_conic,
    monomials_of_degree,
    restrict,
)
from .linalg import (
    RationalMatrix,
    VandermondeSystem,
    normalize_vector,
    nullspace,
    rref,
    solve,
    vandermonde_nullspace,
    weighted_moment_kernel,
)

Vector = tuple[Fraction, ...]


def line_x2() -> HomogeneousForm:
    """The coordinate line x2 = 0 used by all coordinate instances."""
    return HomogeneousForm.linear((0, 0, 1))


@dataclass(frozen=True)
class WaringDecomposition:
    """Weighted sum of fourth powers of linear forms in three variables."""

    terms: tuple[tuple[Fraction, HomogeneousForm], ...]

    def __post_init__(self):
        coerced = []
        for weight, form in self.terms:
            if form.num_vars != 3 or form.degree != 1:
                raise StructuralError("decomposition terms must be linear forms in three variables")
            coerced.append((Fraction(weight), form))
        object.__setattr__(self, "terms", tuple(coerced))

    @property
    def n(self) -> int:
        return len(self.terms)

    @property
    def is_pure(self) -> bool:
        return all(w == 1 for w, _ in self.terms)

    def weights(self) -> Vector:
        return tuple(w for w, _ in self.terms)

    def lines(self) -> tuple[HomogeneousForm, ...]:
        return tuple(f for _, f in self.terms)

    def value(self) -> HomogeneousForm:
        total = HomogeneousForm.zero(3, 4)
        for weight, form in self.terms:
            total = total + weight * form**4
        return total


@dataclass(frozen=True)
class CoordinateInstance:
    """Six or seven lines x0 + slope*x1 + lift*x2 with weights."""

    slopes: Vector
    lifts: Vector
    weights: Vector

    def __post_init__(self):
        for name in ("slopes", "lifts", "weights"):
            object.__setattr__(self, name, tuple(Fraction(v) for v in getattr(self, name)))
        n = len(self.slopes)
        if n not in (6, 7):
            raise StructuralError(f"coordinate instances have 6 or 7 terms, got {n}")
        if len(self.lifts) != n or len(self.weights) != n:
            raise StructuralError("slopes, lifts and weights must have equal length")

    @property
    def n(self) -> int:
        return len(self.slopes)

    def to_decomposition(self) -> WaringDecomposition:
        return WaringDecomposition(
            tuple(
                (w, HomogeneousForm.linear((1, h, k)))
                for h, k, w in zip(self.slopes, self.lifts, self.weights)
            )
        )

    @classmethod
    def from_decomposition(cls, dec: WaringDecomposition) -> "CoordinateInstance":
        slopes, lifts, weights = [], [], []
        for w, form in dec.terms:
            c0, c1, c2 = form.linear_coefficients()
            if c0 != 1:
                raise InvalidInputError("coordinate form requires x0-coefficient 1 in every line")
            slopes.append(c1)
            lifts.append(c2)
            weights.append(w)
        return cls(tuple(slopes), tuple(lifts), tuple(weights))


@dataclass(frozen=True)
class DoubleLineQuartic:
    """A quartic together with its factorization line^2 * cofactor."""

    line: HomogeneousForm
    cofactor: HomogeneousForm
    target: HomogeneousForm

    def __post_init__(self):
        if self.line.degree != 1 or self.cofactor.degree != 2 or self.target.degree != 4:
            raise StructuralError("expected degrees 1, 2 and 4")
        if self.line**2 * self.cofactor != self.target:
            raise StructuralError("target is not line^2 * cofactor")

    @classmethod
    def of(cls, line: HomogeneousForm, cofactor: HomogeneousForm) -> "DoubleLineQuartic":
        return cls(line=line, cofactor=cofactor, target=line**2 * cofactor)


def extract_cofactor(quartic: HomogeneousForm, line: HomogeneousForm) -> HomogeneousForm:
    """The conic q with quartic = line^2 * q, or NotDoubleLineError.

    The error carries the exact remainder of division by the squared line.
    """
    if quartic.degree != 4 or quartic.num_vars != 3:
        raise StructuralError("expected a quartic in three variables")
    if line.degree != 1 or line.is_zero():
        raise InvalidInputError("line must be a nonzero linear form")
    q1, r1 = divide_by_linear(quartic, line)
    q2, r2 = divide_by_linear(q1, line)
    remainder = line * r2 + r1
    if not remainder.is_zero():
        raise NotDoubleLineError(remainder)
    return q2


@dataclass(frozen=True)
class KernelBasis:
    """Kernel of the map sending coefficient vectors a to sum_i a_i * L_i^d."""

    degree: int
    forms: FormTuple
    vectors: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def power_kernel(restricted: FormTuple, degree: int) -> KernelBasis:
    """Exact kernel basis of a |-> sum_i a_i * L_i^degree for binary linear L_i.

    For seven pairwise non-proportional entries the dimension is 6 - degree
    for 0 <= degree <= 6.
    """
    if restricted.num_vars != 2 or restricted.degree != 1:
        raise StructuralError("expected a tuple of binary linear forms")
    if degree < 0:
        raise StructuralError("degree must be non-negative")
    powers = restricted.power(degree)
    rows = [
        [f.coefficient(mono) for f in powers]
        for mono in monomials_of_degree(2, degree)
    ]
    matrix = RationalMatrix.from_rows(rows)
    return KernelBasis(degree=degree, forms=restricted, vectors=tuple(nullspace(matrix)))


def kernel_descend(a: Sequence[Fraction | int], restricted: FormTuple, tensor: HomogeneousForm) -> Vector:
    """Entrywise product of a with the evaluations L_i(tensor).

    L_i(tensor) is the contraction evaluation of the symmetric tensor at the
    coefficient vector of L_i; for tensor = u^d it equals L_i(u)^d.  When a
    kills the degree (d + deg tensor) powers, the output kills the degree-d
    powers, which is what makes the certificate construction descend.
    """
    if tensor.num_vars != 2:
        raise StructuralError("tensor must live on the kernel plane")
    values = [tensor.evaluate(f.linear_coefficients()) for f in restricted]
    if len(values) != len(a):
        raise StructuralError("vector length does not match tuple length")
    return tuple(Fraction(x) * v for x, v in zip(a, values))


@dataclass(frozen=True)
class TangencyCertificate:
    """Exact witnesses that the line is tangent to the cofactor conic.

    The fields satisfy, with L the restricted lines and alpha the weights:

    * ``annihilator`` spans the kernel of the degree-5 power map and has no
      zero entry;
    * ``annihilator_i * L_i(contact_vector) == alpha_i`` for every i;
    * ``annihilator_i * L_i(bridge) == alpha_i * line_values_i`` for every i;
    * ``restricted_conic == 6 * sum_i alpha_i * line_values_i^2 * L_i^2`` and
      equals the restriction of the cofactor to the line;
    * the polarization of ``restricted_conic`` kills ``contact_vector``, so
      the line touches the conic at ``tangency_point``.
    """

    restricted: FormTuple
    weights: Vector
    annihilator: Vector
    contact_vector: tuple[Fraction, Fraction]
    transversal_point: tuple[Fraction, Fraction, Fraction]
    line_values: Vector
    bridge: HomogeneousForm
    restricted_conic: BinaryQuadratic
    tangency_point: tuple[Fraction, Fraction]

    def verify(self) -> None:
        """Re-check every certified identity; raises TheoremViolationError."""
        L = self.restricted
        a = self.annihilator
        if not FormTuple.scalars(a, 2).dot(L.power(5)).is_zero():
            raise TheoremViolationError("annihilator does not kill the degree-5 powers")
        w_form = HomogeneousForm.linear(self.contact_vector)
        if kernel_descend(a, L, w_form) != self.weights:
            raise TheoremViolationError("contact vector does not reproduce the weights")
        expected = tuple(al * lv for al, lv in zip(self.weights, self.line_values))
        if kernel_descend(a, L, self.bridge) != expected:
            raise TheoremViolationError("bridge tensor does not reproduce the line values")
        acc = HomogeneousForm.zero(2, 2)
        for al, lv, f in zip(self.weights, self.line_values, L):
            acc = acc + (6 * al * lv * lv) * (f * f)
        if BinaryQuadratic.from_form(acc) != self.restricted_conic:
            raise TheoremViolationError("restricted conic does not match its power-sum expression")
        q = self.restricted_conic
        for u in ((1, 0), (0, 1)):
            if q.polar(self.contact_vector, u) != 0:
                raise TheoremViolationError("contact vector is not in the polar kernel")


def _restricted_tuple(dec: WaringDecomposition, line: HomogeneousForm) -> FormTuple:
    return FormTuple(tuple(restrict(f, line) for f in dec.lines()))


def _require_distinct_restrictions(restricted: FormTuple) -> None:
    coeffs = [f.linear_coefficients() for f in restricted]
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            if coeffs[i][0] * coeffs[j][1] - coeffs[i][1] * coeffs[j][0] == 0:
                raise PreconditionError(
                    f"lines {i} and {j} meet the base line in the same point"
                )


def _transversal_point(line: HomogeneousForm) -> tuple[Fraction, Fraction, Fraction]:
    # scaled coordinate vector on the largest-index nonzero coefficient
    coeffs = line.linear_coefficients()
    j = max(i for i, c in enumerate(coeffs) if c != 0)
    point = [Fraction(0)] * 3
    point[j] = 1 / coeffs[j]
    return tuple(point)


def tangency_certificate(dec: WaringDecomposition, line: HomogeneousForm) -> TangencyCertificate:
    """Constructive tangency witnesses for a seven-term double-line value.

    Requires the value of ``dec`` to equal line^2 * q with q nonzero and the
    seven lines to meet the base line in seven distinct points.  Pure
    (weight-1) decompositions are the classical statement; general weights
    use the same construction with the weight vector in place of the all-ones
    vector.  Every identity is re-verified before returning; a verification
    failure raises TheoremViolationError and indicates an implementation bug.
    """
    if dec.n != 7:
        raise PreconditionError(f"expected 7 terms, got {dec.n}")
    if line.degree != 1 or line.is_zero():
        raise InvalidInputError("line must be a nonzero linear form")
    value = dec.value()
    try:
        cofactor = extract_cofactor(value, line)
    except NotDoubleLineError as exc:
        raise PreconditionError("value is not divisible by the squared line") from exc
    if cofactor.is_zero():
        raise PreconditionError("cofactor conic is zero")
    restricted = _restricted_tuple(dec, line)
    _require_distinct_restrictions(restricted)

    kernel5 = power_kernel(restricted, 5)
    if kernel5.dimension != 1:
        raise TheoremViolationError("degree-5 kernel is not one-dimensional")
    annihilator = kernel5.vectors[0]
    if any(a == 0 for a in annihilator):
        raise TheoremViolationError("degree-5 kernel generator has a zero entry")

    weights = dec.weights()
    coeffs = [f.linear_coefficients() for f in restricted]
    two_rows = RationalMatrix.from_rows(
        [[annihilator[i] * coeffs[i][0], annihilator[i] * coeffs[i][1]] for i in range(2)]
    )
    w = solve(two_rows, [weights[0], weights[1]])
    if w is None:
        raise TheoremViolationError("contact system is singular")
    contact = (w[0], w[1])
    for i in range(7):
        if annihilator[i] * (coeffs[i][0] * contact[0] + coeffs[i][1] * contact[1]) != weights[i]:
            raise TheoremViolationError("contact vector fails on a later line")

    transversal = _transversal_point(line)
    line_values = tuple(f.evaluate(transversal) for f in dec.lines())

    bridge_rows = RationalMatrix.from_rows(
        [
            [
                annihilator[i] * coeffs[i][0] ** 2,
                annihilator[i] * coeffs[i][0] * coeffs[i][1],
                annihilator[i] * coeffs[i][1] ** 2,
            ]
            for i in range(7)
        ]
    )
    b = solve(bridge_rows, [weights[i] * line_values[i] for i in range(7)])
    if b is None:
        raise TheoremViolationError("bridge system is inconsistent")
    bridge = HomogeneousForm(2, 2, {(2, 0): b[0], (1, 1): b[1], (0, 2): b[2]})

    conic_form = HomogeneousForm.zero(2, 2)
    for al, lv, f in zip(weights, line_values, restricted):
        conic_form = conic_form + (6 * al * lv * lv) * (f * f)
    restricted_conic = BinaryQuadratic.from_form(conic_form)
    if conic_form != restrict(cofactor, line):
        raise TheoremViolationError("restricted conic does not match the cofactor restriction")

    point = normalize_vector(contact)
    certificate = TangencyCertificate(
        restricted=restricted,
        weights=weights,
        annihilator=annihilator,
        contact_vector=contact,
        transversal_point=transversal,
        line_values=line_values,
        bridge=bridge,
        restricted_conic=restricted_conic,
        tangency_point=(point[0], point[1]),
    )
    certificate.verify()
    return certificate


def tangency_defect(inst: CoordinateInstance) -> Fraction:
    """Exact obstruction to tangency for a coordinate instance.

    Writing s_p = sum_i weight_i * lift_i^2 * slope_i^p, the defect is
    s_1^2 - s_0 * s_2.  144 times the defect equals the discriminant of the
    binary quadratic 6 * sum_i weight_i * lift_i^2 * (x0 + slope_i*x1)^2, so
    the defect vanishes exactly when the instance's conic is tangent to the
    coordinate line.
    """
    s0 = s1 = s2 = Fraction(0)
    for h, k, w in zip(inst.slopes, inst.lifts, inst.weights):
        base = w * k * k
        s0 += base
        s1 += base * h
        s2 += base * h * h
    return s1 * s1 - s0 * s2


@dataclass(frozen=True)
class IdentitySliceReport:
    """Outcome of the symbolic identity check on one slope slice."""

    slopes: Vector
    alpha_dim: int
    beta_dim: int
    expanded_monomials: int
    node_difference_product: Fraction
    residue: sympoly.Poly

    @property
    def is_zero(self) -> bool:
        return sympoly.is_zero(self.residue)


def verify_identity_slice(
    slopes: Sequence[Fraction | int], perturb: bool = False
) -> IdentitySliceReport:
    """Symbolic proof that the tangency defect vanishes on a slope slice.

    For seven fixed distinct slopes, every weight vector solving the
    degree-4 moment system and every lift vector solving the weighted
    degree-3 moment system is parametrized by five free coordinates.  The
    defect, cleared of weight denominators, becomes one polynomial in those
    five variables; this expands it exactly and reports whether it is
    identically zero.  ``perturb`` adds 1 to the defect before clearing
    denominators, a control that must make the check fail.
    """
    hs = tuple(Fraction(h) for h in slopes)
    if len(hs) != 7:
        raise StructuralError(f"expected 7 slopes, got {len(hs)}")
    alpha_basis = vandermonde_nullspace(VandermondeSystem(hs, 4))
    beta_basis = vandermonde_nullspace(VandermondeSystem(hs, 3))
    nvars = len(alpha_basis) + len(beta_basis)

    alphas = []
    betas = []
    for i in range(7):
        alphas.append(
            sympoly.linear_combination(
                nvars,
                [vec[i] for vec in alpha_basis],
                [sympoly.variable(nvars, j) for j in range(len(alpha_basis))],
            )
        )
        betas.append(
            sympoly.linear_combination(
                nvars,
                [vec[i] for vec in beta_basis],
                [sympoly.variable(nvars, len(alpha_basis) + j) for j in range(len(beta_basis))],
            )
        )

    # products of all weight polynomials except one, via prefix/suffix arrays
    one = sympoly.const(nvars, 1)
    prefix = [one]
    for a in alphas:
        prefix.append(sympoly.mul(prefix[-1], a))
    suffix = [one]
    for a in reversed(alphas):
        suffix.append(sympoly.mul(suffix[-1], a))
    cleared = [sympoly.mul(prefix[i], suffix[6 - i]) for i in range(7)]

    sums = []
    for p in range(3):
        acc: sympoly.Poly = {}
        for i in range(7):
            term = sympoly.mul(sympoly.mul(betas[i], betas[i]), cleared[i])
            acc = sympoly.add(acc, sympoly.scale(term, hs[i] ** p))
        sums.append(acc)

    minuend = sympoly.mul(sums[1], sums[1])
    subtrahend = sympoly.mul(sums[0], sums[2])
    residue = sympoly.sub(minuend, subtrahend)
    if perturb:
        residue = sympoly.add(residue, sympoly.mul(prefix[7], prefix[7]))

    product = Fraction(1)
    for i in range(7):
        for j in range(i + 1, 7):
            product *= hs[i] - hs[j]

    return IdentitySliceReport(
        slopes=hs,
        alpha_dim=len(alpha_basis),
        beta_dim=len(beta_basis),
        expanded_monomials=len(minuend) + len(subtrahend),
        node_difference_product=product,
        residue=residue,
    )


@dataclass(frozen=True)
class SixTermVanishingReport:
    """Outcome of the six-term collapse check for distinct slopes."""

    slopes: Vector
    annihilator: Vector
    lift_basis: tuple[Vector, ...]
    all_weights_nonzero: bool
    family_is_translations: bool
    quartic_vanishes: bool

    @property
    def passed(self) -> bool:
        return self.all_weights_nonzero and self.family_is_translations and self.quartic_vanishes


def six_term_vanishing_check(slopes: Sequence[Fraction | int]) -> SixTermVanishingReport:
    """With six distinct slopes, every double-line value degenerates to zero.

    The weight vector solving the degree-4 moment system is unique up to
    scale; the admissible lifts form the two-parameter translation family
    span{(1,...,1), slopes}, and the resulting quartic vanishes identically
    as a polynomial in the two translation parameters.
    """
    hs = tuple(Fraction(h) for h in slopes)
    if len(hs) != 6:
        raise StructuralError(f"expected 6 slopes, got {len(hs)}")
    alpha_vectors = vandermonde_nullspace(VandermondeSystem(hs, 4))
    if len(alpha_vectors) != 1:
        raise TheoremViolationError("degree-4 annihilator is not one-dimensional")
    alpha = alpha_vectors[0]
    all_nonzero = all(a != 0 for a in alpha)

    kernel = weighted_moment_kernel(hs, alpha, 3)
    lift_basis = kernel.basis
    span_expected = RationalMatrix.from_rows([[Fraction(1)] * 6, list(hs)])
    span_found = RationalMatrix.from_rows([list(v) for v in lift_basis])
    family_matches = rref(span_found)[0] == rref(span_expected)[0]

    # symbolic quartic in (x0, x1, x2, t0, t1) with lifts t0 + t1*slope
    x0, x1, x2, t0, t1 = (sympoly.variable(5, i) for i in range(5))
    quartic: sympoly.Poly = {}
    for h, a in zip(hs, alpha):
        lift = sympoly.add(t0, sympoly.scale(t1, h))
        line = sympoly.add(
            sympoly.add(x0, sympoly.scale(x1, h)), sympoly.mul(lift, x2)
        )
        quartic = sympoly.add(quartic, sympoly.scale(sympoly.power(line, 4), a))

    return SixTermVanishingReport(
        slopes=hs,
        annihilator=alpha,
        lift_basis=lift_basis,
        all_weights_nonzero=all_nonzero,
        family_is_translations=family_matches,
        quartic_vanishes=sympoly.is_zero(quartic),
    )


@dataclass(frozen=True)
class TwoValueReport:
    """Slope multiset structure of a six-term double-line instance."""

    applicable: bool
    slope_counts: tuple[tuple[Fraction, int], ...]
    conic_rank: int
    tangent: bool | None

    @property
    def passed(self) -> bool:
        return True  # violations raise instead of reporting


def two_value_collapse_check(inst: CoordinateInstance) -> TwoValueReport:
    """For a nondegenerate non-tangent six-term value, slopes form two triples.

    Applicable when the cofactor conic has rank 3 and is not tangent to the
    coordinate line; in that case the slope multiset must be two values with
    multiplicity three each and all weights nonzero.  A violation raises
    TheoremViolationError (it cannot occur for genuine double-line values).
    """
    if inst.n != 6:
        raise PreconditionError(f"expected a 6-term instance, got {inst.n}")
    value = inst.to_decomposition().value()
    try:
        cofactor = extract_cofactor(value, line_x2())
    except NotDoubleLineError as exc:
        raise PreconditionError("value is not of double-line shape") from exc
    rank = conic_rank(cofactor)
    tangent: bool | None
    if cofactor.is_zero():
        tangent = None
    else:
        tangent = line_tangent_to_conic(line_x2(), cofactor)[0]
    applicable = rank == 3 and tangent is False
    counts = tuple(sorted(Counter(inst.slopes).items()))
    if applicable:
        if len(counts) != 2 or any(c != 3 for _, c in counts):
            raise TheoremViolationError("slopes do not collapse to two triples")
        if any(w == 0 for w in inst.weights):
            raise TheoremViolationError("a weight vanishes on a nondegenerate instance")
    return TwoValueReport(
        applicable=applicable, slope_counts=counts, conic_rank=rank, tangent=tangent
    )


def generate_six_term_family(
    slope_pair: tuple[Fraction | int, Fraction | int], seed: int
) -> CoordinateInstance:
    """Six-term instance with slope triples on the two given values.

    Within each triple the lifts are (0, c, -c) and the weights
    (2*s, -s, -s), which forces the value to be a double line times a
    nondegenerate conic.  Seed 0 is the canonical member with c = s = 1.
    """
    ha, hb = Fraction(slope_pair[0]), Fraction(slope_pair[1])
    if ha == hb:
        raise InvalidInputError("slope pair must be distinct")
    if seed == 0:
        scales = (Fraction(1), Fraction(1))
        spreads = (Fraction(1), Fraction(1))
    else:
        rng = random.Random(f"six-term:{seed}")
        scales = (Fraction(rng.randint(1, 9)), Fraction(rng.randint(1, 9)))
        spreads = tuple(
            Fraction(rng.choice([x for x in range(-9, 10) if x != 0])) for _ in range(2)
        )
    slopes = (ha, ha, ha, hb, hb, hb)
    lifts = (Fraction(0), spreads[0], -spreads[0], Fraction(0), spreads[1], -spreads[1])
    weights = (
        2 * scales[0], -scales[0], -scales[0],
        2 * scales[1], -scales[1], -scales[1],
    )
    inst = CoordinateInstance(slopes, lifts, weights)
    cofactor = extract_cofactor(inst.to_decomposition().value(), line_x2())
    if conic_rank(cofactor) != 3:
        raise TheoremViolationError("generated six-term conic is degenerate")
    return inst


@dataclass(frozen=True)
class TangentInstance:
    """A generated seven-term instance with its double-line value."""

    instance: CoordinateInstance
    quartic: DoubleLineQuartic
    weight_retries: int


def generate_tangent_instance(
    slopes: Sequence[Fraction | int],
    lift_params: Sequence[Fraction | int],
    seed: int,
    max_retries: int = 64,
) -> TangentInstance:
    """Seven-term double-line instance from the moment systems.

    Weights are a seeded integer combination of the degree-4 annihilator
    basis, resampled (bounded) until no entry vanishes; lifts are the given
    three coordinates in the degree-3 annihilator basis divided entrywise by
    the weights.  The value is then line^2 * conic by construction; the
    conic may be zero for special parameters and is returned as-is.
    """
    hs = tuple(Fraction(h) for h in slopes)
    if len(hs) != 7:
        raise StructuralError(f"expected 7 slopes, got {len(hs)}")
    params = tuple(Fraction(p) for p in lift_params)
    if len(params) != 3:
        raise StructuralError("expected 3 lift parameters")
    alpha_basis = vandermonde_nullspace(VandermondeSystem(hs, 4))
    rng = random.Random(f"tangent-instance:{seed}")
    retries = 0
    weights: Vector | None = None
    for _ in range(max_retries):
        s, t = rng.randint(-9, 9), rng.randint(-9, 9)
        if (s, t) == (0, 0):
            retries += 1
            continue
        candidate = tuple(s * u + t * v for u, v in zip(alpha_basis[0], alpha_basis[1]))
        if all(c != 0 for c in candidate):
            weights = candidate
            break
        retries += 1
    if weights is None:
        raise GenerationFailureError("could not sample weights with all entries nonzero")

    beta_basis = vandermonde_nullspace(VandermondeSystem(hs, 3))
    beta = tuple(
        sum((p * vec[i] for p, vec in zip(params, beta_basis)), Fraction(0))
        for i in range(7)
    )
    lifts = tuple(b / w for b, w in zip(beta, weights))
    inst = CoordinateInstance(hs, lifts, weights)
    value = inst.to_decomposition().value()
    cofactor = extract_cofactor(value, line_x2())
    quartic = DoubleLineQuartic(line=line_x2(), cofactor=cofactor, target=value)
    return TangentInstance(instance=inst, quartic=quartic, weight_retries=retries)


@dataclass(frozen=True)
class AnalysisReport:
    """Full exact analysis of a decomposition against a line."""

    summary: str
    divisible: bool
    remainder: HomogeneousForm | None
    cofactor: HomogeneousForm | None
    conic_rank: int | None
    tangent: bool | None
    tangency_point: tuple[Fraction, Fraction] | None
    certificate: TangencyCertificate | None


def analyze(dec: WaringDecomposition, line: HomogeneousForm) -> AnalysisReport:
    """Divisibility, conic rank, tangency, and (when available) a certificate.

    The certificate is attached for seven-term values with nonzero cofactor
    whose lines meet the base line in distinct points; its contact point is
    cross-checked against the independent discriminant test.
    """
    if line.degree != 1 or line.is_zero():
        raise InvalidInputError("line must be a nonzero linear form")
    kind = "pure" if dec.is_pure else "weighted"
    summary = f"{dec.n} {kind} fourth-power terms"
    value = dec.value()
    try:
        cofactor = extract_cofactor(value, line)
    except NotDoubleLineError as exc:
        return AnalysisReport(
            summary=summary,
            divisible=False,
            remainder=exc.remainder,
            cofactor=None,
            conic_rank=None,
            tangent=None,
            tangency_point=None,
            certificate=None,
        )
    rank = conic_rank(cofactor)
    tangent: bool | None = None
    point = None
    if not cofactor.is_zero():
        tangent, point = line_tangent_to_conic(line, cofactor)
    certificate = None
    if dec.n == 7 and not cofactor.is_zero():
        restricted = _restricted_tuple(dec, line)
        try:
            _require_distinct_restrictions(restricted)
        except PreconditionError:
            pass
        else:
            certificate = tangency_certificate(dec, line)
            if tangent is not True:
                raise TheoremViolationError("certificate exists but discriminant test disagrees")
            if point is not None and certificate.tangency_point != point:
                raise TheoremViolationError("certificate contact point disagrees with kernel point")
    return AnalysisReport(
        summary=summary,
        divisible=True,
        remainder=None,
        cofactor=cofactor,
        conic_rank=rank,
        tangent=tangent,
        tangency_point=point if point is not None else (
            certificate.tangency_point if certificate else None
        ),
        certificate=certificate,
    )
