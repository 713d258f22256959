"""Exact homogeneous polynomial arithmetic in two or three variables.

Forms are sparse maps from exponent tuples to Fractions; zero coefficients
are never stored, so two forms are equal exactly when their term maps (and
declared shape) agree.  All monomial indexing, matrix layouts and text
rendering use graded lexicographic order with x0 > x1 > x2.

The same data structure carries both polynomial functions on the underlying
space and elements of its symmetric powers (used as arguments of the
contraction pairing below); which role an object plays is determined by how
it is used.

Contraction convention
----------------------
The pairing between degree-d forms and degree-d symmetric tensors is scaled
so that a power of a linear form pairs by evaluation::

    pair(l**d, t) == evaluate(t, coefficients of l)

Concretely ``pair(f, t) = sum_m f[m] * t[m] / multinomial(d, m)``.  Under
this scaling a partial contraction of ``l**D`` has rank one with image
spanned by the coefficient vector of ``l**(D - delta)``, and the full
polarization of f evaluated on the diagonal reproduces f itself.  These are
the normalizations under which the tangency formulas in the engine hold with
their stated constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import factorial
from typing import Iterator, Mapping, Sequence

from .errors import InvalidInputError, StructuralError
from .linalg import RationalMatrix, normalize_vector, rref

Monomial = tuple[int, ...]
Point = Sequence[Fraction | int]


def monomials_of_degree(num_vars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of the given total degree, graded-lex descending."""
    if num_vars == 1:
        return [(degree,)]
    out: list[Monomial] = []
    for e in range(degree, -1, -1):
        out.extend((e, *rest) for rest in monomials_of_degree(num_vars - 1, degree - e))
    return out


def multinomial(degree: int, exponents: Monomial) -> int:
    den = 1
    for e in exponents:
        den *= factorial(e)
    return factorial(degree) // den


class HomogeneousForm:
    """Homogeneous polynomial with exact rational coefficients.

    Instances are immutable values; every operation returns a new form.
    """

    __slots__ = ("num_vars", "degree", "terms")

    def __init__(self, num_vars: int, degree: int, terms: Mapping[Monomial, Fraction | int]):
        if num_vars not in (2, 3):
            raise StructuralError(f"num_vars must be 2 or 3, got {num_vars}")
        if degree < 0:
            raise StructuralError(f"degree must be non-negative, got {degree}")
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            mono = tuple(mono)
            if len(mono) != num_vars or any(e < 0 for e in mono):
                raise StructuralError(f"bad monomial {mono} for {num_vars} variables")
            if sum(mono) != degree:
                raise StructuralError(f"monomial {mono} does not have degree {degree}")
            c = Fraction(coeff)
            if c:
                clean[mono] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousForm is immutable")

    # construction helpers

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "HomogeneousForm":
        return cls(num_vars, degree, {})

    @classmethod
    def constant(cls, num_vars: int, value: Fraction | int) -> "HomogeneousForm":
        return cls(num_vars, 0, {(0,) * num_vars: Fraction(value)})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "HomogeneousForm":
        if not 0 <= index < num_vars:
            raise StructuralError(f"variable index {index} out of range")
        mono = tuple(int(i == index) for i in range(num_vars))
        return cls(num_vars, 1, {mono: Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Point) -> "HomogeneousForm":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            mono = tuple(int(j == i) for j in range(n))
            terms[mono] = Fraction(c)
        return cls(n, 1, terms)

    # basic accessors

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def linear_coefficients(self) -> tuple[Fraction, ...]:
        if self.degree != 1:
            raise StructuralError("linear_coefficients requires a degree-1 form")
        return tuple(
            self.coefficient(tuple(int(j == i) for j in range(self.num_vars)))
            for i in range(self.num_vars)
        )

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    # arithmetic

    def _check_compatible(self, other: "HomogeneousForm", same_degree: bool) -> None:
        if self.num_vars != other.num_vars:
            raise StructuralError("variable counts differ")
        if same_degree and self.degree != other.degree:
            raise StructuralError("degrees differ")

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check_compatible(other, same_degree=True)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return HomogeneousForm(self.num_vars, self.degree, terms)

    def __neg__(self) -> "HomogeneousForm":
        return HomogeneousForm(self.num_vars, self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + (-other)

    def __mul__(self, other: "HomogeneousForm | Fraction | int") -> "HomogeneousForm":
        if isinstance(other, (Fraction, int)):
            c = Fraction(other)
            return HomogeneousForm(
                self.num_vars, self.degree, {m: c * v for m, v in self.terms.items()}
            )
        self._check_compatible(other, same_degree=False)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc = terms.get(mono, Fraction(0)) + c1 * c2
                if acc:
                    terms[mono] = acc
                else:
                    terms.pop(mono, None)
        return HomogeneousForm(self.num_vars, self.degree + other.degree, terms)

    def __rmul__(self, other: "Fraction | int") -> "HomogeneousForm":
        return self * other

    def __pow__(self, exponent: int) -> "HomogeneousForm":
        if exponent < 0:
            raise StructuralError("negative power of a form")
        if self.degree == 1:
            # multinomial expansion; exact and independent of repeated mul
            coeffs = self.linear_coefficients()
            terms: dict[Monomial, Fraction] = {}
            for mono in monomials_of_degree(self.num_vars, exponent):
                c = Fraction(multinomial(exponent, mono))
                for base, e in zip(coeffs, mono):
                    c *= base**e
                if c:
                    terms[mono] = c
            return HomogeneousForm(self.num_vars, exponent, terms)
        result = HomogeneousForm.constant(self.num_vars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, point: Point) -> Fraction:
        if len(point) != self.num_vars:
            raise StructuralError("point length does not match variable count")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for base, e in zip(pt, mono):
                v *= base**e
            total += v
        return total

    def substitute(self, images: Sequence["HomogeneousForm"]) -> "HomogeneousForm":
        """Compose with one form per variable (all images of equal shape)."""
        if len(images) != self.num_vars:
            raise StructuralError("one image per variable required")
        m = images[0].num_vars
        k = images[0].degree
        for img in images:
            if img.num_vars != m or img.degree != k:
                raise StructuralError("images must share variable count and degree")
        result = HomogeneousForm.zero(m, self.degree * k)
        powers: list[list[HomogeneousForm]] = [[HomogeneousForm.constant(m, 1)] for _ in images]
        for mono, c in self.terms.items():
            part = HomogeneousForm.constant(m, c)
            for i, e in enumerate(mono):
                while len(powers[i]) <= e:
                    powers[i].append(powers[i][-1] * images[i])
                part = part * powers[i][e]
            result = result + part
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.num_vars, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"HomogeneousForm({self.num_vars}, {self.degree}, {self.terms!r})"

    def __str__(self) -> str:
        return render_form(self)


@dataclass(frozen=True)
class FormTuple:
    """Tuple of forms of one shared shape, with entrywise and dot products.

    Scalar tuples are represented as tuples of degree-0 forms, so ordinary
    vectors participate in the same calculus.
    """

    entries: tuple[HomogeneousForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise StructuralError("empty form tuple")
        n, d = self.entries[0].num_vars, self.entries[0].degree
        for f in self.entries:
            if f.num_vars != n or f.degree != d:
                raise StructuralError("tuple entries must share variable count and degree")

    @classmethod
    def scalars(cls, values: Point, num_vars: int) -> "FormTuple":
        return cls(tuple(HomogeneousForm.constant(num_vars, v) for v in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[HomogeneousForm]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> HomogeneousForm:
        return self.entries[i]

    @property
    def num_vars(self) -> int:
        return self.entries[0].num_vars

    @property
    def degree(self) -> int:
        return self.entries[0].degree

    def hadamard(self, other: "FormTuple") -> "FormTuple":
        if len(self) != len(other):
            raise StructuralError("tuple lengths differ")
        return FormTuple(tuple(f * g for f, g in zip(self.entries, other.entries)))

    __mul__ = hadamard

    def dot(self, other: "FormTuple") -> HomogeneousForm:
        if len(self) != len(other):
            raise StructuralError("tuple lengths differ")
        return reduce(
            lambda a, b: a + b, (f * g for f, g in zip(self.entries, other.entries))
        )

    def power(self, d: int) -> "FormTuple":
        return FormTuple(tuple(f**d for f in self.entries))

    def values_at(self, point: Point) -> tuple[Fraction, ...]:
        return tuple(f.evaluate(point) for f in self.entries)


def hadamard(f: FormTuple, g: FormTuple) -> FormTuple:
    return f.hadamard(g)


def dot(f: FormTuple, g: FormTuple) -> HomogeneousForm:
    return f.dot(g)


# text rendering and parsing


def _render_monomial(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def render_form(f: HomogeneousForm) -> str:
    """Terms in graded-lex order; coefficients as p or p/q."""
    items = f.sorted_terms()
    if not items:
        return "0"
    pieces = []
    for idx, (mono, coeff) in enumerate(items):
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        mono_str = _render_monomial(mono)
        if not mono_str:
            body = str(mag)
        elif mag == 1:
            body = mono_str
        else:
            body = f"{mag}*{mono_str}"
        if idx == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_TERM_RE = re.compile(
    r"^(?:(?P<coeff>\d+(?:/\d+)?)(?:\*(?P<tail>.*))?|(?P<mono>x\d+.*))$"
)
_FACTOR_RE = re.compile(r"^x(?P<idx>\d+)(?:\^(?P<exp>\d+))?$")


def parse_form(text: str, num_vars: int, degree: int | None = None) -> HomogeneousForm:
    """Parse the rendering grammar (arbitrary whitespace allowed)."""
    compact = "".join(text.split())
    if not compact:
        raise InvalidInputError("empty form text")
    if compact == "0":
        if degree is None:
            raise InvalidInputError("degree required to parse the zero form")
        return HomogeneousForm.zero(num_vars, degree)
    chunks = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(chunks) != compact:
        raise InvalidInputError(f"cannot tokenize {text!r}")
    terms: dict[Monomial, Fraction] = {}
    seen_degree = degree
    for chunk in chunks:
        sign = Fraction(1)
        if chunk[0] in "+-":
            if chunk[0] == "-":
                sign = Fraction(-1)
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m:
            raise InvalidInputError(f"bad term {chunk!r}")
        coeff = Fraction(1)
        factors = ""
        if m.group("coeff") is not None:
            coeff = Fraction(m.group("coeff"))
            factors = m.group("tail") or ""
        else:
            factors = m.group("mono")
        mono = [0] * num_vars
        if factors:
            for factor in factors.split("*"):
                fm = _FACTOR_RE.match(factor)
                if not fm:
                    raise InvalidInputError(f"bad factor {factor!r}")
                idx = int(fm.group("idx"))
                if idx >= num_vars:
                    raise InvalidInputError(f"variable x{idx} out of range")
                mono[idx] += int(fm.group("exp") or 1)
        total = sum(mono)
        if seen_degree is None:
            seen_degree = total
        elif total != seen_degree:
            raise InvalidInputError("terms of unequal degree")
        key = tuple(mono)
        terms[key] = terms.get(key, Fraction(0)) + sign * coeff
    return HomogeneousForm(num_vars, seen_degree, terms)


def content_normalize(f: HomogeneousForm) -> tuple[Fraction, HomogeneousForm]:
    """Write f as factor * primitive with integer content-1 primitive part.

    The factor carries the sign of the graded-lex leading coefficient, so the
    primitive part has positive leading coefficient.
    """
    if f.is_zero():
        return Fraction(1), f
    items = f.sorted_terms()
    vec = normalize_vector([c for _, c in items])
    factor = items[0][1] / vec[0]
    primitive = HomogeneousForm(
        f.num_vars, f.degree, {m: c for (m, _), c in zip(items, vec)}
    )
    return factor, primitive


# division by a linear form


def divide_by_linear(f: HomogeneousForm, line: HomogeneousForm) -> tuple[HomogeneousForm, HomogeneousForm]:
    """Exact division f = line * quotient + remainder.

    The remainder is free of the leading variable of ``line`` (graded-lex),
    so it vanishes exactly when ``line`` divides f.
    """
    if line.degree != 1 or line.num_vars != f.num_vars:
        raise StructuralError("divisor must be a linear form in the same variables")
    if line.is_zero():
        raise InvalidInputError("division by the zero form")
    if f.degree < 1:
        raise StructuralError("dividend degree must be at least 1")
    coeffs = line.linear_coefficients()
    pivot = next(i for i, c in enumerate(coeffs) if c != 0)
    cp = coeffs[pivot]
    work = dict(f.terms)
    quot: dict[Monomial, Fraction] = {}
    rem: dict[Monomial, Fraction] = {}
    while work:
        mono = max(work)
        c = work.pop(mono)
        if mono[pivot] == 0:
            rem[mono] = c
            continue
        base = tuple(e - int(i == pivot) for i, e in enumerate(mono))
        factor = c / cp
        quot[base] = quot.get(base, Fraction(0)) + factor
        for i, ci in enumerate(coeffs):
            if ci == 0 or i == pivot:
                continue
            m2 = tuple(e + int(j == i) for j, e in enumerate(base))
            acc = work.get(m2, Fraction(0)) - factor * ci
            if acc:
                work[m2] = acc
            else:
                work.pop(m2, None)
    return (
        HomogeneousForm(f.num_vars, f.degree - 1, quot),
        HomogeneousForm(f.num_vars, f.degree, rem),
    )


# restriction to the kernel of a line


def line_kernel_basis(line: HomogeneousForm) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Deterministic basis of the plane where ``line`` vanishes.

    With j the largest index carrying a nonzero coefficient, the basis
    vectors are the remaining coordinate vectors corrected by -(c_i/c_j) e_j.
    For line = x2 this is (e0, e1), so restriction is substitution x2 := 0.
    """
    if line.degree != 1 or line.num_vars != 3:
        raise StructuralError("expected a linear form in three variables")
    coeffs = line.linear_coefficients()
    if all(c == 0 for c in coeffs):
        raise InvalidInputError("zero line has no kernel plane")
    j = max(i for i, c in enumerate(coeffs) if c != 0)
    others = [i for i in range(3) if i != j]
    basis = []
    for i in others:
        vec = [Fraction(0)] * 3
        vec[i] = Fraction(1)
        vec[j] = -coeffs[i] / coeffs[j]
        basis.append(tuple(vec))
    return basis[0], basis[1]


def restrict(f: HomogeneousForm, line: HomogeneousForm) -> HomogeneousForm:
    """Restriction of a three-variable form to the plane ``line = 0``."""
    b0, b1 = line_kernel_basis(line)
    images = [
        HomogeneousForm.linear((b0[i], b1[i]))
        for i in range(3)
    ]
    return f.substitute(images)


def embed_in_plane(line: HomogeneousForm, point: Point) -> tuple[Fraction, ...]:
    """Lift a point given in kernel-plane coordinates back to 3-space."""
    b0, b1 = line_kernel_basis(line)
    t0, t1 = (Fraction(x) for x in point)
    return tuple(t0 * a + t1 * b for a, b in zip(b0, b1))


# contraction pairing and partial polarization matrices


def pair(f: HomogeneousForm, tensor: HomogeneousForm) -> Fraction:
    """Contraction of a degree-d form with a degree-d symmetric tensor."""
    if f.num_vars != tensor.num_vars or f.degree != tensor.degree:
        raise StructuralError("pairing requires equal shapes")
    total = Fraction(0)
    for mono, c in f.terms.items():
        t = tensor.terms.get(mono)
        if t is not None:
            total += c * t / multinomial(f.degree, mono)
    return total


def polar_value(f: HomogeneousForm, vectors: Sequence[Point]) -> Fraction:
    """Full polarization of f evaluated at degree-many vectors.

    On the diagonal (all vectors equal to v) this returns f(v) exactly.
    """
    if len(vectors) != f.degree:
        raise StructuralError("need exactly degree-many vectors")
    product = HomogeneousForm.constant(f.num_vars, 1)
    for v in vectors:
        product = product * HomogeneousForm.linear(tuple(Fraction(x) for x in v))
    return pair(f, product)


@dataclass(frozen=True)
class PolarizationMatrix:
    """Matrix of a partial contraction in graded-lex monomial bases.

    Rows are indexed by target-degree monomials, columns by source-degree
    monomials.  Applied to a symmetric tensor of the source degree it yields
    a form of the target degree.
    """

    source_degree: int
    target_degree: int
    row_monomials: tuple[Monomial, ...]
    col_monomials: tuple[Monomial, ...]
    matrix: RationalMatrix

    def rank(self) -> int:
        return rref(self.matrix)[1]

    def apply(self, tensor: HomogeneousForm) -> HomogeneousForm:
        if tensor.degree != self.source_degree:
            raise StructuralError("tensor degree does not match source degree")
        coords = [tensor.terms.get(m, Fraction(0)) for m in self.col_monomials]
        image = self.matrix.matvec(coords)
        n = len(self.row_monomials[0]) if self.row_monomials else tensor.num_vars
        return HomogeneousForm(
            n, self.target_degree,
            {m: v for m, v in zip(self.row_monomials, image)},
        )


def polarization_matrix(f: HomogeneousForm, delta: int) -> PolarizationMatrix:
    """Partial contraction of f taking degree-delta tensors to forms.

    Entry at (row s, column u) is multinomial(d-delta, s) / multinomial(d, u+s)
    times the coefficient of f at u+s; this is the unique scaling for which a
    power of a linear form contracts to evaluation times the lower power.
    """
    if not 0 <= delta <= f.degree:
        raise StructuralError(f"delta {delta} out of range for degree {f.degree}")
    d = f.degree
    rows = tuple(monomials_of_degree(f.num_vars, d - delta))
    cols = tuple(monomials_of_degree(f.num_vars, delta))
    entries: list[Fraction] = []
    for s in rows:
        ws = Fraction(multinomial(d - delta, s))
        for u in cols:
            total = tuple(a + b for a, b in zip(s, u))
            c = f.terms.get(total)
            if c is None:
                entries.append(Fraction(0))
            else:
                entries.append(ws * c / multinomial(d, total))
    return PolarizationMatrix(
        source_degree=delta,
        target_degree=d - delta,
        row_monomials=rows,
        col_monomials=cols,
        matrix=RationalMatrix(len(rows), len(cols), entries),
    )


# conics and tangency


def conic_rank(q: HomogeneousForm) -> int:
    """Rank of the symmetric matrix of a three-variable quadratic."""
    if q.num_vars != 3 or q.degree != 2:
        raise StructuralError("expected a quadratic form in three variables")
    return polarization_matrix(q, 1).rank()


@dataclass(frozen=True)
class BinaryQuadratic:
    """Quadratic a*y0^2 + b*y0*y1 + c*y1^2 on the kernel plane of a line."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))

    @classmethod
    def from_form(cls, q: HomogeneousForm) -> "BinaryQuadratic":
        if q.num_vars != 2 or q.degree != 2:
            raise StructuralError("expected a binary quadratic form")
        return cls(q.coefficient((2, 0)), q.coefficient((1, 1)), q.coefficient((0, 2)))

    def to_form(self) -> HomogeneousForm:
        return HomogeneousForm(2, 2, {(2, 0): self.a, (1, 1): self.b, (0, 2): self.c})

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def discriminant(self) -> Fraction:
        return self.b * self.b - 4 * self.a * self.c

    def polar(self, w: Point, u: Point) -> Fraction:
        w0, w1 = (Fraction(x) for x in w)
        u0, u1 = (Fraction(x) for x in u)
        return self.a * w0 * u0 + self.b / 2 * (w0 * u1 + w1 * u0) + self.c * u1 * w1

    def polar_kernel_point(self) -> tuple[Fraction, Fraction] | None:
        """Projective kernel of the polarization, for a nonzero square quadratic."""
        if self.is_zero() or self.discriminant() != 0:
            return None
        if self.a != 0:
            w = (self.b, -2 * self.a)
        else:
            # discriminant 0 with a = 0 forces b = 0, leaving c*y1^2
            w = (Fraction(1), Fraction(0))
        return normalize_vector(w)  # type: ignore[return-value]


def line_tangent_to_conic(
    line: HomogeneousForm, q: HomogeneousForm
) -> tuple[bool, tuple[Fraction, Fraction] | None]:
    """Tangency (possibly improper) of a line and a conic, with contact point.

    The flag is true exactly when the restriction of q to the line's kernel
    plane has vanishing discriminant; this covers degenerate conics and the
    case where the line divides q (restriction identically zero, no single
    contact point).  The point is given in kernel-plane coordinates.
    """
    if q.num_vars != 3 or q.degree != 2:
        raise StructuralError("expected a quadratic form in three variables")
    if line.is_zero():
        raise InvalidInputError("line must be nonzero")
    if q.is_zero():
        raise InvalidInputError("conic must be nonzero")
    restricted = BinaryQuadratic.from_form(restrict(q, line))
    if restricted.is_zero():
        return True, None
    if restricted.discriminant() != 0:
        return False, None
    return True, restricted.polar_kernel_point()
