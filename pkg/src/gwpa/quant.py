"""Filtered quantizations and the graded correspondence check.

A generalized Weyl algebra over the polynomial base ring is assembled from
commuting affine substitutions s_1..s_n and central parameters a_1..a_n.
Multiplication twists coefficients past the generators, X_i d = s_i(d) X_i,
and opposite generators contract through shifted parameters.  Variable
weights induce a filtration once every substitution moves each variable by
terms of strictly smaller weight; the associated graded object is then a
Poisson algebra of the kind built in :mod:`gwpa.engine`, with bracket read
off from the leading discrepancy of the substitutions.  The correspondence
check compares graded commutators against that predicted bracket on supplied
element pairs.
"""

from __future__ import annotations

from fractions import Fraction

from .engine import (
    GWPAData,
    GWPAElement,
    render_element,
    _degree_sort_key,
)
from .errors import AlgebraMismatchError, AmbientMismatchError, GwpaError
from .linalg import rref
from .poisson import BaseDerivation, BasePoissonAlgebra
from .poly import NEG_INF, Polynomial, PolyRing, normalize_coeff


class AffineSubstitution:
    """A ring endomorphism sending each variable to an affine polynomial."""

    __slots__ = ("ring", "images")

    def __init__(self, ring: PolyRing, images):
        images = tuple(images)
        if len(images) != ring.nvars:
            raise GwpaError(
                "expected %d images, got %d" % (ring.nvars, len(images))
            )
        for name, image in zip(ring.variables, images):
            if image.ring != ring:
                raise AmbientMismatchError(ring.variables, image.ring.variables)
            if image.total_degree > 1:
                raise GwpaError(
                    "image of %r is not affine: %s" % (name, image)
                )
        self.ring = ring
        self.images = images

    @classmethod
    def identity(cls, ring: PolyRing) -> "AffineSubstitution":
        return cls(ring, ring.gens())

    @classmethod
    def from_map(cls, ring: PolyRing, images: dict) -> "AffineSubstitution":
        """Build from a partial mapping; unnamed variables stay fixed."""
        full = []
        for name in ring.variables:
            image = images.get(name, ring.var(name))
            if not isinstance(image, Polynomial):
                image = ring.const(image)
            full.append(image)
        return cls(ring, full)

    def __call__(self, poly: Polynomial) -> Polynomial:
        if poly.ring != self.ring:
            raise AmbientMismatchError(self.ring.variables, poly.ring.variables)
        return poly.substitute(dict(zip(self.ring.variables, self.images)))

    def compose(self, other: "AffineSubstitution") -> "AffineSubstitution":
        """The substitution applying ``other`` first, then this one."""
        if other.ring != self.ring:
            raise AmbientMismatchError(self.ring.variables, other.ring.variables)
        return AffineSubstitution(self.ring, tuple(self(img) for img in other.images))

    def inverse(self) -> "AffineSubstitution":
        """The inverse substitution; requires an invertible linear part."""
        ring = self.ring
        n = ring.nvars
        zero_exps = tuple(0 for _ in range(n))
        matrix = []
        shifts = []
        for image in self.images:
            row = [Fraction(0)] * n
            shift = Fraction(0)
            for exps, coeff in image.items():
                if exps == zero_exps:
                    shift = Fraction(coeff)
                else:
                    row[exps.index(1)] = Fraction(coeff)
            matrix.append(row)
            shifts.append(shift)
        augmented = [
            row + [Fraction(1 if k == j else 0) for k in range(n)]
            for j, row in enumerate(matrix)
        ]
        reduced, pivots = rref(augmented)
        if pivots != list(range(n)):
            raise GwpaError("substitution is not invertible")
        inverse_rows = [row[n:] for row in reduced]
        images = []
        for j in range(n):
            poly = ring.zero()
            for k in range(n):
                coeff = inverse_rows[j][k]
                if coeff:
                    poly = poly + ring.var(ring.variables[k]) * coeff - ring.const(coeff * shifts[k])
            images.append(poly)
        result = AffineSubstitution(ring, images)
        if self.compose(result) != AffineSubstitution.identity(ring):
            raise GwpaError("inverse substitution failed its check")
        return result

    def __eq__(self, other):
        if not isinstance(other, AffineSubstitution):
            return NotImplemented
        return self.ring == other.ring and self.images == other.images

    def __hash__(self):
        return hash((self.ring, self.images))

    def __repr__(self):
        parts = ", ".join(
            "%s -> %s" % (name, image)
            for name, image in zip(self.ring.variables, self.images)
        )
        return "AffineSubstitution(%s)" % parts


class GWAData:
    """Defining data of a generalized Weyl algebra with a weight filtration.

    ``weights`` assigns a positive weight to each base variable, ``degrees``
    records the weighted degree of each parameter, and ``nu`` is the uniform
    filtration drop: every substitution must move each variable by terms of
    weighted degree at most weight minus ``nu``.
    """

    def __init__(self, ring: PolyRing, sigmas, a, weights, degrees, nu: int = 1):
        sigmas = tuple(sigmas)
        a = tuple(a)
        weights = tuple(int(w) for w in weights)
        degrees = tuple(int(d) for d in degrees)
        if not sigmas:
            raise GwpaError("rank must be at least one")
        if len(a) != len(sigmas) or len(degrees) != len(sigmas):
            raise GwpaError("substitutions, parameters and degrees must align")
        if len(weights) != ring.nvars:
            raise GwpaError("one weight per base variable is required")
        if any(w < 1 for w in weights):
            raise GwpaError("weights must be positive")
        if not isinstance(nu, int) or nu < 1:
            raise GwpaError("the filtration drop must be a positive integer")
        gens = ring.gens()
        for i, sigma in enumerate(sigmas):
            if sigma.ring != ring:
                raise AmbientMismatchError(ring.variables, sigma.ring.variables)
            for j, other in enumerate(sigmas[:i]):
                for g in gens:
                    if sigma(other(g)) != other(sigma(g)):
                        raise GwpaError(
                            "substitutions %d and %d do not commute"
                            % (j + 1, i + 1)
                        )
        for i, poly in enumerate(a):
            if poly.ring != ring:
                raise AmbientMismatchError(ring.variables, poly.ring.variables)
            if poly.weighted_degree(weights) != degrees[i]:
                raise GwpaError(
                    "parameter %d has weighted degree %s, expected %d"
                    % (i + 1, poly.weighted_degree(weights), degrees[i])
                )
            for k, sigma in enumerate(sigmas):
                if k != i and sigma(poly) != poly:
                    raise GwpaError(
                        "substitution %d must fix parameter %d" % (k + 1, i + 1)
                    )
        for i, sigma in enumerate(sigmas):
            for j, name in enumerate(ring.variables):
                drop = sigma(ring.var(name)) - ring.var(name)
                if drop.weighted_degree(weights) > weights[j] - nu:
                    raise GwpaError(
                        "substitution %d moves %s by weighted degree %s, "
                        "exceeding %d"
                        % (i + 1, name, drop.weighted_degree(weights), weights[j] - nu)
                    )
        self.ring = ring
        self.sigmas = sigmas
        self.a = a
        self.weights = weights
        self.degrees = degrees
        self.nu = nu
        self._powers: dict = {}
        self._inverses: dict = {}
        self._alpha_maps: dict = {}
        self._monomial_images: dict = {}
        self._sigma_a: dict = {}
        self._factors: dict = {}

    @property
    def rank(self) -> int:
        return len(self.sigmas)

    @property
    def base_ring(self) -> PolyRing:
        return self.ring

    @property
    def zero_alpha(self):
        return tuple(0 for _ in range(self.rank))

    def __eq__(self, other):
        if not isinstance(other, GWAData):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.sigmas == other.sigmas
            and self.a == other.a
            and self.weights == other.weights
            and self.degrees == other.degrees
            and self.nu == other.nu
        )

    def __hash__(self):
        return hash((self.ring, self.sigmas, self.a, self.weights, self.degrees, self.nu))

    # -- cached substitution machinery --------------------------------------

    def sigma_power(self, i: int, k: int) -> AffineSubstitution:
        key = (i, k)
        if key not in self._powers:
            if k == 0:
                value = AffineSubstitution.identity(self.ring)
            elif k > 0:
                value = self.sigma_power(i, k - 1).compose(self.sigmas[i])
            else:
                if i not in self._inverses:
                    self._inverses[i] = self.sigmas[i].inverse()
                value = self.sigma_power(i, k + 1).compose(self._inverses[i])
            self._powers[key] = value
        return self._powers[key]

    def sigma_alpha(self, alpha) -> AffineSubstitution:
        if alpha not in self._alpha_maps:
            value = AffineSubstitution.identity(self.ring)
            for i, k in enumerate(alpha):
                if k:
                    value = value.compose(self.sigma_power(i, k))
            self._alpha_maps[alpha] = value
        return self._alpha_maps[alpha]

    def apply_sigma_alpha(self, alpha, poly: Polynomial) -> Polynomial:
        if all(k == 0 for k in alpha) or poly.is_zero or poly.is_constant:
            return poly
        total = self.ring.zero()
        for exps, coeff in poly.items():
            key = (alpha, exps)
            image = self._monomial_images.get(key)
            if image is None:
                substitution = self.sigma_alpha(alpha)
                image = self.ring.one()
                for j, e in enumerate(exps):
                    if e:
                        image = image * substitution.images[j] ** e
                self._monomial_images[key] = image
            total = total + image * coeff
        return total

    def shifted_parameter(self, i: int, k: int) -> Polynomial:
        key = (i, k)
        if key not in self._sigma_a:
            self._sigma_a[key] = self.sigma_power(i, k)(self.a[i])
        return self._sigma_a[key]

    def contraction_factor(self, i: int, p: int, q: int) -> Polynomial:
        """The coefficient produced in coordinate i when v_p meets v_q."""
        if p == 0 or q == 0 or (p > 0) == (q > 0):
            return self.ring.one()
        key = (i, p, q)
        if key not in self._factors:
            value = self.ring.one()
            if p > 0:
                m = min(p, -q)
                for k in range(p - m + 1, p + 1):
                    value = value * self.shifted_parameter(i, k)
            else:
                s = -p
                m = min(s, q)
                for k in range(s - m, s):
                    value = value * self.shifted_parameter(i, -k)
            self._factors[key] = value
        return self._factors[key]

    # -- element constructors ------------------------------------------------

    def element(self, terms) -> "GWAElement":
        return GWAElement(self, terms)

    def zero(self) -> "GWAElement":
        return GWAElement(self, {})

    def one(self) -> "GWAElement":
        return self.scalar(self.ring.one())

    def scalar(self, poly) -> "GWAElement":
        if not isinstance(poly, Polynomial):
            poly = self.ring.const(poly)
        return GWAElement(self, {self.zero_alpha: poly})

    def v(self, alpha) -> "GWAElement":
        alpha = tuple(int(k) for k in alpha)
        if len(alpha) != self.rank:
            raise GwpaError("degree vector has length %d, expected %d" % (len(alpha), self.rank))
        return GWAElement(self, {alpha: self.ring.one()})

    def X(self, i: int) -> "GWAElement":
        return self.v(tuple(1 if j == i - 1 else 0 for j in range(self.rank)))

    def Y(self, i: int) -> "GWAElement":
        return self.v(tuple(-1 if j == i - 1 else 0 for j in range(self.rank)))

    def generators(self):
        gens = [self.scalar(self.ring.var(name)) for name in self.ring.variables]
        gens.extend(self.X(i) for i in range(1, self.rank + 1))
        gens.extend(self.Y(i) for i in range(1, self.rank + 1))
        return gens

    def term_degree(self, alpha, poly: Polynomial):
        if poly.is_zero:
            return NEG_INF
        weight = sum(d * abs(k) for d, k in zip(self.degrees, alpha))
        return poly.weighted_degree(self.weights) + Fraction(weight, 2)


def _gwa_mul_raw(A: GWAData, left: dict, right: dict) -> dict:
    out: dict = {}
    for alpha, d in left.items():
        for beta, e in right.items():
            coeff = d * A.apply_sigma_alpha(alpha, e)
            if coeff.is_zero:
                continue
            for i in range(A.rank):
                p, q = alpha[i], beta[i]
                if p and q and (p > 0) != (q > 0):
                    coeff = coeff * A.contraction_factor(i, p, q)
            gamma = tuple(p + q for p, q in zip(alpha, beta))
            existing = out.get(gamma)
            coeff = coeff if existing is None else existing + coeff
            if coeff.is_zero:
                out.pop(gamma, None)
            else:
                out[gamma] = coeff
    return out


class GWAElement:
    """An element with polynomial coefficients written to the left of v."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: GWAData, terms):
        cleaned = {}
        for alpha, poly in dict(terms).items():
            alpha = tuple(int(k) for k in alpha)
            if len(alpha) != algebra.rank:
                raise GwpaError(
                    "degree vector has length %d, expected %d"
                    % (len(alpha), algebra.rank)
                )
            if not isinstance(poly, Polynomial):
                poly = algebra.ring.const(poly)
            if poly.ring != algebra.ring:
                raise AmbientMismatchError(
                    algebra.ring.variables, poly.ring.variables
                )
            if not poly.is_zero:
                cleaned[alpha] = poly
        self.algebra = algebra
        self._terms = cleaned

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self):
        return sorted(self._terms, key=_degree_sort_key)

    def coefficient(self, alpha) -> Polynomial:
        return self._terms.get(tuple(alpha), self.algebra.ring.zero())

    def _check(self, other: "GWAElement"):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("elements live in different algebras")

    def __add__(self, other):
        other = _coerce_gwa(self.algebra, other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for alpha, poly in other._terms.items():
            total = out.get(alpha)
            total = poly if total is None else total + poly
            if total.is_zero:
                out.pop(alpha, None)
            else:
                out[alpha] = total
        return GWAElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return GWAElement(
            self.algebra, {alpha: -poly for alpha, poly in self._terms.items()}
        )

    def __sub__(self, other):
        other = _coerce_gwa(self.algebra, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_gwa(self.algebra, other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_gwa(self.algebra, other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return GWAElement(self.algebra, _gwa_mul_raw(self.algebra, self._terms, other._terms))

    def __rmul__(self, other):
        other = _coerce_gwa(self.algebra, other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise GwpaError("exponent must be a nonnegative integer")
        result = self.algebra.one()
        for _ in range(exponent):
            result = result * self
        return result

    def commutator(self, other: "GWAElement") -> "GWAElement":
        other = _coerce_gwa(self.algebra, other)
        if other is NotImplemented:
            raise GwpaError("cannot take a commutator with that operand")
        return self * other - other * self

    @property
    def degree(self):
        """Filtration degree; NEG_INF for the zero element."""
        if not self._terms:
            return NEG_INF
        return max(
            self.algebra.term_degree(alpha, poly)
            for alpha, poly in self._terms.items()
        )

    def homogeneous_part(self, target) -> "GWAElement":
        """The slice of exact filtration degree ``target``."""
        A = self.algebra
        out = {}
        for alpha, poly in self._terms.items():
            weight = sum(d * abs(k) for d, k in zip(A.degrees, alpha))
            coefficient_degree = Fraction(target) - Fraction(weight, 2)
            if coefficient_degree.denominator != 1 or coefficient_degree < 0:
                continue
            piece = poly.weighted_component(A.weights, int(coefficient_degree))
            if not piece.is_zero:
                out[alpha] = piece
        return GWAElement(A, out)

    def leading_part(self) -> "GWAElement":
        if not self._terms:
            return self
        return self.homogeneous_part(self.degree)

    def __eq__(self, other):
        other = _coerce_gwa(self.algebra, other) if not isinstance(other, GWAElement) else other
        if other is NotImplemented or not isinstance(other, GWAElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        return hash(
            (self.algebra, frozenset((a, p) for a, p in self._terms.items()))
        )

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return "GWAElement(%s)" % self


def _coerce_gwa(algebra: GWAData, value):
    if isinstance(value, GWAElement):
        return value
    if isinstance(value, Polynomial):
        if value.ring != algebra.ring:
            return NotImplemented
        return algebra.scalar(value)
    if isinstance(value, (int, Fraction)):
        return algebra.scalar(normalize_coeff(value))
    return NotImplemented


# -- graded correspondence ---------------------------------------------------


def predicted_gwpa(A: GWAData) -> GWPAData:
    """The Poisson algebra carried by the associated graded object.

    Parameters keep their top weighted component and each derivation image
    is minus the leading part of the discrepancy between a substitution and
    the identity.
    """
    ring = A.ring
    base = BasePoissonAlgebra.trivial(ring)
    abar = tuple(
        A.a[i].weighted_component(A.weights, A.degrees[i]) for i in range(A.rank)
    )
    partials = []
    for i in range(A.rank):
        images = {}
        for j, name in enumerate(ring.variables):
            drop = A.sigmas[i](ring.var(name)) - ring.var(name)
            piece = drop.weighted_component(A.weights, A.weights[j] - A.nu)
            if not piece.is_zero:
                images[name] = -piece
        partials.append(BaseDerivation.from_images(ring, images))
    return GWPAData.checked(base, abar, tuple(partials))


def _graded_image(target: GWPAData, element: GWAElement, degree) -> GWPAElement:
    slice_ = element.homogeneous_part(degree)
    return GWPAElement(target, slice_.terms())


class GrPairReport:
    """Outcome of the correspondence check on one pair of elements."""

    __slots__ = (
        "left",
        "right",
        "left_degree",
        "right_degree",
        "commutator",
        "commutator_degree",
        "expected_degree",
        "degree_drops",
        "graded_bracket",
        "predicted_bracket",
        "matches",
    )

    def __init__(self, **fields):
        for name in self.__slots__:
            setattr(self, name, fields[name])


class GrReport:
    __slots__ = ("algebra", "predicted", "pairs", "all_match")

    def __init__(self, algebra: GWAData, predicted: GWPAData, pairs):
        self.algebra = algebra
        self.predicted = predicted
        self.pairs = tuple(pairs)
        self.all_match = all(pair.matches for pair in self.pairs)


def gr_correspondence_check(A: GWAData, pairs) -> GrReport:
    """Compare graded commutators with the predicted Poisson bracket.

    For elements u, v of filtration degrees s and t the commutator must drop
    to degree s + t - nu, and its slice at that degree must equal the bracket
    of the leading parts inside the predicted Poisson algebra.
    """
    target = predicted_gwpa(A)
    results = []
    for u, v in pairs:
        if not isinstance(u, GWAElement) or not isinstance(v, GWAElement):
            raise GwpaError("correspondence pairs must be algebra elements")
        if u.algebra != A or v.algebra != A:
            raise AlgebraMismatchError("pair does not live in the given algebra")
        if u.is_zero or v.is_zero:
            raise GwpaError("correspondence pairs must be nonzero")
        s = u.degree
        t = v.degree
        commutator = u.commutator(v)
        expected = s + t - A.nu
        drops = commutator.degree <= expected
        graded = _graded_image(target, commutator, expected)
        left_bar = _graded_image(target, u, s)
        right_bar = _graded_image(target, v, t)
        predicted_bracket = left_bar.bracket(right_bar)
        results.append(
            GrPairReport(
                left=u,
                right=v,
                left_degree=s,
                right_degree=t,
                commutator=commutator,
                commutator_degree=commutator.degree,
                expected_degree=expected,
                degree_drops=drops,
                graded_bracket=graded,
                predicted_bracket=predicted_bracket,
                matches=drops and graded == predicted_bracket,
            )
        )
    return GrReport(A, target, results)


# -- stock quantizations ------------------------------------------------------


def weyl_gwa(n: int = 1) -> GWAData:
    """The n-th Weyl algebra as a generalized Weyl algebra.

    Base K[H1..Hn] with a_i = H_i and substitutions H_i -> H_i - 1; the
    graded correspondence recovers the Poisson algebra of p2n(n).
    """
    if n < 1:
        raise GwpaError("rank must be at least one")
    ring = PolyRing(["H%d" % (i + 1) for i in range(n)])
    sigmas = []
    for i in range(n):
        name = ring.variables[i]
        sigmas.append(
            AffineSubstitution.from_map(ring, {name: ring.var(name) - 1})
        )
    a = tuple(ring.var(name) for name in ring.variables)
    weights = tuple(1 for _ in range(n))
    degrees = tuple(1 for _ in range(n))
    return GWAData(ring, sigmas, a, weights, degrees, nu=1)


def usl2_gwa() -> GWAData:
    """The enveloping algebra of sl2 as a rank one generalized Weyl algebra.

    Base K[C, H] with a = C - H(H + 1), substitution H -> H - 1 fixing C,
    weights 2 and 1.  The Casimir C = YX + H(H + 1) is central and the graded
    correspondence recovers the Poisson algebra with parameter C - H^2.
    """
    ring = PolyRing(["C", "H"])
    H = ring.var("H")
    C = ring.var("C")
    sigma = AffineSubstitution.from_map(ring, {"H": H - 1})
    a = (C - H * (H + 1),)
    return GWAData(ring, (sigma,), a, (2, 1), (2,), nu=1)
