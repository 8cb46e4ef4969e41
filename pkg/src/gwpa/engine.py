"""Generalized Weyl Poisson algebras over polynomial base rings.

An algebra of rank n is built from a base Poisson algebra D, central
parameters a_1..a_n and commuting Poisson derivations p_1..p_n with
p_i(a_j) = 0 for i != j.  As a commutative ring it is D[X_1..X_n, Y_1..Y_n]
modulo X_i Y_i = a_i, graded over Z^n with components D v_alpha, where
v_alpha collects X powers for positive coordinates and Y powers for negative
ones.  The Poisson bracket is determined by

    {Y_i, d} = p_i(d) Y_i,   {X_i, d} = -p_i(d) X_i,   {Y_i, X_i} = p_i(a_i)

for d in D, all brackets between generators of different index vanishing.
Elements are kept in graded normal form at all times.  The bracket of
arbitrary elements is computed by Leibniz recursion over generator
factorizations; the closed graded formulas are exposed separately in
:func:`bracket_oracle_graded` and serve as an independent cross-check only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import AlgebraMismatchError, GwpaError, ValidationFailure
from .poisson import (
    BaseDerivation,
    BasePoissonAlgebra,
    derivations_commute,
    is_poisson_derivation,
)
from .poly import NEG_INF, Polynomial, PolyRing, term_string


@dataclass(frozen=True)
class Violation:
    """One failed structural constraint, with one-based indices."""

    condition: str
    indices: tuple[int, ...]
    detail: str

    def __str__(self):
        return "%s%r: %s" % (self.condition, list(self.indices), self.detail)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class GWPAData:
    """Defining data of a generalized Weyl Poisson algebra.

    Construction checks only shapes; run :func:`validate_gwpa` (or build via
    :meth:`checked`) to verify the structural constraints.
    """

    base: BasePoissonAlgebra
    a: tuple[Polynomial, ...]
    partials: tuple[BaseDerivation, ...]

    def __post_init__(self):
        if len(self.a) != len(self.partials) or not self.a:
            raise GwpaError("need equally many parameters and derivations, at least one")
        for poly in self.a:
            if poly.ring != self.base.ring:
                raise GwpaError("parameter polynomial lives over a different ring")
        for der in self.partials:
            if der.ring != self.base.ring:
                raise GwpaError("derivation lives over a different ring")
        object.__setattr__(self, "_a_powers", {})

    @classmethod
    def checked(cls, base, a, partials) -> "GWPAData":
        """Build and validate, raising :class:`ValidationFailure` on bad data."""
        data = cls(base, tuple(a), tuple(partials))
        report = validate_gwpa(data)
        if not report.ok:
            raise ValidationFailure(report)
        return data

    @property
    def rank(self) -> int:
        return len(self.a)

    @property
    def base_ring(self) -> PolyRing:
        return self.base.ring

    def zero_alpha(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def a_power(self, i: int, m: int) -> Polynomial:
        """Cached m-th power of the zero-based i-th parameter."""
        key = (i, m)
        cache = self._a_powers
        if key not in cache:
            cache[key] = self.a[i] ** m
        return cache[key]

    # -- element constructors ------------------------------------------

    def element(self, terms: Mapping[tuple[int, ...], Polynomial]) -> "GWPAElement":
        return GWPAElement(self, terms)

    def zero(self) -> "GWPAElement":
        return GWPAElement(self, {})

    def one(self) -> "GWPAElement":
        return GWPAElement(self, {self.zero_alpha(): self.base_ring.one()})

    def scalar(self, value) -> "GWPAElement":
        """Image of a base polynomial (or rational constant) in the algebra."""
        if isinstance(value, Polynomial):
            if value.ring != self.base_ring:
                raise GwpaError("scalar lives over a different ring")
            poly = value
        else:
            poly = self.base_ring.const(value)
        return GWPAElement(self, {self.zero_alpha(): poly})

    def v(self, alpha: Sequence[int]) -> "GWPAElement":
        """The graded basis monomial of the given degree, coefficient one."""
        alpha = tuple(int(x) for x in alpha)
        if len(alpha) != self.rank:
            raise GwpaError("degree tuple must have length %d" % self.rank)
        return GWPAElement(self, {alpha: self.base_ring.one()})

    def X(self, i: int) -> "GWPAElement":
        return self.v(tuple(1 if j == i - 1 else 0 for j in range(self.rank)))

    def Y(self, i: int) -> "GWPAElement":
        return self.v(tuple(-1 if j == i - 1 else 0 for j in range(self.rank)))

    def generators(self) -> list["GWPAElement"]:
        """X_i, Y_i and the base variables, in a fixed order."""
        gens = []
        for i in range(1, self.rank + 1):
            gens.append(self.X(i))
            gens.append(self.Y(i))
        for name in self.base_ring.variables:
            gens.append(self.scalar(self.base_ring.var(name)))
        return gens

    def __repr__(self):
        return "GWPAData(rank %d over %r)" % (self.rank, self.base_ring)


def validate_gwpa(data: GWPAData) -> ValidationReport:
    """Check the structural constraints of the defining data.

    Violations are returned as data rather than raised, so callers can
    render a full report.
    """
    violations: list[Violation] = []
    base = data.base
    gens = base.ring.gens()
    names = base.ring.variables
    n = data.rank
    for i, der in enumerate(data.partials):
        if not is_poisson_derivation(base, der):
            violations.append(
                Violation(
                    "poisson-derivation",
                    (i + 1,),
                    "derivation %d does not respect the base bracket" % (i + 1),
                )
            )
    if not derivations_commute(data.partials):
        for i in range(n):
            for j in range(i + 1, n):
                a, b = data.partials[i], data.partials[j]
                if any(a(bi) != b(ai) for bi, ai in zip(b.images, a.images)):
                    violations.append(
                        Violation(
                            "commuting-derivations",
                            (i + 1, j + 1),
                            "derivations %d and %d do not commute" % (i + 1, j + 1),
                        )
                    )
    for i, poly in enumerate(data.a):
        for g, name in zip(gens, names):
            diff = base.bracket(poly, g)
            if not diff.is_zero:
                violations.append(
                    Violation(
                        "central-parameter",
                        (i + 1,),
                        "parameter %d is not Poisson central: {a, %s} = %s"
                        % (i + 1, name, diff),
                    )
                )
                break
    for i, der in enumerate(data.partials):
        for j, poly in enumerate(data.a):
            if i != j:
                image = der(poly)
                if not image.is_zero:
                    violations.append(
                        Violation(
                            "cross-constant",
                            (i + 1, j + 1),
                            "derivation %d must annihilate parameter %d, got %s"
                            % (i + 1, j + 1, image),
                        )
                    )
    ok = not violations
    return ValidationReport(ok, tuple(violations))


class GWPAElement:
    """Element in graded normal form: a map from Z^n degrees to base
    polynomial coefficients."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: GWPAData, terms: Mapping[tuple[int, ...], Polynomial]):
        clean: dict[tuple[int, ...], Polynomial] = {}
        rank = algebra.rank
        for alpha, poly in terms.items():
            if len(alpha) != rank:
                raise GwpaError("degree tuple %r does not match rank %d" % (alpha, rank))
            if poly.ring != algebra.base_ring:
                raise GwpaError("coefficient lives over a different ring")
            if not poly.is_zero:
                clean[tuple(alpha)] = poly
        self.algebra = algebra
        self._terms = clean

    # -- structure -------------------------------------------------------

    def terms(self) -> dict[tuple[int, ...], Polynomial]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self._terms, key=_degree_sort_key)

    def coefficient(self, alpha: Sequence[int]) -> Polynomial:
        return self._terms.get(tuple(alpha), self.algebra.base_ring.zero())

    def component(self, alpha: Sequence[int]) -> "GWPAElement":
        alpha = tuple(alpha)
        if alpha in self._terms:
            return GWPAElement(self.algebra, {alpha: self._terms[alpha]})
        return self.algebra.zero()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self):
        """Filtration weight: coefficient degree plus sum of |alpha_i|."""
        if not self._terms:
            return NEG_INF
        return max(
            sum(abs(x) for x in alpha) + poly.total_degree
            for alpha, poly in self._terms.items()
        )

    def _check(self, other: "GWPAElement"):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(
                "elements belong to different algebras: %r and %r"
                % (self.algebra, other.algebra)
            )

    # -- linear operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self.algebra.scalar(other)
        if not isinstance(other, GWPAElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for alpha, poly in other._terms.items():
            acc = out.get(alpha)
            acc = poly if acc is None else acc + poly
            if acc.is_zero:
                out.pop(alpha, None)
            else:
                out[alpha] = acc
        return GWPAElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return GWPAElement(self.algebra, {a: -p for a, p in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self.algebra.scalar(other)
        if not isinstance(other, GWPAElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scaled(self, factor) -> "GWPAElement":
        """Multiply every coefficient by a base polynomial or rational."""
        return GWPAElement(
            self.algebra, {a: p * factor for a, p in self._terms.items()}
        )

    # -- multiplication ----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return self.scaled(other)
        if not isinstance(other, GWPAElement):
            return NotImplemented
        self._check(other)
        return GWPAElement(self.algebra, _mul_raw(self.algebra, self._terms, other._terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise GwpaError("element powers must be nonnegative integers")
        result = self.algebra.one()
        for _ in range(exponent):
            result = result * self
        return result

    def bracket(self, other: "GWPAElement", strategy: str = "pairs") -> "GWPAElement":
        """Poisson bracket, by Leibniz recursion over factorizations.

        ``strategy`` selects the recursion shape: ``pairs`` expands the
        double Leibniz sum over atom pairs, ``split`` recurses by halving
        the factor words.  Both must agree; the second exists so tests can
        confirm the bracket is independent of the factorization order.
        """
        self._check(other)
        if strategy == "pairs":
            raw = _bracket_pairs(self.algebra, self._terms, other._terms)
        elif strategy == "split":
            raw = _bracket_split(self.algebra, self._terms, other._terms)
        else:
            raise GwpaError("unknown bracket strategy %r" % strategy)
        return GWPAElement(self.algebra, raw)

    # -- comparison and rendering -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self.algebra.scalar(other)
        if not isinstance(other, GWPAElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return "GWPAElement(%s)" % self


def _degree_sort_key(alpha: tuple[int, ...]):
    return (sum(abs(x) for x in alpha), tuple(-x for x in alpha))


def generator_label(alpha: tuple[int, ...]) -> str:
    """X part then Y part of a degree, e.g. ``X1^2*Y2``; empty for zero."""
    xs = []
    ys = []
    for i, x in enumerate(alpha, start=1):
        if x > 0:
            xs.append("X%d" % i if x == 1 else "X%d^%d" % (i, x))
        elif x < 0:
            ys.append("Y%d" % i if x == -1 else "Y%d^%d" % (i, -x))
    return "*".join(xs + ys)


def render_element(u: GWPAElement) -> str:
    """Canonical text form, graded parts in ascending degree order."""
    if u.is_zero:
        return "0"
    variables = u.algebra.base_ring.variables
    pieces: list[tuple[int, str]] = []  # (sign, body) with sign in {+1, -1}
    for alpha in u.support():
        poly = u._terms[alpha]
        label = generator_label(alpha)
        if not label:
            for exps, coeff in poly.sorted_terms():
                body = term_string(variables, exps, coeff)
                pieces.append((-1 if coeff < 0 else 1, body))
            continue
        items = poly.sorted_terms()
        if len(items) == 1:
            exps, coeff = items[0]
            if any(exps):
                body = "%s*%s" % (term_string(variables, exps, coeff), label)
            else:
                mag = -coeff if coeff < 0 else coeff
                body = label if mag == 1 else "%s*%s" % (mag, label)
            pieces.append((-1 if coeff < 0 else 1, body))
        else:
            pieces.append((1, "(%s)*%s" % (poly, label)))
    out = []
    for k, (sign, body) in enumerate(pieces):
        if k == 0:
            out.append("-" + body if sign < 0 else body)
        else:
            out.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(out)


# -- multiplication core -----------------------------------------------------


def _mul_raw(A: GWPAData, t1, t2) -> dict:
    """Product of two term maps in graded normal form.

    Per coordinate, opposite X and Y powers annihilate into a factor of the
    corresponding parameter: the overlap min(p, q) of an X^p against a Y^q
    becomes a_i^min(p,q).
    """
    out: dict[tuple[int, ...], Polynomial] = {}
    for alpha, d in t1.items():
        for beta, e in t2.items():
            coeff = d * e
            for i, (x, y) in enumerate(zip(alpha, beta)):
                if (x > 0 and y < 0) or (x < 0 and y > 0):
                    m = min(abs(x), abs(y))
                    coeff = coeff * A.a_power(i, m)
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            acc = out.get(gamma)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero:
                out.pop(gamma, None)
            else:
                out[gamma] = acc
    return out


def _add_raw(A: GWPAData, target: dict, extra: dict, factor=None):
    for alpha, poly in extra.items():
        if factor is not None:
            poly = poly * factor
        acc = target.get(alpha)
        acc = poly if acc is None else acc + poly
        if acc.is_zero:
            target.pop(alpha, None)
        else:
            target[alpha] = acc


# -- bracket core -------------------------------------------------------------

# Atoms are ("c", polynomial) for base coefficients and ("X", i) / ("Y", i)
# with zero-based index for single generators.


def _atoms_of(A: GWPAData, alpha: tuple[int, ...], coeff: Polynomial) -> list:
    atoms = []
    if not coeff.is_constant or coeff.constant_value() != 1:
        atoms.append(("c", coeff))
    for i, x in enumerate(alpha):
        if x > 0:
            atoms.extend([("X", i)] * x)
        elif x < 0:
            atoms.extend([("Y", i)] * (-x))
    return atoms


def _atom_term(A: GWPAData, atom) -> dict:
    kind, payload = atom
    if kind == "c":
        return {A.zero_alpha(): payload}
    alpha = [0] * A.rank
    alpha[payload] = 1 if kind == "X" else -1
    return {tuple(alpha): A.base_ring.one()}


def _atom_bracket(A: GWPAData, left, right) -> dict | None:
    """Bracket of two atoms as a raw term map, None when it vanishes."""
    lk, lp = left
    rk, rp = right
    ring = A.base_ring
    if lk == "c" and rk == "c":
        poly = A.base.bracket(lp, rp)
        if poly.is_zero:
            return None
        return {A.zero_alpha(): poly}
    if lk == "c":
        der = A.partials[rp](lp)
        if der.is_zero:
            return None
        sign = 1 if rk == "X" else -1
        alpha = [0] * A.rank
        alpha[rp] = 1 if rk == "X" else -1
        return {tuple(alpha): der * sign}
    if rk == "c":
        der = A.partials[lp](rp)
        if der.is_zero:
            return None
        sign = -1 if lk == "X" else 1
        alpha = [0] * A.rank
        alpha[lp] = 1 if lk == "X" else -1
        return {tuple(alpha): der * sign}
    if lp != rp or lk == rk:
        return None
    poly = A.partials[lp](A.a[lp])
    if poly.is_zero:
        return None
    if lk == "X":  # {X_i, Y_i} = -p_i(a_i)
        poly = -poly
    return {A.zero_alpha(): poly}


def _term_bracket(A: GWPAData, alpha, d: Polynomial, beta, e: Polynomial):
    """Closed form for one basis term pair, {d v_alpha, e v_beta}.

    Both slots are derivations over the factor decomposition, which collapses
    to base-ring data: with P the product of overlap powers a_j^{m_j},

        ({d, e} - d.E_alpha(e) + e.E_beta(d)) P
            + d e sum over opposite-sign coordinates of |alpha_i| beta_i
              p_i(a_i) P / a_i

    carried by v_{alpha+beta}, where E_alpha = sum alpha_i p_i.
    """
    base = A.base.bracket(d, e)
    for i, k in enumerate(alpha):
        if k:
            base = base - A.partials[i](e) * d * k
    for i, k in enumerate(beta):
        if k:
            base = base + A.partials[i](d) * e * k
    overlap = A.base_ring.one()
    corrections = []
    for i in range(A.rank):
        p, q = alpha[i], beta[i]
        if p and q and (p > 0) != (q > 0):
            m = min(abs(p), abs(q))
            scale = A.partials[i](A.a[i]) * (abs(p) * q)
            if not scale.is_zero:
                corrections.append((i, m, scale))
            overlap = overlap * A.a_power(i, m)
    total = base * overlap
    if corrections:
        de = d * e
        if not de.is_zero:
            for i, m, scale in corrections:
                piece = de * scale * A.a_power(i, m - 1)
                for j in range(A.rank):
                    if j != i:
                        pj, qj = alpha[j], beta[j]
                        if pj and qj and (pj > 0) != (qj > 0):
                            piece = piece * A.a_power(j, min(abs(pj), abs(qj)))
                total = total + piece
    if total.is_zero:
        return None
    gamma = tuple(p + q for p, q in zip(alpha, beta))
    return gamma, total


def _bracket_pairs(A: GWPAData, t1, t2) -> dict:
    """Bilinear sum of closed-form term-pair brackets."""
    out: dict = {}
    for alpha, d in t1.items():
        for beta, e in t2.items():
            found = _term_bracket(A, alpha, d, beta, e)
            if found is None:
                continue
            gamma, poly = found
            existing = out.get(gamma)
            poly = poly if existing is None else existing + poly
            if poly.is_zero:
                out.pop(gamma, None)
            else:
                out[gamma] = poly
    return out


def _bracket_words(A: GWPAData, left: list, right: list) -> dict:
    """Leibniz recursion by halving words; used as the alternate strategy."""
    if not left or not right:
        return {}
    if len(left) == 1 and len(right) == 1:
        found = _atom_bracket(A, left[0], right[0])
        return {} if found is None else dict(found)
    out: dict = {}
    if len(left) > 1:
        mid = len(left) // 2
        head, tail = left[:mid], left[mid:]
        head_term = _word_product(A, head)
        tail_term = _word_product(A, tail)
        _add_raw(A, out, _mul_raw(A, head_term, _bracket_words(A, tail, right)))
        _add_raw(A, out, _mul_raw(A, _bracket_words(A, head, right), tail_term))
    else:
        mid = len(right) // 2
        head, tail = right[:mid], right[mid:]
        head_term = _word_product(A, head)
        tail_term = _word_product(A, tail)
        _add_raw(A, out, _mul_raw(A, _bracket_words(A, left, head), tail_term))
        _add_raw(A, out, _mul_raw(A, head_term, _bracket_words(A, left, tail)))
    return out


def _word_product(A: GWPAData, atoms: list) -> dict:
    term = {A.zero_alpha(): A.base_ring.one()}
    for atom in atoms:
        term = _mul_raw(A, term, _atom_term(A, atom))
    return term


def _bracket_split(A: GWPAData, t1, t2) -> dict:
    out: dict = {}
    for alpha, d in t1.items():
        atoms_u = _atoms_of(A, alpha, d)
        for beta, e in t2.items():
            atoms_v = _atoms_of(A, beta, e)
            _add_raw(A, out, _bracket_words(A, atoms_u, atoms_v))
    return out


def gwpa_mul(u: GWPAElement, v: GWPAElement) -> GWPAElement:
    """Product in graded normal form."""
    return u * v


def gwpa_bracket(u: GWPAElement, v: GWPAElement, strategy: str = "pairs") -> GWPAElement:
    """Poisson bracket of two elements."""
    return u.bracket(v, strategy=strategy)


def bracket_oracle_graded(A: GWPAData, first, lam: Polynomial, alpha: Sequence[int]) -> GWPAElement:
    """Closed graded formulas for brackets against a basis term lam v_alpha.

    ``first`` is either a base polynomial d, using

        {d, lam v_alpha} = (-{lam, -} + lam sum_i alpha_i p_i)(d) v_alpha,

    or a single generator X_i or Y_i (as a GWPAElement), using the one-step
    shift formula with its sign and correction cases.  This evaluates the
    formulas directly, with no Leibniz recursion, and exists to cross-check
    :meth:`GWPAElement.bracket`.
    """
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) != A.rank:
        raise GwpaError("degree tuple must have length %d" % A.rank)
    if lam.ring != A.base_ring:
        raise GwpaError("coefficient lives over a different ring")
    if isinstance(first, Polynomial):
        d = first
        coeff = -A.base.bracket(lam, d)
        for i, x in enumerate(alpha):
            if x:
                coeff = coeff + lam * A.partials[i](d) * x
        return GWPAElement(A, {alpha: coeff})
    if isinstance(first, GWPAElement):
        sign, index = _single_generator(first)
        i = index
        p_lam = A.partials[i](lam)
        shifted = list(alpha)
        shifted[i] += sign
        shifted = tuple(shifted)
        x = alpha[i]
        if x == 0 or (x > 0) == (sign > 0):
            coeff = p_lam * (-sign)
        else:
            coeff = p_lam * (-sign) * A.a[i] + lam * x * A.partials[i](A.a[i])
        return GWPAElement(A, {shifted: coeff})
    raise GwpaError("first argument must be a base polynomial or a single generator")


def _single_generator(u: GWPAElement) -> tuple[int, int]:
    """(sign, zero-based index) when u is exactly X_i or Y_i."""
    if len(u._terms) != 1:
        raise GwpaError("expected a single generator element")
    (alpha, poly), = u._terms.items()
    if not (poly.is_constant and poly.constant_value() == 1):
        raise GwpaError("expected a single generator element")
    nonzero = [(i, x) for i, x in enumerate(alpha) if x]
    if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
        raise GwpaError("expected a single generator element")
    i, x = nonzero[0]
    return (1 if x > 0 else -1), i


# -- constructions -------------------------------------------------------------


@dataclass(frozen=True)
class OreRealization:
    """Result of :func:`from_ore_data`: the algebra plus the names of the
    adjoined central variables (a_i equals the i-th of these)."""

    algebra: GWPAData
    new_vars: tuple[str, ...]


def from_ore_data(
    D: BasePoissonAlgebra,
    partials: Sequence[BaseDerivation],
    alphas: Sequence[Polynomial],
) -> OreRealization:
    """Realize D[X, Y] with {Y_i, X_i} = alpha_i as a rank-n algebra.

    The base is enlarged by fresh central variables H_1..H_n, the i-th
    parameter is H_i, and the i-th derivation extends the given one by
    sending H_i to alpha_i and the other new variables to zero.  Requires
    each alpha_i Poisson central in D and annihilated by the other
    derivations.  The generator relations are asserted after construction.
    """
    partials = tuple(partials)
    alphas = tuple(alphas)
    n = len(alphas)
    if n == 0 or len(partials) != n:
        raise GwpaError("need equally many derivations and parameters, at least one")
    ring = D.ring
    for der in partials:
        if der.ring != ring:
            raise GwpaError("derivation lives over a different ring")
        if not is_poisson_derivation(D, der):
            raise GwpaError("input derivation does not respect the base bracket")
    if not derivations_commute(partials):
        raise GwpaError("input derivations do not commute")
    gens = ring.gens()
    for idx, alpha in enumerate(alphas):
        if alpha.ring != ring:
            raise GwpaError("parameter lives over a different ring")
        for g, name in zip(gens, ring.variables):
            if not D.bracket(alpha, g).is_zero:
                raise GwpaError(
                    "parameter %d is not Poisson central: {alpha, %s} != 0"
                    % (idx + 1, name)
                )
    for i, der in enumerate(partials):
        for j, alpha in enumerate(alphas):
            if i != j and not der(alpha).is_zero:
                raise GwpaError(
                    "derivation %d must annihilate parameter %d" % (i + 1, j + 1)
                )

    new_names = []
    taken = set(ring.variables)
    for i in range(1, n + 1):
        name = "H%d" % i
        while name in taken:
            name += "_"
        new_names.append(name)
        taken.add(name)
    big_ring = ring.extended(new_names)
    zero = big_ring.zero()
    old_n = ring.nvars
    matrix = []
    for j in range(big_ring.nvars):
        row = []
        for k in range(big_ring.nvars):
            if j < old_n and k < old_n:
                row.append(D.matrix[j][k].embed(big_ring))
            else:
                row.append(zero)
        matrix.append(tuple(row))
    big_base = BasePoissonAlgebra(big_ring, tuple(matrix))

    a = tuple(big_ring.var(name) for name in new_names)
    new_partials = []
    for i, der in enumerate(partials):
        images = {
            name: img.embed(big_ring)
            for name, img in zip(ring.variables, der.images)
        }
        images[new_names[i]] = alphas[i].embed(big_ring)
        new_partials.append(BaseDerivation.from_images(big_ring, images))

    data = GWPAData.checked(big_base, a, tuple(new_partials))

    # The defining relations must reproduce the requested brackets.
    for i in range(1, n + 1):
        lhs = data.Y(i).bracket(data.X(i))
        rhs = data.scalar(alphas[i - 1].embed(big_ring))
        if lhs != rhs:
            raise GwpaError("construction failed to reproduce {Y_%d, X_%d}" % (i, i))
    return OreRealization(data, tuple(new_names))


@dataclass(frozen=True)
class TensorProduct:
    """Result of :func:`tensor_product`: the combined algebra and, per
    factor, the variable renaming that was applied to keep names disjoint."""

    algebra: GWPAData
    renamings: tuple[dict, ...]


def tensor_product(factors: Sequence[GWPAData]) -> TensorProduct:
    """Tensor product over the rationals.

    Base rings are concatenated; colliding variable names get a positional
    suffix (factor number).  Ranks add, parameters and derivations embed
    with zero extension.
    """
    factors = tuple(factors)
    if not factors:
        raise GwpaError("tensor product needs at least one factor")
    renamings: list[dict] = []
    all_names: list[str] = []
    taken: set[str] = set()
    for s, factor in enumerate(factors, start=1):
        rename = {}
        for name in factor.base_ring.variables:
            fresh = name
            while fresh in taken:
                fresh = "%s_%d" % (fresh, s)
            if fresh != name:
                rename[name] = fresh
            taken.add(fresh)
            all_names.append(fresh)
        renamings.append(rename)
    big_ring = PolyRing(all_names)
    zero = big_ring.zero()
    matrix = [[zero] * big_ring.nvars for _ in range(big_ring.nvars)]
    offset = 0
    for factor, rename in zip(factors, renamings):
        n = factor.base_ring.nvars
        for j in range(n):
            for k in range(n):
                entry = factor.base.matrix[j][k]
                if not entry.is_zero:
                    matrix[offset + j][offset + k] = entry.embed(big_ring, rename)
        offset += n
    big_base = BasePoissonAlgebra(big_ring, tuple(tuple(row) for row in matrix))
    a = []
    partials = []
    for factor, rename in zip(factors, renamings):
        for poly in factor.a:
            a.append(poly.embed(big_ring, rename))
        for der in factor.partials:
            partials.append(der.embedded(big_ring, rename))
    data = GWPAData.checked(big_base, tuple(a), tuple(partials))
    return TensorProduct(data, tuple(renamings))


def apply_sI(
    A: GWPAData, I: Iterable[int], u: GWPAElement | None = None
) -> tuple[GWPAData, GWPAElement | None]:
    """The involution swapping X_i with Y_i for i in I.

    Returns the target algebra, which negates the selected derivations, and
    the image of ``u`` there, whose degrees have the selected coordinates
    negated.  Base coefficients are fixed.
    """
    indices = sorted(set(int(i) for i in I))
    for i in indices:
        if not 1 <= i <= A.rank:
            raise GwpaError("index %d out of range 1..%d" % (i, A.rank))
    flip = [i - 1 for i in indices]
    partials = list(A.partials)
    for i in flip:
        partials[i] = partials[i].negated()
    target = GWPAData(A.base, A.a, tuple(partials))
    if u is None:
        return target, None
    if u.algebra != A:
        raise AlgebraMismatchError("element does not belong to the source algebra")
    terms = {}
    for alpha, poly in u.items():
        moved = list(alpha)
        for i in flip:
            moved[i] = -moved[i]
        terms[tuple(moved)] = poly
    return target, GWPAElement(target, terms)


def torus_apply(u: GWPAElement, lam: Sequence) -> GWPAElement:
    """Rescale the graded component of degree alpha by prod lam_i^alpha_i.

    The entries must be nonzero rationals; negative entries are allowed.
    This is a Poisson automorphism for any such lam.
    """
    A = u.algebra
    lam = [Fraction(x) for x in lam]
    if len(lam) != A.rank:
        raise GwpaError("need %d scale factors" % A.rank)
    if any(x == 0 for x in lam):
        raise GwpaError("scale factors must be nonzero")
    terms = {}
    for alpha, poly in u.items():
        factor = Fraction(1)
        for x, l in zip(alpha, lam):
            factor *= l**x
        terms[alpha] = poly * factor
    return GWPAElement(A, terms)
