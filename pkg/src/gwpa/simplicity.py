"""Poisson simplicity analysis.

The algebra is Poisson simple exactly when three conditions hold: the base
ring has no proper Poisson ideal stable under all defining derivations, the
ideal generated by each parameter together with its own derivative is the
whole base ring, and the centre of the algebra is a field.  For data whose
parameters and derivation coefficients are univariate in their own variable
over a zero-bracket base, each condition reduces to an exact statement about
constants and univariate gcds.  Outside that family the conditions are
decided when a finite argument applies and reported as undecided otherwise,
never guessed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .centre import CriterionVerdict, field_criterion, poisson_ideal_closure
from .engine import GWPAData
from .errors import GwpaError
from .poly import Polynomial, divides, univariate_gcd


@dataclass(frozen=True)
class SimplicityReport:
    """Three condition verdicts plus their conjunction.

    ``family`` records whether the exact univariate analysis applied.
    ``overall`` is "fails" when any condition fails, "holds" when all hold,
    and "undecided" otherwise.
    """

    condition1: CriterionVerdict
    condition2: CriterionVerdict
    condition3: CriterionVerdict
    overall: str
    family: bool
    degree: int
    alpha_max: int


def _univariate_family_coefficients(A: GWPAData):
    """The list b with p_i = b_i d/dH_i when the data is in the univariate
    family (zero base bracket, one variable per pair, a_i and b_i univariate
    in their own variable); None otherwise.  Detection is conservative."""
    ring = A.base_ring
    if ring.nvars != A.rank or not A.base.is_trivial:
        return None
    coefficients = []
    for i, der in enumerate(A.partials):
        own = ring.variables[i]
        for v, img in enumerate(der.images):
            if v != i and not img.is_zero:
                return None
        b = der.images[i]
        if any(v != own for v in b.variables_used()):
            return None
        coefficients.append(b)
    for i, a in enumerate(A.a):
        own = ring.variables[i]
        if any(v != own for v in a.variables_used()):
            return None
    return coefficients


def _family_condition1(A: GWPAData, coefficients) -> CriterionVerdict:
    ring = A.base_ring
    for i, b in enumerate(coefficients):
        if b.is_zero:
            witness = ring.var(ring.variables[i])
            return CriterionVerdict(
                status="fails",
                exact=True,
                witness=witness,
                detail=(
                    "derivation %d vanishes, so %s generates a proper "
                    "invariant Poisson ideal" % (i + 1, witness)
                ),
            )
        if not b.is_constant:
            return CriterionVerdict(
                status="fails",
                exact=True,
                witness=b,
                detail=(
                    "coefficient b_%d = %s is nonconstant and generates the "
                    "proper invariant Poisson ideal (%s)" % (i + 1, b, b)
                ),
            )
    return CriterionVerdict(
        status="holds",
        exact=True,
        detail="every derivation coefficient is a nonzero rational",
    )


def _family_condition2(A: GWPAData) -> CriterionVerdict:
    ring = A.base_ring
    for i, a in enumerate(A.a):
        own = ring.variables[i]
        da = A.partials[i](a)
        g = univariate_gcd(a, da, own)
        if g.is_zero:
            return CriterionVerdict(
                status="fails",
                exact=True,
                witness=g,
                detail=(
                    "a_%d and its derivative are both zero, so the ideal "
                    "they generate is zero" % (i + 1)
                ),
            )
        if not g.is_constant:
            return CriterionVerdict(
                status="fails",
                exact=True,
                witness=g,
                detail=(
                    "gcd(a_%d, p_%d(a_%d)) = %s is nonconstant, so the "
                    "ideal they generate is proper" % (i + 1, i + 1, i + 1, g)
                ),
            )
    return CriterionVerdict(
        status="holds",
        exact=True,
        detail="each parameter is coprime to its own derivative",
    )


def _invariant_ideal_candidates(A: GWPAData) -> list[Polynomial]:
    """Deterministic candidate generators of invariant principal ideals:
    untouched central variables first, then derivation images, parameters
    and their derivatives.  Constants are never candidates."""
    ring = A.base_ring
    gens = ring.gens()
    candidates: list[Polynomial] = []

    def push(poly: Polynomial):
        if poly.is_zero or poly.is_constant:
            return
        if all(poly != seen for seen in candidates):
            candidates.append(poly)

    for j, g in enumerate(gens):
        if all(der.images[j].is_zero for der in A.partials) and all(
            A.base.bracket(g, h).is_zero for h in gens
        ):
            push(g)
    for der in A.partials:
        for img in der.images:
            push(img)
    for a in A.a:
        push(a)
    for i in range(A.rank):
        push(A.partials[i](A.a[i]))
    return candidates


def _generates_invariant_ideal(A: GWPAData, c: Polynomial) -> bool:
    """Whether the principal ideal (c) is a Poisson ideal stable under all
    defining derivations.  For a principal ideal both closure properties
    reduce to divisibility of the generator images."""
    for der in A.partials:
        if not divides(c, der(c)):
            return False
    for g in A.base_ring.gens():
        if not divides(c, A.base.bracket(c, g)):
            return False
    return True


def _general_condition1(A: GWPAData, degree: int) -> CriterionVerdict:
    candidates = _invariant_ideal_candidates(A)
    for c in candidates:
        if _generates_invariant_ideal(A, c):
            return CriterionVerdict(
                status="fails",
                exact=True,
                witness=c,
                detail=(
                    "%s generates a proper Poisson ideal of the base ring "
                    "stable under every defining derivation" % c
                ),
            )
    ruled_out = []
    for c in candidates:
        report = poisson_ideal_closure(A, [A.scalar(c)], degree)
        if report.contains_unit:
            ruled_out.append(str(c))
    if ruled_out:
        evidence = "closures seeded with [%s] reach a unit at weight %d" % (
            ", ".join(ruled_out),
            degree,
        )
    else:
        evidence = (
            "no candidate closure reaches a unit at weight %d" % degree
        )
    return CriterionVerdict(
        status="undecided",
        exact=False,
        detail=(
            "no invariant principal ideal among %d candidates; %s; a full "
            "search over invariant ideals is out of scope"
            % (len(candidates), evidence)
        ),
        truncation={"degree": degree},
    )


def _common_rational_zero(ring, f: Polynomial, g: Polynomial):
    """A point on a small integer grid where both polynomials vanish, or
    None.  A common zero certifies that the ideal (f, g) is proper."""
    if ring.nvars > 4:
        candidates = [tuple(0 for _ in range(ring.nvars))]
    else:
        candidates = itertools.product(range(-2, 3), repeat=ring.nvars)
    for point in candidates:
        images = {
            name: ring.const(value)
            for name, value in zip(ring.variables, point)
        }
        if f.substitute(images).is_zero and g.substitute(images).is_zero:
            return point
    return None


def _general_condition2(A: GWPAData) -> CriterionVerdict:
    ring = A.base_ring
    undecided = []
    for i, a in enumerate(A.a):
        da = A.partials[i](a)
        if (a.is_constant and not a.is_zero) or (
            da.is_constant and not da.is_zero
        ):
            continue
        used = set(a.variables_used()) | set(da.variables_used())
        if not used:
            return CriterionVerdict(
                status="fails",
                exact=True,
                witness=ring.zero(),
                detail=(
                    "a_%d and p_%d(a_%d) are both zero, so the ideal they "
                    "generate is zero" % (i + 1, i + 1, i + 1)
                ),
            )
        if len(used) == 1:
            name = next(iter(used))
            g = univariate_gcd(a, da, name)
            if not g.is_constant:
                return CriterionVerdict(
                    status="fails",
                    exact=True,
                    witness=g,
                    detail=(
                        "gcd(a_%d, p_%d(a_%d)) = %s is nonconstant"
                        % (i + 1, i + 1, i + 1, g)
                    ),
                )
            continue
        point = _common_rational_zero(ring, a, da)
        if point is not None:
            return CriterionVerdict(
                status="fails",
                exact=True,
                detail=(
                    "a_%d and p_%d(a_%d) both vanish at the point %r, so "
                    "the ideal they generate is proper"
                    % (i + 1, i + 1, i + 1, point)
                ),
            )
        undecided.append(i + 1)
    if undecided:
        return CriterionVerdict(
            status="undecided",
            exact=False,
            detail=(
                "pairs %r are genuinely multivariate; ideal membership "
                "beyond the univariate case is out of scope" % undecided
            ),
        )
    return CriterionVerdict(
        status="holds",
        exact=True,
        detail="each parameter generates the base ring with its derivative",
    )


def simplicity_check(A: GWPAData, degree: int = 6, alpha_max: int = 4) -> SimplicityReport:
    """Evaluate the three simplicity conditions at the given bounds.

    Condition 3 follows from condition 1 inside the univariate family, where
    the derivation constants collapse to the rationals; otherwise it is
    delegated to :func:`field_criterion`.
    """
    if degree < 0 or alpha_max < 0:
        raise GwpaError("bounds must be nonnegative")
    coefficients = _univariate_family_coefficients(A)
    family = coefficients is not None
    if family:
        condition1 = _family_condition1(A, coefficients)
        condition2 = _family_condition2(A)
        if condition1.status == "holds":
            condition3 = CriterionVerdict(
                status="holds",
                exact=True,
                detail=(
                    "constant nonzero derivation coefficients force the "
                    "derivation constants down to the rationals and kill "
                    "every nonzero-degree component"
                ),
            )
        else:
            condition3 = field_criterion(A, degree, alpha_max)
    else:
        condition1 = _general_condition1(A, degree)
        condition2 = _general_condition2(A)
        condition3 = field_criterion(A, degree, alpha_max)
    statuses = (condition1.status, condition2.status, condition3.status)
    if "fails" in statuses:
        overall = "fails"
    elif all(s == "holds" for s in statuses):
        overall = "holds"
    else:
        overall = "undecided"
    return SimplicityReport(
        condition1=condition1,
        condition2=condition2,
        condition3=condition3,
        overall=overall,
        family=family,
        degree=degree,
        alpha_max=alpha_max,
    )
