"""Named example algebras.

Every constructor returns fully validated :class:`GWPAData`.  The classical
Poisson polynomial algebra in 2n variables, the graded algebras attached to
the enveloping algebras of sl2 and of Heisenberg Lie algebras, and a
configurable family with univariate parameters are provided.
"""

from __future__ import annotations

from typing import Sequence, Union

from .engine import GWPAData
from .errors import GwpaError
from .parser import parse_polynomial
from .poisson import BaseDerivation, BasePoissonAlgebra
from .poly import Polynomial, PolyRing


def p2n(n: int) -> GWPAData:
    """Poisson simple polynomial algebra of rank n.

    Base K[H_1..H_n] with zero bracket, a_i = H_i and p_i = d/dH_i; the
    induced brackets are {Y_i, X_j} = delta_ij with all other generator
    pairs commuting.
    """
    if n < 1:
        raise GwpaError("rank must be at least 1")
    ring = PolyRing(["H%d" % i for i in range(1, n + 1)])
    base = BasePoissonAlgebra.trivial(ring)
    a = tuple(ring.var("H%d" % i) for i in range(1, n + 1))
    partials = tuple(
        BaseDerivation.partial(ring, "H%d" % i) for i in range(1, n + 1)
    )
    return GWPAData.checked(base, a, partials)


def gr_usl2() -> GWPAData:
    """Symmetric algebra of sl2 with its Lie Poisson structure.

    Base K[C, H] with zero bracket, a = C - H^2 and p = d/dH.  Then
    {H, X} = X, {H, Y} = -Y, {X, Y} = 2H, and C = XY + H^2 is Poisson
    central.
    """
    ring = PolyRing(["C", "H"])
    base = BasePoissonAlgebra.trivial(ring)
    a = (ring.var("C") - ring.var("H") ** 2,)
    partials = (BaseDerivation.partial(ring, "H"),)
    return GWPAData.checked(base, a, partials)


def gr_heisenberg(n: int) -> GWPAData:
    """Graded algebra of the rank-n Heisenberg enveloping algebra.

    Base K[H_1..H_n, Z] with zero bracket, a_i = H_i and p_i = Z d/dH_i,
    so {Y_i, X_i} = Z with Z Poisson central.
    """
    if n < 1:
        raise GwpaError("rank must be at least 1")
    names = ["H%d" % i for i in range(1, n + 1)] + ["Z"]
    ring = PolyRing(names)
    base = BasePoissonAlgebra.trivial(ring)
    z = ring.var("Z")
    a = tuple(ring.var("H%d" % i) for i in range(1, n + 1))
    partials = tuple(
        BaseDerivation.from_images(ring, {"H%d" % i: z}) for i in range(1, n + 1)
    )
    return GWPAData.checked(base, a, partials)


PolyLike = Union[str, Polynomial]


def univariate_family(
    a: Sequence[PolyLike], b: Sequence[PolyLike]
) -> GWPAData:
    """Rank-n family with univariate data: a_i in K[H_i], p_i = b_i d/dH_i.

    ``a`` and ``b`` may be polynomial strings (in variables H1..Hn) or
    polynomials over the standard base ring K[H1..Hn].  Entries that are
    not univariate in their own variable are rejected.
    """
    n = len(a)
    if n < 1 or len(b) != n:
        raise GwpaError("need equally many parameters and coefficients, at least one")
    ring = PolyRing(["H%d" % i for i in range(1, n + 1)])
    base = BasePoissonAlgebra.trivial(ring)

    def resolve(entry: PolyLike, which: str, i: int) -> Polynomial:
        if isinstance(entry, str):
            poly = parse_polynomial(entry, ring)
        elif isinstance(entry, Polynomial):
            if entry.ring != ring:
                raise GwpaError(
                    "%s_%d must live over %r" % (which, i, ring)
                )
            poly = entry
        else:
            raise GwpaError("%s_%d must be a string or polynomial" % (which, i))
        used = poly.variables_used()
        own = "H%d" % i
        if any(v != own for v in used):
            raise GwpaError(
                "%s_%d must be univariate in %s, got %s" % (which, i, own, poly)
            )
        return poly

    a_polys = tuple(resolve(entry, "a", i) for i, entry in enumerate(a, start=1))
    b_polys = tuple(resolve(entry, "b", i) for i, entry in enumerate(b, start=1))
    partials = tuple(
        BaseDerivation.from_images(ring, {"H%d" % i: b_polys[i - 1]})
        for i in range(1, n + 1)
    )
    return GWPAData.checked(base, a_polys, partials)


def gallery(name: str, **params) -> GWPAData:
    """Dispatch by name: p2n, gr_usl2, gr_heisenberg or univariate_family."""
    if name == "p2n":
        return p2n(int(params.pop("n", 1)))
    if name == "gr_usl2":
        return gr_usl2()
    if name == "gr_heisenberg":
        return gr_heisenberg(int(params.pop("n", 1)))
    if name == "univariate_family":
        return univariate_family(params.pop("a"), params.pop("b"))
    raise GwpaError("unknown gallery algebra %r" % name)
