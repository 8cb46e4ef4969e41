"""Poisson structures and derivations on rational polynomial rings.

A base Poisson algebra is a polynomial ring together with an antisymmetric
bracket matrix on its generators.  The bracket extends to arbitrary
polynomials as a biderivation.  Because the Jacobiator of an antisymmetric
biderivation is a derivation in each argument, checking the Jacobi identity
on generator triples decides it globally; construction fails fast when the
check fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import BracketMatrixError, GwpaError, JacobiViolationError
from .poly import Polynomial, PolyRing


@dataclass(frozen=True)
class JacobiReport:
    """Outcome of a Jacobi check on a candidate bracket matrix.

    ``failing_triple`` holds one-based generator indices of the first
    violation in lexicographic order, with the offending Jacobiator.
    """

    holds: bool
    failing_triple: tuple[int, int, int] | None = None
    jacobiator: Polynomial | None = None


def _as_matrix(ring: PolyRing, matrix) -> tuple[tuple[Polynomial, ...], ...]:
    n = ring.nvars
    rows = tuple(tuple(row) for row in matrix)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise BracketMatrixError(
            "bracket matrix must be %d x %d for ring %r" % (n, n, ring)
        )
    for row in rows:
        for entry in row:
            if not isinstance(entry, Polynomial) or entry.ring != ring:
                raise BracketMatrixError(
                    "bracket matrix entries must be polynomials over %r" % (ring,)
                )
    for j in range(n):
        if not rows[j][j].is_zero:
            raise BracketMatrixError(
                "bracket matrix diagonal entry %d is nonzero: %s" % (j + 1, rows[j][j])
            )
        for k in range(j + 1, n):
            if rows[j][k] != -rows[k][j]:
                raise BracketMatrixError(
                    "bracket matrix is not antisymmetric at (%d, %d)" % (j + 1, k + 1)
                )
    return rows


def _biderivation_bracket(ring, matrix, f, g):
    result = ring.zero()
    n = ring.nvars
    partials_f = None
    partials_g = None
    for j in range(n):
        row = matrix[j]
        for k in range(n):
            entry = row[k]
            if entry.is_zero:
                continue
            if partials_f is None:
                partials_f = [f.partial(v) for v in ring.variables]
                partials_g = [g.partial(v) for v in ring.variables]
            if partials_f[j].is_zero or partials_g[k].is_zero:
                continue
            result = result + partials_f[j] * partials_g[k] * entry
    return result


def jacobi_check(ring: PolyRing, matrix) -> JacobiReport:
    """Check the Jacobi identity for a candidate bracket matrix.

    The matrix must already be antisymmetric with zero diagonal.  Returns
    the first failing generator triple, if any.
    """
    rows = _as_matrix(ring, matrix)
    gens = ring.gens()
    n = ring.nvars
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                jac = (
                    _biderivation_bracket(ring, rows, gens[i], rows[j][k])
                    + _biderivation_bracket(ring, rows, gens[j], rows[k][i])
                    + _biderivation_bracket(ring, rows, gens[k], rows[i][j])
                )
                if not jac.is_zero:
                    return JacobiReport(False, (i + 1, j + 1, k + 1), jac)
    return JacobiReport(True)


class BasePoissonAlgebra:
    """Polynomial ring with a validated Poisson bracket on its generators.

    The constructor rejects matrices that are not antisymmetric or fail the
    Jacobi identity, so every live instance is a genuine Poisson algebra.
    """

    __slots__ = ("ring", "matrix", "_trivial")

    def __init__(self, ring: PolyRing, matrix):
        rows = _as_matrix(ring, matrix)
        report = jacobi_check(ring, rows)
        if not report.holds:
            raise JacobiViolationError(report.failing_triple, report.jacobiator)
        self.ring = ring
        self.matrix = rows
        self._trivial = all(entry.is_zero for row in rows for entry in row)

    @classmethod
    def trivial(cls, ring: PolyRing) -> "BasePoissonAlgebra":
        zero = ring.zero()
        n = ring.nvars
        return cls(ring, tuple(tuple(zero for _ in range(n)) for _ in range(n)))

    @property
    def is_trivial(self) -> bool:
        return self._trivial

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        """Poisson bracket of two polynomials."""
        if self._trivial:
            return self.ring.zero()
        return _biderivation_bracket(self.ring, self.matrix, f, g)

    def jacobiator(self, f, g, h) -> Polynomial:
        """{f,{g,h}} + {g,{h,f}} + {h,{f,g}}, identically zero here."""
        return (
            self.bracket(f, self.bracket(g, h))
            + self.bracket(g, self.bracket(h, f))
            + self.bracket(h, self.bracket(f, g))
        )

    def __eq__(self, other):
        return (
            isinstance(other, BasePoissonAlgebra)
            and self.ring == other.ring
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.ring, self.matrix))

    def __repr__(self):
        kind = "trivial" if self._trivial else "nontrivial"
        return "BasePoissonAlgebra(%r, %s bracket)" % (self.ring, kind)


@dataclass(frozen=True)
class BaseDerivation:
    """A derivation of a polynomial ring, stored by its generator images.

    Application uses the chain rule, so the map is determined by and agrees
    with its images on generators.
    """

    ring: PolyRing
    images: tuple[Polynomial, ...]

    @classmethod
    def from_images(
        cls, ring: PolyRing, images: Mapping[str, Polynomial]
    ) -> "BaseDerivation":
        """Build from a name-to-image map; omitted variables map to zero."""
        for name in images:
            ring.index(name)
        filled = tuple(
            images.get(name, ring.zero()) for name in ring.variables
        )
        for img in filled:
            if img.ring != ring:
                raise GwpaError("derivation image lives in a different ring")
        return cls(ring, filled)

    @classmethod
    def partial(cls, ring: PolyRing, name: str) -> "BaseDerivation":
        """The coordinate derivation d/d(name)."""
        return cls.from_images(ring, {name: ring.one()})

    @classmethod
    def zero(cls, ring: PolyRing) -> "BaseDerivation":
        return cls(ring, tuple(ring.zero() for _ in ring.variables))

    def image_of(self, name: str) -> Polynomial:
        return self.images[self.ring.index(name)]

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise GwpaError("derivation applied to polynomial over a different ring")
        result = self.ring.zero()
        for name, image in zip(self.ring.variables, self.images):
            if image.is_zero:
                continue
            df = f.partial(name)
            if not df.is_zero:
                result = result + image * df
        return result

    def negated(self) -> "BaseDerivation":
        return BaseDerivation(self.ring, tuple(-img for img in self.images))

    def scaled(self, factor) -> "BaseDerivation":
        return BaseDerivation(self.ring, tuple(img * factor for img in self.images))

    def embedded(self, target: PolyRing, rename=None) -> "BaseDerivation":
        """Zero-extend onto a larger ring, optionally renaming variables."""
        rename = dict(rename or {})
        images = {}
        for name, image in zip(self.ring.variables, self.images):
            images[rename.get(name, name)] = image.embed(target, rename)
        return BaseDerivation.from_images(target, images)

    @property
    def is_zero(self) -> bool:
        return all(img.is_zero for img in self.images)

    def __repr__(self):
        parts = [
            "%s -> %s" % (name, img)
            for name, img in zip(self.ring.variables, self.images)
            if not img.is_zero
        ]
        return "BaseDerivation(%s)" % ("; ".join(parts) or "0")


def is_poisson_derivation(D: BasePoissonAlgebra, der: BaseDerivation) -> bool:
    """Whether the derivation respects the bracket.

    The defect d{a,b} - {da,b} - {a,db} is a biderivation in (a, b), so
    vanishing on generator pairs decides the property.
    """
    if der.ring != D.ring:
        raise GwpaError("derivation and Poisson algebra live over different rings")
    gens = D.ring.gens()
    n = D.ring.nvars
    for j in range(n):
        for k in range(j + 1, n):
            lhs = der(D.matrix[j][k])
            rhs = D.bracket(der.images[j], gens[k]) + D.bracket(gens[j], der.images[k])
            if lhs != rhs:
                return False
    return True


def derivations_commute(ders: Sequence[BaseDerivation]) -> bool:
    """Whether all pairs commute; a commutator of derivations is again a
    derivation, so generator images decide it."""
    for i in range(len(ders)):
        for j in range(i + 1, len(ders)):
            a, b = ders[i], ders[j]
            if a.ring != b.ring:
                raise GwpaError("derivations live over different rings")
            for img_b, img_a in zip(b.images, a.images):
                if a(img_b) != b(img_a):
                    return False
    return True
