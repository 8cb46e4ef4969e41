"""Reading and writing algebra descriptions as JSON documents.

A document carries one of three kinds of data.  Kind "gwpa" lists the base
variables, the bracket matrix, the parameters and the derivation images.
Kind "gwa" lists the base variables with weights, the parameters with their
weighted degrees, the affine substitution images and the filtration drop.
Kind "ore" lists a base bracket with derivations and central parameters and
builds the algebra realized by :func:`gwpa.engine.from_ore_data`.  All
polynomial entries are strings in the shared grammar; rendering is canonical
so documents round-trip byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .engine import GWPAData, from_ore_data
from .errors import GwpaError, ParseError, SpecError, ValidationFailure
from .parser import parse_polynomial
from .poisson import BaseDerivation, BasePoissonAlgebra
from .poly import PolyRing, Polynomial, render_polynomial
from .quant import AffineSubstitution, GWAData

_KEY_ORDER = (
    "kind",
    "gallery",
    "variables",
    "weights",
    "bracket",
    "rank",
    "a",
    "degrees",
    "nu",
    "partials",
    "sigmas",
    "alphas",
)

_REQUIRED = {
    "gwpa": ("variables", "bracket", "rank", "a", "partials"),
    "gwa": ("variables", "weights", "rank", "a", "degrees", "nu", "sigmas"),
    "ore": ("variables", "bracket", "rank", "partials", "alphas"),
}


@dataclass(frozen=True)
class AlgebraSpec:
    """A validated algebra description with canonical string entries."""

    kind: str
    variables: tuple[str, ...]
    rank: int
    bracket: tuple[tuple[str, ...], ...] | None = None
    weights: tuple[int, ...] | None = None
    a: tuple[str, ...] | None = None
    degrees: tuple[int, ...] | None = None
    nu: int | None = None
    partials: tuple[tuple[str, ...], ...] | None = None
    sigmas: tuple[tuple[str, ...], ...] | None = None
    alphas: tuple[str, ...] | None = None
    gallery: tuple[tuple[str, object], ...] | None = None

    def build(self):
        """Construct the described algebra, re-running all validations.

        Returns GWPAData for kind "gwpa", GWAData for kind "gwa" and an
        OreRealization for kind "ore".
        """
        return _build(self)


def _string_list(value, location, length=None) -> tuple[str, ...]:
    if not isinstance(value, list) or any(not isinstance(s, str) for s in value):
        raise SpecError("expected a list of strings", location)
    if length is not None and len(value) != length:
        raise SpecError(
            "expected %d entries, found %d" % (length, len(value)), location
        )
    return tuple(value)


def _int_list(value, location, length) -> tuple[int, ...]:
    if not isinstance(value, list) or any(
        not isinstance(x, int) or isinstance(x, bool) for x in value
    ):
        raise SpecError("expected a list of integers", location)
    if len(value) != length:
        raise SpecError(
            "expected %d entries, found %d" % (length, len(value)), location
        )
    return tuple(value)


def _poly(text: str, ring: PolyRing, location: str) -> Polynomial:
    try:
        return parse_polynomial(text, ring)
    except ParseError as exc:
        raise SpecError(str(exc), location) from exc


def _matrix(value, ring, location, rows, cols):
    if not isinstance(value, list) or len(value) != rows:
        raise SpecError("expected %d rows" % rows, location)
    parsed = []
    for i, row in enumerate(value):
        entries = _string_list(row, "%s[%d]" % (location, i), cols)
        parsed.append(
            tuple(
                _poly(text, ring, "%s[%d][%d]" % (location, i, j))
                for j, text in enumerate(entries)
            )
        )
    return tuple(parsed)


def _make_ring(variables, location) -> PolyRing:
    try:
        return PolyRing(variables)
    except GwpaError as exc:
        raise SpecError(str(exc), location) from exc


def _canonical_gallery(value) -> tuple[tuple[str, object], ...]:
    if not isinstance(value, dict):
        raise SpecError("expected an object", "gallery")
    name = value.get("name")
    if not isinstance(name, str):
        raise SpecError("expected a string name", "gallery.name")
    params = value.get("params", {})
    if not isinstance(params, dict):
        raise SpecError("expected an object", "gallery.params")
    extras = set(value) - {"name", "params"}
    if extras:
        raise SpecError("unknown keys %r" % sorted(extras), "gallery")
    items = [("name", name)]
    for key in sorted(params):
        val = params[key]
        if not isinstance(val, int) or isinstance(val, bool):
            raise SpecError("expected an integer", "gallery.params.%s" % key)
        items.append((key, val))
    return tuple(items)


def parse_algebra_spec(text: str) -> AlgebraSpec:
    """Parse and fully validate a JSON algebra description.

    Every polynomial string is reparsed and canonically re-rendered, and the
    described algebra is built once so that structural violations surface
    here with field locations rather than later.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("not valid JSON: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise SpecError("top level must be an object")
    kind = doc.get("kind")
    if kind not in _REQUIRED:
        raise SpecError(
            "kind must be one of %s" % ", ".join(sorted(_REQUIRED)), "kind"
        )
    allowed = set(_REQUIRED[kind]) | {"kind", "gallery"}
    extras = set(doc) - allowed
    if extras:
        raise SpecError("unknown keys %r for kind %s" % (sorted(extras), kind))
    missing = [key for key in _REQUIRED[kind] if key not in doc]
    if missing:
        raise SpecError("missing keys %r for kind %s" % (missing, kind))

    variables = _string_list(doc["variables"], "variables")
    ring = _make_ring(variables, "variables")
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise SpecError("expected a positive integer", "rank")

    fields: dict = {
        "kind": kind,
        "variables": variables,
        "rank": rank,
    }
    if "gallery" in doc:
        fields["gallery"] = _canonical_gallery(doc["gallery"])

    nvars = ring.nvars
    if kind == "gwpa":
        bracket = _matrix(doc["bracket"], ring, "bracket", nvars, nvars)
        a = [
            _poly(text, ring, "a[%d]" % i)
            for i, text in enumerate(_string_list(doc["a"], "a", rank))
        ]
        partials = _matrix(doc["partials"], ring, "partials", rank, nvars)
        fields["bracket"] = tuple(
            tuple(render_polynomial(p) for p in row) for row in bracket
        )
        fields["a"] = tuple(render_polynomial(p) for p in a)
        fields["partials"] = tuple(
            tuple(render_polynomial(p) for p in row) for row in partials
        )
    elif kind == "gwa":
        fields["weights"] = _int_list(doc["weights"], "weights", nvars)
        a = [
            _poly(text, ring, "a[%d]" % i)
            for i, text in enumerate(_string_list(doc["a"], "a", rank))
        ]
        fields["a"] = tuple(render_polynomial(p) for p in a)
        fields["degrees"] = _int_list(doc["degrees"], "degrees", rank)
        nu = doc["nu"]
        if not isinstance(nu, int) or isinstance(nu, bool):
            raise SpecError("expected an integer", "nu")
        fields["nu"] = nu
        sigmas = _matrix(doc["sigmas"], ring, "sigmas", rank, nvars)
        fields["sigmas"] = tuple(
            tuple(render_polynomial(p) for p in row) for row in sigmas
        )
    else:
        bracket = _matrix(doc["bracket"], ring, "bracket", nvars, nvars)
        partials = _matrix(doc["partials"], ring, "partials", rank, nvars)
        alphas = [
            _poly(text, ring, "alphas[%d]" % i)
            for i, text in enumerate(_string_list(doc["alphas"], "alphas", rank))
        ]
        fields["bracket"] = tuple(
            tuple(render_polynomial(p) for p in row) for row in bracket
        )
        fields["partials"] = tuple(
            tuple(render_polynomial(p) for p in row) for row in partials
        )
        fields["alphas"] = tuple(render_polynomial(p) for p in alphas)

    spec = AlgebraSpec(**fields)
    _build(spec)
    return spec


def _build(spec: AlgebraSpec):
    ring = _make_ring(spec.variables, "variables")
    if spec.kind == "gwpa":
        matrix = [
            [parse_polynomial(text, ring) for text in row] for row in spec.bracket
        ]
        try:
            base = BasePoissonAlgebra(ring, matrix)
        except GwpaError as exc:
            raise SpecError(str(exc), "bracket") from exc
        a = tuple(parse_polynomial(text, ring) for text in spec.a)
        partials = tuple(
            BaseDerivation(ring, tuple(parse_polynomial(text, ring) for text in row))
            for row in spec.partials
        )
        try:
            return GWPAData.checked(base, a, partials)
        except ValidationFailure as exc:
            raise SpecError(str(exc)) from exc
    if spec.kind == "gwa":
        sigmas = []
        for i, row in enumerate(spec.sigmas):
            images = tuple(parse_polynomial(text, ring) for text in row)
            try:
                sigmas.append(AffineSubstitution(ring, images))
            except GwpaError as exc:
                raise SpecError(str(exc), "sigmas[%d]" % i) from exc
        a = tuple(parse_polynomial(text, ring) for text in spec.a)
        try:
            return GWAData(ring, sigmas, a, spec.weights, spec.degrees, spec.nu)
        except GwpaError as exc:
            raise SpecError(str(exc)) from exc
    matrix = [
        [parse_polynomial(text, ring) for text in row] for row in spec.bracket
    ]
    try:
        base = BasePoissonAlgebra(ring, matrix)
    except GwpaError as exc:
        raise SpecError(str(exc), "bracket") from exc
    partials = tuple(
        BaseDerivation(ring, tuple(parse_polynomial(text, ring) for text in row))
        for row in spec.partials
    )
    alphas = tuple(parse_polynomial(text, ring) for text in spec.alphas)
    try:
        return from_ore_data(base, partials, alphas)
    except (GwpaError, ValidationFailure) as exc:
        raise SpecError(str(exc)) from exc


def render_algebra_spec(spec: AlgebraSpec) -> str:
    """Serialize with a fixed key order; output ends with a newline."""
    doc: dict = {}
    for key in _KEY_ORDER:
        value = getattr(spec, key, None)
        if value is None:
            continue
        if key == "gallery":
            items = dict(value)
            doc[key] = {
                "name": items.pop("name"),
                "params": {k: items[k] for k in sorted(items)},
            }
        elif key in ("bracket", "partials", "sigmas"):
            doc[key] = [list(row) for row in value]
        elif key in ("variables", "weights", "a", "degrees", "alphas"):
            doc[key] = list(value)
        else:
            doc[key] = value
    return json.dumps(doc, indent=2) + "\n"


def spec_from_gwpa(A: GWPAData, gallery=None) -> AlgebraSpec:
    """Export defining data; the result parses back to an equal algebra."""
    ring = A.base_ring
    fields = {
        "kind": "gwpa",
        "variables": ring.variables,
        "rank": A.rank,
        "bracket": tuple(
            tuple(render_polynomial(p) for p in row) for row in A.base.matrix
        ),
        "a": tuple(render_polynomial(p) for p in A.a),
        "partials": tuple(
            tuple(render_polynomial(p) for p in der.images) for der in A.partials
        ),
    }
    if gallery is not None:
        fields["gallery"] = _canonical_gallery(gallery)
    return AlgebraSpec(**fields)


def spec_from_gwa(A: GWAData, gallery=None) -> AlgebraSpec:
    fields = {
        "kind": "gwa",
        "variables": A.ring.variables,
        "rank": A.rank,
        "weights": A.weights,
        "a": tuple(render_polynomial(p) for p in A.a),
        "degrees": A.degrees,
        "nu": A.nu,
        "sigmas": tuple(
            tuple(render_polynomial(img) for img in sigma.images)
            for sigma in A.sigmas
        ),
    }
    if gallery is not None:
        fields["gallery"] = _canonical_gallery(gallery)
    return AlgebraSpec(**fields)
