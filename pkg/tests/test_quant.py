"""Filtered algebras with shift operators and the graded correspondence."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gwpa.errors import AlgebraMismatchError, GwpaError
from gwpa.gallery import gr_usl2, p2n
from gwpa.poly import PolyRing
from gwpa.quant import (
    AffineSubstitution,
    GWAData,
    gr_correspondence_check,
    predicted_gwpa,
    usl2_gwa,
    weyl_gwa,
)

from sampling import random_element


def test_substitution_call_and_compose():
    ring = PolyRing(["H"])
    H = ring.var("H")
    tau = AffineSubstitution.from_map(ring, {"H": 2 * H + 1})
    sig = AffineSubstitution.from_map(ring, {"H": H - 1})
    assert tau(H ** 2) == (2 * H + 1) ** 2
    assert sig.compose(tau)(H) == 2 * H - 1
    assert tau.compose(sig)(H) == 2 * H
    assert sig.compose(tau)(H) == sig(tau(H))
    identity = AffineSubstitution.identity(ring)
    assert identity.compose(sig) == sig
    assert sig.compose(identity) == sig


def test_substitution_inverse():
    ring = PolyRing(["H"])
    H = ring.var("H")
    aff = AffineSubstitution.from_map(ring, {"H": 2 * H + 3})
    inv = aff.inverse()
    assert inv(H) == Fraction(1, 2) * H - Fraction(3, 2)
    assert aff.compose(inv) == AffineSubstitution.identity(ring)
    assert inv.compose(aff) == AffineSubstitution.identity(ring)

    plane = PolyRing(["H1", "H2"])
    H1, H2 = plane.gens()
    shear = AffineSubstitution.from_map(plane, {"H1": H1 + H2, "H2": H2 - 1})
    assert shear.inverse().compose(shear) == AffineSubstitution.identity(plane)
    squash = AffineSubstitution.from_map(plane, {"H1": H1 + H2, "H2": H1 + H2})
    with pytest.raises(GwpaError):
        squash.inverse()
    with pytest.raises(GwpaError):
        AffineSubstitution.from_map(ring, {"H": H ** 2})


def test_algebra_data_validation():
    ring = PolyRing(["H1", "H2"])
    H1, H2 = ring.gens()
    shift1 = AffineSubstitution.from_map(ring, {"H1": H1 - 1})
    shift2 = AffineSubstitution.from_map(ring, {"H2": H2 - 1})
    twisted = AffineSubstitution.from_map(ring, {"H2": H2 - H1})

    GWAData(ring, (shift1, shift2), (H1, H2), (1, 1), (1, 1))
    with pytest.raises(GwpaError, match="do not commute"):
        GWAData(ring, (shift1, twisted), (H1, H2), (1, 1), (1, 1))
    with pytest.raises(GwpaError, match="weighted degree"):
        GWAData(ring, (shift1, shift2), (H1, H2), (1, 1), (2, 1))
    with pytest.raises(GwpaError, match="must fix parameter"):
        both = AffineSubstitution.from_map(ring, {"H1": H1 - 1, "H2": H2 - 1})
        GWAData(ring, (both, shift2), (H1, H2), (1, 1), (1, 1))
    with pytest.raises(GwpaError, match="filtration drop"):
        GWAData(ring, (shift1, shift2), (H1, H2), (1, 1), (1, 1), nu=0)
    with pytest.raises(GwpaError, match="weights must be positive"):
        GWAData(ring, (shift1, shift2), (H1, H2), (0, 1), (1, 1))

    line = PolyRing(["H"])
    H = line.var("H")
    scaling = AffineSubstitution.from_map(line, {"H": 2 * H})
    with pytest.raises(GwpaError, match="exceeding"):
        GWAData(line, (scaling,), (H,), (1,), (1,))


def test_weyl_products():
    A = weyl_gwa(1)
    H = A.ring.var("H1")
    X, Y = A.X(1), A.Y(1)
    assert Y * X == A.scalar(H)
    assert X * Y == A.scalar(H - 1)
    assert Y.commutator(X) == A.one()
    assert X.commutator(A.scalar(H)) == -X
    assert X * X * Y == A.scalar(H - 2) * X
    assert Y * Y * X == A.scalar(H + 1) * Y

    B = weyl_gwa(2)
    assert B.Y(1).commutator(B.X(1)) == B.one()
    assert B.Y(2).commutator(B.X(2)) == B.one()
    assert B.X(1).commutator(B.Y(2)).is_zero
    assert B.X(1) * B.X(2) == B.X(2) * B.X(1)


def test_usl2_products_and_casimir():
    B = usl2_gwa()
    C = B.ring.var("C")
    H = B.ring.var("H")
    X, Y = B.X(1), B.Y(1)
    assert Y * X == B.scalar(C - H * (H + 1))
    assert X * Y == B.scalar(C - H * (H - 1))
    assert X.commutator(Y) == B.scalar(2 * H)
    assert B.scalar(H).commutator(X) == X
    assert B.scalar(H).commutator(Y) == -Y
    casimir = Y * X + B.scalar(H * (H + 1))
    assert casimir == B.scalar(C)
    assert all(casimir.commutator(g).is_zero for g in B.generators())


def test_shifted_parameters_and_contraction():
    A = weyl_gwa(1)
    H = A.ring.var("H1")
    assert A.shifted_parameter(0, 0) == H
    assert A.shifted_parameter(0, 2) == H - 2
    assert A.shifted_parameter(0, -1) == H + 1
    assert A.contraction_factor(0, 1, -1) == H - 1
    assert A.contraction_factor(0, 2, -1) == H - 2
    assert A.contraction_factor(0, -1, 1) == H
    assert A.contraction_factor(0, -2, 2) == H * (H + 1)
    assert A.contraction_factor(0, 2, 1) == A.ring.one()
    assert A.contraction_factor(0, 0, -3) == A.ring.one()


def test_associativity_randomized():
    rng = random.Random(137)
    for A in (weyl_gwa(1), weyl_gwa(2), usl2_gwa()):
        for _ in range(25):
            u = random_element(A, rng, bound=3)
            v = random_element(A, rng, bound=3)
            w = random_element(A, rng, bound=3)
            assert (u * v) * w == u * (v * w)
            assert u * (v + w) == u * v + u * w
            assert (u + v) * w == u * w + v * w


def test_filtration_degrees():
    A = weyl_gwa(1)
    H = A.scalar(A.ring.var("H1"))
    assert A.X(1).degree == Fraction(1, 2)
    assert H.degree == 1
    assert (A.X(1) * A.Y(1)).degree == 1
    assert A.zero().degree == float("-inf")

    B = usl2_gwa()
    assert B.X(1).degree == 1
    assert B.scalar(B.ring.var("C")).degree == 2
    assert (B.X(1) + B.Y(1)).degree == 1

    rng = random.Random(149)
    for algebra in (A, B):
        for _ in range(20):
            u = random_element(algebra, rng, bound=3)
            v = random_element(algebra, rng, bound=3)
            if u.is_zero or v.is_zero:
                continue
            assert (u * v).degree <= u.degree + v.degree
            assert u.commutator(v).degree <= u.degree + v.degree - algebra.nu


def test_homogeneous_slices():
    B = usl2_gwa()
    C = B.ring.var("C")
    H = B.ring.var("H")
    u = B.Y(1) * B.X(1)
    assert u == B.scalar(C - H ** 2 - H)
    assert u.degree == 2
    assert u.leading_part() == B.scalar(C - H ** 2)
    assert u.homogeneous_part(1) == B.scalar(-H)
    assert u.homogeneous_part(Fraction(1, 2)).is_zero
    assert u.homogeneous_part(7).is_zero
    mixed = B.X(1) + B.scalar(H)
    assert mixed.leading_part() == mixed
    assert B.zero().leading_part().is_zero


def test_predicted_poisson_structures():
    assert predicted_gwpa(weyl_gwa(1)) == p2n(1)
    assert predicted_gwpa(weyl_gwa(2)) == p2n(2)
    assert predicted_gwpa(usl2_gwa()) == gr_usl2()


def test_correspondence_on_usl2():
    B = usl2_gwa()
    C = B.scalar(B.ring.var("C"))
    H = B.scalar(B.ring.var("H"))
    named = [B.X(1), B.Y(1), H, C]
    pairs = [(u, v) for u in named for v in named]
    report = gr_correspondence_check(B, pairs)
    assert report.all_match
    assert report.predicted == gr_usl2()
    assert len(report.pairs) == 16
    first = report.pairs[1]
    assert (first.left, first.right) == (B.X(1), B.Y(1))
    assert first.expected_degree == 1
    assert str(first.graded_bracket) == "2*H"
    assert first.graded_bracket == first.predicted_bracket


def test_correspondence_on_weyl():
    A = weyl_gwa(1)
    H = A.scalar(A.ring.var("H1"))
    report = gr_correspondence_check(
        A, [(A.Y(1), A.X(1)), (A.X(1), H), (A.X(1) * A.X(1), A.Y(1))]
    )
    assert report.all_match
    spot = report.pairs[0]
    assert spot.commutator == A.one()
    assert spot.expected_degree == 0
    assert str(spot.predicted_bracket) == "1"


def test_correspondence_input_errors():
    A = weyl_gwa(1)
    with pytest.raises(GwpaError):
        gr_correspondence_check(A, [(A.zero(), A.X(1))])
    with pytest.raises(AlgebraMismatchError):
        gr_correspondence_check(A, [(usl2_gwa().X(1), A.X(1))])
    with pytest.raises(GwpaError):
        gr_correspondence_check(A, [(A.ring.var("H1"), A.X(1))])


def test_element_coercion_and_errors():
    A = weyl_gwa(1)
    H = A.ring.var("H1")
    assert H * A.X(1) == A.scalar(H) * A.X(1)
    assert A.X(1) * H == A.X(1) * A.scalar(H)
    assert 2 + A.X(1) == A.X(1) + A.scalar(2)
    assert (1 - A.one()).is_zero
    with pytest.raises(AlgebraMismatchError):
        A.X(1) + usl2_gwa().X(1)
    with pytest.raises(GwpaError):
        A.X(1) ** -2
    with pytest.raises(GwpaError):
        A.v((1, 1))
    assert str(A.scalar(H) * A.Y(1)) == "H1*Y1"
