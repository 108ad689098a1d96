from fractions import Fraction

import numpy as np
import pytest

from surfaceverifier.exceptions import DivisionByZeroError, UnsupportedPlaceError, ArgumentError
from surfaceverifier.symbolic import BFieldElement, Place, valuation, substitute, to_fraction, evaluate, degree, \
    rational_function, LAM, XI, ETA, T, XI_B, ETA_B, INFINITY, POLYNOMIAL_RING


class TestBFieldElement:
    def test_relation(self):
        assert ETA_B * ETA_B == BFieldElement(XI ** 3 - 1728)

    def test_normal_form(self):
        f = BFieldElement.from_rational_function(ETA ** 3 + XI * ETA ** 2)
        assert f == BFieldElement(XI * (XI ** 3 - 1728), XI ** 3 - 1728)

    def test_inverse(self):
        f = XI_B + ETA_B
        assert f * f.inverse() == 1
        assert (XI_B / ETA_B) * ETA_B == XI_B

    def test_norm(self):
        assert ETA_B.norm() == -(XI ** 3 - 1728)
        assert ETA_B.conjugate() == -ETA_B

    def test_rejects_other_variables(self):
        with pytest.raises(ArgumentError):
            BFieldElement(T)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            BFieldElement(0).inverse()

    def test_round_trip_through_rational_function(self):
        f = XI_B ** 2 - 3 * ETA_B / XI_B
        assert f.normalized() == f


class TestValuation:
    @pytest.mark.parametrize("f,expected", [
        (XI_B, -2),
        (ETA_B, -3),
        (XI_B / ETA_B, 1),
        (BFieldElement(6 ** 12), 0),
        (XI_B + ETA_B, -3),
    ])
    def test_origin(self, f, expected):
        assert valuation(f, Place.origin()) == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_uniformizer_powers(self, n):
        assert valuation((XI_B / ETA_B) ** n, Place.origin()) == n

    def test_uniformizer(self):
        assert valuation(Place.origin().uniformizer, Place.origin()) == 1
        assert valuation(Place.infinity().uniformizer, Place.infinity()) == 1

    def test_zero(self):
        assert valuation(BFieldElement(0), Place.origin()) == INFINITY
        assert valuation(rational_function(0), Place.infinity()) == INFINITY

    def test_finite_place(self):
        place = Place.finite(T ** 2 + 1728)
        assert valuation((T ** 2 + 1728) ** 3 * T, place) == 3
        assert valuation(1 / (T ** 2 + 1728), place) == -1
        assert valuation(T, place) == 0

    def test_infinity(self):
        assert valuation(T ** 3, Place.infinity()) == -3
        assert valuation(1 / (T ** 2 + 1), Place.infinity()) == 2

    def test_reducible_place(self):
        with pytest.raises(UnsupportedPlaceError):
            Place.finite(T ** 2 - 1)

    def test_characteristic_three(self):
        with pytest.raises(UnsupportedPlaceError):
            valuation(T, Place('infinity', characteristic=3))

    @pytest.mark.parametrize("place", [Place.finite(T, characteristic=2), Place.infinity(characteristic=3)])
    def test_characteristic_from_constructors(self, place):
        with pytest.raises(UnsupportedPlaceError):
            valuation(T + 1, place)

    def test_eta_over_the_t_line(self):
        with pytest.raises(UnsupportedPlaceError):
            valuation(ETA_B, Place.infinity())


class TestEvaluation:
    def test_substitute(self):
        assert to_fraction(substitute(LAM ** 2 + 1, lam=2)) == 5
        assert to_fraction(substitute(1 / (3 * LAM), lam=2)) == Fraction(1, 6)

    def test_substitute_pole(self):
        with pytest.raises(DivisionByZeroError):
            substitute(1 / (LAM - 2), lam=2)

    def test_to_fraction_requires_constant(self):
        with pytest.raises(ArgumentError):
            to_fraction(LAM)

    def test_evaluate_on_the_base(self):
        assert evaluate(T ** 2 + 1728, T, ETA_B) == XI_B ** 3

    def test_evaluate_rational(self):
        assert evaluate(T ** 2 / (T + 1), T, Fraction(1, 2)) == Fraction(1, 6)

    def test_degree(self):
        assert degree((T ** 3 + 1).numer, T) == 3
        assert degree(POLYNOMIAL_RING.zero, T) == -1


def _random_rational(rng, variable):
    numer = sum(int(c) * variable ** i for i, c in enumerate(rng.integers(-5, 6, size=4)))
    denom = variable ** 3 + sum(int(c) * variable ** i for i, c in enumerate(rng.integers(-5, 6, size=3)))
    return numer / denom


def _random_function(rng, place):
    k = int(rng.integers(-2, 3))
    if place.kind == 'origin':
        return place.uniformizer ** k * BFieldElement(_random_rational(rng, XI), _random_rational(rng, XI))
    return place.uniformizer ** k * _random_rational(rng, place.variable)


class TestValuationProperties:
    PLACES = [Place.finite(T ** 2 + 1728), Place.finite(T - 1), Place.infinity(), Place.origin()]

    @pytest.mark.parametrize("place", PLACES, ids=str)
    def test_additive(self, place):
        rng = np.random.default_rng(7)
        for _ in range(100):
            f, g = _random_function(rng, place), _random_function(rng, place)
            assert valuation(f * g, place) == valuation(f, place) + valuation(g, place)

    @pytest.mark.parametrize("place", PLACES, ids=str)
    def test_ultrametric(self, place):
        rng = np.random.default_rng(11)
        for _ in range(100):
            f, g = _random_function(rng, place), _random_function(rng, place)
            assert valuation(f + g, place) >= min(valuation(f, place), valuation(g, place))
