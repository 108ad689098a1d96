from fractions import Fraction

import pytest

from surfaceverifier.curves import WeierstrassCurve
from surfaceverifier.exceptions import ClassificationError, UnsupportedFiberError, UnsupportedPlaceError, \
    ArgumentError
from surfaceverifier.kodaira import KodairaType, classify_fiber, classify_valuations, fiber_data, fiber_point_count, \
    minimal_model_at, dual_graph
from surfaceverifier.surfaces import SurfaceModel
from surfaceverifier.symbolic import Place, T


class TestKodairaType:
    @pytest.mark.parametrize("symbol,family,n", [
        ("I0", "I", 0),
        ("I5", "I", 5),
        ("I6*", "I*", 6),
        ("I0*", "I*", 0),
        ("II", "II", 0),
        ("IV*", "IV*", 0),
        ("III*", "III*", 0),
    ])
    def test_parse(self, symbol, family, n):
        kodaira_type = KodairaType.parse(symbol)
        assert (kodaira_type.family, kodaira_type.n) == (family, n)
        assert str(kodaira_type) == symbol

    @pytest.mark.parametrize("symbol", ["V", "I*", "Ix", "IIn"])
    def test_parse_invalid(self, symbol):
        with pytest.raises(ArgumentError):
            KodairaType.parse(symbol)

    @pytest.mark.parametrize("symbol,euler_number,components", [
        ("I1", 1, 1),
        ("I5", 5, 5),
        ("I6*", 12, 11),
        ("I2*", 8, 7),
        ("II", 2, 1),
        ("III", 3, 2),
        ("IV", 4, 3),
        ("IV*", 8, 7),
        ("III*", 9, 8),
        ("II*", 10, 9),
    ])
    def test_numerical_invariants(self, symbol, euler_number, components):
        kodaira_type = KodairaType.parse(symbol)
        assert kodaira_type.euler_number == euler_number
        assert kodaira_type.components == components

    @pytest.mark.parametrize("symbol", ["I0", "I3", "I0*", "I4*", "II", "III", "IV", "IV*", "III*", "II*"])
    def test_expected_valuations_classify_back(self, symbol):
        kodaira_type = KodairaType.parse(symbol)
        assert classify_valuations(*kodaira_type.expected_valuations) == kodaira_type


class TestClassification:
    @pytest.mark.parametrize("valuations,symbol", [
        ((0, 0, 0), "I0"),
        ((0, 0, 5), "I5"),
        ((2, 3, 12), "I6*"),
        ((2, 3, 8), "I2*"),
        ((3, 4, 8), "IV*"),
        ((2, 3, 6), "I0*"),
        ((5, 3, 6), "I0*"),
        ((1, 1, 2), "II"),
        ((3, 5, 9), "III*"),
    ])
    def test_table(self, valuations, symbol):
        assert classify_valuations(*valuations) == KodairaType.parse(symbol)

    @pytest.mark.parametrize("valuations", [(4, 6, 12), (0, 1, 3), (1, 2, 5), (3, 3, 7)])
    def test_invalid(self, valuations):
        with pytest.raises(ClassificationError):
            classify_valuations(*valuations)


class TestFiberData:
    @pytest.mark.parametrize("symbol,group_order,contributions", [
        ("I6*", 4, (0, 1, Fraction(5, 2), Fraction(5, 2))),
        ("I2*", 4, (0, 1, Fraction(3, 2), Fraction(3, 2))),
        ("IV*", 3, (0, Fraction(4, 3), Fraction(4, 3))),
        ("III*", 2, (0, Fraction(3, 2))),
        ("II*", 1, (0,)),
        ("I5", 5, (0, Fraction(4, 5), Fraction(6, 5), Fraction(6, 5), Fraction(4, 5))),
        ("III", 2, (0, Fraction(1, 2))),
        ("II", 1, (0,)),
    ])
    def test_contributions(self, symbol, group_order, contributions):
        fiber = fiber_data(KodairaType.parse(symbol))
        assert fiber.group_order == group_order
        assert fiber.contributions == contributions

    def test_contribution_values(self):
        assert fiber_data(KodairaType.parse("I6*")).contribution_values == [0, 1, Fraction(5, 2)]


class TestFiberPointCount:
    @pytest.mark.parametrize("symbol,q,expected", [
        ("I6*", 5, 56),
        ("I6*", 49, 540),
        ("I2*", 7, 50),
        ("IV*", 5, 36),
        ("III*", 5, 41),
        ("II*", 5, 46),
        ("I1", 5, 5),
        ("I2", 5, 10),
        ("I3", 7, 21),
        ("II", 5, 6),
        ("III", 5, 11),
        ("IV", 5, 16),
    ])
    def test_counts(self, symbol, q, expected):
        assert fiber_point_count(fiber_data(KodairaType.parse(symbol)), q) == expected

    def test_smooth_fiber_needs_curve(self):
        with pytest.raises(UnsupportedFiberError):
            fiber_point_count(fiber_data(KodairaType('I', 0)), 5)

    def test_non_rational_components(self):
        with pytest.raises(UnsupportedFiberError):
            fiber_point_count(fiber_data(KodairaType.parse("IV*")), 5, all_components_rational=False)

    def test_dual_graph_is_a_tree(self):
        vertices, edges = dual_graph(KodairaType.parse("I6*"))
        assert len(vertices) == 11
        assert len(edges) == 10


class TestMinimalModel:
    def test_modular_surface_at_origin(self):
        model = minimal_model_at(SurfaceModel.modular_surface().curve, Place.origin())
        assert model.k == 1
        assert (model.v_c4, model.v_c6, model.v_delta) == (2, 3, 12)
        assert model.v_j == -6

    def test_k3_at_infinity(self):
        model = minimal_model_at(SurfaceModel.k3_surface().curve, Place.infinity())
        assert model.k == 2
        assert (model.v_c4, model.v_c6, model.v_delta) == (2, 3, 8)

    def test_k3_at_finite_place(self):
        model = minimal_model_at(SurfaceModel.k3_surface().curve, Place.finite(T ** 2 + 1728))
        assert model.k == 0
        assert (model.v_c4, model.v_c6, model.v_delta) == (3, 4, 8)

    @pytest.mark.parametrize("surface,place,symbol", [
        (SurfaceModel.modular_surface, Place.origin(), "I6*"),
        (SurfaceModel.k3_surface, Place.infinity(), "I2*"),
        (SurfaceModel.k3_surface, Place.finite(T ** 2 + 1728), "IV*"),
    ])
    def test_classify_fiber(self, surface, place, symbol):
        fiber = classify_fiber(minimal_model_at(surface().curve, place))
        assert fiber == fiber_data(KodairaType.parse(symbol))

    def test_singular(self):
        with pytest.raises(ArgumentError):
            minimal_model_at(WeierstrassCurve(-3 * T ** 2, 2 * T ** 3), Place.infinity())

    def test_residue_characteristic(self):
        with pytest.raises(UnsupportedPlaceError):
            minimal_model_at(SurfaceModel.k3_surface().curve, Place('infinity', characteristic=2))
