import pytest

from surfaceverifier.exceptions import ArgumentError
from surfaceverifier.identities import verify_legendre_eta, verify_hessian_xi, hesse_samples, \
    verify_hesse_weierstrass_link, verify_surface_equation, verify_base_change, verify_projection_degree, \
    verify_order4_automorphism


class TestRationalIdentities:
    def test_legendre(self):
        result = verify_legendre_eta()
        assert result.passed
        assert result.residual == 0

    def test_hessian(self):
        assert verify_hessian_xi().passed

    def test_surface_equation(self):
        result = verify_surface_equation()
        assert result.passed
        assert result.residual == {}
        assert result.details['discriminant'] == 6 ** 12

    def test_base_change(self):
        result = verify_base_change()
        assert result.passed
        assert result.witness == "xi^2"

    def test_base_change_degree_bound(self):
        assert not verify_base_change(max_degree=1).passed

    def test_order4_automorphism(self):
        result = verify_order4_automorphism()
        assert result.passed
        assert result.residual == ()


class TestHesse:
    def test_samples(self):
        assert hesse_samples(5) == [0, -1, 2, -2, 3]

    def test_samples_skip_one(self):
        assert 1 not in hesse_samples(100)
        assert len(set(hesse_samples(100))) == 100

    def test_link(self):
        result = verify_hesse_weierstrass_link(74)
        assert result.passed
        assert result.details == {'samples': 74, 'bound': 73}

    def test_too_few_samples(self):
        with pytest.raises(ArgumentError):
            verify_hesse_weierstrass_link(73)


class TestProjection:
    @pytest.mark.parametrize("p", [5, 11, 17])
    def test_degree(self, p):
        result = verify_projection_degree(p, samples=p - 1)
        assert result.passed
        assert result.witness == 3

    def test_residue_class(self):
        with pytest.raises(ArgumentError):
            verify_projection_degree(7)
