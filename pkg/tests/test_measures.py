import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from entlab import measures, qstate
from entlab.errors import DomainError
from entlab.qstate import pure_schmidt, singlet, werner_state
from entlab.sampler import RngStream, random_density_batch

MIXED = np.eye(4) / 4


class TestSpinFlip:
    def test_singlet_invariant(self):
        m = singlet().matrix
        assert np.abs(measures.spin_flip(singlet()) - m).max() < 1e-15

    def test_product_state_flips_both_qubits(self):
        zero = np.zeros((4, 4), dtype=complex)
        zero[0, 0] = 1.0  # |00><00|
        flipped = measures.spin_flip(qstate.density_from_matrix(zero))
        expected = np.zeros((4, 4))
        expected[3, 3] = 1.0  # |11><11|
        assert np.abs(flipped - expected).max() == 0.0

    def test_maximally_mixed_invariant(self):
        rho = qstate.density_from_matrix(MIXED)
        assert np.abs(measures.spin_flip(rho) - MIXED).max() < 1e-16

    def test_result_is_a_state(self):
        for m in random_density_batch(RngStream(31), 20):
            qstate.density_from_matrix(measures.spin_flip_batch(m))


class TestConcurrence:
    @pytest.mark.parametrize("f", np.linspace(0.50, 1.00, 51))
    def test_werner(self, f):
        assert measures.concurrence(werner_state(float(f))) == pytest.approx(
            2 * f - 1, abs=1e-10
        )

    @pytest.mark.parametrize("alpha", np.linspace(0.0, 1.0, 21))
    def test_pure_schmidt(self, alpha):
        expected = 2 * alpha * np.sqrt(1 - alpha**2)
        assert measures.concurrence(pure_schmidt(float(alpha))) == pytest.approx(
            expected, abs=1e-10
        )

    def test_maximally_mixed(self):
        assert measures.concurrence(qstate.density_from_matrix(MIXED)) == 0.0

    def test_matches_product_spectrum_route(self):
        rhos = random_density_batch(RngStream(32), 3000)
        ours = measures.concurrence_batch(rhos)
        reference = oracles.concurrence_product_route(rhos)
        assert np.abs(ours - reference).max() < 1e-8


class TestBinaryEntropy:
    def test_half_is_one(self):
        assert measures.binary_entropy(0.5) == 1.0

    @pytest.mark.parametrize("x", [0.0, 1.0])
    def test_endpoints(self, x):
        assert measures.binary_entropy(x) == 0.0

    def test_reference_value(self):
        # frozen from a 40-digit evaluation of the defining formula
        assert measures.binary_entropy(0.933013) == pytest.approx(
            0.3545777698733827, abs=1e-12
        )

    def test_clamps_within_slack(self):
        assert measures.binary_entropy(-1e-13) == 0.0
        assert measures.binary_entropy(1 + 1e-13) == 0.0

    @pytest.mark.parametrize("x", [-1e-9, 1 + 1e-9, 2.0, -1.0])
    def test_domain_error(self, x):
        with pytest.raises(DomainError):
            measures.binary_entropy(x)

    @given(st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=200)
    def test_symmetric_and_bounded(self, x):
        h = measures.binary_entropy(x)
        assert 0.0 <= h <= 1.0
        assert h == pytest.approx(measures.binary_entropy(1.0 - x), abs=1e-12)


class TestFormationFromConcurrence:
    def test_endpoints(self):
        assert measures.ef_from_concurrence(0.0) == 0.0
        assert measures.ef_from_concurrence(1.0) == 1.0

    def test_half_concurrence(self):
        # equals the Werner F = 3/4 value h(1/2 + sqrt(3)/4)
        assert measures.ef_from_concurrence(0.5) == pytest.approx(
            0.35457890266526988, abs=1e-14
        )

    def test_strictly_increasing(self):
        grid = np.linspace(0.0, 1.0, 401)
        values = [measures.ef_from_concurrence(float(c)) for c in grid]
        assert np.all(np.diff(values) > 0)

    @pytest.mark.parametrize("c", [-1e-6, 1.1])
    def test_domain_error(self, c):
        with pytest.raises(DomainError):
            measures.ef_from_concurrence(c)


class TestFormation:
    def test_singlet(self):
        assert measures.e_formation(singlet()) == pytest.approx(1.0, abs=1e-12)

    def test_separability_boundary(self):
        assert measures.e_formation(werner_state(0.5)) == pytest.approx(0.0, abs=1e-10)

    def test_balanced_pure(self):
        assert measures.e_formation(pure_schmidt(1 / np.sqrt(2))) == pytest.approx(
            1.0, abs=1e-9
        )

    @pytest.mark.parametrize("f", np.linspace(0.50, 1.00, 51))
    def test_werner_closed_form(self, f):
        mu = 0.5 + np.sqrt(f * (1 - f))
        expected = 0.0 if mu >= 1.0 else -(
            mu * np.log2(mu) + (1 - mu) * np.log2(1 - mu)
        )
        assert measures.e_formation(werner_state(float(f))) == pytest.approx(
            expected, abs=1e-10
        )


class TestNegativity:
    @pytest.mark.parametrize("f", np.linspace(0.50, 1.00, 51))
    def test_werner(self, f):
        assert measures.e_negative(werner_state(float(f))) == pytest.approx(
            f - 0.5, abs=1e-10
        )

    @pytest.mark.parametrize("alpha", np.linspace(0.0, 1.0, 21))
    def test_pure_schmidt(self, alpha):
        expected = alpha * np.sqrt(1 - alpha**2)
        assert measures.e_negative(pure_schmidt(float(alpha))) == pytest.approx(
            expected, abs=1e-10
        )

    def test_maximally_mixed(self):
        assert measures.e_negative(qstate.density_from_matrix(MIXED)) == 0.0


class TestSumMeasure:
    @pytest.mark.parametrize("f", [0.25, 0.3, 0.4, 0.5])
    def test_separable_werner(self, f):
        assert measures.e_sum(werner_state(f)) == pytest.approx(0.0, abs=1e-12)

    def test_product_state(self):
        m = np.zeros((4, 4))
        m[1, 1] = 1.0  # |01><01|
        assert measures.e_sum(qstate.density_from_matrix(m)) == 0.0

    def test_singlet(self):
        # PT spectrum {1/2, 1/2, 1/2, -1/2} gives 3/2 + 1/2 - 1 = 1
        assert measures.e_sum(singlet()) == pytest.approx(1.0, abs=1e-12)

    def test_werner_075_twice_negativity(self):
        rho = werner_state(0.75)
        assert measures.e_sum(rho) == pytest.approx(0.5, abs=1e-12)
        assert measures.e_sum(rho) == pytest.approx(2 * measures.e_negative(rho), abs=1e-12)

    def test_single_negative_pt_eigenvalue_on_random_states(self):
        # at most one PT eigenvalue can be negative, so e_sum = 2 e_negative
        rhos = random_density_batch(RngStream(33), 5000)
        pt_w = measures.pt_eigenvalues(rhos)
        assert np.all(pt_w[:, -2] > 0)
        assert np.abs(
            measures.e_sum_batch(rhos) - 2 * measures.e_negative_batch(rhos)
        ).max() < 1e-12


class TestLinearEntropy:
    @pytest.mark.parametrize("alpha", np.linspace(0.0, 1.0, 11))
    def test_pure_states_vanish(self, alpha):
        assert measures.linear_entropy(pure_schmidt(float(alpha))) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_maximally_mixed(self):
        assert measures.linear_entropy(qstate.density_from_matrix(MIXED)) == pytest.approx(
            0.75, abs=1e-15
        )

    @pytest.mark.parametrize("f", np.linspace(0.25, 1.0, 16))
    def test_werner_spectrum_formula(self, f):
        expected = 1 - f**2 - (1 - f) ** 2 / 3
        assert measures.linear_entropy(werner_state(float(f))) == pytest.approx(
            expected, abs=1e-12
        )


class TestSeparability:
    def test_werner_04_separable(self):
        assert measures.is_separable(werner_state(0.4))

    def test_singlet_entangled(self):
        assert not measures.is_separable(singlet())

    def test_product_state_separable(self):
        m = np.zeros((4, 4))
        m[1, 1] = 1.0
        assert measures.is_separable(qstate.density_from_matrix(m))

    def test_three_way_consistency_on_random_states(self):
        table = measures.measure_table(random_density_batch(RngStream(34), 10_000))
        sep = table["separable"]
        assert np.array_equal(sep, table["e_negative"] <= measures.EPS_SEP)
        assert np.array_equal(sep, table["e_sum"] <= 4 * measures.EPS_SEP)


class TestMeasureReport:
    def test_singlet(self):
        r = measures.measure_report(singlet())
        assert r.concurrence == pytest.approx(1.0, abs=1e-12)
        assert r.e_formation == pytest.approx(1.0, abs=1e-12)
        assert r.e_negative == pytest.approx(0.5, abs=1e-12)
        assert r.e_sum == pytest.approx(1.0, abs=1e-12)
        assert r.linear_entropy == pytest.approx(0.0, abs=1e-12)
        assert not r.separable

    def test_maximally_mixed(self):
        r = measures.measure_report(qstate.density_from_matrix(MIXED))
        assert r.concurrence == 0.0
        assert r.e_formation == 0.0
        assert r.e_negative == 0.0
        assert r.e_sum == pytest.approx(0.0, abs=1e-15)
        assert r.linear_entropy == pytest.approx(0.75, abs=1e-15)
        assert r.separable

    def test_werner_075(self):
        r = measures.measure_report(werner_state(0.75))
        assert r.concurrence == pytest.approx(0.5, abs=1e-12)
        assert r.e_negative == pytest.approx(0.25, abs=1e-12)
        assert r.e_formation == pytest.approx(0.35457890266526988, abs=1e-10)
        assert not r.separable

    def test_matches_scalar_functions(self):
        for m in random_density_batch(RngStream(35), 10):
            rho = qstate.density_from_matrix(m)
            r = measures.measure_report(rho)
            assert r.concurrence == measures.concurrence(rho)
            assert r.e_negative == measures.e_negative(rho)
            assert r.e_sum == measures.e_sum(rho)
            assert r.linear_entropy == measures.linear_entropy(rho)
            assert r.separable == measures.is_separable(rho)

    def test_csv_row(self):
        r = measures.measure_report(qstate.density_from_matrix(MIXED))
        row = measures.report_csv_row(r)
        fields = row.split(",")
        assert len(fields) == 6
        assert fields[-1] == "true"
        assert float(fields[4]) == pytest.approx(0.75)


class TestPureStateConnection:
    def test_concurrence_is_twice_negativity(self):
        rng = np.random.default_rng(36)
        pures = oracles.projectors(oracles.haar_kets(rng, 10_000))
        c = measures.concurrence_batch(pures)
        en = measures.e_negative_batch(pures)
        assert np.abs(c - 2 * en).max() < 1e-9


class TestOrderingBound:
    def test_concurrence_dominates_twice_negativity(self):
        rhos = random_density_batch(RngStream(37), 10_000)
        table = measures.measure_table(rhos)
        assert np.all(table["concurrence"] >= 2 * table["e_negative"] - 1e-9)
