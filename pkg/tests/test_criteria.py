import numpy as np
import pytest

from uwit.errors import (
    DegenerateObservableError,
    DimensionMismatchError,
    InvalidParameterError,
)
from uwit.linalg import ID2, SIGMA_X, SIGMA_Z, kron
from uwit.criteria import (
    Observable,
    bell_populations,
    bell_tsallis_criterion,
    bell_variance_criterion,
    collective_paulis,
    entropic_sum_criterion,
    linear_witness_value,
    lur_value,
    maassen_bound,
    measurement_distribution,
    nonlinear_witness_value,
    pauli_lur,
    schmidt_entropy_bound,
    shannon_entropy,
    tsallis_entropy,
    variance,
)
from uwit.states import (
    DensityMatrix,
    bell_diagonal_state,
    bell_populations_from_coords,
    bell_state,
    maximally_mixed,
    random_density_matrix,
    random_separable_state,
    werner_state,
)

SINGLET = bell_state(4).density()
MIXED = maximally_mixed()
ZERO_ZERO = DensityMatrix(np.diag([1.0, 0, 0, 0]).astype(complex), (2, 2))

XX = Observable.from_matrix(kron(SIGMA_X, SIGMA_X))
ZZ = Observable.from_matrix(kron(SIGMA_Z, SIGMA_Z))


def random_tetrahedron_coords(rng):
    while True:
        c = rng.uniform(-1.0, 1.0, size=3)
        if bell_populations_from_coords(c).min() >= 0.0:
            return c


class TestObservable:
    def test_spectral_resolution(self):
        rng = np.random.default_rng(31)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        obs = Observable.from_matrix((x + x.conj().T) / 2)
        total = sum(proj for _, proj in obs.spectral)
        assert np.linalg.norm(total - np.eye(4)) < 1e-10
        rebuilt = sum(val * proj for val, proj in obs.spectral)
        assert np.linalg.norm(rebuilt - obs.matrix) < 1e-9
        for i, (_, pi) in enumerate(obs.spectral):
            for j, (_, pj) in enumerate(obs.spectral):
                expected = pi if i == j else np.zeros_like(pi)
                assert np.linalg.norm(pi @ pj - expected) < 1e-10

    def test_degenerate_grouping(self):
        obs = Observable.from_matrix(kron(SIGMA_Z, SIGMA_Z))
        assert len(obs.spectral) == 2
        values = [val for val, _ in obs.spectral]
        assert np.allclose(values, [-1.0, 1.0], atol=1e-12)
        assert all(abs(np.trace(p).real - 2.0) < 1e-10 for _, p in obs.spectral)


class TestVariance:
    def test_eigenstate_has_zero_variance(self):
        rho = DensityMatrix(np.diag([1.0, 0.0]).astype(complex), (1, 2))
        assert variance(rho, SIGMA_Z) == pytest.approx(0.0, abs=1e-14)

    def test_orthogonal_basis_observable(self):
        rho = DensityMatrix(np.diag([1.0, 0.0]).astype(complex), (1, 2))
        assert variance(rho, SIGMA_X) == pytest.approx(1.0, abs=1e-14)

    def test_collective_pauli_on_mixed(self):
        m = kron(SIGMA_Z, ID2) + kron(ID2, SIGMA_Z)
        # direct trace oracle: <M^2> = Tr(M^2)/4, <M> = 0
        oracle = np.trace(m @ m).real / 4
        assert oracle == pytest.approx(2.0, abs=1e-14)
        assert variance(MIXED, m) == pytest.approx(2.0, abs=1e-12)


class TestLur:
    def test_singlet_detected(self):
        verdict = pauli_lur(SINGLET)
        assert verdict.value == pytest.approx(0.0, abs=1e-12)
        assert verdict.threshold == 4.0 and verdict.detected

    def test_maximally_mixed_not_detected(self):
        verdict = pauli_lur(MIXED)
        assert verdict.value == pytest.approx(6.0, abs=1e-12)
        assert not verdict.detected

    def test_product_state_sits_on_boundary(self):
        variances = [variance(ZERO_ZERO, m) for m in collective_paulis()]
        assert np.allclose(sorted(variances), [0.0, 2.0, 2.0], atol=1e-12)
        verdict = pauli_lur(ZERO_ZERO)
        assert verdict.value == pytest.approx(4.0, abs=1e-12)
        assert not verdict.detected

    def test_custom_bound_wrapper(self):
        verdict = lur_value(SINGLET, collective_paulis(), 4.0)
        assert verdict.criterion_id == "lur" and verdict.detected


class TestWitnesses:
    def test_linear_on_singlet(self):
        assert linear_witness_value(SINGLET) == pytest.approx(-2.0, abs=1e-12)

    def test_linear_on_mixed(self):
        assert linear_witness_value(MIXED) == pytest.approx(1.0, abs=1e-12)

    def test_linear_on_werner_line(self):
        for p in np.linspace(0, 1, 11):
            assert linear_witness_value(werner_state(p)) == pytest.approx(1 - 3 * p, abs=1e-12)

    def test_nonlinear_on_singlet(self):
        verdict = nonlinear_witness_value(SINGLET)
        assert verdict.value == pytest.approx(-2.0, abs=1e-12) and verdict.detected

    def test_nonlinear_on_mixed(self):
        verdict = nonlinear_witness_value(MIXED)
        assert verdict.value == pytest.approx(1.0, abs=1e-12) and not verdict.detected

    def test_nonlinear_never_exceeds_linear(self):
        rng = np.random.default_rng(33)
        for _ in range(200):
            rho = random_density_matrix((2, 2), rng)
            assert nonlinear_witness_value(rho).value <= linear_witness_value(rho) + 1e-12

    def test_identity_with_lur(self):
        # subtracting the squared means halves the variance-sum margin:
        # nonlinear value == (sum of collective variances - 4) / 2
        rng = np.random.default_rng(34)
        for _ in range(1000):
            rho = random_density_matrix((2, 2), rng)
            lur = pauli_lur(rho)
            nl = nonlinear_witness_value(rho)
            assert nl.value == pytest.approx((lur.value - 4.0) / 2.0, abs=1e-10)
            assert nl.detected == lur.detected


class TestMeasurementDistribution:
    def test_degenerate_correlator_on_mixed(self):
        probs = measurement_distribution(MIXED, ZZ)
        assert np.allclose(probs, [0.5, 0.5], atol=1e-12)

    def test_singlet_is_deterministic_for_xx(self):
        probs = measurement_distribution(SINGLET, XX)
        # eigenvalue order is ascending, so outcome -1 comes first
        assert np.allclose(probs, [1.0, 0.0], atol=1e-12)

    def test_eigenstate_gives_delta(self):
        rng = np.random.default_rng(35)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        obs = Observable.from_matrix((x + x.conj().T) / 2)
        assert obs.nondegenerate
        val, proj = obs.spectral[2]
        vec = np.linalg.eigh(obs.matrix)[1][:, 2]
        rho = DensityMatrix(np.outer(vec, vec.conj()), (2, 2))
        probs = measurement_distribution(rho, obs)
        expected = np.zeros(4)
        expected[2] = 1.0
        assert np.allclose(probs, expected, atol=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            measurement_distribution(MIXED, Observable.from_matrix(SIGMA_Z))


class TestEntropies:
    def test_shannon_examples(self):
        assert shannon_entropy([1.0, 0.0]) == 0.0
        assert shannon_entropy([0.25] * 4) == pytest.approx(np.log(4), abs=1e-14)
        assert shannon_entropy([0.5, 0.5]) == pytest.approx(np.log(2), abs=1e-14)

    def test_tsallis_examples(self):
        for q in (0.5, 1.0, 2.0, 7.0):
            assert tsallis_entropy([1.0, 0.0, 0.0], q) == pytest.approx(0.0, abs=1e-14)
        assert tsallis_entropy([0.25] * 4, 2.0) == pytest.approx(0.75, abs=1e-14)

    def test_tsallis_shannon_limit(self):
        rng = np.random.default_rng(36)
        for _ in range(20):
            p = rng.exponential(size=5)
            p /= p.sum()
            s = shannon_entropy(p)
            assert tsallis_entropy(p, 1 + 1e-4) == pytest.approx(s, abs=1e-3)
            assert tsallis_entropy(p, 1 - 1e-4) == pytest.approx(s, abs=1e-3)

    def test_invalid_q(self):
        with pytest.raises(InvalidParameterError):
            tsallis_entropy([0.5, 0.5], 0.0)

    def test_axioms(self):
        rng = np.random.default_rng(37)
        for n in (2, 3, 5):
            uniform_value = tsallis_entropy([1.0 / n] * n, 2.0)
            for _ in range(50):
                p = rng.exponential(size=n)
                p /= p.sum()
                assert shannon_entropy(p) >= 0.0
                assert tsallis_entropy(p, 2.0) >= 0.0
                assert shannon_entropy(p) <= np.log(n) + 1e-12
                assert tsallis_entropy(p, 2.0) <= uniform_value + 1e-12

    def test_rejects_bad_distributions(self):
        with pytest.raises(InvalidParameterError):
            shannon_entropy([0.7, 0.7])
        with pytest.raises(InvalidParameterError):
            shannon_entropy([1.5, -0.5])


class TestMaassenBound:
    def test_pauli_pair(self):
        mx = Observable.from_matrix(SIGMA_X)
        mz = Observable.from_matrix(SIGMA_Z)
        assert maassen_bound(mx, mz) == pytest.approx(np.log(2), abs=1e-12)

    def test_shared_eigenbasis(self):
        rng = np.random.default_rng(38)
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        obs = Observable.from_matrix((x + x.conj().T) / 2)
        assert maassen_bound(obs, obs) == pytest.approx(0.0, abs=1e-12)

    def test_tilted_basis(self):
        # eigenvectors of (X+Z)/sqrt(2) sit at angle pi/8 from the Z basis
        mz = Observable.from_matrix(SIGMA_Z)
        mh = Observable.from_matrix((SIGMA_X + SIGMA_Z) / np.sqrt(2))
        expected = -2 * np.log(np.cos(np.pi / 8))
        assert maassen_bound(mz, mh) == pytest.approx(expected, abs=1e-12)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateObservableError):
            maassen_bound(XX, Observable.from_matrix(SIGMA_Z))


class TestEntropicSum:
    def test_singlet_detected(self):
        verdict = entropic_sum_criterion(SINGLET, XX, ZZ, np.log(2))
        assert verdict.value == pytest.approx(0.0, abs=1e-12) and verdict.detected

    def test_maximally_mixed(self):
        verdict = entropic_sum_criterion(MIXED, XX, ZZ, np.log(2))
        assert verdict.value == pytest.approx(2 * np.log(2), abs=1e-12)
        assert not verdict.detected

    def test_product_state_on_boundary(self):
        verdict = entropic_sum_criterion(ZERO_ZERO, XX, ZZ, np.log(2))
        assert verdict.value == pytest.approx(np.log(2), abs=1e-12)
        assert not verdict.detected

    def test_zero_eigenvalue_rejected(self):
        projector = Observable.from_matrix(np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))
        with pytest.raises(InvalidParameterError):
            entropic_sum_criterion(SINGLET, projector, ZZ, np.log(2))


class TestSchmidtEntropyBound:
    def test_half_matches_closed_form(self):
        for q in (0.5, 2.0, 3.0, 4.0, 15.0, 200.0):
            if q == 1.0:
                continue
            expected = (1 - 2.0 ** (1 - q)) / (q - 1)
            assert schmidt_entropy_bound(0.5, q) == pytest.approx(expected, abs=1e-15)

    def test_q2_values(self):
        assert schmidt_entropy_bound(0.5, 2.0) == 0.5
        assert schmidt_entropy_bound(1 / 3, 2.0) == pytest.approx(2 / 3, abs=1e-12)

    def test_shannon_form_continuous_at_one(self):
        for c in (0.5, 1 / 3, 0.41):
            at_one = schmidt_entropy_bound(c, 1.0)
            assert schmidt_entropy_bound(c, 1 + 1e-6) == pytest.approx(at_one, abs=1e-4)
            assert schmidt_entropy_bound(c, 1 - 1e-6) == pytest.approx(at_one, abs=1e-4)

    def test_parameter_validation(self):
        with pytest.raises(InvalidParameterError):
            schmidt_entropy_bound(0.0, 2.0)
        with pytest.raises(InvalidParameterError):
            schmidt_entropy_bound(1.0, 2.0)
        with pytest.raises(InvalidParameterError):
            schmidt_entropy_bound(0.5, -1.0)


class TestBellCriteria:
    def test_singlet_variance_detected(self):
        verdict = bell_variance_criterion(SINGLET)
        assert verdict.value == pytest.approx(0.0, abs=1e-12) and verdict.detected

    def test_mixed_variance_not_detected(self):
        verdict = bell_variance_criterion(MIXED)
        assert verdict.value == pytest.approx(0.75, abs=1e-12) and not verdict.detected

    def test_variance_value_in_coordinates(self):
        rng = np.random.default_rng(39)
        for _ in range(100):
            c = random_tetrahedron_coords(rng)
            r_sq = float(np.sum(np.asarray(c) ** 2))
            verdict = bell_variance_criterion(bell_diagonal_state(c))
            assert verdict.value == pytest.approx(1 - (1 + r_sq) / 4, abs=1e-12)
            assert verdict.detected == (r_sq > 1.0)

    def test_singlet_tsallis_detected(self):
        verdict = bell_tsallis_criterion(SINGLET, 2.0)
        assert verdict.value < 1e-12 and verdict.threshold == 0.5 and verdict.detected

    def test_mixed_tsallis_not_detected(self):
        verdict = bell_tsallis_criterion(MIXED, 2.0)
        assert verdict.value == pytest.approx(0.75, abs=1e-12) and not verdict.detected

    def test_q2_matches_variance_criterion(self):
        rng = np.random.default_rng(40)
        for _ in range(200):
            rho = bell_diagonal_state(random_tetrahedron_coords(rng))
            assert bell_tsallis_criterion(rho, 2.0).detected == bell_variance_criterion(rho).detected

    def test_detection_strengthens_with_q(self):
        rng = np.random.default_rng(41)
        for _ in range(1000):
            rho = bell_diagonal_state(random_tetrahedron_coords(rng))
            flags = [bell_tsallis_criterion(rho, q).detected for q in (2.0, 4.0, 15.0)]
            for weaker, stronger in zip(flags, flags[1:]):
                assert not weaker or stronger

    def test_large_q_approaches_population_witnesses(self):
        # Exact convergence layer at finite q: detection always implies
        # max_i p_i > 1/2, and max_i p_i > 2^(1/q)/2 guarantees detection,
        # so the test matches the population witness outside that layer.
        q = 200.0
        upper = 0.5 * 2.0 ** (1.0 / q)
        rng = np.random.default_rng(42)
        inside_layer = 0
        for _ in range(1000):
            rho = bell_diagonal_state(random_tetrahedron_coords(rng))
            max_p = float(bell_populations(rho).max())
            detected = bell_tsallis_criterion(rho, q).detected
            if max_p <= 0.5:
                assert not detected
            elif max_p > upper:
                assert detected
            else:
                inside_layer += 1
        assert inside_layer < 20

    def test_bell_populations_of_singlet(self):
        assert np.allclose(bell_populations(SINGLET), [0, 0, 0, 1], atol=1e-12)


class TestConcavity:
    def test_variance_sum_concave_under_mixing(self):
        rng = np.random.default_rng(43)
        observables = collective_paulis()
        for _ in range(200):
            rho1 = random_density_matrix((2, 2), rng)
            rho2 = random_density_matrix((2, 2), rng)
            lam = rng.uniform()
            mix = DensityMatrix(lam * rho1.matrix + (1 - lam) * rho2.matrix, (2, 2))
            total_mix = sum(variance(mix, m) for m in observables)
            total_parts = lam * sum(variance(rho1, m) for m in observables) + (
                1 - lam
            ) * sum(variance(rho2, m) for m in observables)
            assert total_mix >= total_parts - 1e-9


class TestSeparableSoundness:
    def test_no_criterion_fires_on_separable_mixtures(self):
        rng = np.random.default_rng(44)
        log2 = np.log(2)
        for _ in range(2000):
            rho = random_separable_state(int(rng.integers(1, 5)), rng)
            assert linear_witness_value(rho) >= 0.0
            assert not nonlinear_witness_value(rho).detected
            assert not pauli_lur(rho).detected
            assert not bell_variance_criterion(rho).detected
            for q in (2.0, 4.0, 15.0):
                assert not bell_tsallis_criterion(rho, q).detected
            assert not entropic_sum_criterion(rho, XX, ZZ, log2).detected
