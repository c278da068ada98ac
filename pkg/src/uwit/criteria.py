"""Separability criteria for bipartite states.

Variance-based tests (summed local-uncertainty variances, the linear
correlation witness and its nonlinear refinement), measurement
distributions with Shannon/Tsallis entropies, the Maassen-Uffink bound,
the two-observable entropic test, and the Bell-population criteria with
their Schmidt-coefficient entropy bounds. Every verdict is a necessary
condition for separability: only a strict violation certifies
entanglement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DegenerateObservableError,
    DimensionMismatchError,
    InvalidParameterError,
)
from .linalg import (
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    expectation,
    hermitian_eigen,
    kron,
)
from .states import DensityMatrix, bell_states

DEGENERACY_TOL = 1e-8
PROBABILITY_TOL = -1e-12

# Pure product states sit exactly on the collective-Pauli variance boundary,
# so a bare float comparison against the threshold would flag half of them
# through roundoff; values this close to the threshold count as boundary.
DETECTION_TOL = 1e-12

# Every Bell state has both squared Schmidt coefficients equal to 1/2; this
# is the constant feeding the Bell-population entropy bounds.
BELL_SCHMIDT_SQ = 0.5


@dataclass(frozen=True)
class Observable:
    """Hermitian observable with its spectral decomposition.

    ``spectral`` pairs each distinct eigenvalue (ascending) with the
    projector onto its eigenspace; eigenvalues closer than DEGENERACY_TOL
    are merged into a single outcome.
    """

    matrix: np.ndarray
    spectral: tuple[tuple[float, np.ndarray], ...]

    @classmethod
    def from_matrix(cls, m, degeneracy_tol: float = DEGENERACY_TOL) -> "Observable":
        mat = np.asarray(m, dtype=complex)
        eig = hermitian_eigen(mat)
        groups: list[list[int]] = []
        for idx, val in enumerate(eig.eigenvalues):
            if groups and val - eig.eigenvalues[groups[-1][-1]] <= degeneracy_tol:
                groups[-1].append(idx)
            else:
                groups.append([idx])
        spectral = []
        for group in groups:
            vecs = eig.eigenvectors[:, group]
            projector = vecs @ vecs.conj().T
            spectral.append((float(np.mean(eig.eigenvalues[group])), projector))
        return cls(mat, tuple(spectral))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def nondegenerate(self) -> bool:
        return len(self.spectral) == self.dim


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of a separability criterion: ``detected`` means the value fell
    strictly below the threshold, certifying entanglement. Values within
    DETECTION_TOL of the threshold count as boundary, hence not detected."""

    value: float
    threshold: float
    detected: bool
    criterion_id: str


def _detects(value: float, threshold: float) -> bool:
    return value < threshold - DETECTION_TOL


def _observable_matrix(m) -> np.ndarray:
    return m.matrix if isinstance(m, Observable) else np.asarray(m, dtype=complex)


def variance(rho: DensityMatrix, m) -> float:
    """Variance <M^2> - <M>^2 of an observable in a state (clamped at 0)."""
    mat = _observable_matrix(m)
    mean = expectation(rho.matrix, mat)
    second = expectation(rho.matrix, mat @ mat)
    return max(second - mean * mean, 0.0)


def lur_value(rho: DensityMatrix, observables, bound: float, criterion_id: str = "lur") -> CriterionVerdict:
    """Summed variances against a local-uncertainty bound that every
    separable state inherits; a value strictly below ``bound`` detects
    entanglement."""
    total = sum(variance(rho, m) for m in observables)
    return CriterionVerdict(total, bound, _detects(total, bound), criterion_id)


@lru_cache(maxsize=1)
def collective_paulis() -> tuple[Observable, Observable, Observable]:
    """The three collective observables sigma_i x I + I x sigma_i."""
    return tuple(
        Observable.from_matrix(kron(s, ID2) + kron(ID2, s))
        for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)
    )


def pauli_lur(rho: DensityMatrix) -> CriterionVerdict:
    """Collective-Pauli uncertainty test: separable two-qubit states keep the
    summed variances of sigma_i x I + I x sigma_i at or above 4."""
    return lur_value(rho, collective_paulis(), 4.0, criterion_id="pauli_lur")


@lru_cache(maxsize=1)
def _linear_witness_matrix() -> np.ndarray:
    return (
        np.eye(4, dtype=complex)
        + kron(SIGMA_X, SIGMA_X)
        + kron(SIGMA_Y, SIGMA_Y)
        + kron(SIGMA_Z, SIGMA_Z)
    )


def linear_witness_value(rho: DensityMatrix) -> float:
    """Expectation of I + XX + YY + ZZ; negative values certify entanglement."""
    if rho.dims != (2, 2):
        raise DimensionMismatchError(f"witness requires a 2x2-qubit state, got {rho.dims}")
    return expectation(rho.matrix, _linear_witness_matrix())


def nonlinear_witness_value(rho: DensityMatrix) -> CriterionVerdict:
    """Nonlinear refinement of the linear witness: the squared means of the
    collective Paulis are subtracted, so the value never exceeds the linear
    one. Equals (summed collective-Pauli variances - 4)/2."""
    linear = linear_witness_value(rho)
    means_sq = sum(
        expectation(rho.matrix, m.matrix) ** 2 for m in collective_paulis()
    )
    value = linear - 0.5 * means_sq
    return CriterionVerdict(value, 0.0, _detects(value, 0.0), "nonlinear_witness")


def _clean_distribution(p) -> np.ndarray:
    probs = np.asarray(p, dtype=float).reshape(-1)
    if probs.size == 0:
        raise InvalidParameterError("empty probability distribution")
    if float(probs.min()) < PROBABILITY_TOL:
        raise InvalidParameterError(
            f"probabilities must be >= {PROBABILITY_TOL}, got minimum {probs.min():g}"
        )
    probs = np.clip(probs, 0.0, None)
    if abs(float(probs.sum()) - 1.0) > 1e-9:
        raise InvalidParameterError(f"probabilities must sum to 1, got {probs.sum()!r}")
    return probs


def measurement_distribution(rho: DensityMatrix, m: Observable) -> np.ndarray:
    """Outcome probabilities Tr(rho X_i), one per distinct eigenvalue of the
    observable, ordered by ascending eigenvalue."""
    if m.dim != rho.dim:
        raise DimensionMismatchError(f"dimension mismatch: state {rho.dim}, observable {m.dim}")
    return _clean_distribution(
        [expectation(rho.matrix, projector) for _, projector in m.spectral]
    )


def shannon_entropy(p) -> float:
    """Shannon entropy -sum p ln p in nats, with 0 ln 0 = 0."""
    probs = _clean_distribution(p)
    nonzero = probs[probs > 0.0]
    return float(-np.sum(nonzero * np.log(nonzero)))


def tsallis_entropy(p, q: float) -> float:
    """Tsallis entropy (1 - sum p^q)/(q - 1); q = 1 falls back to Shannon."""
    if q <= 0.0:
        raise InvalidParameterError(f"q must be positive, got {q}")
    if q == 1.0:
        return shannon_entropy(p)
    probs = _clean_distribution(p)
    return float((1.0 - np.sum(probs**q)) / (q - 1.0))


def maassen_bound(m: Observable, n: Observable) -> float:
    """Entropic-uncertainty constant -2 ln(max |<m_i|n_j>|) for two
    nondegenerate observables."""
    for name, obs in (("m", m), ("n", n)):
        if not obs.nondegenerate:
            raise DegenerateObservableError(f"observable {name} has a degenerate spectrum")
    if m.dim != n.dim:
        raise DimensionMismatchError(f"dimension mismatch: {m.dim} vs {n.dim}")
    overlap_sq = max(
        float(np.einsum("ij,ji->", xi, yj).real)
        for _, xi in m.spectral
        for _, yj in n.spectral
    )
    overlap_sq = min(max(overlap_sq, 1e-300), 1.0)
    return -math.log(overlap_sq)


def entropic_sum_criterion(rho: DensityMatrix, m1: Observable, m2: Observable, c: float) -> CriterionVerdict:
    """Sum of the two Shannon measurement entropies against a bound ``c``.

    The observables must be products of full-rank local observables whose
    single-party measurements obey an entropic uncertainty relation with
    constant ``c``; the caller vouches for ``c`` (maassen_bound is one
    generator). Only full-rankness is checked here: an eigenvalue at zero
    would make the outcome grouping, and hence the entropy, ambiguous
    between the factors and the product.
    """
    for name, obs in (("m1", m1), ("m2", m2)):
        if min(abs(val) for val, _ in obs.spectral) <= DEGENERACY_TOL:
            raise InvalidParameterError(f"observable {name} has an eigenvalue at zero")
    value = shannon_entropy(measurement_distribution(rho, m1)) + shannon_entropy(
        measurement_distribution(rho, m2)
    )
    return CriterionVerdict(value, c, _detects(value, c), "entropic_sum")


def schmidt_entropy_bound(c: float, q: float) -> float:
    """Tsallis-entropy floor for measuring an observable whose eigenvectors all
    have squared Schmidt coefficients at most ``c``: separable states satisfy
    S_q >= (1 - floor(1/c) c^q - (1 - floor(1/c) c)^q) / (q - 1), with the
    Shannon form at q = 1."""
    if not 0.0 < c < 1.0:
        raise InvalidParameterError(f"c must lie in (0, 1), got {c}")
    if q <= 0.0:
        raise InvalidParameterError(f"q must be positive, got {q}")
    k = math.floor(1.0 / c)
    r = max(1.0 - k * c, 0.0)
    if q == 1.0:
        bound = -k * c * math.log(c)
        if r > 0.0:
            bound -= r * math.log(r)
        return bound
    return (1.0 - k * c**q - r**q) / (q - 1.0)


def bell_populations(rho: DensityMatrix) -> np.ndarray:
    """The four Bell-state populations <BS_i|rho|BS_i> of a two-qubit state."""
    if rho.dims != (2, 2):
        raise DimensionMismatchError(f"Bell populations require a 2x2-qubit state, got {rho.dims}")
    probs = np.array(
        [float(np.vdot(b.amplitudes, rho.matrix @ b.amplitudes).real) for b in bell_states()]
    )
    return _clean_distribution(probs)


def bell_variance_criterion(rho: DensityMatrix) -> CriterionVerdict:
    """Summed variances of the four Bell projectors, 1 - sum_i p_i^2, which
    separable states keep at or above 1/2. On Bell-diagonal states detection
    is exactly x^2 + y^2 + z^2 > 1; the comparison is shared with the q = 2
    Tsallis test so the two verdicts can never split."""
    populations = bell_populations(rho)
    power_sum = float(np.sum(populations**2))
    detected = bool(_power_sum_detects(power_sum, 0.5, 2.0))
    return CriterionVerdict(1.0 - power_sum, 0.5, detected, "bell_variance")


def _power_sum_detects(power_sum, reference: float, q: float):
    # S_q < bound rearranged to avoid the 1 - sum(p^q) cancellation that
    # swallows the comparison for large q. The boundary guard is relative
    # because legitimate detections reach absolute scales of 2^(1-q).
    if q > 1.0:
        return power_sum > reference * (1.0 + DETECTION_TOL)
    return power_sum < reference * (1.0 - DETECTION_TOL)


def bell_tsallis_criterion(rho: DensityMatrix, q: float) -> CriterionVerdict:
    """Tsallis entropy of the Bell-population distribution against the
    Schmidt bound for c = 1/2; strengthens with growing q and reproduces the
    Bell-variance test at q = 2."""
    if q <= 0.0:
        raise InvalidParameterError(f"q must be positive, got {q}")
    populations = bell_populations(rho)
    value = tsallis_entropy(populations, q)
    threshold = schmidt_entropy_bound(BELL_SCHMIDT_SQ, q)
    if q == 1.0:
        detected = _detects(value, threshold)
    else:
        detected = _power_sum_detects(
            float(np.sum(populations**q)), 2.0 ** (1.0 - q), q
        )
    return CriterionVerdict(value, threshold, detected, f"bell_tsallis_q{q:g}")
