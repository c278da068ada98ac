"""The two reproduction studies: a Monte-Carlo sweep counting which noisy
singlets each criterion detects versus the exact partial-transpose test, and
a grid classification of Bell-diagonal coordinate space. Both are
deterministic for a fixed seed, independent of worker count."""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, InvalidWeightError
from .linalg import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, kron
from .states import (
    NPT_THRESHOLD,
    POPULATION_TOL,
    BellDiagonalCoords,
    NoiseBallConfig,
    _draw_noise_matrix,
    is_npt,
    noise_rng,
    singlet_projector,
    werner_state,
)
from .criteria import (
    DETECTION_TOL,
    _power_sum_detects,
    linear_witness_value,
    nonlinear_witness_value,
    schmidt_entropy_bound,
)

_BLOCK = 256

_LINEAR_WITNESS = (
    np.eye(4, dtype=complex)
    + kron(SIGMA_X, SIGMA_X)
    + kron(SIGMA_Y, SIGMA_Y)
    + kron(SIGMA_Z, SIGMA_Z)
)
_COLLECTIVE = tuple(kron(s, ID2) + kron(ID2, s) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z))
_SINGLET = singlet_projector()


@dataclass(frozen=True)
class DetectionRow:
    """Detected fractions at one singlet weight ``p`` of the sweep."""

    p: float
    fraction_witness: float
    fraction_lur: float
    fraction_npt: float
    samples: int
    seed: int


@dataclass(frozen=True)
class GeometryCell:
    """Classification of one Bell-diagonal coordinate cell."""

    coords: BellDiagonalCoords
    is_state: bool
    in_octahedron: bool
    sphere_detected: bool
    tsallis_detected: dict[float, bool]


@dataclass(frozen=True)
class GeometryScan:
    """Vectorized result of a Bell-diagonal grid scan; ``cells()`` iterates
    the same data as GeometryCell records."""

    resolution: int
    q_values: tuple[float, ...]
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    is_state: np.ndarray
    in_octahedron: np.ndarray
    sphere_detected: np.ndarray
    tsallis_detected: dict[float, np.ndarray]

    def __len__(self) -> int:
        return self.x.size

    def cells(self):
        for i in range(self.x.size):
            yield GeometryCell(
                BellDiagonalCoords(float(self.x[i]), float(self.y[i]), float(self.z[i])),
                bool(self.is_state[i]),
                bool(self.in_octahedron[i]),
                bool(self.sphere_detected[i]),
                {q: bool(self.tsallis_detected[q][i]) for q in self.q_values},
            )


@dataclass(frozen=True)
class WernerThresholds:
    """Smallest detected singlet weight on the white-noise line, per criterion."""

    witness: float
    lur: float
    npt: float


def _block_flags(seed: int, d: float, p: float, p_index: int, start: int, stop: int):
    """Detection flags (witness, nonlinear, npt) for sample indices [start, stop).

    Each sample draws its noise from an independent stream keyed by
    (seed, p_index, sample_index), so any partition of the index space
    yields identical results.
    """
    n = stop - start
    sigma = np.empty((n, 4, 4), dtype=complex)
    for j, i in enumerate(range(start, stop)):
        sigma[j] = _draw_noise_matrix(d, noise_rng(seed, p_index, i))
    rho = p * _SINGLET[None, :, :] + (1.0 - p) * sigma

    linear = np.einsum("nij,ji->n", rho, _LINEAR_WITNESS).real
    means_sq = np.zeros(n)
    for m in _COLLECTIVE:
        means_sq += np.einsum("nij,ji->n", rho, m).real ** 2
    nonlinear = linear - 0.5 * means_sq

    pt = rho.reshape(n, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(n, 4, 4)
    min_pt_eig = np.linalg.eigvalsh(pt)[:, 0]

    return (
        linear < -DETECTION_TOL,
        nonlinear < -DETECTION_TOL,
        min_pt_eig < NPT_THRESHOLD,
    )


def _block_counts(task):
    seed, d, p, p_index, start, stop = task
    witness, lur, npt = _block_flags(seed, d, p, p_index, start, stop)
    return (
        p_index,
        int(witness.sum()),
        int(lur.sum()),
        int(npt.sum()),
        int((witness & ~lur).sum()),
        int((lur & ~npt).sum()),
        int((~npt & (witness | lur)).sum()),
    )


def evaluate_detection_flags(config: NoiseBallConfig, p: float, p_index: int):
    """Per-sample detection flags (witness, lur, npt) for one grid point,
    exactly as counted by run_detection_sweep."""
    return _block_flags(config.seed, config.d, p, p_index, 0, config.samples)


def default_p_grid() -> list[float]:
    """The default sweep grid 0.00, 0.05, ..., 1.00."""
    return [float(v) for v in np.linspace(0.0, 1.0, 21)]


def run_detection_sweep(
    config: NoiseBallConfig, p_grid=None, workers: int = 1
) -> list[DetectionRow]:
    """Detected fractions per criterion over a grid of singlet weights.

    For each p, ``config.samples`` noisy singlets rho(p, d) are drawn and
    tested with the linear witness, the nonlinear witness and the partial
    transpose. Per-sample randomness is keyed by (seed, grid index, sample
    index): fixed config means bit-identical rows for any ``workers``.

    The detection inclusion chain (witness => lur => npt) and the soundness
    of both criteria on PPT samples are asserted sample by sample; a
    violation raises RuntimeError since it can only come from a numerical
    defect.
    """
    if p_grid is None:
        p_grid = default_p_grid()
    p_grid = [float(p) for p in p_grid]
    for p in p_grid:
        if not 0.0 <= p <= 1.0:
            raise InvalidWeightError(f"grid value p={p} outside [0, 1]")

    tasks = []
    for p_index, p in enumerate(p_grid):
        for start in range(0, config.samples, _BLOCK):
            stop = min(start + _BLOCK, config.samples)
            tasks.append((config.seed, config.d, p, p_index, start, stop))

    if workers <= 1:
        results = map(_block_counts, tasks)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_block_counts, tasks))

    counts = {i: [0, 0, 0] for i in range(len(p_grid))}
    chain_violations = 0
    ppt_detected = 0
    for p_index, n_witness, n_lur, n_npt, v_wl, v_ln, v_ppt in results:
        counts[p_index][0] += n_witness
        counts[p_index][1] += n_lur
        counts[p_index][2] += n_npt
        chain_violations += v_wl + v_ln
        ppt_detected += v_ppt
    if chain_violations or ppt_detected:
        raise RuntimeError(
            f"numerical defect: {chain_violations} inclusion-chain violations, "
            f"{ppt_detected} PPT samples detected"
        )

    rows = []
    for p_index, p in enumerate(p_grid):
        n_witness, n_lur, n_npt = counts[p_index]
        rows.append(
            DetectionRow(
                p=p,
                fraction_witness=n_witness / config.samples,
                fraction_lur=n_lur / config.samples,
                fraction_npt=n_npt / config.samples,
                samples=config.samples,
                seed=config.seed,
            )
        )
    return rows


def run_geometry_scan(resolution: int = 101, q_values=(2.0, 4.0, 15.0)) -> GeometryScan:
    """Classify a uniform grid over [-1, 1]^3 of Bell-diagonal coordinates.

    Cells are labeled by state membership (all Bell populations
    nonnegative), witness-octahedron membership (populations also at most
    1/2), detection by the population-variance sphere, and detection by the
    Tsallis test per requested q. Detections are only reported on state
    cells.
    """
    if resolution < 2:
        raise InvalidParameterError(f"resolution must be at least 2, got {resolution}")
    q_values = tuple(float(q) for q in q_values)
    for q in q_values:
        if q <= 0.0:
            raise InvalidParameterError(f"q must be positive, got {q}")

    axis = np.linspace(-1.0, 1.0, resolution)
    gx, gy, gz = np.meshgrid(axis, axis, axis, indexing="ij")
    x, y, z = gx.ravel(), gy.ravel(), gz.ravel()

    populations = np.stack(
        [
            (1.0 + x - y + z) / 4.0,
            (1.0 - x + y + z) / 4.0,
            (1.0 + x + y - z) / 4.0,
            (1.0 - x - y - z) / 4.0,
        ],
        axis=1,
    )
    is_state = populations.min(axis=1) >= POPULATION_TOL
    in_octahedron = is_state & (populations.max(axis=1) <= 0.5 - POPULATION_TOL)
    clamped = np.clip(populations, 0.0, None)

    # identical comparisons to bell_variance_criterion / bell_tsallis_criterion
    sphere_detected = is_state & _power_sum_detects(np.sum(clamped**2, axis=1), 0.5, 2.0)

    tsallis_detected = {}
    for q in q_values:
        if q == 1.0:
            with np.errstate(divide="ignore", invalid="ignore"):
                terms = np.where(clamped > 0.0, clamped * np.log(clamped), 0.0)
            entropy = -terms.sum(axis=1)
            detected = entropy < schmidt_entropy_bound(0.5, 1.0) - DETECTION_TOL
        else:
            power_sum = np.sum(clamped**q, axis=1)
            detected = _power_sum_detects(power_sum, 2.0 ** (1.0 - q), q)
        tsallis_detected[q] = is_state & detected

    return GeometryScan(
        resolution=resolution,
        q_values=q_values,
        x=x,
        y=y,
        z=z,
        is_state=is_state,
        in_octahedron=in_octahedron,
        sphere_detected=sphere_detected,
        tsallis_detected=tsallis_detected,
    )


def _bisect_threshold(detects, tol: float = 1e-8) -> float:
    lo, hi = 0.0, 1.0
    if detects(lo) or not detects(hi):
        raise RuntimeError("detection is not bracketed on [0, 1]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if detects(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def werner_thresholds() -> WernerThresholds:
    """Smallest singlet weight detected on the white-noise (d = 0) line by the
    linear witness, the nonlinear witness and the partial-transpose test,
    each located by bisection to 1e-8."""
    return WernerThresholds(
        witness=_bisect_threshold(
            lambda p: linear_witness_value(werner_state(p)) < -DETECTION_TOL
        ),
        lur=_bisect_threshold(lambda p: nonlinear_witness_value(werner_state(p)).detected),
        npt=_bisect_threshold(lambda p: is_npt(werner_state(p))[0]),
    )


def _fmt(v) -> str:
    return format(float(v), ".9g")


DETECTION_CSV_HEADER = "p,frac_witness,frac_lur,frac_npt,samples,seed"
GEOMETRY_CSV_HEADER = "x,y,z,is_state,in_octahedron,sphere_detected,q,tsallis_detected"


def write_detection_csv(rows, path) -> None:
    """Write sweep rows as CSV (floats with 9 significant digits)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(DETECTION_CSV_HEADER.split(","))
        for row in rows:
            writer.writerow(
                [
                    _fmt(row.p),
                    _fmt(row.fraction_witness),
                    _fmt(row.fraction_lur),
                    _fmt(row.fraction_npt),
                    row.samples,
                    row.seed,
                ]
            )


def write_geometry_csv(scan: GeometryScan, path) -> None:
    """Write a geometry scan as CSV, one row per cell per q."""
    q_strings = [_fmt(q) for q in scan.q_values]
    detected = [scan.tsallis_detected[q] for q in scan.q_values]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(GEOMETRY_CSV_HEADER + "\n")
        for i in range(len(scan)):
            prefix = (
                f"{_fmt(scan.x[i])},{_fmt(scan.y[i])},{_fmt(scan.z[i])},"
                f"{int(scan.is_state[i])},{int(scan.in_octahedron[i])},"
                f"{int(scan.sphere_detected[i])}"
            )
            for qs, det in zip(q_strings, detected):
                fh.write(f"{prefix},{qs},{int(det[i])}\n")


def detection_rows_to_dicts(rows) -> list[dict]:
    return [
        {
            "p": row.p,
            "frac_witness": row.fraction_witness,
            "frac_lur": row.fraction_lur,
            "frac_npt": row.fraction_npt,
            "samples": row.samples,
            "seed": row.seed,
        }
        for row in rows
    ]


def geometry_scan_to_dicts(scan: GeometryScan):
    """One dict per cell per q, in CSV row order."""
    for i in range(len(scan)):
        for q in scan.q_values:
            yield {
                "x": float(scan.x[i]),
                "y": float(scan.y[i]),
                "z": float(scan.z[i]),
                "is_state": bool(scan.is_state[i]),
                "in_octahedron": bool(scan.in_octahedron[i]),
                "sphere_detected": bool(scan.sphere_detected[i]),
                "q": q,
                "tsallis_detected": bool(scan.tsallis_detected[q][i]),
            }
