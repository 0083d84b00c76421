"""Consensus dynamics: integrate dx/dt = -Lx and measure oscillation.

Non-real Laplacian eigenvalues show up as damped oscillations of the agents'
disagreement; completely real spectra give monotone-looking transients.  The
simulator is a classical fixed-step 4th-order Runge-Kutta integrator, and the
frequency estimate comes from zero-crossing spacing of a scalar observable
(the signals decay within a few periods, so crossing spacing is more robust
than spectral fitting at that length).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ringgraph import (
    RingDigraph,
    classify_exact,
    decompose,
    laplacian,
    slowest_complex_pair,
    spectrum_numeric,
)
from .rootfind import RootFinderConfig

#: step * (spectral-radius bound) must stay below this for the explicit scheme.
STABILITY_MARGIN = 0.1


@dataclass(frozen=True)
class SimConfig:
    step: float = 0.02
    horizon: float = 30.0
    #: explicit start vector; when None, a seeded standard-normal draw is used.
    initial_state: tuple[float, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.step <= 0 or self.horizon <= 0:
            raise ValueError("step and horizon must be positive")


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    observable: np.ndarray  # x_1 - x_2 (x_1 when n == 1)


def _initial_state(cfg: SimConfig, n: int) -> np.ndarray:
    if cfg.initial_state is not None:
        x0 = np.asarray(cfg.initial_state, dtype=np.float64)
        if x0.shape != (n,):
            raise ValueError(f"initial state must have length {n}, got {x0.shape}")
        return x0
    return np.random.default_rng(cfg.seed).standard_normal(n)


def simulate(laplacian_matrix, cfg: SimConfig) -> Trajectory:
    """Fixed-step RK4 integration of dx/dt = -Lx.

    The step is rejected up front unless step * max(4, 2*max(diag)) stays
    within the stability margin (Gershgorin bounds the spectral radius by
    twice the largest diagonal entry; 4 covers every unweighted ring digraph).
    """
    mat = np.asarray(laplacian_matrix, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("Laplacian must be square")
    n = mat.shape[0]
    row_sums = np.abs(mat.sum(axis=1))
    scale = max(1.0, float(np.abs(mat).max()))
    if row_sums.max() > 1e-9 * scale:
        raise ValueError("not a Laplacian: row sums must be zero")
    radius_bound = max(4.0, 2.0 * float(mat.diagonal().max(initial=0.0)))
    if cfg.step * radius_bound > STABILITY_MARGIN + 1e-12:
        raise ValueError(
            f"step {cfg.step} too large for stability: need step <= "
            f"{STABILITY_MARGIN / radius_bound:.6g} for this Laplacian"
        )

    steps = int(round(cfg.horizon / cfg.step))
    x = _initial_state(cfg, n)
    states = np.empty((steps + 1, n))
    states[0] = x
    h = cfg.step
    for k in range(steps):
        k1 = -(mat @ x)
        k2 = -(mat @ (x + 0.5 * h * k1))
        k3 = -(mat @ (x + 0.5 * h * k2))
        k4 = -(mat @ (x + h * k3))
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise FloatingPointError(f"state diverged at step {k + 1}")
        states[k + 1] = x

    times = np.arange(steps + 1) * h
    observable = states[:, 0] - states[:, 1] if n >= 2 else states[:, 0].copy()
    return Trajectory(times, states, observable)


def dominant_frequency(traj: Trajectory) -> float | None:
    """Angular frequency from zero-crossing spacing of the detrended observable.

    Detrending subtracts the final value.  With fewer than 3 sign changes
    there is no oscillation to speak of and the result is None.
    """
    y = traj.observable - traj.observable[-1]
    t = traj.times
    crossings = []
    for i in range(len(y) - 1):
        if y[i] == 0.0:
            continue
        if (y[i] > 0) != (y[i + 1] > 0) and y[i + 1] != 0.0:
            # linear interpolation of the crossing time
            frac = y[i] / (y[i] - y[i + 1])
            crossings.append(t[i] + frac * (t[i + 1] - t[i]))
    if len(crossings) < 3:
        return None
    spacings = np.diff(crossings)
    return float(np.pi / spacings.mean())


def oscillation_report(
    g: RingDigraph,
    cfg: SimConfig = SimConfig(),
    root_cfg: RootFinderConfig = RootFinderConfig(),
) -> dict:
    """Predicted vs measured oscillation for one ring digraph.

    Bundles the exact cyclicity verdict, the slowest-decaying conjugate pair
    of the numeric spectrum, the measured dominant frequency of a simulation
    started at e_1, and their relative deviation.
    """
    cls = classify_exact(g)
    spectrum = spectrum_numeric(g, root_cfg)
    pair = slowest_complex_pair(spectrum, root_cfg.imag_threshold)
    sim_cfg = cfg
    if cfg.initial_state is None:
        e1 = tuple([1.0] + [0.0] * (g.n - 1))
        sim_cfg = SimConfig(step=cfg.step, horizon=cfg.horizon, initial_state=e1)
    traj = simulate(laplacian(g), sim_cfg)
    measured = dominant_frequency(traj)
    predicted = abs(pair.imag) if pair is not None else None
    deviation = None
    if predicted is not None and measured is not None and predicted > 0:
        deviation = abs(measured - predicted) / predicted
    return {
        "n": g.n,
        "mask": g.mask_string(),
        "K": decompose(g).K,
        "case": cls.case,
        "essentially_cyclic": cls.essentially_cyclic,
        "slowest_pair": [pair.real, pair.imag] if pair is not None else None,
        "predicted_frequency": predicted,
        "measured_frequency": measured,
        "relative_deviation": deviation,
    }


def trajectory_csv(traj: Trajectory) -> str:
    """CSV rows "t,x_1,...,x_n"."""
    n = traj.states.shape[1]
    lines = ["t," + ",".join(f"x_{i + 1}" for i in range(n))]
    for t, row in zip(traj.times, traj.states):
        lines.append(",".join(repr(float(v)) for v in (t, *row)))
    return "\n".join(lines) + "\n"


def disagreement(traj: Trajectory) -> np.ndarray:
    """Squared Euclidean distance of the state from its mean, per sample."""
    centered = traj.states - traj.states.mean(axis=1, keepdims=True)
    return np.einsum("ij,ij->i", centered, centered)
