"""Joint transmit-power and RIS-phase optimization.

The SJNR is strictly increasing in transmit power for fixed phases, so the
power subproblem's optimum is the cap. The phase subproblem lifts the
unit-modulus phase vector (with a trailing homogenization slot fixed to 1)
so both total path gains become rank-one quadratic forms, relaxes to a
unit-diagonal PSD program, solves the fractional SDP by Dinkelbach
iteration, and recovers feasible phases by scored rank-one extraction.
The alternating outer loop keeps the incumbent, so its SJNR trace is
nondecreasing by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSet, PhaseConfig, build_channel_set, identity_phases
from .link import SjnrReport, effective_gains, sjnr
from .scenario import Scenario, ValidationError
from .sdp_core import HermitianMatrix, extract_rank_one, solve_fractional_sdp


@dataclass(frozen=True, eq=False)
class LiftedProblem:
    """Rank-one lifted forms of the two path gains, plus the power budget.

    w_tx / w_jam are the rank-one factors: for a unit-modulus candidate u
    with trailing slot 1, |w^H u|^2 equals |h_direct + h_cascade|^2 of the
    corresponding satellite exactly. d_tx / d_jam are their outer products.
    """

    d_tx: HermitianMatrix
    d_jam: HermitianMatrix
    w_tx: np.ndarray
    w_jam: np.ndarray
    p_tx: float
    p_jam: float
    noise_power: float

    def __post_init__(self):
        if self.d_tx.order != self.d_jam.order:
            raise ValidationError(
                f"lifted orders differ: {self.d_tx.order} vs {self.d_jam.order}"
            )
        for name in ("w_tx", "w_jam"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape != (self.d_tx.order,):
                raise ValidationError(f"{name} must have length {self.d_tx.order}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (math.isfinite(self.p_tx) and self.p_tx > 0.0):
            raise ValidationError(f"p_tx must be > 0, got {self.p_tx!r}")
        if not (math.isfinite(self.p_jam) and self.p_jam >= 0.0):
            raise ValidationError(f"p_jam must be >= 0, got {self.p_jam!r}")
        if not (math.isfinite(self.noise_power) and self.noise_power > 0.0):
            raise ValidationError(f"noise_power must be > 0, got {self.noise_power!r}")

    @property
    def order(self) -> int:
        return self.d_tx.order

    def sjnr_of(self, candidate: np.ndarray) -> float:
        """Exact SJNR of a unit-modulus candidate via the rank-one factors."""
        f = abs(np.vdot(self.w_tx, candidate)) ** 2
        g = abs(np.vdot(self.w_jam, candidate)) ** 2
        return self.p_tx * f / (self.p_jam * g + self.noise_power)


@dataclass(frozen=True)
class OptimizerSettings:
    """Knobs of the alternating optimization and its inner solvers."""

    epsilon: float = 1e-3
    max_outer: int = 20
    n_draws: int = 200
    dinkelbach_tol: float = 1e-6
    inner_tol: float = 1e-7
    inner_max_iters: int = 20000
    max_dinkelbach_steps: int = 50
    restarts: int = 0

    def __post_init__(self):
        for name in ("epsilon", "dinkelbach_tol", "inner_tol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValidationError(f"{name} must be > 0, got {v!r}")
        for name in ("max_outer", "n_draws", "inner_max_iters", "max_dinkelbach_steps"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be >= 1, got {getattr(self, name)!r}")
        if self.restarts < 0:
            raise ValidationError(f"restarts must be >= 0, got {self.restarts!r}")

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "max_outer": self.max_outer,
            "n_draws": self.n_draws,
            "dinkelbach_tol": self.dinkelbach_tol,
            "inner_tol": self.inner_tol,
            "inner_max_iters": self.inner_max_iters,
            "max_dinkelbach_steps": self.max_dinkelbach_steps,
            "restarts": self.restarts,
        }


@dataclass(frozen=True, eq=False)
class PhaseSolveResult:
    """One phase-subproblem solve: feasible phases plus the certified bound."""

    phases: PhaseConfig
    sjnr_linear: float
    sdp_bound: float
    converged: bool
    inner_solves: int
    lambda_trace: tuple


@dataclass(frozen=True, eq=False)
class OptResult:
    """Full alternating-optimization outcome for one scenario and seed.

    sjnr_trace[0] is the identity-phase starting point; each following
    entry is the incumbent after one outer iteration, so the trace is
    nondecreasing and outer_iterations == len(sjnr_trace) - 1.
    """

    phases: PhaseConfig
    p_tx: float
    sjnr_trace: tuple
    sdp_bound: float
    outer_iterations: int
    converged: bool
    seed: int
    settings: OptimizerSettings

    @property
    def final_report(self) -> SjnrReport:
        return self.sjnr_trace[-1]

    def to_json_dict(self, include_trace: bool = True) -> dict:
        out = {
            "phases_rad": [float(t) for t in self.phases.thetas],
            "p_tx_w": self.p_tx,
            "sjnr_linear": self.final_report.sjnr_linear,
            "sjnr_db": self.final_report.sjnr_db,
            "sdp_bound_linear": self.sdp_bound,
            "sdp_bound_db": 10.0 * math.log10(self.sdp_bound) if self.sdp_bound > 0 else -math.inf,
            "outer_iterations": self.outer_iterations,
            "converged": self.converged,
            "seed": self.seed,
            "settings": self.settings.to_json_dict(),
        }
        if include_trace:
            out["sjnr_trace"] = [r.to_json_dict() for r in self.sjnr_trace]
        return out


def lift(channels: ChannelSet, scenario: Scenario, p_tx: float | None = None) -> LiftedProblem:
    """Build the rank-one lifted forms of both total path gains.

    For chi in {tx, jam}: w_k = h_ris_ue[k] * conj(h_chi_ris[k]) for the K
    element slots and w_last = conj(h_chi_ue), so that for any unit-modulus
    candidate u = [e^{j theta_1}, ..., e^{j theta_K}, 1]:

        w^H u = h_chi_ue + sum_k conj(h_ris_ue[k]) e^{j theta_k} h_chi_ris[k]

    which is the direct-plus-cascade gain evaluated by the channel module.
    """
    if channels.num_elements != scenario.num_elements:
        raise ValidationError(
            f"channel set has {channels.num_elements} elements, scenario "
            f"{scenario.num_elements}"
        )
    w_tx = np.concatenate(
        [channels.h_ris_ue * np.conj(channels.h_tx_ris), [np.conj(channels.h_tx_ue)]]
    )
    w_jam = np.concatenate(
        [channels.h_ris_ue * np.conj(channels.h_jam_ris), [np.conj(channels.h_jam_ue)]]
    )
    return LiftedProblem(
        d_tx=HermitianMatrix(np.outer(w_tx, w_tx.conj())),
        d_jam=HermitianMatrix(np.outer(w_jam, w_jam.conj())),
        w_tx=w_tx,
        w_jam=w_jam,
        p_tx=scenario.p_tx_max if p_tx is None else p_tx,
        p_jam=scenario.p_jam,
        noise_power=scenario.noise_power,
    )


def optimize_power(gains, p_max: float) -> float:
    """The SJNR is nondecreasing in transmit power, so the cap is optimal."""
    if not (math.isfinite(p_max) and p_max > 0.0):
        raise ValidationError(f"p_max must be > 0, got {p_max!r}")
    return p_max


def _aligned_candidate(w: np.ndarray) -> np.ndarray:
    """Unit-modulus candidate maximizing |w^H u|, trailing slot pinned to 1."""
    mag = np.abs(w)
    u = np.ones(w.shape, dtype=complex)
    nz = mag > 0.0
    u[nz] = w[nz] / mag[nz]
    u = u * np.conj(u[-1])
    u[-1] = 1.0
    return u


def optimize_phases(lifted: LiftedProblem, settings: OptimizerSettings, seed) -> PhaseSolveResult:
    """Solve the phase subproblem: fractional SDR plus scored extraction.

    The extraction pool is the eigen/Gaussian candidates of the relaxed
    solution plus the deterministic coherent alignment of the transmitter
    factor (exact in the no-jamming limit). Candidates are scored by their
    true SJNR, so the returned value is always feasible and the certified
    relaxation bound always dominates it.
    """
    fs = solve_fractional_sdp(
        lifted.d_tx,
        lifted.d_jam,
        lifted.p_tx,
        lifted.p_jam,
        lifted.noise_power,
        tol=settings.dinkelbach_tol,
        inner_tol=settings.inner_tol,
        max_steps=settings.max_dinkelbach_steps,
        inner_max_iters=settings.inner_max_iters,
    )
    best_vec, best_score = extract_rank_one(fs.v_opt, settings.n_draws, seed, lifted.sjnr_of)
    aligned = _aligned_candidate(lifted.w_tx)
    aligned_score = lifted.sjnr_of(aligned)
    if aligned_score > best_score:
        best_vec, best_score = aligned, aligned_score
    return PhaseSolveResult(
        phases=PhaseConfig(np.angle(best_vec[:-1])),
        sjnr_linear=best_score,
        sdp_bound=max(fs.ratio_upper_bound, best_score),
        converged=fs.converged,
        inner_solves=fs.inner_solves,
        lambda_trace=fs.lambda_trace,
    )


def alternate(scenario: Scenario, settings: OptimizerSettings | None = None, seed: int = 0) -> OptResult:
    """Alternating optimization with incumbent retention.

    Starts from identity phases at the power cap, records the SJNR after
    each outer iteration, and stops once the relative improvement drops
    below epsilon or max_outer is reached.
    """
    settings = settings or OptimizerSettings()
    channels = build_channel_set(scenario)
    p_tx = scenario.p_tx_max
    phases = identity_phases(scenario.num_elements)
    report = sjnr(
        effective_gains(channels, phases), p_tx, scenario.p_jam, scenario.noise_power
    )
    trace = [report]
    incumbent_phases, incumbent = phases, report
    lifted = lift(channels, scenario, p_tx=p_tx)
    children = np.random.SeedSequence(seed).spawn(settings.max_outer)
    sdp_bound = math.inf
    converged = False
    inner_ok = True

    for i in range(settings.max_outer):
        p_tx = optimize_power(
            effective_gains(channels, incumbent_phases), scenario.p_tx_max
        )
        ps = optimize_phases(lifted, settings, children[i])
        inner_ok = inner_ok and ps.converged
        sdp_bound = min(sdp_bound, ps.sdp_bound)
        candidate_report = sjnr(
            effective_gains(channels, ps.phases), p_tx, scenario.p_jam, scenario.noise_power
        )
        if candidate_report.sjnr_linear > incumbent.sjnr_linear:
            incumbent_phases, incumbent = ps.phases, candidate_report
        previous = trace[-1].sjnr_linear
        trace.append(incumbent)
        if previous > 0.0:
            rel_change = abs(incumbent.sjnr_linear - previous) / previous
        else:
            rel_change = math.inf if incumbent.sjnr_linear > 0.0 else 0.0
        if rel_change < settings.epsilon:
            converged = True
            break

    return OptResult(
        phases=incumbent_phases,
        p_tx=p_tx,
        sjnr_trace=tuple(trace),
        sdp_bound=max(sdp_bound, incumbent.sjnr_linear),
        outer_iterations=len(trace) - 1,
        converged=converged and inner_ok,
        seed=seed,
        settings=settings,
    )


def optimize(scenario: Scenario, settings: OptimizerSettings | None = None, seed: int = 0) -> OptResult:
    """alternate() plus optional extra seeded restarts; best final SJNR wins.

    The phase subproblem does not depend on the current phases, so restarts
    vary only the extraction randomization; ties keep the earliest run.
    """
    settings = settings or OptimizerSettings()
    best = alternate(scenario, settings, seed)
    for r in range(1, settings.restarts + 1):
        contender = alternate(scenario, settings, seed + 1000003 * r)
        if contender.final_report.sjnr_linear > best.final_report.sjnr_linear:
            best = contender
    return best
