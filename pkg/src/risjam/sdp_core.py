"""Semidefinite kernels: unit-diagonal SDP and a fractional solver on top.

solve_unit_diag_sdp maximizes tr(C X) over {X Hermitian, X >= 0 (PSD),
diag(X) = 1} with ADMM operator splitting: an affine projection (pin the
diagonal) alternates with a PSD projection (dense eigendecomposition).
Convergence is declared only through a certified optimality gap that is
valid at any iterate:

  lower bound: tr(C X_hat) at the exactly feasible X_hat = S Z S,
               S = diag(1/sqrt(diag Z));
  upper bound: the dual of the problem is min sum(y) s.t. Diag(y) >= C,
               so any real y shifted by the most negative eigenvalue of
               Diag(y) - C is dual feasible. The candidate y comes from
               the ADMM stationarity condition y = diag(C) - rho*diag(U).

solve_fractional_sdp maximizes (ns*tr(N V)) / (ds*tr(D V) + off) over the
same feasible set by Dinkelbach iteration, each step solving the inner SDP
with C = ns*N - lambda*ds*D and warm-starting from the previous state. The
certified inner bounds give a certified upper bound on the ratio.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import ValidationError

# Allowance for eigensolver backward error when certifying dual feasibility.
_EIG_SAFETY = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense complex Hermitian matrix; symmetrized on construction."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValidationError("matrix entries must be finite")
        scale = np.linalg.norm(arr)
        asym = np.linalg.norm(arr - arr.conj().T)
        if asym > 1e-8 * max(1.0, scale):
            raise ValidationError(
                f"matrix is not Hermitian: asymmetry {asym:.3e} at scale {scale:.3e}"
            )
        sym = 0.5 * (arr + arr.conj().T)
        sym.setflags(write=False)
        object.__setattr__(self, "entries", sym)

    @property
    def order(self) -> int:
        return int(self.entries.shape[0])


@dataclass(frozen=True, eq=False)
class SdpSolution:
    """Certified solve result; objective is tr(C x_opt) at a feasible point."""

    x_opt: HermitianMatrix
    objective: float
    duality_gap_estimate: float
    iterations: int
    converged: bool


@dataclass(frozen=True, eq=False)
class FractionalSolution:
    """Dinkelbach result; ratio_opt is attained by the feasible v_opt."""

    v_opt: HermitianMatrix
    ratio_opt: float
    ratio_upper_bound: float
    lambda_trace: tuple
    inner_solves: int
    converged: bool


def _as_hermitian(c) -> HermitianMatrix:
    return c if isinstance(c, HermitianMatrix) else HermitianMatrix(c)


def _hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def _real_trace_product(a: np.ndarray, b: np.ndarray) -> float:
    """tr(a b) for Hermitian a, b (real up to rounding)."""
    return float(np.real(np.vdot(a, b)))


def _feasible_primal(c: np.ndarray, z: np.ndarray) -> tuple:
    """Rescale z onto the unit diagonal, preserving PSD; return (tr(c x), x)."""
    d = np.real(np.diag(z)).copy()
    ok = d > 1e-12
    s = np.zeros_like(d)
    s[ok] = 1.0 / np.sqrt(d[ok])
    x = z * np.outer(s, s)
    if not np.all(ok):
        bad = ~ok
        x[bad, :] = 0.0
        x[:, bad] = 0.0
    x = _hermitize(x)
    np.fill_diagonal(x, 1.0)
    return _real_trace_product(c, x), x


def _feasible_dual_bound(c: np.ndarray, rho: float, u: np.ndarray) -> float:
    """Upper bound from the dual min sum(y) s.t. Diag(y) >= c."""
    y = np.real(np.diag(c)) - rho * np.real(np.diag(u))
    m = np.diag(y).astype(complex) - c
    lam_min = float(np.linalg.eigvalsh(m)[0])
    slack = _EIG_SAFETY * max(1.0, float(np.linalg.norm(m)))
    mu = max(0.0, -(lam_min - slack))
    return float(np.sum(y) + len(y) * mu)


def solve_unit_diag_sdp(
    c,
    tol: float = 1e-7,
    max_iters: int = 20000,
    warm_state: dict | None = None,
    state_out: dict | None = None,
    trace_fn=None,
    check_every: int = 25,
) -> SdpSolution:
    """Maximize tr(c X) s.t. diag(X) = 1, X PSD, with a certified gap.

    Stops when upper - lower <= tol*(1 + |lower|). warm_state/state_out
    carry the splitting state (z, u, rho) across related solves.
    """
    c = _as_hermitian(c)
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValidationError(f"tol must be positive, got {tol!r}")
    if max_iters < 0:
        raise ValidationError(f"max_iters must be >= 0, got {max_iters!r}")
    cm = c.entries
    n = c.order
    norm_c = float(np.linalg.norm(cm))

    if warm_state:
        z = np.array(warm_state["z"], dtype=complex)
        u = np.array(warm_state["u"], dtype=complex)
        rho = float(warm_state["rho"])
    else:
        z = np.eye(n, dtype=complex)
        u = np.zeros((n, n), dtype=complex)
        rho = max(norm_c / n, 1e-12)

    alpha = 1.6  # over-relaxation
    best_lb = -math.inf
    best_ub = math.inf
    best_x = None
    converged = False
    iterations = 0

    def certify(iteration: int) -> bool:
        nonlocal best_lb, best_ub, best_x
        lb, x_hat = _feasible_primal(cm, z)
        if lb > best_lb:
            best_lb, best_x = lb, x_hat
        best_ub = min(best_ub, _feasible_dual_bound(cm, rho, u))
        gap = max(0.0, best_ub - best_lb)
        if trace_fn is not None:
            trace_fn({"iteration": iteration, "objective": best_lb, "gap": gap})
        return gap <= tol * (1.0 + abs(best_lb))

    converged = certify(0)
    if not converged:
        for it in range(1, max_iters + 1):
            iterations = it
            x = z - u + cm / rho
            x = _hermitize(x)
            np.fill_diagonal(x, 1.0)
            x_relaxed = alpha * x + (1.0 - alpha) * z
            w, q = np.linalg.eigh(_hermitize(x_relaxed + u))
            z_new = _hermitize((q * np.clip(w, 0.0, None)) @ q.conj().T)
            u = u + x_relaxed - z_new
            if it % 10 == 0:
                pri = float(np.linalg.norm(x - z_new))
                dua = rho * float(np.linalg.norm(z_new - z))
                if pri > 10.0 * dua:
                    rho *= 2.0
                    u = u / 2.0
                elif dua > 10.0 * pri:
                    rho /= 2.0
                    u = u * 2.0
            z = z_new
            if it % check_every == 0 and certify(it):
                converged = True
                break
        else:
            converged = certify(iterations) if max_iters > 0 else converged

    if best_x is None:  # pragma: no cover - certify always runs at least once
        _, best_x = _feasible_primal(cm, z)
        best_lb = _real_trace_product(cm, best_x)
    if state_out is not None:
        state_out.update({"z": z, "u": u, "rho": rho})
    return SdpSolution(
        x_opt=HermitianMatrix(best_x),
        objective=best_lb,
        duality_gap_estimate=max(0.0, best_ub - best_lb),
        iterations=iterations,
        converged=converged,
    )


def _check_psd(name: str, m: HermitianMatrix) -> None:
    scale = max(1.0, float(np.linalg.norm(m.entries)))
    lam_min = float(np.linalg.eigvalsh(m.entries)[0])
    if lam_min < -1e-8 * scale:
        raise ValidationError(f"{name} must be PSD; min eigenvalue {lam_min:.3e}")


def _phase_project(x: np.ndarray) -> np.ndarray:
    """Unit-modulus projection with the last (homogenization) entry pinned to 1."""
    mag = np.abs(x)
    out = np.ones(x.shape, dtype=complex)
    nz = mag > 0.0
    out[nz] = x[nz] / mag[nz]
    out = out * np.conj(out[-1])
    out[-1] = 1.0
    return out


def aligned_rank_one(m: HermitianMatrix) -> np.ndarray:
    """Phase-projected leading eigenvector; a feasible rank-one lifting point."""
    _, q = np.linalg.eigh(m.entries)
    return _phase_project(q[:, -1])


def solve_fractional_sdp(
    num,
    den,
    num_scale: float,
    den_scale: float,
    den_offset: float,
    tol: float = 1e-6,
    inner_tol: float = 1e-7,
    max_steps: int = 50,
    inner_max_iters: int = 20000,
    trace_fn=None,
) -> FractionalSolution:
    """Maximize (num_scale*tr(num V)) / (den_scale*tr(den V) + den_offset).

    Feasible set: V Hermitian PSD with unit diagonal. Dinkelbach iteration
    with incumbent retention, so the lambda trace is nondecreasing. Stops
    once the certified gap on the ratio, ratio_upper_bound - ratio_opt,
    falls below tol*(1 + |ratio_opt|). The problem is internally normalized
    so that num_scale*tr(num) + den_scale*tr(den) + den_offset = 1, making
    tolerances meaningful for arbitrarily scaled physical inputs (the ratio
    is unchanged).
    """
    num = _as_hermitian(num)
    den = _as_hermitian(den)
    if num.order != den.order:
        raise ValidationError(f"order mismatch: {num.order} vs {den.order}")
    for name, v in (("num_scale", num_scale), ("den_scale", den_scale)):
        if not (math.isfinite(v) and v >= 0.0):
            raise ValidationError(f"{name} must be finite and >= 0, got {v!r}")
    if not (math.isfinite(den_offset) and den_offset > 0.0):
        raise ValidationError(f"den_offset must be > 0, got {den_offset!r}")
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValidationError(f"tol must be positive, got {tol!r}")
    _check_psd("num", num)
    _check_psd("den", den)

    n = num.order
    scale = (
        num_scale * float(np.real(np.trace(num.entries)))
        + den_scale * float(np.real(np.trace(den.entries)))
        + den_offset
    )
    a = (num_scale / scale) * num.entries
    b = (den_scale / scale) * den.entries
    off = den_offset / scale

    def ratio_parts(v: np.ndarray) -> tuple:
        f = _real_trace_product(a, v)
        g = _real_trace_product(b, v) + off
        if f < -1e-9 or g <= 0.0:
            raise ValidationError(
                f"negative trace in fractional objective: f={f:.3e}, g={g:.3e}"
            )
        return max(f, 0.0), g

    # Feasible starting point: the better of the numerator-aligned rank-one
    # lifting and the all-ones vector.
    candidates = [np.ones(n, dtype=complex), aligned_rank_one(num)]
    best_v = None
    best_ratio = -math.inf
    for ups in candidates:
        v = np.outer(ups, ups.conj())
        f, g = ratio_parts(v)
        if f / g > best_ratio:
            best_ratio = f / g
            best_v = v

    lam = best_ratio
    lambda_trace = [lam]
    ratio_upper = math.inf
    state: dict = {"z": best_v, "u": np.zeros((n, n), dtype=complex), "rho": None}
    state["rho"] = max(float(np.linalg.norm(a - lam * b)) / n, 1e-12)
    inner_solves = 0
    converged = False
    inner_tol_eff = inner_tol

    for _ in range(max_steps):
        c_lam = HermitianMatrix(a - lam * b)
        sol = solve_unit_diag_sdp(
            c_lam,
            tol=inner_tol_eff,
            max_iters=inner_max_iters,
            warm_state=state,
            state_out=state,
            trace_fn=trace_fn,
        )
        inner_solves += 1
        v = sol.x_opt.entries
        f, g = ratio_parts(v)
        if f / g > best_ratio:
            best_ratio = f / g
            best_v = v
        # Certified upper bound: for any feasible V, F - lam*G <= phi(lam)
        # <= inner objective + inner gap - lam*off, and G >= off.
        phi_ub = sol.objective + sol.duality_gap_estimate - lam * off
        ratio_upper = min(ratio_upper, lam + max(phi_ub, 0.0) / off)
        lam = best_ratio
        lambda_trace.append(lam)
        if ratio_upper - best_ratio <= tol * (1.0 + abs(best_ratio)):
            converged = True
            break
        # A warm-started re-solve exits immediately once it meets the inner
        # tolerance, so when the inner certificate dominates the residual
        # the outer gap can only shrink by tightening that tolerance.
        if sol.duality_gap_estimate > 0.5 * max(phi_ub, 0.0):
            inner_tol_eff = max(0.1 * inner_tol_eff, 1e-13)

    ratio_upper = max(ratio_upper, best_ratio)
    return FractionalSolution(
        v_opt=HermitianMatrix(best_v),
        ratio_opt=best_ratio,
        ratio_upper_bound=ratio_upper,
        lambda_trace=tuple(lambda_trace),
        inner_solves=inner_solves,
        converged=converged,
    )


def extract_rank_one(v, n_draws: int, seed, score) -> tuple:
    """Best unit-modulus vector from eigen and Gaussian candidates.

    Candidates are the phase-projected leading eigenvector of v plus
    n_draws phase-projected samples from CN(0, v); every candidate has
    its last entry pinned to exactly 1. Returns (vector, score) for the
    caller-scored maximum; ties keep the earliest candidate.
    """
    v = _as_hermitian(v)
    if n_draws < 1:
        raise ValidationError(f"n_draws must be >= 1, got {n_draws!r}")
    w, q = np.linalg.eigh(v.entries)
    candidates = [_phase_project(q[:, -1])]
    root = q * np.sqrt(np.clip(w, 0.0, None))
    rng = np.random.default_rng(seed)
    shape = (v.order, n_draws)
    samples = root @ ((rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0))
    for j in range(n_draws):
        candidates.append(_phase_project(samples[:, j]))
    best_vec = None
    best_score = -math.inf
    for cand in candidates:
        s = float(score(cand))
        if s > best_score:
            best_score = s
            best_vec = cand
    return best_vec, best_score
