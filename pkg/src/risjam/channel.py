"""LoS channel synthesis: direct scalars, planar-array steering, cascades.

Every link follows the same flat-fading LoS template: amplitude
sqrt(rho * d**-alpha) and geometric phase exp(-j*2*pi*d/lambda). Array
links additionally carry the element-wise planar steering response.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .scenario import (
    AoaAngles,
    Position3D,
    Scenario,
    ValidationError,
    aoa_angles,
    distance,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class PhaseConfig:
    """Per-element RIS phase shifts in radians, normalized to [0, 2pi)."""

    thetas: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.thetas, dtype=float))
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError("thetas must be a nonempty 1-D array")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("phase shifts must be finite")
        arr = np.mod(arr, TWO_PI)
        # np.mod can land exactly on 2*pi for tiny negative inputs.
        arr = np.where(arr >= TWO_PI, arr - TWO_PI, arr)
        arr.setflags(write=False)
        object.__setattr__(self, "thetas", arr)

    @property
    def num_elements(self) -> int:
        return int(self.thetas.size)

    def unit_phasors(self) -> np.ndarray:
        """exp(j*theta_k) for each element; the diagonal of the phase matrix."""
        return np.exp(1j * self.thetas)


def identity_phases(num_elements: int) -> PhaseConfig:
    """All-zero phase shifts (the RIS phase matrix is the identity)."""
    if num_elements < 1:
        raise ValidationError(f"need at least one element, got {num_elements}")
    return PhaseConfig(np.zeros(num_elements))


@dataclass(frozen=True, eq=False)
class ChannelSet:
    """All complex gains of one scenario; a pure function of its geometry.

    h_tx_ue / h_jam_ue are the direct satellite-to-user scalars; the three
    vectors are the satellite-to-RIS and RIS-to-user element-wise channels.
    """

    h_tx_ue: complex
    h_jam_ue: complex
    h_tx_ris: np.ndarray
    h_jam_ris: np.ndarray
    h_ris_ue: np.ndarray

    def __post_init__(self):
        for name in ("h_tx_ris", "h_jam_ris", "h_ris_ue"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.ndim != 1 or arr.size < 1:
                raise ValidationError(f"{name} must be a nonempty 1-D vector")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        k = self.h_tx_ris.size
        if self.h_jam_ris.size != k or self.h_ris_ue.size != k:
            raise ValidationError(
                "channel vectors disagree on element count: "
                f"{self.h_tx_ris.size}, {self.h_jam_ris.size}, {self.h_ris_ue.size}"
            )

    @property
    def num_elements(self) -> int:
        return int(self.h_tx_ris.size)

    def to_json_dict(self) -> dict:
        def c2pair(z: complex) -> list:
            return [float(z.real), float(z.imag)]

        def vec(arr: np.ndarray) -> list:
            return [c2pair(complex(z)) for z in arr]

        return {
            "num_elements": self.num_elements,
            "h_tx_ue": c2pair(self.h_tx_ue),
            "h_jam_ue": c2pair(self.h_jam_ue),
            "h_tx_ris": vec(self.h_tx_ris),
            "h_jam_ris": vec(self.h_jam_ris),
            "h_ris_ue": vec(self.h_ris_ue),
        }


def direct_channel(scenario: Scenario, pos_from: Position3D, pos_to: Position3D) -> complex:
    """Scalar LoS gain sqrt(rho*d**-alpha_d) * exp(-j*2*pi*d/lambda)."""
    d = distance(pos_from, pos_to)
    if d <= 0.0:
        raise ValidationError("direct channel requires distinct endpoints")
    magnitude = math.sqrt(scenario.rho * d ** (-scenario.alpha_direct))
    return magnitude * cmath.exp(-1j * TWO_PI * d / scenario.wavelength)


def steering_vector(
    angles: AoaAngles,
    k_rows: int,
    k_cols: int,
    element_spacing: float,
    wavelength: float,
) -> np.ndarray:
    """Planar-array phase response: Kronecker product of row and column ramps.

    Rows step along a_x = sin_vert*cos_horiz, columns along
    a_z = sin_vert*sin_horiz; entry 0 is the phase reference.
    """
    if k_rows < 1 or k_cols < 1:
        raise ValidationError(f"array size must be >= 1x1, got {k_rows}x{k_cols}")
    a_x = angles.sin_vert * angles.cos_horiz
    a_z = angles.sin_vert * angles.sin_horiz
    step = -TWO_PI * element_spacing / wavelength
    row = np.exp(1j * step * a_x * np.arange(k_rows))
    col = np.exp(1j * step * a_z * np.arange(k_cols))
    return np.kron(row, col)


def ris_link_channel(scenario: Scenario, far_node: Position3D) -> np.ndarray:
    """Element-wise channel between a far node and the RIS array.

    Produces the satellite-to-RIS vectors and, with the user position as
    far node, the RIS-to-user vector. The steering response is scaled by
    the common amplitude sqrt(rho*d**-alpha_r) and the bulk propagation
    phase exp(-j*2*pi*d/lambda) measured at element 0 (far field).
    """
    d = distance(far_node, scenario.pos_ris)
    if d <= 0.0:
        raise ValidationError("RIS link requires a node distinct from the RIS")
    angles = aoa_angles(far_node, scenario.pos_ris)
    steer = steering_vector(
        angles,
        scenario.k_rows,
        scenario.k_cols,
        scenario.element_spacing,
        scenario.wavelength,
    )
    amplitude = math.sqrt(scenario.rho * d ** (-scenario.alpha_ris))
    bulk = cmath.exp(-1j * TWO_PI * d / scenario.wavelength)
    return amplitude * bulk * steer


def cascade_channel(
    h_ris_ue: np.ndarray, phases: PhaseConfig, h_sat_ris: np.ndarray
) -> complex:
    """Reflected-path scalar: sum_k conj(h_ris_ue[k]) * e^{j theta_k} * h_sat_ris[k]."""
    h_ris_ue = np.asarray(h_ris_ue, dtype=complex)
    h_sat_ris = np.asarray(h_sat_ris, dtype=complex)
    if h_ris_ue.shape != h_sat_ris.shape or h_ris_ue.shape != phases.thetas.shape:
        raise ValidationError(
            "cascade requires equal-length vectors, got "
            f"{h_ris_ue.shape}, {phases.thetas.shape}, {h_sat_ris.shape}"
        )
    return complex(np.sum(np.conj(h_ris_ue) * phases.unit_phasors() * h_sat_ris))


def build_channel_set(scenario: Scenario) -> ChannelSet:
    """Synthesize every channel of the scenario; deterministic and pure.

    With the RIS disabled the array vectors are zero, which removes the
    reflected path from every downstream expression.
    """
    k = scenario.num_elements
    if scenario.ris_enabled:
        h_tx_ris = ris_link_channel(scenario, scenario.pos_tx)
        h_jam_ris = ris_link_channel(scenario, scenario.pos_jam)
        h_ris_ue = ris_link_channel(scenario, scenario.pos_ue)
    else:
        h_tx_ris = np.zeros(k, dtype=complex)
        h_jam_ris = np.zeros(k, dtype=complex)
        h_ris_ue = np.zeros(k, dtype=complex)
    return ChannelSet(
        h_tx_ue=direct_channel(scenario, scenario.pos_tx, scenario.pos_ue),
        h_jam_ue=direct_channel(scenario, scenario.pos_jam, scenario.pos_ue),
        h_tx_ris=h_tx_ris,
        h_jam_ris=h_jam_ris,
        h_ris_ue=h_ris_ue,
    )
