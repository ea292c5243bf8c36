"""Total effective gains and the signal-to-jamming-plus-noise ratio."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelSet, PhaseConfig, build_channel_set, cascade_channel, identity_phases
from .scenario import Scenario, ValidationError, linear_to_db


@dataclass(frozen=True)
class EffectiveGains:
    """Total power gains of the two satellite paths (direct + reflected)."""

    gamma_tx: float
    delta_jam: float

    def __post_init__(self):
        for name in ("gamma_tx", "delta_jam"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValidationError(f"{name} must be finite and >= 0, got {v!r}")


@dataclass(frozen=True)
class SjnrReport:
    """SJNR with its power budget; linear and dB views are kept consistent."""

    sjnr_linear: float
    sjnr_db: float
    signal_w: float
    jam_w: float
    noise_w: float

    def __post_init__(self):
        recomputed = self.signal_w / (self.jam_w + self.noise_w)
        scale = max(abs(recomputed), abs(self.sjnr_linear), 1e-300)
        if abs(recomputed - self.sjnr_linear) > 1e-12 * scale:
            raise ValidationError(
                f"inconsistent report: sjnr_linear={self.sjnr_linear!r} but "
                f"signal/(jam+noise)={recomputed!r}"
            )

    def to_json_dict(self) -> dict:
        return {
            "sjnr_linear": self.sjnr_linear,
            "sjnr_db": self.sjnr_db,
            "signal_w": self.signal_w,
            "jam_w": self.jam_w,
            "noise_w": self.noise_w,
        }


def effective_gains(channels: ChannelSet, phases: PhaseConfig) -> EffectiveGains:
    """|direct + reflected|^2 for the transmitter and the jammer paths."""
    casc_tx = cascade_channel(channels.h_ris_ue, phases, channels.h_tx_ris)
    casc_jam = cascade_channel(channels.h_ris_ue, phases, channels.h_jam_ris)
    return EffectiveGains(
        gamma_tx=abs(channels.h_tx_ue + casc_tx) ** 2,
        delta_jam=abs(channels.h_jam_ue + casc_jam) ** 2,
    )


def sjnr(gains: EffectiveGains, p_tx: float, p_jam: float, noise_power: float) -> SjnrReport:
    """p_tx*gamma / (p_jam*delta + noise), reported with its power terms."""
    if not (math.isfinite(p_tx) and p_tx >= 0.0):
        raise ValidationError(f"p_tx must be finite and >= 0, got {p_tx!r}")
    if not (math.isfinite(p_jam) and p_jam >= 0.0):
        raise ValidationError(f"p_jam must be finite and >= 0, got {p_jam!r}")
    if not (math.isfinite(noise_power) and noise_power > 0.0):
        raise ValidationError(f"noise_power must be finite and > 0, got {noise_power!r}")
    signal_w = p_tx * gains.gamma_tx
    jam_w = p_jam * gains.delta_jam
    sjnr_linear = signal_w / (jam_w + noise_power)
    sjnr_db = linear_to_db(sjnr_linear) if sjnr_linear > 0.0 else -math.inf
    return SjnrReport(
        sjnr_linear=sjnr_linear,
        sjnr_db=sjnr_db,
        signal_w=signal_w,
        jam_w=jam_w,
        noise_w=noise_power,
    )


def evaluate(scenario: Scenario, phases: PhaseConfig | None = None, p_tx: float | None = None) -> SjnrReport:
    """SJNR of a scenario at given phases (default identity) and power (default max)."""
    if phases is None:
        phases = identity_phases(scenario.num_elements)
    if phases.num_elements != scenario.num_elements:
        raise ValidationError(
            f"scenario has {scenario.num_elements} elements but phases carry "
            f"{phases.num_elements}"
        )
    channels = build_channel_set(scenario)
    gains = effective_gains(channels, phases)
    return sjnr(
        gains,
        scenario.p_tx_max if p_tx is None else p_tx,
        scenario.p_jam,
        scenario.noise_power,
    )
