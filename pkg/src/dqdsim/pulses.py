"""Piecewise-constant electrode pulses and their six-dimensional evolution.

Gates are driven by rectangular voltage pulses on seven electrodes:

* ``E1``, ``E2`` — intra-qubit exchange between the two DQDs of qubit 1 or 2.
  Within the qubit's logical doublet this coupling acts as the x-Pauli
  matrix.  The same pulse shifts the two symmetric leakage configurations
  by the amplitude, so they accumulate exactly the dynamical phase of the
  driven doublet's symmetric combination; the generator therefore carries
  the identity on the leakage rows alongside the embedded x-coupling.  The
  overall sign fixes the rotation sense so that a quarter-period pulse
  lands on the catalog square-root gates exactly, and a half-period pulse
  on the full inversions.
* ``E12`` — exchange between the two inner DQDs (one from each qubit).
  Its generator is the exchange gate itself, which is Hermitian; a
  half-period pulse reproduces the catalog exchange gate.
* ``T1`` .. ``T4`` — level splitting of one individual DQD.  Within the
  computational subspace this is a z-rotation of the DQD's qubit; the
  sign alternates between the first and second DQD of a pair because
  raising the ``+`` level of the first DQD raises logical ``|0>`` while
  raising the ``+`` level of the second raises logical ``|1>``.  Outside
  the computational subspace the generator is taken to vanish.

A segment of amplitude ``a`` (ueV) and duration ``t`` (ns) contributes the
unitary ``exp(-1j * H(a) * t / hbar)``; segments compose in the order
listed, first segment acting first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .basis import COMPUTATIONAL_ROWS, LEAKAGE_ROWS
from .constants import HBAR_UEV_NS
from .gates import GateId, gate_matrix
from .linalg import expm_hermitian, is_unitary, require_normalized

__all__ = [
    "ELECTRODES",
    "PulseSegment",
    "single_qubit_hamiltonian",
    "extend_generator",
    "leakage_identity",
    "segment_generator",
    "evolve",
    "calibrate",
    "calibrate_phase_flip",
    "swap_sequence",
    "sqrt_swap_sequence",
    "schedule_to_json",
    "schedule_from_json",
    "load_schedule",
]

#: Valid electrode names, one per physical control line.
ELECTRODES = ("E1", "E2", "E12", "T1", "T2", "T3", "T4")

_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

#: Electrode -> (qubit index, sign of the z-splitting on the logical doublet).
_TUNNEL_ELECTRODES = {"T1": (1, +1.0), "T2": (1, -1.0), "T3": (2, +1.0), "T4": (2, -1.0)}


@dataclass(frozen=True)
class PulseSegment:
    """One rectangular pulse: which electrode, how strong, how long."""

    electrode: str
    amplitude_ueV: float
    duration_ns: float

    def __post_init__(self) -> None:
        if self.electrode not in ELECTRODES:
            raise ValueError(
                f"unknown electrode {self.electrode!r}; expected one of {ELECTRODES}"
            )
        if not np.isfinite(self.amplitude_ueV):
            raise ValueError(f"amplitude must be finite, got {self.amplitude_ueV!r}")
        if not (np.isfinite(self.duration_ns) and self.duration_ns >= 0.0):
            raise ValueError(f"duration must be >= 0 ns, got {self.duration_ns!r}")


def single_qubit_hamiltonian(level_splitting_ueV: float, exchange_ueV: float) -> np.ndarray:
    """Two-level Hamiltonian of one qubit: z-splitting plus x-exchange."""
    p = float(level_splitting_ueV)
    a = float(exchange_ueV)
    return np.array([[p, a], [a, -p]], dtype=complex)


def extend_generator(h2: np.ndarray, qubit: int) -> np.ndarray:
    """Embed a single-qubit generator into the six-configuration space.

    The 2x2 generator acts on the logical doublet of ``qubit`` (1 or 2),
    tensored with the identity on the other qubit; the two leakage rows
    are left untouched (zero rows and columns).
    """
    h2 = np.asarray(h2, dtype=complex)
    if h2.shape != (2, 2):
        raise ValueError(f"expected a 2x2 generator, got shape {h2.shape}")
    if qubit == 1:
        block = np.kron(h2, np.eye(2))
    elif qubit == 2:
        block = np.kron(np.eye(2), h2)
    else:
        raise ValueError(f"qubit must be 1 or 2, got {qubit}")
    h6 = np.zeros((6, 6), dtype=complex)
    rows = np.asarray(COMPUTATIONAL_ROWS)
    h6[np.ix_(rows, rows)] = block
    return h6


def leakage_identity() -> np.ndarray:
    """Projector onto the two leakage configurations."""
    h6 = np.zeros((6, 6), dtype=complex)
    for r in LEAKAGE_ROWS:
        h6[r, r] = 1.0
    return h6


def segment_generator(segment: PulseSegment) -> np.ndarray:
    """Hermitian 6x6 generator (ueV) for one pulse segment."""
    a = float(segment.amplitude_ueV)
    name = segment.electrode
    if name == "E1":
        return -a * (extend_generator(_PAULI_X, 1) + leakage_identity())
    if name == "E2":
        return -a * (extend_generator(_PAULI_X, 2) + leakage_identity())
    if name == "E12":
        return a * gate_matrix(GateId.EXCHANGE)
    qubit, sign = _TUNNEL_ELECTRODES[name]
    return extend_generator(sign * a * _PAULI_Z, qubit)


def evolve(
    schedule: Sequence[PulseSegment],
    initial: np.ndarray | None = None,
) -> np.ndarray:
    """Apply a pulse schedule to a state vector or propagator.

    Args:
        schedule: segments in execution order (first acts first).
        initial: a normalized 6-vector, a unitary 6x6 matrix, or ``None``
            for the identity propagator.

    Returns:
        The evolved vector, or the total unitary when ``initial`` is a
        matrix / ``None``.
    """
    if initial is None:
        state = np.eye(6, dtype=complex)
    else:
        initial = np.asarray(initial, dtype=complex)
        if initial.ndim == 1:
            if initial.shape != (6,):
                raise ValueError(f"expected a 6-vector, got shape {initial.shape}")
            state = require_normalized(initial)
        elif initial.shape == (6, 6):
            if not is_unitary(initial, atol=1e-9):
                raise ValueError("initial matrix is not unitary within 1e-9")
            state = initial.copy()
        else:
            raise ValueError(f"initial must be a 6-vector or 6x6 matrix, got {initial.shape}")

    for segment in schedule:
        u = expm_hermitian(segment_generator(segment), segment.duration_ns / HBAR_UEV_NS)
        state = u @ state
    return state


def calibrate(gate: GateId, amplitude_ueV: float) -> list[PulseSegment]:
    """Single-segment schedule reproducing a pulse-native catalog gate.

    The full inversions and the inner exchange need a half-period pulse of
    duration ``pi * hbar / (2 * amplitude)``; the square roots take exactly
    half that.  Only positive amplitudes are physical here.
    """
    a = float(amplitude_ueV)
    if not (np.isfinite(a) and a > 0.0):
        raise ValueError(f"amplitude must be positive, got {amplitude_ueV!r}")
    half_period = np.pi * HBAR_UEV_NS / (2.0 * a)
    if gate is GateId.NOT1:
        return [PulseSegment("E1", a, half_period)]
    if gate is GateId.NOT2:
        return [PulseSegment("E2", a, half_period)]
    if gate is GateId.SQRT_NOT1:
        return [PulseSegment("E1", a, half_period / 2.0)]
    if gate is GateId.SQRT_NOT2:
        return [PulseSegment("E2", a, half_period / 2.0)]
    if gate is GateId.EXCHANGE:
        return [PulseSegment("E12", a, half_period)]
    raise ValueError(f"no single-pulse calibration for gate {gate.value!r}")


def calibrate_phase_flip(dqd: int, amplitude_ueV: float) -> list[PulseSegment]:
    """Schedule flipping the phase between the levels of one DQD (1..4).

    Reproduces a logical z-inversion of the DQD's qubit up to a global
    phase; the leakage rows are untouched.
    """
    if dqd not in (1, 2, 3, 4):
        raise ValueError(f"dqd must be 1..4, got {dqd}")
    a = float(amplitude_ueV)
    if not (np.isfinite(a) and a > 0.0):
        raise ValueError(f"amplitude must be positive, got {amplitude_ueV!r}")
    return [PulseSegment(f"T{dqd}", a, np.pi * HBAR_UEV_NS / (2.0 * a))]


def swap_sequence(
    intra_amplitude_ueV: float, inter_amplitude_ueV: float | None = None
) -> list[PulseSegment]:
    """Four-pulse swap of the two qubits: exchange, both inversions, exchange.

    Composes to the catalog swap gate exactly (global phase included).
    """
    inter = intra_amplitude_ueV if inter_amplitude_ueV is None else inter_amplitude_ueV
    return (
        calibrate(GateId.EXCHANGE, inter)
        + calibrate(GateId.NOT1, intra_amplitude_ueV)
        + calibrate(GateId.NOT2, intra_amplitude_ueV)
        + calibrate(GateId.EXCHANGE, inter)
    )


def sqrt_swap_sequence(
    intra_amplitude_ueV: float, inter_amplitude_ueV: float | None = None
) -> list[PulseSegment]:
    """Four-pulse square root of swap: like :func:`swap_sequence` with
    half-duration inner pulses."""
    inter = intra_amplitude_ueV if inter_amplitude_ueV is None else inter_amplitude_ueV
    return (
        calibrate(GateId.EXCHANGE, inter)
        + calibrate(GateId.SQRT_NOT1, intra_amplitude_ueV)
        + calibrate(GateId.SQRT_NOT2, intra_amplitude_ueV)
        + calibrate(GateId.EXCHANGE, inter)
    )


def schedule_to_json(schedule: Iterable[PulseSegment]) -> list[dict[str, float | str]]:
    """JSON-ready representation of a schedule."""
    return [
        {
            "electrode": s.electrode,
            "amplitude_ueV": float(s.amplitude_ueV),
            "duration_ns": float(s.duration_ns),
        }
        for s in schedule
    ]


def schedule_from_json(data: object) -> list[PulseSegment]:
    """Parse a schedule from decoded JSON, naming the offending segment on error."""
    if not isinstance(data, list):
        raise ValueError(f"schedule must be a JSON array of segments, got {type(data).__name__}")
    segments: list[PulseSegment] = []
    for i, item in enumerate(data):
        if not isinstance(item, dict):
            raise ValueError(f"segment {i}: expected an object, got {type(item).__name__}")
        extra = set(item) - {"electrode", "amplitude_ueV", "duration_ns"}
        if extra:
            raise ValueError(f"segment {i}: unknown keys {sorted(extra)}")
        try:
            electrode = item["electrode"]
            amplitude = item["amplitude_ueV"]
            duration = item["duration_ns"]
        except KeyError as missing:
            raise ValueError(f"segment {i}: missing key {missing.args[0]!r}") from None
        if not isinstance(electrode, str):
            raise ValueError(f"segment {i}: electrode must be a string")
        if isinstance(amplitude, bool) or not isinstance(amplitude, (int, float)):
            raise ValueError(f"segment {i}: amplitude_ueV must be a number")
        if isinstance(duration, bool) or not isinstance(duration, (int, float)):
            raise ValueError(f"segment {i}: duration_ns must be a number")
        try:
            segments.append(PulseSegment(electrode, float(amplitude), float(duration)))
        except ValueError as exc:
            raise ValueError(f"segment {i}: {exc}") from None
    return segments


def load_schedule(path: str | Path) -> list[PulseSegment]:
    """Read a schedule from a JSON file."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    return schedule_from_json(data)
