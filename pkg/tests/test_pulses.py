from __future__ import annotations

import json

import numpy as np
import pytest

from dqdsim.basis import COMPUTATIONAL_ROWS, computational_basis_state
from dqdsim.constants import HBAR_UEV_NS
from dqdsim.gates import GateId, gate_matrix
from dqdsim.linalg import dist_up_to_global_phase, is_unitary, max_abs_diff
from dqdsim.pulses import (
    ELECTRODES,
    PulseSegment,
    calibrate,
    calibrate_phase_flip,
    evolve,
    extend_generator,
    leakage_identity,
    load_schedule,
    schedule_from_json,
    schedule_to_json,
    segment_generator,
    single_qubit_hamiltonian,
    sqrt_swap_sequence,
    swap_sequence,
)

PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def test_segment_validation():
    PulseSegment("E1", 10.0, 0.5)
    with pytest.raises(ValueError):
        PulseSegment("E3", 10.0, 0.5)
    with pytest.raises(ValueError):
        PulseSegment("E1", 10.0, -0.5)
    with pytest.raises(ValueError):
        PulseSegment("E1", float("nan"), 0.5)


def test_electrode_inventory():
    assert ELECTRODES == ("E1", "E2", "E12", "T1", "T2", "T3", "T4")


def test_single_qubit_hamiltonian_shape():
    h = single_qubit_hamiltonian(2.0, 0.5)
    assert np.allclose(h, [[2.0, 0.5], [0.5, -2.0]])


def test_extend_generator_leaves_leakage_rows_zero():
    rng = np.random.default_rng(2)
    h2 = rng.normal(size=(2, 2))
    h2 = h2 + h2.T
    for qubit in (1, 2):
        h6 = extend_generator(h2, qubit)
        assert h6.shape == (6, 6)
        for leak in (1, 4):
            assert np.all(h6[leak, :] == 0.0)
            assert np.all(h6[:, leak] == 0.0)


def test_all_generators_hermitian():
    for electrode in ELECTRODES:
        g = segment_generator(PulseSegment(electrode, 3.7, 1.0))
        assert max_abs_diff(g, g.conj().T) < 1e-14, electrode


def test_tunnel_electrodes_come_in_sign_pairs():
    for plus, minus in (("T1", "T2"), ("T3", "T4")):
        gp = segment_generator(PulseSegment(plus, 2.5, 1.0))
        gm = segment_generator(PulseSegment(minus, 2.5, 1.0))
        assert max_abs_diff(gp, -gm) == 0.0


def test_detuning_electrodes_shift_leakage_rows_too():
    # the level-splitting electrodes act on the whole DQD, including the
    # doubly-occupied configurations, so their generator cannot vanish there
    g = segment_generator(PulseSegment("E1", 1.0, 1.0))
    assert g[1, 1] != 0.0
    assert g[4, 4] != 0.0
    assert max_abs_diff(leakage_identity(), np.diag([0, 1, 0, 0, 1, 0])) == 0.0


def test_evolve_empty_schedule_is_identity():
    u = evolve([])
    assert max_abs_diff(u, np.eye(6)) == 0.0


def test_evolve_preserves_norm_and_unitarity():
    rng = np.random.default_rng(4)
    schedule = [
        PulseSegment(rng.choice(ELECTRODES), float(rng.uniform(0.5, 20)), float(rng.uniform(0.01, 2)))
        for _ in range(6)
    ]
    u = evolve(schedule)
    assert is_unitary(u, atol=1e-10)
    v = computational_basis_state("01")
    out = evolve(schedule, initial=v)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-10


def test_evolve_rejects_unnormalized_vector():
    with pytest.raises(ValueError):
        evolve([PulseSegment("E1", 1.0, 1.0)], initial=np.ones(6))


def test_evolve_applies_segments_in_listed_order():
    s1 = PulseSegment("E1", 8.0, 0.11)
    s2 = PulseSegment("T1", 8.0, 0.17)
    u12 = evolve([s1, s2])
    # last segment acts last, i.e. multiplies from the left
    assert max_abs_diff(u12, evolve([s2]) @ evolve([s1])) < 1e-13


@pytest.mark.parametrize(
    "gate,phase",
    [
        (GateId.NOT1, 1j),
        (GateId.NOT2, 1j),
        (GateId.EXCHANGE, -1j),
        (GateId.SQRT_NOT1, np.exp(1j * np.pi / 4)),
        (GateId.SQRT_NOT2, np.exp(1j * np.pi / 4)),
    ],
)
def test_calibrated_pulses_reproduce_catalog_gates(gate: GateId, phase: complex):
    # a half-period rotation picks up a global i, a quarter-period pulse a
    # global exp(i pi/4); with those factored in the match is exact
    u = evolve(calibrate(gate, amplitude_ueV=10.0))
    assert max_abs_diff(u, phase * gate_matrix(gate)) < 1e-13


def test_calibration_is_amplitude_independent():
    for amp in (0.5, 5.0, 50.0):
        u = evolve(calibrate(GateId.NOT1, amp))
        assert dist_up_to_global_phase(u, gate_matrix(GateId.NOT1)) < 1e-12


def test_calibrated_durations_scale_inversely_with_amplitude():
    (seg,) = calibrate(GateId.NOT1, 10.0)
    assert abs(seg.duration_ns - np.pi * HBAR_UEV_NS / 20.0) < 1e-15
    (half,) = calibrate(GateId.SQRT_NOT1, 10.0)
    assert abs(half.duration_ns - seg.duration_ns / 2.0) < 1e-15


def test_calibrate_rejects_composite_gates():
    with pytest.raises(ValueError):
        calibrate(GateId.SWAP, 10.0)
    with pytest.raises(ValueError):
        calibrate(GateId.NOT1, -1.0)


def test_four_pulse_swap_has_unit_global_phase():
    # the exchange-conjugated double inversion composes to the swap gate
    # with no residual phase at all
    u = evolve(swap_sequence(10.0))
    assert max_abs_diff(u, gate_matrix(GateId.SWAP)) < 1e-13


def test_four_pulse_sqrt_swap():
    u = evolve(sqrt_swap_sequence(10.0))
    target = gate_matrix(GateId.SQRT_SWAP)
    assert max_abs_diff(u, -1j * target) < 1e-13
    assert dist_up_to_global_phase(u @ u, gate_matrix(GateId.SWAP)) < 1e-12


def test_phase_flip_pulse_gives_z_on_computational_rows():
    u = evolve(calibrate_phase_flip(1, amplitude_ueV=10.0))
    z1 = np.diag([1.0, 1.0, -1.0, -1.0])
    comp = u[np.ix_(COMPUTATIONAL_ROWS, COMPUTATIONAL_ROWS)]
    assert dist_up_to_global_phase(comp, z1) < 1e-12
    # the tunnel electrodes never touch the leaked configurations
    assert u[1, 1] == 1.0 and u[4, 4] == 1.0


def test_mid_pulse_leakage_returns_to_zero():
    # detuning pulses phase the leaked rows but never populate them
    v = computational_basis_state("10")
    out = evolve(calibrate(GateId.NOT1, 10.0), initial=v)
    assert abs(out[1]) < 1e-15 and abs(out[4]) < 1e-15


def test_schedule_json_roundtrip(tmp_path):
    schedule = swap_sequence(7.5, 3.25)
    data = schedule_to_json(schedule)
    again = schedule_from_json(data)
    assert again == schedule
    path = tmp_path / "schedule.json"
    path.write_text(json.dumps(data))
    assert load_schedule(path) == schedule


def test_schedule_from_json_names_offending_segment():
    good = {"electrode": "E1", "amplitude_ueV": 1.0, "duration_ns": 0.1}
    bad = {"electrode": "Q9", "amplitude_ueV": 1.0, "duration_ns": 0.1}
    with pytest.raises(ValueError, match="segment 1"):
        schedule_from_json([good, bad])
    with pytest.raises(ValueError):
        schedule_from_json({"not": "a list"})
