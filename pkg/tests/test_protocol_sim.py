import itertools

import numpy as np
import pytest

from sixdp.cnot_model import ANCILLA_SETTINGS
from sixdp.ira_model import ALL_PAIRS, BasisPair, EveStrategy, Model, physical_round_no_detect
from sixdp.protocol_sim import (
    IRAAttack,
    RoundConfig,
    RoundMode,
    TwoCnotAttack,
    analytic_detection,
    decode_flips,
    decode_table,
    flips_axis,
    run_round,
    simulate,
    trial_rng,
)
from sixdp.quantum_core import PAULI, Axis, Encoding, EveBasis, ProtocolQubit

from conftest import bloch_of, born

CODEWORDS = [op.codeword for op in Encoding]
Z_BASIS = EveBasis.along("z")


def pair(a, b):
    return BasisPair(ProtocolQubit.parse(a), ProtocolQubit.parse(b))


def flip_oracle(op: Encoding, axis: Axis) -> int:
    """An operator flips an axis iff it anticommutes with that axis' Pauli matrix."""
    m, p = op.matrix, PAULI[axis.name]
    if np.allclose(m @ p, p @ m):
        return 0
    assert np.allclose(m @ p, -p @ m)
    return 1


def test_flip_table_matches_anticommutation():
    for op, axis in itertools.product(Encoding, Axis):
        assert flips_axis(op, axis) == flip_oracle(op, axis)


def test_decode_examples():
    assert decode_flips(pair("z+", "x+"), 0, 0) == "00"
    assert decode_flips(pair("z+", "x-"), 1, 1) == "01"
    assert decode_flips(pair("z-", "x+"), 1, 0) == "10"
    # brute force: on (y, x) the pattern (0, 1) belongs to iY, and Z gives (1, 1)
    assert decode_flips(pair("y+", "x+"), 0, 1) == "01"
    assert decode_flips(pair("y+", "x+"), 1, 1) == "11"


def test_decode_table_shape_and_uniqueness():
    rows = decode_table()
    assert len(rows) == 24
    for (a1, a2), group in itertools.groupby(rows, key=lambda r: (r["axis1"], r["axis2"])):
        group = list(group)
        assert len(group) == 4
        assert len({(r["flip1"], r["flip2"]) for r in group}) == 4
        for r in group:
            op = Encoding.from_symbol(r["operator"])
            assert (r["flip1"], r["flip2"]) == (flip_oracle(op, Axis(a1)), flip_oracle(op, Axis(a2)))
            assert r["codeword"] == op.codeword


def test_round_config_validation():
    with pytest.raises(ValueError):
        RoundConfig(RoundMode.MESSAGE, pair("z+", "x+"))
    with pytest.raises(ValueError):
        RoundConfig(RoundMode.CONTROL, pair("z+", "x+"), "00")
    with pytest.raises(ValueError):
        RoundConfig(RoundMode.MESSAGE, pair("z+", "x+"), "02")


def test_no_attack_channel_is_perfect():
    rng = np.random.default_rng(0)
    for p in ALL_PAIRS:
        for m in CODEWORDS:
            res = run_round(RoundConfig(RoundMode.MESSAGE, p, m), rng)
            assert res.decoded_message == m
        assert not run_round(RoundConfig(RoundMode.CONTROL, p), rng).detected


def test_message_x_on_z_x_pair():
    rng = np.random.default_rng(1)
    for _ in range(50):
        assert run_round(RoundConfig(RoundMode.MESSAGE, pair("z+", "x+"), "10"), rng).decoded_message == "10"


def test_2cnot_never_detected_and_never_disturbs():
    rng = np.random.default_rng(2)
    for p in ALL_PAIRS:
        for bits in ANCILLA_SETTINGS:
            atk = TwoCnotAttack(bits)
            res = run_round(RoundConfig(RoundMode.CONTROL, p, attack=atk), rng)
            assert not res.detected
            assert res.eve_observation["ancilla"] == bits
            for op in Encoding:
                res = run_round(RoundConfig(RoundMode.MESSAGE, p, op.codeword, atk), rng)
                assert res.decoded_message == op.codeword
                assert res.eve_observation["flip_bit"] == op.flip_bit


def closed_form_detection(strat, pairs=ALL_PAIRS):
    """Physical-model control detection from Bloch vectors only."""
    n1 = np.array([np.sin(strat.basis1.theta) * np.cos(strat.basis1.phi),
                   np.sin(strat.basis1.theta) * np.sin(strat.basis1.phi), np.cos(strat.basis1.theta)])
    n2 = np.array([np.sin(strat.basis2.theta) * np.cos(strat.basis2.phi),
                   np.sin(strat.basis2.theta) * np.sin(strat.basis2.phi), np.cos(strat.basis2.theta)])
    total = 0.0
    for p in pairs:
        k1 = born(bloch_of(p.first), n1) ** 2 + born(bloch_of(p.first), -n1) ** 2
        k2 = born(bloch_of(p.second), n2) ** 2 + born(bloch_of(p.second), -n2) ** 2
        total += k1 * k2
    return 1 - total / len(pairs)


def test_closed_form_values():
    s = EveStrategy.single(Z_BASIS)
    assert closed_form_detection(s) == pytest.approx(7 / 12, abs=1e-12)
    assert closed_form_detection(s, [pair("z+", "x+")]) == pytest.approx(0.5, abs=1e-12)
    assert analytic_detection(IRAAttack(s))["detection_physical"] == pytest.approx(7 / 12, abs=1e-12)
    assert analytic_detection(IRAAttack(s))["detection_paper_model"] == pytest.approx(0.75, abs=1e-12)


def test_ira_fixed_pair_detection_rate():
    atk = IRAAttack(EveStrategy.single(Z_BASIS), Model.PHYSICAL)
    rep = simulate(atk, trials=20000, c=1.0, seed=7, pairs=[pair("z+", "x+")])
    assert rep.control_rounds == 20000
    assert abs(rep.detection_rate - 0.5) <= 3 * rep.detection_se


def test_ira_two_basis_detection_rate():
    s = EveStrategy.two(EveBasis(0.4, 1.0), EveBasis(2.0, 4.0))
    rep = simulate(IRAAttack(s), trials=20000, c=1.0, seed=99)
    expected = closed_form_detection(s)
    assert abs(rep.detection_rate - expected) <= 3 * rep.detection_se
    assert rep.analytic["detection_physical"] == pytest.approx(expected, abs=1e-12)


def test_simulate_no_attack():
    rep = simulate(None, trials=2000, c=0.5, seed=3)
    assert rep.detection_rate == 0.0
    assert rep.decode_accuracy == 1.0
    assert rep.eve_accuracy is None
    assert rep.control_rounds + rep.message_rounds == 2000


def test_simulate_2cnot():
    rep = simulate(TwoCnotAttack(), trials=8000, c=0.3, seed=11)
    assert rep.detection_rate == 0.0
    assert rep.decode_accuracy == 1.0
    assert rep.eve_flip_accuracy == 1.0
    n = rep.message_rounds
    assert abs(rep.eve_accuracy - 0.5) <= 3 * np.sqrt(0.25 / n)


def test_ira_eve_guess_in_z_basis_knows_flip_bit():
    # measuring in z reveals whether z states were flipped, which is exactly the flip bit
    rep = simulate(IRAAttack(EveStrategy.single(Z_BASIS)), trials=3000, c=0.0, seed=5)
    assert rep.eve_flip_accuracy == 1.0
    assert rep.decode_accuracy < 1.0


def test_trial_streams_are_independent_of_order():
    a = [trial_rng(42, i).random() for i in range(5)]
    b = [trial_rng(42, i).random() for i in reversed(range(5))][::-1]
    assert a == b
    assert len(set(a)) == 5


def test_simulate_deterministic_and_worker_independent():
    atk = IRAAttack(EveStrategy.single(EveBasis(1.0, 0.5)))
    r1 = simulate(atk, trials=600, c=0.5, seed=2024)
    r2 = simulate(atk, trials=600, c=0.5, seed=2024)
    r3 = simulate(atk, trials=600, c=0.5, seed=2024, workers=3)
    assert r1 == r2 == r3
    assert simulate(atk, trials=600, c=0.5, seed=2025) != r1


def test_simulate_rejects_bad_input():
    with pytest.raises(ValueError):
        simulate(None, trials=0)
    with pytest.raises(ValueError):
        simulate(None, trials=10, c=1.5)


def test_formula_model_attack_is_sampled_physically():
    s = EveStrategy.single(Z_BASIS)
    a = simulate(IRAAttack(s, Model.PAPER), trials=500, c=1.0, seed=1)
    b = simulate(IRAAttack(s, Model.PHYSICAL), trials=500, c=1.0, seed=1)
    assert a == b


def test_standard_error_formula():
    rep = simulate(IRAAttack(EveStrategy.single(Z_BASIS)), trials=1000, c=1.0, seed=8)
    p = rep.detection_rate
    assert rep.detection_se == pytest.approx(np.sqrt(p * (1 - p) / 1000))


def test_physical_round_matches_single_round_frequency():
    # one fixed pair under a tilted basis: frequency of non-detection vs closed form
    p = pair("y-", "z+")
    s = EveStrategy.single(EveBasis(0.7, 2.2))
    expected = physical_round_no_detect(p, s)
    n = 6000
    hits = sum(
        not run_round(RoundConfig(RoundMode.CONTROL, p, attack=IRAAttack(s)), trial_rng(17, i)).detected
        for i in range(n)
    )
    se = np.sqrt(expected * (1 - expected) / n)
    assert abs(hits / n - expected) <= 3 * se
