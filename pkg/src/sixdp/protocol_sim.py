"""Executable six-state two-way protocol with pluggable attacks and a seeded Monte Carlo harness.

A round runs: Bob prepares ``|B1, B2>``, the forward-path attack acts, Alice
encodes (identity in control mode), the backward-path attack acts, and Bob
measures each qubit in the basis he prepared it in. Measurements are sampled
by inverse CDF on the exact Born probabilities.

Every trial draws from its own generator seeded by ``(seed, trial_index)``, so
results do not depend on how trials are split across workers.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .ira_model import ALL_PAIRS, BasisPair, EveStrategy, Model, physical_round_no_detect, round_no_detect
from .quantum_core import (
    HADAMARD,
    Axis,
    Encoding,
    apply_1q,
    apply_encoding,
    basis_state,
    cnot,
    equal_up_to_global_phase,
    measure_qubit,
    protocol_state,
    tensor,
)


class RoundMode(enum.Enum):
    MESSAGE = "message"
    CONTROL = "control"


@dataclass(frozen=True)
class IRAAttack:
    strategy: EveStrategy
    model: Model = Model.PHYSICAL


@dataclass(frozen=True)
class TwoCnotAttack:
    ancilla_bits: tuple[int, int] = (0, 0)
    ancilla_bases: tuple[str, str] = ("z", "z")


Attack = Union[None, IRAAttack, TwoCnotAttack]


@dataclass(frozen=True)
class RoundConfig:
    mode: RoundMode
    pair: BasisPair
    message: Optional[str] = None
    attack: Attack = None

    def __post_init__(self):
        if (self.mode is RoundMode.MESSAGE) != (self.message is not None):
            raise ValueError("a message is required in message mode and forbidden in control mode")
        if self.message is not None:
            Encoding.from_codeword(self.message)


@dataclass
class RoundResult:
    detected: bool = False
    decoded_message: Optional[str] = None
    eve_observation: Optional[dict] = None


# ---------------------------------------------------------------- flip table


@lru_cache(maxsize=None)
def flips_axis(op: Encoding, axis: Axis) -> int:
    """1 if ``op`` maps the states of ``axis`` to their orthogonal partners, else 0."""
    from .quantum_core import ProtocolQubit, Sign

    plus = protocol_state(ProtocolQubit(axis, Sign.PLUS))
    minus = protocol_state(ProtocolQubit(axis, Sign.MINUS))
    out = op.matrix @ plus
    if equal_up_to_global_phase(out, plus):
        return 0
    if equal_up_to_global_phase(out, minus):
        return 1
    raise ValueError(f"{op.symbol} does not preserve the {axis.value} axis")


@lru_cache(maxsize=None)
def _decode_table(ax1: Axis, ax2: Axis) -> dict:
    table = {}
    for op in Encoding:
        key = (flips_axis(op, ax1), flips_axis(op, ax2))
        if key in table:
            raise ValueError(f"axes ({ax1.value}, {ax2.value}) cannot tell {table[key]} from {op.codeword}")
        table[key] = op.codeword
    return table


def decode_flips(pair: BasisPair, flip1: int, flip2: int) -> str:
    """Codeword whose operator produces the observed flip pattern on ``pair``'s axes."""
    return _decode_table(pair.first.axis, pair.second.axis)[(int(flip1), int(flip2))]


def decode_table() -> list[dict]:
    """Full table for the 6 ordered axis pairs x 4 operators."""
    rows = []
    axes = (Axis.Z, Axis.X, Axis.Y)
    for a1 in axes:
        for a2 in axes:
            if a1 is a2:
                continue
            for op in Encoding:
                f1, f2 = flips_axis(op, a1), flips_axis(op, a2)
                rows.append(
                    {
                        "axis1": a1.value,
                        "axis2": a2.value,
                        "operator": op.symbol,
                        "flip1": f1,
                        "flip2": f2,
                        "codeword": op.codeword,
                    }
                )
    return rows


# ---------------------------------------------------------------- one round


def _ira_measure(s, strat: EveStrategy, rng):
    outcomes = []
    for k, basis in enumerate((strat.basis1, strat.basis2)):
        o, s = measure_qubit(s, k, basis.states(), rng.random())
        outcomes.append(o)
    return s, tuple(outcomes)


@lru_cache(maxsize=None)
def _ira_guess(strat: EveStrategy, fwd, bwd) -> str:
    # maximum likelihood over Alice's operators given what Eve resent and then saw
    best, best_p = None, -1.0
    for op in Encoding:
        p = 1.0
        for k, basis in enumerate((strat.basis1, strat.basis2)):
            states = basis.states()
            amp = np.vdot(states[bwd[k]], op.matrix @ states[fwd[k]])
            p *= abs(amp) ** 2
        if p > best_p + 1e-12:
            best, best_p = op.codeword, p
    return best


def _cnot_leg(s, bases):
    for k, b in enumerate(bases):
        if b == "x":
            s = apply_1q(HADAMARD, s, 2 + k)
        s = cnot(s, k, 2 + k)
        if b == "x":
            s = apply_1q(HADAMARD, s, 2 + k)
    return s


def run_round(cfg: RoundConfig, rng: np.random.Generator) -> RoundResult:
    pair = cfg.pair
    attack = cfg.attack
    op = Encoding.I if cfg.mode is RoundMode.CONTROL else Encoding.from_codeword(cfg.message)
    s = tensor(protocol_state(pair.first), protocol_state(pair.second))
    obs = None

    if isinstance(attack, IRAAttack):
        s, fwd = _ira_measure(s, attack.strategy, rng)
    elif isinstance(attack, TwoCnotAttack):
        anc = basis_state(attack.ancilla_bits)
        for k, b in enumerate(attack.ancilla_bases):
            if b == "x":
                anc = apply_1q(HADAMARD, anc, k)
        s = _cnot_leg(tensor(s, anc), attack.ancilla_bases)

    s = apply_encoding(op, s, targets=(0, 1))

    if isinstance(attack, IRAAttack):
        s, bwd = _ira_measure(s, attack.strategy, rng)
        obs = {"forward": fwd, "backward": bwd}
        if cfg.mode is RoundMode.MESSAGE:
            obs["guess"] = _ira_guess(attack.strategy, fwd, bwd)
    elif isinstance(attack, TwoCnotAttack):
        s = _cnot_leg(s, attack.ancilla_bases)
        bits = []
        for k, b in enumerate(attack.ancilla_bases):
            basis = (HADAMARD[:, 0], HADAMARD[:, 1]) if b == "x" else (basis_state([0]), basis_state([1]))
            o, s = measure_qubit(s, 2 + k, basis, rng.random())
            bits.append(o)
        j = bits[0] ^ attack.ancilla_bits[0]
        # Eve knows only the flip bit; she picks the first codeword in that class
        guess = next(e.codeword for e in Encoding if e.flip_bit == j)
        obs = {"ancilla": tuple(bits), "flip_bit": j, "guess": guess}

    flips = []
    for k, q in enumerate(pair.qubits):
        o, s = measure_qubit(s, k, (protocol_state(q), protocol_state(q.partner)), rng.random())
        flips.append(o)

    if cfg.mode is RoundMode.CONTROL:
        return RoundResult(detected=any(flips), eve_observation=obs)
    return RoundResult(decoded_message=decode_flips(pair, *flips), eve_observation=obs)


# ---------------------------------------------------------------- Monte Carlo


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


@dataclass
class _Counts:
    control: int = 0
    detected: int = 0
    message: int = 0
    decoded_ok: int = 0
    eve_ok: int = 0
    eve_flip_ok: int = 0

    def __iadd__(self, other: "_Counts"):
        for k, v in asdict(other).items():
            setattr(self, k, getattr(self, k) + v)
        return self


def _run_trials(attack: Attack, c: float, seed: int, pairs: Sequence[BasisPair], start: int, stop: int) -> _Counts:
    counts = _Counts()
    codewords = [op.codeword for op in Encoding]
    for i in range(start, stop):
        rng = trial_rng(seed, i)
        pair = pairs[int(rng.integers(len(pairs)))]
        if rng.random() < c:
            res = run_round(RoundConfig(RoundMode.CONTROL, pair, attack=attack), rng)
            counts.control += 1
            counts.detected += res.detected
        else:
            msg = codewords[int(rng.integers(4))]
            res = run_round(RoundConfig(RoundMode.MESSAGE, pair, msg, attack), rng)
            counts.message += 1
            counts.decoded_ok += res.decoded_message == msg
            if res.eve_observation is not None:
                guess = res.eve_observation["guess"]
                counts.eve_ok += guess == msg
                counts.eve_flip_ok += Encoding.from_codeword(guess).flip_bit == Encoding.from_codeword(msg).flip_bit
    return counts


def _rate(k: int, n: int):
    if n == 0:
        return None, None
    p = k / n
    return p, math.sqrt(p * (1 - p) / n)


@dataclass
class SimReport:
    trials: int
    seed: int
    control_prob: float
    control_rounds: int
    message_rounds: int
    detection_rate: Optional[float]
    detection_se: Optional[float]
    decode_accuracy: Optional[float]
    eve_accuracy: Optional[float]
    eve_flip_accuracy: Optional[float]
    attack: str
    analytic: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def analytic_detection(attack: Attack, pairs: Sequence[BasisPair] = ALL_PAIRS) -> dict:
    """Closed-form control-round detection probabilities matching ``attack``."""
    if attack is None or isinstance(attack, TwoCnotAttack):
        return {"detection_physical": 0.0}
    strat = attack.strategy
    phys = sum(physical_round_no_detect(p, strat) for p in pairs) / len(pairs)
    paper = sum(round_no_detect(p, strat, Model.PAPER) for p in pairs) / len(pairs)
    return {"detection_physical": 1.0 - phys, "detection_paper_model": 1.0 - paper}


def _attack_name(attack: Attack) -> str:
    if attack is None:
        return "none"
    return "ira" if isinstance(attack, IRAAttack) else "2cnot"


def simulate(
    attack: Attack = None,
    trials: int = 1000,
    c: float = 0.5,
    seed: int = 0,
    pairs: Optional[Sequence[BasisPair]] = None,
    workers: int = 1,
) -> SimReport:
    """Run ``trials`` independent rounds; each is a control round with probability ``c``.

    Bob's pair is drawn uniformly from ``pairs`` (all 24 valid pairs by default)
    and message rounds carry a uniform random codeword. IRA rounds are always
    sampled with the physical measurement model.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"control probability must lie in [0, 1], got {c}")
    pairs = tuple(pairs) if pairs is not None else ALL_PAIRS
    if isinstance(attack, IRAAttack) and attack.model is not Model.PHYSICAL:
        attack = IRAAttack(attack.strategy, Model.PHYSICAL)

    counts = _Counts()
    if workers <= 1:
        counts = _run_trials(attack, c, seed, pairs, 0, trials)
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        with ProcessPoolExecutor(workers) as pool:
            futures = [
                pool.submit(_run_trials, attack, c, seed, pairs, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
            ]
            for f in futures:
                counts += f.result()

    det, det_se = _rate(counts.detected, counts.control)
    has_eve = attack is not None
    return SimReport(
        trials=trials,
        seed=seed,
        control_prob=c,
        control_rounds=counts.control,
        message_rounds=counts.message,
        detection_rate=det,
        detection_se=det_se,
        decode_accuracy=_rate(counts.decoded_ok, counts.message)[0],
        eve_accuracy=_rate(counts.eve_ok, counts.message)[0] if has_eve else None,
        eve_flip_accuracy=_rate(counts.eve_flip_ok, counts.message)[0] if has_eve else None,
        attack=_attack_name(attack),
        analytic=analytic_detection(attack, pairs),
    )
