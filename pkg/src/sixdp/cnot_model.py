"""Double-CNOT attack on a four-qubit register.

Register layout: ``[travel1, travel2, ancilla1, ancilla2]``. Eve's CNOTs use
the travel qubit as control and her ancilla as target, on both paths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ira_model import ALL_PAIRS, BasisPair
from .quantum_core import (
    HADAMARD,
    TOL,
    Encoding,
    apply_1q,
    apply_encoding,
    basis_state,
    cnot,
    overlap_prob,
    protocol_state,
    qubit_outcome_probs,
    tensor,
)

ANCILLA_SETTINGS = tuple(itertools.product((0, 1), repeat=2))


class FactorizationError(RuntimeError):
    """The register did not separate into travel and ancilla parts."""


@dataclass(frozen=True)
class CnotAttackConfig:
    pair: BasisPair
    ancilla_bits: tuple[int, int] = (0, 0)
    encoding: Encoding = Encoding.I
    # "z" or "x" per ancilla; an x ancilla is H|a> and is read out in the x basis
    ancilla_bases: tuple[str, str] = ("z", "z")

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.ancilla_bits):
            raise ValueError(f"ancilla bits must be 0 or 1, got {self.ancilla_bits}")
        if any(b not in ("z", "x") for b in self.ancilla_bases):
            raise ValueError(f"ancilla bases must be 'z' or 'x', got {self.ancilla_bases}")


@dataclass
class CnotRun:
    travel_state: np.ndarray
    eve_bits: tuple[int, int]
    deterministic: bool
    schmidt_residual: float


@dataclass(frozen=True)
class MutualInfoReport:
    """Mutual information as a fraction of the message entropy (``*_bits`` in bits)."""

    i_ae: float
    i_be: float
    i_ab: float
    message_bits: float

    @property
    def i_ae_bits(self) -> float:
        return self.i_ae * self.message_bits

    @property
    def i_be_bits(self) -> float:
        return self.i_be * self.message_bits

    @property
    def i_ab_bits(self) -> float:
        return self.i_ab * self.message_bits


def _eve_cnots(s: np.ndarray, bases) -> np.ndarray:
    for k, b in enumerate(bases):
        anc = 2 + k
        if b == "x":
            s = apply_1q(HADAMARD, s, anc)
        s = cnot(s, k, anc)
        if b == "x":
            s = apply_1q(HADAMARD, s, anc)
    return s


def run_2cnot(cfg: CnotAttackConfig) -> CnotRun:
    a, b = cfg.ancilla_bits
    psi = tensor(protocol_state(cfg.pair.first), protocol_state(cfg.pair.second))
    ancillas = basis_state((a, b))
    for k, basis in enumerate(cfg.ancilla_bases):
        if basis == "x":
            ancillas = apply_1q(HADAMARD, ancillas, k)
    s = tensor(psi, ancillas)

    s = _eve_cnots(s, cfg.ancilla_bases)
    s = apply_encoding(cfg.encoding, s, targets=(0, 1))
    s = _eve_cnots(s, cfg.ancilla_bases)

    # Eve reads each ancilla in the basis it was prepared in
    for k, basis in enumerate(cfg.ancilla_bases):
        if basis == "x":
            s = apply_1q(HADAMARD, s, 2 + k)

    m = s.reshape(4, 4)
    u, sv, vh = np.linalg.svd(m)
    residual = float(sv[1])
    if residual > TOL:
        raise FactorizationError(f"travel/ancilla state is entangled (second singular value {residual:.3e})")
    anc_probs = np.abs(vh[0]) ** 2
    outcome = int(np.argmax(anc_probs))
    deterministic = bool(anc_probs[outcome] >= 1.0 - TOL)
    travel = u[:, 0] * sv[0] * vh[0, outcome]
    travel = travel / np.linalg.norm(travel)
    return CnotRun(travel, (outcome >> 1, outcome & 1), deterministic, residual)


def directly_encoded(cfg: CnotAttackConfig) -> np.ndarray:
    psi = tensor(protocol_state(cfg.pair.first), protocol_state(cfg.pair.second))
    return apply_encoding(cfg.encoding, psi)


def travel_state_fidelity(cfg: CnotAttackConfig) -> float:
    return overlap_prob(run_2cnot(cfg).travel_state, directly_encoded(cfg))


def all_configs(encodings=tuple(Encoding), ancilla_bases=("z", "z")):
    """Every (pair, ancilla setting, encoding) combination; 384 by default."""
    for pair in ALL_PAIRS:
        for bits in ANCILLA_SETTINGS:
            for op in encodings:
                yield CnotAttackConfig(pair, bits, op, ancilla_bases)


def _entropy(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def mutual_information(joint: np.ndarray) -> float:
    """Shannon mutual information (bits) of a 2-d joint distribution or count table."""
    joint = np.asarray(joint, dtype=float)
    joint = joint / joint.sum()
    return _entropy(joint.sum(axis=1)) + _entropy(joint.sum(axis=0)) - _entropy(joint.ravel())


def _bob_decode(pair: BasisPair, travel: np.ndarray) -> str:
    from .protocol_sim import decode_flips

    flips = []
    for k, q in enumerate(pair.qubits):
        probs = qubit_outcome_probs(travel, k, (protocol_state(q), protocol_state(q.partner)))
        flips.append(int(probs[1] > 0.5))
    return decode_flips(pair, *flips)


def eve_information(
    ancilla_bits: tuple[int, int] = (0, 0),
    mixed_basis: bool = False,
    encodings=tuple(Encoding),
) -> MutualInfoReport:
    """Mutual information between Alice, Bob and Eve under the double-CNOT attack.

    Alice's codeword is uniform over ``encodings`` and Bob's pair is uniform over
    the 24 valid pairs. Eve's observation is her ancilla readout. Values are
    normalized by the message entropy.
    """
    bases = ("z", "x") if mixed_basis else ("z", "z")
    words = [f"{x}{y}" for x, y in ANCILLA_SETTINGS]
    ae = np.zeros((4, 4))
    be = np.zeros((4, 4))
    ab = np.zeros((4, 4))
    for pair in ALL_PAIRS:
        for op in encodings:
            run = run_2cnot(CnotAttackConfig(pair, ancilla_bits, op, bases))
            if not run.deterministic:
                raise FactorizationError("Eve's ancilla readout is not deterministic")
            w = words.index(op.codeword)
            e = words.index(f"{run.eve_bits[0]}{run.eve_bits[1]}")
            bob = words.index(_bob_decode(pair, run.travel_state))
            ae[w, e] += 1
            be[bob, e] += 1
            ab[w, bob] += 1
    h_msg = _entropy(ae.sum(axis=1) / ae.sum())
    if h_msg == 0:
        return MutualInfoReport(0.0, 0.0, 0.0, 0.0)
    return MutualInfoReport(
        mutual_information(ae) / h_msg,
        mutual_information(be) / h_msg,
        mutual_information(ab) / h_msg,
        h_msg,
    )


def control_mode_2cnot(pair: BasisPair, ancilla_bits: tuple[int, int] = (0, 0), ancilla_bases=("z", "z")) -> bool:
    """True when a control round leaves both Eve's ancillas and Bob's qubits untouched."""
    cfg = CnotAttackConfig(pair, ancilla_bits, Encoding.I, ancilla_bases)
    run = run_2cnot(cfg)
    psi = tensor(protocol_state(pair.first), protocol_state(pair.second))
    return (
        run.deterministic
        and run.eve_bits == tuple(ancilla_bits)
        and abs(overlap_prob(run.travel_state, psi) - 1.0) <= TOL
    )


def sweep_report() -> dict:
    """Summary of the exhaustive 384-case sweep plus the mutual-information reports."""
    passes = 0
    outcome_ok = 0
    fidelity_ok = 0
    classes: dict[str, set] = {op.symbol: set() for op in Encoding}
    total = 0
    for cfg in all_configs():
        total += 1
        run = run_2cnot(cfg)
        passes += run.schmidt_residual <= TOL
        j = cfg.encoding.flip_bit
        a, b = cfg.ancilla_bits
        outcome_ok += run.deterministic and run.eve_bits == (j ^ a, j ^ b)
        fidelity_ok += abs(overlap_prob(run.travel_state, directly_encoded(cfg)) - 1.0) <= TOL
        # outcome relative to the ancilla start, i.e. the flip bit Eve resolves
        classes[cfg.encoding.symbol].add((run.eve_bits[0] ^ a, run.eve_bits[1] ^ b))
    full = eve_information()
    restricted = eve_information(encodings=(Encoding.I, Encoding.Z))
    mixed = eve_information(mixed_basis=True)
    return {
        "cases": total,
        "disentangled": passes,
        "outcome_matches_flip_bit": outcome_ok,
        "fidelity_one": fidelity_ok,
        "outcome_table": [
            {
                "operator": op.symbol,
                "codeword": op.codeword,
                "flip_bit": op.flip_bit,
                "ancilla_flips": [list(x) for x in sorted(classes[op.symbol])],
            }
            for op in Encoding
        ],
        "mutual_information": {
            "full": _mi_dict(full),
            "restricted_IZ": _mi_dict(restricted),
            "mixed_basis_ancillas": _mi_dict(mixed),
        },
        "control_mode_undetected": sum(
            control_mode_2cnot(p, bits) for p in ALL_PAIRS for bits in ANCILLA_SETTINGS
        ),
    }


def _mi_dict(r: MutualInfoReport) -> dict:
    return {"i_ae": r.i_ae, "i_be": r.i_be, "i_ab": r.i_ab, "message_bits": r.message_bits}
