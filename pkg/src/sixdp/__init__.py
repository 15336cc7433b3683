"""Simulator and closed-form calculator for the deterministic six-state two-way protocol.

Submodules:

- :mod:`sixdp.quantum_core` -- protocol states, Eve's bases, gates, measurement
- :mod:`sixdp.ira_model` -- intercept-resend attack probabilities and sweeps
- :mod:`sixdp.cnot_model` -- double-CNOT attack and mutual information
- :mod:`sixdp.protocol_sim` -- round state machine and seeded Monte Carlo
- :mod:`sixdp.cli` -- command-line front end
"""

from .cnot_model import CnotAttackConfig, MutualInfoReport, eve_information, run_2cnot
from .ira_model import (
    ALL_PAIRS,
    AttackEconomics,
    BasisPair,
    EveStrategy,
    Model,
    average_no_detect_single,
    average_no_detect_two,
    success_prob,
    sweep,
)
from .protocol_sim import IRAAttack, TwoCnotAttack, simulate
from .quantum_core import ALL_QUBITS, Axis, Encoding, EveBasis, ProtocolQubit, Sign

__version__ = "0.1.0"

__all__ = [
    "ALL_PAIRS", "ALL_QUBITS", "AttackEconomics", "Axis", "BasisPair", "CnotAttackConfig", "Encoding",
    "EveBasis", "EveStrategy", "IRAAttack", "Model", "MutualInfoReport", "ProtocolQubit", "Sign",
    "TwoCnotAttack", "average_no_detect_single", "average_no_detect_two", "eve_information",
    "run_2cnot", "simulate", "success_prob", "sweep",
]
