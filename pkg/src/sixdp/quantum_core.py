"""Small exact state-vector algebra for the six-state two-way protocol.

States are plain complex numpy arrays. A register of ``n`` qubits is a vector
of length ``2**n``; qubit 0 is the leftmost tensor factor and the most
significant bit of the computational index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

TOL = 1e-12
SQRT1_2 = 1.0 / np.sqrt(2.0)


class Axis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class ProtocolQubit:
    axis: Axis
    sign: Sign

    @property
    def label(self) -> str:
        return f"{self.axis.value}{self.sign.value}"

    @property
    def partner(self) -> "ProtocolQubit":
        """Orthogonal state on the same axis."""
        other = Sign.MINUS if self.sign is Sign.PLUS else Sign.PLUS
        return ProtocolQubit(self.axis, other)

    @classmethod
    def parse(cls, text: str) -> "ProtocolQubit":
        text = text.strip().lower()
        if len(text) != 2 or text[0] not in "xyz" or text[1] not in "+-":
            raise ValueError(f"not a protocol state label: {text!r}")
        return cls(Axis(text[0]), Sign(text[1]))

    def __str__(self) -> str:
        return self.label


ALL_QUBITS = tuple(ProtocolQubit(a, s) for a in (Axis.Z, Axis.X, Axis.Y) for s in Sign)


def check_state(amps, tol: float = TOL) -> np.ndarray:
    """Validate and return ``amps`` as a normalized complex state vector."""
    v = np.asarray(amps, dtype=complex)
    if v.ndim != 1 or v.size < 2 or v.size & (v.size - 1):
        raise ValueError(f"state length must be a power of two >= 2, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("state contains non-finite amplitudes")
    norm2 = float(np.vdot(v, v).real)
    if abs(norm2 - 1.0) > tol:
        raise ValueError(f"state is not normalized (|psi|^2 = {norm2!r})")
    return v


def n_qubits(s: np.ndarray) -> int:
    return int(s.shape[-1]).bit_length() - 1


def protocol_state(q: ProtocolQubit) -> np.ndarray:
    """Amplitudes of one of the six protocol states in the computational basis."""
    return _PROTOCOL_STATES[q]


def _make_protocol_state(q: ProtocolQubit) -> np.ndarray:
    sgn = 1.0 if q.sign is Sign.PLUS else -1.0
    if q.axis is Axis.Z:
        return np.array([1.0, 0.0], dtype=complex) if sgn > 0 else np.array([0.0, 1.0], dtype=complex)
    if q.axis is Axis.X:
        return np.array([SQRT1_2, sgn * SQRT1_2], dtype=complex)
    return np.array([SQRT1_2, sgn * 1j * SQRT1_2], dtype=complex)


def _frozen(v: np.ndarray) -> np.ndarray:
    v.flags.writeable = False
    return v


_PROTOCOL_STATES = {q: _frozen(_make_protocol_state(q)) for q in ALL_QUBITS}


@dataclass(frozen=True)
class EveBasis:
    """Eve's projective measurement direction (polar ``theta``, azimuth ``phi``)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi + TOL):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (0.0 <= self.phi <= 2 * np.pi + TOL):
            raise ValueError(f"phi must lie in [0, 2pi], got {self.phi!r}")

    @classmethod
    def along(cls, axis: Axis | str) -> "EveBasis":
        """Basis whose ``chi`` member is the plus state of a protocol axis."""
        axis = Axis(axis) if isinstance(axis, str) else axis
        return {
            Axis.Z: cls(0.0, 0.0),
            Axis.X: cls(np.pi / 2, 0.0),
            Axis.Y: cls(np.pi / 2, np.pi / 2),
        }[axis]

    def states(self) -> tuple[np.ndarray, np.ndarray]:
        return _cached_states(self.theta, self.phi)


def eve_states(theta, phi) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(chi, chi_perp)`` for scalar or array angles.

    Output arrays have shape ``np.broadcast(theta, phi).shape + (2,)``.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    c, s, ph = np.broadcast_arrays(c, s, np.exp(1j * phi))
    chi = np.stack([c.astype(complex), ph * s], axis=-1)
    chi_perp = np.stack([np.conj(ph) * s, -c.astype(complex)], axis=-1)
    return chi, chi_perp


@lru_cache(maxsize=4096)
def _cached_states(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    chi, chi_perp = eve_states(theta, phi)
    chi.flags.writeable = False
    chi_perp.flags.writeable = False
    return chi, chi_perp


def eve_state(b: EveBasis, complement: bool = False) -> np.ndarray:
    chi, chi_perp = b.states()
    return chi_perp if complement else chi


def overlap_prob(a, b) -> np.ndarray | float:
    """Born probability ``|<a|b>|^2``; broadcasts over leading axes."""
    p = np.abs(np.sum(np.conj(a) * b, axis=-1)) ** 2
    return float(p) if np.ndim(p) == 0 else p


def bloch_vector(s: np.ndarray) -> np.ndarray:
    """Bloch vector of a single-qubit pure state."""
    a, b = s
    return np.array([2 * (np.conj(a) * b).real, 2 * (np.conj(a) * b).imag, abs(a) ** 2 - abs(b) ** 2])


PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) * SQRT1_2


class Encoding(enum.Enum):
    """Alice's four operators with their agreed codewords."""

    I = ("I", "00", 0)
    X = ("X", "10", 1)
    IY = ("iY", "01", 1)
    Z = ("Z", "11", 0)

    def __init__(self, symbol: str, codeword: str, flip_bit: int):
        self.symbol = symbol
        self.codeword = codeword
        self.flip_bit = flip_bit

    @property
    def matrix(self) -> np.ndarray:
        if self is Encoding.IY:
            return 1j * PAULI["Y"]
        return PAULI[self.symbol]

    @classmethod
    def from_codeword(cls, codeword: str) -> "Encoding":
        for op in cls:
            if op.codeword == codeword:
                return op
        raise ValueError(f"unknown codeword {codeword!r}")

    @classmethod
    def from_symbol(cls, symbol: str) -> "Encoding":
        for op in cls:
            if op.symbol.lower() == symbol.lower():
                return op
        raise ValueError(f"unknown operator {symbol!r}")


def _split(s: np.ndarray, k: int) -> np.ndarray:
    n = n_qubits(s)
    if not 0 <= k < n:
        raise IndexError(f"qubit index {k} out of range for {n} qubits")
    return s.reshape(2**k, 2, 2 ** (n - k - 1))


def apply_1q(u: np.ndarray, s: np.ndarray, k: int) -> np.ndarray:
    """Apply a 2x2 matrix to qubit ``k`` of register ``s``."""
    t = _split(s, k)
    out = np.empty_like(t)
    out[:, 0] = u[0, 0] * t[:, 0] + u[0, 1] * t[:, 1]
    out[:, 1] = u[1, 0] * t[:, 0] + u[1, 1] * t[:, 1]
    return out.reshape(-1)


def apply_encoding(op: Encoding, s: np.ndarray, targets=None) -> np.ndarray:
    """Apply Alice's operator to each qubit in ``targets`` (default: all)."""
    if targets is None:
        targets = range(n_qubits(s))
    m = op.matrix
    for k in targets:
        s = apply_1q(m, s, k)
    return s


def cnot(s: np.ndarray, control: int, target: int) -> np.ndarray:
    n = n_qubits(s)
    if control == target:
        raise ValueError("control and target must differ")
    for k in (control, target):
        if not 0 <= k < n:
            raise IndexError(f"qubit index {k} out of range for {n} qubits")
    t = s.reshape((2,) * n).copy()
    sel = [slice(None)] * n
    sel[control] = 1
    sub = t[tuple(sel)]
    # target axis index shifts down by one once the control axis is fixed
    ax = target - (target > control)
    t[tuple(sel)] = np.flip(sub, axis=ax)
    return t.reshape(-1)


def tensor(*states: np.ndarray) -> np.ndarray:
    return reduce(lambda a, b: np.multiply.outer(a, b).reshape(-1), states)


def basis_state(bits) -> np.ndarray:
    """Computational basis state ``|b0 b1 ...>``."""
    bits = list(bits)
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int("".join(str(int(b)) for b in bits), 2)] = 1.0
    return v


def equal_up_to_global_phase(a, b, tol: float = TOL) -> bool:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")
    inner = np.vdot(b, a)
    if abs(inner) < tol:
        return bool(np.allclose(a, 0, atol=tol) and np.allclose(b, 0, atol=tol))
    phase = inner / abs(inner)
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def qubit_outcome_probs(s: np.ndarray, k: int, basis: tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    """Probabilities of the two outcomes when qubit ``k`` is measured in ``basis``."""
    t = _split(s, k)
    return np.array([np.sum(np.abs(np.conj(e[0]) * t[:, 0] + np.conj(e[1]) * t[:, 1]) ** 2) for e in basis])


def measure_qubit(s: np.ndarray, k: int, basis: tuple[np.ndarray, np.ndarray], u: float):
    """Projective measurement of qubit ``k`` by inverse CDF on a uniform draw ``u``.

    Returns ``(outcome, post_state)``; the post-measurement state has qubit ``k``
    replaced by the observed basis vector.
    """
    t = _split(s, k)
    e = basis[0]
    rest = e[0].conjugate() * t[:, 0] + e[1].conjugate() * t[:, 1]
    p0 = np.vdot(rest, rest).real
    outcome = 0 if u < p0 else 1
    if outcome:
        e = basis[1]
        rest = e[0].conjugate() * t[:, 0] + e[1].conjugate() * t[:, 1]
    rest = rest / np.sqrt(1.0 - p0 if outcome else p0)
    post = np.empty_like(t)
    post[:, 0] = e[0] * rest
    post[:, 1] = e[1] * rest
    return outcome, post.reshape(-1)
