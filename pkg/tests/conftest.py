import numpy as np
import pytest

from sixdp.quantum_core import Axis, ProtocolQubit, Sign

BLOCH_AXIS = {Axis.X: np.array([1.0, 0, 0]), Axis.Y: np.array([0, 1.0, 0]), Axis.Z: np.array([0, 0, 1.0])}


def bloch_of(q: ProtocolQubit) -> np.ndarray:
    v = BLOCH_AXIS[q.axis]
    return v if q.sign is Sign.PLUS else -v


def bloch_of_angles(theta, phi) -> np.ndarray:
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def born(n1, n2) -> float:
    """Overlap probability of two pure qubit states from their Bloch vectors."""
    return (1.0 + float(np.dot(n1, n2))) / 2.0


@pytest.fixture(scope="session")
def grid_181():
    theta = np.linspace(0, np.pi, 181)
    phi = np.linspace(0, 2 * np.pi, 181)
    return np.meshgrid(theta, phi, indexing="ij")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
