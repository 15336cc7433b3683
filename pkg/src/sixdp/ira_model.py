"""Closed-form intercept-resend attack (IRA) analysis.

Eve measures both travelling qubits on the forward and on the backward path
in the same projective bases and resends what she observed. Two per-round
models are available:

``Model.PAPER``
    Per-path no-detection probability keeps only the two "aligned" outcome
    branches, ``P(B1|chi1) P(B2|chi2) + P(B1|chi1_perp) P(B2|chi2_perp)``;
    the whole round is the square of that.
``Model.PHYSICAL``
    Independent per-qubit measurements: every outcome branch is kept and Bob's
    check is applied to the resent state, giving
    ``prod_k [P(Bk|chik)^2 + P(Bk|chik_perp)^2]``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .quantum_core import (
    ALL_QUBITS,
    Axis,
    EveBasis,
    ProtocolQubit,
    Sign,
    eve_states,
    overlap_prob,
    protocol_state,
)


class DomainError(ValueError):
    """Raised when a formula is evaluated outside its domain."""


class Model(enum.Enum):
    PAPER = "paper"
    PHYSICAL = "physical"


class Mode(enum.Enum):
    SINGLE = "single"
    TWO = "two"


@dataclass(frozen=True)
class BasisPair:
    """Bob's ordered pair of travel qubits; the axes must differ."""

    first: ProtocolQubit
    second: ProtocolQubit

    def __post_init__(self):
        if self.first.axis is self.second.axis:
            raise ValueError(f"pair {self.first}, {self.second} uses the same axis twice")

    @classmethod
    def parse(cls, text: str) -> "BasisPair":
        a, b = text.split(",")
        return cls(ProtocolQubit.parse(a), ProtocolQubit.parse(b))

    @property
    def qubits(self) -> tuple[ProtocolQubit, ProtocolQubit]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"{self.first},{self.second}"


# all 24 ordered pairs with distinct axes
ALL_PAIRS = tuple(
    BasisPair(a, b) for a, b in itertools.product(ALL_QUBITS, repeat=2) if a.axis is not b.axis
)


def _signed(axis: Axis):
    return [ProtocolQubit(axis, s) for s in (Sign.PLUS, Sign.MINUS)]


# the 12 unordered combinations averaged in the single-basis case: z-x, z-y, y-x
UNORDERED_PAIRS = tuple(
    BasisPair(a, b)
    for ax1, ax2 in ((Axis.Z, Axis.X), (Axis.Z, Axis.Y), (Axis.Y, Axis.X))
    for a in _signed(ax1)
    for b in _signed(ax2)
)


@dataclass(frozen=True)
class EveStrategy:
    mode: Mode
    basis1: EveBasis
    basis2: EveBasis

    def __post_init__(self):
        if self.mode is Mode.SINGLE and self.basis1 != self.basis2:
            raise ValueError("single-basis strategy needs basis1 == basis2")

    @classmethod
    def single(cls, basis: EveBasis) -> "EveStrategy":
        return cls(Mode.SINGLE, basis, basis)

    @classmethod
    def two(cls, basis1: EveBasis, basis2: EveBasis) -> "EveStrategy":
        return cls(Mode.TWO, basis1, basis2)


@dataclass(frozen=True)
class AttackEconomics:
    c: float
    d: float
    n: int

    def __post_init__(self):
        if not (0.0 <= self.c <= 1.0 and 0.0 <= self.d <= 1.0):
            raise DomainError(f"c and d must lie in [0, 1], got c={self.c}, d={self.d}")
        if self.n < 0:
            raise DomainError(f"n must be non-negative, got {self.n}")

    @property
    def r(self) -> float:
        return 1.0 - self.c


def _round_from_states(pair: BasisPair, chi1, chi1p, chi2, chi2p, model: Model):
    """Whole-round no-detection probability, broadcasting over Eve's states."""
    b1 = protocol_state(pair.first)
    b2 = protocol_state(pair.second)
    p1, p1p = overlap_prob(b1, chi1), overlap_prob(b1, chi1p)
    p2, p2p = overlap_prob(b2, chi2), overlap_prob(b2, chi2p)
    if model is Model.PAPER:
        return (p1 * p2 + p1p * p2p) ** 2
    return (p1**2 + p1p**2) * (p2**2 + p2p**2)


def _states(strat: EveStrategy):
    chi1, chi1p = strat.basis1.states()
    chi2, chi2p = strat.basis2.states()
    return chi1, chi1p, chi2, chi2p


def partial_no_detect(pair: BasisPair, strat: EveStrategy) -> float:
    """One-path probability that Eve's interference goes unnoticed (aligned branches only)."""
    chi1, chi1p, chi2, chi2p = _states(strat)
    b1, b2 = protocol_state(pair.first), protocol_state(pair.second)
    return overlap_prob(b1, chi1) * overlap_prob(b2, chi2) + overlap_prob(b1, chi1p) * overlap_prob(b2, chi2p)


def round_no_detect(pair: BasisPair, strat: EveStrategy, model: Model = Model.PAPER) -> float:
    if model is Model.PAPER:
        return partial_no_detect(pair, strat) ** 2
    return physical_round_no_detect(pair, strat)


def physical_round_no_detect(pair: BasisPair, strat: EveStrategy) -> float:
    return float(_round_from_states(pair, *_states(strat), Model.PHYSICAL))


def _mean_over(pairs, chi1, chi1p, chi2, chi2p, model):
    total = sum(_round_from_states(p, chi1, chi1p, chi2, chi2p, model) for p in pairs)
    return total / len(pairs)


def average_no_detect_single(strat: EveStrategy, model: Model = Model.PAPER) -> float:
    """Mean whole-round no-detection probability over the 12 unordered pairs."""
    if strat.mode is not Mode.SINGLE:
        raise ValueError("average_no_detect_single needs a single-basis strategy")
    return float(_mean_over(UNORDERED_PAIRS, *_states(strat), model))


def average_no_detect_two(strat: EveStrategy, model: Model = Model.PAPER) -> float:
    """Mean whole-round no-detection probability over all 24 ordered pairs."""
    if strat.mode is not Mode.TWO:
        raise ValueError("average_no_detect_two needs a two-basis strategy")
    return float(_mean_over(ALL_PAIRS, *_states(strat), model))


def average_no_detect(strat: EveStrategy, model: Model = Model.PAPER) -> float:
    if strat.mode is Mode.SINGLE:
        return average_no_detect_single(strat, model)
    return average_no_detect_two(strat, model)


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ValueError("grid needs at least one step")
    if steps == 1:
        return np.array([float(lo)])
    return np.linspace(lo, hi, steps)


@dataclass
class Extremum:
    value: float
    points: list[tuple[float, float]]


@dataclass
class Sweep:
    """Dense evaluation of the averaged no-detection probability on an angle grid.

    ``values[i, k]`` belongs to ``(axis1[i], axis2[k])``; the column names are
    ``theta1,phi1`` for the single-basis mode and ``theta1,theta2`` for the
    two-basis mode (both azimuths fixed at zero).
    """

    mode: Mode
    model: Model
    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray
    names: tuple[str, str] = field(default=("theta1", "phi1"))

    def rows(self):
        for i, a in enumerate(self.axis1):
            for k, b in enumerate(self.axis2):
                yield float(a), float(b), float(self.values[i, k])

    def _collect(self, target: float, tol: float) -> list[tuple[float, float]]:
        idx = np.argwhere(np.abs(self.values - target) <= tol)
        return [(float(self.axis1[i]), float(self.axis2[k])) for i, k in idx]

    def maximum(self, tol: float = 1e-9) -> Extremum:
        v = float(self.values.max())
        return Extremum(v, self._collect(v, tol))

    def minimum(self, tol: float = 1e-9) -> Extremum:
        v = float(self.values.min())
        return Extremum(v, self._collect(v, tol))


def sweep(
    mode: Mode | str = Mode.SINGLE,
    steps1: int = 181,
    steps2: int | None = None,
    range1: tuple[float, float] = (0.0, np.pi),
    range2: tuple[float, float] | None = None,
    model: Model = Model.PAPER,
) -> Sweep:
    """Evaluate the averaged IRA no-detection probability on a rectangular grid.

    Single-basis mode varies ``(theta1, phi1)``; the default second range is
    ``[0, 2pi]``. Two-basis mode varies ``(theta1, theta2)`` with both azimuths
    zero; the default second range is ``[0, pi]``.
    """
    mode = Mode(mode)
    steps2 = steps1 if steps2 is None else steps2
    if range2 is None:
        range2 = (0.0, 2 * np.pi) if mode is Mode.SINGLE else (0.0, np.pi)
    a1 = _grid(*range1, steps1)
    a2 = _grid(*range2, steps2)
    g1, g2 = np.meshgrid(a1, a2, indexing="ij")
    if mode is Mode.SINGLE:
        chi, chip = eve_states(g1, g2)
        vals = _mean_over(UNORDERED_PAIRS, chi, chip, chi, chip, model)
        names = ("theta1", "phi1")
    else:
        chi1, chi1p = eve_states(g1, 0.0)
        chi2, chi2p = eve_states(g2, 0.0)
        vals = _mean_over(ALL_PAIRS, chi1, chi1p, chi2, chi2p, model)
        names = ("theta1", "theta2")
    return Sweep(mode, model, a1, a2, np.asarray(vals, dtype=float), names)


def detection_prob(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability out of range: {p}")
    return 1.0 - p


def success_prob(e: AttackEconomics) -> float:
    """Probability that Eve collects ``n`` message bits without being caught."""
    denom = 1.0 - e.c * (1.0 - e.d)
    if denom <= 0.0:
        raise DomainError(f"1 - c(1 - d) must be positive (c={e.c}, d={e.d})")
    return ((1.0 - e.c) / denom) ** e.n


def three_basis_round_prob() -> tuple[Fraction, Fraction]:
    """Reported constants for Eve spreading her measurements over all three axes.

    Returns ``(per_path, per_round)`` = ``(1/12, 1/144)``: the chance that Eve
    measures both qubits in the correct form on one path, and on both paths of
    a complete round. The per-path value is taken as reported; its combinatorial
    derivation is not reconstructed here.
    """
    per_path = Fraction(1, 12)
    return per_path, per_path**2
